//! Maximal angles between symmetric matrices and the positive semidefinite
//! and nonnegative cones, with strongly regular graph and generalized
//! quadrangle tooling for lower bounds on the maximal angle between the cones.
//!
//! Numerical types are generic over [`Scalar`] (`f32` or `f64`, default `f64`);
//! exact quantities use [`ExactRatio`].

pub mod cones;
pub mod field;
pub mod gq;
pub mod sample;
pub mod scalar;
pub mod srg;
pub mod symmat;

pub use cones::{
    critical_pair_search, elliptic_order, gamma_lower_bound, max_angle_nonneg, max_angle_psd,
    multistart_search, rank1_angle, sniep_realizable, AngleResult, ConeError, CriticalPairTrace,
    GammaBound, GammaSource, MultistartConfig, MultistartResult, RestartOutcome, SniepCheck,
    SniepCondition, SniepVerdict,
};
pub use field::{prime_power, FieldElement, FieldError, FieldSpec, FieldTables};
pub use gq::{
    build_gq_elliptic, build_gq_symplectic, collinearity_graph, gq_axiom_check, AxiomViolation,
    GqError, QuadrangleKind, QuadrangleStructure,
};
pub use scalar::Scalar;
pub use srg::{
    build_named, srg_angle, srg_feasible, srg_spectrum, verify_srg, Feasibility, FeasibilityIssue,
    Graph, SrgAngle, SrgError, SrgParams, SrgSpectrum,
};
pub use symmat::{
    angle, cosine, eigh, entrywise_split, frobenius_inner, spectral_split, EigenDecomposition,
    EntrywiseSplit, SignClass, SpectralSplit, SymmatError, SymmetricMatrix,
};

/// Exact rational used for squared cosines with closed forms.
pub type ExactRatio = num_rational::Ratio<i64>;

pub type SymmetricMatrixF32 = SymmetricMatrix<f32>;
pub type SymmetricMatrixF64 = SymmetricMatrix<f64>;
pub type AngleResultF32 = AngleResult<f32>;
pub type AngleResultF64 = AngleResult<f64>;
pub type EigenDecompositionF32 = EigenDecomposition<f32>;
pub type EigenDecompositionF64 = EigenDecomposition<f64>;
