//! Floating point scalars the matrix kernel is generic over.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar type for dense symmetric matrices: `f32` or `f64`.
///
/// The associated constants carry the precision-dependent defaults used by the
/// eigensolver and the sign classification of eigenvalues.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Debug
    + Display
    + FromStr
    + Default
    + Send
    + Sync
    + 'static
{
    /// Default Jacobi convergence tolerance, relative to `max(1, ‖A‖)`.
    const EIG_TOL: f64;
    /// Relative width of the zero band used to classify eigenvalues,
    /// multiplied by `n·max(1, ‖A‖)`.
    const ZERO_BAND: f64;
    /// Largest relative asymmetry accepted (and symmetrized away) at construction.
    const SYMMETRY_TOL: f64;

    /// Lossy conversion from `f64`, for constants.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }
}

impl Scalar for f64 {
    const EIG_TOL: f64 = 1e-12;
    const ZERO_BAND: f64 = 1e-10;
    const SYMMETRY_TOL: f64 = 1e-9;
}

impl Scalar for f32 {
    const EIG_TOL: f64 = 1e-5;
    const ZERO_BAND: f64 = 1e-4;
    const SYMMETRY_TOL: f64 = 1e-5;
}
