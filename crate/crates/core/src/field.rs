//! Arithmetic in GF(q) for prime powers `q = pᵉ`.
//!
//! Elements are polynomials over GF(p) of degree below `e`, reduced modulo a
//! fixed monic irreducible polynomial. An element is stored packed as the
//! integer `Σ cᵢ pⁱ` of its coefficients, which also fixes the element order
//! used for deterministic enumeration: `0, 1, …, q − 1`.

use thiserror::Error;

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 24;
/// Largest order for which [`FieldSpec::tables`] builds full operation tables.
pub const MAX_TABLE_ORDER: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    TooLarge(u64),
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("element {0} does not belong to GF({1})")]
    ForeignElement(u32, u32),
    #[error("coefficient list of length {got} exceeds extension degree {degree}")]
    TooManyCoefficients { got: usize, degree: u32 },
}

/// `q = pᵉ` as `(p, e)`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1));
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Packed field element (see module docs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// GF(q) described by its characteristic, degree and modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus of degree `e`, low degree first (`e + 1` entries).
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// Factors `q = pᵉ`; for `e > 1` picks the first monic irreducible
    /// polynomial of degree `e` in packed order of its lower coefficients.
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if q > MAX_FIELD_ORDER {
            return Err(FieldError::TooLarge(q));
        }
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        let p = p as u32;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            (0..q as u32)
                .map(|k| {
                    let mut c = unpack(k, p, e);
                    c.push(1);
                    c
                })
                .find(|c| is_irreducible(c, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        Ok(Self {
            p,
            e,
            q: q as u32,
            modulus,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Element with the given coefficients (low degree first), reduced mod `p`.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.e as usize {
            return Err(FieldError::TooManyCoefficients {
                got: coeffs.len(),
                degree: self.e,
            });
        }
        let reduced: Vec<u32> = coeffs.iter().map(|c| c % self.p).collect();
        Ok(FieldElement(pack(&reduced, self.p)))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        unpack(x.0, self.p, self.e)
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.0 < self.q
    }

    fn check(&self, x: FieldElement) -> Result<(), FieldError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(FieldError::ForeignElement(x.0, self.q))
        }
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        self.check(y)?;
        let (a, b) = (self.coeffs(x), self.coeffs(y));
        let s: Vec<u32> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        Ok(FieldElement(pack(&s, self.p)))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        let s: Vec<u32> = self
            .coeffs(x)
            .iter()
            .map(|&c| (self.p - c) % self.p)
            .collect();
        Ok(FieldElement(pack(&s, self.p)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        self.add(x, self.neg(y)?)
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        self.check(y)?;
        let (a, b) = (self.coeffs(x), self.coeffs(y));
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.e as usize];
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        let mut prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        poly_rem_monic(&mut prod, &self.modulus, self.p);
        prod.truncate(self.e as usize);
        Ok(FieldElement(pack(&prod, self.p)))
    }

    pub fn pow(&self, x: FieldElement, mut exp: u64) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        let (mut base, mut acc) = (x, FieldElement::ONE);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base)?;
            }
            base = self.mul(base, base)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// `x⁻¹ = x^(q−2)`.
    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        if x.is_zero() {
            return Err(FieldError::InverseOfZero);
        }
        self.pow(x, self.q as u64 - 2)
    }

    /// Full operation tables, for orders up to [`MAX_TABLE_ORDER`].
    pub fn tables(&self) -> Option<FieldTables> {
        if self.q > MAX_TABLE_ORDER {
            return None;
        }
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for x in self.elements() {
            for y in self.elements() {
                let idx = x.0 as usize * q + y.0 as usize;
                add[idx] = self.add(x, y).expect("in field").0;
                mul[idx] = self.mul(x, y).expect("in field").0;
            }
        }
        let neg = self
            .elements()
            .map(|x| self.neg(x).expect("in field").0)
            .collect();
        let inv = self
            .elements()
            .map(|x| {
                if x.is_zero() {
                    0
                } else {
                    self.inv(x).expect("nonzero").0
                }
            })
            .collect();
        Some(FieldTables {
            q: self.q,
            add,
            mul,
            neg,
            inv,
        })
    }
}

/// Lookup tables for a small field. Operations take elements by value and
/// assume they belong to the field.
#[derive(Debug, Clone)]
pub struct FieldTables {
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FieldTables {
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.add[(x.0 * self.q + y.0) as usize])
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.mul[(x.0 * self.q + y.0) as usize])
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.neg[x.0 as usize])
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    /// Inverse; zero maps to zero.
    #[inline]
    pub fn inv(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.inv[x.0 as usize])
    }
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn unpack(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let c = x % p;
            x /= p;
            c
        })
        .collect()
}

fn trim(poly: &mut Vec<u32>) {
    while poly.last() == Some(&0) {
        poly.pop();
    }
}

/// Reduces `a` modulo the monic polynomial `m` in place.
fn poly_rem_monic(a: &mut Vec<u32>, m: &[u32], p: u32) {
    let dm = m.len() - 1;
    trim(a);
    while a.len() > dm {
        let lead = *a.last().unwrap() as u64;
        let shift = a.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = lead * c as u64 % p as u64;
            let idx = shift + i;
            a[idx] = ((a[idx] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(a);
    }
}

/// Exhaustive irreducibility test over GF(p): no monic factor of degree
/// `1..=d/2` divides the monic polynomial `poly` (low degree first).
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let d = poly.len() - 1;
    if d == 0 {
        return false;
    }
    for deg in 1..=d / 2 {
        let count = (p as u64).pow(deg as u32);
        for k in 0..count {
            let mut g = unpack(k as u32, p, deg as u32);
            g.push(1);
            let mut r = poly.to_vec();
            poly_rem_monic(&mut r, &g, p);
            if r.is_empty() {
                return false;
            }
        }
    }
    true
}
