//! Dense complex polynomials in ascending coefficient order, together with
//! the structural constructions behind the symmetric-certificate pipeline:
//! base-point normalization, symmetric decomposition `P(z) = z·Q(z^k)`, and
//! the auxiliary/critical factors built from `Q`.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Relative coefficient tolerance: a coefficient counts as zero when its
/// magnitude is at most this factor times the largest coefficient magnitude
/// of the same polynomial. Shared by trailing-coefficient trimming and the
/// off-lattice test in [`NormalizedPolynomial::decompose_symmetric`].
pub const REL_COEFF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("coefficient list is empty")]
    EmptyCoefficients,
    #[error("coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },
    #[error("constant term is nonzero (relative magnitude {magnitude:.3e})")]
    NonzeroConstantTerm { magnitude: f64 },
    #[error("base point is numerically critical (|p'(z0)| = {magnitude:.3e})")]
    CriticalBasepoint { magnitude: f64 },
    #[error(
        "coefficient {index} breaks {k}-fold symmetry (relative magnitude {magnitude:.3e})"
    )]
    NotSymmetric { index: usize, k: u32, magnitude: f64 },
    #[error("degree {degree} is incompatible with symmetry order {k}")]
    DegreeMismatch { degree: usize, k: u32 },
    #[error("polynomial is not normalized: {reason}")]
    NotNormalized { reason: &'static str },
}

/// Dense complex polynomial; `coeffs[j]` is the coefficient of `z^j`.
///
/// Invariants: the coefficient list is nonempty, every entry is finite, and
/// the leading entry is nonzero relative to [`REL_COEFF_TOL`] unless the
/// polynomial is identically zero (stored as a single zero coefficient).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Validates finiteness and trims negligible leading coefficients.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::EmptyCoefficients);
        }
        for (index, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(PolyError::NonFiniteCoefficient { index });
            }
        }
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().unwrap().norm() <= REL_COEFF_TOL * scale {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self, PolyError> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0)],
        }
    }

    /// Internal constructor for coefficients produced by exact operations
    /// (convolution, index shifts). Skips trimming so degree bookkeeping of
    /// derived polynomials stays exact.
    fn from_parts(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^j`, zero beyond the stored degree.
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs
            .get(j)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].norm() == 0.0
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    /// Largest coefficient magnitude; the reference scale for all relative
    /// tolerances involving this polynomial.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        debug_assert!(z.re.is_finite() && z.im.is_finite());
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Value and first derivative in a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Coefficient `j` of the result is `(j+1)·c_{j+1}`; the derivative of a
    /// constant is the zero polynomial.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c * j as f64)
            .collect();
        Polynomial::from_parts(coeffs)
    }

    /// Exact convolution product. The result is not re-trimmed, so the
    /// degree is always the sum of the operand degrees.
    pub fn multiply(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_parts(coeffs)
    }

    /// The polynomial `p(z)/z`: coefficient `j` of the result is `c_{j+1}`.
    /// At `z = 0` it evaluates to `p'(0)`. The stored constant term is
    /// dropped; it must be negligible relative to the coefficient scale.
    pub fn ratio_poly(&self) -> Result<Polynomial, PolyError> {
        let scale = self.scale();
        let c0 = self.coeffs[0].norm();
        if c0 > REL_COEFF_TOL * scale {
            return Err(PolyError::NonzeroConstantTerm {
                magnitude: if scale > 0.0 { c0 / scale } else { c0 },
            });
        }
        if self.coeffs.len() == 1 {
            return Ok(Polynomial::zero());
        }
        Ok(Polynomial::from_parts(self.coeffs[1..].to_vec()))
    }

    /// Coefficients of `w ↦ p(z0 + w)` via repeated synthetic division.
    fn taylor_shift(&self, z0: Complex64) -> Vec<Complex64> {
        let n = self.degree();
        // Descending order working array; after pass k, entry n-k is final.
        let mut a: Vec<Complex64> = self.coeffs.iter().rev().copied().collect();
        for k in 0..n {
            for j in 1..=(n - k) {
                let prev = a[j - 1];
                a[j] += z0 * prev;
            }
        }
        a.reverse();
        a
    }

    /// Affine reduction `w ↦ (p(z0 + w) − p(z0)) / p'(z0)`. The constant and
    /// linear coefficients of the result are set to exact 0 and 1 rather
    /// than left to floating subtraction.
    pub fn normalize_at(&self, z0: Complex64) -> Result<NormalizedPolynomial, PolyError> {
        let deriv = self.derivative();
        let slope = deriv.evaluate(z0);
        if slope.norm() <= REL_COEFF_TOL * deriv.scale() {
            return Err(PolyError::CriticalBasepoint {
                magnitude: slope.norm(),
            });
        }
        let mut shifted = self.taylor_shift(z0);
        shifted[0] = Complex64::new(0.0, 0.0);
        shifted[1] = Complex64::new(1.0, 0.0);
        for c in shifted.iter_mut().skip(2) {
            *c /= slope;
        }
        let inner = Polynomial::new(shifted)?;
        NormalizedPolynomial::new(inner)
    }
}

/// Polynomial with `p(0) = 0` and `p'(0) = 1`, both exact.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedPolynomial {
    inner: Polynomial,
}

impl NormalizedPolynomial {
    /// Requires the constant term to be exactly zero and the linear term
    /// exactly one.
    pub fn new(inner: Polynomial) -> Result<Self, PolyError> {
        if inner.degree() < 1 {
            return Err(PolyError::NotNormalized {
                reason: "degree must be at least 1",
            });
        }
        if inner.coeffs[0] != Complex64::new(0.0, 0.0) {
            return Err(PolyError::NotNormalized {
                reason: "constant term must be exactly zero",
            });
        }
        if inner.coeffs[1] != Complex64::new(1.0, 0.0) {
            return Err(PolyError::NotNormalized {
                reason: "linear term must be exactly one",
            });
        }
        Ok(Self { inner })
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self, PolyError> {
        Self::new(Polynomial::new(coeffs)?)
    }

    /// Tolerance-checked variant for ingested data: accepts a constant term
    /// and linear term within [`REL_COEFF_TOL`] of 0 and 1 and overwrites
    /// them with the exact values.
    pub fn snap(p: Polynomial) -> Result<Self, PolyError> {
        let scale = p.scale();
        if p.degree() < 1 {
            return Err(PolyError::NotNormalized {
                reason: "degree must be at least 1",
            });
        }
        let c0 = p.coeffs[0].norm();
        if c0 > REL_COEFF_TOL * scale {
            return Err(PolyError::NonzeroConstantTerm {
                magnitude: if scale > 0.0 { c0 / scale } else { c0 },
            });
        }
        if (p.coeffs[1] - Complex64::new(1.0, 0.0)).norm() > REL_COEFF_TOL * scale {
            return Err(PolyError::NotNormalized {
                reason: "linear term must be one",
            });
        }
        let mut coeffs = p.coeffs;
        coeffs[0] = Complex64::new(0.0, 0.0);
        coeffs[1] = Complex64::new(1.0, 0.0);
        Self::new(Polynomial::new(coeffs)?)
    }

    pub fn as_poly(&self) -> &Polynomial {
        &self.inner
    }

    pub fn into_poly(self) -> Polynomial {
        self.inner
    }

    pub fn degree(&self) -> usize {
        self.inner.degree()
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.inner.evaluate(z)
    }

    /// Infallible [`Polynomial::ratio_poly`]: the constant term is exactly
    /// zero by construction.
    pub fn ratio_poly(&self) -> Polynomial {
        self.inner
            .ratio_poly()
            .expect("normalized polynomial has exact zero constant term")
    }

    /// Extracts `Q` from `p(z) = z·Q(z^k)`: coefficient `m` of `Q` is
    /// `c_{1+mk}`. Every coefficient off the lattice `j ≡ 1 (mod k)` must be
    /// negligible.
    pub fn decompose_symmetric(&self, k: u32) -> Result<Polynomial, PolyError> {
        assert!(k >= 2, "symmetry order must be at least 2");
        let d = self.degree();
        if (d - 1) % k as usize != 0 {
            return Err(PolyError::DegreeMismatch { degree: d, k });
        }
        let scale = self.inner.scale();
        for (j, c) in self.inner.coeffs.iter().enumerate() {
            if j % k as usize != 1 && c.norm() > REL_COEFF_TOL * scale {
                return Err(PolyError::NotSymmetric {
                    index: j,
                    k,
                    magnitude: c.norm() / scale,
                });
            }
        }
        let m = (d - 1) / k as usize;
        let coeffs = (0..=m).map(|i| self.inner.coeff(1 + i * k as usize)).collect();
        Ok(Polynomial::from_parts(coeffs))
    }
}

/// The auxiliary polynomial `u·q(u)^k`. For `p(z) = z·q(z^k)` its values on
/// k-th powers are the k-th powers of `p`: `aux(z^k) = p(z)^k`.
pub fn aux_lift(q: &Polynomial, k: u32) -> Polynomial {
    assert!(k >= 2, "symmetry order must be at least 2");
    let mut power = q.clone();
    for _ in 1..k {
        power = power.multiply(q);
    }
    let mut coeffs = Vec::with_capacity(power.coeffs.len() + 1);
    coeffs.push(Complex64::new(0.0, 0.0));
    coeffs.extend_from_slice(&power.coeffs);
    Polynomial::from_parts(coeffs)
}

/// The critical factor `q(u) + k·u·q'(u)`: coefficient `m` of the result is
/// `(1 + k·m)·q_m`. For `p(z) = z·q(z^k)` it satisfies
/// `p'(z) = critical_factor(q, k)(z^k)`, so its roots in `u` are exactly the
/// k-th powers of the critical points of `p`.
pub fn critical_factor(q: &Polynomial, k: u32) -> Polynomial {
    assert!(k >= 2, "symmetry order must be at least 2");
    let coeffs = q
        .coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| c * (1.0 + (k as usize * m) as f64))
        .collect();
    Polynomial::from_parts(coeffs)
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    coeffs: Vec<[f64; 2]>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            coeffs: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        Polynomial::new(
            repr.coeffs
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
        .map_err(D::Error::custom)
    }
}

impl Serialize for NormalizedPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.inner.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormalizedPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let inner = Polynomial::deserialize(d)?;
        NormalizedPolynomial::snap(inner).map_err(D::Error::custom)
    }
}
