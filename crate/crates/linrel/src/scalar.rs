//! Scalar fields: every computation runs over ℝ or ℂ, fixed once per problem.

use nalgebra::{Complex, ComplexField};
use serde::{Deserialize, Serialize};

/// Tag selecting the scalar field of a computation. All matrices taking part
/// in one computation share one tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Real => write!(f, "real"),
            FieldTag::Complex => write!(f, "complex"),
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "real" | "r" => Ok(FieldTag::Real),
            "complex" | "c" => Ok(FieldTag::Complex),
            other => Err(crate::Error::InvalidProblem(format!(
                "unknown field `{other}` (expected `real` or `complex`)"
            ))),
        }
    }
}

/// Scalar type over which the whole calculus is generic: `f64` for real
/// Hilbert spaces, `Complex<f64>` for complex ones.
pub trait Scalar: ComplexField<RealField = f64> + Copy {
    const FIELD: FieldTag;

    fn from_re_im(re: f64, im: f64) -> Self;
    fn re_im(&self) -> (f64, f64);

    /// Standard normal draw; for ℂ real and imaginary parts are independent
    /// N(0, 1/2) so that E|z|² = 1.
    fn sample_normal<R: rand::Rng + ?Sized>(rng: &mut R) -> Self;
}

/// Box–Muller transform from uniform bits; the fixed sampling recipe that,
/// together with the ChaCha8 stream, makes generated instances replayable.
pub fn normal_f64<R: rand::Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

impl Scalar for f64 {
    const FIELD: FieldTag = FieldTag::Real;

    fn from_re_im(re: f64, _im: f64) -> Self {
        re
    }

    fn re_im(&self) -> (f64, f64) {
        (*self, 0.0)
    }

    fn sample_normal<R: rand::Rng + ?Sized>(rng: &mut R) -> Self {
        normal_f64(rng)
    }
}

impl Scalar for Complex<f64> {
    const FIELD: FieldTag = FieldTag::Complex;

    fn from_re_im(re: f64, im: f64) -> Self {
        Complex::new(re, im)
    }

    fn re_im(&self) -> (f64, f64) {
        (self.re, self.im)
    }

    fn sample_normal<R: rand::Rng + ?Sized>(rng: &mut R) -> Self {
        let re = normal_f64(rng);
        let im = normal_f64(rng);
        Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}
