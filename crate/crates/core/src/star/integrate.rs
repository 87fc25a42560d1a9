//! Exact phase-space integrals of polynomial × Gaussian functions.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Envelope, PhaseSpaceFunction};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An exact value `value · π^pi_power`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactScalar {
    pub value: Scalar,
    pub pi_power: i32,
}

impl ExactScalar {
    pub fn new(value: Scalar, pi_power: i32) -> Self {
        if value.is_zero() {
            ExactScalar { value, pi_power: 0 }
        } else {
            ExactScalar { value, pi_power }
        }
    }

    pub fn zero() -> Self {
        Self::new(Scalar::zero(), 0)
    }

    pub fn one() -> Self {
        Self::new(Scalar::one(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_complex_f64().re * std::f64::consts::PI.powi(self.pi_power)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.value),
            k => write!(f, "({})*pi^{k}", self.value),
        }
    }
}

fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::from(1u32);
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

/// `∫ x^n exp(-a x²) dx / √(π/a)` over the real line, for `a ∈ {1, 2}`:
/// zero for odd `n`, `(n-1)!! / (2a)^(n/2)` otherwise.
pub fn gaussian_moment_1d(n: u16, a: u32) -> BigRational {
    if n % 2 == 1 {
        return BigRational::from_integer(BigInt::from(0));
    }
    let half = (n / 2) as u32;
    BigRational::new(double_factorial(n as i64 - 1), BigInt::from(2 * a).pow(half))
}

/// `∫ poly · exp(-a r²) d⁴z` with the π factors split off: returns the
/// rational part of `Σ c_k Π moments`; the caller multiplies by `(π/a)²`.
fn moment_sum(poly: &PhaseSpaceFunction, a: u32) -> Scalar {
    let mut acc = Scalar::zero();
    for (k, c) in poly.terms() {
        if k.exps.iter().any(|e| e % 2 == 1) {
            continue;
        }
        let weight = k
            .exps
            .iter()
            .fold(BigRational::one(), |w, &e| w * gaussian_moment_1d(e, a));
        acc += &c.scale_rational(&weight);
    }
    acc
}

/// Integral over all of phase space (ħ = 1). Requires the vacuum envelope.
pub fn integrate(f: &PhaseSpaceFunction) -> Result<ExactScalar> {
    if f.is_zero() {
        return Ok(ExactScalar::zero());
    }
    if f.envelope() != Envelope::Vacuum {
        return Err(Error::DivergentIntegral);
    }
    let poly = f.fold_hbar();
    Ok(ExactScalar::new(moment_sum(&poly, 1), f.pi_power() + 2))
}

/// `∫ f·g` over phase space. A product of two vacuum envelopes becomes
/// `exp(-2 r²)` here and never leaves this function.
pub fn integrate_product(f: &PhaseSpaceFunction, g: &PhaseSpaceFunction) -> Result<ExactScalar> {
    if f.is_zero() || g.is_zero() {
        return Ok(ExactScalar::zero());
    }
    match (f.envelope(), g.envelope()) {
        (Envelope::Vacuum, Envelope::Vacuum) => {
            let poly = f.polynomial_product(g).fold_hbar();
            // (π/2)² = π²/4
            let value = moment_sum(&poly, 2).scale_rational(&BigRational::new(1.into(), 4.into()));
            Ok(ExactScalar::new(value, poly.pi_power() + 2))
        }
        (Envelope::None, Envelope::None) => Err(Error::DivergentIntegral),
        _ => integrate(&f.pointwise_mul(g)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = PhaseSpaceFunction;

    #[test]
    fn normalized_vacuum() {
        let w0 = F::vacuum().times_pi_power(-2);
        assert_eq!(integrate(&w0).unwrap(), ExactScalar::one());
    }

    #[test]
    fn odd_moment_vanishes() {
        let f = F::q1().with_envelope(Envelope::Vacuum);
        assert!(integrate(&f).unwrap().is_zero());
    }

    #[test]
    fn second_moment() {
        let f = F::q1().pointwise_pow(2).unwrap().with_envelope(Envelope::Vacuum);
        assert_eq!(integrate(&f).unwrap(), ExactScalar::new(Scalar::from_ratio(1, 2), 2));
    }

    #[test]
    fn polynomial_diverges() {
        assert_eq!(integrate(&F::q1()), Err(Error::DivergentIntegral));
    }

    #[test]
    fn squared_vacuum() {
        let w0 = F::vacuum().times_pi_power(-2);
        // ∫ π^-4 e^{-2r²} = π^-4 (π/2)² = 1/(4π²)
        assert_eq!(integrate_product(&w0, &w0).unwrap(), ExactScalar::new(Scalar::from_ratio(1, 4), -2));
    }

    #[test]
    fn one_dimensional_moments() {
        assert_eq!(gaussian_moment_1d(4, 1), BigRational::new(3.into(), 4.into()));
        assert_eq!(gaussian_moment_1d(4, 2), BigRational::new(3.into(), 16.into()));
        assert_eq!(gaussian_moment_1d(3, 1), BigRational::new(0.into(), 1.into()));
    }
}
