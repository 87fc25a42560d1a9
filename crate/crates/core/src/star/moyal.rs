use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{mul_terms_into, Envelope, MonomialKey, PhaseSpaceFunction, Var};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// How ħ is treated by star products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HbarMode {
    /// ħ is a formal symbol tracked as a per-monomial power.
    Formal,
    /// ħ = 1; Gaussian envelopes are allowed.
    One,
}

/// The Moyal star-product algebra in a given ħ mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Moyal {
    mode: HbarMode,
}

impl Default for Moyal {
    fn default() -> Self {
        Moyal::unit()
    }
}

// derivative orders (q1, p1, q2, p2) on the left factor; the right factor
// receives the conjugate orders (p1, q1, p2, q2).
type Orders = [u16; 4];

const LEFT_VARS: [Var; 4] = [Var::Q1, Var::P1, Var::Q2, Var::P2];
const RIGHT_VARS: [Var; 4] = [Var::P1, Var::Q1, Var::P2, Var::Q2];

struct DerivativeCache<'a> {
    base: &'a PhaseSpaceFunction,
    vars: [Var; 4],
    cache: HashMap<Orders, PhaseSpaceFunction>,
}

impl<'a> DerivativeCache<'a> {
    fn new(base: &'a PhaseSpaceFunction, vars: [Var; 4]) -> Self {
        DerivativeCache { base, vars, cache: HashMap::new() }
    }

    fn get(&mut self, orders: Orders) -> PhaseSpaceFunction {
        if orders == [0; 4] {
            return self.base.clone();
        }
        if let Some(f) = self.cache.get(&orders) {
            return f.clone();
        }
        let slot = orders.iter().position(|&o| o > 0).expect("nonzero orders");
        let mut lower = orders;
        lower[slot] -= 1;
        let f = self.get(lower).differentiate(self.vars[slot]);
        self.cache.insert(orders, f.clone());
        f
    }
}

fn factorial(n: u16) -> BigInt {
    (1..=n as u64).fold(BigInt::from(1u32), |acc, k| acc * BigInt::from(k))
}

impl Moyal {
    pub fn new(mode: HbarMode) -> Self {
        Moyal { mode }
    }

    pub fn formal() -> Self {
        Self::new(HbarMode::Formal)
    }

    pub fn unit() -> Self {
        Self::new(HbarMode::One)
    }

    pub fn mode(&self) -> HbarMode {
        self.mode
    }

    /// ħ as a phase-space function in this mode.
    pub fn hbar(&self) -> PhaseSpaceFunction {
        match self.mode {
            HbarMode::Formal => PhaseSpaceFunction::hbar(),
            HbarMode::One => PhaseSpaceFunction::one(),
        }
    }

    /// Brings a function into this mode's canonical form (folds ħ when ħ = 1).
    pub fn normalize(&self, f: &PhaseSpaceFunction) -> PhaseSpaceFunction {
        match self.mode {
            HbarMode::Formal => f.clone(),
            HbarMode::One => f.fold_hbar(),
        }
    }

    /// The Moyal star product, evaluated as the terminating bidifferential
    /// series `Σ (iħ/2)^k/k! (←∂_q →∂_p − ←∂_p →∂_q)^k`. At least one operand
    /// must be a pure polynomial so that the series is finite.
    pub fn star(&self, f: &PhaseSpaceFunction, g: &PhaseSpaceFunction) -> Result<PhaseSpaceFunction> {
        if f.envelope == Envelope::Vacuum && g.envelope == Envelope::Vacuum {
            return Err(Error::NonTerminatingStar);
        }
        if self.mode == HbarMode::Formal && !(f.is_polynomial() && g.is_polynomial()) {
            return Err(Error::EnvelopeInFormalMode);
        }
        if f.is_zero() || g.is_zero() {
            return Ok(PhaseSpaceFunction::zero());
        }

        let orders = series_orders(f, g);
        let mut left = DerivativeCache::new(f, LEFT_VARS);
        let mut right = DerivativeCache::new(g, RIGHT_VARS);
        let mut out = PhaseSpaceFunction {
            terms: Default::default(),
            envelope: if f.is_polynomial() { g.envelope } else { f.envelope },
            pi_power: f.pi_power + g.pi_power,
        };
        for ord in orders {
            let lf = left.get(ord);
            if lf.is_zero() {
                continue;
            }
            let rg = right.get(ord);
            if rg.is_zero() {
                continue;
            }
            let k: u16 = ord.iter().sum();
            // (i/2)^k (-1)^(b+d) / (a! b! c! d!)
            let denom = ord.iter().fold(BigInt::from(1u32), |acc, &o| acc * factorial(o))
                * BigInt::from(2u32).pow(k as u32);
            let sign = if (ord[1] + ord[3]) % 2 == 0 { 1 } else { -1 };
            let weight = Scalar::from_rational(BigRational::new(BigInt::from(sign), denom))
                .mul_i_pow(k as u32);
            let shift = match self.mode {
                HbarMode::Formal => k,
                HbarMode::One => 0,
            };
            mul_terms_into(&mut out, &lf, &rg, &weight, shift);
        }
        Ok(self.normalize(&out.normalized()))
    }

    /// `f ⋆ f ⋆ … ⋆ f` (`n` factors); `n = 0` gives 1.
    pub fn star_pow(&self, f: &PhaseSpaceFunction, n: u32) -> Result<PhaseSpaceFunction> {
        let mut acc = PhaseSpaceFunction::one();
        for _ in 0..n {
            acc = self.star(&acc, f)?;
        }
        Ok(acc)
    }

    /// Moyal bracket `f⋆g − g⋆f`.
    pub fn bracket(&self, f: &PhaseSpaceFunction, g: &PhaseSpaceFunction) -> Result<PhaseSpaceFunction> {
        self.star(f, g)?.checked_sub(&self.star(g, f)?)
    }

    /// Anti-Moyal bracket `f⋆g + g⋆f`.
    pub fn anti_bracket(&self, f: &PhaseSpaceFunction, g: &PhaseSpaceFunction) -> Result<PhaseSpaceFunction> {
        self.star(f, g)?.checked_add(&self.star(g, f)?)
    }

    /// `lim ħ→0 F`: the ħ-independent part.
    pub fn classical_limit(&self, f: &PhaseSpaceFunction) -> Result<PhaseSpaceFunction> {
        if self.mode != HbarMode::Formal {
            return Err(Error::HbarFixedMode);
        }
        Ok(f.hbar_part(0))
    }

    /// `lim ħ→0 F/(iħ)`. Fails when `F` has an ħ-independent part.
    pub fn leading_order(&self, f: &PhaseSpaceFunction) -> Result<PhaseSpaceFunction> {
        if self.mode != HbarMode::Formal {
            return Err(Error::HbarFixedMode);
        }
        if !f.hbar_part(0).is_zero() {
            return Err(Error::SingularLimit);
        }
        Ok(f.hbar_part(1).scale(&(-Scalar::i())))
    }
}

/// Derivative orders with possibly nonzero contribution. Bounded by the
/// polynomial operand: the left factor is differentiated by (q1,p1,q2,p2),
/// the right by (p1,q1,p2,q2).
fn series_orders(f: &PhaseSpaceFunction, g: &PhaseSpaceFunction) -> BTreeSet<Orders> {
    let left_exps = |k: &MonomialKey| {
        [k.exps[Var::Q1.index()], k.exps[Var::P1.index()], k.exps[Var::Q2.index()], k.exps[Var::P2.index()]]
    };
    let right_exps = |k: &MonomialKey| {
        [k.exps[Var::P1.index()], k.exps[Var::Q1.index()], k.exps[Var::P2.index()], k.exps[Var::Q2.index()]]
    };
    let max_of = |h: &PhaseSpaceFunction, pick: &dyn Fn(&MonomialKey) -> Orders| {
        h.terms.keys().fold([0u16; 4], |mut acc, k| {
            for (a, e) in acc.iter_mut().zip(pick(k)) {
                *a = (*a).max(e);
            }
            acc
        })
    };

    let (boxes, cap): (Vec<Orders>, Option<Orders>) = if f.is_polynomial() {
        let cap = g.is_polynomial().then(|| max_of(g, &right_exps));
        (f.terms.keys().map(left_exps).collect(), cap)
    } else {
        (g.terms.keys().map(right_exps).collect(), None)
    };

    let mut out = BTreeSet::new();
    for mut b in boxes {
        if let Some(c) = cap {
            for (x, y) in b.iter_mut().zip(c) {
                *x = (*x).min(y);
            }
        }
        for a in 0..=b[0] {
            for bb in 0..=b[1] {
                for c in 0..=b[2] {
                    for d in 0..=b[3] {
                        out.insert([a, bb, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Poisson bracket `Σ_k ∂_{q_k}F ∂_{p_k}G − ∂_{p_k}F ∂_{q_k}G` of polynomials.
pub fn poisson_bracket(f: &PhaseSpaceFunction, g: &PhaseSpaceFunction) -> Result<PhaseSpaceFunction> {
    if !f.is_polynomial() || !g.is_polynomial() {
        return Err(Error::EnvelopeUnsupported);
    }
    let mut out = PhaseSpaceFunction::zero();
    for (q, p) in [(Var::Q1, Var::P1), (Var::Q2, Var::P2)] {
        out = out + f.differentiate(q).pointwise_mul(&g.differentiate(p))?;
        out = out - f.differentiate(p).pointwise_mul(&g.differentiate(q))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = PhaseSpaceFunction;

    fn half_i_hbar() -> F {
        F::hbar().scale(&Scalar::i().scale_rational(&BigRational::new(1.into(), 2.into())))
    }

    #[test]
    fn canonical_pair_star() {
        let m = Moyal::formal();
        let prod = m.star(&F::q1(), &F::p1()).unwrap();
        assert_eq!(prod, F::q1().pointwise_mul(&F::p1()).unwrap() + half_i_hbar());
    }

    #[test]
    fn canonical_brackets() {
        let m = Moyal::formal();
        let ih = F::hbar().scale(&Scalar::i());
        for v in Var::ALL {
            for w in Var::ALL {
                let b = m.bracket(&F::var(v), &F::var(w)).unwrap();
                let expected = match (v, w) {
                    (Var::Q1, Var::P1) | (Var::Q2, Var::P2) => ih.clone(),
                    (Var::P1, Var::Q1) | (Var::P2, Var::Q2) => -&ih,
                    _ => F::zero(),
                };
                assert_eq!(b, expected, "[{v:?},{w:?}]");
            }
        }
    }

    #[test]
    fn self_bracket_vanishes() {
        let m = Moyal::formal();
        let f = F::q1().pointwise_pow(3).unwrap() + F::p2().pointwise_mul(&F::p1()).unwrap();
        assert!(m.bracket(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn example_brackets_at_unit_hbar() {
        let m = Moyal::unit();
        let w1 = F::p2();
        let w2 = F::q1().pointwise_mul(&F::p2()).unwrap() - F::q2().pointwise_mul(&F::p1()).unwrap();
        let p1 = F::q2();
        assert_eq!(m.bracket(&w1, &w2).unwrap(), F::p1().scale(&Scalar::i()));
        assert_eq!(m.bracket(&w2, &p1).unwrap(), F::q1().scale(&-Scalar::i()));
    }

    #[test]
    fn poisson_examples() {
        assert_eq!(poisson_bracket(&F::q1(), &F::p1()).unwrap(), F::one());
        assert!(poisson_bracket(&F::q1(), &F::p2()).unwrap().is_zero());
        let w2 = F::q1().pointwise_mul(&F::p2()).unwrap() - F::q2().pointwise_mul(&F::p1()).unwrap();
        assert_eq!(poisson_bracket(&w2, &F::q1()).unwrap(), F::q2());
        assert_eq!(poisson_bracket(&F::vacuum(), &F::q1()), Err(Error::EnvelopeUnsupported));
    }

    #[test]
    fn limits() {
        let m = Moyal::formal();
        let prod = m.star(&F::q1(), &F::p1()).unwrap();
        assert_eq!(m.classical_limit(&prod).unwrap(), F::q1().pointwise_mul(&F::p1()).unwrap());
        let br = m.bracket(&F::q1(), &F::p1()).unwrap();
        assert_eq!(m.leading_order(&br).unwrap(), F::one());
        assert_eq!(Moyal::unit().classical_limit(&prod), Err(Error::HbarFixedMode));
        assert_eq!(m.leading_order(&prod), Err(Error::SingularLimit));
    }

    #[test]
    fn gaussian_operands() {
        let m = Moyal::unit();
        let v = F::vacuum();
        assert_eq!(m.star(&v, &v), Err(Error::NonTerminatingStar));
        assert_eq!(Moyal::formal().star(&F::q1(), &v), Err(Error::EnvelopeInFormalMode));
        // q1 ⋆ G = q1 G + (i/2) ∂_{p1} G
        let lhs = m.star(&F::q1(), &v).unwrap();
        let expected = F::q1() - F::p1().scale(&Scalar::i());
        assert_eq!(lhs, expected.with_envelope(Envelope::Vacuum));
        // G ⋆ q1 = q1 G − (i/2) ∂_{p1} G
        let rhs = m.star(&v, &F::q1()).unwrap();
        let expected = F::q1() + F::p1().scale(&Scalar::i());
        assert_eq!(rhs, expected.with_envelope(Envelope::Vacuum));
    }

    #[test]
    fn conjugation_reverses_order() {
        let m = Moyal::formal();
        let f = F::q1().scale(&Scalar::i()) + F::p1().pointwise_pow(2).unwrap();
        let g = F::p1().pointwise_mul(&F::q1()).unwrap().scale(&(Scalar::one() + Scalar::i()));
        let lhs = m.star(&f, &g).unwrap().conjugate();
        let rhs = m.star(&g.conjugate(), &f.conjugate()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
