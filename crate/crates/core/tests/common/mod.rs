//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use mcsusy::clifford::{Blade, Multivector};
use mcsusy::star::{ExactScalar, Moyal, PhaseSpaceFunction, Var};
use mcsusy::susy::SusyInputs;
use mcsusy::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub type F = PhaseSpaceFunction;

/// Draws `n` values from `strategy` with a fixed seed.
pub fn samples<S: Strategy>(strategy: S, n: usize, seed: u8) -> Vec<S::Value> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    (0..n).map(|_| strategy.new_tree(&mut runner).expect("strategy").current()).collect()
}

/// Small complex rationals `(a + ib)/d`.
pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, d)| {
        Scalar::from_ratio(a, d) + Scalar::from_ratio(b, d) * Scalar::i()
    })
}

pub fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

/// Polynomials with up to `terms` terms and each exponent at most `max_exp`.
pub fn polynomial(max_exp: u16, terms: usize) -> impl Strategy<Value = F> {
    prop::collection::vec((nonzero_scalar(), prop::array::uniform4(0..=max_exp)), 1..=terms).prop_map(|ts| {
        let mut f = F::zero();
        for (c, e) in ts {
            f = &f + &F::monomial(c, e, 0);
        }
        f
    })
}

/// Polynomials that may carry explicit powers of ħ.
pub fn hbar_polynomial(max_exp: u16, terms: usize) -> impl Strategy<Value = F> {
    prop::collection::vec((nonzero_scalar(), prop::array::uniform4(0..=max_exp), 0u16..=2), 1..=terms).prop_map(|ts| {
        let mut f = F::zero();
        for (c, e, h) in ts {
            f = &f + &F::monomial(c, e, h);
        }
        f
    })
}

pub fn real_polynomial(max_exp: u16, terms: usize) -> impl Strategy<Value = F> {
    polynomial(max_exp, terms).prop_map(|f| &f + &f.conjugate())
}

pub fn multivector() -> impl Strategy<Value = Multivector> {
    prop::collection::vec((0u8..16, nonzero_scalar()), 0..=6).prop_map(|ts| {
        Multivector::from_terms(ts.into_iter().map(|(m, c)| (Blade::from_mask(m).unwrap(), c)))
    })
}

fn pm(a: &F, b: &F) -> F {
    a.pointwise_mul(b).expect("polynomial product")
}

/// `(q + ip)/√2` for one mode, or its conjugate.
fn holomorphic(q: Var, p: Var, conjugate: bool) -> F {
    let z = (&F::var(q) + &F::var(p).scale(&Scalar::i())).scale(&Scalar::inv_sqrt(2));
    if conjugate {
        z.conjugate()
    } else {
        z
    }
}

/// Polynomial in two star-commuting functions `u, v`.
fn poly_in(u: &F, v: &F, coeffs: &[(Scalar, u32, u32)]) -> F {
    let mut f = F::zero();
    for (c, a, b) in coeffs {
        f = &f + &pm(&u.pointwise_pow(*a).unwrap(), &v.pointwise_pow(*b).unwrap()).scale(c);
    }
    f
}

fn inputs_from(c1: &F, c2: &F) -> SusyInputs {
    // W = √2 Re C, P = √2 Im C.
    let r = Scalar::inv_sqrt(2);
    let im = -Scalar::i() * Scalar::inv_sqrt(2);
    let w1 = (c1 + &c1.conjugate()).scale(&r);
    let p1 = (c1 - &c1.conjugate()).scale(&im);
    let w2 = (c2 + &c2.conjugate()).scale(&r);
    let p2 = (c2 - &c2.conjugate()).scale(&im);
    SusyInputs::new(w1, w2, p1, p2)
}

/// Terms `c·u^a·v^b` with `a + b ≤ 2`.
fn coeff_list(terms: usize) -> impl Strategy<Value = Vec<(Scalar, u32, u32)>> {
    let powers = (0u32..=2, 0u32..=2).prop_filter("total degree at most 2", |(a, b)| a + b <= 2);
    prop::collection::vec((nonzero_scalar(), powers), 1..=terms)
        .prop_map(|ts| ts.into_iter().map(|(c, (a, b))| (c, a, b)).collect())
}

/// Inputs with `[C₁, C₂]_M = 0` by construction. Two families:
/// both `C`s polynomials in one commuting pair drawn from
/// `{z₁, z̄₁} × {z₂, z̄₂}`; or `C₁` and part of `C₂` polynomials in a single
/// mode-2 variable, plus an arbitrary mode-1 polynomial in `C₂`.
pub fn valid_system() -> impl Strategy<Value = SusyInputs> {
    let pair = (any::<bool>(), any::<bool>(), coeff_list(3), coeff_list(3)).prop_map(|(c1b, c2b, a, b)| {
        let u = holomorphic(Var::Q1, Var::P1, c1b);
        let v = holomorphic(Var::Q2, Var::P2, c2b);
        inputs_from(&poly_in(&u, &v, &a), &poly_in(&u, &v, &b))
    });
    let mixed = (any::<bool>(), coeff_list(2), coeff_list(2), polynomial(2, 3)).prop_map(|(bar, a, b, k)| {
        let z = holomorphic(Var::Q2, Var::P2, bar);
        let one = F::one();
        let k = k.substitute_linear(&mode_one_only());
        let c2 = &poly_in(&z, &one, &b) + &k;
        inputs_from(&poly_in(&z, &one, &a), &c2)
    });
    prop_oneof![pair, mixed]
}

/// Linear map sending `q₂, p₂` to zero and fixing `q₁, p₁`.
fn mode_one_only() -> [[Scalar; 4]; 4] {
    let mut m: [[Scalar; 4]; 4] = Default::default();
    m[Var::Q1.index()][Var::Q1.index()] = Scalar::one();
    m[Var::P1.index()][Var::P1.index()] = Scalar::one();
    m
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

/// Bopp-shift evaluation of `f ⋆ g`: `f` is read as the Weyl-ordered
/// operator in `Q = q + (iħ/2)∂_p`, `P = p − (iħ/2)∂_q`, with McCoy's
/// ordering `q^a p^c ↦ 2^−a Σ_k C(a,k) Q^k P^c Q^(a−k)` in each mode.
pub fn bopp_star(m: &Moyal, f: &F, g: &F) -> F {
    let h = m.hbar();
    let half_i_h = h.scale(&(Scalar::i() * Scalar::from_ratio(1, 2)));
    let shift_q = |q: Var, p: Var, x: &F| &pm(&F::var(q), x) + &pm(&half_i_h, &x.differentiate(p));
    let shift_p = |q: Var, p: Var, x: &F| &pm(&F::var(p), x) - &pm(&half_i_h, &x.differentiate(q));
    let weyl = |q: Var, p: Var, a: u32, c: u32, x: &F| {
        let mut acc = F::zero();
        for k in 0..=a {
            let mut y = x.clone();
            for _ in 0..a - k {
                y = shift_q(q, p, &y);
            }
            for _ in 0..c {
                y = shift_p(q, p, &y);
            }
            for _ in 0..k {
                y = shift_q(q, p, &y);
            }
            acc = &acc + &y.scale(&Scalar::from_int(binomial(a, k)));
        }
        acc.scale(&Scalar::from_ratio(1, 1i64 << a))
    };
    let mut out = F::zero();
    for (key, c) in f.terms() {
        let [a1, a2, c1, c2] = key.exps.map(u32::from);
        let y = weyl(Var::Q2, Var::P2, a2, c2, g);
        let y = weyl(Var::Q1, Var::P1, a1, c1, &y);
        let y = pm(&y, &h.pointwise_pow(u32::from(key.hbar)).unwrap());
        out = &out + &y.scale(c);
    }
    m.normalize(&out)
}

fn double_factorial_odd(k: u32) -> BigInt {
    // (2k − 1)!!
    (1..=k).fold(BigInt::from(1), |acc, j| acc * BigInt::from(2 * j - 1))
}

/// `∫ x^e exp(−a x²) dx / √π · a^(1/2)` for `a = 1` (rate 1) or the
/// squared rate `a = 2`: `(e−1)!! / (2a)^(e/2)` for even `e`, zero for odd.
fn gaussian_moment(e: u16, a: u32) -> BigRational {
    if e % 2 == 1 {
        return BigRational::from_integer(0.into());
    }
    let k = u32::from(e) / 2;
    BigRational::new(double_factorial_odd(k), BigInt::from(2 * a).pow(k))
}

/// `∫ f` for `f = π^s · poly · exp(−|z|²)` from tabulated Gaussian moments.
pub fn moment_integral(f: &F) -> ExactScalar {
    let mut total = Scalar::zero();
    for (key, c) in f.terms() {
        let mut r = BigRational::from_integer(1.into());
        for e in key.exps {
            r *= gaussian_moment(e, 1);
        }
        total = total + c.clone() * Scalar::from_rational(r);
    }
    ExactScalar::new(total, f.pi_power() + 2)
}

/// `∫ f g` for two vacuum-enveloped functions: the envelope becomes
/// `exp(−2|z|²)`, which contributes `π²/4` and moments at rate 2.
pub fn moment_overlap(f: &F, g: &F) -> ExactScalar {
    let mut total = Scalar::zero();
    for (kf, cf) in f.terms() {
        for (kg, cg) in g.terms() {
            let mut r = BigRational::new(1.into(), 4.into());
            for j in 0..4 {
                r *= gaussian_moment(kf.exps[j] + kg.exps[j], 2);
            }
            total = total + cf.clone() * cg.clone() * Scalar::from_rational(r);
        }
    }
    ExactScalar::new(total, f.pi_power() + g.pi_power() + 2)
}

/// Blade product by rewriting the index word: bubble-sort adjacent
/// transpositions (each flips the sign) and cancel `e_j e_j = 1`.
pub fn naive_blade_product(a: Blade, b: Blade) -> (i8, Blade) {
    let mut word: Vec<usize> = a.indices();
    word.extend(b.indices());
    let mut sign = 1i8;
    loop {
        let mut changed = false;
        let mut k = 0;
        while k + 1 < word.len() {
            if word[k] > word[k + 1] {
                word.swap(k, k + 1);
                sign = -sign;
                changed = true;
            } else if word[k] == word[k + 1] {
                word.drain(k..k + 2);
                changed = true;
                continue;
            }
            k += 1;
        }
        if !changed {
            break;
        }
    }
    (sign, Blade::from_indices(&word))
}
