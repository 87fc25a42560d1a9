//! Two-mode Wigner functions built by star-ladder action on the vacuum.
//!
//! `(z|k_𝒜,k_ℬ; m_𝒜,m_ℬ)` is the Wigner function of `|k_𝒜 k_ℬ⟩⟨m_𝒜 m_ℬ|`:
//!
//! ```text
//! 𝒜̄^k_𝒜 ⋆ ℬ̄^k_ℬ ⋆ W₀ ⋆ 𝒜^m_𝒜 ⋆ ℬ^m_ℬ / √(k_𝒜! k_ℬ! m_𝒜! m_ℬ!)
//! ```
//!
//! The diagonal functions (`k = m`) are the ones usually called Wigner
//! functions of number states. Left star multiplication by the ladder
//! functions moves the ket indices and leaves the bra indices alone, which
//! is why the ladder relations are stated on the general family.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::mc::Spinor;
use crate::scalar::Scalar;
use crate::star::{Moyal, PhaseSpaceFunction, Var};
use crate::susy::{Check, Report};

type F = PhaseSpaceFunction;

/// Mode occupation numbers `(n_𝒜, n_ℬ)`.
pub type Modes = [u32; 2];

/// `𝒜 = −(q₁ + ip₁)/√2`.
pub fn lowering_a() -> F {
    lowering(Var::Q1, Var::P1)
}

/// `ℬ = −(q₂ + ip₂)/√2`.
pub fn lowering_b() -> F {
    lowering(Var::Q2, Var::P2)
}

fn lowering(q: Var, p: Var) -> F {
    (&F::var(q) + &F::var(p).scale(&Scalar::i())).scale(&-Scalar::inv_sqrt(2))
}

/// `W₀ = π⁻² exp(−(q₁² + q₂² + p₁² + p₂²))`.
pub fn vacuum_wigner() -> F {
    F::vacuum().times_pi_power(-2)
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

fn cache() -> &'static Mutex<HashMap<(Modes, Modes), F>> {
    static CACHE: OnceLock<Mutex<HashMap<(Modes, Modes), F>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `(z|ket; bra)`. Powers of a single ladder function star-multiply
/// pointwise, and functions of different modes star-commute, so both
/// ladder strings are formed pointwise before the two star products.
pub fn wigner_function(ket: Modes, bra: Modes) -> Result<F> {
    if let Some(f) = cache().lock().expect("wigner cache").get(&(ket, bra)) {
        return Ok(f.clone());
    }
    let m = Moyal::unit();
    let (a, b) = (lowering_a(), lowering_b());
    let left = a.conjugate().pointwise_pow(ket[0])?.pointwise_mul(&b.conjugate().pointwise_pow(ket[1])?)?;
    let right = a.pointwise_pow(bra[0])?.pointwise_mul(&b.pointwise_pow(bra[1])?)?;
    let norm = factorial(ket[0]) * factorial(ket[1]) * factorial(bra[0]) * factorial(bra[1]);
    let f = m.star(&m.star(&left, &vacuum_wigner())?, &right)?.scale(&Scalar::inv_sqrt(norm));
    cache().lock().expect("wigner cache").insert((ket, bra), f.clone());
    Ok(f)
}

/// The diagonal Wigner function `(z|n_𝒜, n_ℬ)`.
pub fn diagonal_wigner(n: Modes) -> Result<F> {
    wigner_function(n, n)
}

/// `(z|j, n_𝒜, n_ℬ) = |j⟩ ⊗ (z|n_𝒜, n_ℬ)`.
pub fn wigner_state(j: u8, n: Modes) -> Result<Spinor> {
    Spinor::atomic(j, diagonal_wigner(n)?)
}

/// `|j⟩ ⊗ (z|ket; bra)`; a ket index of `None` (one step below zero)
/// gives the zero spinor, matching the vanishing `√0` prefactors.
pub(crate) fn state_or_zero(j: u8, ket: [Option<u32>; 2], bra: Modes) -> Result<Spinor> {
    match ket {
        [Some(a), Some(b)] => Spinor::atomic(j, wigner_function([a, b], bra)?),
        _ => Ok(Spinor::zero()),
    }
}

/// Coefficients of the Laguerre polynomial `L_n(x) = Σ (−1)^k C(n,k) x^k / k!`.
pub fn laguerre(n: u32) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut binom = BigInt::from(1u32);
    let mut fact = BigInt::from(1u32);
    for k in 0..=n {
        if k > 0 {
            binom = binom * BigInt::from(n - k + 1) / BigInt::from(k);
            fact *= BigInt::from(k);
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        out.push(BigRational::new(binom.clone() * sign, fact.clone()));
    }
    out
}

fn laguerre_of(n: u32, x: &F) -> Result<F> {
    let mut acc = F::zero();
    for (k, c) in laguerre(n).into_iter().enumerate() {
        acc = &acc + &x.pointwise_pow(k as u32)?.scale(&Scalar::from_rational(c));
    }
    Ok(acc)
}

/// `(−1)^(n_𝒜+n_ℬ) L_{n_𝒜}(4𝒜𝒜̄) L_{n_ℬ}(4ℬℬ̄) W₀`. The sign per quantum is
/// fixed by the one-quantum states and the magnitude by unit integral.
pub fn laguerre_form(n: Modes) -> Result<F> {
    let four = Scalar::from_int(4);
    let (a, b) = (lowering_a(), lowering_b());
    let xa = a.pointwise_mul(&a.conjugate())?.scale(&four);
    let xb = b.pointwise_mul(&b.conjugate())?.scale(&four);
    let sign = if (n[0] + n[1]).is_multiple_of(2) { Scalar::one() } else { Scalar::from_int(-1) };
    let poly = laguerre_of(n[0], &xa)?.pointwise_mul(&laguerre_of(n[1], &xb)?)?.scale(&sign);
    poly.pointwise_mul(&vacuum_wigner())
}

/// Number functions `N_𝒜 = 𝒜̄𝒜 − ½` and `N_ℬ = ℬ̄ℬ − ½`.
pub fn number_functions() -> (F, F) {
    let half = F::constant(Scalar::from_ratio(1, 2));
    let (a, b) = (lowering_a(), lowering_b());
    let na = &a.conjugate().pointwise_mul(&a).expect("polynomial") - &half;
    let nb = &b.conjugate().pointwise_mul(&b).expect("polynomial") - &half;
    (na, nb)
}

/// Ladder relations at `(n_𝒜, n_ℬ)`: lowering, raising and number actions
/// of both modes, with the bra held at `(n_𝒜, n_ℬ)`.
pub fn ladder_check(n: Modes) -> Result<Report> {
    let m = Moyal::unit();
    let w = diagonal_wigner(n)?;
    let (na, nb) = number_functions();
    let ops = [
        ("a", lowering_a(), na, 0usize),
        ("b", lowering_b(), nb, 1usize),
    ];
    let mut r = Report::new();
    let tag = format!("nA={} nB={}", n[0], n[1]);
    for (name, low, number, slot) in ops {
        let k = n[slot];
        let lowered = m.star(&low, &w)?;
        let expected = if k == 0 {
            F::zero()
        } else {
            let mut ket = n;
            ket[slot] -= 1;
            wigner_function(ket, n)?.scale(&Scalar::sqrt(k as u64))
        };
        r.push(Check::function(&format!("eq59 lower_{name} {tag}"), &lowered.checked_sub(&expected)?));

        let raised = m.star(&low.conjugate(), &w)?;
        let mut ket = n;
        ket[slot] += 1;
        let expected = wigner_function(ket, n)?.scale(&Scalar::sqrt(k as u64 + 1));
        r.push(Check::function(&format!("eq59 raise_{name} {tag}"), &raised.checked_sub(&expected)?));

        let counted = m.star(&number, &w)?;
        let expected = w.scale(&Scalar::from_int(k as i64));
        r.push(Check::function(&format!("eq59 number_{name} {tag}"), &counted.checked_sub(&expected)?));
    }
    Ok(r)
}

pub(crate) fn checked_index(n: i64, what: &str) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::IndexOutOfRange(format!("{what} = {n}")))
}
