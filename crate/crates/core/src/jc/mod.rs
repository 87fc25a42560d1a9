//! Jaynes–Cummings-type systems: two choices of `(W₁, W₂, P₁, P₂)` whose
//! partner Hamiltonians describe a two-level atom coupled to two field
//! modes, with exact spectra, dressed states and constants of motion.

pub mod wigner;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mc::{pauli, sigma_minus, sigma_plus, McMatrix, Spinor};
use crate::scalar::Scalar;
use crate::star::{Moyal, PhaseSpaceFunction, Var};
use crate::susy::{jc_coupling, Check, Report, SusyInputs, SusySystem};

pub use wigner::{
    diagonal_wigner, ladder_check, laguerre_form, lowering_a, lowering_b, vacuum_wigner, wigner_function,
    wigner_state, Modes,
};

type F = PhaseSpaceFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Example {
    /// `W₁ = p₂, P₁ = q₂`: resonant coupling to the 𝒜 mode.
    One,
    /// `W₁ = p₁, P₁ = −q₁`: coupling through `ℬ̄`.
    Two,
}

impl Example {
    pub fn from_number(n: i64) -> Result<Self> {
        match n {
            1 => Ok(Example::One),
            2 => Ok(Example::Two),
            _ => Err(Error::InvalidArgument(format!("example must be 1 or 2, got {n}"))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Example::One => 1,
            Example::Two => 2,
        }
    }

    fn k_vars(self) -> ([Var; 2], &'static str) {
        match self {
            Example::One => ([Var::Q1, Var::P1], "q1, p1"),
            Example::Two => ([Var::Q2, Var::P2], "q2, p2"),
        }
    }

    /// Input functions with `P₂ = p₁p₂ + q₁q₂ + K`.
    pub fn inputs(self, k: &F) -> SusyInputs {
        let (q1, q2, p1, p2) = (F::q1(), F::q2(), F::p1(), F::p2());
        let pm = |a: &F, b: &F| a.pointwise_mul(b).expect("polynomial product");
        let w2 = &pm(&q1, &p2) - &pm(&q2, &p1);
        let p2f = &(&pm(&p1, &p2) + &pm(&q1, &q2)) + k;
        match self {
            Example::One => SusyInputs::new(p2, w2, q2, p2f),
            Example::Two => SusyInputs::new(p1, w2, -&q1, p2f),
        }
    }
}

/// `λ` for the bare state `(z|j, n_𝒜, n_ℬ)` with `K = 0`. Example 1:
/// `λ₁ = n_ℬ(2n_𝒜+3)`, `λ₂ = (n_ℬ+1)(2n_𝒜+1)`; Example 2 follows by
/// `(1, n_𝒜, n_ℬ) ↔ (2, n_ℬ, n_𝒜)`.
pub fn eigenvalue(example: Example, j: u8, n: Modes) -> Result<i64> {
    let (na, nb) = (n[0] as i64, n[1] as i64);
    match (example, j) {
        (Example::One, 1) => Ok(nb * (2 * na + 3)),
        (Example::One, 2) => Ok((nb + 1) * (2 * na + 1)),
        (Example::Two, 1 | 2) => eigenvalue(Example::One, 3 - j, [n[1], n[0]]),
        _ => Err(Error::IndexOutOfRange(format!("atomic level {j} (expected 1 or 2)"))),
    }
}

/// A JC system with its mode functions.
#[derive(Clone, Debug)]
pub struct JcSystem {
    pub example: Example,
    pub k: F,
    pub system: SusySystem,
    pub a: F,
    pub b: F,
    pub n_a: F,
    pub n_b: F,
    pub h_a: F,
    pub h_b: F,
    pub h_int: F,
    /// `X = −(i/2)[W₂, K]_M`.
    pub x: F,
    /// `Y = ½{𝒜ℬ̄ + 𝒜̄ℬ, K}_M + ½K⋆K`.
    pub y: F,
}

impl JcSystem {
    /// Builds Example 1 or 2 with ħ = 1. `K` must be a real polynomial in
    /// `(q₁, p₁)` for Example 1 and in `(q₂, p₂)` for Example 2.
    pub fn new(example: Example, k: F) -> Result<Self> {
        let (vars, allowed) = example.k_vars();
        if !k.is_polynomial() || !k.depends_only_on(&vars) || k.max_hbar_power() > 0 {
            return Err(Error::BadKArgument { allowed, got: k.to_string() });
        }
        if !k.is_real() {
            return Err(Error::NotRealValued("K"));
        }
        let m = Moyal::unit();
        let system = SusySystem::new(m, example.inputs(&k))?;
        let (a, b) = (lowering_a(), lowering_b());
        let (n_a, n_b) = wigner::number_functions();
        let half = F::constant(Scalar::from_ratio(1, 2));
        let h_a = &n_a + &half;
        let h_b = &n_b + &half;
        let x = m.bracket(&system.inputs().w2, &k)?.scale(&(-Scalar::i() * Scalar::from_ratio(1, 2)));
        let exchange = &a.pointwise_mul(&b.conjugate())? + &a.conjugate().pointwise_mul(&b)?;
        let y = (&m.anti_bracket(&exchange, &k)? + &m.star(&k, &k)?).scale(&Scalar::from_ratio(1, 2));
        let h_int = match example {
            Example::One => &system.h_star - &h_a,
            Example::Two => &system.h_star - &h_b,
        };
        Ok(JcSystem { example, k, system, a, b, n_a, n_b, h_a, h_b, h_int, x, y })
    }

    pub fn moyal(&self) -> Moyal {
        self.system.moyal()
    }

    pub fn has_zero_k(&self) -> bool {
        self.k.is_zero()
    }

    fn require_zero_k(&self) -> Result<()> {
        if self.has_zero_k() {
            Ok(())
        } else {
            Err(Error::UnsupportedK)
        }
    }

    /// The structural closed forms of the example: canonical ladder pairs,
    /// the mode rewriting of `W₂, P₂`, and the forms of `H*`, `B±`, `H₁`, `H₂`.
    pub fn verify_structure(&self) -> Result<Report> {
        let m = self.moyal();
        let (a, b) = (&self.a, &self.b);
        let (ab, bb) = (a.conjugate(), b.conjugate());
        let one = F::one();
        let pm = |x: &F, y: &F| x.pointwise_mul(y);
        let mut r = Report::new();
        r.push(Check::function("eq48", &(&m.bracket(a, &ab)? - &one)));
        r.push(Check::function("eq49", &(&m.bracket(b, &bb)? - &one)));
        r.push(Check::function("cross_ab", &m.bracket(a, b)?));
        r.push(Check::function("cross_ab_bar", &m.bracket(a, &bb)?));

        let inputs = self.system.inputs();
        let w2 = (&pm(&ab, b)? - &pm(a, &bb)?).scale(&-Scalar::i());
        r.push(Check::function("eq50_w2", &(&inputs.w2 - &w2)));
        let p2 = &(&pm(a, &bb)? + &pm(&ab, b)?) + &self.k;
        r.push(Check::function("eq50_p2", &(&inputs.p2 - &p2)));
        r.push(Check::function(
            "eq51_a",
            &(&m.star(&ab, a)? - &self.n_a),
        ));
        r.push(Check::function("eq51_b", &(&m.star(&bb, b)? - &self.n_b)));

        let ladder = self.system.jc_ladder()?;
        let two = Scalar::from_int(2);
        let (h_star, b_sign, coupled, own_mode) = match self.example {
            Example::One => {
                let h = &(&self.h_a + &pm(&self.n_b, &(&self.n_a + &one))?.scale(&two)) + &self.y;
                (h, Scalar::from_int(-1), a.clone(), "eq48_ladder")
            }
            Example::Two => {
                let h = &(&self.h_b + &pm(&self.n_a, &(&self.n_b + &one))?.scale(&two)) + &self.y;
                (h, Scalar::one(), bb.clone(), "ex2_ladder")
            }
        };
        r.push(Check::function(own_mode, &(&ladder.a - &coupled)));
        r.push(Check::function("eq52_hstar", &(&self.system.h_star - &h_star)));
        let inner = &(&self.n_b - &self.n_a) + &self.x;
        for (label, sign, actual) in [
            ("eq52_bplus", Scalar::one(), &self.system.b_plus),
            ("eq52_bminus", Scalar::from_int(-1), &self.system.b_minus),
        ] {
            let expected =
                (&F::constant(b_sign.clone()) + &inner.scale(&(&two * &sign))).scale(&Scalar::i());
            r.push(Check::function(label, &(actual - &expected)));
        }
        r.extend(self.system.verify_jc_decomposition()?);

        if self.has_zero_k() {
            let diag = |c: &F, s: &F| -> Result<McMatrix> {
                McMatrix::diagonal_constant(2, c.clone())
                    .checked_add(&pauli(3).try_map(|e| e.pointwise_mul(s))?)
            };
            let (h1, h2) = match self.example {
                Example::One => {
                    let base = &self.h_int + &self.h_a;
                    let h1 = diag(&base, &(&self.h_a - &self.n_b))?;
                    let h2 = diag(&base, &(&self.h_b - &self.n_a))?.checked_add(&jc_coupling(a, &ab)?)?;
                    (h1, h2)
                }
                Example::Two => {
                    let base = &self.h_int + &self.h_b;
                    let h1 = diag(&base, &-(&self.h_b - &self.n_a))?;
                    let h2 = diag(&base, &-(&self.h_a - &self.n_b))?.checked_add(&jc_coupling(&bb, b)?)?;
                    (h1, h2)
                }
            };
            r.push(Check::matrix("eq55", &self.system.h1.checked_sub(&h1)?));
            r.push(Check::matrix("eq56", &self.system.h2.checked_sub(&h2)?));
        }
        Ok(r)
    }

    /// The generic SUSY report, the structural closed forms and, for
    /// Example 1 with `K = 0`, the constants of motion.
    pub fn verify_all(&self) -> Result<Report> {
        let mut r = self.system.full_report()?;
        r.extend(self.verify_structure()?);
        if self.example == Example::One && self.has_zero_k() {
            r.extend(self.verify_constants()?);
        }
        Ok(r)
    }

    /// `L₁† ⋆ (z|1,…)` for `j = 1` and `L₂ ⋆ (z|2,…)` for `j = 2`: the
    /// intertwined image of a bare state, an eigenspinor of `H₂`.
    pub fn partner_state(&self, j: u8, n: Modes) -> Result<Spinor> {
        let m = self.moyal();
        let bare = wigner_state(j, n)?;
        match j {
            1 => m.apply(&self.system.l1.dagger(), &bare),
            _ => m.apply(&self.system.l2, &bare),
        }
    }

    /// The intertwiner that annihilates `(z|j,…)`: `L₂` for `j = 1`,
    /// `L₁†` for `j = 2`.
    fn kernel_image(&self, j: u8, bare: &Spinor) -> Result<Spinor> {
        let m = self.moyal();
        match j {
            1 => m.apply(&self.system.l2, bare),
            _ => m.apply(&self.system.l1.dagger(), bare),
        }
    }

    /// All exact checks for one bare state and its intertwined partner.
    pub fn check_state(&self, j: u8, n: Modes) -> Result<StateReport> {
        self.require_zero_k()?;
        let m = self.moyal();
        let lambda = eigenvalue(self.example, j, n)?;
        let lam = Scalar::from_int(lambda);
        let tag = format!("j={j} nA={} nB={}", n[0], n[1]);
        let mut r = Report::new();

        let bare = wigner_state(j, n)?;
        let eig = m.is_star_eigen(&self.system.h1, &bare, &lam)?;
        r.push(spinor_check(&format!("eq60 {tag}"), &eig.residual));

        r.push(spinor_check(&format!("kernel {tag}"), &self.kernel_image(j, &bare)?));

        let partner = self.partner_state(j, n)?;
        let partner_nonzero = !partner.is_zero();
        // Zero modes (λ = 0) have no partner; every other level does.
        r.push(Check::flag(
            &format!("partner_exists {tag}"),
            partner_nonzero == (lambda != 0),
            if partner_nonzero { "nonzero" } else { "zero" },
        ));
        if partner_nonzero {
            let label = if j == 1 { "eq66" } else { "eq67" };
            let eig = m.is_star_eigen(&self.system.h2, &partner, &lam)?;
            r.push(spinor_check(&format!("{label} {tag}"), &eig.residual));
        }
        if self.example == Example::One {
            let (label, closed) = if j == 1 {
                let closed = if n[1] == 0 {
                    Spinor::zero()
                } else {
                    dressed_phi(n)?.scale(&(Scalar::from_int(2) * Scalar::sqrt(n[1] as u64)))
                };
                ("eq64", closed)
            } else {
                ("eq65", dressed_psi(n)?.scale(&(Scalar::from_int(2) * Scalar::sqrt(n[1] as u64 + 1))))
            };
            r.push(spinor_check(&format!("{label} {tag}"), &partner.checked_sub(&closed)?));
        }
        Ok(StateReport { row: SpectrumRow { j, n_a: n[0], n_b: n[1], lambda, verified: r.all_pass() }, checks: r })
    }

    /// Exhaustive check over `j ∈ {1,2}` and `n_𝒜, n_ℬ ≤ n_max`.
    pub fn verify_spectrum(&self, n_max: u32) -> Result<SpectrumReport> {
        self.require_zero_k()?;
        let mut tuples = Vec::new();
        for j in [1u8, 2] {
            for na in 0..=n_max {
                for nb in 0..=n_max {
                    tuples.push((j, [na, nb]));
                }
            }
        }
        let results: Vec<StateReport> = tuples
            .into_par_iter()
            .map(|(j, n)| self.check_state(j, n))
            .collect::<Result<_>>()?;
        let mut rows = Vec::with_capacity(results.len());
        let mut checks = Report::new();
        for s in results {
            rows.push(s.row);
            checks.extend(s.checks);
        }
        Ok(SpectrumReport { example: self.example, rows, checks })
    }

    /// Closed forms `R₁ = 8N_ℬ(H_𝒜+1)σ₋σ₊` and
    /// `S₁ = 4(N_ℬ+1)[σ₊σ₋ + 2N_𝒜σ₋σ₊ + H_JC(𝒜)]` for Example 1, `K = 0`.
    pub fn jc_constants(&self) -> Result<(McMatrix, McMatrix)> {
        self.require_zero_k()?;
        if self.example != Example::One {
            return Err(Error::InvalidArgument("closed-form constants are given for example 1".into()));
        }
        let m = self.moyal();
        let one = F::one();
        let pm_pm = m.mc_mul(&sigma_minus(), &sigma_plus())?;
        let pp_mm = m.mc_mul(&sigma_plus(), &sigma_minus())?;
        let r1_coeff = self.n_b.pointwise_mul(&(&self.h_a + &one))?.scale(&Scalar::from_int(8));
        let r1 = pm_pm.try_map(|e| e.pointwise_mul(&r1_coeff))?;
        let inner = pp_mm
            .checked_add(&pm_pm.try_map(|e| e.pointwise_mul(&self.n_a.scale(&Scalar::from_int(2))))?)?
            .checked_add(&jc_coupling(&self.a, &self.a.conjugate())?)?;
        let prefactor = (&self.n_b + &one).scale(&Scalar::from_int(4));
        let s1 = inner.try_map(|e| e.pointwise_mul(&prefactor))?;
        Ok((r1, s1))
    }

    /// Constants of motion of Example 1 against the generic construction.
    pub fn verify_constants(&self) -> Result<Report> {
        let m = self.moyal();
        let generic = self.system.constants_of_motion()?;
        let (r1, s1) = self.jc_constants()?;
        let h1 = &self.system.h1;
        let two = Scalar::from_int(2);
        let mut r = Report::new();
        let one_plus = pauli(0).checked_add(&pauli(3))?;
        let one_minus = pauli(0).checked_sub(&pauli(3))?;
        r.push(Check::matrix(
            "eq61_plus",
            &m.mc_mul(&sigma_plus(), &sigma_minus())?.scale(&two).checked_sub(&one_plus)?,
        ));
        r.push(Check::matrix(
            "eq61_minus",
            &m.mc_mul(&sigma_minus(), &sigma_plus())?.scale(&two).checked_sub(&one_minus)?,
        ));
        r.push(Check::matrix("s2_projection", &generic.s2.checked_sub(&m.mc_mul(h1, &one_plus)?.scale(&two))?));
        r.push(Check::matrix("r1_projection", &generic.r1.checked_sub(&m.mc_mul(h1, &one_minus)?.scale(&two))?));
        r.push(Check::matrix("eq68", &generic.r1.checked_sub(&r1)?));
        r.push(Check::matrix("eq69", &generic.s1.checked_sub(&s1)?));
        r.push(Check::matrix("eq68_commutes", &m.mc_commutator(&r1, h1)?));
        r.push(Check::matrix("eq69_commutes", &m.mc_commutator(&s1, &self.system.h2)?));
        Ok(r)
    }
}

fn spinor_check(label: &str, residual: &Spinor) -> Check {
    if residual.is_zero() {
        Check::flag(label, true, "0")
    } else {
        Check::flag(label, false, format!("[{}, {}]", residual.upper(), residual.lower()))
    }
}

/// `Φ = √(2n_𝒜+2)(z|1, n_𝒜+1, n_ℬ−1) + (z|2, n_𝒜, n_ℬ−1)`, both with bra
/// `(n_𝒜, n_ℬ)`. Defined for `n_ℬ ≥ 1`.
pub fn dressed_phi(n: Modes) -> Result<Spinor> {
    if n[1] == 0 {
        return Err(Error::IndexOutOfRange("dressed state Phi needs nB >= 1".into()));
    }
    let first = wigner::state_or_zero(1, [Some(n[0] + 1), Some(n[1] - 1)], n)?
        .scale(&Scalar::sqrt(2 * n[0] as u64 + 2));
    let second = wigner::state_or_zero(2, [Some(n[0]), Some(n[1] - 1)], n)?;
    first.checked_add(&second)
}

/// `Ψ = (z|1, n_𝒜, n_ℬ+1) − √(2n_𝒜)(z|2, n_𝒜−1, n_ℬ+1)`, both with bra
/// `(n_𝒜, n_ℬ)`; the second term is absent for `n_𝒜 = 0`.
pub fn dressed_psi(n: Modes) -> Result<Spinor> {
    let first = wigner::state_or_zero(1, [Some(n[0]), Some(n[1] + 1)], n)?;
    let second = wigner::state_or_zero(2, [n[0].checked_sub(1), Some(n[1] + 1)], n)?
        .scale(&Scalar::sqrt(2 * n[0] as u64));
    first.checked_sub(&second)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumRow {
    pub j: u8,
    pub n_a: u32,
    pub n_b: u32,
    pub lambda: i64,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct StateReport {
    pub row: SpectrumRow,
    pub checks: Report,
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub example: Example,
    pub rows: Vec<SpectrumRow>,
    pub checks: Report,
}

impl SpectrumReport {
    pub fn failures(&self) -> usize {
        self.checks.failures()
    }

    /// `j,n_a,n_b,lambda,verified` with a header row and LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,n_a,n_b,lambda,verified\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.j, r.n_a, r.n_b, r.lambda, r.verified));
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            example: u8,
            rows: &'a [SpectrumRow],
            failures: usize,
        }
        serde_json::to_string_pretty(&Out { example: self.example.number(), rows: &self.rows, failures: self.failures() })
            .expect("spectrum serializes")
    }
}
