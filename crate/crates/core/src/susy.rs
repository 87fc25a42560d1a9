//! Supersymmetric systems built from four real phase-space functions
//! `(W₁, W₂, P₁, P₂)`: supercharges, partner Hamiltonians, intertwiners,
//! factorizations and constants of motion, all checked exactly.

use serde::Serialize;

use crate::clifford::{witt_basis, Blade, CliffordElement, Multivector};
use crate::error::{Error, Result};
use crate::mc::{pauli, sigma_minus, sigma_plus, McMatrix};
use crate::scalar::Scalar;
use crate::star::{poisson_bracket, HbarMode, Moyal, PhaseSpaceFunction};

type F = PhaseSpaceFunction;

/// One verified identity: `residual` is the rendered difference of the two
/// sides, `"0"` when the identity holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub condition: String,
    pub residual: String,
    pub pass: bool,
}

impl Check {
    pub fn function(label: &str, residual: &F) -> Self {
        Check { condition: label.to_string(), residual: residual.to_string(), pass: residual.is_zero() }
    }

    pub fn matrix(label: &str, residual: &McMatrix) -> Self {
        Check {
            condition: label.to_string(),
            residual: matrix_text(residual),
            pass: residual.is_zero(),
        }
    }

    pub fn flag(label: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check { condition: label.to_string(), residual: detail.into(), pass }
    }
}

fn matrix_text(m: &McMatrix) -> String {
    if m.is_zero() {
        return "0".to_string();
    }
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|e| e.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }

    pub fn get(&self, label: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.condition == label)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            checks: &'a [Check],
            failures: usize,
        }
        serde_json::to_string_pretty(&Out { checks: &self.checks, failures: self.failures() })
            .expect("report serializes")
    }
}

/// The four real inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct SusyInputs {
    pub w1: F,
    pub w2: F,
    pub p1: F,
    pub p2: F,
}

impl SusyInputs {
    pub fn new(w1: F, w2: F, p1: F, p2: F) -> Self {
        SusyInputs { w1, w2, p1, p2 }
    }

    pub fn zero() -> Self {
        Self::new(F::zero(), F::zero(), F::zero(), F::zero())
    }

    /// `C₁ = (W₁ + iP₁)/√2`.
    pub fn c1(&self) -> F {
        complex_combination(&self.w1, &self.p1)
    }

    /// `C₂ = (W₂ + iP₂)/√2`.
    pub fn c2(&self) -> F {
        complex_combination(&self.w2, &self.p2)
    }

    fn named(&self) -> [(&'static str, &F); 4] {
        [("W1", &self.w1), ("W2", &self.w2), ("P1", &self.p1), ("P2", &self.p2)]
    }

    /// Inputs must be real-valued polynomials.
    pub fn validate(&self) -> Result<()> {
        for (name, f) in self.named() {
            if !f.is_polynomial() {
                return Err(Error::EnvelopeUnsupported);
            }
            if !f.is_real() {
                return Err(Error::NotRealValued(name));
            }
        }
        Ok(())
    }
}

fn complex_combination(re: &F, im: &F) -> F {
    (re + &im.scale(&Scalar::i())).scale(&Scalar::inv_sqrt(2))
}

/// Nilpotency conditions: `[C₁,C₂]_M = 0`, equivalently
/// `[W₁,W₂]_M = [P₁,P₂]_M` and `[W₁,P₂]_M = [W₂,P₁]_M`.
pub fn check_conditions(m: &Moyal, inputs: &SusyInputs) -> Result<Report> {
    let mut r = Report::new();
    r.push(Check::function("eq15", &m.bracket(&inputs.c1(), &inputs.c2())?));
    let lhs17 = m.bracket(&inputs.w1, &inputs.w2)?.checked_sub(&m.bracket(&inputs.p1, &inputs.p2)?)?;
    r.push(Check::function("eq17", &lhs17));
    let lhs18 = m.bracket(&inputs.w1, &inputs.p2)?.checked_sub(&m.bracket(&inputs.w2, &inputs.p1)?)?;
    r.push(Check::function("eq18", &lhs18));
    Ok(r)
}

fn lift(c: &F, x: &Multivector) -> CliffordElement<F> {
    CliffordElement::from_terms(x.terms().map(|(b, s)| (b, c.scale(s))))
}

/// Supercharges in blade form, `q₊ = C₁f̌ + C₂ǧ` and `q₋ = C̄₁f + C̄₂g`.
/// No condition is imposed, so this also serves failing inputs.
pub fn supercharges(inputs: &SusyInputs) -> (CliffordElement<F>, CliffordElement<F>) {
    let w = witt_basis();
    let (c1, c2) = (inputs.c1(), inputs.c2());
    let q_plus = lift(&c1, &w.f_check).add(&lift(&c2, &w.g_check));
    let q_minus = lift(&c1.conjugate(), &w.f).add(&lift(&c2.conjugate(), &w.g));
    (q_plus, q_minus)
}

/// Matrix-valued pieces of a super-partner pair.
#[derive(Clone, Debug)]
pub struct Constants {
    pub r1: McMatrix,
    pub r2: McMatrix,
    pub s1: McMatrix,
    pub s2: McMatrix,
}

/// The boson ladder pair `𝒜 = [W₂, C̄₁]_M`, `𝒜̄ = −[W₂, C₁]_M`.
#[derive(Clone, Debug)]
pub struct JcLadder {
    pub a: F,
    pub a_bar: F,
    /// `[𝒜, 𝒜̄]_M`.
    pub commutator: F,
    pub is_canonical: bool,
    /// `√2(𝒜σ₊ + 𝒜̄σ₋)`.
    pub h_jc: McMatrix,
}

/// A validated supersymmetric system and its derived objects.
#[derive(Clone, Debug)]
pub struct SusySystem {
    moyal: Moyal,
    inputs: SusyInputs,
    pub c1: F,
    pub c2: F,
    pub q_plus_blades: CliffordElement<F>,
    pub q_minus_blades: CliffordElement<F>,
    pub q_plus: McMatrix,
    pub q_minus: McMatrix,
    pub omega1: McMatrix,
    pub omega2: McMatrix,
    pub h_s: McMatrix,
    pub h_star: F,
    pub h1: McMatrix,
    pub h2: McMatrix,
    pub h1f: McMatrix,
    pub h2f: McMatrix,
    pub b_plus: F,
    pub b_minus: F,
    pub l1: McMatrix,
    pub l2: McMatrix,
    pub w1p1: F,
    pub w2p2: F,
    pub w2p1: F,
    pub w1w2: F,
}

impl SusySystem {
    /// Validates the inputs and builds everything. Fails with
    /// [`Error::ConditionViolated`] unless the nilpotency conditions hold.
    pub fn new(moyal: Moyal, inputs: SusyInputs) -> Result<Self> {
        inputs.validate()?;
        let inputs = SusyInputs {
            w1: moyal.normalize(&inputs.w1),
            w2: moyal.normalize(&inputs.w2),
            p1: moyal.normalize(&inputs.p1),
            p2: moyal.normalize(&inputs.p2),
        };
        let conditions = check_conditions(&moyal, &inputs)?;
        if !conditions.all_pass() {
            let failed: Vec<String> = conditions
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{}: {}", c.condition, c.residual))
                .collect();
            return Err(Error::ConditionViolated(failed.join("; ")));
        }
        let m = moyal;
        let (c1, c2) = (inputs.c1(), inputs.c2());
        let (q_plus_blades, q_minus_blades) = supercharges(&inputs);
        let q_plus = McMatrix::from_clifford(&q_plus_blades)?;
        let q_minus = McMatrix::from_clifford(&q_minus_blades)?;
        let omega1 = q_plus.checked_add(&q_minus)?;
        let omega2 = q_plus.checked_sub(&q_minus)?.scale(&-Scalar::i());

        let half = Scalar::from_ratio(1, 2);
        let h_s = m.mc_anticommutator(&q_plus, &q_minus)?.scale(&half);

        let w1p1 = m.bracket(&inputs.w1, &inputs.p1)?;
        let w2p2 = m.bracket(&inputs.w2, &inputs.p2)?;
        let w2p1 = m.bracket(&inputs.w2, &inputs.p1)?;
        let w1w2 = m.bracket(&inputs.w1, &inputs.w2)?;

        let mut h_star = F::zero();
        for f in [&inputs.p1, &inputs.p2, &inputs.w1, &inputs.w2] {
            h_star = h_star.checked_add(&m.star(f, f)?)?;
        }
        let h_star = h_star.scale(&half);

        let closed = closed_form_hs(&h_star, &w1p1, &w2p2, &w2p1, &w1w2);
        let closed = McMatrix::from_clifford(&closed)?;
        if closed != h_s {
            return Err(Error::InternalMismatch(format!(
                "SUSY Hamiltonian from the supercharges differs from the closed form by {}",
                matrix_text(&h_s.checked_sub(&closed)?)
            )));
        }

        let b_plus = w1p1.checked_add(&w2p2)?;
        let b_minus = w1p1.checked_sub(&w2p2)?;
        let i_half = Scalar::i() * half;
        let h1f = pauli(3).try_map(|e| e.pointwise_mul(&b_plus.scale(&i_half)))?;
        let h2f = pauli(3)
            .try_map(|e| e.pointwise_mul(&b_minus.scale(&i_half)))?
            .checked_add(&pauli(1).try_map(|e| e.pointwise_mul(&w2p1.scale(&-Scalar::i())))?)?
            .checked_add(&pauli(2).try_map(|e| e.pointwise_mul(&w1w2.scale(&-Scalar::i())))?)?;
        let h1 = McMatrix::diagonal_constant(2, h_star.clone()).checked_add(&h1f)?;
        let h2 = McMatrix::diagonal_constant(2, h_star.clone()).checked_add(&h2f)?;

        let two_i = Scalar::from_int(2) * Scalar::i();
        let l1 = McMatrix::two_by_two(F::zero(), F::zero(), c1.clone(), -&c2).scale(&two_i);
        let l2 = McMatrix::two_by_two(c2.clone(), F::zero(), c1.clone(), F::zero()).scale(&two_i);

        Ok(SusySystem {
            moyal,
            inputs,
            c1,
            c2,
            q_plus_blades,
            q_minus_blades,
            q_plus,
            q_minus,
            omega1,
            omega2,
            h_s,
            h_star,
            h1,
            h2,
            h1f,
            h2f,
            b_plus,
            b_minus,
            l1,
            l2,
            w1p1,
            w2p2,
            w2p1,
            w1w2,
        })
    }

    pub fn moyal(&self) -> Moyal {
        self.moyal
    }

    pub fn inputs(&self) -> &SusyInputs {
        &self.inputs
    }

    /// Supercharge nilpotency, the SUSY algebra, its factorizations and
    /// the hermiticity of the resulting matrices.
    pub fn verify_closure(&self) -> Result<Report> {
        let m = &self.moyal;
        let half = Scalar::from_ratio(1, 2);
        let mut r = Report::new();
        r.push(Check::matrix("q_plus_nilpotent", &m.mc_mul(&self.q_plus, &self.q_plus)?));
        r.push(Check::matrix("q_minus_nilpotent", &m.mc_mul(&self.q_minus, &self.q_minus)?));
        let blade_square = m.mc_mul_blades(&self.q_plus_blades, &self.q_plus_blades)?;
        let predicted = lift(
            &m.bracket(&self.c1, &self.c2)?,
            &witt_basis().f_check.mul(&witt_basis().g_check),
        );
        r.push(Check::flag(
            "q_plus_square_blades",
            blade_square == predicted,
            if blade_square == predicted { "0" } else { "blade-form square differs" },
        ));

        let closed = McMatrix::from_clifford(&closed_form_hs(
            &self.h_star,
            &self.w1p1,
            &self.w2p2,
            &self.w2p1,
            &self.w1w2,
        ))?;
        r.push(Check::matrix("eq22", &self.h_s.checked_sub(&closed)?));
        r.push(Check::matrix("eq20_plus", &m.mc_commutator(&self.q_plus, &self.h_s)?));
        r.push(Check::matrix("eq20_minus", &m.mc_commutator(&self.q_minus, &self.h_s)?));
        let w1sq = m.mc_mul(&self.omega1, &self.omega1)?.scale(&half);
        let w2sq = m.mc_mul(&self.omega2, &self.omega2)?.scale(&half);
        r.push(Check::matrix("eq21_omega1", &self.h_s.checked_sub(&w1sq)?));
        r.push(Check::matrix("eq21_omega2", &self.h_s.checked_sub(&w2sq)?));
        r.push(Check::matrix("omega_anticommutator", &m.mc_anticommutator(&self.omega1, &self.omega2)?));

        let c_form = m
            .anti_bracket(&self.c1.conjugate(), &self.c1)?
            .checked_add(&m.anti_bracket(&self.c2.conjugate(), &self.c2)?)?
            .scale(&half);
        r.push(Check::function("eq23", &c_form.checked_sub(&self.h_star)?));

        let zero2 = McMatrix::zero(2);
        let block = McMatrix::from_blocks(&self.h1, &zero2, &zero2, &self.h2)?;
        r.push(Check::matrix("eq25", &self.h_s.checked_sub(&block)?));
        r.push(Check::flag("h1_diagonal", self.h1.is_diagonal(), if self.h1.is_diagonal() { "0" } else { "off-diagonal entries" }));

        let inv_sqrt2 = Scalar::inv_sqrt(2);
        let q_block =
            McMatrix::from_blocks(&zero2, &self.l1, &self.l2.neg(), &zero2)?.scale(&inv_sqrt2);
        r.push(Check::matrix("eq31", &self.q_plus.checked_sub(&q_block)?));
        r.push(Check::matrix("eq31_dagger", &self.q_plus.dagger().checked_sub(&self.q_minus)?));

        for (label, x) in [
            ("hermitian_h1", &self.h1),
            ("hermitian_h2", &self.h2),
            ("hermitian_hs", &self.h_s),
            ("hermitian_omega1", &self.omega1),
            ("hermitian_omega2", &self.omega2),
        ] {
            r.push(Check::matrix(label, &x.checked_sub(&x.dagger())?));
        }
        Ok(r)
    }

    /// Divisors of zero and the four intertwining relations.
    pub fn verify_intertwining(&self) -> Result<Report> {
        let m = &self.moyal;
        let (l1, l2) = (&self.l1, &self.l2);
        let (l1d, l2d) = (l1.dagger(), l2.dagger());
        let (h1, h2) = (&self.h1, &self.h2);
        let mut r = Report::new();
        r.push(Check::matrix("eq32_l1l2", &m.mc_mul(l1, l2)?));
        r.push(Check::matrix("eq32_l2l1", &m.mc_mul(l2, l1)?));
        let rel = |a: &McMatrix, h: &McMatrix, g: &McMatrix, b: &McMatrix| -> Result<McMatrix> {
            m.mc_mul(a, h)?.checked_sub(&m.mc_mul(g, b)?)
        };
        r.push(Check::matrix("eq33", &rel(l2, h1, h2, l2)?));
        r.push(Check::matrix("eq34", &rel(l1, h2, h1, l1)?));
        r.push(Check::matrix("eq35", &rel(&l2d, h2, h1, &l2d)?));
        r.push(Check::matrix("eq36", &rel(&l1d, h1, h2, &l1d)?));
        Ok(r)
    }

    pub fn constants_of_motion(&self) -> Result<Constants> {
        let m = &self.moyal;
        let (l1d, l2d) = (self.l1.dagger(), self.l2.dagger());
        Ok(Constants {
            r1: m.mc_mul(&self.l1, &l1d)?,
            s2: m.mc_mul(&l2d, &self.l2)?,
            r2: m.mc_mul(&self.l2, &l2d)?,
            s1: m.mc_mul(&l1d, &self.l1)?,
        })
    }

    /// Factorized forms of the partner Hamiltonians and the commutation of
    /// the constants of motion with them.
    pub fn verify_factorization(&self) -> Result<Report> {
        let m = &self.moyal;
        let c = self.constants_of_motion()?;
        let four = Scalar::from_int(4);
        let mut r = Report::new();
        r.push(Check::matrix("eq37", &self.h1.scale(&four).checked_sub(&c.r1.checked_add(&c.s2)?)?));
        r.push(Check::matrix("eq38", &self.h2.scale(&four).checked_sub(&c.r2.checked_add(&c.s1)?)?));
        r.push(Check::matrix("eq41_r1", &m.mc_commutator(&c.r1, &self.h1)?));
        r.push(Check::matrix("eq41_s2", &m.mc_commutator(&c.s2, &self.h1)?));
        r.push(Check::matrix("eq42_r2", &m.mc_commutator(&c.r2, &self.h2)?));
        r.push(Check::matrix("eq42_s1", &m.mc_commutator(&c.s1, &self.h2)?));
        Ok(r)
    }

    /// Conditions, closure, intertwining and factorization in one report.
    pub fn full_report(&self) -> Result<Report> {
        let mut r = check_conditions(&self.moyal, &self.inputs)?;
        r.extend(self.verify_closure()?);
        r.extend(self.verify_intertwining()?);
        r.extend(self.verify_factorization()?);
        Ok(r)
    }

    /// [`full_report`](Self::full_report) plus the classical limits in
    /// formal mode, or the JC decomposition of `H₂` at ħ = 1.
    pub fn verify_all(&self) -> Result<Report> {
        let mut r = self.full_report()?;
        match self.moyal.mode() {
            HbarMode::Formal => r.extend(self.verify_classical_limits()?),
            HbarMode::One => r.extend(self.verify_jc_decomposition()?),
        }
        Ok(r)
    }

    /// The boson pair hidden in the fermionic part of `H₂`. Requires ħ = 1.
    pub fn jc_ladder(&self) -> Result<JcLadder> {
        let m = &self.moyal;
        if m.mode() != HbarMode::One {
            return Err(Error::InvalidArgument("the JC ladder is defined with hbar = 1".into()));
        }
        let a = m.bracket(&self.inputs.w2, &self.c1.conjugate())?;
        let a_bar = -m.bracket(&self.inputs.w2, &self.c1)?;
        let commutator = m.bracket(&a, &a_bar)?;
        let is_canonical = commutator == F::one();
        let h_jc = jc_coupling(&a, &a_bar)?;
        Ok(JcLadder { a, a_bar, commutator, is_canonical, h_jc })
    }

    /// `H₂F = (i/2)B₋σ₃ + √2(𝒜σ₊ + 𝒜̄σ₋)`.
    pub fn verify_jc_decomposition(&self) -> Result<Report> {
        let ladder = self.jc_ladder()?;
        let diag = pauli(3).try_map(|e| e.pointwise_mul(&self.b_minus.scale(&(Scalar::i() * Scalar::from_ratio(1, 2)))))?;
        let rhs = diag.checked_add(&ladder.h_jc)?;
        let mut r = Report::new();
        r.push(Check::matrix("eq43", &self.h2f.checked_sub(&rhs)?));
        Ok(r)
    }

    /// The coefficient functions of the fermionic parts, each paired with
    /// the two functions whose Moyal bracket it is.
    pub fn fermionic_coefficients(&self) -> Vec<(&'static str, &F, &F, &F)> {
        let i = &self.inputs;
        vec![
            ("[W1,P1]", &self.w1p1, &i.w1, &i.p1),
            ("[W2,P2]", &self.w2p2, &i.w2, &i.p2),
            ("[W2,P1]", &self.w2p1, &i.w2, &i.p1),
            ("[W1,W2]", &self.w1w2, &i.w1, &i.w2),
        ]
    }

    /// Formal-ħ limits: `H*` tends to `½(P₁²+P₂²+W₁²+W₂²)` and every
    /// fermionic bracket divided by `iħ` tends to its Poisson bracket.
    pub fn verify_classical_limits(&self) -> Result<Report> {
        let m = &self.moyal;
        let i = &self.inputs;
        let mut classical = F::zero();
        for f in [&i.p1, &i.p2, &i.w1, &i.w2] {
            classical = classical.checked_add(&f.pointwise_mul(f)?)?;
        }
        let classical = classical.scale(&Scalar::from_ratio(1, 2));
        let mut r = Report::new();
        r.push(Check::function("eq5_limit", &m.classical_limit(&self.h_star)?.checked_sub(&classical)?));
        for (label, bracket, f, g) in self.fermionic_coefficients() {
            let lead = m.leading_order(bracket)?;
            let pb = poisson_bracket(f, g)?;
            r.push(Check::function(&format!("poisson_limit {label}"), &lead.checked_sub(&pb)?));
        }
        Ok(r)
    }
}

/// `√2(𝒜σ₊ + 𝒜̄σ₋)` as a 2×2 matrix.
pub fn jc_coupling(a: &F, a_bar: &F) -> Result<McMatrix> {
    let s = Scalar::sqrt(2);
    sigma_plus()
        .try_map(|e| e.pointwise_mul(&a.scale(&s)))?
        .checked_add(&sigma_minus().try_map(|e| e.pointwise_mul(&a_bar.scale(&s)))?)
}

/// `H* + ½([W₁,P₁]e¹³ + [W₂,P₂]e²⁴ + [W₂,P₁](e¹⁴+e²³) + [W₁,W₂](e¹²+e³⁴))`.
fn closed_form_hs(h_star: &F, w1p1: &F, w2p2: &F, w2p1: &F, w1w2: &F) -> CliffordElement<F> {
    let half = Scalar::from_ratio(1, 2);
    let b = Blade::from_indices;
    CliffordElement::from_terms([
        (Blade::SCALAR, h_star.clone()),
        (b(&[1, 3]), w1p1.scale(&half)),
        (b(&[2, 4]), w2p2.scale(&half)),
        (b(&[1, 4]), w2p1.scale(&half)),
        (b(&[2, 3]), w2p1.scale(&half)),
        (b(&[1, 2]), w1w2.scale(&half)),
        (b(&[3, 4]), w1w2.scale(&half)),
    ])
}
