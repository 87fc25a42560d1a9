//! Scalar phase-space functions and their products.
//!
//! A [`PhaseSpaceFunction`] is a polynomial in `(q1, q2, p1, p2)` with exact
//! coefficients, an optional formal `ħ^k` on each monomial, and an optional
//! vacuum Gaussian envelope `exp(-(q1² + q2² + p1² + p2²))` together with an
//! overall `π^k` prefactor.

mod integrate;
mod moyal;
mod serial;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use integrate::{gaussian_moment_1d, integrate, integrate_product, ExactScalar};
pub use moyal::{poisson_bracket, HbarMode, Moyal};
pub use serial::TermRecord;

/// Canonical phase-space coordinates, in storage order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q1,
    Q2,
    P1,
    P2,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Q1, Var::Q2, Var::P1, Var::P2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q1 => "q1",
            Var::Q2 => "q2",
            Var::P1 => "p1",
            Var::P2 => "p2",
        }
    }

    /// The canonically conjugate coordinate.
    pub fn conjugate(self) -> Var {
        match self {
            Var::Q1 => Var::P1,
            Var::Q2 => Var::P2,
            Var::P1 => Var::Q1,
            Var::P2 => Var::Q2,
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// Exponents of `(q1, q2, p1, p2)` plus the formal power of ħ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MonomialKey {
    pub exps: [u16; 4],
    pub hbar: u16,
}

impl MonomialKey {
    pub fn constant() -> Self {
        Self::default()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    fn times(&self, other: &MonomialKey) -> MonomialKey {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps) {
            *e += o;
        }
        MonomialKey { exps, hbar: self.hbar + other.hbar }
    }
}

/// A single stored term: `coeff · q1^a q2^b p1^c p2^d · ħ^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Scalar,
    pub exps: [u16; 4],
    pub hbar_power: u16,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Envelope {
    #[default]
    None,
    /// Multiplication by `exp(-(q1² + q2² + p1² + p2²))`.
    Vacuum,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PhaseSpaceFunction {
    terms: BTreeMap<MonomialKey, Scalar>,
    envelope: Envelope,
    pi_power: i32,
}

impl PhaseSpaceFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, [0; 4], 0)
    }

    pub fn var(v: Var) -> Self {
        let mut exps = [0; 4];
        exps[v.index()] = 1;
        Self::monomial(Scalar::one(), exps, 0)
    }

    pub fn q1() -> Self {
        Self::var(Var::Q1)
    }
    pub fn q2() -> Self {
        Self::var(Var::Q2)
    }
    pub fn p1() -> Self {
        Self::var(Var::P1)
    }
    pub fn p2() -> Self {
        Self::var(Var::P2)
    }

    /// The formal symbol ħ (a constant monomial with `hbar_power = 1`).
    pub fn hbar() -> Self {
        Self::monomial(Scalar::one(), [0; 4], 1)
    }

    pub fn monomial(coeff: Scalar, exps: [u16; 4], hbar: u16) -> Self {
        let mut out = Self::zero();
        out.add_term(MonomialKey { exps, hbar }, coeff);
        out
    }

    /// `exp(-(q1² + q2² + p1² + p2²))`.
    pub fn vacuum() -> Self {
        Self::one().with_envelope(Envelope::Vacuum)
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(it: I) -> Self {
        let mut out = Self::zero();
        for m in it {
            out.add_term(MonomialKey { exps: m.exps, hbar: m.hbar_power }, m.coeff);
        }
        out
    }

    /// Same polynomial part, different envelope.
    pub fn with_envelope(mut self, envelope: Envelope) -> Self {
        self.envelope = envelope;
        self.normalized()
    }

    /// Multiplies by `π^k`.
    pub fn times_pi_power(mut self, k: i32) -> Self {
        self.pi_power += k;
        self.normalized()
    }

    pub fn envelope(&self) -> Envelope {
        self.envelope
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    pub fn is_polynomial(&self) -> bool {
        self.envelope == Envelope::None
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&MonomialKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(k, c)| Monomial {
            coeff: c.clone(),
            exps: k.exps,
            hbar_power: k.hbar,
        })
    }

    pub fn coefficient(&self, exps: [u16; 4], hbar: u16) -> Scalar {
        self.terms
            .get(&MonomialKey { exps, hbar })
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// The constant value, when the function is a constant polynomial.
    pub fn as_constant(&self) -> Option<Scalar> {
        if !self.is_polynomial() || self.pi_power != 0 {
            return None;
        }
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&MonomialKey::constant()).cloned(),
            _ => None,
        }
    }

    /// Total polynomial degree in the phase-space coordinates.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MonomialKey::degree).max().unwrap_or(0)
    }

    /// Highest exponent of each coordinate.
    pub fn max_exps(&self) -> [u16; 4] {
        let mut out = [0; 4];
        for k in self.terms.keys() {
            for (o, e) in out.iter_mut().zip(k.exps) {
                *o = (*o).max(e);
            }
        }
        out
    }

    pub fn max_hbar_power(&self) -> u16 {
        self.terms.keys().map(|k| k.hbar).max().unwrap_or(0)
    }

    /// True when the function depends only on the listed coordinates.
    pub fn depends_only_on(&self, vars: &[Var]) -> bool {
        self.terms.keys().all(|k| {
            Var::ALL
                .iter()
                .all(|v| vars.contains(v) || k.exps[v.index()] == 0)
        })
    }

    pub(crate) fn add_term(&mut self, key: MonomialKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Restores the canonical form: drops zero terms and resets the envelope
    /// and π power of the zero function.
    pub fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            self.envelope = Envelope::None;
            self.pi_power = 0;
        }
        self
    }

    fn same_class(&self, other: &Self) -> bool {
        self.envelope == other.envelope && self.pi_power == other.pi_power
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if !self.same_class(other) {
            return Err(Error::EnvelopeMismatch);
        }
        let mut out = self.clone();
        for (k, c) in other.terms.iter() {
            out.add_term(*k, c.clone());
        }
        Ok(out.normalized())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    /// Complex conjugation of every coefficient (ħ and π are real).
    pub fn conjugate(&self) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.conj();
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    /// Ordinary commutative pointwise product.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        let envelope = match (self.envelope, other.envelope) {
            (Envelope::Vacuum, Envelope::Vacuum) => {
                if self.is_zero() || other.is_zero() {
                    return Ok(Self::zero());
                }
                return Err(Error::VacuumSquareOutsideIntegral);
            }
            (Envelope::None, e) | (e, Envelope::None) => e,
        };
        let mut out = Self {
            terms: BTreeMap::new(),
            envelope,
            pi_power: self.pi_power + other.pi_power,
        };
        mul_terms_into(&mut out, self, other, &Scalar::one(), 0);
        Ok(out.normalized())
    }

    /// Polynomial parts multiplied while ignoring both envelopes; used for
    /// transient Gaussian squares inside integrals.
    pub(crate) fn polynomial_product(&self, other: &Self) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            envelope: Envelope::None,
            pi_power: self.pi_power + other.pi_power,
        };
        mul_terms_into(&mut out, self, other, &Scalar::one(), 0);
        out.normalized()
    }

    /// Formal partial derivative. With the vacuum envelope,
    /// `∂(poly·G) = (∂poly - 2·x·poly)·G`.
    pub fn differentiate(&self, var: Var) -> Self {
        let idx = var.index();
        let mut out = Self {
            terms: BTreeMap::new(),
            envelope: self.envelope,
            pi_power: self.pi_power,
        };
        for (k, c) in self.terms.iter() {
            let e = k.exps[idx];
            if e > 0 {
                let mut nk = *k;
                nk.exps[idx] -= 1;
                out.add_term(nk, c * &Scalar::from_int(e as i64));
            }
            if self.envelope == Envelope::Vacuum {
                let mut nk = *k;
                nk.exps[idx] += 1;
                out.add_term(nk, c * &Scalar::from_int(-2));
            }
        }
        out.normalized()
    }

    /// Sets ħ = 1 in every monomial.
    pub fn fold_hbar(&self) -> Self {
        if self.terms.keys().all(|k| k.hbar == 0) {
            return self.clone();
        }
        let mut out = Self {
            terms: BTreeMap::new(),
            envelope: self.envelope,
            pi_power: self.pi_power,
        };
        for (k, c) in self.terms.iter() {
            out.add_term(MonomialKey { exps: k.exps, hbar: 0 }, c.clone());
        }
        out.normalized()
    }

    /// The coefficient function of `ħ^k`.
    pub fn hbar_part(&self, k: u16) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            envelope: self.envelope,
            pi_power: self.pi_power,
        };
        for (key, c) in self.terms.iter().filter(|(key, _)| key.hbar == k) {
            out.add_term(MonomialKey { exps: key.exps, hbar: 0 }, c.clone());
        }
        out.normalized()
    }

    /// Ordinary power under the pointwise product.
    pub fn pointwise_pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.pointwise_mul(self)?;
        }
        Ok(acc)
    }

    /// Replaces each coordinate by a linear combination of coordinates:
    /// `var_j ↦ Σ_k map[j][k] var_k`. Envelopes are kept, which is only
    /// meaningful for maps preserving `q1² + q2² + p1² + p2²`.
    pub fn substitute_linear(&self, map: &[[Scalar; 4]; 4]) -> Self {
        let images: Vec<Self> = (0..4)
            .map(|j| {
                let mut f = Self::zero();
                for k in 0..4 {
                    f = f + Self::var(Var::ALL[k]).scale(&map[j][k]);
                }
                f
            })
            .collect();
        let mut out = Self::zero();
        for (key, c) in self.terms.iter() {
            let mut term = Self::monomial(c.clone(), [0; 4], key.hbar);
            for (j, image) in images.iter().enumerate() {
                for _ in 0..key.exps[j] {
                    term = term.polynomial_product(image);
                }
            }
            out = out + term;
        }
        Self {
            envelope: self.envelope,
            pi_power: self.pi_power,
            ..out
        }
        .normalized()
    }

    /// Numerical value at a point `(q1, q2, p1, p2)`, with ħ = 1.
    pub fn evaluate_f64(&self, point: [f64; 4]) -> Complex<f64> {
        let mut sum = Complex::new(0.0, 0.0);
        for (k, c) in self.terms.iter() {
            let mut m = 1.0;
            for (x, e) in point.iter().zip(k.exps) {
                m *= x.powi(e as i32);
            }
            sum += c.to_complex_f64() * m;
        }
        if self.envelope == Envelope::Vacuum {
            let r2: f64 = point.iter().map(|x| x * x).sum();
            sum *= (-r2).exp();
        }
        sum * std::f64::consts::PI.powi(self.pi_power)
    }
}

/// `out += weight · ħ^hbar_shift · a · b`, multiplying polynomial parts.
pub(crate) fn mul_terms_into(
    out: &mut PhaseSpaceFunction,
    a: &PhaseSpaceFunction,
    b: &PhaseSpaceFunction,
    weight: &Scalar,
    hbar_shift: u16,
) {
    let (small, large) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
    for (ka, ca) in small.terms.iter() {
        let ca = if weight.is_one() { ca.clone() } else { ca * weight };
        for (kb, cb) in large.terms.iter() {
            let mut key = ka.times(kb);
            key.hbar += hbar_shift;
            out.add_term(key, &ca * cb);
        }
    }
}

impl From<Scalar> for PhaseSpaceFunction {
    fn from(c: Scalar) -> Self {
        Self::constant(c)
    }
}

impl From<Var> for PhaseSpaceFunction {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

impl Add<&PhaseSpaceFunction> for &PhaseSpaceFunction {
    type Output = PhaseSpaceFunction;

    /// Panics when the operands carry different envelopes; use
    /// [`PhaseSpaceFunction::checked_add`] to handle that case.
    fn add(self, rhs: &PhaseSpaceFunction) -> PhaseSpaceFunction {
        self.checked_add(rhs).expect("adding functions with different envelopes")
    }
}

impl Add for PhaseSpaceFunction {
    type Output = PhaseSpaceFunction;
    fn add(self, rhs: PhaseSpaceFunction) -> PhaseSpaceFunction {
        &self + &rhs
    }
}

impl Neg for &PhaseSpaceFunction {
    type Output = PhaseSpaceFunction;
    fn neg(self) -> PhaseSpaceFunction {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for PhaseSpaceFunction {
    type Output = PhaseSpaceFunction;
    fn neg(self) -> PhaseSpaceFunction {
        -&self
    }
}

impl Sub<&PhaseSpaceFunction> for &PhaseSpaceFunction {
    type Output = PhaseSpaceFunction;
    fn sub(self, rhs: &PhaseSpaceFunction) -> PhaseSpaceFunction {
        self + &(-rhs)
    }
}

impl Sub for PhaseSpaceFunction {
    type Output = PhaseSpaceFunction;
    fn sub(self, rhs: PhaseSpaceFunction) -> PhaseSpaceFunction {
        &self - &rhs
    }
}

impl Mul<&Scalar> for &PhaseSpaceFunction {
    type Output = PhaseSpaceFunction;
    fn mul(self, rhs: &Scalar) -> PhaseSpaceFunction {
        self.scale(rhs)
    }
}

impl Mul<Scalar> for PhaseSpaceFunction {
    type Output = PhaseSpaceFunction;
    fn mul(self, rhs: Scalar) -> PhaseSpaceFunction {
        self.scale(&rhs)
    }
}

fn fmt_monomial_factors(key: &MonomialKey) -> Vec<String> {
    let mut factors = Vec::new();
    for v in Var::ALL {
        match key.exps[v.index()] {
            0 => {}
            1 => factors.push(v.name().to_string()),
            e => factors.push(format!("{}^{e}", v.name())),
        }
    }
    match key.hbar {
        0 => {}
        1 => factors.push("hbar".to_string()),
        e => factors.push(format!("hbar^{e}")),
    }
    factors
}

impl PhaseSpaceFunction {
    fn fmt_polynomial(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.terms.iter() {
            let factors = fmt_monomial_factors(k);
            let pieces = c.signed_pieces();
            let (negative, coeff) = if pieces.len() == 1 {
                (pieces[0].0, pieces[0].1.clone())
            } else {
                (false, format!("({c})"))
            };
            let mut body = Vec::new();
            if !(coeff == "1" && !factors.is_empty()) {
                body.push(coeff);
            }
            body.extend(factors);
            let body = body.join("*");
            if out.is_empty() {
                out = if negative { format!("-{body}") } else { body };
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Renders in the expression grammar accepted by [`crate::expr::parse`].
impl fmt::Display for PhaseSpaceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = self.fmt_polynomial();
        let mut prefix = Vec::new();
        if self.pi_power != 0 {
            prefix.push(format!("pi^{}", self.pi_power));
        }
        if self.envelope == Envelope::Vacuum {
            prefix.push("vacuum".to_string());
        }
        if prefix.is_empty() {
            write!(f, "{poly}")
        } else if poly == "1" {
            write!(f, "{}", prefix.join("*"))
        } else {
            write!(f, "{}*({poly})", prefix.join("*"))
        }
    }
}

impl fmt::Debug for PhaseSpaceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PSF[{self}]")
    }
}
