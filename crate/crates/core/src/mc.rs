//! The Moyal–Clifford algebra: square matrices of phase-space functions
//! multiplied with the star product, and two-component spinors.
//!
//! Spinor slots follow `σ₃|2⟩ = |2⟩`, `σ₃|1⟩ = −|1⟩`: index 0 holds the
//! `|2⟩` component and index 1 the `|1⟩` component.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::{blade_inverse_matrix, blade_matrix, Blade, CliffordElement, Matrix2, Matrix4};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::star::{integrate_product, ExactScalar, Moyal, PhaseSpaceFunction};

type F = PhaseSpaceFunction;

/// An `n × n` matrix of phase-space functions, `n ∈ {2, 4}` in practice.
#[derive(Clone, PartialEq)]
pub struct McMatrix {
    dim: usize,
    entries: Vec<F>,
}

impl McMatrix {
    pub fn zero(dim: usize) -> Self {
        McMatrix { dim, entries: vec![F::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal_constant(dim, F::one())
    }

    /// `f · 𝟙`.
    pub fn diagonal_constant(dim: usize, f: F) -> Self {
        let mut m = Self::zero(dim);
        for k in 0..dim {
            m.entries[k * dim + k] = f.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(dim, row.len()));
            }
            entries.extend(row);
        }
        Ok(McMatrix { dim, entries })
    }

    /// `[[a, b], [c, d]]`.
    pub fn two_by_two(a: F, b: F, c: F, d: F) -> Self {
        McMatrix { dim: 2, entries: vec![a, b, c, d] }
    }

    pub fn from_matrix2(m: &Matrix2) -> Self {
        Self::two_by_two(
            F::constant(m[0][0].clone()),
            F::constant(m[0][1].clone()),
            F::constant(m[1][0].clone()),
            F::constant(m[1][1].clone()),
        )
    }

    pub fn from_matrix4(m: &Matrix4) -> Self {
        McMatrix {
            dim: 4,
            entries: m.row_major().into_iter().map(F::constant).collect(),
        }
    }

    /// `[[a, b], [c, d]]` from 2×2 blocks.
    pub fn from_blocks(a: &McMatrix, b: &McMatrix, c: &McMatrix, d: &McMatrix) -> Result<Self> {
        for blk in [a, b, c, d] {
            if blk.dim != 2 {
                return Err(Error::DimensionMismatch(2, blk.dim));
            }
        }
        let mut m = Self::zero(4);
        for (blk, (r0, c0)) in [(a, (0, 0)), (b, (0, 2)), (c, (2, 0)), (d, (2, 2))] {
            for i in 0..2 {
                for j in 0..2 {
                    m.set(r0 + i, c0 + j, blk.get(i, j).clone());
                }
            }
        }
        Ok(m)
    }

    /// The 2×2 block at block position `(bi, bj)` of a 4×4 matrix.
    pub fn block(&self, bi: usize, bj: usize) -> McMatrix {
        assert_eq!(self.dim, 4, "blocks are defined for 4×4 matrices");
        let e = |i: usize, j: usize| self.get(2 * bi + i, 2 * bj + j).clone();
        Self::two_by_two(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: F) {
        self.entries[i * self.dim + j] = f;
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        McMatrix { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&F) -> Result<F>) -> Result<Self> {
        Ok(McMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> Result<F>) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(McMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, F::checked_add)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, F::checked_sub)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|f| f.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|f| -f)
    }

    /// Conjugate transpose with entrywise complex conjugation.
    pub fn dagger(&self) -> Self {
        let mut m = Self::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(i, j, self.get(j, i).conjugate());
            }
        }
        m
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.dagger()
    }

    /// Blade form via the trace inner product of the 4×4 representation.
    pub fn to_clifford(&self) -> Result<CliffordElement<F>> {
        if self.dim != 4 {
            return Err(Error::DimensionMismatch(4, self.dim));
        }
        let quarter = Scalar::from_ratio(1, 4);
        let mut terms = Vec::new();
        for b in Blade::all() {
            let inv = blade_inverse_matrix(b);
            let mut acc = F::zero();
            for i in 0..4 {
                for j in 0..4 {
                    let w = inv.get(i, j);
                    if !w.is_zero() {
                        acc = acc.checked_add(&self.get(j, i).scale(w))?;
                    }
                }
            }
            terms.push((b, acc.scale(&quarter)));
        }
        Ok(CliffordElement::from_terms(terms))
    }

    pub fn from_clifford(x: &CliffordElement<F>) -> Result<Self> {
        let mut m = Self::zero(4);
        for (b, c) in x.terms() {
            let bm = blade_matrix(b);
            for i in 0..4 {
                for j in 0..4 {
                    let w = bm.get(i, j);
                    if !w.is_zero() {
                        let entry = m.get(i, j).checked_add(&c.scale(w))?;
                        m.set(i, j, entry);
                    }
                }
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for McMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "McMatrix {}x{} [", self.dim, self.dim)?;
        for row in self.entries.chunks(self.dim) {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for McMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for McMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<F>>::deserialize(d)?;
        McMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// `σ_k` as a 2×2 MC element; `k = 0` is the identity.
pub fn pauli(k: usize) -> McMatrix {
    McMatrix::from_matrix2(&crate::clifford::pauli(k))
}

/// Spin raising matrix `σ₊ = (σ₁ + iσ₂)/2 = [[0, 1], [0, 0]]`.
pub fn sigma_plus() -> McMatrix {
    McMatrix::two_by_two(F::zero(), F::one(), F::zero(), F::zero())
}

/// Spin lowering matrix `σ₋ = (σ₁ − iσ₂)/2 = [[0, 0], [1, 0]]`.
pub fn sigma_minus() -> McMatrix {
    McMatrix::two_by_two(F::zero(), F::zero(), F::one(), F::zero())
}

/// A 2×1 column of phase-space functions.
#[derive(Clone, PartialEq, Debug)]
pub struct Spinor {
    pub components: [F; 2],
}

impl Spinor {
    pub fn new(upper: F, lower: F) -> Self {
        Spinor { components: [upper, lower] }
    }

    pub fn zero() -> Self {
        Self::new(F::zero(), F::zero())
    }

    /// `f ⊗ |j⟩` for the atomic level `j ∈ {1, 2}`.
    pub fn atomic(j: u8, f: F) -> Result<Self> {
        match j {
            2 => Ok(Self::new(f, F::zero())),
            1 => Ok(Self::new(F::zero(), f)),
            _ => Err(Error::IndexOutOfRange(format!("atomic level {j} (expected 1 or 2)"))),
        }
    }

    pub fn upper(&self) -> &F {
        &self.components[0]
    }

    pub fn lower(&self) -> &F {
        &self.components[1]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(F::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(
            self.components[0].checked_add(&other.components[0])?,
            self.components[1].checked_add(&other.components[1])?,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.components[0].scale(c), self.components[1].scale(c))
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.components[0].conjugate(), self.components[1].conjugate())
    }

    /// `∫ Φ† Ψ` over phase space. Uses `∫ F⋆G = ∫ FG`, so the star product
    /// of two Gaussian-carrying components never has to be formed.
    pub fn inner_integral(&self, other: &Spinor) -> Result<ExactScalar> {
        let mut acc: Option<ExactScalar> = None;
        for (a, b) in self.components.iter().zip(&other.components) {
            let term = integrate_product(&a.conjugate(), b)?;
            acc = Some(match acc {
                None => term,
                Some(prev) => add_exact(&prev, &term)?,
            });
        }
        Ok(acc.unwrap_or_else(ExactScalar::zero))
    }
}

fn add_exact(a: &ExactScalar, b: &ExactScalar) -> Result<ExactScalar> {
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    if a.pi_power != b.pi_power {
        return Err(Error::InternalMismatch(format!(
            "adding integrals with different powers of pi ({} and {})",
            a.pi_power, b.pi_power
        )));
    }
    Ok(ExactScalar::new(&a.value + &b.value, a.pi_power))
}

impl Serialize for Spinor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [[&self.components[0]], [&self.components[1]]].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Spinor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [[a], [b]] = <[[F; 1]; 2]>::deserialize(d)?;
        Ok(Spinor::new(a, b))
    }
}

/// Outcome of a star-eigenvalue test: `residual = T⋆Ψ − λΨ`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenCheck {
    pub holds: bool,
    pub residual: Spinor,
}

impl Moyal {
    /// Matrix product with star-multiplied entries.
    pub fn mc_mul(&self, x: &McMatrix, y: &McMatrix) -> Result<McMatrix> {
        if x.dim != y.dim {
            return Err(Error::DimensionMismatch(x.dim, y.dim));
        }
        let n = x.dim;
        let entries = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut acc = F::zero();
                for k in 0..n {
                    let (a, b) = (x.get(i, k), y.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&self.star(a, b)?)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(McMatrix { dim: n, entries })
    }

    pub fn mc_commutator(&self, x: &McMatrix, y: &McMatrix) -> Result<McMatrix> {
        self.mc_mul(x, y)?.checked_sub(&self.mc_mul(y, x)?)
    }

    pub fn mc_anticommutator(&self, x: &McMatrix, y: &McMatrix) -> Result<McMatrix> {
        self.mc_mul(x, y)?.checked_add(&self.mc_mul(y, x)?)
    }

    /// `F ⋆ X` entrywise.
    pub fn star_left(&self, f: &F, x: &McMatrix) -> Result<McMatrix> {
        x.try_map(|e| self.star(f, e))
    }

    /// The MC product in blade form: `(Fα)(Gβ) = (F⋆G)(α∗β)`.
    pub fn mc_mul_blades(&self, x: &CliffordElement<F>, y: &CliffordElement<F>) -> Result<CliffordElement<F>> {
        x.product_with(y, |a, b| self.star(a, b))
    }

    /// `T ⋆ Ψ` for a 2×2 matrix `T`.
    pub fn apply(&self, t: &McMatrix, psi: &Spinor) -> Result<Spinor> {
        if t.dim != 2 {
            return Err(Error::DimensionMismatch(2, t.dim));
        }
        let row = |i: usize| -> Result<F> {
            let mut acc = F::zero();
            for k in 0..2 {
                let (a, b) = (t.get(i, k), &psi.components[k]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.checked_add(&self.star(a, b)?)?;
            }
            Ok(acc)
        };
        Ok(Spinor::new(row(0)?, row(1)?))
    }

    /// Exact test of `T ⋆ Ψ = λΨ`.
    pub fn is_star_eigen(&self, t: &McMatrix, psi: &Spinor, lambda: &Scalar) -> Result<EigenCheck> {
        let residual = self.apply(t, psi)?.checked_sub(&psi.scale(lambda))?;
        Ok(EigenCheck { holds: residual.is_zero(), residual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{generator_matrix, Multivector};

    type M = McMatrix;

    #[test]
    fn sigma_ladder_identities() {
        let m = Moyal::unit();
        let pm = m.mc_mul(&sigma_plus(), &sigma_minus()).unwrap();
        // 2σ₊σ₋ = 𝟙 + σ₃
        assert_eq!(pm.scale(&Scalar::from_int(2)), pauli(0).checked_add(&pauli(3)).unwrap());
        let s12 = pauli(1).checked_add(&pauli(2).scale(&Scalar::i())).unwrap();
        assert_eq!(s12.scale(&Scalar::from_ratio(1, 2)), sigma_plus());
    }

    #[test]
    fn sigma3_on_atomic_levels() {
        let m = Moyal::unit();
        let f = F::q1();
        let one = Spinor::atomic(1, f.clone()).unwrap();
        let two = Spinor::atomic(2, f).unwrap();
        assert!(m.is_star_eigen(&pauli(3), &one, &Scalar::from_int(-1)).unwrap().holds);
        assert!(m.is_star_eigen(&pauli(3), &two, &Scalar::one()).unwrap().holds);
    }

    #[test]
    fn dagger_reverses_products() {
        let m = Moyal::formal();
        let x = M::two_by_two(F::q1(), F::p1().scale(&Scalar::i()), F::q2(), F::one());
        let y = M::two_by_two(F::p1(), F::zero(), F::q1(), F::p2().scale(&Scalar::sqrt(2)));
        let lhs = m.mc_mul(&x, &y).unwrap().dagger();
        let rhs = m.mc_mul(&y.dagger(), &x.dagger()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(x.dagger().dagger(), x);
    }

    #[test]
    fn blade_and_matrix_products_agree() {
        let m = Moyal::formal();
        let x = CliffordElement::from_terms([
            (Blade::generator(1), F::q1()),
            (Blade::from_indices(&[2, 3]), F::p1()),
        ]);
        let y = CliffordElement::from_terms([
            (Blade::generator(3), F::p1()),
            (Blade::SCALAR, F::q2()),
        ]);
        let via_blades = M::from_clifford(&m.mc_mul_blades(&x, &y).unwrap()).unwrap();
        let via_matrices = m
            .mc_mul(&M::from_clifford(&x).unwrap(), &M::from_clifford(&y).unwrap())
            .unwrap();
        assert_eq!(via_blades, via_matrices);
        assert_eq!(via_matrices.to_clifford().unwrap(), m.mc_mul_blades(&x, &y).unwrap());
    }

    #[test]
    fn constant_matrices_embed() {
        let e1 = Multivector::generator(1);
        assert_eq!(M::from_matrix4(&e1.to_matrix()), M::from_matrix4(&generator_matrix(1)));
    }

    #[test]
    fn json_round_trip() {
        let x = M::two_by_two(F::q1(), F::p1().scale(&Scalar::i()), F::zero(), F::one());
        let back: M = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        assert_eq!(back, x);
        let s = Spinor::new(F::vacuum(), F::zero());
        let back: Spinor = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn zero_spinor_matches_integral() {
        let w0 = F::vacuum().times_pi_power(-2);
        let psi = Spinor::new(w0.clone(), F::zero());
        assert!(!psi.inner_integral(&psi).unwrap().is_zero());
        assert!(Spinor::zero().inner_integral(&Spinor::zero()).unwrap().is_zero());
    }
}
