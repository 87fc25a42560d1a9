//! The complex Clifford algebra C₄(ℂ) on four orthonormal generators
//! `e¹…e⁴` with `eʲeᵏ + eᵏeʲ = 2δʲᵏ`, and its 4×4 matrix representation.
//!
//! Blades are 4-bit masks (bit `j-1` set ⇔ `eʲ` present, ascending order).
//! Elements are generic over a [`Coefficient`] type so that the same code
//! serves constant coefficients ([`Scalar`]) and phase-space-function
//! coefficients (the Moyal-Clifford algebra).

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;
use crate::star::PhaseSpaceFunction;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const PSEUDOSCALAR: Blade = Blade(0b1111);

    pub fn from_mask(mask: u8) -> Option<Blade> {
        (mask < 16).then_some(Blade(mask))
    }

    /// The generator `eʲ`, `j ∈ 1..=4`.
    pub fn generator(j: usize) -> Blade {
        assert!((1..=4).contains(&j), "generator index {j} out of range");
        Blade(1 << (j - 1))
    }

    /// The blade `e^{j₁…jₖ}` from ascending or unordered distinct indices.
    pub fn from_indices(indices: &[usize]) -> Blade {
        let mut mask = 0u8;
        for &j in indices {
            let bit = Blade::generator(j).0;
            assert!(mask & bit == 0, "repeated generator e{j}");
            mask |= bit;
        }
        Blade(mask)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn all() -> impl Iterator<Item = Blade> {
        (0..16u8).map(Blade)
    }

    /// Generator indices in ascending order.
    pub fn indices(self) -> Vec<usize> {
        (1..=4).filter(|j| self.0 & (1 << (j - 1)) != 0).collect()
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        for j in self.indices() {
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

/// Product of two blades: `(sign, blade)` with `blade = a XOR b`. The sign
/// counts the transpositions needed to sort the concatenated generators;
/// repeated generators square to `+1`.
pub fn blade_mul(a: Blade, b: Blade) -> (i8, Blade) {
    let mut swaps = 0u32;
    let mut shifted = a.0 >> 1;
    while shifted != 0 {
        swaps += (shifted & b.0).count_ones();
        shifted >>= 1;
    }
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    (sign, Blade(a.0 ^ b.0))
}

/// Coefficient ring of a Clifford element.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
}

impl Coefficient for PhaseSpaceFunction {
    fn zero() -> Self {
        PhaseSpaceFunction::zero()
    }
    fn is_zero(&self) -> bool {
        PhaseSpaceFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        PhaseSpaceFunction::scale(self, s)
    }
}

/// `Σ_B c_B · B` over the 16 blades; zero coefficients are not stored.
#[derive(Clone, PartialEq, Debug)]
pub struct CliffordElement<T> {
    coeffs: BTreeMap<Blade, T>,
}

impl<T: Coefficient> Default for CliffordElement<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Coefficient> CliffordElement<T> {
    pub fn zero() -> Self {
        CliffordElement { coeffs: BTreeMap::new() }
    }

    pub fn from_blade(blade: Blade, c: T) -> Self {
        let mut out = Self::zero();
        out.add_to(blade, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Blade, T)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in terms {
            out.add_to(b, c);
        }
        out
    }

    fn add_to(&mut self, blade: Blade, c: T) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&blade) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.coeffs.remove(&blade);
        } else {
            self.coeffs.insert(blade, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, blade: Blade) -> T {
        self.coeffs.get(&blade).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &T)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in other.coeffs.iter() {
            out.add_to(*b, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        CliffordElement {
            coeffs: self.coeffs.iter().map(|(b, c)| (*b, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(b, c)| (*b, c.scale(s))))
    }

    /// Projection onto blades of grade `k`.
    pub fn grade_part(&self, k: u32) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(b, _)| b.grade() == k)
                .map(|(b, c)| (*b, c.clone())),
        )
    }

    pub fn even_part(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(b, _)| b.grade() % 2 == 0)
                .map(|(b, c)| (*b, c.clone())),
        )
    }

    pub fn odd_part(&self) -> Self {
        self.sub(&self.even_part())
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|b| b.grade() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.keys().all(|b| b.grade() % 2 == 1)
    }

    /// Clifford product with a caller-supplied coefficient product, which
    /// may be noncommutative and fallible (e.g. the Moyal star product).
    pub fn product_with<E>(
        &self,
        other: &Self,
        mut mul: impl FnMut(&T, &T) -> Result<T, E>,
    ) -> Result<Self, E> {
        let mut out = Self::zero();
        for (a, ca) in self.coeffs.iter() {
            for (b, cb) in other.coeffs.iter() {
                let (sign, blade) = blade_mul(*a, *b);
                let c = mul(ca, cb)?;
                out.add_to(blade, if sign < 0 { c.neg() } else { c });
            }
        }
        Ok(out)
    }
}

pub type Multivector = CliffordElement<Scalar>;

impl CliffordElement<Scalar> {
    pub fn scalar(c: Scalar) -> Self {
        Self::from_blade(Blade::SCALAR, c)
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    /// The generator `eʲ`.
    pub fn generator(j: usize) -> Self {
        Self::from_blade(Blade::generator(j), Scalar::one())
    }

    pub fn blade(b: Blade) -> Self {
        Self::from_blade(b, Scalar::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.product_with(other, |a, b| Ok::<_, std::convert::Infallible>(a * b))
            .unwrap_or_else(|e| match e {})
    }

    /// Exterior product: the grade-(j+k) part of the product of homogeneous
    /// components, extended bilinearly.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.coeffs.iter() {
            for (b, cb) in other.coeffs.iter() {
                if a.mask() & b.mask() != 0 {
                    continue;
                }
                let (sign, blade) = blade_mul(*a, *b);
                out.add_to(blade, (ca * cb).scale(&Scalar::from_int(sign as i64)));
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    /// Left contraction of a 1-form `v` into `self` with the metric δʲᵏ:
    /// `eʲ ⌋ (e^{k₁}…e^{kₘ}) = Σ_r (-1)^(r-1) δ^{j k_r} e^{k₁}…ê^{k_r}…e^{kₘ}`.
    pub fn contract_from_left(&self, v: &Self) -> Self {
        let mut out = Self::zero();
        for (vb, vc) in v.coeffs.iter() {
            assert_eq!(vb.grade(), 1, "contraction requires a 1-form");
            for (b, c) in self.coeffs.iter() {
                if b.mask() & vb.mask() == 0 {
                    continue;
                }
                let before = (b.mask() & (vb.mask() - 1)).count_ones();
                let sign = if before % 2 == 0 { 1 } else { -1 };
                out.add_to(Blade(b.mask() ^ vb.mask()), (vc * c).scale(&Scalar::from_int(sign)));
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(b, c)| (*b, c.conj())))
    }

    pub fn to_matrix(&self) -> Matrix4 {
        let mut out = Matrix4::zero();
        for (b, c) in self.coeffs.iter() {
            out = out.add(&blade_matrix(*b).scale(c));
        }
        out
    }
}

impl<T: Coefficient + fmt::Display> fmt::Display for CliffordElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(b, c)| format!("({c})*{b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Dense 4×4 complex matrix with exact entries.
#[derive(serde::Serialize, serde::Deserialize)]
struct BladeRecord<T> {
    mask: u8,
    coeff: T,
}

/// Serialized as a list of `{mask, coeff}` records in blade order.
impl<T: Coefficient + serde::Serialize> serde::Serialize for CliffordElement<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (b, c) in &self.coeffs {
            seq.serialize_element(&BladeRecord { mask: b.mask(), coeff: c })?;
        }
        seq.end()
    }
}

impl<'de, T: Coefficient + serde::Deserialize<'de>> serde::Deserialize<'de> for CliffordElement<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let records = Vec::<BladeRecord<T>>::deserialize(d)?;
        let mut out = Self::zero();
        for r in records {
            let blade = Blade::from_mask(r.mask).ok_or_else(|| D::Error::custom(format!("blade mask {} out of range", r.mask)))?;
            out.add_to(blade, r.coeff);
        }
        Ok(out)
    }
}

/// Serialized row-major as four rows of four scalars.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Matrix4 {
    pub entries: [[Scalar; 4]; 4],
}

impl Matrix4 {
    pub fn zero() -> Self {
        Matrix4 { entries: Default::default() }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..4 {
            m.entries[k][k] = Scalar::one();
        }
        m
    }

    /// `[[a, b], [c, d]]` from 2×2 blocks.
    pub fn from_blocks(a: &Matrix2, b: &Matrix2, c: &Matrix2, d: &Matrix2) -> Self {
        let mut m = Self::zero();
        for (blk, (r0, c0)) in [(a, (0, 0)), (b, (0, 2)), (c, (2, 0)), (d, (2, 2))] {
            for i in 0..2 {
                for j in 0..2 {
                    m.entries[r0 + i][c0 + j] = blk[i][j].clone();
                }
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] += &other.entries[i][j];
            }
        }
        m
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut m = self.clone();
        for row in m.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = &*e * s;
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Scalar::zero();
                for k in 0..4 {
                    acc += &(&self.entries[i][k] * &other.entries[k][j]);
                }
                m.entries[i][j] = acc;
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[j][i].clone();
            }
        }
        m
    }

    pub fn dagger(&self) -> Self {
        let mut m = self.transpose();
        for row in m.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = e.conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Scalar {
        (0..4).fold(Scalar::zero(), |acc, k| acc + self.entries[k][k].clone())
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.dagger()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        *self == self.transpose().scale(&Scalar::from_int(-1))
    }

    /// Row-major copy of the entries.
    pub fn row_major(&self) -> Vec<Scalar> {
        self.entries.iter().flat_map(|r| r.iter().cloned()).collect()
    }
}

pub type Matrix2 = [[Scalar; 2]; 2];

/// Pauli matrices: `k = 0` gives the identity, `1..=3` give σ₁, σ₂, σ₃.
pub fn pauli(k: usize) -> Matrix2 {
    let z = Scalar::zero;
    let one = Scalar::one;
    let i = Scalar::i;
    match k {
        0 => [[one(), z()], [z(), one()]],
        1 => [[z(), one()], [one(), z()]],
        2 => [[z(), -i()], [i(), z()]],
        3 => [[one(), z()], [z(), -one()]],
        _ => panic!("Pauli index {k} out of range"),
    }
}

fn scale2(m: &Matrix2, s: &Scalar) -> Matrix2 {
    [[&m[0][0] * s, &m[0][1] * s], [&m[1][0] * s, &m[1][1] * s]]
}

/// Matrix image of a generator:
/// `e¹ = [[0, iσ₁], [-iσ₁, 0]]`, `e² = [[0, iσ₃], [-iσ₃, 0]]`,
/// `e³ = [[0, iσ₂], [-iσ₂, 0]]`, `e⁴ = [[0, 𝟙], [𝟙, 0]]`.
pub fn generator_matrix(j: usize) -> Matrix4 {
    let zero: Matrix2 = Default::default();
    let i = Scalar::i();
    let mi = -Scalar::i();
    let sigma = match j {
        1 => 1,
        2 => 3,
        3 => 2,
        4 => return Matrix4::from_blocks(&zero, &pauli(0), &pauli(0), &zero),
        _ => panic!("generator index {j} out of range"),
    };
    Matrix4::from_blocks(&zero, &scale2(&pauli(sigma), &i), &scale2(&pauli(sigma), &mi), &zero)
}

/// Matrix image of a blade: the ordered product of its generator matrices.
pub fn blade_matrix(b: Blade) -> Matrix4 {
    b.indices()
        .into_iter()
        .fold(Matrix4::identity(), |acc, j| acc.mul(&generator_matrix(j)))
}

/// Inverse of the representation: coefficients are recovered with the trace
/// form `c_B = tr(B⁻¹ M) / 4`, where `B⁻¹ = ±B` is the reversed blade.
pub fn from_matrix(m: &Matrix4) -> Multivector {
    let quarter = Scalar::from_ratio(1, 4);
    Multivector::from_terms(Blade::all().map(|b| {
        let inv = blade_inverse_matrix(b);
        (b, &inv.mul(m).trace() * &quarter)
    }))
}

/// Matrix of `B⁻¹`: the reversed product of generators.
pub(crate) fn blade_inverse_matrix(b: Blade) -> Matrix4 {
    b.indices()
        .into_iter()
        .rev()
        .fold(Matrix4::identity(), |acc, j| acc.mul(&generator_matrix(j)))
}

/// The null 1-forms `f = (e¹+ie³)/√2`, `f̌ = (e¹−ie³)/√2`,
/// `g = (e²+ie⁴)/√2`, `ǧ = (e²−ie⁴)/√2`.
#[derive(Clone, Debug, PartialEq)]
pub struct WittBasis {
    pub f: Multivector,
    pub g: Multivector,
    pub f_check: Multivector,
    pub g_check: Multivector,
}

pub fn witt_basis() -> WittBasis {
    let s = Scalar::inv_sqrt(2);
    let i = Scalar::i();
    let e = Multivector::generator;
    let combo = |a: usize, b: usize, sign: i64| {
        e(a).add(&e(b).scale(&(&i * &Scalar::from_int(sign)))).scale(&s)
    };
    WittBasis {
        f: combo(1, 3, 1),
        f_check: combo(1, 3, -1),
        g: combo(2, 4, 1),
        g_check: combo(2, 4, -1),
    }
}

/// Non-primitive projections `π± = (1 ± e¹²³⁴)/2`, represented as
/// `diag(𝟙, 0)` and `diag(0, 𝟙)`.
pub fn projections() -> (Multivector, Multivector) {
    let half = Scalar::from_ratio(1, 2);
    let one = Multivector::one();
    let chi = Multivector::blade(Blade::PSEUDOSCALAR);
    (one.add(&chi).scale(&half), one.sub(&chi).scale(&half))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(j: usize) -> Multivector {
        Multivector::generator(j)
    }

    #[test]
    fn generator_squares_and_swaps() {
        assert_eq!(blade_mul(Blade::generator(1), Blade::generator(1)), (1, Blade::SCALAR));
        assert_eq!(
            blade_mul(Blade::generator(2), Blade::generator(1)),
            (-1, Blade::from_indices(&[1, 2]))
        );
        // e1 e2 e2 e3 = e1 e3
        assert_eq!(
            blade_mul(Blade::from_indices(&[1, 2]), Blade::from_indices(&[2, 3])),
            (1, Blade::from_indices(&[1, 3]))
        );
    }

    #[test]
    fn wedge_and_grades() {
        assert_eq!(e(1).wedge(&e(2)), Multivector::blade(Blade::from_indices(&[1, 2])));
        assert!(e(1).wedge(&e(1)).is_zero());
        assert_eq!(e(1).mul(&e(1)).grade_part(0), Multivector::one());
    }

    #[test]
    fn unit_is_central() {
        let x = e(1).add(&e(2).wedge(&e(3))).scale(&Scalar::i());
        assert!(Multivector::one().commutator(&x).is_zero());
    }

    #[test]
    fn jacobi_on_generators() {
        let (a, b, c) = (e(1), e(2), e(3));
        let j = a
            .commutator(&b.commutator(&c))
            .add(&b.commutator(&c.commutator(&a)))
            .add(&c.commutator(&a.commutator(&b)));
        assert!(j.is_zero());
    }

    #[test]
    fn witt_relations() {
        let w = witt_basis();
        let two = Multivector::scalar(Scalar::from_int(2));
        for x in [&w.f, &w.g, &w.f_check, &w.g_check] {
            assert!(x.mul(x).is_zero());
        }
        assert_eq!(w.f.anticommutator(&w.f_check), two);
        assert_eq!(w.g.anticommutator(&w.g_check), two);
        assert!(w.g.anticommutator(&w.f_check).is_zero());
        assert!(w.g_check.anticommutator(&w.f).is_zero());
        assert!(w.g.anticommutator(&w.f).is_zero());
        assert!(w.g_check.anticommutator(&w.f_check).is_zero());
        assert!(w.f.anticommutator(&w.g_check).is_zero());
        assert_eq!(w.f.add(&w.f_check), e(1).scale(&Scalar::sqrt(2)));
    }

    #[test]
    fn matrix_images() {
        assert_eq!(Multivector::one().to_matrix(), Matrix4::identity());
        let zero: Matrix2 = Default::default();
        assert_eq!(e(4).to_matrix(), Matrix4::from_blocks(&zero, &pauli(0), &pauli(0), &zero));
        let (plus, minus) = projections();
        assert_eq!(plus.to_matrix(), Matrix4::from_blocks(&pauli(0), &zero, &zero, &zero));
        assert_eq!(minus.to_matrix(), Matrix4::from_blocks(&zero, &zero, &zero, &pauli(0)));
    }

    #[test]
    fn hermiticity_pattern() {
        for j in 1..=4 {
            assert!(generator_matrix(j).is_hermitian());
        }
        assert!(generator_matrix(3).is_symmetric());
        assert!(generator_matrix(4).is_symmetric());
        assert!(generator_matrix(1).is_antisymmetric());
        assert!(generator_matrix(2).is_antisymmetric());
    }

    #[test]
    fn pauli_triple_product() {
        let mul2 = |a: &Matrix2, b: &Matrix2| {
            let mut out: Matrix2 = Default::default();
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
                }
            }
            out
        };
        let prod = mul2(&mul2(&pauli(1), &pauli(2)), &pauli(3));
        assert_eq!(prod, scale2(&pauli(0), &Scalar::i()));
    }

    #[test]
    fn contraction_reproduces_clifford_product() {
        // x̃ ∗ β = x̃ ∧ β + i_x β for 1-forms against every blade.
        let v = e(1).add(&e(3).scale(&Scalar::i())).add(&e(4).scale(&Scalar::from_int(2)));
        for b in Blade::all() {
            let beta = Multivector::blade(b);
            assert_eq!(v.mul(&beta), v.wedge(&beta).add(&beta.contract_from_left(&v)), "{b}");
        }
    }

    #[test]
    fn matrix_inverse_map() {
        let x = e(1).add(&e(2).mul(&e(4)).scale(&Scalar::i())).add(&Multivector::scalar(Scalar::from_int(3)));
        assert_eq!(from_matrix(&x.to_matrix()), x);
    }

    #[test]
    fn json_round_trip() {
        let x = e(1).mul(&e(2)).add(&Multivector::scalar(Scalar::i()));
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"[{"mask":0,"coeff":[{"re":"0","im":"1"}]},{"mask":3,"coeff":[{"re":"1","im":"0"}]}]"#);
        assert_eq!(serde_json::from_str::<Multivector>(&text).unwrap(), x);
        let m = x.to_matrix();
        assert_eq!(serde_json::from_str::<Matrix4>(&serde_json::to_string(&m).unwrap()).unwrap(), m);
        assert!(serde_json::from_str::<Multivector>(r#"[{"mask":16,"coeff":[]}]"#).is_err());
    }
}
