//! Exact scalars: complex rationals extended by square roots of integers.
//!
//! A [`Scalar`] is a finite sum `Σ c_s √s` over square-free radicands `s`
//! with coefficients `c_s ∈ ℚ(i)`. The square roots of distinct square-free
//! integers are linearly independent over `ℚ(i)`, so the sorted, zero-free
//! term list is a canonical form and structural equality is field equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::{smallvec, SmallVec};

/// Complex number with exact rational parts.
pub type ComplexRational = Complex<BigRational>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    // sorted by radicand, no zero coefficients
    terms: SmallVec<[(u64, ComplexRational); 1]>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn crat_is_zero(c: &ComplexRational) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

/// Splits `n` into `(a, s)` with `n = a² s` and `s` square-free.
pub fn square_free_split(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        outside *= p.pow(e / 2);
        if e % 2 == 1 {
            inside *= p;
        }
        p += 1;
    }
    inside *= n;
    (outside, inside)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: SmallVec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::from_complex(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// `n / d` as a real rational scalar. Panics if `d == 0`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_complex(Complex::new(r, BigRational::zero()))
    }

    pub fn from_complex(c: ComplexRational) -> Self {
        Self::from_radical(c, 1)
    }

    /// `c · √s` for a square-free `s`.
    fn from_radical(c: ComplexRational, s: u64) -> Self {
        if crat_is_zero(&c) {
            Self::zero()
        } else {
            Scalar { terms: smallvec![(s, c)] }
        }
    }

    /// Exact `√n`.
    pub fn sqrt(n: u64) -> Self {
        let (a, s) = square_free_split(n);
        if a == 0 {
            return Self::zero();
        }
        Self::from_radical(
            Complex::new(BigRational::from_integer(BigInt::from(a)), BigRational::zero()),
            s,
        )
    }

    /// Exact `1/√n`. Panics if `n == 0`.
    pub fn inv_sqrt(n: u64) -> Self {
        Self::sqrt(n).inv().expect("inverse square root of zero")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Iterator over `(radicand, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &ComplexRational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    /// Assembles a scalar from radicand/coefficient pairs; radicands need
    /// not be square-free or distinct.
    pub fn from_terms<I: IntoIterator<Item = (u64, ComplexRational)>>(terms: I) -> Self {
        terms.into_iter().fold(Self::zero(), |acc, (s, c)| {
            let root = Self::sqrt(s);
            acc + root * Self::from_complex(c)
        })
    }

    pub fn conj(&self) -> Self {
        Scalar {
            terms: self.terms.iter().map(|(s, c)| (*s, c.conj())).collect(),
        }
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.im.is_zero())
    }

    /// True when the value is purely imaginary (or zero).
    pub fn is_imaginary(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.re.is_zero())
    }

    /// The value as a complex rational, if it has no surd part.
    pub fn as_complex_rational(&self) -> Option<ComplexRational> {
        match self.terms.as_slice() {
            [] => Some(Complex::new(BigRational::zero(), BigRational::zero())),
            [(1, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// The value as a real rational, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_complex_rational()
            .filter(|c| c.im.is_zero())
            .map(|c| c.re)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Multiplicative inverse. Only single-term scalars `c√s` are inverted;
    /// anything else yields `None`.
    pub fn inv(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [(s, c)] => {
                let s_big = BigRational::from_integer(BigInt::from(*s));
                let norm = &c.re * &c.re + &c.im * &c.im;
                let denom = norm * s_big;
                let inv = Complex::new(&c.re / &denom, -(&c.im / &denom));
                Some(Self::from_radical(inv, *s))
            }
            _ => None,
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (*s, Complex::new(&c.re * r, &c.im * r)))
                .collect(),
        }
    }

    /// Multiplication by `i^k`.
    pub fn mul_i_pow(&self, k: u32) -> Self {
        let rotate = |c: &ComplexRational| match k % 4 {
            0 => c.clone(),
            1 => Complex::new(-c.im.clone(), c.re.clone()),
            2 => Complex::new(-c.re.clone(), -c.im.clone()),
            _ => Complex::new(c.im.clone(), -c.re.clone()),
        };
        Scalar {
            terms: self.terms.iter().map(|(s, c)| (*s, rotate(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn to_complex_f64(&self) -> Complex<f64> {
        self.terms.iter().fold(Complex::new(0.0, 0.0), |acc, (s, c)| {
            let root = (*s as f64).sqrt();
            acc + Complex::new(
                c.re.to_f64().unwrap_or(f64::NAN) * root,
                c.im.to_f64().unwrap_or(f64::NAN) * root,
            )
        })
    }

    fn add_term(&mut self, s: u64, c: ComplexRational) {
        match self.terms.binary_search_by(|(t, _)| t.cmp(&s)) {
            Ok(pos) => {
                let sum = &self.terms[pos].1 + c;
                if crat_is_zero(&sum) {
                    self.terms.remove(pos);
                } else {
                    self.terms[pos].1 = sum;
                }
            }
            Err(pos) => {
                if !crat_is_zero(&c) {
                    self.terms.insert(pos, (s, c));
                }
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (s, c) in rhs.terms.iter() {
            self.add_term(*s, c.clone());
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(s, c)| (*s, -c.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (s, a) in self.terms.iter() {
            for (t, b) in rhs.terms.iter() {
                let g = s.gcd(t);
                let radicand = (s / g) * (t / g);
                let mut c = a * b;
                if g != 1 {
                    let g = BigRational::from_integer(BigInt::from(g));
                    c = Complex::new(&c.re * &g, &c.im * &g);
                }
                out.add_term(radicand, c);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order, used only for canonical sorting.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |x: &Scalar| {
            x.terms
                .iter()
                .map(|(s, c)| (*s, c.re.clone(), c.im.clone()))
                .collect::<Vec<_>>()
        };
        key(self).cmp(&key(other))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a rational as the exchange format `"n/d"` (or `"n"`).
pub fn rational_to_string(r: &BigRational) -> String {
    fmt_rational(r)
}

/// Parses `"n"` or `"n/d"`.
pub fn rational_from_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl Scalar {
    /// Additive pieces as `(sign, magnitude text)`, e.g. `-3/2*sqrt2`, `+i`.
    pub(crate) fn signed_pieces(&self) -> Vec<(bool, String)> {
        let mut out = Vec::new();
        for (s, c) in self.terms.iter() {
            let surd = if *s == 1 { String::new() } else { format!("sqrt{s}") };
            for (part, imag) in [(&c.re, false), (&c.im, true)] {
                if part.is_zero() {
                    continue;
                }
                let negative = part.is_negative();
                let mag = part.abs();
                let mut factors = Vec::new();
                if !mag.is_one() || (!imag && surd.is_empty()) {
                    factors.push(fmt_rational(&mag));
                }
                if imag {
                    factors.push("i".to_string());
                }
                if !surd.is_empty() {
                    factors.push(surd.clone());
                }
                out.push((negative, factors.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces = self.signed_pieces();
        if pieces.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, text)) in pieces.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{text}")?,
                (0, false) => write!(f, "{text}")?,
                (_, true) => write!(f, " - {text}")?,
                (_, false) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct SurdRecord {
    re: String,
    im: String,
    #[serde(default = "unit_radicand", skip_serializing_if = "is_unit_radicand")]
    sqrt: u64,
}

fn unit_radicand() -> u64 {
    1
}

fn is_unit_radicand(s: &u64) -> bool {
    *s == 1
}

/// Serialized as a list of `{re, im, sqrt}` records, one per radicand.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<SurdRecord> = self
            .terms
            .iter()
            .map(|(r, c)| SurdRecord { re: rational_to_string(&c.re), im: rational_to_string(&c.im), sqrt: *r })
            .collect();
        records.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let records = Vec::<SurdRecord>::deserialize(d)?;
        let mut out = Scalar::zero();
        for r in records {
            let re = rational_from_str(&r.re).ok_or_else(|| D::Error::custom(format!("bad rational '{}'", r.re)))?;
            let im = rational_from_str(&r.im).ok_or_else(|| D::Error::custom(format!("bad rational '{}'", r.im)))?;
            if r.sqrt == 0 {
                return Err(D::Error::custom("sqrt radicand must be positive"));
            }
            out += &Scalar::from_terms([(r.sqrt, Complex::new(re, im))]);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_free_parts() {
        assert_eq!(square_free_split(12), (2, 3));
        assert_eq!(square_free_split(8), (2, 2));
        assert_eq!(square_free_split(1), (1, 1));
        assert_eq!(square_free_split(36), (6, 1));
        assert_eq!(square_free_split(30), (1, 30));
    }

    #[test]
    fn surd_products() {
        assert_eq!(Scalar::sqrt(2) * Scalar::sqrt(2), Scalar::from_int(2));
        assert_eq!(Scalar::sqrt(2) * Scalar::sqrt(3), Scalar::sqrt(6));
        assert_eq!(Scalar::sqrt(6) * Scalar::sqrt(10), Scalar::from_int(2) * Scalar::sqrt(15));
        assert_eq!(Scalar::sqrt(8), Scalar::from_int(2) * Scalar::sqrt(2));
        assert!(Scalar::sqrt(0).is_zero());
    }

    #[test]
    fn independence_of_surds() {
        let x = Scalar::sqrt(2) + Scalar::sqrt(3);
        assert!(!x.is_zero());
        let y = &x - &Scalar::sqrt(3);
        assert_eq!(y, Scalar::sqrt(2));
    }

    #[test]
    fn inverses() {
        let x = Scalar::sqrt(2).mul_i_pow(1).scale_rational(&rat(3, 5));
        let inv = x.inv().unwrap();
        assert!((&x * &inv).is_one());
        assert!((Scalar::sqrt(2) + Scalar::one()).inv().is_none());
        assert_eq!(Scalar::inv_sqrt(2) * Scalar::sqrt(2), Scalar::one());
    }

    #[test]
    fn i_powers_and_conjugation() {
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
        assert_eq!(Scalar::one().mul_i_pow(3), -Scalar::i());
        assert_eq!(Scalar::i().conj(), -Scalar::i());
        assert!(Scalar::i().is_imaginary());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!((Scalar::one() - Scalar::i()).to_string(), "1 - i");
        assert_eq!(Scalar::sqrt(2).to_string(), "sqrt2");
        assert_eq!(Scalar::inv_sqrt(2).to_string(), "1/2*sqrt2");
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_from_str("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(rational_to_string(&rat(4, 2)), "2");
        assert!(rational_from_str("1/0").is_none());
    }
}
