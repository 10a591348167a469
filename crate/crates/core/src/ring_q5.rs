//! Arithmetic in `Z[phi]`, the ring of integers of `Q(sqrt5)`, and in the
//! field `Q(sqrt5)` itself.
//!
//! [`ZPhi`] stores `a + b*phi` with `phi^2 = phi + 1`. [`QSqrt5`] stores
//! `a + b*sqrt5`, the basis used for square roots. Both are generic over the
//! coefficient scalar; the crate root provides the arbitrary-precision
//! aliases `QuadInt` and `QuadRat`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::numeric::{sqrt5, MpReal, Real, DEFAULT_PRECISION, MAX_PRECISION};
use crate::Error;

/// `a + b*phi`, `phi = (1 + sqrt5)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZPhi<T> {
    pub a: T,
    pub b: T,
}

/// Which real embedding of `Q(sqrt5)`: `Plus` sends `sqrt5` to the positive
/// root (so `phi -> 1.618...`), `Minus` to the negative one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Embedding {
    Plus,
    Minus,
}

impl<T> ZPhi<T> {
    pub const fn new(a: T, b: T) -> Self {
        ZPhi { a, b }
    }
}

impl<T: Clone + Integer + Signed> ZPhi<T> {
    pub fn from_int(a: T) -> Self {
        ZPhi::new(a, T::zero())
    }

    pub fn phi() -> Self {
        ZPhi::new(T::zero(), T::one())
    }

    /// Galois conjugate: `phi -> 1 - phi`.
    pub fn conj(&self) -> Self {
        ZPhi::new(self.a.clone() + self.b.clone(), -self.b.clone())
    }

    /// Field norm `a^2 + ab - b^2`.
    pub fn norm(&self) -> T {
        let (a, b) = (&self.a, &self.b);
        a.clone() * a.clone() + a.clone() * b.clone() - b.clone() * b.clone()
    }

    /// Trace `2a + b`.
    pub fn trace(&self) -> T {
        self.a.clone() + self.a.clone() + self.b.clone()
    }

    pub fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, k: T) -> Self {
        ZPhi::new(self.a.clone() * k.clone(), self.b.clone() * k)
    }
}

impl<T: Clone + Integer + Signed> Add for ZPhi<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ZPhi::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<T: Clone + Integer + Signed> Sub for ZPhi<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ZPhi::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl<T: Clone + Integer + Signed> Neg for ZPhi<T> {
    type Output = Self;
    fn neg(self) -> Self {
        ZPhi::new(-self.a, -self.b)
    }
}

impl<T: Clone + Integer + Signed> Mul for ZPhi<T> {
    type Output = Self;
    /// `(a + b phi)(c + d phi) = (ac + bd) + (ad + bc + bd) phi`
    fn mul(self, rhs: Self) -> Self {
        let bd = self.b.clone() * rhs.b.clone();
        ZPhi::new(
            self.a.clone() * rhs.a.clone() + bd.clone(),
            self.a * rhs.b + self.b * rhs.a + bd,
        )
    }
}

impl<T: Clone + Integer + Signed> Add for &ZPhi<T> {
    type Output = ZPhi<T>;
    fn add(self, rhs: Self) -> ZPhi<T> {
        self.clone() + rhs.clone()
    }
}

impl<T: Clone + Integer + Signed> Sub for &ZPhi<T> {
    type Output = ZPhi<T>;
    fn sub(self, rhs: Self) -> ZPhi<T> {
        self.clone() - rhs.clone()
    }
}

impl<T: Clone + Integer + Signed> Mul for &ZPhi<T> {
    type Output = ZPhi<T>;
    fn mul(self, rhs: Self) -> ZPhi<T> {
        self.clone() * rhs.clone()
    }
}

impl ZPhi<BigInt> {
    /// Real embedding to `bits` of relative precision.
    ///
    /// The value is `(s ± b sqrt5)/2` with `s = 2a + b`. When the two terms
    /// have opposite signs the sum cancels, so it is evaluated as
    /// `2 N / (s ∓ b sqrt5)` instead, keeping the relative error small.
    pub fn embed<R: Real>(&self, which: Embedding, bits: u32) -> R {
        let work = bits + 16;
        let s = self.trace();
        let b = match which {
            Embedding::Plus => self.b.clone(),
            Embedding::Minus => -self.b.clone(),
        };
        let rs = R::from_bigint_prec(&s, work);
        let rb = R::from_bigint_prec(&b, work) * sqrt5::<R>(work);
        if s.is_zero() || b.is_zero() || s.is_negative() == b.is_negative() {
            (rs + rb) / R::from_i64_prec(2, work)
        } else {
            let n2 = R::from_bigint_prec(&(self.norm() * 2), work);
            n2 / (rs - rb)
        }
    }

    pub fn to_quad_rat(&self) -> QSqrt5<BigRational> {
        QSqrt5::from(self)
    }

    pub fn to_i64(&self) -> Option<ZPhi<i64>> {
        Some(ZPhi::new(self.a.to_i64()?, self.b.to_i64()?))
    }
}

impl From<ZPhi<i64>> for ZPhi<BigInt> {
    fn from(x: ZPhi<i64>) -> Self {
        ZPhi::new(BigInt::from(x.a), BigInt::from(x.b))
    }
}

impl<T: fmt::Display + Signed> fmt::Display for ZPhi<T> {
    /// `a+b*phi`, e.g. `3-7*phi`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*phi", self.a, self.b.abs())
        } else {
            write!(f, "{}+{}*phi", self.a, self.b)
        }
    }
}

impl FromStr for ZPhi<BigInt> {
    type Err = Error;

    /// Accepts `a+b*phi`, `a-b*phi`, `a+-b*phi`, `b*phi`, `phi` and plain `a`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("expected a+b*phi, got {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix("phi") else {
            return t.parse::<BigInt>().map(ZPhi::from_int).map_err(|_| bad());
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // The sign separating the two parts is the last + or - that is not
        // the leading sign and does not directly follow another sign.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'+' | b'-'));
        let (a_str, b_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let a: BigInt = a_str.parse().map_err(|_| bad())?;
        let b_str = b_str.strip_prefix('+').unwrap_or(b_str);
        let b: BigInt = match b_str {
            "" => BigInt::one(),
            "-" => -BigInt::one(),
            _ => b_str.parse().map_err(|_| bad())?,
        };
        Ok(ZPhi::new(a, b))
    }
}

/// `a + b*sqrt5` over a field of coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QSqrt5<T> {
    pub a: T,
    pub b: T,
}

impl<T> QSqrt5<T> {
    pub const fn new(a: T, b: T) -> Self {
        QSqrt5 { a, b }
    }
}

impl<T: Clone + num_traits::Num + Neg<Output = T>> QSqrt5<T> {
    pub fn conj(&self) -> Self {
        QSqrt5::new(self.a.clone(), -self.b.clone())
    }

    /// `a^2 - 5 b^2`
    pub fn norm(&self) -> T {
        let five = T::one() + T::one() + T::one() + T::one() + T::one();
        self.a.clone() * self.a.clone() - five * self.b.clone() * self.b.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<T: Clone + num_traits::Num> Add for QSqrt5<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        QSqrt5::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<T: Clone + num_traits::Num> Sub for QSqrt5<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        QSqrt5::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl<T: Clone + num_traits::Num> Mul for QSqrt5<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let five = T::one() + T::one() + T::one() + T::one() + T::one();
        QSqrt5::new(
            self.a.clone() * rhs.a.clone() + five * self.b.clone() * rhs.b.clone(),
            self.a * rhs.b + self.b * rhs.a,
        )
    }
}

impl From<&ZPhi<BigInt>> for QSqrt5<BigRational> {
    /// `a + b phi = (a + b/2) + (b/2) sqrt5`
    fn from(x: &ZPhi<BigInt>) -> Self {
        let half_b = BigRational::new(x.b.clone(), BigInt::from(2));
        QSqrt5::new(BigRational::from_integer(x.a.clone()) + half_b.clone(), half_b)
    }
}

impl QSqrt5<BigRational> {
    pub fn from_ints(a: i64, b: i64) -> Self {
        QSqrt5::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    /// Inverse of the `ZPhi -> QSqrt5` map, when the element is integral.
    pub fn to_zphi(&self) -> Option<ZPhi<BigInt>> {
        let b = &self.b * BigRational::from_integer(2.into());
        let a = &self.a - &self.b;
        (b.is_integer() && a.is_integer()).then(|| ZPhi::new(a.to_integer(), b.to_integer()))
    }

    /// Sign-exact test that both real embeddings are `>= 0`.
    pub fn is_totally_nonnegative(&self) -> bool {
        // a ± b sqrt5 >= 0  <=>  a >= |b| sqrt5  <=>  a >= 0 and a^2 >= 5 b^2
        !self.a.is_negative() && self.norm() >= BigRational::zero()
    }

    /// Least common denominator `d` and integers `(P, Q)` with
    /// `self = (P + Q sqrt5) / d`.
    fn integral_parts(&self) -> (BigInt, BigInt, BigInt) {
        let d = self.a.denom().lcm(self.b.denom());
        let p = self.a.numer() * (&d / self.a.denom());
        let q = self.b.numer() * (&d / self.b.denom());
        (p, q, d)
    }

    /// Real embedding with relative error about `2^-bits`.
    pub fn embed<R: Real>(&self, which: Embedding, bits: u32) -> R {
        let work = bits + 16;
        let (p, mut q, d) = self.integral_parts();
        if which == Embedding::Minus {
            q = -q;
        }
        let rp = R::from_bigint_prec(&p, work);
        let rq = R::from_bigint_prec(&q, work) * sqrt5::<R>(work);
        let rd = R::from_bigint_prec(&d, work);
        if p.is_zero() || q.is_zero() || p.is_negative() == q.is_negative() {
            (rp + rq) / rd
        } else {
            // (P + Q sqrt5) = (P^2 - 5Q^2) / (P - Q sqrt5)
            let n = R::from_bigint_prec(&(&p * &p - BigInt::from(5) * &q * &q), work);
            n / ((rp - rq) * rd)
        }
    }
}

impl fmt::Display for QSqrt5<BigRational> {
    /// `(p/q)+(r/s)*sqrt5`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}/{})+({}/{})*sqrt5",
            self.a.numer(),
            self.a.denom(),
            self.b.numer(),
            self.b.denom()
        )
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('(')?.strip_suffix(')')?;
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            let n: BigInt = n.parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for QSqrt5<BigRational> {
    type Err = Error;

    /// Accepts `(p/q)+(r/s)*sqrt5`; either part may be a bare `(n)`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("expected (p/q)+(r/s)*sqrt5, got {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = t.strip_suffix("*sqrt5").ok_or_else(bad)?;
        let (a, b) = body.split_once(")+(").ok_or_else(bad)?;
        let a = parse_rational(&format!("{a})")).ok_or_else(bad)?;
        let b = parse_rational(&format!("({b}")).ok_or_else(bad)?;
        Ok(QSqrt5::new(a, b))
    }
}

/// Integer square root test over any integer scalar.
pub trait ExactSqrt: Sized {
    /// The nonnegative root when `self` is a perfect square.
    fn exact_sqrt(&self) -> Option<Self>;
}

// Quadratic residues mod 64: a square is in this set.
const SQUARE_MOD_64: u64 = {
    let mut mask = 0u64;
    let mut i = 0;
    while i < 64 {
        mask |= 1 << ((i * i) % 64);
        i += 1;
    }
    mask
};

impl ExactSqrt for i64 {
    #[inline]
    fn exact_sqrt(&self) -> Option<i64> {
        let n = *self;
        if n < 0 || SQUARE_MOD_64 >> (n & 63) & 1 == 0 {
            return None;
        }
        let mut r = (n as f64).sqrt() as i64;
        while r * r > n {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= n {
            r += 1;
        }
        (r * r == n).then_some(r)
    }
}

impl ExactSqrt for i128 {
    #[inline]
    fn exact_sqrt(&self) -> Option<i128> {
        let n = *self;
        if n < 0 || SQUARE_MOD_64 >> (n & 63) as u64 & 1 == 0 {
            return None;
        }
        let r = Roots::sqrt(&n);
        (r * r == n).then_some(r)
    }
}

impl ExactSqrt for BigInt {
    fn exact_sqrt(&self) -> Option<BigInt> {
        is_perfect_square(self)
    }
}

/// The nonnegative square root of `n` when `n` is a perfect square.
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let low = (n % 64u32).to_u64().unwrap_or(0);
    if SQUARE_MOD_64 >> low & 1 == 0 {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root inside `Q(sqrt5)`.
///
/// Returns the root whose plus-embedding is nonnegative, or `None` when `x`
/// is not a square in the field. Candidates come from the real square roots
/// of both embeddings; if `x = (P + Q sqrt5)/d` then `d*y` is integral, so
/// the coordinates of `y` have denominator dividing `2d` and can be read off
/// by rounding. Every candidate is confirmed exactly.
pub fn sqrt_in_q5(x: &QSqrt5<BigRational>, precision: u32) -> Option<QSqrt5<BigRational>> {
    if x.is_zero() {
        return Some(QSqrt5::default());
    }
    if !x.is_totally_nonnegative() {
        return None;
    }
    let (_, _, d) = x.integral_parts();
    let two_d = &d * BigInt::from(2);
    // |2d r|, |2d s| <= d (|y+| + |y-|) <= 2 d sqrt(max|x±|); size the
    // working precision so rounding to integers is certain.
    let mag_bits = {
        let e: f64 = x
            .embed::<f64>(Embedding::Plus, 53)
            .abs()
            .max(x.embed::<f64>(Embedding::Minus, 53).abs());
        let ebits = if e.is_finite() {
            e.max(1.0).log2().ceil() as u64 / 2 + 1
        } else {
            2048
        };
        ebits + two_d.bits() + 1
    };
    let mut bits = precision.max(64).max(mag_bits as u32 + 32);
    loop {
        let yp: MpReal = x.embed::<MpReal>(Embedding::Plus, bits).sqrt();
        let ym: MpReal = x.embed::<MpReal>(Embedding::Minus, bits).sqrt();
        let s5: MpReal = sqrt5(bits);
        let td = MpReal::from_bigint_prec(&two_d, bits);
        let two = MpReal::from_i64_prec(2, bits);
        for sign in [1i64, -1] {
            let ym_s = if sign > 0 { ym.clone() } else { -ym.clone() };
            let r = (yp.clone() + ym_s.clone()) / two.clone();
            let s = (yp.clone() - ym_s) / (two.clone() * s5.clone());
            let rn = (r * td.clone()).round_to_bigint();
            let sn = (s * td.clone()).round_to_bigint();
            let cand = QSqrt5::new(BigRational::new(rn, two_d.clone()), BigRational::new(sn, two_d.clone()));
            if cand.clone() * cand.clone() == *x {
                return Some(canonical_root(cand));
            }
        }
        // The precision above already covers the magnitude; one doubling
        // guards against an underestimate from the f64 magnitude probe.
        if bits >= MAX_PRECISION.max(mag_bits as u32 + 64) {
            return None;
        }
        bits *= 2;
    }
}

fn canonical_root(y: QSqrt5<BigRational>) -> QSqrt5<BigRational> {
    let plus: f64 = y.embed(Embedding::Plus, 64);
    if plus < 0.0 {
        QSqrt5::new(-y.a, -y.b)
    } else {
        y
    }
}

/// Convenience wrapper at the default precision.
pub fn sqrt_in_q5_default(x: &QSqrt5<BigRational>) -> Option<QSqrt5<BigRational>> {
    sqrt_in_q5(x, DEFAULT_PRECISION)
}

/// Both embeddings as a pair of complex numbers with zero imaginary part.
pub(crate) fn embed_pair<R: Real>(x: &ZPhi<BigInt>, bits: u32) -> (Complex<R>, Complex<R>) {
    (
        Complex::new(x.embed(Embedding::Plus, bits), R::zero()),
        Complex::new(x.embed(Embedding::Minus, bits), R::zero()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QuadInt;

    fn q(a: i64, b: i64) -> QuadInt {
        ZPhi::new(a.into(), b.into())
    }

    #[test]
    fn conj_examples() {
        assert_eq!(q(0, 1).conj(), q(1, -1));
        assert_eq!(q(1, 1).conj(), q(2, -1));
        assert_eq!(q(3, -7).conj().conj(), q(3, -7));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(q(1, 1).norm(), BigInt::from(1));
        assert_eq!(q(0, 0).norm(), BigInt::from(0));
        assert_eq!(q(-1, 2).norm(), BigInt::from(-5));
        let x = q(17, -5);
        assert_eq!(ZPhi::from_int(x.norm()), x.clone() * x.conj());
    }

    #[test]
    fn embed_examples() {
        let phi = q(0, 1);
        let p: f64 = phi.embed(Embedding::Plus, 53);
        let m: f64 = phi.embed(Embedding::Minus, 53);
        assert!((p - 1.618_033_988_749_895).abs() < 1e-15);
        assert!((m + 0.618_033_988_749_895).abs() < 1e-15);
        for which in [Embedding::Plus, Embedding::Minus] {
            assert_eq!(q(2, 0).embed::<f64>(which, 53), 2.0);
        }
    }

    #[test]
    fn embed_keeps_relative_accuracy_under_cancellation() {
        // F_41 - F_40 phi is about phi^-40 in the plus embedding.
        let x = q(165_580_141, -102_334_155);
        let v: MpReal = x.embed(Embedding::Plus, 128);
        let expect = 1.0 / 1.618_033_988_749_895f64.powi(40);
        assert!((v.as_f64() / expect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(is_perfect_square(&0.into()), Some(0.into()));
        assert_eq!(is_perfect_square(&1764.into()), Some(42.into()));
        assert_eq!(is_perfect_square(&1765.into()), None);
        assert_eq!(is_perfect_square(&(-4).into()), None);
        assert_eq!(1764i64.exact_sqrt(), Some(42));
        assert_eq!((1i128 << 100).exact_sqrt(), Some(1i128 << 50));
        assert_eq!(((1i128 << 100) + 1).exact_sqrt(), None);
    }

    #[test]
    fn perfect_square_matches_naive_oracle() {
        for n in -1_000_000i64..=1_000_000 {
            let naive = if n < 0 {
                None
            } else {
                let r = (0..=1000i64).find(|r| r * r >= n).unwrap();
                (r * r == n).then_some(r)
            };
            assert_eq!(n.exact_sqrt(), naive, "n = {n}");
            if n % 997 == 0 {
                assert_eq!(is_perfect_square(&n.into()), naive.map(BigInt::from));
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        let r = sqrt_in_q5(&QSqrt5::from_ints(45, 0), 128).unwrap();
        assert_eq!(r, QSqrt5::from_ints(0, 3));
        let r = sqrt_in_q5(&QSqrt5::from_ints(5, 0), 128).unwrap();
        assert_eq!(r, QSqrt5::from_ints(0, 1));
        assert_eq!(sqrt_in_q5(&q(0, 1).to_quad_rat(), 128), None);
        assert_eq!(sqrt_in_q5(&QSqrt5::default(), 128), Some(QSqrt5::default()));
        // phi^2 = phi + 1
        let r = sqrt_in_q5(&q(1, 1).to_quad_rat(), 64).unwrap();
        assert_eq!(r.to_zphi(), Some(q(0, 1)));
    }

    #[test]
    fn parse_and_display() {
        for s in [
            "3-7*phi",
            "0+0*phi",
            "-1+2*phi",
            "12345678901234567890-98765432109876543210*phi",
        ] {
            let x: QuadInt = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("3+-7*phi".parse::<QuadInt>().unwrap(), q(3, -7));
        assert_eq!("phi".parse::<QuadInt>().unwrap(), q(0, 1));
        assert_eq!("-phi".parse::<QuadInt>().unwrap(), q(0, -1));
        assert_eq!("5".parse::<QuadInt>().unwrap(), q(5, 0));
        assert_eq!(" 2 + 3 * phi ".parse::<QuadInt>().unwrap(), q(2, 3));
        assert!("2+3*psi".parse::<QuadInt>().is_err());

        let r: crate::QuadRat = "(1/2)+(-3/4)*sqrt5".parse().unwrap();
        assert_eq!(r.to_string(), "(1/2)+(-3/4)*sqrt5");
        assert_eq!(
            "(2)+(1)*sqrt5".parse::<crate::QuadRat>().unwrap(),
            QSqrt5::from_ints(2, 1)
        );
        assert!("(1/0)+(1/2)*sqrt5".parse::<crate::QuadRat>().is_err());
    }

    #[test]
    fn zphi_to_qsqrt5_round_trip() {
        let x = q(7, -3);
        assert_eq!(x.to_quad_rat().to_zphi(), Some(x.clone()));
        let y = q(-2, 5);
        assert_eq!((x.clone() * y.clone()).to_quad_rat(), x.to_quad_rat() * y.to_quad_rat());
        assert_eq!(QSqrt5::from_ints(0, 1).to_zphi(), Some(q(-1, 2)));
        assert_eq!(
            QSqrt5::new(BigRational::new(1.into(), 3.into()), BigRational::zero()).to_zphi(),
            None
        );
    }
}
