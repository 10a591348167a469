//! Scalar abstractions shared by the exact and approximate code paths.
//!
//! Exact work is generic over integer scalars through `num-traits`
//! (`i64`, `i128`, [`BigInt`]). Approximate work (polynomial roots, the
//! resolvents, real embeddings) is generic over [`Real`], implemented for
//! `f64` and for the binary multiprecision float [`MpReal`].

use std::fmt::Debug;

use dashu_base::SquareRoot;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive};

/// Binary multiprecision float with round-half-even.
pub type MpReal = FBig<HalfEven, 2>;

/// Working precision in bits for approximate computations.
pub const DEFAULT_PRECISION: u32 = 128;
/// Upper limit for internal precision escalation.
pub const MAX_PRECISION: u32 = 1024;

/// A real scalar that approximate algorithms can run on.
///
/// Constructors take a precision in bits; fixed-precision backends ignore it.
pub trait Real: Clone + Debug + PartialOrd + Num + Signed {
    fn from_f64_prec(x: f64, bits: u32) -> Self;
    fn from_bigint_prec(n: &BigInt, bits: u32) -> Self;
    fn as_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    /// Nearest integer, ties to even.
    fn round_to_bigint(&self) -> BigInt;
    /// Precision in bits carried by this value.
    fn bits(&self) -> u32;

    fn from_i64_prec(n: i64, bits: u32) -> Self {
        Self::from_bigint_prec(&BigInt::from(n), bits)
    }

    /// `2^-k` at the given precision.
    fn pow2_neg(k: u32, bits: u32) -> Self {
        let one = Self::from_i64_prec(1, bits);
        one / Self::from_bigint_prec(&(BigInt::one() << k as usize), bits)
    }
}

impl Real for f64 {
    fn from_f64_prec(x: f64, _bits: u32) -> Self {
        x
    }

    fn from_bigint_prec(n: &BigInt, _bits: u32) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn round_to_bigint(&self) -> BigInt {
        BigInt::from_f64(self.round_ties_even()).unwrap_or_default()
    }

    fn bits(&self) -> u32 {
        53
    }
}

pub(crate) fn bigint_to_ibig(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let mag = IBig::from(dashu_int::UBig::from_le_bytes(&bytes));
    if sign == num_bigint::Sign::Minus {
        -mag
    } else {
        mag
    }
}

pub(crate) fn ibig_to_bigint(n: &IBig) -> BigInt {
    let (sign, mag) = n.clone().into_parts();
    let b = BigInt::from_bytes_le(num_bigint::Sign::Plus, &mag.to_le_bytes());
    if sign == dashu_base::Sign::Negative {
        -b
    } else {
        b
    }
}

impl Real for MpReal {
    fn from_f64_prec(x: f64, bits: u32) -> Self {
        let v = MpReal::try_from(x).expect("finite f64");
        v.with_precision(bits as usize).value()
    }

    fn from_bigint_prec(n: &BigInt, bits: u32) -> Self {
        MpReal::from(bigint_to_ibig(n)).with_precision(bits as usize).value()
    }

    fn as_f64(&self) -> f64 {
        FBig::to_f64(self).value()
    }

    fn sqrt(&self) -> Self {
        SquareRoot::sqrt(self)
    }

    fn round_to_bigint(&self) -> BigInt {
        // `round` on FBig is ties-away; that difference never matters here
        // because callers only accept values close to an integer.
        ibig_to_bigint(&self.round().to_int().value())
    }

    fn bits(&self) -> u32 {
        self.precision() as u32
    }
}

/// `sqrt(5)` at the given precision.
pub fn sqrt5<R: Real>(bits: u32) -> R {
    R::from_i64_prec(5, bits).sqrt()
}

/// `zeta^k` for `k = 0..5`, with `zeta = exp(2 pi i / 5)`.
///
/// Built from the closed forms `cos(2pi/5) = (sqrt5 - 1)/4`,
/// `sin(2pi/5) = sqrt((5 + sqrt5)/8)`, `cos(4pi/5) = -(1 + sqrt5)/4` and
/// `sin(4pi/5) = sqrt((5 - sqrt5)/8)`.
pub fn zeta_powers<R: Real>(bits: u32) -> [Complex<R>; 5] {
    let c = |n: i64| R::from_i64_prec(n, bits);
    let s5: R = sqrt5(bits);
    let cos1 = (s5.clone() - c(1)) / c(4);
    let sin1 = ((c(5) + s5.clone()) / c(8)).sqrt();
    let cos2 = -(s5.clone() + c(1)) / c(4);
    let sin2 = ((c(5) - s5) / c(8)).sqrt();
    [
        Complex::new(c(1), c(0)),
        Complex::new(cos1.clone(), sin1.clone()),
        Complex::new(cos2.clone(), sin2.clone()),
        Complex::new(cos2, -sin2),
        Complex::new(cos1, -sin1),
    ]
}

pub(crate) fn cabs2<R: Real>(z: &Complex<R>) -> R {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

/// Max-norm style magnitude `max(|re|, |im|)`; cheap and good enough for
/// tolerance scaling.
pub(crate) fn cmag<R: Real>(z: &Complex<R>) -> R {
    let (a, b) = (z.re.abs(), z.im.abs());
    if a > b {
        a
    } else {
        b
    }
}

pub(crate) fn cpow<R: Real>(z: &Complex<R>, n: u32) -> Complex<R> {
    let mut acc = Complex::new(R::one(), R::zero());
    for _ in 0..n {
        acc = acc * z.clone();
    }
    acc
}

/// The principal-ish complex fifth root: an f64 polar seed refined by
/// Newton's method at the precision of `z`.
pub fn fifth_root<R: Real>(z: &Complex<R>, bits: u32) -> Complex<R> {
    if z.re.is_zero() && z.im.is_zero() {
        return z.clone();
    }
    let (re, im) = (z.re.as_f64(), z.im.as_f64());
    let r = re.hypot(im).powf(0.2);
    let t = im.atan2(re) / 5.0;
    let mut y = Complex::new(R::from_f64_prec(r * t.cos(), bits), R::from_f64_prec(r * t.sin(), bits));
    let five = Complex::new(R::from_i64_prec(5, bits), R::zero());
    let eps = R::pow2_neg(bits.saturating_sub(4), bits);
    for _ in 0..200 {
        let y4 = cpow(&y, 4);
        let step = (y4.clone() * y.clone() - z.clone()) / (five.clone() * y4);
        y = y - step.clone();
        if cmag(&step) <= eps.clone() * cmag(&y) {
            break;
        }
    }
    y
}

/// Distance from `x` to the nearest integer, together with that integer.
pub(crate) fn nearest_int<R: Real>(x: &R) -> (BigInt, R) {
    let n = x.round_to_bigint();
    let d = (x.clone() - R::from_bigint_prec(&n, x.bits().max(64))).abs();
    (n, d)
}
