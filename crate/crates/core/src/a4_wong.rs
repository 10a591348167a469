//! The quartic discriminant as a norm from `Q(sqrt-3)`.
//!
//! For `f = x^4 + a2 x^2 + a3 x + a4` with `Disc(f) = y^2`,
//!
//! ```text
//! (4 a2^2 + 48 a4)^3 = u^2 + 3 v^2,
//! u = 32 a2^3 + 108 a3^2 - 6 a2 (4 a2^2 + 48 a4),  v = -12 y.
//! ```
//!
//! The identity is checked pointwise and symbolically, by expanding both
//! sides in `Z[a2, a3, a4, y]` modulo `y^2 - Disc`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ring_q5::{is_perfect_square, ExactSqrt};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuarticTuple {
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub y: BigInt,
}

impl QuarticTuple {
    pub fn new(a2: BigInt, a3: BigInt, a4: BigInt, y: BigInt) -> Self {
        QuarticTuple { a2, a3, a4, y }
    }

    pub fn from_i64(a2: i64, a3: i64, a4: i64, y: i64) -> Self {
        QuarticTuple::new(a2.into(), a3.into(), a4.into(), y.into())
    }

    /// `y^2 = Disc(x^4 + a2 x^2 + a3 x + a4)`
    pub fn on_variety(&self) -> bool {
        &self.y * &self.y == disc_quartic(&self.a2, &self.a3, &self.a4)
    }
}

/// `Disc(x^4 + a2 x^2 + a3 x + a4)`.
pub fn disc_quartic(a2: &BigInt, a3: &BigInt, a4: &BigInt) -> BigInt {
    let a2_2 = a2 * a2;
    let a3_2 = a3 * a3;
    BigInt::from(256) * a4 * a4 * a4 - BigInt::from(128) * &a2_2 * a4 * a4
        + (BigInt::from(16) * &a2_2 * &a2_2 + BigInt::from(144) * a2 * &a3_2) * a4
        - BigInt::from(4) * &a2_2 * a2 * &a3_2
        - BigInt::from(27) * &a3_2 * &a3_2
}

fn disc_quartic_i128(a2: i128, a3: i128, a4: i128) -> i128 {
    let (a2_2, a3_2) = (a2 * a2, a3 * a3);
    256 * a4 * a4 * a4 - 128 * a2_2 * a4 * a4 + (16 * a2_2 * a2_2 + 144 * a2 * a3_2) * a4
        - 4 * a2_2 * a2 * a3_2
        - 27 * a3_2 * a3_2
}

/// `u^2 + 3 v^2`, the norm of `u + v sqrt-3`.
pub fn norm_m3(u: &BigInt, v: &BigInt) -> BigInt {
    u * u + BigInt::from(3) * v * v
}

/// The numeric constants of the identity; [`IdentityConstants::default`] is the
/// true one and other values serve as perturbations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityConstants {
    /// Coefficient of `a4` in `4 a2^2 + k a4`.
    pub k: i64,
    pub u_a2: i64,
    pub u_a3: i64,
    pub u_mix: i64,
    pub v_y: i64,
}

impl Default for IdentityConstants {
    fn default() -> Self {
        IdentityConstants {
            k: 48,
            u_a2: 32,
            u_a3: 108,
            u_mix: -6,
            v_y: -12,
        }
    }
}

impl IdentityConstants {
    /// `(4 a2^2 + k a4, u, v)` at a point.
    fn sides(&self, a2: &BigInt, a3: &BigInt, a4: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt) {
        let w = BigInt::from(4) * a2 * a2 + BigInt::from(self.k) * a4;
        let u = BigInt::from(self.u_a2) * a2 * a2 * a2
            + BigInt::from(self.u_a3) * a3 * a3
            + BigInt::from(self.u_mix) * a2 * &w;
        let v = BigInt::from(self.v_y) * y;
        (w, u, v)
    }

    /// `LHS - RHS` at an arbitrary point, `y` unconstrained.
    pub fn residual_at(&self, a2: &BigInt, a3: &BigInt, a4: &BigInt, y: &BigInt) -> BigInt {
        let (w, u, v) = self.sides(a2, a3, a4, y);
        &w * &w * &w - norm_m3(&u, &v)
    }

    /// `LHS - RHS` as a polynomial in `(a2, a3, a4, y)`; reduced modulo
    /// `y^2 - Disc` when `reduce` is set.
    pub fn residual(&self, reduce: bool) -> MultiPoly {
        let mul = |p: &MultiPoly, q: &MultiPoly| if reduce { p.mul_reduced(q) } else { p * q };
        let (a2, a3, a4, y) = (
            MultiPoly::var(0),
            MultiPoly::var(1),
            MultiPoly::var(2),
            MultiPoly::var(3),
        );
        let k = MultiPoly::constant;
        let a2_2 = mul(&a2, &a2);
        let w = &mul(&k(4), &a2_2) + &mul(&k(self.k), &a4);
        let u = &(&mul(&k(self.u_a2), &mul(&a2_2, &a2)) + &mul(&k(self.u_a3), &mul(&a3, &a3)))
            + &mul(&k(self.u_mix), &mul(&a2, &w));
        let v = mul(&k(self.v_y), &y);
        let lhs = mul(&mul(&w, &w), &w);
        let rhs = &mul(&u, &u) + &mul(&k(3), &mul(&v, &v));
        &lhs - &rhs
    }
}

/// Pointwise check of the identity; the tuple must lie on the variety.
pub fn verify_identity_numeric(t: &QuarticTuple) -> Result<bool, Error> {
    if !t.on_variety() {
        return Err(Error::Precondition(format!(
            "y^2 != Disc for (a2, a3, a4, y) = ({}, {}, {}, {})",
            t.a2, t.a3, t.a4, t.y
        )));
    }
    Ok(IdentityConstants::default()
        .residual_at(&t.a2, &t.a3, &t.a4, &t.y)
        .is_zero())
}

/// Whether the identity with constants `c` holds on the whole variety.
pub fn verify_identity_with(c: &IdentityConstants) -> bool {
    c.residual(true).is_zero()
}

/// Symbolic proof of the identity: the reduced residual is the zero
/// polynomial.
pub fn verify_identity_symbolic() -> bool {
    verify_identity_with(&IdentityConstants::default())
}

/// Exponents of `(a2, a3, a4, y)`.
pub type Monomial = [u32; 4];

/// Sparse polynomial in `Z[a2, a3, a4, y]` with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        MultiPoly::monomial([0; 4], BigInt::from(c))
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, c);
        p
    }

    /// Variable `i` in the order `a2, a3, a4, y`.
    pub fn var(i: usize) -> Self {
        let mut m = [0; 4];
        m[i] = 1;
        MultiPoly::monomial(m, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn y_degree(&self) -> u32 {
        self.terms.keys().map(|m| m[3]).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn eval(&self, x: [&BigInt; 4]) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| (0..4).fold(c.clone(), |acc, i| acc * x[i].pow(m[i])))
            .sum()
    }

    /// Rewrite `y^2` as `Disc(a2, a3, a4)` until every term has `y`-degree
    /// at most one.
    pub fn reduce(&self) -> MultiPoly {
        let disc = disc_poly();
        let mut out = MultiPoly::zero();
        let mut pending: Vec<(Monomial, BigInt)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        while let Some((m, c)) = pending.pop() {
            if m[3] < 2 {
                out.add_term(m, c);
                continue;
            }
            // each pass lowers the y-degree by two
            for (dm, dc) in &disc.terms {
                let nm = [m[0] + dm[0], m[1] + dm[1], m[2] + dm[2], m[3] - 2];
                pending.push((nm, &c * dc));
            }
        }
        out
    }

    /// Product followed by [`MultiPoly::reduce`].
    pub fn mul_reduced(&self, rhs: &MultiPoly) -> MultiPoly {
        (self * rhs).reduce()
    }
}

/// `Disc(x^4 + a2 x^2 + a3 x + a4)` as a polynomial.
fn disc_poly() -> MultiPoly {
    let t = |e: [u32; 3], c: i64| MultiPoly::monomial([e[0], e[1], e[2], 0], BigInt::from(c));
    [
        t([0, 0, 3], 256),
        t([2, 0, 2], -128),
        t([4, 0, 1], 16),
        t([1, 2, 1], 144),
        t([3, 2, 0], -4),
        t([0, 4, 0], -27),
    ]
    .iter()
    .fold(MultiPoly::zero(), |acc, p| &acc + p)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]];
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const NAMES: [&str; 4] = ["a2", "a3", "a4", "y"];
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let body: Vec<String> = (0..4)
                .filter(|&i| m[i] > 0)
                .map(|i| {
                    if m[i] == 1 {
                        NAMES[i].to_string()
                    } else {
                        format!("{}^{}", NAMES[i], m[i])
                    }
                })
                .collect();
            let mag = c.abs();
            if !first {
                write!(f, " ")?;
            }
            match (body.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{sign}{mag}")?,
                (false, true) => write!(f, "{sign}{}", body.join("*"))?,
                (false, false) => write!(f, "{sign}{mag}*{}", body.join("*"))?,
            }
            first = false;
        }
        Ok(())
    }
}

/// `(floor X^(1/3), floor X^(1/2), floor X^(2/3))`.
pub fn a4_bounds(x: u64) -> (i64, i64, i64) {
    let x = u128::from(x);
    let b2 = x.nth_root(3);
    let b3 = x.sqrt();
    let b4 = (x * x).nth_root(3);
    (b2 as i64, b3 as i64, b4 as i64)
}

fn count_slice(a2: i64, b3: i64, b4: i64) -> u64 {
    let mut n = 0;
    for a3 in -b3..=b3 {
        for a4 in -b4..=b4 {
            let d = disc_quartic_i128(a2.into(), a3.into(), a4.into());
            if d > 0 && d.exact_sqrt().is_some() {
                n += 1;
            }
        }
    }
    n
}

/// Number of `(a2, a3, a4)` with `|a2| <= X^(1/3)`, `|a3| <= X^(1/2)`,
/// `|a4| <= X^(2/3)` and nonzero square discriminant (one tuple per
/// `y >= 0`).
///
/// No irreducibility or Galois condition is imposed. `workers == 1` runs
/// serially, `0` uses the default thread pool; the total does not depend
/// on the choice.
pub fn count_a4_tuples(x: u64, workers: usize) -> Result<u64, Error> {
    if x == 0 {
        return Err(Error::Precondition("X must be at least 1".into()));
    }
    let (b2, b3, b4) = a4_bounds(x);
    if b4 > 1 << 30 {
        return Err(Error::Precondition(format!("X = {x} is too large to enumerate")));
    }
    if workers == 1 {
        return Ok((-b2..=b2).map(|a2| count_slice(a2, b3, b4)).sum());
    }
    let run = || {
        (-b2..=b2)
            .into_par_iter()
            .map(|a2| count_slice(a2, b3, b4))
            .sum::<u64>()
    };
    Ok(match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    })
}

/// On-variety tuples `(a2, a3, a4, y)` with `|a_i| <= bound`, nonzero
/// square discriminant and `y > 0`, in lexicographic order of `(a2, a3, a4)`.
pub fn square_disc_tuples(bound: i64, limit: usize) -> Vec<QuarticTuple> {
    let mut out = Vec::new();
    for a2 in -bound..=bound {
        for a3 in -bound..=bound {
            for a4 in -bound..=bound {
                let (a2, a3, a4) = (BigInt::from(a2), BigInt::from(a3), BigInt::from(a4));
                let d = disc_quartic(&a2, &a3, &a4);
                if !d.is_positive() {
                    continue;
                }
                if let Some(y) = is_perfect_square(&d) {
                    out.push(QuarticTuple::new(a2, a3, a4, y));
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn disc_examples() {
        assert_eq!(disc_quartic(&big(0), &big(0), &big(0)), big(0));
        assert_eq!(disc_quartic(&big(0), &big(0), &big(1)), big(256));
        assert_eq!(disc_quartic(&big(0), &big(1), &big(0)), big(-27));
        assert_eq!(disc_quartic(&big(1), &big(0), &big(1)), big(144));
    }

    #[test]
    fn disc_matches_resultant() {
        for a2 in -4..=4 {
            for a3 in -4..=4 {
                for a4 in -4..=4 {
                    let f = [a4, a3, a2, 0, 1].map(big);
                    let expect = poly::discriminant(&f);
                    assert_eq!(disc_quartic(&big(a2), &big(a3), &big(a4)), expect);
                    assert_eq!(
                        disc_quartic_i128(a2.into(), a3.into(), a4.into()),
                        expect.try_into().unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_m3(&big(0), &big(0)), big(0));
        assert_eq!(norm_m3(&big(1), &big(1)), big(4));
        assert_eq!(norm_m3(&big(-280), &big(-144)), big(140_608));
    }

    #[test]
    fn norm_is_multiplicative() {
        // (a + b s)(c + d s) = (ac - 3bd) + (ad + bc) s with s^2 = -3
        for (a, b, c, d) in [(1, 2, 3, 4), (-7, 5, 2, -9), (0, 3, 11, 1)] {
            let (u, v) = (big(a * c - 3 * b * d), big(a * d + b * c));
            assert_eq!(norm_m3(&u, &v), norm_m3(&big(a), &big(b)) * norm_m3(&big(c), &big(d)));
        }
    }

    #[test]
    fn numeric_examples() {
        assert!(verify_identity_numeric(&QuarticTuple::from_i64(0, 0, 0, 0)).unwrap());
        assert!(verify_identity_numeric(&QuarticTuple::from_i64(0, 0, 1, 16)).unwrap());
        assert!(verify_identity_numeric(&QuarticTuple::from_i64(1, 0, 1, 12)).unwrap());
        assert!(verify_identity_numeric(&QuarticTuple::from_i64(1, 0, 1, -12)).unwrap());
        assert!(matches!(
            verify_identity_numeric(&QuarticTuple::from_i64(1, 0, 1, 11)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn symbolic_identity() {
        assert!(verify_identity_symbolic());
        let c = IdentityConstants {
            k: 47,
            ..IdentityConstants::default()
        };
        assert!(!verify_identity_with(&c));
        assert!(!c.residual(true).is_zero());
    }

    #[test]
    fn unreduced_residual_matches_pointwise_evaluation() {
        let c = IdentityConstants::default();
        let r = c.residual(false);
        assert!(!r.is_zero());
        for (a2, a3, a4, y) in [(1, 2, 3, 4), (-5, 0, 7, 1), (2, -3, -1, 9), (0, 0, 0, 5)] {
            let p = [big(a2), big(a3), big(a4), big(y)];
            assert_eq!(
                r.eval([&p[0], &p[1], &p[2], &p[3]]),
                c.residual_at(&p[0], &p[1], &p[2], &p[3])
            );
        }
        assert!(r.reduce().is_zero());
    }

    #[test]
    fn reduction_lowers_y_degree() {
        let y = MultiPoly::var(3);
        let y5 = &(&(&y * &y) * &(&y * &y)) * &y;
        let r = y5.reduce();
        assert_eq!(r.y_degree(), 1);
        assert_eq!(r, (&disc_poly() * &(&disc_poly() * &y)));
    }

    #[test]
    fn display() {
        assert_eq!(MultiPoly::zero().to_string(), "0");
        let p = &(&MultiPoly::var(0) * &MultiPoly::constant(-3)) + &MultiPoly::constant(2);
        assert_eq!(p.to_string(), "-3*a2 +2");
    }

    #[test]
    fn bounds() {
        assert_eq!(a4_bounds(1), (1, 1, 1));
        assert_eq!(a4_bounds(100), (4, 10, 21));
        assert_eq!(a4_bounds(1000), (10, 31, 100));
    }

    #[test]
    fn counting_is_monotone_and_worker_independent() {
        let mut prev = 0;
        for x in [1, 8, 27, 100] {
            let n = count_a4_tuples(x, 1).unwrap();
            assert_eq!(count_a4_tuples(x, 3).unwrap(), n);
            assert!(n >= prev);
            prev = n;
        }
        assert!(count_a4_tuples(0, 1).is_err());
    }

    #[test]
    fn generated_tuples_satisfy_identity() {
        let ts = square_disc_tuples(6, 50);
        assert!(ts.len() >= 10);
        for t in &ts {
            assert!(t.on_variety());
            assert!(verify_identity_numeric(t).unwrap());
        }
    }
}
