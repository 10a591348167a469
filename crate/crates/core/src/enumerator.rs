//! Counting norm-equation triples inside discriminant boxes.
//!
//! For a bound `X` the boxes are `|A| <= cA X^(1/4)`, `|B| <= cB X^(3/8)`
//! under both real embeddings and `0 <= C <= cC X^(3/4)`. The counter walks
//! every `A` in its box, every `B` in its box, and solves
//! `Nm(B^2 - 4 conj(A) A^2) = 5 C^2` for `C` with a perfect-square test.
//! Box membership is decided exactly, never by floating point.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::galois_map::Triple;
use crate::ring_q5::{ExactSqrt, ZPhi};
use crate::{Error, QuadInt};

/// Implied constants and the discriminant bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxConfig {
    pub c_a: f64,
    pub c_b: f64,
    pub c_c: f64,
    pub x: u64,
}

impl BoxConfig {
    /// All implied constants equal to 1.
    pub fn unit(x: u64) -> Self {
        BoxConfig {
            c_a: 1.0,
            c_b: 1.0,
            c_c: 1.0,
            x,
        }
    }

    pub fn with_x(&self, x: u64) -> Self {
        BoxConfig { x, ..self.clone() }
    }

    pub fn bound_a(&self) -> RadicalBound {
        RadicalBound::new(self.c_a, self.x, 1, 4)
    }

    pub fn bound_b(&self) -> RadicalBound {
        RadicalBound::new(self.c_b, self.x, 3, 8)
    }

    pub fn bound_c(&self) -> RadicalBound {
        RadicalBound::new(self.c_c, self.x, 3, 4)
    }

    fn validate(&self) -> Result<(), Error> {
        let ok = |c: f64| c.is_finite() && c > 0.0;
        if ok(self.c_a) && ok(self.c_b) && ok(self.c_c) && self.x >= 1 {
            Ok(())
        } else {
            Err(Error::Precondition(format!("invalid box config {self:?}")))
        }
    }
}

/// One row of the count table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    #[serde(rename = "X")]
    pub x: u64,
    pub count: u64,
}

/// `ln(count) = slope * ln(X) + intercept`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
}

/// The real number `coeff * X^(num/den)`, held exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalBound {
    coeff: BigRational,
    x: BigInt,
    num: u32,
    den: u32,
}

impl RadicalBound {
    /// `coeff` is taken at its exact binary value.
    pub fn new(coeff: f64, x: u64, num: u32, den: u32) -> Self {
        let coeff = BigRational::from_f64(coeff).expect("finite bound constant");
        RadicalBound {
            coeff,
            x: BigInt::from(x),
            num,
            den,
        }
    }

    pub fn rational(m: BigRational) -> Self {
        RadicalBound {
            coeff: m,
            x: BigInt::one(),
            num: 1,
            den: 1,
        }
    }

    pub fn approx(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::INFINITY)
            * self
                .x
                .to_f64()
                .unwrap_or(f64::INFINITY)
                .powf(self.num as f64 / self.den as f64)
    }

    /// Is `(u + w sqrt5) / k <= self`, for `u, w >= 0`?
    ///
    /// Raise both sides to the power `den`: the left side lands in
    /// `Z[sqrt5]` as `U + W sqrt5`, the right side is rational `Q`, and
    /// `U + W sqrt5 <= Q` iff `Q - U >= 0` and `5 W^2 <= (Q - U)^2`.
    pub fn admits(&self, u: &BigInt, w: &BigInt, k: u32) -> bool {
        debug_assert!(!u.is_negative() && !w.is_negative());
        let (mut pu, mut pw) = (BigInt::one(), BigInt::zero());
        for _ in 0..self.den {
            let nu = &pu * u + BigInt::from(5) * &pw * w;
            let nw = &pu * w + &pw * u;
            pu = nu;
            pw = nw;
        }
        let q = self.coeff.pow(self.den as i32)
            * BigRational::from_integer(self.x.pow(self.num) * BigInt::from(k).pow(self.den));
        let slack = q - BigRational::from_integer(pu);
        if slack.is_negative() {
            return false;
        }
        BigRational::from_integer(BigInt::from(5) * &pw * &pw) <= &slack * &slack
    }

    /// Largest integer `n >= 0` with `n <= self`.
    pub fn floor(&self) -> BigInt {
        max_admitted(|n| self.admits(n, &BigInt::zero(), 1), self.approx()).unwrap_or_default()
    }
}

/// Largest `n >= 0` satisfying a monotone predicate, starting from a float
/// guess.
fn max_admitted(pred: impl Fn(&BigInt) -> bool, guess: f64) -> Option<BigInt> {
    if !pred(&BigInt::zero()) {
        return None;
    }
    let mut n = BigInt::from_f64(guess.max(0.0).floor()).unwrap_or_default();
    while n.is_positive() && !pred(&n) {
        n -= 1;
    }
    while pred(&(&n + 1)) {
        n += 1;
    }
    Some(n)
}

/// Every `x = a + b phi` with `|x| <= M` under both real embeddings, each
/// exactly once, ordered by `b` then `a`.
///
/// With `s = 2a + b` the embeddings are `(s ± b sqrt5)/2`, so membership is
/// `|s| + |b| sqrt5 <= 2M`.
pub fn box_elements(bound: &RadicalBound) -> Vec<QuadInt> {
    let m = bound.approx();
    let zero = BigInt::zero();
    let Some(b_max) = max_admitted(|b| bound.admits(&zero, b, 2), 2.0 * m / 5f64.sqrt()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut b = -b_max.clone();
    while b <= b_max {
        let bb = b.abs();
        let guess = 2.0 * m - bb.to_f64().unwrap_or(0.0) * 5f64.sqrt();
        let s_max = max_admitted(|s| bound.admits(s, &bb, 2), guess).expect("b within range");
        // s runs over [-s_max, s_max] with s = b (mod 2)
        let mut s = -s_max.clone();
        if (&s - &b).is_odd() {
            s += 1;
        }
        while s <= s_max {
            out.push(ZPhi::new((&s - &b) / 2, b.clone()));
            s += 2;
        }
        b += 1;
    }
    out
}

/// Integer scalar usable by the counting kernel.
trait KernelInt: Clone + Integer + Signed + ExactSqrt + Send + Sync + TryFrom<i64> {
    fn try_from_big(n: &BigInt) -> Option<Self>;
}

impl KernelInt for i64 {
    fn try_from_big(n: &BigInt) -> Option<Self> {
        n.to_i64()
    }
}

impl KernelInt for i128 {
    fn try_from_big(n: &BigInt) -> Option<Self> {
        n.to_i128()
    }
}

impl KernelInt for BigInt {
    fn try_from_big(n: &BigInt) -> Option<Self> {
        Some(n.clone())
    }
}

struct Prepared<T> {
    /// `4 conj(A) A^2` for every nonzero `A` in its box.
    a_terms: Vec<ZPhi<T>>,
    /// `(B^2, multiplicity)`: `B` and `-B` share a square.
    b_squares: Vec<(ZPhi<T>, u64)>,
    c_max: T,
}

fn prepare<T: KernelInt>(cfg: &BoxConfig) -> Option<Prepared<T>> {
    let conv = |x: &QuadInt| Some(ZPhi::new(T::try_from_big(&x.a)?, T::try_from_big(&x.b)?));
    let four = BigInt::from(4);
    let a_terms = box_elements(&cfg.bound_a())
        .into_iter()
        .filter(|a| !a.is_zero())
        .map(|a| conv(&(a.conj() * a.square()).scale(four.clone())))
        .collect::<Option<Vec<_>>>()?;
    let b_squares = box_elements(&cfg.bound_b())
        .into_iter()
        .filter(|b| b.b.is_positive() || (b.b.is_zero() && !b.a.is_negative()))
        .map(|b| Some((conv(&b.square())?, if b.is_zero() { 1 } else { 2 })))
        .collect::<Option<Vec<_>>>()?;
    let c_max = T::try_from_big(&cfg.bound_c().floor())?;
    Some(Prepared {
        a_terms,
        b_squares,
        c_max,
    })
}

#[inline]
fn count_for_a<T: KernelInt>(d: &ZPhi<T>, b_squares: &[(ZPhi<T>, u64)], c_max: &T) -> u64 {
    let five = T::try_from(5).ok().unwrap();
    let mut count = 0;
    for (b2, mult) in b_squares {
        let z = ZPhi::new(b2.a.clone() - d.a.clone(), b2.b.clone() - d.b.clone());
        let n = z.norm();
        if n.is_negative() {
            continue;
        }
        let (q, r) = n.div_rem(&five);
        if !r.is_zero() {
            continue;
        }
        if let Some(c) = q.exact_sqrt() {
            if c <= *c_max {
                count += mult;
            }
        }
    }
    count
}

fn count_prepared<T: KernelInt>(p: &Prepared<T>, workers: usize) -> u64 {
    let run = || {
        p.a_terms
            .par_iter()
            .with_min_len(4)
            .map(|d| count_for_a(d, &p.b_squares, &p.c_max))
            .sum::<u64>()
    };
    if workers == 1 {
        return p.a_terms.iter().map(|d| count_for_a(d, &p.b_squares, &p.c_max)).sum();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

/// Largest `|Z|` over both embeddings for `Z = B^2 - 4 conj(A) A^2`, used to
/// pick a machine integer width that cannot overflow.
fn magnitude_bound(cfg: &BoxConfig) -> f64 {
    let ma = cfg.bound_a().approx();
    let mb = cfg.bound_b().approx();
    mb * mb + 4.0 * ma * ma * ma
}

/// Number of triples `(A, B, C)` with `A != 0`, `A` and `B` in their boxes,
/// `0 <= C <= cC X^(3/4)` and `Nm(B^2 - 4 conj(A) A^2) = 5 C^2`.
///
/// `workers = 0` uses all available threads; the result does not depend on
/// the worker count.
pub fn count_triples(cfg: &BoxConfig, workers: usize) -> Result<u64, Error> {
    cfg.validate()?;
    let z = magnitude_bound(cfg);
    // norm terms reach about 20 |Z|^2 (coordinates up to 2.5 |Z|, three products)
    let need = 20.0 * z * z;
    let count = if need < i64::MAX as f64 / 4.0 {
        prepare::<i64>(cfg).map(|p| count_prepared(&p, workers))
    } else if need < i128::MAX as f64 / 4.0 {
        prepare::<i128>(cfg).map(|p| count_prepared(&p, workers))
    } else {
        None
    };
    Ok(match count {
        Some(c) => c,
        None => count_prepared(&prepare::<BigInt>(cfg).expect("BigInt never overflows"), workers),
    })
}

/// All triples counted by [`count_triples`], in enumeration order. Intended
/// for small `X`.
pub fn list_triples(cfg: &BoxConfig) -> Result<Vec<Triple>, Error> {
    cfg.validate()?;
    let c_max = cfg.bound_c().floor();
    let b_box = box_elements(&cfg.bound_b());
    let mut out = Vec::new();
    for a in box_elements(&cfg.bound_a()) {
        if a.is_zero() {
            continue;
        }
        let d = (a.conj() * a.square()).scale(BigInt::from(4));
        for b in &b_box {
            let n = (b.square() - d.clone()).norm();
            if n.is_negative() || !(&n % BigInt::from(5)).is_zero() {
                continue;
            }
            if let Some(c) = (n / BigInt::from(5)).exact_sqrt() {
                if c <= c_max {
                    out.push(Triple {
                        a: a.clone(),
                        b: b.clone(),
                        c,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// One [`CountRow`] per grid point. The grid must be nonempty and ascending.
pub fn count_table(grid: &[u64], template: &BoxConfig, workers: usize) -> Result<Vec<CountRow>, Error> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("grid must be nonempty and ascending".into()));
    }
    grid.iter()
        .map(|&x| {
            Ok(CountRow {
                x,
                count: count_triples(&template.with_x(x), workers)?,
            })
        })
        .collect()
}

/// `floor(10^(k/2))` for `k = k_min, k_min + 1, ...` while `<= max`.
pub fn half_decade_grid(k_min: u32, max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for k in k_min.. {
        let x = if k % 2 == 0 {
            10u128.checked_pow(k / 2)
        } else {
            10u128.checked_pow(k).map(|p| num_integer::Roots::sqrt(&p))
        };
        match x {
            Some(x) if x <= max as u128 => out.push(x as u64),
            _ => break,
        }
    }
    out
}

/// Ordinary least squares of `ln(count)` on `ln(X)` over the last `last_k`
/// rows.
pub fn loglog_fit(rows: &[CountRow], last_k: usize) -> Result<FitResult, Error> {
    if last_k < 2 || rows.len() < last_k {
        return Err(Error::InsufficientRows {
            need: last_k.max(2),
            have: rows.len(),
        });
    }
    let window = &rows[rows.len() - last_k..];
    if let Some(r) = window.iter().find(|r| r.count == 0) {
        return Err(Error::ZeroCount(r.x));
    }
    let pts: Vec<(f64, f64)> = window.iter().map(|r| (r.x as f64, r.count as f64)).collect();
    fit_loglog_points(&pts)
}

/// Least squares of `ln y` on `ln x` for positive real points.
pub fn fit_loglog_points(points: &[(f64, f64)]) -> Result<FitResult, Error> {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx.is_nan() || sxx <= 0.0 {
        return Err(Error::Precondition("fit window needs distinct X values".into()));
    }
    let slope = sxy / sxx;
    Ok(FitResult {
        slope,
        intercept: my - slope * mx,
    })
}

/// Tab-separated `(ln X, ln count)` pairs for external plotting, followed by
/// a `# fit` comment line when a fit is given. Rows with zero count have no
/// logarithm and are skipped.
pub fn emit_plot_data(rows: &[CountRow], fit: Option<&FitResult>) -> String {
    let mut out = String::from("# lnX\tlnCount\n");
    for r in rows.iter().filter(|r| r.count > 0) {
        let _ = writeln!(out, "{:.6}\t{:.6}", (r.x as f64).ln(), (r.count as f64).ln());
    }
    if let Some(f) = fit {
        let _ = writeln!(out, "# fit slope={:.6} intercept={:.6}", f.slope, f.intercept);
    }
    out
}

/// `X,count` CSV.
pub fn write_csv(rows: &[CountRow]) -> String {
    let mut out = String::from("X,count\n");
    for r in rows {
        let _ = writeln!(out, "{},{}", r.x, r.count);
    }
    out
}

pub fn read_csv(text: &str) -> Result<Vec<CountRow>, Error> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some(h) if h.replace(' ', "") == "X,count" => {}
        other => return Err(Error::Parse(format!("expected header X,count, got {other:?}"))),
    }
    lines
        .map(|l| {
            let (x, c) = l
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad row {l:?}")))?;
            let p = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad row {l:?}")))
            };
            Ok(CountRow { x: p(x)?, count: p(c)? })
        })
        .collect()
}
