//! Slow reference implementations that share no code with the library.
#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// `(s + t sqrt5) / 2` with `s = t (mod 2)`: an element of `Z[phi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Half {
    pub s: BigInt,
    pub t: BigInt,
}

impl Half {
    pub fn from_ab(a: i64, b: i64) -> Half {
        Half {
            s: BigInt::from(2 * a + b),
            t: BigInt::from(b),
        }
    }

    pub fn mul(&self, o: &Half) -> Half {
        let s = &self.s * &o.s + BigInt::from(5) * &self.t * &o.t;
        let t = &self.s * &o.t + &self.t * &o.s;
        Half { s: s / 2, t: t / 2 }
    }

    pub fn sub(&self, o: &Half) -> Half {
        Half {
            s: &self.s - &o.s,
            t: &self.t - &o.t,
        }
    }

    pub fn conj(&self) -> Half {
        Half {
            s: self.s.clone(),
            t: -&self.t,
        }
    }

    pub fn norm(&self) -> BigInt {
        (&self.s * &self.s - BigInt::from(5) * &self.t * &self.t) / 4
    }
}

/// `(p + q sqrt5)^k <= bound` for integers `p, q >= 0`.
fn radical_power_le(p: &BigInt, q: &BigInt, k: u32, bound: &BigInt) -> bool {
    let (mut u, mut w) = (BigInt::from(1), BigInt::zero());
    for _ in 0..k {
        let nu = &u * p + BigInt::from(5) * &w * q;
        let nw = &u * q + &w * p;
        u = nu;
        w = nw;
    }
    let gap = bound - &u;
    !gap.is_negative() && BigInt::from(5) * &w * &w <= &gap * &gap
}

/// Both embeddings of `a + b phi` have absolute value at most `X^(e/8)`.
///
/// The squared embeddings are `(P ± Q sqrt5)/4` with `P = s^2 + 5 b^2`,
/// `Q = 2 s b`, so the condition is `P + |Q| sqrt5 <= 4 X^(e/4)`, checked
/// after raising both sides to a power that clears the radical on the right.
fn in_box(a: i64, b: i64, x: u64, e: u32) -> bool {
    let s = BigInt::from(2 * a + b);
    let b = BigInt::from(b);
    let p = &s * &s + BigInt::from(5) * &b * &b;
    let q = (BigInt::from(2) * &s * &b).abs();
    let x = BigInt::from(x);
    match e {
        // M^2 = X^(1/2): (P + Q sqrt5)^2 <= 16 X
        2 => radical_power_le(&p, &q, 2, &(BigInt::from(16) * x)),
        // M^2 = X^(3/4): (P + Q sqrt5)^4 <= 256 X^3
        3 => radical_power_le(&p, &q, 4, &(BigInt::from(256) * x.pow(3))),
        _ => unreachable!(),
    }
}

/// Every `(a, b)` with `a + b phi` in the box of radius `X^(e/8)`, from a
/// generous square of candidates.
fn box_points(x: u64, e: u32) -> Vec<(i64, i64)> {
    let r = (x as f64).powf(e as f64 / 8.0);
    let lim = (2.0 * r).ceil() as i64 + 2;
    let mut out = Vec::new();
    for a in -lim..=lim {
        for b in -lim..=lim {
            if in_box(a, b, x, e) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Triples with constants 1: `A != 0` in the `X^(1/4)` box, `B` in the
/// `X^(3/8)` box, `C >= 0`, `C^4 <= X^3`, `Nm(B^2 - 4 conj(A) A^2) = 5 C^2`.
pub fn naive_count(x: u64) -> u64 {
    let a_box = box_points(x, 2);
    let b_box = box_points(x, 3);
    let x3 = BigInt::from(x).pow(3);
    let mut n = 0;
    for &(aa, ab) in &a_box {
        if aa == 0 && ab == 0 {
            continue;
        }
        let a = Half::from_ab(aa, ab);
        let d = a.conj().mul(&a).mul(&a);
        let d4 = Half {
            s: &d.s * 4,
            t: &d.t * 4,
        };
        for &(ba, bb) in &b_box {
            let b = Half::from_ab(ba, bb);
            let z = b.mul(&b).sub(&d4);
            let nz = z.norm();
            if nz.is_negative() || !(&nz % BigInt::from(5)).is_zero() {
                continue;
            }
            let c2 = nz / BigInt::from(5);
            let c = c2.sqrt();
            if &c * &c == c2 && c.pow(4) <= x3 {
                n += 1;
            }
        }
    }
    n
}

/// Determinant by Gaussian elimination over the rationals.
pub fn det_rational(m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut det = BigRational::from_integer(BigInt::from(1));
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= p.clone();
        for r in col + 1..n {
            let f = a[r][col].clone() / p.clone();
            #[allow(clippy::needless_range_loop)]
            for c in col..n {
                let v = a[col][c].clone() * f.clone();
                a[r][c] -= v;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// `Res(f, f')` for `f = x^4 + a2 x^2 + a3 x + a4`, which equals its
/// discriminant (leading coefficient 1, `(-1)^(4*3/2) = 1`).
pub fn quartic_disc_by_resultant(a2: i64, a3: i64, a4: i64) -> BigInt {
    let f = [1, 0, a2, a3, a4];
    let g = [4, 0, 2 * a2, a3];
    // Sylvester matrix, descending coefficients: 3 rows of f, 4 rows of f'
    let mut m = vec![vec![BigInt::zero(); 7]; 7];
    for r in 0..3 {
        for (k, c) in f.iter().enumerate() {
            m[r][r + k] = BigInt::from(*c);
        }
    }
    for r in 0..4 {
        for (k, c) in g.iter().enumerate() {
            m[3 + r][r + k] = BigInt::from(*c);
        }
    }
    det_rational(m)
}

/// Tuples `(a2, a3, a4)` with `|a2|^3 <= X`, `a3^2 <= X`, `|a4|^3 <= X^2`
/// and nonzero square discriminant, via the resultant.
pub fn naive_a4_count(x: u64) -> u64 {
    let xb = BigInt::from(x);
    let in_range = |v: i64, p: u32, q: u32| BigInt::from(v.abs()).pow(q) <= xb.pow(p);
    let lim = (x as f64).powf(2.0 / 3.0) as i64 + 2;
    let r2: Vec<i64> = (-lim..=lim).filter(|&v| in_range(v, 1, 3)).collect();
    let r3: Vec<i64> = (-lim..=lim).filter(|&v| in_range(v, 1, 2)).collect();
    let r4: Vec<i64> = (-lim..=lim).filter(|&v| in_range(v, 2, 3)).collect();
    let mut n = 0;
    for &a2 in &r2 {
        for &a3 in &r3 {
            for &a4 in &r4 {
                let d = quartic_disc_by_resultant(a2, a3, a4);
                if d.is_positive() {
                    let r = d.sqrt();
                    if &r * &r == d {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

pub fn testdata_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("testdata")
}

/// `(X, count)` rows of a golden CSV with header `X,count`.
pub fn read_golden(name: &str) -> Vec<(u64, u64)> {
    let text = std::fs::read_to_string(testdata_dir().join(name)).expect("golden file present");
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("X,count"));
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (x, c) = l.split_once(',').expect("two columns");
            (x.trim().parse().unwrap(), c.trim().parse().unwrap())
        })
        .collect()
}

pub fn f64_of(n: &BigInt) -> f64 {
    n.to_f64().unwrap()
}

/// `X` values of the golden triple-count file.
pub const ORACLE_XS: [u64; 5] = [1, 10, 31, 100, 300];
/// `X` values of the golden A4-count file.
pub const A4_XS: [u64; 3] = [1, 10, 100];
