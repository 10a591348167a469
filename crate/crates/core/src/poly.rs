//! Dense univariate polynomials over the integers, stored in ascending
//! order (`c[i]` is the coefficient of `t^i`).

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numeric::{cabs2, Real};
use crate::Error;

/// Formal derivative.
pub fn derivative<T: Clone + Integer + Signed + From<i32>>(f: &[T]) -> Vec<T> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.clone() * T::from(i as i32))
        .collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det_bareiss<T: Clone + Integer + Signed>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Resultant via the Sylvester matrix.
pub fn resultant<T: Clone + Integer + Signed>(f: &[T], g: &[T]) -> T {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![T::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![T::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    det_bareiss(rows)
}

/// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant<T: Clone + Integer + Signed + From<i32>>(f: &[T]) -> T {
    let n = f.len() - 1;
    let r = resultant(f, &derivative(f)) / f[n].clone();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

pub fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Quotient of `f` by the monic `g` when the division is exact.
pub fn div_exact_monic(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    debug_assert!(g.last().is_some_and(|c| c.is_one()));
    let (n, m) = (f.len() - 1, g.len() - 1);
    if n < m {
        return None;
    }
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); n - m + 1];
    for k in (0..=n - m).rev() {
        let c = r[k + m].clone();
        for (j, gj) in g.iter().enumerate() {
            r[k + j] -= &c * gj;
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

/// Multiply out `prod (t - x_i)`, ascending coefficients.
pub fn from_roots<R: Real>(roots: &[Complex<R>]) -> Vec<Complex<R>> {
    let one = Complex::new(R::one(), R::zero());
    let mut c = vec![one];
    for x in roots {
        let mut next = vec![Complex::new(R::zero(), R::zero()); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] = next[i + 1].clone() + ci.clone();
            next[i] = next[i].clone() - ci.clone() * x.clone();
        }
        c = next;
    }
    c
}

fn horner<R: Real>(f: &[Complex<R>], z: &Complex<R>) -> Complex<R> {
    let mut acc = f.last().cloned().unwrap();
    for c in f.iter().rev().skip(1) {
        acc = acc * z.clone() + c.clone();
    }
    acc
}

/// One Weierstrass (Durand-Kerner) sweep. Returns the largest relative
/// correction as an f64 estimate of log2 (or `-inf` when every step is 0).
fn weierstrass_step<R: Real>(f: &[Complex<R>], z: &mut [Complex<R>]) -> Option<f64> {
    let mut worst = f64::NEG_INFINITY;
    for i in 0..z.len() {
        let mut den = Complex::new(R::one(), R::zero());
        for j in 0..z.len() {
            if i != j {
                den = den * (z[i].clone() - z[j].clone());
            }
        }
        if den.re.is_zero() && den.im.is_zero() {
            return None;
        }
        let step = horner(f, &z[i]) / den;
        z[i] = z[i].clone() - step.clone();
        let s2 = cabs2(&step);
        if !s2.is_zero() {
            let scale = cabs2(&z[i]);
            let rel = log2_ratio(&s2, &scale) / 2.0;
            worst = worst.max(rel);
        }
    }
    Some(worst)
}

/// `log2(a / max(b, 1))` for nonnegative reals without leaving the `Real`
/// type, so tiny values at high precision do not underflow an f64.
fn log2_ratio<R: Real>(a: &R, b: &R) -> f64 {
    let one = R::one();
    let b = if *b > one { b.clone() } else { one };
    let mut x = a.clone() / b;
    let mut e = 0f64;
    let big = R::from_i64_prec(1 << 30, x.bits());
    let tiny = R::one() / big.clone();
    while x < tiny && !x.is_zero() {
        x = x * big.clone();
        e -= 30.0;
    }
    e + x.as_f64().log2()
}

/// All complex roots of the integer polynomial `f` (ascending, leading
/// coefficient nonzero), refined to roughly `bits` of relative precision.
///
/// An f64 Durand-Kerner pass provides seeds, which are then polished by
/// Weierstrass iteration in `R`. Fails when `f` is not squarefree.
pub fn complex_roots<R: Real>(f: &[BigInt], bits: u32) -> Result<Vec<Complex<R>>, Error> {
    let n = f.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > 1 && discriminant(f).is_zero() {
        return Err(Error::RootFinding);
    }
    let lc = f[n].clone();
    // f64 seeds on the monic polynomial.
    let lcf = lc.to_f64().unwrap_or(1.0);
    let ff: Vec<Complex<f64>> = f
        .iter()
        .map(|c| Complex::new(c.to_f64().unwrap_or(f64::MAX) / lcf, 0.0))
        .collect();
    let bound = 1.0 + ff[..n].iter().map(|c| c.re.abs()).fold(0.0, f64::max);
    let seed = Complex::new(0.4, 0.9);
    let mut z: Vec<Complex<f64>> = (0..n).map(|k| seed.powu(k as u32) * bound.min(1e100)).collect();
    for _ in 0..500 {
        match weierstrass_step(&ff, &mut z) {
            Some(w) if w < -45.0 => break,
            Some(_) => {}
            None => z = (0..n).map(|k| seed.powu(k as u32 + 1) * bound).collect(),
        }
    }

    let lcr = R::from_bigint_prec(&lc, bits);
    let fr: Vec<Complex<R>> = f
        .iter()
        .map(|c| Complex::new(R::from_bigint_prec(c, bits) / lcr.clone(), R::zero()))
        .collect();
    let mut zr: Vec<Complex<R>> = z
        .iter()
        .map(|c| Complex::new(R::from_f64_prec(c.re, bits), R::from_f64_prec(c.im, bits)))
        .collect();
    let target = -(bits as f64) + 12.0;
    for _ in 0..200 {
        let w = weierstrass_step(&fr, &mut zr).ok_or(Error::RootFinding)?;
        if w < target {
            return Ok(zr);
        }
    }
    Err(Error::RootFinding)
}

/// First primes below `bound`.
pub fn primes_below(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            for j in (i * i..n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    (0..n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

mod fp {
    //! Polynomials over `F_p` for small `p` (ascending `u64` coefficients,
    //! always trimmed).

    pub type P = Vec<u64>;

    pub fn trim(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &P, m: &P, p: u64) -> P {
        let mut r = a.clone();
        let dm = m.len() - 1;
        let li = inv(m[dm], p);
        while r.len() > dm {
            let c = r[r.len() - 1] * li % p;
            let shift = r.len() - 1 - dm;
            for (j, mj) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * mj % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn div(a: &P, m: &P, p: u64) -> P {
        let mut r = a.clone();
        let dm = m.len() - 1;
        let li = inv(m[dm], p);
        let mut q = vec![0; a.len().saturating_sub(dm)];
        while r.len() > dm {
            let c = r[r.len() - 1] * li % p;
            let shift = r.len() - 1 - dm;
            q[shift] = c;
            for (j, mj) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * mj % p) % p;
            }
            r = trim(r);
        }
        trim(q)
    }

    pub fn mulmod(a: &P, b: &P, m: &P, p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0; a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + ai * bj) % p;
            }
        }
        rem(&trim(r), m, p)
    }

    pub fn powmod(base: &P, mut e: u64, m: &P, p: u64) -> P {
        let mut r = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(&r, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        r
    }

    pub fn gcd(a: &P, b: &P, p: u64) -> P {
        let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        if let Some(&l) = a.last() {
            let li = inv(l, p);
            for c in a.iter_mut() {
                *c = *c * li % p;
            }
        }
        a
    }

    pub fn sub(a: &P, b: &P, p: u64) -> P {
        let n = a.len().max(b.len());
        let r = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(r)
    }
}

/// Degrees of the irreducible factors of `f mod p` (sorted descending), by
/// distinct-degree factorization. `None` when `f mod p` loses degree or is
/// not squarefree.
pub fn factor_degrees_mod_p(f: &[BigInt], p: u64) -> Option<Vec<usize>> {
    let pb = BigInt::from(p);
    let mut g: fp::P = fp::trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect());
    if g.len() != f.len() {
        return None;
    }
    let dg = fp::trim(
        g.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * (i as u64 % p) % p)
            .collect(),
    );
    if dg.is_empty() || fp::gcd(&g, &dg, p).len() > 1 {
        return None;
    }
    let x: fp::P = vec![0, 1];
    let mut h = x.clone();
    let mut degs = Vec::new();
    let mut d = 1;
    while g.len() > 2 * d {
        h = fp::powmod(&h, p, &g, p);
        let common = fp::gcd(&g, &fp::sub(&h, &x, p), p);
        let k = common.len() - 1;
        if k > 0 {
            degs.extend(std::iter::repeat_n(d, k / d));
            g = fp::div(&g, &common, p);
            h = fp::rem(&h, &g, p);
        }
        d += 1;
    }
    if g.len() > 1 {
        degs.push(g.len() - 1);
    }
    degs.sort_unstable_by(|a, b| b.cmp(a));
    Some(degs)
}
