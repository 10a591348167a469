//! From dihedral quintics to norm-equation triples and back.
//!
//! For a trace-zero quintic with roots `x_1..x_5`, labelled so that the
//! Galois group acts through the standard dihedral group on indices mod 5,
//! the resolvents `V_j = sum_i zeta^(ij) x_i` give
//!
//! ```text
//! A = V2 V3,  B = V1 V2^2 + V3^2 V4,
//! C = (V1 V2^2 - V3^2 V4)(V2 V4^2 - V1^2 V3) / sqrt5
//! ```
//!
//! with `A, B` in `Z[phi]` and `C` in `Z`. [`forward`] finds such a
//! labelling by trying root orderings, [`inverse`] rebuilds the quintic from
//! a triple, and [`subfield_witness`] / [`verify_subfield`] relate the triple
//! to the quadratic subfield of the Galois closure.

mod forward;
mod screen;
mod search;
mod subfield;

pub use forward::{forward, forward_detailed, inverse, ForwardResult};
pub use screen::{galois_screen, GaloisClass, Screen, DEFAULT_PRIME_BUDGET};
pub use search::find_d5_quintics;
pub use subfield::{quadratic_resolvent, subfield_witness, verify_subfield, verify_subfield_witness};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::numeric::{zeta_powers, Real};
use crate::poly;
use crate::{Error, QuadInt};

/// Monic quintic `t^5 + c4 t^4 + c3 t^3 + c2 t^2 + c1 t + c0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuinticPoly {
    /// `[c4, c3, c2, c1, c0]`
    coeffs: [BigInt; 5],
    disc: BigInt,
}

impl QuinticPoly {
    pub fn new(coeffs: [BigInt; 5]) -> Self {
        let mut asc: Vec<BigInt> = coeffs.iter().rev().cloned().collect();
        asc.push(BigInt::one());
        let disc = poly::discriminant(&asc);
        QuinticPoly { coeffs, disc }
    }

    pub fn from_i64(c: [i64; 5]) -> Self {
        QuinticPoly::new(c.map(BigInt::from))
    }

    /// `[c4, c3, c2, c1, c0]`
    pub fn coeffs(&self) -> &[BigInt; 5] {
        &self.coeffs
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// Ascending coefficients including the leading 1.
    pub fn ascending(&self) -> Vec<BigInt> {
        let mut asc: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        asc.push(BigInt::one());
        asc
    }

    pub fn is_trace_zero(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn roots<R: Real>(&self, bits: u32) -> Result<Vec<Complex<R>>, Error> {
        if self.disc.is_zero() {
            return Err(Error::RootFinding);
        }
        poly::complex_roots(&self.ascending(), bits)
    }
}

impl fmt::Display for QuinticPoly {
    /// `[c4,c3,c2,c1,c0]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for QuinticPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("expected [c4,c3,c2,c1,c0], got {s:?}"));
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let parts = body
            .split(',')
            .map(|p| p.trim().parse::<BigInt>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        let coeffs: [BigInt; 5] = parts.try_into().map_err(|_| bad())?;
        Ok(QuinticPoly::new(coeffs))
    }
}

/// How [`normalize_trace_zero`] treats an input whose `t^4` coefficient is
/// already zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scaling {
    /// Always substitute `t -> (t - c4)/5` and clear denominators.
    #[default]
    Always,
    /// Return trace-zero inputs unchanged.
    SkipWhenTraceZero,
}

/// `5^5 f((t - c4)/5)`: monic, integral, zero `t^4` coefficient, with roots
/// `5 x_i + c4`.
pub fn normalize_trace_zero(f: &QuinticPoly, scaling: Scaling) -> QuinticPoly {
    if scaling == Scaling::SkipWhenTraceZero && f.is_trace_zero() {
        return f.clone();
    }
    let shift = -f.coeffs[0].clone();
    // sum_k c_k 5^(5-k) (t + shift)^k, c_5 = 1
    let asc = f.ascending();
    let mut out = vec![BigInt::zero(); 6];
    let five = BigInt::from(5);
    for (k, ck) in asc.iter().enumerate() {
        let scale = ck * five.pow((5 - k) as u32);
        let mut binom = BigInt::one();
        #[allow(clippy::needless_range_loop)]
        for i in 0..=k {
            // coefficient of t^i in (t + shift)^k is C(k, i) shift^(k - i)
            out[i] += &scale * &binom * shift.pow((k - i) as u32);
            binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
        }
    }
    debug_assert!(out[5].is_one() && out[4].is_zero());
    QuinticPoly::new([
        out[4].clone(),
        out[3].clone(),
        out[2].clone(),
        out[1].clone(),
        out[0].clone(),
    ])
}

/// The norm-equation triple `(A, B, C)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub a: QuadInt,
    pub b: QuadInt,
    pub c: BigInt,
}

impl Triple {
    pub fn new(a: QuadInt, b: QuadInt, c: BigInt) -> Self {
        Triple { a, b, c }
    }

    /// `B^2 - 4 conj(A) A^2`
    pub fn discriminant_element(&self) -> QuadInt {
        self.b.square() - (self.a.conj() * self.a.square()).scale(BigInt::from(4))
    }

    /// Exact check of `Nm(B^2 - 4 conj(A) A^2) = 5 C^2`.
    pub fn satisfies_norm_equation(&self) -> bool {
        self.discriminant_element().norm() == BigInt::from(5) * &self.c * &self.c
    }

    /// `(conj A, conj B, C)`: the triple of the other dihedral labelling
    /// coset of the same roots.
    pub fn conj_twist(&self) -> Triple {
        Triple::new(self.a.conj(), self.b.conj(), self.c.clone())
    }

    /// `C >= 0` and the lexicographically smaller of `self` and its
    /// conjugate twist.
    pub fn canonical(&self) -> Triple {
        let t = Triple::new(self.a.clone(), self.b.clone(), self.c.abs());
        let u = t.conj_twist();
        if (&u.a.a, &u.a.b, &u.b.a, &u.b.b) < (&t.a.a, &t.a.b, &t.b.a, &t.b.b) {
            u
        } else {
            t
        }
    }
}

impl fmt::Display for Triple {
    /// `A=a+b*phi; B=c+d*phi; C=n`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A={}; B={}; C={}", self.a, self.b, self.c)
    }
}

impl FromStr for Triple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("expected A=a+b*phi; B=c+d*phi; C=n, got {s:?}"));
        let (mut a, mut b, mut c) = (None, None, None);
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "A" => a = Some(v.parse::<QuadInt>()?),
                "B" => b = Some(v.parse::<QuadInt>()?),
                "C" => c = Some(v.trim().parse::<BigInt>().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        Ok(Triple::new(a.ok_or_else(bad)?, b.ok_or_else(bad)?, c.ok_or_else(bad)?))
    }
}

/// Resolvents `V_1..V_4` for one labelling of the roots.
#[derive(Clone, Debug)]
pub struct VQuadruple<R> {
    pub v: [Complex<R>; 4],
    /// `ordering[i - 1]` is the index of the root placed at position `i`.
    pub ordering: [usize; 5],
}

impl<R: Real> VQuadruple<R> {
    /// `V_j` for `j = 1..4`.
    pub fn get(&self, j: usize) -> &Complex<R> {
        &self.v[j - 1]
    }
}

/// `V_j = sum_{i=1..5} zeta^(ij) x_{ordering[i-1]}` for `j = 1..4`.
pub fn resolvents_from_roots<R: Real>(
    roots: &[Complex<R>],
    ordering: [usize; 5],
    zeta: &[Complex<R>; 5],
) -> VQuadruple<R> {
    let v = [1usize, 2, 3, 4].map(|j| {
        let mut acc = Complex::new(R::zero(), R::zero());
        for i in 1..=5 {
            acc = acc + zeta[(i * j) % 5].clone() * roots[ordering[i - 1]].clone();
        }
        acc
    });
    VQuadruple { v, ordering }
}

/// Resolvents of the roots of `f` under `ordering` at `bits` of precision.
pub fn resolvents<R: Real>(f: &QuinticPoly, ordering: [usize; 5], bits: u32) -> Result<VQuadruple<R>, Error> {
    let roots = f.roots::<R>(bits)?;
    Ok(resolvents_from_roots(&roots, ordering, &zeta_powers(bits)))
}
