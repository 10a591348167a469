//! Probabilistic Galois-group screening for quintics.
//!
//! An irreducible quintic with square discriminant has group C5, D5 or A5.
//! Frobenius cycle types separate them: A5 contains 3-cycles, D5 contains
//! double transpositions but no 3-cycles, and C5 has neither.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::QuinticPoly;
use crate::numeric::{nearest_int, MpReal, Real, DEFAULT_PRECISION};
use crate::poly::{self, div_exact_monic, eval, factor_degrees_mod_p};
use crate::ring_q5::is_perfect_square;

/// Primes below this bound are used by default.
pub const DEFAULT_PRIME_BUDGET: u64 = 1000;

// Fewer usable primes than this leaves a noticeable chance that a D5 or A5
// quintic was missed; (1/2)^40 and (2/3)^40 are both below 1e-7.
const CONFIDENT_PRIMES: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GaloisClass {
    Reducible,
    NonSquareDisc,
    LikelyC5,
    LikelyD5,
    LikelyA5,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Screen {
    pub class: GaloisClass,
    /// Set when too few primes were available to trust the class.
    pub low_confidence: bool,
    /// Number of primes with squarefree reduction that were examined.
    pub primes_used: usize,
    /// Factor-degree pattern of `f mod p` and how often it occurred.
    pub patterns: BTreeMap<Vec<usize>, usize>,
}

/// Integer roots or monic quadratic factors, found from numerical roots and
/// confirmed by exact division.
fn has_small_factor(f: &QuinticPoly) -> bool {
    let asc = f.ascending();
    if asc[0].is_zero() {
        return true;
    }
    let mut bits = DEFAULT_PRECISION;
    let roots = loop {
        match f.roots::<MpReal>(bits) {
            Ok(r) => break r,
            Err(_) if bits < 512 => bits *= 2,
            Err(_) => return false,
        }
    };
    let tol = MpReal::from_f64_prec(1e-6, bits);
    let near_int = |z: &num_complex::Complex<MpReal>| -> Option<BigInt> {
        if z.im.abs() > tol {
            return None;
        }
        let (n, d) = nearest_int(&z.re);
        (d <= tol).then_some(n)
    };
    for x in &roots {
        if let Some(n) = near_int(x) {
            if eval(&asc, &n).is_zero() {
                return true;
            }
        }
    }
    for i in 0..5 {
        for j in i + 1..5 {
            let s = roots[i].clone() + roots[j].clone();
            let p = roots[i].clone() * roots[j].clone();
            if let (Some(s), Some(p)) = (near_int(&s), near_int(&p)) {
                if div_exact_monic(&asc, &[p, -s, BigInt::from(1)]).is_some() {
                    return true;
                }
            }
        }
    }
    false
}

/// Classify `f` using factorization patterns modulo the primes below
/// `prime_budget`.
pub fn galois_screen(f: &QuinticPoly, prime_budget: u64) -> Screen {
    let mut patterns: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let asc = f.ascending();
    let mut primes_used = 0;
    if !f.discriminant().is_zero() {
        for p in poly::primes_below(prime_budget) {
            if let Some(d) = factor_degrees_mod_p(&asc, p) {
                *patterns.entry(d).or_default() += 1;
                primes_used += 1;
            }
        }
    }
    let done = |class, low_confidence| Screen {
        class,
        low_confidence,
        primes_used,
        patterns: patterns.clone(),
    };

    if f.discriminant().is_zero() {
        return done(GaloisClass::Reducible, false);
    }
    // A degree-5 factor mod some unramified p certifies irreducibility.
    if !patterns.contains_key(&vec![5]) && has_small_factor(f) {
        return done(GaloisClass::Reducible, false);
    }
    let disc = f.discriminant();
    if disc.is_negative() || is_perfect_square(disc).is_none() {
        return done(GaloisClass::NonSquareDisc, false);
    }
    let low = primes_used < CONFIDENT_PRIMES;
    if patterns.contains_key(&vec![3, 1, 1]) {
        return done(GaloisClass::LikelyA5, false);
    }
    if patterns.contains_key(&vec![2, 2, 1]) {
        return done(GaloisClass::LikelyD5, low);
    }
    done(GaloisClass::LikelyC5, low)
}
