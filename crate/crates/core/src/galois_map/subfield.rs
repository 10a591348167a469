use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Signed, Zero};

use super::forward::forward_detailed;
use super::{QuinticPoly, Triple};
use crate::numeric::{nearest_int, MpReal, Real, MAX_PRECISION};
use crate::ring_q5::{sqrt_in_q5_default, ZPhi};
use crate::{Error, MpComplex, QuadInt};

/// Exponents `(a, b, d)` tried in order for the invariant `theta`.
const THETA_SHAPES: [(u32, u32, usize); 8] = [
    (2, 1, 1),
    (2, 1, 2),
    (3, 1, 1),
    (3, 1, 2),
    (3, 2, 1),
    (3, 2, 2),
    (4, 1, 1),
    (4, 1, 2),
];

/// `(2 sqrt5 - 10)(B^2 - 4 conj(A) A^2)`, written in `Z[phi]` as
/// `(4 phi - 12)(B^2 - 4 conj(A) A^2)`.
///
/// Its square root generates the compositum of `Q(sqrt5)` with the
/// quadratic subfield of the Galois closure. Fails with [`Error::ZeroC`]
/// when `C = 0`, where the witness vanishes.
pub fn subfield_witness(t: &Triple) -> Result<QuadInt, Error> {
    if t.c.is_zero() {
        return Err(Error::ZeroC);
    }
    let k = ZPhi::new(BigInt::from(-12), BigInt::from(4));
    Ok(k * t.discriminant_element())
}

fn theta(roots: &[MpComplex], ordering: [usize; 5], (a, b, d): (u32, u32, usize)) -> MpComplex {
    let x = |i: usize| &roots[ordering[i % 5]];
    let mut acc = Complex::new(MpReal::zero(), MpReal::zero());
    for i in 0..5 {
        let (u, w) = (x(i), x(i + d));
        acc = acc + u.powu(a) * w.powu(b) - u.powu(b) * w.powu(a);
    }
    acc
}

/// `theta^2` for the first nonvanishing
/// `theta = sum_i (x_i^a x_{i+d}^b - x_i^b x_{i+d}^a)` over a dihedrally
/// aligned labelling of the roots.
///
/// Rotations fix `theta` and reflections negate it, so `theta^2` is a
/// rational integer and `Q(theta)` is the quadratic subfield of the Galois
/// closure.
pub fn quadratic_resolvent(f: &QuinticPoly, bits: u32) -> Result<BigInt, Error> {
    let res = forward_detailed(f, bits)?;
    let mut bits = res.bits;
    let mut roots = res.roots;
    loop {
        let tol = MpReal::from_f64_prec(1e-6, bits);
        let mut unresolved = false;
        for shape in THETA_SHAPES {
            let th = theta(&roots, res.ordering, shape);
            let sq = th.clone() * th;
            let (n, dist) = nearest_int(&sq.re);
            if sq.im.abs() > tol || dist > tol {
                unresolved = true;
                break;
            }
            if !n.is_zero() {
                return Ok(n);
            }
        }
        if !unresolved {
            // every shape vanished exactly
            return Err(Error::DegenerateResolvent);
        }
        if bits >= MAX_PRECISION {
            return Err(Error::NumericalInstability(bits));
        }
        bits = (bits * 2).min(MAX_PRECISION);
        roots = f.roots::<MpReal>(bits)?;
    }
}

/// Whether `w * theta^2` is a square in `Q(sqrt5)`, i.e. whether `sqrt(w)`
/// and the quadratic subfield of the closure of `f` give the same
/// extension of `Q(sqrt5)`.
pub fn verify_subfield_witness(w: &QuadInt, f: &QuinticPoly, bits: u32) -> Result<bool, Error> {
    let th2 = quadratic_resolvent(f, bits)?;
    let x = w.scale(th2).to_quad_rat();
    Ok(sqrt_in_q5_default(&x).is_some())
}

/// Checks the quadratic-subfield statement for the field of `f` and its
/// triple `t`.
///
/// `t` must be the triple of `f` (up to the conjugate twist and the sign of
/// `C`); otherwise [`Error::Precondition`] is returned.
pub fn verify_subfield(t: &Triple, f: &QuinticPoly, bits: u32) -> Result<bool, Error> {
    let tf = forward_detailed(f, bits)?.triple;
    if tf != t.canonical() {
        return Err(Error::Precondition(format!("triple {t} does not belong to {f}")));
    }
    let w = subfield_witness(t)?;
    verify_subfield_witness(&w, f, bits)
}
