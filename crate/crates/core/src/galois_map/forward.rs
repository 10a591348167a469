use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Signed, Zero};

use super::screen::{galois_screen, GaloisClass, DEFAULT_PRIME_BUDGET};
use super::{resolvents_from_roots, QuinticPoly, Triple, VQuadruple};
use crate::numeric::{cmag, fifth_root, nearest_int, sqrt5, zeta_powers, MpReal, Real, MAX_PRECISION};
use crate::poly::from_roots;
use crate::ring_q5::{embed_pair, ZPhi};
use crate::{Error, MpComplex, QuadInt};

/// Rounding tolerance for values that must land on integers.
const TOL: f64 = 1e-6;

/// Outcome of [`forward_detailed`].
#[derive(Clone, Debug)]
pub struct ForwardResult {
    /// Canonical triple.
    pub triple: Triple,
    /// Triple as read off the first successful ordering, before
    /// canonicalization.
    pub raw: Triple,
    /// First ordering (lexicographic) that produced an integral triple.
    pub ordering: [usize; 5],
    pub roots: Vec<MpComplex>,
    pub bits: u32,
}

/// Lexicographic successor of a permutation; `false` at the last one.
fn next_permutation(p: &mut [usize; 5]) -> bool {
    let Some(i) = (0..4).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..5).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn c<R: Real>(x: &R) -> Complex<R> {
    Complex::new(x.clone(), R::zero())
}

fn round_real<R: Real>(z: &Complex<R>, tol: &R) -> Option<BigInt> {
    if z.im.abs() > *tol {
        return None;
    }
    let (n, d) = nearest_int(&z.re);
    (d <= *tol).then_some(n)
}

/// `(A, B, C)` read off a resolvent quadruple, if every coordinate rounds.
///
/// `A` and `conj A` are `V2 V3` and `V1 V4` (the automorphism
/// `zeta -> zeta^2` maps one to the other); `a + b phi` is recovered from
/// the pair of embeddings.
fn triple_from_resolvents<R: Real>(v: &VQuadruple<R>, s5: &R, tol: &R) -> Option<Triple> {
    let (v1, v2, v3, v4) = (v.get(1), v.get(2), v.get(3), v.get(4));
    let p1 = v1.clone() * v2.clone() * v2.clone();
    let p2 = v3.clone() * v3.clone() * v4.clone();
    let q1 = v2.clone() * v4.clone() * v4.clone();
    let q2 = v1.clone() * v1.clone() * v3.clone();
    let a_plus = v2.clone() * v3.clone();
    let a_minus = v1.clone() * v4.clone();
    let b_plus = p1.clone() + p2.clone();
    let b_minus = q1.clone() + q2.clone();
    let c_val = (p1 - p2) * (q1 - q2) / c(s5);
    let to_zphi = |plus: &Complex<R>, minus: &Complex<R>| -> Option<QuadInt> {
        // plus = a + b phi, minus = a + b (1 - phi), so plus - minus = b sqrt5
        let b = (plus.clone() - minus.clone()) / c(s5);
        let bn = round_real(&b, tol)?;
        let a = (plus.clone() + minus.clone() - c(&R::from_bigint_prec(&bn, s5.bits())))
            / c(&R::from_i64_prec(2, s5.bits()));
        Some(ZPhi::new(round_real(&a, tol)?, bn))
    };
    let a = to_zphi(&a_plus, &a_minus)?;
    let b = to_zphi(&b_plus, &b_minus)?;
    let cn = round_real(&c_val, tol)?;
    Some(Triple::new(a, b, cn))
}

/// The ten relabellings `i -> ±i + s` of positions mod 5.
fn dihedral_images(ordering: [usize; 5]) -> Vec<[usize; 5]> {
    let at = |i: i64| ordering[((i - 1).rem_euclid(5)) as usize];
    let mut out = Vec::with_capacity(10);
    for s in 0..5 {
        for sign in [1i64, -1] {
            out.push([1i64, 2, 3, 4, 5].map(|i| at(sign * i + s)));
        }
    }
    out
}

/// Forward map with diagnostics; see [`forward`].
pub fn forward_detailed(f: &QuinticPoly, bits: u32) -> Result<ForwardResult, Error> {
    if !f.is_trace_zero() {
        return Err(Error::NotTraceZero(f.coeffs()[0].to_string()));
    }
    let cs = f.coeffs();
    if cs[1].is_zero() && cs[2].is_zero() && cs[3].is_zero() {
        // t^5 + c0: the roots are c * zeta^k, the shape with vanishing V_j
        return Err(Error::DegenerateResolvent);
    }
    let screen = galois_screen(f, DEFAULT_PRIME_BUDGET);
    if screen.class != GaloisClass::LikelyD5 {
        return Err(Error::NotD5(screen.class));
    }

    let mut bits = bits.max(64);
    loop {
        if let Some(res) = forward_at(f, bits)? {
            return Ok(res);
        }
        if bits >= MAX_PRECISION {
            return Err(Error::NoValidOrdering(bits));
        }
        bits = (bits * 2).min(MAX_PRECISION);
    }
}

fn forward_at(f: &QuinticPoly, bits: u32) -> Result<Option<ForwardResult>, Error> {
    let roots = f.roots::<MpReal>(bits)?;
    let zeta = zeta_powers::<MpReal>(bits);
    let s5: MpReal = sqrt5(bits);
    let tol = MpReal::from_f64_prec(TOL, bits);
    let mut perm = [0, 1, 2, 3, 4];
    loop {
        let v = resolvents_from_roots(&roots, perm, &zeta);
        if let Some(raw) = triple_from_resolvents(&v, &s5, &tol) {
            if raw.satisfies_norm_equation() {
                if v.v.iter().any(|vj| cmag(vj) < tol) {
                    return Err(Error::DegenerateResolvent);
                }
                // every dihedral relabelling must give the same raw triple
                let consistent = dihedral_images(perm).into_iter().all(|o| {
                    let w = resolvents_from_roots(&roots, o, &zeta);
                    triple_from_resolvents(&w, &s5, &tol).as_ref() == Some(&raw)
                });
                if !consistent {
                    return Ok(None);
                }
                return Ok(Some(ForwardResult {
                    triple: raw.canonical(),
                    raw,
                    ordering: perm,
                    roots,
                    bits,
                }));
            }
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

/// Triple of a trace-zero D5 quintic.
///
/// Tries the 120 root orderings in lexicographic order until `A`, `B`, `C`
/// round to integral values that satisfy the norm equation exactly, retrying
/// at doubled precision (up to 1024 bits) if none does. The result is
/// canonical: `C >= 0` and the smaller of `T` and its conjugate twist.
pub fn forward(f: &QuinticPoly, bits: u32) -> Result<Triple, Error> {
    forward_detailed(f, bits).map(|r| r.triple)
}

enum Recovery {
    Poly(QuinticPoly),
    /// Coefficients were close to integers but not within tolerance, or the
    /// five fifth-root branches disagreed.
    Unstable,
    Nothing,
}

fn complex_sqrt<R: Real>(z: &Complex<R>, bits: u32) -> Complex<R> {
    // sqrt((|z| + re)/2) + i sign(im) sqrt((|z| - re)/2)
    let two = R::from_i64_prec(2, bits);
    let m = (z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()).sqrt();
    let re = ((m.clone() + z.re.clone()) / two.clone()).abs().sqrt();
    let mut im = ((m - z.re.clone()) / two).abs().sqrt();
    if z.im.is_negative() {
        im = -im;
    }
    Complex::new(re, im)
}

/// Rebuild the roots from one choice of `(P1, P2, Q1, Q2)` and round the
/// resulting polynomial over all five fifth-root branches.
#[allow(clippy::too_many_arguments)]
fn recover_branch(
    p: (&MpComplex, &MpComplex),
    q: (&MpComplex, &MpComplex),
    a_plus: &MpComplex,
    a_minus: &MpComplex,
    zeta: &[MpComplex; 5],
    bits: u32,
    tol: &MpReal,
) -> Recovery {
    let (p1, p2) = p;
    let (q1, q2) = q;
    let v1_5 = p1.clone() * q2.clone() * q2.clone() / (a_plus.clone() * a_plus.clone());
    if cmag(&v1_5) < *tol {
        return Recovery::Nothing;
    }
    let base = fifth_root(&v1_5, bits);
    let fifth = MpComplex::new(
        MpReal::from_i64_prec(1, bits) / MpReal::from_i64_prec(5, bits),
        MpReal::zero(),
    );
    let loose = MpReal::from_f64_prec(1e-2, bits);
    let mut found: Option<[BigInt; 5]> = None;
    for k in 0..5 {
        let v1 = base.clone() * zeta[k].clone();
        let v3 = q2.clone() / (v1.clone() * v1.clone());
        let v4 = p2.clone() / (v3.clone() * v3.clone());
        let v2 = q1.clone() / (v4.clone() * v4.clone());
        let scale_a = MpReal::from_i64_prec(1, bits) + cmag(a_plus);
        if cmag(&(v2.clone() * v3.clone() - a_plus.clone())) > tol.clone() * scale_a.clone()
            || cmag(&(v1.clone() * v4.clone() - a_minus.clone())) > tol.clone() * scale_a
        {
            return Recovery::Nothing;
        }
        let vs = [v1, v2, v3, v4];
        let roots: Vec<MpComplex> = (1..=5)
            .map(|i| {
                let mut acc = MpComplex::new(MpReal::zero(), MpReal::zero());
                for (j, vj) in vs.iter().enumerate() {
                    let e = (5 * 5 - i * (j + 1)) % 5;
                    acc += zeta[e].clone() * vj.clone();
                }
                acc * fifth.clone()
            })
            .collect();
        let coeffs = from_roots(&roots);
        let mut rounded = Vec::with_capacity(5);
        for z in coeffs[..5].iter().rev() {
            match round_real(z, tol) {
                Some(n) => rounded.push(n),
                None => {
                    if z.im.abs() <= loose && nearest_int(&z.re).1 <= loose {
                        return Recovery::Unstable;
                    }
                    return Recovery::Nothing;
                }
            }
        }
        let rounded: [BigInt; 5] = rounded.try_into().unwrap();
        match &found {
            None => found = Some(rounded),
            Some(prev) if *prev == rounded => {}
            Some(_) => return Recovery::Unstable,
        }
    }
    match found {
        Some(c) if c[0].is_zero() => Recovery::Poly(QuinticPoly::new(c)),
        _ => Recovery::Nothing,
    }
}

fn recover_at(t: &Triple, bits: u32) -> (Vec<QuinticPoly>, bool) {
    let zeta = zeta_powers::<MpReal>(bits);
    let s5: MpReal = sqrt5(bits);
    let tol = MpReal::from_f64_prec(TOL, bits);
    let two = MpComplex::new(MpReal::from_i64_prec(2, bits), MpReal::zero());
    let four = MpComplex::new(MpReal::from_i64_prec(4, bits), MpReal::zero());
    let c_s5 = MpComplex::new(MpReal::from_bigint_prec(&t.c, bits) * s5, MpReal::zero());
    let mut polys = Vec::new();
    let mut unstable = false;
    // The two assignments of real embeddings to (V2 V3, V1 V4) are T and its
    // conjugate twist.
    for tw in [t.clone(), t.conj_twist()] {
        let (ap, am) = embed_pair::<MpReal>(&tw.a, bits);
        let (bp, bm) = embed_pair::<MpReal>(&tw.b, bits);
        // V1 V2^2 and V3^2 V4 are the roots of z^2 - B z + conj(A) A^2
        let disc = bp.clone() * bp.clone() - four.clone() * am.clone() * ap.clone() * ap.clone();
        let sq = complex_sqrt(&disc, bits);
        let r1 = (bp.clone() + sq.clone()) / two.clone();
        let r2 = (bp.clone() - sq.clone()) / two.clone();
        let split = cmag(&sq) > tol;
        for (p1, p2) in [(&r1, &r2), (&r2, &r1)] {
            let mut qs: Vec<(MpComplex, MpComplex)> = Vec::new();
            if split {
                // V2 V4^2 - V1^2 V3 = C sqrt5 / (V1 V2^2 - V3^2 V4), sign of C unknown
                for sgn in [1i64, -1] {
                    let d = c_s5.clone() * MpComplex::new(MpReal::from_i64_prec(sgn, bits), MpReal::zero())
                        / (p1.clone() - p2.clone());
                    qs.push(((bm.clone() + d.clone()) / two.clone(), (bm.clone() - d) / two.clone()));
                }
            } else {
                let dq = bm.clone() * bm.clone() - four.clone() * ap.clone() * am.clone() * am.clone();
                let sq = complex_sqrt(&dq, bits);
                let s1 = (bm.clone() + sq.clone()) / two.clone();
                let s2 = (bm.clone() - sq) / two.clone();
                qs.push((s1.clone(), s2.clone()));
                qs.push((s2, s1));
            }
            for (q1, q2) in &qs {
                match recover_branch((p1, p2), (q1, q2), &ap, &am, &zeta, bits, &tol) {
                    Recovery::Poly(g) => {
                        if !polys.contains(&g) {
                            polys.push(g);
                        }
                    }
                    Recovery::Unstable => unstable = true,
                    Recovery::Nothing => {}
                }
            }
        }
    }
    (polys, unstable)
}

/// The quintic determined by a triple, if there is one.
///
/// Recovers `(V1 V2^2, V3^2 V4)` from `B` and `conj(A) A^2`, then
/// `(V2 V4^2, V1^2 V3)` from `conj(B)` and `C sqrt5`, then `V1` from
/// `V1^5 = V1 V2^2 (V1^2 V3)^2 / (V2 V3)^2` and the rest by division,
/// and finally the roots `x_i = (1/5) sum_j zeta^(-ij) V_j`. Every branch
/// (embedding assignment, root order, sign of `C`) is tried; a candidate
/// counts only if its coefficients round to integers consistently across
/// the five fifth roots and [`forward`] maps it back to `T` (up to the
/// conjugate twist).
pub fn inverse(t: &Triple, bits: u32) -> Result<Option<QuinticPoly>, Error> {
    if t.a.norm().is_zero() {
        return Err(Error::DegenerateTriple);
    }
    if !t.satisfies_norm_equation() {
        return Err(Error::NotOnVariety);
    }
    let want = t.canonical();
    let mut bits = bits.max(64);
    loop {
        let (polys, unstable) = recover_at(t, bits);
        for g in polys {
            if let Ok(tg) = forward(&g, bits) {
                if tg == want {
                    return Ok(Some(g));
                }
            }
        }
        if !unstable {
            return Ok(None);
        }
        if bits >= MAX_PRECISION {
            return Err(Error::NumericalInstability(bits));
        }
        bits = (bits * 2).min(MAX_PRECISION);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_complete_and_ordered() {
        let mut p = [0, 1, 2, 3, 4];
        let mut seen = vec![p];
        while next_permutation(&mut p) {
            assert!(p > *seen.last().unwrap());
            seen.push(p);
        }
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn dihedral_images_are_ten_distinct() {
        let mut imgs = dihedral_images([4, 2, 0, 1, 3]);
        assert!(imgs.contains(&[4, 2, 0, 1, 3]));
        imgs.sort();
        imgs.dedup();
        assert_eq!(imgs.len(), 10);
    }

    #[test]
    fn pure_quintics_are_degenerate() {
        for c in [10i64, 2, 3, -7] {
            let f = QuinticPoly::from_i64([0, 0, 0, 0, -c.pow(5)]);
            assert_eq!(forward(&f, 128), Err(Error::DegenerateResolvent));
        }
        assert_eq!(
            forward(&QuinticPoly::from_i64([0, 0, 0, 0, -6250]), 128),
            Err(Error::DegenerateResolvent)
        );
    }

    #[test]
    fn forward_rejects_bad_inputs() {
        assert!(matches!(
            forward(&QuinticPoly::from_i64([1, 0, 0, 0, 1]), 128),
            Err(Error::NotTraceZero(_))
        ));
        let reducible = QuinticPoly::from_i64([0, -1, 5, -2, 5]);
        assert_eq!(forward(&reducible, 128), Err(Error::NotD5(GaloisClass::Reducible)));
    }

    #[test]
    fn forward_then_inverse_on_classic_quintic() {
        let f = QuinticPoly::from_i64([0, 0, 0, -5, 12]);
        let r = forward_detailed(&f, 128).unwrap();
        assert!(r.triple.satisfies_norm_equation());
        assert!(!r.triple.c.is_negative());
        assert_eq!(inverse(&r.triple, 128).unwrap(), Some(f.clone()));
        assert_eq!(inverse(&r.triple.conj_twist(), 128).unwrap(), Some(f));
    }

    #[test]
    fn inverse_preconditions() {
        let zero = Triple::new(ZPhi::default(), ZPhi::default(), BigInt::zero());
        assert_eq!(inverse(&zero, 128), Err(Error::DegenerateTriple));
        let off = Triple::new(ZPhi::from_int(BigInt::from(1)), ZPhi::default(), BigInt::from(1));
        assert_eq!(inverse(&off, 128), Err(Error::NotOnVariety));
    }
}
