use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use d5count::enumerator::list_triples;
use d5count::galois_map::{forward_detailed, resolvents_from_roots, QuinticPoly, Triple};
use d5count::numeric::{zeta_powers, MpReal, Real};
use d5count::ring_q5::{sqrt_in_q5_default, Embedding, ZPhi};
use d5count::{BoxConfig, QuadInt, QuadInt64};

fn q(a: i64, b: i64) -> QuadInt {
    ZPhi::new(BigInt::from(a), BigInt::from(b))
}

const R: i64 = 1_000_000;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn norm_is_multiplicative(a in -R..R, b in -R..R, c in -R..R, d in -R..R) {
        let (x, y) = (q(a, b), q(c, d));
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
    }

    #[test]
    fn conjugation_is_a_ring_homomorphism(a in -R..R, b in -R..R, c in -R..R, d in -R..R) {
        let (x, y) = (q(a, b), q(c, d));
        prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
        prop_assert_eq!((x.clone() + y.clone()).conj(), x.conj() + y.conj());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn machine_and_big_arithmetic_agree(a in -R..R, b in -R..R, c in -R..R, d in -R..R) {
        let (x, y) = (ZPhi::new(a, b), ZPhi::new(c, d));
        let big = q(a, b) * q(c, d) - q(c, d).square();
        let small: QuadInt64 = x * y - y.square();
        prop_assert_eq!(QuadInt::from(small), big);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn embeddings_multiply_to_norm(a in -R..R, b in -R..R) {
        let x = q(a, b);
        let p: MpReal = x.embed(Embedding::Plus, 128);
        let m: MpReal = x.embed(Embedding::Minus, 128);
        let n = MpReal::from_bigint_prec(&x.norm(), 128);
        let err = (p * m - n.clone()).abs();
        prop_assert!(err <= n.abs() * MpReal::from_f64_prec(1e-30, 128) + MpReal::from_f64_prec(1e-30, 128));
    }

    #[test]
    fn square_roots_of_squares(a in -R..R, b in -R..R) {
        let x = q(a, b);
        let y = sqrt_in_q5_default(&x.square().to_quad_rat()).expect("a square has a root");
        let y = y.to_zphi().expect("root of an integer square is integral");
        prop_assert!(y == x || y == -x);
    }

    #[test]
    fn sqrt_rejects_non_squares(a in -1000i64..1000, b in -1000i64..1000) {
        // phi x^2 has norm -Nm(x)^2, so it is never a square unless x = 0
        let x = q(a, b);
        prop_assume!(!x.is_zero());
        prop_assert!(sqrt_in_q5_default(&(x.square() * ZPhi::phi()).to_quad_rat()).is_none());
    }

    #[test]
    fn text_round_trip(a in -R..R, b in -R..R, c in -R..R, d in -R..R, n in 0..R) {
        let t = Triple::new(q(a, b), q(c, d), BigInt::from(n));
        prop_assert_eq!(t.to_string().parse::<Triple>().unwrap(), t);
        let f = QuinticPoly::from_i64([0, a, b, c, d]);
        prop_assert_eq!(f.to_string().parse::<QuinticPoly>().unwrap(), f);
    }

    #[test]
    fn resolvents_invert(re in proptest::collection::vec(-50.0f64..50.0, 4), im in proptest::collection::vec(-50.0f64..50.0, 4)) {
        // V -> x_i = (1/5) sum_j zeta^(-ij) V_j -> V is the identity
        let bits = 128;
        let zeta = zeta_powers::<MpReal>(bits);
        let v: Vec<Complex<MpReal>> = (0..4)
            .map(|j| Complex::new(MpReal::from_f64_prec(re[j], bits), MpReal::from_f64_prec(im[j], bits)))
            .collect();
        let fifth = MpReal::from_i64_prec(1, bits) / MpReal::from_i64_prec(5, bits);
        let roots: Vec<Complex<MpReal>> = (1..=5)
            .map(|i| {
                let mut acc = Complex::new(MpReal::zero(), MpReal::zero());
                for j in 1..=4 {
                    acc += zeta[(25 - i * j) % 5].clone() * v[j - 1].clone();
                }
                acc.scale(fifth.clone())
            })
            .collect();
        let back = resolvents_from_roots(&roots, [0, 1, 2, 3, 4], &zeta);
        for j in 1..=4 {
            let d = (back.get(j).clone() - v[j - 1].clone()).norm_sqr();
            prop_assert!(d.as_f64() < 1e-50);
        }
    }
}

#[test]
fn dihedral_relabellings_preserve_a() {
    let bits = 128;
    let zeta = zeta_powers::<MpReal>(bits);
    for c in [[0, 0, 0, -5, 12], [0, -1, -2, -2, -1], [0, 1, -3, 1, -3]] {
        let f = QuinticPoly::from_i64(c);
        let r = forward_detailed(&f, bits).unwrap();
        let a_plus: MpReal = r.raw.a.embed(Embedding::Plus, bits);
        let a_minus: MpReal = r.raw.a.embed(Embedding::Minus, bits);
        let close =
            |z: Complex<MpReal>, w: &MpReal| (z - Complex::new(w.clone(), MpReal::zero())).norm_sqr().as_f64() < 1e-40;
        let o = r.ordering;
        for s in 0..5 {
            for sign in [1i64, -1] {
                let img = [1i64, 2, 3, 4, 5].map(|i| o[((sign * i + s - 1).rem_euclid(5)) as usize]);
                let v = resolvents_from_roots(&r.roots, img, &zeta);
                assert!(close(v.get(2).clone() * v.get(3).clone(), &a_plus), "{f} {img:?}");
                assert!(close(v.get(1).clone() * v.get(4).clone(), &a_minus), "{f} {img:?}");
            }
        }
        // a transposition of two adjacent positions leaves the dihedral class
        let swapped = [o[1], o[0], o[2], o[3], o[4]];
        let v = resolvents_from_roots(&r.roots, swapped, &zeta);
        assert!(!close(v.get(2).clone() * v.get(3).clone(), &a_plus), "{f}");
    }
}

#[test]
fn listed_triples_are_sound_and_symmetric() {
    for x in [10u64, 100, 300, 1000] {
        let cfg = BoxConfig::unit(x);
        let list = list_triples(&cfg).unwrap();
        let mut sorted = list.clone();
        sorted.sort();
        for t in &list {
            assert!(t.satisfies_norm_equation(), "{t}");
            assert!(!t.c.is_negative() && !t.a.is_zero());
            assert!(
                sorted.binary_search(&t.conj_twist()).is_ok(),
                "conjugate of {t} missing"
            );
            let neg_b = Triple::new(t.a.clone(), -t.b.clone(), t.c.clone());
            assert!(sorted.binary_search(&neg_b).is_ok(), "{neg_b} missing");
        }
    }
}
