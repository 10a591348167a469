use num_bigint::BigInt;

use super::forward::forward;
use super::screen::{galois_screen, GaloisClass, DEFAULT_PRIME_BUDGET};
use super::QuinticPoly;
use crate::numeric::DEFAULT_PRECISION;
use crate::poly::discriminant;
use crate::ring_q5::ExactSqrt;

/// Trace-zero quintics `t^5 + c3 t^3 + c2 t^2 + c1 t + c0` with
/// `max |c_i| = h`, `c0 != 0`, in lexicographic order of `(c3, c2, c1, c0)`.
fn shell(h: i64) -> impl Iterator<Item = [i64; 4]> {
    let r = move || -h..=h;
    r().flat_map(move |c3| r().flat_map(move |c2| r().flat_map(move |c1| r().map(move |c0| [c3, c2, c1, c0]))))
        .filter(move |c| c[3] != 0 && c.iter().any(|x| x.abs() == h))
}

/// Up to `limit` quintics with group D5, found by brute force over trace-zero
/// quintics with coefficients bounded by `max_coeff`, searched in shells of
/// increasing `max |c_i|`.
///
/// A candidate must have a positive square discriminant, screen as
/// [`GaloisClass::LikelyD5`] and have a triple passing the exact norm check
/// in [`forward`].
pub fn find_d5_quintics(max_coeff: i64, limit: usize) -> Vec<QuinticPoly> {
    let mut out = Vec::new();
    for h in 1..=max_coeff {
        for [c3, c2, c1, c0] in shell(h) {
            // coefficients up to a few hundred keep the Sylvester minors in i128
            let asc = [c0, c1, c2, c3, 0, 1].map(i128::from);
            let d = discriminant(&asc);
            if d <= 0 || d.exact_sqrt().is_none() {
                continue;
            }
            let f = QuinticPoly::new([0, c3, c2, c1, c0].map(BigInt::from));
            if galois_screen(&f, DEFAULT_PRIME_BUDGET).class != GaloisClass::LikelyD5 {
                continue;
            }
            if forward(&f, DEFAULT_PRECISION).is_ok() {
                out.push(f);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shell_sizes() {
        // (2h+1)^4 - (2h-1)^4 points on the shell, minus those with c0 = 0
        for h in 1..4i64 {
            let all = (2 * h + 1).pow(4) - (2 * h - 1).pow(4);
            let c0_zero = (2 * h + 1).pow(3) - (2 * h - 1).pow(3);
            assert_eq!(shell(h).count() as i64, all - c0_zero);
        }
    }

    #[test]
    fn finds_d5_quintics() {
        let found = find_d5_quintics(12, 2);
        assert_eq!(found.len(), 2);
        for f in &found {
            assert_eq!(galois_screen(f, DEFAULT_PRIME_BUDGET).class, GaloisClass::LikelyD5);
        }
    }
}
