//! Smith normal form over the integers with both transforms.
//!
//! `smith_normal_form(a)` produces unimodular `u`, `v` and a diagonal `d`
//! with `d = u * a * v`, nonnegative diagonal entries `d_1 | d_2 | ...` and
//! zeros trailing. The invariant factors are unique, which is what makes the
//! cokernel presentations built on top of this canonical.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    /// Full diagonal of `d`: the invariant factors, including any ones and
    /// trailing zeros, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|f| !f.is_zero())
            .count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let steps = core::cmp::min(m, n);
    for t in 0..steps {
        'pivot: loop {
            // Smallest nonzero entry of the trailing submatrix becomes the
            // pivot; earliest position wins ties, so the run is reproducible.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    best = match best {
                        Some((bi, bj)) if d[(bi, bj)].abs() <= d[(i, j)].abs() => Some((bi, bj)),
                        _ => Some((i, j)),
                    };
                }
            }
            let Some((pi, pj)) = best else { break 'pivot };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if !d[(i, t)].is_zero() {
                    let q = -(&d[(i, t)] / &d[(t, t)]);
                    d.add_mul_row(i, t, &q);
                    u.add_mul_row(i, t, &q);
                    dirty |= !d[(i, t)].is_zero();
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() {
                    let q = -(&d[(t, j)] / &d[(t, t)]);
                    d.add_mul_col(j, t, &q);
                    v.add_mul_col(j, t, &q);
                    dirty |= !d[(t, j)].is_zero();
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Row and column are clear; force the divisibility chain. Pulling
            // a bad row up creates a remainder smaller than the pivot, so
            // this loop shrinks the pivot and terminates.
            for i in t + 1..m {
                for j in t + 1..n {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        let one = BigInt::from(1);
                        d.add_mul_row(t, i, &one);
                        u.add_mul_row(t, i, &one);
                        continue 'pivot;
                    }
                }
            }
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            break 'pivot;
        }
    }

    let invariant_factors = (0..steps).map(|t| d[(t, t)].clone()).collect();
    SmithForm {
        u,
        v,
        d,
        invariant_factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check_invariants(a: &IntMatrix, sf: &SmithForm) {
        assert_eq!(sf.d, sf.u.mul(a).mul(&sf.v), "d = u a v");
        assert_eq!(sf.u.det().abs(), BigInt::one());
        assert_eq!(sf.v.det().abs(), BigInt::one());
        // diagonal, nonnegative, dividing, zeros trailing
        for i in 0..sf.d.rows() {
            for j in 0..sf.d.cols() {
                if i != j {
                    assert!(sf.d[(i, j)].is_zero());
                }
            }
        }
        let f = &sf.invariant_factors;
        for w in f.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must trail");
            } else {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
            }
        }
    }

    #[test]
    fn diag_2_3_has_factors_1_6() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let sf = smith_normal_form(&a);
        check_invariants(&a, &sf);
        assert_eq!(
            sf.invariant_factors,
            alloc::vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn identity_factors_all_one() {
        let a = IntMatrix::identity(4);
        let sf = smith_normal_form(&a);
        check_invariants(&a, &sf);
        assert!(sf.invariant_factors.iter().all(|f| f.is_one()));
    }

    #[test]
    fn worked_two_by_two() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let sf = smith_normal_form(&a);
        check_invariants(&a, &sf);
        assert_eq!(
            sf.invariant_factors,
            alloc::vec![BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn three_cycle_permutation_cokernel_is_z() {
        let p = IntMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let b = p.one_minus_transpose();
        let sf = smith_normal_form(&b);
        check_invariants(&b, &sf);
        assert_eq!(
            sf.invariant_factors,
            alloc::vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)]
        );
    }

    #[test]
    fn zero_and_rectangular() {
        let z = IntMatrix::zero(2, 2);
        let sf = smith_normal_form(&z);
        check_invariants(&z, &sf);
        assert!(sf.invariant_factors.iter().all(|f| f.is_zero()));

        let r = IntMatrix::from_i64(&[&[4, 6, 8]]);
        let sf = smith_normal_form(&r);
        check_invariants(&r, &sf);
        assert_eq!(sf.invariant_factors, alloc::vec![BigInt::from(2)]);
    }
}
