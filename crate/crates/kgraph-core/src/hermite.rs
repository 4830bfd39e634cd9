//! Column-style Hermite normal form and the lattice computations built on it.
//!
//! For an integer matrix `A` we compute a unimodular `U` with `H = A U` in
//! column echelon form: pivots are positive, sit in strictly increasing rows
//! as the column index grows, entries to the left of a pivot in its row are
//! reduced into `[0, pivot)`, and zero columns trail. The nonzero columns of
//! `H` are the canonical basis of the column lattice of `A`, so `H` is
//! invariant under right multiplication of `A` by any unimodular matrix.
//!
//! This single normal form answers every lattice question the crate needs:
//! solvability of `A x = b` over the integers (membership in the column
//! lattice), integer kernel bases, and the eventual kernel
//! `union_m ker A^m` of a square matrix. Kernels of integer matrices are
//! saturated subgroups, which is what makes the eventual-kernel iteration
//! stop as soon as two consecutive kernels have the same rank.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// Result of [`hermite_normal_form`]: `h = a * u` with `u` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pivots: Vec<(usize, usize)>,
}

/// Column-style Hermite normal form.
pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut pivots = Vec::new();
    let mut p = 0; // next pivot column

    for r in 0..m {
        if p == n {
            break;
        }
        // Clear row r on columns >= p down to a single nonzero entry by
        // repeated quotient subtraction (extended Euclid across columns).
        loop {
            let mut best: Option<usize> = None;
            for j in p..n {
                if !h[(r, j)].is_zero() {
                    best = match best {
                        Some(b) if h[(r, b)].abs() <= h[(r, j)].abs() => Some(b),
                        _ => Some(j),
                    };
                }
            }
            let Some(jmin) = best else { break };
            let mut others = false;
            for j in p..n {
                if j == jmin || h[(r, j)].is_zero() {
                    continue;
                }
                let q = -(&h[(r, j)] / &h[(r, jmin)]);
                h.add_mul_col(j, jmin, &q);
                u.add_mul_col(j, jmin, &q);
                if !h[(r, j)].is_zero() {
                    others = true;
                }
            }
            if !others {
                h.swap_cols(p, jmin);
                u.swap_cols(p, jmin);
                break;
            }
        }
        if h[(r, p)].is_zero() {
            continue; // no pivot in this row
        }
        if h[(r, p)].is_negative() {
            h.negate_col(p);
            u.negate_col(p);
        }
        // Canonical reduction of the pivot row to the left of the pivot.
        for j in 0..p {
            let q = -h[(r, j)].div_floor(&h[(r, p)]);
            h.add_mul_col(j, p, &q);
            u.add_mul_col(j, p, &q);
        }
        pivots.push((r, p));
        p += 1;
    }

    HermiteForm { h, u, pivots }
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// `(row, col)` positions of the pivots, in column order.
    pub fn pivots(&self) -> &[(usize, usize)] {
        &self.pivots
    }

    /// Solves `a x = b` over the integers, where `a` is the matrix this form
    /// was computed from. Returns `None` when `b` is not in the column
    /// lattice. Free coordinates are set to zero, which loses no solutions
    /// because the corresponding columns of `h` vanish.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let m = self.h.rows();
        assert_eq!(b.len(), m, "shape mismatch");
        let n = self.h.cols();
        let mut residual: Vec<BigInt> = b.to_vec();
        let mut y = alloc::vec![BigInt::zero(); n];
        let mut pivot_iter = self.pivots.iter().peekable();
        for r in 0..m {
            match pivot_iter.peek() {
                Some(&&(pr, pc)) if pr == r => {
                    pivot_iter.next();
                    let (q, rem) = residual[r].div_rem(&self.h[(r, pc)]);
                    if !rem.is_zero() {
                        return None;
                    }
                    if !q.is_zero() {
                        for (i, res) in residual.iter_mut().enumerate().skip(r) {
                            let sub = &q * &self.h[(i, pc)];
                            *res -= sub;
                        }
                    }
                    y[pc] = q;
                }
                _ => {
                    if !residual[r].is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(self.u.mul_vec(&y))
    }

    /// Columns of `u` above the zero columns of `h`: an integer basis of
    /// `ker a`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let n = self.h.cols();
        (self.rank()..n).map(|j| self.u.col_vec(j)).collect()
    }
}

/// Membership of `b` in the column lattice of `a`, with a witness solution.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    hermite_normal_form(a).solve(b)
}

/// Integer basis of `ker a` (as a list of column vectors).
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    hermite_normal_form(a).kernel_basis()
}

/// The eventual kernel `union_m ker a^m` of a square integer matrix.
///
/// The chain `ker a ⊆ ker a^2 ⊆ ...` consists of saturated subgroups, so two
/// consecutive terms of equal rank are equal and the chain is stationary
/// after at most `n` steps.
#[derive(Debug, Clone)]
pub struct StableKernel {
    /// Canonical basis (column Hermite form of any basis).
    pub basis: Vec<Vec<BigInt>>,
    /// First exponent `m >= 1` with `ker a^m` equal to the eventual kernel
    /// (`1` for the zero-dimensional chain as well).
    pub stabilized_at: usize,
    annihilator: IntMatrix,
}

impl StableKernel {
    /// Exact membership test: `x` lies in the eventual kernel iff the
    /// stabilized power annihilates it.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.annihilator.mul_vec(x).iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The matrix power `a^m` whose kernel is the eventual kernel.
    pub fn annihilator(&self) -> &IntMatrix {
        &self.annihilator
    }
}

pub fn stable_kernel(a: &IntMatrix) -> StableKernel {
    assert!(a.is_square(), "eventual kernel needs a square matrix");
    let n = a.rows();
    let mut power = a.clone();
    let mut exponent = 1usize;
    let mut basis = kernel_basis(&power);
    loop {
        if basis.len() == n {
            break; // whole space, cannot grow
        }
        let next_power = power.mul(a);
        let next_basis = kernel_basis(&next_power);
        if next_basis.len() == basis.len() {
            break; // equal rank + saturation + inclusion => equality
        }
        power = next_power;
        exponent += 1;
        basis = next_basis;
    }
    StableKernel {
        basis: canonical_basis(n, basis),
        stabilized_at: exponent,
        annihilator: power,
    }
}

/// Hermite-canonical form of a spanning set, dropping zero columns.
fn canonical_basis(dim: usize, vectors: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return vectors;
    }
    let mut m = IntMatrix::zero(dim, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    let hf = hermite_normal_form(&m);
    (0..hf.rank()).map(|j| hf.h.col_vec(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vec_from_i64;

    fn is_column_hermite(hf: &HermiteForm) -> bool {
        let h = &hf.h;
        let mut prev_row = None;
        for (idx, &(r, c)) in hf.pivots().iter().enumerate() {
            if c != idx {
                return false;
            }
            if let Some(p) = prev_row {
                if r <= p {
                    return false;
                }
            }
            prev_row = Some(r);
            if !h[(r, c)].is_positive() {
                return false;
            }
            for j in 0..c {
                if h[(r, j)].is_negative() || h[(r, j)] >= h[(r, c)] {
                    return false;
                }
            }
            for j in c + 1..h.cols() {
                if !h[(r, j)].is_zero() {
                    return false;
                }
            }
        }
        // zero columns trail
        for j in hf.rank()..h.cols() {
            if !(0..h.rows()).all(|i| h[(i, j)].is_zero()) {
                return false;
            }
        }
        true
    }

    #[test]
    fn gcd_row() {
        let a = IntMatrix::from_i64(&[&[4, 6]]);
        let hf = hermite_normal_form(&a);
        assert_eq!(hf.h, IntMatrix::from_i64(&[&[2, 0]]));
        assert_eq!(a.mul(&hf.u), hf.h);
        assert_eq!(hf.u.det().abs(), num_bigint::BigInt::from(1));
        assert!(is_column_hermite(&hf));
    }

    #[test]
    fn identity_and_zero() {
        let id = IntMatrix::identity(3);
        let hf = hermite_normal_form(&id);
        assert_eq!(hf.h, id);
        assert_eq!(hf.u, id);
        let z = IntMatrix::zero(2, 3);
        let hf = hermite_normal_form(&z);
        assert_eq!(hf.h, z);
        assert!(is_column_hermite(&hf));
    }

    #[test]
    fn solve_finds_integer_solutions() {
        let a = IntMatrix::from_i64(&[&[4, 6]]);
        let x = solve_linear(&a, &vec_from_i64(&[2])).expect("2 is a multiple of gcd");
        assert_eq!(x, vec_from_i64(&[-1, 1]));
        assert!(solve_linear(&a, &vec_from_i64(&[1])).is_none());
        assert_eq!(
            solve_linear(&a, &vec_from_i64(&[0])).unwrap(),
            vec_from_i64(&[0, 0])
        );
    }

    #[test]
    fn solve_rejects_off_lattice_targets() {
        // column lattice of [[2,0],[0,3]] is 2Z x 3Z
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert!(solve_linear(&a, &vec_from_i64(&[2, 3])).is_some());
        assert!(solve_linear(&a, &vec_from_i64(&[1, 3])).is_none());
        assert!(solve_linear(&a, &vec_from_i64(&[2, 2])).is_none());
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let a = IntMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        assert!(a
            .mul_vec(&k[0])
            .iter()
            .all(|x| x == &num_bigint::BigInt::from(0)));
    }

    #[test]
    fn stable_kernel_examples() {
        // injective: trivial eventual kernel
        let k = stable_kernel(&IntMatrix::from_i64(&[&[2]]));
        assert_eq!(k.rank(), 0);
        assert_eq!(k.stabilized_at, 1);

        // nilpotent: everything dies by the second power
        let k = stable_kernel(&IntMatrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert_eq!(k.rank(), 2);
        assert_eq!(k.stabilized_at, 2);
        assert!(k.contains(&vec_from_i64(&[1, 0])));

        // rank-one projection-like: kernel stabilizes immediately
        let k = stable_kernel(&IntMatrix::from_i64(&[&[1, 1], &[1, 1]]));
        assert_eq!(k.rank(), 1);
        assert_eq!(k.stabilized_at, 1);
        assert!(k.contains(&vec_from_i64(&[1, -1])));
        assert!(!k.contains(&vec_from_i64(&[1, 1])));
        assert_eq!(k.basis, alloc::vec![vec_from_i64(&[1, -1])]);
    }

    #[test]
    fn hermite_invariant_under_right_unimodular_factor() {
        let a = IntMatrix::from_i64(&[&[2, 4, 1], &[0, 3, 3]]);
        let v = IntMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 5], &[0, 0, 1]]);
        assert_eq!(v.det().abs(), num_bigint::BigInt::from(1));
        let h1 = hermite_normal_form(&a).h;
        let h2 = hermite_normal_form(&a.mul(&v)).h;
        assert_eq!(h1, h2);
    }
}
