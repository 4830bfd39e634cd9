//! Stiemke's alternative over the integers, decided by exact LP.
//!
//! For an integer matrix `M` with `N` rows, exactly one of the following has
//! a solution:
//!
//! 1. `M x >= 0`, `M x != 0` with `x` integral (a *witness*), or
//! 2. `M^t xi = 0` with `xi` strictly positive rational (a *positive
//!    kernel* vector).
//!
//! The split is decided by maximizing `t` subject to `M^t xi = 0`,
//! `sum_v xi_v = 1`, `xi_v >= t`: a positive optimum yields branch 2; an
//! infeasible program or a nonpositive optimum sends us to the feasibility
//! system `M x >= 0`, `1^t M x >= 1`, whose solution set is a rational
//! polyhedron — so a rational point exists whenever a real one does, and
//! clearing denominators turns it into an integer witness. Scaling by a
//! positive integer preserves both defining conditions, which is why the
//! integerization loses nothing; the property tests exercise exactly this.
//!
//! Both branches are re-verified exactly before being returned.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::{vec_is_positive_nonzero, IntMatrix};
use crate::simplex::{self, Constraint, LinearProgram, LpOutcome, Rel};

/// The two mutually exclusive outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alternative {
    /// Strictly positive rational `xi` with `M^t xi = 0`.
    PositiveKernel { xi: Vec<BigRational> },
    /// Integer `x` with `M x >= 0` and `M x != 0`.
    Witness { x: Vec<BigInt> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum StiemkeError {
    /// `M` has no rows: neither branch can exist.
    #[error("matrix with zero rows admits neither branch of the alternative")]
    EmptyDimension,
}

/// `maximize t` subject to `M^t xi = 0`, `sum xi = 1`, `xi_v - t >= 0`.
/// Variables are `xi_1..xi_N, t`.
pub fn kernel_program(m: &IntMatrix) -> LinearProgram {
    let n = m.rows();
    let p = m.cols();
    let mut constraints = Vec::with_capacity(p + 1 + n);
    for j in 0..p {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (v, c) in coeffs.iter_mut().enumerate().take(n) {
            *c = BigRational::from(m[(v, j)].clone());
        }
        constraints.push(Constraint::new(coeffs, Rel::Eq, BigRational::zero()));
    }
    let mut ones = vec![BigRational::one(); n];
    ones.push(BigRational::zero());
    constraints.push(Constraint::new(ones, Rel::Eq, BigRational::one()));
    for v in 0..n {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[v] = BigRational::one();
        coeffs[n] = -BigRational::one();
        constraints.push(Constraint::new(coeffs, Rel::Ge, BigRational::zero()));
    }
    let mut objective = vec![BigRational::zero(); n + 1];
    objective[n] = BigRational::one();
    LinearProgram {
        num_vars: n + 1,
        objective,
        constraints,
    }
}

/// The feasibility system `M x >= 0`, `1^t M x >= 1` over `x_1..x_P`.
pub fn witness_program(m: &IntMatrix) -> LinearProgram {
    let n = m.rows();
    let p = m.cols();
    let mut constraints = Vec::with_capacity(n + 1);
    for v in 0..n {
        let coeffs = (0..p)
            .map(|j| BigRational::from(m[(v, j)].clone()))
            .collect();
        constraints.push(Constraint::new(coeffs, Rel::Ge, BigRational::zero()));
    }
    let col_sums = (0..p)
        .map(|j| BigRational::from((0..n).map(|v| m[(v, j)].clone()).sum::<BigInt>()))
        .collect();
    constraints.push(Constraint::new(col_sums, Rel::Ge, BigRational::one()));
    LinearProgram {
        num_vars: p,
        objective: vec![BigRational::zero(); p],
        constraints,
    }
}

pub fn stiemke_alternative(m: &IntMatrix) -> Result<Alternative, StiemkeError> {
    if m.rows() == 0 {
        return Err(StiemkeError::EmptyDimension);
    }

    let kernel_lp = kernel_program(m);
    let kernel_outcome = simplex::solve(&kernel_lp).expect("well-formed program");
    match kernel_outcome {
        LpOutcome::Optimal {
            ref value,
            ref point,
            ..
        } if value.is_positive() => {
            let xi: Vec<BigRational> = point[..m.rows()].to_vec();
            assert!(
                verify_positive_kernel(m, &xi),
                "LP returned an invalid kernel vector"
            );
            Ok(Alternative::PositiveKernel { xi })
        }
        _ => {
            let witness_lp = witness_program(m);
            match simplex::solve(&witness_lp).expect("well-formed program") {
                LpOutcome::Optimal { point, .. } | LpOutcome::Unbounded { point, .. } => {
                    let x = integerize(&point);
                    let image = m.mul_vec(&x);
                    assert!(
                        vec_is_positive_nonzero(&image),
                        "LP returned an invalid witness"
                    );
                    Ok(Alternative::Witness { x })
                }
                LpOutcome::Infeasible { .. } => {
                    unreachable!("both branches of the alternative infeasible")
                }
            }
        }
    }
}

/// Exact check of branch 2: strict positivity and `M^t xi = 0`.
pub fn verify_positive_kernel(m: &IntMatrix, xi: &[BigRational]) -> bool {
    if xi.len() != m.rows() {
        return false;
    }
    if !xi.iter().all(Signed::is_positive) {
        return false;
    }
    (0..m.cols()).all(|j| {
        xi.iter()
            .enumerate()
            .map(|(v, x)| BigRational::from(m[(v, j)].clone()) * x.clone())
            .sum::<BigRational>()
            .is_zero()
    })
}

/// Clears denominators by their least common multiple.
pub fn integerize(point: &[BigRational]) -> Vec<BigInt> {
    let lcm = point
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    point
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect()
}
