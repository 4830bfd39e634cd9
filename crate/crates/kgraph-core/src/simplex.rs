//! Exact linear programming over the rationals.
//!
//! A deliberately small two-phase primal simplex on a dense tableau of
//! `BigRational`s. Variables are unrestricted in sign (each is split into a
//! difference of two nonnegative columns internally), constraints may be
//! `<=`, `>=` or `=`, and every quantity is exact — there are no tolerances
//! anywhere.
//!
//! Pivoting uses Bland's least-index rule for both the entering and the
//! leaving variable. That rule never cycles, and it makes the whole run —
//! and therefore every certificate this crate emits — a deterministic
//! function of the input.
//!
//! Outcomes carry their own evidence:
//!
//! * `Optimal` returns the optimal point and the final basis;
//! * `Infeasible` returns Farkas multipliers `y`, one per constraint, with
//!   `y_i >= 0` on `>=` rows, `y_i <= 0` on `<=` rows, `sum_i y_i a_i = 0`
//!   and `sum_i y_i b_i > 0` — an explicit contradiction;
//! * `Unbounded` returns a feasible point and an improving ray.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Rel,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, rel: Rel, rhs: BigRational) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

/// `maximize objective . x` subject to the constraints; all variables free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
        /// Internal column indices of the final basis, the certificate that
        /// re-running the pivots is unnecessary.
        basis: Vec<usize>,
    },
    Infeasible {
        /// Farkas multipliers, one per constraint in input order.
        farkas: Vec<BigRational>,
    },
    Unbounded {
        point: Vec<BigRational>,
        ray: Vec<BigRational>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("objective has {found} coefficients, expected {expected}")]
    ObjectiveLength { expected: usize, found: usize },
    #[error("constraint {index} has {found} coefficients, expected {expected}")]
    CoefficientLength {
        index: usize,
        expected: usize,
        found: usize,
    },
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    cost: Vec<BigRational>,
    cost_rhs: BigRational,
    num_vars: usize,
    slack_of_row: Vec<Option<usize>>,
    art_start: usize,
    row_sign: Vec<bool>, // true when the row was negated to make rhs >= 0
}

pub fn solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    if lp.objective.len() != lp.num_vars {
        return Err(LpError::ObjectiveLength {
            expected: lp.num_vars,
            found: lp.objective.len(),
        });
    }
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.coeffs.len() != lp.num_vars {
            return Err(LpError::CoefficientLength {
                index: i,
                expected: lp.num_vars,
                found: c.coeffs.len(),
            });
        }
    }

    let m = lp.constraints.len();
    let n_struct = 2 * lp.num_vars;
    let n_slack = lp.constraints.iter().filter(|c| c.rel != Rel::Eq).count();
    let art_start = n_struct + n_slack;
    let total = art_start + m;

    let mut t = Tableau {
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        cost: vec![BigRational::zero(); total],
        cost_rhs: BigRational::zero(),
        num_vars: lp.num_vars,
        slack_of_row: Vec::with_capacity(m),
        art_start,
        row_sign: Vec::with_capacity(m),
    };

    let mut next_slack = n_struct;
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![BigRational::zero(); total];
        for (v, a) in c.coeffs.iter().enumerate() {
            row[2 * v] = a.clone();
            row[2 * v + 1] = -a.clone();
        }
        let slack = match c.rel {
            Rel::Le => {
                row[next_slack] = BigRational::one();
                next_slack += 1;
                Some(next_slack - 1)
            }
            Rel::Ge => {
                row[next_slack] = -BigRational::one();
                next_slack += 1;
                Some(next_slack - 1)
            }
            Rel::Eq => None,
        };
        let mut rhs = c.rhs.clone();
        let negated = rhs.is_negative();
        if negated {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            rhs = -rhs;
        }
        row[art_start + i] = BigRational::one();
        t.rows.push(row);
        t.rhs.push(rhs);
        t.basis.push(art_start + i);
        t.slack_of_row.push(slack);
        t.row_sign.push(negated);
    }

    // Phase 1: minimize the sum of artificials. With the artificial basis,
    // the reduced cost of column j is -(column sum) and the objective value
    // is the rhs sum.
    for j in 0..total {
        let col_sum: BigRational = t.rows.iter().map(|r| r[j].clone()).sum();
        let c_j = if j >= art_start {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        t.cost[j] = c_j - col_sum;
    }
    t.cost_rhs = -t.rhs.iter().cloned().sum::<BigRational>();

    let phase1_unbounded = run_simplex(&mut t, total);
    debug_assert!(
        phase1_unbounded.is_none(),
        "phase 1 is bounded below by zero"
    );

    let phase1_value = -t.cost_rhs.clone();
    if phase1_value.is_positive() {
        // Infeasible; read the simplex multipliers off the artificial
        // columns and undo the row negations.
        let mut farkas = Vec::with_capacity(m);
        for i in 0..m {
            let pi = BigRational::one() - t.cost[art_start + i].clone();
            farkas.push(if t.row_sign[i] { -pi } else { pi });
        }
        return Ok(LpOutcome::Infeasible { farkas });
    }

    drive_out_artificials(&mut t);

    // Phase 2: minimize -objective over the surviving rows, never letting an
    // artificial re-enter.
    let mut phase2_cost = vec![BigRational::zero(); total];
    for v in 0..lp.num_vars {
        phase2_cost[2 * v] = -lp.objective[v].clone();
        phase2_cost[2 * v + 1] = lp.objective[v].clone();
    }
    for j in 0..total {
        let mut r = phase2_cost[j].clone();
        for (i, row) in t.rows.iter().enumerate() {
            r -= phase2_cost[t.basis[i]].clone() * row[j].clone();
        }
        t.cost[j] = r;
    }
    t.cost_rhs = -t
        .rhs
        .iter()
        .enumerate()
        .map(|(i, b)| phase2_cost[t.basis[i]].clone() * b.clone())
        .sum::<BigRational>();

    if let Some(entering) = run_simplex(&mut t, art_start) {
        // Unbounded: assemble the improving ray.
        let point = t.extract_point();
        let mut dir = vec![BigRational::zero(); t.art_start];
        dir[entering] = BigRational::one();
        for (i, row) in t.rows.iter().enumerate() {
            if t.basis[i] < t.art_start {
                dir[t.basis[i]] = -row[entering].clone();
            }
        }
        let ray = (0..t.num_vars)
            .map(|v| dir[2 * v].clone() - dir[2 * v + 1].clone())
            .collect();
        return Ok(LpOutcome::Unbounded { point, ray });
    }

    let point = t.extract_point();
    let value = lp
        .objective
        .iter()
        .zip(&point)
        .map(|(c, x)| c.clone() * x.clone())
        .sum();
    let mut basis = t.basis.clone();
    basis.sort_unstable();
    Ok(LpOutcome::Optimal {
        value,
        point,
        basis,
    })
}

/// Bland-rule simplex loop over columns `< col_limit`. Returns the entering
/// column if the problem is unbounded in that direction, `None` at optimum.
fn run_simplex(t: &mut Tableau, col_limit: usize) -> Option<usize> {
    loop {
        let entering = (0..col_limit).find(|&j| t.cost[j].is_negative());
        let pc = entering?;
        let mut leaving: Option<(usize, BigRational)> = None;
        for i in 0..t.rows.len() {
            if t.rows[i][pc].is_positive() {
                let ratio = t.rhs[i].clone() / t.rows[i][pc].clone();
                leaving = match leaving {
                    Some((li, lr)) => {
                        if ratio < lr || (ratio == lr && t.basis[i] < t.basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                    None => Some((i, ratio)),
                };
            }
        }
        match leaving {
            Some((pr, _)) => t.pivot(pr, pc),
            None => return Some(pc),
        }
    }
}

fn drive_out_artificials(t: &mut Tableau) {
    let mut redundant = Vec::new();
    for i in 0..t.rows.len() {
        if t.basis[i] < t.art_start {
            continue;
        }
        // Basic artificial at value zero (phase 1 ended at zero).
        debug_assert!(t.rhs[i].is_zero());
        match (0..t.art_start).find(|&j| !t.rows[i][j].is_zero()) {
            Some(j) => t.pivot(i, j),
            None => redundant.push(i),
        }
    }
    for &i in redundant.iter().rev() {
        t.rows.remove(i);
        t.rhs.remove(i);
        t.basis.remove(i);
        t.slack_of_row.remove(i);
        t.row_sign.remove(i);
    }
}

impl Tableau {
    fn pivot(&mut self, pr: usize, pc: usize) {
        let p = self.rows[pr][pc].clone();
        debug_assert!(!p.is_zero());
        for x in self.rows[pr].iter_mut() {
            *x = x.clone() / p.clone();
        }
        self.rhs[pr] = self.rhs[pr].clone() / p.clone();
        for i in 0..self.rows.len() {
            if i == pr {
                continue;
            }
            let f = self.rows[i][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.rows[i].len() {
                let sub = f.clone() * self.rows[pr][j].clone();
                self.rows[i][j] -= sub;
            }
            let sub = f * self.rhs[pr].clone();
            self.rhs[i] -= sub;
        }
        let f = self.cost[pc].clone();
        if !f.is_zero() {
            for j in 0..self.cost.len() {
                let sub = f.clone() * self.rows[pr][j].clone();
                self.cost[j] -= sub;
            }
            let sub = f * self.rhs[pr].clone();
            self.cost_rhs -= sub;
        }
        self.basis[pr] = pc;
    }

    fn extract_point(&self) -> Vec<BigRational> {
        let mut col_value = vec![BigRational::zero(); self.art_start];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.art_start {
                col_value[b] = self.rhs[i].clone();
            }
        }
        (0..self.num_vars)
            .map(|v| col_value[2 * v].clone() - col_value[2 * v + 1].clone())
            .collect()
    }
}

/// Checks Farkas multipliers against the constraints they refute: signs
/// match the relations, the combined left-hand side vanishes and the
/// combined right-hand side is positive.
pub fn verify_farkas(lp: &LinearProgram, farkas: &[BigRational]) -> bool {
    if farkas.len() != lp.constraints.len() {
        return false;
    }
    for (y, c) in farkas.iter().zip(&lp.constraints) {
        match c.rel {
            Rel::Ge => {
                if y.is_negative() {
                    return false;
                }
            }
            Rel::Le => {
                if y.is_positive() {
                    return false;
                }
            }
            Rel::Eq => {}
        }
    }
    let mut combined = vec![BigRational::zero(); lp.num_vars];
    let mut rhs = BigRational::zero();
    for (y, c) in farkas.iter().zip(&lp.constraints) {
        for (acc, a) in combined.iter_mut().zip(&c.coeffs) {
            *acc += y.clone() * a.clone();
        }
        rhs += y.clone() * c.rhs.clone();
    }
    combined.iter().all(Zero::is_zero) && rhs.is_positive()
}

/// True when `point` satisfies every constraint exactly.
pub fn satisfies(lp: &LinearProgram, point: &[BigRational]) -> bool {
    point.len() == lp.num_vars
        && lp.constraints.iter().all(|c| {
            let lhs: BigRational = c
                .coeffs
                .iter()
                .zip(point)
                .map(|(a, x)| a.clone() * x.clone())
                .sum();
            match c.rel {
                Rel::Le => lhs <= c.rhs,
                Rel::Ge => lhs >= c.rhs,
                Rel::Eq => lhs == c.rhs,
            }
        })
}

/// Rational from an integer literal, for building programs tersely.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Rational `n / d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
