//! Deterministic instance generation and the brute-force positivity oracle.
//!
//! The generators exist to feed property tests with valid graphs without
//! ever hand-writing commuting matrices:
//!
//! * `polynomial` draws one nonnegative base matrix `C` with no zero rows
//!   and realises every coordinate matrix as a polynomial in `C` with
//!   nonnegative coefficients — such matrices commute for free. A zero
//!   polynomial falls back to the identity, and draws whose entries exceed
//!   the configured bound are rejected and retried.
//! * `permutation` uses powers of one permutation matrix plus scaled
//!   identities.
//! * `rejection` samples freely and discards non-commuting draws; viable
//!   for a handful of vertices only.
//!
//! Everything is a pure function of the seed (ChaCha8 with unbiased range
//! sampling), so failures reproduce exactly.
//!
//! [`box_witness_search`] is the independent oracle for the positivity
//! condition: it scans all blocks `x_i` in `[-B, B]^N` in lexicographic
//! order for `sum_i (1 - A_i^t) x_i` nonnegative and nonzero. Interval
//! pruning only discards subtrees that provably contain no witness, so the
//! result is exactly what full enumeration would return — including which
//! witness is found first — at a fraction of the node count.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::boxsearch;
use crate::decide::build_condition_matrix;
use crate::graph::KGraph;
use crate::matrix::IntMatrix;

/// How the generator manufactures commuting matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Polynomial,
    Permutation,
    Rejection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub vertex_count: usize,
    pub rank: usize,
    /// Largest matrix entry the generator may emit.
    pub max_entry: u32,
    pub strategy: Strategy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("configuration requires at least one vertex, rank one and positive entries")]
    InvalidConfig,
    #[error("no valid draw within {attempts} attempts for this seed")]
    GenerationFailed { attempts: u32 },
}

const MAX_ATTEMPTS: u32 = 64;

/// Unbiased uniform draw from `0..bound` by rejection.
fn below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % bound;
        }
    }
}

fn random_base_matrix(rng: &mut ChaCha8Rng, n: usize, max_entry: u32) -> IntMatrix {
    let mut c = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            // half zeros keeps powers from blowing past the entry bound
            if below(rng, 2) == 1 {
                c[(i, j)] = BigInt::from(1 + below(rng, u64::from(max_entry)));
            }
        }
    }
    for i in 0..n {
        if c.row(i).iter().all(num_traits::Zero::is_zero) {
            let j = below(rng, n as u64) as usize;
            c[(i, j)] = BigInt::from(1);
        }
    }
    c
}

fn entries_bounded(m: &IntMatrix, max_entry: u32) -> bool {
    let bound = BigInt::from(max_entry);
    (0..m.rows()).all(|i| m.row(i).iter().all(|x| *x <= bound))
}

/// Deterministic random rank-`k` graph; commutation is guaranteed by
/// construction (or by rejection), the no-sources condition by patching.
pub fn random_kgraph(cfg: &GeneratorConfig) -> Result<KGraph, GeneratorError> {
    if cfg.vertex_count == 0 || cfg.rank == 0 || cfg.max_entry == 0 {
        return Err(GeneratorError::InvalidConfig);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match cfg.strategy {
        Strategy::Polynomial => polynomial_draw(cfg, &mut rng),
        Strategy::Permutation => permutation_draw(cfg, &mut rng),
        Strategy::Rejection => rejection_draw(cfg, &mut rng),
    }
}

fn polynomial_draw(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<KGraph, GeneratorError> {
    let n = cfg.vertex_count;
    for _ in 0..MAX_ATTEMPTS {
        let base = random_base_matrix(rng, n, cfg.max_entry);
        let powers = [IntMatrix::identity(n), base.clone(), base.mul(&base)];
        let mut matrices = Vec::with_capacity(cfg.rank);
        'colors: for _ in 0..cfg.rank {
            for _ in 0..MAX_ATTEMPTS {
                let mut m = IntMatrix::zero(n, n);
                let mut nonzero = false;
                for p in &powers {
                    if below(rng, 2) == 1 {
                        m = m.add(p);
                        nonzero = true;
                    }
                }
                if !nonzero {
                    m = IntMatrix::identity(n);
                }
                if entries_bounded(&m, cfg.max_entry) {
                    matrices.push(m);
                    continue 'colors;
                }
            }
            break 'colors; // this base is too dense; redraw it
        }
        if matrices.len() == cfg.rank {
            let g = finish(cfg.rank, matrices);
            debug_assert!(g.is_ok(), "polynomial draws are valid by construction");
            if let Ok(g) = g {
                return Ok(g);
            }
        }
    }
    Err(GeneratorError::GenerationFailed {
        attempts: MAX_ATTEMPTS,
    })
}

fn permutation_draw(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<KGraph, GeneratorError> {
    let n = cfg.vertex_count;
    // Fisher-Yates
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = below(rng, (i + 1) as u64) as usize;
        perm.swap(i, j);
    }
    let mut p = IntMatrix::zero(n, n);
    for (v, &w) in perm.iter().enumerate() {
        p[(v, w)] = BigInt::from(1);
    }
    let mut matrices = Vec::with_capacity(cfg.rank);
    for _ in 0..cfg.rank {
        let power = below(rng, n as u64);
        let scale = below(rng, u64::from(cfg.max_entry));
        let mut m = p.pow(power);
        for i in 0..n {
            m[(i, i)] += BigInt::from(scale);
        }
        if !entries_bounded(&m, cfg.max_entry) {
            // scale + permutation overlap exceeded the bound; drop the scale
            m = p.pow(power);
        }
        matrices.push(m);
    }
    finish(cfg.rank, matrices).map_err(|_| GeneratorError::GenerationFailed { attempts: 1 })
}

fn rejection_draw(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<KGraph, GeneratorError> {
    let n = cfg.vertex_count;
    for _ in 0..MAX_ATTEMPTS {
        let matrices: Vec<IntMatrix> = (0..cfg.rank)
            .map(|_| random_base_matrix(rng, n, cfg.max_entry))
            .collect();
        if let Ok(g) = finish(cfg.rank, matrices) {
            return Ok(g);
        }
    }
    Err(GeneratorError::GenerationFailed {
        attempts: MAX_ATTEMPTS,
    })
}

fn finish(rank: usize, matrices: Vec<IntMatrix>) -> Result<KGraph, crate::graph::GraphDefects> {
    let n = matrices.first().map_or(0, IntMatrix::rows);
    let vertices = (0..n).map(|i| alloc::format!("v{i}")).collect();
    KGraph::validate(rank, vertices, matrices)
}

/// Deterministic random directed graph (rank 1): free sampling, no
/// commutation constraint, zero rows patched.
pub fn random_digraph(cfg: &GeneratorConfig) -> Result<KGraph, GeneratorError> {
    if cfg.vertex_count == 0 || cfg.max_entry == 0 {
        return Err(GeneratorError::InvalidConfig);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let m = random_base_matrix(&mut rng, cfg.vertex_count, cfg.max_entry);
    finish(1, vec![m]).map_err(|_| GeneratorError::GenerationFailed { attempts: 1 })
}

/// A witness found by exhaustive search: block vectors and their image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxWitness {
    pub xs: Vec<Vec<BigInt>>,
    pub c: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("box of {points} points exceeds the cap {cap}")]
pub struct BoxTooLarge {
    /// `(2B+1)^(kN)`, saturated at `u128::MAX`.
    pub points: u128,
    pub cap: u128,
}

/// Default ceiling on `(2B+1)^(kN)` box points.
pub const DEFAULT_SEARCH_CAP: u128 = 1 << 60;

pub fn box_witness_search(g: &KGraph, radius: u32) -> Result<Option<BoxWitness>, BoxTooLarge> {
    box_witness_search_with_cap(g, radius, DEFAULT_SEARCH_CAP)
}

pub fn box_witness_search_with_cap(
    g: &KGraph,
    radius: u32,
    cap: u128,
) -> Result<Option<BoxWitness>, BoxTooLarge> {
    let n = g.vertex_count();
    let dims = g.rank() * n;
    let points = dims_to_points(radius, dims);
    if points > cap {
        return Err(BoxTooLarge { points, cap });
    }

    let condition = build_condition_matrix(g).matrix;
    let result = match boxsearch::columns_as_i128(&[&condition], &[], u64::from(radius)) {
        Some((cols, _)) => boxsearch::find_positive_image_in_box(&cols, n, &i128::from(radius))
            .map(|(choice, image)| {
                (
                    boxsearch::to_bigints(&choice),
                    boxsearch::to_bigints(&image),
                )
            }),
        None => {
            let cols: Vec<Vec<BigInt>> = (0..condition.cols())
                .map(|j| condition.col_vec(j))
                .collect();
            boxsearch::find_positive_image_in_box(&cols, n, &BigInt::from(radius))
        }
    };
    Ok(result.map(|(choice, c)| {
        let xs = (0..g.rank())
            .map(|i| choice[i * n..(i + 1) * n].to_vec())
            .collect();
        BoxWitness { xs, c }
    }))
}

fn dims_to_points(radius: u32, dims: usize) -> u128 {
    let side = 2 * u128::from(radius) + 1;
    let mut points: u128 = 1;
    for _ in 0..dims {
        match points.checked_mul(side) {
            Some(p) => points = p,
            None => return u128::MAX,
        }
    }
    points
}
