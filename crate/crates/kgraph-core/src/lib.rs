//! Exact-arithmetic analysis of finite higher-rank graphs presented by
//! coordinate matrices.
//!
//! A rank-`k` graph on `N` vertices is presented here by `k` pairwise
//! commuting `N x N` matrices `A_1, ..., A_k` over the nonnegative integers,
//! where `A_i[v][w]` counts the colour-`i` edges with range `v` and source
//! `w`. From this data the crate decides, with certificates that can be
//! re-checked independently, whether the associated Cuntz-Krieger algebra is
//! stably finite / quasidiagonal / AF-embeddable:
//!
//! * either a **faithful graph trace** is produced — a strictly positive
//!   rational vector `g` with `A_i g = g` for every colour — or
//! * an **integer positivity witness** `x_1, ..., x_k` with
//!   `sum_i (1 - A_i^t) x_i` nonnegative and nonzero.
//!
//! Exactly one of the two exists (Stiemke's alternative), and the split is
//! computed by an exact rational simplex, never by floating point.
//!
//! Supporting machinery lives in the submodules: Hermite and Smith normal
//! forms over the integers, lattice membership, eventual kernels, cokernel
//! presentations with their positive-cone generators, stationary direct
//! limits, cycle/entrance analysis of the coordinate graphs, skew-product
//! windows, and deterministic random generators plus bounded exhaustive
//! searches used as independent oracles in the test suite.
//!
//! The crate is `no_std` (it requires only `alloc`); all operations are pure
//! functions of their inputs and safe to call concurrently.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

mod boxsearch;
pub mod classify;
pub mod cycles;
pub mod decide;
pub mod graph;
pub mod hermite;
pub mod ktheory;
pub mod matrix;
pub mod oracle;
pub mod simplex;
pub mod skew;
pub mod smith;
pub mod stiemke;

pub use classify::{classify, Answer, Classification, Finding, Verdict};
pub use cycles::{coordinate_cycle_analysis, find_t2_data, CycleAnalysis, CycleReport, T2Data};
pub use decide::{
    build_condition_matrix, decide_condition, verify_trace, verify_witness, Certificate,
};
pub use graph::{HereditarySet, KGraph};
pub use matrix::IntMatrix;
