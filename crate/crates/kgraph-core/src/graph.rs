//! Finite higher-rank graphs presented by coordinate matrices.
//!
//! A [`KGraph`] is `k` pairwise commuting nonnegative integer matrices over
//! an ordered vertex list, with `A_i[v][w]` counting the colour-`i` edges
//! with range `v` and source `w`. Validation enforces the shape, the
//! commutation relations (the matrices of a rank-`k` graph must commute) and
//! the no-sources condition (every row of every matrix is nonzero), and
//! reports *every* violated invariant rather than the first one found.
//!
//! Colours are indexed `0..k` throughout the crate; human-facing layers add
//! one when printing.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// One violated presentation invariant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphDefect {
    #[error("vertex list is empty")]
    EmptyVertexList,
    #[error("duplicate vertex id {id:?}")]
    DuplicateVertex { id: String },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("expected {expected} coordinate matrices, found {found}")]
    MatrixCountMismatch { expected: usize, found: usize },
    #[error("matrix for colour {} is {rows}x{cols}, expected {n}x{n}", color + 1)]
    WrongDimension {
        color: usize,
        rows: usize,
        cols: usize,
        n: usize,
    },
    #[error("negative entry {value} at ({row}, {col}) in the matrix for colour {}", color + 1)]
    NegativeEntry {
        color: usize,
        row: usize,
        col: usize,
        value: BigInt,
    },
    #[error("zero row: vertex {vertex} emits no colour-{} edge", color + 1)]
    ZeroRow { color: usize, vertex: usize },
    #[error("matrices for colours {} and {} do not commute; products differ at ({}, {})",
            first + 1, second + 1, position.0, position.1)]
    NonCommuting {
        first: usize,
        second: usize,
        position: (usize, usize),
    },
}

/// Every defect found during validation, in deterministic scan order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDefects(pub Vec<GraphDefect>);

impl fmt::Display for GraphDefects {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid graph presentation ({} defect(s)):",
            self.0.len()
        )?;
        for d in &self.0 {
            write!(f, "\n  - {d}")?;
        }
        Ok(())
    }
}

impl core::error::Error for GraphDefects {}

/// A finite rank-`k` graph, validated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KGraph {
    rank: usize,
    vertices: Vec<String>,
    matrices: Vec<IntMatrix>,
}

impl KGraph {
    /// Validates a raw presentation and returns either the graph or the full
    /// list of violated invariants.
    pub fn validate(
        rank: usize,
        vertices: Vec<String>,
        matrices: Vec<IntMatrix>,
    ) -> Result<Self, GraphDefects> {
        let mut defects = Vec::new();
        if rank == 0 {
            defects.push(GraphDefect::ZeroRank);
        }
        if vertices.is_empty() {
            defects.push(GraphDefect::EmptyVertexList);
        }
        let mut seen = BTreeSet::new();
        for id in &vertices {
            if !seen.insert(id.clone()) {
                defects.push(GraphDefect::DuplicateVertex { id: id.clone() });
            }
        }
        if matrices.len() != rank {
            defects.push(GraphDefect::MatrixCountMismatch {
                expected: rank,
                found: matrices.len(),
            });
        }
        let n = vertices.len();
        for (color, a) in matrices.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                defects.push(GraphDefect::WrongDimension {
                    color,
                    rows: a.rows(),
                    cols: a.cols(),
                    n,
                });
            }
        }
        if !defects.is_empty() {
            // The remaining checks need well-shaped matrices.
            return Err(GraphDefects(defects));
        }

        for (color, a) in matrices.iter().enumerate() {
            for v in 0..n {
                for w in 0..n {
                    if a[(v, w)].is_negative() {
                        defects.push(GraphDefect::NegativeEntry {
                            color,
                            row: v,
                            col: w,
                            value: a[(v, w)].clone(),
                        });
                    }
                }
            }
        }
        for (color, a) in matrices.iter().enumerate() {
            for v in 0..n {
                if a.row(v).iter().all(Zero::is_zero) {
                    defects.push(GraphDefect::ZeroRow { color, vertex: v });
                }
            }
        }
        for i in 0..matrices.len() {
            for j in i + 1..matrices.len() {
                let ij = matrices[i].mul(&matrices[j]);
                let ji = matrices[j].mul(&matrices[i]);
                if ij != ji {
                    let position = (0..n)
                        .flat_map(|r| (0..n).map(move |c| (r, c)))
                        .find(|&(r, c)| ij[(r, c)] != ji[(r, c)])
                        .expect("products differ");
                    defects.push(GraphDefect::NonCommuting {
                        first: i,
                        second: j,
                        position,
                    });
                }
            }
        }

        if defects.is_empty() {
            Ok(KGraph {
                rank,
                vertices,
                matrices,
            })
        } else {
            Err(GraphDefects(defects))
        }
    }

    /// Builds a graph from machine-integer matrices with vertices named
    /// `v0, v1, ...`; the rank is the number of matrices.
    pub fn from_entries(matrices: &[Vec<Vec<i64>>]) -> Result<Self, GraphDefects> {
        let n = matrices.first().map_or(0, |m| m.len());
        let vertices = (0..n).map(|i| alloc::format!("v{i}")).collect();
        let mats = matrices
            .iter()
            .map(|rows| {
                let converted = rows
                    .iter()
                    .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
                IntMatrix::from_rows(converted).unwrap_or_else(|_| IntMatrix::zero(0, 0))
            })
            .collect();
        KGraph::validate(matrices.len(), vertices, mats)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn matrix(&self, color: usize) -> &IntMatrix {
        &self.matrices[color]
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    /// Number of colour-`color` edges with range `v`.
    pub fn row_sum(&self, color: usize, v: usize) -> BigInt {
        self.matrices[color].row(v).iter().sum()
    }

    /// The matrix `A_n = prod_i A_i^{n_i}` counting paths of degree `n`.
    /// The factors commute, so the order of the product is immaterial;
    /// `n = 0` gives the identity.
    pub fn degree_matrix(&self, degrees: &[usize]) -> IntMatrix {
        assert_eq!(
            degrees.len(),
            self.rank,
            "degree vector length must equal the rank"
        );
        let mut acc = IntMatrix::identity(self.vertex_count());
        for (a, &e) in self.matrices.iter().zip(degrees) {
            for _ in 0..e {
                acc = acc.mul(a);
            }
        }
        acc
    }

    /// Boolean adjacency of one coordinate graph: `v -> w` iff some
    /// colour-`color` edge has range `v` and source `w`.
    pub fn support(&self, color: usize) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let a = &self.matrices[color];
        (0..n)
            .map(|v| (0..n).map(|w| a[(v, w)].is_positive()).collect())
            .collect()
    }

    /// Support of the diagonal-degree matrix `A_1 ... A_k`: the relational
    /// composition of the colour supports (products of nonnegative matrices
    /// have exactly the composed support).
    pub fn diagonal_support(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut acc: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for color in 0..self.rank {
            let s = self.support(color);
            let mut next = alloc::vec![alloc::vec![false; n]; n];
            for (i, row) in acc.iter().enumerate() {
                for (z, &hit) in row.iter().enumerate() {
                    if hit {
                        for (j, &hit2) in s[z].iter().enumerate() {
                            if hit2 {
                                next[i][j] = true;
                            }
                        }
                    }
                }
            }
            acc = next;
        }
        acc
    }

    /// Smallest hereditary set containing `v`: all vertices reachable from
    /// `v` by repeatedly passing to sources of edges of any colour.
    pub fn reachable_into(&self, v: usize) -> Result<HereditarySet, GraphQueryError> {
        let n = self.vertex_count();
        if v >= n {
            return Err(GraphQueryError::UnknownVertex { index: v });
        }
        let supports: Vec<Vec<Vec<bool>>> = (0..self.rank).map(|c| self.support(c)).collect();
        let mut members = BTreeSet::new();
        members.insert(v);
        let mut frontier = alloc::vec![v];
        while let Some(u) = frontier.pop() {
            for s in &supports {
                for (w, &hit) in s[u].iter().enumerate() {
                    if hit && members.insert(w) {
                        frontier.push(w);
                    }
                }
            }
        }
        Ok(HereditarySet { members })
    }

    /// Cofinality via the pairwise characterisation: for every ordered pair
    /// `(v, w)` some degree `n` must send all sources of degree-`n` paths
    /// out of `w` into the hereditary set of `v`. Hereditariness makes the
    /// condition monotone in `n` and the diagonal degrees `(t, ..., t)` are
    /// cofinal in `N^k`, so it suffices to walk the orbit of the support set
    /// of `w` under the diagonal step until it repeats.
    pub fn is_cofinal(&self) -> Result<bool, CofinalityError> {
        self.is_cofinal_with(DEFAULT_ORBIT_CAP)
    }

    pub fn is_cofinal_with(&self, cap: usize) -> Result<bool, CofinalityError> {
        let n = self.vertex_count();
        let effective_cap = cap.min(1usize.checked_shl(n as u32).unwrap_or(usize::MAX));
        let diag = self.diagonal_support();

        let mut orbits: Vec<Vec<BTreeSet<usize>>> = Vec::with_capacity(n);
        for w in 0..n {
            let mut orbit = Vec::new();
            let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
            let mut current: BTreeSet<usize> = BTreeSet::from([w]);
            loop {
                if !seen.insert(current.clone()) {
                    break;
                }
                if orbit.len() >= effective_cap {
                    return Err(CofinalityError::IterationBoundExceeded { cap: effective_cap });
                }
                orbit.push(current.clone());
                let mut next = BTreeSet::new();
                for &u in &current {
                    for (t, &hit) in diag[u].iter().enumerate() {
                        if hit {
                            next.insert(t);
                        }
                    }
                }
                current = next;
            }
            orbits.push(orbit);
        }

        for v in 0..n {
            let h = self.reachable_into(v).expect("vertex in range");
            for orbit in &orbits {
                let hit = orbit.iter().position(|s| s.iter().all(|u| h.contains(*u)));
                match hit {
                    None => return Ok(false),
                    Some(t) => {
                        // Success is monotone along the orbit.
                        debug_assert!(orbit[t..].iter().all(|s| s.iter().all(|u| h.contains(*u))));
                    }
                }
            }
        }
        Ok(true)
    }

    /// The restriction to a hereditary vertex set: rows stay supported
    /// inside the set, so the restriction is again a valid graph of the same
    /// rank.
    pub fn restrict(&self, h: &HereditarySet) -> KGraph {
        let keep: Vec<usize> = h.iter().collect();
        let vertices = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let matrices = self
            .matrices
            .iter()
            .map(|a| {
                let mut m = IntMatrix::zero(keep.len(), keep.len());
                for (ri, &v) in keep.iter().enumerate() {
                    for (ci, &w) in keep.iter().enumerate() {
                        m[(ri, ci)] = a[(v, w)].clone();
                    }
                }
                m
            })
            .collect();
        let g = KGraph {
            rank: self.rank,
            vertices,
            matrices,
        };
        debug_assert!(
            KGraph::validate(g.rank, g.vertices.clone(), g.matrices.clone()).is_ok(),
            "restriction to a hereditary set must stay valid"
        );
        g
    }
}

/// Default bound on the number of distinct support sets walked per vertex
/// when testing cofinality; the true orbit never exceeds `2^N` sets.
pub const DEFAULT_ORBIT_CAP: usize = 4096;

/// A vertex set closed under passing to sources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HereditarySet {
    members: BTreeSet<usize>,
}

impl HereditarySet {
    /// Validates closure: if `u` is a member and `A_i[u][w] > 0` for any
    /// colour `i`, then `w` must be a member.
    pub fn new(g: &KGraph, members: BTreeSet<usize>) -> Result<Self, GraphQueryError> {
        for &u in &members {
            if u >= g.vertex_count() {
                return Err(GraphQueryError::UnknownVertex { index: u });
            }
            for color in 0..g.rank() {
                for w in 0..g.vertex_count() {
                    if g.matrix(color)[(u, w)].is_positive() && !members.contains(&w) {
                        return Err(GraphQueryError::NotHereditary {
                            vertex: u,
                            color,
                            target: w,
                        });
                    }
                }
            }
        }
        Ok(HereditarySet { members })
    }

    /// The full vertex set (always hereditary).
    pub fn full(g: &KGraph) -> Self {
        HereditarySet {
            members: (0..g.vertex_count()).collect(),
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GraphQueryError {
    #[error("unknown vertex index {index}")]
    UnknownVertex { index: usize },
    #[error("set is not hereditary: vertex {vertex} has a colour-{} edge to non-member {target}", color + 1)]
    NotHereditary {
        vertex: usize,
        color: usize,
        target: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum CofinalityError {
    /// The support-set orbit outgrew the configured cap. This is an internal
    /// resource limit, not a mathematical verdict.
    #[error("cofinality orbit exceeded the cap of {cap} support sets")]
    IterationBoundExceeded { cap: usize },
}
