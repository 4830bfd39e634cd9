//! Finite windows of the degree skew product.
//!
//! Skewing a rank-`k` graph by its own degree map produces a covering graph
//! with vertex set `V x Z^k` in which a colour-`i` edge from `(v, m)` has
//! its source at `(w, m + e_i)`. Every edge strictly increases the total
//! stage, so any finite window of the cover is acyclic — that acyclicity is
//! what this module materialises and checks. Edges whose source stage falls
//! outside the requested box are not materialised, only counted.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::graph::KGraph;

/// A node of the window is a (vertex, stage) pair; stages are indices into
/// [`SkewWindow::stages`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewEdge {
    pub color: usize,
    /// (vertex index, stage index) of the range.
    pub range: (usize, usize),
    /// (vertex index, stage index) of the source, one `e_color` step deeper.
    pub source: (usize, usize),
    /// Edge multiplicity `A_color[v][w]`.
    pub multiplicity: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewWindow {
    /// Inclusive per-coordinate bounds of the box.
    pub box_ranges: Vec<(i64, i64)>,
    /// All stage vectors of the box in lexicographic order.
    pub stages: Vec<Vec<i64>>,
    pub vertex_count: usize,
    pub edges: Vec<SkewEdge>,
    /// Parallel edge classes whose source stage left the box.
    pub omitted_edges: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SkewError {
    #[error("box has {found} coordinate ranges, expected the rank {rank}")]
    RankMismatch { rank: usize, found: usize },
    #[error("box range {index} is empty")]
    EmptyRange { index: usize },
    #[error("window of {nodes} nodes exceeds the cap {cap}")]
    BoxTooLarge { nodes: u128, cap: u128 },
}

/// Default ceiling on `|box| * N`.
pub const DEFAULT_WINDOW_CAP: u128 = 262_144;

pub fn skew_product_window(g: &KGraph, box_ranges: &[(i64, i64)]) -> Result<SkewWindow, SkewError> {
    skew_product_window_with_cap(g, box_ranges, DEFAULT_WINDOW_CAP)
}

pub fn skew_product_window_with_cap(
    g: &KGraph,
    box_ranges: &[(i64, i64)],
    cap: u128,
) -> Result<SkewWindow, SkewError> {
    let k = g.rank();
    if box_ranges.len() != k {
        return Err(SkewError::RankMismatch {
            rank: k,
            found: box_ranges.len(),
        });
    }
    let mut volume: u128 = 1;
    for (i, &(lo, hi)) in box_ranges.iter().enumerate() {
        if lo > hi {
            return Err(SkewError::EmptyRange { index: i });
        }
        volume = volume.saturating_mul((hi - lo) as u128 + 1);
    }
    let nodes = volume.saturating_mul(g.vertex_count() as u128);
    if nodes > cap {
        return Err(SkewError::BoxTooLarge { nodes, cap });
    }

    // Enumerate the box lexicographically.
    let mut stages: Vec<Vec<i64>> = Vec::with_capacity(volume as usize);
    let mut current: Vec<i64> = box_ranges.iter().map(|&(lo, _)| lo).collect();
    'outer: loop {
        stages.push(current.clone());
        for i in (0..k).rev() {
            if current[i] < box_ranges[i].1 {
                current[i] += 1;
                continue 'outer;
            }
            current[i] = box_ranges[i].0;
        }
        break;
    }
    let stage_index = |m: &[i64]| -> Option<usize> {
        let mut idx = 0usize;
        for (i, &(lo, hi)) in box_ranges.iter().enumerate() {
            if m[i] < lo || m[i] > hi {
                return None;
            }
            idx = idx * ((hi - lo) as usize + 1) + (m[i] - lo) as usize;
        }
        Some(idx)
    };

    let n = g.vertex_count();
    let mut edges = Vec::new();
    let mut omitted = 0u64;
    for (si, m) in stages.iter().enumerate() {
        for color in 0..k {
            let mut shifted = m.clone();
            shifted[color] += 1;
            let target = stage_index(&shifted);
            let a = g.matrix(color);
            for v in 0..n {
                for w in 0..n {
                    if !a[(v, w)].is_positive() {
                        continue;
                    }
                    match target {
                        Some(ti) => edges.push(SkewEdge {
                            color,
                            range: (v, si),
                            source: (w, ti),
                            multiplicity: a[(v, w)].clone(),
                        }),
                        None => omitted += 1,
                    }
                }
            }
        }
    }

    Ok(SkewWindow {
        box_ranges: box_ranges.to_vec(),
        stages,
        vertex_count: n,
        edges,
        omitted_edges: omitted,
    })
}

impl SkewWindow {
    pub fn node_count(&self) -> usize {
        self.stages.len() * self.vertex_count
    }

    /// Kahn topological sort over source -> range; `true` iff every node is
    /// sorted, i.e. the window is acyclic.
    pub fn is_acyclic(&self) -> bool {
        let nodes = self.node_count();
        let id = |(v, s): (usize, usize)| s * self.vertex_count + v;
        let mut out: Vec<Vec<usize>> = alloc::vec![Vec::new(); nodes];
        let mut indegree = alloc::vec![0usize; nodes];
        for e in &self.edges {
            out[id(e.source)].push(id(e.range));
            indegree[id(e.range)] += 1;
        }
        let mut queue: Vec<usize> = (0..nodes).filter(|&u| indegree[u] == 0).collect();
        let mut sorted = 0usize;
        while let Some(u) = queue.pop() {
            sorted += 1;
            for &t in &out[u] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    queue.push(t);
                }
            }
        }
        sorted == nodes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_window() {
        let g = KGraph::from_entries(&[vec![vec![1]], vec![vec![1]]]).unwrap();
        let w = skew_product_window(&g, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(w.node_count(), 4);
        assert_eq!(w.edges.len(), 4);
        assert_eq!(w.omitted_edges, 4);
        assert!(w.is_acyclic());
    }

    #[test]
    fn double_edges_along_a_line() {
        let g = KGraph::from_entries(&[vec![vec![2]]]).unwrap();
        let w = skew_product_window(&g, &[(0, 2)]).unwrap();
        assert_eq!(w.node_count(), 3);
        assert_eq!(w.edges.len(), 2);
        assert!(w.edges.iter().all(|e| e.multiplicity == BigInt::from(2)));
        assert!(w.is_acyclic());
    }

    #[test]
    fn caps_and_bad_boxes() {
        let g = KGraph::from_entries(&[vec![vec![1]], vec![vec![1]]]).unwrap();
        assert!(matches!(
            skew_product_window(&g, &[(0, 1)]),
            Err(SkewError::RankMismatch { .. })
        ));
        assert!(matches!(
            skew_product_window(&g, &[(1, 0), (0, 1)]),
            Err(SkewError::EmptyRange { index: 0 })
        ));
        assert!(matches!(
            skew_product_window_with_cap(&g, &[(0, 100), (0, 100)], 100),
            Err(SkewError::BoxTooLarge { .. })
        ));
    }

    #[test]
    fn negative_stages_are_fine() {
        let g = KGraph::from_entries(&[vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 1]]])
            .unwrap();
        let w = skew_product_window(&g, &[(-1, 1), (-1, 1)]).unwrap();
        assert_eq!(w.stages.len(), 9);
        assert!(w.is_acyclic());
    }
}
