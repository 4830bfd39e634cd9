//! Cycle and entrance analysis of the coordinate graphs.
//!
//! A cycle in the colour-`i` graph is a sequence of distinct vertices
//! `v_1, ..., v_m` with `A_i[v_t][v_{t+1}] > 0` cyclically (each step passes
//! from a range to a source). The cycle *has an entrance* when some vertex
//! on it emits a colour-`i` edge other than its cycle edge; since the cycle
//! uses exactly one edge out of each of its vertices, that happens exactly
//! when some cycle vertex has row sum at least two.
//!
//! Every finite graph with no sources has a cycle in every colour (follow
//! edges from any vertex until a repeat), so `has_cycle` is always true on
//! validated input; the analysis still reports a canonical cycle — shortest,
//! with ties broken towards the earliest vertex in input order — so that
//! downstream certificates are reproducible. Exhaustive cycle listing is
//! deliberately not offered.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::graph::KGraph;

/// One canonical cycle of one colour, with its entrance data if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    /// Colour index, `0`-based.
    pub color: usize,
    /// Distinct vertices `v_1, ..., v_m` with `A[v_t][v_{t+1}] > 0`
    /// cyclically.
    pub vertices: Vec<usize>,
    pub entrance: Option<CycleEntrance>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleEntrance {
    /// A cycle vertex emitting more edges than the cycle needs.
    pub vertex: usize,
    /// How many edges beyond the cycle edge it emits (row sum minus one).
    pub extra_edges: BigInt,
}

impl CycleReport {
    /// Structural well-formedness against a graph, used by tests and by the
    /// converters that consume reports.
    pub fn is_valid(&self, g: &KGraph) -> bool {
        let m = self.vertices.len();
        if m == 0 || self.color >= g.rank() {
            return false;
        }
        let distinct: BTreeSet<_> = self.vertices.iter().collect();
        if distinct.len() != m {
            return false;
        }
        let a = g.matrix(self.color);
        let n = g.vertex_count();
        if self.vertices.iter().any(|&v| v >= n) {
            return false;
        }
        for t in 0..m {
            let v = self.vertices[t];
            let w = self.vertices[(t + 1) % m];
            if a[(v, w)] <= BigInt::from(0) {
                return false;
            }
        }
        match &self.entrance {
            None => true,
            Some(e) => {
                self.vertices.contains(&e.vertex)
                    && e.extra_edges >= BigInt::one()
                    && g.row_sum(self.color, e.vertex) == &e.extra_edges + BigInt::one()
            }
        }
    }
}

/// Outcome of analysing one coordinate graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleAnalysis {
    pub has_cycle: bool,
    /// Canonical cycle witnessing `has_cycle`, annotated with its entrance
    /// when it happens to have one.
    pub cycle: Option<CycleReport>,
    /// Canonical cycle that provably has an entrance, when any cycle does.
    pub entrance_cycle: Option<CycleReport>,
}

pub fn coordinate_cycle_analysis(g: &KGraph, color: usize) -> CycleAnalysis {
    assert!(color < g.rank(), "colour out of range");
    let adj = g.support(color);
    let on_cycle = cycle_vertices(&adj);
    if on_cycle.is_empty() {
        return CycleAnalysis {
            has_cycle: false,
            cycle: None,
            entrance_cycle: None,
        };
    }

    let two = BigInt::from(2);
    let best = select_canonical_cycle(&adj, on_cycle.iter().copied());
    let cycle = best.map(|vertices| annotate_entrance(g, color, vertices));

    let entrance_candidates: Vec<usize> = on_cycle
        .iter()
        .copied()
        .filter(|&v| g.row_sum(color, v) >= two)
        .collect();
    let entrance_cycle =
        select_canonical_cycle(&adj, entrance_candidates.into_iter()).map(|vertices| {
            let vertex = vertices[0];
            let extra_edges = g.row_sum(color, vertex) - BigInt::one();
            CycleReport {
                color,
                vertices,
                entrance: Some(CycleEntrance {
                    vertex,
                    extra_edges,
                }),
            }
        });

    CycleAnalysis {
        has_cycle: true,
        cycle,
        entrance_cycle,
    }
}

fn annotate_entrance(g: &KGraph, color: usize, vertices: Vec<usize>) -> CycleReport {
    let two = BigInt::from(2);
    let entrance = vertices
        .iter()
        .copied()
        .find(|&v| g.row_sum(color, v) >= two)
        .map(|vertex| CycleEntrance {
            vertex,
            extra_edges: g.row_sum(color, vertex) - BigInt::one(),
        });
    CycleReport {
        color,
        vertices,
        entrance,
    }
}

/// Shortest cycle through any of the given start vertices; ties go to the
/// earliest start in iteration order. Starts must lie on cycles for a result.
fn select_canonical_cycle(
    adj: &[Vec<bool>],
    starts: impl Iterator<Item = usize>,
) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for v in starts {
        if let Some(c) = shortest_cycle_through(adj, v) {
            let better = match &best {
                Some(b) => c.len() < b.len(),
                None => true,
            };
            if better {
                best = Some(c);
            }
        }
    }
    best
}

/// BFS over `adj` from `v`, neighbours in ascending order; the shortest
/// closing edge wins, ties towards the smallest closing vertex.
fn shortest_cycle_through(adj: &[Vec<bool>], v: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = alloc::collections::VecDeque::new();
    dist[v] = 0;
    queue.push_back(v);
    while let Some(u) = queue.pop_front() {
        for (w, &hit) in adj[u].iter().enumerate() {
            if hit && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    let closing = (0..n)
        .filter(|&w| dist[w] != usize::MAX && adj[w][v])
        .min_by_key(|&w| (dist[w], w))?;
    let mut path = vec![closing];
    let mut cur = closing;
    while cur != v {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

/// Vertices lying on some cycle: members of nontrivial strongly connected
/// components, plus self-loops.
pub(crate) fn cycle_vertices(adj: &[Vec<bool>]) -> Vec<usize> {
    let mut on = BTreeSet::new();
    for comp in strongly_connected_components(adj) {
        if comp.len() >= 2 {
            on.extend(comp);
        } else if adj[comp[0]][comp[0]] {
            on.insert(comp[0]);
        }
    }
    on.into_iter().collect()
}

/// Iterative Tarjan; each component is returned sorted.
fn strongly_connected_components(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0usize;

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            let mut descended = false;
            while frame.1 < n {
                let w = frame.1;
                frame.1 += 1;
                if !adj[v][w] {
                    continue;
                }
                if index[w] == UNSET {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                    descended = true;
                    break;
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            }
            if descended {
                continue;
            }
            call.pop();
            if let Some(parent_frame) = call.last_mut() {
                let p = parent_frame.0;
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}

/// Data certifying that a vertex sits on entrance-free cycles of both
/// colours of a rank-2 graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T2Data {
    pub vertex: usize,
    pub blue: CycleReport,
    pub red: CycleReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("operation requires a rank-2 graph")]
    NotRank2,
    /// The hypotheses guarantee a vertex on entrance-free cycles of both
    /// colours; failing to find one indicates a bug, not a mathematical
    /// outcome.
    #[error("search failed although the structure theorem guarantees a result")]
    StructureContradiction,
}

/// Looks for a vertex lying simultaneously on an entrance-free blue cycle
/// and an entrance-free red cycle; returns the first such vertex in input
/// order together with its (unique, hence shortest) cycles.
pub fn find_t2_data(g: &KGraph) -> Result<Option<T2Data>, StructureError> {
    if g.rank() != 2 {
        return Err(StructureError::NotRank2);
    }
    for v in 0..g.vertex_count() {
        let (Some(blue), Some(red)) = (
            entrance_free_cycle_through(g, 0, v),
            entrance_free_cycle_through(g, 1, v),
        ) else {
            continue;
        };
        return Ok(Some(T2Data {
            vertex: v,
            blue: CycleReport {
                color: 0,
                vertices: blue,
                entrance: None,
            },
            red: CycleReport {
                color: 1,
                vertices: red,
                entrance: None,
            },
        }));
    }
    // With cofinality and no entrance cycle in either colour, a result is
    // guaranteed; reaching this point would be an implementation error.
    let entrance_free = (0..2).all(|c| coordinate_cycle_analysis(g, c).entrance_cycle.is_none());
    if entrance_free && matches!(g.is_cofinal(), Ok(true)) {
        return Err(StructureError::StructureContradiction);
    }
    Ok(None)
}

/// Walks the unique out-edges from `v` while row sums stay one; `Some` iff
/// the walk closes up at `v` again, in which case the cycle is entrance-free
/// by construction.
fn entrance_free_cycle_through(g: &KGraph, color: usize, v: usize) -> Option<Vec<usize>> {
    let a = g.matrix(color);
    let n = g.vertex_count();
    let one = BigInt::one();
    let mut path = vec![v];
    let mut seen = BTreeSet::from([v]);
    let mut current = v;
    loop {
        if g.row_sum(color, current) != one {
            return None;
        }
        let next = (0..n).find(|&w| a[(current, w)].is_positive())?;
        if next == v {
            return Some(path);
        }
        if !seen.insert(next) {
            return None; // trapped in a cycle avoiding v
        }
        path.push(next);
        current = next;
    }
}
