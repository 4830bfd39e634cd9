#![allow(dead_code)]

//! Shared corpus builders and handcrafted fixtures for the integration and
//! acceptance suites. Everything here is deterministic: the corpora are the
//! first `count` successful draws over seeds 0, 1, 2, ... with the vertex
//! count cycling through 1..=6 and the strategy through all three
//! generators.

use kgraph_core::oracle::{random_digraph, random_kgraph, GeneratorConfig, Strategy};
use kgraph_core::KGraph;

pub fn corpus_2graphs(count: usize) -> Vec<(u64, KGraph)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let cfg = GeneratorConfig {
            seed,
            vertex_count: 1 + (seed % 6) as usize,
            rank: 2,
            max_entry: 2,
            strategy: match (seed / 6) % 3 {
                0 => Strategy::Polynomial,
                1 => Strategy::Permutation,
                _ => Strategy::Rejection,
            },
        };
        if let Ok(g) = random_kgraph(&cfg) {
            out.push((seed, g));
        }
        seed += 1;
    }
    out
}

pub fn corpus_digraphs(count: usize) -> Vec<(u64, KGraph)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let cfg = GeneratorConfig {
            seed,
            vertex_count: 1 + (seed % 6) as usize,
            rank: 1,
            max_entry: 2,
            strategy: Strategy::Rejection,
        };
        if let Ok(g) = random_digraph(&cfg) {
            out.push((seed, g));
        }
        seed += 1;
    }
    out
}

/// Twenty handcrafted presentations covering the interesting corners:
/// traces and witnesses, cofinal and not, single colours, rank three.
pub fn handcrafted_fixtures() -> Vec<(&'static str, KGraph)> {
    let g = |mats: &[Vec<Vec<i64>>]| KGraph::from_entries(mats).expect("fixture must be valid");
    let id2 = vec![vec![1, 0], vec![0, 1]];
    let swap = vec![vec![0, 1], vec![1, 0]];
    let p3 = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]];
    let p3sq = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
    vec![
        ("one_vertex_two_loops", g(&[vec![vec![1]], vec![vec![1]]])),
        ("double_blue_loop", g(&[vec![vec![2]], vec![vec![1]]])),
        ("double_red_loop", g(&[vec![vec![1]], vec![vec![2]]])),
        ("swap_identity", g(&[swap.clone(), id2.clone()])),
        ("swap_swap", g(&[swap.clone(), swap.clone()])),
        (
            "upper_triangular_identity",
            g(&[vec![vec![1, 1], vec![0, 1]], id2.clone()]),
        ),
        ("two_islands", g(&[id2.clone(), id2.clone()])),
        (
            "three_cycle_identity",
            g(&[
                p3.clone(),
                vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            ]),
        ),
        ("three_cycle_and_square", g(&[p3.clone(), p3sq.clone()])),
        (
            "all_ones_identity",
            g(&[vec![vec![1, 1], vec![1, 1]], id2.clone()]),
        ),
        (
            "block_diagonal_double",
            g(&[vec![vec![2, 0], vec![0, 1]], id2.clone()]),
        ),
        (
            "doubled_swap",
            g(&[vec![vec![0, 2], vec![2, 0]], id2.clone()]),
        ),
        (
            "all_ones_twice",
            g(&[vec![vec![1, 1], vec![1, 1]], vec![vec![1, 1], vec![1, 1]]]),
        ),
        ("two_double_loops", g(&[vec![vec![2]], vec![vec![2]]])),
        ("triple_red_loop", g(&[vec![vec![1]], vec![vec![3]]])),
        (
            "cycle_plus_identity",
            g(&[
                vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
                p3.clone(),
            ]),
        ),
        ("funnel", g(&[vec![vec![1, 0], vec![1, 0]], id2.clone()])),
        (
            "four_cycle_identity",
            g(&[
                vec![
                    vec![0, 1, 0, 0],
                    vec![0, 0, 1, 0],
                    vec![0, 0, 0, 1],
                    vec![1, 0, 0, 0],
                ],
                vec![
                    vec![1, 0, 0, 0],
                    vec![0, 1, 0, 0],
                    vec![0, 0, 1, 0],
                    vec![0, 0, 0, 1],
                ],
            ]),
        ),
        ("single_colour_entrance", g(&[vec![vec![1, 1], vec![0, 1]]])),
        (
            "rank_three_loops",
            g(&[vec![vec![1]], vec![vec![1]], vec![vec![1]]]),
        ),
    ]
}

pub fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_kgraph")
}
