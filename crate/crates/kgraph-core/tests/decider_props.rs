//! Certificate-level properties: the rank-1 entrance dichotomy with both
//! constructive converters, the multidegree trace identity, verdict
//! orderings, and stability of certificates under scaling.

use kgraph_core::classify::classify;
use kgraph_core::decide::{
    decide_condition, entrance_cycle_from_witness, verify_trace, verify_witness,
    witness_from_entrance_cycle, Certificate,
};
use kgraph_core::oracle::{random_digraph, random_kgraph, GeneratorConfig, Strategy};
use kgraph_core::{coordinate_cycle_analysis, KGraph};

use num_bigint::BigInt;
use num_rational::BigRational;

fn cfg(seed: u64, n: usize, k: usize, strategy: Strategy) -> GeneratorConfig {
    GeneratorConfig {
        seed,
        vertex_count: n,
        rank: k,
        max_entry: 2,
        strategy,
    }
}

fn sample2(seed: u64) -> Option<KGraph> {
    let n = 1 + (seed % 5) as usize;
    let strategy = if seed % 2 == 0 {
        Strategy::Polynomial
    } else {
        Strategy::Permutation
    };
    random_kgraph(&cfg(seed, n, 2, strategy)).ok()
}

#[test]
fn rank1_entrance_dichotomy_with_roundtrips() {
    let mut with_entrance = 0;
    let mut without = 0;
    for seed in 0..300u64 {
        let n = 1 + (seed % 6) as usize;
        let Ok(g) = random_digraph(&cfg(seed, n, 1, Strategy::Rejection)) else {
            continue;
        };
        let analysis = coordinate_cycle_analysis(&g, 0);
        let certificate = decide_condition(&g);
        match (&analysis.entrance_cycle, &certificate) {
            (Some(report), Certificate::PositiveWitness { xs, .. }) => {
                with_entrance += 1;
                // entrance cycle -> witness
                let converted = witness_from_entrance_cycle(&g, report).unwrap();
                assert!(verify_witness(&g, &converted).unwrap().is_some());
                // witness -> entrance cycle
                let recovered = entrance_cycle_from_witness(&g, &xs[0]).unwrap();
                assert!(recovered.is_valid(&g));
                assert!(recovered.entrance.is_some());
            }
            (None, Certificate::FaithfulTrace { values }) => {
                without += 1;
                assert!(verify_trace(&g, values).unwrap());
            }
            (cycle, cert) => panic!(
                "entrance detection and certificate disagree (seed {seed}): {:?} vs trace={}",
                cycle.is_some(),
                cert.is_trace()
            ),
        }
    }
    assert!(with_entrance > 50, "got {with_entrance}");
    assert!(without > 20, "got {without}");
}

#[test]
fn traces_satisfy_every_small_multidegree() {
    let mut traced = 0;
    for seed in 0..200u64 {
        let Some(g) = sample2(seed) else { continue };
        if let Certificate::FaithfulTrace { values } = decide_condition(&g) {
            traced += 1;
            // independent of verify_trace: recompute A_n g over the grid
            for d0 in 0..4usize {
                for d1 in 0..4usize {
                    let a_n = g.degree_matrix(&[d0, d1]);
                    assert_eq!(
                        a_n.mul_rational_vec(&values),
                        values,
                        "A_({d0},{d1}) g != g at seed {seed}"
                    );
                }
            }
        }
    }
    assert!(traced > 40, "got {traced}");
}

#[test]
fn verdicts_respect_the_implication_chain() {
    for seed in 0..300u64 {
        let Some(g) = sample2(seed) else { continue };
        let cl = classify(&g).unwrap();
        assert!(cl.verdict.respects_implications(), "seed {seed}");
        // structural fields are always populated on valid graphs
        assert_eq!(cl.verdict.structural.cycles.len(), g.rank());
        for an in &cl.verdict.structural.cycles {
            assert!(an.has_cycle);
            assert!(an.cycle.is_some());
        }
        if cl
            .verdict
            .structural
            .cycles
            .iter()
            .any(|an| an.entrance_cycle.is_some())
        {
            assert!(cl.verdict.structural.infinite_projection.is_some());
        }
    }
}

#[test]
fn witnesses_scale_and_traces_rescale() {
    let mut witnesses = 0;
    let mut traces = 0;
    for seed in 0..200u64 {
        let Some(g) = sample2(seed) else { continue };
        match decide_condition(&g) {
            Certificate::PositiveWitness { xs, c } => {
                witnesses += 1;
                for m in 2..4i64 {
                    let scaled: Vec<Vec<BigInt>> = xs
                        .iter()
                        .map(|x| x.iter().map(|v| v * BigInt::from(m)).collect())
                        .collect();
                    let scaled_c: Vec<BigInt> = c.iter().map(|v| v * BigInt::from(m)).collect();
                    assert_eq!(verify_witness(&g, &scaled).unwrap(), Some(scaled_c));
                }
            }
            Certificate::FaithfulTrace { values } => {
                traces += 1;
                assert_eq!(
                    values[0],
                    BigRational::from(BigInt::from(1)),
                    "normalisation"
                );
                let factor = BigRational::new(BigInt::from(3), BigInt::from(2));
                let rescaled: Vec<BigRational> =
                    values.iter().map(|v| v * factor.clone()).collect();
                assert!(verify_trace(&g, &rescaled).unwrap());
            }
        }
    }
    assert!(witnesses > 20, "got {witnesses}");
    assert!(traces > 20, "got {traces}");
}

#[test]
fn certificate_exclusivity_against_the_box_oracle() {
    use kgraph_core::oracle::box_witness_search;
    for seed in 0..60u64 {
        let n = 1 + (seed % 3) as usize;
        let Ok(g) = random_kgraph(&cfg(seed, n, 2, Strategy::Rejection)) else {
            continue;
        };
        let certificate = decide_condition(&g);
        let scan = box_witness_search(&g, 2).unwrap();
        match certificate {
            Certificate::FaithfulTrace { .. } => {
                assert!(
                    scan.is_none(),
                    "trace and box witness coexist at seed {seed}"
                );
            }
            Certificate::PositiveWitness { .. } => {
                // box may or may not contain a witness of radius 2, but when
                // it does it must verify
                if let Some(w) = scan {
                    assert_eq!(verify_witness(&g, &w.xs).unwrap(), Some(w.c));
                }
            }
        }
    }
}
