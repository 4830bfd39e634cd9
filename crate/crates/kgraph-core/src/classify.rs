//! Verdict assembly: per-property answers with fixed citation strings.
//!
//! The decision logic layered over [`decide_condition`](crate::decide::decide_condition):
//!
//! * a positivity witness refutes stable finiteness outright (no cofinality
//!   needed), and the failure propagates up the implication chain
//!   AF-embeddable => quasidiagonal => stably finite;
//! * a faithful trace on a *cofinal* graph yields quasidiagonality and
//!   stable finiteness, and for rank 2 also AF-embeddability;
//! * rank-1 graphs need no cofinality at all: every finiteness property is
//!   equivalent to the absence of an entrance cycle;
//! * a trace without cofinality proves nothing either way here, so those
//!   verdicts are reported `Unknown` rather than overclaimed.
//!
//! Structural findings (canonical cycles, entrance cycles, the two-colour
//! entrance-free vertex that forces a `C(T^2)` corner, infinite-projection
//! certificates) are attached to every verdict.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cycles::{self, CycleAnalysis, StructureError, T2Data};
use crate::decide::{self, Certificate};
use crate::graph::{CofinalityError, KGraph};

/// Citation strings attached to verdicts: fixed literals stating the facts
/// the answers rest on, so reports are self-explanatory and byte-stable.
pub mod citations {
    pub const WITNESS_BLOCKS_STABLE_FINITENESS: &str =
        "a nonzero nonnegative integer vector in im(1-A_1^t)+...+im(1-A_k^t) rules out stable finiteness";
    pub const FAILURE_PROPAGATES_UP: &str =
        "every AF-embeddable algebra is quasidiagonal and every quasidiagonal algebra is stably finite, so failing stable finiteness fails all three";
    pub const TRACE_AND_COFINALITY_GIVE_QD: &str =
        "a cofinal graph with a faithful graph trace has a quasidiagonal, hence stably finite, Cuntz-Krieger algebra";
    pub const RANK2_EQUIVALENCE: &str =
        "for cofinal rank-2 graphs stable finiteness, quasidiagonality and AF-embeddability are equivalent";
    pub const RANK1_EQUIVALENCE: &str =
        "for a directed graph, AF-embeddability, quasidiagonality, stable finiteness and the absence of a cycle with an entrance coincide";
    pub const NOT_COFINAL_UNKNOWN: &str =
        "the implications from a faithful graph trace to the finiteness properties are asserted only for cofinal graphs";
    pub const HIGH_RANK_AFE_OPEN: &str =
        "AF-embeddability is not decided by the implemented criteria for rank three and higher";
    pub const TORUS_CASE: &str =
        "a vertex on entrance-free cycles of both colours makes the algebra stably isomorphic to C(T^2), hence AF-embeddable and nonsimple";
    pub const INFINITE_PROJECTION: &str =
        "a coordinate cycle with an entrance makes S*S an infinite projection, where S sums the cycle edge isometries";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

/// One property answer together with the fact it rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Finding {
    pub answer: Answer,
    pub citation: &'static str,
}

impl Finding {
    fn new(answer: Answer, citation: &'static str) -> Self {
        Finding { answer, citation }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralFindings {
    /// Per-colour cycle analysis, in colour order.
    pub cycles: Vec<CycleAnalysis>,
    /// Vertex on entrance-free cycles of both colours (rank 2, trace,
    /// cofinal, entrance-free case only).
    pub t2: Option<T2Data>,
    /// Symbolic infinite-projection certificate for the first colour with an
    /// entrance cycle.
    pub infinite_projection: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub cofinal: bool,
    pub stably_finite: Finding,
    pub quasidiagonal: Finding,
    pub af_embeddable: Finding,
    pub structural: StructuralFindings,
    pub notes: Vec<&'static str>,
}

impl Verdict {
    /// The unconditional orderings: AFE=Yes forces QD=Yes forces SF=Yes, and
    /// SF=No forces QD=No forces AFE=No.
    pub fn respects_implications(&self) -> bool {
        let (sf, qd, afe) = (
            self.stably_finite.answer,
            self.quasidiagonal.answer,
            self.af_embeddable.answer,
        );
        let yes_chain =
            (afe != Answer::Yes || qd == Answer::Yes) && (qd != Answer::Yes || sf == Answer::Yes);
        let no_chain =
            (sf != Answer::No || qd == Answer::No) && (qd != Answer::No || afe == Answer::No);
        yes_chain && no_chain
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub certificate: Certificate,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Cofinality(#[from] CofinalityError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

pub fn classify(g: &KGraph) -> Result<Classification, ClassifyError> {
    let certificate = decide::decide_condition(g);
    let cofinal = g.is_cofinal()?;
    let cycles: Vec<CycleAnalysis> = (0..g.rank())
        .map(|c| cycles::coordinate_cycle_analysis(g, c))
        .collect();

    let infinite_projection =
        cycles
            .iter()
            .find_map(|an| an.entrance_cycle.as_ref())
            .map(|report| {
                decide::infinite_projection_certificate(g, report)
                    .expect("entrance cycle carries an entrance")
            });

    let mut notes = Vec::new();
    let (stably_finite, quasidiagonal, af_embeddable) = match (&certificate, g.rank()) {
        (Certificate::PositiveWitness { .. }, 1) => (
            Finding::new(Answer::No, citations::RANK1_EQUIVALENCE),
            Finding::new(Answer::No, citations::RANK1_EQUIVALENCE),
            Finding::new(Answer::No, citations::RANK1_EQUIVALENCE),
        ),
        (Certificate::PositiveWitness { .. }, _) => (
            Finding::new(Answer::No, citations::WITNESS_BLOCKS_STABLE_FINITENESS),
            Finding::new(Answer::No, citations::FAILURE_PROPAGATES_UP),
            Finding::new(Answer::No, citations::FAILURE_PROPAGATES_UP),
        ),
        (Certificate::FaithfulTrace { .. }, 1) => (
            Finding::new(Answer::Yes, citations::RANK1_EQUIVALENCE),
            Finding::new(Answer::Yes, citations::RANK1_EQUIVALENCE),
            Finding::new(Answer::Yes, citations::RANK1_EQUIVALENCE),
        ),
        (Certificate::FaithfulTrace { .. }, k) if cofinal => (
            Finding::new(Answer::Yes, citations::TRACE_AND_COFINALITY_GIVE_QD),
            Finding::new(Answer::Yes, citations::TRACE_AND_COFINALITY_GIVE_QD),
            if k == 2 {
                Finding::new(Answer::Yes, citations::RANK2_EQUIVALENCE)
            } else {
                Finding::new(Answer::Unknown, citations::HIGH_RANK_AFE_OPEN)
            },
        ),
        (Certificate::FaithfulTrace { .. }, _) => {
            notes.push(citations::NOT_COFINAL_UNKNOWN);
            (
                Finding::new(Answer::Unknown, citations::NOT_COFINAL_UNKNOWN),
                Finding::new(Answer::Unknown, citations::NOT_COFINAL_UNKNOWN),
                Finding::new(Answer::Unknown, citations::NOT_COFINAL_UNKNOWN),
            )
        }
    };

    let entrance_free = cycles.iter().all(|an| an.entrance_cycle.is_none());
    let t2 = if g.rank() == 2 && certificate.is_trace() && cofinal && entrance_free {
        let data = cycles::find_t2_data(g)?;
        if data.is_some() {
            notes.push(citations::TORUS_CASE);
        }
        data
    } else {
        None
    };

    let verdict = Verdict {
        cofinal,
        stably_finite,
        quasidiagonal,
        af_embeddable,
        structural: StructuralFindings {
            cycles,
            t2,
            infinite_projection,
        },
        notes,
    };
    debug_assert!(verdict.respects_implications());
    Ok(Classification {
        certificate,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::rat;
    use num_bigint::BigInt;

    fn g2(a1: Vec<Vec<i64>>, a2: Vec<Vec<i64>>) -> KGraph {
        KGraph::from_entries(&[a1, a2]).expect("valid fixture")
    }

    #[test]
    fn one_vertex_two_loops_is_fully_finite() {
        let g = g2(vec![vec![1]], vec![vec![1]]);
        let cl = classify(&g).unwrap();
        assert!(cl.verdict.cofinal);
        assert_eq!(cl.verdict.stably_finite.answer, Answer::Yes);
        assert_eq!(cl.verdict.quasidiagonal.answer, Answer::Yes);
        assert_eq!(cl.verdict.af_embeddable.answer, Answer::Yes);
        assert!(cl.verdict.structural.t2.is_some());
        assert!(cl.verdict.structural.infinite_projection.is_none());
        match cl.certificate {
            Certificate::FaithfulTrace { values } => assert_eq!(values, vec![rat(1)]),
            other => panic!("expected trace, got {other:?}"),
        }
        assert!(cl.verdict.respects_implications());
    }

    #[test]
    fn double_loop_fails_everything() {
        let g = g2(vec![vec![2]], vec![vec![1]]);
        let cl = classify(&g).unwrap();
        assert!(cl.verdict.cofinal);
        assert_eq!(cl.verdict.stably_finite.answer, Answer::No);
        assert_eq!(cl.verdict.quasidiagonal.answer, Answer::No);
        assert_eq!(cl.verdict.af_embeddable.answer, Answer::No);
        assert!(cl.verdict.structural.infinite_projection.is_some());
        assert!(cl.verdict.structural.t2.is_none());
        match cl.certificate {
            Certificate::PositiveWitness { c, .. } => {
                assert_eq!(c, vec![BigInt::from(1)]);
            }
            other => panic!("expected witness, got {other:?}"),
        }
        assert!(cl.verdict.respects_implications());
    }

    #[test]
    fn non_cofinal_witness_still_says_no() {
        let g = g2(vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![0, 1]]);
        let cl = classify(&g).unwrap();
        assert!(!cl.verdict.cofinal);
        assert_eq!(cl.verdict.stably_finite.answer, Answer::No);
        assert_eq!(cl.verdict.af_embeddable.answer, Answer::No);
        assert!(matches!(
            cl.certificate,
            Certificate::PositiveWitness { .. }
        ));
    }

    #[test]
    fn non_cofinal_trace_is_unknown() {
        // Two isolated loops in both colours: a trace exists but cofinality
        // fails, so nothing is asserted.
        let g = g2(vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![0, 1]]);
        let cl = classify(&g).unwrap();
        assert!(!cl.verdict.cofinal);
        assert!(matches!(cl.certificate, Certificate::FaithfulTrace { .. }));
        assert_eq!(cl.verdict.stably_finite.answer, Answer::Unknown);
        assert_eq!(cl.verdict.quasidiagonal.answer, Answer::Unknown);
        assert_eq!(cl.verdict.af_embeddable.answer, Answer::Unknown);
        assert!(cl.verdict.notes.contains(&citations::NOT_COFINAL_UNKNOWN));
        assert!(cl.verdict.respects_implications());
    }

    #[test]
    fn rank1_graphs_use_the_entrance_dichotomy() {
        let g = KGraph::from_entries(&[vec![vec![0, 1], vec![1, 0]]]).unwrap();
        let cl = classify(&g).unwrap();
        assert_eq!(cl.verdict.af_embeddable.answer, Answer::Yes);
        assert_eq!(
            cl.verdict.af_embeddable.citation,
            citations::RANK1_EQUIVALENCE
        );

        let g = KGraph::from_entries(&[vec![vec![2]]]).unwrap();
        let cl = classify(&g).unwrap();
        assert_eq!(cl.verdict.af_embeddable.answer, Answer::No);
        assert!(cl.verdict.structural.infinite_projection.is_some());
    }

    #[test]
    fn swap_identity_classifies_with_torus_flag() {
        let g = g2(vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 1]]);
        let cl = classify(&g).unwrap();
        assert_eq!(cl.verdict.stably_finite.answer, Answer::Yes);
        let t2 = cl
            .verdict
            .structural
            .t2
            .expect("entrance-free in both colours");
        assert_eq!(t2.vertex, 0);
        assert!(cl.verdict.notes.contains(&citations::TORUS_CASE));
    }
}
