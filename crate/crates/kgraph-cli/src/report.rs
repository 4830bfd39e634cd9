//! JSON and human-readable report assembly.
//!
//! Reports are deterministic given the input bytes and the tool version:
//! object keys are emitted in sorted order, rationals are exact `"p/q"`
//! strings, certificate integers are decimal strings, and the only
//! run-dependent field is the top-level `timing_ms`, which consumers are
//! expected to strip before comparing runs.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use kgraph_core::classify::{Classification, Finding, Verdict};
use kgraph_core::cycles::{CycleAnalysis, CycleReport, T2Data};
use kgraph_core::decide::Certificate;
use kgraph_core::graph::GraphDefects;
use kgraph_core::ktheory::{
    CokerClass, CokerEndo, CokerPresentation, ConeStatus, LimitElement, StationaryLimit,
};
use kgraph_core::oracle::BoxWitness;
use kgraph_core::skew::SkewWindow;
use kgraph_core::KGraph;

use crate::schema::matrix_value;

pub fn tool_value() -> Value {
    json!({"name": "kgraph", "version": env!("CARGO_PKG_VERSION")})
}

pub fn input_value(bytes: &[u8]) -> Value {
    use sha2::{Digest, Sha256};
    let digest = Sha256::digest(bytes);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    json!({"bytes": bytes.len(), "sha256": hex})
}

/// Exact rational as `"p/q"` with the denominator always present.
pub fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn int_str(x: &BigInt) -> String {
    x.to_string()
}

fn int_vec(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(int_str(x))).collect())
}

pub fn certificate_value(cert: &Certificate) -> Value {
    match cert {
        Certificate::FaithfulTrace { values } => json!({
            "type": "trace",
            "values": values.iter().map(|r| Value::String(rational_str(r))).collect::<Vec<_>>(),
        }),
        Certificate::PositiveWitness { xs, c } => json!({
            "type": "witness",
            "xs": xs.iter().map(|x| int_vec(x)).collect::<Vec<_>>(),
            "c": int_vec(c),
        }),
    }
}

fn cycle_report_value(g: &KGraph, report: &CycleReport) -> Value {
    let vertices: Vec<&str> = report
        .vertices
        .iter()
        .map(|&v| g.vertices()[v].as_str())
        .collect();
    let entrance = match &report.entrance {
        Some(e) => json!({
            "vertex": g.vertices()[e.vertex],
            "extra_edges": int_str(&e.extra_edges),
        }),
        None => Value::Null,
    };
    json!({
        "color": report.color + 1,
        "vertices": vertices,
        "entrance": entrance,
    })
}

fn cycle_analysis_value(g: &KGraph, color: usize, an: &CycleAnalysis) -> Value {
    json!({
        "color": color + 1,
        "has_cycle": an.has_cycle,
        "cycle": an.cycle.as_ref().map(|c| cycle_report_value(g, c)).unwrap_or(Value::Null),
        "entrance_cycle": an
            .entrance_cycle
            .as_ref()
            .map(|c| cycle_report_value(g, c))
            .unwrap_or(Value::Null),
    })
}

fn t2_value(g: &KGraph, t2: &T2Data) -> Value {
    json!({
        "vertex": g.vertices()[t2.vertex],
        "blue": cycle_report_value(g, &t2.blue),
        "red": cycle_report_value(g, &t2.red),
    })
}

fn finding_value(f: &Finding) -> Value {
    json!({"answer": f.answer.to_string(), "citation": f.citation})
}

pub fn verdict_value(g: &KGraph, v: &Verdict) -> Value {
    json!({
        "cofinal": v.cofinal,
        "stably_finite": finding_value(&v.stably_finite),
        "quasidiagonal": finding_value(&v.quasidiagonal),
        "af_embeddable": finding_value(&v.af_embeddable),
        "notes": v.notes,
        "structural": {
            "cycles": v.structural.cycles.iter().enumerate()
                .map(|(c, an)| cycle_analysis_value(g, c, an)).collect::<Vec<_>>(),
            "t2": v.structural.t2.as_ref().map(|t| t2_value(g, t)).unwrap_or(Value::Null),
            "infinite_projection": v.structural.infinite_projection.clone()
                .map(Value::String).unwrap_or(Value::Null),
        },
    })
}

fn citations_of(v: &Verdict) -> Vec<&'static str> {
    let mut c = vec![
        v.stably_finite.citation,
        v.quasidiagonal.citation,
        v.af_embeddable.citation,
    ];
    c.extend(v.notes.iter().copied());
    if v.structural.infinite_projection.is_some() {
        c.push(kgraph_core::classify::citations::INFINITE_PROJECTION);
    }
    c.sort_unstable();
    c.dedup();
    c
}

pub fn classification_report(
    g: &KGraph,
    cl: &Classification,
    input: Value,
    timing_ms: u64,
) -> Value {
    json!({
        "tool": tool_value(),
        "input": input,
        "graph": {"k": g.rank(), "vertices": g.vertices(), "vertex_count": g.vertex_count()},
        "validation": {"valid": true, "defects": []},
        "certificate": certificate_value(&cl.certificate),
        "verdict": verdict_value(g, &cl.verdict),
        "citations": citations_of(&cl.verdict),
        "timing_ms": timing_ms,
    })
}

pub fn validation_report(defects: Option<&GraphDefects>, input: Value, timing_ms: u64) -> Value {
    let defect_list: Vec<String> = match defects {
        None => Vec::new(),
        Some(d) => d.0.iter().map(|x| x.to_string()).collect(),
    };
    json!({
        "tool": tool_value(),
        "input": input,
        "validation": {"valid": defects.is_none(), "defects": defect_list},
        "timing_ms": timing_ms,
    })
}

fn coker_class_value(c: &CokerClass) -> Value {
    json!({"torsion": int_vec(&c.torsion), "free": int_vec(&c.free)})
}

pub fn limit_element_value(e: &LimitElement) -> Value {
    json!({"stage": e.stage, "vec": int_vec(&e.vec)})
}

/// The stationary direct limit `lim (Z^N, (A_1...A_k)^t)` at diagonal
/// stages: the generator, the standard basis classes as stage-0 limit
/// elements, and which of those classes coincide in the limit.
pub fn stationary_limit_value(g: &KGraph) -> Value {
    use num_traits::{One, Zero};
    let generator = g.degree_matrix(&vec![1; g.rank()]).transpose();
    let limit = StationaryLimit::new(generator.clone()).expect("square by construction");
    let n = g.vertex_count();
    let elements: Vec<LimitElement> = (0..n)
        .map(|v| {
            let mut vec = vec![num_bigint::BigInt::zero(); n];
            vec[v] = num_bigint::BigInt::one();
            limit.element(0, vec).expect("length matches")
        })
        .collect();
    let mut equal_pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if limit
                .equal(&elements[i], &elements[j])
                .expect("same context")
            {
                equal_pairs.push(json!([g.vertices()[i], g.vertices()[j]]));
            }
        }
    }
    json!({
        "generator": matrix_value(&generator),
        "basis_elements": elements.iter().map(limit_element_value).collect::<Vec<_>>(),
        "equal_basis_pairs": equal_pairs,
    })
}

pub fn k0_report(
    g: &KGraph,
    color: usize,
    p: &CokerPresentation,
    endo: Option<&CokerEndo>,
    input: Value,
    timing_ms: u64,
) -> Value {
    let cone = match p.cone() {
        ConeStatus::OrderIsomorphic => "order-isomorphic",
        ConeStatus::FormalGenerators => "formal-generators",
    };
    let induced = match endo {
        Some(e) => {
            let (orders, action) = e.reduced_action();
            json!({
                "acting_color": if color == 0 { 2 } else { 1 },
                "torsion_orders": int_vec(&orders),
                "matrix": matrix_value(&action),
            })
        }
        None => Value::Null,
    };
    json!({
        "tool": tool_value(),
        "input": input,
        "color": color + 1,
        "source": matrix_value(p.source()),
        "invariant_factors": int_vec(p.invariant_factors()),
        "torsion_orders": int_vec(p.torsion_orders()),
        "free_rank": p.free_rank(),
        "cone": cone,
        "cone_generators": p.cone_generators().iter().map(coker_class_value).collect::<Vec<_>>(),
        "induced_action": induced,
        "stationary_limit": stationary_limit_value(g),
        "timing_ms": timing_ms,
    })
}

pub fn skew_report(g: &KGraph, w: &SkewWindow, input: Value, timing_ms: u64) -> Value {
    let edges: Vec<Value> = w
        .edges
        .iter()
        .map(|e| {
            json!({
                "color": e.color + 1,
                "range": {"vertex": g.vertices()[e.range.0], "stage": w.stages[e.range.1]},
                "source": {"vertex": g.vertices()[e.source.0], "stage": w.stages[e.source.1]},
                "multiplicity": int_str(&e.multiplicity),
            })
        })
        .collect();
    json!({
        "tool": tool_value(),
        "input": input,
        "box": w.box_ranges.iter().map(|&(lo, hi)| json!([lo, hi])).collect::<Vec<_>>(),
        "stages": w.stages,
        "node_count": w.node_count(),
        "edges_in_window": w.edges.len(),
        "omitted_edges": w.omitted_edges,
        "acyclic": w.is_acyclic(),
        "edges": edges,
        "timing_ms": timing_ms,
    })
}

pub fn oracle_report(
    witness: Option<&BoxWitness>,
    radius: u32,
    input: Value,
    timing_ms: u64,
) -> Value {
    json!({
        "tool": tool_value(),
        "input": input,
        "radius": radius,
        "found": witness.is_some(),
        "witness": witness
            .map(|w| json!({
                "xs": w.xs.iter().map(|x| int_vec(x)).collect::<Vec<_>>(),
                "c": int_vec(&w.c),
            }))
            .unwrap_or(Value::Null),
        "timing_ms": timing_ms,
    })
}

// ---------------------------------------------------------------------------
// human-readable renderers

pub fn human_classification(g: &KGraph, cl: &Classification) -> String {
    use std::fmt::Write;
    let v = &cl.verdict;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph: {} vertices, rank {}",
        g.vertex_count(),
        g.rank()
    );
    let _ = writeln!(out, "cofinal: {}", if v.cofinal { "yes" } else { "no" });
    for (label, f) in [
        ("stably finite", &v.stably_finite),
        ("quasidiagonal", &v.quasidiagonal),
        ("AF-embeddable", &v.af_embeddable),
    ] {
        let _ = writeln!(out, "{label}: {} -- {}", f.answer, f.citation);
    }
    match &cl.certificate {
        Certificate::FaithfulTrace { values } => {
            let vals: Vec<String> = values.iter().map(rational_str).collect();
            let _ = writeln!(
                out,
                "certificate: faithful graph trace ({})",
                vals.join(", ")
            );
        }
        Certificate::PositiveWitness { xs, c } => {
            let blocks: Vec<String> = xs
                .iter()
                .map(|x| {
                    let entries: Vec<String> = x.iter().map(int_str).collect();
                    format!("({})", entries.join(", "))
                })
                .collect();
            let cs: Vec<String> = c.iter().map(int_str).collect();
            let _ = writeln!(
                out,
                "certificate: positivity witness x = [{}], c = ({})",
                blocks.join(", "),
                cs.join(", ")
            );
        }
    }
    for (color, an) in v.structural.cycles.iter().enumerate() {
        let cycle = an
            .cycle
            .as_ref()
            .map(|c| cycle_path(g, c))
            .unwrap_or_else(|| "none".to_owned());
        let entrance = an
            .entrance_cycle
            .as_ref()
            .and_then(|c| c.entrance.as_ref())
            .map(|e| format!("at {}", g.vertices()[e.vertex]))
            .unwrap_or_else(|| "none".to_owned());
        let _ = writeln!(
            out,
            "colour {}: cycle {cycle}; entrance {entrance}",
            color + 1
        );
    }
    if let Some(t2) = &v.structural.t2 {
        let _ = writeln!(
            out,
            "torus vertex: {} (blue {}, red {})",
            g.vertices()[t2.vertex],
            cycle_path(g, &t2.blue),
            cycle_path(g, &t2.red)
        );
    }
    if let Some(text) = &v.structural.infinite_projection {
        let _ = writeln!(out, "infinite projection:");
        for line in text.lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    out
}

fn cycle_path(g: &KGraph, c: &CycleReport) -> String {
    let mut ids: Vec<&str> = c
        .vertices
        .iter()
        .map(|&v| g.vertices()[v].as_str())
        .collect();
    ids.push(ids[0]);
    ids.join(" -> ")
}

pub fn human_validation(defects: Option<&GraphDefects>) -> String {
    match defects {
        None => "valid\n".to_owned(),
        Some(d) => format!("{d}\n"),
    }
}
