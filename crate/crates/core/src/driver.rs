//! End-to-end certifying recognizer.
//!
//! [`recognize`] answers with a [`Certificate`]: either a circular-arc model
//! of the input whose arcs realize the graph without three of them covering
//! the circle, or a minimal forbidden induced subgraph.  Both directions are
//! checkable after the fact by [`verify_certificate`], which shares no code
//! with the construction beyond the basic graph type: models are re-verified
//! arc by arc, witnesses re-classified against the embedded catalog.
//!
//! The pipeline: a chordal input is handled by interval recognition alone.
//! Otherwise a hole is framed and normalized, the companion graph is built,
//! its sector cliques are checked, and interval recognition of the companion
//! either yields arcs or an obstruction that extraction maps back onto the
//! host graph.

use num::rational::Ratio;
use serde_json::{Map, Value};

use crate::arcmodel::{
    build_ca_model, interval_to_ca, normalize_interval_model, verify_model, CircularArcModel,
    ModelCheck,
};
use crate::auxgraph::{build_aux, check_sector_cliques, SectorCheck};
use crate::catalog::{classify_fis, validate_fis, FisFamily, FisWitness};
use crate::chordal::{check_chordal, find_hole};
use crate::extraction::{extract_asteroidal, extract_from_hole, fallback_minimalize, rescue};
use crate::graph::Graph;
use crate::holeframe::{build_frame, cover_to_wheel, normalize_hole};
use crate::interval::{is_interval, recognize_interval, NonIntervalWitness};

/// The two possible answers of the recognizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    /// The graph is recognized; the model realizes it.
    Model(CircularArcModel),
    /// The graph is not recognized; the witness is a minimal obstruction.
    Forbidden(FisWitness),
}

/// Answer plus a human-readable log of the stages that produced it.
///
/// Equality ignores the trace: two certificates agree when their answers do.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub answer: Answer,
    pub trace: Vec<String>,
}

impl PartialEq for Certificate {
    fn eq(&self, other: &Self) -> bool {
        self.answer == other.answer
    }
}

impl Eq for Certificate {}

fn forbidden(g: &Graph, w: FisWitness, mut trace: Vec<String>, what: &str) -> Certificate {
    debug_assert!(validate_fis(g, &w).is_ok(), "{what}: invalid witness {w:?}");
    trace.push(format!("{what}: {}", w.family.tag()));
    Certificate { answer: Answer::Forbidden(w), trace }
}

/// Decides the graph and certifies the decision either way.
pub fn recognize(g: &Graph) -> Certificate {
    let mut trace = Vec::new();
    match check_chordal(g) {
        Ok(_) => {
            trace.push("chordal".into());
            match recognize_interval(g) {
                Ok(im) => {
                    let model = interval_to_ca(&im);
                    debug_assert!(matches!(verify_model(g, &model), ModelCheck::Ok));
                    trace.push("interval model".into());
                    Certificate { answer: Answer::Model(model), trace }
                }
                Err(NonIntervalWitness::Asteroidal(set)) => {
                    // The witness is minimally non-interval and chordal, so
                    // it is itself the forbidden subgraph.
                    let w = classify_fis(g, &set).unwrap_or(FisWitness {
                        family: FisFamily::OtherLb,
                        vertices: set,
                        hole: Vec::new(),
                        apex: None,
                    });
                    forbidden(g, w, trace, "non-interval witness")
                }
                Err(NonIntervalWitness::Hole(_)) => {
                    debug_assert!(false, "chordal graphs have no holes");
                    let all: Vec<u32> = g.vertices().collect();
                    forbidden(g, fallback_minimalize(g, &all), trace, "non-interval witness")
                }
            }
        }
        Err(cw) => {
            let hole = find_hole(g, &cw);
            trace.push(format!("hole of length {}", hole.len()));
            non_chordal(g, hole, trace)
        }
    }
}

fn non_chordal(g: &Graph, hole: Vec<u32>, mut trace: Vec<String>) -> Certificate {
    let frame = match build_frame(g, hole) {
        Ok(f) => f,
        Err(w) => return forbidden(g, w, trace, "hole projection"),
    };
    let frame = match normalize_hole(g, frame) {
        Ok(f) => f,
        Err(w) => return forbidden(g, w, trace, "hole projection"),
    };
    let aux = match build_aux(g, &frame) {
        Ok(a) => a,
        Err(w) => return forbidden(g, w, trace, "companion construction"),
    };
    trace.push(format!("companion graph on {} vertices", aux.omega.n()));
    match check_sector_cliques(g, &frame, &aux) {
        SectorCheck::Clean => {}
        SectorCheck::Witness(w) => return forbidden(g, w, trace, "sector check"),
        SectorCheck::Violated(u, v) => {
            // The local searches around the violating pair came up empty;
            // minimalize from the full vertex set instead.
            let mut pool: Vec<u32> = g.vertices().collect();
            pool.extend([u, v]);
            return forbidden(g, fallback_minimalize(g, &pool), trace, "sector check");
        }
    }
    match recognize_interval(&aux.omega) {
        Ok(im) => {
            let im = normalize_interval_model(&aux, &im);
            let model = build_ca_model(&aux, &im);
            match verify_model(g, &model) {
                ModelCheck::Ok => {
                    trace.push("circular-arc model".into());
                    Certificate { answer: Answer::Model(model), trace }
                }
                ModelCheck::Cover(vs) => {
                    if let Some(w) = cover_to_wheel(g, &frame, &vs) {
                        return forbidden(g, w, trace, "covering arcs");
                    }
                    let mut pool = vs;
                    pool.extend([frame.at(-1), frame.at(0), frame.at(1)]);
                    forbidden(g, rescue(g, &pool), trace, "covering arcs")
                }
                ModelCheck::Mismatch(_, _) => {
                    debug_assert!(false, "synthesized model disagrees with the graph");
                    let all: Vec<u32> = g.vertices().collect();
                    forbidden(g, fallback_minimalize(g, &all), trace, "model mismatch")
                }
            }
        }
        Err(NonIntervalWitness::Hole(c)) => {
            trace.push("companion hole".into());
            forbidden(g, extract_from_hole(g, &frame, &aux, &c), trace, "companion hole")
        }
        Err(NonIntervalWitness::Asteroidal(f)) => {
            trace.push("companion non-interval witness".into());
            forbidden(g, extract_asteroidal(g, &frame, &aux, &f), trace, "companion witness")
        }
    }
}

/// Decision-only variant of [`recognize`]: same pipeline, no extraction.
///
/// Extraction fallbacks call this on subgraphs, so it must never call back
/// into extraction.
pub fn recognize_bool(g: &Graph) -> bool {
    match check_chordal(g) {
        Ok(_) => is_interval(g),
        Err(cw) => {
            let hole = find_hole(g, &cw);
            let Ok(frame) = build_frame(g, hole) else {
                return false;
            };
            let Ok(frame) = normalize_hole(g, frame) else {
                return false;
            };
            let Ok(aux) = build_aux(g, &frame) else {
                return false;
            };
            if !matches!(check_sector_cliques(g, &frame, &aux), SectorCheck::Clean) {
                return false;
            }
            match recognize_interval(&aux.omega) {
                Ok(im) => {
                    let im = normalize_interval_model(&aux, &im);
                    let model = build_ca_model(&aux, &im);
                    matches!(verify_model(g, &model), ModelCheck::Ok)
                }
                Err(_) => false,
            }
        }
    }
}

/// Checks a certificate against a graph, independently of how it was made.
pub fn verify_certificate(g: &Graph, c: &Certificate) -> Result<(), String> {
    match &c.answer {
        Answer::Model(m) => {
            if m.ccw.len() != g.n() || m.cw.len() != g.n() {
                return Err(format!(
                    "model describes {}/{} arcs, graph has {} vertices",
                    m.ccw.len(),
                    m.cw.len(),
                    g.n()
                ));
            }
            let mut ends: Vec<Ratio<i64>> = Vec::with_capacity(2 * g.n());
            for x in m.ccw.iter().chain(&m.cw) {
                ends.push(x - x.floor());
            }
            ends.sort_unstable();
            if ends.windows(2).any(|w| w[0] == w[1]) {
                return Err("duplicate endpoint in the model".into());
            }
            match verify_model(g, m) {
                ModelCheck::Ok => Ok(()),
                ModelCheck::Cover(vs) => Err(format!("arcs of {vs:?} cover the circle")),
                ModelCheck::Mismatch(u, v) => {
                    Err(format!("model disagrees with the graph on ({u}, {v})"))
                }
            }
        }
        Answer::Forbidden(w) => validate_fis(g, w),
    }
}

fn witness_json(w: &FisWitness) -> Value {
    let mut o = Map::new();
    o.insert("family".into(), Value::from(w.family.tag()));
    o.insert("vertices".into(), Value::from(w.vertices.clone()));
    o.insert("hole".into(), Value::from(w.hole.clone()));
    o.insert(
        "apex".into(),
        match w.apex {
            Some(a) => Value::from(a),
            None => Value::Null,
        },
    );
    Value::Object(o)
}

fn parse_ratio(v: Option<&Value>, what: &str) -> Result<Ratio<i64>, String> {
    let s = v.and_then(Value::as_str).ok_or_else(|| format!("{what} must be a ratio string"))?;
    s.parse::<Ratio<i64>>().map_err(|e| format!("{what}: bad ratio {s:?}: {e}"))
}

fn u32_vec(v: Option<&Value>, what: &str) -> Result<Vec<u32>, String> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| format!("{what} must be an array"))?;
    arr.iter()
        .map(|x| {
            x.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| format!("{what} holds a non-vertex entry {x}"))
        })
        .collect()
}

fn model_from_json(v: &Value) -> Result<CircularArcModel, String> {
    let arcs = v
        .get("arcs")
        .and_then(Value::as_array)
        .ok_or("model needs an arcs array")?;
    let n = arcs.len();
    let mut ccw = vec![None; n];
    let mut cw = vec![None; n];
    for arc in arcs {
        let id = arc
            .get("v")
            .and_then(Value::as_u64)
            .and_then(|x| usize::try_from(x).ok())
            .ok_or("arc needs a vertex id")?;
        if id >= n || ccw[id].is_some() {
            return Err(format!("arc ids must cover 0..{n} once each"));
        }
        ccw[id] = Some(parse_ratio(arc.get("ccw"), "ccw endpoint")?);
        cw[id] = Some(parse_ratio(arc.get("cw"), "cw endpoint")?);
    }
    Ok(CircularArcModel {
        ccw: ccw.into_iter().map(|x| x.expect("all ids seen")).collect(),
        cw: cw.into_iter().map(|x| x.expect("all ids seen")).collect(),
    })
}

fn witness_from_json(v: &Value) -> Result<FisWitness, String> {
    let tag = v
        .get("family")
        .and_then(Value::as_str)
        .ok_or("witness needs a family tag")?;
    let family = FisFamily::from_tag(tag).ok_or_else(|| format!("unknown family {tag:?}"))?;
    let vertices = u32_vec(v.get("vertices"), "vertices")?;
    let hole = match v.get("hole") {
        None | Some(Value::Null) => Vec::new(),
        some => u32_vec(some, "hole")?,
    };
    let apex = match v.get("apex") {
        None | Some(Value::Null) => None,
        Some(x) => Some(
            x.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or("apex must be a vertex id")?,
        ),
    };
    Ok(FisWitness { family, vertices, hole, apex })
}

impl Certificate {
    /// Serializes the certificate.  Keys are emitted in sorted order, so the
    /// byte output is deterministic.
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        match &self.answer {
            Answer::Model(m) => {
                obj.insert("answer".into(), Value::from("model"));
                obj.insert("model".into(), m.to_json());
            }
            Answer::Forbidden(w) => {
                obj.insert("answer".into(), Value::from("forbidden"));
                obj.insert("forbidden".into(), witness_json(w));
            }
        }
        obj.insert("trace".into(), Value::from(self.trace.clone()));
        Value::Object(obj)
    }

    /// Parses what [`Certificate::to_json`] emits.
    pub fn from_json(v: &Value) -> Result<Certificate, String> {
        let obj = v.as_object().ok_or("certificate must be an object")?;
        let kind = obj
            .get("answer")
            .and_then(Value::as_str)
            .ok_or("certificate needs an answer kind")?;
        let trace = match obj.get("trace") {
            None | Some(Value::Null) => Vec::new(),
            Some(Value::Array(a)) => a
                .iter()
                .map(|x| x.as_str().map(String::from).ok_or("trace entries must be strings"))
                .collect::<Result<_, _>>()?,
            Some(_) => return Err("trace must be an array".into()),
        };
        let answer = match kind {
            "model" => Answer::Model(model_from_json(
                obj.get("model").ok_or("model certificate needs a model")?,
            )?),
            "forbidden" => Answer::Forbidden(witness_from_json(
                obj.get("forbidden").ok_or("forbidden certificate needs a witness")?,
            )?),
            other => return Err(format!("unknown answer kind {other:?}")),
        };
        Ok(Certificate { answer, trace })
    }
}
