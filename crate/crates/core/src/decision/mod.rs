//! Does `lambda_w` map `F_n` into itself?
//!
//! Three procedures are available. The graph method is exact for sum-of-words
//! unitaries with degrees in `{-1, 0, 1}`. The cocycle method applies to any
//! unitary and is conclusive when its recursion fails or repeats. The direct
//! method evaluates `lambda_w` on matrix units and can only refute.

pub mod cocycle;
pub mod direct;
pub mod graph;

use serde::Serialize;

use crate::element::Element;
use crate::endo::{is_unitary, sum_of_words_profile, Lambda};
use crate::error::{Error, Result};

pub use cocycle::{cocycle_run, CocycleFailure, CocycleOutcome, CocycleRun, Recursion};
pub use direct::{direct_check, Violation};
pub use graph::{build_ew, path_condition, EwBuild, EwGraph, PathCondition, PathWitness, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Preserves,
    NotPreserves,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Preserves => "PRESERVES",
            Verdict::NotPreserves => "NOT_PRESERVES",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Graph,
    Cocycle,
    Direct,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Graph => "graph",
            Method::Cocycle => "cocycle",
            Method::Direct => "direct",
        })
    }
}

/// Which procedure [`decide_preserves`] should run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Graph,
    Cocycle,
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `lambda_w(witness) = image` is not in `F_n`.
    Violation {
        #[serde(flatten)]
        violation: Violation,
        cocycle: Option<CocycleFailure>,
    },
    /// The path condition holds on `E_w`.
    PathCondition {
        #[serde(flatten)]
        condition: PathCondition,
        vertices: usize,
        edges: usize,
    },
    /// A state of a cocycle sequence repeats.
    Cycle {
        recursion: Recursion,
        start: usize,
        period: usize,
    },
    None,
}

impl Serialize for Violation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Violation", 5)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("witness_text", &self.witness.to_string())?;
        st.serialize_field("image", &self.image)?;
        st.serialize_field("image_text", &self.image.to_string())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub method: Method,
    pub certificate: Certificate,
    /// Levels examined.
    pub depth: usize,
}

/// Default depth of the cocycle recursion when no graph is available.
pub const DEFAULT_COCYCLE_DEPTH: usize = 16;
/// Default depth of the direct method, whose cost grows like `n^k`.
pub const DEFAULT_DIRECT_DEPTH: usize = 4;
/// Levels of the direct method used to cross-check a cocycle verdict.
pub const CROSS_CHECK_DEPTH: usize = 3;

/// Whether the graph method applies to `w`, and if so its `E_w`.
pub fn graph_route(w: &Element) -> Result<EwBuild> {
    let profile = sum_of_words_profile(w)?;
    let build = build_ew(&profile)?;
    if !build.is_complete() {
        let (a, b) = &profile.pairs()[build.uncovered[0]];
        return Err(Error::Unsupported(format!(
            "some tail strictly extends alpha = {a} of the pair ({a}, {b})"
        )));
    }
    Ok(build)
}

fn graph_depth(build: &EwBuild) -> usize {
    let v = build.graph.vertices.len();
    (v * v + 1).max(8)
}

/// A violation at exactly `level`, from the fast search for sums of words or
/// by brute force otherwise.
fn violation_at(w: &Element, level: usize) -> Result<Violation> {
    let mut lambda = Lambda::new(w)?;
    let words = sum_of_words_profile(w).is_ok();
    direct::find_violation(&mut lambda, level, words)
        .ok_or_else(|| Error::Inconsistent(format!("no violating matrix unit at level {level}")))
}

fn refute(w: &Element, method: Method, failure: CocycleFailure) -> Result<DecisionReport> {
    let level = failure.level;
    let violation = violation_at(w, level)?;
    Ok(DecisionReport {
        verdict: Verdict::NotPreserves,
        method,
        certificate: Certificate::Violation {
            violation,
            cocycle: Some(failure),
        },
        depth: level,
    })
}

fn decide_cocycle(w: &Element, depth: usize) -> Result<DecisionReport> {
    let run = cocycle_run(w, depth)?;
    match run.outcome {
        CocycleOutcome::Failed(f) => refute(w, Method::Cocycle, f),
        CocycleOutcome::Cycle {
            recursion,
            start,
            period,
        } => Ok(DecisionReport {
            verdict: Verdict::Preserves,
            method: Method::Cocycle,
            certificate: Certificate::Cycle {
                recursion,
                start,
                period,
            },
            depth: start + period,
        }),
        CocycleOutcome::Exhausted => Ok(DecisionReport {
            verdict: Verdict::Undecided,
            method: Method::Cocycle,
            certificate: Certificate::None,
            depth,
        }),
    }
}

fn decide_graph(w: &Element, build: &EwBuild) -> Result<DecisionReport> {
    let pc = path_condition(&build.graph);
    if pc.holds {
        return Ok(DecisionReport {
            verdict: Verdict::Preserves,
            method: Method::Graph,
            depth: pc.bound_r,
            certificate: Certificate::PathCondition {
                condition: pc,
                vertices: build.graph.vertices.len(),
                edges: build.graph.edges.len(),
            },
        });
    }
    // A failing walk of length d corresponds to a failure at level d + 1.
    let run = cocycle_run(w, pc.bound_r)?;
    match run.outcome {
        CocycleOutcome::Failed(f) => refute(w, Method::Graph, f),
        other => Err(Error::Inconsistent(format!(
            "path condition fails at level {} but the cocycle run ended with {other:?}",
            pc.bound_r
        ))),
    }
}

/// Fails if two conclusive verdicts disagree.
fn agree(a: &DecisionReport, b: &DecisionReport) -> Result<()> {
    let conclusive = |r: &DecisionReport| r.verdict != Verdict::Undecided;
    if conclusive(a) && conclusive(b) && a.verdict != b.verdict {
        return Err(Error::Inconsistent(format!(
            "{} says {} but {} says {}",
            a.method, a.verdict, b.method, b.verdict
        )));
    }
    Ok(())
}

/// Decides whether `lambda_w(F_n)` is contained in `F_n`.
///
/// `depth` bounds the cocycle recursion or the direct search; the defaults
/// are `max(|V|^2 + 1, 8)` when `E_w` exists, [`DEFAULT_COCYCLE_DEPTH`]
/// otherwise, and [`DEFAULT_DIRECT_DEPTH`] for the direct method. With
/// [`MethodChoice::Auto`] the graph method is used when it applies and the
/// other methods serve as cross-checks.
pub fn decide_preserves(
    w: &Element,
    method: MethodChoice,
    depth: Option<usize>,
) -> Result<DecisionReport> {
    if !is_unitary(w) {
        return Err(Error::NotUnitary);
    }
    match method {
        MethodChoice::Graph => {
            let build = graph_route(w)?;
            decide_graph(w, &build)
        }
        MethodChoice::Cocycle => {
            let d = depth.unwrap_or_else(|| match graph_route(w) {
                Ok(b) => graph_depth(&b),
                Err(_) => DEFAULT_COCYCLE_DEPTH,
            });
            decide_cocycle(w, d)
        }
        MethodChoice::Direct => direct_check(w, depth.unwrap_or(DEFAULT_DIRECT_DEPTH)),
        MethodChoice::Auto => match graph_route(w) {
            Ok(build) => {
                let report = decide_graph(w, &build)?;
                let check = decide_cocycle(w, depth.unwrap_or_else(|| graph_depth(&build)))?;
                agree(&report, &check)?;
                Ok(report)
            }
            Err(Error::Psi1NotConstant { .. }) => {
                let report = decide_cocycle(w, 1)?;
                if report.verdict != Verdict::NotPreserves {
                    return Err(Error::Inconsistent(
                        "psi_1 is not constant on a class but level one passes".into(),
                    ));
                }
                Ok(report)
            }
            Err(_) => {
                let report = decide_cocycle(w, depth.unwrap_or(DEFAULT_COCYCLE_DEPTH))?;
                let check = direct_check(w, CROSS_CHECK_DEPTH.min(report.depth.max(1)))?;
                agree(&report, &check)?;
                Ok(report)
            }
        },
    }
}
