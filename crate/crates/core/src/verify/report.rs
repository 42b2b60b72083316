use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Element, LinComb, Scalar};
use crate::field::BigRational;

/// How a suite reached its verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exact,
    /// Identities checked after specializing `d` at each listed point.
    Evaluated { points: Vec<String> },
}

impl Mode {
    pub fn evaluated(points: &[BigRational]) -> Self {
        Mode::Evaluated { points: points.iter().map(|p| p.to_string()).collect() }
    }
}

/// One verified claim instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub instance: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    /// Reported but excluded from the overall verdict.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub(crate) fn new(suite: &str, n: usize) -> Self {
        Report { suite: suite.into(), n, mode: Mode::Exact, seed: None, checks: Vec::new(), elapsed_ms: None }
    }

    /// Records a check. `Err` carries the witness.
    pub(crate) fn record(&mut self, id: &str, instance: impl Into<String>, outcome: Result<(), Value>) -> &mut Check {
        let (passed, witness) = match outcome {
            Ok(()) => (true, None),
            Err(w) => (false, Some(w)),
        };
        self.checks.push(Check {
            id: id.into(),
            instance: instance.into(),
            passed,
            witness,
            detail: None,
            informational: false,
        });
        self.checks.last_mut().expect("just pushed")
    }

    /// True iff every non-informational check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed && !c.informational)
    }

    pub fn find(&self, id: &str) -> impl Iterator<Item = &Check> {
        let id = id.to_string();
        self.checks.iter().filter(move |c| c.id == id)
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mode = match &self.mode {
            Mode::Exact => "exact".to_string(),
            Mode::Evaluated { points } => format!("evaluated at d in {{{}}}", points.join(", ")),
        };
        let mut out = format!("# {} n={} {mode}", self.suite, self.n);
        if let Some(seed) = self.seed {
            out.push_str(&format!(" seed={seed}"));
        }
        out.push('\n');
        for c in &self.checks {
            let status = match (c.passed, c.informational) {
                (true, false) => "PASS",
                (false, false) => "FAIL",
                (true, true) => "INFO+",
                (false, true) => "INFO-",
            };
            out.push_str(&format!("{status} {} [{}]", c.id, c.instance));
            if let Some(d) = &c.detail {
                out.push_str(&format!(" {d}"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!(" witness={w}"));
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) struct Timer(Instant);

impl Timer {
    pub(crate) fn start() -> Self {
        Timer(Instant::now())
    }

    pub(crate) fn stamp(&self, report: &mut Report) {
        report.elapsed_ms = Some(self.0.elapsed().as_millis() as u64);
    }
}

/// First diagram (in the pinned order) where `a` and `b` differ.
pub(crate) fn diff<C: Scalar>(a: &LinComb<C>, b: &LinComb<C>) -> Result<(), Value> {
    if a == b {
        return Ok(());
    }
    let mut all: Vec<_> = a.support().chain(b.support()).copied().collect();
    all.sort();
    all.dedup();
    for d in all {
        let (ca, cb) = (a.coeff(&d), b.coeff(&d));
        if ca != cb {
            let show = |c: Option<&C>| c.map_or_else(|| "0".to_string(), |c| c.to_string());
            return Err(json!({
                "diagram": d.to_text(),
                "lhs": show(ca),
                "rhs": show(cb),
            }));
        }
    }
    Err(json!({ "strands": [a.n(), b.n()] }))
}

/// Like [`diff`] but also reports an arithmetic failure as a witness.
pub(crate) fn diff_result<C: Scalar>(
    a: crate::Result<LinComb<C>>,
    b: crate::Result<LinComb<C>>,
) -> Result<(), Value> {
    match (a, b) {
        (Ok(a), Ok(b)) => diff(&a, &b),
        (Err(e), _) | (_, Err(e)) => Err(json!({ "error": e.to_string() })),
    }
}

pub(crate) fn equal<T: PartialEq + std::fmt::Display>(lhs: &T, rhs: &T) -> Result<(), Value> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string() }))
    }
}

pub(crate) fn error_witness(e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

pub(crate) fn zero_of(a: &Element) -> Element {
    Element::zero(a.n())
}
