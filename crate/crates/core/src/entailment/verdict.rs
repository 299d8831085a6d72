use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::trace::ProofTrace;
use super::EngineError;
use crate::models::{Bounds, ModelElement, StructureId};

/// Resource limits for one engine query.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    /// Ground instances, splits and other inference steps.
    pub max_inferences: u64,
    /// Largest term level used for instantiation.
    pub max_term_depth: usize,
    /// Largest absolute value tried for constants and clause variables
    /// during countermodel search.
    pub max_witness_magnitude: i64,
    /// Wall-clock limit in seconds.
    pub time_cap: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_inferences: 100_000, max_term_depth: 4, max_witness_magnitude: 30, time_cap: 30.0 }
    }
}

/// Name of the environment variable selecting the default budget profile.
pub const BUDGET_PROFILE_VAR: &str = "CSC_BUDGET_PROFILE";

impl Budget {
    pub fn tiny() -> Budget {
        Budget { max_inferences: 8, max_term_depth: 0, max_witness_magnitude: 2, time_cap: 1.0 }
    }

    pub fn large() -> Budget {
        Budget { max_inferences: 1_000_000, max_term_depth: 6, max_witness_magnitude: 40, time_cap: 120.0 }
    }

    pub fn profile(name: &str) -> Option<Budget> {
        match name {
            "default" => Some(Budget::default()),
            "tiny" => Some(Budget::tiny()),
            "large" => Some(Budget::large()),
            _ => None,
        }
    }

    /// The profile named by `CSC_BUDGET_PROFILE`, or the default.
    pub fn from_env() -> Budget {
        std::env::var(BUDGET_PROFILE_VAR).ok().and_then(|p| Budget::profile(&p)).unwrap_or_default()
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.max_inferences == 0 || self.max_witness_magnitude <= 0 || !(self.time_cap > 0.0) {
            return Err(EngineError::Budget(format!("{self:?}")));
        }
        Ok(())
    }

    pub fn time_limit(&self) -> Duration {
        Duration::from_secs_f64(self.time_cap)
    }

    /// Bounds used for countermodel evidence.
    pub fn evidence_bounds(&self) -> Bounds {
        Bounds { value: self.max_witness_magnitude, type_cap: 2, witness: self.max_witness_magnitude }
    }
}

/// A structure that satisfies the checked clause set on a finite box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub structure: StructureId,
    /// Interpretation of the constants of the clause set.
    pub assignment: Vec<(String, ModelElement)>,
    pub bounds: Bounds,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} satisfies all clauses for values up to {}", self.structure, self.bounds.value)?;
        if !self.assignment.is_empty() {
            write!(f, " with ")?;
            for (i, (c, e)) in self.assignment.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c} = {e}")?;
            }
        }
        write!(f, " (bounded)")
    }
}

/// Tri-state outcome of an engine query.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// The empty clause was derived; the trace replays.
    Valid(ProofTrace),
    /// Bounded countermodel evidence.
    Refuted(Evidence),
    /// Neither a refutation nor evidence was found.
    Unknown(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Valid(_) => "valid",
            Verdict::Refuted(_) => "refuted",
            Verdict::Unknown(_) => "unknown",
        }
    }

    pub fn trace(&self) -> Option<&ProofTrace> {
        match self {
            Verdict::Valid(t) => Some(t),
            _ => None,
        }
    }

    pub fn evidence(&self) -> Option<&Evidence> {
        match self {
            Verdict::Refuted(e) => Some(e),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid(t) => write!(f, "valid ({} steps)", t.len()),
            Verdict::Refuted(e) => write!(f, "refuted: {e}"),
            Verdict::Unknown(r) => write!(f, "unknown: {r}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct VerdictRepr {
    verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trace: Option<ProofTrace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bounds: Option<Bounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    structure: StructureId,
    assignment: Vec<(String, ModelElement)>,
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = match self {
            Verdict::Valid(t) => VerdictRepr {
                verdict: "valid".into(),
                trace: Some(t.clone()),
                witness: None,
                bounds: None,
                reason: None,
            },
            Verdict::Refuted(e) => VerdictRepr {
                verdict: "refuted".into(),
                trace: None,
                witness: Some(WitnessRepr { structure: e.structure, assignment: e.assignment.clone() }),
                bounds: Some(e.bounds),
                reason: None,
            },
            Verdict::Unknown(why) => VerdictRepr {
                verdict: "unknown".into(),
                trace: None,
                witness: None,
                bounds: None,
                reason: Some(why.clone()),
            },
        };
        r.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = VerdictRepr::deserialize(d)?;
        match r.verdict.as_str() {
            "valid" => Ok(Verdict::Valid(r.trace.unwrap_or_default())),
            "refuted" => {
                let w = r.witness.ok_or_else(|| D::Error::missing_field("witness"))?;
                let bounds = r.bounds.ok_or_else(|| D::Error::missing_field("bounds"))?;
                Ok(Verdict::Refuted(Evidence { structure: w.structure, assignment: w.assignment, bounds }))
            }
            "unknown" => Ok(Verdict::Unknown(r.reason.unwrap_or_default())),
            other => Err(D::Error::unknown_variant(other, &["valid", "refuted", "unknown"])),
        }
    }
}
