//! Three-valued verdicts for the decision and semi-decision procedures.
//!
//! `Holds` and `Fails` are definitive at the parameters they were
//! produced with and stay stable when budgets grow; `Unknown` names the
//! resource that ran out so a caller can retry with more of it.

use crate::nat::Nat;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which bounded resource was exhausted before a decision was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resource {
    /// Evaluation step budget.
    Steps,
    /// Sight or search depth cap.
    Depth,
    /// Enumeration window for symbolic families.
    Window,
    /// Numeric test bound for quantifiers.
    QuantifierBound,
    /// Candidate enumeration for antecedent realizers.
    Enumeration,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Resource::Steps => "steps",
            Resource::Depth => "depth",
            Resource::Window => "window",
            Resource::QuantifierBound => "quantifier bound",
            Resource::Enumeration => "enumeration",
        };
        f.write_str(s)
    }
}

/// Concrete refutation data attached to a `Fails` verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub description: String,
    /// Tree position involved, when the failure is located in a sight.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<Nat>>,
    /// Offending value (element, payload or code), when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Nat>,
}

impl Counterexample {
    pub fn msg(description: impl Into<String>) -> Self {
        Counterexample {
            description: description.into(),
            path: None,
            value: None,
        }
    }

    pub fn at(mut self, path: Vec<Nat>) -> Self {
        self.path = Some(path);
        self
    }

    pub fn value(mut self, v: Nat) -> Self {
        self.value = Some(v);
        self
    }
}

/// Why a check stopped short of a decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhaustion {
    pub resource: Resource,
    pub detail: String,
    /// True when every instance examined before the resource ran out
    /// passed; a clean exhaustion is the "holds up to bound" outcome.
    pub clean: bool,
}

impl Exhaustion {
    pub fn new(resource: Resource, detail: impl Into<String>) -> Self {
        Exhaustion {
            resource,
            detail: detail.into(),
            clean: false,
        }
    }

    pub fn clean(resource: Resource, detail: impl Into<String>) -> Self {
        Exhaustion {
            resource,
            detail: detail.into(),
            clean: true,
        }
    }
}

/// Outcome of a certificate check or semi-decision procedure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails(Counterexample),
    Unknown(Exhaustion),
}

impl Verdict {
    pub fn fails(description: impl Into<String>) -> Verdict {
        Verdict::Fails(Counterexample::msg(description))
    }

    pub fn unknown(resource: Resource, detail: impl Into<String>) -> Verdict {
        Verdict::Unknown(Exhaustion::new(resource, detail))
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    /// A clean exhaustion: every instance inspected passed but a bound
    /// stopped the sweep ("holds up to bound").
    pub fn is_clean_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(e) if e.clean)
    }

    /// Conjunction: any failure wins, then any exhaustion, then Holds.
    /// A found counterexample is definitive regardless of exhaustion
    /// elsewhere, which keeps verdicts monotone under budget growth.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut pending: Option<Exhaustion> = None;
        for v in verdicts {
            match v {
                Verdict::Holds => {}
                Verdict::Fails(c) => return Verdict::Fails(c),
                Verdict::Unknown(e) => {
                    pending.get_or_insert(e);
                }
            }
        }
        match pending {
            Some(e) => Verdict::Unknown(e),
            None => Verdict::Holds,
        }
    }

    /// CLI exit-code convention: 0 holds, 1 fails, 2 unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Holds => 0,
            Verdict::Fails(_) => 1,
            Verdict::Unknown(_) => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails(c) => write!(f, "fails: {}", c.description),
            Verdict::Unknown(e) if e.clean => {
                write!(f, "holds-up-to-bound ({}: {})", e.resource, e.detail)
            }
            Verdict::Unknown(e) => write!(f, "unknown ({}: {})", e.resource, e.detail),
        }
    }
}
