//! Finite and cofinite subsets of ℕ.
//!
//! These are the only set shapes the toolkit ever needs to write down:
//! out-labels of sight nodes, members of explicit families, complements
//! of the canonical cofinite members. A value is canonical by
//! construction (sorted element sets, cofinite only over ω), so
//! structural equality is extensional equality.

use crate::nat::Nat;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetExpr {
    /// A finite set, possibly empty.
    Finite(BTreeSet<Nat>),
    /// ω minus a finite complement.
    CofiniteIn { complement: BTreeSet<Nat> },
}

impl SetExpr {
    pub fn empty() -> SetExpr {
        SetExpr::Finite(BTreeSet::new())
    }

    pub fn omega() -> SetExpr {
        SetExpr::CofiniteIn { complement: BTreeSet::new() }
    }

    pub fn finite<I: IntoIterator<Item = Nat>>(elems: I) -> SetExpr {
        SetExpr::Finite(elems.into_iter().collect())
    }

    pub fn cofinite<I: IntoIterator<Item = Nat>>(complement: I) -> SetExpr {
        SetExpr::CofiniteIn { complement: complement.into_iter().collect() }
    }

    /// `{0, …, n−1}`.
    pub fn initial_segment(n: u64) -> SetExpr {
        SetExpr::finite((0..n).map(Nat::from))
    }

    /// `{1, …, α}` — the finite base sets range over positive naturals.
    pub fn one_based_segment(alpha: u64) -> SetExpr {
        SetExpr::finite((1..=alpha).map(Nat::from))
    }

    pub fn contains(&self, x: &Nat) -> bool {
        match self {
            SetExpr::Finite(s) => s.contains(x),
            SetExpr::CofiniteIn { complement } => !complement.contains(x),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SetExpr::Finite(s) if s.is_empty())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SetExpr::Finite(_))
    }

    /// Cardinality, `None` for cofinite sets.
    pub fn len(&self) -> Option<usize> {
        match self {
            SetExpr::Finite(s) => Some(s.len()),
            SetExpr::CofiniteIn { .. } => None,
        }
    }

    pub fn intersect(&self, other: &SetExpr) -> SetExpr {
        use SetExpr::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.intersection(b).cloned().collect()),
            (Finite(a), CofiniteIn { complement }) | (CofiniteIn { complement }, Finite(a)) => {
                Finite(a.iter().filter(|x| !complement.contains(x)).cloned().collect())
            }
            (CofiniteIn { complement: a }, CofiniteIn { complement: b }) => {
                CofiniteIn { complement: a.union(b).cloned().collect() }
            }
        }
    }

    pub fn union(&self, other: &SetExpr) -> SetExpr {
        use SetExpr::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.union(b).cloned().collect()),
            (Finite(a), CofiniteIn { complement }) | (CofiniteIn { complement }, Finite(a)) => {
                CofiniteIn {
                    complement: complement.iter().filter(|x| !a.contains(x)).cloned().collect(),
                }
            }
            (CofiniteIn { complement: a }, CofiniteIn { complement: b }) => {
                CofiniteIn { complement: a.intersection(b).cloned().collect() }
            }
        }
    }

    pub fn subset_of(&self, other: &SetExpr) -> bool {
        use SetExpr::*;
        match (self, other) {
            (Finite(a), _) => a.iter().all(|x| other.contains(x)),
            // an infinite set never fits inside a finite one
            (CofiniteIn { .. }, Finite(_)) => false,
            (CofiniteIn { complement: a }, CofiniteIn { complement: b }) => {
                b.iter().all(|x| a.contains(x))
            }
        }
    }

    /// The `k` smallest elements (all of them if fewer exist).
    pub fn smallest(&self, k: usize) -> Vec<Nat> {
        match self {
            SetExpr::Finite(s) => s.iter().take(k).cloned().collect(),
            SetExpr::CofiniteIn { complement } => {
                let mut out = Vec::with_capacity(k);
                let mut x = Nat::ZERO;
                while out.len() < k {
                    if !complement.contains(&x) {
                        out.push(x.clone());
                    }
                    x = x.succ();
                }
                out
            }
        }
    }

    /// Elements below `bound` (for finite sets, all elements below it).
    pub fn elems_below(&self, bound: u64) -> Vec<Nat> {
        (0..bound).map(Nat::from).filter(|x| self.contains(x)).collect()
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, s: &BTreeSet<Nat>) -> fmt::Result {
            for (i, x) in s.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        }
        match self {
            SetExpr::Finite(s) => {
                f.write_str("{")?;
                list(f, s)?;
                f.write_str("}")
            }
            SetExpr::CofiniteIn { complement } if complement.is_empty() => f.write_str("w"),
            SetExpr::CofiniteIn { complement } => {
                f.write_str("w\\{")?;
                list(f, complement)?;
                f.write_str("}")
            }
        }
    }
}

// JSON: {"kind":"finite","elems":[…]} or
//       {"kind":"cofinite_in","base":"omega","complement":[…]}.
// A finite base n is accepted on input and normalized to the finite set
// {0,…,n−1} ∖ complement.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Wire {
    Finite { elems: Vec<Nat> },
    CofiniteIn { base: Base, complement: Vec<Nat> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Base {
    Word(String),
    Bound(u64),
}

impl Serialize for SetExpr {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let wire = match self {
            SetExpr::Finite(s) => Wire::Finite { elems: s.iter().cloned().collect() },
            SetExpr::CofiniteIn { complement } => Wire::CofiniteIn {
                base: Base::Word("omega".into()),
                complement: complement.iter().cloned().collect(),
            },
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SetExpr {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<SetExpr, D::Error> {
        match Wire::deserialize(de)? {
            Wire::Finite { elems } => Ok(SetExpr::finite(elems)),
            Wire::CofiniteIn { base, complement } => match base {
                Base::Word(w) if w == "omega" => Ok(SetExpr::cofinite(complement)),
                Base::Word(w) => Err(D::Error::custom(format!(
                    "unknown base `{w}`; expected \"omega\" or a number"
                ))),
                Base::Bound(n) => {
                    let compl: BTreeSet<Nat> = complement.into_iter().collect();
                    Ok(SetExpr::finite(
                        (1..=n).map(Nat::from).filter(|x| !compl.contains(x)),
                    ))
                }
            },
        }
    }
}
