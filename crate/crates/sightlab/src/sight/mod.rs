//! Sights: the well-founded trees that witness membership in the
//! closure of a presented monad map.
//!
//! A sight is `NIL` (a good leaf) or a node carrying an out-set `A`
//! and one child per element of `A`. Out-sets may be infinite
//! (cofinite in ω), so children are stored as a finite exception map
//! plus an optional shared default child; the default covers every
//! non-exception element uniformly. That representation keeps each
//! sight a finite object while still housing the infinitely-branching
//! witnesses the uniform constructions produce.
//!
//! A node with an *empty* out-set is a leaf of the path tree too, but
//! a bad one; sights containing such nodes are degenerate. The checks
//! that walk trees live in [`check`]; the programs translating between
//! the two witness disciplines live in [`translate`].

pub mod check;
pub mod gen;
pub mod translate;

use crate::family::Family;
use crate::nat::Nat;
use crate::pca::Budget;
use crate::sets::SetExpr;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

pub use check::{
    is_dedicated, is_degenerate, is_on, is_on_theta, is_supporting, joint_leaf, nary_sector,
    out_at, payload_image, r_defined, sector, tr_paths, unique_sight_check, JipError, PathKind,
    Paths, PayloadImage, TreePath,
};
pub use translate::{ded_to_sup, meta_f, sup_to_ded};

/// Branching structure of one interior position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SightNode {
    pub out: SetExpr,
    /// Children for specific elements; keys must lie in `out`.
    pub exceptions: BTreeMap<Nat, Sight>,
    /// Shared child for every non-exception element of `out`.
    pub default: Option<Sight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SightWire", into = "SightWire")]
pub enum Sight {
    Nil,
    Node(Rc<SightNode>),
}

impl Sight {
    pub fn nil() -> Sight {
        Sight::Nil
    }

    pub fn node(
        out: SetExpr,
        exceptions: impl IntoIterator<Item = (Nat, Sight)>,
        default: Option<Sight>,
    ) -> Sight {
        Sight::Node(Rc::new(SightNode {
            out,
            exceptions: exceptions.into_iter().collect(),
            default,
        }))
    }

    /// The bad leaf: a node whose out-set is empty.
    pub fn dead_end() -> Sight {
        Sight::node(SetExpr::empty(), [], None)
    }

    /// Finite node with one explicit child per listed element.
    pub fn branch(children: impl IntoIterator<Item = (Nat, Sight)>) -> Sight {
        let kids: BTreeMap<Nat, Sight> = children.into_iter().collect();
        let out = SetExpr::finite(kids.keys().cloned());
        Sight::Node(Rc::new(SightNode {
            out,
            exceptions: kids,
            default: None,
        }))
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Sight::Nil)
    }

    /// The child reached by `a`, if `a` is in the out-set.
    pub fn child_at(&self, a: &Nat) -> Option<&Sight> {
        match self {
            Sight::Nil => None,
            Sight::Node(n) => n
                .exceptions
                .get(a)
                .or_else(|| n.out.contains(a).then_some(n.default.as_ref()).flatten()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Sight::Nil => 0,
            Sight::Node(n) => {
                let kids = n.exceptions.values().chain(n.default.as_ref());
                1 + kids.map(Sight::depth).max().unwrap_or(0)
            }
        }
    }

    /// Structural well-formedness.
    ///
    /// - exception keys always lie in the out-set;
    /// - a finite out-set without a default must be covered exactly by
    ///   the exceptions;
    /// - an infinite out-set requires a default child.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            Sight::Nil => Ok(()),
            Sight::Node(n) => {
                for k in n.exceptions.keys() {
                    if !n.out.contains(k) {
                        return Err(format!("exception key {k} outside the out-set {}", n.out));
                    }
                }
                if n.out.is_finite() {
                    if n.default.is_none() {
                        let covered = n.out.len() == Some(n.exceptions.len());
                        if !covered {
                            return Err(format!(
                                "finite out-set {} has {} exception children and no default",
                                n.out,
                                n.exceptions.len()
                            ));
                        }
                    }
                } else if n.default.is_none() {
                    return Err(format!("infinite out-set {} needs a default child", n.out));
                }
                for child in n.exceptions.values().chain(n.default.as_ref()) {
                    child.validate()?;
                }
                Ok(())
            }
        }
    }

    /// Normal form: exceptions equal to the default child are dropped,
    /// and a default shadowed by full exception coverage is dropped.
    pub fn normalize(&self) -> Sight {
        match self {
            Sight::Nil => Sight::Nil,
            Sight::Node(n) => {
                let default = n.default.as_ref().map(Sight::normalize);
                let mut exceptions = BTreeMap::new();
                for (k, v) in &n.exceptions {
                    let v = v.normalize();
                    if default.as_ref() != Some(&v) {
                        exceptions.insert(k.clone(), v);
                    }
                }
                let shadowed = n.out.is_finite() && n.out.len() == Some(exceptions.len());
                Sight::Node(Rc::new(SightNode {
                    out: n.out.clone(),
                    exceptions,
                    default: if shadowed { None } else { default },
                }))
            }
        }
    }

    /// GraphViz rendering of the path tree. Good leaves are
    /// double-circled; the shared default child hangs off a dashed
    /// edge labeled `∀ other`.
    pub fn to_dot(&self) -> String {
        fn walk(s: &Sight, id: usize, next: &mut usize, buf: &mut String) {
            match s {
                Sight::Nil => {
                    buf.push_str(&format!(
                        "  n{id} [shape=doublecircle, label=\"nil\"];\n"
                    ));
                }
                Sight::Node(n) => {
                    if n.out.is_empty() {
                        buf.push_str(&format!("  n{id} [shape=box, label=\"dead end\"];\n"));
                        return;
                    }
                    buf.push_str(&format!("  n{id} [shape=circle, label=\"{}\"];\n", n.out));
                    for (k, child) in &n.exceptions {
                        let cid = *next;
                        *next += 1;
                        buf.push_str(&format!("  n{id} -> n{cid} [label=\"{k}\"];\n"));
                        walk(child, cid, next, buf);
                    }
                    if let Some(d) = &n.default {
                        let cid = *next;
                        *next += 1;
                        buf.push_str(&format!(
                            "  n{id} -> n{cid} [style=dashed, label=\"∀ other\"];\n"
                        ));
                        walk(d, cid, next, buf);
                    }
                }
            }
        }
        let mut buf = String::from("digraph sight {\n");
        let mut next = 1;
        walk(self, 0, &mut next, &mut buf);
        buf.push_str("}\n");
        buf
    }
}

impl fmt::Display for Sight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sight::Nil => f.write_str("nil"),
            Sight::Node(n) => {
                write!(f, "({}", n.out)?;
                for (k, v) in &n.exceptions {
                    write!(f, ", {k}↦{v}")?;
                }
                if let Some(d) = &n.default {
                    write!(f, ", *↦{d}")?;
                }
                f.write_str(")")
            }
        }
    }
}

// -- wire form ---------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SightWire {
    Nil {
        nil: bool,
    },
    Node {
        out: SetExpr,
        #[serde(default)]
        children: BTreeMap<String, SightWire>,
        #[serde(default)]
        default: Option<Box<SightWire>>,
    },
}

impl From<Sight> for SightWire {
    fn from(s: Sight) -> SightWire {
        match s {
            Sight::Nil => SightWire::Nil { nil: true },
            Sight::Node(n) => SightWire::Node {
                out: n.out.clone(),
                children: n
                    .exceptions
                    .iter()
                    .map(|(k, v)| (k.to_string(), SightWire::from(v.clone())))
                    .collect(),
                default: n.default.clone().map(|d| Box::new(SightWire::from(d))),
            },
        }
    }
}

impl TryFrom<SightWire> for Sight {
    type Error = String;

    fn try_from(w: SightWire) -> Result<Sight, String> {
        fn build(w: SightWire) -> Result<Sight, String> {
            match w {
                SightWire::Nil { nil: true } => Ok(Sight::Nil),
                SightWire::Nil { nil: false } => Err("\"nil\" must be true".into()),
                SightWire::Node {
                    out,
                    children,
                    default,
                } => {
                    let mut exceptions = BTreeMap::new();
                    for (k, v) in children {
                        let key = Nat::parse_decimal(&k)
                            .ok_or_else(|| format!("child key {k:?} is not a natural"))?;
                        exceptions.insert(key, build(v)?);
                    }
                    let default = default.map(|d| build(*d)).transpose()?;
                    Ok(Sight::Node(Rc::new(SightNode {
                        out,
                        exceptions,
                        default,
                    })))
                }
            }
        }
        let s = build(w)?;
        s.validate()?;
        Ok(s)
    }
}

// -- θ maps ------------------------------------------------------------

/// A finite presentation of `θ : B → families`, the data a branch
/// label `n` is checked against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ThetaWire", into = "ThetaWire")]
pub enum Theta {
    /// `B` is the key set of the table.
    Table(BTreeMap<Nat, Family>),
    /// `θ(n)` is the same family for every `n ∈ ω`.
    Constant(Family),
}

impl Theta {
    /// The presentation of a single basic operator: `θ = {0 ↦ 𝒜}`.
    pub fn single(fam: Family) -> Theta {
        Theta::Table([(Nat::ZERO, fam)].into_iter().collect())
    }

    pub fn table(entries: impl IntoIterator<Item = (Nat, Family)>) -> Theta {
        Theta::Table(entries.into_iter().collect())
    }

    pub fn constant(fam: Family) -> Theta {
        Theta::Constant(fam)
    }

    pub fn domain(&self) -> SetExpr {
        match self {
            Theta::Table(t) => SetExpr::finite(t.keys().cloned()),
            Theta::Constant(_) => SetExpr::omega(),
        }
    }

    pub fn domain_contains(&self, n: &Nat) -> bool {
        match self {
            Theta::Table(t) => t.contains_key(n),
            Theta::Constant(_) => true,
        }
    }

    pub fn get(&self, n: &Nat) -> Option<&Family> {
        match self {
            Theta::Table(t) => t.get(n),
            Theta::Constant(f) => Some(f),
        }
    }

    /// The distinct families in the range.
    pub fn families(&self) -> Vec<&Family> {
        match self {
            Theta::Table(t) => {
                let mut seen = Vec::new();
                for f in t.values() {
                    if !seen.contains(&f) {
                        seen.push(f);
                    }
                }
                seen
            }
            Theta::Constant(f) => vec![f],
        }
    }

    /// Whether `∅ ∈ ⋃ₙ θ(n)`; the only door to degenerate witnesses.
    pub fn admits_empty(&self) -> bool {
        self.families().iter().any(|f| f.contains_empty_member())
    }

    pub fn validate(&self) -> Result<(), String> {
        if matches!(self, Theta::Table(t) if t.is_empty()) {
            return Err("θ needs a nonempty domain".into());
        }
        for f in self.families() {
            f.validate()?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ThetaWire {
    Constant { constant: Family },
    Table { table: BTreeMap<String, Family> },
}

impl From<Theta> for ThetaWire {
    fn from(t: Theta) -> ThetaWire {
        match t {
            Theta::Constant(f) => ThetaWire::Constant { constant: f },
            Theta::Table(m) => ThetaWire::Table {
                table: m.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            },
        }
    }
}

impl TryFrom<ThetaWire> for Theta {
    type Error = String;

    fn try_from(w: ThetaWire) -> Result<Theta, String> {
        let t = match w {
            ThetaWire::Constant { constant } => Theta::Constant(constant),
            ThetaWire::Table { table } => {
                let mut m = BTreeMap::new();
                for (k, v) in table {
                    let key = Nat::parse_decimal(&k)
                        .ok_or_else(|| format!("θ key {k:?} is not a natural"))?;
                    m.insert(key, v);
                }
                Theta::Table(m)
            }
        };
        t.validate()?;
        Ok(t)
    }
}

/// Shared knobs for the recursive checks: a per-application step
/// budget, a recursion depth cap, and the sample width used on
/// infinitely-branching nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCfg {
    pub budget: Budget,
    pub depth_cap: usize,
    pub samples: usize,
}

impl Default for CheckCfg {
    fn default() -> CheckCfg {
        CheckCfg {
            budget: Budget::default(),
            depth_cap: 16,
            samples: 8,
        }
    }
}

impl CheckCfg {
    pub fn with_budget(budget: Budget) -> CheckCfg {
        CheckCfg {
            budget,
            ..CheckCfg::default()
        }
    }
}
