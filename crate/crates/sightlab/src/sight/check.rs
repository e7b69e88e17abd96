//! Walks over sights: path trees, the two witness predicates, sectors
//! and joint leaves.
//!
//! Every check carries a [`CheckCfg`]. Finite nodes are enumerated
//! exhaustively. Infinitely-branching (cofinite) nodes are checked on
//! all exception children plus a fixed number of sampled elements
//! routed through the shared default child; a `Holds` on such a sight
//! certifies the presented closed form, it is not a proof for elements
//! beyond the samples. Budget or depth exhaustion yields `Unknown`,
//! never a guessed verdict.

use crate::family::{Family, Member};
use crate::nat::{self, Nat};
use crate::pca::{apply, Outcome};
use crate::sets::SetExpr;
use crate::verdict::{Counterexample, Exhaustion, Resource, Verdict};
use std::collections::BTreeSet;
use std::fmt;

use super::{CheckCfg, Sight, SightNode, Theta};

/// Refuse to enumerate finite out-sets wider than this; the checks
/// report `Unknown` instead of silently sampling.
const WIDTH_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathKind {
    GoodLeaf,
    BadLeaf,
    Interior,
}

use serde::{Deserialize, Serialize};

/// One position in the path tree of a sight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePath {
    pub elems: Vec<Nat>,
    pub kind: PathKind,
}

impl TreePath {
    pub fn new(elems: Vec<Nat>, kind: PathKind) -> TreePath {
        TreePath { elems, kind }
    }

    pub fn is_good_leaf(&self) -> bool {
        self.kind == PathKind::GoodLeaf
    }

    pub fn is_leaf(&self) -> bool {
        self.kind != PathKind::Interior
    }

    /// The coded sequence the machine-level programs consume.
    pub fn code(&self) -> Nat {
        nat::seq(&self.elems)
    }
}

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("⟩")?;
        match self.kind {
            PathKind::GoodLeaf => f.write_str(" good"),
            PathKind::BadLeaf => f.write_str(" bad"),
            PathKind::Interior => Ok(()),
        }
    }
}

/// A prefix-closed listing of tree positions. `complete` is false when
/// a depth cap, a width cap or symbolic sampling truncated the walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paths {
    pub paths: Vec<TreePath>,
    pub complete: bool,
}

impl Paths {
    pub fn good_leaves(&self) -> impl Iterator<Item = &TreePath> {
        self.paths.iter().filter(|p| p.is_good_leaf())
    }

    pub fn contains(&self, elems: &[Nat]) -> bool {
        self.paths.iter().any(|p| p.elems == elems)
    }
}

/// The children actually reachable from a node, with an exactness
/// flag: finite nodes enumerate fully, cofinite nodes yield the
/// exceptions plus sampled defaults.
fn reachable_children<'a>(
    node: &'a SightNode,
    samples: usize,
) -> Result<(Vec<(Nat, &'a Sight)>, bool), String> {
    if node.out.is_finite() {
        let len = node.out.len().expect("finite out-sets have a size");
        if len > WIDTH_CAP {
            return Err(format!("out-set of size {len} exceeds the width cap"));
        }
        let mut kids = Vec::with_capacity(len);
        for a in node.out.smallest(len) {
            match node.child_lookup(&a) {
                Some(c) => kids.push((a, c)),
                None => return Err(format!("element {a} of the out-set has no child")),
            }
        }
        Ok((kids, true))
    } else {
        let default = node
            .default
            .as_ref()
            .ok_or_else(|| "infinite out-set without a default child".to_string())?;
        let mut kids: Vec<(Nat, &Sight)> = Vec::new();
        for (k, c) in &node.exceptions {
            kids.push((k.clone(), c));
        }
        let mut sampled = 0;
        for a in node.out.smallest(samples + node.exceptions.len()) {
            if sampled == samples {
                break;
            }
            if !node.exceptions.contains_key(&a) {
                kids.push((a, default));
                sampled += 1;
            }
        }
        Ok((kids, false))
    }
}

impl SightNode {
    fn child_lookup(&self, a: &Nat) -> Option<&Sight> {
        self.exceptions
            .get(a)
            .or_else(|| self.out.contains(a).then_some(self.default.as_ref()).flatten())
    }
}

/// All positions of the path tree down to the depth cap, prefix-closed.
pub fn tr_paths(s: &Sight, cfg: &CheckCfg) -> Paths {
    fn walk(s: &Sight, cfg: &CheckCfg, prefix: &mut Vec<Nat>, out: &mut Paths) {
        match s {
            Sight::Nil => out
                .paths
                .push(TreePath::new(prefix.clone(), PathKind::GoodLeaf)),
            Sight::Node(node) => {
                if node.out.is_empty() {
                    out.paths
                        .push(TreePath::new(prefix.clone(), PathKind::BadLeaf));
                    return;
                }
                out.paths
                    .push(TreePath::new(prefix.clone(), PathKind::Interior));
                if prefix.len() >= cfg.depth_cap {
                    out.complete = false;
                    return;
                }
                match reachable_children(node, cfg.samples) {
                    Err(_) => out.complete = false,
                    Ok((kids, exact)) => {
                        if !exact {
                            out.complete = false;
                        }
                        for (a, child) in kids {
                            prefix.push(a);
                            walk(child, cfg, prefix, out);
                            prefix.pop();
                        }
                    }
                }
            }
        }
    }
    let mut out = Paths {
        paths: Vec::new(),
        complete: true,
    };
    walk(s, cfg, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OutAtError {
    #[error("path leaves the tree after {followed} steps")]
    NotInTree { followed: usize },
    #[error("good-leaf positions have no out-set")]
    GoodLeaf,
}

/// The out-set at a position. Bad leaves answer `∅`; good leaves have
/// no out-set at all.
pub fn out_at(s: &Sight, path: &[Nat]) -> Result<SetExpr, OutAtError> {
    let mut cur = s;
    for (i, a) in path.iter().enumerate() {
        cur = cur
            .child_at(a)
            .ok_or(OutAtError::NotInTree { followed: i })?;
    }
    match cur {
        Sight::Nil => Err(OutAtError::GoodLeaf),
        Sight::Node(node) => Ok(node.out.clone()),
    }
}

/// Whether some leaf of the path tree is bad. Exact even on symbolic
/// sights: every reachable subtree is an exception child or the shared
/// default, so walking those covers all positions.
pub fn is_degenerate(s: &Sight) -> bool {
    match s {
        Sight::Nil => false,
        Sight::Node(node) => {
            if node.out.is_empty() {
                return true;
            }
            let default_reachable = match node.out.len() {
                Some(len) => len > node.exceptions.len(),
                None => true,
            };
            node.exceptions
                .iter()
                .any(|(k, c)| node.out.contains(k) && is_degenerate(c))
                || (default_reachable
                    && node.default.as_ref().is_some_and(is_degenerate))
        }
    }
}

fn fail_at(path: &[Nat], msg: String) -> Verdict {
    Verdict::Fails(Counterexample::msg(msg).at(path.to_vec()))
}

fn combine(stash: &mut Option<Verdict>, v: Verdict) {
    if stash.is_none() {
        *stash = Some(v);
    }
}

/// The downward witness discipline: at a leaf the witness carries a
/// payload in `p`, at a node it names a branch label and a program
/// that continues on every element of the out-set.
pub fn is_dedicated(z: &Nat, theta: &Theta, p: &Member, s: &Sight, cfg: &CheckCfg) -> Verdict {
    fn rec(
        z: &Nat,
        theta: &Theta,
        p: &Member,
        s: &Sight,
        cfg: &CheckCfg,
        path: &mut Vec<Nat>,
    ) -> Verdict {
        if path.len() > cfg.depth_cap {
            return Verdict::unknown(Resource::Depth, "dedicated check hit the depth cap");
        }
        let (tag, rest) = nat::unpair(z);
        match s {
            Sight::Nil => {
                if !tag.is_zero() {
                    return fail_at(path, format!("leaf witness {z} is not ⟨0,·⟩"));
                }
                if p.contains(&rest) {
                    Verdict::Holds
                } else {
                    Verdict::Fails(
                        Counterexample::msg(format!("leaf payload {rest} lies outside the target"))
                            .at(path.clone())
                            .value(rest.clone()),
                    )
                }
            }
            Sight::Node(node) => {
                if tag != Nat::ONE {
                    return fail_at(path, format!("interior witness {z} is not ⟨1,⟨n,e⟩⟩"));
                }
                let (label, e) = nat::unpair(&rest);
                if !theta.domain_contains(&label) {
                    return fail_at(path, format!("branch label {label} is outside dom θ"));
                }
                let fam = theta.get(&label).expect("label was just checked");
                if !fam.contains_member(&Member::set(node.out.clone())) {
                    return fail_at(
                        path,
                        format!("out-set {} is not a member of θ({label})", node.out),
                    );
                }
                let (kids, _exact) = match reachable_children(node, cfg.samples) {
                    Ok(k) => k,
                    Err(why) => return fail_at(path, why),
                };
                let mut stash = None;
                for (a, child) in kids {
                    match apply(&e, &a, cfg.budget) {
                        Outcome::Value(v) => {
                            path.push(a);
                            let sub = rec(&v, theta, p, child, cfg, path);
                            path.pop();
                            match sub {
                                Verdict::Holds => {}
                                Verdict::Fails(c) => return Verdict::Fails(c),
                                u => combine(&mut stash, u),
                            }
                        }
                        Outcome::Exhausted => combine(
                            &mut stash,
                            Verdict::Unknown(Exhaustion::new(
                                Resource::Steps,
                                format!("e·{a} did not converge within budget"),
                            )),
                        ),
                        Outcome::Stuck(why) => {
                            return fail_at(path, format!("e·{a} is stuck: {why}"));
                        }
                    }
                }
                stash.unwrap_or(Verdict::Holds)
            }
        }
    }
    rec(z, theta, p, s, cfg, &mut Vec::new())
}

/// The path-indexed witness discipline: the witness is asked at every
/// position; good leaves must answer `⟨0,y⟩` with `y` in the target,
/// every other position must answer `⟨1,n⟩` naming a branch label
/// whose assigned family contains the out-set there (the empty out-set
/// of a bad leaf included).
pub fn is_supporting(w: &Nat, theta: &Theta, p: &Member, s: &Sight, cfg: &CheckCfg) -> Verdict {
    fn rec(
        w: &Nat,
        theta: &Theta,
        p: &Member,
        s: &Sight,
        cfg: &CheckCfg,
        path: &mut Vec<Nat>,
    ) -> Verdict {
        if path.len() > cfg.depth_cap {
            return Verdict::unknown(Resource::Depth, "supporting check hit the depth cap");
        }
        let code = nat::seq(path);
        let ws = match apply(w, &code, cfg.budget) {
            Outcome::Value(v) => v,
            Outcome::Exhausted => {
                return Verdict::unknown(
                    Resource::Steps,
                    format!("w did not converge on path {code} within budget"),
                )
            }
            Outcome::Stuck(why) => return fail_at(path, format!("w is stuck on the path: {why}")),
        };
        let (tag, rest) = nat::unpair(&ws);
        match s {
            Sight::Nil => {
                if !tag.is_zero() {
                    return fail_at(path, format!("good leaf answered {ws}, not ⟨0,·⟩"));
                }
                if p.contains(&rest) {
                    Verdict::Holds
                } else {
                    Verdict::Fails(
                        Counterexample::msg(format!("leaf payload {rest} lies outside the target"))
                            .at(path.clone())
                            .value(rest),
                    )
                }
            }
            Sight::Node(node) => {
                if tag != Nat::ONE {
                    return fail_at(path, format!("non-good-leaf position answered {ws}"));
                }
                if !theta.domain_contains(&rest) {
                    return fail_at(path, format!("branch label {rest} is outside dom θ"));
                }
                let fam = theta.get(&rest).expect("label was just checked");
                if !fam.contains_member(&Member::set(node.out.clone())) {
                    return fail_at(
                        path,
                        format!("out-set {} is not a member of θ({rest})", node.out),
                    );
                }
                let (kids, _exact) = match reachable_children(node, cfg.samples) {
                    Ok(k) => k,
                    Err(why) => return fail_at(path, why),
                };
                let mut stash = None;
                for (a, child) in kids {
                    path.push(a);
                    let sub = rec(w, theta, p, child, cfg, path);
                    path.pop();
                    match sub {
                        Verdict::Holds => {}
                        Verdict::Fails(c) => return Verdict::Fails(c),
                        u => combine(&mut stash, u),
                    }
                }
                stash.unwrap_or(Verdict::Holds)
            }
        }
    }
    rec(w, theta, p, s, cfg, &mut Vec::new())
}

/// Structural witness-shape check: `z` is r-defined on `S` when the
/// tree can be walked with every continuation converging. No branch
/// labels or targets are consulted; this is exactly "dedicated for
/// some θ with target ω".
pub fn r_defined(z: &Nat, s: &Sight, cfg: &CheckCfg) -> Verdict {
    fn rec(z: &Nat, s: &Sight, cfg: &CheckCfg, path: &mut Vec<Nat>) -> Verdict {
        if path.len() > cfg.depth_cap {
            return Verdict::unknown(Resource::Depth, "r-definedness check hit the depth cap");
        }
        let (tag, rest) = nat::unpair(z);
        match s {
            Sight::Nil => {
                if tag.is_zero() {
                    Verdict::Holds
                } else {
                    fail_at(path, format!("leaf witness {z} is not ⟨0,·⟩"))
                }
            }
            Sight::Node(node) => {
                if tag != Nat::ONE {
                    return fail_at(path, format!("interior witness {z} is not ⟨1,⟨n,e⟩⟩"));
                }
                let (_label, e) = nat::unpair(&rest);
                let (kids, _exact) = match reachable_children(node, cfg.samples) {
                    Ok(k) => k,
                    Err(why) => return fail_at(path, why),
                };
                let mut stash = None;
                for (a, child) in kids {
                    match apply(&e, &a, cfg.budget) {
                        Outcome::Value(v) => {
                            path.push(a);
                            let sub = rec(&v, child, cfg, path);
                            path.pop();
                            match sub {
                                Verdict::Holds => {}
                                Verdict::Fails(c) => return Verdict::Fails(c),
                                u => combine(&mut stash, u),
                            }
                        }
                        Outcome::Exhausted => combine(
                            &mut stash,
                            Verdict::unknown(
                                Resource::Steps,
                                format!("e·{a} did not converge within budget"),
                            ),
                        ),
                        Outcome::Stuck(why) => {
                            return fail_at(path, format!("e·{a} is stuck: {why}"))
                        }
                    }
                }
                stash.unwrap_or(Verdict::Holds)
            }
        }
    }
    rec(z, s, cfg, &mut Vec::new())
}

/// The payloads a witness deposits on the good leaves it reaches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayloadImage {
    pub values: BTreeSet<Nat>,
    /// False when symbolic sampling or a cap truncated the walk.
    pub complete: bool,
}

/// Collects `{ y | some tree position unwinds z to ⟨0,y⟩ }` after
/// confirming `z` is r-defined on `S`.
pub fn payload_image(z: &Nat, s: &Sight, cfg: &CheckCfg) -> Result<PayloadImage, Verdict> {
    match r_defined(z, s, cfg) {
        Verdict::Holds => {}
        bad => return Err(bad),
    }
    fn rec(
        z: &Nat,
        s: &Sight,
        cfg: &CheckCfg,
        image: &mut PayloadImage,
    ) -> Result<(), Verdict> {
        let (tag, rest) = nat::unpair(z);
        match s {
            Sight::Nil => {
                debug_assert!(tag.is_zero());
                image.values.insert(rest);
                Ok(())
            }
            Sight::Node(node) => {
                let (_label, e) = nat::unpair(&rest);
                let (kids, exact) = reachable_children(node, cfg.samples)
                    .map_err(Verdict::fails)?;
                if !exact {
                    image.complete = false;
                }
                for (a, child) in kids {
                    match apply(&e, &a, cfg.budget) {
                        Outcome::Value(v) => rec(&v, child, cfg, image)?,
                        Outcome::Exhausted => {
                            return Err(Verdict::unknown(
                                Resource::Steps,
                                format!("e·{a} did not converge within budget"),
                            ))
                        }
                        Outcome::Stuck(why) => {
                            return Err(Verdict::fails(format!("e·{a} is stuck: {why}")))
                        }
                    }
                }
                Ok(())
            }
        }
    }
    let mut image = PayloadImage {
        values: BTreeSet::new(),
        complete: true,
    };
    rec(z, s, cfg, &mut image)?;
    Ok(image)
}

/// A sight is on a family when the out-set of every node (bad leaves
/// included) is a member.
pub fn is_on(s: &Sight, fam: &Family) -> bool {
    is_on_by(s, &|out| fam.contains_member(&Member::set(out.clone())))
}

/// On a θ map: every out-set is a member of some `θ(n)`.
pub fn is_on_theta(s: &Sight, theta: &Theta) -> bool {
    is_on_by(s, &|out| {
        theta
            .families()
            .iter()
            .any(|f| f.contains_member(&Member::set(out.clone())))
    })
}

fn is_on_by(s: &Sight, ok: &dyn Fn(&SetExpr) -> bool) -> bool {
    match s {
        Sight::Nil => true,
        Sight::Node(node) => {
            if !ok(&node.out) {
                return false;
            }
            let default_reachable = match node.out.len() {
                Some(len) => len > node.exceptions.len(),
                None => true,
            };
            node.exceptions.values().all(|c| is_on_by(c, ok))
                && (!default_reachable || node.default.as_ref().is_none_or(|d| is_on_by(d, ok)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JipError {
    #[error("need equally many sights and families, and at least one")]
    Shape,
    #[error("sight {index} is not on its family")]
    NotOnFamily { index: usize },
    #[error("joint intersection fails at {at:?}: outs {outs:?} meet in ∅")]
    EmptyIntersection { at: Vec<Nat>, outs: Vec<SetExpr> },
    #[error("descent exceeded the depth cap")]
    DepthExceeded,
    #[error("sight is malformed: {0}")]
    Malformed(String),
}

/// Greedy common descent: with the joint intersection property, a
/// position in every tree that is a good leaf of at least one sight.
pub fn joint_leaf(sights: &[Sight], fams: &[Family], cfg: &CheckCfg) -> Result<TreePath, JipError> {
    if sights.is_empty() || sights.len() != fams.len() {
        return Err(JipError::Shape);
    }
    for (i, (s, f)) in sights.iter().zip(fams).enumerate() {
        if !is_on(s, f) {
            return Err(JipError::NotOnFamily { index: i });
        }
    }
    let mut here: Vec<&Sight> = sights.iter().collect();
    let mut path = Vec::new();
    loop {
        if here.iter().any(|s| s.is_nil()) {
            return Ok(TreePath::new(path, PathKind::GoodLeaf));
        }
        if path.len() > cfg.depth_cap {
            return Err(JipError::DepthExceeded);
        }
        let outs: Vec<SetExpr> = here
            .iter()
            .map(|s| match s {
                Sight::Node(n) => n.out.clone(),
                Sight::Nil => unreachable!("nil handled above"),
            })
            .collect();
        let mut meet = outs[0].clone();
        for o in &outs[1..] {
            meet = meet.intersect(o);
        }
        let a = match meet.smallest(1).into_iter().next() {
            Some(a) => a,
            None => return Err(JipError::EmptyIntersection { at: path, outs }),
        };
        let mut next = Vec::with_capacity(here.len());
        for s in &here {
            match s.child_at(&a) {
                Some(c) => next.push(c),
                None => {
                    return Err(JipError::Malformed(format!(
                        "element {a} of an out-set has no child"
                    )))
                }
            }
        }
        here = next;
        path.push(a);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SectorError {
    #[error("a sector needs at least one chosen leaf")]
    Empty,
    #[error("chosen path {0:?} is not a leaf of the tree")]
    NotALeaf(Vec<Nat>),
}

#[derive(Debug, Default)]
struct PathTrie {
    children: std::collections::BTreeMap<Nat, PathTrie>,
}

/// Restriction of a sight to the chosen leaves: the tree becomes the
/// prefix closure of the chosen paths, out-sets shrink to the kept
/// elements, goodness of the endpoints is inherited.
pub fn sector(s: &Sight, chosen: &[TreePath]) -> Result<Sight, SectorError> {
    if chosen.is_empty() {
        return Err(SectorError::Empty);
    }
    let mut trie = PathTrie::default();
    for leaf in chosen {
        // Every chosen path must end at a leaf position of the tree.
        let mut cur = s;
        for a in &leaf.elems {
            cur = cur
                .child_at(a)
                .ok_or_else(|| SectorError::NotALeaf(leaf.elems.clone()))?;
        }
        let is_leaf = match cur {
            Sight::Nil => true,
            Sight::Node(n) => n.out.is_empty(),
        };
        if !is_leaf {
            return Err(SectorError::NotALeaf(leaf.elems.clone()));
        }
        let mut node = &mut trie;
        for a in &leaf.elems {
            node = node.children.entry(a.clone()).or_default();
        }
    }
    fn build(s: &Sight, trie: &PathTrie) -> Sight {
        if trie.children.is_empty() {
            return s.clone();
        }
        let mut kept = Vec::new();
        for (a, sub) in &trie.children {
            let child = s.child_at(a).expect("paths were validated against the tree");
            kept.push((a.clone(), build(child, sub)));
        }
        Sight::node(
            SetExpr::finite(kept.iter().map(|(a, _)| a.clone())),
            kept,
            None,
        )
    }
    Ok(build(s, &trie))
}

/// The sector keeping the `n` least elements of every out-set.
pub fn nary_sector(s: &Sight, n: usize) -> Sight {
    match s {
        Sight::Nil => Sight::Nil,
        Sight::Node(node) => {
            if node.out.is_empty() {
                return Sight::dead_end();
            }
            let kept: Vec<Nat> = node.out.smallest(n);
            let kids: Vec<(Nat, Sight)> = kept
                .iter()
                .map(|a| {
                    let child = node
                        .child_lookup(a)
                        .expect("validated sights cover their out-sets");
                    (a.clone(), nary_sector(child, n))
                })
                .collect();
            Sight::node(SetExpr::finite(kept), kids, None)
        }
    }
}

/// When every `ρ(n)` is a singleton family over a singleton set, a
/// witness determines at most one dedicated sight; this reconstructs
/// it by unwinding `z`.
pub fn unique_sight_check(z: &Nat, rho: &Theta, cfg: &CheckCfg) -> Result<Sight, Verdict> {
    for fam in rho.families() {
        let single = match fam {
            Family::Explicit(ms) if ms.len() == 1 => ms[0].len() == Some(1),
            _ => false,
        };
        if !single {
            return Err(Verdict::fails(
                "ρ must assign a one-set family over a one-element set everywhere",
            ));
        }
    }
    fn rec(z: &Nat, rho: &Theta, cfg: &CheckCfg, depth: usize) -> Result<Sight, Verdict> {
        if depth > cfg.depth_cap {
            return Err(Verdict::unknown(
                Resource::Depth,
                "reconstruction hit the depth cap",
            ));
        }
        let (tag, rest) = nat::unpair(z);
        if tag.is_zero() {
            return Ok(Sight::Nil);
        }
        if tag != Nat::ONE {
            return Err(Verdict::fails(format!("witness {z} is not ⟨0,·⟩ or ⟨1,·⟩")));
        }
        let (label, e) = nat::unpair(&rest);
        let fam = rho
            .get(&label)
            .ok_or_else(|| Verdict::fails(format!("branch label {label} is outside dom ρ")))?;
        let x = match fam {
            Family::Explicit(ms) => ms[0].smallest(1).remove(0),
            _ => unreachable!("shape was validated above"),
        };
        match apply(&e, &x, cfg.budget) {
            Outcome::Value(v) => {
                let child = rec(&v, rho, cfg, depth + 1)?;
                Ok(Sight::node(
                    SetExpr::finite([x.clone()]),
                    [(x, child)],
                    None,
                ))
            }
            Outcome::Exhausted => Err(Verdict::unknown(
                Resource::Steps,
                format!("e·{x} did not converge within budget"),
            )),
            Outcome::Stuck(why) => Err(Verdict::fails(format!("e·{x} is stuck: {why}"))),
        }
    }
    rec(z, rho, cfg, 0)
}
