//! Families of subsets of ℕ presenting basic local operators.
//!
//! A family is given by shape, not by listing: the canonical co-size
//! families `O^α_m` (subsets of `{1,…,α}`, or of ω, whose complement
//! inside the base has exactly `m` elements), the family `ℱ` of all
//! cofinite sets, explicit finite lists, and the lazy join `𝒜 ⊙ ℬ`
//! whose members are Cantor products `A × B` of members of the two
//! sides. Keeping the join symbolic matters: products of cofinite sets
//! are neither finite nor cofinite, so they exist only as descriptions
//! ([`Member`]), never as materialized [`SetExpr`] values.
//!
//! The central numeric invariant is the intersection depth: the least
//! `n` such that some `n` members have empty intersection (`∞` when
//! there is none). For `O^α_m` with finite `α` the depth is `⌈α/m⌉`;
//! joins take the minimum of their sides because a product is empty
//! exactly when one factor is.

use crate::nat::{self, Nat};
use crate::sets::SetExpr;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// Base index of a co-size family: a finite initial segment or ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alpha {
    Fin(u64),
    Omega,
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Fin(a) => write!(f, "{a}"),
            Alpha::Omega => f.write_str("w"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    /// A finite list of sets, written out.
    Explicit(Vec<SetExpr>),
    /// `O^α_m`: subsets of the base whose complement has exactly m
    /// elements.
    CoSize { alpha: Alpha, m: u64 },
    /// `ℱ`: every cofinite subset of ω.
    Cofinite,
    /// The join presentation: members are products of members.
    Join(Box<Family>, Box<Family>),
}

/// A description of one member of a family. Products stay symbolic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Member {
    Set(SetExpr),
    Product(Box<Member>, Box<Member>),
}

/// Intersection depth; `Finite(n) < Infinite` in the derived order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Depth {
    Finite(u64),
    Infinite,
}

impl Member {
    pub fn set(s: SetExpr) -> Member {
        Member::Set(s)
    }

    pub fn product(l: Member, r: Member) -> Member {
        Member::Product(Box::new(l), Box::new(r))
    }

    pub fn contains(&self, x: &Nat) -> bool {
        match self {
            Member::Set(s) => s.contains(x),
            Member::Product(l, r) => {
                let (a, b) = nat::unpair(x);
                l.contains(&a) && r.contains(&b)
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Member::Set(s) => s.is_empty(),
            Member::Product(l, r) => l.is_empty() || r.is_empty(),
        }
    }

    /// Pointwise intersection; `None` when the two descriptions have
    /// different product shapes (never happens within one family).
    pub fn intersect(&self, other: &Member) -> Option<Member> {
        match (self, other) {
            (Member::Set(a), Member::Set(b)) => Some(Member::Set(a.intersect(b))),
            (Member::Product(l1, r1), Member::Product(l2, r2)) => Some(Member::product(
                l1.intersect(l2)?,
                r1.intersect(r2)?,
            )),
            _ => None,
        }
    }

    /// The `k` smallest elements of the described set.
    pub fn smallest(&self, k: usize) -> Vec<Nat> {
        match self {
            Member::Set(s) => s.smallest(k),
            Member::Product(l, r) => {
                if self.is_empty() {
                    return Vec::new();
                }
                let ls = l.smallest(k);
                let rs = r.smallest(k);
                let mut all: Vec<Nat> = ls
                    .iter()
                    .flat_map(|a| rs.iter().map(move |b| nat::pair(a, b)))
                    .collect();
                all.sort();
                all.truncate(k);
                all
            }
        }
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Member::Set(s) => write!(f, "{s}"),
            Member::Product(l, r) => write!(f, "({l} x {r})"),
        }
    }
}

/// An enumeration of members, flagged exhaustive when it is the whole
/// family rather than a window-bounded sample.
#[derive(Debug, Clone)]
pub struct MemberSample {
    pub members: Vec<Member>,
    pub exhaustive: bool,
}

impl Family {
    pub fn cosize(alpha: Alpha, m: u64) -> Family {
        Family::CoSize { alpha, m }
    }

    pub fn explicit<I: IntoIterator<Item = SetExpr>>(members: I) -> Family {
        Family::Explicit(members.into_iter().collect())
    }

    pub fn join(l: Family, r: Family) -> Family {
        Family::Join(Box::new(l), Box::new(r))
    }

    pub fn validate(&self) -> Result<(), String> {
        match self {
            Family::Explicit(ms) => {
                if ms.is_empty() {
                    return Err("explicit families must be nonempty".into());
                }
                if ms.len() > 64 {
                    return Err("explicit families are capped at 64 members".into());
                }
                let mut seen = BTreeSet::new();
                for s in ms {
                    if !seen.insert(s.clone()) {
                        return Err(format!("duplicate member {s}"));
                    }
                }
                Ok(())
            }
            Family::CoSize { alpha, m } => {
                if *m == 0 {
                    return Err("co-size families need m >= 1".into());
                }
                if let Alpha::Fin(a) = alpha {
                    if *a == 0 {
                        return Err("co-size families need a nonempty base".into());
                    }
                    if *m > *a {
                        return Err(format!("co-size families need m <= alpha, got m={m}, alpha={a}"));
                    }
                }
                Ok(())
            }
            Family::Cofinite => Ok(()),
            Family::Join(l, r) => {
                l.validate()?;
                r.validate()
            }
        }
    }

    /// Least `n` such that some `n` members intersect to ∅.
    pub fn depth(&self) -> Depth {
        match self {
            Family::Explicit(ms) => explicit_depth(ms),
            Family::CoSize { alpha: Alpha::Fin(a), m } => {
                debug_assert!(*m >= 1 && *a >= 1);
                Depth::Finite(a.div_ceil(*m))
            }
            Family::CoSize { alpha: Alpha::Omega, .. } => Depth::Infinite,
            Family::Cofinite => Depth::Infinite,
            Family::Join(l, r) => l.depth().min(r.depth()),
        }
    }

    /// `n` members always intersect nonempty exactly when `n < depth`.
    pub fn has_n_intersection(&self, n: u64) -> bool {
        match self.depth() {
            Depth::Finite(d) => n < d,
            Depth::Infinite => true,
        }
    }

    /// Enumerates members. Finite families come back exhaustive;
    /// ω-based ones are sampled with complements drawn from
    /// `{0,…,window−1}`.
    pub fn members(&self, window: u64) -> MemberSample {
        const CAP: usize = 20_000;
        match self {
            Family::Explicit(ms) => MemberSample {
                members: ms.iter().cloned().map(Member::Set).collect(),
                exhaustive: true,
            },
            Family::CoSize { alpha: Alpha::Fin(a), m } => {
                let base: Vec<Nat> = (1..=*a).map(Nat::from).collect();
                let mut members = Vec::new();
                for t in exact_subsets(&base, *m as usize) {
                    let compl: BTreeSet<Nat> = t.into_iter().collect();
                    members.push(Member::Set(SetExpr::finite(
                        base.iter().filter(|x| !compl.contains(x)).cloned(),
                    )));
                    if members.len() > CAP {
                        // keep the sample usable but honest
                        return MemberSample { members, exhaustive: false };
                    }
                }
                MemberSample { members, exhaustive: true }
            }
            Family::CoSize { alpha: Alpha::Omega, m } => {
                let base: Vec<Nat> = (0..window).map(Nat::from).collect();
                let members = exact_subsets(&base, *m as usize)
                    .into_iter()
                    .map(|t| Member::Set(SetExpr::cofinite(t)))
                    .take(CAP)
                    .collect();
                MemberSample { members, exhaustive: false }
            }
            Family::Cofinite => {
                let base: Vec<Nat> = (0..window.min(14)).map(Nat::from).collect();
                let members = subsets_up_to(&base, base.len())
                    .into_iter()
                    .map(|t| Member::Set(SetExpr::cofinite(t)))
                    .take(CAP)
                    .collect();
                MemberSample { members, exhaustive: false }
            }
            Family::Join(l, r) => {
                let ls = l.members(window);
                let rs = r.members(window);
                let mut members = Vec::new();
                let mut truncated = false;
                'outer: for a in &ls.members {
                    for b in &rs.members {
                        if members.len() >= CAP {
                            truncated = true;
                            break 'outer;
                        }
                        members.push(Member::product(a.clone(), b.clone()));
                    }
                }
                MemberSample {
                    members,
                    exhaustive: ls.exhaustive && rs.exhaustive && !truncated,
                }
            }
        }
    }

    /// Membership test for a described set.
    pub fn contains_member(&self, m: &Member) -> bool {
        match (self, m) {
            (Family::Explicit(ms), Member::Set(s)) => ms.contains(s),
            (Family::CoSize { alpha: Alpha::Fin(a), m: k }, Member::Set(SetExpr::Finite(s))) => {
                let base: BTreeSet<Nat> = (1..=*a).map(Nat::from).collect();
                s.is_subset(&base) && (base.len() - s.len()) as u64 == *k
            }
            (
                Family::CoSize { alpha: Alpha::Omega, m: k },
                Member::Set(SetExpr::CofiniteIn { complement }),
            ) => complement.len() as u64 == *k,
            (Family::Cofinite, Member::Set(SetExpr::CofiniteIn { .. })) => true,
            (Family::Join(l, r), Member::Product(a, b)) => {
                l.contains_member(a) && r.contains_member(b)
            }
            _ => false,
        }
    }

    /// An element of the intersection of all members, when one exists.
    /// Any co-size family with m ≥ 1 has empty common intersection
    /// (every base element is excluded by some complement), as does ℱ.
    pub fn common_element(&self) -> Option<Nat> {
        match self {
            Family::Explicit(ms) => {
                let full = ms.iter().fold(SetExpr::omega(), |acc, s| acc.intersect(s));
                full.smallest(1).into_iter().next()
            }
            Family::CoSize { .. } | Family::Cofinite => None,
            Family::Join(l, r) => {
                Some(nat::pair(&l.common_element()?, &r.common_element()?))
            }
        }
    }

    /// Does the family contain the empty set (as a member description)?
    pub fn contains_empty_member(&self) -> bool {
        match self {
            Family::Explicit(ms) => ms.iter().any(SetExpr::is_empty),
            Family::CoSize { alpha: Alpha::Fin(a), m } => a == m,
            Family::CoSize { alpha: Alpha::Omega, .. } | Family::Cofinite => false,
            // one empty factor empties the product no matter the other
            Family::Join(l, r) => l.contains_empty_member() || r.contains_empty_member(),
        }
    }

    /// Two disjoint members that are both finite sets, if the family
    /// has them. Analytic for co-size families (possible iff α ≤ 2m,
    /// blocks `{1..m}` and `{m+1..2m}` as complements); searched over
    /// the sampled members otherwise.
    pub fn two_disjoint_finite_members(&self, window: u64) -> Option<(Member, Member)> {
        if let Family::CoSize { alpha: Alpha::Fin(a), m } = self {
            if *a > 2 * m {
                return None;
            }
            let base: Vec<Nat> = (1..=*a).map(Nat::from).collect();
            let c1: BTreeSet<Nat> = (1..=*m).map(Nat::from).collect();
            // the second complement must swallow everything the first
            // spared; pad from the front when {m+1..α} is short of m
            let mut c2: BTreeSet<Nat> = (m + 1..=*a).map(Nat::from).collect();
            let mut fill = 1u64;
            while (c2.len() as u64) < *m {
                c2.insert(Nat::from(fill));
                fill += 1;
            }
            let m1 = Member::Set(SetExpr::finite(
                base.iter().filter(|x| !c1.contains(x)).cloned(),
            ));
            let m2 = Member::Set(SetExpr::finite(
                base.iter().filter(|x| !c2.contains(x)).cloned(),
            ));
            return match m1.intersect(&m2) {
                Some(cut) if cut.is_empty() => Some((m1, m2)),
                _ => None,
            };
        }
        let sample = self.members(window);
        for (i, a) in sample.members.iter().enumerate() {
            if !member_is_finite(a) {
                continue;
            }
            for b in sample.members.iter().skip(i + 1) {
                if !member_is_finite(b) {
                    continue;
                }
                if let Some(cut) = a.intersect(b) {
                    if cut.is_empty() {
                        return Some((a.clone(), b.clone()));
                    }
                }
            }
        }
        None
    }

    /// `n` members with empty intersection, when the depth allows it.
    /// For finite co-size families the witness is the deterministic
    /// block construction: complement `i` covers `{im+1 … im+m}`
    /// (clipped to the base and padded backwards at the end), so `n`
    /// blocks cover `{1..α}` exactly when `nm ≥ α`.
    pub fn empty_intersection_witness(&self, n: u64, window: u64) -> Option<Vec<Member>> {
        if n == 0 {
            return None;
        }
        match self.depth() {
            Depth::Finite(d) if d <= n => {}
            _ => return None,
        }
        match self {
            Family::CoSize { alpha: Alpha::Fin(a), m } => {
                let base: Vec<Nat> = (1..=*a).map(Nat::from).collect();
                let mut out = Vec::new();
                for i in 0..n {
                    let start = (i * m).min(a.saturating_sub(*m));
                    let compl: BTreeSet<Nat> = (start + 1..=start + m).map(Nat::from).collect();
                    out.push(Member::Set(SetExpr::finite(
                        base.iter().filter(|x| !compl.contains(x)).cloned(),
                    )));
                }
                Some(out)
            }
            Family::Explicit(_) => {
                let sample = self.members(window);
                let k = sample.members.len();
                let mut found: Option<Vec<Member>> = None;
                for_each_combination(k, (n as usize).min(k), &mut |idx| {
                    if found.is_some() {
                        return;
                    }
                    let cut = idx.iter().fold(Member::Set(SetExpr::omega()), |acc, &i| {
                        acc.intersect(&sample.members[i]).expect("same shape")
                    });
                    if cut.is_empty() {
                        found = Some(idx.iter().map(|&i| sample.members[i].clone()).collect());
                    }
                });
                // an n-tuple may repeat members, so a shorter empty
                // combination pads by repetition
                let mut ms = found?;
                while (ms.len() as u64) < n {
                    let last = ms.last().expect("nonempty").clone();
                    ms.push(last);
                }
                Some(ms)
            }
            Family::Join(l, r) => {
                // empty products come from one empty side crossed with
                // any fixed member of the other
                let pick = |fam: &Family| -> Option<Member> {
                    fam.members(window).members.into_iter().find(|m| !m.is_empty())
                };
                let (side_ms, fixed, left_side) = match (
                    l.empty_intersection_witness(n, window),
                    r.empty_intersection_witness(n, window),
                ) {
                    (Some(ms), _) => (ms, pick(r)?, true),
                    (None, Some(ms)) => (ms, pick(l)?, false),
                    (None, None) => return None,
                };
                Some(
                    side_ms
                        .into_iter()
                        .map(|m| {
                            if left_side {
                                Member::product(m, fixed.clone())
                            } else {
                                Member::product(fixed.clone(), m)
                            }
                        })
                        .collect(),
                )
            }
            Family::CoSize { alpha: Alpha::Omega, .. } | Family::Cofinite => None,
        }
    }
}

fn member_is_finite(m: &Member) -> bool {
    match m {
        Member::Set(s) => s.is_finite(),
        Member::Product(l, r) => {
            m.is_empty() || (member_is_finite(l) && member_is_finite(r))
        }
    }
}

fn explicit_depth(ms: &[SetExpr]) -> Depth {
    let k = ms.len();
    // the full intersection is the deepest one; nonempty means no
    // subfamily can be empty either
    let full = ms.iter().fold(SetExpr::omega(), |acc, s| acc.intersect(s));
    if !full.is_empty() {
        return Depth::Infinite;
    }
    for n in 1..=k {
        let mut found = false;
        for_each_combination(k, n, &mut |idx| {
            if found {
                return;
            }
            let cut = idx
                .iter()
                .fold(SetExpr::omega(), |acc, &i| acc.intersect(&ms[i]));
            if cut.is_empty() {
                found = true;
            }
        });
        if found {
            return Depth::Finite(n as u64);
        }
    }
    unreachable!("the full intersection was empty, so some n succeeds")
}

/// All subsets of `base` of size ≤ `m`, smallest first.
fn subsets_up_to(base: &[Nat], m: usize) -> Vec<Vec<Nat>> {
    let mut out = Vec::new();
    for size in 0..=m.min(base.len()) {
        for_each_combination(base.len(), size, &mut |idx| {
            out.push(idx.iter().map(|&i| base[i].clone()).collect());
        });
    }
    out
}

/// All subsets of `base` of size exactly `m`, in lexicographic index
/// order (this fixes the deterministic member enumeration order).
fn exact_subsets(base: &[Nat], m: usize) -> Vec<Vec<Nat>> {
    let mut out = Vec::new();
    for_each_combination(base.len(), m, &mut |idx| {
        out.push(idx.iter().map(|&i| base[i].clone()).collect());
    });
    out
}

/// Calls `f` on each size-`k` index combination out of `0..n`.
pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=n.saturating_sub(need) {
            cur.push(i);
            go(n, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k > n {
        return;
    }
    go(n, k, 0, &mut Vec::new(), f);
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(n) => write!(f, "{n}"),
            Depth::Infinite => f.write_str("inf"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Explicit(ms) => {
                f.write_str("E[")?;
                for (i, s) in ms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str("]")
            }
            Family::CoSize { alpha, m } => write!(f, "O^{alpha}_{m}"),
            Family::Cofinite => f.write_str("F"),
            Family::Join(l, r) => write!(f, "odot({l}, {r})"),
        }
    }
}

// ---------------------------------------------------------------- serde

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AlphaWire {
    Word(String),
    Bound(u64),
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Alpha::Fin(a) => ser.serialize_u64(*a),
            Alpha::Omega => ser.serialize_str("omega"),
        }
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Alpha, D::Error> {
        match AlphaWire::deserialize(de)? {
            AlphaWire::Word(w) if w == "omega" => Ok(Alpha::Omega),
            AlphaWire::Word(w) => Err(D::Error::custom(format!(
                "unknown alpha `{w}`; expected \"omega\" or a number"
            ))),
            AlphaWire::Bound(a) => Ok(Alpha::Fin(a)),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FamilyWire {
    Explicit { members: Vec<SetExpr> },
    Cosize { alpha: Alpha, m: u64 },
    Cofinite,
    Odot { left: Box<Family>, right: Box<Family> },
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let wire = match self {
            Family::Explicit(ms) => FamilyWire::Explicit { members: ms.clone() },
            Family::CoSize { alpha, m } => FamilyWire::Cosize { alpha: *alpha, m: *m },
            Family::Cofinite => FamilyWire::Cofinite,
            Family::Join(l, r) => FamilyWire::Odot { left: l.clone(), right: r.clone() },
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Family, D::Error> {
        let fam = match FamilyWire::deserialize(de)? {
            FamilyWire::Explicit { members } => Family::Explicit(members),
            FamilyWire::Cosize { alpha, m } => Family::CoSize { alpha, m },
            FamilyWire::Cofinite => Family::Cofinite,
            FamilyWire::Odot { left, right } => Family::Join(left, right),
        };
        fam.validate().map_err(D::Error::custom)?;
        Ok(fam)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum MemberWire {
    Set { set: SetExpr },
    Product { left: Box<Member>, right: Box<Member> },
}

impl Serialize for Member {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let wire = match self {
            Member::Set(s) => MemberWire::Set { set: s.clone() },
            Member::Product(l, r) => MemberWire::Product { left: l.clone(), right: r.clone() },
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Member {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Member, D::Error> {
        Ok(match MemberWire::deserialize(de)? {
            MemberWire::Set { set } => Member::Set(set),
            MemberWire::Product { left, right } => Member::Product(left, right),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(xs: &[u64]) -> SetExpr {
        SetExpr::finite(xs.iter().copied().map(Nat::from))
    }

    #[test]
    fn cosize_depth_matches_minimal_cover_on_small_grid() {
        // oracle: the smallest number of ≤m-element complements that
        // cover the base, found by exhaustive search over members
        for a in 1u64..=6 {
            for m in 1u64..=a {
                let fam = Family::cosize(Alpha::Fin(a), m);
                let sample = fam.members(0);
                assert!(sample.exhaustive);
                let k = sample.members.len();
                let mut oracle = None;
                'n: for n in 1..=k {
                    let mut hit = false;
                    for_each_combination(k, n, &mut |idx| {
                        if hit {
                            return;
                        }
                        let cut = idx.iter().fold(Member::Set(SetExpr::omega()), |acc, &i| {
                            acc.intersect(&sample.members[i]).unwrap()
                        });
                        if cut.is_empty() {
                            hit = true;
                        }
                    });
                    if hit {
                        oracle = Some(n as u64);
                        break 'n;
                    }
                }
                assert_eq!(
                    fam.depth(),
                    Depth::Finite(oracle.expect("finite base always covers")),
                    "O^{a}_{m}"
                );
                assert_eq!(fam.depth(), Depth::Finite(a.div_ceil(m)));
            }
        }
    }

    #[test]
    fn depth_of_standard_families() {
        assert_eq!(Family::cosize(Alpha::Omega, 1).depth(), Depth::Infinite);
        assert_eq!(Family::Cofinite.depth(), Depth::Infinite);
        assert_eq!(
            Family::explicit([fin(&[0]), fin(&[1])]).depth(),
            Depth::Finite(2)
        );
        assert_eq!(Family::explicit([fin(&[0])]).depth(), Depth::Infinite);
        assert_eq!(Family::explicit([SetExpr::empty()]).depth(), Depth::Finite(1));
    }

    #[test]
    fn join_depth_is_the_minimum_of_the_sides() {
        let a = Family::cosize(Alpha::Fin(3), 1); // depth 3
        let b = Family::cosize(Alpha::Fin(5), 2); // depth 3
        let f = Family::Cofinite; // depth inf
        assert_eq!(Family::join(a.clone(), b.clone()).depth(), Depth::Finite(3));
        assert_eq!(Family::join(a.clone(), f.clone()).depth(), Depth::Finite(3));
        assert_eq!(Family::join(f.clone(), f.clone()).depth(), Depth::Infinite);
        let nn = Family::explicit([fin(&[0]), fin(&[1])]); // depth 2
        assert_eq!(Family::join(a, nn).depth(), Depth::Finite(2));
    }

    #[test]
    fn member_counts_for_finite_cosize() {
        // |O^4_2| = C(4,2) = 6
        let s = Family::cosize(Alpha::Fin(4), 2).members(0);
        assert!(s.exhaustive);
        assert_eq!(s.members.len(), 6);
        for m in &s.members {
            assert!(Family::cosize(Alpha::Fin(4), 2).contains_member(m));
        }
        // a set missing only one base element is not a co-2-ton
        assert!(!Family::cosize(Alpha::Fin(4), 2).contains_member(&Member::Set(fin(&[1, 2, 3]))));
    }

    #[test]
    fn cosize_three_one_lists_the_two_element_sets_over_one_to_three() {
        let s = Family::cosize(Alpha::Fin(3), 1).members(0);
        let got: Vec<SetExpr> = s
            .members
            .iter()
            .map(|m| match m {
                Member::Set(s) => s.clone(),
                _ => panic!("no products here"),
            })
            .collect();
        let want = [fin(&[2, 3]), fin(&[1, 3]), fin(&[1, 2])];
        assert_eq!(got.len(), 3);
        for w in &want {
            assert!(got.contains(w), "missing {w}");
        }
    }

    #[test]
    fn omega_families_sample_cofinite_members() {
        let s = Family::cosize(Alpha::Omega, 2).members(4);
        assert!(!s.exhaustive);
        assert_eq!(s.members.len(), 6); // C(4,2) complements within the window
        for m in &s.members {
            assert!(matches!(m, Member::Set(SetExpr::CofiniteIn { .. })));
            assert!(Family::cosize(Alpha::Omega, 2).contains_member(m));
        }
        // a co-2 set is not a co-1 set
        assert!(!Family::cosize(Alpha::Omega, 1)
            .contains_member(&Member::Set(SetExpr::cofinite([Nat::from(0u64), Nat::from(1u64)]))));
    }

    #[test]
    fn classification_helpers_follow_the_set_algebra() {
        // common element: explicit families only when all members meet
        assert_eq!(
            Family::explicit([fin(&[1, 2]), fin(&[2, 3])]).common_element(),
            Some(Nat::from(2u64))
        );
        assert_eq!(Family::cosize(Alpha::Fin(5), 2).common_element(), None);
        assert_eq!(Family::Cofinite.common_element(), None);
        let j = Family::join(
            Family::explicit([fin(&[4])]),
            Family::explicit([fin(&[7, 9]), fin(&[7])]),
        );
        assert_eq!(
            j.common_element(),
            Some(nat::pair(&Nat::from(4u64), &Nat::from(7u64)))
        );

        // empty member: O^α_α is {∅}
        assert!(Family::cosize(Alpha::Fin(3), 3).contains_empty_member());
        assert!(!Family::cosize(Alpha::Fin(4), 3).contains_empty_member());
        assert!(!Family::Cofinite.contains_empty_member());

        // disjoint finite pairs: O^α_m has them iff α ≤ 2m
        assert!(Family::cosize(Alpha::Fin(4), 2).two_disjoint_finite_members(0).is_some());
        assert!(Family::cosize(Alpha::Fin(5), 2).two_disjoint_finite_members(0).is_none());
        assert!(Family::cosize(Alpha::Fin(5), 3).two_disjoint_finite_members(0).is_some());
        let (a, b) = Family::explicit([fin(&[0]), fin(&[1])])
            .two_disjoint_finite_members(0)
            .expect("disjoint singletons");
        assert!(a.intersect(&b).unwrap().is_empty());
        // cofinite members are never finite
        assert!(Family::Cofinite.two_disjoint_finite_members(6).is_none());
    }

    #[test]
    fn empty_intersection_witnesses_check_out() {
        // O^7_3 at its depth ⌈7/3⌉ = 3
        let fam = Family::cosize(Alpha::Fin(7), 3);
        let w = fam.empty_intersection_witness(3, 0).expect("depth 3");
        assert_eq!(w.len(), 3);
        let cut = w
            .iter()
            .fold(Member::Set(SetExpr::omega()), |acc, m| acc.intersect(m).unwrap());
        assert!(cut.is_empty());
        for m in &w {
            assert!(fam.contains_member(m), "{m} should be a co-3-ton of 7");
        }
        // below the depth there is nothing to find
        assert!(fam.empty_intersection_witness(2, 0).is_none());

        // a join inherits the witness from its shallow side
        let j = Family::join(Family::cosize(Alpha::Fin(3), 1), Family::Cofinite);
        let w = j.empty_intersection_witness(3, 6).expect("left depth 3");
        assert_eq!(w.len(), 3);
        let cut = w[1..]
            .iter()
            .fold(w[0].clone(), |acc, m| acc.intersect(m).unwrap());
        assert!(cut.is_empty());
        for m in &w {
            assert!(j.contains_member(m));
        }
        assert!(Family::Cofinite.empty_intersection_witness(5, 8).is_none());
    }

    #[test]
    fn product_members_pair_their_sides() {
        let j = Family::join(
            Family::explicit([fin(&[1, 2])]),
            Family::explicit([fin(&[0, 3])]),
        );
        let s = j.members(0);
        assert!(s.exhaustive);
        assert_eq!(s.members.len(), 1);
        let m = &s.members[0];
        assert!(m.contains(&nat::pair(&Nat::from(1u64), &Nat::from(3u64))));
        assert!(!m.contains(&nat::pair(&Nat::from(0u64), &Nat::from(3u64))));
        assert!(j.contains_member(m));
        // smallest elements are genuine pair codes
        for x in m.smallest(4) {
            assert!(m.contains(&x));
        }
    }

    #[test]
    fn family_json_roundtrip() {
        let cases = [
            Family::cosize(Alpha::Fin(7), 3),
            Family::cosize(Alpha::Omega, 1),
            Family::Cofinite,
            Family::explicit([fin(&[0]), SetExpr::cofinite([Nat::from(2u64)])]),
            Family::join(Family::cosize(Alpha::Fin(3), 1), Family::Cofinite),
        ];
        for fam in cases {
            let js = serde_json::to_string(&fam).unwrap();
            let back: Family = serde_json::from_str(&js).unwrap();
            assert_eq!(back, fam, "{js}");
        }
        let err = serde_json::from_str::<Family>(r#"{"kind":"cosize","alpha":5,"m":0}"#);
        assert!(err.is_err());
    }

    #[test]
    fn member_json_roundtrip() {
        let m = Member::product(
            Member::Set(fin(&[1, 2])),
            Member::Set(SetExpr::cofinite([Nat::from(0u64)])),
        );
        let js = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<Member>(&js).unwrap(), m);
    }
}
