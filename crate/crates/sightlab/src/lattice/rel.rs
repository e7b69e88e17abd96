//! The two preorders on families: the member-to-member reduction
//! `[𝒜 ≤ ℬ] = {k | ∀A∈𝒜 ∃B∈ℬ (k : B → A)}` and the sight-based
//! `≤_L`, verified through dedicated sights and semi-decided by a
//! bounded AND-OR search.
//!
//! The search works over *recipes*: finite trees whose leaves name an
//! answer and whose interior nodes name a branch label together with
//! one child per queried element. A recipe compiles to a labeler `w`
//! on path sequences (the recipe data is embedded in the program
//! once, so witness codes stay linear in recipe size), and the
//! uniform witness is `z = G·w` via the supporting-to-dedicated
//! translation. Verification never looks at the recipe: it replays
//! the dedication clauses against `z` itself.

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::family::{Family, Member};
use crate::lattice::cert::{Certificate, IndexedEntry, LeqWitness, SightFor};
use crate::nat::{self, Nat};
use crate::pca::ob::{fst_t, ite_zero, lam, lam3, pair_t, seq_len_t, seq_tail, snd_t, var};
use crate::pca::{app, app2, apply, arrow_check, index_of, Budget, Index, Outcome, Term};
use crate::sets::SetExpr;
use crate::sight::gen::{assoc_term, cell};
use crate::sight::{is_dedicated, sup_to_ded, CheckCfg, Sight, Theta};
use crate::verdict::{Resource, Verdict};

/// Elements of a member, flagged exhaustive when the whole set is
/// listed. Infinite sets contribute their `cap` smallest elements.
pub fn member_elems(m: &Member, cap: usize) -> (Vec<Nat>, bool) {
    match m {
        Member::Set(s) => match s {
            SetExpr::Finite(elems) => {
                if elems.len() <= cap {
                    (elems.iter().cloned().collect(), true)
                } else {
                    (elems.iter().take(cap).cloned().collect(), false)
                }
            }
            SetExpr::CofiniteIn { .. } => (s.smallest(cap), false),
        },
        Member::Product(l, r) => {
            if m.is_empty() {
                return (Vec::new(), true);
            }
            let (le, lex) = member_elems(l, cap);
            let (re, rex) = member_elems(r, cap);
            let mut out: Vec<Nat> = le
                .iter()
                .flat_map(|a| re.iter().map(move |b| nat::pair(a, b)))
                .collect();
            out.sort();
            let full = lex && rex && out.len() <= cap;
            out.truncate(cap);
            (out, full)
        }
    }
}

/// Sort key for target-side enumeration: finite members by size then
/// elements, infinite ones after, by the recorded complement.
pub(crate) fn member_key(m: &Member) -> (u8, usize, String) {
    fn finite(m: &Member) -> bool {
        match m {
            Member::Set(s) => s.is_finite(),
            Member::Product(l, r) => (finite(l) && finite(r)) || m.is_empty(),
        }
    }
    if finite(m) {
        let (elems, _) = member_elems(m, 4096);
        (0, elems.len(), format!("{m}"))
    } else {
        (1, 0, format!("{m}"))
    }
}

/// Checks `k ∈ [𝒜 ≤ ℬ]`: for every member `A` of the source there
/// must be a member `B` of the target with `k·b ∈ A` for all `b ∈ B`.
/// Target members are tried in ascending size order. Sampled
/// enumerations (ω-based families) can refute but never affirm: when
/// everything sampled passes without an exhaustive witness, the
/// verdict is Unknown rather than Holds.
#[allow(non_snake_case)]
pub fn leq_M_verify(k: &Index, a: &Family, b: &Family, budget: Budget, window: u64) -> Verdict {
    let src = a.members(window);
    let mut tgt = b.members(window);
    tgt.members.sort_by_cached_key(member_key);

    let mut sampled_only = false;
    for big_a in &src.members {
        let mut matched = false;
        let mut partial = false;
        for big_b in &tgt.members {
            let (elems, exhaustive) = member_elems(big_b, window as usize);
            match arrow_check(k, elems.iter(), |y| big_a.contains(y), budget) {
                Verdict::Holds if exhaustive => {
                    matched = true;
                    break;
                }
                Verdict::Holds => partial = true,
                Verdict::Fails(_) => {}
                Verdict::Unknown(_) => partial = true,
            }
        }
        if !matched {
            if partial || !tgt.exhaustive {
                sampled_only = true;
            } else {
                return Verdict::fails(format!("no member of the target maps into {big_a}"));
            }
        }
    }
    if sampled_only {
        return Verdict::unknown(
            Resource::Window,
            "some matches rest on sampled enumerations only",
        );
    }
    if !src.exhaustive {
        return Verdict::unknown(Resource::Window, "source members were sampled");
    }
    Verdict::Holds
}

/// What a `≤_L` certificate is measured against: a single source
/// family (uniform witness) or a finite assignment ζ of families
/// (one witness value per index).
#[derive(Debug, Clone, Copy)]
pub enum LeqLSource<'a> {
    Family(&'a Family),
    Assignment(&'a Theta),
}

/// Replays a `≤_L` witness: every recorded sight must be
/// `(z, θ, A)`-dedicated for its member `A`. When the source
/// enumerates exhaustively, every member must also be covered by a
/// recorded sight; sampled sources are verified entry by entry.
#[allow(non_snake_case)]
pub fn leq_L_verify(
    witness: &LeqWitness,
    source: LeqLSource<'_>,
    theta: &Theta,
    cfg: &CheckCfg,
    window: u64,
) -> Verdict {
    match (witness, source) {
        (LeqWitness::Uniform { z, sights }, LeqLSource::Family(fam)) => {
            verify_block(z, sights, fam, theta, cfg, window)
        }
        (LeqWitness::Indexed { entries }, LeqLSource::Assignment(zeta)) => {
            let Theta::Table(map) = zeta else {
                return Verdict::fails("indexed witnesses need a finite assignment as source");
            };
            for entry in entries {
                if !map.contains_key(&entry.n) {
                    return Verdict::fails(format!(
                        "witness block for {} lies outside the assignment domain",
                        entry.n
                    ));
                }
            }
            let mut verdicts = Vec::new();
            for (n, fam) in map {
                let Some(IndexedEntry { z, sights, .. }) =
                    entries.iter().find(|e| e.n == *n)
                else {
                    return Verdict::fails(format!("no witness block for index {n}"));
                };
                verdicts.push(verify_block(z, sights, fam, theta, cfg, window));
            }
            Verdict::all(verdicts)
        }
        (LeqWitness::Uniform { .. }, LeqLSource::Assignment(_)) => {
            Verdict::fails("uniform witness offered for an indexed source")
        }
        (LeqWitness::Indexed { .. }, LeqLSource::Family(_)) => {
            Verdict::fails("indexed witness offered for a single-family source")
        }
    }
}

fn verify_block(
    z: &Nat,
    sights: &[SightFor],
    fam: &Family,
    theta: &Theta,
    cfg: &CheckCfg,
    window: u64,
) -> Verdict {
    let sample = fam.members(window);
    let mut verdicts = Vec::new();
    for sf in sights {
        if !fam.contains_member(&sf.member) {
            return Verdict::fails(format!("{} is not a member of the source", sf.member));
        }
        verdicts.push(is_dedicated(z, theta, &sf.member, &sf.sight, cfg));
    }
    if sample.exhaustive {
        for m in &sample.members {
            if !sights.iter().any(|sf| sf.member == *m) {
                return Verdict::fails(format!("no sight recorded for member {m}"));
            }
        }
    } else if sights.is_empty() {
        return Verdict::fails("no sights recorded for a sampled source");
    }
    Verdict::all(verdicts)
}

// -- bounded witness search ---------------------------------------------

/// Knobs for [`leq_L_search`].
#[derive(Debug, Clone)]
pub struct SearchCfg {
    /// Maximum number of branch layers; a bare leaf answer is depth 0.
    pub depth: u64,
    /// Enumeration window for members and elements.
    pub window: u64,
    /// Leaf answers to try; defaults to a slice of the targets'
    /// elements when absent.
    pub universe: Option<Vec<Nat>>,
    /// Step budget used when assembling the final witness.
    pub budget: Budget,
}

impl Default for SearchCfg {
    fn default() -> SearchCfg {
        SearchCfg {
            depth: 4,
            window: crate::lattice::DEFAULT_WINDOW,
            universe: None,
            budget: Budget::default(),
        }
    }
}

/// Outcome of a bounded search: a certificate when one was found,
/// and whether the bounded space was explored completely (so an
/// empty answer is definitive for these bounds).
#[derive(Debug)]
pub struct SearchReport {
    pub certificate: Option<Certificate>,
    pub complete: bool,
    pub notes: Vec<String>,
}

/// One explored subtree shape, shared between targets. `outs`
/// records, per target index, the out-set that target follows at
/// this node.
#[derive(Debug)]
enum Recipe {
    Leaf(Nat),
    Branch {
        n: Nat,
        outs: BTreeMap<usize, SetExpr>,
        kids: BTreeMap<Nat, Rc<Recipe>>,
    },
}

/// Antichain caps: levels keep at most this many incomparable masks,
/// and one branch label tries at most this many child assignments.
const LEVEL_CAP: usize = 12;
const ASSIGN_CAP: u64 = 100_000;

/// Searches for a uniform `≤_L` witness for `𝒜 ≤_L G_θ` within the
/// stated bounds: a labeler on sequences is grown level by level
/// (AND over the elements of a chosen out-set, OR over out-sets and
/// labels), and a found labeling is compiled into `z = G·w` plus one
/// dedicated sight per member. Returned certificates are meant to be
/// replayed through [`leq_L_verify`]; the search itself never claims
/// more than "this certificate exists".
#[allow(non_snake_case)]
pub fn leq_L_search(a: &Family, theta: &Theta, cfg: &SearchCfg) -> SearchReport {
    let mut notes = Vec::new();
    let mut complete = true;

    let targets = a.members(cfg.window);
    if !targets.exhaustive {
        notes.push("source family does not enumerate exhaustively; giving up".into());
        return SearchReport {
            certificate: None,
            complete: false,
            notes,
        };
    }
    let t = targets.members.len();
    if t == 0 || t > 16 {
        notes.push(format!("{t} members is outside the supported range 1..=16"));
        return SearchReport {
            certificate: None,
            complete: false,
            notes,
        };
    }
    let full: u32 = if t == 32 { u32::MAX } else { (1u32 << t) - 1 };

    // usable branch labels with their finite out-set options
    let mut labels: Vec<(Nat, Vec<(SetExpr, Vec<Nat>)>)> = Vec::new();
    let mut load_label = |n: Nat, fam: &Family| {
        let sample = fam.members(cfg.window);
        if !sample.exhaustive {
            notes.push(format!("θ({n}) does not enumerate exhaustively; label skipped"));
            complete = false;
            return;
        }
        let mut options = Vec::new();
        for m in sample.members {
            match m {
                Member::Set(s @ SetExpr::Finite(_)) => {
                    let elems = s.smallest(usize::MAX / 2);
                    options.push((s, elems));
                }
                other => {
                    notes.push(format!(
                        "θ({n}) member {other} is not a finite set; option skipped"
                    ));
                    complete = false;
                }
            }
        }
        options.sort_by(|(_, e1), (_, e2)| (e1.len(), e1).cmp(&(e2.len(), e2)));
        if !options.is_empty() {
            labels.push((n, options));
        }
    };
    match theta {
        Theta::Table(map) => {
            for (n, fam) in map {
                load_label(n.clone(), fam);
            }
        }
        // every index is interchangeable under a constant assignment
        Theta::Constant(fam) => load_label(Nat::ZERO, fam),
    }

    let universe: Vec<Nat> = match &cfg.universe {
        Some(u) => {
            let mut u = u.clone();
            u.sort();
            u.dedup();
            u
        }
        None => {
            let mut u: Vec<Nat> = targets
                .members
                .iter()
                .flat_map(|m| member_elems(m, 8).0)
                .collect();
            u.push(Nat::ZERO);
            u.sort();
            u.dedup();
            if u.len() > 64 {
                notes.push("default leaf universe truncated to 64 answers".into());
                complete = false;
                u.truncate(64);
            }
            u
        }
    };

    // level 0: leaves only
    let mut level: Vec<(u32, Rc<Recipe>)> = Vec::new();
    for y in &universe {
        let mut mask = 0u32;
        for (i, m) in targets.members.iter().enumerate() {
            if m.contains(y) {
                mask |= 1 << i;
            }
        }
        if mask != 0 {
            insert_antichain(&mut level, mask, Rc::new(Recipe::Leaf(y.clone())), &mut || {
                complete = false;
            });
        }
    }

    let mut winner = level.iter().find(|(m, _)| *m == full).map(|(_, r)| r.clone());
    let mut d = 1;
    while winner.is_none() && d <= cfg.depth {
        let mut next = level.clone();
        for (n, options) in &labels {
            grow_label(
                n,
                options,
                &level,
                &targets.members,
                &mut next,
                &mut notes,
                &mut complete,
            );
        }
        winner = next.iter().find(|(m, _)| *m == full).map(|(_, r)| r.clone());
        let saturated = next.len() == level.len()
            && next.iter().zip(&level).all(|((m1, _), (m2, _))| m1 == m2);
        level = next;
        if saturated {
            break;
        }
        d += 1;
    }

    let Some(recipe) = winner else {
        return SearchReport {
            certificate: None,
            complete,
            notes,
        };
    };

    // compile the recipe into z = G·w and per-member sights
    let w = labeler_index(&recipe);
    let z = match apply(sup_to_ded().nat(), w.nat(), cfg.budget) {
        Outcome::Value(z) => z,
        other => {
            notes.push(format!("witness assembly did not converge: {other:?}"));
            return SearchReport {
                certificate: None,
                complete: false,
                notes,
            };
        }
    };
    let sights = targets
        .members
        .iter()
        .enumerate()
        .map(|(i, m)| SightFor {
            member: m.clone(),
            sight: sight_of(&recipe, i),
        })
        .collect();
    SearchReport {
        certificate: Some(Certificate::Leq {
            witness: LeqWitness::Uniform { z, sights },
            budget: cfg.budget.max_steps,
        }),
        complete,
        notes,
    }
}

/// Keeps only maximal masks; ties keep the earliest recipe so the
/// search is deterministic.
fn insert_antichain(
    level: &mut Vec<(u32, Rc<Recipe>)>,
    mask: u32,
    recipe: Rc<Recipe>,
    on_drop: &mut impl FnMut(),
) {
    if level.iter().any(|(m, _)| m & mask == mask) {
        return;
    }
    level.retain(|(m, _)| m & mask != *m);
    if level.len() >= LEVEL_CAP {
        on_drop();
        return;
    }
    level.push((mask, recipe));
}

/// Tries every assignment of previously-achieved subtrees to the
/// children of one branch label and records the masks that come out.
fn grow_label(
    n: &Nat,
    options: &[(SetExpr, Vec<Nat>)],
    level: &[(u32, Rc<Recipe>)],
    targets: &[Member],
    next: &mut Vec<(u32, Rc<Recipe>)>,
    notes: &mut Vec<String>,
    complete: &mut bool,
) {
    // an empty out-set asks nothing of its children
    if let Some((s, _)) = options.iter().find(|(_, elems)| elems.is_empty()) {
        let full = (1u32 << targets.len()) - 1;
        let outs = (0..targets.len()).map(|i| (i, s.clone())).collect();
        insert_antichain(
            next,
            full,
            Rc::new(Recipe::Branch {
                n: n.clone(),
                outs,
                kids: BTreeMap::new(),
            }),
            &mut || *complete = false,
        );
        return;
    }
    if level.is_empty() {
        return;
    }

    let mut children: Vec<Nat> = options.iter().flat_map(|(_, e)| e.iter().cloned()).collect();
    children.sort();
    children.dedup();

    let combos = (level.len() as u64).checked_pow(children.len() as u32);
    match combos {
        Some(c) if c <= ASSIGN_CAP => {}
        _ => {
            notes.push(format!(
                "label {n}: {} assignments over {} children exceed the cap",
                level.len(),
                children.len()
            ));
            *complete = false;
            return;
        }
    }

    let k = level.len();
    let mut pick = vec![0usize; children.len()];
    loop {
        // per-target success under this assignment
        let mut mask = 0u32;
        let mut outs = BTreeMap::new();
        for (i, _) in targets.iter().enumerate() {
            let won = options.iter().find(|(_, elems)| {
                elems.iter().all(|a| {
                    let j = children.binary_search(a).expect("child of an option");
                    level[pick[j]].0 & (1 << i) != 0
                })
            });
            if let Some((s, _)) = won {
                mask |= 1 << i;
                outs.insert(i, s.clone());
            }
        }
        if mask != 0 {
            let used: std::collections::BTreeSet<&Nat> = outs
                .values()
                .flat_map(|s| {
                    options
                        .iter()
                        .find(|(o, _)| o == s)
                        .map(|(_, e)| e.iter())
                        .expect("out came from options")
                })
                .collect();
            let kids = children
                .iter()
                .enumerate()
                .filter(|(_, a)| used.contains(a))
                .map(|(j, a)| (a.clone(), level[pick[j]].1.clone()))
                .collect();
            insert_antichain(
                next,
                mask,
                Rc::new(Recipe::Branch {
                    n: n.clone(),
                    outs,
                    kids,
                }),
                &mut || *complete = false,
            );
        }
        // odometer over assignments
        let mut j = 0;
        loop {
            if j == pick.len() {
                return;
            }
            pick[j] += 1;
            if pick[j] < k {
                break;
            }
            pick[j] = 0;
            j += 1;
        }
    }
}

/// Serializes a recipe for the object-level walker: a leaf is
/// `⟨0,y⟩`, a branch is `⟨1,⟨n, entries⟩⟩` with an assoc list from
/// elements to child data.
fn recipe_data(r: &Recipe) -> Nat {
    match r {
        Recipe::Leaf(y) => nat::pair(&Nat::ZERO, y),
        Recipe::Branch { n, kids, .. } => {
            let mut entries = Nat::ZERO;
            for (a, child) in kids.iter().rev() {
                entries = cell(&nat::pair(a, &recipe_data(child)), &entries);
            }
            nat::pair(&Nat::ONE, &nat::pair(n, &entries))
        }
    }
}

/// The labeler `w`: walks the recipe along the path `s` and answers
/// `⟨0,y⟩` at leaves and `⟨1,n⟩` at branches. Off-recipe paths
/// answer `⟨0,0⟩`; dedication replay never visits them.
fn labeler_index(r: &Recipe) -> Index {
    let head = |s: Term| fst_t(snd_t(s));
    let walk = fix_term_walk(head);
    let data = Term::num(recipe_data(r));
    index_of(&lam("s", app2(walk, data, var("s"))))
}

fn fix_term_walk(head: impl Fn(Term) -> Term) -> Term {
    use crate::pca::ob::fix_term;
    fix_term(lam3(
        "go",
        "d",
        "s",
        ite_zero(
            seq_len_t(var("s")),
            // end of the path: emit this node's label
            ite_zero(
                fst_t(var("d")),
                var("d"),
                "_t",
                pair_t(Term::num(1u64), fst_t(snd_t(var("d")))),
            ),
            "_l",
            // still walking: descend through the assoc list
            ite_zero(
                fst_t(var("d")),
                var("d"),
                "_t",
                app2(
                    var("go"),
                    app2(assoc_term(), snd_t(snd_t(var("d"))), head(var("s"))),
                    app(seq_tail(), var("s")),
                ),
            ),
        ),
    ))
}

/// The sight target `i` follows through a recipe: its out-set at
/// every branch, with explicit children for the out-set's elements.
fn sight_of(r: &Recipe, i: usize) -> Sight {
    match r {
        Recipe::Leaf(_) => Sight::Nil,
        Recipe::Branch { outs, kids, .. } => {
            let out = outs
                .get(&i)
                .expect("winning mask covers this target")
                .clone();
            let children: Vec<(Nat, Sight)> = out
                .smallest(usize::MAX / 2)
                .into_iter()
                .map(|a| {
                    let child = kids.get(&a).expect("options' elements have kids");
                    (a.clone(), sight_of(child, i))
                })
                .collect();
            Sight::node(out, children, None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Alpha;
    use crate::lattice::{identity_index, make_cosize, make_explicit, rho_family};
    use crate::pca::ob::pair_t as pt;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn fin(elems: &[u64]) -> SetExpr {
        SetExpr::finite(elems.iter().copied().map(Nat::from))
    }

    #[test]
    fn identity_restricts_cotons_to_a_smaller_base() {
        // members over {1..5} contain members over {1..3} pointwise
        let id = identity_index();
        let big = make_cosize(Alpha::Fin(5), 1).unwrap();
        let small = make_cosize(Alpha::Fin(3), 1).unwrap();
        assert!(leq_M_verify(&id, &big, &small, Budget::default(), 8).is_holds());
        // and not the other way: no member over {1..5} fits in {2,3}
        assert!(leq_M_verify(&id, &small, &big, Budget::default(), 8).is_fails());
    }

    #[test]
    fn identity_links_consecutive_complement_sizes() {
        let id = identity_index();
        let m2 = make_cosize(Alpha::Fin(5), 2).unwrap();
        let m3 = make_cosize(Alpha::Fin(5), 3).unwrap();
        assert!(leq_M_verify(&id, &m2, &m3, Budget::default(), 8).is_holds());
    }

    #[test]
    fn mapping_failure_names_the_unmatched_member() {
        let id = identity_index();
        let a = make_explicit([fin(&[0])]).unwrap();
        let b = make_explicit([fin(&[1])]).unwrap();
        match leq_M_verify(&id, &a, &b, Budget::default(), 8) {
            Verdict::Fails(c) => assert!(c.description.contains("{0}")),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn projection_witnesses_the_join_upper_bound() {
        // fst: A∧B → A for the matching A, so 𝒜 ≤ 𝒜⊙ℬ
        let a = make_cosize(Alpha::Fin(3), 1).unwrap();
        let b = make_explicit([fin(&[1, 2]), fin(&[2, 3])]).unwrap();
        let j = crate::lattice::odot(&a, &b);
        let fst = index_of(&Term::Prim(crate::pca::Prim::Fst));
        assert!(leq_M_verify(&fst, &a, &j, Budget::default(), 8).is_holds());
        let snd = index_of(&Term::Prim(crate::pca::Prim::Snd));
        assert!(leq_M_verify(&snd, &b, &j, Budget::default(), 8).is_holds());
    }

    #[test]
    fn pairing_with_a_common_element_collapses_the_join() {
        // every member of b contains 2, so λx.⟨x,2⟩ : A → A∧B
        // uniformly and the join sinks back below 𝒜
        let a = make_cosize(Alpha::Fin(3), 1).unwrap();
        let b = make_explicit([fin(&[1, 2]), fin(&[2, 3])]).unwrap();
        let j = crate::lattice::odot(&a, &b);
        let k = index_of(&lam("x", pt(var("x"), Term::num(2u64))));
        assert!(leq_M_verify(&k, &j, &a, Budget::default(), 8).is_holds());
    }

    #[test]
    fn swap_realizer_witnesses_join_symmetry() {
        let a = make_cosize(Alpha::Fin(3), 1).unwrap();
        let b = make_explicit([fin(&[1, 2]), fin(&[2, 3])]).unwrap();
        let ab = crate::lattice::odot(&a, &b);
        let ba = crate::lattice::odot(&b, &a);
        let swap = index_of(&lam(
            "x",
            pt(snd_t(var("x")), fst_t(var("x"))),
        ));
        assert!(leq_M_verify(&swap, &ab, &ba, Budget::default(), 8).is_holds());
        assert!(leq_M_verify(&swap, &ba, &ab, Budget::default(), 8).is_holds());
    }

    #[test]
    fn member_elems_lists_products_exhaustively() {
        let m = Member::product(
            Member::set(fin(&[1, 2])),
            Member::set(fin(&[0])),
        );
        let (elems, exhaustive) = member_elems(&m, 16);
        assert!(exhaustive);
        assert_eq!(elems.len(), 2);
        assert!(elems.contains(&nat::pair(&n(1), &n(0))));
    }

    #[test]
    fn trivial_leaf_witness_verifies_against_any_assignment() {
        // z = ⟨0,2⟩ with NIL sights: 2 lies in every member
        let fam = make_explicit([fin(&[1, 2]), fin(&[2, 3])]).unwrap();
        let theta = Theta::single(make_cosize(Alpha::Fin(3), 1).unwrap());
        let sights = fam
            .members(8)
            .members
            .into_iter()
            .map(|member| SightFor {
                member,
                sight: Sight::Nil,
            })
            .collect();
        let w = LeqWitness::Uniform {
            z: nat::pair(&n(0), &n(2)),
            sights,
        };
        let v = leq_L_verify(
            &w,
            LeqLSource::Family(&fam),
            &theta,
            &CheckCfg::default(),
            8,
        );
        assert!(v.is_holds(), "{v:?}");
    }

    #[test]
    fn verification_rejects_missing_and_corrupted_sights() {
        // members conflict outside the universe, so the witness must
        // branch and the two sights differ
        let fam = make_explicit([fin(&[0, 2]), fin(&[1, 2])]).unwrap();
        let theta = Theta::constant(make_explicit([fin(&[0]), fin(&[1])]).unwrap());
        let report = leq_L_search(
            &fam,
            &theta,
            &SearchCfg {
                universe: Some(vec![n(0), n(1)]),
                ..SearchCfg::default()
            },
        );
        let cert = report.certificate.expect("branching witness");
        let Certificate::Leq {
            witness: LeqWitness::Uniform { z, sights },
            ..
        } = cert
        else {
            panic!("uniform witness expected")
        };
        // dropping one member's sight breaks coverage
        let dropped = LeqWitness::Uniform {
            z: z.clone(),
            sights: sights[..1].to_vec(),
        };
        assert!(leq_L_verify(
            &dropped,
            LeqLSource::Family(&fam),
            &theta,
            &CheckCfg::default(),
            8,
        )
        .is_fails());
        // swapping the two sights misdirects the dedication clauses
        let swapped = LeqWitness::Uniform {
            z,
            sights: vec![
                SightFor {
                    member: sights[0].member.clone(),
                    sight: sights[1].sight.clone(),
                },
                SightFor {
                    member: sights[1].member.clone(),
                    sight: sights[0].sight.clone(),
                },
            ],
        };
        assert!(leq_L_verify(
            &swapped,
            LeqLSource::Family(&fam),
            &theta,
            &CheckCfg::default(),
            8,
        )
        .is_fails());
    }

    #[test]
    fn search_finds_the_reflexive_style_witness() {
        let fam = make_cosize(Alpha::Fin(3), 1).unwrap();
        let theta = Theta::constant(fam.clone());
        let report = leq_L_search(
            &fam,
            &theta,
            &SearchCfg {
                depth: 1,
                ..SearchCfg::default()
            },
        );
        let cert = report.certificate.expect("depth-1 witness");
        let Certificate::Leq { witness, .. } = &cert else {
            panic!("leq certificate expected")
        };
        let v = leq_L_verify(
            witness,
            LeqLSource::Family(&fam),
            &theta,
            &CheckCfg::default(),
            8,
        );
        assert!(v.is_holds(), "{v:?}");
    }

    #[test]
    fn search_splits_conflicting_members_over_singleton_outs() {
        // θ offers {0} and {1}; with the shared element barred from
        // the leaf universe, the witness must branch once and let the
        // leaves answer the element itself
        let src = make_explicit([fin(&[0, 2]), fin(&[1, 2])]).unwrap();
        let theta = Theta::constant(make_explicit([fin(&[0]), fin(&[1])]).unwrap());
        let cfg = SearchCfg {
            universe: Some(vec![n(0), n(1)]),
            ..SearchCfg::default()
        };
        let report = leq_L_search(&src, &theta, &cfg);
        let cert = report.certificate.expect("one-branch witness");
        let Certificate::Leq { witness, .. } = &cert else {
            panic!("leq certificate expected")
        };
        assert!(leq_L_verify(
            witness,
            LeqLSource::Family(&src),
            &theta,
            &CheckCfg::default(),
            8,
        )
        .is_holds());
        // shape check: each member follows a singleton out-set
        let LeqWitness::Uniform { sights, .. } = witness else {
            panic!("uniform witness expected")
        };
        for sf in sights {
            match &sf.sight {
                Sight::Node(node) => assert_eq!(node.out.len(), Some(1)),
                Sight::Nil => panic!("expected a branch"),
            }
        }
    }

    #[test]
    fn leaf_witness_wins_when_members_share_an_element() {
        let src = make_explicit([fin(&[0, 1])]).unwrap();
        let theta = Theta::constant(make_explicit([fin(&[0]), fin(&[1])]).unwrap());
        let report = leq_L_search(&src, &theta, &SearchCfg::default());
        let cert = report.certificate.expect("leaf witness");
        let Certificate::Leq {
            witness: LeqWitness::Uniform { sights, .. },
            ..
        } = &cert
        else {
            panic!("uniform witness expected")
        };
        assert!(sights.iter().all(|sf| sf.sight.is_nil()));
    }

    #[test]
    fn search_respects_the_intersection_obstruction() {
        // {{0},{1}} lacks the 2-intersection property while every
        // ρ-value is a singleton family: no witness can exist
        let src = make_explicit([fin(&[0]), fin(&[1])]).unwrap();
        let zeta = rho_family([(n(0), false), (n(1), true)]);
        let report = leq_L_search(&src, &zeta, &SearchCfg { depth: 2, ..SearchCfg::default() });
        assert!(report.certificate.is_none());
        assert!(report.complete, "finite space must be swept: {:?}", report.notes);
    }

    #[test]
    fn indexed_witnesses_verify_per_index() {
        // ζ(n) = {{n}}: the constant-leaf block z_n = ⟨0, bit⟩ works
        let zeta = rho_family([(n(0), true), (n(1), false)]);
        let theta = Theta::constant(make_explicit([fin(&[0]), fin(&[1])]).unwrap());
        let entries = vec![
            IndexedEntry {
                n: n(0),
                z: nat::pair(&n(0), &n(1)),
                sights: vec![SightFor {
                    member: Member::set(fin(&[1])),
                    sight: Sight::Nil,
                }],
            },
            IndexedEntry {
                n: n(1),
                z: nat::pair(&n(0), &n(0)),
                sights: vec![SightFor {
                    member: Member::set(fin(&[0])),
                    sight: Sight::Nil,
                }],
            },
        ];
        let w = LeqWitness::Indexed { entries };
        assert!(leq_L_verify(
            &w,
            LeqLSource::Assignment(&zeta),
            &theta,
            &CheckCfg::default(),
            8,
        )
        .is_holds());
        // a block for an index outside dom ζ is rejected
        let stray = LeqWitness::Indexed {
            entries: vec![IndexedEntry {
                n: n(7),
                z: n(0),
                sights: vec![],
            }],
        };
        assert!(leq_L_verify(
            &stray,
            LeqLSource::Assignment(&zeta),
            &theta,
            &CheckCfg::default(),
            8,
        )
        .is_fails());
    }

}
