//! Seeded generation of finite dedicated instances.
//!
//! The generator builds the sight and the witness together, so the
//! instance is dedicated by construction: every interior layer picks a
//! branch label and an out-set from the θ table, and the witness
//! mirrors the tree. Checkers are then exercised against instances
//! whose expected verdict is known without trusting the checkers
//! themselves.
//!
//! Witness codes must stay small: Cantor pairing doubles the bit
//! length at every nesting, so embedding child witness codes as
//! literals inside dispatch programs blows up exponentially with tree
//! depth. Instead, the whole tree is serialized once as plain paired
//! data, and a single fixed interpreter program walks that data; every
//! continuation is the interpreter applied to a small data slice, so
//! witness sizes stay linear in the data.
//!
//! Everything is deterministic in the seed.

use crate::family::{Family, Member};
use crate::nat::{self, Nat};
use crate::pca::ob::{fix_term, fst_t, ite_zero, lam, lam2, lam3, nat_eq, pair_t, snd_t, var};
use crate::pca::{app, app2, apply, index_of, Budget, Index, Outcome, Term};
use crate::sets::SetExpr;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

use super::{Sight, Theta};

#[derive(Debug, Clone, Copy)]
pub struct GenCfg {
    pub max_depth: usize,
    /// Allow ∅ as an out-set in the θ table, which makes degenerate
    /// instances possible.
    pub allow_empty_sets: bool,
    /// Upper bound (inclusive) on the number of branch labels.
    pub max_labels: u64,
}

impl Default for GenCfg {
    /// Codes grow by a fixed multiple per tree level (pairing plus the
    /// gamma quote), so the default keeps trees shallow and narrow;
    /// deeper instances work but cost real time per level.
    fn default() -> GenCfg {
        GenCfg {
            max_depth: 2,
            allow_empty_sets: false,
            max_labels: 3,
        }
    }
}

/// A dedicated-by-construction tuple `(S, z, θ, p)`.
#[derive(Debug, Clone)]
pub struct DedicatedInstance {
    pub sight: Sight,
    pub z: Nat,
    pub theta: Theta,
    pub p: Member,
}

fn random_set(rng: &mut StdRng, lo: usize, hi: usize, universe: u64) -> SetExpr {
    let size = rng.gen_range(lo..=hi);
    let mut elems = BTreeSet::new();
    while elems.len() < size {
        elems.insert(Nat::from(rng.gen_range(0..universe)));
    }
    SetExpr::finite(elems)
}

fn random_theta(rng: &mut StdRng, cfg: &GenCfg) -> Theta {
    let labels = rng.gen_range(1..=cfg.max_labels);
    let mut entries = Vec::new();
    for n in 0..labels {
        let count = rng.gen_range(1..=3);
        let mut sets = BTreeSet::new();
        while sets.len() < count {
            let lo = if cfg.allow_empty_sets && rng.gen_bool(0.25) {
                0
            } else {
                1
            };
            sets.insert(random_set(rng, lo, 2, 6));
        }
        entries.push((Nat::from(n), Family::explicit(sets)));
    }
    Theta::table(entries)
}

/// Association lookup on a list of `⟨key, value⟩` entries. A cell is
/// `⟨entry, rest⟩ + 1` and the empty list is 0, so no nonempty list
/// collides with the empty one (`⟨0,0⟩ = 0` under Cantor pairing).
/// Misses answer 0.
pub(crate) fn assoc_term() -> Term {
    fix_term(lam3(
        "go",
        "l",
        "a",
        ite_zero(
            var("l"),
            Term::num(0u64),
            "_c",
            ite_zero(
                app2(nat_eq(), fst_t(fst_t(var("_c"))), var("a")),
                app2(var("go"), snd_t(var("_c")), var("a")),
                "_e",
                snd_t(fst_t(var("_c"))),
            ),
        ),
    ))
}

pub(crate) fn cell(entry: &Nat, rest: &Nat) -> Nat {
    nat::pair(entry, rest).succ()
}

/// Interpreter turning a serialized tree into a dedicated witness.
///
/// Data layout: a leaf is `⟨0, y⟩` (already a witness); an interior
/// node is `⟨1, ⟨n, entries⟩⟩` with `entries` an assoc list from
/// out-elements to child data. The continuation packaged into each
/// interior witness is this same interpreter applied to the child's
/// data slice, so witness codes grow with the data, not with the
/// number of tree levels.
fn interp_term() -> Term {
    fix_term(lam2(
        "mk",
        "d",
        ite_zero(
            fst_t(var("d")),
            var("d"),
            "_t",
            pair_t(
                Term::num(1u64),
                pair_t(
                    fst_t(snd_t(var("d"))),
                    lam(
                        "a",
                        app(
                            var("mk"),
                            app2(assoc_term(), snd_t(snd_t(var("d"))), var("a")),
                        ),
                    ),
                ),
            ),
        ),
    ))
}

fn interp_index() -> &'static Index {
    static INTERP: std::sync::OnceLock<Index> = std::sync::OnceLock::new();
    INTERP.get_or_init(|| index_of(&interp_term()))
}

fn build(
    rng: &mut StdRng,
    theta: &Theta,
    p_elems: &[Nat],
    depth: usize,
    cfg: &GenCfg,
) -> (Sight, Nat) {
    let leaf = depth >= cfg.max_depth || rng.gen_bool(0.45);
    if leaf {
        let y = p_elems[rng.gen_range(0..p_elems.len())].clone();
        return (Sight::Nil, nat::pair(&Nat::ZERO, &y));
    }
    let labels: Vec<Nat> = match theta {
        Theta::Table(t) => t.keys().cloned().collect(),
        Theta::Constant(_) => vec![Nat::ZERO],
    };
    let n = labels[rng.gen_range(0..labels.len())].clone();
    let fam = theta.get(&n).expect("label comes from the table");
    let sets = match fam {
        Family::Explicit(ms) => ms.clone(),
        _ => unreachable!("generated θ tables are explicit"),
    };
    let out = sets[rng.gen_range(0..sets.len())].clone();
    let elems: Vec<Nat> = out.smallest(out.len().unwrap_or(0));
    let mut kids = Vec::new();
    let mut entries = Nat::ZERO;
    for a in elems.iter().rev() {
        let (child, child_d) = build(rng, theta, p_elems, depth + 1, cfg);
        entries = cell(&nat::pair(a, &child_d), &entries);
        kids.push((a.clone(), child));
    }
    let d = nat::pair(&Nat::ONE, &nat::pair(&n, &entries));
    (Sight::node(out, kids, None), d)
}

/// One dedicated instance, deterministic in the seed.
pub fn random_dedicated(seed: u64, cfg: &GenCfg) -> DedicatedInstance {
    let mut rng = StdRng::seed_from_u64(seed);
    let theta = random_theta(&mut rng, cfg);
    let p_set = random_set(&mut rng, 1, 4, 13);
    let p_elems: Vec<Nat> = p_set.smallest(p_set.len().unwrap_or(0));
    let (sight, data) = build(&mut rng, &theta, &p_elems, 0, cfg);
    let z = match apply(interp_index().nat(), &data, Budget::default()) {
        Outcome::Value(z) => z,
        other => unreachable!("interpreting generated tree data: {other:?}"),
    };
    DedicatedInstance {
        sight,
        z,
        theta,
        p: Member::set(p_set),
    }
}

/// A family whose members all contain 0 (so any tuple of such families
/// has the joint intersection property) and a sight on it.
pub fn random_on_family(seed: u64, max_depth: usize) -> (Family, Sight) {
    let mut rng = StdRng::seed_from_u64(seed);
    let count = rng.gen_range(1..=3);
    let mut sets = BTreeSet::new();
    while sets.len() < count {
        let mut s = random_set(&mut rng, 0, 2, 6);
        s = s.union(&SetExpr::finite([Nat::ZERO]));
        sets.insert(s);
    }
    let sets: Vec<SetExpr> = sets.into_iter().collect();
    let fam = Family::explicit(sets.clone());
    fn grow(rng: &mut StdRng, sets: &[SetExpr], depth: usize, max_depth: usize) -> Sight {
        if depth >= max_depth || rng.gen_bool(0.4) {
            return Sight::Nil;
        }
        let out = sets[rng.gen_range(0..sets.len())].clone();
        let elems: Vec<Nat> = out.smallest(out.len().unwrap_or(0));
        let kids: Vec<(Nat, Sight)> = elems
            .into_iter()
            .map(|a| (a, grow(rng, sets, depth + 1, max_depth)))
            .collect();
        Sight::node(out, kids, None)
    }
    let sight = grow(&mut rng, &sets, 0, max_depth);
    (fam, sight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sight::{is_dedicated, is_on, CheckCfg};

    #[test]
    fn generated_instances_are_dedicated_and_seed_stable() {
        let cfg = GenCfg::default();
        let check = CheckCfg::default();
        for seed in 0..25 {
            let inst = random_dedicated(seed, &cfg);
            assert!(inst.sight.validate().is_ok());
            let v = is_dedicated(&inst.z, &inst.theta, &inst.p, &inst.sight, &check);
            assert!(v.is_holds(), "seed {seed}: {v:?}");
        }
        let a = random_dedicated(7, &cfg);
        let b = random_dedicated(7, &cfg);
        assert_eq!(a.sight, b.sight);
        assert_eq!(a.z, b.z);
    }

    #[test]
    fn empty_out_sets_appear_only_when_asked_for() {
        let strict = GenCfg::default();
        for seed in 0..40 {
            let inst = random_dedicated(seed, &strict);
            assert!(!inst.theta.admits_empty());
            assert!(!crate::sight::is_degenerate(&inst.sight));
        }
        let loose = GenCfg {
            allow_empty_sets: true,
            ..GenCfg::default()
        };
        let mut saw_degenerate = false;
        for seed in 0..60 {
            let inst = random_dedicated(seed, &loose);
            saw_degenerate |= crate::sight::is_degenerate(&inst.sight);
        }
        assert!(saw_degenerate, "60 seeds should hit a degenerate instance");
    }

    #[test]
    fn on_family_instances_stay_on_their_family() {
        for seed in 0..25 {
            let (fam, sight) = random_on_family(seed, 3);
            assert!(sight.validate().is_ok());
            assert!(is_on(&sight, &fam), "seed {seed}");
        }
    }
}
