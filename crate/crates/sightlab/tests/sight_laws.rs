//! Randomized laws tying the two witness disciplines together.
//!
//! Instances are dedicated by construction (see `sight::gen`), so each
//! law starts from a known-good witness and checks that the predicates
//! and translations agree with it.

use proptest::prelude::*;
use sightlab::family::Member;
use sightlab::nat::{self, Nat};
use sightlab::pca::ob::{lam, pair_t, table, var};
use sightlab::pca::{apply, index_of, Budget, Outcome, Term};
use sightlab::sets::SetExpr;
use sightlab::sight::gen::{random_dedicated, random_on_family, DedicatedInstance, GenCfg};
use sightlab::sight::{
    ded_to_sup, is_dedicated, is_degenerate, is_on, is_supporting, joint_leaf, meta_f,
    nary_sector, r_defined, sup_to_ded, tr_paths, unique_sight_check, CheckCfg, Sight, Theta,
    TreePath,
};

fn value_of(o: Outcome) -> Nat {
    match o {
        Outcome::Value(v) => v,
        other => panic!("expected convergence, got {other:?}"),
    }
}

fn translate(f: &sightlab::pca::Index, x: &Nat) -> Nat {
    value_of(apply(f.nat(), x, Budget::default()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// A dedicated witness, pushed through F, supports the same sight;
    /// pushed back through G it is dedicated again.
    #[test]
    fn translations_preserve_the_witness_contracts(seed in 0u64..10_000) {
        let cfg = CheckCfg::default();
        let inst: DedicatedInstance = random_dedicated(seed, &GenCfg::default());
        prop_assert!(is_dedicated(&inst.z, &inst.theta, &inst.p, &inst.sight, &cfg).is_holds());

        let w = translate(&ded_to_sup(), &inst.z);
        prop_assert!(is_supporting(&w, &inst.theta, &inst.p, &inst.sight, &cfg).is_holds());

        let back = translate(&sup_to_ded(), &w);
        prop_assert!(is_dedicated(&back, &inst.theta, &inst.p, &inst.sight, &cfg).is_holds());
    }

    /// The object-level F agrees with its meta-level mirror on every
    /// position of the instance tree.
    #[test]
    fn object_f_matches_meta_f_on_all_positions(seed in 0u64..10_000) {
        let cfg = CheckCfg::default();
        let inst = random_dedicated(seed, &GenCfg::default());
        let fz = translate(&ded_to_sup(), &inst.z);
        for path in &tr_paths(&inst.sight, &cfg).paths {
            let via_meta = meta_f(&inst.z, &path.elems, Budget::default());
            let via_machine = apply(&fz, &path.code(), Budget::default());
            prop_assert_eq!(via_meta, via_machine);
        }
    }

    /// Degenerate dedicated sights force an empty set into the θ
    /// table; contrapositively, a θ without ∅ never yields one.
    #[test]
    fn degenerate_witnesses_need_an_empty_member(seed in 0u64..10_000) {
        let cfg = CheckCfg::default();
        let loose = GenCfg { allow_empty_sets: true, ..GenCfg::default() };
        let inst = random_dedicated(seed, &loose);
        let dedicated = is_dedicated(&inst.z, &inst.theta, &inst.p, &inst.sight, &cfg).is_holds();
        prop_assert!(dedicated);
        if is_degenerate(&inst.sight) {
            prop_assert!(inst.theta.admits_empty());
        }

        let strict = random_dedicated(seed, &GenCfg::default());
        prop_assert!(!strict.theta.admits_empty());
        prop_assert!(!is_degenerate(&strict.sight));
    }

    /// Good-leaf agreement: a common position of two trees on which
    /// the same witness is r-defined is good in one iff in the other.
    /// Sectors provide the second tree.
    #[test]
    fn shared_positions_agree_on_goodness(seed in 0u64..10_000, width in 1usize..3) {
        let cfg = CheckCfg::default();
        let inst = random_dedicated(seed, &GenCfg::default());
        let sector = nary_sector(&inst.sight, width);
        prop_assert!(r_defined(&inst.z, &inst.sight, &cfg).is_holds());
        prop_assert!(r_defined(&inst.z, &sector, &cfg).is_holds());

        let full = tr_paths(&inst.sight, &cfg);
        for p in &tr_paths(&sector, &cfg).paths {
            if !p.is_leaf() {
                continue;
            }
            let twin = full
                .paths
                .iter()
                .find(|q| q.elems == p.elems)
                .expect("sector positions exist in the full tree");
            if twin.is_leaf() {
                prop_assert_eq!(twin.kind, p.kind);
            }
        }
    }

    /// The greedy joint descent lands on a common position that is a
    /// good leaf of at least one sight.
    #[test]
    fn joint_descent_postcondition(seed in 0u64..10_000, count in 1usize..4) {
        let cfg = CheckCfg::default();
        let mut fams = Vec::new();
        let mut sights = Vec::new();
        for i in 0..count {
            let (f, s) = random_on_family(seed.wrapping_add(i as u64 * 7919), 3);
            prop_assert!(is_on(&s, &f));
            fams.push(f);
            sights.push(s);
        }
        let d: TreePath = joint_leaf(&sights, &fams, &cfg).unwrap();
        let mut good_somewhere = false;
        for s in &sights {
            let paths = tr_paths(s, &cfg);
            let here = paths
                .paths
                .iter()
                .find(|q| q.elems == d.elems)
                .expect("the joint position lies in every tree");
            good_somewhere |= here.is_good_leaf();
        }
        prop_assert!(good_somewhere);
    }

    /// Witnesses against singleton assignments determine their sight:
    /// reconstruction is deterministic and reproduces the tree the
    /// witness was built from.
    #[test]
    fn singleton_reconstruction_is_unique(seed in 0u64..10_000) {
        let cfg = CheckCfg::default();
        let mut rng_state = seed;
        let mut next = move || {
            // Small xorshift; enough variety for structure choices.
            rng_state ^= rng_state << 13;
            rng_state ^= rng_state >> 7;
            rng_state ^= rng_state << 17;
            rng_state
        };
        // ρ(n) = {{n + 2}} on domain {0,1,2}.
        let rho = Theta::table((0u64..3).map(|n| {
            (
                Nat::from(n),
                sightlab::family::Family::explicit([SetExpr::finite([Nat::from(n + 2)])]),
            )
        }));
        fn grow(
            next: &mut dyn FnMut() -> u64,
            rho_elem: &dyn Fn(u64) -> u64,
            depth: usize,
        ) -> (Sight, Nat) {
            if depth >= 3 || next() % 3 == 0 {
                let y = next() % 10;
                return (Sight::Nil, nat::pair(&Nat::ZERO, &Nat::from(y)));
            }
            let n = next() % 3;
            let x = rho_elem(n);
            let (child, child_z) = grow(next, rho_elem, depth + 1);
            let mut slots = vec![Term::num(0u64); x as usize + 1];
            slots[x as usize] = Term::num(child_z);
            let e = index_of(&table(&slots, Term::num(0u64)));
            let z = nat::pair(&Nat::ONE, &nat::pair(&Nat::from(n), e.nat()));
            (
                Sight::branch([(Nat::from(x), child)]),
                z,
            )
        }
        let (sight, z) = grow(&mut next, &|n| n + 2, 0);
        prop_assert!(is_dedicated(
            &z,
            &rho,
            &Member::set(SetExpr::omega()),
            &sight,
            &cfg
        )
        .is_holds());
        let first = unique_sight_check(&z, &rho, &cfg).unwrap();
        let second = unique_sight_check(&z, &rho, &cfg).unwrap();
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(first, sight);
    }
}

/// Leaf payloads collected structurally match what the translated
/// witness answers on good leaves.
#[test]
fn payload_images_match_the_translated_witness() {
    let cfg = CheckCfg::default();
    for seed in 0..30u64 {
        let inst = random_dedicated(seed, &GenCfg::default());
        let image = sightlab::sight::payload_image(&inst.z, &inst.sight, &cfg).unwrap();
        assert!(image.complete);
        let fz = translate(&ded_to_sup(), &inst.z);
        let mut seen = std::collections::BTreeSet::new();
        for path in tr_paths(&inst.sight, &cfg).good_leaves() {
            let ans = value_of(apply(&fz, &path.code(), Budget::default()));
            let (tag, y) = nat::unpair(&ans);
            assert!(tag.is_zero());
            seen.insert(y);
        }
        assert_eq!(image.values, seen);
    }
}

/// A handcrafted symbolic instance: the uniform witness over an
/// infinite out-set survives all three checks through the sampled
/// default child.
#[test]
fn symbolic_instances_check_through_the_default_child() {
    let cfg = CheckCfg::default();
    let e = index_of(&lam("a", pair_t(Term::num(0u64), var("a"))));
    let z = nat::pair(&Nat::ONE, &nat::pair(&Nat::ZERO, e.nat()));
    let sight = Sight::node(SetExpr::cofinite([Nat::from(3u64)]), [], Some(Sight::Nil));
    let theta = Theta::single(sightlab::family::Family::cosize(
        sightlab::family::Alpha::Omega,
        1,
    ));
    let p = Member::set(SetExpr::cofinite([Nat::from(3u64)]));
    assert!(is_dedicated(&z, &theta, &p, &sight, &cfg).is_holds());

    let w = translate(&ded_to_sup(), &z);
    assert!(is_supporting(&w, &theta, &p, &sight, &cfg).is_holds());
    let back = translate(&sup_to_ded(), &w);
    assert!(is_dedicated(&back, &theta, &p, &sight, &cfg).is_holds());
}
