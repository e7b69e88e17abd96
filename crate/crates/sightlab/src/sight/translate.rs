//! The two programs that convert between witness disciplines.
//!
//! `F` turns a downward witness into a path-indexed one: `F·z` answers
//! a path query by peeling one path element per interior layer of `z`,
//! answering `⟨1,n⟩` the moment the query runs out and passing leaf
//! witnesses `⟨0,y⟩` through unchanged. `G` inverts this: `G·w` asks
//! `w` at the empty path; a `⟨1,n⟩` answer becomes an interior witness
//! whose continuation restarts the walk one path element deeper. Both
//! are honest fixed points in the algebra, not oracles:
//! the only meta-level ingredient is the construction of their codes.

use crate::nat::{self, Nat};
use crate::pca::ob::{
    fst_t, ite_zero, lam, lam2, lam3, let_in, pair_t, seq_snoc, seq_tail, snd_t, var,
};
use crate::pca::{app, app2, apply, index_of, Budget, Index, Outcome, Prim, Term};

fn head_t(s: Term) -> Term {
    fst_t(snd_t(s))
}

fn seq_len_t(s: Term) -> Term {
    fst_t(s)
}

/// The downward-to-path translation `F`.
///
/// The witness is destructured before the path argument is abstracted,
/// so the returned function closes over the continuation component
/// once instead of over several copies of the whole witness; witness
/// codes are large and every embedded copy doubles in the quote.
pub fn ded_to_sup() -> Index {
    let walk = ite_zero(
        seq_len_t(var("s")),
        pair_t(Term::num(1u64), var("n")),
        "_q",
        app(
            app(var("self"), app(var("e"), head_t(var("s")))),
            app(seq_tail(), var("s")),
        ),
    );
    let body = ite_zero(
        fst_t(var("z")),
        app(Term::Prim(Prim::K), var("z")),
        "_t",
        let_in(
            "n",
            fst_t(snd_t(var("z"))),
            let_in("e", snd_t(snd_t(var("z"))), lam("s", walk)),
        ),
    );
    let builder = lam2("self", "z", body);
    index_of(&app(Term::Prim(Prim::Fix), builder))
}

/// The path-to-downward translation `G`.
///
/// The recursion carries the path built so far instead of pre-composing
/// `w` with a cons at every level: each continuation is the same loop
/// applied to `w` and a one-element-longer path, so continuation codes
/// embed `w` exactly once no matter how deep the walk goes.
pub fn sup_to_ded() -> Index {
    let restart = lam(
        "a",
        app2(var("self"), var("w"), app2(seq_snoc(), var("p"), var("a"))),
    );
    let body = let_in(
        "u",
        app(var("w"), var("p")),
        ite_zero(
            fst_t(var("u")),
            var("u"),
            "_t",
            pair_t(Term::num(1u64), pair_t(snd_t(var("u")), restart)),
        ),
    );
    let walk = app(Term::Prim(Prim::Fix), lam3("self", "w", "p", body));
    index_of(&lam("w", app2(walk, var("w"), Term::num(nat::seq(&[])))))
}

/// Meta-level mirror of the `F` program, used to cross-check the
/// object-level code: same case split, same order of evaluation, but
/// the recursion runs in Rust and only the continuations `e·a` run on
/// the machine.
pub fn meta_f(z: &Nat, path: &[Nat], budget: Budget) -> Outcome {
    let (tag, rest) = nat::unpair(z);
    if tag.is_zero() {
        return Outcome::Value(z.clone());
    }
    let (label, e) = nat::unpair(&rest);
    match path.split_first() {
        None => Outcome::Value(nat::pair(&Nat::ONE, &label)),
        Some((head, tail)) => match apply(&e, head, budget) {
            Outcome::Value(v) => meta_f(&v, tail, budget),
            other => other,
        },
    }
}
