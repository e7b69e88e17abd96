//! Programming toolkit for the object language.
//!
//! Programs are written with named variables and compiled to pure
//! combinator terms by bracket abstraction. The abstraction is tuned
//! for call-by-value: `K·t` and the η-rule are only used when `t` is a
//! syntactic value (numeral, primitive, variable, or an under-applied
//! primitive spine of values), because under CBV those shortcuts would
//! otherwise evaluate a discarded or deferred body too early. Anything
//! else falls back to `S`-expansion, which re-evaluates the body at
//! call time exactly as a λ would.
//!
//! Branching must thunk: `CASE` is strict in both branches' positions
//! only in the sense that whatever stands there is already a value, so
//! [`ite_zero`] wraps the branches in dummy abstractions and applies
//! the selected one to `0`.

use super::coding::EncodeError;
use super::{app, app2, app3, encode, Index, Prim, Term};
use std::rc::Rc;

fn occurs(x: &str, t: &Term) -> bool {
    match t {
        Term::Var(v) => &**v == x,
        Term::App(f, a) => occurs(x, f) || occurs(x, a),
        _ => false,
    }
}

/// Under-applied primitive spines of value-terms are values; a
/// saturated spine would reduce, so it does not count.
fn is_value_term(t: &Term) -> bool {
    fn spine(t: &Term, args_above: usize) -> bool {
        match t {
            Term::Num(_) | Term::Var(_) => args_above == 0,
            Term::Prim(p) => args_above < p.arity(),
            Term::App(f, a) => is_value_term(a) && spine(f, args_above + 1),
        }
    }
    spine(t, 0)
}

fn skk() -> Term {
    app2(Term::Prim(Prim::S), Term::Prim(Prim::K), Term::Prim(Prim::K))
}

/// Bracket abstraction `[x]t`, CBV-safe (see module doc).
pub fn abstract_var(x: &str, t: &Term) -> Term {
    if !occurs(x, t) {
        if is_value_term(t) {
            return app(Term::Prim(Prim::K), t.clone());
        }
        // non-value body: distribute the abstraction inward so the body
        // still evaluates at call time
        if let Term::App(f, a) = t {
            return app2(Term::Prim(Prim::S), abstract_var(x, f), abstract_var(x, a));
        }
        unreachable!("non-value terms are applications");
    }
    match t {
        Term::Var(_) => skk(), // t == x here
        Term::App(f, a) => {
            // η: [x](f·x) = f when x is gone from f and f is a value
            if let Term::Var(v) = &**a {
                if &**v == x && !occurs(x, f) && is_value_term(f) {
                    return (**f).clone();
                }
            }
            app2(Term::Prim(Prim::S), abstract_var(x, f), abstract_var(x, a))
        }
        _ => unreachable!("occurs(x, t) implies t contains a variable"),
    }
}

pub fn lam(x: &str, body: Term) -> Term {
    abstract_var(x, &body)
}

pub fn lam2(x: &str, y: &str, body: Term) -> Term {
    lam(x, lam(y, body))
}

pub fn lam3(x: &str, y: &str, z: &str, body: Term) -> Term {
    lam(x, lam2(y, z, body))
}

/// Compiles `λx.body` and encodes it.
pub fn lambda_index(x: &str, body: &Term) -> Result<Index, EncodeError> {
    encode(&abstract_var(x, body)).map(Index)
}

/// `let x = val in body`, evaluating `val` once before `body`.
pub fn let_in(x: &str, val: Term, body: Term) -> Term {
    app(lam(x, body), val)
}

/// Zero test with properly thunked branches:
/// `scrut = 0` selects `if_zero`, otherwise `if_pos` runs with `pred`
/// bound to `scrut − 1`.
pub fn ite_zero(scrut: Term, if_zero: Term, pred: &str, if_pos: Term) -> Term {
    let z = lam("_z", if_zero);
    let p = lam2(pred, "_z", if_pos);
    app(app3(Term::Prim(Prim::Case), scrut, z, p), Term::num(0u64))
}

/// Boolean view (0 = false, everything else = true), thunked.
pub fn if_bool(cond: Term, if_true: Term, if_false: Term) -> Term {
    ite_zero(cond, if_false, "_b", if_true)
}

/// `FIX·t` as syntax; the result is a value whose applications unfold.
pub fn fix_term(t: Term) -> Term {
    app(Term::Prim(Prim::Fix), t)
}

pub fn pair_t(a: Term, b: Term) -> Term {
    app2(Term::Prim(Prim::Pair), a, b)
}

pub fn fst_t(p: Term) -> Term {
    app(Term::Prim(Prim::Fst), p)
}

pub fn snd_t(p: Term) -> Term {
    app(Term::Prim(Prim::Snd), p)
}

pub fn succ_t(n: Term) -> Term {
    app(Term::Prim(Prim::Succ), n)
}

/// `n − 1` with `0 − 1 = 0`; both `CASE` branches are values already.
pub fn pred_t(n: Term) -> Term {
    app3(Term::Prim(Prim::Case), n, Term::num(0u64), skk())
}

pub fn var(x: &str) -> Term {
    Term::var(x)
}

/// Finite dispatch on a numeral: index `i < entries.len()` selects
/// `entries[i]`, anything beyond falls through to `default`. Branches
/// are thunked, so entries may be arbitrary program text.
pub fn table(entries: &[Term], default: Term) -> Term {
    fn build(entries: &[Term], default: &Term, i: &str) -> Term {
        match entries.split_first() {
            None => default.clone(),
            Some((e, rest)) => {
                let deeper = build(rest, default, i);
                ite_zero(var(i), e.clone(), i, deeper)
            }
        }
    }
    lam("_i", build(entries, &default, "_i"))
}

// ---------------------------------------------------------------------
// Sequence programs. Sequences are ⟨len, x₀⟨x₁⟨…⟨x_{k−1},0⟩⟩⟩⟩, matching
// the meta-level coding in `nat`, so the two sides can check each other.
// ---------------------------------------------------------------------

pub fn seq_nil() -> Term {
    Term::Num(crate::nat::seq(&[]))
}

pub fn seq_len_t(s: Term) -> Term {
    fst_t(s)
}

fn items_t(s: Term) -> Term {
    snd_t(s)
}

fn head_t(s: Term) -> Term {
    fst_t(items_t(s))
}

/// `cons x s`: prepend.
pub fn seq_cons() -> Term {
    lam2(
        "x",
        "s",
        pair_t(
            succ_t(seq_len_t(var("s"))),
            pair_t(var("x"), items_t(var("s"))),
        ),
    )
}

/// `tail s`: drop the head; `tail ⟨⟩ = ⟨⟩`.
pub fn seq_tail() -> Term {
    lam(
        "s",
        ite_zero(
            seq_len_t(var("s")),
            seq_nil(),
            "k",
            pair_t(var("k"), snd_t(items_t(var("s")))),
        ),
    )
}

/// `snoc s x`: append at the end.
pub fn seq_snoc() -> Term {
    fix_term(lam3(
        "self",
        "s",
        "x",
        ite_zero(
            seq_len_t(var("s")),
            app2(seq_cons(), var("x"), seq_nil()),
            "_k",
            app2(
                seq_cons(),
                head_t(var("s")),
                app2(var("self"), app(seq_tail(), var("s")), var("x")),
            ),
        ),
    ))
}

/// `take m s`: the first `m` elements (all of `s` if it is shorter).
pub fn seq_take() -> Term {
    fix_term(lam3(
        "self",
        "m",
        "s",
        ite_zero(
            var("m"),
            seq_nil(),
            "pm",
            ite_zero(
                seq_len_t(var("s")),
                seq_nil(),
                "_k",
                app2(
                    seq_cons(),
                    head_t(var("s")),
                    app2(var("self"), var("pm"), app(seq_tail(), var("s"))),
                ),
            ),
        ),
    ))
}

/// `elem1 s i`: the `i`-th element, 1-based, total with default `0`
/// outside the range. This is the convention sight payloads use.
pub fn seq_elem1() -> Term {
    fix_term(lam3(
        "self",
        "s",
        "i",
        ite_zero(
            seq_len_t(var("s")),
            Term::num(0u64),
            "_k",
            ite_zero(
                var("i"),
                Term::num(0u64),
                "pi",
                ite_zero(
                    var("pi"),
                    head_t(var("s")),
                    "_q",
                    app2(var("self"), app(seq_tail(), var("s")), var("pi")),
                ),
            ),
        ),
    ))
}

/// `lt a b`: 1 when `a < b`, else 0.
pub fn nat_lt() -> Term {
    fix_term(lam3(
        "self",
        "a",
        "b",
        ite_zero(
            var("b"),
            Term::num(0u64),
            "pb",
            ite_zero(
                var("a"),
                Term::num(1u64),
                "pa",
                app2(var("self"), var("pa"), var("pb")),
            ),
        ),
    ))
}

/// `eq a b`: 1 when `a = b`, else 0.
pub fn nat_eq() -> Term {
    fix_term(lam3(
        "self",
        "a",
        "b",
        ite_zero(
            var("a"),
            ite_zero(var("b"), Term::num(1u64), "_p", Term::num(0u64)),
            "pa",
            ite_zero(
                var("b"),
                Term::num(0u64),
                "pb",
                app2(var("self"), var("pa"), var("pb")),
            ),
        ),
    ))
}

/// Shared instance of a compiled program: build once, reuse the `Rc`.
pub fn shared(t: Term) -> Rc<Term> {
    Rc::new(t)
}
