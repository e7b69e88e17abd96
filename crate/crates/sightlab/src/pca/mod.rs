//! A partial combinatory algebra over the naturals.
//!
//! Closed combinator terms are Gödel-numbered by a fixed bijective tree
//! code; application `n·m` decodes `n`, evaluates call-by-value under a
//! step budget, and re-encodes any non-numeral normal form, so the
//! applicative structure literally acts on ℕ. Partiality is honest:
//! budget exhaustion is reported as [`Outcome::Exhausted`], never as a
//! wrong value, and growing the budget can only turn `Exhausted` into
//! `Value` or `Stuck`.
//!
//! The primitive basis is `S`, `K`, `PAIR`, `FST`, `SND`, `SUCC`,
//! `CASE`, `FIX` and `TRY`. `CASE` is the only branching primitive:
//! `CASE·n·f·g` reduces to `f` when `n` is `0` and to `g·(n−1)`
//! otherwise. `PAIR` computes the Cantor pairing on numerals, so pairs
//! are numbers and projections are total on numerals. `TRY·b·f·x` is
//! the step-bounded reflection of the evaluator into itself: it returns
//! `⟨1,v⟩` when `f·x` converges to `v` within `b` steps and `⟨0,0⟩`
//! otherwise, which is what makes dovetailing searches (least
//! computation witnessing a property) programmable inside the algebra.

mod coding;
mod machine;
pub mod ob;

pub use coding::{decode, encode, EncodeError, MAX_CODE_DEPTH};
pub use machine::{apply, apply_chain, eval_closed};
pub use ob::{abstract_var, lambda_index};

use crate::nat::{self, Nat};
use crate::verdict::{Counterexample, Resource, Verdict};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::rc::Rc;

/// Primitive combinators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prim {
    S,
    K,
    Pair,
    Fst,
    Snd,
    Succ,
    Case,
    Fix,
    Try,
}

impl Prim {
    pub const ALL: [Prim; 9] = [
        Prim::S,
        Prim::K,
        Prim::Pair,
        Prim::Fst,
        Prim::Snd,
        Prim::Succ,
        Prim::Case,
        Prim::Fix,
        Prim::Try,
    ];

    /// Number of arguments a saturated application consumes.
    pub fn arity(self) -> usize {
        match self {
            Prim::Fst | Prim::Snd | Prim::Succ => 1,
            Prim::K | Prim::Pair | Prim::Fix => 2,
            Prim::S | Prim::Case | Prim::Try => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Prim::S => "S",
            Prim::K => "K",
            Prim::Pair => "PAIR",
            Prim::Fst => "FST",
            Prim::Snd => "SND",
            Prim::Succ => "SUCC",
            Prim::Case => "CASE",
            Prim::Fix => "FIX",
            Prim::Try => "TRY",
        }
    }
}

/// Combinator syntax. `Var` only appears while building programs; it is
/// removed by bracket abstraction before encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Num(Nat),
    Prim(Prim),
    App(Rc<Term>, Rc<Term>),
    Var(Rc<str>),
}

impl Term {
    pub fn num(v: impl Into<Nat>) -> Term {
        Term::Num(v.into())
    }

    pub fn var(name: &str) -> Term {
        Term::Var(Rc::from(name))
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Num(_) | Term::Prim(_) => true,
            Term::Var(_) => false,
            Term::App(f, a) => f.is_closed() && a.is_closed(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::App(f, a) => 1 + f.depth().max(a.depth()),
            _ => 0,
        }
    }
}

/// `f·a` as syntax.
pub fn app(f: Term, a: Term) -> Term {
    Term::App(Rc::new(f), Rc::new(a))
}

pub fn app2(f: Term, a: Term, b: Term) -> Term {
    app(app(f, a), b)
}

pub fn app3(f: Term, a: Term, b: Term, c: Term) -> Term {
    app(app2(f, a, b), c)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Num(n) => write!(f, "{n}"),
            Term::Prim(p) => f.write_str(p.name()),
            Term::Var(v) => write!(f, "{v}"),
            Term::App(fun, arg) => {
                write!(f, "{fun}")?;
                match **arg {
                    Term::App(_, _) => write!(f, " ({arg})"),
                    _ => write!(f, " {arg}"),
                }
            }
        }
    }
}

/// Gödel number of a closed term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Index(pub Nat);

impl Index {
    pub fn nat(&self) -> &Nat {
        &self.0
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<Nat> for Index {
    fn from(n: Nat) -> Index {
        Index(n)
    }
}

/// Step budget for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_steps: u64,
}

impl Budget {
    pub const fn new(max_steps: u64) -> Budget {
        Budget { max_steps }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(100_000)
    }
}

/// Result of one budgeted evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Converged; non-numeral normal forms arrive re-encoded.
    Value(Nat),
    /// The step budget ran out before a normal form was reached.
    Exhausted,
    /// An ill-typed primitive use was reached (e.g. `SUCC` of a partial
    /// application, `CASE` on a non-numeral). Signals a malformed
    /// realizer; more budget never repairs it.
    Stuck(String),
}

impl Outcome {
    pub fn value(&self) -> Option<&Nat> {
        match self {
            Outcome::Value(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, Outcome::Value(_))
    }
}

/// Builds the code of a recursive program. `builder` must expect the
/// self-index as its first argument; the returned index `c` satisfies
/// `c·x ≃ builder·c·x`. The construction is `FIX·(decode builder)`, so
/// `c` is a fixed code, not a searched one.
pub fn fixpoint(builder: &Index) -> Index {
    let t = Term::App(Rc::new(Term::Prim(Prim::Fix)), decode(builder.nat()));
    Index(encode(&t).expect("decoded terms are closed"))
}

/// Checks `e : A → B` pointwise: `e·a` must converge into `B` for every
/// `a ∈ A`. `Fails` carries the offending element; exhaustion on any
/// point yields `Unknown` unless a genuine counterexample was found.
pub fn arrow_check<'a, B>(
    e: &Index,
    domain: impl IntoIterator<Item = &'a Nat>,
    codomain: B,
    budget: Budget,
) -> Verdict
where
    B: Fn(&Nat) -> bool,
{
    let mut exhausted = None;
    for a in domain {
        match apply(e.nat(), a, budget) {
            Outcome::Value(v) => {
                if !codomain(&v) {
                    return Verdict::Fails(
                        Counterexample::msg(format!("e·{a} = {v} lands outside the codomain"))
                            .value(a.clone()),
                    );
                }
            }
            Outcome::Exhausted => {
                exhausted.get_or_insert_with(|| {
                    Verdict::unknown(Resource::Steps, format!("e·{a} did not converge in budget"))
                });
            }
            Outcome::Stuck(why) => {
                return Verdict::Fails(
                    Counterexample::msg(format!("e·{a} is stuck: {why}")).value(a.clone()),
                );
            }
        }
    }
    exhausted.unwrap_or(Verdict::Holds)
}

/// Convenience: encode, panicking on open terms. For program text
/// assembled by the library itself, openness is a bug.
pub fn index_of(t: &Term) -> Index {
    Index(encode(t).expect("library-built terms are closed"))
}

/// Meta-level pairing re-exported next to the algebra that uses it.
pub use nat::{pair, proj0, proj1, seq, seq_concat, seq_decode, seq_elem, seq_len, unpair};
