//! Call-by-value evaluator for the combinator algebra.
//!
//! Values are numerals and partial applications of primitives; terms
//! are evaluated on an explicit frame stack, so host recursion depth
//! never depends on object-level recursion depth. A step is charged
//! for every primitive reduction and for every decode of a numeral in
//! head position; argument collection and syntax traversal are free,
//! which is safe because every object-level loop must pass through a
//! charged reduction.
//!
//! `TRY·b·f·x` runs `f·x` in a fresh sub-machine. The sub-budget is
//! `min(b, remaining)` and the steps it burns are charged to the outer
//! run, so wrapping a computation in `TRY` never manufactures budget.
//! When the sub-run hits the object-level bound `b` the result is
//! `⟨0,0⟩`; when it was the *outer* budget that cut the sub-run short,
//! the whole evaluation reports `Exhausted` instead, which keeps
//! outcomes monotone in the outer budget. Sub-machines nest by host
//! recursion, capped at [`TRY_DEPTH_MAX`]; honest programs unfold a
//! handful of levels, so the cap only stops pathological self-nesting.

use super::coding::{decode, encode, EncodeError};
use super::{app, Budget, Outcome, Prim, Term};
use crate::nat::{pair, proj0, proj1, Nat};
use std::rc::Rc;

/// Maximum nesting depth of `TRY` sub-machines.
pub const TRY_DEPTH_MAX: usize = 200;

#[derive(Debug, Clone)]
enum Val {
    Num(Nat),
    PAp(Rc<PApNode>),
}

#[derive(Debug)]
struct PApNode {
    prim: Prim,
    args: Vec<Val>, // invariant: args.len() < prim.arity()
}

fn pap(prim: Prim, args: Vec<Val>) -> Val {
    Val::PAp(Rc::new(PApNode { prim, args }))
}

fn reify(v: &Val) -> Term {
    match v {
        Val::Num(n) => Term::Num(n.clone()),
        Val::PAp(node) => {
            let mut t = Term::Prim(node.prim);
            for a in &node.args {
                t = app(t, reify(a));
            }
            t
        }
    }
}

/// Numerals are already numbers; anything else becomes its code.
fn quote(v: &Val) -> Result<Nat, String> {
    match v {
        Val::Num(n) => Ok(n.clone()),
        Val::PAp(_) => encode(&reify(v)).map_err(|e| match e {
            EncodeError::TooDeep => "value too deeply nested to re-encode".to_string(),
            EncodeError::OpenTerm(x) => format!("unreachable: open value ({x})"),
        }),
    }
}

enum Frame {
    /// Function value ready; evaluate this argument term next.
    EvalArg(Rc<Term>),
    /// Argument value ready; apply the stored function to it.
    ApplyFun(Val),
    /// Function value ready; apply it to the stored argument value.
    ApplyToArg(Val),
    /// `S·f·g·x`: `f·x` just returned; compute `g·x`, then apply.
    SSecond { g: Val, x: Val },
}

enum Work {
    Eval(Rc<Term>),
    Apply(Val, Val),
    Ret(Val),
}

enum RunResult {
    Value(Val),
    Exhausted,
    Stuck(String),
}

struct Machine {
    steps: u64,
    max: u64,
    try_depth: usize,
}

impl Machine {
    fn step(&mut self) -> bool {
        self.steps = self.steps.saturating_add(1);
        self.steps <= self.max
    }

    fn run(&mut self, start: Work) -> RunResult {
        let mut frames: Vec<Frame> = Vec::new();
        let mut work = start;
        loop {
            work = match work {
                Work::Eval(t) => match &*t {
                    Term::Num(n) => Work::Ret(Val::Num(n.clone())),
                    Term::Prim(p) => Work::Ret(pap(*p, Vec::new())),
                    Term::Var(x) => return RunResult::Stuck(format!("free variable `{x}`")),
                    Term::App(f, a) => {
                        frames.push(Frame::EvalArg(a.clone()));
                        Work::Eval(f.clone())
                    }
                },
                Work::Apply(f, v) => match self.apply_step(f, v, &mut frames) {
                    Ok(w) => w,
                    Err(r) => return r,
                },
                Work::Ret(v) => match frames.pop() {
                    None => return RunResult::Value(v),
                    Some(Frame::EvalArg(a)) => {
                        frames.push(Frame::ApplyFun(v));
                        Work::Eval(a)
                    }
                    Some(Frame::ApplyFun(f)) => Work::Apply(f, v),
                    Some(Frame::ApplyToArg(x)) => Work::Apply(v, x),
                    Some(Frame::SSecond { g, x }) => {
                        frames.push(Frame::ApplyFun(v));
                        Work::Apply(g, x)
                    }
                },
            };
        }
    }

    fn apply_step(&mut self, f: Val, v: Val, frames: &mut Vec<Frame>) -> Result<Work, RunResult> {
        let node = match f {
            Val::Num(n) => {
                // numeral in head position: decode and evaluate its term
                if !self.step() {
                    return Err(RunResult::Exhausted);
                }
                frames.push(Frame::ApplyToArg(v));
                return Ok(Work::Eval(decode(&n)));
            }
            Val::PAp(node) => node,
        };
        if node.args.len() + 1 < node.prim.arity() {
            let mut args = node.args.clone();
            args.push(v);
            return Ok(Work::Ret(pap(node.prim, args)));
        }
        if !self.step() {
            return Err(RunResult::Exhausted);
        }
        let a = &node.args;
        match node.prim {
            Prim::S => {
                // S·f·g·x → (f·x)·(g·x)
                frames.push(Frame::SSecond { g: a[1].clone(), x: v.clone() });
                Ok(Work::Apply(a[0].clone(), v))
            }
            Prim::K => Ok(Work::Ret(a[0].clone())),
            Prim::Pair => {
                let l = quote(&a[0]).map_err(RunResult::Stuck)?;
                let r = quote(&v).map_err(RunResult::Stuck)?;
                Ok(Work::Ret(Val::Num(pair(&l, &r))))
            }
            Prim::Fst | Prim::Snd => match v {
                Val::Num(n) => {
                    let out = if node.prim == Prim::Fst { proj0(&n) } else { proj1(&n) };
                    Ok(Work::Ret(Val::Num(out)))
                }
                Val::PAp(_) => Err(RunResult::Stuck(format!(
                    "{} applied to a non-numeral",
                    node.prim.name()
                ))),
            },
            Prim::Succ => match v {
                Val::Num(n) => Ok(Work::Ret(Val::Num(n.succ()))),
                Val::PAp(_) => Err(RunResult::Stuck("SUCC applied to a non-numeral".into())),
            },
            Prim::Case => match &a[0] {
                // CASE·n·f·g → f  (n = 0)  |  g·(n−1)  (n > 0)
                Val::Num(n) => match n.pred() {
                    None => Ok(Work::Ret(a[1].clone())),
                    Some(m) => Ok(Work::Apply(v, Val::Num(m))),
                },
                Val::PAp(_) => Err(RunResult::Stuck("CASE scrutinee is not a numeral".into())),
            },
            Prim::Fix => {
                // FIX·f·x → f·(FIX·f)·x
                let self_val = pap(Prim::Fix, vec![a[0].clone()]);
                frames.push(Frame::ApplyToArg(v));
                Ok(Work::Apply(a[0].clone(), self_val))
            }
            Prim::Try => {
                let bound = match &a[0] {
                    Val::Num(n) => n,
                    Val::PAp(_) => {
                        return Err(RunResult::Stuck("TRY bound is not a numeral".into()))
                    }
                };
                if self.try_depth >= TRY_DEPTH_MAX {
                    return Err(RunResult::Stuck("TRY nesting exceeds TRY_DEPTH_MAX".into()));
                }
                let fi = quote(&a[1]).map_err(RunResult::Stuck)?;
                let xn = quote(&v).map_err(RunResult::Stuck)?;
                let remaining = self.max - self.steps;
                let want = bound.as_u64().unwrap_or(u64::MAX);
                let cap = want.min(remaining);
                let mut sub = Machine { steps: 0, max: cap, try_depth: self.try_depth + 1 };
                let res = sub.run(Work::Apply(Val::Num(fi), Val::Num(xn)));
                self.steps = self.steps.saturating_add(sub.steps.min(cap));
                match res {
                    RunResult::Value(out) => {
                        let q = quote(&out).map_err(RunResult::Stuck)?;
                        Ok(Work::Ret(Val::Num(pair(&Nat::ONE, &q))))
                    }
                    RunResult::Stuck(_) => Ok(Work::Ret(Val::Num(pair(&Nat::ZERO, &Nat::ZERO)))),
                    RunResult::Exhausted => {
                        if cap == want {
                            // the object-level bound was the binding one
                            Ok(Work::Ret(Val::Num(pair(&Nat::ZERO, &Nat::ZERO))))
                        } else {
                            Err(RunResult::Exhausted)
                        }
                    }
                }
            }
        }
    }
}

fn finish(res: RunResult) -> Outcome {
    match res {
        RunResult::Value(v) => match quote(&v) {
            Ok(n) => Outcome::Value(n),
            Err(why) => Outcome::Stuck(why),
        },
        RunResult::Exhausted => Outcome::Exhausted,
        RunResult::Stuck(why) => Outcome::Stuck(why),
    }
}

/// Kleene application `f·x` on numbers.
pub fn apply(f: &Nat, x: &Nat, budget: Budget) -> Outcome {
    let mut m = Machine { steps: 0, max: budget.max_steps, try_depth: 0 };
    finish(m.run(Work::Apply(Val::Num(f.clone()), Val::Num(x.clone()))))
}

/// Left-nested application `f·x₁·…·xₖ` evaluated in one run.
pub fn apply_chain(f: &Nat, xs: &[Nat], budget: Budget) -> Outcome {
    let mut t = Term::Num(f.clone());
    for x in xs {
        t = app(t, Term::Num(x.clone()));
    }
    eval_closed(&t, budget)
}

/// Evaluates a closed term; the normal form comes back as a number.
pub fn eval_closed(t: &Term, budget: Budget) -> Outcome {
    let mut m = Machine { steps: 0, max: budget.max_steps, try_depth: 0 };
    finish(m.run(Work::Eval(Rc::new(t.clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pca::coding::omega;
    use crate::pca::{app2, app3, index_of};

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn prim(p: Prim) -> Term {
        Term::Prim(p)
    }

    #[test]
    fn k_discards_its_second_argument() {
        let k3 = index_of(&app(prim(Prim::K), Term::num(3u64)));
        assert_eq!(apply(k3.nat(), &n(9), Budget::default()), Outcome::Value(n(3)));
    }

    #[test]
    fn skk_is_the_identity() {
        let id = index_of(&app2(prim(Prim::S), prim(Prim::K), prim(Prim::K)));
        for x in [0u64, 1, 7, 100_000] {
            assert_eq!(apply(id.nat(), &n(x), Budget::default()), Outcome::Value(n(x)));
        }
    }

    #[test]
    fn pair_is_cantor_pairing_and_projections_invert_it() {
        let p = eval_closed(
            &app2(prim(Prim::Pair), Term::num(3u64), Term::num(5u64)),
            Budget::default(),
        );
        assert_eq!(p, Outcome::Value(pair(&n(3), &n(5))));
        let code = pair(&n(3), &n(5));
        let fst = eval_closed(&app(prim(Prim::Fst), Term::Num(code.clone())), Budget::default());
        let snd = eval_closed(&app(prim(Prim::Snd), Term::Num(code)), Budget::default());
        assert_eq!(fst, Outcome::Value(n(3)));
        assert_eq!(snd, Outcome::Value(n(5)));
    }

    #[test]
    fn pair_quotes_closure_components() {
        // PAIR·K·0 stores the code of K, recoverable by FST
        let t = app2(prim(Prim::Pair), prim(Prim::K), Term::num(0u64));
        let out = eval_closed(&t, Budget::default());
        let k_code = index_of(&prim(Prim::K));
        assert_eq!(out, Outcome::Value(pair(k_code.nat(), &n(0))));
    }

    #[test]
    fn case_selects_zero_and_successor_branches() {
        // CASE·0·99·SUCC → 99
        let z = app3(prim(Prim::Case), Term::num(0u64), Term::num(99u64), prim(Prim::Succ));
        assert_eq!(eval_closed(&z, Budget::default()), Outcome::Value(n(99)));
        // CASE·5·99·SUCC → SUCC·4 → 5
        let s = app3(prim(Prim::Case), Term::num(5u64), Term::num(99u64), prim(Prim::Succ));
        assert_eq!(eval_closed(&s, Budget::default()), Outcome::Value(n(5)));
    }

    #[test]
    fn fix_unfolds_one_step_and_reencodes_partial_applications() {
        // FIX·K·7 → K·(FIX·K)·7 → FIX·K, a partial application value
        let t = app2(prim(Prim::Fix), prim(Prim::K), Term::num(7u64));
        let expect = index_of(&app(prim(Prim::Fix), prim(Prim::K)));
        assert_eq!(eval_closed(&t, Budget::default()), Outcome::Value(expect.0));
    }

    #[test]
    fn omega_diverges_when_applied() {
        let om = index_of(&omega());
        assert_eq!(apply(om.nat(), &n(0), Budget::new(50_000)), Outcome::Exhausted);
    }

    #[test]
    fn strict_primitives_reject_closures() {
        let t = app(prim(Prim::Fst), prim(Prim::K));
        assert!(matches!(eval_closed(&t, Budget::default()), Outcome::Stuck(_)));
        let t = app3(prim(Prim::Case), prim(Prim::K), Term::num(0u64), prim(Prim::Succ));
        assert!(matches!(eval_closed(&t, Budget::default()), Outcome::Stuck(_)));
    }

    #[test]
    fn try_reports_convergence_and_timeout() {
        let succ = index_of(&prim(Prim::Succ));
        let conv = app3(prim(Prim::Try), Term::num(100u64), Term::Num(succ.0), Term::num(5u64));
        assert_eq!(eval_closed(&conv, Budget::default()), Outcome::Value(pair(&n(1), &n(6))));

        let om = index_of(&omega());
        let to = app3(prim(Prim::Try), Term::num(50u64), Term::Num(om.0.clone()), Term::num(0u64));
        assert_eq!(eval_closed(&to, Budget::default()), Outcome::Value(pair(&n(0), &n(0))));

        // outer budget smaller than the object bound: exhaustion propagates
        let to = app3(prim(Prim::Try), Term::num(1000u64), Term::Num(om.0), Term::num(0u64));
        assert_eq!(eval_closed(&to, Budget::new(20)), Outcome::Exhausted);
    }

    #[test]
    fn try_charges_sub_steps_to_the_outer_run() {
        // two sequential bounded runs of a diverging program must cost
        // at least their bounds; give the outer run just too little
        let om = index_of(&omega());
        let one = app3(prim(Prim::Try), Term::num(400u64), Term::Num(om.0.clone()), Term::num(0u64));
        // (K·PAIR)·t·t evaluates t twice under call-by-value
        let both = app2(app(prim(Prim::K), prim(Prim::Pair)), one.clone(), one);
        assert_eq!(eval_closed(&both, Budget::new(500)), Outcome::Exhausted);
        assert!(eval_closed(&both, Budget::new(2000)).is_value());
    }

    #[test]
    fn outcomes_are_monotone_in_budget() {
        // sample programs with different convergence behaviour
        let id = index_of(&app2(prim(Prim::S), prim(Prim::K), prim(Prim::K)));
        let om = index_of(&omega());
        let succ = index_of(&prim(Prim::Succ));
        let programs = [
            (id.nat().clone(), n(4)),
            (om.nat().clone(), n(0)),
            (succ.nat().clone(), n(9)),
        ];
        for (f, x) in &programs {
            let mut settled: Option<Outcome> = None;
            for b in 0..300u64 {
                let out = apply(f, x, Budget::new(b));
                match (&settled, &out) {
                    (None, Outcome::Exhausted) => {}
                    (None, other) => settled = Some(other.clone()),
                    (Some(prev), other) => assert_eq!(prev, other),
                }
            }
        }
    }
}
