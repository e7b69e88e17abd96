//! Named witnesses: the explicit reduction of co-m-tons to
//! cosingletons, the majority-vote extractor, angelic sight
//! reconstruction, and the decomposition of monotone set maps.

use std::collections::BTreeMap;

use crate::family::{for_each_combination, Alpha, Family, Member};
use crate::lattice::rel::member_key;
use crate::nat::{self, Nat};
use crate::pca::ob::{
    fix_term, fst_t, ite_zero, lam, lam2, let_in, nat_eq, nat_lt, pair_t, seq_len_t, seq_take,
    snd_t, succ_t, table, var,
};
use crate::pca::{app, app2, app3, apply, index_of, Index, Outcome, Prim, Term};
use crate::sets::SetExpr;
use crate::sight::gen::cell;
use crate::sight::{CheckCfg, Sight, Theta};
use crate::verdict::{Resource, Verdict};

/// The `i`-th element of a sequence code, 1-based and total with
/// default 0, computed at the meta level. Must agree with the object
/// program `ob::seq_elem1` on every input: sight out-sets built here
/// are compared against payloads the machine computes.
pub fn seq_elem1_meta(x: &Nat, i: u64) -> Nat {
    let mut s = x.clone();
    let mut i = i;
    loop {
        let (len, nest) = nat::unpair(&s);
        if len.is_zero() || i == 0 {
            return Nat::ZERO;
        }
        let (head, tail_nest) = nat::unpair(&nest);
        if i == 1 {
            return head;
        }
        let len = len.pred().expect("len is nonzero here");
        s = nat::pair(&len, &tail_nest);
        i -= 1;
    }
}

/// The explicit witness that co-m-tons reduce to cosingletons: for
/// distinct `a₁,…,a_m`, a labeler answering `⟨1,0⟩` below depth `m`
/// and `⟨0, ⟨c₁..c_m⟩⟩` at depth `m`, together with the sight whose
/// out-set at level `p` bars the `(p+1)`-st coordinate of `a_{p+1}`.
/// Every reachable leaf payload then differs from each `aᵢ` at
/// coordinate `i`, so it lands in `ℕ∖{a₁..a_m}`.
pub fn o1_witness(m: u64, a: &[Nat]) -> Result<(Index, Sight), String> {
    if m == 0 {
        return Err("m must be at least 1".into());
    }
    if a.len() as u64 != m {
        return Err(format!("expected {m} anchors, got {}", a.len()));
    }
    for (i, x) in a.iter().enumerate() {
        if a[..i].contains(x) {
            return Err(format!("anchors must be distinct; {x} repeats"));
        }
    }

    let mut sight = Sight::Nil;
    for p in (0..m).rev() {
        let barred = seq_elem1_meta(&a[p as usize], p + 1);
        sight = Sight::node(SetExpr::cofinite([barred]), [], Some(sight));
    }

    let z = index_of(&lam(
        "s",
        ite_zero(
            app2(nat_lt(), seq_len_t(var("s")), Term::num(m)),
            // not below m: answer the first m path elements
            pair_t(
                Term::num(0u64),
                app2(seq_take(), Term::num(m), var("s")),
            ),
            "_w",
            pair_t(Term::num(1u64), Term::num(0u64)),
        ),
    ));
    Ok((z, sight))
}

/// Largest exponent in the step-bound table; past this the dovetail
/// keeps retrying at a flat 2^26, and the caller's budget is the only
/// remaining brake. Deeply composed witnesses need large bounds
/// because every recursive extraction replays a full search.
const POW_TABLE_MAX: u32 = 26;

/// The extractor for `1 < 2m < α`: a single index `f` with
/// `f⟨0,x⟩ = x`, while `f⟨1,⟨n,e⟩⟩` dovetails through all
/// `(m+1)`-element tuples from a fixed `2m+1`-point slice of the
/// base, under doubling step bounds, until some tuple has every
/// `e·a` defined and all recursive values equal; that value is the
/// answer. Any `m+1` distinct base points meet every member (the
/// complements have only `m` elements), so an agreeing tuple can
/// only agree on the payload a dedicated witness protects.
pub fn extractor_index(alpha: Alpha, m: u64) -> Result<Index, String> {
    if m == 0 {
        return Err("m must be at least 1".into());
    }
    if let Alpha::Fin(a) = alpha {
        if a <= 2 * m {
            return Err(format!("need 2m < α, got α = {a} and m = {m}"));
        }
    }
    // a (2m+1)-point slice of the base meets every member in at
    // least m+1 points, so tuples never need the rest of the base
    let universe: Vec<Nat> = match alpha {
        Alpha::Fin(_) => (1..=2 * m + 1).map(Nat::from).collect(),
        Alpha::Omega => (0..=2 * m).map(Nat::from).collect(),
    };
    let mut tuples: Vec<Term> = Vec::new();
    for_each_combination(universe.len(), (m + 1) as usize, &mut |idx| {
        let mut data = Nat::ZERO;
        for &i in idx.iter().rev() {
            data = cell(&universe[i], &data);
        }
        tuples.push(Term::num(data));
    });
    let tbl = table(&tuples, Term::num(0u64));
    let pows: Vec<Term> = (0..=POW_TABLE_MAX).map(|i| Term::num(1u64 << i)).collect();
    let pw = table(&pows, Term::num(1u64 << POW_TABLE_MAX));

    // walk one tuple: evaluate f(e·a) for each entry, tracking the
    // first value and demanding agreement from the rest
    let go = fix_term(lam2(
        "gg",
        "ll",
        lam2(
            "hs",
            "vv",
            ite_zero(
                var("ll"),
                pair_t(Term::num(1u64), var("vv")),
                "_c",
                let_in(
                    "rr",
                    app(var("fx"), app(var("ee"), fst_t(var("_c")))),
                    ite_zero(
                        var("hs"),
                        app3(var("gg"), snd_t(var("_c")), Term::num(1u64), var("rr")),
                        "_h",
                        ite_zero(
                            app2(nat_eq(), var("rr"), var("vv")),
                            pair_t(Term::num(0u64), Term::num(0u64)),
                            "_q",
                            app3(var("gg"), snd_t(var("_c")), Term::num(1u64), var("vv")),
                        ),
                    ),
                ),
            ),
        ),
    ));
    let check = lam(
        "_u",
        app3(go, var("tu"), Term::num(0u64), Term::num(0u64)),
    );
    // scan tuples at the current bound; a finished run either
    // delivers the agreed value or sends us to the next tuple
    let scan = fix_term(lam2(
        "sc",
        "j",
        let_in(
            "tu",
            app(tbl, var("j")),
            ite_zero(
                var("tu"),
                app(var("sr"), succ_t(var("i"))),
                "_d",
                let_in(
                    "rs",
                    app3(
                        Term::Prim(Prim::Try),
                        app(pw, var("i")),
                        check,
                        Term::num(0u64),
                    ),
                    ite_zero(
                        fst_t(var("rs")),
                        app(var("sc"), succ_t(var("j"))),
                        "_r",
                        let_in(
                            "nn",
                            snd_t(var("rs")),
                            ite_zero(
                                fst_t(var("nn")),
                                app(var("sc"), succ_t(var("j"))),
                                "_x",
                                snd_t(var("nn")),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    ));
    let search = fix_term(lam2("sr", "i", app(scan, Term::num(0u64))));
    let f = fix_term(lam2(
        "fx",
        "zz",
        ite_zero(
            fst_t(var("zz")),
            snd_t(var("zz")),
            "_t",
            let_in(
                "ee",
                snd_t(snd_t(var("zz"))),
                app(search, Term::num(0u64)),
            ),
        ),
    ));
    Ok(index_of(&f))
}

/// Angelic reconstruction of a dedicated sight from a witness: a
/// `⟨0,y⟩` in the target is a NIL sight; a `⟨1,⟨n,e⟩⟩` tries each
/// finite out-set of `θ(n)` in ascending size order and recurses on
/// every child. Infinite out-sets and exhausted budgets degrade to
/// Unknown rather than Fails.
pub fn lprime_member(
    z: &Nat,
    theta: &Theta,
    p: &Member,
    cfg: &CheckCfg,
    window: u64,
) -> Result<Sight, Verdict> {
    fn rec(
        z: &Nat,
        theta: &Theta,
        p: &Member,
        cfg: &CheckCfg,
        window: u64,
        depth: usize,
    ) -> Result<Sight, Verdict> {
        if depth > cfg.depth_cap {
            return Err(Verdict::unknown(
                Resource::Depth,
                "reconstruction hit the depth cap",
            ));
        }
        let (tag, rest) = nat::unpair(z);
        if tag.is_zero() {
            return if p.contains(&rest) {
                Ok(Sight::Nil)
            } else {
                Err(Verdict::fails(format!(
                    "payload {rest} lies outside the target"
                )))
            };
        }
        if tag != Nat::ONE {
            return Err(Verdict::fails(format!("{z} is not ⟨0,·⟩ or ⟨1,·⟩")));
        }
        let (n, e) = nat::unpair(&rest);
        let Some(fam) = theta.get(&n) else {
            return Err(Verdict::fails(format!("branch label {n} is outside dom θ")));
        };
        let mut sample = fam.members(window);
        sample.members.sort_by_cached_key(member_key);
        let mut soft: Option<Verdict> = None;
        'outer: for o in &sample.members {
            let Member::Set(s) = o else {
                soft.get_or_insert(Verdict::unknown(
                    Resource::Window,
                    "product out-sets are not reconstructed",
                ));
                continue;
            };
            if !s.is_finite() {
                soft.get_or_insert(Verdict::unknown(
                    Resource::Window,
                    "infinite out-sets are not reconstructed",
                ));
                continue;
            }
            let mut children = Vec::new();
            for a in s.smallest(usize::MAX / 2) {
                match apply(&e, &a, cfg.budget) {
                    Outcome::Value(za) => {
                        match rec(&za, theta, p, cfg, window, depth + 1) {
                            Ok(child) => children.push((a, child)),
                            Err(v) => {
                                if v.is_unknown() {
                                    soft.get_or_insert(v);
                                }
                                continue 'outer;
                            }
                        }
                    }
                    Outcome::Exhausted => {
                        soft.get_or_insert(Verdict::unknown(
                            Resource::Steps,
                            format!("e·{a} did not converge within budget"),
                        ));
                        continue 'outer;
                    }
                    Outcome::Stuck(_) => continue 'outer,
                }
            }
            return Ok(Sight::node(s.clone(), children, None));
        }
        Err(match soft {
            Some(v) => v,
            None if sample.exhaustive => {
                Verdict::fails(format!("no out-set in θ({n}) admits all children"))
            }
            None => Verdict::unknown(Resource::Window, "out-set candidates were sampled"),
        })
    }
    rec(z, theta, p, cfg, window, 0)
}

/// Why a finite set map resists decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    /// Two comparable keys with incomparable values.
    NotMonotone { p: SetExpr, q: SetExpr },
    /// The same key tabulated twice.
    DuplicateKey(SetExpr),
    /// The union of all values is empty, so the map is not in M*.
    EmptyRange,
    /// The union of all values is infinite; only finite tables are
    /// decomposed here.
    InfiniteRange,
}

impl std::fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecomposeError::NotMonotone { p, q } => {
                write!(f, "not monotone: {p} ⊆ {q} but the values are not nested")
            }
            DecomposeError::DuplicateKey(p) => write!(f, "key {p} appears twice"),
            DecomposeError::EmptyRange => write!(f, "the union of all values is empty"),
            DecomposeError::InfiniteRange => write!(f, "the union of all values is infinite"),
        }
    }
}

impl std::error::Error for DecomposeError {}

/// Decomposes a monotone finite table `p ↦ f(p)` into the pair
/// `(A, θ)` with `A = ⋃_p f(p)` and `θ(n) = {q | n ∈ f(q)}`, the
/// data that presents `f`-style maps through a branch assignment.
pub fn decompose_monotone(
    tab: &[(SetExpr, SetExpr)],
) -> Result<(SetExpr, Theta), DecomposeError> {
    for (i, (p, _)) in tab.iter().enumerate() {
        if tab[..i].iter().any(|(q, _)| q == p) {
            return Err(DecomposeError::DuplicateKey(p.clone()));
        }
    }
    for (p, fp) in tab {
        for (q, fq) in tab {
            if p.subset_of(q) && !fp.subset_of(fq) {
                return Err(DecomposeError::NotMonotone {
                    p: p.clone(),
                    q: q.clone(),
                });
            }
        }
    }
    let a = tab
        .iter()
        .fold(SetExpr::empty(), |acc, (_, fp)| acc.union(fp));
    if a.is_empty() {
        return Err(DecomposeError::EmptyRange);
    }
    if !a.is_finite() {
        return Err(DecomposeError::InfiniteRange);
    }
    let mut entries: BTreeMap<Nat, Family> = BTreeMap::new();
    for n in a.smallest(usize::MAX / 2) {
        let supports: Vec<SetExpr> = tab
            .iter()
            .filter(|(_, fp)| fp.contains(&n))
            .map(|(p, _)| p.clone())
            .collect();
        entries.insert(n, Family::explicit(supports));
    }
    Ok((a, Theta::table(entries)))
}
