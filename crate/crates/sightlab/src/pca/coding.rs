//! Gödel coding of closed combinator terms.
//!
//! A term is serialized as a prefix-free bit string and the bit string
//! is read as a natural through the usual bijection (prepend a `1`,
//! read as binary, subtract one), so every term has exactly one code
//! and code size is linear in the number of nodes:
//!
//! ```text
//! App f a  ↦  00 ⟨f⟩ ⟨a⟩          (preorder)
//! Num v    ↦  01 γ(v+1)           (Elias gamma)
//! Prim p   ↦  10 ⟨4-bit id⟩
//! ```
//!
//! Decoding is total: any naturally arising failure (tag `11`, an
//! unassigned primitive id, a truncated payload, leftover bits, or a
//! nesting depth beyond [`MAX_CODE_DEPTH`]) yields the canonical
//! divergent term Ω = `FIX·(S·K·K)`, which is a value on its own and
//! loops forever once applied. Applying a "garbage" number therefore
//! never converges, which is the behaviour the algebra needs from
//! undefined codes.

use super::{Prim, Term};
use crate::nat::Nat;
use num_bigint::BigUint;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use thiserror::Error;

/// Codes nesting deeper than this decode to Ω and refuse to encode.
/// Keeps recursion over decoded trees (evaluation, drop) stack-safe
/// even for adversarial inputs; honest programs stay far below it.
pub const MAX_CODE_DEPTH: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("term contains free variable `{0}`; abstract it before encoding")]
    OpenTerm(String),
    #[error("term nesting exceeds MAX_CODE_DEPTH ({MAX_CODE_DEPTH})")]
    TooDeep,
}

const PRIM_IDS: [Prim; 9] = [
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

fn prim_id(p: Prim) -> u8 {
    PRIM_IDS.iter().position(|q| *q == p).unwrap() as u8
}

/// The canonical divergent term: a value by itself, diverges applied.
pub fn omega() -> Term {
    let id = super::app2(Term::Prim(Prim::S), Term::Prim(Prim::K), Term::Prim(Prim::K));
    super::app(Term::Prim(Prim::Fix), id)
}

struct BitWriter {
    bits: Vec<bool>,
}

impl BitWriter {
    fn new() -> BitWriter {
        BitWriter { bits: Vec::new() }
    }

    fn push(&mut self, b: bool) {
        self.bits.push(b);
    }

    fn push_many(&mut self, bs: &[bool]) {
        self.bits.extend_from_slice(bs);
    }

    /// γ(x) for x ≥ 1: (bitlen−1) zeros, then x in binary MSB-first.
    fn push_gamma(&mut self, x: &Nat) {
        debug_assert!(!x.is_zero());
        let len = x.bit_len();
        for _ in 1..len {
            self.push(false);
        }
        for i in (0..len).rev() {
            self.push(x.bit(i));
        }
    }

    fn finish(self) -> Nat {
        // assemble a big-endian byte buffer in one pass; building the
        // number by shift-and-or per bit is quadratic in the code size
        let total = self.bits.len() + 1;
        let pad = (8 - total % 8) % 8;
        let mut bytes = vec![0u8; (total + pad) / 8];
        bytes[pad / 8] |= 1 << (7 - pad % 8);
        for (i, b) in self.bits.iter().enumerate() {
            if *b {
                let idx = pad + 1 + i;
                bytes[idx / 8] |= 1 << (7 - idx % 8);
            }
        }
        let v = BigUint::from_bytes_be(&bytes);
        Nat::from_biguint(v).pred().expect("sentinel makes v >= 1")
    }
}

struct BitReader {
    bits: Vec<bool>,
    pos: usize,
}

impl BitReader {
    fn new(n: &Nat) -> BitReader {
        let v = n.succ();
        let len = v.bit_len();
        // skip the sentinel leading 1 at position len−1
        let bits = (0..len.saturating_sub(1))
            .map(|i| v.bit(len - 2 - i))
            .collect();
        BitReader { bits, pos: 0 }
    }

    fn next(&mut self) -> Option<bool> {
        let b = *self.bits.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    fn read_gamma(&mut self) -> Option<Nat> {
        let mut zeros = 0usize;
        loop {
            if self.next()? {
                break;
            }
            zeros += 1;
        }
        if self.bits.len() - self.pos < zeros {
            return None;
        }
        if zeros < 64 {
            let mut v = 1u64;
            for _ in 0..zeros {
                v = v << 1 | self.next()? as u64;
            }
            return Some(Nat::from(v));
        }
        // same one-pass byte assembly as the writer, for big payloads
        let len = zeros + 1;
        let pad = (8 - len % 8) % 8;
        let mut bytes = vec![0u8; (len + pad) / 8];
        bytes[pad / 8] |= 1 << (7 - pad % 8);
        for i in 0..zeros {
            if self.bits[self.pos + i] {
                let idx = pad + 1 + i;
                bytes[idx / 8] |= 1 << (7 - idx % 8);
            }
        }
        self.pos += zeros;
        Some(Nat::from_biguint(BigUint::from_bytes_be(&bytes)))
    }

    fn done(&self) -> bool {
        self.pos == self.bits.len()
    }
}

/// Encodes a closed term. Fails on free variables and on nesting past
/// [`MAX_CODE_DEPTH`]; both indicate a malformed program, not data.
pub fn encode(t: &Term) -> Result<Nat, EncodeError> {
    let mut w = BitWriter::new();
    // explicit stack: preorder emit, tracking nesting depth
    let mut stack: Vec<(&Term, usize)> = vec![(t, 0)];
    while let Some((t, d)) = stack.pop() {
        if d > MAX_CODE_DEPTH {
            return Err(EncodeError::TooDeep);
        }
        match t {
            Term::App(f, a) => {
                w.push_many(&[false, false]);
                stack.push((a, d + 1));
                stack.push((f, d + 1));
            }
            Term::Num(v) => {
                w.push_many(&[false, true]);
                w.push_gamma(&v.succ());
            }
            Term::Prim(p) => {
                w.push_many(&[true, false]);
                let id = prim_id(*p);
                for i in (0..4).rev() {
                    w.push(id >> i & 1 == 1);
                }
            }
            Term::Var(name) => return Err(EncodeError::OpenTerm(name.to_string())),
        }
    }
    Ok(w.finish())
}

fn parse(r: &mut BitReader) -> Option<Rc<Term>> {
    // pending[i] = None: App awaiting its function child;
    //              Some(f): App with function parsed, awaiting argument.
    let mut pending: Vec<Option<Rc<Term>>> = Vec::new();
    loop {
        if pending.len() > MAX_CODE_DEPTH {
            return None;
        }
        let tag = (r.next()?, r.next()?);
        let leaf = match tag {
            (false, false) => {
                pending.push(None);
                continue;
            }
            (false, true) => Rc::new(Term::Num(r.read_gamma()?.pred()?)),
            (true, false) => {
                let mut id = 0u8;
                for _ in 0..4 {
                    id = id << 1 | r.next()? as u8;
                }
                Rc::new(Term::Prim(*PRIM_IDS.get(id as usize)?))
            }
            (true, true) => return None,
        };
        let mut done = leaf;
        loop {
            match pending.pop() {
                None => {
                    return if r.done() { Some(done) } else { None };
                }
                Some(None) => {
                    pending.push(Some(done));
                    break;
                }
                Some(Some(f)) => {
                    done = Rc::new(Term::App(f, done));
                }
            }
        }
    }
}

thread_local! {
    static DECODE_MEMO: RefCell<HashMap<Nat, Rc<Term>>> = RefCell::new(HashMap::new());
}

const MEMO_CAP: usize = 8192;

/// Total decoding; see the module doc for the failure convention.
pub fn decode(n: &Nat) -> Rc<Term> {
    if let Some(t) = DECODE_MEMO.with(|m| m.borrow().get(n).cloned()) {
        return t;
    }
    let t = parse(&mut BitReader::new(n)).unwrap_or_else(|| Rc::new(omega()));
    DECODE_MEMO.with(|m| {
        let mut m = m.borrow_mut();
        if m.len() >= MEMO_CAP {
            m.clear();
        }
        m.insert(n.clone(), t.clone());
    });
    t
}
