//! Natural numbers for the applicative structure.
//!
//! The evaluator, the pairing and the tree coding all act on `Nat`, an
//! unbounded natural with a fast path for values that fit in a `u64`.
//! Values above `u64::MAX` are kept behind an `Arc`, so cloning stays
//! cheap even when codes grow to thousands of bits.

use num_bigint::BigUint;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
enum Repr {
    Small(u64),
    // invariant: value > u64::MAX
    Big(Arc<BigUint>),
}

/// Unbounded natural number, canonical across both representations.
#[derive(Clone)]
pub struct Nat(Repr);

impl Nat {
    pub const ZERO: Nat = Nat(Repr::Small(0));
    pub const ONE: Nat = Nat(Repr::Small(1));

    pub fn from_u64(v: u64) -> Nat {
        Nat(Repr::Small(v))
    }

    pub fn from_biguint(v: BigUint) -> Nat {
        match u64::try_from(&v) {
            Ok(s) => Nat(Repr::Small(s)),
            Err(_) => Nat(Repr::Big(Arc::new(v))),
        }
    }

    pub fn from_u128(v: u128) -> Nat {
        match u64::try_from(v) {
            Ok(s) => Nat(Repr::Small(s)),
            Err(_) => Nat::from_biguint(BigUint::from(v)),
        }
    }

    pub fn parse_decimal(s: &str) -> Option<Nat> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if let Ok(v) = s.parse::<u64>() {
            return Some(Nat::from_u64(v));
        }
        s.parse::<BigUint>().ok().map(Nat::from_biguint)
    }

    pub fn as_u64(&self) -> Option<u64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Repr::Small(v) => BigUint::from(*v),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Small(0))
    }

    pub fn succ(&self) -> Nat {
        match &self.0 {
            Repr::Small(v) => match v.checked_add(1) {
                Some(s) => Nat(Repr::Small(s)),
                None => Nat::from_biguint(BigUint::from(*v) + 1u32),
            },
            Repr::Big(b) => Nat::from_biguint((**b).clone() + 1u32),
        }
    }

    pub fn pred(&self) -> Option<Nat> {
        match &self.0 {
            Repr::Small(0) => None,
            Repr::Small(v) => Some(Nat(Repr::Small(v - 1))),
            Repr::Big(b) => Some(Nat::from_biguint((**b).clone() - 1u32)),
        }
    }

    pub fn add(&self, other: &Nat) -> Nat {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => match a.checked_add(*b) {
                Some(s) => Nat(Repr::Small(s)),
                None => Nat::from_u128(*a as u128 + *b as u128),
            },
            _ => Nat::from_biguint(self.to_biguint() + other.to_biguint()),
        }
    }

    /// Saturating at zero would hide bugs; subtraction is checked.
    pub fn checked_sub(&self, other: &Nat) -> Option<Nat> {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.checked_sub(*b).map(Nat::from_u64),
            _ => {
                let (a, b) = (self.to_biguint(), other.to_biguint());
                if a < b {
                    None
                } else {
                    Some(Nat::from_biguint(a - b))
                }
            }
        }
    }

    pub fn mul(&self, other: &Nat) -> Nat {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => match a.checked_mul(*b) {
                Some(p) => Nat(Repr::Small(p)),
                None => Nat::from_u128(*a as u128 * *b as u128),
            },
            _ => Nat::from_biguint(self.to_biguint() * other.to_biguint()),
        }
    }

    /// Number of significant bits (0 for zero).
    pub fn bit_len(&self) -> u64 {
        match &self.0 {
            Repr::Small(v) => 64 - v.leading_zeros() as u64,
            Repr::Big(b) => b.bits(),
        }
    }

    /// Bit `i` counting from the least significant position.
    pub fn bit(&self, i: u64) -> bool {
        match &self.0 {
            Repr::Small(v) => i < 64 && (v >> i) & 1 == 1,
            Repr::Big(b) => b.bit(i),
        }
    }
}

impl PartialEq for Nat {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            // canonical: Big is always > u64::MAX
            _ => false,
        }
    }
}
impl Eq for Nat {}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Nat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
            (Repr::Small(_), Repr::Big(_)) => Ordering::Less,
            (Repr::Big(_), Repr::Small(_)) => Ordering::Greater,
        }
    }
}

impl std::hash::Hash for Nat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(v) => {
                state.write_u8(0);
                state.write_u64(*v);
            }
            Repr::Big(b) => {
                state.write_u8(1);
                for d in b.iter_u64_digits() {
                    state.write_u64(d);
                }
            }
        }
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Nat {
        Nat::from_u64(v)
    }
}
impl From<u32> for Nat {
    fn from(v: u32) -> Nat {
        Nat::from_u64(v as u64)
    }
}
impl From<usize> for Nat {
    fn from(v: usize) -> Nat {
        Nat::from_u64(v as u64)
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = 1u128 << ((128 - n.leading_zeros() + 1) / 2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Cantor pairing `⟨a,b⟩ = (a+b)(a+b+1)/2 + b`, a bijection ℕ²→ℕ.
pub fn pair(a: &Nat, b: &Nat) -> Nat {
    match (a.as_u64(), b.as_u64()) {
        (Some(a), Some(b)) if a < (1 << 62) && b < (1 << 62) => {
            let s = a as u128 + b as u128;
            Nat::from_u128(s * (s + 1) / 2 + b as u128)
        }
        _ => {
            let (a, b) = (a.to_biguint(), b.to_biguint());
            let s = &a + &b;
            Nat::from_biguint(&s * (&s + 1u32) / 2u32 + b)
        }
    }
}

/// Inverse of [`pair`]: `unpair(pair(a,b)) = (a,b)` for every natural.
pub fn unpair(z: &Nat) -> (Nat, Nat) {
    match z.as_u64() {
        Some(z) => {
            let z = z as u128;
            let w = (isqrt_u128(8 * z + 1) - 1) / 2;
            let t = w * (w + 1) / 2;
            let b = z - t;
            let a = w - b;
            (Nat::from_u128(a), Nat::from_u128(b))
        }
        None => {
            let z = z.to_biguint();
            let w = ((&z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
            let t = &w * (&w + 1u32) / 2u32;
            let b = &z - &t;
            let a = &w - &b;
            (Nat::from_biguint(a), Nat::from_biguint(b))
        }
    }
}

/// First projection of the pairing.
pub fn proj0(z: &Nat) -> Nat {
    unpair(z).0
}

/// Second projection of the pairing.
pub fn proj1(z: &Nat) -> Nat {
    unpair(z).1
}

/// Sequence code: `⟨x₀,…,x_{k−1}⟩ = pair(k, nest)` where the payload is
/// the right-nested chain `pair(x₀, pair(x₁, … pair(x_{k−1}, 0)…))`.
pub fn seq(items: &[Nat]) -> Nat {
    let mut nest = Nat::ZERO;
    for x in items.iter().rev() {
        nest = pair(x, &nest);
    }
    pair(&Nat::from(items.len()), &nest)
}

/// Length field of a sequence code (total: the pairing is bijective).
pub fn seq_len(code: &Nat) -> Nat {
    proj0(code)
}

/// Decode a sequence code into its elements. Total by the same
/// convention that makes every natural a pair code. Lengths that do not
/// fit in memory are clamped by the caller's usage; here we cap at
/// `max_len` and return `None` past it.
pub fn seq_decode(code: &Nat, max_len: usize) -> Option<Vec<Nat>> {
    let (len, mut nest) = unpair(code);
    let len = len.as_u64()?;
    if len as usize > max_len {
        return None;
    }
    let mut out = Vec::with_capacity(len as usize);
    for _ in 0..len {
        let (x, rest) = unpair(&nest);
        out.push(x);
        nest = rest;
    }
    Some(out)
}

/// `i`-th element (0-based) of a sequence code.
pub fn seq_elem(code: &Nat, i: u64) -> Result<Nat, SeqError> {
    let (len, mut nest) = unpair(code);
    let len = len.as_u64().ok_or(SeqError::LengthOverflow)?;
    if i >= len {
        return Err(SeqError::OutOfRange { index: i, len });
    }
    for _ in 0..i {
        nest = unpair(&nest).1;
    }
    Ok(unpair(&nest).0)
}

/// Concatenation `a ∗ b` of two sequence codes.
pub fn seq_concat(a: &Nat, b: &Nat) -> Result<Nat, SeqError> {
    let xs = seq_decode(a, 1 << 20).ok_or(SeqError::LengthOverflow)?;
    let ys = seq_decode(b, 1 << 20).ok_or(SeqError::LengthOverflow)?;
    let mut all = xs;
    all.extend(ys);
    Ok(seq(&all))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("sequence element {index} out of range for length {len}")]
    OutOfRange { index: u64, len: u64 },
    #[error("sequence length field too large to materialize")]
    LengthOverflow,
}

// JSON: a plain number when it fits in u64, a decimal string above that.
impl serde::Serialize for Nat {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self.as_u64() {
            Some(v) => ser.serialize_u64(v),
            None => ser.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Nat {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Nat, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Nat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a natural number or its decimal string")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Nat, E> {
                Ok(Nat::from_u64(v))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Nat, E> {
                u64::try_from(v)
                    .map(Nat::from_u64)
                    .map_err(|_| E::custom("negative number is not a natural"))
            }
            fn visit_str<E: serde::de::Error>(self, s: &str) -> Result<Nat, E> {
                Nat::parse_decimal(s).ok_or_else(|| E::custom("invalid decimal natural"))
            }
        }
        de.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_is_bijective_on_small_grid() {
        // exhaustive on a grid plus round trips
        let mut seen = std::collections::HashSet::new();
        for a in 0u64..60 {
            for b in 0u64..60 {
                let p = pair(&a.into(), &b.into());
                let (x, y) = unpair(&p);
                assert_eq!(x, a.into());
                assert_eq!(y, b.into());
                assert!(seen.insert(p.to_string()));
            }
        }
    }

    #[test]
    fn unpair_is_total_and_left_inverse() {
        for z in 0u64..5000 {
            let (a, b) = unpair(&z.into());
            assert_eq!(pair(&a, &b), z.into());
        }
    }

    #[test]
    fn pairing_handles_big_values() {
        let a = Nat::parse_decimal("340282366920938463463374607431768211456").unwrap();
        let b = Nat::from_u64(17);
        let p = pair(&a, &b);
        let (x, y) = unpair(&p);
        assert_eq!(x, a);
        assert_eq!(y, b);
    }

    #[test]
    fn sequence_round_trip() {
        let items: Vec<Nat> = [3u64, 0, 25, 7].iter().map(|&v| v.into()).collect();
        let code = seq(&items);
        assert_eq!(seq_len(&code), 4u64.into());
        assert_eq!(seq_decode(&code, 16).unwrap(), items);
        for (i, x) in items.iter().enumerate() {
            assert_eq!(&seq_elem(&code, i as u64).unwrap(), x);
        }
        assert!(matches!(
            seq_elem(&code, 4),
            Err(SeqError::OutOfRange { index: 4, len: 4 })
        ));
    }

    #[test]
    fn empty_sequence_is_zero() {
        // pair(0,0) = 0, so ⟨⟩ gets code 0
        assert_eq!(seq(&[]), Nat::ZERO);
        assert_eq!(seq_decode(&Nat::ZERO, 4).unwrap(), Vec::<Nat>::new());
    }

    #[test]
    fn concat_agrees_with_vector_append() {
        let a = seq(&[1u64.into(), 2u64.into()]);
        let b = seq(&[9u64.into()]);
        let c = seq_concat(&a, &b).unwrap();
        assert_eq!(
            seq_decode(&c, 8).unwrap(),
            vec![Nat::from(1u64), 2u64.into(), 9u64.into()]
        );
        let unit = seq(&[]);
        assert_eq!(seq_concat(&a, &unit).unwrap(), a);
        assert_eq!(seq_concat(&unit, &a).unwrap(), a);
    }

    #[test]
    fn ordering_across_representations() {
        let small = Nat::from_u64(u64::MAX);
        let big = small.succ();
        assert!(small < big);
        assert_ne!(small, big);
        assert_eq!(big.pred().unwrap(), small);
    }

    #[test]
    fn serde_number_and_string_forms() {
        let small: Nat = 42u64.into();
        assert_eq!(serde_json::to_string(&small).unwrap(), "42");
        let big = Nat::parse_decimal("123456789012345678901234567890").unwrap();
        let js = serde_json::to_string(&big).unwrap();
        assert_eq!(js, "\"123456789012345678901234567890\"");
        assert_eq!(serde_json::from_str::<Nat>(&js).unwrap(), big);
        assert_eq!(serde_json::from_str::<Nat>("42").unwrap(), small);
    }
}
