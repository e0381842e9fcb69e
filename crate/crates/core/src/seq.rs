//! Finite sequences of naturals and their numeric coding.
//!
//! Sequences are coded by the positions of the set bits of a natural: the
//! sequence `⟨a₁, …, a_k⟩` is sent to `2^p₁ + … + 2^p_k` with `p₁ = a₁` and
//! `p_{i+1} = p_i + 1 + a_{i+1}`. Every natural decodes to exactly one
//! sequence, the empty sequence has code 0, and extending a sequence always
//! increases its code, so prefixes are enumerated before their extensions.
//! The first codes are
//!
//! | code | sequence |
//! |------|----------|
//! | 0    | ⟨⟩       |
//! | 1    | ⟨0⟩      |
//! | 2    | ⟨1⟩      |
//! | 3    | ⟨0,0⟩    |
//! | 4    | ⟨2⟩      |
//! | 5    | ⟨0,1⟩    |
//! | 6    | ⟨1,0⟩    |
//! | 7    | ⟨0,0,0⟩  |
//!
//! The coding is part of the stable interface: trace files and the
//! extensionality witness report positions as codes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Nat;

/// A finite sequence of naturals.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinSeq(Vec<Nat>);

impl FinSeq {
    pub fn empty() -> Self {
        FinSeq(Vec::new())
    }

    pub fn new(items: Vec<Nat>) -> Self {
        FinSeq(items)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn items(&self) -> &[Nat] {
        &self.0
    }

    pub fn get(&self, index: usize) -> Option<Nat> {
        self.0.get(index).copied()
    }

    /// `s * t`.
    pub fn concat(&self, other: &FinSeq) -> FinSeq {
        let mut items = Vec::with_capacity(self.len() + other.len());
        items.extend_from_slice(&self.0);
        items.extend_from_slice(&other.0);
        FinSeq(items)
    }

    /// `s * ⟨x⟩`.
    pub fn append(&self, x: Nat) -> FinSeq {
        let mut items = self.0.clone();
        items.push(x);
        FinSeq(items)
    }

    pub fn push(&mut self, x: Nat) {
        self.0.push(x);
    }

    /// The first `n` entries.
    pub fn take(&self, n: usize) -> Result<FinSeq> {
        if n > self.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                len: self.len(),
            });
        }
        Ok(FinSeq(self.0[..n].to_vec()))
    }

    /// The first `min(n, |s|)` entries.
    pub fn truncate_to(&self, n: usize) -> FinSeq {
        FinSeq(self.0[..n.min(self.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &FinSeq) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn code(&self) -> Result<Nat> {
        encode(self)
    }

    pub fn iter(&self) -> impl Iterator<Item = Nat> + '_ {
        self.0.iter().copied()
    }
}

impl From<Vec<Nat>> for FinSeq {
    fn from(items: Vec<Nat>) -> Self {
        FinSeq(items)
    }
}

impl<const N: usize> From<[Nat; N]> for FinSeq {
    fn from(items: [Nat; N]) -> Self {
        FinSeq(items.to_vec())
    }
}

impl fmt::Display for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("⟩")
    }
}

impl fmt::Debug for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a comma separated list such as `"2,0,1"`; the empty string is `⟨⟩`.
impl FromStr for FinSeq {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(FinSeq::empty());
        }
        let mut items = Vec::new();
        let mut offset = 0;
        for part in trimmed.split(',') {
            let value = part.trim().parse::<Nat>().map_err(|e| Error::Parse {
                line: 1,
                column: offset + 1,
                offset,
                message: format!("bad sequence entry `{}`: {e}", part.trim()),
            })?;
            items.push(value);
            offset += part.len() + 1;
        }
        Ok(FinSeq(items))
    }
}

pub fn encode(s: &FinSeq) -> Result<Nat> {
    let mut code: Nat = 0;
    let mut next_bit: u32 = 0;
    for &entry in s.items() {
        let entry = u32::try_from(entry).map_err(|_| Error::Overflow)?;
        let bit = next_bit.checked_add(entry).ok_or(Error::Overflow)?;
        if bit >= Nat::BITS {
            return Err(Error::Overflow);
        }
        code |= 1 << bit;
        next_bit = bit + 1;
    }
    Ok(code)
}

pub fn decode(mut code: Nat) -> FinSeq {
    let mut items = Vec::with_capacity(code.count_ones() as usize);
    let mut next_bit = 0;
    while code != 0 {
        let bit = code.trailing_zeros();
        items.push(Nat::from(bit - next_bit));
        next_bit = bit + 1;
        code &= code - 1;
    }
    FinSeq(items)
}

/// All sequences with entries below `width` and length exactly `len`, in
/// lexicographic order.
pub fn all_of_length(len: usize, width: Nat) -> Vec<FinSeq> {
    let mut out = vec![FinSeq::empty()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| (0..width).map(move |x| s.append(x)))
            .collect();
    }
    out
}

/// All sequences with entries below `width` and length at most `max_len`,
/// shortest first.
pub fn all_up_to_length(max_len: usize, width: Nat) -> Vec<FinSeq> {
    (0..=max_len)
        .flat_map(|n| all_of_length(n, width))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn concat_examples() {
        assert_eq!(
            FinSeq::from([1, 2]).concat(&FinSeq::from([3])),
            FinSeq::from([1, 2, 3])
        );
        assert_eq!(
            FinSeq::empty().concat(&FinSeq::from([5])),
            FinSeq::from([5])
        );
        assert_eq!(
            FinSeq::from([0]).concat(&FinSeq::empty()),
            FinSeq::from([0])
        );
    }

    #[test]
    fn take_prefix_and_out_of_range() {
        assert_eq!(FinSeq::from([5, 7]).take(1).unwrap(), FinSeq::from([5]));
        assert_eq!(
            FinSeq::from([5, 7]).take(3),
            Err(Error::IndexOutOfRange { index: 3, len: 2 })
        );
    }

    #[test]
    fn first_codes_match_documented_table() {
        let table: [&[Nat]; 8] = [&[], &[0], &[1], &[0, 0], &[2], &[0, 1], &[1, 0], &[0, 0, 0]];
        for (code, items) in table.iter().enumerate() {
            assert_eq!(decode(code as Nat), FinSeq::new(items.to_vec()));
            assert_eq!(encode(&FinSeq::new(items.to_vec())).unwrap(), code as Nat);
        }
    }

    #[test]
    fn code_examples() {
        assert_eq!(FinSeq::empty().code().unwrap(), 0);
        let s = FinSeq::from([2, 0, 1]);
        assert_eq!(decode(s.code().unwrap()), s);
    }

    #[test]
    fn code_injective_on_small_sequences() {
        let all = all_up_to_length(4, 3);
        let mut codes: Vec<Nat> = all.iter().map(|s| s.code().unwrap()).collect();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), all.len());
    }

    #[test]
    fn bijective_below_ten_thousand() {
        for n in 0..10_000 {
            assert_eq!(decode(n).code().unwrap(), n);
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(FinSeq::from([64]).code(), Err(Error::Overflow));
        assert_eq!(FinSeq::from([63]).code(), Ok(1 << 63));
        assert_eq!(FinSeq::new(vec![0; 65]).code(), Err(Error::Overflow));
    }

    #[test]
    fn parse_sequences() {
        assert_eq!("2, 0,1".parse::<FinSeq>().unwrap(), FinSeq::from([2, 0, 1]));
        assert_eq!("".parse::<FinSeq>().unwrap(), FinSeq::empty());
        assert!("1,x".parse::<FinSeq>().is_err());
    }

    fn small_seq() -> impl Strategy<Value = FinSeq> {
        prop::collection::vec(0u64..6, 0..8).prop_map(FinSeq::new)
    }

    proptest! {
        #[test]
        fn concat_is_associative(s in small_seq(), t in small_seq(), u in small_seq()) {
            prop_assert_eq!(s.concat(&t).concat(&u), s.concat(&t.concat(&u)));
        }

        #[test]
        fn code_round_trips(s in small_seq()) {
            prop_assert_eq!(decode(s.code().unwrap()), s);
        }

        #[test]
        fn extension_increases_code(s in small_seq(), x in 0u64..6) {
            prop_assert!(s.append(x).code().unwrap() > s.code().unwrap());
        }
    }
}
