//! Bit-packed binary strings and the Hamming primitives built on them.
//!
//! Column `j` (1-based) lives in word `(j - 1) / 64`, bit `(j - 1) % 64`.
//! Padding bits past the length are always zero, so word-wise popcounts
//! never need masking.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HdcError, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryString {
    words: Vec<u64>,
    len: usize,
}

impl BinaryString {
    /// All-zero string of length `len`.
    pub fn zeros(len: usize) -> Self {
        BinaryString {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = Self::zeros(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.clear_padding();
        s
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if bit {
                *words.last_mut().unwrap() |= 1 << (len % WORD);
            }
            len += 1;
        }
        BinaryString { words, len }
    }

    /// Builds a string from the low `len` bits of `value`, column 1 being the
    /// most significant of those bits. Integer order then equals lex order.
    pub fn from_u64_msb(value: u64, len: usize) -> Self {
        assert!(len <= 64);
        Self::from_bits((0..len).map(|j| (value >> (len - 1 - j)) & 1 == 1))
    }

    /// Inverse of [`BinaryString::from_u64_msb`]; `None` for strings longer than 64.
    pub fn to_u64_msb(&self) -> Option<u64> {
        if self.len > 64 {
            return None;
        }
        let mut v = 0u64;
        for j in 0..self.len {
            v = (v << 1) | self.bit0(j) as u64;
        }
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn bit0(&self, j: usize) -> bool {
        (self.words[j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    fn set0(&mut self, j: usize, value: bool) {
        let mask = 1u64 << (j % WORD);
        if value {
            self.words[j / WORD] |= mask;
        } else {
            self.words[j / WORD] &= !mask;
        }
    }

    /// Value at 1-based column `j`.
    pub fn get(&self, j: usize) -> Result<bool> {
        if j == 0 || j > self.len {
            return Err(HdcError::IndexOutOfRange { index: j, len: self.len });
        }
        Ok(self.bit0(j - 1))
    }

    /// Sets 1-based column `j`.
    pub fn set(&mut self, j: usize, value: bool) -> Result<()> {
        if j == 0 || j > self.len {
            return Err(HdcError::IndexOutOfRange { index: j, len: self.len });
        }
        self.set0(j - 1, value);
        Ok(())
    }

    /// Iterates the bits in column order.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |j| self.bit0(j))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// 1-based positions holding a one.
    pub fn ones_positions(&self) -> Vec<usize> {
        (0..self.len).filter(|&j| self.bit0(j)).map(|j| j + 1).collect()
    }

    pub fn complement(&self) -> Self {
        let mut s = BinaryString {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        s.clear_padding();
        s
    }

    pub fn concat(&self, other: &BinaryString) -> Self {
        Self::from_bits(self.iter().chain(other.iter()))
    }

    /// Keeps the listed 1-based columns, in the given order.
    pub fn select(&self, columns: &[usize]) -> Self {
        Self::from_bits(columns.iter().map(|&j| self.bit0(j - 1)))
    }

    /// Flips the listed 1-based columns.
    pub fn flipped(&self, columns: &[usize]) -> Self {
        let mut s = self.clone();
        for &j in columns {
            let b = s.bit0(j - 1);
            s.set0(j - 1, !b);
        }
        s
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of common one-positions.
    pub fn common_ones(&self, other: &BinaryString) -> Result<usize> {
        check_lengths(self, other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum())
    }
}

#[inline]
fn check_lengths(x: &BinaryString, y: &BinaryString) -> Result<()> {
    if x.len != y.len {
        return Err(HdcError::IncompatibleLengths { left: x.len, right: y.len });
    }
    Ok(())
}

/// Number of columns where `x` and `y` differ.
pub fn hamming_distance(x: &BinaryString, y: &BinaryString) -> Result<usize> {
    check_lengths(x, y)?;
    Ok(hamming_unchecked(x, y))
}

#[inline]
pub(crate) fn hamming_unchecked(x: &BinaryString, y: &BinaryString) -> usize {
    x.words
        .iter()
        .zip(&y.words)
        .map(|(a, b)| (a ^ b).count_ones() as usize)
        .sum()
}

/// The 1-based columns where `x` and `y` differ.
pub fn hamming_set(x: &BinaryString, y: &BinaryString) -> Result<BTreeSet<usize>> {
    check_lengths(x, y)?;
    let mut out = BTreeSet::new();
    for (w, (a, b)) in x.words.iter().zip(&y.words).enumerate() {
        let mut diff = a ^ b;
        while diff != 0 {
            let tz = diff.trailing_zeros() as usize;
            out.insert(w * WORD + tz + 1);
            diff &= diff - 1;
        }
    }
    Ok(out)
}

impl PartialOrd for BinaryString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order over columns 1..n with `0 < 1`; shorter strings first.
impl Ord for BinaryString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                if a != b {
                    let low = (a ^ b).trailing_zeros();
                    return if (a >> low) & 1 == 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryString({self})")
    }
}

impl FromStr for BinaryString {
    type Err = HdcError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(HdcError::Parse { line: 0, msg: "empty binary string".into() });
        }
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(HdcError::Parse {
                        line: 0,
                        msg: format!("invalid character {c:?} in binary string"),
                    })
                }
            }
        }
        Ok(Self::from_bits(bits))
    }
}

impl Serialize for BinaryString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BinaryString {
        s.parse().unwrap()
    }

    fn naive_distance(x: &str, y: &str) -> usize {
        x.chars().zip(y.chars()).filter(|(a, b)| a != b).count()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hamming_distance(&bs("0000000"), &bs("0000000")).unwrap(), 0);
        assert_eq!(hamming_distance(&bs("1111111"), &bs("0011000")).unwrap(), 5);
        let d = hamming_distance(&bs("0011001"), &bs("0000001")).unwrap();
        assert_eq!(d, naive_distance("0011001", "0000001"));
        assert_eq!(d, 2);
    }

    #[test]
    fn distance_length_mismatch() {
        let err = hamming_distance(&bs("01"), &bs("011")).unwrap_err();
        assert!(err.to_string().contains("incompatible lengths"));
        assert!(hamming_set(&bs("0"), &bs("00")).is_err());
    }

    #[test]
    fn hamming_set_examples() {
        assert!(hamming_set(&bs("00"), &bs("00")).unwrap().is_empty());
        assert_eq!(
            hamming_set(&bs("0011"), &bs("0000")).unwrap().into_iter().collect::<Vec<_>>(),
            vec![3, 4]
        );
        assert_eq!(
            hamming_set(&bs("10"), &bs("01")).unwrap().into_iter().collect::<Vec<_>>(),
            vec![1, 2]
        );
    }

    #[test]
    fn multiword_strings() {
        let a = BinaryString::ones(130);
        let b = BinaryString::zeros(130);
        assert_eq!(hamming_distance(&a, &b).unwrap(), 130);
        assert_eq!(a.complement(), b);
        assert_eq!(a.count_ones(), 130);
        let s = hamming_set(&a, &b).unwrap();
        assert_eq!(s.len(), 130);
        assert_eq!(*s.iter().last().unwrap(), 130);
    }

    #[test]
    fn one_based_access() {
        let mut s = bs("0100");
        assert!(!s.get(1).unwrap());
        assert!(s.get(2).unwrap());
        assert!(s.get(0).is_err());
        assert!(s.get(5).is_err());
        s.set(4, true).unwrap();
        assert_eq!(s.to_string(), "0101");
        assert_eq!(s.ones_positions(), vec![2, 4]);
    }

    #[test]
    fn lex_order_matches_msb_integer_order() {
        for len in 1..=6 {
            for a in 0..(1u64 << len) {
                for b in 0..(1u64 << len) {
                    let x = BinaryString::from_u64_msb(a, len);
                    let y = BinaryString::from_u64_msb(b, len);
                    assert_eq!(x.cmp(&y), a.cmp(&b));
                    assert_eq!(x.to_u64_msb(), Some(a));
                }
            }
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("0120".parse::<BinaryString>().is_err());
        assert!("".parse::<BinaryString>().is_err());
    }
}
