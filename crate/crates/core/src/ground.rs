//! Ground sets with a fixed-point-free involution, and bitmask subsets.
//!
//! Element `i < n` is a positive element and `i + n` is its involute, so a
//! ground set with `n` pairs has `2n` elements.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use crate::error::{Error, Result};

/// Largest ground set size allowed, read from `ROOTOID_MAX_GROUND`.
///
/// Sets are stored in a `u64`, so the cap can be lowered but never raised
/// past 64.
pub fn max_ground() -> usize {
    std::env::var("ROOTOID_MAX_GROUND")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(64))
        .unwrap_or(64)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<GroundSet> {
        let cap = max_ground();
        if 2 * labels.len() > cap {
            return Err(Error::GroundTooLarge { size: 2 * labels.len(), cap });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.starts_with('-') || l.contains(char::is_whitespace) {
                return Err(Error::BadLabel(l.clone()));
            }
            if labels[..i].contains(l) {
                return Err(Error::BadLabel(format!("duplicate label {l}")));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Ground set with labels `e1..en`.
    pub fn standard(n: usize) -> Result<GroundSet> {
        GroundSet::new((1..=n).map(|i| format!("e{i}")).collect())
    }

    pub fn pairs(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        2 * self.labels.len()
    }

    pub fn positive_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> String {
        let n = self.pairs();
        if i < n {
            self.labels[i].clone()
        } else {
            format!("-{}", self.labels[i - n])
        }
    }

    pub fn involute(&self, i: usize) -> usize {
        let n = self.pairs();
        if i < n {
            i + n
        } else {
            i - n
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        let (neg, name) = match label.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, label),
        };
        let pos = self
            .labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(if neg { pos + self.pairs() } else { pos })
    }

    pub fn parse_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<RootSet> {
        let mut s = self.empty();
        for l in labels {
            s.insert(self.index_of(l.as_ref())?);
        }
        Ok(s)
    }

    /// Parses a comma separated list such as `e1,-e2`.
    pub fn parse_list(&self, text: &str) -> Result<RootSet> {
        let parts: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        self.parse_set(&parts)
    }

    pub fn names(&self, s: RootSet) -> Vec<String> {
        s.iter().map(|i| self.label(i)).collect()
    }

    pub fn format(&self, s: RootSet) -> String {
        format!("{{{}}}", self.names(s).join(","))
    }

    pub fn empty(&self) -> RootSet {
        RootSet::empty(self.pairs())
    }

    pub fn full(&self) -> RootSet {
        RootSet::full(self.pairs())
    }

    pub fn singleton(&self, i: usize) -> RootSet {
        let mut s = self.empty();
        s.insert(i);
        s
    }

    /// Ground set obtained by keeping the listed positive indices in order.
    pub fn restrict_pairs(&self, keep: &[usize]) -> Result<GroundSet> {
        GroundSet::new(keep.iter().map(|&i| self.labels[i].clone()).collect())
    }
}

/// A subset of a ground set with `pairs` involution pairs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet {
    bits: u64,
    pairs: u8,
}

impl RootSet {
    fn mask(pairs: usize) -> u64 {
        if pairs >= 32 {
            u64::MAX
        } else {
            (1u64 << (2 * pairs)) - 1
        }
    }

    pub fn empty(pairs: usize) -> RootSet {
        RootSet { bits: 0, pairs: pairs as u8 }
    }

    pub fn full(pairs: usize) -> RootSet {
        RootSet { bits: Self::mask(pairs), pairs: pairs as u8 }
    }

    pub fn from_bits(bits: u64, pairs: usize) -> RootSet {
        RootSet { bits: bits & Self::mask(pairs), pairs: pairs as u8 }
    }

    /// Set of positive elements whose indices are the bits of `mask`.
    pub fn positives(mask: u64, pairs: usize) -> RootSet {
        Self::from_bits(mask & ((1u64 << pairs) - 1), pairs)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn pairs(self) -> usize {
        self.pairs as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < 2 * self.pairs());
        self.bits |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.bits &= !(1 << i);
    }

    pub fn with(mut self, i: usize) -> RootSet {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: usize) -> RootSet {
        self.remove(i);
        self
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(self, other: RootSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(self, other: RootSet) -> bool {
        self.bits & other.bits == 0
    }

    pub fn involute(self) -> RootSet {
        let n = self.pairs();
        let low = (1u64 << n) - 1;
        RootSet { bits: ((self.bits & low) << n) | (self.bits >> n), pairs: self.pairs }
    }

    /// True when the set contains exactly one element of every pair.
    pub fn is_half_set(self) -> bool {
        self.is_disjoint(self.involute()) && (self | self.involute()) == RootSet::full(self.pairs())
    }

    /// `|A △ B| / 2` for half sets `A` and `B`.
    pub fn half_set_distance(self, other: RootSet) -> Result<usize> {
        if !self.is_half_set() || !other.is_half_set() {
            return Err(Error::NotHalfSet(format!("{self:?} / {other:?}")));
        }
        Ok((self ^ other).len() / 2)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut b = self.bits;
        std::iter::from_fn(move || {
            if b == 0 {
                None
            } else {
                let i = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(i)
            }
        })
    }

    pub fn first(self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    /// All subsets of `self`, in increasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = RootSet> {
        let full = self.bits;
        let pairs = self.pairs;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some((c.wrapping_sub(full)) & full) };
            Some(RootSet { bits: c, pairs })
        })
    }

    /// Keeps the pairs listed in `keep`, renumbering them in order.
    pub fn restrict_pairs(self, keep: &[usize]) -> RootSet {
        let n = self.pairs();
        let m = keep.len();
        let mut out = RootSet::empty(m);
        for (j, &i) in keep.iter().enumerate() {
            if self.contains(i) {
                out.insert(j);
            }
            if self.contains(i + n) {
                out.insert(j + m);
            }
        }
        out
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.iter().collect::<Vec<_>>())
    }
}

impl BitAnd for RootSet {
    type Output = RootSet;
    fn bitand(self, rhs: RootSet) -> RootSet {
        RootSet { bits: self.bits & rhs.bits, pairs: self.pairs }
    }
}

impl BitOr for RootSet {
    type Output = RootSet;
    fn bitor(self, rhs: RootSet) -> RootSet {
        RootSet { bits: self.bits | rhs.bits, pairs: self.pairs }
    }
}

impl BitXor for RootSet {
    type Output = RootSet;
    fn bitxor(self, rhs: RootSet) -> RootSet {
        RootSet { bits: self.bits ^ rhs.bits, pairs: self.pairs }
    }
}

impl Sub for RootSet {
    type Output = RootSet;
    fn sub(self, rhs: RootSet) -> RootSet {
        RootSet { bits: self.bits & !rhs.bits, pairs: self.pairs }
    }
}

impl Not for RootSet {
    type Output = RootSet;
    fn not(self) -> RootSet {
        RootSet { bits: !self.bits & Self::mask(self.pairs()), pairs: self.pairs }
    }
}

/// All half sets on `pairs` pairs, in increasing bit order of their positive part.
pub fn half_sets(pairs: usize) -> impl Iterator<Item = RootSet> {
    (0u64..1 << pairs).map(move |m| {
        let pos = RootSet::positives(m, pairs);
        pos | (!pos & RootSet::positives(u64::MAX, pairs)).involute()
    })
}
