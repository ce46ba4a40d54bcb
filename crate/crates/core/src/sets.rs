//! Integer sets and finite unions of integer intervals.
//!
//! Text literals: a set is written `1,2,5,7`; an interval is `lo:hi`
//! (inclusive) and a union is a comma-separated list of intervals, e.g.
//! `1:10,25:34`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SidonError};

/// Largest element accepted anywhere in the crate. Keeps every pairwise sum
/// representable in a `u64`.
pub const ELEMENT_CEILING: u64 = 1 << 62;

/// Default cap on the length of a membership bitmap.
pub const BITMAP_BUDGET: u64 = 1 << 28;

/// Inclusive integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: u64,
    pub hi: u64,
}

impl Interval {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo == 0 {
            return Err(SidonError::InvalidInterval { lo, hi, reason: "bounds must be positive" });
        }
        if lo > hi {
            return Err(SidonError::InvalidInterval { lo, hi, reason: "lo exceeds hi" });
        }
        if hi > ELEMENT_CEILING {
            return Err(SidonError::InvalidInterval { lo, hi, reason: "exceeds element ceiling" });
        }
        Ok(Interval { lo, hi })
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: u64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl FromStr for Interval {
    type Err = SidonError;

    fn from_str(s: &str) -> Result<Self> {
        let err = || SidonError::Parse { what: "interval", input: s.to_string() };
        let (lo, hi) = s.trim().split_once(':').ok_or_else(err)?;
        let lo = lo.trim().parse().map_err(|_| err())?;
        let hi = hi.trim().parse().map_err(|_| err())?;
        Interval::new(lo, hi)
    }
}

/// A finite union of disjoint integer intervals, stored sorted with at least
/// one missing integer between consecutive intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u64)>", into = "Vec<(u64, u64)>")]
pub struct IntervalUnion {
    intervals: Vec<Interval>,
}

impl IntervalUnion {
    /// Sorts the pairs and merges touching neighbours. Overlapping input is
    /// rejected: the pairs are meant to describe disjoint pieces.
    pub fn normalize<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut parts = pairs
            .into_iter()
            .map(|(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        parts.sort();
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    return Err(SidonError::Overlap(last.lo, last.hi, iv.lo, iv.hi));
                }
                Some(last) if iv.lo == last.hi + 1 => last.hi = iv.hi,
                _ => merged.push(iv),
            }
        }
        Ok(IntervalUnion { intervals: merged })
    }

    /// Set-theoretic union of possibly overlapping intervals.
    pub fn union_of<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut parts = pairs
            .into_iter()
            .map(|(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        parts.sort();
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi.saturating_add(1) => last.hi = last.hi.max(iv.hi),
                _ => merged.push(iv),
            }
        }
        Ok(IntervalUnion { intervals: merged })
    }

    pub fn single(lo: u64, hi: u64) -> Result<Self> {
        Ok(IntervalUnion { intervals: vec![Interval::new(lo, hi)?] })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Number of intervals `k`.
    pub fn count(&self) -> usize {
        self.intervals.len()
    }

    /// Number of integers covered, `n`.
    pub fn cardinality(&self) -> u64 {
        self.intervals.iter().map(Interval::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.intervals.first().map(|iv| iv.lo)
    }

    pub fn max(&self) -> Option<u64> {
        self.intervals.last().map(|iv| iv.hi)
    }

    pub fn contains(&self, x: u64) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.hi < x);
        self.intervals.get(idx).is_some_and(|iv| iv.lo <= x)
    }

    pub fn is_superset_of(&self, set: &IntegerSet) -> bool {
        set.iter().all(|x| self.contains(x))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.intervals.iter().flat_map(|iv| iv.lo..=iv.hi)
    }

    pub fn to_integer_set(&self) -> IntegerSet {
        IntegerSet { elements: self.iter().collect() }
    }

    /// Precomputed membership table over `[0, max]`.
    pub fn membership_bitmap(&self) -> Result<MembershipBitmap> {
        self.membership_bitmap_with_budget(BITMAP_BUDGET)
    }

    pub fn membership_bitmap_with_budget(&self, budget: u64) -> Result<MembershipBitmap> {
        let max = self.max().unwrap_or(0);
        if max >= budget {
            return Err(SidonError::resource(format!(
                "membership bitmap up to {max} exceeds budget of {budget} entries"
            )));
        }
        let mut words = vec![0u64; (max / 64 + 1) as usize];
        for x in self.iter() {
            words[(x / 64) as usize] |= 1 << (x % 64);
        }
        Ok(MembershipBitmap { words, max })
    }
}

impl TryFrom<Vec<(u64, u64)>> for IntervalUnion {
    type Error = SidonError;

    fn try_from(pairs: Vec<(u64, u64)>) -> Result<Self> {
        IntervalUnion::normalize(pairs)
    }
}

impl From<IntervalUnion> for Vec<(u64, u64)> {
    fn from(u: IntervalUnion) -> Self {
        u.intervals.iter().map(|iv| (iv.lo, iv.hi)).collect()
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl FromStr for IntervalUnion {
    type Err = SidonError;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.parse::<Interval>().map(|iv| (iv.lo, iv.hi)))
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Err(SidonError::Parse { what: "interval union", input: s.to_string() });
        }
        IntervalUnion::normalize(parts)
    }
}

/// Constant-time membership queries for a union, backed by a bit vector.
#[derive(Debug, Clone)]
pub struct MembershipBitmap {
    words: Vec<u64>,
    max: u64,
}

impl MembershipBitmap {
    pub fn contains(&self, x: u64) -> bool {
        x <= self.max && self.words[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    /// Largest index covered by the table.
    pub fn max(&self) -> u64 {
        self.max
    }
}

/// A strictly increasing sequence of non-negative integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct IntegerSet {
    elements: Vec<u64>,
}

impl IntegerSet {
    /// Builds a set from arbitrary order; duplicates are rejected.
    pub fn try_new(mut elements: Vec<u64>) -> Result<Self> {
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(SidonError::precondition(format!("duplicate element {}", w[0])));
        }
        if let Some(&m) = elements.last() {
            if m > ELEMENT_CEILING {
                return Err(SidonError::resource(format!("element {m} exceeds ceiling 2^62")));
            }
        }
        Ok(IntegerSet { elements })
    }

    pub fn empty() -> Self {
        IntegerSet::default()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + ExactSizeIterator + '_ {
        self.elements.iter().copied()
    }

    /// Number of elements in `[lo, hi]`.
    pub fn count_in(&self, lo: u64, hi: u64) -> usize {
        if lo > hi {
            return 0;
        }
        let a = self.elements.partition_point(|&x| x < lo);
        let b = self.elements.partition_point(|&x| x <= hi);
        b - a
    }

    pub fn shifted(&self, by: i64) -> IntegerSet {
        IntegerSet {
            elements: self.elements.iter().map(|&x| x.checked_add_signed(by).expect("shift underflow")).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &IntegerSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.elements
    }
}

impl FromIterator<u64> for IntegerSet {
    /// Collects, sorts and deduplicates.
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Self {
        let mut elements: Vec<u64> = iter.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        IntegerSet { elements }
    }
}

impl TryFrom<Vec<u64>> for IntegerSet {
    type Error = SidonError;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        IntegerSet::try_new(v)
    }
}

impl From<IntegerSet> for Vec<u64> {
    fn from(s: IntegerSet) -> Self {
        s.elements
    }
}

impl fmt::Display for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for IntegerSet {
    type Err = SidonError;

    fn from_str(s: &str) -> Result<Self> {
        let elements = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<u64>().map_err(|_| SidonError::Parse { what: "integer set", input: s.to_string() }))
            .collect::<Result<Vec<_>>>()?;
        IntegerSet::try_new(elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_sorts() {
        let u = IntervalUnion::normalize([(5, 9), (1, 3)]).unwrap();
        assert_eq!(u.intervals(), &[Interval { lo: 1, hi: 3 }, Interval { lo: 5, hi: 9 }]);
        assert_eq!(u.cardinality(), 8);
        assert_eq!(u.count(), 2);
    }

    #[test]
    fn normalize_merges_touching() {
        let u = IntervalUnion::normalize([(1, 3), (4, 7)]).unwrap();
        assert_eq!(u.intervals(), &[Interval { lo: 1, hi: 7 }]);
    }

    #[test]
    fn normalize_rejects_overlap() {
        assert_eq!(IntervalUnion::normalize([(1, 3), (2, 5)]), Err(SidonError::Overlap(1, 3, 2, 5)));
        assert!(IntervalUnion::normalize([(2, 4), (2, 4)]).is_err());
    }

    #[test]
    fn normalize_rejects_bad_bounds() {
        assert!(IntervalUnion::normalize([(0, 3)]).is_err());
        assert!(IntervalUnion::normalize([(5, 4)]).is_err());
    }

    #[test]
    fn union_of_merges_overlap() {
        let u = IntervalUnion::union_of([(4, 9), (8, 13), (16, 21)]).unwrap();
        assert_eq!(u.to_string(), "4:13,16:21");
    }

    #[test]
    fn membership() {
        let u: IntervalUnion = "1:3".parse().unwrap();
        let bm = u.membership_bitmap().unwrap();
        assert_eq!((0..6).filter(|&x| bm.contains(x)).collect::<Vec<_>>(), vec![1, 2, 3]);

        let u: IntervalUnion = "1:3,5:9".parse().unwrap();
        assert!(!u.membership_bitmap().unwrap().contains(4));
        assert!(!u.contains(4));
        assert!(u.contains(9));

        let u: IntervalUnion = "2:2".parse().unwrap();
        assert!(u.membership_bitmap().unwrap().contains(2));
        assert!(!u.membership_bitmap().unwrap().contains(3));
    }

    #[test]
    fn membership_budget() {
        let u: IntervalUnion = "1:3,100:200".parse().unwrap();
        let err = u.membership_bitmap_with_budget(150).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn literals() {
        let s: IntegerSet = " 7, 1,5,2 ".parse().unwrap();
        assert_eq!(s.as_slice(), &[1, 2, 5, 7]);
        assert_eq!(s.to_string(), "1,2,5,7");
        assert!("1,1".parse::<IntegerSet>().is_err());
        assert!("1,x".parse::<IntegerSet>().is_err());
        assert!("1-3".parse::<IntervalUnion>().is_err());
        let u: IntervalUnion = "25:34, 1:10".parse().unwrap();
        assert_eq!(u.to_string(), "1:10,25:34");
    }

    #[test]
    fn serde_shapes() {
        let u: IntervalUnion = "1:3,5:9".parse().unwrap();
        let json = serde_json::to_string(&u).unwrap();
        assert_eq!(json, "[[1,3],[5,9]]");
        assert_eq!(serde_json::from_str::<IntervalUnion>(&json).unwrap(), u);
        assert!(serde_json::from_str::<IntervalUnion>("[[1,3],[2,9]]").is_err());

        let s: IntegerSet = "1,2,5".parse().unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,2,5]");
    }

    #[test]
    fn count_in_ranges() {
        let s: IntegerSet = "1,2,5,11,19".parse().unwrap();
        assert_eq!(s.count_in(1, 10), 3);
        assert_eq!(s.count_in(11, 20), 2);
        assert_eq!(s.count_in(6, 10), 0);
        assert_eq!(s.count_in(10, 6), 0);
    }
}
