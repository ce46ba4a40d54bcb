//! Exponentially spaced family: for `k = 1..n` put the blocks
//! `[b^{k+1}, b^{k+1} + n - 1]` and pick `b^{k+1}` from every block plus
//! `b^{k+1} + k` from the first `n - 1` blocks, giving `2n - 1` elements.
//!
//! Nothing here assumes the result is Sidon; [`verify_family`] decides. For
//! `b = 2` the strict check already fails at `n = 3` and the weak one at
//! `n = 6`, and the blocks themselves overlap once `n > 4`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SidonError};
use crate::sets::{Interval, IntegerSet, IntervalUnion, ELEMENT_CEILING};
use crate::sidon::{is_sidon, SidonCheck, SidonMode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricFamily {
    pub n: u64,
    pub base: u64,
    /// `{b^{k+1} : k = 1..n}`
    pub powers: IntegerSet,
    /// `{b^{k+1} + k : k = 1..n-1}`
    pub offsets: IntegerSet,
    /// The `n` blocks as listed, before any merging.
    pub blocks: Vec<Interval>,
}

pub fn build_family(n: u64, base: u64) -> Result<GeometricFamily> {
    if n == 0 {
        return Err(SidonError::precondition("family needs n >= 1"));
    }
    if base < 2 {
        return Err(SidonError::precondition(format!("base must be at least 2, got {base}")));
    }
    let top = u32::try_from(n + 1)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .filter(|&v| v.checked_add(n).is_some_and(|end| end <= ELEMENT_CEILING))
        .ok_or_else(|| SidonError::resource(format!("{base}^{} + {n} exceeds the 2^62 element ceiling", n + 1)))?;
    debug_assert!(top >= base);

    let mut powers = Vec::with_capacity(n as usize);
    let mut offsets = Vec::with_capacity(n as usize);
    let mut blocks = Vec::with_capacity(n as usize);
    let mut pw = base * base;
    for k in 1..=n {
        powers.push(pw);
        if k < n {
            offsets.push(pw + k);
        }
        blocks.push(Interval::new(pw, pw + n - 1)?);
        if k < n {
            pw *= base;
        }
    }
    Ok(GeometricFamily {
        n,
        base,
        powers: IntegerSet::try_new(powers)?,
        offsets: IntegerSet::try_new(offsets)?,
        blocks,
    })
}

impl GeometricFamily {
    /// `powers ∪ offsets`.
    pub fn set(&self) -> IntegerSet {
        self.powers.iter().chain(self.offsets.iter()).collect()
    }

    /// Union of the blocks; overlapping or touching blocks merge.
    pub fn union(&self) -> IntervalUnion {
        IntervalUnion::union_of(self.blocks.iter().map(|b| (b.lo, b.hi))).expect("blocks are valid intervals")
    }

    /// True when the blocks are pairwise separated by at least one integer.
    pub fn blocks_disjoint(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0].hi + 1 < w[1].lo)
    }
}

pub fn verify_family(f: &GeometricFamily, mode: SidonMode) -> SidonCheck {
    is_sidon(&f.set(), mode)
}
