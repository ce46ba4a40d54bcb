//! Sidon verification.
//!
//! Two notions are supported. In [`SidonMode::Strict`] (the default, the
//! usual B₂ condition) every sum `a + b` with `a <= b` is distinct, which is
//! the same as all differences of distinct elements being distinct. In
//! [`SidonMode::Weak`] only sums of two *distinct* elements must differ.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::sets::IntegerSet;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SidonMode {
    #[default]
    Strict,
    Weak,
}

/// A repeated sum `a + b = c + d` with `{a, b} != {c, d}`, stored in the
/// canonical order `a < c <= d < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[u64; 4]", from = "[u64; 4]")]
pub struct Quadruple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl Quadruple {
    /// Re-checks the arithmetic of the witness.
    pub fn is_valid_for(&self, mode: SidonMode) -> bool {
        let sums_agree = self.a.checked_add(self.b) == self.c.checked_add(self.d);
        let pairs_differ = (self.a, self.b) != (self.c, self.d) && (self.a, self.b) != (self.d, self.c);
        let distinct = match mode {
            SidonMode::Strict => true,
            SidonMode::Weak => self.a != self.b && self.c != self.d,
        };
        sums_agree && pairs_differ && distinct
    }
}

impl From<Quadruple> for [u64; 4] {
    fn from(q: Quadruple) -> Self {
        [q.a, q.b, q.c, q.d]
    }
}

impl From<[u64; 4]> for Quadruple {
    fn from([a, b, c, d]: [u64; 4]) -> Self {
        Quadruple { a, b, c, d }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidonCheck {
    pub is_sidon: bool,
    pub mode: SidonMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Quadruple>,
}

/// Checks the Sidon property; on failure reports the lexicographically
/// smallest canonical quadruple.
pub fn is_sidon(set: &IntegerSet, mode: SidonMode) -> SidonCheck {
    if passes(set.as_slice(), mode) {
        return SidonCheck { is_sidon: true, mode, witness: None };
    }
    let witness = smallest_witness(set.as_slice(), mode);
    debug_assert!(witness.is_some());
    SidonCheck { is_sidon: false, mode, witness }
}

/// Boolean-only check.
pub fn is_sidon_strict(set: &IntegerSet) -> bool {
    passes(set.as_slice(), SidonMode::Strict)
}

fn passes(xs: &[u64], mode: SidonMode) -> bool {
    let n = xs.len();
    if n <= 2 {
        return true;
    }
    let mut values = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            values.push(match mode {
                SidonMode::Strict => xs[j] - xs[i],
                SidonMode::Weak => xs[i] + xs[j],
            });
        }
    }
    values.sort_unstable();
    values.windows(2).all(|w| w[0] != w[1])
}

fn smallest_witness(xs: &[u64], mode: SidonMode) -> Option<Quadruple> {
    // For each sum keep the two pairs with the smallest first component.
    let mut by_sum: HashMap<u64, [Option<(u64, u64)>; 2]> = HashMap::new();
    let same_ok = mode == SidonMode::Strict;
    for (i, &x) in xs.iter().enumerate() {
        let start = if same_ok { i } else { i + 1 };
        for &y in &xs[start..] {
            // Iteration order is increasing in x, so the first two pairs seen
            // for a sum are the two with smallest x.
            let slot = by_sum.entry(x + y).or_insert([None, None]);
            if slot[0].is_none() {
                slot[0] = Some((x, y));
            } else if slot[1].is_none() {
                slot[1] = Some((x, y));
            }
        }
    }
    by_sum
        .into_values()
        .filter_map(|slot| match slot {
            [Some((a, b)), Some((c, d))] => Some(Quadruple { a, b, c, d }),
            _ => None,
        })
        .min()
}
