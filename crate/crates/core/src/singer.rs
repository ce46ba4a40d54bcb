//! Singer perfect difference sets and dense Sidon sets in `[1, N]`.
//!
//! For a prime `p` let `q = p² + p + 1` and let `g` generate GF(p³)*. The
//! exponents `i` for which `g^i` lies in the plane spanned by `{1, x}` form,
//! modulo `q`, a set `D` of `p + 1` residues whose differences hit every
//! nonzero residue mod `q` exactly once. Because `g^q` generates GF(p)* and
//! the plane is closed under scalars, it is enough to scan `i` in `[0, q)`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SidonError};
use crate::field::{build_extension_with_ceiling, DEFAULT_PRIME_CEILING};
use crate::primes::{is_prime, largest_prime_with};
use crate::sets::{IntegerSet, IntervalUnion};
use crate::solver;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingerSystem {
    pub p: u64,
    pub q: u64,
    #[serde(rename = "D")]
    pub difference_set: IntegerSet,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub translates: Vec<IntegerSet>,
}

impl SingerSystem {
    /// Wraps an externally supplied difference set after checking it.
    pub fn from_difference_set(p: u64, difference_set: IntegerSet) -> Result<Self> {
        if !is_prime(p) {
            return Err(SidonError::precondition(format!("{p} is not prime")));
        }
        let q = p * p + p + 1;
        if difference_set.len() as u64 != p + 1 || difference_set.max().is_some_and(|m| m >= q) {
            return Err(SidonError::precondition(format!("expected {} residues below {q}", p + 1)));
        }
        if !is_perfect_difference_set(&difference_set, q) {
            return Err(SidonError::precondition("not a perfect difference set"));
        }
        Ok(SingerSystem { p, q, difference_set, translates: Vec::new() })
    }
}

/// Every nonzero residue mod `q` is `d_i - d_j` for exactly one ordered pair.
pub fn is_perfect_difference_set(d: &IntegerSet, q: u64) -> bool {
    let mut hits = vec![0u32; q as usize];
    for a in d.iter() {
        for b in d.iter() {
            if a != b {
                hits[((a + q - b) % q) as usize] += 1;
            }
        }
    }
    hits[1..].iter().all(|&h| h == 1)
}

pub fn singer_difference_set(p: u64) -> Result<SingerSystem> {
    singer_difference_set_with_ceiling(p, DEFAULT_PRIME_CEILING)
}

pub fn singer_difference_set_with_ceiling(p: u64, ceiling: u64) -> Result<SingerSystem> {
    let ext = build_extension_with_ceiling(p, ceiling)?;
    let q = p * p + p + 1;
    let mut residues = Vec::with_capacity(p as usize + 1);
    let mut power = ext.one();
    for i in 0..q {
        if power[2] == 0 {
            residues.push(i);
        }
        power = ext.mul(power, ext.generator);
    }
    // 0 is always present (g^0 = 1), so the set is already normalized to min 0
    let difference_set = IntegerSet::try_new(residues)?;
    debug_assert_eq!(difference_set.len() as u64, p + 1);
    Ok(SingerSystem { p, q, difference_set, translates: Vec::new() })
}

/// Fills in the `p + 1` translates `(D - d_i) mod q`, writing residue 0 as `q`
/// so that each lives in `[1, q]`. Translate `i` belongs to the `i`-th
/// smallest element of `D`.
pub fn translate_family(mut sys: SingerSystem) -> SingerSystem {
    let q = sys.q;
    sys.translates = sys
        .difference_set
        .iter()
        .map(|shift| {
            sys.difference_set
                .iter()
                .map(|d| match (d + q - shift) % q {
                    0 => q,
                    r => r,
                })
                .collect()
        })
        .collect();
    sys
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DenseMethod {
    Singer,
    ErdosTuran,
    #[default]
    Best,
}

/// Largest `N` for which `[1, N]` is handed to the exact solver instead of a
/// classical construction.
const SMALL_EXACT_LIMIT: u64 = 6;

/// A large strict-Sidon subset of `[1, n]`.
///
/// * `Singer`: the largest prime `p` with `p² + p + 1 <= n`; returns `D + 1`.
/// * `ErdosTuran`: the largest prime `p` with `2p² <= n`; returns
///   `{2p·i + (i² mod p) + 1 : 0 <= i < p}`.
/// * `Best`: whichever of the two is larger (Singer on ties).
///
/// When neither construction fits, the exact optimum of `[1, n]` is used.
pub fn dense_sidon_in(n: u64, method: DenseMethod) -> Result<IntegerSet> {
    if n == 0 {
        return Err(SidonError::precondition("dense_sidon_in needs n >= 1"));
    }
    match method {
        DenseMethod::Singer => singer_in(n),
        DenseMethod::ErdosTuran => erdos_turan_in(n),
        DenseMethod::Best => {
            if n <= SMALL_EXACT_LIMIT {
                return exact_in(n);
            }
            let et = erdos_turan_in(n)?;
            match singer_in(n) {
                Ok(s) if s.len() >= et.len() => Ok(s),
                Ok(_) => Ok(et),
                Err(e) if e.is_resource() => Ok(et),
                Err(e) => Err(e),
            }
        }
    }
}

fn singer_in(n: u64) -> Result<IntegerSet> {
    match largest_prime_with(n, |p| p * p + p + 1) {
        Some(p) => Ok(singer_difference_set(p)?.difference_set.shifted(1)),
        None => exact_in(n),
    }
}

fn erdos_turan_in(n: u64) -> Result<IntegerSet> {
    match largest_prime_with(n, |p| 2 * p * p) {
        Some(p) => Ok(erdos_turan_set(p)),
        None => exact_in(n),
    }
}

/// `{2p·i + (i² mod p) + 1 : 0 <= i < p}`, a Sidon set in `[1, 2p² - p]`.
pub fn erdos_turan_set(p: u64) -> IntegerSet {
    (0..p).map(|i| 2 * p * i + (i * i) % p + 1).collect()
}

fn exact_in(n: u64) -> Result<IntegerSet> {
    let domain = IntervalUnion::single(1, n)?.to_integer_set();
    let res = solver::max_sidon_bb(&domain, &solver::SolverConfig::default())?;
    Ok(res.witness_set)
}
