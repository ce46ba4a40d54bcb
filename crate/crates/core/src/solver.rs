//! Exact maximum strict-Sidon subsets of small finite sets.
//!
//! Two independent routes are provided: [`max_sidon_naive`] enumerates every
//! Sidon subset with a hash set of differences and nothing else, while
//! [`max_sidon_bb`] is a branch-and-bound search with constant-time
//! difference bookkeeping and a residual-size bound. Both return the
//! lexicographically smallest optimal subset.

use std::collections::HashSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bound::bound_optimal_u;
use crate::error::{Result, SidonError};
use crate::sets::IntegerSet;

pub const NAIVE_CAP: usize = 25;
pub const DEFAULT_BB_CAP: usize = 80;

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub cap: usize,
    pub timeout: Option<Duration>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { cap: DEFAULT_BB_CAP, timeout: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub optimum: usize,
    pub witness_set: IntegerSet,
    pub nodes_explored: u64,
    pub elapsed_ms: f64,
    /// False when the search stopped on its time budget; `optimum` is then
    /// only a lower bound.
    pub complete: bool,
}

pub fn max_sidon_naive(a: &IntegerSet) -> Result<SolveResult> {
    if a.len() > NAIVE_CAP {
        return Err(SidonError::resource(format!("naive solver is capped at {NAIVE_CAP} elements, got {}", a.len())));
    }
    let start = Instant::now();
    let xs = a.as_slice();
    let mut state = NaiveState { best: Vec::new(), cur: Vec::new(), used: HashSet::new(), nodes: 0 };
    state.walk(xs, 0);
    Ok(SolveResult {
        optimum: state.best.len(),
        witness_set: state.best.into_iter().collect(),
        nodes_explored: state.nodes,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        complete: true,
    })
}

struct NaiveState {
    best: Vec<u64>,
    cur: Vec<u64>,
    used: HashSet<u64>,
    nodes: u64,
}

impl NaiveState {
    fn walk(&mut self, xs: &[u64], i: usize) {
        self.nodes += 1;
        if i == xs.len() {
            if self.cur.len() > self.best.len() || (self.cur.len() == self.best.len() && self.cur < self.best) {
                self.best = self.cur.clone();
            }
            return;
        }
        let x = xs[i];
        let diffs: Vec<u64> = self.cur.iter().map(|&c| x - c).collect();
        if diffs.iter().all(|d| !self.used.contains(d)) {
            self.used.extend(diffs.iter().copied());
            self.cur.push(x);
            self.walk(xs, i + 1);
            self.cur.pop();
            for d in &diffs {
                self.used.remove(d);
            }
        }
        self.walk(xs, i + 1);
    }
}

/// Largest hull length for which the per-length upper bound is tabulated.
const HULL_TABLE_LEN: u64 = 2048;

/// `hull_bound()[h]` bounds the size of any Sidon subset of an interval of
/// length `h`, via the window-counting bound with the best window.
fn hull_bound() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=HULL_TABLE_LEN)
            .map(|h| match h {
                0..=2 => h as u32,
                _ => {
                    let b = bound_optimal_u(h, 1, h - 1).expect("valid query").bound;
                    ((b + 1e-9).floor() as u32).min(h as u32)
                }
            })
            .collect()
    })
}

pub fn max_sidon_bb(a: &IntegerSet, cfg: &SolverConfig) -> Result<SolveResult> {
    if a.len() > cfg.cap {
        return Err(SidonError::resource(format!("solver is capped at {} elements, got {}", cfg.cap, a.len())));
    }
    let start = Instant::now();
    let xs = a.as_slice();
    let n = xs.len();

    // Every difference that can occur is some xs[j] - xs[i]; index them so
    // occupancy is a flat boolean table.
    let mut all: Vec<u64> = Vec::with_capacity(n * n / 2);
    for i in 0..n {
        for j in i + 1..n {
            all.push(xs[j] - xs[i]);
        }
    }
    all.sort_unstable();
    all.dedup();
    let mut diff_id = vec![0u32; n * n];
    for i in 0..n {
        for j in i + 1..n {
            diff_id[i * n + j] = all.binary_search(&(xs[j] - xs[i])).expect("present") as u32;
        }
    }

    // residual_cap[i] bounds how many of xs[i..] can still be added: by the
    // count, by the hull of the suffix, and by summing the bound over each
    // run of consecutive integers in the suffix.
    let table = hull_bound();
    let tabulated = |len: u64| if len <= HULL_TABLE_LEN { table[len as usize] } else { u32::try_from(len).unwrap_or(u32::MAX) };
    let mut residual_cap = vec![0u32; n + 1];
    let mut run_sum = vec![0u32; n + 1];
    let mut run_end = n;
    for i in (0..n).rev() {
        if i + 1 == n || xs[i + 1] != xs[i] + 1 {
            run_end = i;
        }
        run_sum[i] = tabulated((run_end - i + 1) as u64) + run_sum[run_end + 1];
        let remaining = (n - i) as u32;
        residual_cap[i] = remaining.min(tabulated(xs[n - 1] - xs[i] + 1)).min(run_sum[i]);
    }

    let mut search = BbSearch {
        n,
        diff_id,
        used: vec![false; all.len()],
        residual_cap,
        cur: Vec::with_capacity(n),
        best: Vec::new(),
        nodes: 0,
        deadline: cfg.timeout.map(|t| start + t),
        timed_out: false,
    };
    search.walk(0);
    let witness_set = search.best.iter().map(|&i| xs[i]).collect();
    Ok(SolveResult {
        optimum: search.best.len(),
        witness_set,
        nodes_explored: search.nodes,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        complete: !search.timed_out,
    })
}

struct BbSearch {
    n: usize,
    diff_id: Vec<u32>,
    used: Vec<bool>,
    residual_cap: Vec<u32>,
    /// Indices of chosen elements, increasing.
    cur: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl BbSearch {
    fn mark(&mut self, i: usize, value: bool) {
        for &c in &self.cur {
            self.used[self.diff_id[c * self.n + i] as usize] = value;
        }
    }

    fn walk(&mut self, i: usize) {
        self.nodes += 1;
        if self.nodes % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out {
            return;
        }
        if self.cur.len() > self.best.len() {
            self.best = self.cur.clone();
        }
        if i == self.n || self.cur.len() + self.residual_cap[i] as usize <= self.best.len() {
            return;
        }
        let n = self.n;
        if self.cur.iter().all(|&c| !self.used[self.diff_id[c * n + i] as usize]) {
            self.mark(i, true);
            self.cur.push(i);
            self.walk(i + 1);
            self.cur.pop();
            self.mark(i, false);
        }
        self.walk(i + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sidon::is_sidon_strict;

    fn set(s: &str) -> IntegerSet {
        s.parse().unwrap()
    }

    fn range(lo: u64, hi: u64) -> IntegerSet {
        (lo..=hi).collect()
    }

    #[test]
    fn naive_examples() {
        let r = max_sidon_naive(&range(1, 7)).unwrap();
        assert_eq!(r.optimum, 4);
        assert_eq!(r.witness_set, set("1,2,5,7"));
        assert_eq!(max_sidon_naive(&IntegerSet::empty()).unwrap().optimum, 0);
        assert_eq!(max_sidon_naive(&set("4,5,8,10,16")).unwrap().optimum, 4);
        assert!(max_sidon_naive(&range(1, 26)).unwrap_err().is_resource());
    }

    #[test]
    fn bb_matches_naive_on_ranges() {
        for hi in 1..=16 {
            let a = range(1, hi);
            let naive = max_sidon_naive(&a).unwrap();
            let bb = max_sidon_bb(&a, &SolverConfig::default()).unwrap();
            assert_eq!(bb.optimum, naive.optimum, "[1,{hi}]");
            assert_eq!(bb.witness_set, naive.witness_set, "[1,{hi}]");
            assert!(bb.complete);
        }
    }

    #[test]
    fn known_golomb_optima() {
        // optimal Golomb rulers: m marks need length 0,1,3,6,11,17,25,34,44,55
        let lengths = [0u64, 1, 3, 6, 11, 17, 25, 34, 44, 55];
        for (m, &len) in lengths.iter().enumerate().skip(1) {
            let marks = m + 1;
            let fits = max_sidon_bb(&range(1, len + 1), &SolverConfig::default()).unwrap();
            assert_eq!(fits.optimum, marks, "[1,{}]", len + 1);
            let short = max_sidon_bb(&range(1, len), &SolverConfig::default()).unwrap();
            assert_eq!(short.optimum, marks - 1, "[1,{len}]");
        }
    }

    #[test]
    fn bb_witness_is_sidon_subset() {
        let a: IntegerSet = (1..=7).chain(20..=26).collect();
        let r = max_sidon_bb(&a, &SolverConfig::default()).unwrap();
        assert!(r.optimum >= 4);
        assert!(is_sidon_strict(&r.witness_set));
        assert!(r.witness_set.is_subset_of(&a));
        assert_eq!(r.optimum, max_sidon_naive(&a).unwrap().optimum);
    }

    #[test]
    fn singleton_and_huge_gaps() {
        assert_eq!(max_sidon_bb(&set("995007"), &SolverConfig::default()).unwrap().optimum, 1);
        let r = max_sidon_bb(&set("1,2,1000000000000,4611686018427387904"), &SolverConfig::default()).unwrap();
        assert_eq!(r.optimum, 4);
    }

    #[test]
    fn cap_and_timeout() {
        let cfg = SolverConfig { cap: 10, timeout: None };
        assert!(max_sidon_bb(&range(1, 11), &cfg).unwrap_err().is_resource());
        let cfg = SolverConfig { cap: 80, timeout: Some(Duration::ZERO) };
        let r = max_sidon_bb(&range(1, 80), &cfg).unwrap();
        assert!(!r.complete);
        assert!(is_sidon_strict(&r.witness_set));
    }

    #[test]
    fn hull_table_is_sound_for_small_lengths() {
        let t = hull_bound();
        for h in 1..=20u64 {
            let exact = max_sidon_naive(&range(1, h)).unwrap().optimum as u32;
            assert!(t[h as usize] >= exact, "h={h}");
        }
    }
}
