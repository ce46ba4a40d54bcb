use std::collections::HashSet;

use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

use sidon_core::bound::{bound_optimal_u, count_windows};
use sidon_core::sidon::{is_sidon_strict, Quadruple};
use sidon_core::solver::{max_sidon_bb, max_sidon_naive, SolverConfig};
use sidon_core::two_interval::{best_construction, construct, ConstructionMethod, TwoIntervalInstance};
use sidon_core::{is_sidon, IntegerSet, IntervalUnion, SidonMode};

/// Straight from the definitions: compare every pair of pairs.
fn oracle_is_sidon(xs: &[u64], mode: SidonMode) -> bool {
    let mut pairs = Vec::new();
    for i in 0..xs.len() {
        let start = if mode == SidonMode::Strict { i } else { i + 1 };
        for j in start..xs.len() {
            pairs.push((xs[i], xs[j]));
        }
    }
    for (x, p) in pairs.iter().enumerate() {
        for q in &pairs[x + 1..] {
            if p.0 + p.1 == q.0 + q.1 {
                return false;
            }
        }
    }
    true
}

fn small_set() -> impl Strategy<Value = IntegerSet> {
    btree_set(1u64..200, 0..14).prop_map(|s| s.into_iter().collect())
}

/// Greedy Sidon subset of `xs` in increasing order.
fn greedy_sidon(xs: &[u64]) -> IntegerSet {
    let mut chosen: Vec<u64> = Vec::new();
    let mut diffs = HashSet::new();
    for &x in xs {
        let new: Vec<u64> = chosen.iter().map(|&c| x - c).collect();
        if new.iter().all(|d| !diffs.contains(d)) {
            diffs.extend(new);
            chosen.push(x);
        }
    }
    chosen.into_iter().collect()
}

/// Up to four disjoint, non-adjacent intervals inside [1, 400].
fn union_strategy() -> impl Strategy<Value = IntervalUnion> {
    vec((1u64..30, 2u64..25), 1..5).prop_map(|parts| {
        let mut lo = 1;
        let mut spans = Vec::new();
        for (len, gap) in parts {
            spans.push((lo, lo + len - 1));
            lo += len + gap;
        }
        spans.reverse();
        IntervalUnion::normalize(spans).unwrap()
    })
}

proptest! {
    #[test]
    fn verdicts_match_definition(s in small_set()) {
        for mode in [SidonMode::Strict, SidonMode::Weak] {
            let check = is_sidon(&s, mode);
            prop_assert_eq!(check.is_sidon, oracle_is_sidon(s.as_slice(), mode));
            prop_assert_eq!(check.is_sidon, check.witness.is_none());
            if let Some(w) = check.witness {
                prop_assert!(w.is_valid_for(mode));
                prop_assert!([w.a, w.b, w.c, w.d].iter().all(|&x| s.contains(x)));
                prop_assert!(w.a < w.c && w.c <= w.d && w.d < w.b);
            }
        }
    }

    #[test]
    fn strict_implies_weak(s in small_set()) {
        if is_sidon(&s, SidonMode::Strict).is_sidon {
            prop_assert!(is_sidon(&s, SidonMode::Weak).is_sidon);
        }
    }

    #[test]
    fn witness_is_lexicographically_smallest(s in btree_set(1u64..60, 0..10)) {
        let s: IntegerSet = s.into_iter().collect();
        let xs = s.as_slice();
        let mut all = Vec::new();
        for &a in xs { for &c in xs { for &d in xs { for &b in xs {
            if a < c && c <= d && d < b && a + b == c + d {
                all.push(Quadruple { a, b, c, d });
            }
        }}}}
        let smallest = all.iter().min_by_key(|q| (q.a, q.b, q.c, q.d)).copied();
        prop_assert_eq!(is_sidon(&s, SidonMode::Strict).witness, smallest);
    }

    #[test]
    fn normalize_preserves_cardinality(spans in vec((1u64..500, 0u64..40), 1..6)) {
        let spans: Vec<(u64, u64)> = spans.into_iter().map(|(lo, len)| (lo, lo + len)).collect();
        let merged = IntervalUnion::union_of(spans.clone()).unwrap();
        let points: HashSet<u64> = spans.iter().flat_map(|&(lo, hi)| lo..=hi).collect();
        prop_assert_eq!(merged.cardinality(), points.len() as u64);
        prop_assert!(points.iter().all(|&x| merged.contains(x)));
        let reparsed: IntervalUnion = merged.to_string().parse().unwrap();
        prop_assert_eq!(&reparsed, &merged);
        let renormalized =
            IntervalUnion::normalize(merged.intervals().iter().rev().map(|iv| (iv.lo, iv.hi))).unwrap();
        prop_assert_eq!(renormalized.cardinality(), merged.cardinality());
    }

    #[test]
    fn set_text_round_trip(s in small_set()) {
        let back: IntegerSet = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn counting_identities(e in union_strategy(), u_frac in 0.0f64..1.0, pick in vec(any::<bool>(), 400)) {
        let n = e.cardinality();
        prop_assume!(n >= 2);
        let u = 1 + ((n - 1) as f64 * u_frac) as u64 % (n - 1);
        let elems: Vec<u64> = e.iter().collect();
        let subset: IntegerSet = elems.iter().zip(&pick).filter(|(_, &p)| p).map(|(&x, _)| x).collect();
        let w = count_windows(&e, &subset, u).unwrap();
        prop_assert_eq!(w.incidence_sum, subset.len() as u64 * u);

        // oracle: enumerate the windows [m-u, m-1], m ∈ E + [1, u], directly
        let ms: HashSet<u64> = elems.iter().flat_map(|&x| x + 1..=x + u).collect();
        let t_u: u64 = ms
            .iter()
            .map(|&m| {
                let c = subset.iter().filter(|&s| s + u >= m && s < m).count() as u64;
                c * c.saturating_sub(1) / 2
            })
            .sum();
        prop_assert_eq!(w.t_u, t_u);
        prop_assert_eq!(w.window_count, ms.len() as u64);
        prop_assert!(w.window_count <= w.window_estimate);

        let r = subset.len() as f64 * u as f64;
        let lower = r / 2.0 * (r / w.window_estimate as f64 - 1.0);
        prop_assert!(w.t_u as f64 >= lower - 1e-9);

        let sidon = greedy_sidon(&elems);
        let w = count_windows(&e, &sidon, u).unwrap();
        prop_assert!(w.t_u <= u * (u - 1) / 2);
    }

    #[test]
    fn solvers_agree(s in btree_set(1u64..60, 0..=18)) {
        let s: IntegerSet = s.into_iter().collect();
        let naive = max_sidon_naive(&s).unwrap();
        let bb = max_sidon_bb(&s, &SolverConfig::default()).unwrap();
        prop_assert_eq!(bb.optimum, naive.optimum);
        prop_assert_eq!(&bb.witness_set, &naive.witness_set);
        prop_assert!(is_sidon_strict(&bb.witness_set));
        prop_assert!(bb.witness_set.is_subset_of(&s));
    }

    #[test]
    fn optimum_grows_by_at_most_one(s in btree_set(1u64..80, 1..16), extra in 1u64..80) {
        let a: IntegerSet = s.iter().copied().collect();
        let b: IntegerSet = s.iter().copied().chain([extra]).collect();
        let fa = max_sidon_bb(&a, &SolverConfig::default()).unwrap().optimum;
        let fb = max_sidon_bb(&b, &SolverConfig::default()).unwrap().optimum;
        prop_assert!(fa <= fb && fb <= fa + 1);
    }

    #[test]
    fn constructions_are_sandwiched(n1 in 1u64..25, n2 in 1u64..25, gap in 0u64..40) {
        prop_assume!(n1 + n2 <= 40);
        let (n1, n2) = (n1.max(n2), n1.min(n2));
        let inst = TwoIntervalInstance::normalized(n1, n2, n1 + 1 + gap).unwrap();
        let a = inst.original_union();
        let exact = max_sidon_bb(&a.to_integer_set(), &SolverConfig::default()).unwrap().optimum;
        for m in ConstructionMethod::ALL {
            if let Ok(r) = construct(&inst, m) {
                prop_assert!(a.is_superset_of(&r.set));
                prop_assert!(is_sidon_strict(&r.set));
                prop_assert!(r.size <= exact);
            }
        }
        let best = best_construction(&inst).unwrap();
        let upper = bound_optimal_u(n1 + n2, 2, n1 + n2 - 1).unwrap().bound;
        prop_assert!(best.size <= exact);
        prop_assert!(exact as f64 <= upper + 1e-9);
    }
}
