//! Large Sidon subsets of a union of two intervals.
//!
//! Instances are moved into a normal frame where `I₁ = [1, n1]`,
//! `I₂ = [gap_start, gap_start + n2 - 1]` and `n2 <= n1`. If the second
//! interval is the longer one the union is reflected (`x ↦ max A + 1 - x`),
//! and results are mapped back to the caller's coordinates.
//!
//! Shape parameters: `α = n2/n1` and `β = (gap_start - n1)/n1`.
//!
//! | method       | idea                                                        |
//! |--------------|-------------------------------------------------------------|
//! | `case_i`     | dense set inside `I₁` alone                                 |
//! | `case_ii`    | Singer translate over `[1, q]` with fewest gap elements     |
//! | `case_iii_a` | dense set in `[1, n1+n2]`, upper part shifted into `I₂`     |
//! | `case_iii_b` | split at `⌊gap_start/2⌋`, shift by `⌈gap_start/2⌉`          |
//! | `case_iii_c` | split at `⌊T/3⌋` of `[1, ⌊2T/3⌋]`, shift by `⌈T/3⌉`, `T = max A + 1` |
//! | `dense_in_I2`| dense set inside `I₂` alone                                 |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SidonError};
use crate::primes::largest_prime_with;
use crate::sets::{Interval, IntegerSet, IntervalUnion};
use crate::sidon::is_sidon_strict;
use crate::singer::{dense_sidon_in, singer_difference_set, translate_family, DenseMethod};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Frame {
    Shift { offset: u64 },
    Reflect { top: u64 },
}

/// Serializes as `{n1, n2, gap_start, alpha, beta}`; deserializing yields the
/// instance in the normal frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "InstanceView", try_from = "InstanceView")]
pub struct TwoIntervalInstance {
    pub n1: u64,
    pub n2: u64,
    pub gap_start: u64,
    frame: Frame,
}

#[derive(Serialize, Deserialize)]
struct InstanceView {
    n1: u64,
    n2: u64,
    gap_start: u64,
    alpha: f64,
    beta: f64,
}

impl From<TwoIntervalInstance> for InstanceView {
    fn from(i: TwoIntervalInstance) -> Self {
        InstanceView { n1: i.n1, n2: i.n2, gap_start: i.gap_start, alpha: i.alpha(), beta: i.beta() }
    }
}

impl TryFrom<InstanceView> for TwoIntervalInstance {
    type Error = SidonError;

    fn try_from(v: InstanceView) -> Result<Self> {
        TwoIntervalInstance::normalized(v.n1, v.n2, v.gap_start)
    }
}

impl TwoIntervalInstance {
    /// Builds an instance from two disjoint intervals given in either order.
    pub fn from_intervals(x: Interval, y: Interval) -> Result<Self> {
        let (first, second) = if x.lo <= y.lo { (x, y) } else { (y, x) };
        if second.lo <= first.hi {
            return Err(SidonError::Overlap(first.lo, first.hi, second.lo, second.hi));
        }
        let (len1, len2) = (first.len(), second.len());
        if len2 > len1 {
            let top = second.hi;
            Ok(TwoIntervalInstance {
                n1: len2,
                n2: len1,
                gap_start: top + 1 - first.hi,
                frame: Frame::Reflect { top },
            })
        } else {
            let offset = first.lo - 1;
            Ok(TwoIntervalInstance { n1: len1, n2: len2, gap_start: second.lo - offset, frame: Frame::Shift { offset } })
        }
    }

    /// Instance already in the normal frame.
    pub fn normalized(n1: u64, n2: u64, gap_start: u64) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(SidonError::precondition("both intervals must be nonempty"));
        }
        let i1 = Interval::new(1, n1)?;
        let i2 = Interval::new(gap_start, gap_start.saturating_add(n2 - 1))?;
        TwoIntervalInstance::from_intervals(i1, i2)
    }

    pub fn alpha(&self) -> f64 {
        self.n2 as f64 / self.n1 as f64
    }

    pub fn beta(&self) -> f64 {
        (self.gap_start - self.n1) as f64 / self.n1 as f64
    }

    pub fn total(&self) -> u64 {
        self.n1 + self.n2
    }

    /// `max A` in the normal frame.
    pub fn max_element(&self) -> u64 {
        self.gap_start + self.n2 - 1
    }

    pub fn normal_union(&self) -> IntervalUnion {
        IntervalUnion::normalize([(1, self.n1), (self.gap_start, self.max_element())])
            .expect("instance intervals are valid")
    }

    /// The union in the caller's coordinates.
    pub fn original_union(&self) -> IntervalUnion {
        let (a, b) = (self.to_original(1), self.to_original(self.n1));
        let (c, d) = (self.to_original(self.gap_start), self.to_original(self.max_element()));
        IntervalUnion::normalize([(a.min(b), a.max(b)), (c.min(d), c.max(d))]).expect("instance intervals are valid")
    }

    fn to_original(&self, x: u64) -> u64 {
        match self.frame {
            Frame::Shift { offset } => x + offset,
            Frame::Reflect { top } => top + 1 - x,
        }
    }

    fn set_to_original(&self, s: &IntegerSet) -> IntegerSet {
        s.iter().map(|x| self.to_original(x)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConstructionMethod {
    #[serde(rename = "case_i")]
    CaseI,
    #[serde(rename = "case_ii")]
    CaseIi,
    #[serde(rename = "case_iii_a")]
    CaseIiiA,
    #[serde(rename = "case_iii_b")]
    CaseIiiB,
    #[serde(rename = "case_iii_c")]
    CaseIiiC,
    #[serde(rename = "dense_in_I2")]
    DenseInI2,
}

impl ConstructionMethod {
    /// Dispatcher order; earlier labels win ties.
    pub const ALL: [ConstructionMethod; 6] = [
        ConstructionMethod::CaseI,
        ConstructionMethod::CaseIi,
        ConstructionMethod::CaseIiiA,
        ConstructionMethod::CaseIiiB,
        ConstructionMethod::CaseIiiC,
        ConstructionMethod::DenseInI2,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ConstructionMethod::CaseI => "case_i",
            ConstructionMethod::CaseIi => "case_ii",
            ConstructionMethod::CaseIiiA => "case_iii_a",
            ConstructionMethod::CaseIiiB => "case_iii_b",
            ConstructionMethod::CaseIiiC => "case_iii_c",
            ConstructionMethod::DenseInI2 => "dense_in_I2",
        }
    }
}

impl fmt::Display for ConstructionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ConstructionMethod {
    type Err = SidonError;

    /// Accepts the short CLI names (`i`, `ii`, `iiia`, ...) and the full labels.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "i" | "case_i" => ConstructionMethod::CaseI,
            "ii" | "case_ii" => ConstructionMethod::CaseIi,
            "iiia" | "case_iii_a" => ConstructionMethod::CaseIiiA,
            "iiib" | "case_iii_b" => ConstructionMethod::CaseIiiB,
            "iiic" | "case_iii_c" => ConstructionMethod::CaseIiiC,
            "i2" | "dense_in_I2" => ConstructionMethod::DenseInI2,
            _ => return Err(SidonError::Parse { what: "construction method", input: s.to_string() }),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub method: ConstructionMethod,
    pub set: IntegerSet,
    pub size: usize,
    pub ratio: f64,
    pub verified: bool,
    /// Elements removed because rounding pushed them past `max I₂`.
    pub dropped: usize,
}

/// Case selection for thresholds `(α₀, β₀)`. Boundary ties go to the earlier
/// case.
pub fn classify(inst: &TwoIntervalInstance, alpha0: f64, beta0: f64) -> ConstructionMethod {
    let (alpha, beta) = (inst.alpha(), inst.beta());
    if alpha <= alpha0 {
        ConstructionMethod::CaseI
    } else if beta <= beta0 {
        ConstructionMethod::CaseIi
    } else if beta >= 1.0 {
        ConstructionMethod::CaseIiiA
    } else if beta0 < 1.0 && beta > 2.0 * alpha - 1.0 {
        ConstructionMethod::CaseIiiB
    } else {
        ConstructionMethod::CaseIiiC
    }
}

pub fn construct(inst: &TwoIntervalInstance, method: ConstructionMethod) -> Result<ConstructionReport> {
    let (set, dropped) = match method {
        ConstructionMethod::CaseI => (dense_sidon_in(inst.n1, DenseMethod::Best)?, 0),
        ConstructionMethod::CaseIi => case_ii_set(inst)?,
        ConstructionMethod::CaseIiiA => case_iii_a_set(inst)?,
        ConstructionMethod::CaseIiiB => case_iii_b_set(inst)?,
        ConstructionMethod::CaseIiiC => case_iii_c_set(inst)?,
        ConstructionMethod::DenseInI2 => {
            (dense_sidon_in(inst.n2, DenseMethod::Best)?.shifted(inst.gap_start as i64 - 1), 0)
        }
    };
    finish(inst, method, set, dropped)
}

pub fn construct_case_i(inst: &TwoIntervalInstance) -> Result<ConstructionReport> {
    construct(inst, ConstructionMethod::CaseI)
}

pub fn construct_case_ii(inst: &TwoIntervalInstance) -> Result<ConstructionReport> {
    construct(inst, ConstructionMethod::CaseIi)
}

pub fn construct_case_iii_a(inst: &TwoIntervalInstance) -> Result<ConstructionReport> {
    construct(inst, ConstructionMethod::CaseIiiA)
}

pub fn construct_case_iii_b(inst: &TwoIntervalInstance) -> Result<ConstructionReport> {
    construct(inst, ConstructionMethod::CaseIiiB)
}

pub fn construct_case_iii_c(inst: &TwoIntervalInstance) -> Result<ConstructionReport> {
    construct(inst, ConstructionMethod::CaseIiiC)
}

fn finish(
    inst: &TwoIntervalInstance,
    method: ConstructionMethod,
    normal: IntegerSet,
    dropped: usize,
) -> Result<ConstructionReport> {
    let set = inst.set_to_original(&normal);
    let inside = inst.original_union().is_superset_of(&set);
    if !inside || !is_sidon_strict(&set) {
        return Err(SidonError::Internal(format!("{method} produced an invalid set for {:?}", inst)));
    }
    let size = set.len();
    Ok(ConstructionReport {
        method,
        size,
        ratio: size as f64 / (inst.total() as f64).sqrt(),
        verified: true,
        set,
        dropped,
    })
}

/// Keeps `S ∩ [1, cut]`, moves `S ∩ (cut, upper]` up by `shift`, and drops
/// moved elements above `limit`. Returns the new set and the drop count.
pub fn split_and_shift(s: &IntegerSet, cut: u64, upper: u64, shift: u64, limit: u64) -> (IntegerSet, usize) {
    let low = s.iter().filter(|&x| x <= cut);
    let high: Vec<u64> = s.iter().filter(|&x| x > cut && x <= upper).map(|x| x + shift).collect();
    let kept = high.iter().filter(|&&x| x <= limit).count();
    let dropped = high.len() - kept;
    (low.chain(high.into_iter().filter(|&x| x <= limit)).collect(), dropped)
}

fn case_ii_set(inst: &TwoIntervalInstance) -> Result<(IntegerSet, usize)> {
    let max_a = inst.max_element();
    let p = largest_prime_with(max_a, |p| p * p + p + 1)
        .ok_or_else(|| SidonError::precondition(format!("no prime p with p²+p+1 <= max A = {max_a}")))?;
    let q = p * p + p + 1;
    if q < inst.gap_start {
        return Err(SidonError::precondition(format!(
            "p={p} gives q={q} below min I₂={}; no Singer modulus lands inside I₂",
            inst.gap_start
        )));
    }
    let sys = singer_difference_set(p).map_err(|e| match e {
        SidonError::Resource(m) => SidonError::precondition(m),
        other => other,
    })?;
    let sys = translate_family(sys);
    let (gap_lo, gap_hi) = (inst.n1 + 1, inst.gap_start - 1);
    let best = sys
        .translates
        .iter()
        .min_by_key(|t| t.count_in(gap_lo, gap_hi))
        .expect("p + 1 >= 3 translates");
    let set = best.iter().filter(|&x| !(gap_lo..=gap_hi).contains(&x) && x <= max_a).collect();
    Ok((set, 0))
}

fn case_iii_a_set(inst: &TwoIntervalInstance) -> Result<(IntegerSet, usize)> {
    let (n1, n2, g) = (inst.n1, inst.n2, inst.gap_start);
    if g < 2 * n1 {
        return Err(SidonError::precondition(format!("case iii.a needs β >= 1 (min I₂ >= 2·n1), got β = {:.4}", inst.beta())));
    }
    let s = dense_sidon_in(n1 + n2, DenseMethod::Best)?;
    Ok(split_and_shift(&s, n1, n1 + n2, g - n1, inst.max_element()))
}

fn case_iii_b_set(inst: &TwoIntervalInstance) -> Result<(IntegerSet, usize)> {
    let (n1, n2, g) = (inst.n1, inst.n2, inst.gap_start);
    // β < 1  ⇔  g < 2·n1;  β > 2α - 1  ⇔  g > 2·n2
    if g >= 2 * n1 || g <= 2 * n2 {
        return Err(SidonError::precondition(format!(
            "case iii.b needs β < 1 and β > 2α - 1, got α = {:.4}, β = {:.4}",
            inst.alpha(),
            inst.beta()
        )));
    }
    // (1+β)·n1 = g exactly
    let cut = g / 2;
    let s = dense_sidon_in(cut + n2, DenseMethod::Best)?;
    Ok(split_and_shift(&s, cut, cut + n2, g.div_ceil(2), inst.max_element()))
}

fn case_iii_c_set(inst: &TwoIntervalInstance) -> Result<(IntegerSet, usize)> {
    let (n1, n2, g) = (inst.n1, inst.n2, inst.gap_start);
    if g >= 2 * n1 || g > 2 * n2 {
        return Err(SidonError::precondition(format!(
            "case iii.c needs β < 1 and β <= 2α - 1, got α = {:.4}, β = {:.4}",
            inst.alpha(),
            inst.beta()
        )));
    }
    // (1+α+β)·n1 = n2 + g = max A + 1
    let t = n2 + g;
    let (cut, upper) = (t / 3, 2 * t / 3);
    let s = dense_sidon_in(upper, DenseMethod::Best)?;
    Ok(split_and_shift(&s, cut, upper, t.div_ceil(3), inst.max_element()))
}

/// Runs every method whose precondition holds and keeps the largest verified
/// set (earlier method on ties).
pub fn best_construction(inst: &TwoIntervalInstance) -> Result<ConstructionReport> {
    best_construction_among(inst, &ConstructionMethod::ALL)
}

/// [`best_construction`] restricted to `methods`. Precondition failures are
/// skipped; anything else is propagated.
pub fn best_construction_among(
    inst: &TwoIntervalInstance,
    methods: &[ConstructionMethod],
) -> Result<ConstructionReport> {
    let mut best: Option<ConstructionReport> = None;
    for &m in ConstructionMethod::ALL.iter().filter(|m| methods.contains(m)) {
        match construct(inst, m) {
            Ok(r) => {
                if best.as_ref().is_none_or(|b| r.size > b.size) {
                    best = Some(r);
                }
            }
            Err(SidonError::Precondition(_)) => {}
            Err(e) => return Err(e),
        }
    }
    best.ok_or_else(|| SidonError::precondition("no requested construction applies to this instance"))
}
