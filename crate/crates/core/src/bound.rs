//! Upper bounds on Sidon subsets of a union of `k` intervals with `n`
//! elements, by counting close pairs inside sliding windows of length `u`.
//!
//! Every Sidon `S ⊆ E` with `|S| = r` satisfies
//!
//! ```text
//! r <= sqrt((u-1)/u · (n+ku) + (n+ku)² / (4u²)) + (n+ku) / (2u)
//! ```
//!
//! for every integer `1 <= u < n`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SidonError};
use crate::sets::{IntegerSet, IntervalUnion};

/// Cutover for choosing the window: `k >= LARGE_K_FRACTION · √n` uses
/// `u = ⌈√n/α⌉` with `α = k/√n`, anything smaller uses `u = ⌈n^{3/4}/√k⌉`.
pub const LARGE_K_FRACTION: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub n: u64,
    pub k: u64,
    pub u: u64,
}

impl BoundQuery {
    pub fn new(n: u64, k: u64, u: u64) -> Result<Self> {
        if u == 0 || u >= n {
            return Err(SidonError::precondition(format!("window u={u} must satisfy 1 <= u < n={n}")));
        }
        if k == 0 || k > n {
            return Err(SidonError::precondition(format!("interval count k={k} must satisfy 1 <= k <= n={n}")));
        }
        Ok(BoundQuery { n, k, u })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRegime {
    ExplicitU,
    CaseI,
    CaseIi,
    CaseIii,
    OptimalScan,
    RemarkRefined,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u64,
    pub k: u64,
    pub bound: f64,
    pub u_used: u64,
    pub regime: BoundRegime,
}

impl BoundReport {
    /// `bound / √n`.
    pub fn coefficient(&self) -> f64 {
        self.bound / (self.n as f64).sqrt()
    }
}

fn closed_form(n: f64, k: f64, u: f64) -> f64 {
    let m = n + k * u;
    let half = m / (2.0 * u);
    ((u - 1.0) / u * m + half * half).sqrt() + half
}

pub fn bound_given_u(q: BoundQuery) -> BoundReport {
    BoundReport {
        n: q.n,
        k: q.k,
        bound: closed_form(q.n as f64, q.k as f64, q.u as f64),
        u_used: q.u,
        regime: BoundRegime::ExplicitU,
    }
}

/// Evaluates the bound at the window length prescribed by the size of `k`
/// relative to `√n` (see [`LARGE_K_FRACTION`]). The small-`k` branch is
/// labelled `CaseIii` when `k < n^{1/4}` and `CaseIi` otherwise; both use the
/// same window.
pub fn bound_theorem(n: u64, k: u64) -> Result<BoundReport> {
    if n < 2 || k == 0 || k >= n {
        return Err(SidonError::precondition(format!("need n >= 2 and 1 <= k < n, got n={n} k={k}")));
    }
    let nf = n as f64;
    let kf = k as f64;
    let sqrt_n = nf.sqrt();
    let (u, regime) = if kf >= LARGE_K_FRACTION * sqrt_n {
        let alpha = kf / sqrt_n;
        ((sqrt_n / alpha).ceil() as u64, BoundRegime::CaseI)
    } else {
        let u = (nf.powf(0.75) / kf.sqrt()).ceil() as u64;
        let regime = if kf < nf.powf(0.25) { BoundRegime::CaseIii } else { BoundRegime::CaseIi };
        (u, regime)
    };
    let u = u.clamp(1, n - 1);
    let mut report = bound_given_u(BoundQuery::new(n, k, u)?);
    report.regime = regime;
    Ok(report)
}

/// Minimizes the bound over every `u ∈ [1, u_max]`; the smallest minimizer wins.
pub fn bound_optimal_u(n: u64, k: u64, u_max: u64) -> Result<BoundReport> {
    if u_max == 0 || u_max >= n {
        return Err(SidonError::precondition(format!("u_max={u_max} must satisfy 1 <= u_max < n={n}")));
    }
    BoundQuery::new(n, k, 1)?;
    let (nf, kf) = (n as f64, k as f64);
    let (mut best_u, mut best) = (1, closed_form(nf, kf, 1.0));
    for u in 2..=u_max {
        let b = closed_form(nf, kf, u as f64);
        if b < best {
            best = b;
            best_u = u;
        }
    }
    Ok(BoundReport { n, k, bound: best, u_used: best_u, regime: BoundRegime::OptimalScan })
}

/// Leading coefficient of the bound when `k = α√n` and `u = β√n`:
/// `sqrt((1+αβ) + (1+αβ)²/(4β²)) + (1+αβ)/(2β)`.
pub fn remark_coefficient(alpha: f64, beta: f64) -> f64 {
    let m = 1.0 + alpha * beta;
    let half = m / (2.0 * beta);
    (m + half * half).sqrt() + half
}

/// Golden-section minimization of [`remark_coefficient`] over `β`.
/// Returns `(β*, coefficient)`.
pub fn minimize_remark_coefficient(alpha: f64) -> (f64, f64) {
    const TOL: f64 = 1e-6;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (1e-3, 1e3);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (remark_coefficient(alpha, c), remark_coefficient(alpha, d));
    while b - a > TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = remark_coefficient(alpha, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = remark_coefficient(alpha, d);
        }
    }
    let beta = (a + b) / 2.0;
    (beta, remark_coefficient(alpha, beta))
}

/// Finite-`n` counterpart of [`minimize_remark_coefficient`]: the bound at
/// `k = round(α√n)` and `u = ⌈β*√n⌉`.
pub fn bound_remark_refined(n: u64, alpha: f64) -> Result<BoundReport> {
    let sqrt_n = (n as f64).sqrt();
    let (beta, _) = minimize_remark_coefficient(alpha);
    let k = ((alpha * sqrt_n).round() as u64).max(1);
    let u = ((beta * sqrt_n).ceil() as u64).clamp(1, n.saturating_sub(1).max(1));
    let mut report = bound_given_u(BoundQuery::new(n, k, u)?);
    report.regime = BoundRegime::RemarkRefined;
    Ok(report)
}

/// Window statistics for a concrete `S ⊆ E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowCounts {
    /// `Σ_m |I_m ∩ S|` over `m ∈ E + [1, u]`.
    pub incidence_sum: u64,
    /// `Σ_m C(|I_m ∩ S|, 2)`.
    pub t_u: u64,
    /// Exact size of `E + [1, u]`.
    pub window_count: u64,
    /// The over-estimate `n + k·u` used by the bound.
    pub window_estimate: u64,
}

/// Counts, over all windows `I_m = [m-u, m-1]` with `m ∈ E + [1, u]`, how
/// many elements of `S` each window holds and how many pairs of `S` share a
/// window.
pub fn count_windows(e: &IntervalUnion, s: &IntegerSet, u: u64) -> Result<WindowCounts> {
    if !e.is_superset_of(s) {
        return Err(SidonError::precondition("S is not contained in E"));
    }
    let n = e.cardinality();
    if u == 0 || u >= n {
        return Err(SidonError::precondition(format!("window u={u} must satisfy 1 <= u < |E|={n}")));
    }
    let shifted = IntervalUnion::union_of(e.intervals().iter().map(|iv| (iv.lo + 1, iv.hi + u)))?;
    let mut incidence_sum = 0u64;
    let mut t_u = 0u64;
    for m in shifted.iter() {
        let c = s.count_in(m.saturating_sub(u), m - 1) as u64;
        incidence_sum += c;
        t_u += c * c.saturating_sub(1) / 2;
    }
    Ok(WindowCounts {
        incidence_sum,
        t_u,
        window_count: shifted.cardinality(),
        window_estimate: n + e.count() as u64 * u,
    })
}
