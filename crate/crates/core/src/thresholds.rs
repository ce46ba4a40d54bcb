//! Choosing the case thresholds `(α₀, β₀)` of the two-interval builder to
//! maximise the guaranteed constant `c` in `F(A) ≳ c·√|A|`.
//!
//! For fixed thresholds every instance falls in one case, and each case has
//! a closed-form guarantee in terms of the instance's `(α, β)`. The value of
//! a threshold pair is the worst guarantee over all instances; the optimizer
//! maximises that worst case.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SidonError};
use crate::two_interval::ConstructionMethod;

/// Guarantees of the individual cases, evaluated at the thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseBounds {
    pub case_i: f64,
    pub case_ii: f64,
    pub case_iii_a: f64,
    pub case_iii_b: f64,
    pub case_iii_c: f64,
}

pub fn case_bounds(alpha0: f64, beta0: f64) -> CaseBounds {
    CaseBounds {
        case_i: case_i_form(alpha0),
        case_ii: case_ii_form(alpha0, beta0),
        case_iii_a: 1.0,
        case_iii_b: case_iii_b_form(alpha0, beta0),
        case_iii_c: case_iii_c_form(alpha0, beta0),
    }
}

pub fn case_i_form(alpha: f64) -> f64 {
    1.0 / (1.0 + alpha).sqrt()
}

pub fn case_ii_form(alpha: f64, beta: f64) -> f64 {
    ((1.0 + alpha) / (1.0 + alpha + beta)).sqrt()
}

pub fn case_iii_b_form(alpha: f64, beta: f64) -> f64 {
    ((1.0 + 2.0 * alpha + beta) / (2.0 * (1.0 + alpha))).sqrt()
}

pub fn case_iii_c_form(alpha: f64, beta: f64) -> f64 {
    (2.0 * (1.0 + alpha + beta) / (3.0 * (1.0 + alpha))).sqrt()
}

/// Worst-case guarantee of each case over the instances it receives. `None`
/// when no instance is routed to that case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorstCases {
    pub case_i: f64,
    pub case_ii: Option<f64>,
    pub case_iii_a: Option<f64>,
    pub case_iii_b: Option<f64>,
    pub case_iii_c: Option<f64>,
}

impl WorstCases {
    fn labelled(&self) -> [(ConstructionMethod, Option<f64>); 5] {
        [
            (ConstructionMethod::CaseI, Some(self.case_i)),
            (ConstructionMethod::CaseIi, self.case_ii),
            (ConstructionMethod::CaseIiiA, self.case_iii_a),
            (ConstructionMethod::CaseIiiB, self.case_iii_b),
            (ConstructionMethod::CaseIiiC, self.case_iii_c),
        ]
    }
}

pub fn worst_cases(alpha0: f64, beta0: f64) -> WorstCases {
    let mut w = WorstCases { case_i: case_i_form(alpha0), case_ii: None, case_iii_a: None, case_iii_b: None, case_iii_c: None };
    if alpha0 >= 1.0 {
        // every instance has α <= 1 <= α₀
        return w;
    }
    // α ranges over (α₀, 1] from here on
    w.case_ii = Some(case_ii_form(alpha0, beta0));
    w.case_iii_a = Some(1.0);
    if beta0 < 1.0 {
        // increasing in α and in β (β < 1): infimum at the lowest admissible corner
        let beta = beta0.max(2.0 * alpha0 - 1.0);
        w.case_iii_b = Some(case_iii_b_form(alpha0, beta));
        // decreasing in α, increasing in β: infimum at α = 1, β = β₀
        w.case_iii_c = Some(case_iii_c_form(1.0, beta0));
    }
    w
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPoint {
    pub alpha0: f64,
    pub beta0: f64,
    pub guarantee: f64,
    pub active_cases: Vec<ConstructionMethod>,
    pub case_bounds: CaseBounds,
    pub worst_cases: WorstCases,
}

const ACTIVE_TOL: f64 = 1e-9;

pub fn guarantee_at(alpha0: f64, beta0: f64) -> Result<ThresholdPoint> {
    if !(alpha0 > 0.0 && alpha0 <= 1.0) || !(beta0 >= 0.0) || !beta0.is_finite() {
        return Err(SidonError::precondition(format!("thresholds out of range: α₀={alpha0}, β₀={beta0}")));
    }
    Ok(point(alpha0, beta0))
}

fn guarantee_value(alpha0: f64, beta0: f64) -> f64 {
    worst_cases(alpha0, beta0).labelled().iter().filter_map(|(_, v)| *v).fold(f64::INFINITY, f64::min)
}

fn point(alpha0: f64, beta0: f64) -> ThresholdPoint {
    let worst = worst_cases(alpha0, beta0);
    let guarantee = guarantee_value(alpha0, beta0);
    let active_cases = worst
        .labelled()
        .iter()
        .filter_map(|&(m, v)| v.filter(|&v| v - guarantee <= ACTIVE_TOL).map(|_| m))
        .collect();
    ThresholdPoint { alpha0, beta0, guarantee, active_cases, case_bounds: case_bounds(alpha0, beta0), worst_cases: worst }
}

/// Search box for the thresholds. `α₀` must stay in `(0, 1]`, `β₀ >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdDomain {
    pub alpha: (f64, f64),
    pub beta: (f64, f64),
}

impl Default for ThresholdDomain {
    fn default() -> Self {
        ThresholdDomain { alpha: (0.0, 1.0), beta: (0.0, 2.0) }
    }
}

impl ThresholdDomain {
    fn clamp(&self, a: f64, b: f64) -> (f64, f64) {
        let a = a.clamp(self.alpha.0.max(f64::MIN_POSITIVE), self.alpha.1);
        (a, b.clamp(self.beta.0, self.beta.1))
    }
}

/// Grid values `lo, lo+step, ...` up to `hi` inclusive (within 1e-9). When
/// `skip_lo` is set the grid starts at `lo + step`.
fn grid(lo: f64, hi: f64, step: f64, skip_lo: bool) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    let first = usize::from(skip_lo);
    let mut v: Vec<f64> = (first..=count).map(|i| lo + i as f64 * step).collect();
    if v.is_empty() {
        v.push(hi);
    }
    v
}

pub fn optimize(grid_step: f64) -> Result<ThresholdPoint> {
    optimize_in(ThresholdDomain::default(), grid_step)
}

/// Grid search followed by compass refinement with step halving down to 1e-6.
/// The scan runs α₀-major, β₀-minor; the first maximiser is kept.
pub fn optimize_in(domain: ThresholdDomain, grid_step: f64) -> Result<ThresholdPoint> {
    if !(grid_step > 0.0 && grid_step <= 0.01) {
        return Err(SidonError::precondition(format!("grid step must lie in (0, 0.01], got {grid_step}")));
    }
    let alphas = grid(domain.alpha.0, domain.alpha.1, grid_step, domain.alpha.0 <= 0.0);
    let betas = grid(domain.beta.0, domain.beta.1, grid_step, false);
    let row_best: Vec<(f64, f64, f64)> = alphas
        .par_iter()
        .map(|&a| {
            betas.iter().fold((a, betas[0], f64::NEG_INFINITY), |acc, &b| {
                let g = guarantee_value(a, b);
                if g > acc.2 { (a, b, g) } else { acc }
            })
        })
        .collect();
    let (mut a, mut b, mut g) = row_best
        .into_iter()
        .fold((0.0, 0.0, f64::NEG_INFINITY), |acc, r| if r.2 > acc.2 { r } else { acc });

    const DIRS: [(f64, f64); 8] =
        [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];
    let mut h = grid_step;
    while h > 1e-6 {
        let mut moved = false;
        for (da, db) in DIRS {
            let (na, nb) = domain.clamp(a + da * h, b + db * h);
            let ng = guarantee_value(na, nb);
            if ng > g {
                (a, b, g) = (na, nb, ng);
                moved = true;
                break;
            }
        }
        if !moved {
            h /= 2.0;
        }
    }
    Ok(point(a, b))
}

/// `(α₀, β₀, guarantee)` on the grid of [`optimize`], α₀-major.
pub fn guarantee_surface(domain: ThresholdDomain, step: f64) -> Vec<(f64, f64, f64)> {
    let alphas = grid(domain.alpha.0, domain.alpha.1, step, domain.alpha.0 <= 0.0);
    let betas = grid(domain.beta.0, domain.beta.1, step, false);
    alphas.iter().flat_map(|&a| betas.iter().map(move |&b| (a, b, guarantee_value(a, b)))).collect()
}

pub fn write_surface_csv(path: &Path, domain: ThresholdDomain, step: f64) -> Result<usize> {
    let io = |e: csv::Error| SidonError::resource(format!("writing {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["alpha0", "beta0", "guarantee"]).map_err(io)?;
    let rows = guarantee_surface(domain, step);
    for (a, b, g) in &rows {
        w.serialize((a, b, g)).map_err(io)?;
    }
    w.flush().map_err(|e| SidonError::resource(format!("writing {}: {e}", path.display())))?;
    Ok(rows.len())
}
