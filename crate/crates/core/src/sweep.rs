//! Parameter sweeps over the two-interval `(α, β)` plane and CSV output.
//!
//! Sweep CSV columns, in order:
//! `alpha,beta,n1,n2,method,size,ratio,upper_bound`.
//!
//! Construction rows appended by the CLI use
//! `n1,n2,gap_start,alpha,beta,method,size,ratio`.

use std::fmt;
use std::fs::OpenOptions;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bound::bound_theorem;
use crate::error::{Result, SidonError};
use crate::two_interval::{best_construction_among, ConstructionMethod, ConstructionReport, TwoIntervalInstance};

/// Inclusive float grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn values(&self) -> Result<Vec<f64>> {
        let ok = [self.start, self.stop, self.step].iter().all(|v| v.is_finite())
            && self.step > 0.0
            && self.stop >= self.start;
        if !ok {
            return Err(SidonError::precondition(format!("malformed grid {self}")));
        }
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        Ok((0..=count).map(|i| self.start + i as f64 * self.step).collect())
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

impl FromStr for GridSpec {
    type Err = SidonError;

    /// `start:stop:step`, or a single value.
    fn from_str(s: &str) -> Result<Self> {
        let err = || SidonError::Parse { what: "grid", input: s.to_string() };
        let parts = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        match parts[..] {
            [v] => Ok(GridSpec { start: v, stop: v, step: 1.0 }),
            [start, stop, step] => Ok(GridSpec { start, stop, step }),
            _ => Err(err()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub n: u64,
    pub alpha: GridSpec,
    pub beta: GridSpec,
    pub methods: Vec<ConstructionMethod>,
    pub output: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub beta: f64,
    pub n1: u64,
    pub n2: u64,
    pub method: ConstructionMethod,
    pub size: usize,
    pub ratio: f64,
    pub upper_bound: f64,
}

/// Smallest total size accepted by a sweep.
pub const MIN_SWEEP_SIZE: u64 = 14;

/// Instance with `n1 = round(n/(1+α))`, `n2 = n - n1` and
/// `min I₂ = n1 + max(1, round(β·n1))`.
pub fn synthesize(n: u64, alpha: f64, beta: f64) -> Result<TwoIntervalInstance> {
    if !(alpha > 0.0) || !(beta >= 0.0) {
        return Err(SidonError::precondition(format!("need α > 0 and β >= 0, got α={alpha} β={beta}")));
    }
    let n1 = (n as f64 / (1.0 + alpha)).round() as u64;
    let n2 = n.saturating_sub(n1);
    let (n1, n2) = if n2 > n1 { (n2, n1) } else { (n1, n2) };
    if n2 == 0 {
        return Err(SidonError::precondition(format!("α={alpha} leaves the second interval empty at n={n}")));
    }
    let gap = ((beta * n1 as f64).round() as u64).max(1);
    TwoIntervalInstance::normalized(n1, n2, n1 + gap)
}

pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.n < MIN_SWEEP_SIZE {
        return Err(SidonError::precondition(format!("sweep needs n >= {MIN_SWEEP_SIZE}, got {}", spec.n)));
    }
    if spec.methods.is_empty() {
        return Err(SidonError::precondition("sweep needs at least one method"));
    }
    let alphas = spec.alpha.values()?;
    let betas = spec.beta.values()?;
    let upper_bound = bound_theorem(spec.n, 2)?.bound;
    let points: Vec<(f64, f64)> = alphas.iter().flat_map(|&a| betas.iter().map(move |&b| (a, b))).collect();
    let mut rows = points
        .par_iter()
        .map(|&(alpha, beta)| {
            let inst = synthesize(spec.n, alpha, beta)?;
            let r = best_construction_among(&inst, &spec.methods)?;
            Ok(SweepRow {
                alpha,
                beta,
                n1: inst.n1,
                n2: inst.n2,
                method: r.method,
                size: r.size,
                ratio: r.ratio,
                upper_bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|x, y| x.alpha.total_cmp(&y.alpha).then(x.beta.total_cmp(&y.beta)));
    Ok(rows)
}

/// Runs the sweep and writes its CSV, returning the rows.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let rows = sweep_rows(spec)?;
    let mut w = csv::Writer::from_path(&spec.output).map_err(|e| io_error(&spec.output, e))?;
    for row in &rows {
        w.serialize(row).map_err(|e| io_error(&spec.output, e))?;
    }
    w.flush().map_err(|e| SidonError::resource(format!("writing {}: {e}", spec.output.display())))?;
    Ok(rows)
}

fn io_error(path: &Path, e: csv::Error) -> SidonError {
    SidonError::resource(format!("writing {}: {e}", path.display()))
}

#[derive(Debug, Serialize)]
struct ConstructionRow {
    n1: u64,
    n2: u64,
    gap_start: u64,
    alpha: f64,
    beta: f64,
    method: ConstructionMethod,
    size: usize,
    ratio: f64,
}

/// Appends one construction row, writing the header if the file is new or empty.
pub fn append_construction_row(path: &Path, inst: &TwoIntervalInstance, report: &ConstructionReport) -> Result<()> {
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| SidonError::resource(format!("opening {}: {e}", path.display())))?;
    let fresh = file.metadata().map(|m| m.len() == 0).unwrap_or(true);
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    w.serialize(ConstructionRow {
        n1: inst.n1,
        n2: inst.n2,
        gap_start: inst.gap_start,
        alpha: inst.alpha(),
        beta: inst.beta(),
        method: report.method,
        size: report.size,
        ratio: report.ratio,
    })
    .map_err(|e| io_error(path, e))?;
    w.flush().map_err(|e| SidonError::resource(format!("writing {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_literals() {
        let g: GridSpec = "0.2:1.0:0.2".parse().unwrap();
        assert_eq!(g.values().unwrap().len(), 5);
        let g: GridSpec = "0.5".parse().unwrap();
        assert_eq!(g.values().unwrap(), vec![0.5]);
        assert!("1:0:0.1".parse::<GridSpec>().unwrap().values().is_err());
        assert!("0:1:0".parse::<GridSpec>().unwrap().values().is_err());
        assert!("0:1".parse::<GridSpec>().is_err());
        assert!("a:b:c".parse::<GridSpec>().is_err());
    }

    #[test]
    fn synthesized_shapes() {
        let i = synthesize(10_000, 0.5, 1.5).unwrap();
        assert_eq!((i.n1, i.n2, i.gap_start), (6667, 3333, 6667 + 10_001));
        let i = synthesize(100, 1.0, 0.0).unwrap();
        assert_eq!((i.n1, i.n2, i.gap_start), (50, 50, 51));
        assert!(synthesize(100, 0.0, 0.5).is_err());
    }

    #[test]
    fn small_n_rejected() {
        let spec = SweepSpec {
            n: 10,
            alpha: "0.5".parse().unwrap(),
            beta: "0.5".parse().unwrap(),
            methods: ConstructionMethod::ALL.to_vec(),
            output: PathBuf::from("/dev/null"),
        };
        assert!(sweep_rows(&spec).is_err());
    }
}
