//! Degree statistics, closed-form reference values, log-log fits and the
//! experiment sweep.

mod sweep;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::Graph;

pub use sweep::{
    run_sweep, write_sweep_csv, SweepConfig, SweepError, SweepOutcome, SweepRow, TrialFailure, SWEEP_HEADER,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("sample {index} is not positive: ({n}, {value})")]
    NonPositiveSample { index: usize, n: f64, value: f64 },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("all sample abscissae are equal")]
    DegenerateAbscissa,
}

/// Degree counts of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeHistogram {
    pub counts: BTreeMap<usize, usize>,
    pub n: usize,
    /// `2m / n`.
    pub mean: f64,
}

impl DegreeHistogram {
    /// Fraction of vertices with degree at least `d`.
    pub fn ccdf(&self, d: usize) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        self.counts.range(d..).map(|(_, &c)| c).sum::<usize>() as f64 / self.n as f64
    }
}

pub fn degree_histogram(g: &Graph) -> DegreeHistogram {
    let mut counts = BTreeMap::new();
    for v in 0..g.n() {
        *counts.entry(g.degree(v)).or_insert(0) += 1;
    }
    let mean = if g.n() == 0 {
        0.0
    } else {
        2.0 * g.m() as f64 / g.n() as f64
    };
    DegreeHistogram { counts, n: g.n(), mean }
}

/// Maximum vertex flow of the complete Bethe lattice with branching `k` and
/// `n` vertices: `(k-1)/(2k) (n-1)^2 + n - 1`, attained at the root.
pub fn bethe_mv_exact(k: usize, n: usize) -> f64 {
    let (k, n) = (k as f64, n as f64);
    (k - 1.0) / (2.0 * k) * (n - 1.0).powi(2) + n - 1.0
}

/// Upper bound on the flow through a vertex of a graph with maximum degree
/// `max_degree` and diameter `diameter`: `D^2 (D-1)^(d-2) d^2`.
pub fn lemma_flow_bound(max_degree: usize, diameter: usize) -> f64 {
    let (delta, d) = (max_degree as f64, diameter as f64);
    delta * delta * (delta - 1.0).powf(d - 2.0) * d * d
}

/// Least-squares line `y = slope x + intercept` with its coefficient of
/// determination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn linear_fit(points: &[(f64, f64)]) -> Result<LinearFit, FitError> {
    if points.len() < 2 {
        return Err(FitError::TooFewSamples {
            needed: 2,
            got: points.len(),
        });
    }
    let len = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / len;
    let my = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(FitError::DegenerateAbscissa);
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(LinearFit {
        slope,
        intercept: my - slope * mx,
        r2,
    })
}

/// Slope of `ln(value)` against `ln(n)`.
pub fn fit_scaling_exponent(samples: &[(f64, f64)]) -> Result<f64, FitError> {
    if samples.len() < 3 {
        return Err(FitError::TooFewSamples {
            needed: 3,
            got: samples.len(),
        });
    }
    let logs = samples
        .iter()
        .enumerate()
        .map(|(index, &(n, value))| {
            if n > 0.0 && value > 0.0 {
                Ok((n.ln(), value.ln()))
            } else {
                Err(FitError::NonPositiveSample { index, n, value })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(linear_fit(&logs)?.slope)
}

/// Straight-line fit of `ln P(deg >= d)` against `ln d` over the degrees
/// present in the histogram with `d >= min_degree`. A power-law tail shows up
/// as `r2` close to one.
pub fn ccdf_power_law_fit(hist: &DegreeHistogram, min_degree: usize) -> Result<LinearFit, FitError> {
    let points: Vec<(f64, f64)> = hist
        .counts
        .range(min_degree.max(1)..)
        .map(|(&d, _)| ((d as f64).ln(), hist.ccdf(d).ln()))
        .collect();
    if points.len() < 3 {
        return Err(FitError::TooFewSamples {
            needed: 3,
            got: points.len(),
        });
    }
    linear_fit(&points)
}
