//! Poisson point processes with radial intensity.
//!
//! A unit-rate process is sampled in the Euclidean disk of radius
//! `sqrt(n / pi)` and each point's radius `r` is replaced by `alpha(r)`.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use thiserror::Error;

use crate::density::{DensityModel, RadialMapError};
use crate::rng::{stream_rng, StreamRng};
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PointGenError {
    #[error("target point count must be at least 1")]
    ZeroTarget,
    #[error("the Poisson draw produced no points")]
    EmptyRealization,
    #[error("radial map overflows at source radius {0}")]
    Overflow(f64),
    #[error(transparent)]
    RadialMap(#[from] RadialMapError),
}

/// A realized point configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    pub points: Vec<[f64; 2]>,
    pub seed: u64,
    pub stream: u64,
    pub model: String,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the point closest to the origin, used as a root vertex.
    pub fn nearest_to_origin(&self) -> Option<usize> {
        self.points
            .iter()
            .enumerate()
            .min_by(|a, b| norm2(a.1).total_cmp(&norm2(b.1)))
            .map(|(i, _)| i)
    }
}

fn norm2(p: &[f64; 2]) -> f64 {
    p[0] * p[0] + p[1] * p[1]
}

/// Draws a Poisson variate with the given mean. A zero rate yields zero.
pub fn sample_poisson_count<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> u64 {
    assert!(
        rate >= 0.0 && rate.is_finite(),
        "Poisson rate must be finite and nonnegative"
    );
    if rate == 0.0 {
        return 0;
    }
    Poisson::new(rate).expect("positive finite rate").sample(rng) as u64
}

/// Radius of the source disk holding `target_count` unit-rate points on average.
pub fn source_radius(target_count: usize) -> f64 {
    (target_count as f64 / PI).sqrt()
}

/// Samples the process for `model` with expected size `target_count` from
/// stream 0 of `seed`.
pub fn sample_points<F: Real>(
    model: &DensityModel<F>,
    target_count: usize,
    seed: u64,
) -> Result<PointSet, PointGenError> {
    let mut rng = stream_rng(seed, 0);
    let mut set = sample_points_with(model, target_count, &mut rng)?;
    set.seed = seed;
    Ok(set)
}

/// Samples the process from an explicit generator (e.g. a trial substream).
pub fn sample_points_with<F: Real>(
    model: &DensityModel<F>,
    target_count: usize,
    rng: &mut StreamRng,
) -> Result<PointSet, PointGenError> {
    if target_count == 0 {
        return Err(PointGenError::ZeroTarget);
    }
    let stream = rng.get_stream();
    let count = sample_poisson_count(target_count as f64, rng);
    if count == 0 {
        return Err(PointGenError::EmptyRealization);
    }
    let radius = source_radius(target_count);
    let mut points = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let u: f64 = rng.random();
        let theta = 2.0 * PI * rng.random::<f64>();
        let r = radius * u.sqrt();
        let mapped = model
            .alpha(F::lit(r))?
            .to_f64()
            .filter(|x| x.is_finite())
            .ok_or(PointGenError::Overflow(r))?;
        let (s, c) = theta.sin_cos();
        points.push([mapped * c, mapped * s]);
    }
    Ok(PointSet {
        points,
        seed: 0,
        stream,
        model: model.to_string(),
    })
}
