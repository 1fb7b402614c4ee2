//! Rotationally symmetric densities and their measure-preserving radial maps.
//!
//! A density `rho` on the disk of radius `t` (1 or infinity) has cumulative
//! function `F(x) = integral_0^x rho(y) y dy`. The radial map
//! `alpha(x) = F^{-1}(x^2 / 2)` carries a unit-rate planar Poisson process to
//! one with intensity `rho` when applied to each point's radius.

mod postfix;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use postfix::{BinaryOp, RadialMap, RadialMapError, Token, UnaryFn};

use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DensityError {
    #[error("unknown density `{0}`; expected poincare, hyperbolic_r2, genhyp, cusp, slow, euclidean or custom")]
    UnknownDensity(String),
    #[error("density `{density}` needs parameter `{param}`")]
    MissingParam { density: String, param: &'static str },
    #[error("parameter `{param}` must be positive, got {value}")]
    NonPositiveParam { param: &'static str, value: f64 },
    #[error(transparent)]
    RadialMap(#[from] RadialMapError),
}

/// Radius of the domain disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainRadius {
    /// The open unit disk; every mapped point has norm below 1.
    Unit,
    /// The whole plane.
    Infinite,
}

/// Built-in density families plus user programs.
#[derive(Debug, Clone, PartialEq)]
pub enum Family<F> {
    /// `rho = 4 lambda / (1 - r^2)^2` on the unit disk.
    Poincare { lambda: F },
    /// `rho = sinh(r) / r` on the plane.
    HyperbolicR2,
    /// `rho = 2 r^((1-2a)/a) / (a (1 - r^(1/a))^2)` on the unit disk.
    GenHyp { a: F },
    /// `rho = lambda^2 / (1 - r)^3` on the unit disk.
    Cusp { lambda: F },
    /// `rho = 1 / (r (r + 1))` on the plane.
    Slow,
    /// `rho = 1` on the plane.
    Euclidean,
    /// A user-supplied radial map; no closed-form density is known.
    Custom(RadialMap<F>),
}

/// Named parameters for [`builtin_density`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DensityParams<F> {
    values: BTreeMap<String, F>,
    program: Option<String>,
}

impl<F: Real> DensityParams<F> {
    pub fn new() -> Self {
        DensityParams {
            values: BTreeMap::new(),
            program: None,
        }
    }

    pub fn with(mut self, name: &str, value: F) -> Self {
        self.values.insert(name.to_owned(), value);
        self
    }

    pub fn with_program(mut self, program: &str) -> Self {
        self.program = Some(program.to_owned());
        self
    }

    fn positive(&self, density: &str, param: &'static str) -> Result<F, DensityError> {
        let value = *self.values.get(param).ok_or_else(|| DensityError::MissingParam {
            density: density.to_owned(),
            param,
        })?;
        if value <= F::zero() || !value.is_finite() {
            return Err(DensityError::NonPositiveParam {
                param,
                value: value.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(value)
    }
}

/// A radial density together with its radial map.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityModel<F> {
    family: Family<F>,
}

/// Builds one of the built-in density models by name.
///
/// `poincare` and `cusp` need `lambda`, `genhyp` needs `a`, and `custom`
/// needs a postfix program.
pub fn builtin_density<F: Real>(name: &str, params: &DensityParams<F>) -> Result<DensityModel<F>, DensityError> {
    let family = match name {
        "poincare" => Family::Poincare {
            lambda: params.positive(name, "lambda")?,
        },
        "hyperbolic_r2" => Family::HyperbolicR2,
        "genhyp" => Family::GenHyp {
            a: params.positive(name, "a")?,
        },
        "cusp" => Family::Cusp {
            lambda: params.positive(name, "lambda")?,
        },
        "slow" => Family::Slow,
        "euclidean" => Family::Euclidean,
        "custom" => {
            let text = params.program.as_deref().ok_or(DensityError::MissingParam {
                density: name.to_owned(),
                param: "program",
            })?;
            Family::Custom(RadialMap::parse(text)?)
        }
        other => return Err(DensityError::UnknownDensity(other.to_owned())),
    };
    Ok(DensityModel { family })
}

impl<F: Real> DensityModel<F> {
    pub fn euclidean() -> Self {
        DensityModel {
            family: Family::Euclidean,
        }
    }

    pub fn custom(map: RadialMap<F>) -> Self {
        DensityModel {
            family: Family::Custom(map),
        }
    }

    pub fn family(&self) -> &Family<F> {
        &self.family
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            Family::Poincare { .. } => "poincare",
            Family::HyperbolicR2 => "hyperbolic_r2",
            Family::GenHyp { .. } => "genhyp",
            Family::Cusp { .. } => "cusp",
            Family::Slow => "slow",
            Family::Euclidean => "euclidean",
            Family::Custom(_) => "custom",
        }
    }

    /// Named real parameters of the model.
    pub fn params(&self) -> Vec<(&'static str, F)> {
        match self.family {
            Family::Poincare { lambda } | Family::Cusp { lambda } => vec![("lambda", lambda)],
            Family::GenHyp { a } => vec![("a", a)],
            _ => Vec::new(),
        }
    }

    pub fn domain_radius(&self) -> DomainRadius {
        match self.family {
            Family::Poincare { .. } | Family::GenHyp { .. } | Family::Cusp { .. } => DomainRadius::Unit,
            _ => DomainRadius::Infinite,
        }
    }

    /// The radial map `alpha(x)` for `x >= 0`.
    pub fn alpha(&self, x: F) -> Result<F, RadialMapError> {
        if x.is_nan() || x < F::zero() {
            return Err(RadialMapError::NegativeArgument(x.to_f64().unwrap_or(f64::NAN)));
        }
        let two = F::lit(2.0);
        let four = F::lit(4.0);
        Ok(match &self.family {
            Family::Poincare { lambda } => x / (four * *lambda + x * x).sqrt(),
            Family::HyperbolicR2 => (x * x / two + F::one()).acosh(),
            Family::GenHyp { a } => (x * x / (four + x * x)).powf(*a),
            Family::Cusp { lambda } => x / (*lambda + x),
            Family::Slow => (x * x / two).exp_m1(),
            Family::Euclidean => x,
            Family::Custom(map) => return map.eval(x),
        })
    }

    /// Closed-form cumulative `F(x) = integral_0^x rho(y) y dy`, when known.
    pub fn cumulative(&self, x: F) -> Option<F> {
        let two = F::lit(2.0);
        Some(match &self.family {
            Family::Poincare { lambda } => two * *lambda * x * x / (F::one() - x * x),
            Family::HyperbolicR2 => x.cosh() - F::one(),
            Family::GenHyp { a } => {
                let p = x.powf(a.recip());
                two * p / (F::one() - p)
            }
            Family::Cusp { lambda } => {
                let q = x / (F::one() - x);
                *lambda * *lambda / two * q * q
            }
            Family::Slow => x.ln_1p(),
            Family::Euclidean => x * x / two,
            Family::Custom(_) => return None,
        })
    }

    /// Closed-form density `rho(r)`, when known.
    pub fn density(&self, r: F) -> Option<F> {
        let one = F::one();
        let two = F::lit(2.0);
        Some(match &self.family {
            Family::Poincare { lambda } => {
                let d = one - r * r;
                F::lit(4.0) * *lambda / (d * d)
            }
            Family::HyperbolicR2 if r == F::zero() => one,
            Family::HyperbolicR2 => r.sinh() / r,
            Family::GenHyp { a } => {
                let d = one - r.powf(a.recip());
                two * r.powf((one - two * *a) / *a) / (*a * d * d)
            }
            Family::Cusp { lambda } => *lambda * *lambda / (one - r).powi(3),
            Family::Slow => one / (r * (r + one)),
            Family::Euclidean => one,
            Family::Custom(_) => return None,
        })
    }

    /// The radial map as a postfix program. Built-ins render their closed
    /// form; custom models return their own program.
    pub fn radial_map(&self) -> RadialMap<F> {
        let text = match &self.family {
            Family::Poincare { lambda } => format!("r r * 4 {lambda} * r r * + / sqrt"),
            Family::HyperbolicR2 => "r r * 2 / 1 + acosh".to_owned(),
            Family::GenHyp { a } => format!("r r * 4 r r * + / {a} ^"),
            Family::Cusp { lambda } => format!("r {lambda} r + /"),
            Family::Slow => "r r * 2 / exp 1 -".to_owned(),
            Family::Euclidean => "r".to_owned(),
            Family::Custom(map) => return map.clone(),
        };
        RadialMap::parse(&text).expect("built-in programs are well formed")
    }
}

impl<F: Real> fmt::Display for DensityModel<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Poincare { lambda } | Family::Cusp { lambda } => write!(f, "{}:{lambda}", self.name()),
            Family::GenHyp { a } => write!(f, "genhyp:{a}"),
            Family::Custom(map) => write!(f, "custom:{map}"),
            _ => f.write_str(self.name()),
        }
    }
}

/// Parses the command-line form `name[:param]`, e.g. `poincare:5`,
/// `genhyp:0.01`, `euclidean` or `custom:r r *`.
impl<F: Real> FromStr for DensityModel<F> {
    type Err = DensityError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let (name, arg) = match spec.split_once(':') {
            Some((name, arg)) => (name.trim(), Some(arg.trim())),
            None => (spec.trim(), None),
        };
        let mut params = DensityParams::new();
        if let Some(arg) = arg {
            if name == "custom" {
                params = params.with_program(arg.trim_matches('"'));
            } else {
                let param = match name {
                    "genhyp" => "a",
                    _ => "lambda",
                };
                let value: f64 = arg.parse().map_err(|_| DensityError::MissingParam {
                    density: name.to_owned(),
                    param,
                })?;
                params = params.with(param, F::lit(value));
            }
        }
        builtin_density(name, &params)
    }
}
