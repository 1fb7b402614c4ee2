use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::delaunay::triangulate_points;
use crate::density::{builtin_density, DensityModel, DensityParams};
use crate::ensembles::{add_random_matching, gen_bethe, gen_complete, gen_er, gen_random_regular, gen_rgg};
use crate::graph::Graph;
use crate::pointgen::sample_points_with;
use crate::rng::{stream_rng, StreamRng};
use crate::routing::congestion;

pub const SWEEP_HEADER: [&str; 10] = [
    "family",
    "params",
    "seed",
    "n",
    "m",
    "diameter",
    "avg_vflow",
    "max_vflow",
    "avg_eflow",
    "max_eflow",
];

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn one() -> usize {
    1
}

/// Experiment grid.
///
/// `family` is one of `complete`, `er`, `rgg`, `regular`, `bethe` or
/// `<density>-delaunay` (e.g. `poincare-delaunay`). Each entry of `params`
/// is a number or string, or an array of them to sweep over; cells are the
/// product of all arrays and `n_list`. Trial `t` of every cell draws from
/// substream `t` of `seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    pub n_list: Vec<usize>,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    /// Random matchings added to every generated graph.
    #[serde(default)]
    pub matchings: usize,
    /// Route within the largest component instead of failing on
    /// disconnected realizations.
    #[serde(default)]
    pub largest_component: bool,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, SweepError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// One CSV line: a single trial, or the mean over the successful trials of a
/// cell (seed column `<seed>:mean`). Failed trials carry NaN metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub family: String,
    pub params: String,
    pub seed: String,
    pub n: f64,
    pub m: f64,
    pub diameter: f64,
    pub avg_vflow: f64,
    pub max_vflow: f64,
    pub avg_eflow: f64,
    pub max_eflow: f64,
    pub failed: bool,
}

impl SweepRow {
    pub fn is_mean(&self) -> bool {
        self.seed.ends_with(":mean")
    }

    fn values(&self) -> [f64; 7] {
        [
            self.n,
            self.m,
            self.diameter,
            self.avg_vflow,
            self.max_vflow,
            self.avg_eflow,
            self.max_eflow,
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialFailure {
    pub params: String,
    pub trial: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub failures: Vec<TrialFailure>,
}

impl SweepOutcome {
    pub fn means(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.is_mean())
    }
}

#[derive(Debug, Clone)]
enum Scalar {
    Number(f64),
    Text(String),
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Number(x) => write!(f, "{x}"),
            Scalar::Text(s) => f.write_str(s),
        }
    }
}

fn scalar(key: &str, v: &serde_json::Value) -> Result<Scalar, SweepError> {
    match v {
        serde_json::Value::Number(x) => Ok(Scalar::Number(x.as_f64().expect("json number is finite"))),
        serde_json::Value::String(s) => Ok(Scalar::Text(s.clone())),
        other => Err(SweepError::InvalidConfig(format!(
            "parameter {key}: unsupported value {other}"
        ))),
    }
}

#[derive(Debug, Clone)]
enum FamilySpec {
    Complete,
    Er { p: Option<f64> },
    Rgg { radius: Option<f64> },
    Regular { k: usize },
    Bethe { k: usize, depth: usize },
    Delaunay(DensityModel<f64>),
}

impl FamilySpec {
    fn needs_n(&self) -> bool {
        !matches!(self, FamilySpec::Bethe { .. })
    }
}

struct Cell {
    label: String,
    family: FamilySpec,
    n: Option<usize>,
}

fn parse_family(family: &str, params: &BTreeMap<String, Scalar>) -> Result<FamilySpec, SweepError> {
    let invalid = |msg: String| SweepError::InvalidConfig(msg);
    let number = |key: &str| -> Result<Option<f64>, SweepError> {
        match params.get(key) {
            None => Ok(None),
            Some(Scalar::Number(x)) => Ok(Some(*x)),
            Some(Scalar::Text(s)) => Err(invalid(format!("parameter {key} must be a number, got {s:?}"))),
        }
    };
    let integer = |key: &str, default: Option<usize>| -> Result<usize, SweepError> {
        match number(key)? {
            Some(x) if x >= 0.0 && x.fract() == 0.0 => Ok(x as usize),
            Some(x) => Err(invalid(format!(
                "parameter {key} must be a nonnegative integer, got {x}"
            ))),
            None => default.ok_or_else(|| invalid(format!("family {family} needs parameter {key}"))),
        }
    };
    let allowed: &[&str] = match family {
        "complete" => &[],
        "er" => &["p"],
        "rgg" => &["radius"],
        "regular" => &["k"],
        "bethe" => &["k", "depth"],
        _ => &["lambda", "a", "program"],
    };
    if let Some(key) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(invalid(format!("family {family} does not take parameter {key}")));
    }
    Ok(match family {
        "complete" => FamilySpec::Complete,
        "er" => FamilySpec::Er { p: number("p")? },
        "rgg" => FamilySpec::Rgg {
            radius: number("radius")?,
        },
        "regular" => FamilySpec::Regular {
            k: integer("k", Some(6))?,
        },
        "bethe" => FamilySpec::Bethe {
            k: integer("k", None)?,
            depth: integer("depth", None)?,
        },
        other => {
            let density = other
                .strip_suffix("-delaunay")
                .ok_or_else(|| invalid(format!("unknown family {other}")))?;
            let mut dp = DensityParams::new();
            for (key, value) in params {
                dp = match value {
                    Scalar::Number(x) => dp.with(key, *x),
                    Scalar::Text(s) => dp.with_program(s),
                };
            }
            FamilySpec::Delaunay(builtin_density(density, &dp).map_err(|e| invalid(e.to_string()))?)
        }
    })
}

fn expand(config: &SweepConfig) -> Result<Vec<Cell>, SweepError> {
    let mut grid: Vec<Vec<(String, Scalar)>> = vec![Vec::new()];
    for (key, value) in &config.params {
        let options = match value {
            serde_json::Value::Array(items) => items.iter().map(|v| scalar(key, v)).collect::<Result<Vec<_>, _>>()?,
            v => vec![scalar(key, v)?],
        };
        if options.is_empty() {
            return Err(SweepError::InvalidConfig(format!("parameter {key} has an empty grid")));
        }
        grid = grid
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |opt| {
                    let mut next = prefix.clone();
                    next.push((key.clone(), opt.clone()));
                    next
                })
            })
            .collect();
    }
    let mut cells = Vec::new();
    for assignment in grid {
        let params: BTreeMap<String, Scalar> = assignment.iter().cloned().collect();
        let family = parse_family(&config.family, &params)?;
        let mut label: Vec<String> = assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if family.needs_n() {
            if config.n_list.is_empty() {
                return Err(SweepError::InvalidConfig(format!(
                    "family {} needs n_list",
                    config.family
                )));
            }
            for &n in &config.n_list {
                let mut label = label.clone();
                label.push(format!("n={n}"));
                cells.push(Cell {
                    label: label.join(";"),
                    family: family.clone(),
                    n: Some(n),
                });
            }
        } else {
            if !config.n_list.is_empty() {
                return Err(SweepError::InvalidConfig(format!(
                    "family {} is sized by its parameters; drop n_list",
                    config.family
                )));
            }
            cells.push(Cell {
                label: std::mem::take(&mut label).join(";"),
                family,
                n: None,
            });
        }
    }
    Ok(cells)
}

fn generate(family: &FamilySpec, n: Option<usize>, rng: &mut StreamRng) -> Result<Graph, String> {
    let n = n.unwrap_or(0);
    match family {
        FamilySpec::Complete => Ok(gen_complete(n)),
        FamilySpec::Er { p } => gen_er(n, *p, rng).map_err(|e| e.to_string()),
        FamilySpec::Rgg { radius } => gen_rgg(n, *radius, rng).map_err(|e| e.to_string()),
        FamilySpec::Regular { k } => gen_random_regular(n, *k, rng).map_err(|e| e.to_string()),
        FamilySpec::Bethe { k, depth } => gen_bethe(*k, *depth).map_err(|e| e.to_string()),
        FamilySpec::Delaunay(model) => {
            let points = sample_points_with(model, n, rng).map_err(|e| e.to_string())?;
            triangulate_points(&points.points)
                .map(|t| t.graph)
                .map_err(|e| e.to_string())
        }
    }
}

fn run_trial(config: &SweepConfig, cell: &Cell, trial: usize) -> Result<[f64; 7], String> {
    let mut rng = stream_rng(config.seed, trial as u64);
    let mut g = generate(&cell.family, cell.n, &mut rng)?;
    for _ in 0..config.matchings {
        g = add_random_matching(&g, &mut rng);
    }
    if config.largest_component {
        g = g.largest_component().0;
    }
    let rep = congestion::<f64>(&g).map_err(|e| e.to_string())?;
    Ok([
        rep.n as f64,
        rep.m as f64,
        rep.diameter as f64,
        rep.avg_vertex_flow,
        rep.max_vertex_flow,
        rep.avg_edge_flow,
        rep.max_edge_flow,
    ])
}

fn row(config: &SweepConfig, cell: &Cell, seed: String, v: [f64; 7], failed: bool) -> SweepRow {
    SweepRow {
        family: config.family.clone(),
        params: cell.label.clone(),
        seed,
        n: v[0],
        m: v[1],
        diameter: v[2],
        avg_vflow: v[3],
        max_vflow: v[4],
        avg_eflow: v[5],
        max_eflow: v[6],
        failed,
    }
}

/// Runs every (cell, trial) pair and returns the trial rows of each cell
/// followed by its mean row. A trial that fails is recorded and the sweep
/// moves on.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome, SweepError> {
    if config.trials == 0 {
        return Err(SweepError::InvalidConfig("trials must be at least 1".into()));
    }
    let cells = expand(config)?;
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..config.trials).map(move |t| (c, t)))
        .collect();
    let results: Vec<Result<[f64; 7], String>> =
        jobs.par_iter().map(|&(c, t)| run_trial(config, &cells[c], t)).collect();

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (c, cell) in cells.iter().enumerate() {
        let mut sum = [0.0; 7];
        let mut ok = 0usize;
        for t in 0..config.trials {
            let seed = format!("{}:{t}", config.seed);
            match &results[c * config.trials + t] {
                Ok(v) => {
                    ok += 1;
                    sum.iter_mut().zip(v).for_each(|(s, x)| *s += x);
                    rows.push(row(config, cell, seed, *v, false));
                }
                Err(message) => {
                    failures.push(TrialFailure {
                        params: cell.label.clone(),
                        trial: t,
                        message: message.clone(),
                    });
                    rows.push(row(config, cell, seed, [f64::NAN; 7], true));
                }
            }
        }
        let mean = if ok == 0 {
            [f64::NAN; 7]
        } else {
            sum.map(|s| s / ok as f64)
        };
        rows.push(row(config, cell, format!("{}:mean", config.seed), mean, ok == 0));
    }
    Ok(SweepOutcome { rows, failures })
}

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<(), SweepError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        let mut record = vec![r.family.clone(), r.params.clone(), r.seed.clone()];
        record.extend(r.values().iter().map(|x| x.to_string()));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}
