//! Benchmark suites described by a TOML or JSON manifest.
//!
//! ```toml
//! mode = "mtdp"
//! seed = 0
//! methods = ["clustering", "proposed", "kmeans"]
//! vehicles = [2, 4, 6, 8, 10]
//!
//! [solver]
//! n_it = 50
//!
//! [[instances]]
//! path = "berlin52.tsp"
//! ```
//! Instance and probability paths are relative to the manifest.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bks::published_bks;
use crate::error::{Error, Result};
use crate::grasp::SolverConfig;
use crate::instance::{gen_probabilities, load_probabilities, parse_tsplib, Instance, Mode};

use super::{compute_stats, run_setup, Method, StatsRow};

pub const DEFAULT_PROB_SEED: &str = "2016-09-11";

fn default_prob_seed() -> String {
    DEFAULT_PROB_SEED.to_string()
}

fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}

fn default_vehicles() -> Vec<usize> {
    crate::bks::BENCHMARK_VEHICLES.to_vec()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteInstance {
    pub path: PathBuf,
    /// Probability file for mGSP; generated from `prob_seed` when absent.
    #[serde(default)]
    pub prob_file: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteManifest {
    pub mode: Mode,
    /// Master seed; run `r` of every setup uses `seed + r`.
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default = "default_vehicles")]
    pub vehicles: Vec<usize>,
    #[serde(default = "default_prob_seed")]
    pub prob_seed: String,
    #[serde(default)]
    pub solver: SolverConfig,
    pub instances: Vec<SuiteInstance>,
    /// Directory the relative paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl SuiteManifest {
    /// Parses a manifest; `.json` files are read as JSON, anything else as
    /// TOML.
    pub fn parse(text: &str, json: bool) -> Result<Self> {
        let manifest: Self = if json {
            serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?
        } else {
            toml::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?
        };
        manifest.check()?;
        Ok(manifest)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = read(path)?;
        let json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let mut manifest = Self::parse(&text, json)?;
        manifest.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(manifest)
    }

    fn check(&self) -> Result<()> {
        if self.instances.is_empty() {
            return Err(Error::Manifest("no instances listed".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Manifest("no methods listed".into()));
        }
        if self.vehicles.is_empty() || self.vehicles.contains(&0) {
            return Err(Error::Manifest("vehicle counts must be at least 1".into()));
        }
        self.solver.validate()?;
        Ok(())
    }

    fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a TSPLIB file and builds an instance with `vehicles` vehicles at
/// the first vertex. mGSP probabilities come from `prob_file` if given,
/// otherwise from the generator seeded with `prob_seed`.
pub fn load_instance(
    path: &Path,
    mode: Mode,
    vehicles: usize,
    prob_file: Option<&Path>,
    prob_seed: &str,
) -> Result<Instance> {
    let data = parse_tsplib(&read(path)?)?;
    Ok(match mode {
        Mode::Mtdp => Instance::mtdp(&data, vehicles)?,
        Mode::Mgsp => {
            let prob = match prob_file {
                Some(p) => load_probabilities(&read(p)?, data.n())?,
                None => gen_probabilities(data.n(), prob_seed),
            };
            Instance::mgsp(&data, vehicles, prob)?
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchOptions {
    pub runs: usize,
    /// Worker threads; `None` uses the hardware parallelism.
    pub threads: Option<usize>,
    /// When false, `mean_ms` is reported as 0 so output depends on the
    /// seeds alone.
    pub timing: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            runs: 50,
            threads: None,
            timing: true,
        }
    }
}

/// Runs every (instance, vehicles, method) setup of the manifest and
/// returns one row per setup in manifest order. The reference value is the
/// published best known cost when tabulated, otherwise the best cost any
/// listed method reached on that setup.
pub fn run_suite(manifest: &SuiteManifest, options: &BenchOptions) -> Result<Vec<StatsRow>> {
    manifest.check()?;
    if options.runs == 0 {
        return Err(Error::Manifest("runs must be at least 1".into()));
    }
    let instances = manifest
        .instances
        .iter()
        .map(|entry| {
            load_instance(
                &manifest.resolve(&entry.path),
                manifest.mode,
                1,
                entry
                    .prob_file
                    .as_deref()
                    .map(|p| manifest.resolve(p))
                    .as_deref(),
                &manifest.prob_seed,
            )
        })
        .collect::<Result<Vec<_>>>()?;

    let mut jobs = Vec::new();
    for (i, _) in instances.iter().enumerate() {
        for &m in &manifest.vehicles {
            for &method in &manifest.methods {
                jobs.push((i, m, method));
            }
        }
    }
    let config = manifest.solver.clone().with_seed(manifest.seed);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = options.threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Manifest(format!("cannot start worker pool: {e}")))?;
    let records = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, m, method)| run_setup(&instances[i], method, m, options.runs, &config))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut own_best: HashMap<(usize, usize), f64> = HashMap::new();
    for (&(i, m, _), recs) in jobs.iter().zip(&records) {
        let best = recs.iter().map(|r| r.cost).fold(f64::INFINITY, f64::min);
        let entry = own_best.entry((i, m)).or_insert(f64::INFINITY);
        *entry = entry.min(best);
    }
    let mut rows = Vec::with_capacity(jobs.len());
    for (&(i, m, method), recs) in jobs.iter().zip(&records) {
        let inst = &instances[i];
        let ours = own_best[&(i, m)];
        let bks = match published_bks(inst.name(), m, manifest.mode) {
            Some(table) if manifest.mode == Mode::Mtdp => {
                if ours < table {
                    log::info!(
                        "improved-BKS on {} M={}: {} < {}",
                        inst.name(),
                        m,
                        ours,
                        table
                    );
                }
                table
            }
            _ => ours,
        };
        let mut stats = compute_stats(recs, bks)?;
        if !options.timing {
            stats.mean_ms = 0.0;
        }
        log::debug!(
            "{} M={} {}: best {} mean {}",
            inst.name(),
            m,
            method,
            stats.best,
            stats.mean
        );
        rows.push(StatsRow {
            instance: inst.name().to_string(),
            m,
            mode: manifest.mode,
            method,
            stats,
        });
    }
    Ok(rows)
}
