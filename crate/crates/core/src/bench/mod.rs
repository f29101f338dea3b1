//! Benchmark harness: repeated seeded runs per setup, summary statistics,
//! CSV tables and route dumps.

mod dump;
mod stats;
mod suite;

pub use dump::{dump_routes, parse_routes};
pub use stats::{compute_stats, SetupStats};
pub use suite::{
    load_instance, run_suite, BenchOptions, SuiteInstance, SuiteManifest, DEFAULT_PROB_SEED,
};

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baseline::solve_kmeans;
use crate::clustering::cluster;
use crate::error::Result;
use crate::grasp::{solve_proposed, SolverConfig};
use crate::instance::{Instance, Mode};
use crate::objective::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Clustering,
    Proposed,
    #[serde(alias = "k-means")]
    Kmeans,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Clustering, Method::Proposed, Method::Kmeans];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Clustering => "clustering",
            Method::Proposed => "proposed",
            Method::Kmeans => "kmeans",
        }
    }

    pub fn is_deterministic(self) -> bool {
        self == Method::Clustering
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "clustering" => Ok(Method::Clustering),
            "proposed" => Ok(Method::Proposed),
            "kmeans" | "k-means" => Ok(Method::Kmeans),
            other => Err(format!(
                "unknown method {other:?} (expected clustering, proposed or kmeans)"
            )),
        }
    }
}

/// Runs `method` once on `inst`.
pub fn solve(inst: &Instance, method: Method, config: &SolverConfig) -> Result<Solution> {
    match method {
        Method::Clustering => Ok(cluster(inst)),
        Method::Proposed => solve_proposed(inst, config),
        Method::Kmeans => solve_kmeans(inst, config),
    }
}

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub method: Method,
    pub instance: String,
    pub m: usize,
    pub mode: Mode,
    pub cost: f64,
    pub wall_ms: f64,
    pub seed: u64,
}

fn timed(inst: &Instance, method: Method, config: &SolverConfig) -> Result<(Solution, f64)> {
    let started = Instant::now();
    let sol = solve(inst, method, config)?;
    Ok((sol, started.elapsed().as_secs_f64() * 1e3))
}

/// Runs `method` `runs` times with `m` vehicles placed at the instance's
/// first start vertex. Run `r` uses seed `config.seed + r`. The clustering
/// is deterministic, so it runs once and its record is replicated.
pub fn run_setup(
    inst: &Instance,
    method: Method,
    m: usize,
    runs: usize,
    config: &SolverConfig,
) -> Result<Vec<RunRecord>> {
    config.validate()?;
    let fleet = if inst.vehicles() == m && inst.starts().iter().all(|&s| s == inst.starts()[0]) {
        inst.clone()
    } else {
        inst.with_starts(vec![inst.starts()[0]; m])?
    };
    let record = |seed: u64, cost: f64, wall_ms: f64| RunRecord {
        method,
        instance: fleet.name().to_string(),
        m,
        mode: fleet.mode(),
        cost,
        wall_ms,
        seed,
    };
    let seed_of = |r: usize| config.seed.wrapping_add(r as u64);
    if method.is_deterministic() {
        let (sol, ms) = timed(&fleet, method, config)?;
        return Ok((0..runs)
            .map(|r| record(seed_of(r), sol.cost(), ms))
            .collect());
    }
    (0..runs)
        .into_par_iter()
        .map(|r| {
            let cfg = config.clone().with_seed(seed_of(r));
            let (sol, ms) = timed(&fleet, method, &cfg)?;
            Ok(record(cfg.seed, sol.cost(), ms))
        })
        .collect()
}

/// One line of the results table.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub instance: String,
    pub m: usize,
    pub mode: Mode,
    pub method: Method,
    pub stats: SetupStats,
}

pub const CSV_HEADER: &str = "instance,M,mode,method,bks,best,pdb,pdm,sd,mean_ms";

/// Renders rows in the given order. Costs use the shortest exact decimal
/// form, percentages four decimals, times three.
pub fn emit_csv(rows: &[StatsRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let s = &r.stats;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.4},{:.4},{:.4},{:.3}",
            r.instance, r.m, r.mode, r.method, s.bks, s.best, s.pdb, s.pdm, s.sd, s.mean_ms
        );
    }
    out
}
