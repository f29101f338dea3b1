use crate::error::{Error, Result};

use super::RunRecord;

/// Summary of one (instance, vehicles, method) setup against a reference.
#[derive(Debug, Clone, PartialEq)]
pub struct SetupStats {
    pub bks: f64,
    pub best: f64,
    pub mean: f64,
    /// Percent deviation of the best cost from `bks`.
    pub pdb: f64,
    /// Percent deviation of the mean cost from `bks`.
    pub pdm: f64,
    /// Population standard deviation of the costs.
    pub sd: f64,
    pub mean_ms: f64,
}

pub fn compute_stats(records: &[RunRecord], bks: f64) -> Result<SetupStats> {
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    if bks.is_nan() || bks <= 0.0 {
        return Err(Error::NonPositiveBks(bks));
    }
    let n = records.len() as f64;
    let best = records.iter().map(|r| r.cost).fold(f64::INFINITY, f64::min);
    let mean = records.iter().map(|r| r.cost).sum::<f64>() / n;
    let var = records.iter().map(|r| (r.cost - mean).powi(2)).sum::<f64>() / n;
    let mean_ms = records.iter().map(|r| r.wall_ms).sum::<f64>() / n;
    Ok(SetupStats {
        bks,
        best,
        mean,
        pdb: 100.0 * (best - bks) / bks,
        pdm: 100.0 * (mean - bks) / bks,
        sd: var.sqrt(),
        mean_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::Method;
    use crate::instance::Mode;

    fn records(costs: &[f64]) -> Vec<RunRecord> {
        costs
            .iter()
            .enumerate()
            .map(|(i, &cost)| RunRecord {
                method: Method::Proposed,
                instance: "x".into(),
                m: 2,
                mode: Mode::Mtdp,
                cost,
                wall_ms: 2.0 * i as f64,
                seed: i as u64,
            })
            .collect()
    }

    #[test]
    fn exact_match() {
        let s = compute_stats(&records(&[100.0]), 100.0).unwrap();
        assert_eq!((s.pdb, s.pdm, s.sd), (0.0, 0.0, 0.0));
    }

    #[test]
    fn two_samples() {
        let s = compute_stats(&records(&[110.0, 130.0]), 100.0).unwrap();
        assert!((s.pdb - 10.0).abs() < 1e-12);
        assert!((s.pdm - 20.0).abs() < 1e-12);
        assert!((s.sd - 10.0).abs() < 1e-12);
        assert_eq!(s.best, 110.0);
        assert_eq!(s.mean_ms, 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            compute_stats(&records(&[1.0]), 0.0),
            Err(Error::NonPositiveBks(_))
        ));
        assert!(matches!(compute_stats(&[], 1.0), Err(Error::NoRecords)));
    }
}
