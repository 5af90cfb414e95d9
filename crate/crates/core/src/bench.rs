//! Timing harness: solve generated instances of growing size and fit the
//! growth exponent of the running time.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use crate::error::{MmdcError, Result};
use crate::generate::{generate_instance, GenParams};
use crate::graph::build_expanded_graph;
use crate::solver::{solve_expanded, SolveOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    /// Values of `n = s + t`, split as `s = n / 2`, `t = n − s`.
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub reps: usize,
    pub wmax: u64,
    pub capmax: u32,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: vec![40, 80, 160],
            seed: 1,
            reps: 3,
            wmax: 1000,
            capmax: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    /// Mean wall time per solve.
    pub seconds: f64,
    /// Mean number of phases (augmentations) per solve.
    pub phases: f64,
    /// Mean total X capacity, which the phase count must equal.
    pub total_cap: f64,
    pub label_updates: f64,
    /// Mean peak auxiliary element count.
    pub aux_elements: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of log(time) against log(n).
    pub slope: f64,
    pub path_lengths: BTreeMap<usize, u64>,
}

/// Least-squares slope of `log y` on `log x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.sizes.len() < 3 || cfg.sizes.windows(2).any(|w| w[0] >= w[1]) || cfg.sizes[0] < 2 {
        return Err(MmdcError::Contract(
            "bench needs at least 3 strictly increasing sizes, each >= 2".into(),
        ));
    }
    let reps = cfg.reps.max(1);
    let mut rows = Vec::new();
    let mut path_lengths = BTreeMap::new();

    for &n in &cfg.sizes {
        let s = n / 2;
        let mut acc = BenchRow {
            n,
            seconds: 0.0,
            phases: 0.0,
            total_cap: 0.0,
            label_updates: 0.0,
            aux_elements: 0.0,
        };
        for rep in 0..reps {
            let inst = generate_instance(&GenParams {
                s,
                t: n - s,
                seed: cfg
                    .seed
                    .wrapping_mul(1_000_003)
                    .wrapping_add((n * 1000 + rep) as u64),
                wmax: cfg.wmax,
                capmax: cfg.capmax,
            });
            let started = Instant::now();
            let g = build_expanded_graph(&inst)?;
            let run = solve_expanded(&g, &SolveOptions::default(), &mut |_| {})?;
            acc.seconds += started.elapsed().as_secs_f64();
            acc.phases += run.stats.augmentations as f64;
            acc.total_cap += g.total_cap_x() as f64;
            acc.label_updates += run.stats.label_updates as f64;
            acc.aux_elements += run.stats.aux_elements as f64;
            for (len, c) in run.stats.path_lengths {
                *path_lengths.entry(len).or_insert(0) += c;
            }
        }
        let r = reps as f64;
        acc.seconds /= r;
        acc.phases /= r;
        acc.total_cap /= r;
        acc.label_updates /= r;
        acc.aux_elements /= r;
        rows.push(acc);
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|row| (row.n as f64, row.seconds.max(1e-9)))
        .collect();
    Ok(BenchReport {
        slope: loglog_slope(&points),
        rows,
        path_lengths,
    })
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>6} {:>12} {:>10} {:>10} {:>14} {:>12}",
            "n", "seconds", "phases", "sum_cap", "label_updates", "aux_elems"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>6} {:>12.6} {:>10.1} {:>10.1} {:>14.1} {:>12.1}",
                r.n, r.seconds, r.phases, r.total_cap, r.label_updates, r.aux_elements
            )?;
        }
        writeln!(f, "slope {:.3}", self.slope)?;
        let hist: Vec<String> = self
            .path_lengths
            .iter()
            .map(|(l, c)| format!("{l}:{c}"))
            .collect();
        write!(f, "path_lengths {}", hist.join(","))
    }
}
