//! Result reporting.
//!
//! The JSON form contains only quantities that are a pure function of
//! the problem, the configuration, and the seed, so two invocations
//! with the same inputs produce byte-identical files. Wall time and
//! the thread-pool switch never appear in it; the table form prints
//! wall time for humans.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::ga::{Solution, SynthOptions};
use crate::problem::CircuitSpec;

#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub vars: u8,
    /// Seed of the winning run.
    pub seed: u64,
    pub config: ConfigEcho,
    pub outputs: Vec<OutputReport>,
    pub totals: TotalsReport,
}

/// The effective configuration, minus anything that cannot change the
/// result.
#[derive(Debug, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub population: usize,
    pub elite_fraction: f64,
    pub max_generations: usize,
    pub crossover_rate: f64,
    pub crossover_rate_valid: f64,
    pub tournament: usize,
    pub stagnation: usize,
    pub max_len: usize,
    pub seed: u64,
    pub runs: u64,
    pub shuffle_outputs: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OutputReport {
    pub name: String,
    pub minterms: Vec<u64>,
    pub expression: String,
    pub majority_gates: usize,
    pub inverters: usize,
    pub levels: usize,
    pub generations: usize,
}

/// Network-wide gate counts after cross-output sharing: `common_*`
/// are gates counted once though used by several outputs, `total_*`
/// count each distinct gate once.
#[derive(Debug, Serialize, Deserialize)]
pub struct TotalsReport {
    pub common_majority: usize,
    pub common_inverters: usize,
    pub total_majority: usize,
    pub total_inverters: usize,
    pub total_gates: usize,
    pub max_level: usize,
}

pub fn build_report(spec: &CircuitSpec, opts: &SynthOptions, solution: &Solution) -> Report {
    debug_assert_eq!(spec.outputs.len(), solution.outputs.len());
    let outputs = solution
        .outputs
        .iter()
        .zip(&spec.outputs)
        .map(|(solved, declared)| {
            debug_assert_eq!(solved.name, declared.name);
            OutputReport {
                name: solved.name.clone(),
                minterms: declared.minterms.clone(),
                expression: solved.chromosome.to_string(),
                majority_gates: solved.metrics.maj,
                inverters: solved.metrics.inv,
                levels: solved.metrics.levels,
                generations: solved.generations,
            }
        })
        .collect();
    let c = &solution.combined;
    Report {
        vars: spec.vars,
        seed: solution.seed,
        config: ConfigEcho {
            population: opts.ga.population,
            elite_fraction: opts.ga.elite_fraction,
            max_generations: opts.ga.max_generations,
            crossover_rate: opts.ga.crossover_rate,
            crossover_rate_valid: opts.ga.crossover_rate_valid,
            tournament: opts.ga.tournament,
            stagnation: opts.ga.stagnation,
            max_len: opts.ga.max_len,
            seed: opts.seed,
            runs: opts.runs,
            shuffle_outputs: opts.shuffle_outputs,
        },
        outputs,
        totals: TotalsReport {
            common_majority: c.common_maj(),
            common_inverters: c.common_inv(),
            total_majority: c.distinct_maj,
            total_inverters: c.distinct_inv,
            total_gates: c.total_gates(),
            max_level: c.max_level,
        },
    }
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_table(report: &Report, wall: Duration) -> String {
    let mut s = String::new();
    let name_w = report
        .outputs
        .iter()
        .map(|o| o.name.len())
        .chain([6])
        .max()
        .unwrap();
    writeln!(s, "{:<name_w$}  {:>3}  {:>4}  {:>6}  {:>11}  expression", "output", "NMV", "NINV", "levels", "generations").unwrap();
    for o in &report.outputs {
        writeln!(
            s,
            "{:<name_w$}  {:>3}  {:>4}  {:>6}  {:>11}  {}",
            o.name, o.majority_gates, o.inverters, o.levels, o.generations, o.expression
        )
        .unwrap();
    }
    let t = &report.totals;
    writeln!(s).unwrap();
    writeln!(s, "{:>3}  {:>4}  {:>3}  {:>4}  {:>3}  max-level", "CMV", "CINV", "TMV", "TINV", "TG").unwrap();
    writeln!(
        s,
        "{:>3}  {:>4}  {:>3}  {:>4}  {:>3}  {}",
        t.common_majority, t.common_inverters, t.total_majority, t.total_inverters, t.total_gates, t.max_level
    )
    .unwrap();
    writeln!(s).unwrap();
    writeln!(s, "seed {} ({} run(s)), {:.2} s", report.seed, report.config.runs, wall.as_secs_f64()).unwrap();
    s
}
