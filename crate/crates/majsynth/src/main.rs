//! Command-line driver: synthesize networks from problem files, run
//! the bundled benchmarks, verify reports, and query the exhaustive
//! searcher.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use majsynth::oracle::{self, default_gate_bound, Closure, ExactResult};
use majsynth::{
    build_report, render_json, render_table, synthesize, Chromosome, CircuitSpec, CombinedMetrics,
    Report, SynthOptions, TruthTable, VerifyCase,
};

#[derive(Parser)]
#[command(name = "majsynth", version, about = "Majority/inverter network synthesis")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Synthesize a network for a problem file.
    Synthesize(SynthArgs),
    /// Synthesize the bundled benchmarks and compare reference costs.
    Benchmark(BenchArgs),
    /// Check a JSON report against its problem file.
    Verify(VerifyArgs),
    /// Exhaustive minimum majority-gate counts (2 to 4 variables).
    Exact(ExactArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Problem file.
    problem: PathBuf,
    #[command(flatten)]
    knobs: Knobs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Benchmark name; all of them if omitted.
    name: Option<String>,
    #[command(flatten)]
    knobs: Knobs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Problem file.
    problem: PathBuf,
    /// JSON report produced by `synthesize --format json`.
    report: PathBuf,
}

#[derive(Args)]
struct ExactArgs {
    /// Truth tables in hex: 1, 2, or 4 digits for 2, 3, or 4 variables.
    tables: Vec<String>,
    /// Explore every function of N variables and print all of them.
    #[arg(long, value_name = "N", conflicts_with = "tables")]
    all: Option<u8>,
    /// Gate bound for the search.
    #[arg(long)]
    bound: Option<usize>,
    /// Result cache, read if present and extended with new results.
    #[arg(long)]
    cache: Option<PathBuf>,
}

/// Search knobs. Unset ones fall back to `set` lines in the problem
/// file, then (for the seed) to `MAJSYNTH_SEED`, then to defaults.
#[derive(Args)]
struct Knobs {
    /// Population size.
    #[arg(long)]
    pop: Option<usize>,
    /// Elite fraction.
    #[arg(long)]
    elite: Option<f64>,
    /// Generation limit per output.
    #[arg(long)]
    max_gen: Option<usize>,
    /// Crossover rate before an exact realization exists.
    #[arg(long)]
    xover: Option<f64>,
    /// Crossover rate after one does.
    #[arg(long)]
    xover_valid: Option<f64>,
    /// Tournament size.
    #[arg(long)]
    tournament: Option<usize>,
    /// Stop after this many generations without improvement.
    #[arg(long)]
    stagnation: Option<usize>,
    /// Chromosome length cap.
    #[arg(long)]
    max_len: Option<usize>,
    /// Base RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Independent runs at consecutive seeds; the best result wins.
    #[arg(long)]
    runs: Option<u64>,
    /// Process outputs in a seed-shuffled order.
    #[arg(long)]
    shuffle_outputs: bool,
    /// Evaluate fitness on one thread (same results, more wall time).
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

fn main() -> ExitCode {
    match run(&Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.cmd {
        Cmd::Synthesize(a) => cmd_synthesize(a),
        Cmd::Benchmark(a) => cmd_benchmark(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Exact(a) => cmd_exact(a),
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn apply_setting(o: &mut SynthOptions, key: &str, value: &str) -> Result<(), String> {
    let bad = || format!("bad value {value:?} for `set {key}`");
    match key {
        "pop" => o.ga.population = value.parse().map_err(|_| bad())?,
        "elite" => o.ga.elite_fraction = value.parse().map_err(|_| bad())?,
        "max_gen" => o.ga.max_generations = value.parse().map_err(|_| bad())?,
        "xover" => o.ga.crossover_rate = value.parse().map_err(|_| bad())?,
        "xover_valid" => o.ga.crossover_rate_valid = value.parse().map_err(|_| bad())?,
        "tournament" => o.ga.tournament = value.parse().map_err(|_| bad())?,
        "stagnation" => o.ga.stagnation = value.parse().map_err(|_| bad())?,
        "max_len" => o.ga.max_len = value.parse().map_err(|_| bad())?,
        "seed" => o.seed = value.parse().map_err(|_| bad())?,
        "runs" => o.runs = value.parse().map_err(|_| bad())?,
        "shuffle_outputs" => o.shuffle_outputs = value.parse().map_err(|_| bad())?,
        _ => return Err(format!("unknown setting {key:?}")),
    }
    Ok(())
}

fn resolve_options(spec: &CircuitSpec, k: &Knobs) -> Result<SynthOptions, String> {
    let mut o = SynthOptions::default();
    if let Ok(s) = std::env::var("MAJSYNTH_SEED") {
        o.seed = s.parse().map_err(|_| format!("bad MAJSYNTH_SEED {s:?}"))?;
    }
    for (key, value) in &spec.settings {
        apply_setting(&mut o, key, value)?;
    }
    let g = &mut o.ga;
    if let Some(v) = k.pop {
        g.population = v;
    }
    if let Some(v) = k.elite {
        g.elite_fraction = v;
    }
    if let Some(v) = k.max_gen {
        g.max_generations = v;
    }
    if let Some(v) = k.xover {
        g.crossover_rate = v;
    }
    if let Some(v) = k.xover_valid {
        g.crossover_rate_valid = v;
    }
    if let Some(v) = k.tournament {
        g.tournament = v;
    }
    if let Some(v) = k.stagnation {
        g.stagnation = v;
    }
    if let Some(v) = k.max_len {
        g.max_len = v;
    }
    if let Some(v) = k.seed {
        o.seed = v;
    }
    if let Some(v) = k.runs {
        o.runs = v;
    }
    if k.shuffle_outputs {
        o.shuffle_outputs = true;
    }
    if k.sequential {
        o.ga.parallel = false;
    }
    validate_options(&o)?;
    Ok(o)
}

fn validate_options(o: &SynthOptions) -> Result<(), String> {
    let g = &o.ga;
    if g.population < 2 {
        return Err("population must be at least 2".into());
    }
    if !(0.0..1.0).contains(&g.elite_fraction)
        || (g.elite_fraction * g.population as f64).round() as usize >= g.population
    {
        return Err("elite fraction must leave room for offspring".into());
    }
    for (name, rate) in [("xover", g.crossover_rate), ("xover_valid", g.crossover_rate_valid)] {
        if !(0.0..=1.0).contains(&rate) {
            return Err(format!("{name} must be within 0..=1"));
        }
    }
    if g.tournament == 0 {
        return Err("tournament size must be at least 1".into());
    }
    if g.max_generations == 0 {
        return Err("max_gen must be at least 1".into());
    }
    if g.max_len < 4 {
        return Err("max_len must be at least 4 (one gate and its inputs)".into());
    }
    if o.runs == 0 {
        return Err("runs must be at least 1".into());
    }
    Ok(())
}

fn cmd_synthesize(a: &SynthArgs) -> Result<ExitCode, String> {
    let spec = CircuitSpec::parse(&read(&a.problem)?).map_err(|e| e.to_string())?;
    let opts = resolve_options(&spec, &a.knobs)?;
    let targets = spec.targets().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let solution = synthesize(spec.vars, &targets, &opts).map_err(|e| e.to_string())?;
    let wall = start.elapsed();
    let report = build_report(&spec, &opts, &solution);
    let text = match a.format {
        Format::Json => render_json(&report),
        Format::Table => render_table(&report, wall),
    };
    match &a.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_benchmark(a: &BenchArgs) -> Result<ExitCode, String> {
    let selected: Vec<_> = match &a.name {
        Some(name) => vec![*majsynth::corpus::by_name(name)
            .ok_or_else(|| format!("no benchmark named {name:?}"))?],
        None => majsynth::corpus::ALL.to_vec(),
    };
    for b in selected {
        let spec = b.spec();
        let opts = resolve_options(&spec, &a.knobs)?;
        let targets = spec.targets().map_err(|e| e.to_string())?;
        let start = Instant::now();
        let solution = synthesize(spec.vars, &targets, &opts).map_err(|e| e.to_string())?;
        let wall = start.elapsed();
        let report = build_report(&spec, &opts, &solution);
        println!("== {} ==", b.name);
        print!("{}", render_table(&report, wall));
        let r = b.reference_cost;
        println!(
            "reference: CMV {} CINV {} TMV {} TINV {} TG {} max-level {}\n",
            r.common_maj, r.common_inv, r.total_maj, r.total_inv, r.total_gates, r.max_level
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: &VerifyArgs) -> Result<ExitCode, String> {
    let spec = CircuitSpec::parse(&read(&a.problem)?).map_err(|e| e.to_string())?;
    let report: Report =
        serde_json::from_str(&read(&a.report)?).map_err(|e| format!("bad report: {e}"))?;
    if report.vars != spec.vars {
        return Err(format!(
            "report is for {} variable(s), problem has {}",
            report.vars, spec.vars
        ));
    }
    if report.outputs.len() != spec.outputs.len() {
        return Err(format!(
            "report has {} output(s), problem has {}",
            report.outputs.len(),
            spec.outputs.len()
        ));
    }
    let tables = spec.tables().map_err(|e| e.to_string())?;
    let mut chroms: Vec<(usize, String, Chromosome)> = Vec::new();
    for out in &report.outputs {
        let idx = spec
            .outputs
            .iter()
            .position(|o| o.name == out.name)
            .ok_or_else(|| format!("report output {:?} is not in the problem", out.name))?;
        if chroms.iter().any(|(i, _, _)| *i == idx) {
            return Err(format!("report output {:?} appears twice", out.name));
        }
        let c: Chromosome = out
            .expression
            .parse()
            .map_err(|e| format!("output {:?}: {e}", out.name))?;
        chroms.push((idx, out.name.clone(), c));
    }
    let cases: Vec<VerifyCase> = chroms
        .iter()
        .map(|(idx, name, c)| VerifyCase { name, chromosome: c, target: &tables[*idx] })
        .collect();
    let checked = oracle::verify(&cases).map_err(|e| e.to_string())?;
    let mut ok = true;
    for out in &checked.outputs {
        if out.ok() {
            println!("{}: ok", out.name);
        } else {
            ok = false;
            let rows: Vec<String> = out.mismatches.iter().map(u64::to_string).collect();
            println!("{}: MISMATCH at rows {}", out.name, rows.join(", "));
        }
    }
    let all: Vec<Chromosome> = chroms.iter().map(|(_, _, c)| c.clone()).collect();
    let m = CombinedMetrics::of(&all, spec.vars).map_err(|e| e.to_string())?;
    let actual = (m.common_maj(), m.common_inv(), m.distinct_maj, m.distinct_inv, m.total_gates(), m.max_level);
    let t = &report.totals;
    let claimed = (t.common_majority, t.common_inverters, t.total_majority, t.total_inverters, t.total_gates, t.max_level);
    if actual == claimed {
        println!("totals: ok");
    } else {
        ok = false;
        println!("totals: MISMATCH, report claims {claimed:?}, networks give {actual:?}");
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn vars_for_hex(hex: &str) -> Result<u8, String> {
    match hex.len() {
        1 => Ok(2),
        2 => Ok(3),
        4 => Ok(4),
        len => Err(format!("{hex:?}: expected 1, 2, or 4 hex digits, got {len}")),
    }
}

fn cmd_exact(a: &ExactArgs) -> Result<ExitCode, String> {
    let cache: HashMap<TruthTable, ExactResult> = match &a.cache {
        Some(p) if p.exists() => oracle::load_cache(p).map_err(|e| e.to_string())?,
        _ => HashMap::new(),
    };
    let mut have: HashSet<String> = cache.keys().map(TruthTable::to_hex).collect();
    let mut new_lines: Vec<String> = Vec::new();
    let mut closures: HashMap<u8, Closure> = HashMap::new();
    let mut all_found = true;

    let explore = |n: u8,
                       closures: &mut HashMap<u8, Closure>,
                       new_lines: &mut Vec<String>,
                       have: &mut HashSet<String>|
     -> Result<(), String> {
        if let Entry::Vacant(slot) = closures.entry(n) {
            let bound = a.bound.unwrap_or_else(|| default_gate_bound(n));
            let c = Closure::explore(n, bound).map_err(|e| e.to_string())?;
            for line in c.cache_lines() {
                let hex = line.split_whitespace().next().unwrap().to_string();
                if have.insert(hex) {
                    new_lines.push(line);
                }
            }
            slot.insert(c);
        }
        Ok(())
    };

    if let Some(n) = a.all {
        explore(n, &mut closures, &mut new_lines, &mut have)?;
        for line in closures[&n].cache_lines() {
            println!("{line}");
        }
    } else if a.tables.is_empty() {
        return Err("give truth tables in hex, or --all N".into());
    }

    for hex in &a.tables {
        let n = vars_for_hex(hex)?;
        let t = TruthTable::from_hex(n, hex).map_err(|e| format!("{hex:?}: {e}"))?;
        let found = match cache.get(&t) {
            Some(r) => Some(r.clone()),
            None => {
                explore(n, &mut closures, &mut new_lines, &mut have)?;
                closures[&n].lookup(&t)
            }
        };
        match found {
            Some(r) => println!("{} {} {}", t.to_hex(), r.min_maj, r.witness),
            None => {
                all_found = false;
                let bound = a.bound.unwrap_or_else(|| default_gate_bound(n));
                println!("# {}: no realization within {} gates", t.to_hex(), bound);
            }
        }
    }

    if let (Some(path), false) = (&a.cache, new_lines.is_empty()) {
        let mut text = if path.exists() { read(path)? } else { String::new() };
        if !text.is_empty() && !text.ends_with('\n') {
            text.push('\n');
        }
        for line in &new_lines {
            text.push_str(line);
            text.push('\n');
        }
        fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }

    Ok(if all_found { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
