//! `goalfix` — searches LTL requirements specifications for goal variants
//! that stay consistent with the domain and disable previously identified
//! boundary conditions.
//!
//! Exit codes: 0 success (including an empty result front), 2 input error,
//! 3 resource-limit abort.

mod report;
mod specfile;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use goalfix_core::analysis::{a12, hypervolume, igd, kruskal_wallis, mann_whitney, FrontPoint2D};
use goalfix_core::ltl::{parse, parse_with_alphabet, Alphabet};
use goalfix_core::objectives::{check_bc, BoundaryConditionReport};
use goalfix_core::search::{run, Algorithm, Problem, SearchConfig, Weights};
use goalfix_core::semantics::{count_bases, eval_lasso, LassoTrace, Limits, SemanticsError};

use report::RunReport;
use specfile::SpecFile;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn from_semantics(e: SemanticsError) -> CliError {
        match e {
            SemanticsError::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "goalfix",
    version,
    about = "Search-based resolution of goal conflicts in LTL requirements specifications"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for goal variants that restore consistency and disable the conflicts
    Resolve(ResolveArgs),
    /// Check the boundary-condition conditions of each bc in a spec file
    CheckBc(CheckBcArgs),
    /// Count the bases of bounded lassos satisfying a formula
    Count(CountArgs),
    /// Compare search algorithms over repeated seeded runs
    Compare(CompareArgs),
    /// Evaluate a formula on a lasso trace given as JSON
    EvalTrace(EvalTraceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SearchOpts {
    /// population size of the genetic loops
    #[arg(long, default_value_t = 100)]
    population: usize,
    /// maximum number of individuals created
    #[arg(long, default_value_t = 1000)]
    budget: u64,
    /// probability of applying crossover to an offspring
    #[arg(long = "crossover-prob", default_value_t = 0.1)]
    crossover_prob: f64,
    /// objective weights: consistency,resolved,syntactic,semantic
    #[arg(long, default_value = "0.1,0.7,0.1,0.1")]
    weights: String,
    /// lasso base-length bound of all satisfiability and counting queries
    #[arg(long, visible_alias = "k", default_value_t = 5)]
    bound: usize,
    /// per-query timeout in seconds for the bounded checks
    #[arg(long = "timeout-secs", default_value_t = 300)]
    timeout_secs: u64,
}

impl SearchOpts {
    fn config(&self, algorithm: Algorithm, seed: u64) -> Result<SearchConfig, CliError> {
        let cfg = SearchConfig {
            algorithm,
            population_size: self.population,
            evaluation_budget: self.budget,
            crossover_probability: self.crossover_prob,
            weights: parse_weights(&self.weights)?,
            bound: self.bound,
            seed,
            limits: Limits::with_timeout_secs(self.timeout_secs),
            ..SearchConfig::default()
        };
        cfg.validate().map_err(|e| CliError::Input(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct ResolveArgs {
    /// specification file
    spec: PathBuf,
    /// search algorithm: nsga3, wbga, amosa, or unguided
    #[arg(long, default_value = "nsga3")]
    algorithm: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    opts: SearchOpts,
    /// drop front members with both similarities below this threshold
    #[arg(long = "min-similarity")]
    min_similarity: Option<f64>,
    /// write the run report JSON to this path
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CheckBcArgs {
    /// specification file
    spec: PathBuf,
    #[arg(long, visible_alias = "k", default_value_t = 5)]
    bound: usize,
    #[arg(long = "timeout-secs", default_value_t = 300)]
    timeout_secs: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CountArgs {
    /// the formula to count bases for
    formula: String,
    /// base length
    #[arg(long, visible_alias = "k", default_value_t = 5)]
    bound: usize,
    /// atoms of the alphabet, comma or space separated (default: the
    /// formula's own atoms)
    #[arg(long)]
    aps: Option<String>,
    #[arg(long = "timeout-secs", default_value_t = 300)]
    timeout_secs: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    /// specification file
    spec: PathBuf,
    /// seeded runs per algorithm
    #[arg(long, default_value_t = 10)]
    runs: u64,
    /// algorithms to compare
    #[arg(long, value_delimiter = ',', default_value = "nsga3,wbga,amosa,unguided")]
    algorithms: Vec<String>,
    /// base seed; run r uses seed + r
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    opts: SearchOpts,
    /// write the indicator CSV here (stats JSON lands next to it)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalTraceArgs {
    /// the formula to evaluate
    formula: String,
    /// the trace as JSON: {"base": [["p","q"], ...], "loop": i}
    trace: String,
    /// atoms of the alphabet (default: atoms of the formula and the trace)
    #[arg(long)]
    aps: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_weights(text: &str) -> Result<Weights, CliError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("cannot parse weights `{text}`")))?;
    match parts.as_slice() {
        [consistency, resolved, syntactic, semantic] => Ok(Weights {
            consistency: *consistency,
            resolved: *resolved,
            syntactic: *syntactic,
            semantic: *semantic,
        }),
        _ => Err(CliError::Input(format!(
            "expected four comma-separated weights, got `{text}`"
        ))),
    }
}

fn parse_algorithm(name: &str) -> Result<Algorithm, CliError> {
    name.parse::<Algorithm>()
        .map_err(|e| CliError::Input(e.to_string()))
}

fn parse_aps(text: &str) -> Result<Alphabet, CliError> {
    Alphabet::new(text.split([' ', ',', '\t']).filter(|s| !s.is_empty()))
        .map_err(|e| CliError::Input(e.to_string()))
}

fn cmd_resolve(args: &ResolveArgs) -> Result<(), CliError> {
    let file = SpecFile::load(&args.spec)?;
    if file.bcs.is_empty() {
        return Err(CliError::Input(format!(
            "{}: resolve needs at least one `bc:` line",
            args.spec.display()
        )));
    }
    let cfg = args.opts.config(parse_algorithm(&args.algorithm)?, args.seed)?;
    let problem = Problem::new(file.specification(), file.bcs.clone())
        .map_err(|e| CliError::Input(e.to_string()))?;
    let start = Instant::now();
    let outcome = run(&problem, &cfg);
    let wall_ms = start.elapsed().as_millis() as u64;
    let report = RunReport::new(file.name.clone(), &cfg, args.min_similarity, &outcome, wall_ms);
    match args.format {
        Format::Text => print!("{}", report.render_table()),
        Format::Json => println!("{}", report.to_json()),
    }
    if let Some(path) = &args.out {
        std::fs::write(path, report.to_json())
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct BcRecord {
    bc: String,
    #[serde(flatten)]
    report: BoundaryConditionReport,
}

fn cmd_check_bc(args: &CheckBcArgs) -> Result<(), CliError> {
    let file = SpecFile::load(&args.spec)?;
    if file.bcs.is_empty() {
        return Err(CliError::Input(format!(
            "{}: no `bc:` lines to check",
            args.spec.display()
        )));
    }
    let spec = file.specification();
    let limits = Limits::with_timeout_secs(args.timeout_secs);
    let mut records = Vec::new();
    for bc in &file.bcs {
        let report =
            check_bc(&spec, bc, args.bound, &limits).map_err(CliError::from_semantics)?;
        records.push(BcRecord {
            bc: bc.to_string(),
            report,
        });
    }
    match args.format {
        Format::Text => {
            for r in &records {
                let minimality: Vec<String> =
                    r.report.minimality.iter().map(|m| m.to_string()).collect();
                println!(
                    "bc {}: inconsistency={} minimality=[{}] non-triviality={} holds={}",
                    r.bc,
                    r.report.inconsistency,
                    minimality.join(","),
                    r.report.non_triviality,
                    r.report.holds
                );
            }
        }
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&records).expect("serializable records")
        ),
    }
    Ok(())
}

fn cmd_count(args: &CountArgs) -> Result<(), CliError> {
    let (formula, alphabet) = match &args.aps {
        Some(aps) => {
            let alphabet = parse_aps(aps)?;
            let f = parse_with_alphabet(&args.formula, &alphabet)
                .map_err(|e| CliError::Input(e.to_string()))?;
            (f, alphabet)
        }
        None => {
            let f = parse(&args.formula).map_err(|e| CliError::Input(e.to_string()))?;
            let alphabet = Alphabet::new(f.atoms().iter().map(|a| a.to_string()))
                .map_err(|e| CliError::Input(e.to_string()))?;
            (f, alphabet)
        }
    };
    let limits = Limits::with_timeout_secs(args.timeout_secs);
    let count =
        count_bases(&formula, args.bound, &alphabet, &limits).map_err(CliError::from_semantics)?;
    match args.format {
        Format::Text => println!("{count}"),
        Format::Json => println!(
            "{}",
            serde_json::json!({ "formula": args.formula, "bound": args.bound, "count": count })
        ),
    }
    Ok(())
}

fn cmd_eval_trace(args: &EvalTraceArgs) -> Result<(), CliError> {
    #[derive(serde::Deserialize)]
    struct TraceDoc {
        base: Vec<Vec<String>>,
        #[serde(rename = "loop")]
        _loop_start: usize,
    }
    let alphabet = match &args.aps {
        Some(aps) => parse_aps(aps)?,
        None => {
            let doc: TraceDoc = serde_json::from_str(&args.trace)
                .map_err(|e| CliError::Input(format!("malformed trace JSON: {e}")))?;
            let formula = parse(&args.formula).map_err(|e| CliError::Input(e.to_string()))?;
            let mut names: Vec<String> = doc.base.into_iter().flatten().collect();
            names.extend(formula.atoms().iter().map(|a| a.to_string()));
            names.sort();
            names.dedup();
            Alphabet::new(names).map_err(|e| CliError::Input(e.to_string()))?
        }
    };
    let formula = parse_with_alphabet(&args.formula, &alphabet)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let trace =
        LassoTrace::from_json(&args.trace, &alphabet).map_err(CliError::from_semantics)?;
    let verdict = eval_lasso(&formula, &trace, &alphabet).map_err(CliError::from_semantics)?;
    match args.format {
        Format::Text => println!("{verdict}"),
        Format::Json => println!(
            "{}",
            serde_json::json!({ "formula": args.formula, "holds": verdict })
        ),
    }
    Ok(())
}

#[derive(Serialize)]
struct IndicatorRow {
    run: u64,
    algorithm: String,
    hv: f64,
    igd: f64,
}

#[derive(Serialize)]
struct TestRecord {
    statistic: f64,
    p_value: f64,
}

#[derive(Serialize)]
struct PairwiseRecord {
    a: String,
    b: String,
    metric: String,
    u: f64,
    p_value: f64,
    a12: f64,
}

#[derive(Serialize)]
struct StatsSummary {
    kruskal_wallis: BTreeMap<String, TestRecord>,
    pairwise: Vec<PairwiseRecord>,
}

fn csv_value(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_owned()
    } else {
        format!("{v}")
    }
}

fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let file = SpecFile::load(&args.spec)?;
    if file.bcs.is_empty() {
        return Err(CliError::Input(format!(
            "{}: compare needs at least one `bc:` line",
            args.spec.display()
        )));
    }
    if args.runs == 0 {
        return Err(CliError::Input("at least one run is required".into()));
    }
    let algorithms: Vec<Algorithm> = args
        .algorithms
        .iter()
        .map(|s| parse_algorithm(s))
        .collect::<Result<_, _>>()?;
    if algorithms.is_empty() {
        return Err(CliError::Input("at least one algorithm is required".into()));
    }
    let problem = Problem::new(file.specification(), file.bcs.clone())
        .map_err(|e| CliError::Input(e.to_string()))?;
    let ideal = [FrontPoint2D::new(1.0, 1.0)];

    let mut rows: Vec<IndicatorRow> = Vec::new();
    let mut hv_groups: Vec<Vec<f64>> = vec![Vec::new(); algorithms.len()];
    let mut igd_groups: Vec<Vec<f64>> = vec![Vec::new(); algorithms.len()];
    for (slot, algorithm) in algorithms.iter().enumerate() {
        for r in 0..args.runs {
            let cfg = args.opts.config(*algorithm, args.seed + r)?;
            let outcome = run(&problem, &cfg);
            let points: Vec<FrontPoint2D> = outcome
                .archive
                .members()
                .iter()
                .map(|c| FrontPoint2D::new(c.fitness.syntactic, c.fitness.semantic))
                .collect();
            let hv = hypervolume(&points);
            let igd_value = igd(&points, &ideal);
            hv_groups[slot].push(hv);
            igd_groups[slot].push(igd_value);
            rows.push(IndicatorRow {
                run: r,
                algorithm: algorithm.to_string(),
                hv,
                igd: igd_value,
            });
        }
    }

    let mut csv = String::from("run,algorithm,hv,igd\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            row.run,
            row.algorithm,
            csv_value(row.hv),
            csv_value(row.igd)
        ));
    }

    let mut kw = BTreeMap::new();
    if algorithms.len() >= 2 {
        for (metric, groups) in [("hv", &hv_groups), ("igd", &igd_groups)] {
            let result = kruskal_wallis(groups).map_err(|e| CliError::Input(e.to_string()))?;
            kw.insert(
                metric.to_owned(),
                TestRecord {
                    statistic: result.statistic,
                    p_value: result.p_value.unwrap_or(1.0),
                },
            );
        }
    }
    let mut pairwise = Vec::new();
    for i in 0..algorithms.len() {
        for j in i + 1..algorithms.len() {
            for (metric, groups) in [("hv", &hv_groups), ("igd", &igd_groups)] {
                let mwu = mann_whitney(&groups[i], &groups[j])
                    .map_err(|e| CliError::Input(e.to_string()))?;
                let effect =
                    a12(&groups[i], &groups[j]).map_err(|e| CliError::Input(e.to_string()))?;
                pairwise.push(PairwiseRecord {
                    a: algorithms[i].to_string(),
                    b: algorithms[j].to_string(),
                    metric: metric.to_owned(),
                    u: mwu.statistic,
                    p_value: mwu.p_value.unwrap_or(1.0),
                    a12: effect.statistic,
                });
            }
        }
    }
    let stats = StatsSummary {
        kruskal_wallis: kw,
        pairwise,
    };
    let stats_json = serde_json::to_string_pretty(&stats).expect("serializable stats");

    match &args.out {
        Some(path) => {
            std::fs::write(path, &csv)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            let stats_path = stats_sibling(path);
            std::fs::write(&stats_path, &stats_json).map_err(|e| {
                CliError::Input(format!("cannot write {}: {e}", stats_path.display()))
            })?;
            println!("wrote {} and {}", path.display(), stats_path.display());
        }
        None => {
            print!("{csv}");
            println!("{stats_json}");
        }
    }
    Ok(())
}

fn stats_sibling(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("stats.json")
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Resolve(args) => cmd_resolve(&args),
        Command::CheckBc(args) => cmd_check_bc(&args),
        Command::Count(args) => cmd_count(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::EvalTrace(args) => cmd_eval_trace(&args),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
