use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use credeval_core::harness::{
    add_query_means, correlate_report, evaluate, oracle_sweep, parse_measure_list, Granularity,
};
use credeval_core::io::{
    convert_csv, parse_assessed_rankings, parse_report, parse_run_and_qrels, write_report,
    ColumnRef, CsvLayout, ReportFormat,
};
use credeval_core::{Gain, MeasureConfig, UnjudgedPolicy};

const TABLE_MEASURES: &str =
    "ndcg,ap,f1,g,nlre,ngre,nwcs,cam:ndcg+f1,cam:ndcg+g,cam:ap+f1,cam:ap+g,\
                              wham:ndcg+f1,wham:ndcg+g,wham:ap+f1,wham:ap+g";

/// Evaluate rankings against graded relevance and credibility judgments.
#[derive(Debug, Parser)]
#[command(name = "credeval", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score rankings and print a report.
    Eval(EvalArgs),
    /// Spearman correlation between two measures of a report.
    Correlate(CorrelateArgs),
    /// Exhaustively check the LRE/GRE normalisation constants.
    Oracle(OracleArgs),
    /// Convert a judged-ranking CSV export to the assessed-ranking format.
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Assessed-ranking file: `query assessor rank doc relevance credibility`.
    #[arg(long, conflicts_with_all = ["run", "qrels"], required_unless_present = "run")]
    input: Option<PathBuf>,
    /// Run file: `query Q0 doc rank score tag`.
    #[arg(long, requires = "qrels")]
    run: Option<PathBuf>,
    /// Qrels file: `query assessor doc relevance credibility`.
    #[arg(long, requires = "run")]
    qrels: Option<PathBuf>,
    /// Comma-separated measures; `cam:<rel>+<cred>` and `wham:<rel>+<cred>` aggregate two.
    #[arg(long, default_value = TABLE_MEASURES)]
    measures: String,
    #[arg(long, default_value_t = 0.5)]
    mu: f64,
    #[arg(long, default_value_t = 0.5)]
    nu: f64,
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
    /// Rank cutoff for P@k, recall, NDCG, F-1 and G.
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Grades at or above this value count as relevant/credible.
    #[arg(long, default_value_t = 3)]
    binary_threshold: u8,
    /// NDCG gain: linear or exponential.
    #[arg(long, default_value = "linear")]
    gain: String,
    /// Grade for ranked documents without a judgment: 0 or 1..4.
    #[arg(long, default_value = "0")]
    unjudged: String,
    /// tsv or json.
    #[arg(long, default_value = "tsv")]
    output: String,
    /// unit: per-unit rows only; query-mean: also per-query means over assessors.
    #[arg(long, default_value = "query-mean")]
    granularity: String,
}

#[derive(Debug, Args)]
struct CorrelateArgs {
    /// Report produced by `eval` (TSV or JSON).
    #[arg(long)]
    report: PathBuf,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    /// unit or query-mean.
    #[arg(long, default_value = "query-mean")]
    granularity: String,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Ranking lengths, comma separated (2..=7).
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4, 5, 6])]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.25f64, 0.5, 1.0])]
    mu: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.25f64, 0.5, 1.0])]
    nu: Vec<f64>,
    /// Absolute tolerance for the bound and attainment checks.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = ",")]
    delimiter: char,
    /// The first row holds data, not column names.
    #[arg(long)]
    no_header: bool,
    /// Column holding the query id (0-based index or header name).
    #[arg(long)]
    query: String,
    #[arg(long)]
    assessor: String,
    /// Rank column; rows are ranked in file order when omitted.
    #[arg(long)]
    rank: Option<String>,
    #[arg(long)]
    doc: String,
    #[arg(long)]
    relevance: String,
    #[arg(long)]
    credibility: String,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run_eval(args: EvalArgs) -> Result<String> {
    let specs = parse_measure_list(&args.measures)?;
    let config = MeasureConfig {
        mu: args.mu,
        nu: args.nu,
        lambda: args.lambda,
        cutoff_k: args.k,
        binary_threshold: args.binary_threshold,
        unjudged: args.unjudged.parse::<UnjudgedPolicy>()?,
        gain: args.gain.parse::<Gain>()?,
    };
    config.validate()?;
    let format: ReportFormat = args.output.parse()?;
    let granularity: Granularity = args.granularity.parse()?;

    let units = match (&args.input, &args.run, &args.qrels) {
        (Some(input), _, _) => {
            let path = input.display();
            parse_assessed_rankings(&read(input)?).with_context(|| format!("{path}"))?
        }
        (None, Some(run), Some(qrels)) => {
            let parsed = parse_run_and_qrels(&read(run)?, &read(qrels)?, config.unjudged)
                .with_context(|| format!("{} / {}", run.display(), qrels.display()))?;
            for w in &parsed.warnings {
                eprintln!("warning: {w}");
            }
            parsed.units
        }
        _ => bail!("provide --input, or both --run and --qrels"),
    };

    let mut report = evaluate(&units, &specs, &config)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if granularity == Granularity::QueryMean {
        add_query_means(&mut report);
    }
    Ok(write_report(&report, format))
}

fn run_correlate(args: CorrelateArgs) -> Result<String> {
    let report =
        parse_report(&read(&args.report)?).with_context(|| format!("{}", args.report.display()))?;
    let granularity: Granularity = args.granularity.parse()?;
    let c = correlate_report(&report, &args.x, &args.y, granularity)?;
    let rho = match c.rho {
        Some(r) => format!("{r:.4}"),
        None => {
            eprintln!("warning: correlation undefined (fewer than two pairs or no variance)");
            "undefined".to_string()
        }
    };
    let level = match granularity {
        Granularity::Unit => "unit",
        Granularity::QueryMean => "query-mean",
    };
    Ok(format!(
        "x\ty\tgranularity\tpairs\trho\n{}\t{}\t{level}\t{}\t{rho}\n",
        args.x, args.y, c.pairs
    ))
}

fn run_oracle(args: OracleArgs) -> Result<(String, bool)> {
    let weights: Vec<(f64, f64)> = args
        .mu
        .iter()
        .flat_map(|&mu| args.nu.iter().map(move |&nu| (mu, nu)))
        .collect();
    let results = oracle_sweep(&args.n, &weights)?;
    let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let mut out = String::from("n\tmu\tnu\tpairs\tmax_lre\tc_lre\tlre\tmax_gre\tc_gre\tgre\n");
    let mut all_pass = true;
    for r in &results {
        let lre_ok = r.lre_bounded(args.tol) && r.lre_attained(args.tol);
        let gre_ok = r.gre_bounded(args.tol) && r.gre_attained(args.tol);
        all_pass &= lre_ok && gre_ok;
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{:.9}\t{:.9}\t{}\t{:.9}\t{:.9}\t{}\n",
            r.n,
            r.mu,
            r.nu,
            r.pairs,
            r.max_lre,
            r.c_lre,
            status(lre_ok),
            r.max_gre,
            r.c_gre,
            status(gre_ok)
        ));
    }
    Ok((out, all_pass))
}

fn run_convert(args: ConvertArgs) -> Result<String> {
    if !args.delimiter.is_ascii() {
        bail!("delimiter must be a single ASCII character");
    }
    let col = |s: &str| s.parse::<ColumnRef>();
    let layout = CsvLayout {
        delimiter: args.delimiter as u8,
        has_header: !args.no_header,
        query: col(&args.query)?,
        assessor: col(&args.assessor)?,
        rank: args.rank.as_deref().map(col).transpose()?,
        doc: col(&args.doc)?,
        relevance: col(&args.relevance)?,
        credibility: col(&args.credibility)?,
    };
    let text = convert_csv(&read(&args.input)?, &layout)
        .with_context(|| format!("{}", args.input.display()))?;
    // the converted text must itself be a valid assessed-ranking file
    parse_assessed_rankings(&text).context("converted output")?;
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(a) => run_eval(a).map(|s| (s, true)),
        Command::Correlate(a) => run_correlate(a).map(|s| (s, true)),
        Command::Oracle(a) => run_oracle(a),
        Command::Convert(a) => run_convert(a).map(|s| (s, true)),
    };
    match outcome {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: normalisation bound check failed");
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
