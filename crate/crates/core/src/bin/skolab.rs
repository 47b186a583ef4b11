//! `skolab`: build SKO(n, n+1; λ, t) over GF(p) and check its structure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use skolab_core::formulas::{self, Family, FamilyParams};
use skolab_core::linalg::{derived_series, divergence_kernel, span_of};
use skolab_core::report::{run_suites, RunConfig, Suite};
use skolab_core::{AlgebraContext, Error};

#[derive(Parser)]
#[command(name = "skolab", version, about = "Special odd contact Lie superalgebras over GF(p)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Print a dimension from the closed formulas (or by brute force).
    Dim(DimArgs),
    /// Summarize the spanning sets S1..S5.
    Spanning(InstanceArgs),
    /// CSV table of family dimensions over GF(p).
    Compare(CompareArgs),
}

#[derive(Copy, Clone, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    #[arg(long, default_value_t = 5)]
    p: u32,
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Comma-separated truncation tuple; defaults to all ones.
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<u32>>,
    /// An integer mod p, or `all`.
    #[arg(long, default_value = "2")]
    lambda: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl InstanceArgs {
    fn t(&self) -> Vec<u32> {
        self.t.clone().unwrap_or_else(|| vec![1; self.n])
    }

    fn lambdas(&self) -> Result<Vec<i64>, Error> {
        if self.lambda == "all" {
            return Ok((0..self.p as i64).collect());
        }
        let l = self.lambda.parse().map_err(|_| Error::Config(format!("lambda must be an integer or `all`, got {:?}", self.lambda)))?;
        Ok(vec![l])
    }

    fn config(&self, suites: Vec<Suite>) -> Result<RunConfig, Error> {
        RunConfig::new(self.p, self.n, self.t(), self.lambdas()?, self.seed, suites)
    }

    fn sink(&self) -> Result<Box<dyn Write>, Error> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(io::stdout().lock()),
        })
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Suite names (comma-separated or repeated), or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    suite: Vec<String>,
    /// Run the λ values on separate threads.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct DimArgs {
    #[arg(long, default_value = "SKO")]
    family: Family,
    #[arg(long, default_value_t = 5)]
    p: u32,
    /// Number of even variables.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Number of odd variables; defaults to n for HO/SHO and n+1 otherwise.
    #[arg(long)]
    odd: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<u32>>,
    #[arg(long, default_value_t = 2)]
    lambda: i64,
    /// For SKO, also build the algebra and report its dimension.
    #[arg(long)]
    brute: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, default_value_t = 5)]
    p: u32,
    #[arg(long, value_delimiter = ',', default_value = "1,1,1")]
    t: Vec<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_suites(names: &[String]) -> Result<Vec<Suite>, Error> {
    if names.iter().any(|s| s == "all") {
        return Ok(Suite::ALL.to_vec());
    }
    names.iter().map(|s| s.parse()).collect()
}

fn verify(args: &VerifyArgs) -> Result<bool, Error> {
    let mut cfg = args.inst.config(parse_suites(&args.suite)?)?;
    cfg.parallel = args.parallel;
    let report = run_suites(&cfg)?;
    let mut out = args.inst.sink()?;
    match args.inst.format {
        Format::Json => report.write_json(&mut out)?,
        Format::Csv => report.write_csv(&mut out)?,
        Format::Text => report.write_text(&mut out)?,
    }
    out.flush()?;
    Ok(report.pass())
}

fn dim(args: &DimArgs) -> Result<bool, Error> {
    let odd = args.odd.unwrap_or(match args.family {
        Family::HO | Family::SHO => args.n,
        _ => args.n + 1,
    });
    let t = args.t.clone().unwrap_or_else(|| vec![1; args.n]);
    let lambda = (args.family == Family::SKO).then_some(args.lambda);
    let fp = FamilyParams { family: args.family, p: args.p, m: args.n, n: odd, t: t.clone(), lambda };
    let value = formulas::dim_family(&fp)?;
    println!("{value}");
    if args.brute && args.family == Family::SKO {
        let ctx = AlgebraContext::new(args.p, args.n, &t, args.lambda)?;
        let g = derived_series(&ctx, 0, 0)?.g;
        println!("brute force: {}", g.dim());
        return Ok(value == g.dim().into());
    }
    Ok(true)
}

#[derive(Serialize)]
struct SpanningSummary {
    sizes: [usize; 5],
    unit: usize,
    rank: usize,
    nullity: usize,
}

fn spanning(args: &InstanceArgs) -> Result<bool, Error> {
    let cfg = args.config(vec![])?;
    let mut rows = Vec::new();
    for &l in &cfg.lambdas {
        let ctx = AlgebraContext::new(cfg.p, cfg.n, &cfg.t, l)?;
        let sets = ctx.build_s_sets();
        let rank = span_of(&ctx, &sets.all_elements())?.dim();
        let nullity = divergence_kernel(&ctx).dim();
        let sizes = [0, 1, 2, 3, 4].map(|k| sets.sets[k].len());
        rows.push((l, SpanningSummary { sizes, unit: 1, rank, nullity }));
    }
    let mut out = args.sink()?;
    match args.format {
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(l, s)| serde_json::json!({ "lambda": l, "spanning": s })).collect();
            serde_json::to_writer_pretty(&mut out, &v)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["lambda", "S1", "S2", "S3", "S4", "S5", "rank", "nullity"])?;
            for (l, s) in &rows {
                let mut rec = vec![l.to_string()];
                rec.extend(s.sizes.iter().map(usize::to_string));
                rec.extend([s.rank.to_string(), s.nullity.to_string()]);
                w.write_record(rec)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for (l, s) in &rows {
                writeln!(out, "λ={l}: |S1..S5| = {:?}, rank(S1..S5 and 1) = {}, nullity(div) = {}", s.sizes, s.rank, s.nullity)?;
            }
        }
    }
    out.flush()?;
    Ok(rows.iter().all(|(_, s)| s.rank == s.nullity))
}

fn compare(args: &CompareArgs) -> Result<bool, Error> {
    let rows = formulas::comparison_table(args.p, &args.t)?;
    match &args.out {
        Some(path) => formulas::write_csv(&rows, BufWriter::new(File::create(path)?))?,
        None => formulas::write_csv(&rows, io::stdout().lock())?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Verify(a) => verify(a),
        Cmd::Dim(a) => dim(a),
        Cmd::Spanning(a) => spanning(a),
        Cmd::Compare(a) => compare(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
