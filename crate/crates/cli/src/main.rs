//! `sqfpow`: invariants of square-free powers of edge ideals from the command line.

mod compute;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sqfpow::formulas::Invariant;
use sqfpow::harness::{
    family_set, parse_range, run_identities, scan, verify, Checkpoint, Conjecture, FamilyRanges, Identity,
    IdentityConfig, KSelection, SweepOptions, VerificationReport,
};
use sqfpow::simplicial::FieldSpec;
use sqfpow::Error;

const AFTER_HELP: &str = "\
Family descriptors: path:N, cycle:N, wpath:M, wcycle:M, mwpath:R1,R2,..., mwcycle:M:R,
cmforest:M:U-V,... (forest vertices are 1-based).

Caps: full Betti tables are computed for graphs with at most 18 vertices by
default (--max-n raises this up to 24). Depth needs the projective dimension,
hence the full table, so it shares the same cap.

Exit codes: 0 all checks held, 1 usage or input error, 2 a proven formula
failed, 3 a conjecture has a counterexample candidate.";

#[derive(Parser)]
#[command(name = "sqfpow", version, about, after_help = AFTER_HELP)]
struct Cli {
    /// Worker threads (default: all cores). Reports do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of I(G)^[k] for one graph.
    Compute(compute::ComputeArgs),
    /// Check the closed formulas over a family and parameter range.
    Verify(VerifyArgs),
    /// Compare a conjectured formula with computation over a range.
    Scan(ScanArgs),
    /// Randomized checks of the ideal identities and the regularity/depth lemmas.
    Identities(IdentitiesArgs),
}

#[derive(Args)]
struct FieldArg {
    /// Field characteristic: 0 for the rationals or a prime.
    #[arg(long = "char", default_value_t = FieldSpec::DEFAULT_PRIME)]
    characteristic: u32,
}

#[derive(Args)]
struct ReportArgs {
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the cases as CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Record the computation time of every case.
    #[arg(long)]
    timings: bool,
    /// Largest graph order to accept.
    #[arg(long, default_value_t = 18)]
    max_n: usize,
    /// Recompute every N-th instance over the rationals (0 disables).
    #[arg(long, default_value_t = 5)]
    char0_every: usize,
    /// Append finished instances to this JSON-lines file and reuse those already there.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Print only the summary line instead of the full table.
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Family name: path, cycle, wpath, wcycle, mwpath, mwcycle or cmforest.
    family: String,
    /// Range of n for paths and cycles, e.g. 2..10 (inclusive).
    #[arg(long)]
    n: Option<String>,
    /// Range of m for the whiskered families.
    #[arg(long)]
    m: Option<String>,
    /// Range of whisker multiplicities for mwpath and mwcycle.
    #[arg(long)]
    r: Option<String>,
    /// Largest forest order for cmforest.
    #[arg(long)]
    max_tree_vertices: Option<usize>,
    /// Comma-separated values of k.
    #[arg(long, value_delimiter = ',', conflicts_with = "all_k")]
    k: Vec<usize>,
    /// Every k from 1 to the matching number (the default).
    #[arg(long)]
    all_k: bool,
    /// Comma-separated invariants: reg, depth, cm, linear (default: all).
    #[arg(long, value_delimiter = ',')]
    invariant: Vec<String>,
    #[command(flatten)]
    field: FieldArg,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Args)]
struct ScanArgs {
    /// cycle-depth, wcycle-reg or wcycle-depth.
    conjecture: String,
    /// Range of n (cycle-depth).
    #[arg(long)]
    n: Option<String>,
    /// Range of m (wcycle-reg, wcycle-depth).
    #[arg(long)]
    m: Option<String>,
    #[command(flatten)]
    field: FieldArg,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Args)]
struct IdentitiesArgs {
    /// Random trials per identity.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Largest random graph order.
    #[arg(long, default_value_t = 10)]
    max_vertices: usize,
    /// Comma-separated identity names (default: all).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    #[command(flatten)]
    field: FieldArg,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Usage or input error; exits with status 1.
pub(crate) struct Failure(pub(crate) String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Compute(a) => compute::run(a),
        Command::Verify(a) => run_verify(a),
        Command::Scan(a) => run_scan(a),
        Command::Identities(a) => run_identities_cmd(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn field(a: &FieldArg) -> Result<FieldSpec, Failure> {
    Ok(FieldSpec::new(a.characteristic)?)
}

fn optional_range(s: &Option<String>) -> Result<Option<std::ops::RangeInclusive<usize>>, Failure> {
    s.as_deref().map(parse_range).transpose().map_err(Failure::from)
}

fn sweep_options(f: FieldSpec, r: &ReportArgs) -> SweepOptions {
    SweepOptions {
        field: f,
        max_n: r.max_n,
        char0_every: r.char0_every,
        timings: r.timings,
    }
}

fn open_checkpoint(r: &ReportArgs, f: FieldSpec) -> Result<Option<Checkpoint>, Failure> {
    r.checkpoint
        .as_ref()
        .map(|p| Checkpoint::open(p, f.characteristic()))
        .transpose()
        .map_err(Failure::from)
}

fn emit(report: &VerificationReport, r: &ReportArgs) -> Result<i32, Failure> {
    if let Some(p) = &r.json {
        std::fs::write(p, report.to_json() + "\n")?;
    }
    if let Some(p) = &r.csv {
        std::fs::write(p, report.to_csv()?)?;
    }
    if r.quiet {
        println!("{}", report.summary_line());
    } else {
        print!("{}", report.table());
    }
    for c in report.char0_checks.iter().filter(|c| !c.agrees) {
        println!("characteristic 0 disagrees: {}:{} k={}", c.family, c.params, c.k);
    }
    Ok(report.exit_code())
}

fn run_verify(a: VerifyArgs) -> Result<i32, Failure> {
    let f = field(&a.field)?;
    let ranges = FamilyRanges {
        n: optional_range(&a.n)?,
        m: optional_range(&a.m)?,
        r: optional_range(&a.r)?,
        max_tree_vertices: a.max_tree_vertices,
    };
    let families = family_set(&a.family, &ranges)?;
    let ks = if a.k.is_empty() {
        KSelection::All
    } else {
        KSelection::Only(a.k.clone())
    };
    let invariants = if a.invariant.is_empty() {
        Invariant::ALL.to_vec()
    } else {
        a.invariant
            .iter()
            .map(|s| s.parse::<Invariant>())
            .collect::<Result<Vec<_>, _>>()?
    };
    let opts = sweep_options(f, &a.report);
    let ckpt = open_checkpoint(&a.report, f)?;
    let report = verify(&a.family, &families, &ks, &invariants, &opts, ckpt.as_ref())?;
    emit(&report, &a.report)
}

fn run_scan(a: ScanArgs) -> Result<i32, Failure> {
    let f = field(&a.field)?;
    let conj: Conjecture = a.conjecture.parse()?;
    let (given, other) = match conj.parameter() {
        "n" => (&a.n, &a.m),
        _ => (&a.m, &a.n),
    };
    if other.is_some() {
        return Err(Failure(format!("{conj} takes --{}", conj.parameter())));
    }
    let range = optional_range(given)?.unwrap_or_else(|| conj.default_range());
    let opts = sweep_options(f, &a.report);
    let ckpt = open_checkpoint(&a.report, f)?;
    let report = scan(conj, range, &opts, ckpt.as_ref())?;
    emit(&report, &a.report)
}

fn run_identities_cmd(a: IdentitiesArgs) -> Result<i32, Failure> {
    let f = field(&a.field)?;
    let ids = if a.only.is_empty() {
        Identity::ALL.to_vec()
    } else {
        a.only.iter().map(|s| s.parse::<Identity>()).collect::<Result<Vec<_>, _>>()?
    };
    let cfg = IdentityConfig {
        trials: a.trials,
        seed: a.seed,
        max_vertices: a.max_vertices,
        field_char: f.characteristic(),
    };
    let report = run_identities(&ids, &cfg)?;
    if let Some(p) = &a.json {
        std::fs::write(p, report.to_json() + "\n")?;
    }
    print!("{}", report.table());
    Ok(report.exit_code())
}
