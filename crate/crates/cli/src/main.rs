use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use coset_radon::circle::{standard_grid, verify_example};
use coset_radon::group::{FiniteGroup, GroupSpec};
use coset_radon::verify::{
    self, canonical_json, emit, exit_code, parse_subgroup, summarize, write_output, Entity, Format, GroupRef,
    PairSelection, SubgroupRef, SuiteConfig, CORPUS_ENV,
};
use coset_radon::{operator_matrix, Execution, Family, HaarConvention, OperatorKind, OperatorSpec};

/// Exact verification of Radon transforms on coset spaces of finite groups.
#[derive(Parser)]
#[command(name = "coset-radon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the claim suite and print a report.
    Verify(VerifyArgs),
    /// Print the matrix of one operator.
    Matrix(MatrixArgs),
    /// Check the C^x example on a polar grid.
    Example(ExampleArgs),
    /// List groups and their subgroups.
    Groups(GroupsArgs),
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn format(&self) -> Result<Format> {
        Ok(self.format.parse()?)
    }

    fn write(&self, text: &str) -> Result<()> {
        write_output(text, self.out.as_deref()).with_context(|| "writing output")
    }
}

#[derive(Args)]
struct Subgroups {
    /// Subgroup L: `e`, `G`, or comma-separated generators (indices or labels).
    #[arg(long = "subgroup-L")]
    l: Option<String>,
    /// Subgroup H, same syntax as L.
    #[arg(long = "subgroup-H")]
    h: Option<String>,
    /// Subgroup K, same syntax as L.
    #[arg(long = "subgroup-K")]
    k: Option<String>,
}

impl Subgroups {
    fn any(&self) -> bool {
        self.l.is_some() || self.h.is_some() || self.k.is_some()
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON configuration file; command-line flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Group name (Z4, S3, D4, Q8, Z2xZ2, ...) or path to a JSON group spec. Repeatable.
    #[arg(long)]
    group: Vec<String>,
    /// Claim family to run. Repeatable; default is all.
    #[arg(long)]
    family: Vec<String>,
    #[command(flatten)]
    subgroups: Subgroups,
    /// Haar convention on subgroups for P_H and T_H.
    #[arg(long, value_parser = ["counting", "normalized"])]
    convention: Option<String>,
    /// Seed for the random rational test functions.
    #[arg(long)]
    seed: Option<u64>,
    /// Random test functions per case.
    #[arg(long)]
    samples: Option<usize>,
    /// Include per-case wall-clock time (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
    /// Run cases on the current thread only.
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct MatrixArgs {
    /// Operator: radon-nested, radon-dual-nested, radon-general, radon-dual-general,
    /// project-p, pullback, project-t, tau, transport.
    #[arg(long)]
    op: String,
    #[arg(long)]
    group: String,
    #[command(flatten)]
    subgroups: Subgroups,
    #[arg(long, default_value = "counting", value_parser = ["counting", "normalized"])]
    convention: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ExampleArgs {
    #[arg(long, default_value_t = 100)]
    radii: usize,
    #[arg(long, default_value_t = 8)]
    angles: usize,
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GroupsArgs {
    /// Show one group in detail; otherwise list the corpus.
    #[arg(long)]
    group: Option<String>,
}

fn load_group(arg: &str) -> Result<FiniteGroup> {
    GroupSpec::resolve(arg).and_then(|s| s.build()).with_context(|| format!("loading group {arg:?}"))
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let mut config = match &args.config {
        Some(p) => SuiteConfig::load(p).with_context(|| format!("reading config {}", p.display()))?,
        None => SuiteConfig::default(),
    };
    if !args.group.is_empty() {
        config.groups = args.group.iter().map(|g| GroupRef::Name(g.clone())).collect();
    }
    if !args.family.is_empty() {
        config.families = args.family.iter().map(|f| f.parse::<Family>()).collect::<Result<_, _>>()?;
    }
    if args.subgroups.any() {
        let text = |s: &Option<String>| s.clone().map(SubgroupRef::Text);
        config.pairs = PairSelection::Explicit {
            l: text(&args.subgroups.l),
            h: text(&args.subgroups.h),
            k: text(&args.subgroups.k),
        };
    }
    if let Some(c) = &args.convention {
        config.convention = c.parse()?;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(n) = args.samples {
        config.samples = n;
    }
    config.include_timing |= args.timing;
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let reports = verify::run_suite_with(&config, exec)?;
    let summary = summarize(&reports);
    eprintln!(
        "{} cases: {} claims passed, {} failed, {} recorded",
        summary.cases, summary.passed, summary.failed, summary.recorded
    );
    args.output.write(&emit(Entity::Report(&reports), args.output.format()?)?)?;
    Ok(if exit_code(&reports) == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn matrix(args: MatrixArgs) -> Result<ExitCode> {
    let group = load_group(&args.group)?;
    let kind: OperatorKind = args.op.parse()?;
    let sub = |s: &Option<String>| s.as_deref().map(|t| parse_subgroup(&group, t)).transpose();
    let spec = OperatorSpec {
        kind,
        l: sub(&args.subgroups.l)?,
        h: sub(&args.subgroups.h)?,
        k: sub(&args.subgroups.k)?,
        convention: args.convention.parse::<HaarConvention>()?,
    };
    let m = operator_matrix(&group, &spec, Execution::Parallel)?;
    args.output.write(&emit(Entity::Operator(&m), args.output.format()?)?)?;
    Ok(ExitCode::SUCCESS)
}

fn example(args: ExampleArgs) -> Result<ExitCode> {
    if args.radii == 0 || args.angles == 0 {
        bail!("grid must have at least one radius and one angle");
    }
    let report = verify_example(&standard_grid(args.radii, args.angles), args.tolerance, Execution::Parallel)?;
    eprintln!(
        "{} samples, max deviation {:e}, max invariance deviation {:e}, {} support violations",
        report.samples, report.max_deviation, report.max_invariance_deviation, report.support_violations
    );
    args.output.write(&emit(Entity::Example(&report), args.output.format()?)?)?;
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn groups(args: GroupsArgs) -> Result<ExitCode> {
    let describe = |g: &FiniteGroup, detailed: bool| {
        let subgroups = g.subgroups();
        let mut v = serde_json::json!({
            "name": g.name(),
            "order": g.order(),
            "abelian": g.is_abelian(),
            "subgroups": subgroups.len(),
        });
        if detailed {
            v["elements"] = g.elements().map(|x| g.label(x)).collect();
            v["subgroups"] = subgroups.iter().map(|s| serde_json::json!(s.elements())).collect();
        }
        v
    };
    let value = match &args.group {
        Some(name) => describe(&load_group(name)?, true),
        None => {
            let corpus = verify::default_corpus()
                .with_context(|| format!("loading the corpus (override with {CORPUS_ENV})"))?;
            corpus.iter().map(|g| describe(g, false)).collect()
        }
    };
    print!("{}", canonical_json(&value)?);
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Matrix(a) => matrix(a),
        Command::Example(a) => example(a),
        Command::Groups(a) => groups(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
