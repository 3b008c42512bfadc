//! `ecom`: analyze `E_com(G)` for finite groups from the command line.

mod source;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use ecom_core::analysis::HomotopyReport;
use ecom_core::complex::DEFAULT_SIMPLEX_LIMIT;
use ecom_core::export::{boundary_triples, catalog_json, ComplexFile, PosetFile};
use ecom_core::group::DEFAULT_ORDER_LIMIT;
use ecom_core::poset::DEFAULT_POSET_NODE_LIMIT;
use ecom_core::todd_coxeter::DEFAULT_MAX_COSETS;
use ecom_core::{analyze, order_complex, Error, Limits};

use source::{realize_all, Source};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Parse(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 2,
            CliError::Core(e) if e.is_resource_limit() || *e == Error::IntegerOverflow => 3,
            CliError::Core(Error::Internal(_) | Error::Disconnected(_) | Error::HeightTooLarge(_)) => 4,
            CliError::Core(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(m) | CliError::Parse(m) => f.write_str(m),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ecom", version, about = "Homotopy type of E_com(G) for finite groups")]
struct Cli {
    #[command(flatten)]
    limits: LimitArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Largest group order accepted from any source.
    #[arg(long, global = true, env = "ECOM_MAX_ORDER", default_value_t = DEFAULT_ORDER_LIMIT)]
    max_order: usize,
    /// Coset-table size at which enumeration gives up.
    #[arg(long, global = true, env = "ECOM_MAX_COSETS", default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    #[arg(long, global = true, env = "ECOM_MAX_POSET_NODES", default_value_t = DEFAULT_POSET_NODE_LIMIT)]
    max_poset_nodes: usize,
    #[arg(long, global = true, env = "ECOM_MAX_SIMPLICES", default_value_t = DEFAULT_SIMPLEX_LIMIT)]
    max_simplices: usize,
    /// Wall-clock budget, checked between pipeline stages. Unlimited by default.
    #[arg(long, global = true, env = "ECOM_TIME_LIMIT_MS")]
    time_limit_ms: Option<u64>,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_order: self.max_order,
            max_cosets: self.max_cosets,
            max_poset_nodes: self.max_poset_nodes,
            max_simplices: self.max_simplices,
            max_millis: self.time_limit_ms,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full pipeline on one group and print its report.
    Analyze(AnalyzeArgs),
    /// Recompute the published finite examples and compare circle counts.
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
    /// Write the poset, order complex or boundary matrices of a group.
    Export(ExportArgs),
    /// Print the catalog of named groups as JSON.
    Catalog,
}

#[derive(Args, Debug)]
struct SourceArgs {
    /// Named group: Q,n  D,m,n  P48  P120  Pprime[,m]  Zn  V4  E8  S3  S4  A4  D8.
    #[arg(long, value_name = "NAME[,PARAMS]")]
    catalog: Vec<String>,
    /// Presentation such as "< x,y | x^2 = (x*y)^3 = y^4, x^4 >".
    #[arg(long, value_name = "TEXT")]
    presentation: Vec<String>,
    /// Multiplication table as a JSON array of arrays.
    #[arg(long, value_name = "FILE")]
    table: Vec<PathBuf>,
    /// Permutation generators in cycle notation on 0-based points, separated by `;`.
    #[arg(long, value_name = "CYCLES;CYCLES")]
    perm: Vec<String>,
    /// Take the direct product of all given sources, in command-line order.
    #[arg(long)]
    product: bool,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Classify a poset previously written by `export --what poset`.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["catalog", "presentation", "table", "perm", "product"])]
    poset: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    /// Include per-stage wall-clock times (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    Poset,
    Complex,
    Boundaries,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum)]
    what: What,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

/// Sources in the order they appeared on the command line.
fn ordered_sources(m: &ArgMatches, product: bool) -> Result<Vec<Source>, CliError> {
    let mut tagged: Vec<(usize, Source)> = Vec::new();
    let mut collect = |id: &str, make: &dyn Fn(&str) -> Source| {
        if let (Some(idx), Some(vals)) = (m.indices_of(id), m.get_raw(id)) {
            for (i, v) in idx.zip(vals) {
                tagged.push((i, make(&v.to_string_lossy())));
            }
        }
    };
    collect("catalog", &|v| Source::Catalog(v.into()));
    collect("presentation", &|v| Source::Presentation(v.into()));
    collect("table", &|v| Source::Table(v.into()));
    collect("perm", &|v| Source::Perm(v.into()));
    tagged.sort_by_key(|(i, _)| *i);
    match tagged.len() {
        0 => Err(CliError::Parse("give a group with --catalog, --presentation, --table or --perm".into())),
        1 => Ok(tagged.into_iter().map(|(_, s)| s).collect()),
        _ if product => Ok(tagged.into_iter().map(|(_, s)| s).collect()),
        n => Err(CliError::Parse(format!("{n} group sources given; add --product to multiply them"))),
    }
}

fn print_report(report: &HomotopyReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("reports serialize"));
    } else {
        print!("{report}");
    }
}

fn run(cli: Cli, matches: &ArgMatches) -> Result<ExitCode, CliError> {
    let limits = cli.limits.limits();
    let sub = matches.subcommand().map(|(_, m)| m);
    match cli.command {
        Command::Analyze(args) => {
            let report = match &args.poset {
                Some(path) => PosetFile::from_json(&source::read(path)?)?.analyze(&limits)?,
                None => {
                    let sources = ordered_sources(sub.expect("analyze has matches"), args.source.product)?;
                    let (group, label) = realize_all(&sources, &limits)?;
                    analyze(&group, &label, &limits)?
                }
            };
            let report = if args.timing { report } else { report.without_timings() };
            print_report(&report, args.json);
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper { json } => {
            let summary = verify::run(&limits);
            if json {
                println!("{}", serde_json::to_string_pretty(&summary).expect("summaries serialize"));
            } else {
                print!("{}", verify::render(&summary));
            }
            for r in summary.rows.iter().filter(|r| !r.matches) {
                eprintln!("mismatch: {} expected {} circles, computed {:?}", r.target, r.expected_circles, r.circles);
            }
            Ok(if summary.all_match { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Export(args) => {
            let sources = ordered_sources(sub.expect("export has matches"), args.source.product)?;
            let (group, label) = realize_all(&sources, &limits)?;
            let text = match args.what {
                What::Poset => PosetFile::from_group(&group, &label, limits.max_poset_nodes)?.to_json(),
                What::Complex | What::Boundaries => {
                    let poset = PosetFile::from_group(&group, &label, limits.max_poset_nodes)?.poset()?;
                    let k = order_complex(&poset, limits.max_simplices)?;
                    match args.what {
                        What::Complex => ComplexFile::new(&k).to_json(),
                        _ => boundary_triples(&k),
                    }
                }
            };
            fs::write(&args.out, text).map_err(|e| CliError::Io(format!("{}: {e}", args.out.display())))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog => {
            println!("{}", catalog_json()?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    // A panic is a broken invariant, reported like any other internal error.
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli, &matches))) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(4),
    }
}
