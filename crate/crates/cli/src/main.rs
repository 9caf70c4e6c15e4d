//! Command-line front end: compute ψ, evaluate bounds, enumerate orders,
//! run verification suites, emit reports.
//!
//! Exit codes: 0 success/pass, 1 verification failure, 2 usage or parse
//! error, 3 resource cap exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ordersum::arith::{self, ExactRatio};
use ordersum::bounds::{self, BoundFunction, Prop22Verdict};
use ordersum::catalog::{self, CatalogError, GroupDescriptor};
use ordersum::groups::{self, GroupError};
use ordersum::harness::{self, HarnessError};

#[derive(Parser)]
#[command(name = "ordersum", version, about = "Exact element-order sums over finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print ψ(G) for a descriptor or a permutation-generator file.
    Psi {
        /// Group descriptor, e.g. C21, C7:C3@2, Q8, A1@m1=5
        descriptor: Option<String>,
        /// Text file with one generator per line in cycle notation
        #[arg(long, value_name = "PATH", conflicts_with = "descriptor")]
        perm_file: Option<PathBuf>,
    },
    /// Print the exact reduced ratio ψ(G)/ψ(C_|G|) with a decimal hint.
    Ratio { descriptor: String },
    /// Evaluate the bound functions and their ordering checks.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
    /// List the isomorphism classes of one odd order.
    Enumerate {
        n: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        cache: Option<PathBuf>,
    },
    /// Classes of one order sorted by ψ descending.
    Scan {
        n: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        cache: Option<PathBuf>,
    },
    /// Run a verification suite: T1, T9, TA, CB, CC, or BG.
    Verify {
        /// Theorem id: T1, T9, TA, CB, CC, BG
        id: String,
        #[arg(long, default_value_t = 2025)]
        max_n: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        cache: Option<PathBuf>,
        /// Worker count for per-order verification tasks
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// f(x) = (x⁴+x³−x²+1)/(x⁵+1) at an integer point x ≥ 2.
    F { x: u64 },
    /// g_q(x) at an integer point, for an odd prime q.
    G { q: u64, x: u64 },
    /// Smallest prime strictly greater than q.
    NextPrime { q: u64 },
    /// Smallest prime ≡ 1 (mod q).
    #[command(name = "prime-1mod")]
    Prime1Mod { q: u64 },
    /// Compare g_q(q1) with f(p) for one prime, or for all odd primes up
    /// to a limit.
    Prop22 {
        q: Option<u64>,
        #[arg(long)]
        max_q: Option<u64>,
    },
    /// Verify strict decrease of f or g_q on consecutive integers in
    /// [lo, hi].
    Monotone {
        /// Which function: "f" or "g"
        function: String,
        lo: u64,
        hi: u64,
        /// Required when function = g
        #[arg(long)]
        q: Option<u64>,
    },
    /// Prime context for q: the next prime p, q1 ≡ 1 (mod q), and the
    /// ordering of g_q(q1) against f(p).
    Context { q: u64 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 2 }
    }

    fn cap(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 3 }
    }
}

fn group_error(err: GroupError) -> CliError {
    match err {
        GroupError::CapExceeded { .. } => CliError::cap(err.to_string()),
        other => CliError::usage(other.to_string()),
    }
}

fn catalog_error(err: CatalogError) -> CliError {
    match err {
        CatalogError::Group(inner) => group_error(inner),
        CatalogError::UnsupportedOrder(n) if n > catalog::MAX_ENUM_ORDER => {
            CliError::cap(CatalogError::UnsupportedOrder(n).to_string())
        }
        other => CliError::usage(other.to_string()),
    }
}

fn harness_error(err: HarnessError) -> CliError {
    match err {
        HarnessError::Catalog(inner) => catalog_error(inner),
        HarnessError::Group(inner) => group_error(inner),
        other => CliError::usage(other.to_string()),
    }
}

fn parse_descriptor(text: &str) -> Result<GroupDescriptor, CliError> {
    text.parse::<GroupDescriptor>().map_err(catalog_error)
}

fn emit(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_cache(path: &Option<PathBuf>) -> Result<(), CliError> {
    if let Some(path) = path {
        if path.exists() {
            harness::load_cache_file(path).map_err(harness_error)?;
        }
    }
    Ok(())
}

fn save_cache(path: &Option<PathBuf>) -> Result<(), CliError> {
    if let Some(path) = path {
        harness::save_cache_file(path).map_err(harness_error)?;
    }
    Ok(())
}

fn ratio_with_decimal(ratio: &ExactRatio) -> String {
    format!("{} ({})", ratio, ratio.to_decimal(6))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Psi { descriptor, perm_file } => {
            let group = match (descriptor, perm_file) {
                (Some(text), None) => {
                    catalog::build(&parse_descriptor(&text)?).map_err(catalog_error)?
                }
                (None, Some(path)) => build_from_perm_file(&path)?,
                _ => return Err(CliError::usage("pass a descriptor or --perm-file")),
            };
            println!("{}", group.psi());
            Ok(ExitCode::SUCCESS)
        }
        Command::Ratio { descriptor } => {
            let parsed = parse_descriptor(&descriptor)?;
            let group = catalog::build(&parsed).map_err(catalog_error)?;
            let ratio = arith::psi_ratio(group.psi(), group.order() as u64)
                .map_err(|e| CliError::usage(e.to_string()))?;
            println!("{}", ratio_with_decimal(&ratio));
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { which } => run_bounds(which),
        Command::Enumerate { n, format, out, cache } => {
            if n % 2 == 0 {
                return Err(CliError::usage(format!("order {n} is even; enumeration covers odd orders")));
            }
            load_cache(&cache)?;
            let summary = harness::order_summary(n).map_err(harness_error)?;
            let rows: Vec<(String, u64)> =
                summary.classes.iter().map(|c| (c.descriptor.clone(), c.psi)).collect();
            let content = render_class_table(n, &summary.tier.to_string(), &rows, format)?;
            emit(&out, &content)?;
            save_cache(&cache)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan { n, format, out, cache } => {
            if n % 2 == 0 {
                return Err(CliError::usage(format!("order {n} is even; enumeration covers odd orders")));
            }
            load_cache(&cache)?;
            let (tier, scan) = harness::scan_extremal(n).map_err(harness_error)?;
            let rows: Vec<(String, u64)> =
                scan.iter().map(|r| (r.descriptor.clone(), r.psi)).collect();
            let content = render_class_table(n, &tier.to_string(), &rows, format)?;
            emit(&out, &content)?;
            save_cache(&cache)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { id, max_n, format, out, cache, jobs } => {
            load_cache(&cache)?;
            let report = harness::verify_by_id(&id, max_n, jobs).map_err(harness_error)?;
            let content = match format {
                Format::Plain => harness::report_to_plain(&report),
                Format::Csv => harness::report_to_csv(&report),
                Format::Json => harness::report_to_json(&report),
            };
            emit(&out, &content)?;
            save_cache(&cache)?;
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn build_from_perm_file(path: &Path) -> Result<groups::FiniteGroup, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let domain = groups::cycle_notation_domain(&lines).max(1);
    let mut generators = Vec::with_capacity(lines.len());
    for line in &lines {
        generators.push(groups::parse_cycle_notation(line, domain).map_err(group_error)?);
    }
    groups::from_permutations(&generators).map_err(group_error)
}

fn render_class_table(
    n: u64,
    tier: &str,
    rows: &[(String, u64)],
    format: Format,
) -> Result<String, CliError> {
    let ratio_of = |psi: u64| -> Result<ExactRatio, CliError> {
        arith::psi_ratio(psi, n).map_err(|e| CliError::usage(e.to_string()))
    };
    Ok(match format {
        Format::Plain => {
            let mut out = format!("n={n} tier={tier} classes={}\n", rows.len());
            for (descriptor, psi) in rows {
                let ratio = ratio_of(*psi)?;
                out.push_str(&format!(
                    "{descriptor:<28} psi={psi:<10} ratio={} ({})\n",
                    ratio,
                    ratio.to_decimal(6)
                ));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("n,tier,descriptor,psi,ratio_num,ratio_den\n");
            for (descriptor, psi) in rows {
                let ratio = ratio_of(*psi)?;
                out.push_str(&format!(
                    "{n},{tier},{descriptor},{psi},{},{}\n",
                    ratio.numerator(),
                    ratio.denominator()
                ));
            }
            out
        }
        Format::Json => {
            let mut classes = Vec::with_capacity(rows.len());
            for (descriptor, psi) in rows {
                let ratio = ratio_of(*psi)?;
                classes.push(serde_json::json!({
                    "descriptor": descriptor,
                    "psi": psi,
                    "ratio_num": ratio.numerator().to_string(),
                    "ratio_den": ratio.denominator().to_string(),
                }));
            }
            let value = serde_json::json!({
                "n": n,
                "tier": tier,
                "classes": classes,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
        }
    })
}

fn run_bounds(command: BoundsCommand) -> Result<ExitCode, CliError> {
    let bounds_err = |e: bounds::BoundsError| CliError::usage(e.to_string());
    match command {
        BoundsCommand::F { x } => {
            println!("{}", ratio_with_decimal(&bounds::f_int(x).map_err(bounds_err)?));
            Ok(ExitCode::SUCCESS)
        }
        BoundsCommand::G { q, x } => {
            println!("{}", ratio_with_decimal(&bounds::g_int(q, x).map_err(bounds_err)?));
            Ok(ExitCode::SUCCESS)
        }
        BoundsCommand::NextPrime { q } => {
            println!("{}", bounds::smallest_prime_greater(q));
            Ok(ExitCode::SUCCESS)
        }
        BoundsCommand::Prime1Mod { q } => {
            println!("{}", bounds::smallest_prime_1_mod(q).map_err(bounds_err)?);
            Ok(ExitCode::SUCCESS)
        }
        BoundsCommand::Prop22 { q, max_q } => match (q, max_q) {
            (Some(q), None) => {
                let outcome = bounds::check_prop22(q).map_err(bounds_err)?;
                let (symbol, word) = match outcome.verdict {
                    Prop22Verdict::Greater => (">", "GREATER"),
                    Prop22Verdict::Less => ("<", "LESS"),
                };
                println!(
                    "{word}: g_{}({}) = {} {symbol} f({}) = {}",
                    q, outcome.q1, outcome.g_at_q1, outcome.p, outcome.f_at_p
                );
                Ok(ExitCode::SUCCESS)
            }
            (None, Some(limit)) => {
                let mut checked = 0u64;
                for prime in arith::primes_up_to(limit).into_iter().filter(|&p| p >= 3) {
                    bounds::check_prop22(prime).map_err(bounds_err)?;
                    checked += 1;
                }
                println!("prop22 ordering holds for all {checked} odd primes q ≤ {limit}");
                Ok(ExitCode::SUCCESS)
            }
            _ => Err(CliError::usage("pass a prime q or --max-q, not both")),
        },
        BoundsCommand::Monotone { function, lo, hi, q } => {
            let func = match (function.as_str(), q) {
                ("f", None) => BoundFunction::F,
                ("g", Some(q)) => BoundFunction::G { q },
                ("g", None) => return Err(CliError::usage("g needs --q")),
                _ => return Err(CliError::usage("function must be f or g")),
            };
            let holds = bounds::check_monotone(&func, lo, hi).map_err(bounds_err)?;
            println!("{holds}");
            Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        BoundsCommand::Context { q } => {
            let ctx = bounds::BoundContext::for_prime(q).map_err(bounds_err)?;
            let outcome = bounds::check_prop22(q).map_err(bounds_err)?;
            let relation = match outcome.verdict {
                Prop22Verdict::Greater => "g_q(q1) > f(p)",
                Prop22Verdict::Less => "g_q(q1) < f(p)",
            };
            println!("q={} p={} q1={} {relation}", ctx.q, ctx.p, ctx.q1);
            Ok(ExitCode::SUCCESS)
        }
    }
}
