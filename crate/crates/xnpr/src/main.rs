//! Command-line surface: exponents, intersection matrices, Klein-form
//! families and the self-verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification (or cross-check) fails,
//! 2 on invalid arguments. JSON output is deterministic: identical inputs
//! produce byte-identical bytes.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use xnpr::arith::{is_prime, upow, Rat};
use xnpr::error::Error;
use xnpr::linalg::Mat;
use xnpr::{invariants, klein, verify, xcurve};

#[derive(Parser)]
#[command(
    name = "xnpr",
    version,
    about = "Exact exponent annihilating the quotient of the two integral structures on modular forms for X(Np^r)",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the annihilating exponent e = 2k·p^(r-1)·(pr-r+1) with upper
    /// and lower bounds and the per-component table.
    Exponent(ExponentArgs),
    /// Print the intersection matrix M, its truncation T, or the
    /// closed-form inverse of T.
    Matrix(MatrixArgs),
    /// Klein-form families: certificates, cusp orders, q-expansions,
    /// valuations and exhaustive search.
    #[command(subcommand)]
    Klein(KleinCommand),
    /// Run the self-verification suites against independent oracles.
    Verify(VerifyArgs),
}

/// Output format shared by all subcommands.
#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable tables.
    Text,
    /// Deterministic single-line JSON.
    Json,
    /// Comma-separated values (matrix output only).
    Csv,
}

#[derive(Args)]
struct ExponentArgs {
    /// Prime p of the wild part of the level.
    #[arg(long)]
    p: u64,
    /// Exponent r >= 1: the wild level is p^r.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Tame level N >= 3, coprime to p.
    #[arg(long = "N")]
    n: u64,
    /// Half the weight: forms are sections of omega^(2k).
    #[arg(long, default_value_t = 1)]
    k: u64,
    /// Highlight the cusp-form bound in the text summary.
    #[arg(long = "cusp-forms")]
    cusp_forms: bool,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct MatrixArgs {
    /// Prime p of the wild part of the level.
    #[arg(long)]
    p: u64,
    /// Exponent r >= 1: the wild level is p^r.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Which matrix to print.
    #[arg(long, value_enum)]
    which: Which,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Matrix selector for the `matrix` subcommand.
#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Which {
    /// The full intersection matrix, deg S(N)-normalized.
    #[value(name = "M", alias = "m")]
    M,
    /// M with the row and column of the component A(0) removed.
    #[value(name = "T", alias = "t")]
    T,
    /// The exact inverse of T from the closed-form entries.
    #[value(name = "Tinv", alias = "tinv")]
    Tinv,
}

impl Which {
    fn label(self) -> &'static str {
        match self {
            Which::M => "M",
            Which::T => "T",
            Which::Tinv => "Tinv",
        }
    }
}

#[derive(Subcommand)]
enum KleinCommand {
    /// Check the quadratic congruence and holomorphy at every cusp.
    Check(FamilyArgs),
    /// Orders of vanishing at every cusp class of level p^r.
    Order(FamilyArgs),
    /// q-expansion of the product at the cusp infinity.
    Qexp(QexpArgs),
    /// Valuation of the expansion at the cusp 0, along both paths.
    Valuation(FamilyArgs),
    /// Exhaustive search for weight-2 families at level p^r.
    Search(SearchArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// Prime p: the family lives at level p^r.
    #[arg(long)]
    p: u64,
    /// Exponent r >= 1.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Coefficient table "t:m,t:m,..." (default: the standard family).
    #[arg(long)]
    family: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct QexpArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Number of q-power coefficients to print.
    #[arg(long, default_value_t = 50)]
    trunc: usize,
}

#[derive(Args)]
struct SearchArgs {
    /// Prime p: search at level p^r.
    #[arg(long)]
    p: u64,
    /// Exponent r >= 1.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Largest allowed support size (at most 4).
    #[arg(long = "max-support", default_value_t = 3)]
    max_support: usize,
    /// Largest allowed |m(t)| (at most 6).
    #[arg(long = "max-abs-coeff", default_value_t = 4)]
    max_abs_coeff: i64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run: all, arith, linalg, xcurve or klein.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn run(command: Command) -> Result<i32, Error> {
    match command {
        Command::Exponent(args) => cmd_exponent(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Klein(KleinCommand::Check(args)) => cmd_klein_check(args),
        Command::Klein(KleinCommand::Order(args)) => cmd_klein_order(args),
        Command::Klein(KleinCommand::Qexp(args)) => cmd_klein_qexp(args),
        Command::Klein(KleinCommand::Valuation(args)) => cmd_klein_valuation(args),
        Command::Klein(KleinCommand::Search(args)) => cmd_klein_search(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

/// Rejects `--format csv` for non-matrix output.
fn no_csv(format: Format) -> Result<(), Error> {
    if format == Format::Csv {
        return Err(Error::InvalidParams(
            "csv output is only available for matrix values".into(),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// exponent
// ---------------------------------------------------------------------------

fn cmd_exponent(args: ExponentArgs) -> Result<i32, Error> {
    no_csv(args.format)?;
    let report = invariants::exponent_exact(args.p, args.r, args.n, args.k)?;
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&report).expect("report serialization is infallible")
        ),
        _ => {
            println!(
                "exponent for p = {}, r = {}, N = {}, k = {}",
                report.p, report.r, report.level_n, report.k
            );
            println!("  upper bound  {}", report.upper);
            match report.lower {
                Some(lower) => println!("  lower bound  {lower}"),
                None => println!("  lower bound  unavailable"),
            }
            match report.exact {
                Some(exact) => println!("  exact        {exact}"),
                None => println!("  exact        undetermined"),
            }
            if let Some(note) = &report.note {
                println!("  note: {note}");
            }
            println!("per-component upper bounds");
            for entry in &report.per_component {
                println!("  {:<8} {}", entry.label.to_string(), entry.bound);
            }
            println!("comparison bounds");
            let marker = if args.cusp_forms {
                "  <- requested"
            } else {
                ""
            };
            println!(
                "  cusp forms       {}{marker}",
                report.cusp_form_upper
            );
            println!("  Edixhoven-style  {}", report.edixhoven_bound);
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// matrix
// ---------------------------------------------------------------------------

const TINV_NOTE: &str = "entries invert the deg S(N)-normalized T; divide by deg S(N) \
                         to invert the un-normalized intersection matrix";

fn cmd_matrix(args: MatrixArgs) -> Result<i32, Error> {
    let matrix = match args.which {
        Which::M => xcurve::build_m(args.p, args.r)?,
        Which::T => xcurve::build_t(args.p, args.r)?,
        Which::Tinv => xcurve::tinv_closed_matrix(args.p, args.r)?,
    };
    match args.format {
        Format::Csv => print!("{}", matrix.to_csv()),
        Format::Json => {
            let rows: Vec<Vec<Rat>> = (0..matrix.rows())
                .map(|i| (0..matrix.cols()).map(|j| matrix.get(i, j).clone()).collect())
                .collect();
            let mut value = json!({
                "p": args.p,
                "r": args.r,
                "which": args.which.label(),
                "matrix": rows,
            });
            if args.which == Which::Tinv {
                value["note"] = json!(TINV_NOTE);
            }
            println!("{value}");
        }
        Format::Text => {
            println!(
                "matrix {} for p = {}, r = {} ({} x {}, deg S(N)-normalized)",
                args.which.label(),
                args.p,
                args.r,
                matrix.rows(),
                matrix.cols()
            );
            if args.which == Which::Tinv {
                println!("note: {TINV_NOTE}");
            }
            print!("{}", render_matrix(&matrix));
        }
    }
    Ok(0)
}

/// Column-aligned plain-text rendering.
fn render_matrix(m: &Mat) -> String {
    let mut widths = vec![0usize; m.cols()];
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let s = m.get(i, j).to_string();
                    widths[j] = widths[j].max(s.len());
                    s
                })
                .collect()
        })
        .collect();
    let mut out = String::new();
    for row in &cells {
        out.push('[');
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            out.push_str(&" ".repeat(widths[j] - cell.len()));
            out.push_str(cell);
        }
        out.push_str("]\n");
    }
    out
}

// ---------------------------------------------------------------------------
// klein
// ---------------------------------------------------------------------------

/// Builds the working family: explicit coefficients at level p^r when
/// `--family` is given, the standard family otherwise.
fn resolve_family(p: u64, r: u32, family: &Option<String>) -> Result<klein::KleinFamily, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParams("r must be >= 1".into()));
    }
    match family {
        Some(text) => {
            let pairs = klein::KleinFamily::parse_pairs(text)?;
            klein::KleinFamily::new(upow(p, r), pairs)
        }
        None => klein::standard_family(p, r),
    }
}

fn cmd_klein_check(args: FamilyArgs) -> Result<i32, Error> {
    no_csv(args.format)?;
    let fam = resolve_family(args.p, args.r, &args.family)?;
    let congruence = klein::check_congruence(&fam);
    let holomorphic = klein::is_holomorphic(&fam);
    match args.format {
        Format::Json => println!(
            "{}",
            json!({
                "n": fam.n(),
                "family": fam.to_string(),
                "weight": fam.weight(),
                "congruence": congruence,
                "holomorphic": holomorphic,
            })
        ),
        _ => {
            println!("family {} at level {}", fam, fam.n());
            println!("  weight       {}", fam.weight());
            println!("  congruence   {}", if congruence { "holds" } else { "FAILS" });
            println!(
                "  holomorphic  {}",
                if holomorphic { "yes" } else { "no (pole at some cusp)" }
            );
        }
    }
    Ok(0)
}

fn cmd_klein_order(args: FamilyArgs) -> Result<i32, Error> {
    no_csv(args.format)?;
    let fam = resolve_family(args.p, args.r, &args.family)?;
    let classes = klein::cusp_classes(fam.n());
    match args.format {
        Format::Json => {
            let orders: Vec<_> = classes
                .iter()
                .map(|c| json!({"g": c.g, "a": c.a, "order": klein::cusp_order(&fam, c)}))
                .collect();
            println!(
                "{}",
                json!({"n": fam.n(), "family": fam.to_string(), "orders": orders})
            );
        }
        _ => {
            println!("cusp orders for family {} at level {}", fam, fam.n());
            println!("  (g, a)    order");
            for c in &classes {
                println!("  ({}, {})    {}", c.g, c.a, klein::cusp_order(&fam, c));
            }
        }
    }
    Ok(0)
}

fn cmd_klein_qexp(args: QexpArgs) -> Result<i32, Error> {
    no_csv(args.family.format)?;
    let fam = resolve_family(args.family.p, args.family.r, &args.family.family)?;
    let series = klein::qexp_infinity(&fam, args.trunc)?;
    match args.family.format {
        Format::Json => println!(
            "{}",
            json!({
                "n": fam.n(),
                "family": fam.to_string(),
                "trunc": args.trunc,
                "series": series,
            })
        ),
        _ => {
            println!(
                "q-expansion at infinity for family {} at level {}",
                fam,
                fam.n()
            );
            println!("  {series}");
        }
    }
    Ok(0)
}

fn cmd_klein_valuation(args: FamilyArgs) -> Result<i32, Error> {
    no_csv(args.format)?;
    let fam = resolve_family(args.p, args.r, &args.family)?;
    let direct = klein::valuation_at_zero(&fam)?;
    let via_pi = klein::valuation_at_zero_via_pi(&fam)?;
    let agree = direct == via_pi;
    match args.format {
        Format::Json => println!(
            "{}",
            json!({
                "n": fam.n(),
                "family": fam.to_string(),
                "valuationAtZero": direct,
                "viaPi": via_pi,
                "agree": agree,
            })
        ),
        _ => {
            println!(
                "valuation at 0 for family {} at level {}",
                fam,
                fam.n()
            );
            println!("  closed formula    {direct}");
            println!("  pi-adic expansion {via_pi}");
            if !agree {
                println!(
                    "  MISMATCH: the pi-adic value {via_pi} is authoritative; \
                     the closed formula disagrees"
                );
            }
        }
    }
    // A disagreement between the two computation paths is a verification
    // failure: the pi-adic path is authoritative.
    Ok(if agree { 0 } else { 1 })
}

fn cmd_klein_search(args: SearchArgs) -> Result<i32, Error> {
    no_csv(args.format)?;
    if !is_prime(args.p) {
        return Err(Error::NotPrime(args.p));
    }
    if args.r == 0 {
        return Err(Error::InvalidParams("r must be >= 1".into()));
    }
    let n = upow(args.p, args.r);
    let hits = klein::search_families(n, args.max_support, args.max_abs_coeff)?;
    let mut rows = Vec::with_capacity(hits.len());
    for fam in &hits {
        rows.push((fam.to_string(), klein::valuation_at_zero(fam)?));
    }
    match args.format {
        Format::Json => {
            let families: Vec<_> = rows
                .iter()
                .map(|(family, v)| json!({"family": family, "valuationAtZero": v}))
                .collect();
            println!(
                "{}",
                json!({
                    "n": n,
                    "maxSupport": args.max_support,
                    "maxAbsCoeff": args.max_abs_coeff,
                    "count": rows.len(),
                    "families": families,
                })
            );
        }
        _ => {
            println!(
                "weight-2 families at level {n} (support <= {}, |m| <= {})",
                args.max_support, args.max_abs_coeff
            );
            println!("  {} families found; valuation at 0 ascending", rows.len());
            for (family, v) in &rows {
                println!("  {v:>6}  {family}");
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<i32, Error> {
    no_csv(args.format)?;
    let reports = verify::run_suite(&args.suite)?;
    let passed = verify::all_passed(&reports);
    match args.format {
        Format::Json => println!(
            "{}",
            json!({"passed": passed, "suites": reports})
        ),
        _ => {
            for suite in &reports {
                println!("suite {}", suite.suite);
                for check in &suite.checks {
                    println!(
                        "  [{}] {} ({} ms) - {}",
                        if check.passed { "PASS" } else { "FAIL" },
                        check.name,
                        check.millis,
                        check.detail
                    );
                }
            }
            let total: usize = reports.iter().map(|s| s.checks.len()).sum();
            let plural = |n: usize, word: &str| {
                if n == 1 { format!("{n} {word}") } else { format!("{n} {word}s") }
            };
            println!(
                "result: {} ({} in {})",
                if passed { "PASS" } else { "FAIL" },
                plural(total, "check"),
                plural(reports.len(), "suite")
            );
        }
    }
    Ok(if passed { 0 } else { 1 })
}
