//! `duadic`: construct and verify duadic codes over GF(q^2) with Hermitian
//! self-dual extensions, classify admissible lengths, and run the counting
//! censuses.
//!
//! Exit codes: 0 success (or: splittings found), 1 success but nothing found,
//! 2 invalid input, 3 internal assertion failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use duadic_codes::census::{
    self, CensusKind, ConstantEstimate, CountMode, DomainMode, SeriesPoint,
};
use duadic_codes::duadic::{
    check_duadic_equivalences, duadic_from_splitting, extend_odd_like, find_splittings,
    idempotent_identity_holds, is_hermitian_self_dual_extended, split_and_verify, table1,
};
use duadic_codes::error::Error;
use duadic_codes::gf::{build_gf_q2, solve_gamma};
use duadic_codes::lengths::{classify_range, LengthVerdict};
use duadic_codes::modarith::prime_power;
use duadic_codes::Exec;

#[derive(Parser)]
#[command(name = "duadic", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate splittings of n by mu_{-q} and verify the extended codes
    Split(SplitArgs),
    /// Emit the reference table of splittings over a grid of lengths
    Table1(TableArgs),
    /// Classify odd lengths up to a bound for one field size
    Classify(ClassifyArgs),
    /// Run a counting census (A, D, G, B, or prime-order)
    Census(CensusArgs),
    /// Estimate the growth constants G_a and J(D)
    Constants(ConstantsArgs),
    /// Re-derive and verify splittings, idempotent identities, and
    /// self-duality over a grid
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SplitArgs {
    /// odd length, coprime to q
    #[arg(long)]
    n: u64,
    /// prime power field parameter; codes live over GF(q^2)
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 5)]
    n_min: u64,
    #[arg(long, default_value_t = 45)]
    n_max: u64,
    /// field parameters to tabulate (repeatable)
    #[arg(long = "q")]
    q: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 45)]
    n_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CensusKindArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "D", alias = "d")]
    D,
    #[value(name = "G", alias = "g")]
    G,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "prime-order")]
    PrimeOrder,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// every integer (counting-function definition)
    All,
    /// odd n coprime to q (code-length semantics, kind A)
    Code,
    /// odd n only (kinds D and G)
    Odd,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, value_enum)]
    kind: CensusKindArg,
    /// field parameter as a prime power (kinds A and prime-order)
    #[arg(long)]
    q: Option<u64>,
    /// characteristic, combined with --t as q = p^t
    #[arg(long)]
    p: Option<u64>,
    /// extension exponent, combined with --p as q = p^t
    #[arg(long)]
    t: Option<u32>,
    /// square parameter (kinds D and G)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    /// negative form discriminant (kind B)
    #[arg(long = "D", alias = "d", allow_hyphen_values = true)]
    discriminant: Option<i64>,
    #[arg(long)]
    x: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    /// non-square integer; also treated as a discriminant when valid
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, default_value_t = 1_000_000)]
    prime_bound: u64,
    #[arg(long, default_value_t = 1_000_000)]
    series_terms: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    n_min: u64,
    #[arg(long, default_value_t = 45)]
    n_max: u64,
    #[arg(long = "q")]
    q: Vec<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) | Error::RootFieldTooLarge { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// Outputs are assembled fully before anything is written, so invalid input
/// never leaves a partial file behind.
fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| Error::Internal(e.to_string())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Split(args) => cmd_split(args),
        Command::Table1(args) => cmd_table1(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Census(args) => cmd_census(args),
        Command::Constants(args) => cmd_constants(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn cmd_split(args: SplitArgs) -> Result<ExitCode, Error> {
    prime_power(args.q)?;
    let report = split_and_verify(args.n, args.q)?;
    let body = match args.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text | Format::Csv => {
            let mut s = format!("n={} q={}\n", report.n, report.q);
            if report.splittings.is_empty() {
                s.push_str("no splittings by mu_-q\n");
            } else {
                for (reps, qr) in report.splittings.iter().zip(&report.qr_flags) {
                    let cosets: Vec<String> = reps.iter().map(|r| format!("C{r}")).collect();
                    let marker = if *qr { " (quadratic residue)" } else { "" };
                    s.push_str(&format!("S1 = {}{}\n", cosets.join("∪"), marker));
                }
                s.push_str(&format!(
                    "extended codes Hermitian self-dual: {}\n",
                    report.self_dual_verified
                ));
            }
            s
        }
    };
    emit(&args.out, &body)?;
    if !report.self_dual_verified {
        return Err(Error::Internal("self-duality verification failed".into()));
    }
    Ok(if report.splittings.is_empty() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_table1(args: TableArgs) -> Result<ExitCode, Error> {
    let q_list = if args.q.is_empty() { vec![3, 4, 5] } else { args.q.clone() };
    for &q in &q_list {
        prime_power(q)?;
    }
    let report = table1(args.n_min, args.n_max, &q_list, Exec::Parallel)?;
    let body = match args.format {
        Format::Text => report.render_text(),
        Format::Csv => report.render_csv(),
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
    };
    emit(&args.out, &body)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ClassifyReport {
    schema: u32,
    q: u64,
    n_max: u64,
    verdicts: Vec<LengthVerdict>,
}

fn cmd_classify(args: ClassifyArgs) -> Result<ExitCode, Error> {
    prime_power(args.q)?;
    let verdicts = classify_range(args.q, args.n_max, Exec::Parallel)?;
    let body = match args.format {
        Format::Csv | Format::Text => {
            let mut s =
                String::from("n,splits_by_mu_minus_q,duadic_exists,hsd_extended_exists,evidence\n");
            for v in &verdicts {
                let ev: Vec<String> = v
                    .evidence
                    .iter()
                    .map(|e| format!("r={} ord={} mod4={}", e.r, e.ord, e.ord_mod_4))
                    .collect();
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    v.n,
                    v.splits_by_mu_minus_q,
                    v.duadic_exists,
                    v.hsd_extended_exists,
                    ev.join("; ")
                ));
            }
            s
        }
        Format::Json => {
            let report =
                ClassifyReport { schema: 1, q: args.q, n_max: args.n_max, verdicts };
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
    };
    emit(&args.out, &body)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CensusReportFile {
    schema: u32,
    kind: String,
    x: u64,
    count: u64,
    normalized_ratio: f64,
    expected_density: Option<census::Rational>,
    series: Vec<SeriesPoint>,
}

fn resolve_q(args: &CensusArgs) -> Result<u64, Error> {
    match (args.q, args.p, args.t) {
        (Some(q), None, None) => {
            prime_power(q)?;
            Ok(q)
        }
        (None, Some(p), Some(t)) => {
            if !duadic_codes::modarith::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if t == 0 {
                return Err(Error::InvalidInput("exponent t must be positive".into()));
            }
            p.checked_pow(t)
                .ok_or_else(|| Error::InvalidInput("p^t overflows".into()))
        }
        (Some(q), Some(p), Some(t)) => {
            let from_parts = p
                .checked_pow(t)
                .ok_or_else(|| Error::InvalidInput("p^t overflows".into()))?;
            if q != from_parts {
                return Err(Error::InvalidInput(format!("q={q} but p^t={from_parts}")));
            }
            prime_power(q)?;
            Ok(q)
        }
        _ => Err(Error::InvalidInput(
            "this census kind needs --q, or --p together with --t".into(),
        )),
    }
}

fn cmd_census(args: CensusArgs) -> Result<ExitCode, Error> {
    let cache_dir = std::env::var_os("DUADIC_CACHE_DIR").map(PathBuf::from);
    let body = match args.kind {
        CensusKindArg::PrimeOrder => {
            let q = resolve_q(&args)?;
            let report = census::prime_order_census(q, args.x, Exec::Parallel)?;
            match args.format {
                Format::Csv | Format::Text => format!(
                    "q,x,matching,primes,empirical_density,expected_density\n{},{},{},{},{:.9},{}\n",
                    report.q,
                    report.x,
                    report.matching,
                    report.prime_count,
                    report.empirical_density,
                    report.expected_density
                ),
                Format::Json => {
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
            }
        }
        _ => {
            let kind = match args.kind {
                CensusKindArg::A => {
                    let q = resolve_q(&args)?;
                    let mode = match args.mode {
                        ModeArg::All => CountMode::PaperLiteral,
                        ModeArg::Code => CountMode::CodeLengths,
                        ModeArg::Odd => {
                            return Err(Error::InvalidInput(
                                "kind A takes --mode all or --mode code".into(),
                            ))
                        }
                    };
                    CensusKind::A { q, mode }
                }
                CensusKindArg::D | CensusKindArg::G => {
                    let a = args.a.ok_or_else(|| {
                        Error::InvalidInput("kinds D and G need --a".into())
                    })?;
                    let mode = match args.mode {
                        ModeArg::All => DomainMode::AllCoprime,
                        ModeArg::Odd => DomainMode::OddOnly,
                        ModeArg::Code => {
                            return Err(Error::InvalidInput(
                                "kinds D and G take --mode all or --mode odd".into(),
                            ))
                        }
                    };
                    if args.kind == CensusKindArg::D {
                        CensusKind::D { a, mode }
                    } else {
                        CensusKind::G { a, mode }
                    }
                }
                CensusKindArg::B => {
                    let d = args.discriminant.ok_or_else(|| {
                        Error::InvalidInput("kind B needs --D".into())
                    })?;
                    CensusKind::B { d }
                }
                CensusKindArg::PrimeOrder => unreachable!(),
            };
            let series = census::census_series(&kind, args.x, Exec::Parallel)?;
            let count = match &cache_dir {
                Some(dir) => {
                    census::count_with_checkpoint(&kind, args.x, Exec::Parallel, Some(dir))?
                }
                None => series.last().map_or(0, |p| p.count),
            };
            let expected_density = match &kind {
                CensusKind::A { q, .. } => Some(census::delta(*q)?),
                _ => None,
            };
            let report = CensusReportFile {
                schema: 1,
                kind: kind.key(),
                x: args.x,
                count,
                normalized_ratio: kind.ratio(args.x, count),
                expected_density,
                series,
            };
            match args.format {
                Format::Csv => census::series_csv(&report.series),
                Format::Text | Format::Json => {
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
            }
        }
    };
    emit(&args.out, &body)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ConstantsReport {
    schema: u32,
    a: i64,
    prime_bound: u64,
    series_terms: u64,
    g: ConstantEstimate,
    /// present when a is a valid negative discriminant
    j: Option<ConstantEstimate>,
    j_over_g_squared: Option<f64>,
}

fn cmd_constants(args: ConstantsArgs) -> Result<ExitCode, Error> {
    let g = census::g_constant(args.a, args.prime_bound, args.series_terms)?;
    let j = census::j_constant(args.a, args.prime_bound, args.series_terms).ok();
    let report = ConstantsReport {
        schema: 1,
        a: args.a,
        prime_bound: args.prime_bound,
        series_terms: args.series_terms,
        j_over_g_squared: j.as_ref().map(|j| (j.value / g.value).powi(2)),
        g,
        j,
    };
    let body = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    emit(&args.out, &body)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let q_list = if args.q.is_empty() { vec![3, 4, 5] } else { args.q.clone() };
    for &q in &q_list {
        prime_power(q)?;
    }
    let mut total = 0usize;
    for &q in &q_list {
        let field = build_gf_q2(q)?;
        for n in (args.n_min.max(3)..=args.n_max).step_by(2) {
            if duadic_codes::modarith::gcd(n, q) != 1 {
                continue;
            }
            let splittings = find_splittings(n, q, -(q as i64))?;
            if splittings.is_empty() {
                continue;
            }
            let gamma = solve_gamma(n, &field)?;
            for s in &splittings {
                let pair = duadic_from_splitting(s, &field)?;
                if !idempotent_identity_holds(&pair)? {
                    return Err(Error::Internal(format!(
                        "idempotent identity failed at n={n} q={q}"
                    )));
                }
                let report = check_duadic_equivalences(&pair)?;
                if !report.internally_consistent() {
                    return Err(Error::Internal(format!(
                        "equivalence families inconsistent at n={n} q={q}"
                    )));
                }
                for d in [&pair.d1, &pair.d2] {
                    let ext = extend_odd_like(d, &gamma)?;
                    if !is_hermitian_self_dual_extended(&ext) {
                        return Err(Error::Internal(format!(
                            "extension not self-dual at n={n} q={q}"
                        )));
                    }
                }
                total += 1;
            }
            println!("n={n} q={q}: {} splittings verified", splittings.len());
        }
    }
    println!("verified {total} duadic pairs: all extensions Hermitian self-dual");
    Ok(ExitCode::SUCCESS)
}
