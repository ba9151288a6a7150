//! `bpa`: exact counting sequences of barred preferential arrangements.
//! Compute them by any route, enumerate the arrangements, expand the
//! generating functions, and machine-check the identities relating them.
//!
//! All numeric output is exact decimal; rationals render as `p/q` in lowest
//! terms. Output is deterministic for fixed inputs (verification timings
//! excepted).

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bpa::counting::{
    j_closed_form, j_multinomial, j_recurrence, p_general_recurrence_thm6,
    p_general_recurrence_thm8, p_multinomial, p_via_lemma1, p_via_theorem4, p_via_theorem5,
    p_via_theorem7,
};
use bpa::egf::general_series;
use bpa::enumerate::{
    canonical_text, enumerate_barred_with_ceiling, enumerate_restricted_unbounded,
    enumerate_restricted_with_ceiling, BarredArrangement, DEFAULT_CEILING,
};
use bpa::exact::{power, render_rational, Count};
use bpa::verify::{
    check_identity, IdentityId, IdentitySpec, Ranges, Status, VerificationReport,
};
use bpa::RestrictionProfile;

#[derive(Parser)]
#[command(
    name = "bpa",
    version,
    about = "Exact counting, enumeration and identity verification for barred preferential arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print counting-sequence values over a range of n
    Count(CountArgs),
    /// List arrangements one per line, followed by a total line
    Enumerate(EnumerateArgs),
    /// Expand e^(r·m)/(2-e^m)^j: per degree, the exact coefficient and the
    /// n!-scaled integer value
    Series(SeriesArgs),
    /// Check identities over parameter ranges; nonzero exit on any
    /// non-informational FAIL
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    J,
    P,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    match s {
        "J" | "j" => Ok(Kind::J),
        "P" | "p" => Ok(Kind::P),
        other => Err(format!("unknown sequence family `{other}`; expected J or P")),
    }
}

/// Inclusive range of n values, written `a..b` or as a single value.
#[derive(Clone, Copy)]
struct NRange {
    start: u32,
    end: u32,
}

impl NRange {
    fn values(self) -> impl Iterator<Item = u32> {
        self.start..=self.end
    }
}

fn parse_range(s: &str) -> Result<NRange, String> {
    let parse_u32 = |t: &str| {
        t.parse::<u32>()
            .map_err(|_| format!("`{t}` is not a nonnegative integer"))
    };
    if let Some((a, b)) = s.split_once("..") {
        let (start, end) = (parse_u32(a)?, parse_u32(b)?);
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(NRange { start, end })
    } else {
        let v = parse_u32(s)?;
        Ok(NRange { start: v, end: v })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Bfile,
}

#[derive(Args)]
struct CountArgs {
    /// Sequence family: J (k bars, no restriction) or P (r restricted, j free
    /// sections)
    #[arg(value_parser = parse_kind)]
    kind: Kind,
    /// Range of n, inclusive: `0..5` or a single value
    #[arg(long, value_parser = parse_range)]
    n: NRange,
    /// Bar count (J only)
    #[arg(long)]
    k: Option<u32>,
    /// Restricted-section count (P only)
    #[arg(long)]
    r: Option<u32>,
    /// Free-section count (P only); j = 0 needs r ≥ 1
    #[arg(long)]
    j: Option<u32>,
    /// J routes: closed-form, recurrence, multinomial, egf.
    /// P routes: thm8, thm6, thm7, multinomial, egf, and for j = 1 also
    /// thm4, thm5, lemma1. When omitted, the default route (closed-form for
    /// J, thm8 for P) is cross-checked against an alternate route.
    #[arg(long)]
    route: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Number of elements
    #[arg(long)]
    n: u32,
    /// Bar count: k+1 sections, all free
    #[arg(long, conflicts_with = "profile")]
    bars: Option<u32>,
    /// Comma-separated section flags, e.g. R,F,R
    #[arg(long)]
    profile: Option<String>,
    /// Emit at most this many arrangements (bypasses the ceiling guard; the
    /// total line then counts emitted arrangements)
    #[arg(long)]
    limit: Option<u64>,
    /// Reject requests predicted to stream more than this many arrangements
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    ceiling: u64,
}

#[derive(Args)]
struct SeriesArgs {
    /// Exponential factor: r restricted sections
    #[arg(long)]
    r: u32,
    /// Reciprocal power: j free sections, at least 1
    #[arg(long)]
    j: u32,
    /// Highest degree to print
    #[arg(long)]
    order: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity ids (e.g. THM4 CONJ1 CHAINS_K2), or `all` for the catalog
    #[arg(default_value = "all")]
    identities: Vec<String>,
    /// Bound on n (CHAINS_K2 under `all` is clamped to n ≤ 4)
    #[arg(long, default_value_t = 6)]
    n_max: u32,
    /// Bound on the bar count k
    #[arg(long, default_value_t = 3)]
    k_max: u32,
    /// Bound on both r and j in general-family sweeps
    #[arg(long, default_value_t = 3)]
    rj_max: u32,
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    format: ReportFormat,
    /// Enumeration budget for the *_VS_ENUM identities
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    ceiling: u64,
}

fn j_value(n: u32, k: u32, route: &str) -> Result<Count, String> {
    match route {
        "closed-form" => Ok(j_closed_form(n, k)),
        "recurrence" => Ok(j_recurrence(n, k)),
        "multinomial" => Ok(j_multinomial(n, k)),
        "egf" => general_series(0, k + 1, n as usize)
            .integer_coefficient(n as usize)
            .map_err(|e| e.to_string()),
        other => Err(format!("unknown route `{other}` for J")),
    }
}

fn p_value(n: u32, r: u32, j: u32, route: &str) -> Result<Count, String> {
    if j == 0 {
        return match route {
            "multinomial" => {
                let profile = RestrictionProfile::canonical(r, 0)
                    .map_err(|e| e.to_string())?;
                p_multinomial(n, r, 0, &profile).map_err(|e| e.to_string())
            }
            other => Err(format!("route `{other}` needs j ≥ 1")),
        };
    }
    match route {
        "thm8" => Ok(p_general_recurrence_thm8(n, r, j)),
        "thm6" => Ok(p_general_recurrence_thm6(n, r, j)),
        "thm7" => Ok(p_via_theorem7(n, r, j)),
        "multinomial" => {
            let profile = RestrictionProfile::canonical(r, j).map_err(|e| e.to_string())?;
            p_multinomial(n, r, j, &profile).map_err(|e| e.to_string())
        }
        "egf" => general_series(r, j, n as usize)
            .integer_coefficient(n as usize)
            .map_err(|e| e.to_string()),
        "thm4" | "thm5" | "lemma1" if j != 1 => {
            Err(format!("route `{route}` applies to the one-free-section family (j = 1)"))
        }
        "thm4" => {
            if r == 0 {
                Err("route `thm4` needs r ≥ 1".into())
            } else {
                Ok(p_via_theorem4(n, r))
            }
        }
        "thm5" => {
            if r == 0 {
                Err("route `thm5` computes row r from row r-1, so it needs r ≥ 1".into())
            } else {
                Ok(p_via_theorem5(n, r - 1))
            }
        }
        "lemma1" => {
            if r == 0 || n == 0 {
                Err("route `lemma1` needs n ≥ 1 and r ≥ 1".into())
            } else {
                Ok(p_via_lemma1(n, r))
            }
        }
        other => Err(format!("unknown route `{other}` for P")),
    }
}

#[derive(Serialize)]
struct CountRow {
    n: u32,
    value: String,
}

fn run_count(args: CountArgs) -> Result<String, String> {
    let mut rows: Vec<(u32, Count)> = Vec::new();
    match args.kind {
        Kind::J => {
            let k = args.k.ok_or("count J requires --k")?;
            if args.r.is_some() || args.j.is_some() {
                return Err("count J takes --k, not --r/--j".into());
            }
            for n in args.n.values() {
                let value = match &args.route {
                    Some(route) => j_value(n, k, route)?,
                    None => {
                        let value = j_value(n, k, "closed-form")?;
                        let alternate = j_value(n, k, "recurrence")?;
                        if value != alternate {
                            return Err(format!(
                                "route mismatch at n={n}, k={k}: closed-form gives {value}, \
                                 recurrence gives {alternate}"
                            ));
                        }
                        value
                    }
                };
                rows.push((n, value));
            }
        }
        Kind::P => {
            let r = args.r.ok_or("count P requires --r")?;
            let j = args.j.ok_or("count P requires --j")?;
            if args.k.is_some() {
                return Err("count P takes --r/--j, not --k".into());
            }
            if j == 0 && r == 0 {
                return Err("count P needs j ≥ 1, or j = 0 with r ≥ 1".into());
            }
            for n in args.n.values() {
                let value = match &args.route {
                    Some(route) => p_value(n, r, j, route)?,
                    None if j == 0 => {
                        let value = power(r, n);
                        let alternate = p_value(n, r, 0, "multinomial")?;
                        if value != alternate {
                            return Err(format!(
                                "route mismatch at n={n}, r={r}, j=0: r^n gives {value}, \
                                 multinomial gives {alternate}"
                            ));
                        }
                        value
                    }
                    None => {
                        let value = p_value(n, r, j, "thm8")?;
                        let alternate = p_value(n, r, j, "thm6")?;
                        if value != alternate {
                            return Err(format!(
                                "route mismatch at n={n}, r={r}, j={j}: thm8 gives {value}, \
                                 thm6 gives {alternate}"
                            ));
                        }
                        value
                    }
                };
                rows.push((n, value));
            }
        }
    }
    Ok(render_rows(&rows, args.format))
}

fn render_rows(rows: &[(u32, Count)], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Table => {
            for (n, value) in rows {
                writeln!(out, "{n:>4}  {value}").unwrap();
            }
        }
        Format::Bfile => {
            for (n, value) in rows {
                writeln!(out, "{n} {value}").unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<CountRow> = rows
                .iter()
                .map(|(n, value)| CountRow {
                    n: *n,
                    value: value.to_string(),
                })
                .collect();
            out = serde_json::to_string_pretty(&rows).expect("rows serialize");
            out.push('\n');
        }
    }
    out
}

fn run_enumerate(args: EnumerateArgs) -> Result<(), String> {
    let profile = match (&args.profile, args.bars) {
        (Some(text), None) => text.parse::<RestrictionProfile>().map_err(|e| e.to_string())?,
        (None, Some(bars)) => RestrictionProfile::all_free(bars as usize + 1),
        (None, None) => return Err("enumerate requires --bars or --profile".into()),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };

    let stream: Box<dyn Iterator<Item = BarredArrangement>> = match args.limit {
        Some(limit) => Box::new(
            enumerate_restricted_unbounded(args.n, &profile).take(limit as usize),
        ),
        None if args.bars.is_some() => Box::new(
            enumerate_barred_with_ceiling(args.n, args.bars.unwrap(), args.ceiling)
                .map_err(|e| e.to_string())?,
        ),
        None => Box::new(
            enumerate_restricted_with_ceiling(args.n, &profile, args.ceiling)
                .map_err(|e| e.to_string())?,
        ),
    };

    let stdout = std::io::stdout().lock();
    let mut out = std::io::BufWriter::new(stdout);
    let mut total = 0u64;
    for arrangement in stream {
        writeln!(out, "{}", canonical_text(&arrangement)).map_err(|e| e.to_string())?;
        total += 1;
    }
    writeln!(out, "total {total}").map_err(|e| e.to_string())?;
    out.flush().map_err(|e| e.to_string())
}

fn run_series(args: SeriesArgs) -> Result<String, String> {
    if args.j == 0 {
        return Err("series requires --j ≥ 1".into());
    }
    let series = general_series(args.r, args.j, args.order as usize);
    let mut out = String::new();
    for degree in 0..=args.order as usize {
        let coeff = series.coeff(degree).map_err(|e| e.to_string())?;
        let value = series.integer_coefficient(degree).map_err(|e| e.to_string())?;
        writeln!(out, "{degree} {} {value}", render_rational(coeff)).unwrap();
    }
    Ok(out)
}

fn render_report_table(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for report in reports {
        let status = match (report.status, report.identity.informational()) {
            (Status::Pass, _) => "PASS".to_string(),
            (Status::Fail, true) => "FAIL (informational)".to_string(),
            (Status::Fail, false) => "FAIL".to_string(),
        };
        writeln!(
            out,
            "{:<14} {:<22} cells={:<6} elapsed={}ms",
            report.identity.name(),
            status,
            report.cells_checked,
            report.elapsed_ms
        )
        .unwrap();
        if let Some(cex) = &report.counterexample {
            let params = cex
                .params
                .iter()
                .map(|(name, value)| format!("{name}={value}"))
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(out, "    counterexample: {params} lhs={} rhs={}", cex.lhs, cex.rhs)
                .unwrap();
        }
    }
    out
}

fn run_verify(args: VerifyArgs) -> Result<(String, bool), String> {
    let all_mode = args.identities.len() == 1 && args.identities[0].eq_ignore_ascii_case("all");
    let ids: Vec<IdentityId> = if all_mode {
        IdentityId::ALL.to_vec()
    } else {
        args.identities
            .iter()
            .map(|s| s.parse::<IdentityId>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?
    };

    let mut reports = Vec::new();
    for id in ids {
        let mut ranges = Ranges {
            n_max: args.n_max,
            k_max: args.k_max,
            r_max: args.rj_max,
            j_max: args.rj_max,
        };
        if all_mode && id == IdentityId::ChainsK2 {
            ranges.n_max = ranges.n_max.min(4);
        }
        let mut spec = IdentitySpec::new(id, ranges);
        spec.ceiling = args.ceiling;
        reports.push(check_identity(&spec).map_err(|e| e.to_string())?);
    }

    let gating_failure = reports
        .iter()
        .any(|r| r.status == Status::Fail && !r.identity.informational());
    let rendered = match args.format {
        ReportFormat::Table => render_report_table(&reports),
        ReportFormat::Json => {
            let mut json = serde_json::to_string_pretty(&reports).expect("reports serialize");
            json.push('\n');
            json
        }
    };
    Ok((rendered, gating_failure))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Count(args) => {
            print!("{}", run_count(args)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate(args) => {
            run_enumerate(args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Series(args) => {
            print!("{}", run_series(args)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let (rendered, gating_failure) = run_verify(args)?;
            print!("{rendered}");
            Ok(if gating_failure {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
