use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use qram_core::generators::{Family, NAME_PATTERNS};
use qram_core::identities::{self, IdentityKind, VerifyReport, DEFAULT_NMAX, DEFAULT_ORDER};
use qram_core::numeric::{self, SpecialReport, DEFAULT_PRECISION, MIN_PRECISION};
use qram_core::symbolic::{phi_poly, ratio_poly};
use qram_core::{Error, SeriesName, WeightedPoly};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verb {
    Expand,
    Verify,
    Convolve,
    Eval,
    Derive,
    List,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact q-series expansion and identity verification.
#[derive(Parser, Debug)]
#[command(name = "qram", version)]
struct Cli {
    #[arg(value_enum)]
    verb: Verb,
    /// Series name, e.g. T4, eps3, phi_tilde_2_7, hahnQ
    #[arg(long)]
    series: Option<String>,
    #[arg(long, conflicts_with = "all")]
    identity: Option<String>,
    #[arg(long)]
    all: bool,
    /// T, F, psi or eps
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    index: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long, default_value_t = DEFAULT_NMAX)]
    nmax: u64,
    /// Special-value id, e.g. ct5b.phi09
    #[arg(long)]
    value: Option<String>,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

enum Outcome {
    Pass,
    Fail,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        let hint = match &e {
            Error::UnknownSeries(_) | Error::InvalidSeries(_) => format!("valid series: {NAME_PATTERNS}"),
            Error::UnknownIdentity(_) | Error::WrongIdentityKind { .. } => {
                format!("valid identities: {}", identity_ids(None).join(", "))
            }
            Error::UnknownSpecialValue(_) => format!("valid values: {}", special_ids().join(", ")),
            _ => String::new(),
        };
        if hint.is_empty() {
            Usage(e.to_string())
        } else {
            Usage(format!("{e}\n{hint}"))
        }
    }
}

fn identity_ids(kind: Option<IdentityKind>) -> Vec<&'static str> {
    identities::registry()
        .iter()
        .filter(|i| kind.is_none_or(|k| i.kind() == k))
        .map(|i| i.id.as_str())
        .collect()
}

fn special_ids() -> Vec<&'static str> {
    numeric::specials().iter().map(|s| s.id).collect()
}

fn json<T: Serialize + ?Sized>(out: &mut impl Write, v: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn expand(cli: &Cli, out: &mut impl Write) -> Result<Outcome, Usage> {
    let text = cli.series.as_deref().ok_or_else(|| Usage(format!("expand needs --series\nvalid series: {NAME_PATTERNS}")))?;
    let name: SeriesName = text.parse()?;
    let series = name.build(cli.order)?;
    #[derive(Serialize)]
    struct Expansion<'a> {
        coeffs: Vec<String>,
        order: usize,
        series: &'a str,
    }
    match cli.format {
        Format::Json => {
            let coeffs = series.coeffs().iter().map(ToString::to_string).collect();
            json(out, &Expansion { coeffs, order: cli.order, series: &name.to_string() }).map_err(io_usage)?;
        }
        Format::Text => writeln!(out, "{} = {series}", name.pretty()).map_err(io_usage)?,
    }
    Ok(Outcome::Pass)
}

fn statement(id: &str) -> &'static str {
    identities::lookup(id).map_or("", |i| i.statement.as_str())
}

fn print_reports(cli: &Cli, reports: &[VerifyReport], out: &mut impl Write, footer: Option<usize>) -> Result<Outcome, Usage> {
    let ok = reports.iter().all(VerifyReport::passed);
    match cli.format {
        Format::Json => json(out, reports).map_err(io_usage)?,
        Format::Text => {
            for r in reports {
                write!(out, "{:<4}  {:<22} checked_up_to={:<4} {}", r.status, r.id, r.checked_up_to, statement(&r.id))
                    .map_err(io_usage)?;
                if let Some(f) = &r.first_failure {
                    write!(out, "\n      first failure at {}: lhs={} rhs={}", f.at, f.lhs, f.rhs).map_err(io_usage)?;
                }
                if let Some(n) = &r.note {
                    write!(out, "\n      note: {n}").map_err(io_usage)?;
                }
                writeln!(out).map_err(io_usage)?;
            }
            if let Some(total) = footer {
                let passed = reports.iter().filter(|r| r.passed()).count();
                writeln!(out, "{passed}/{} passed; {} of {total} registered identities checked", reports.len(), reports.len())
                    .map_err(io_usage)?;
            }
        }
    }
    if let (Format::Json, Some(total)) = (cli.format, footer) {
        eprintln!("{}/{} checked of {total} registered", reports.len(), reports.len());
    }
    Ok(outcome(ok))
}

fn verify(cli: &Cli, out: &mut impl Write) -> Result<Outcome, Usage> {
    if cli.all {
        let reports = identities::verify_all(cli.order, cli.nmax);
        return print_reports(cli, &reports, out, Some(identities::registry().len()));
    }
    let id = cli.identity.as_deref().ok_or_else(|| Usage("verify needs --identity ID or --all".into()))?;
    let identity = identities::lookup(id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    let report = identities::verify(identity, cli.order, cli.nmax);
    print_reports(cli, &[report], out, None)
}

fn convolve(cli: &Cli, out: &mut impl Write) -> Result<Outcome, Usage> {
    if cli.all {
        let ids = identity_ids(Some(IdentityKind::Convolution));
        let mut reports = Vec::with_capacity(ids.len());
        for id in ids {
            reports.push(identities::verify_convolution(id, cli.nmax)?);
        }
        return print_reports(cli, &reports, out, None);
    }
    let id = cli.identity.as_deref().ok_or_else(|| Usage("convolve needs --identity ID or --all".into()))?;
    let report = identities::verify_convolution(id, cli.nmax).map_err(|e| match e {
        Error::WrongIdentityKind { .. } | Error::UnknownIdentity(_) => Usage(format!(
            "{e}\nvalid convolution identities: {}",
            identity_ids(Some(IdentityKind::Convolution)).join(", ")
        )),
        e => e.into(),
    })?;
    print_reports(cli, &[report], out, None)
}

fn eval(cli: &Cli, out: &mut impl Write) -> Result<Outcome, Usage> {
    if cli.precision < MIN_PRECISION {
        return Err(Error::Precision { min: MIN_PRECISION, got: cli.precision }.into());
    }
    let ids: Vec<&str> = if cli.all {
        special_ids()
    } else {
        vec![cli.value.as_deref().ok_or_else(|| Usage(format!("eval needs --value ID or --all\nvalid values: {}", special_ids().join(", "))))?]
    };
    let mut reports: Vec<SpecialReport> = Vec::with_capacity(ids.len());
    for id in ids {
        reports.push(numeric::check_special(id, cli.precision)?);
    }
    let ok = reports.iter().all(|r| r.status == identities::Status::Pass);
    match cli.format {
        Format::Json => json(out, &reports).map_err(io_usage)?,
        Format::Text => {
            for r in &reports {
                let stmt = numeric::special(&r.id).map(|s| s.statement).unwrap_or("");
                writeln!(out, "{:<4}  {:<16} {stmt}", r.status, r.id).map_err(io_usage)?;
                writeln!(out, "      series      {}", r.series_value).map_err(io_usage)?;
                writeln!(out, "      closed form {}", r.closed_form_value).map_err(io_usage)?;
                writeln!(
                    out,
                    "      abs_err {}  rel_err {}  tolerance 2^-{} at {} bits",
                    r.abs_err, r.rel_err, r.tolerance_bits, r.precision_bits
                )
                .map_err(io_usage)?;
                if let Some(n) = &r.note {
                    writeln!(out, "      note: {n}").map_err(io_usage)?;
                }
            }
        }
    }
    Ok(outcome(ok))
}

fn derive(cli: &Cli, out: &mut impl Write) -> Result<Outcome, Usage> {
    #[derive(Serialize)]
    struct Derived {
        denominator: String,
        numerator: String,
        poly: String,
        ring: String,
        weight: Option<u32>,
    }
    let (num, den, poly): (String, String, WeightedPoly) = match (&cli.family, &cli.series) {
        (Some(fam), _) => {
            let fam: Family = fam
                .parse()
                .map_err(|_| Usage(format!("unknown family '{fam}'\nvalid families: T, F, psi, eps")))?;
            let n = cli.index.ok_or_else(|| Usage("derive --family needs --index".into()))?;
            let (a, b) = fam.ratio_indices(n);
            (format!("{}{a}", fam.name()), format!("{}{b}", fam.name()), ratio_poly(fam, n))
        }
        (None, Some(s)) => {
            let name: SeriesName = s.parse()?;
            let SeriesName::Phi(variant, r, s) = name else {
                return Err(Usage(format!("derive --series takes a Phi name (phi_R_S or phi_tilde_R_S), got '{name}'")));
            };
            let poly = phi_poly(variant, r, s)?;
            (name.to_string(), "1".into(), poly)
        }
        (None, None) => return Err(Usage("derive needs --family F --index K or --series phi_R_S".into())),
    };
    match cli.format {
        Format::Json => json(
            out,
            &Derived { denominator: den, numerator: num, poly: poly.to_string(), ring: poly.ring().to_string(), weight: poly.weight() },
        )
        .map_err(io_usage)?,
        Format::Text => writeln!(out, "{poly}").map_err(io_usage)?,
    }
    Ok(Outcome::Pass)
}

fn list(cli: &Cli, out: &mut impl Write) -> Result<Outcome, Usage> {
    #[derive(Serialize)]
    struct Entry {
        id: String,
        kind: String,
        statement: String,
    }
    #[derive(Serialize)]
    struct Listing {
        identities: Vec<Entry>,
        series: &'static str,
        specials: Vec<Entry>,
    }
    let kind_name = |k: IdentityKind| match k {
        IdentityKind::Series => "series",
        IdentityKind::Convolution => "convolution",
        IdentityKind::NumericRef => "numeric-ref",
    };
    let listing = Listing {
        identities: identities::registry()
            .iter()
            .map(|i| Entry { id: i.id.clone(), kind: kind_name(i.kind()).into(), statement: i.statement.clone() })
            .collect(),
        series: NAME_PATTERNS,
        specials: numeric::specials()
            .iter()
            .map(|s| Entry { id: s.id.into(), kind: "special".into(), statement: s.statement.into() })
            .collect(),
    };
    match cli.format {
        Format::Json => json(out, &listing).map_err(io_usage)?,
        Format::Text => {
            writeln!(out, "series: {}", listing.series).map_err(io_usage)?;
            writeln!(out, "identities ({}):", listing.identities.len()).map_err(io_usage)?;
            for e in &listing.identities {
                writeln!(out, "  {:<22} {:<12} {}", e.id, e.kind, e.statement).map_err(io_usage)?;
            }
            writeln!(out, "special values ({}):", listing.specials.len()).map_err(io_usage)?;
            for e in &listing.specials {
                writeln!(out, "  {:<22} {}", e.id, e.statement).map_err(io_usage)?;
            }
        }
    }
    Ok(Outcome::Pass)
}

fn io_usage(e: io::Error) -> Usage {
    Usage(format!("write failed: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.verb {
        Verb::Expand => expand(&cli, &mut out),
        Verb::Verify => verify(&cli, &mut out),
        Verb::Convolve => convolve(&cli, &mut out),
        Verb::Eval => eval(&cli, &mut out),
        Verb::Derive => derive(&cli, &mut out),
        Verb::List => list(&cli, &mut out),
    };
    let flushed = out.flush();
    match result {
        Ok(Outcome::Pass) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(Outcome::Pass) => ExitCode::from(2),
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
