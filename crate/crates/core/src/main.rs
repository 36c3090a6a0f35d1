//! Command-line surface over the exact expansion tables and the
//! numerical oracle.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use starlike::expansions::{
    delta_coeffs, eps_coeffs, pi_coeffs, radius_phi_asymptotic, radius_varphi_asymptotic,
    rho_coeffs, CoeffFamily, ExpansionSeries, RadiusApprox, RadiusFamily,
};
use starlike::hp::{digits_for_bits, HPReal};
use starlike::oracle::{bessel_zeros, radius_phi_numeric, radius_varphi_numeric, RootResult};
use starlike::rational::Rational;
use starlike::rayleigh::{rayleigh_bound, rayleigh_sum_exact, sigma_coeff};
use starlike::report::{
    render_csv, render_json, run_verify, slope_summary, OutputFormat, ReportConfig, VerifyOutcome,
};
use starlike::Error;

const EXIT_VERIFICATION_FAILURE: u8 = 5;

#[derive(Parser)]
#[command(
    name = "starlike",
    version,
    about = "Expansion coefficients and high-precision radii of starlikeness of normalised Bessel functions"
)]
struct Cli {
    /// Output format for tables and reports (default: plain text)
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Working precision in bits
    #[arg(long, global = true, default_value_t = 128)]
    prec: u32,

    /// Write the table/report to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffFamilyArg {
    Eps,
    Delta,
    Rho,
    Pi,
}

impl From<CoeffFamilyArg> for CoeffFamily {
    fn from(a: CoeffFamilyArg) -> Self {
        match a {
            CoeffFamilyArg::Eps => CoeffFamily::Eps,
            CoeffFamilyArg::Delta => CoeffFamily::Delta,
            CoeffFamilyArg::Rho => CoeffFamily::Rho,
            CoeffFamilyArg::Pi => CoeffFamily::Pi,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RadiusArg {
    Phi,
    Varphi,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFamilyArg {
    Phi,
    #[value(name = "varphi-sq")]
    VarphiSq,
    Varphi,
}

impl From<VerifyFamilyArg> for RadiusFamily {
    fn from(a: VerifyFamilyArg) -> Self {
        match a {
            VerifyFamilyArg::Phi => RadiusFamily::Phi,
            VerifyFamilyArg::VarphiSq => RadiusFamily::VarphiSq,
            VerifyFamilyArg::Varphi => RadiusFamily::Varphi,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print an expansion-coefficient family, exact and in decimal
    Coeffs {
        #[arg(long, value_enum)]
        family: CoeffFamilyArg,
        /// Number of coefficients
        #[arg(long)]
        count: usize,
    },
    /// Laurent coefficients (with --m) or exact Rayleigh sums with
    /// their envelope bound (with --nu)
    Sigma {
        #[arg(long)]
        k: u32,
        #[arg(long, conflicts_with = "nu")]
        m: Option<u32>,
        /// Order nu, as a decimal or p/q
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
    },
    /// Truncated expansion of a radius of starlikeness, optionally
    /// compared against the numerical root
    Radius {
        #[arg(long, value_enum)]
        family: RadiusArg,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// Truncation order (series terms kept; 0 = leading factor)
        #[arg(long)]
        order: usize,
        /// Also locate the radius numerically and report the error
        #[arg(long)]
        numeric: bool,
    },
    /// Compare truncations against the oracle over a nu grid and check
    /// the error-decay slopes
    Verify {
        #[arg(long, value_enum)]
        family: Option<VerifyFamilyArg>,
        /// Comma-separated nu grid, e.g. 10,20,40,80
        #[arg(long, value_delimiter = ',')]
        grid: Vec<String>,
        /// Comma-separated truncation orders, e.g. 1,2,4,6
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u32>,
        /// JSON config file; explicit flags win on conflict
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// First positive zeros of the Bessel function of order nu
    Zeros {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long)]
        count: u32,
    },
}

#[derive(Debug, Serialize)]
struct CoeffRow {
    k: usize,
    exact: String,
    decimal: String,
}

#[derive(Debug, Serialize)]
struct SigmaCoeffRow {
    k: u32,
    m: u32,
    exact: String,
    decimal: String,
}

#[derive(Debug, Serialize)]
struct SigmaSumRow {
    k: u32,
    nu: String,
    exact: String,
    decimal: String,
    bound: String,
    bound_satisfied: Option<bool>,
    outside_series_domain: bool,
}

#[derive(Debug, Serialize)]
struct RadiusRow {
    family: String,
    nu: String,
    order: usize,
    exact: Option<String>,
    asymptotic: String,
    numeric: Option<String>,
    abs_error: Option<String>,
    scaled_error: Option<String>,
}

#[derive(Debug, Serialize)]
struct ZeroRow {
    n: u32,
    zero: String,
    residual: String,
    iterations: u32,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors and 0 for help/version
            e.exit();
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let digits = digits_for_bits(cli.prec);
    match &cli.command {
        Command::Coeffs { family, count } => {
            let (family, count) = (*family, *count);
            if count == 0 {
                return Err(Error::MustBePositive {
                    what: "coefficient count",
                });
            }
            let family: CoeffFamily = family.into();
            let series = coefficients(family, count)?;
            let rows: Vec<CoeffRow> = (1..=count)
                .map(|k| {
                    let c = series.coeff(k).expect("computed through count");
                    CoeffRow {
                        k,
                        exact: c.to_string(),
                        decimal: c.to_decimal(digits),
                    }
                })
                .collect();
            let title = format!("{} coefficients 1..{}", family.name(), count);
            let text = text_coeffs(&rows);
            emit_table(&cli, &title, &rows, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sigma { k, m, nu } => match (m, nu) {
            (Some(m), None) => {
                let (k, m) = (*k, *m);
                let v = sigma_coeff(k, m)?;
                let rows = vec![SigmaCoeffRow {
                    k,
                    m,
                    exact: v.to_string(),
                    decimal: v.to_decimal(digits),
                }];
                let title = format!("Laurent coefficient of the order-{k} Rayleigh sum, index {m}");
                let text = text_sigma_coeffs(&rows);
                emit_table(&cli, &title, &rows, text)?;
                Ok(ExitCode::SUCCESS)
            }
            (None, Some(nu)) => {
                let k = *k;
                let nu: Rational = nu.parse()?;
                let value = rayleigh_sum_exact(k, &nu)?;
                // the envelope bound only applies on nu > 0
                let (bound_str, satisfied) = if nu.is_positive() {
                    let bound = rayleigh_bound(k, &nu)?;
                    let ok = value.value <= bound;
                    (bound.to_string(), Some(ok))
                } else {
                    ("n/a".to_string(), None)
                };
                let rows = vec![SigmaSumRow {
                    k,
                    nu: nu.to_string(),
                    exact: value.value.to_string(),
                    decimal: value.value.to_decimal(digits),
                    bound: bound_str,
                    bound_satisfied: satisfied,
                    outside_series_domain: value.outside_series_domain,
                }];
                let title = format!("Rayleigh sum of order {k} at nu = {nu}");
                let text = text_sigma_sums(&rows);
                emit_table(&cli, &title, &rows, text)?;
                Ok(ExitCode::SUCCESS)
            }
            _ => Err(Error::InvalidConfig(
                "sigma needs exactly one of --m or --nu".into(),
            )),
        },
        Command::Radius {
            family,
            nu,
            order,
            numeric,
        } => {
            let nu: Rational = nu.parse()?;
            let row = radius_row(*family, &nu, *order, *numeric, cli.prec, digits)?;
            let title = format!(
                "radius of starlikeness, {} family, nu = {}, order {}",
                row.family, nu, order
            );
            let text = text_radius(&row);
            emit_table(&cli, &title, std::slice::from_ref(&row), text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            family,
            grid,
            orders,
            config,
        } => run_verify_command(&cli, *family, grid.clone(), orders.clone(), config.clone()),
        Command::Zeros { nu, count } => {
            let count = *count;
            let nu: Rational = nu.parse()?;
            let zeros = bessel_zeros(&nu, count, cli.prec)?;
            let rows: Vec<ZeroRow> = zeros
                .iter()
                .enumerate()
                .map(|(i, z)| ZeroRow {
                    n: i as u32 + 1,
                    zero: z.root.to_decimal(digits),
                    residual: z.residual.to_decimal(6),
                    iterations: z.iterations,
                })
                .collect();
            let title = format!("first {count} positive Bessel zeros of order nu = {nu}");
            let text = text_zeros(&rows);
            emit_table(&cli, &title, &rows, text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn coefficients(family: CoeffFamily, count: usize) -> Result<ExpansionSeries, Error> {
    match family {
        CoeffFamily::Eps => eps_coeffs(count),
        CoeffFamily::Delta => delta_coeffs(count),
        CoeffFamily::Rho => rho_coeffs(count),
        CoeffFamily::Pi => pi_coeffs(count),
    }
}

fn radius_row(
    family: RadiusArg,
    nu: &Rational,
    order: usize,
    numeric: bool,
    prec: u32,
    digits: usize,
) -> Result<RadiusRow, Error> {
    let (name, trunc, root): (_, _, Option<RootResult>) = match family {
        RadiusArg::Phi => {
            let t = radius_phi_asymptotic(nu, order)?;
            let r = if numeric {
                Some(radius_phi_numeric(nu, prec)?)
            } else {
                None
            };
            ("phi", t, r)
        }
        RadiusArg::Varphi => {
            let t = radius_varphi_asymptotic(nu, order, prec)?;
            let r = if numeric {
                Some(radius_varphi_numeric(nu, prec)?)
            } else {
                None
            };
            ("varphi", t, r)
        }
    };
    let asymptotic = trunc.value.to_decimal(digits);
    let exact = trunc.value.exact().map(|r| r.to_string());
    let (numeric_str, abs_str, scaled_str) = match root {
        None => (None, None, None),
        Some(r) => {
            let asym_hp = match &trunc.value {
                RadiusApprox::Exact(q) => HPReal::from_rational(q, prec),
                RadiusApprox::Real(x) => x.clone(),
            };
            let abs = (&asym_hp - &r.root.round_to(prec)).abs();
            let leading = match family {
                RadiusArg::Phi => HPReal::from_rational(&(Rational::from(4) * nu), prec),
                RadiusArg::Varphi => {
                    HPReal::from_rational(&(Rational::from(2) * nu), prec).sqrt(prec)?
                }
            };
            let nu_pow = HPReal::from_rational(&nu.pow_u(order as u32 + 1), prec);
            let scaled = (&abs * &nu_pow).div(&leading)?;
            (
                Some(r.root.to_decimal(digits)),
                Some(abs.to_decimal(digits)),
                Some(scaled.to_decimal(digits)),
            )
        }
    };
    Ok(RadiusRow {
        family: name.to_string(),
        nu: nu.to_decimal(digits),
        order,
        exact,
        asymptotic,
        numeric: numeric_str,
        abs_error: abs_str,
        scaled_error: scaled_str,
    })
}

/// Subset of [`ReportConfig`] accepted from a JSON file.
#[derive(Debug, Default, Deserialize)]
struct FileConfig {
    family: Option<String>,
    grid: Option<Vec<String>>,
    orders: Option<Vec<u32>>,
    precision_bits: Option<u32>,
    format: Option<String>,
    out: Option<PathBuf>,
}

fn run_verify_command(
    cli: &Cli,
    family: Option<VerifyFamilyArg>,
    grid: Vec<String>,
    orders: Vec<u32>,
    config: Option<PathBuf>,
) -> Result<ExitCode, Error> {
    let file: FileConfig = match config {
        Some(path) => {
            let text = std::fs::read_to_string(&path)?;
            serde_json::from_str(&text)
                .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };

    // flags win over the config file; defaults fill the rest
    let family: RadiusFamily = match (family, file.family) {
        (Some(f), _) => f.into(),
        (None, Some(s)) => s.parse()?,
        (None, None) => RadiusFamily::Phi,
    };
    let grid_strings = if !grid.is_empty() {
        grid
    } else {
        file.grid
            .unwrap_or_else(|| vec!["10".into(), "20".into(), "40".into(), "80".into()])
    };
    let grid: Vec<Rational> = grid_strings
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let orders = if !orders.is_empty() {
        orders
    } else {
        file.orders.unwrap_or_else(|| vec![1, 2, 4, 6])
    };
    let precision_bits = if cli.prec != 128 {
        cli.prec
    } else {
        file.precision_bits.unwrap_or(cli.prec)
    };
    let format = match cli.format {
        Some(FormatArg::Json) => OutputFormat::Json,
        Some(FormatArg::Csv) => OutputFormat::Csv,
        None => match file.format.as_deref() {
            Some(s) => s.parse()?,
            None => OutputFormat::Json,
        },
    };
    let out = cli.out.clone().or(file.out);

    let cfg = ReportConfig {
        family,
        grid,
        orders,
        precision_bits,
        format,
        out,
    };
    let (report, outcome) = run_verify(&cfg)?;
    let rendered = match cfg.format {
        OutputFormat::Json => render_json(&report)?,
        OutputFormat::Csv => render_csv(&report)?,
    };
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, rendered)?;
            println!("report written to {}", path.display());
        }
        None => print!("{rendered}"),
    }
    print!("{}", slope_summary(&report));
    match outcome {
        VerifyOutcome::Pass => {
            println!("verification passed");
            Ok(ExitCode::SUCCESS)
        }
        VerifyOutcome::SlopeFailure => {
            println!("verification FAILED: slope outside the acceptance band");
            Ok(ExitCode::from(EXIT_VERIFICATION_FAILURE))
        }
        VerifyOutcome::OracleFailure => {
            println!("verification FAILED: oracle error at one or more grid points");
            Ok(ExitCode::from(4))
        }
    }
}

/// Renders rows as text/JSON/CSV and sends them to stdout or `--out`.
fn emit_table<T: Serialize>(cli: &Cli, title: &str, rows: &[T], text: String) -> Result<(), Error> {
    let rendered = match cli.format {
        None => format!("{title}\n{text}"),
        Some(FormatArg::Json) => {
            let mut s =
                serde_json::to_string_pretty(rows).map_err(|e| Error::Render(e.to_string()))?;
            s.push('\n');
            s
        }
        Some(FormatArg::Csv) => {
            let mut wtr = csv::Writer::from_writer(Vec::new());
            for row in rows {
                wtr.serialize(row)
                    .map_err(|e| Error::Render(e.to_string()))?;
            }
            let bytes = wtr.into_inner().map_err(|e| Error::Render(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Render(e.to_string()))?
        }
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, rendered)?;
            println!("written to {}", path.display());
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

fn text_coeffs(rows: &[CoeffRow]) -> String {
    let mut s = String::new();
    let width = rows.iter().map(|r| r.exact.len()).max().unwrap_or(1);
    for r in rows {
        let _ = writeln!(s, "  k={:<3} {:>width$}   {}", r.k, r.exact, r.decimal);
    }
    s
}

fn text_sigma_coeffs(rows: &[SigmaCoeffRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let _ = writeln!(s, "  k={} m={}  {}  ({})", r.k, r.m, r.exact, r.decimal);
    }
    s
}

fn text_sigma_sums(rows: &[SigmaSumRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let _ = writeln!(s, "  value = {} ({})", r.exact, r.decimal);
        let flag = match r.bound_satisfied {
            Some(b) => b.to_string(),
            None => "n/a".to_string(),
        };
        let _ = writeln!(s, "  bound = {}  satisfied={}", r.bound, flag);
        if r.outside_series_domain {
            let _ = writeln!(
                s,
                "  note: nu <= -1, the value is the rational continuation, not a zero sum"
            );
        }
    }
    s
}

fn text_radius(row: &RadiusRow) -> String {
    let mut s = String::new();
    if let Some(exact) = &row.exact {
        let _ = writeln!(s, "  exact      = {exact}");
    }
    let _ = writeln!(s, "  asymptotic = {}", row.asymptotic);
    if let Some(n) = &row.numeric {
        let _ = writeln!(s, "  numeric    = {n}");
        let _ = writeln!(
            s,
            "  abs_error  = {}",
            row.abs_error.as_deref().unwrap_or("-")
        );
        let _ = writeln!(
            s,
            "  scaled_error (x nu^(order+1) / leading) = {}",
            row.scaled_error.as_deref().unwrap_or("-")
        );
    }
    s
}

fn text_zeros(rows: &[ZeroRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let _ = writeln!(
            s,
            "  n={:<4} {}   residual {}   evals {}",
            r.n, r.zero, r.residual, r.iterations
        );
    }
    s
}
