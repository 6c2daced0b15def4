use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use splitknot::corpus;
use splitknot::cover::{prime_powers_up_to, FormSign};
use splitknot::laurent::cyclotomic_part;
use splitknot::library::{DSources, KnotLibrary};
use splitknot::linkform::{metabolizer_pairs, metabolizers, FiniteForm, DEFAULT_CAP};
use splitknot::obstruct::{check_expr, cover_table, report, split_doubly_slice, verify, CheckKind, Conventions, ReportFormat, Verdict};
use splitknot::Error;

#[derive(Parser, Debug)]
#[command(name = "splitknot", version, about = "Branched-cover obstructions to (double) sliceness of knots")]
struct Cli {
    /// Extra knot file(s); names override the bundled corpus.
    #[arg(long = "knots", global = true)]
    knots: Vec<PathBuf>,
    /// Largest group enumerated exhaustively.
    #[arg(long, global = true, env = "SPLITKNOT_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Linking form sign convention.
    #[arg(long, global = true, value_enum, default_value_t = Sign::Negative)]
    sign: Sign,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sign {
    Negative,
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Slice,
    DoublyVanishing,
    DoublySlice,
}

#[derive(clap::Args, Debug)]
struct Range {
    /// Cover degree (repeatable).
    #[arg(long)]
    q: Vec<u64>,
    /// Use every prime power up to this bound.
    #[arg(long = "q-max")]
    q_max: Option<u64>,
    /// d-record file(s); bundled files may be named without a path.
    #[arg(long = "d")]
    d: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the knots that are available by name.
    List,
    /// Normalized Alexander polynomial.
    Alexander { knot: String },
    /// Cover homology, linking form, deck action and metabolizers.
    Cover {
        knot: String,
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Count only Lambda-invariant metabolizers.
        #[arg(long)]
        lambda: bool,
    },
    /// Run a single-knot obstruction check.
    Check {
        knot: String,
        #[command(flatten)]
        range: Range,
        #[arg(long, value_enum, default_value_t = Mode::DoublyVanishing)]
        mode: Mode,
        /// Require Lambda-invariant metabolizer pairs.
        #[arg(long)]
        lambda: bool,
    },
    /// Split a connected sum along summands with coprime Alexander polynomials.
    Split {
        expr: String,
        #[command(flatten)]
        range: Range,
    },
    /// Re-run the witnesses stored in a JSON report.
    Verify { report: PathBuf },
}

enum Failure {
    Input(String),
    Cap(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GroupTooLarge { .. } => Failure::Cap(e.to_string()),
            Error::Verification(m) => Failure::Verification(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))
}

fn library(cli: &Cli) -> Result<KnotLibrary, Failure> {
    let mut lib = corpus::library();
    for p in &cli.knots {
        lib.load_json(&read(p)?, true)?;
    }
    Ok(lib)
}

fn d_sources(names: &[String]) -> Result<DSources, Failure> {
    let mut d = DSources::new();
    for n in names {
        let path = std::path::Path::new(n);
        let text = if path.exists() {
            read(path)?
        } else {
            corpus::d_file(n).map(str::to_string).ok_or_else(|| Failure::Input(format!("no d-record file `{}`", n)))?
        };
        d.add_json(&text)?;
    }
    Ok(d)
}

fn degrees(r: &Range) -> Vec<u64> {
    let mut qs = r.q.clone();
    if let Some(m) = r.q_max {
        qs.extend(prime_powers_up_to(m));
    }
    if qs.is_empty() {
        qs = prime_powers_up_to(5);
    }
    qs.sort_unstable();
    qs.dedup();
    qs
}

fn conventions(cli: &Cli, lambda: bool) -> Conventions {
    let sign = match cli.sign {
        Sign::Negative => FormSign::Negative,
        Sign::Positive => FormSign::Positive,
    };
    Conventions { sign, require_lambda: lambda, cap: cli.cap }
}

fn render(cli: &Cli, verdicts: &[Verdict]) -> String {
    match cli.format {
        Format::Json if verdicts.len() == 1 => report(&verdicts[0], ReportFormat::Json),
        Format::Json => serde_json::to_string_pretty(verdicts).expect("verdicts serialize"),
        Format::Text => verdicts.iter().map(|v| report(v, ReportFormat::Text)).collect::<Vec<_>>().join("\n"),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::List => {
            let lib = library(cli)?;
            Ok(lib.names().map(|n| format!("{}\n", n)).collect())
        }
        Command::Alexander { knot } => {
            let lib = library(cli)?;
            let delta = lib.parse_expr(knot)?.alexander();
            let (cyc, rest) = cyclotomic_part(&delta)?;
            if cli.format == Format::Json {
                let v = serde_json::json!({
                    "alexander": delta,
                    "text": delta.to_string(),
                    "cyclotomic_factors": cyc,
                    "remaining_factor": rest.to_string(),
                });
                return Ok(serde_json::to_string_pretty(&v).expect("json"));
            }
            let mut out = format!("{}\n", delta);
            if !cyc.is_empty() {
                let parts: Vec<String> =
                    cyc.iter().map(|(n, k)| if *k == 1 { format!("phi_{}", n) } else { format!("phi_{}^{}", n, k) }).collect();
                out.push_str(&format!("  cyclotomic part: {}; remaining factor: {}\n", parts.join(" * "), rest));
            }
            Ok(out)
        }
        Command::Cover { knot, q, lambda } => {
            let lib = library(cli)?;
            let conv = conventions(cli, *lambda);
            let table = cover_table(&lib.parse_expr(knot)?, *q, &DSources::new(), &conv)?.map_err(Failure::Input)?;
            let h = table.host();
            let form = FiniteForm::new(h, cli.cap)?;
            let mets = metabolizers(&form, *lambda);
            let pairs = metabolizer_pairs(&form, *lambda);
            let mut line = format!("{}; metabolizers: {}", h.describe(), mets.len());
            if !mets.is_empty() {
                line.push_str(&format!("; pairs: {}", pairs.len()));
            }
            if cli.format == Format::Json {
                let v = serde_json::json!({
                    "summary": line,
                    "group": splitknot::obstruct::GroupRecord::from_group(h),
                    "metabolizers": mets.iter().map(|m| splitknot::linkform::SubgroupRecord::from(m)).collect::<Vec<_>>(),
                    "lambda_invariant": mets.iter().map(|m| m.is_t_invariant(&form)).collect::<Vec<_>>(),
                    "pairs": pairs.len(),
                });
                return Ok(serde_json::to_string_pretty(&v).expect("json"));
            }
            let mut out = format!("{}\n", line);
            let rec = splitknot::obstruct::GroupRecord::from_group(h);
            if !rec.factors.is_empty() {
                out.push_str(&format!("  form: {:?}\n  deck action: {:?}\n", rec.gram, rec.t));
            }
            for m in &mets {
                let tag = if m.is_t_invariant(&form) { " (Lambda-invariant)" } else { "" };
                out.push_str(&format!("  metabolizer {}{}\n", m, tag));
            }
            Ok(out)
        }
        Command::Check { knot, range, mode, lambda } => {
            let lib = library(cli)?;
            let expr = lib.parse_expr(knot)?;
            let dsrc = d_sources(&range.d)?;
            let conv = conventions(cli, *lambda);
            let kind = match mode {
                Mode::Slice => CheckKind::Slice,
                Mode::DoublyVanishing => CheckKind::DoublyVanishing,
                Mode::DoublySlice => CheckKind::DoublySlice,
            };
            let verdicts =
                degrees(range).into_iter().map(|q| check_expr(&expr, q, kind, &dsrc, &conv)).collect::<Result<Vec<_>, _>>()?;
            Ok(render(cli, &verdicts))
        }
        Command::Split { expr, range } => {
            let lib = library(cli)?;
            let e = lib.parse_expr(expr)?;
            let dsrc = d_sources(&range.d)?;
            let v = split_doubly_slice(&e, &degrees(range), &dsrc, &conventions(cli, false))?;
            Ok(render(cli, &[v]))
        }
        Command::Verify { report } => {
            let text = read(report)?;
            let verdicts: Vec<Verdict> = match serde_json::from_str::<Verdict>(&text) {
                Ok(v) => vec![v],
                Err(_) => serde_json::from_str(&text).map_err(|e| Failure::Input(format!("not a report: {}", e)))?,
            };
            let mut out = String::new();
            for v in &verdicts {
                verify(v)?;
                out.push_str(&format!("verified: {} {} {}\n", v.status.as_str(), v.check.as_str(), v.subject));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out);
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(3)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {}", m);
            ExitCode::from(1)
        }
    }
}
