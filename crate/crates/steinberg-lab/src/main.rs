use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::json;
use steinberg::rootsys::{Family, RootSystem, RootSystemType};
use steinberg::sorth::{self, Conjugacy, DEFAULT_ENUM_BUDGET};

mod report;
mod suites;
mod tables;

use report::{Format, SuiteReport, Table};
use suites::{vec_str, Config};

const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "steinberg-lab",
    version,
    about = "Exact verification suites for root-system and building combinatorics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy maximal strongly orthogonal set, checked against the table.
    SigmaA {
        /// Family letter, A to G.
        family: String,
        rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Runs a verification suite; exit 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: SuiteName,
        /// Residue field size, odd and at least 3.
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, default_value_t = 10)]
        radius: usize,
        /// Also write the JSON report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Emits computed tables beside the hard-coded ones.
    #[command(group(ArgGroup::new("which").required(true).args(["sract", "eic", "r1r2"])))]
    Tables {
        #[arg(long)]
        sract: bool,
        #[arg(long)]
        eic: bool,
        #[arg(long)]
        r1r2: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Rootsys,
    Sorth,
    Apartment,
    Cochain,
    Series,
    Tree,
    All,
}

impl SuiteName {
    fn name(self) -> &'static str {
        match self {
            SuiteName::Rootsys => "rootsys",
            SuiteName::Sorth => "sorth",
            SuiteName::Apartment => "apartment",
            SuiteName::Cochain => "cochain",
            SuiteName::Series => "series",
            SuiteName::Tree => "tree",
            SuiteName::All => "all",
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE_ERROR)
}

fn is_prime_power(n: i64) -> bool {
    let Some(p) = (2..=n).find(|p| n % p == 0) else { return false };
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

fn budget_from_env() -> Result<Option<u128>, String> {
    match std::env::var("STEINBERG_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map(Some)
            .map_err(|_| format!("STEINBERG_BUDGET must be a nonnegative integer, got {v:?}")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn render_table(name: &str, t: &Table, format: Format) -> String {
    match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({ "table": name, "rows": t.to_json_value() })).expect("json") + "\n"
        }
        Format::Csv => t.to_csv(),
        Format::Markdown => t.to_markdown(),
    }
}

fn render_report(r: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => r.to_json() + "\n",
        Format::Csv => r.to_table().to_csv(),
        Format::Markdown => r.to_table().to_markdown(),
    }
}

fn sigma_a(family: &str, rank: usize, format: Format) -> ExitCode {
    let ty = match family.parse::<Family>().and_then(|f| RootSystemType::new(f, rank)) {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let sys = match RootSystem::build(ty) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let sa = sorth::sigma_a(&sys);
    let members: Vec<String> = sa.members(&sys).iter().map(|m| m.to_string()).collect();
    let mut fields: Vec<(&str, serde_json::Value)> =
        vec![("type", json!(ty.to_string())), ("size", json!(sa.len())), ("members", json!(members))];
    let mut ok = true;
    if ty.is_a_even() {
        // no tabled set; report the (C1) status of every maximal class instead
        let note = match sorth::verify_anismax(&sys, budget_from_env().ok().flatten().unwrap_or(DEFAULT_ENUM_BUDGET)) {
            Ok(r) if r.clause4 == Some(true) => "every maximal strongly orthogonal class satisfies (C1)".to_string(),
            Ok(r) => {
                ok = false;
                format!("unexpected classification: {r:?}")
            }
            Err(e) => format!("classification skipped: {e}"),
        };
        fields.push(("note", json!(note)));
    } else {
        match sorth::table_sigma_a(&sys) {
            Ok(t) => {
                let tabled: Vec<String> = t.members(&sys).iter().map(|m| m.to_string()).collect();
                fields.push(("table", json!(tabled)));
                match sorth::is_conjugate(&sys, &sa, &t) {
                    Conjugacy::Conjugate { word } if sorth::check_certificate(&sys, &sa, &t, &word) => {
                        let letters: Vec<usize> = word.iter().map(|k| k + 1).collect();
                        fields.push(("conjugate", json!(true)));
                        fields.push(("certificate", json!(letters)));
                    }
                    other => {
                        ok = false;
                        fields.push(("conjugate", json!(false)));
                        fields.push(("certificate", json!(format!("{other:?}"))));
                    }
                }
            }
            Err(e) => fields.push(("table", json!(e.to_string()))),
        }
    }
    let out = match format {
        Format::Json => {
            let obj: serde_json::Map<String, serde_json::Value> =
                fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            serde_json::to_string_pretty(&obj).expect("json") + "\n"
        }
        _ => {
            let mut t = Table::new(&["field", "value"]);
            for (k, v) in fields {
                let s = match v {
                    serde_json::Value::String(s) => s,
                    serde_json::Value::Array(a) => vec_str(
                        &a.iter().map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string)).collect::<Vec<_>>(),
                    ),
                    other => other.to_string(),
                };
                t.push(vec![k.to_string(), s]);
            }
            if format == Format::Csv {
                t.to_csv()
            } else {
                t.to_markdown()
            }
        }
    };
    print!("{out}");
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn verify(suite: SuiteName, q: i64, radius: usize, json_path: Option<PathBuf>, format: Format) -> ExitCode {
    if q < 3 || q % 2 == 0 {
        return usage(format!("q must be an odd integer >= 3, got {q}"));
    }
    if !is_prime_power(q) {
        eprintln!("warning: q = {q} is not a prime power; the combinatorial identities are still checked");
    }
    let budget = match budget_from_env() {
        Ok(b) => b,
        Err(e) => return usage(e),
    };
    let cfg = Config { q, radius, budget };
    let report = match suite {
        SuiteName::All => suites::run_all(&cfg),
        s => suites::run(s.name(), &cfg),
    };
    if let Some(p) = json_path {
        if let Err(e) = std::fs::write(&p, report.to_json() + "\n") {
            eprintln!("error: cannot write {}: {e}", p.display());
            return ExitCode::from(USAGE_ERROR);
        }
    }
    print!("{}", render_report(&report, format));
    let failed = report.failed();
    if failed > 0 {
        eprintln!("{failed} of {} checks failed", report.checks.len());
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::SigmaA { family, rank, format } => sigma_a(&family, rank, format),
        Command::Verify { suite, q, radius, json, format } => verify(suite, q, radius, json, format),
        Command::Tables { sract, eic, r1r2, format } => {
            let mut out = String::new();
            if sract {
                out += &render_table("sract", &tables::sract(), format);
            }
            if eic {
                out += &render_table("eic", &tables::eic(), format);
            }
            if r1r2 {
                out += &render_table("r1r2", &tables::r1r2(), format);
            }
            print!("{out}");
            ExitCode::SUCCESS
        }
    }
}
