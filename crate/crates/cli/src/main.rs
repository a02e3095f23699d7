mod expr;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maninkit::cochain::{CochainTable, Family, TableKind};
use maninkit::functors::{black, white_direct, white_via_dual};
use maninkit::presentation::{Format, OperadPresentation};
use maninkit::recognize::match_zoo;
use maninkit::verify::{self, Suite};
use maninkit::{zoo, Error};
use serde_json::{json, Value};

use crate::expr::{black_family, parse_exprs, read_file, white_family, Catalog, Expr};

const USAGE_ERROR: u8 = 1;
const VERIFY_FAILURE: u8 = 2;
const INCONSISTENT: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "maninkit", version, about = "Black and white products of binary quadratic operads")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Append the catalog entries the result is isomorphic to.
    #[arg(long, global = true)]
    recognize: bool,
    /// Print the cochain tables used by a product.
    #[arg(long, global = true)]
    dump_tables: bool,
    /// Directory of additional `.op` presentation files.
    #[arg(long, global = true, value_name = "PATH")]
    zoo_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Dual,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Show a catalog entry with its description.
    Show { key: String },
    /// Black product with Ass, Com, right preLie or left preLie.
    Black {
        #[arg(value_parser = ["ass", "com", "prelie", "prelie-left"])]
        family: String,
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// White product with Ass, Lie or Perm.
    White {
        #[arg(value_parser = ["ass", "lie", "perm"])]
        family: String,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Koszul dual.
    Dual {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Free product of two operads.
    Sum {
        #[arg(required = true, num_args = 2..)]
        spec: Vec<String>,
    },
    /// Product of two operads: mixed composites vanish.
    Prod {
        #[arg(required = true, num_args = 2..)]
        spec: Vec<String>,
    },
    /// Polarized operad: every product replaced by its symmetric and antisymmetric parts.
    Adm {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Opposite operad.
    Opp {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Catalog entries isomorphic to the given operad.
    Recognize {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Run the acceptance checks.
    Verify {
        #[arg(value_parser = ["paper", "duality", "adjunction", "all"], default_value = "all")]
        suite: String,
    },
    /// Parse a presentation file and print it back.
    Parse { file: PathBuf },
}

/// What a command produced, before formatting.
struct Outcome {
    presentation: OperadPresentation,
    tables: Vec<CochainTable>,
    notes: Vec<String>,
}

impl Outcome {
    fn plain(presentation: OperadPresentation) -> Self {
        Outcome {
            presentation,
            tables: vec![],
            notes: vec![],
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. }
            | Error::Arity { .. }
            | Error::UnknownOperad { .. }
            | Error::UnknownGenerator(_)
            | Error::Io(_) => USAGE_ERROR,
            _ => INCONSISTENT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn one(spec: &[String]) -> Result<Expr, Failure> {
    Ok(parse_exprs(spec, 1)?.remove(0))
}

fn two(spec: &[String]) -> Result<(Expr, Expr), Failure> {
    let mut e = parse_exprs(spec, 2)?;
    let b = e.pop().expect("two expressions");
    Ok((e.pop().expect("two expressions"), b))
}

fn black_tables(family: Family, o: &OperadPresentation) -> Result<Vec<CochainTable>, Error> {
    let kind = match family {
        Family::PreLieRBlack => TableKind::BlackPreLieR,
        Family::PreLieLBlack => TableKind::BlackPreLieL,
        _ => TableKind::BlackAss,
    };
    Ok(vec![CochainTable::black(kind, &o.signature)?])
}

fn compute(cli: &Cli, catalog: &Catalog) -> Result<Outcome, Failure> {
    let eval = |e: &Expr| catalog.eval(e).map_err(Failure::from);
    Ok(match &cli.command {
        Command::Show { key } => {
            let mut out = Outcome::plain(catalog.resolve(key)?);
            if let Some(entry) = zoo::entry(key) {
                out.notes.push(entry.description.to_string());
            }
            out
        }
        Command::Black { family, spec } => {
            let family = black_family(family).expect("checked by clap");
            let o = eval(&one(spec)?)?;
            Outcome {
                presentation: black(family, &o)?,
                tables: black_tables(family, &o)?,
                notes: vec![],
            }
        }
        Command::White { family, method, spec } => {
            let family = white_family(family).expect("checked by clap");
            let o = eval(&one(spec)?)?;
            let tables = vec![CochainTable::white(family, &o.signature)?];
            let (presentation, notes) = match method {
                Method::Direct => (white_direct(family, &o)?, vec![]),
                Method::Dual => (white_via_dual(family, &o)?, vec![]),
                Method::Both => {
                    let d = white_direct(family, &o)?;
                    let v = white_via_dual(family, &o)?;
                    if !d.same_relations(&v) {
                        return Err(Failure {
                            code: INCONSISTENT,
                            message: format!(
                                "white product methods disagree: direct has {} relations, via dual {}",
                                d.relation_dim(),
                                v.relation_dim()
                            ),
                        });
                    }
                    (d, vec!["direct and via-dual methods agree".to_string()])
                }
            };
            Outcome {
                presentation,
                tables,
                notes,
            }
        }
        Command::Dual { spec } => Outcome::plain(eval(&Expr::Dual(Box::new(one(spec)?)))?),
        Command::Adm { spec } => Outcome::plain(eval(&Expr::Adm(Box::new(one(spec)?)))?),
        Command::Opp { spec } => Outcome::plain(eval(&Expr::Opp(Box::new(one(spec)?)))?),
        Command::Recognize { spec } => Outcome::plain(eval(&one(spec)?)?),
        Command::Sum { spec } => {
            let (a, b) = two(spec)?;
            Outcome::plain(eval(&Expr::Sum(Box::new(a), Box::new(b)))?)
        }
        Command::Prod { spec } => {
            let (a, b) = two(spec)?;
            Outcome::plain(eval(&Expr::Prod(Box::new(a), Box::new(b)))?)
        }
        Command::Parse { file } => Outcome::plain(read_file(file)?),
        Command::Verify { .. } => unreachable!("handled separately"),
    })
}

fn matches_of(o: &OperadPresentation) -> Result<(Vec<Value>, Vec<String>, Vec<String>), Failure> {
    let (found, skipped) = match_zoo(o, None)?;
    let lines = found.iter().map(|m| m.describe(&o.signature)).collect();
    let values = found
        .iter()
        .map(|m| {
            json!({
                "key": m.key,
                "transforms": m
                    .transforms
                    .iter()
                    .map(|t| t.display(&m.candidate.signature, &o.signature))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok((values, lines, skipped))
}

fn render(cli: &Cli, outcome: &Outcome, out: &mut impl Write) -> Result<(), Failure> {
    let o = &outcome.presentation;
    let recognize = cli.recognize || matches!(cli.command, Command::Recognize { .. });
    let (match_values, match_lines, skipped) = if recognize {
        matches_of(o)?
    } else {
        (vec![], vec![], vec![])
    };
    // A closed pipe (as with `| head`) ends output quietly.
    let io = |e: io::Error| Failure {
        code: if e.kind() == io::ErrorKind::BrokenPipe { 0 } else { INCONSISTENT },
        message: e.to_string(),
    };
    match cli.format {
        OutputFormat::Json => {
            let mut value = json!({ "presentation": o.to_json() });
            if recognize {
                value["matches"] = Value::Array(match_values);
                value["skipped"] = json!(skipped);
            }
            if !outcome.notes.is_empty() {
                value["notes"] = json!(outcome.notes);
            }
            if cli.dump_tables {
                value["tables"] = json!(outcome.tables.iter().map(|t| t.dump()).collect::<Vec<_>>());
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable")).map_err(io)?;
        }
        OutputFormat::Text | OutputFormat::Latex => {
            let comment = if cli.format == OutputFormat::Text { "#" } else { "%" };
            let (p, q, r) = o.pqr();
            writeln!(out, "{comment} {}", o.name).map_err(io)?;
            for note in &outcome.notes {
                writeln!(out, "{comment} {note}").map_err(io)?;
            }
            writeln!(
                out,
                "{comment} generators: {p} non-symmetric, {q} symmetric, {r} antisymmetric; arity 3: ambient {}, relations {}",
                o.dim3(),
                o.relation_dim()
            )
            .map_err(io)?;
            let format = if cli.format == OutputFormat::Text { Format::Text } else { Format::Latex };
            write!(out, "{}", o.render(format)).map_err(io)?;
            if recognize {
                if match_lines.is_empty() {
                    writeln!(out, "{comment} no catalog entry matches").map_err(io)?;
                }
                for line in &match_lines {
                    writeln!(out, "{comment} matches {line}").map_err(io)?;
                }
                for key in &skipped {
                    writeln!(out, "{comment} skipped {key}: too many generator transforms").map_err(io)?;
                }
            }
            if cli.dump_tables {
                for t in &outcome.tables {
                    for line in t.dump().lines() {
                        writeln!(out, "{comment} {line}").map_err(io)?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn run_verify(cli: &Cli, suite: &str, out: &mut impl Write) -> io::Result<u8> {
    let suite: Suite = suite.parse().expect("checked by clap");
    let reports = verify::run(suite);
    let passed = reports.iter().all(|r| r.passed());
    match cli.format {
        OutputFormat::Json => {
            let value = json!({ "passed": passed, "criteria": reports });
            writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable"))?;
        }
        _ => {
            for r in &reports {
                writeln!(out, "{}", r.summary())?;
            }
            let ok = reports.iter().filter(|r| r.passed()).count();
            writeln!(out, "{ok} of {} criteria pass", reports.len())?;
        }
    }
    Ok(if passed { 0 } else { VERIFY_FAILURE })
}

fn report_failure(format: OutputFormat, f: &Failure) {
    if format == OutputFormat::Json {
        let value = json!({ "error": { "code": f.code, "message": f.message } });
        let _ = writeln!(io::stdout(), "{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        eprintln!("error: {}", f.message);
    }
}

/// Runs one invocation and returns its exit code.
fn run(argv: impl IntoIterator<Item = String>) -> u8 {
    let argv: Vec<String> = argv.into_iter().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let json = argv.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
                || argv.iter().any(|a| a == "--format=json");
            if json && code != 0 {
                let first = e.to_string().lines().next().unwrap_or_default().to_string();
                report_failure(OutputFormat::Json, &Failure { code, message: first });
            } else {
                let _ = e.print();
            }
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Command::Verify { suite } = &cli.command {
        return run_verify(&cli, suite, &mut out).unwrap_or(INCONSISTENT);
    }
    let result = Catalog::with_dir(cli.zoo_dir.as_deref())
        .map_err(Failure::from)
        .and_then(|catalog| compute(&cli, &catalog))
        .and_then(|outcome| render(&cli, &outcome, &mut out));
    match result {
        Ok(()) => 0,
        Err(f) if f.code == 0 => 0,
        Err(f) => {
            report_failure(cli.format, &f);
            f.code
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args()))
}
