use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use stgeom::{gallery, rational, Poly, Rational};

use stgeom_cli::commands::{self, file_out, Op, Output};
use stgeom_cli::failure::{self, Failure, USAGE};
use stgeom_cli::structure::{self, StructureFile};

/// Exact computations on left-invariant almost contact metric and
/// Hermitian structures read from TOML files.
#[derive(Parser, Debug)]
#[command(name = "stgeom", version)]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Files {
    /// Structure files, processed independently.
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure equations, normality, Killing and ST checks.
    Validate(Files),
    /// Torsion class, SST and balanced flags.
    Classify(Files),
    /// Torsion 3-form of the ST connection, or KT torsion of a Hermitian file.
    Torsion(Files),
    /// Nonzero entries of the ST connection.
    Connection(Files),
    /// Lee form.
    Lee(Files),
    /// Ricci tensor, d*c, dc and curvature of the ST connection.
    FieldEq(Files),
    /// Holonomy algebra of the ST connection.
    Holonomy(Files),
    /// KT torsion and Lee form of the cylinder.
    Cylinder(Files),
    /// Torsion of the Riemannian cone and whether it is closed.
    Cone(Files),
    /// Torsion of the warped product dr² + f(r)²g.
    Warp {
        /// Warping function, a polynomial in r such as "2*r + 1".
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        f: Poly,
        #[command(flatten)]
        files: Files,
    },
    /// Transversal homothety with parameter a.
    Homothety {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        a: Rational,
        #[command(flatten)]
        files: Files,
    },
    /// Constant conformal change with factor λ².
    Conformal {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lam2: Rational,
        #[command(flatten)]
        files: Files,
    },
    /// ST structure on the central extension of a Hermitian file by sigma.
    Extend {
        /// 2-form file with the curvature form.
        #[arg(long)]
        sigma: PathBuf,
        #[command(flatten)]
        files: Files,
    },
    /// ST structure on a 2-torus extension of an ST file.
    TorusExtend {
        #[arg(long)]
        sigma1: PathBuf,
        #[arg(long)]
        sigma2: PathBuf,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        s: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        t: Rational,
        #[command(flatten)]
        files: Files,
    },
    /// Print a built-in example as a structure file.
    Example {
        #[arg(long, value_parser = PossibleValuesParser::new(gallery::NAMES.iter().copied()))]
        name: String,
    },
    /// Validation, classification, torsion, connection, Lee form and field
    /// equations in one go.
    Report(Files),
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn parse_poly(s: &str) -> Result<Poly, String> {
    s.parse().map_err(|e: stgeom::Error| e.to_string())
}

impl Command {
    fn split(self) -> Result<(Op, Vec<PathBuf>), String> {
        Ok(match self {
            Command::Validate(f) => (Op::Validate, f.files),
            Command::Classify(f) => (Op::Classify, f.files),
            Command::Torsion(f) => (Op::Torsion, f.files),
            Command::Connection(f) => (Op::Connection, f.files),
            Command::Lee(f) => (Op::Lee, f.files),
            Command::FieldEq(f) => (Op::FieldEq, f.files),
            Command::Holonomy(f) => (Op::Holonomy, f.files),
            Command::Cylinder(f) => (Op::Cylinder, f.files),
            Command::Cone(f) => (Op::Cone, f.files),
            Command::Warp { f, files } => (Op::Warp(f), files.files),
            Command::Homothety { a, files } => (Op::Homothety(a), files.files),
            Command::Conformal { lam2, files } => (Op::Conformal(lam2), files.files),
            Command::Extend { sigma, files } => (Op::Extend(sigma), files.files),
            Command::TorusExtend {
                sigma1,
                sigma2,
                s,
                t,
                files,
            } => (Op::TorusExtend { sigma1, sigma2, s, t }, files.files),
            Command::Report(f) => (Op::Report, f.files),
            Command::Example { name } => return Err(name),
        })
    }
}

fn process(op: &Op, path: &Path) -> Result<Output, Failure> {
    let parsed = structure::parse_path(path)?;
    commands::run(op, &parsed)
}

fn emit(json: bool, command: &str, results: Vec<(String, Result<Output, Failure>)>) -> ExitCode {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut code = 0;
    let many = results.len() > 1;
    let mut docs = Vec::new();
    for (file, result) in results {
        match result {
            Ok(o) if json => {
                let mut m = Map::new();
                m.insert("file".into(), file.into());
                m.extend(o.json);
                docs.push(Value::Object(m));
            }
            Ok(o) => {
                if many {
                    let _ = writeln!(out, "== {file} ==");
                }
                let _ = out.write_all(o.text.as_bytes());
            }
            Err(e) => {
                eprintln!("stgeom: {file}: {e}");
                if json {
                    docs.push(json!({
                        "file": file,
                        "error": {"exit_code": e.code, "message": e.message},
                    }));
                }
                if code == 0 {
                    code = e.code;
                }
            }
        }
    }
    if json {
        let doc = json!({"format": 1, "command": command, "results": docs});
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
    }
    let _ = out.flush();
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (op, files) = match cli.command.split() {
        Ok(split) => split,
        Err(name) => {
            let s = gallery::by_name(&name).expect("name checked by the parser");
            let o = file_out(&StructureFile::from_acm(&s, Some(&name)));
            return emit(cli.json, "example", vec![(name, Ok(o))]);
        }
    };
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|path| scope.spawn(|| process(&op, path)))
            .collect();
        files
            .iter()
            .zip(handles)
            .map(|(path, h)| {
                let r = h.join().unwrap_or_else(|_| {
                    Err(Failure {
                        code: failure::INVARIANT,
                        message: "internal error".into(),
                    })
                });
                (path.display().to_string(), r)
            })
            .collect()
    });
    emit(cli.json, op.name(), results)
}
