use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use formdual::catalog;
use formdual::lifts::{hodge_dual_lift, trivial_lift};
use formdual::report::Format;
use formdual::symmetry::z8_analysis;
use formdual::verify::{self, SUITES};
use formdual::spectral::perfectness;
use formdual::{build_duality_operator, spectrum, Error};

#[derive(Parser)]
#[command(name = "formdual", version, about = "Exact duality operators on k-forms and their spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog forms, or dump one as JSON.
    Catalog {
        #[arg(long, value_name = "NAME")]
        dump: Option<String>,
    },
    /// Build b_Omega on Lambda^k and emit it as sparse triplet JSON.
    Operator {
        #[arg(long)]
        form: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Exact spectral report of b_Omega on Lambda^k.
    Spectrum {
        #[arg(long)]
        form: String,
        #[arg(long)]
        k: usize,
        /// Also check the result against the verification suites' expectation.
        #[arg(long)]
        expect_suite: bool,
    },
    /// Lift a catalog form to a higher dimension.
    Lift {
        #[arg(long)]
        form: String,
        #[arg(long)]
        to: usize,
        /// Hodge-dual lift instead of the trivial one.
        #[arg(long)]
        dual: bool,
    },
    /// Z_8 analysis on Lambda^k R^8.
    Z8 {
        #[arg(long)]
        k: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: Cli) -> formdual::Result<bool> {
    match cli.command {
        Command::Catalog { dump: Some(name) } => {
            println!("{}", pretty(&serde_json::to_value(catalog::lookup(&name)?.form.to_json()).expect("json")));
        }
        Command::Catalog { dump: None } => {
            println!("{:<14} {:>3} {:>3} {:>6}  note", "name", "D", "l", "terms");
            for e in catalog::catalog() {
                println!("{:<14} {:>3} {:>3} {:>6}  {}", e.name, e.dim, e.form.degree(), e.form.len(), e.note);
            }
        }
        Command::Operator { form, k, out } => {
            let entry = catalog::lookup(&form)?;
            let d = build_duality_operator(&entry.form, &form, k)?;
            let s = d.op.to_json_string();
            match out {
                Some(path) => std::fs::write(&path, s + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
                None => println!("{s}"),
            }
        }
        Command::Spectrum { form, k, expect_suite } => {
            let entry = catalog::lookup(&form)?;
            let d = build_duality_operator(&entry.form, &format!("b_{form} k={k}"), k)?;
            let mut report = spectrum(&d.op, None)?;
            if let Some(n) = verify::irreducible_count(&form, k) {
                perfectness(&mut report, n);
            }
            if !expect_suite {
                println!("{}", pretty(&report.to_json()));
                return Ok(true);
            }
            let outcome = verify::check_expected(&form, k, &d.op)?;
            println!("{}", pretty(&json!({ "spectrum": report.to_json(), "expectation": outcome.to_json() })));
            return Ok(outcome.passed());
        }
        Command::Lift { form, to, dual } => {
            let f = catalog::lookup(&form)?.form;
            let lifted = if dual { hodge_dual_lift(&f, to)? } else { trivial_lift(&f, to)? };
            println!("{}", pretty(&serde_json::to_value(lifted.to_json()).expect("json")));
        }
        Command::Z8 { k } => {
            println!("{}", pretty(&z8_analysis(k)?.to_json()));
        }
        Command::Verify { suite, format } => {
            let outcome = verify::run_suite(&suite)?;
            let format = match format {
                OutFormat::Text => Format::Text,
                OutFormat::Json => Format::Json,
            };
            print!("{}", outcome.render(format));
            return Ok(outcome.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    formdual::configure_threads();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::Domain(_) | Error::Parse(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
