use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use pgalois::commands::{emit_report, generate, run, write_fixtures, Command, RunOptions};
use pgalois::instance::{parse_instance, parse_subring, subring_from_doc};
use pgalois::Error;

/// Certify partial Galois theory identities on small instances.
#[derive(Debug, Parser)]
#[command(name = "pgalois", version)]
struct Args {
    /// validate, galois, dual, frobenius, morita, dashboard, generate or fixtures.
    command: String,
    /// Instance file; for `fixtures`, the output directory.
    path: PathBuf,
    /// Subring file `{"basis": [...]}` used as B instead of the invariants.
    #[arg(long)]
    subring: Option<PathBuf>,
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock time in the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

fn read(path: &Path) -> Result<String, Error> {
    Ok(std::fs::read_to_string(path)?)
}

fn deliver(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn execute(args: &Args) -> Result<i32, Error> {
    let command: Command = args.command.parse()?;
    let start = Instant::now();
    match command {
        Command::Fixtures => {
            let mut listing = String::new();
            for p in write_fixtures(&args.path)? {
                listing.push_str(&format!("{}\n", p.display()));
            }
            deliver(&listing, args.out.as_deref())?;
            Ok(0)
        }
        Command::Generate => {
            let doc = parse_instance(&read(&args.path)?)?;
            deliver(&generate(&doc)?.to_text(), args.out.as_deref())?;
            Ok(0)
        }
        _ => {
            let inst = parse_instance(&read(&args.path)?)?.build()?;
            let subring = match &args.subring {
                Some(p) => Some(subring_from_doc(inst.pa.algebra(), &parse_subring(&read(p)?)?)?),
                None => None,
            };
            let mut rep = run(command, &inst, &RunOptions { subring })?;
            if args.timing {
                let ms = start.elapsed().as_secs_f64() * 1e3;
                rep.timing = Some([("total_ms".to_string(), ms)].into_iter().collect());
            }
            deliver(&emit_report(&rep)?, args.out.as_deref())?;
            Ok(rep.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(2)
        }
    }
}
