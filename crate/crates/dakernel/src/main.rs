use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use dakernel::commands::{self, Command, Report, Verb};
use dakernel::session::parse_session;

/// Batch front end for difference-algebra computations.
///
/// `dakernel <session> <command> [options]`, or `dakernel lab list` and
/// `dakernel lab verify <ring>`.
#[derive(Parser, Debug)]
#[command(name = "dakernel", version)]
struct Cli {
    /// Session file (`-` for stdin), or `lab`.
    session: String,
    /// solve, adjoint, from-adjoint, dim, pseudoprime, pseudomaximal, radical,
    /// nss-check, glue, ideal-of-points, taylor, sigma-ideal
    command: String,
    /// Patch file for `glue`, point file for `ideal-of-points`, ring for `lab verify`.
    args: Vec<String>,
    /// Extension degree of the coefficient field for point enumeration.
    #[arg(long, default_value_t = 1)]
    ext: u32,
    /// Use a named ideal of the session instead of its equations.
    #[arg(long)]
    ideal: Option<String>,
    /// Factor of the pseudofield for `taylor`.
    #[arg(long, default_value_t = 0)]
    factor: usize,
    /// Group element for `taylor`.
    #[arg(long)]
    sigma: Option<String>,
    /// Frobenius twist for `taylor`.
    #[arg(long, default_value_t = 0)]
    frob: u32,
    /// Compact JSON output (the default).
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Human-readable output.
    #[arg(long)]
    pretty: bool,
}

fn read(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn report(cli: &Cli) -> Report {
    if cli.session == "lab" {
        let mut args = vec![cli.command.clone()];
        args.extend(cli.args.iter().cloned());
        return commands::lab(&args);
    }
    let verb: Verb = match cli.command.parse() {
        Ok(v) => v,
        Err(e) => return Report::error(&cli.command, e),
    };
    let name = verb.as_str();
    let text = match read(&cli.session) {
        Ok(t) => t,
        Err(e) => return Report::error(name, format!("cannot read {}: {e}", cli.session)),
    };
    let session = match parse_session(&text) {
        Ok(s) => s,
        Err(e) => return Report::parse_error(name, &e),
    };
    let mut cmd = Command::new(verb);
    cmd.ext = cli.ext;
    cmd.ideal = cli.ideal.clone();
    cmd.factor = cli.factor;
    cmd.sigma = cli.sigma.clone();
    cmd.frob = cli.frob;
    if verb.needs_input() {
        match cli.args.as_slice() {
            [path] => match read(path) {
                Ok(t) => cmd.input = Some(t),
                Err(e) => return Report::error(name, format!("cannot read {path}: {e}")),
            },
            _ => return Report::error(name, format!("`{name}` takes exactly one input file")),
        }
    } else if !cli.args.is_empty() {
        return Report::error(name, format!("`{name}` takes no extra arguments"));
    }
    commands::execute(&session, &cmd)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let rep = report(&cli);
    if cli.pretty {
        print!("{}", rep.render_pretty());
    } else {
        println!("{}", rep.render_json());
    }
    ExitCode::from(rep.status.exit_code() as u8)
}
