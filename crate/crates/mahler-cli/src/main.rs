use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mahler_cli::document::OutputFormat;
use mahler_cli::jobs::{run_job, JobSpec};
use mahler_cli::CliError;

/// Exact-arithmetic toolkit for Mahler equations: order-one classification,
/// telescoper and isomonodromy solvers, hypertranscendence certificates, and
/// truncated-series tooling.
#[derive(Parser, Debug)]
#[command(name = "mahler", version, about)]
struct Cli {
    /// Output rendering: one key-value line per field, or a single line.
    #[arg(long, global = true, value_enum, default_value = "document")]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    #[command(flatten)]
    Job(JobSpec),
    /// Run a file of job lines concurrently with isolated outputs.
    Batch(BatchArgs),
}

#[derive(Args, Debug)]
struct BatchArgs {
    /// File with one job invocation per line (same syntax as the CLI,
    /// without the leading program name).
    #[arg(long)]
    jobs: PathBuf,
    /// Write each job's document to `<out-dir>/job-<k>.txt` instead of stdout.
    #[arg(long = "out-dir")]
    out_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprint!("error.code = {}\nerror.message = {}\n", err.code(), err);
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Job(spec) => {
            let doc = run_job(spec)?;
            Ok(doc.render(cli.format))
        }
        Command::Batch(args) => run_batch(args, cli.format),
    }
}

fn run_batch(args: &BatchArgs, format: OutputFormat) -> Result<String, CliError> {
    let text = std::fs::read_to_string(&args.jobs)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", args.jobs.display())))?;
    let lines: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect();

    // Parse everything up front so a bad line fails the whole batch early.
    let mut specs = Vec::with_capacity(lines.len());
    for line in &lines {
        let words = split_job_line(line)?;
        let mut argv = vec!["mahler".to_string()];
        argv.extend(words);
        let parsed = Cli::try_parse_from(&argv)
            .map_err(|e| CliError::BadArgs(format!("batch line `{line}`: {e}")))?;
        match parsed.command {
            Command::Job(spec) => specs.push(spec),
            Command::Batch(_) => {
                return Err(CliError::BadArgs(
                    "batch files cannot contain batch jobs".into(),
                ))
            }
        }
    }

    // Jobs are independent and pure; run them concurrently and emit the
    // results in input order.
    let results: Vec<Result<String, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|spec| scope.spawn(move || run_job(spec).map(|d| d.render(format))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("job thread panicked"))
            .collect()
    });

    let mut out = String::new();
    for (k, result) in results.into_iter().enumerate() {
        let body = match result {
            Ok(doc) => doc,
            Err(e) => format!("error.code = {}\nerror.message = {}\n", e.code(), e),
        };
        match &args.out_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)
                    .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
                let path = dir.join(format!("job-{k}.txt"));
                std::fs::write(&path, &body)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
                out.push_str(&format!("batch.job.{k} = {}\n", path.display()));
            }
            None => {
                out.push_str(&format!("batch.job.{k}.line = {}\n", lines[k]));
                out.push_str(&body);
            }
        }
    }
    Ok(out)
}

/// Minimal shell-like splitting: whitespace separates words, single or double
/// quotes group them.
fn split_job_line(line: &str) -> Result<Vec<String>, CliError> {
    let mut words = Vec::new();
    let mut cur = String::new();
    let mut quote: Option<char> = None;
    let mut has_word = false;
    for c in line.chars() {
        match quote {
            Some(q) => {
                if c == q {
                    quote = None;
                } else {
                    cur.push(c);
                }
            }
            None => match c {
                '\'' | '"' => {
                    quote = Some(c);
                    has_word = true;
                }
                c if c.is_whitespace() => {
                    if has_word {
                        words.push(std::mem::take(&mut cur));
                        has_word = false;
                    }
                }
                c => {
                    cur.push(c);
                    has_word = true;
                }
            },
        }
    }
    if quote.is_some() {
        return Err(CliError::BadArgs(format!("unbalanced quote in `{line}`")));
    }
    if has_word {
        words.push(cur);
    }
    Ok(words)
}
