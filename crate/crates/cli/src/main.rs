use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use mutsurf::polyptych::PLPolytope;
use mutsurf::Int;
use mutsurf_cli::{job::Analysis, report, svg, CliError, JobSpec};

#[derive(Parser)]
#[command(
    name = "mutsurf",
    about = "Exact invariants of tropical mutation surfaces",
    version = concat!(env!("CARGO_PKG_VERSION"), " (report schema 1)")
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the analysis pipeline on a job document.
    Analyze {
        /// Path to the JSON job document.
        file: Option<PathBuf>,
        /// Read the job document from standard input.
        #[arg(long)]
        stdin: bool,
        /// Comma-separated subset of analyses to run (overrides the job).
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Render the chart polygons to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze { file, stdin, only, json, svg } => {
            match analyze(file, stdin, only, json, svg) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!(
                        "{}",
                        serde_json::json!({ "error": e.kind(), "message": e.to_string() })
                    );
                    e.exit_code()
                }
            }
        }
    };
    std::process::exit(code);
}

fn analyze(
    file: Option<PathBuf>,
    stdin: bool,
    only: Option<Vec<String>>,
    json_out: Option<PathBuf>,
    svg_out: Option<PathBuf>,
) -> Result<(), CliError> {
    let text = match (file, stdin) {
        (Some(path), false) => std::fs::read_to_string(&path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?,
        (None, true) => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
            buf
        }
        (Some(_), true) => {
            return Err(CliError::Parse("pass either a file or --stdin, not both".into()))
        }
        (None, false) => return Err(CliError::Parse("no job document: pass a file or --stdin".into())),
    };

    let mut job = JobSpec::from_json(&text)?;
    if let Some(only) = only {
        job.analyses = Analysis::parse_list(&only)?;
    }

    let report = report::run(&job)?;
    let rendered = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Internal(mutsurf::Error::Internal(format!("serialize: {e}"))))?;
    match &json_out {
        Some(path) => std::fs::write(path, rendered + "\n")
            .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{rendered}"),
    }

    if let Some(path) = svg_out {
        let constraints: Vec<_> = job
            .constraints
            .iter()
            .map(|(p, level)| (p.clone(), level * Int::from(job.dilate)))
            .collect();
        let polytope = PLPolytope::build(job.s, &constraints).map_err(report::classify)?;
        let doc = svg::render_charts(&polytope);
        std::fs::write(&path, doc)
            .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
