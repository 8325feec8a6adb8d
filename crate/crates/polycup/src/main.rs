use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use polycup::ingest::{read_image, Format};
use polycup::pipeline::{cross_check, run, Config, Run, Stage};
use polycup::{digest, obj_string};
use polycup_core::{Chain, Diagonal, Termination};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Build the cubical complex and its boundary surface
    Build,
    /// Build and simplify the surface into polygons
    Simplify,
    /// Compute Betti numbers
    Homology,
    /// Compute the cup product pairing
    Cup,
    /// Run the full pipeline together with every consistency check
    Verify,
    /// Write the polygonal surface and representative 1-cycles as OBJ
    Export,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TerminateArg {
    MinEdges,
    Coplanar,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DiagonalArg {
    Polygon,
    Serre,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Vox3,
}

/// Z2 cohomology and cup products of the boundary surface of a voxel image.
#[derive(Parser, Debug)]
#[command(name = "polycup", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Input voxel image
    #[arg(long)]
    input: PathBuf,
    /// Input format; sniffed from the content when omitted
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum, default_value = "coplanar")]
    terminate: TerminateArg,
    /// Edge bound for min-edges termination
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(3..))]
    min_edges: u64,
    /// `polygon` works on the simplified surface, `serre` on the cubical one
    #[arg(long, value_enum, default_value = "polygon")]
    diagonal: DiagonalArg,
    /// Cross-check against the cubical path and plain rank computation
    #[arg(long)]
    oracle: bool,
    /// Where to write the report (the OBJ for `export`); stdout by default
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write an OBJ export here
    #[arg(long)]
    obj: Option<PathBuf>,
    /// Record wall times in the report instead of zeros
    #[arg(long)]
    timings: bool,
}

enum Failure {
    Usage(String),
    Verification(String),
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let res = match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| format!("stdout: {e}")),
    };
    res.map_err(|e| Failure::Usage(format!("output: {e}")))
}

fn representative_cycles(r: &Run) -> Vec<Chain> {
    let Some(m) = &r.model else { return Vec::new() };
    m.basis(1).into_iter().map(|s| m.representative(s).expect("basis element is a generator")).collect()
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let format = cli.format.map(|f| match f {
        FormatArg::Text => Format::Text,
        FormatArg::Vox3 => Format::Vox3,
    });
    let (bytes, image) = read_image(&cli.input, format).map_err(|e| Failure::Usage(format!("ingest: {e}")))?;
    let config = Config {
        termination: match cli.terminate {
            TerminateArg::Coplanar => Termination::Coplanar,
            TerminateArg::MinEdges => Termination::MinEdges(cli.min_edges as usize),
        },
        diagonal: match cli.diagonal {
            DiagonalArg::Polygon => Diagonal::Polygon,
            DiagonalArg::Serre => Diagonal::Serre,
        },
    };
    let through = match cli.command {
        Command::Build => Stage::Build,
        Command::Simplify => Stage::Simplify,
        Command::Homology => Stage::Homology,
        // export needs the representative cycles
        Command::Export => Stage::Homology,
        Command::Cup | Command::Verify => Stage::Cup,
    };
    let mut r = run(&image, digest(&bytes), config, through).map_err(|e| Failure::Usage(e.to_string()))?;
    let verify = cli.command == Command::Verify;
    if cli.oracle || verify {
        cross_check(&mut r, verify).map_err(|e| Failure::Usage(format!("verify: {e}")))?;
    }
    if !cli.timings {
        r.report = r.report.masked();
    }

    let obj = || obj_string(r.working(), &representative_cycles(&r));
    if cli.command == Command::Export {
        write_out(cli.obj.as_deref().or(cli.output.as_deref()), &obj())?;
    } else {
        if let Some(p) = &cli.obj {
            write_out(Some(p), &obj())?;
        }
        write_out(cli.output.as_deref(), &r.report.to_json())?;
    }

    let failed: Vec<&str> = r.report.checks.iter().filter(|(_, &ok)| !ok).map(|(k, _)| k.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("verify: failed checks: {}", failed.join(", "))))
    }
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
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("polycup: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("polycup: {msg}");
            ExitCode::from(2)
        }
    }
}
