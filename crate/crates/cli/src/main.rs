use std::fmt::Write as _;
use std::io::{ErrorKind, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matroidforge_core::analysis::{eulerian_report, is_cographic, is_graphic};
use matroidforge_core::campaign::{
    verify_lemmas, verify_main_theorem, verify_minimal_catalog, LemmaCampaign, RunOptions, TheoremCampaign,
};
use matroidforge_core::catalog::{find, load_catalog_unchecked, parse_graph};
use matroidforge_core::splitting::{element_split, fresh_label, split};
use matroidforge_core::{BinaryMatroid, Error, Execution, VerificationReport};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "matroidforge",
    version,
    about = "Binary matroids, element splitting and verification campaigns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarise a matroid (.bm), a graph (.json) or a catalog entry by name.
    Info {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write the splitting matroid M_{x,y}, or M'_{x,y} with --element.
    Split {
        input: String,
        x: String,
        y: String,
        /// Add the new element `a` (element splitting).
        #[arg(long)]
        element: bool,
        /// Label for the new element; defaults to the first free of a, a1, a2, ...
        #[arg(long, requires = "element")]
        label: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the splitting properties over all small connected graphs.
    VerifyLemmas {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10)]
        max_simple_edges: usize,
        #[arg(long, default_value_t = 8)]
        max_multi_edges: usize,
        #[arg(long, default_value_t = 2)]
        max_multiplicity: usize,
        /// Corrupt every element split by one bit; the campaign must fail.
        #[arg(long, hide = true)]
        inject_mutant: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the minimal graphs of the catalog.
    VerifyMinimal {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the M(K4)-minor characterisation over enumerated graphs.
    VerifyTheorem {
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10)]
        max_edges: usize,
        #[arg(long, default_value_t = 2)]
        max_multiplicity: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Re-render a saved JSON report (`-` reads standard input).
    Report {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall_time in the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
    /// No progress on standard error.
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded(_) | Error::GroundSetTooLarge { .. } | Error::TooManyColumns(_) | Error::TooManyEdges(_) => {
            3
        }
        Error::TranscriptionInvalid { .. } => 1,
        _ => 2,
    }
}

fn dispatch(command: Command) -> Result<u8, Error> {
    match command {
        Command::Info { input, format } => info(&input, format),
        Command::Split {
            input,
            x,
            y,
            element,
            label,
            out,
        } => split_cmd(&input, &x, &y, element, label, out.as_deref()),
        Command::VerifyLemmas {
            max_vertices,
            max_simple_edges,
            max_multi_edges,
            max_multiplicity,
            inject_mutant,
            run,
        } => {
            let campaign = LemmaCampaign {
                max_vertices,
                max_simple_edges,
                max_multi_edges,
                max_multiplicity,
                inject_mutant,
            };
            campaign_cmd("verify-lemmas", &run, |opts| verify_lemmas(&campaign, opts))
        }
        Command::VerifyMinimal { run } => campaign_cmd("verify-minimal", &run, verify_minimal_catalog),
        Command::VerifyTheorem {
            max_vertices,
            max_edges,
            max_multiplicity,
            run,
        } => {
            let campaign = TheoremCampaign {
                max_vertices,
                max_edges,
                max_multiplicity,
            };
            campaign_cmd("verify-theorem", &run, |opts| verify_main_theorem(&campaign, opts))
        }
        Command::Report { input, format, out } => {
            let text = if input == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(&input)?
            };
            let report = VerificationReport::from_json(&text)?;
            emit(&report, format, out.as_deref())?;
            Ok(verdict_code(&report))
        }
    }
}

/// A `.bm` file, a graph `.json` file, or the name of a catalog entry.
fn load_matroid(input: &str) -> Result<BinaryMatroid, Error> {
    let path = Path::new(input);
    if !path.exists() {
        let entries = load_catalog_unchecked()?;
        return match find(&entries, input) {
            Some(entry) => entry.matroid(),
            None => Err(Error::Io(format!("{input}: no such file or catalog entry"))),
        };
    }
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => parse_graph(&text)?.cycle_matroid(),
        _ => BinaryMatroid::parse_bm(&text),
    }
}

fn census_text(m: &BinaryMatroid) -> Result<String, Error> {
    let census = m.circuits()?.census();
    if census.is_empty() {
        return Ok("none".into());
    }
    Ok(census
        .iter()
        .map(|(size, count)| format!("{count}×{size}"))
        .collect::<Vec<_>>()
        .join(" + "))
}

fn info(input: &str, format: Format) -> Result<u8, Error> {
    let m = load_matroid(input)?;
    let graphic = is_graphic(&m)?;
    let cographic = is_cographic(&m)?;
    let euler = eulerian_report(&m)?;
    let pairs = |v: Vec<(String, String)>| v.into_iter().map(|(a, b)| format!("{{{a},{b}}}")).collect::<Vec<_>>();
    let mut text = String::new();
    match format {
        Format::Json => {
            let value = json!({
                "elements": m.len(),
                "rank": m.rank(),
                "circuit_census": m.circuits()?.census(),
                "loops": m.loops(),
                "coloops": m.coloops(),
                "parallel_pairs": m.parallel_pairs(),
                "series_pairs": m.series_pairs(),
                "graphic": graphic,
                "cographic": cographic,
                "eulerian": euler,
            });
            text.push_str(&serde_json::to_string_pretty(&value).expect("json value serializes"));
            text.push('\n');
        }
        Format::Text => {
            let flag = |holds: bool, name: &str| if holds { name.to_string() } else { format!("not {name}") };
            let _ = writeln!(
                text,
                "{} elements, rank {}, circuits: {}, {}, {}, {}",
                m.len(),
                m.rank(),
                census_text(&m)?,
                flag(graphic.holds, "graphic"),
                flag(cographic.holds, "cographic"),
                flag(euler.partition.is_some(), "Eulerian"),
            );
            let list = |v: Vec<String>| if v.is_empty() { "none".to_string() } else { v.join(" ") };
            let _ = writeln!(text, "loops: {}", list(m.loops()));
            let _ = writeln!(text, "coloops: {}", list(m.coloops()));
            let _ = writeln!(text, "parallel pairs: {}", list(pairs(m.parallel_pairs())));
            let _ = writeln!(text, "series pairs: {}", list(pairs(m.series_pairs())));
            for (name, c) in [("graphic", &graphic), ("cographic", &cographic)] {
                if let Some(ob) = &c.obstruction {
                    let _ = writeln!(text, "not {name}: {} minor", ob.name);
                }
            }
        }
    }
    write_stdout(&text)?;
    Ok(0)
}

fn split_cmd(
    input: &str,
    x: &str,
    y: &str,
    element: bool,
    label: Option<String>,
    out: Option<&Path>,
) -> Result<u8, Error> {
    let m = load_matroid(input)?;
    let result = if element {
        let a = label.unwrap_or_else(|| fresh_label(&m));
        element_split(&m, &[x, y], &a)?
    } else {
        split(&m, x, y)?
    };
    let delta = result.rank() as i64 - m.rank() as i64;
    let summary = format!("rank {} -> {} ({delta:+})", m.rank(), result.rank());
    match out {
        Some(path) => {
            std::fs::write(path, result.to_bm_string())?;
            println!("{summary}");
        }
        None => {
            write_stdout(&result.to_bm_string())?;
            eprintln!("{summary}");
        }
    }
    Ok(0)
}

fn campaign_cmd(
    name: &str,
    args: &RunArgs,
    go: impl FnOnce(&RunOptions<'_>) -> Result<VerificationReport, Error>,
) -> Result<u8, Error> {
    let progress = |done: usize, total: usize| {
        let step = (total / 20).max(1);
        if done.is_multiple_of(step) || done == total {
            eprint!("\r{name}: {done}/{total}");
            if done == total {
                eprintln!();
            }
        }
    };
    let execution = match args.jobs {
        Some(1) => Execution::Sequential,
        _ => Execution::Parallel,
    };
    let options = RunOptions {
        execution,
        jobs: args.jobs,
        progress: if args.quiet { None } else { Some(&progress) },
        timing: args.timing,
    };
    let report = go(&options)?;
    emit(&report, args.format, args.out.as_deref())?;
    Ok(verdict_code(&report))
}

fn verdict_code(report: &VerificationReport) -> u8 {
    if report.verdict.is_pass() {
        0
    } else {
        1
    }
}

fn emit(report: &VerificationReport, format: Format, out: Option<&Path>) -> Result<(), Error> {
    let text = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => write_stdout(&text)?,
    }
    Ok(())
}

/// Write to stdout; a closed pipe (e.g. `| head`) is not an error.
fn write_stdout(text: &str) -> Result<(), Error> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}
