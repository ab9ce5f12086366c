use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use butterfly_core::demo::worked_example;
use butterfly_core::engine::Claim;
use butterfly_core::field::Backend;
use butterfly_core::fuzz::{run_fuzz, CampaignConfig};
use butterfly_core::render::render_instance;
use butterfly_core::run::run_scenario_text;
use butterfly_core::scenario::{parse_scenario, AnyScenario};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "butterfly",
    version,
    about = "Exact checks of butterfly configurations on conics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks a scenario file declares.
    ///
    /// Exit status: 0 when every check holds, 1 when one is violated,
    /// 2 for degenerate checks or bad input.
    Verify {
        file: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate and check seeded random scenarios.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value = "gauss")]
        backend: Backend,
        #[arg(long, default_value_t = 50)]
        height: u64,
        /// Comma-separated checks.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "mono,jap,nut,sack,pascal,damn,cutl"
        )]
        checks: Vec<Claim>,
        /// Use real scalars only.
        #[arg(long)]
        real: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        workers: Option<usize>,
        /// Write the record stream here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print only the summary line.
        #[arg(long)]
        summary_only: bool,
        /// Where a violating scenario is saved for replay with `verify`.
        #[arg(long, default_value = ".")]
        replay_dir: PathBuf,
    },
    /// Print a worked example end to end.
    Demo {
        #[arg(value_enum)]
        example: Example,
    },
    /// Draw the first check of a scenario file as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Lemma1,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify { file, out } => verify(&file, out.as_deref()),
        Command::Fuzz {
            seed,
            count,
            backend,
            height,
            checks,
            real,
            workers,
            out,
            summary_only,
            replay_dir,
        } => {
            let mut config = CampaignConfig::new(seed, count, backend, height, checks);
            config.real = real;
            let pool = match rayon::ThreadPoolBuilder::new()
                .num_threads(workers.unwrap_or(0))
                .build()
            {
                Ok(p) => p,
                Err(e) => return fail(&e.to_string()),
            };
            pool.install(|| fuzz(&config, out.as_deref(), summary_only, &replay_dir))
        }
        Command::Demo {
            example: Example::Lemma1,
        } => match worked_example() {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e.to_string()),
        },
        Command::Render { file, out } => render(&file, &out),
    }
}

fn fail(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(file: &Path, out: Option<&Path>) -> ExitCode {
    let text = match read(file) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let outcome = run_scenario_text(&text);
    if let Err(e) = write_or_print(out, &outcome.report()) {
        return fail(&e);
    }
    ExitCode::from(outcome.status.exit_code() as u8)
}

fn fuzz(
    config: &CampaignConfig,
    out: Option<&Path>,
    summary_only: bool,
    replay_dir: &Path,
) -> ExitCode {
    let sink: Box<dyn Write> = match out {
        Some(path) => match fs::File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => return fail(&format!("{}: {e}", path.display())),
        },
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    let mut io_error = None;
    let started = Instant::now();
    let summary = run_fuzz(config, |record| {
        if !summary_only && io_error.is_none() {
            io_error = writeln!(sink, "{}", record.to_json()).err();
        }
    });
    let elapsed = started.elapsed();
    if let Some(e) = io_error
        .or_else(|| writeln!(sink, "{}", summary.to_json()).err())
        .or_else(|| sink.flush().err())
    {
        return fail(&e.to_string());
    }
    eprintln!(
        "{} scenarios in {:.2}s: {} HOLDS, {} DEGENERATE, {} VIOLATED, {} at retry cap, {} retries",
        summary.evaluated,
        elapsed.as_secs_f64(),
        summary.counts.holds,
        summary.counts.degenerate,
        summary.counts.violated,
        summary.counts.exhausted,
        summary.counts.retries,
    );
    match summary.violation {
        None => ExitCode::SUCCESS,
        Some(v) => {
            let path = replay_dir.join(format!("replay-seed{}-{}.scn", config.seed, v.index));
            let replay = v.replay.unwrap_or_default();
            match fs::write(&path, replay) {
                Ok(()) => eprintln!(
                    "violation at scenario {}; replay with: butterfly verify {}",
                    v.index,
                    path.display()
                ),
                Err(e) => eprintln!(
                    "violation at scenario {}; could not save replay: {e}",
                    v.index
                ),
            }
            ExitCode::from(1)
        }
    }
}

fn render(file: &Path, out: &Path) -> ExitCode {
    let text = match read(file) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let instance = match parse_scenario(&text) {
        Ok(AnyScenario::Gauss(f)) => match f.instances() {
            Ok(mut v) if !v.is_empty() => v.remove(0),
            Ok(_) => return fail("the scenario declares no check"),
            Err(e) => return fail(&e.to_string()),
        },
        Ok(AnyScenario::Prime(_)) => {
            return fail("figures need the gauss backend; prime field points have no position")
        }
        Err(e) => return fail(&e.to_string()),
    };
    match render_instance(&instance) {
        Ok(svg) => match fs::write(out, svg) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&format!("{}: {e}", out.display())),
        },
        Err(e) => fail(&e.to_string()),
    }
}
