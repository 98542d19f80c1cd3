use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rmprod::registry::{DecodeMode, DecoderRegistry};
use rmprod::sim::{self, OutputFormat, SimConfig, StoppingRule};
use rmprod::ProductCode;

/// Monte-Carlo BLER/BER simulation of Reed–Muller product codes over
/// BPSK/AWGN.
#[derive(Debug, Parser)]
#[command(name = "rmprod", version)]
struct Args {
    /// Product code descriptor, components joined by `x`, first listed is
    /// decoded first. A component may name its decoder, e.g.
    /// `rm(11,1)xrm(3,2):bfmap`.
    #[arg(
        long,
        value_name = "DESCRIPTOR",
        required_unless_present = "list_decoders"
    )]
    code: Option<String>,

    /// Pass soft LLRs (`soft`) or hard decisions (`hard`) between dimensions.
    #[arg(long, value_name = "soft|hard", default_value = "soft")]
    decoder: DecodeMode,

    /// Decoding iterations over all dimensions.
    #[arg(long, value_name = "I", default_value_t = 3)]
    iterations: usize,

    /// Eb/N0 grid in dB: `start:stop:step` (stop inclusive) or a comma list.
    #[arg(
        long,
        value_name = "GRID",
        allow_hyphen_values = true,
        required_unless_present = "list_decoders"
    )]
    ebno: Option<String>,

    /// Stop a point once this many block errors are seen.
    #[arg(long, value_name = "N", default_value_t = 100)]
    min_errors: u64,

    /// Upper bound on frames per point.
    #[arg(long, value_name = "N", default_value_t = 10_000_000)]
    max_frames: u64,

    /// Master seed; identical seeds give identical output.
    #[arg(long, value_name = "u64", default_value_t = 0)]
    seed: u64,

    /// Worker threads (`auto` = all cores). Does not change results.
    #[arg(long, value_name = "N|auto", default_value = "auto", value_parser = parse_workers)]
    workers: Workers,

    /// Output format.
    #[arg(long, value_name = "csv|json", default_value = "csv")]
    format: OutputFormat,

    /// Output file, or `stdout`.
    #[arg(long, value_name = "PATH", default_value = "stdout")]
    out: String,

    /// Print the registered component decoders and exit.
    #[arg(long)]
    list_decoders: bool,
}

#[derive(Debug, Clone, Copy)]
struct Workers(Option<usize>);

fn parse_workers(s: &str) -> Result<Workers, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Workers(None));
    }
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer or `auto`, got {s:?}")),
        Ok(n) => Ok(Workers(Some(n))),
    }
}

fn run(args: Args) -> rmprod::Result<()> {
    if args.list_decoders {
        for e in DecoderRegistry::with_builtins().entries() {
            println!("{:<10} {:<5} {}", e.name, e.mode, e.description);
        }
        return Ok(());
    }
    let code = args.code.unwrap_or_default();
    // fail on a bad descriptor before spinning up workers
    let parsed = ProductCode::parse(&code)?;
    eprintln!(
        "code {parsed}: n={} k={} d={} rate={:.6}",
        parsed.n(),
        parsed.k(),
        parsed.d(),
        parsed.rate()
    );
    let config = SimConfig {
        code,
        decoder: args.decoder,
        iterations: args.iterations,
        ebno_db: sim::parse_ebno_grid(args.ebno.as_deref().unwrap_or_default())?,
        stopping: StoppingRule::new(args.min_errors, args.max_frames)?,
        seed: args.seed,
        format: args.format,
        workers: args.workers.0,
    };
    let points = sim::run_sweep(&config)?;
    let out = (args.out != "stdout").then(|| PathBuf::from(&args.out));
    sim::emit(&config, &points, out.as_deref())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
