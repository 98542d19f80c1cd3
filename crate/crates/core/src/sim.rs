//! Monte-Carlo BLER/BER estimation over BPSK/AWGN.
//!
//! Every frame draws its information bits and noise from its own generator,
//! a ChaCha stream keyed by the master seed and indexed by the frame number.
//! Frames are decoded in parallel batches, then tallied strictly in frame
//! order, so a sweep's output does not depend on the worker count.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{awgn_channel, bpsk_modulate, ebno_db_to_sigma2, snr_db};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::product::{product_decode, ProductCode};
use crate::registry::DecodeMode;

/// Frames decoded per parallel batch.
const BATCH: u64 = 512;

/// Two-sided 95% standard normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

pub const CSV_HEADER: &str =
    "ebno_db,snr_db,frames,bit_errors,block_errors,ber,bler,bler_ci_lo,bler_ci_hi,ops_per_decode";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "format must be `csv` or `json`".to_string(),
            }),
        }
    }
}

/// When to stop simulating one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoppingRule {
    pub min_block_errors: u64,
    pub max_frames: u64,
}

impl StoppingRule {
    pub fn new(min_block_errors: u64, max_frames: u64) -> Result<Self> {
        let rule = Self {
            min_block_errors,
            max_frames,
        };
        rule.validate()?;
        Ok(rule)
    }

    fn validate(&self) -> Result<()> {
        if self.min_block_errors == 0 {
            return Err(Error::Config("min_block_errors must be at least 1".into()));
        }
        if self.max_frames == 0 {
            return Err(Error::Config("max_frames must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for StoppingRule {
    fn default() -> Self {
        Self {
            min_block_errors: 100,
            max_frames: 10_000_000,
        }
    }
}

/// A full sweep configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub code: String,
    pub decoder: DecodeMode,
    pub iterations: usize,
    pub ebno_db: Vec<f64>,
    pub stopping: StoppingRule,
    pub seed: u64,
    pub format: OutputFormat,
    /// Worker threads; `None` uses every available core. Never affects
    /// results.
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::Config("iterations must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if let Some(x) = self.ebno_db.iter().find(|x| !x.is_finite()) {
            return Err(Error::Config(format!("Eb/N0 value {x} is not finite")));
        }
        self.stopping.validate()
    }
}

/// Parses `start:stop:step` (inclusive of `stop`) or a comma-separated list.
pub fn parse_ebno_grid(s: &str) -> Result<Vec<f64>> {
    let err = |reason: &str| Error::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let num = |t: &str| -> Result<f64> {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| err("not a finite number"))
    };
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(err("range must be start:stop:step"));
        };
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if step <= 0.0 {
            return Err(Error::Config(format!(
                "Eb/N0 step must be positive, got {step}"
            )));
        }
        let mut out = Vec::new();
        let mut i = 0u32;
        loop {
            let x = start + f64::from(i) * step;
            if x > stop + 1e-9 * step {
                break;
            }
            // snap to the step grid so 0.1-style steps print cleanly
            out.push((x * 1e9).round() / 1e9);
            i += 1;
        }
        Ok(out)
    } else if s.trim().is_empty() {
        Ok(Vec::new())
    } else {
        s.split(',').map(num).collect()
    }
}

/// Wilson score interval at 95% confidence for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (lo, hi)
}

/// One measured operating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimPoint {
    pub ebno_db: f64,
    pub snr_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub block_errors: u64,
    pub ber: f64,
    pub bler: f64,
    pub bler_ci_lo: f64,
    pub bler_ci_hi: f64,
    pub ops_per_decode: f64,
}

impl SimPoint {
    /// Whether the two BLER confidence intervals are disjoint.
    pub fn separated_from(&self, other: &SimPoint) -> bool {
        self.bler_ci_hi < other.bler_ci_lo || other.bler_ci_hi < self.bler_ci_lo
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct FrameOutcome {
    bit_errors: u64,
    block_error: bool,
    ops: u64,
}

/// Generator for frame `frame` of a run keyed by `seed`.
pub fn frame_rng(seed: u64, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(frame);
    rng
}

fn simulate_frame(
    code: &ProductCode,
    mode: DecodeMode,
    iterations: usize,
    sigma2: f64,
    seed: u64,
    frame: u64,
) -> Result<FrameOutcome> {
    let mut rng = frame_rng(seed, frame);
    let u: Vec<u8> = (0..code.k()).map(|_| rng.gen::<bool>() as u8).collect();
    let u = BitVector::from_bits(u)?;
    let c = code.encode(&u)?;
    let y = awgn_channel(&bpsk_modulate(&c), sigma2, &mut rng)?;
    let out = product_decode(code, &y, sigma2, iterations, mode)?;
    let block_error = out.codeword != c;
    let bit_errors = if block_error {
        code.unencode(&out.codeword)?.xor(&u)?.weight() as u64
    } else {
        0
    };
    Ok(FrameOutcome {
        bit_errors,
        block_error,
        ops: out.ops.total(),
    })
}

/// Simulates one Eb/N0 point on the current rayon pool.
pub fn run_point(
    code: &ProductCode,
    mode: DecodeMode,
    iterations: usize,
    ebno_db: f64,
    stopping: StoppingRule,
    seed: u64,
) -> Result<SimPoint> {
    stopping.validate()?;
    if iterations == 0 {
        return Err(Error::Config("iterations must be at least 1".into()));
    }
    let rate = code.k() as f64 / code.n() as f64;
    let sigma2 = ebno_db_to_sigma2(ebno_db, rate)?;

    let (mut frames, mut bit_errors, mut block_errors, mut ops) = (0u64, 0u64, 0u64, 0u64);
    'outer: while frames < stopping.max_frames {
        let end = (frames + BATCH).min(stopping.max_frames);
        let batch: Vec<FrameOutcome> = (frames..end)
            .into_par_iter()
            .map(|f| simulate_frame(code, mode, iterations, sigma2, seed, f))
            .collect::<Result<_>>()?;
        for o in batch {
            frames += 1;
            bit_errors += o.bit_errors;
            block_errors += o.block_error as u64;
            ops += o.ops;
            if block_errors >= stopping.min_block_errors {
                break 'outer;
            }
        }
    }

    let (bler_ci_lo, bler_ci_hi) = wilson_interval(block_errors, frames);
    Ok(SimPoint {
        ebno_db,
        snr_db: snr_db(sigma2),
        frames,
        bit_errors,
        block_errors,
        ber: bit_errors as f64 / (frames as f64 * code.k() as f64),
        bler: block_errors as f64 / frames as f64,
        bler_ci_lo,
        bler_ci_hi,
        ops_per_decode: ops as f64 / frames as f64,
    })
}

/// Runs every Eb/N0 point of `config`.
pub fn run_sweep(config: &SimConfig) -> Result<Vec<SimPoint>> {
    config.validate()?;
    let code = ProductCode::parse(&config.code)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        config
            .ebno_db
            .iter()
            .map(|&eb| {
                run_point(
                    &code,
                    config.decoder,
                    config.iterations,
                    eb,
                    config.stopping,
                    config.seed,
                )
            })
            .collect()
    })
}

pub fn render_csv(points: &[SimPoint]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            p.ebno_db,
            p.snr_db,
            p.frames,
            p.bit_errors,
            p.block_errors,
            p.ber,
            p.bler,
            p.bler_ci_lo,
            p.bler_ci_hi,
            p.ops_per_decode
        );
    }
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    config: &'a SimConfig,
    points: &'a [SimPoint],
}

pub fn render_json(config: &SimConfig, points: &[SimPoint]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&JsonReport { config, points })
        .map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Renders `points` in the configured format.
pub fn render(config: &SimConfig, points: &[SimPoint]) -> Result<String> {
    match config.format {
        OutputFormat::Csv => Ok(render_csv(points)),
        OutputFormat::Json => render_json(config, points),
    }
}

/// Writes the rendered report to `path`, or to stdout when `path` is `None`.
pub fn emit(config: &SimConfig, points: &[SimPoint], path: Option<&Path>) -> Result<()> {
    let text = render(config, points)?;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
