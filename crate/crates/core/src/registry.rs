//! Component decoders and the registry that selects them by name.
//!
//! Every decoder works on one fiber of the product array: it consumes LLRs
//! and overwrites them with its output. Soft decoders return LLRs; hard
//! decoders return the ±1 image of their decided codeword. Each registered
//! soft decoder names a hard counterpart, which is what a hard-mode product
//! decode runs in its place.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fht::{decode_transformed, ml_decode_depth};
use crate::ops::OpCount;
use crate::rm::RmCode;
use crate::soft_fht::{soft_fht_depth, soft_fht_in_place, BruteForceMap, FirstOrderTables};

/// Whether the product decoder passes LLRs or hard decisions between axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecodeMode {
    Soft,
    Hard,
}

impl FromStr for DecodeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "soft" => Ok(DecodeMode::Soft),
            "hard" => Ok(DecodeMode::Hard),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "decoder mode must be `soft` or `hard`".to_string(),
            }),
        }
    }
}

impl fmt::Display for DecodeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecodeMode::Soft => "soft",
            DecodeMode::Hard => "hard",
        })
    }
}

/// A decoder for one component code, applied fiber by fiber.
pub trait ComponentDecoder: fmt::Debug + Send + Sync {
    /// Registry name of this decoder.
    fn name(&self) -> &'static str;

    /// Fiber length.
    fn n(&self) -> usize;

    /// Replaces the LLRs in `fiber` with the decoder output, tallying the
    /// arithmetic into `ops`.
    fn decode(&self, fiber: &mut [f64], ops: &mut OpCount) -> Result<()>;

    /// Dependency depth of one decode when all independent operations run
    /// in parallel.
    fn depth(&self) -> u64;
}

#[derive(Debug)]
pub struct SoftFhtDecoder {
    tables: FirstOrderTables,
}

impl SoftFhtDecoder {
    pub fn new(code: &RmCode) -> Result<Self> {
        require_first_order(code, "soft-fht")?;
        Ok(Self {
            tables: FirstOrderTables::new(code.m())?,
        })
    }
}

impl ComponentDecoder for SoftFhtDecoder {
    fn name(&self) -> &'static str {
        "soft-fht"
    }

    fn n(&self) -> usize {
        self.tables.n()
    }

    fn decode(&self, fiber: &mut [f64], ops: &mut OpCount) -> Result<()> {
        soft_fht_in_place(fiber, &self.tables, ops)
    }

    fn depth(&self) -> u64 {
        soft_fht_depth(self.tables.m())
    }
}

#[derive(Debug)]
pub struct HardFhtDecoder {
    tables: FirstOrderTables,
}

impl HardFhtDecoder {
    pub fn new(code: &RmCode) -> Result<Self> {
        require_first_order(code, "fht")?;
        Ok(Self {
            tables: FirstOrderTables::new(code.m())?,
        })
    }
}

impl ComponentDecoder for HardFhtDecoder {
    fn name(&self) -> &'static str {
        "fht"
    }

    fn n(&self) -> usize {
        self.tables.n()
    }

    fn decode(&self, fiber: &mut [f64], ops: &mut OpCount) -> Result<()> {
        let decision = decode_transformed(fiber, &self.tables, ops)?;
        write_bipolar(fiber, decision.codeword.as_slice());
        Ok(())
    }

    fn depth(&self) -> u64 {
        ml_decode_depth(self.tables.m())
    }
}

/// Exact max-log coded-bit LLRs by exhaustive search.
#[derive(Debug)]
pub struct BruteForceMapDecoder {
    inner: BruteForceMap,
}

impl BruteForceMapDecoder {
    pub fn new(code: &RmCode) -> Result<Self> {
        Ok(Self {
            inner: BruteForceMap::new(code)?,
        })
    }
}

impl ComponentDecoder for BruteForceMapDecoder {
    fn name(&self) -> &'static str {
        "bfmap"
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    fn decode(&self, fiber: &mut [f64], ops: &mut OpCount) -> Result<()> {
        self.inner.decode_in_place(fiber, ops)
    }

    fn depth(&self) -> u64 {
        self.inner.depth()
    }
}

/// Exhaustive ML hard decision.
#[derive(Debug)]
pub struct BruteForceMlDecoder {
    inner: BruteForceMap,
}

impl BruteForceMlDecoder {
    pub fn new(code: &RmCode) -> Result<Self> {
        Ok(Self {
            inner: BruteForceMap::new(code)?,
        })
    }
}

impl ComponentDecoder for BruteForceMlDecoder {
    fn name(&self) -> &'static str {
        "bfml"
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    fn decode(&self, fiber: &mut [f64], ops: &mut OpCount) -> Result<()> {
        let j = self.inner.ml_index(fiber, ops)?;
        write_bipolar(fiber, self.inner.codeword(j).as_slice());
        Ok(())
    }

    fn depth(&self) -> u64 {
        self.inner.depth()
    }
}

fn write_bipolar(out: &mut [f64], bits: &[u8]) {
    for (o, &b) in out.iter_mut().zip(bits) {
        *o = if b == 0 { 1.0 } else { -1.0 };
    }
}

fn require_first_order(code: &RmCode, name: &str) -> Result<()> {
    if code.r() != 1 {
        return Err(Error::Parameter(format!(
            "decoder `{name}` needs a first-order code, got {code}"
        )));
    }
    Ok(())
}

pub type DecoderFactory = fn(&RmCode) -> Result<Arc<dyn ComponentDecoder>>;

/// A named decoder constructor.
#[derive(Clone)]
pub struct DecoderEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub mode: DecodeMode,
    /// Decoder used instead of this one in hard mode. Hard entries name
    /// themselves.
    pub hard_variant: &'static str,
    pub factory: DecoderFactory,
}

impl fmt::Debug for DecoderEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DecoderEntry")
            .field("name", &self.name)
            .field("mode", &self.mode)
            .field("hard_variant", &self.hard_variant)
            .finish()
    }
}

/// Component decoders available by name.
#[derive(Debug, Clone, Default)]
pub struct DecoderRegistry {
    entries: BTreeMap<&'static str, DecoderEntry>,
}

impl DecoderRegistry {
    /// An empty registry.
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding `soft-fht`, `fht`, `bfmap` and `bfml`.
    pub fn with_builtins() -> Self {
        let mut r = Self::new();
        r.register(DecoderEntry {
            name: "soft-fht",
            description: "soft-input soft-output FHT decoder for RM(m,1)",
            mode: DecodeMode::Soft,
            hard_variant: "fht",
            factory: |c| Ok(Arc::new(SoftFhtDecoder::new(c)?)),
        });
        r.register(DecoderEntry {
            name: "fht",
            description: "hard-output FHT maximum-likelihood decoder for RM(m,1)",
            mode: DecodeMode::Hard,
            hard_variant: "fht",
            factory: |c| Ok(Arc::new(HardFhtDecoder::new(c)?)),
        });
        r.register(DecoderEntry {
            name: "bfmap",
            description: "exhaustive max-log soft-MAP decoder (k <= 16)",
            mode: DecodeMode::Soft,
            hard_variant: "bfml",
            factory: |c| Ok(Arc::new(BruteForceMapDecoder::new(c)?)),
        });
        r.register(DecoderEntry {
            name: "bfml",
            description: "exhaustive maximum-likelihood hard decoder (k <= 16)",
            mode: DecodeMode::Hard,
            hard_variant: "bfml",
            factory: |c| Ok(Arc::new(BruteForceMlDecoder::new(c)?)),
        });
        r
    }

    /// Adds or replaces an entry.
    pub fn register(&mut self, entry: DecoderEntry) {
        self.entries.insert(entry.name, entry);
    }

    pub fn get(&self, name: &str) -> Option<&DecoderEntry> {
        self.entries.get(name)
    }

    pub fn entries(&self) -> impl Iterator<Item = &DecoderEntry> {
        self.entries.values()
    }

    fn lookup(&self, name: &str) -> Result<&DecoderEntry> {
        self.get(name).ok_or_else(|| Error::Parse {
            input: name.to_string(),
            reason: format!(
                "unknown decoder; known decoders: {}",
                self.entries.keys().copied().collect::<Vec<_>>().join(", ")
            ),
        })
    }

    /// Default decoder name for a component: soft-FHT for first-order codes,
    /// brute-force soft-MAP otherwise.
    pub fn default_for(code: &RmCode) -> &'static str {
        if code.r() == 1 {
            "soft-fht"
        } else {
            "bfmap"
        }
    }

    /// Decoder name to use for `requested` (or the default) in `mode`.
    pub fn resolve(&self, requested: &str, mode: DecodeMode) -> Result<&'static str> {
        let entry = self.lookup(requested)?;
        Ok(match mode {
            DecodeMode::Soft => entry.name,
            DecodeMode::Hard => self.lookup(entry.hard_variant)?.name,
        })
    }

    /// Instantiates the decoder `name` for `code`.
    pub fn build(&self, name: &str, code: &RmCode) -> Result<Arc<dyn ComponentDecoder>> {
        (self.lookup(name)?.factory)(code)
    }
}
