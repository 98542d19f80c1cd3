//! Q-dimensional products of Reed–Muller codes.
//!
//! A length-`n_t` vector is viewed as an array of shape `(n_Q, …, n_2, n_1)`
//! in row-major order, so axis 1 (the first component) varies fastest: in
//! the 2D case element `(i_2, i_1)` sits at `i_2·n_1 + i_1`. Encoding runs
//! component 1 first along axis 1, and the decoder visits the axes in the
//! same order on every iteration.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::channel::channel_llr;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::ops::OpCount;
use crate::registry::{ComponentDecoder, DecodeMode, DecoderRegistry};
use crate::rm::{rm_dimension, RmCode, MAX_ENUMERATION_K};

/// Cap on `k_t·n_t` for an explicit product generator.
pub const MAX_MATERIALIZED_BITS: usize = 1 << 24;

/// Geometry of one axis of a row-major array whose axis 0 varies fastest.
#[derive(Debug, Clone, Copy)]
struct Axis {
    len: usize,
    stride: usize,
    outer: usize,
}

impl Axis {
    fn of(dims: &[usize], axis: usize) -> Self {
        let stride: usize = dims[..axis].iter().product();
        let outer: usize = dims[axis + 1..].iter().product();
        Self {
            len: dims[axis],
            stride,
            outer,
        }
    }

    /// Start offsets of every fiber along this axis.
    fn fiber_starts(self) -> impl Iterator<Item = usize> {
        let block = self.stride * self.len;
        (0..self.outer).flat_map(move |o| (0..self.stride).map(move |i| o * block + i))
    }
}

/// One component of a product code.
#[derive(Clone)]
pub struct Component {
    code: RmCode,
    /// Registry name of the soft decoder chosen for this component.
    decoder_name: &'static str,
    soft: Arc<dyn ComponentDecoder>,
    hard: Arc<dyn ComponentDecoder>,
    /// Independent generator columns and the inverse of the generator
    /// restricted to them; recovers information bits from a codeword.
    info_set: Vec<usize>,
    info_inverse: BitMatrix,
}

impl Component {
    pub fn code(&self) -> &RmCode {
        &self.code
    }

    pub fn decoder_name(&self) -> &'static str {
        self.decoder_name
    }

    pub fn decoder(&self, mode: DecodeMode) -> &Arc<dyn ComponentDecoder> {
        match mode {
            DecodeMode::Soft => &self.soft,
            DecodeMode::Hard => &self.hard,
        }
    }
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.code, self.decoder_name)
    }
}

/// Component descriptor: a code plus an optional decoder override.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSpec {
    pub code: RmCode,
    pub decoder: Option<String>,
}

impl FromStr for ComponentSpec {
    type Err = Error;

    /// Parses `rm(m,r)` or `rm(m,r):<decoder>`.
    fn from_str(s: &str) -> Result<Self> {
        let (code, decoder) = match s.split_once(':') {
            Some((c, d)) => (c, Some(d.trim().to_ascii_lowercase())),
            None => (s, None),
        };
        if decoder.as_deref() == Some("") {
            return Err(Error::Parse {
                input: s.to_string(),
                reason: "empty decoder name after `:`".to_string(),
            });
        }
        Ok(Self {
            code: code.parse()?,
            decoder,
        })
    }
}

/// Splits a product descriptor such as `rm(6,1)xrm(2,1)` into components.
pub fn parse_product_descriptor(s: &str) -> Result<Vec<ComponentSpec>> {
    let lower = s.to_ascii_lowercase();
    if lower.trim().is_empty() {
        return Err(Error::Parse {
            input: s.to_string(),
            reason: "empty code descriptor".to_string(),
        });
    }
    lower.split('x').map(str::parse).collect()
}

/// A product code `C_1 ⊗ … ⊗ C_Q` with its component decoders attached.
#[derive(Clone)]
pub struct ProductCode {
    components: Vec<Component>,
    n: usize,
    k: usize,
    d: usize,
    m_total: usize,
    r_total: usize,
}

impl ProductCode {
    /// Builds the product of the given components, instantiating their
    /// decoders from `registry`.
    pub fn new(specs: &[ComponentSpec], registry: &DecoderRegistry) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::Parameter(
                "a product code needs at least one component".to_string(),
            ));
        }
        let mut components = Vec::with_capacity(specs.len());
        for spec in specs {
            let requested = spec
                .decoder
                .as_deref()
                .unwrap_or_else(|| DecoderRegistry::default_for(&spec.code));
            let soft_name = registry.resolve(requested, DecodeMode::Soft)?;
            let hard_name = registry.resolve(requested, DecodeMode::Hard)?;
            let gen = spec.code.generator();
            let info_set = gen.information_set();
            let info_inverse = gen.select_columns(&info_set)?.inverse().ok_or_else(|| {
                Error::Parameter(format!("{} generator is rank deficient", spec.code))
            })?;
            components.push(Component {
                code: spec.code.clone(),
                decoder_name: soft_name,
                soft: registry.build(soft_name, &spec.code)?,
                hard: registry.build(hard_name, &spec.code)?,
                info_set,
                info_inverse,
            });
        }
        let n = components.iter().map(|c| c.code.n()).product();
        let k = components.iter().map(|c| c.code.k()).product();
        let d = components.iter().map(|c| c.code.d()).product();
        let m_total = components.iter().map(|c| c.code.m()).sum();
        let r_total = components.iter().map(|c| c.code.r()).sum();
        let code = Self {
            components,
            n,
            k,
            d,
            m_total,
            r_total,
        };
        let enclosing = code.enclosing_dimension();
        if code.k > enclosing {
            return Err(Error::Parameter(format!(
                "product dimension {} exceeds enclosing RM dimension {enclosing}",
                code.k
            )));
        }
        Ok(code)
    }

    /// Parses a descriptor using the built-in decoder registry.
    pub fn parse(descriptor: &str) -> Result<Self> {
        Self::parse_with(descriptor, &DecoderRegistry::with_builtins())
    }

    pub fn parse_with(descriptor: &str, registry: &DecoderRegistry) -> Result<Self> {
        Self::new(&parse_product_descriptor(descriptor)?, registry)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Number of dimensions `Q`.
    pub fn dims(&self) -> usize {
        self.components.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance, the product of component distances.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rate(&self) -> f64 {
        self.components.iter().map(|c| c.code.rate()).product()
    }

    /// `(m_t, r_t)` of the enclosing RM code.
    pub fn enclosing_params(&self) -> (usize, usize) {
        (self.m_total, self.r_total)
    }

    /// Dimension of RM(m_t, r_t).
    pub fn enclosing_dimension(&self) -> usize {
        rm_dimension(self.m_total, self.r_total)
    }

    /// Shape `(n_Q, …, n_1)`.
    pub fn shape(&self) -> Vec<usize> {
        self.components.iter().rev().map(|c| c.code.n()).collect()
    }

    fn axis_lengths(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.code.n()).collect()
    }

    /// Encodes `k_t` information bits, component by component.
    pub fn encode(&self, u: &BitVector) -> Result<BitVector> {
        if u.len() != self.k {
            return Err(Error::Dimension {
                expected: self.k,
                got: u.len(),
            });
        }
        let mut dims: Vec<usize> = self.components.iter().map(|c| c.code.k()).collect();
        let mut data = u.as_slice().to_vec();
        for (q, comp) in self.components.iter().enumerate() {
            let (kq, nq) = (comp.code.k(), comp.code.n());
            let src = Axis::of(&dims, q);
            dims[q] = nq;
            let dst = Axis::of(&dims, q);
            let mut out = vec![0u8; data.len() / kq * nq];
            let mut fiber_in = vec![0u8; kq];
            let mut fiber_out = vec![0u8; nq];
            for (s, d) in src.fiber_starts().zip(dst.fiber_starts()) {
                for (t, b) in fiber_in.iter_mut().enumerate() {
                    *b = data[s + t * src.stride];
                }
                comp.code.encode_into(&fiber_in, &mut fiber_out)?;
                for (t, &b) in fiber_out.iter().enumerate() {
                    out[d + t * dst.stride] = b;
                }
            }
            data = out;
        }
        BitVector::from_bits(data)
    }

    /// Recovers information bits by reading every axis at its component's
    /// information set. Exact for codewords; for other words it is the
    /// information implied by those positions.
    pub fn unencode(&self, c: &BitVector) -> Result<BitVector> {
        if c.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: c.len(),
            });
        }
        let mut dims = self.axis_lengths();
        let mut data = c.as_slice().to_vec();
        for (q, comp) in self.components.iter().enumerate() {
            let kq = comp.code.k();
            let src = Axis::of(&dims, q);
            dims[q] = kq;
            let dst = Axis::of(&dims, q);
            let mut out = vec![0u8; data.len() / src.len * kq];
            let mut sub = vec![0u8; kq];
            for (s, d) in src.fiber_starts().zip(dst.fiber_starts()) {
                for (t, &col) in comp.info_set.iter().enumerate() {
                    sub[t] = data[s + col * src.stride];
                }
                let u = comp.info_inverse.left_mul(&sub)?;
                for (t, &b) in u.as_slice().iter().enumerate() {
                    out[d + t * dst.stride] = b;
                }
            }
            data = out;
        }
        BitVector::from_bits(data)
    }

    /// Generator matrix `G_1 ⊗ … ⊗ G_Q` in the same bit order as
    /// [`encode`](Self::encode); rows are images of unit information vectors.
    pub fn generator_matrix(&self) -> Result<BitMatrix> {
        if self.k * self.n > MAX_MATERIALIZED_BITS {
            return Err(Error::SizeLimit {
                what: "k*n",
                value: self.k * self.n,
                max: MAX_MATERIALIZED_BITS,
            });
        }
        let rows = (0..self.k)
            .map(|i| {
                let mut u = vec![0u8; self.k];
                u[i] = 1;
                self.encode(&BitVector::from_bits(u)?)
            })
            .collect::<Result<Vec<_>>>()?;
        BitMatrix::from_rows(&rows)
    }

    /// Minimum distance by enumerating all `2^{k_t}` codewords.
    pub fn min_distance_bruteforce(&self) -> Result<usize> {
        if self.k > MAX_ENUMERATION_K {
            return Err(Error::SizeLimit {
                what: "k",
                value: self.k,
                max: MAX_ENUMERATION_K,
            });
        }
        self.generator_matrix()?
            .min_distance_bruteforce(MAX_ENUMERATION_K)
    }
}

impl fmt::Debug for ProductCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ProductCode({self}, n={}, k={}, d={})",
            self.n, self.k, self.d
        )
    }
}

impl fmt::Display for ProductCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                if c.decoder_name == DecoderRegistry::default_for(&c.code) {
                    c.code.to_string()
                } else {
                    format!("{}:{}", c.code, c.decoder_name)
                }
            })
            .collect();
        f.write_str(&parts.join("x"))
    }
}

/// LLR array in product-code layout.
#[derive(Debug, Clone, PartialEq)]
pub struct LlrTensor {
    /// Axis lengths, axis 1 first.
    axis_lengths: Vec<usize>,
    values: Vec<f64>,
}

impl LlrTensor {
    /// Shape `(n_Q, …, n_1)`.
    pub fn shape(&self) -> Vec<usize> {
        self.axis_lengths.iter().rev().copied().collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at multi-index `(i_Q, …, i_1)`.
    pub fn get(&self, index: &[usize]) -> Option<f64> {
        if index.len() != self.axis_lengths.len() {
            return None;
        }
        let mut flat = 0;
        for (&i, &len) in index.iter().zip(self.axis_lengths.iter().rev()) {
            if i >= len {
                return None;
            }
            flat = flat * len + i;
        }
        Some(self.values[flat])
    }

    /// Copies out the fiber along `axis` (0-based, axis 0 = component 1)
    /// with index `fiber` in enumeration order.
    pub fn fiber(&self, axis: usize, fiber: usize) -> Option<Vec<f64>> {
        let a = Axis::of(&self.axis_lengths, axis);
        let start = a.fiber_starts().nth(fiber)?;
        Some(
            (0..a.len)
                .map(|t| self.values[start + t * a.stride])
                .collect(),
        )
    }

    fn for_each_fiber_mut(
        &mut self,
        axis: usize,
        mut f: impl FnMut(&mut [f64]) -> Result<()>,
    ) -> Result<()> {
        let a = Axis::of(&self.axis_lengths, axis);
        let mut buf = vec![0.0; a.len];
        for s in a.fiber_starts() {
            for (t, b) in buf.iter_mut().enumerate() {
                *b = self.values[s + t * a.stride];
            }
            f(&mut buf)?;
            for (t, &b) in buf.iter().enumerate() {
                self.values[s + t * a.stride] = b;
            }
        }
        Ok(())
    }
}

/// Views a length-`n_t` vector as the product array.
pub fn reshape_vector_to_tensor(v: &[f64], code: &ProductCode) -> Result<LlrTensor> {
    if v.len() != code.n() {
        return Err(Error::Dimension {
            expected: code.n(),
            got: v.len(),
        });
    }
    Ok(LlrTensor {
        axis_lengths: code.axis_lengths(),
        values: v.to_vec(),
    })
}

/// Serializes the array back to a vector.
pub fn reshape_tensor_to_vector(t: &LlrTensor, code: &ProductCode) -> Result<Vec<f64>> {
    if t.axis_lengths != code.axis_lengths() {
        return Err(Error::Dimension {
            expected: code.n(),
            got: t.values.len(),
        });
    }
    Ok(t.values.clone())
}

/// Result of iterative product decoding.
#[derive(Debug, Clone)]
pub struct ProductDecodeOutput {
    pub codeword: BitVector,
    pub llrs: LlrTensor,
    pub ops: OpCount,
    /// Dependency depth with the fibers of one axis decoded in parallel.
    pub depth: u64,
}

/// Iterative decoding: `iterations` sweeps over the axes, each replacing
/// every fiber with its component decoder's output, then a sign decision.
pub fn product_decode(
    code: &ProductCode,
    y: &[f64],
    sigma2: f64,
    iterations: usize,
    mode: DecodeMode,
) -> Result<ProductDecodeOutput> {
    if iterations == 0 {
        return Err(Error::Parameter(
            "iterations must be at least 1".to_string(),
        ));
    }
    let llr = channel_llr(y, sigma2)?;
    let mut tensor = reshape_vector_to_tensor(&llr, code)?;
    let mut ops = OpCount::default();
    let mut depth = 0;
    for _ in 0..iterations {
        for (q, comp) in code.components.iter().enumerate() {
            let dec = comp.decoder(mode);
            tensor.for_each_fiber_mut(q, |fiber| dec.decode(fiber, &mut ops))?;
            depth += dec.depth();
        }
    }
    let bits = tensor.values.iter().map(|&x| (x < 0.0) as u8).collect();
    Ok(ProductDecodeOutput {
        codeword: BitVector::from_bits(bits)?,
        llrs: tensor,
        ops,
        depth,
    })
}
