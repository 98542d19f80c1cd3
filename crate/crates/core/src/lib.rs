//! Products of Reed–Muller codes with soft-FHT iterative decoding.
//!
//! Building blocks, bottom up:
//!
//! - [`gf2`]: packed GF(2) vectors and matrices
//! - [`rm`]: RM(m, r) codes in canonical generator form
//! - [`fht`]: fast Hadamard transform and first-order ML decoding
//! - [`soft_fht`]: soft-output first-order decoding and the exhaustive
//!   max-log reference decoder
//! - [`registry`]: component decoders selectable by name
//! - [`product`]: product-code construction, encoding and iterative decoding
//! - [`channel`]: BPSK/AWGN model
//! - [`sim`]: Monte-Carlo BLER/BER sweeps

pub mod channel;
pub mod error;
pub mod fht;
pub mod gf2;
pub mod ops;
pub mod product;
pub mod registry;
pub mod rm;
pub mod sim;
pub mod soft_fht;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use ops::OpCount;
pub use product::{product_decode, LlrTensor, ProductCode, ProductDecodeOutput};
pub use registry::{ComponentDecoder, DecodeMode, DecoderRegistry};
pub use rm::RmCode;
pub use sim::{run_point, run_sweep, SimConfig, SimPoint, StoppingRule};
