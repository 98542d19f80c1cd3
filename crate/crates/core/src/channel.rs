//! BPSK over AWGN: modulation, noise, LLRs and SNR conversions.
//!
//! A bit `c` is sent as `1 - 2c`. With noise variance `σ²` the SNR is
//! `1/(2σ²)` and `Eb/N0 = SNR / R`.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::gf2::BitVector;

fn check_sigma2(sigma2: f64) -> Result<()> {
    if !(sigma2 > 0.0 && sigma2.is_finite()) {
        return Err(Error::Parameter(format!(
            "noise variance must be positive and finite, got {sigma2}"
        )));
    }
    Ok(())
}

fn check_rate(rate: f64) -> Result<()> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::Parameter(format!(
            "code rate must lie in (0, 1], got {rate}"
        )));
    }
    Ok(())
}

pub fn bpsk_modulate(c: &BitVector) -> Vec<f64> {
    c.as_slice()
        .iter()
        .map(|&b| if b == 0 { 1.0 } else { -1.0 })
        .collect()
}

/// `y = x + n` with `n ~ N(0, σ²)` i.i.d., drawn from `rng`.
pub fn awgn_channel<R: Rng + ?Sized>(x: &[f64], sigma2: f64, rng: &mut R) -> Result<Vec<f64>> {
    check_sigma2(sigma2)?;
    let sigma = sigma2.sqrt();
    Ok(x.iter()
        .map(|&v| {
            let z: f64 = rng.sample(StandardNormal);
            v + sigma * z
        })
        .collect())
}

/// `l = 2y/σ²`.
pub fn channel_llr(y: &[f64], sigma2: f64) -> Result<Vec<f64>> {
    check_sigma2(sigma2)?;
    let scale = 2.0 / sigma2;
    Ok(y.iter().map(|&v| scale * v).collect())
}

pub fn snr_db(sigma2: f64) -> f64 {
    10.0 * (1.0 / (2.0 * sigma2)).log10()
}

/// Noise variance for a given `Eb/N0` (dB) and code rate.
pub fn ebno_db_to_sigma2(ebno_db: f64, rate: f64) -> Result<f64> {
    check_rate(rate)?;
    Ok(1.0 / (2.0 * rate * 10f64.powf(ebno_db / 10.0)))
}

pub fn sigma2_to_ebno_db(sigma2: f64, rate: f64) -> Result<f64> {
    check_rate(rate)?;
    check_sigma2(sigma2)?;
    Ok(10.0 * (1.0 / (2.0 * rate * sigma2)).log10())
}

/// Consistent channel operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub sigma2: f64,
    pub ebno_db: f64,
    pub rate: f64,
}

impl ChannelParams {
    pub fn from_ebno(ebno_db: f64, rate: f64) -> Result<Self> {
        Ok(Self {
            sigma2: ebno_db_to_sigma2(ebno_db, rate)?,
            ebno_db,
            rate,
        })
    }

    pub fn snr_db(&self) -> f64 {
        snr_db(self.sigma2)
    }
}
