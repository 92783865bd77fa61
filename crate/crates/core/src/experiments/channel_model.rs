use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ChannelInstance, PathGain};

/// Rayleigh channel law: every link is an independent circularly symmetric
/// complex Gaussian with the configured mean-square magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelModelConfig {
    pub n_elements: usize,
    /// `E[β₀²]`; zero removes the direct link.
    pub direct_power: f64,
    /// `E[β_n²]` for the cascaded links.
    pub element_power: f64,
    /// Rician factor. Only the pure-scattering case κ = 0 is supported.
    pub rician_kappa: f64,
    pub seed: u64,
}

impl ChannelModelConfig {
    pub fn rayleigh(n_elements: usize, seed: u64) -> Self {
        Self {
            n_elements,
            direct_power: 1.0,
            element_power: 1.0,
            rician_kappa: 0.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("direct_power", self.direct_power),
            ("element_power", self.element_power),
            ("kappa", self.rician_kappa),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} = {v} must be finite and non-negative")));
            }
        }
        if self.rician_kappa != 0.0 {
            return Err(Error::InvalidConfig(
                "only kappa = 0 (Rayleigh) is implemented".into(),
            ));
        }
        Ok(())
    }
}

fn draw(rng: &mut ChaCha8Rng, power: f64) -> PathGain {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    let h = Complex64::new(re, im) * (power.sqrt() * FRAC_1_SQRT_2);
    if power == 0.0 {
        PathGain { beta: 0.0, alpha: 0.0 }
    } else {
        PathGain::from_complex(h)
    }
}

/// Draws the channel for one trial.
pub fn generate_channel(config: &ChannelModelConfig, trial_index: u64) -> Result<ChannelInstance> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial_index);
    let direct = draw(&mut rng, config.direct_power);
    let cascaded = (0..config.n_elements)
        .map(|_| draw(&mut rng, config.element_power))
        .collect();
    Ok(ChannelInstance { direct, cascaded })
}
