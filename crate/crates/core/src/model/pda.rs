use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the phase-dependent amplitude law
/// `β(θ) = (1 − β_min)·((sin(θ − φ_r) + 1)/2)^α + β_min`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PdaProfile {
    pub beta_min: f64,
    pub alpha_r: f64,
    pub phi_r: f64,
}

impl PdaProfile {
    pub fn new(beta_min: f64, alpha_r: f64, phi_r: f64) -> Result<Self> {
        let profile = Self {
            beta_min,
            alpha_r,
            phi_r,
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Constant unit gain, the ideal reflector.
    pub fn lossless() -> Self {
        Self {
            beta_min: 1.0,
            alpha_r: 1.0,
            phi_r: FRAC_PI_2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta_min) {
            return Err(Error::InvalidProfile(format!(
                "beta_min = {} outside [0, 1]",
                self.beta_min
            )));
        }
        if !(self.alpha_r >= 0.0 && self.alpha_r.is_finite()) {
            return Err(Error::InvalidProfile(format!(
                "alpha_r = {} must be finite and non-negative",
                self.alpha_r
            )));
        }
        if !self.phi_r.is_finite() {
            return Err(Error::InvalidProfile("phi_r must be finite".into()));
        }
        Ok(())
    }

    /// Phase at which the gain reaches 1.
    pub fn peak_phase(&self) -> f64 {
        self.phi_r + FRAC_PI_2
    }

    pub fn gain(&self, theta: f64) -> f64 {
        pda_gain(theta, self)
    }
}

pub fn pda_gain(theta: f64, profile: &PdaProfile) -> f64 {
    let base = ((theta - profile.phi_r).sin() + 1.0) / 2.0;
    // sin can overshoot 1 by an ulp
    let base = base.clamp(0.0, 1.0);
    (1.0 - profile.beta_min) * base.powf(profile.alpha_r) + profile.beta_min
}
