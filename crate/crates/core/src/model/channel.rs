use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::wrap_pi;
use crate::error::{Error, Result};

/// One path gain `β·e^{jα}` stored as magnitude and angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathGain {
    pub beta: f64,
    pub alpha: f64,
}

impl PathGain {
    pub fn new(beta: f64, alpha: f64) -> Result<Self> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::InvalidChannel(format!(
                "magnitude {beta} must be finite and non-negative"
            )));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidChannel(format!("angle {alpha} is not finite")));
        }
        Ok(Self {
            beta,
            alpha: wrap_pi(alpha),
        })
    }

    pub fn from_complex(h: Complex64) -> Self {
        let (beta, alpha) = h.to_polar();
        Self {
            beta,
            alpha: wrap_pi(alpha),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.beta, self.alpha)
    }
}

/// Direct link `h₀` and cascaded links `h₁..h_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChannel")]
pub struct ChannelInstance {
    pub direct: PathGain,
    pub cascaded: Vec<PathGain>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChannel {
    direct: PathGain,
    #[serde(default)]
    cascaded: Vec<PathGain>,
}

impl TryFrom<RawChannel> for ChannelInstance {
    type Error = Error;

    fn try_from(raw: RawChannel) -> Result<Self> {
        let direct = PathGain::new(raw.direct.beta, raw.direct.alpha)?;
        let cascaded = raw
            .cascaded
            .iter()
            .enumerate()
            .map(|(n, p)| {
                PathGain::new(p.beta, p.alpha).map_err(|e| {
                    Error::InvalidChannel(format!("cascaded element {}: {e}", n + 1))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { direct, cascaded })
    }
}

impl ChannelInstance {
    pub fn new(direct: PathGain, cascaded: Vec<PathGain>) -> Result<Self> {
        Self::try_from(RawChannel { direct, cascaded })
    }

    /// Number of RIS elements N.
    pub fn n(&self) -> usize {
        self.cascaded.len()
    }

    pub fn direct_complex(&self) -> Complex64 {
        self.direct.to_complex()
    }

    pub fn cascaded_complex(&self) -> Vec<Complex64> {
        self.cascaded.iter().map(|p| p.to_complex()).collect()
    }

    /// Angle of the direct link, taken as zero when the link is absent.
    pub fn reference_angle(&self) -> f64 {
        if self.direct.beta > 0.0 {
            self.direct.alpha
        } else {
            0.0
        }
    }

    /// `Σ_{n=0..N} β_n`, the magnitude of the perfectly aligned sum.
    pub fn aligned_magnitude(&self) -> f64 {
        self.direct.beta + self.cascaded.iter().map(|p| p.beta).sum::<f64>()
    }
}
