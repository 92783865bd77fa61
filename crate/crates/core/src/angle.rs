//! Angle normalization shared by every module.
//!
//! All stored angles live in [−π, π); boundary angles used by the sweep live in
//! [0, 2π); quantization errors are reported in (−π, π].

use std::f64::consts::{PI, TAU};

/// Wraps an angle into [−π, π).
pub fn wrap_pi(x: f64) -> f64 {
    if (-PI..PI).contains(&x) {
        return x;
    }
    let mut r = (x + PI).rem_euclid(TAU) - PI;
    // rem_euclid can return TAU itself for tiny negative inputs
    if r >= PI {
        r -= TAU;
    }
    if r < -PI {
        r = -PI;
    }
    r
}

/// Wraps an angle into [0, 2π).
pub fn wrap_2pi(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Wraps an angle into (−π, π].
pub fn wrap_pi_upper(x: f64) -> f64 {
    let r = wrap_pi(x);
    if r == -PI {
        PI
    } else {
        r
    }
}

/// Shortest signed angular distance from `from` to `to`, in (−π, π].
pub fn angular_difference(to: f64, from: f64) -> f64 {
    wrap_pi_upper(to - from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_pi_range() {
        assert_eq!(wrap_pi(PI), -PI);
        assert_eq!(wrap_pi(-PI), -PI);
        assert!((wrap_pi(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_pi(-1e-300) + 1e-300).abs() < 1e-300);
        assert!(wrap_pi(-1e-17) < PI);
    }

    #[test]
    fn wrap_2pi_range() {
        assert_eq!(wrap_2pi(TAU), 0.0);
        assert!(wrap_2pi(-1e-18) < TAU);
        assert!((wrap_2pi(-PI / 2.0) - 3.0 * PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn upper_closed() {
        assert_eq!(wrap_pi_upper(-PI), PI);
        assert_eq!(wrap_pi_upper(PI), PI);
        assert!((angular_difference(0.1, -0.1) - 0.2).abs() < 1e-15);
    }
}
