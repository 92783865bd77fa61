use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{BeamformingSolution, ChannelInstance, CoefficientSet, SolveStats};

/// Default cap on the number of objective evaluations (K^N).
pub const DEFAULT_EVALUATION_BUDGET: u64 = 10_000_000;

pub fn exhaustive_search(channel: &ChannelInstance, ws: &CoefficientSet) -> Result<BeamformingSolution> {
    exhaustive_search_with_budget(channel, ws, DEFAULT_EVALUATION_BUDGET)
}

/// Enumerates all K^N selections in lexicographic order and returns the first
/// one reaching the maximum power, i.e. the lexicographically smallest
/// maximizer.
///
/// Partial sums are kept per level so moving to the next selection only
/// recomputes the levels below the changed digit.
pub fn exhaustive_search_with_budget(
    channel: &ChannelInstance,
    ws: &CoefficientSet,
    budget: u64,
) -> Result<BeamformingSolution> {
    let n = channel.n();
    let k = ws.k();
    let required = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    if n == 0 {
        let mut sol = BeamformingSolution::evaluate(channel, ws, Vec::new())?;
        sol.certified_optimal = true;
        sol.stats.steps = 1;
        return Ok(sol);
    }

    let coeffs = ws.coefficients();
    let terms: Vec<Complex64> = channel
        .cascaded
        .iter()
        .flat_map(|h| {
            let h = h.to_complex();
            coeffs.iter().map(move |w| h * w)
        })
        .collect();
    let term = |level: usize, idx: usize| terms[level * k + idx];

    let last = n - 1;
    let mut digits = vec![0usize; n];
    // prefix[i] = h₀ + Σ_{j<i} term(j, digits[j])
    let mut prefix = vec![channel.direct_complex(); n];
    for i in 1..n {
        prefix[i] = prefix[i - 1] + term(i - 1, 0);
    }

    let mut best_power = f64::NEG_INFINITY;
    let mut best = digits.clone();
    'outer: loop {
        let base = prefix[last];
        for idx in 0..k {
            let power = (base + term(last, idx)).norm_sqr();
            if power > best_power {
                best_power = power;
                best[..last].copy_from_slice(&digits[..last]);
                best[last] = idx;
            }
        }
        // odometer over the leading n−1 digits
        let mut level = last;
        loop {
            if level == 0 {
                break 'outer;
            }
            level -= 1;
            digits[level] += 1;
            if digits[level] < k {
                break;
            }
            digits[level] = 0;
        }
        for i in level + 1..n {
            prefix[i] = prefix[i - 1] + term(i - 1, digits[i - 1]);
        }
    }

    let mut sol = BeamformingSolution::evaluate(channel, ws, best)?;
    sol.certified_optimal = true;
    sol.stats = SolveStats {
        steps: required as u64,
        ..SolveStats::default()
    };
    Ok(sol)
}
