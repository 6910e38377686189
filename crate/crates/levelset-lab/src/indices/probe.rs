//! Dyadic convergence probe for improper integrals on (0, 1].
//!
//! Shared diagnostic behind the subordination indices and the Kato-class
//! tests: each needs to decide whether ∫_0^1 f(r) dr of a nonnegative
//! integrand converges, diverges logarithmically, or diverges like a power.

use serde::Serialize;

use crate::quad::adaptive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Converges,
    Diverges,
    Inconclusive,
}

/// Outcome of the probe: the partial-integral ladder I_k = ∫_{2^{-k}}^1 f and,
/// for divergent integrals, the fitted exponent e of I_k ~ 2^{k·e}
/// (e = 0 marks logarithmic divergence).
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceVerdict {
    pub verdict: Verdict,
    pub ladder: Vec<f64>,
    pub divergence_exponent: Option<f64>,
}

impl ConvergenceVerdict {
    pub fn converges(&self) -> bool {
        self.verdict == Verdict::Converges
    }
    pub fn diverges(&self) -> bool {
        self.verdict == Verdict::Diverges
    }
}

/// Default ladder depth: rungs down to 2^{-40}, resolving exponents to ~1e-3
/// once they are bounded away from 0 by a few hundredths.
pub const DEFAULT_PROBE_DEPTH: usize = 40;

/// Relative Cauchy tolerance over the last five rungs.
const CAUCHY_TOL: f64 = 1e-6;
/// Dead zone around zero for the per-rung growth exponent; inside it the
/// ladder is treated as logarithmically divergent.
const EXPONENT_DEAD_ZONE: f64 = 1e-3;

/// Probe ∫_0^1 f(r) dr by partial integrals over [2^{-k}, 1], k = 1..=depth.
///
/// Classification: Cauchy ladders converge; geometrically decaying rung
/// increments converge; increments growing like 2^{k·e} diverge with fitted
/// exponent e; flat increments diverge logarithmically. Erratic increment
/// ratios are reported as `Inconclusive`.
pub fn convergence_probe<F: Fn(f64) -> f64>(f: F, depth: usize) -> ConvergenceVerdict {
    assert!(depth >= 8, "probe needs at least 8 rungs");
    let mut rungs = Vec::with_capacity(depth);
    let mut ladder = Vec::with_capacity(depth);
    let mut total = 0.0f64;
    for k in 1..=depth {
        let hi = 0.5f64.powi(k as i32 - 1);
        let lo = 0.5f64.powi(k as i32);
        let j = adaptive(&f, lo, hi, 1e-10, 1e-300, 256).max(0.0);
        total += j;
        rungs.push(j);
        ladder.push(total);
    }

    let last = *ladder.last().unwrap();
    if last == 0.0 {
        return ConvergenceVerdict {
            verdict: Verdict::Converges,
            ladder,
            divergence_exponent: None,
        };
    }
    if (last - ladder[depth - 6]) / last < CAUCHY_TOL {
        return ConvergenceVerdict {
            verdict: Verdict::Converges,
            ladder,
            divergence_exponent: None,
        };
    }

    // growth exponent of the rung increments over the deepest window
    let window = 10.min(depth - 1);
    let mut ratios = Vec::new();
    for k in depth - window..depth {
        if rungs[k - 1] > 0.0 && rungs[k] > 0.0 {
            ratios.push((rungs[k] / rungs[k - 1]).log2());
        }
    }
    if ratios.len() < 3 {
        return ConvergenceVerdict {
            verdict: Verdict::Inconclusive,
            ladder,
            divergence_exponent: None,
        };
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let spread = ratios
        .iter()
        .map(|r| (r - mean).abs())
        .fold(0.0f64, f64::max);
    if spread > 0.2 {
        return ConvergenceVerdict {
            verdict: Verdict::Inconclusive,
            ladder,
            divergence_exponent: None,
        };
    }
    if mean < -EXPONENT_DEAD_ZONE {
        ConvergenceVerdict {
            verdict: Verdict::Converges,
            ladder,
            divergence_exponent: None,
        }
    } else if mean > EXPONENT_DEAD_ZONE {
        ConvergenceVerdict {
            verdict: Verdict::Diverges,
            ladder,
            divergence_exponent: Some(mean),
        }
    } else {
        ConvergenceVerdict {
            verdict: Verdict::Diverges,
            ladder,
            divergence_exponent: Some(0.0),
        }
    }
}
