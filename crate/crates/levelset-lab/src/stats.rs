//! Small statistical helpers shared by estimators, validators and tests.

/// Ordinary least squares y = a + b·x with the slope standard error and the
/// largest absolute residual.
#[derive(Debug, Clone, Copy)]
pub struct LineFit {
    pub intercept: f64,
    pub slope: f64,
    pub slope_se: f64,
    pub max_residual: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LineFit {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "need at least two points");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss_res = 0.0;
    let mut max_residual = 0.0f64;
    for (x, y) in xs.iter().zip(ys) {
        let r = y - (intercept + slope * x);
        ss_res += r * r;
        max_residual = max_residual.max(r.abs());
    }
    let dof = (xs.len().saturating_sub(2)) as f64;
    let slope_se = if dof > 0.0 {
        (ss_res / dof / sxx).sqrt()
    } else {
        0.0
    };
    LineFit {
        intercept,
        slope,
        slope_se,
        max_residual,
    }
}

/// Empirical quantile of a sorted sample (linear interpolation between order
/// statistics).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty());
    assert!((0.0..=1.0).contains(&p));
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let w = pos - lo as f64;
        sorted[lo] * (1.0 - w) + sorted[hi] * w
    }
}

/// Kolmogorov–Smirnov distance of a sorted sample against a reference CDF.
pub fn ks_distance_sorted<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((f - lo).abs()).max((hi - f).abs());
    }
    d
}

/// Real part of the empirical characteristic function at frequency `xi`
/// together with its standard error. For symmetric laws the imaginary part
/// vanishes and E cos(ξX) is the full CF; Var(cos ξX) = (1 + E cos 2ξX)/2 − φ².
pub fn empirical_cf(samples: &[f64], xi: f64) -> (f64, f64) {
    let n = samples.len() as f64;
    let mut sum = 0.0;
    let mut sum2 = 0.0;
    for &x in samples {
        sum += (xi * x).cos();
        sum2 += (2.0 * xi * x).cos();
    }
    let phi = sum / n;
    let phi2 = sum2 / n;
    let var = ((1.0 + phi2) / 2.0 - phi * phi).max(0.0);
    (phi, (var / n).sqrt())
}

/// Complementary error function (via libm), exposed for closed-form stable
/// subordinator laws.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}
