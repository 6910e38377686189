//! Adaptive Gauss–Kronrod quadrature with helpers for the improper integrals
//! that show up in symbol evaluation and convergence probes.
//!
//! Everything here is deterministic and allocation-light; the adaptive driver
//! is a plain worst-interval-first refinement of GK15 panels.

/// Kronrod abscissae on [-1, 1], positive half (QUADPACK `qk15`).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// 7-point Gauss weights (nodes at odd Kronrod indices plus the centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One GK15 panel: returns (kronrod value, error estimate).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);

    let fc = f(mid);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;

    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let fsum = f(mid - dx) + f(mid + dx);
        kronrod += WGK[i] * fsum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * fsum;
        }
    }

    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    // QUADPACK-style error sharpening.
    let scale = (200.0 * err / value.abs().max(f64::MIN_POSITIVE)).min(1.0);
    (value, err.min(err * scale.powf(1.5)).max(1e-300))
}

/// Globally adaptive integration of `f` over the finite interval [a, b].
///
/// Splits the worst panel until the summed error estimate meets
/// `rel_tol * |integral|` (with `abs_floor` as an absolute escape hatch) or the
/// panel budget runs out.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_floor: f64,
    max_panels: usize,
) -> f64 {
    if a == b {
        return 0.0;
    }
    let (v, e) = gk15(f, a, b);
    let mut panels: Vec<(f64, f64, f64, f64)> = vec![(e, a, b, v)];
    let mut total = v;
    let mut total_err = e;

    while panels.len() < max_panels {
        if total_err <= rel_tol * total.abs() + abs_floor {
            break;
        }
        // worst panel first
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .0.total_cmp(&y.1 .0))
            .expect("non-empty");
        let (err, lo, hi, val) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval exhausted at f64 resolution
            panels.push((0.0, lo, hi, val));
            total_err -= err;
            continue;
        }
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        total += v1 + v2 - val;
        total_err += e1 + e2 - err;
        panels.push((e1, lo, mid, v1));
        panels.push((e2, mid, hi, v2));
    }
    total
}

/// ∫_0^b f(x) dx for f with an integrable singularity (or rapid variation)
/// at 0: dyadic panels shrinking toward the origin, with a geometric tail
/// estimate once panel contributions decay.
pub fn integrate_to_zero<F: Fn(f64) -> f64>(f: &F, b: f64, rel_tol: f64) -> f64 {
    assert!(b > 0.0, "upper limit must be positive");
    let mut total = 0.0;
    let mut hi = b;
    let mut prev_panel = f64::NAN;
    let mut prev_ratio = f64::NAN;
    for level in 0..1060 {
        let lo = 0.5 * hi;
        let panel = adaptive(f, lo, hi, rel_tol * 0.1, 0.0, 64);
        if !panel.is_finite() {
            // the integrand overflowed deep in the tail; what is already
            // accumulated is the best available value
            return total;
        }
        total += panel;
        if prev_panel.is_finite() && prev_panel != 0.0 {
            let ratio = panel / prev_panel;
            // the stop rule only makes sense once some mass has accumulated;
            // integrands concentrated near 0 produce leading all-zero panels
            let small = total != 0.0 && panel.abs() <= rel_tol * total.abs();
            // panels of power-law integrands decay exactly geometrically, so
            // once the ratio has settled the remaining tail sums in closed
            // form; this also keeps slowly-decaying integrands (exponents
            // near -1) out of the deep region where densities overflow
            let settled = level >= 8
                && prev_ratio.is_finite()
                && (ratio - prev_ratio).abs() <= 1e-8;
            if (0.0..0.9995).contains(&ratio) && (small || settled) {
                total += panel * ratio / (1.0 - ratio);
                break;
            }
            prev_ratio = ratio;
        }
        prev_panel = panel;
        hi = lo;
        if hi < 1e-300 {
            break;
        }
    }
    total
}

/// ∫_a^∞ f(x) dx for eventually-decaying f, via the substitution x = a / v.
pub fn integrate_tail<F: Fn(f64) -> f64>(f: &F, a: f64, rel_tol: f64) -> f64 {
    assert!(a > 0.0, "tail integration needs a positive lower limit");
    integrate_to_zero(&|v: f64| f(a / v) * a / (v * v), 1.0, rel_tol)
}

/// 1 − cos(x) without cancellation: Taylor series below 1e-4, the
/// half-angle identity elsewhere.
#[inline]
pub fn one_minus_cos(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-4 {
        let x2 = x * x;
        x2 / 2.0 * (1.0 - x2 / 12.0 * (1.0 - x2 / 30.0))
    } else {
        let s = (0.5 * x).sin();
        2.0 * s * s
    }
}
