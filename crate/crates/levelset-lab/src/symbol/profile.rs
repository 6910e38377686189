//! Tabulated symbol profiles: q, its envelopes, the spherical supremum
//! q^*(r) = sup_ℓ q^U(rℓ), the oscillation constant κ with its index
//! α = 2/κ, the inverse scaling function ρ_t, and two-sided power fits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbol::measure::{LevyMeasureModel, MeasureFamily};

/// Grid layout for profile construction.
#[derive(Debug, Clone)]
pub struct ProfileConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub nodes_per_decade: usize,
    /// Deterministic sphere-grid size for suprema in dimension ≥ 2.
    pub sphere_points: usize,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        Self {
            r_min: 1e-3,
            r_max: 1e6,
            nodes_per_decade: 64,
            sphere_points: 512,
        }
    }
}

/// Oscillation bound κ = sup_{r ∈ [1, r_max]} q^*(r) / inf_ℓ q^L(rℓ) and the
/// derived lower index α = 2/κ. `holds` records whether the ratio stayed
/// finite on the audited grid; a finite grid can falsify but never fully
/// verify the all-r condition, so this is a "holds on audited range" verdict.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KappaEstimate {
    pub kappa: f64,
    pub alpha_index: f64,
    pub holds: bool,
    pub r_max: f64,
}

/// Two-sided power sandwich c₁ r^{α_fit} ≤ q(r) ≤ c₂ r^{β_fit} on the grid,
/// from local log-log slopes (not a single regression).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PowerEnvelope {
    pub alpha_fit: f64,
    pub beta_fit: f64,
    pub c_lower: f64,
    pub c_upper: f64,
    /// Max absolute residual of log q against a single least-squares line;
    /// small values mean the profile is an almost exact power law.
    pub residual: f64,
    pub degenerate: bool,
}

/// Immutable tabulation of the symbol and its derived quantities on a
/// log-spaced radius grid. All evaluations are pure; construction is
/// single-threaded.
#[derive(Debug, Clone)]
pub struct SymbolProfile {
    dim: usize,
    radii: Vec<f64>,
    q: Vec<f64>,
    q_upper: Vec<f64>,
    q_lower: Vec<f64>,
    q_star: Vec<f64>,
    q_lower_inf: Vec<f64>,
    /// Running-max (monotone) envelope of q^*.
    q_star_env: Vec<f64>,
    kappa: Option<KappaEstimate>,
    power: Option<PowerEnvelope>,
    extrapolation_warning: bool,
}

impl SymbolProfile {
    /// Tabulate the symbol of `model` on the configured grid.
    pub fn build(model: &LevyMeasureModel, cfg: &ProfileConfig) -> Result<Self> {
        if !(cfg.r_min > 0.0 && cfg.r_max > cfg.r_min) {
            return Err(Error::Domain {
                name: "r_min/r_max",
                value: cfg.r_min,
                range: "0 < r_min < r_max",
            });
        }
        let radii = log_grid(cfg.r_min, cfg.r_max, cfg.nodes_per_decade);
        let n = model.dim();
        let mut q = Vec::with_capacity(radii.len());
        let mut q_upper = Vec::with_capacity(radii.len());
        let mut q_lower = Vec::with_capacity(radii.len());
        let mut q_star = Vec::with_capacity(radii.len());
        let mut q_lower_inf = Vec::with_capacity(radii.len());
        for &r in &radii {
            let axis = axis_vec(n, r);
            q.push(model.eval_q(&axis));
            q_upper.push(model.eval_q_upper(&axis));
            q_lower.push(model.eval_q_lower(&axis));
            q_star.push(q_star_of_model(model, r, cfg.sphere_points));
            q_lower_inf.push(q_lower_inf_of_model(model, r, cfg.sphere_points));
        }
        let mut extrapolation_warning = false;
        if let MeasureFamily::Tabulated(t) = model.family() {
            let (lo, hi) = t.grid_range();
            // the split point 1/r of the symbol integrals must stay on the grid
            extrapolation_warning = 1.0 / cfg.r_max < lo || 1.0 / cfg.r_min > hi;
        }
        let mut profile = Self::assemble(n, radii, q, q_upper, q_lower, q_star, q_lower_inf);
        profile.extrapolation_warning = extrapolation_warning;
        Ok(profile)
    }

    /// Profile with all four tabulated quantities equal to `f(r)`; the
    /// natural way to feed exact analytic symbols to the index machinery.
    pub fn from_fn<F: Fn(f64) -> f64>(
        f: F,
        r_min: f64,
        r_max: f64,
        nodes_per_decade: usize,
        dim: usize,
    ) -> Self {
        let radii = log_grid(r_min, r_max, nodes_per_decade);
        let vals: Vec<f64> = radii.iter().map(|&r| f(r)).collect();
        Self::assemble(
            dim,
            radii,
            vals.clone(),
            vals.clone(),
            vals.clone(),
            vals.clone(),
            vals,
        )
    }

    /// Exact tabulation of the pure power family with index `alpha`: all four
    /// quantities carry their closed-form constants, so the stored κ equals
    /// 2/α and the derived index equals `alpha` itself.
    pub fn from_power(intensity: f64, alpha: f64, dim: usize) -> Self {
        use crate::symbol::measure::closed;
        let radii = log_grid(1e-3, 1e6, 64);
        let q: Vec<f64> = radii
            .iter()
            .map(|&r| closed::stable_q(alpha, intensity, r))
            .collect();
        let qu: Vec<f64> = radii
            .iter()
            .map(|&r| closed::stable_q_upper(alpha, intensity, r))
            .collect();
        let ql: Vec<f64> = radii
            .iter()
            .map(|&r| closed::stable_q_lower(alpha, intensity, r))
            .collect();
        Self::assemble(dim, radii, q, qu.clone(), ql.clone(), qu, ql)
    }

    fn assemble(
        dim: usize,
        radii: Vec<f64>,
        q: Vec<f64>,
        q_upper: Vec<f64>,
        q_lower: Vec<f64>,
        q_star: Vec<f64>,
        q_lower_inf: Vec<f64>,
    ) -> Self {
        let mut env = Vec::with_capacity(q_star.len());
        let mut run = 0.0f64;
        for &v in &q_star {
            run = run.max(v);
            env.push(run);
        }
        let mut p = Self {
            dim,
            radii,
            q,
            q_upper,
            q_lower,
            q_star,
            q_lower_inf,
            q_star_env: env,
            kappa: None,
            power: None,
            extrapolation_warning: false,
        };
        p.kappa = Some(p.kappa_from_table(f64::INFINITY));
        p.power = p.power_envelope().ok();
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }
    pub fn q_values(&self) -> &[f64] {
        &self.q
    }
    pub fn q_upper_values(&self) -> &[f64] {
        &self.q_upper
    }
    pub fn q_lower_values(&self) -> &[f64] {
        &self.q_lower
    }
    pub fn q_star_values(&self) -> &[f64] {
        &self.q_star
    }
    pub fn r_range(&self) -> (f64, f64) {
        (self.radii[0], self.radii[self.radii.len() - 1])
    }
    pub fn kappa(&self) -> KappaEstimate {
        self.kappa.expect("kappa computed at assembly")
    }
    pub fn power(&self) -> Option<PowerEnvelope> {
        self.power
    }
    pub fn extrapolation_warning(&self) -> bool {
        self.extrapolation_warning
    }

    /// κ over the tabulated r ≥ 1 range, capped at `r_max`.
    fn kappa_from_table(&self, r_max: f64) -> KappaEstimate {
        let mut kappa = 1.0f64;
        let mut holds = true;
        let mut audited = 0usize;
        let mut top = 1.0f64;
        for ((&r, &qs), &ql) in self
            .radii
            .iter()
            .zip(&self.q_star)
            .zip(&self.q_lower_inf)
        {
            if r < 1.0 || r > r_max {
                continue;
            }
            audited += 1;
            top = top.max(r);
            if !(ql > 0.0) || !qs.is_finite() {
                holds = false;
                continue;
            }
            kappa = kappa.max(qs / ql);
        }
        if audited == 0 || !kappa.is_finite() {
            holds = false;
        }
        KappaEstimate {
            kappa,
            alpha_index: 2.0 / kappa,
            holds,
            r_max: top,
        }
    }

    /// Interpolated q(r) (log-log linear, power-law extrapolation beyond the
    /// grid using the edge-decade slopes).
    pub fn q_at(&self, r: f64) -> f64 {
        interp_loglog(&self.radii, &self.q, r)
    }

    /// Interpolated q^U(r) along the first axis.
    pub fn q_upper_at(&self, r: f64) -> f64 {
        interp_loglog(&self.radii, &self.q_upper, r)
    }

    /// Monotone envelope of q^* (the function ρ inverts).
    pub fn q_star_env_at(&self, r: f64) -> f64 {
        interp_loglog(&self.radii, &self.q_star_env, r)
    }

    /// ρ_t = inf{ r > 0 : q^*(r) ≥ 1/t } by bisection on the monotone
    /// envelope in log coordinates, relative tolerance 1e-10. For targets
    /// outside the tabulated range the envelope is extrapolated by its edge
    /// power laws.
    pub fn rho(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::Domain {
                name: "t",
                value: t,
                range: "(0, 1]",
            });
        }
        let target = 1.0 / t;
        let env = &self.q_star_env;
        let m = env.len();
        // locate first node at or above the target
        let first_at_or_above = env.partition_point(|&v| v < target);
        let (mut lo, mut hi) = if first_at_or_above == 0 {
            // below the grid: extrapolate down with the low-edge slope
            let slope = edge_slope(&self.radii, env, true).max(1e-12);
            let r = self.radii[0] * (target / env[0]).powf(1.0 / slope);
            return Ok(r);
        } else if first_at_or_above == m {
            let slope = edge_slope(&self.radii, env, false).max(1e-12);
            let r = self.radii[m - 1] * (target / env[m - 1]).powf(1.0 / slope);
            return Ok(r);
        } else {
            (
                self.radii[first_at_or_above - 1],
                self.radii[first_at_or_above],
            )
        };
        // leftmost crossing: keep env(lo) < target ≤ env(hi)
        for _ in 0..80 {
            if (hi - lo) <= 1e-10 * hi {
                break;
            }
            let mid = (lo.ln() + hi.ln()).mul_add(0.5, 0.0).exp();
            if self.q_star_env_at(mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// Whether 1/t falls inside the tabulated envelope range (no
    /// extrapolation needed for `rho`).
    pub fn covers_inverse(&self, t: f64) -> bool {
        if !(t > 0.0 && t <= 1.0) {
            return false;
        }
        let target = 1.0 / t;
        target >= self.q_star_env[0] && target <= self.q_star_env[self.q_star_env.len() - 1]
    }

    /// Two-sided power sandwich of the tabulated q over r ≥ 1: α_fit is the
    /// smallest local log-log slope, β_fit the largest, with constants chosen
    /// so the sandwich holds on the grid.
    pub fn power_envelope(&self) -> Result<PowerEnvelope> {
        let pts: Vec<(f64, f64)> = self
            .radii
            .iter()
            .zip(&self.q)
            .filter(|(&r, &q)| r >= 1.0 && q > 0.0)
            .map(|(&r, &q)| (r.ln(), q.ln()))
            .collect();
        if pts.len() < 8 {
            return Err(Error::InsufficientData {
                needed: 8,
                found: pts.len(),
            });
        }
        let mut alpha_fit = f64::INFINITY;
        let mut beta_fit = f64::NEG_INFINITY;
        for w in pts.windows(3) {
            let slope = (w[2].1 - w[0].1) / (w[2].0 - w[0].0);
            alpha_fit = alpha_fit.min(slope);
            beta_fit = beta_fit.max(slope);
        }
        let (c_lower, c_upper) = {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &(x, y) in &pts {
                lo = lo.min(y - alpha_fit * x);
                hi = hi.max(y - beta_fit * x);
            }
            (lo.exp(), hi.exp())
        };
        // single least-squares line, for the power-likeness residual
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let slope = sxy / sxx;
        let residual = pts
            .iter()
            .map(|&(x, y)| (y - (my + slope * (x - mx))).abs())
            .fold(0.0f64, f64::max);
        let degenerate = alpha_fit.abs() < 1e-9 && beta_fit.abs() < 1e-9;
        Ok(PowerEnvelope {
            alpha_fit,
            beta_fit,
            c_lower,
            c_upper,
            residual,
            degenerate,
        })
    }

    /// Per-node invariant audit: (1 − cos 1)·q^L ≤ q ≤ 2·q^U, everything
    /// nonnegative, q^* nondecreasing after envelope.
    pub fn audit_invariants(&self) -> Result<()> {
        let lo_factor = 1.0 - 1.0f64.cos();
        for i in 0..self.radii.len() {
            let (q, qu, ql) = (self.q[i], self.q_upper[i], self.q_lower[i]);
            if q < -1e-12 || qu < -1e-12 || ql < -1e-12 {
                return Err(Error::Model(format!(
                    "negative symbol value at r = {}",
                    self.radii[i]
                )));
            }
            if q > 2.0 * qu * (1.0 + 1e-8) + 1e-300 {
                return Err(Error::Model(format!(
                    "q > 2 q^U at r = {}: {q} vs {qu}",
                    self.radii[i]
                )));
            }
            if lo_factor * ql > q * (1.0 + 1e-8) + 1e-300 {
                return Err(Error::Model(format!(
                    "(1 - cos 1) q^L > q at r = {}: {ql} vs {q}",
                    self.radii[i]
                )));
            }
        }
        Ok(())
    }
}

/// Supremum of q^U(rℓ) over the unit sphere. Isotropic families short-circuit
/// by rotational invariance; products over axes use the deterministic grid
/// plus golden-section refinement.
pub fn q_star_of_model(model: &LevyMeasureModel, r: f64, sphere_points: usize) -> f64 {
    match model.dim() {
        1 => model.eval_q_upper(&[r]),
        n => {
            if model_is_isotropic(model) {
                model.eval_q_upper(&axis_vec(n, r))
            } else {
                sphere_extremum(model, r, sphere_points, true)
            }
        }
    }
}

/// Infimum of q^L(rℓ) over the unit sphere (the denominator of κ).
pub fn q_lower_inf_of_model(model: &LevyMeasureModel, r: f64, sphere_points: usize) -> f64 {
    match model.dim() {
        1 => model.eval_q_lower(&[r]),
        n => {
            if model_is_isotropic(model) {
                model.eval_q_lower(&axis_vec(n, r))
            } else {
                sphere_extremum(model, r, sphere_points, false)
            }
        }
    }
}

/// Grid + refinement sphere search, always taking the grid route. Exposed so
/// tests can check grid-density independence against the isotropy shortcut.
pub fn sphere_extremum(model: &LevyMeasureModel, r: f64, points: usize, maximize: bool) -> f64 {
    let eval_upper = |xi: &[f64]| {
        if maximize {
            model.eval_q_upper(xi)
        } else {
            model.eval_q_lower(xi)
        }
    };
    match model.dim() {
        2 => {
            let n = points.max(512);
            let mut best = f64::NAN;
            let mut best_theta = 0.0;
            for j in 0..n {
                let theta = std::f64::consts::PI * (j as f64 + 0.5) / n as f64;
                let v = eval_upper(&[r * theta.cos(), r * theta.sin()]);
                if best.is_nan() || (maximize && v > best) || (!maximize && v < best) {
                    best = v;
                    best_theta = theta;
                }
            }
            // golden-section refinement in the bracketing grid cell
            let step = std::f64::consts::PI / n as f64;
            let f = |theta: f64| {
                let v = eval_upper(&[r * theta.cos(), r * theta.sin()]);
                if maximize {
                    -v
                } else {
                    v
                }
            };
            let theta = golden_min(f, best_theta - step, best_theta + step, 1e-12);
            let refined = eval_upper(&[r * theta.cos(), r * theta.sin()]);
            if maximize {
                best.max(refined)
            } else {
                best.min(refined)
            }
        }
        3 => {
            // Fibonacci lattice on S²
            let n = points.max(512);
            let golden = (1.0 + 5f64.sqrt()) / 2.0;
            let mut best = f64::NAN;
            let mut best_dir = [1.0, 0.0, 0.0];
            for j in 0..n {
                let z = 1.0 - 2.0 * (j as f64 + 0.5) / n as f64;
                let rho = (1.0 - z * z).sqrt();
                let phi = 2.0 * std::f64::consts::PI * (j as f64 / golden).fract();
                let dir = [rho * phi.cos(), rho * phi.sin(), z];
                let v = eval_upper(&[r * dir[0], r * dir[1], r * dir[2]]);
                if best.is_nan() || (maximize && v > best) || (!maximize && v < best) {
                    best = v;
                    best_dir = dir;
                }
            }
            // local refinement: shrink a tangent-step hill climb
            let mut dir = best_dir;
            let mut step = (4.0 / n as f64).sqrt();
            for _ in 0..40 {
                let mut improved = false;
                for axis in 0..3 {
                    for sgn in [-1.0, 1.0] {
                        let mut cand = dir;
                        cand[axis] += sgn * step;
                        let norm = (cand[0] * cand[0] + cand[1] * cand[1] + cand[2] * cand[2]).sqrt();
                        cand = [cand[0] / norm, cand[1] / norm, cand[2] / norm];
                        let v = eval_upper(&[r * cand[0], r * cand[1], r * cand[2]]);
                        if (maximize && v > best) || (!maximize && v < best) {
                            best = v;
                            dir = cand;
                            improved = true;
                        }
                    }
                }
                if !improved {
                    step *= 0.5;
                    if step < 1e-9 {
                        break;
                    }
                }
            }
            best
        }
        n => unreachable!("sphere search in dimension {n}"),
    }
}

/// κ of condition q^*(r) ≤ κ inf_ℓ q^L(rℓ) on the log grid [1, r_max],
/// 64 nodes per decade, together with the derived index α = 2/κ.
pub fn comparison_kappa(model: &LevyMeasureModel, r_max: f64) -> Result<KappaEstimate> {
    comparison_kappa_with(model, r_max, 64, 512)
}

pub fn comparison_kappa_with(
    model: &LevyMeasureModel,
    r_max: f64,
    nodes_per_decade: usize,
    sphere_points: usize,
) -> Result<KappaEstimate> {
    if !(r_max >= 1.0) {
        return Err(Error::Domain {
            name: "r_max",
            value: r_max,
            range: "[1, ∞)",
        });
    }
    let grid = log_grid(1.0, r_max, nodes_per_decade);
    let mut kappa = 1.0f64;
    let mut holds = true;
    for &r in &grid {
        let qs = q_star_of_model(model, r, sphere_points);
        let ql = q_lower_inf_of_model(model, r, sphere_points);
        if !(ql > 0.0) || !qs.is_finite() {
            holds = false;
            continue;
        }
        kappa = kappa.max(qs / ql);
    }
    if !kappa.is_finite() {
        holds = false;
    }
    Ok(KappaEstimate {
        kappa,
        alpha_index: 2.0 / kappa,
        holds,
        r_max,
    })
}

fn model_is_isotropic(model: &LevyMeasureModel) -> bool {
    !matches!(model.family(), MeasureFamily::AxisStable { .. })
}

fn axis_vec(n: usize, r: f64) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[0] = r;
    v
}

pub(crate) fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let decades = (hi / lo).log10();
    let count = ((decades * per_decade as f64).ceil() as usize).max(1);
    (0..=count)
        .map(|i| lo * 10f64.powf(decades * i as f64 / count as f64))
        .collect()
}

/// Log-log linear interpolation with power-law extrapolation from the edge
/// decades. Zero values fall back to linear interpolation locally.
fn interp_loglog(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let m = xs.len();
    if x <= xs[0] {
        let slope = edge_slope(xs, ys, true);
        return if ys[0] > 0.0 {
            ys[0] * (x / xs[0]).powf(slope)
        } else {
            ys[0]
        };
    }
    if x >= xs[m - 1] {
        let slope = edge_slope(xs, ys, false);
        return if ys[m - 1] > 0.0 {
            ys[m - 1] * (x / xs[m - 1]).powf(slope)
        } else {
            ys[m - 1]
        };
    }
    let i = xs.partition_point(|&v| v < x).max(1) - 1;
    let (x0, x1, y0, y1) = (xs[i], xs[i + 1], ys[i], ys[i + 1]);
    if y0 > 0.0 && y1 > 0.0 {
        let t = (x / x0).ln() / (x1 / x0).ln();
        (y0.ln() + t * (y1 / y0).ln()).exp()
    } else {
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

/// Fitted log-log slope over the edge decade of the table.
fn edge_slope(xs: &[f64], ys: &[f64], low_edge: bool) -> f64 {
    let m = xs.len();
    let (anchor, range): (usize, Box<dyn Iterator<Item = usize>>) = if low_edge {
        (0, Box::new(0..m))
    } else {
        (m - 1, Box::new((0..m).rev()))
    };
    let mut pts = Vec::new();
    for i in range {
        if xs[i] / xs[anchor] > 10.0 || xs[anchor] / xs[i] > 10.0 {
            break;
        }
        if ys[i] > 0.0 {
            pts.push((xs[i].ln(), ys[i].ln()));
        }
    }
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol * (a.abs() + b.abs()).max(1e-30) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::measure::closed;

    #[test]
    fn kappa_for_power_family_is_two_over_alpha() {
        for &alpha in &[0.5, 1.0, 1.2, 1.8] {
            let m = LevyMeasureModel::stable_1d(alpha, 1.0).unwrap();
            let k = comparison_kappa_with(&m, 1e4, 16, 512).unwrap();
            assert!(k.holds);
            let want = 2.0 / alpha;
            assert!(
                (k.kappa - want).abs() / want < 0.10,
                "alpha={alpha}: kappa {} vs {want}",
                k.kappa
            );
            assert!((k.alpha_index - alpha).abs() / alpha < 0.10);
        }
    }

    #[test]
    fn kappa_isotropic_two_dimensional() {
        let alpha = 1.4;
        let m = LevyMeasureModel::new(MeasureFamily::StablePower { alpha }, 2, 1.0).unwrap();
        let k = comparison_kappa_with(&m, 100.0, 8, 512).unwrap();
        assert!(k.holds);
        assert!(
            (k.kappa - 2.0 / alpha).abs() / (2.0 / alpha) < 0.10,
            "kappa {}",
            k.kappa
        );
    }

    #[test]
    fn sphere_supremum_grid_density_independent_when_isotropic() {
        let m = LevyMeasureModel::new(MeasureFamily::StablePower { alpha: 1.5 }, 2, 1.0).unwrap();
        let a = sphere_extremum(&m, 10.0, 512, true);
        let b = sphere_extremum(&m, 10.0, 2048, true);
        assert!((a - b).abs() / b < 1e-10, "{a} vs {b}");
        // and both agree with the rotation-invariance shortcut
        let c = q_star_of_model(&m, 10.0, 512);
        assert!((a - c).abs() / c < 1e-9);
    }

    #[test]
    fn anisotropic_axis_product_supremum() {
        let m = LevyMeasureModel::new(
            MeasureFamily::AxisStable {
                alphas: vec![1.2, 1.8],
            },
            2,
            1.0,
        )
        .unwrap();
        let r = 10.0;
        let star = q_star_of_model(&m, r, 512);
        let axis_max = m
            .eval_q_upper(&[r, 0.0])
            .max(m.eval_q_upper(&[0.0, r]));
        // fine sweep oracle
        let mut sweep: f64 = 0.0;
        for j in 0..20_000 {
            let th = std::f64::consts::FRAC_PI_2 * (j as f64 + 0.5) / 20_000.0;
            sweep = sweep.max(m.eval_q_upper(&[r * th.cos(), r * th.sin()]));
        }
        assert!(star >= axis_max * (1.0 - 1e-12), "{star} vs axis {axis_max}");
        assert!((star - sweep).abs() / sweep < 1e-7, "{star} vs sweep {sweep}");
        // the sup sits within a fraction of a percent of the dominant axis
        assert!((star - axis_max) / axis_max < 5e-3);
    }

    #[test]
    fn rho_inverts_exact_power_profile() {
        let alpha = 1.5;
        let p = SymbolProfile::from_fn(|r| r.powf(alpha), 1e-3, 1e6, 64, 1);
        for &t in &[1e-6f64, 1e-4, 0.003, 0.2, 1.0] {
            let want = t.powf(-1.0 / alpha);
            let got = p.rho(t).unwrap();
            assert!(
                (got - want).abs() / want < 1e-9,
                "t={t}: rho {got} vs {want}"
            );
        }
    }

    #[test]
    fn from_power_profile_kappa_matches_index() {
        let p = SymbolProfile::from_power(1.0, 1.5, 1);
        let k = p.kappa();
        assert!(k.holds);
        assert!((k.kappa - 2.0 / 1.5).abs() < 1e-9);
        assert!((k.alpha_index - 1.5).abs() < 1e-9);
    }

    #[test]
    fn rho_returns_grid_node_at_exact_target() {
        let p = SymbolProfile::from_fn(|r| r * r, 1e-3, 1e6, 64, 1);
        let r0 = p.radii()[p.radii().len() / 2];
        let t = 1.0 / p.q_star_env_at(r0);
        let got = p.rho(t).unwrap();
        assert!((got - r0).abs() / r0 < 1e-9);
    }

    #[test]
    fn rho_monotone_nonincreasing_in_t() {
        let p = SymbolProfile::from_power(0.7, 1.3, 1);
        let mut prev = f64::INFINITY;
        for i in 1..=40 {
            let t = i as f64 / 40.0;
            let r = p.rho(t).unwrap();
            assert!(r <= prev * (1.0 + 1e-12), "t={t}");
            prev = r;
        }
        assert!(p.rho(0.0).is_err());
        assert!(p.rho(1.5).is_err());
    }

    #[test]
    fn power_envelope_exact_power() {
        let p = SymbolProfile::from_power(2.0, 1.5, 1);
        let env = p.power_envelope().unwrap();
        assert!((env.alpha_fit - 1.5).abs() < 1e-3);
        assert!((env.beta_fit - 1.5).abs() < 1e-3);
        assert!(!env.degenerate);
        assert!(env.residual < 1e-6);
    }

    #[test]
    fn power_envelope_mixed_sum_brackets_asymptotic_slopes() {
        // q = r^{1.2} + r^{1.7}: the local slope runs from (1.2+1.7)/2 at
        // r = 1 up to 1.7; analytic-slope oracle below.
        let p = SymbolProfile::from_fn(|r| r.powf(1.2) + r.powf(1.7), 1e-3, 1e6, 64, 1);
        let env = p.power_envelope().unwrap();
        let slope = |r: f64| {
            let (a, b) = (r.powf(1.2), r.powf(1.7));
            (1.2 * a + 1.7 * b) / (a + b)
        };
        assert!((env.alpha_fit - slope(1.0)).abs() < 5e-3, "{}", env.alpha_fit);
        assert!((env.beta_fit - 1.7).abs() < 5e-3, "{}", env.beta_fit);
        // the sandwich really holds on the grid
        for (&r, &q) in p.radii().iter().zip(p.q_values()) {
            if r >= 1.0 {
                assert!(env.c_lower * r.powf(env.alpha_fit) <= q * (1.0 + 1e-9));
                assert!(env.c_upper * r.powf(env.beta_fit) >= q * (1.0 - 1e-9));
            }
        }
    }

    #[test]
    fn power_envelope_constant_profile_degenerates() {
        let p = SymbolProfile::from_fn(|_| 1.0, 1e-3, 1e6, 64, 1);
        let env = p.power_envelope().unwrap();
        assert!(env.alpha_fit.abs() < 1e-9);
        assert!(env.beta_fit.abs() < 1e-9);
        assert!(env.degenerate);
    }

    #[test]
    fn insufficient_grid_above_one_errors() {
        let p = SymbolProfile::from_fn(|r| r, 1e-3, 1.1, 4, 1);
        assert!(matches!(
            p.power_envelope(),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn built_profile_satisfies_comparison_inequalities() {
        let m = LevyMeasureModel::stable_1d(1.5, 1.0).unwrap();
        let p = SymbolProfile::build(
            &m,
            &ProfileConfig {
                r_min: 1e-2,
                r_max: 1e3,
                nodes_per_decade: 12,
                sphere_points: 512,
            },
        )
        .unwrap();
        p.audit_invariants().unwrap();
        // κ in the table agrees with the closed form 2/α
        assert!((p.kappa().kappa - 2.0 / 1.5).abs() < 0.05);
        // lower power bound q(r) ≥ c r^{α(1-ε)} with the fitted constant
        let env = p.power().unwrap();
        let alpha = p.kappa().alpha_index;
        for (&r, &q) in p.radii().iter().zip(p.q_values()) {
            if r >= 1.0 {
                assert!(q >= 0.99 * env.c_lower * r.powf(alpha * 0.98));
            }
        }
        // spot value against the closed form
        let want = closed::stable_q(1.5, 1.0, 31.0);
        assert!((p.q_at(31.0) - want).abs() / want < 1e-3);
    }
}
