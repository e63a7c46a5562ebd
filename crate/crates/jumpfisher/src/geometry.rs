//! Information geometry along the evolution: thermodynamic length, action,
//! and quantum speed limits.
//!
//! With `I(t)` the Fisher information along the time direction (ensemble
//! `F_Q(t)`, or a single trajectory's conditional `f_γ(t)`), define
//!
//! ```text
//! ℒ(t) = ½ ∫₀ᵗ √I(s) ds          (statistical / thermodynamic length)
//! 𝒥(t) = (t/4) ∫₀ᵗ I(s) ds        (thermodynamic divergence / action)
//! ```
//!
//! Both integrals use the same cumulative trapezoid weights, which makes
//! the Cauchy–Schwarz chain *exact in the discretization*, not just in the
//! continuum limit:
//!
//! ```text
//! 𝒥(t) ≥ ℒ(t)²,   δ(t) = 4(𝒥 − ℒ²)/t² ≥ 0,   Ī(t) − δ(t) = 4ℒ²/t² ≥ 0
//! ```
//!
//! where `Ī` is the running time average of `I`. δ measures how unevenly
//! the information is spent over time: δ = 0 exactly for constant `I`
//! (the geodesic schedule), and grows as the schedule bunches up.
//!
//! The speed-limit helpers compare observable drift against the metric:
//! `|d⟨O⟩/dt| ≤ Δ_ρO · √F_Q` pointwise for the ensemble, and the integral
//! form `∫ |d⟨O⟩/dt| / Δ_ρO dt ≤ 2ℒ(t)`. Both follow from Cauchy–Schwarz
//! against the SLD, with `⟨L⟩ = Tr(∂ρ) = 0`. Points where the variance
//! collapses below [`tol::VARIANCE_FLOOR`] are excluded from the pointwise
//! ratio (the bound degenerates to 0 ≤ 0) and counted so the caller can
//! report how much of the grid was skipped.

use crate::error::{Error, Result};
use crate::lindblad::EnsembleSolution;
use crate::linalg::{variance, HermitianOperator, PureState};
use crate::tol;

/// Cumulative trapezoid integral of `g` over `times`; `out[0] = 0`.
fn cumulative_trapezoid(times: &[f64], g: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(times.len());
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..times.len() {
        acc += 0.5 * (times[i] - times[i - 1]) * (g[i] + g[i - 1]);
        out.push(acc);
    }
    out
}

/// Length/action series built from one information time series.
#[derive(Debug, Clone)]
pub struct GeometrySeries {
    times: Vec<f64>,
    /// Running integral ∫₀ᵗ I ds.
    info_integral: Vec<f64>,
    /// ℒ(t_i).
    length: Vec<f64>,
    /// 𝒥(t_i).
    action: Vec<f64>,
}

impl GeometrySeries {
    /// Grid times.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// Whether the series is empty (never true once constructed).
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Thermodynamic length ℒ(t_i).
    pub fn length(&self, i: usize) -> f64 {
        self.length[i]
    }

    /// Thermodynamic action 𝒥(t_i).
    pub fn action(&self, i: usize) -> f64 {
        self.action[i]
    }

    /// The full length series.
    pub fn lengths(&self) -> &[f64] {
        &self.length
    }

    /// The full action series.
    pub fn actions(&self) -> &[f64] {
        &self.action
    }

    /// Length at the final grid point.
    pub fn final_length(&self) -> f64 {
        *self.length.last().expect("series is nonempty by construction")
    }

    /// Action at the final grid point.
    pub fn final_action(&self) -> f64 {
        *self.action.last().expect("series is nonempty by construction")
    }

    /// Schedule unevenness δ(t_i) = 4(𝒥 − ℒ²)/t² (0 at t = 0).
    pub fn excess(&self, i: usize) -> f64 {
        let t = self.times[i];
        if t <= 0.0 {
            return 0.0;
        }
        4.0 * (self.action[i] - self.length[i] * self.length[i]) / (t * t)
    }

    /// Running time average Ī(t_i) = (1/t)∫₀ᵗ I ds (value of I at t = 0).
    pub fn time_avg_info(&self, i: usize) -> f64 {
        let t = self.times[i];
        if t <= 0.0 {
            // Empty averaging window; report the instantaneous value that
            // the limit t → 0 gives.
            return 0.0;
        }
        self.info_integral[i] / t
    }
}

/// Integrate an information time series into length and action.
///
/// Rejects negative samples outright: the inputs are squared norms, so a
/// negative value means the caller fed something that is not a Fisher
/// information, and √I would silently turn it into NaN.
pub fn geometry_series(times: &[f64], info: &[f64]) -> Result<GeometrySeries> {
    if times.is_empty() {
        return Err(Error::EmptySample);
    }
    if times.len() != info.len() {
        return Err(Error::DimensionMismatch { left: times.len(), right: info.len() });
    }
    for (i, &v) in info.iter().enumerate() {
        if !(v >= 0.0) {
            return Err(Error::NegativeSample { value: v, index: i });
        }
    }
    let sqrt_info: Vec<f64> = info.iter().map(|v| v.sqrt()).collect();
    let info_integral = cumulative_trapezoid(times, info);
    let sqrt_integral = cumulative_trapezoid(times, &sqrt_info);
    let length: Vec<f64> = sqrt_integral.iter().map(|v| 0.5 * v).collect();
    let action: Vec<f64> = info_integral
        .iter()
        .zip(times)
        .map(|(v, &t)| 0.25 * t * v)
        .collect();
    Ok(GeometrySeries { times: times.to_vec(), info_integral, length, action })
}

/// Variance of an observable in a pure state, clamped at zero.
pub fn pure_variance(observable: &HermitianOperator, psi: &PureState) -> f64 {
    let o_psi = observable.matrix().apply(psi.amps());
    let second: f64 = o_psi.iter().map(|z| z.norm_sqr()).sum();
    let mean = psi.expectation(observable);
    (second - mean * mean).max(0.0)
}

/// One grid point of a speed-limit comparison.
#[derive(Debug, Clone, Copy)]
pub struct SpeedLimitPoint {
    /// Grid time.
    pub t: f64,
    /// |d⟨O⟩/dt| at this point.
    pub lhs: f64,
    /// Δ_ρO · √F_Q at this point.
    pub rhs: f64,
    /// True when ΔO fell below the variance floor and the pointwise ratio
    /// is not meaningful.
    pub excluded: bool,
}

/// Pointwise and integral speed-limit data for one observable.
#[derive(Debug, Clone)]
pub struct SpeedLimitSeries {
    /// Per-grid-point comparison.
    pub points: Vec<SpeedLimitPoint>,
    /// Running integral ∫ |d⟨O⟩/dt| / Δ_ρO ds (excluded points contribute
    /// zero to the integrand).
    pub ratio_integral: Vec<f64>,
    /// How many grid points were excluded by the variance floor.
    pub excluded_count: usize,
}

/// Evaluate the ensemble speed limit for `observable` along a solved
/// evolution, given the Fisher information series on the same grid.
pub fn ensemble_speed_limit(
    solution: &EnsembleSolution,
    observable: &HermitianOperator,
    info: &[f64],
) -> Result<SpeedLimitSeries> {
    let n = solution.len();
    if info.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: info.len() });
    }
    let mut points = Vec::with_capacity(n);
    let mut integrand = Vec::with_capacity(n);
    let mut excluded_count = 0;
    for i in 0..n {
        let t = solution.times()[i];
        let drho = solution.derivative(i);
        let lhs = observable
            .matrix()
            .mul(drho.matrix())?
            .trace()
            .re
            .abs();
        let var = variance(observable, solution.state(i))?;
        let std = var.sqrt();
        let excluded = var < tol::VARIANCE_FLOOR;
        if excluded {
            excluded_count += 1;
            integrand.push(0.0);
        } else {
            integrand.push(lhs / std);
        }
        let rhs = std * info[i].max(0.0).sqrt();
        points.push(SpeedLimitPoint { t, lhs, rhs, excluded });
    }
    let ratio_integral = cumulative_trapezoid(solution.times(), &integrand);
    Ok(SpeedLimitSeries { points, ratio_integral, excluded_count })
}

/// Sample statistics for the trajectory-vs-ensemble geometry hierarchy at
/// a fixed time: 𝒥 ≥ ℒ² ≥ Var(ℓ_γ) and ⟨j_γ⟩ → 𝒥.
#[derive(Debug, Clone, Copy)]
pub struct HierarchyStats {
    /// Sample size.
    pub n: usize,
    /// Mean trajectory length ⟨ℓ_γ⟩.
    pub mean_ell: f64,
    /// Standard error of the mean length.
    pub sem_ell: f64,
    /// Unbiased sample variance of ℓ_γ.
    pub var_ell: f64,
    /// Approximate standard error of `var_ell` (Gaussian-based √(2/(n−1))).
    pub se_var_ell: f64,
    /// Mean trajectory action ⟨j_γ⟩.
    pub mean_j: f64,
    /// Standard error of the mean action.
    pub sem_j: f64,
}

/// Compute the hierarchy statistics from per-trajectory final lengths and
/// actions. Requires at least 100 trajectories — below that the variance
/// comparison has no statistical teeth.
pub fn hierarchy_stats(ell: &[f64], action: &[f64]) -> Result<HierarchyStats> {
    const NEED: usize = 100;
    if ell.len() != action.len() {
        return Err(Error::DimensionMismatch { left: ell.len(), right: action.len() });
    }
    let n = ell.len();
    if n < NEED {
        return Err(Error::InsufficientSample { got: n, need: NEED });
    }
    let nf = n as f64;
    let mean_ell = ell.iter().sum::<f64>() / nf;
    let var_ell = ell.iter().map(|v| (v - mean_ell) * (v - mean_ell)).sum::<f64>() / (nf - 1.0);
    let sem_ell = (var_ell / nf).sqrt();
    let se_var_ell = var_ell * (2.0 / (nf - 1.0)).sqrt();
    let mean_j = action.iter().sum::<f64>() / nf;
    let var_j = action.iter().map(|v| (v - mean_j) * (v - mean_j)).sum::<f64>() / (nf - 1.0);
    let sem_j = (var_j / nf).sqrt();
    Ok(HierarchyStats { n, mean_ell, sem_ell, var_ell, se_var_ell, mean_j, sem_j })
}
