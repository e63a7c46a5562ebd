//! Force sensing with displaced Gaussian states under weak position
//! monitoring.
//!
//! A harmonic oscillator (ħ = 1, vacuum covariance `diag(1/2, 1/2)`) feels
//! a constant force θ. After interrogation time `t` the optimal estimator
//! observable is linear in the quadratures,
//!
//! ```text
//! L = (2t/det V) [ V_xp (x̂ − ⟨x̂⟩) − V_x (p̂ − ⟨p̂⟩) ]
//! ```
//!
//! with information `F_Q = Tr(ρL²) = 4t²V_x/det V` (vacuum: `8t²`).
//!
//! Conditioning on a weak position measurement with POVM density
//! `Π(α) ∝ exp(−2kΔt (x̂ − α)²)` merges a Gaussian of precision `d = 4kΔt`
//! into the state's Wigner function. The conditional information is the
//! expectation of `L²` under the merged Gaussian,
//!
//! ```text
//! V' = [[V_x, V_xp], [V_xp, V_p + d·det V]] / (1 + d V_x)
//! μ' = μ + d(α − μ_x)·(V'_x, V'_xp)
//! ```
//!
//! and it equals `F_Q` for **every** outcome α: the shift only moves the
//! mean, and `L` is centered so that the first-moment term cancels
//! identically (`V_xp V'_x − V_x V'_xp = 0`). Conditioning on a position
//! record costs nothing in this model. The quadrature evaluation here keeps
//! that statement honest end to end — the integrand is degree two, so
//! Gauss–Hermite is exact and the two-node-count gate only polices the
//! machinery.

use crate::error::{Error, Result};
use crate::quad::gaussian_expectation_2d;
use crate::tol;

/// First and second moments of a single-mode Gaussian state,
/// `mean = (⟨x̂⟩, ⟨p̂⟩)` and `cov = [[V_x, V_xp], [V_xp, V_p]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianState {
    mean: [f64; 2],
    cov: [[f64; 2]; 2],
}

impl GaussianState {
    /// Validate and wrap moments. Rejects non-finite entries, asymmetric
    /// covariances, indefinite covariances, and covariances sharper than
    /// the uncertainty relation allows (`det V ≥ 1/4` at ħ = 1).
    pub fn new(mean: [f64; 2], cov: [[f64; 2]; 2]) -> Result<Self> {
        let entries = [mean[0], mean[1], cov[0][0], cov[0][1], cov[1][0], cov[1][1]];
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::ConfigInvalid {
                path: "model.covariance".into(),
                message: "moments must be finite".into(),
            });
        }
        let scale = cov[0][0].abs().max(cov[1][1].abs()).max(1.0);
        if (cov[0][1] - cov[1][0]).abs() > tol::HERMITICITY * scale {
            return Err(Error::ConfigInvalid {
                path: "model.covariance".into(),
                message: format!(
                    "covariance must be symmetric, got off-diagonal {} vs {}",
                    cov[0][1], cov[1][0]
                ),
            });
        }
        let det = cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
        if !(cov[0][0] > 0.0) || !(det > 0.0) {
            return Err(Error::SingularCovariance { det });
        }
        if det < tol::UNCERTAINTY_DET_FLOOR - 1e-12 {
            return Err(Error::UnphysicalCovariance { det, floor: tol::UNCERTAINTY_DET_FLOOR });
        }
        Ok(Self { mean, cov })
    }

    /// The vacuum: zero mean, covariance `diag(1/2, 1/2)`.
    pub fn vacuum() -> Self {
        Self { mean: [0.0, 0.0], cov: [[0.5, 0.0], [0.0, 0.5]] }
    }

    /// `(⟨x̂⟩, ⟨p̂⟩)`.
    pub fn mean(&self) -> [f64; 2] {
        self.mean
    }

    /// The covariance matrix.
    pub fn cov(&self) -> [[f64; 2]; 2] {
        self.cov
    }

    /// Position variance `V_x`.
    pub fn vx(&self) -> f64 {
        self.cov[0][0]
    }

    /// `det V`.
    pub fn det(&self) -> f64 {
        self.cov[0][0] * self.cov[1][1] - self.cov[0][1] * self.cov[1][0]
    }
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::ConfigInvalid {
            path: "grid.t_final".into(),
            message: format!("interrogation time must be ≥ 0 and finite, got {t}"),
        });
    }
    Ok(())
}

/// Unconditional force information after interrogation time `t`:
/// `4t²V_x/det V`.
pub fn gaussian_qfi(state: &GaussianState, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(4.0 * t * t * state.vx() / state.det())
}

/// Conditional force information given outcome `alpha` of a weak position
/// measurement of strength `k` over window `delta_t`, evaluated as a
/// phase-space expectation of the squared estimator observable over the
/// measurement-merged Gaussian. Two Gauss–Hermite node counts (20 and 28
/// per axis) must agree to [`tol::QUADRATURE_AGREEMENT`] relative.
pub fn gaussian_cqfi(
    state: &GaussianState,
    t: f64,
    k: f64,
    delta_t: f64,
    alpha: f64,
) -> Result<f64> {
    check_time(t)?;
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::ConfigInvalid {
            path: "model.measurement_rate".into(),
            message: format!("measurement rate must be > 0 and finite, got {k}"),
        });
    }
    if !(delta_t > 0.0) || !delta_t.is_finite() {
        return Err(Error::ConfigInvalid {
            path: "model.window".into(),
            message: format!("measurement window must be > 0 and finite, got {delta_t}"),
        });
    }
    if !alpha.is_finite() {
        return Err(Error::ConfigInvalid {
            path: "model.outcome".into(),
            message: "measurement outcome must be finite".into(),
        });
    }

    let [mx, mp] = state.mean;
    let [[vx, vxp], [_, vp]] = state.cov;
    let det = state.det();

    // Estimator observable L = a(x̂ − μ_x) + b(p̂ − μ_p), centered on the
    // *unconditional* mean.
    let a = 2.0 * t * vxp / det;
    let b = -2.0 * t * vx / det;

    // Merge the measurement Gaussian (precision d in x) into the state.
    let d = 4.0 * k * delta_t;
    let denom = 1.0 + d * vx;
    let merged_cov = [
        [vx / denom, vxp / denom],
        [vxp / denom, (vp + d * det) / denom],
    ];
    let shift = d * (alpha - mx);
    let merged_mean = [mx + shift * merged_cov[0][0], mp + shift * merged_cov[0][1]];

    let integrand = |x: f64, p: f64| {
        let ell = a * (x - mx) + b * (p - mp);
        ell * ell
    };
    let coarse = gaussian_expectation_2d(merged_mean, merged_cov, 20, &integrand)?;
    let fine = gaussian_expectation_2d(merged_mean, merged_cov, 28, &integrand)?;
    let delta = (coarse - fine).abs();
    if delta > tol::QUADRATURE_AGREEMENT * fine.abs().max(1.0) {
        return Err(Error::QuadratureNonConvergence { low_nodes: 20, high_nodes: 28, delta });
    }
    Ok(fine)
}

/// Evolve the moments for time `t` under a harmonic trap of frequency
/// `omega` with constant force `theta`: the phase-space flow
/// `ẋ = ωp, ṗ = −ωx + θ` rotates everything about the displaced fixed
/// point `(θ/ω, 0)`.
pub fn gaussian_evolve_moments(
    state: &GaussianState,
    theta: f64,
    omega: f64,
    t: f64,
) -> Result<GaussianState> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::ConfigInvalid {
            path: "model.omega".into(),
            message: format!("trap frequency must be > 0 and finite, got {omega}"),
        });
    }
    if !theta.is_finite() {
        return Err(Error::ConfigInvalid {
            path: "model.theta".into(),
            message: "force must be finite".into(),
        });
    }
    check_time(t)?;

    let (s, c) = (omega * t).sin_cos();
    let fixed = [theta / omega, 0.0];
    let dx = state.mean[0] - fixed[0];
    let dp = state.mean[1] - fixed[1];
    let mean = [fixed[0] + c * dx + s * dp, fixed[1] - s * dx + c * dp];

    // V' = S V Sᵀ with S = [[c, s], [−s, c]].
    let [[vx, vxp], [_, vp]] = state.cov;
    let vx2 = c * c * vx + 2.0 * c * s * vxp + s * s * vp;
    let vp2 = s * s * vx - 2.0 * c * s * vxp + c * c * vp;
    let vxp2 = c * s * (vp - vx) + (c * c - s * s) * vxp;
    // Rotation preserves symmetry and the determinant exactly up to
    // roundoff; revalidate to keep the constructor invariant.
    GaussianState::new(mean, [[vx2, vxp2], [vxp2, vp2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_information_is_eight_t_squared() {
        let v = GaussianState::vacuum();
        for t in [0.0, 0.3, 1.0, 7.5] {
            let f = gaussian_qfi(&v, t).unwrap();
            assert!((f - 8.0 * t * t).abs() < 1e-12 * (1.0 + f));
        }
    }

    #[test]
    fn doubling_the_covariance_halves_the_information() {
        let v = GaussianState::new([0.4, -0.2], [[0.7, 0.1], [0.1, 0.9]]).unwrap();
        let w = GaussianState::new([0.4, -0.2], [[1.4, 0.2], [0.2, 1.8]]).unwrap();
        let fv = gaussian_qfi(&v, 2.0).unwrap();
        let fw = gaussian_qfi(&w, 2.0).unwrap();
        // F ∝ V_x/det V: doubling V doubles V_x and quadruples det V.
        assert!((fw - 0.5 * fv).abs() < 1e-12 * fv);
    }

    #[test]
    fn conditional_equals_unconditional_for_any_outcome() {
        let state = GaussianState::new([1.5, -0.3], [[0.8, 0.25], [0.25, 0.6]]).unwrap();
        let t = 3.0;
        let f = gaussian_qfi(&state, t).unwrap();
        // On-mean outcome, an outcome 3√V_x into the tail, and a strong
        // measurement all reproduce the unconditional value.
        for (k, dt, alpha) in [
            (1.0, 0.1, 1.5),
            (1.0, 0.1, 1.5 + 3.0 * 0.8f64.sqrt()),
            (50.0, 1.0, -4.0),
        ] {
            let fc = gaussian_cqfi(&state, t, k, dt, alpha).unwrap();
            assert!(
                (fc - f).abs() < 1e-9 * f,
                "k={k} dt={dt} alpha={alpha}: {fc} vs {f}"
            );
        }
    }

    #[test]
    fn zero_time_means_zero_information() {
        let state = GaussianState::vacuum();
        assert_eq!(gaussian_qfi(&state, 0.0).unwrap(), 0.0);
        let fc = gaussian_cqfi(&state, 0.0, 1.0, 0.1, 0.7).unwrap();
        assert!(fc.abs() < 1e-15);
    }

    #[test]
    fn quarter_period_swaps_the_quadrature_variances() {
        let state = GaussianState::new([0.2, 0.1], [[1.0, 0.3], [0.3, 0.4]]).unwrap();
        let omega = 2.0;
        let quarter = std::f64::consts::FRAC_PI_2 / omega;
        let rotated = gaussian_evolve_moments(&state, 0.0, omega, quarter).unwrap();
        let [[vx, vxp], [_, vp]] = rotated.cov();
        assert!((vx - 0.4).abs() < 1e-12);
        assert!((vp - 1.0).abs() < 1e-12);
        assert!((vxp + 0.3).abs() < 1e-12);
        // Force-free rotation about the origin maps (x, p) → (p, −x)·…:
        // mean rotates by the same matrix.
        let m = rotated.mean();
        assert!((m[0] - 0.1).abs() < 1e-12);
        assert!((m[1] + 0.2).abs() < 1e-12);
    }

    #[test]
    fn isotropic_state_sits_still_at_the_fixed_point() {
        let theta = 0.8;
        let omega = 1.6;
        let state = GaussianState::new([theta / omega, 0.0], [[0.5, 0.0], [0.0, 0.5]]).unwrap();
        for t in [0.37, 1.0, 4.2] {
            let evolved = gaussian_evolve_moments(&state, theta, omega, t).unwrap();
            let m = evolved.mean();
            assert!((m[0] - theta / omega).abs() < 1e-12);
            assert!(m[1].abs() < 1e-12);
            assert!((evolved.vx() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn full_period_is_the_identity_and_det_is_preserved() {
        let state = GaussianState::new([0.9, -1.1], [[0.9, -0.2], [-0.2, 0.5]]).unwrap();
        let omega = 0.7;
        let period = 2.0 * std::f64::consts::PI / omega;
        let back = gaussian_evolve_moments(&state, 1.3, omega, period).unwrap();
        for (a, b) in [(back.mean()[0], 0.9), (back.mean()[1], -1.1)] {
            assert!((a - b).abs() < 1e-12);
        }
        let half = gaussian_evolve_moments(&state, 1.3, omega, 0.31 * period).unwrap();
        assert!((half.det() - state.det()).abs() < 1e-12);
    }

    #[test]
    fn unphysical_and_singular_covariances_are_rejected() {
        // Sharper than the uncertainty floor.
        let err = GaussianState::new([0.0, 0.0], [[0.3, 0.0], [0.0, 0.3]]).unwrap_err();
        assert!(matches!(err, Error::UnphysicalCovariance { .. }), "{err}");
        // Indefinite.
        let err = GaussianState::new([0.0, 0.0], [[1.0, 2.0], [2.0, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::SingularCovariance { .. }), "{err}");
        // Asymmetric.
        let err = GaussianState::new([0.0, 0.0], [[1.0, 0.2], [0.1, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::ConfigInvalid { .. }), "{err}");
        // Bad trap frequency.
        let state = GaussianState::vacuum();
        assert!(gaussian_evolve_moments(&state, 0.0, 0.0, 1.0).is_err());
        assert!(gaussian_cqfi(&state, 1.0, 0.0, 0.1, 0.0).is_err());
    }
}
