//! Thermal-qubit field sensing: an all-closed-form conditional-information
//! oracle.
//!
//! A qubit with Hamiltonian `H = (Δσ_z + θσ_x)/2` sits in a Gibbs state
//! `ρ_θ = e^{−βH}/Z`. The generalized Rabi frequency `Ω = √(Δ² + θ²)`
//! gives the spectrum `±Ω/2`, populations
//!
//! ```text
//! p_± = ½ [1 ∓ tanh(βΩ/2)]
//! ```
//!
//! and, conditioning on an energy-eigenstate outcome, closed-form
//! conditional information channels for estimating θ:
//!
//! ```text
//! f^IC_± = (β²θ²/4Ω²) [1 ± tanh(βΩ/2)]²      (population channel)
//! f^C    = (Δ²/Ω⁴) tanh²(βΩ/2)               (rotation channel, same
//!                                              for both outcomes)
//! ```
//!
//! The coherent channel carries the *square* of `tanh(βΩ/2)`: it is
//! `2σ_{+−}|⟨−|∂θ+⟩|²` per ordered pair with `σ_{+−} = (p_+ − p_−)²` and
//! `⟨∓|∂θ±⟩ = ±Δ/2Ω²`, so the population imbalance enters squared. The
//! β → ∞ limit is the cleanest check: a pure eigenstate has
//! `f^C = Δ²/Ω⁴ = |∂θ angle|²`, exactly the pure-state QFI/4 structure.
//!
//! These formulas are what the generic pipeline (spectral SLD + conditional
//! decomposition, with a finite-difference ∂ρ) must reproduce; the
//! comparison is the repo's strongest end-to-end regression test.

use num_complex::Complex64;

use crate::cqfi::cqfi_pure;
use crate::error::{Error, Result};
use crate::linalg::{qubit, ComplexMatrix, DensityMatrix, HermitianOperator};
use crate::sld::{solve_sld, SldData};

/// Parameters of the thermal field sensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalFieldSensorParams {
    /// Longitudinal gap Δ.
    pub delta: f64,
    /// Transverse field θ (the estimated parameter).
    pub theta: f64,
    /// Inverse temperature β ≥ 0.
    pub beta: f64,
}

impl ThermalFieldSensorParams {
    /// Generalized Rabi frequency Ω = √(Δ² + θ²).
    pub fn rabi(&self) -> f64 {
        self.delta.hypot(self.theta)
    }

    /// Validate: β ≥ 0 and Ω > 0, all finite.
    pub fn validate(&self) -> Result<()> {
        if !self.beta.is_finite() || self.beta < 0.0 {
            return Err(Error::ConfigInvalid {
                path: "model.beta".into(),
                message: format!("inverse temperature must be ≥ 0 and finite, got {}", self.beta),
            });
        }
        if !self.delta.is_finite() || !self.theta.is_finite() || !(self.rabi() > 0.0) {
            return Err(Error::ConfigInvalid {
                path: "model.delta".into(),
                message: format!(
                    "gap and field must be finite with √(Δ²+θ²) > 0, got Δ = {}, θ = {}",
                    self.delta, self.theta
                ),
            });
        }
        Ok(())
    }
}

/// The closed-form reference values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorClosedForms {
    /// Population of the upper (excited) eigenstate.
    pub p_plus: f64,
    /// Population of the lower (ground) eigenstate.
    pub p_minus: f64,
    /// Incoherent conditional information given the excited outcome.
    pub f_ic_plus: f64,
    /// Incoherent conditional information given the ground outcome.
    pub f_ic_minus: f64,
    /// Coherent conditional information (outcome-independent).
    pub f_c: f64,
}

/// Evaluate the closed forms.
pub fn closed_forms(params: &ThermalFieldSensorParams) -> Result<SensorClosedForms> {
    params.validate()?;
    let omega = params.rabi();
    let th = (params.beta * omega / 2.0).tanh();
    let prefactor = params.beta * params.beta * params.theta * params.theta / (4.0 * omega * omega);
    Ok(SensorClosedForms {
        p_plus: 0.5 * (1.0 - th),
        p_minus: 0.5 * (1.0 + th),
        f_ic_plus: prefactor * (1.0 + th) * (1.0 + th),
        f_ic_minus: prefactor * (1.0 - th) * (1.0 - th),
        f_c: params.delta * params.delta / omega.powi(4) * th * th,
    })
}

/// The sensor Hamiltonian `(Δσ_z + θσ_x)/2`.
pub fn hamiltonian(params: &ThermalFieldSensorParams) -> HermitianOperator {
    let m = qubit::sigma_z()
        .scale(Complex64::new(0.5 * params.delta, 0.0))
        .add(&qubit::sigma_x().scale(Complex64::new(0.5 * params.theta, 0.0)))
        .expect("2x2 Pauli sums are dimension-consistent");
    HermitianOperator::new(m).expect("real combination of Pauli matrices is Hermitian")
}

/// The Gibbs state `e^{−βH}/Z`, built analytically from the qubit spectrum
/// (no matrix exponential needed: H = (Ω/2) n̂·σ, so ρ = ½(1 − tanh(βΩ/2) n̂·σ)).
pub fn thermal_state(params: &ThermalFieldSensorParams) -> Result<DensityMatrix> {
    params.validate()?;
    let omega = params.rabi();
    let th = (params.beta * omega / 2.0).tanh();
    let nx = params.theta / omega;
    let nz = params.delta / omega;
    let m = ComplexMatrix::from_real_rows(&[
        vec![0.5 * (1.0 - th * nz), -0.5 * th * nx],
        vec![-0.5 * th * nx, 0.5 * (1.0 + th * nz)],
    ]);
    DensityMatrix::from_matrix(m)
}

/// ∂ρ/∂θ by 4th-order central finite difference with step
/// `h = 1e-4·max(1, |θ|)`, symmetrized. The even/odd structure of the
/// Gibbs state in θ makes the population derivative exactly zero at θ = 0,
/// so the θ → 0 limit of the incoherent channel is exact, not approximate.
pub fn thermal_state_derivative_fd(params: &ThermalFieldSensorParams) -> Result<HermitianOperator> {
    params.validate()?;
    let h = 1e-4 * params.theta.abs().max(1.0);
    let at = |theta: f64| -> Result<ComplexMatrix> {
        Ok(thermal_state(&ThermalFieldSensorParams { theta, ..*params })?
            .matrix()
            .clone())
    };
    let p2 = at(params.theta + 2.0 * h)?;
    let p1 = at(params.theta + h)?;
    let m1 = at(params.theta - h)?;
    let m2 = at(params.theta - 2.0 * h)?;
    let num = p1
        .scale(Complex64::new(8.0, 0.0))
        .sub(&m1.scale(Complex64::new(8.0, 0.0)))?
        .sub(&p2)?
        .add(&m2)?;
    HermitianOperator::symmetrized(num.scale(Complex64::new(1.0 / (12.0 * h), 0.0)))
}

/// The same five quantities as [`closed_forms`], but computed by the
/// generic machinery: spectral SLD from the finite-difference derivative,
/// conditional decomposition on the two eigenstate outcomes.
pub fn pipeline_values(params: &ThermalFieldSensorParams) -> Result<SensorClosedForms> {
    let rho = thermal_state(params)?;
    let drho = thermal_state_derivative_fd(params)?;
    let sld = solve_sld(&rho, &drho)?;
    let (plus, minus) = eigenstate_outcomes(&sld)?;
    Ok(SensorClosedForms {
        p_plus: plus.0,
        p_minus: minus.0,
        f_ic_plus: plus.1,
        f_ic_minus: minus.1,
        // The rotation channel is outcome-independent; report the mean of
        // the two (equal) values.
        f_c: 0.5 * (plus.2 + minus.2),
    })
}

/// Conditional (population, incoherent, coherent) for the excited and
/// ground eigenstate outcomes. Eigenvalues sort descending, so index 0 is
/// the *ground* state (larger thermal weight) whenever β > 0; at β = 0 the
/// state is maximally mixed and the labels are arbitrary but harmless
/// (everything is symmetric).
fn eigenstate_outcomes(sld: &SldData) -> Result<((f64, f64, f64), (f64, f64, f64))> {
    let spectral = sld.spectral();
    let mut out = Vec::with_capacity(2);
    for n in 0..2 {
        let probe = spectral.eigenstate(n);
        let sample = cqfi_pure(&probe, sld)?;
        out.push((spectral.eigenvalues()[n], sample.ic, sample.coh));
    }
    // out[0] is the dominant (ground, "−") outcome; out[1] the excited "+".
    Ok((out[1], out[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sld::{qfi, qfi_decompose};

    fn params(delta: f64, theta: f64, beta: f64) -> ThermalFieldSensorParams {
        ThermalFieldSensorParams { delta, theta, beta }
    }

    #[test]
    fn unit_parameter_oracle() {
        // Δ = θ = β = 1: Ω = √2, f^C = (1/4)·tanh²(√2/2).
        let cf = closed_forms(&params(1.0, 1.0, 1.0)).unwrap();
        let th = (0.5f64 * 2.0f64.sqrt()).tanh();
        assert!((cf.f_c - 0.25 * th * th).abs() < 1e-15);
        assert!((cf.f_c - 0.09267743159128658).abs() < 1e-12);
        assert!((cf.p_plus + cf.p_minus - 1.0).abs() < 1e-15);
        assert!(cf.p_plus < cf.p_minus, "excited outcome is the rare one");
    }

    #[test]
    fn zero_field_kills_the_population_channel() {
        let cf = closed_forms(&params(1.3, 0.0, 2.0)).unwrap();
        assert_eq!(cf.f_ic_plus, 0.0);
        assert_eq!(cf.f_ic_minus, 0.0);
        assert!(cf.f_c > 0.0);
        // And the pipeline agrees exactly (central differences cancel the
        // even population dependence to the last bit).
        let pv = pipeline_values(&params(1.3, 0.0, 2.0)).unwrap();
        assert!(pv.f_ic_plus.abs() < 1e-12);
        assert!(pv.f_ic_minus.abs() < 1e-12);
    }

    #[test]
    fn infinite_temperature_kills_the_rotation_channel() {
        let cf = closed_forms(&params(0.8, 0.5, 0.0)).unwrap();
        assert_eq!(cf.f_c, 0.0);
        assert_eq!(cf.p_plus, 0.5);
        // Pipeline: ρ = I/2 for every θ, so the FD derivative is exactly 0.
        let pv = pipeline_values(&params(0.8, 0.5, 0.0)).unwrap();
        assert!(pv.f_c.abs() < 1e-12);
        assert!(pv.f_ic_plus.abs() < 1e-12);
    }

    #[test]
    fn pipeline_reproduces_all_closed_forms() {
        for (d, t, b) in [(1.0, 1.0, 1.0), (0.7, 1.9, 0.4), (2.0, 0.3, 2.5), (0.5, 0.5, 3.0)] {
            let p = params(d, t, b);
            let cf = closed_forms(&p).unwrap();
            let pv = pipeline_values(&p).unwrap();
            for (a, b, what) in [
                (cf.p_plus, pv.p_plus, "p+"),
                (cf.p_minus, pv.p_minus, "p-"),
                (cf.f_ic_plus, pv.f_ic_plus, "ic+"),
                (cf.f_ic_minus, pv.f_ic_minus, "ic-"),
                (cf.f_c, pv.f_c, "coh"),
            ] {
                assert!(
                    (a - b).abs() < 1e-8,
                    "({d},{t},{b}) {what}: closed {a} vs pipeline {b}"
                );
            }
        }
    }

    #[test]
    fn ensemble_decomposition_matches_population_weighted_conditionals() {
        // F_IC = Σ p_± (dp_±/p_±)² = p₊·ic₊ + p₋·ic₋ and F_C = f^C.
        let p = params(1.1, 0.6, 1.7);
        let cf = closed_forms(&p).unwrap();
        let rho = thermal_state(&p).unwrap();
        let drho = thermal_state_derivative_fd(&p).unwrap();
        let sld = solve_sld(&rho, &drho).unwrap();
        let (f_ic, f_c) = qfi_decompose(&sld);
        let expected_ic = cf.p_plus * cf.f_ic_plus + cf.p_minus * cf.f_ic_minus;
        assert!((f_ic - expected_ic).abs() < 1e-8, "{f_ic} vs {expected_ic}");
        assert!((f_c - cf.f_c).abs() < 1e-8);
        assert!((qfi(&sld) - (expected_ic + cf.f_c)).abs() < 1e-8);
    }

    #[test]
    fn gibbs_state_matches_its_spectrum() {
        let p = params(1.0, 0.5, 2.0);
        let rho = thermal_state(&p).unwrap();
        let h = hamiltonian(&p);
        // ρ commutes with H and has eigenvalues e^{∓βΩ/2}/Z.
        let comm = crate::linalg::commutator(rho.matrix(), h.matrix()).unwrap();
        assert!(comm.max_abs() < 1e-15);
        let spectral = crate::eig::eig_density(&rho).unwrap();
        let omega = p.rabi();
        let z = 2.0 * (p.beta * omega / 2.0).cosh();
        assert!((spectral.eigenvalues()[0] - (p.beta * omega / 2.0).exp() / z).abs() < 1e-14);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(params(0.0, 0.0, 1.0).validate().is_err());
        assert!(params(1.0, 0.0, -0.5).validate().is_err());
        assert!(params(f64::NAN, 0.0, 1.0).validate().is_err());
    }
}
