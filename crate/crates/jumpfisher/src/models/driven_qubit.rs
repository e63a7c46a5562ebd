//! Driven two-level system in a thermal bath (rotating frame).
//!
//! In the frame rotating at the drive frequency, the Hamiltonian reduces
//! to `H = ε σ_x` and the bath enters through two jump channels,
//!
//! ```text
//! L_− = √(Γ₀(n̄+1)) σ_−   (emission)
//! L_+ = √(Γ₀ n̄)     σ_+   (absorption)
//! ```
//!
//! with `n̄ = 1/(e^{ω/T} − 1)` the thermal occupation at the qubit gap.
//! The rate-constant ratio `Γ_−/Γ_+ = (n̄+1)/n̄ = e^{ω/T}` is detailed
//! balance, holding exactly by construction. At `T = 0` the absorption
//! channel disappears.
//!
//! Conventions: basis index 0 is the excited state, `σ_− = |1⟩⟨0|`, and
//! ħ = k_B = 1. The default initial state is the bath's stationary thermal
//! state `diag(n̄, n̄+1)/(2n̄+1)` — the exact fixed point of the dissipator
//! alone, full-rank so conditional-information population floors never
//! trigger at t = 0.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lindblad::{GKSLModel, Hamiltonian, JumpOperator};
use crate::linalg::{qubit, ComplexMatrix, DensityMatrix};

/// Label of the emission channel in outputs.
pub const EMISSION: &str = "emission";
/// Label of the absorption channel in outputs.
pub const ABSORPTION: &str = "absorption";

/// Physical parameters of the driven thermal qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrivenQubitParams {
    /// Level splitting ω (sets the bath occupation via ω/T).
    pub omega: f64,
    /// Drive amplitude ε in the rotating frame (must stay ≪ ω for the
    /// rotating-wave reduction to make sense; enforced at config level).
    pub epsilon: f64,
    /// Spontaneous-emission rate Γ₀.
    pub gamma0: f64,
    /// Bath temperature T ≥ 0 (k_B = 1).
    pub temperature: f64,
}

impl DrivenQubitParams {
    /// Validate positivity constraints.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("model.omega", self.omega, false),
            ("model.epsilon", self.epsilon, false),
            ("model.gamma0", self.gamma0, false),
            ("model.temperature", self.temperature, true),
        ];
        for (path, value, zero_ok) in fields {
            let ok = value.is_finite() && if zero_ok { value >= 0.0 } else { value > 0.0 };
            if !ok {
                return Err(Error::ConfigInvalid {
                    path: path.into(),
                    message: format!(
                        "must be {} and finite, got {value}",
                        if zero_ok { "non-negative" } else { "positive" }
                    ),
                });
            }
        }
        Ok(())
    }

    /// Thermal occupation n̄ = 1/(e^{ω/T} − 1); zero at T = 0.
    pub fn nbar(&self) -> f64 {
        if self.temperature <= 0.0 {
            return 0.0;
        }
        1.0 / ((self.omega / self.temperature).exp() - 1.0)
    }

    /// Emission rate Γ₀(n̄+1).
    pub fn emission_rate(&self) -> f64 {
        self.gamma0 * (self.nbar() + 1.0)
    }

    /// Absorption rate Γ₀n̄.
    pub fn absorption_rate(&self) -> f64 {
        self.gamma0 * self.nbar()
    }
}

/// Build the GKSL model: `H = ε σ_x` with thermal emission/absorption.
pub fn build(params: &DrivenQubitParams) -> Result<GKSLModel> {
    params.validate()?;
    let mut jump_ops = vec![JumpOperator {
        matrix: qubit::sigma_minus().scale(Complex64::new(params.emission_rate().sqrt(), 0.0)),
        label: EMISSION.into(),
    }];
    let absorption = params.absorption_rate();
    if absorption > 0.0 {
        jump_ops.push(JumpOperator {
            matrix: qubit::sigma_plus().scale(Complex64::new(absorption.sqrt(), 0.0)),
            label: ABSORPTION.into(),
        });
    }
    GKSLModel::new(
        Hamiltonian::Static(qubit::sigma_x().scale(Complex64::new(params.epsilon, 0.0))),
        jump_ops,
    )
}

/// The bath's stationary thermal state `diag(n̄, n̄+1)/(2n̄+1)` used as the
/// initial condition for trajectory runs.
pub fn initial_state(params: &DrivenQubitParams) -> Result<DensityMatrix> {
    params.validate()?;
    let nbar = params.nbar();
    let z = 2.0 * nbar + 1.0;
    DensityMatrix::from_matrix(ComplexMatrix::from_real_rows(&[
        vec![nbar / z, 0.0],
        vec![0.0, (nbar + 1.0) / z],
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> DrivenQubitParams {
        DrivenQubitParams {
            omega: 1.0,
            epsilon: 0.1,
            gamma0: 0.05,
            // T = 1/ln 3 makes e^{ω/T} = 3 and n̄ = 1/2 exactly.
            temperature: 1.0 / 3.0f64.ln(),
        }
    }

    #[test]
    fn bose_occupation_oracle() {
        // ω/T = 1 → n̄ = 1/(e − 1).
        let p = DrivenQubitParams { omega: 1.0, epsilon: 0.1, gamma0: 0.1, temperature: 1.0 };
        assert!((p.nbar() - 1.0 / (std::f64::consts::E - 1.0)).abs() < 1e-15);
        assert!((p.nbar() - 0.5819767068693265).abs() < 1e-13);
    }

    #[test]
    fn zero_temperature_removes_the_absorption_channel() {
        let p = DrivenQubitParams { temperature: 0.0, ..params() };
        assert_eq!(p.nbar(), 0.0);
        let model = build(&p).unwrap();
        assert_eq!(model.jump_ops().len(), 1);
        assert_eq!(model.jump_ops()[0].label, EMISSION);
    }

    #[test]
    fn detailed_balance_rate_ratio_is_exact() {
        // Γ_−/Γ_+ = (n̄+1)/n̄ = e^{ω/T} to machine precision, across a
        // deterministic sweep of parameter combinations.
        for i in 1..=10 {
            for j in 1..=10 {
                let p = DrivenQubitParams {
                    omega: 0.3 * i as f64,
                    epsilon: 0.01,
                    gamma0: 0.02 * j as f64,
                    temperature: 0.25 * j as f64,
                };
                let ratio = p.emission_rate() / p.absorption_rate();
                let boltzmann = (p.omega / p.temperature).exp();
                assert!(
                    (ratio - boltzmann).abs() <= 1e-12 * boltzmann,
                    "ratio {ratio} vs e^(ω/T) {boltzmann}"
                );
            }
        }
    }

    #[test]
    fn default_initial_state_is_the_dissipator_fixed_point() {
        let p = params();
        assert!((p.nbar() - 0.5).abs() < 1e-14);
        let rho0 = initial_state(&p).unwrap();
        assert!((rho0.matrix().get(0, 0).re - 0.25).abs() < 1e-14);
        assert!((rho0.matrix().get(1, 1).re - 0.75).abs() < 1e-14);

        let model = build(&p).unwrap();
        let rhs = model.gksl_rhs(&rho0, 0.0).unwrap();
        // Only the drive contributes: the dissipative part is zero, so the
        // generator is the pure commutator −iε[σ_x, ρ0] with |entries| ε/2.
        assert!((rhs.matrix().get(0, 1).norm() - p.epsilon / 2.0).abs() < 1e-14);
        assert!(rhs.matrix().get(0, 0).norm() < 1e-16);
    }

    #[test]
    fn invalid_parameters_are_named() {
        let bad = DrivenQubitParams { gamma0: -0.1, ..params() };
        match build(&bad) {
            Err(Error::ConfigInvalid { path, .. }) => assert_eq!(path, "model.gamma0"),
            other => panic!("expected ConfigInvalid, got {other:?}"),
        }
    }
}
