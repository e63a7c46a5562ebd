//! GKSL (Lindblad) master-equation models and a deterministic propagator.
//!
//! The generator is the standard diagonal form
//!
//! ```text
//! ∂ρ = −i[H, ρ] + Σ_k ( L_k ρ L_k† − ½{L_k†L_k, ρ} )
//! ```
//!
//! with ħ = 1 and the rates absorbed into the jump operators
//! (`L_k = √γ_k A_k`). [`GKSLModel::evolve`] integrates it with classical
//! fixed-step RK4 on the full density matrix and hands back the state *and*
//! the generator evaluated on it at every grid point, so downstream Fisher
//! calculations differentiate the true flow rather than a finite-difference
//! shadow of it.
//!
//! The propagator guards itself: the step must resolve the fastest scale
//! (`dt · max_rate ≤ 0.1`), the trace may not drift by more than
//! [`tol::STEP_TRACE_DRIFT`] per step, and any eigenvalue sinking below
//! −[`tol::POSITIVITY_LOSS`] aborts the run — RK4 is not positivity
//! preserving, so a state leaving the physical cone means the step size
//! lost the fight, and silently continuing would corrupt every statistic
//! built on top.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{anticommutator, commutator, ComplexMatrix, DensityMatrix, HermitianOperator};
use crate::tol;

/// A jump (collapse) operator with the rate folded in, plus a label used
/// in outputs when counting channel events.
#[derive(Debug, Clone)]
pub struct JumpOperator {
    /// √rate × operator.
    pub matrix: ComplexMatrix,
    /// Channel name, e.g. `"emission"`.
    pub label: String,
}

/// Hamiltonian of a model: static, or an explicit function of time.
#[derive(Clone)]
pub enum Hamiltonian {
    /// Time-independent H.
    Static(ComplexMatrix),
    /// H(t) supplied as a callback; evaluated at each integrator stage.
    TimeDependent(Arc<dyn Fn(f64) -> ComplexMatrix + Send + Sync>),
}

impl std::fmt::Debug for Hamiltonian {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Hamiltonian::Static(m) => f.debug_tuple("Static").field(m).finish(),
            Hamiltonian::TimeDependent(_) => f.write_str("TimeDependent(..)"),
        }
    }
}

/// A GKSL model: Hamiltonian plus labeled jump operators.
#[derive(Debug, Clone)]
pub struct GKSLModel {
    dim: usize,
    hamiltonian: Hamiltonian,
    jump_ops: Vec<JumpOperator>,
    /// Precomputed K = Σ L†L for the static parts (always valid: jump
    /// operators are time-independent here).
    total_rate_op: ComplexMatrix,
}

impl GKSLModel {
    /// Build a model, validating dimensions and the Hermiticity of H
    /// (checked at t = 0 for time-dependent Hamiltonians).
    pub fn new(hamiltonian: Hamiltonian, jump_ops: Vec<JumpOperator>) -> Result<Self> {
        let h0 = match &hamiltonian {
            Hamiltonian::Static(m) => m.clone(),
            Hamiltonian::TimeDependent(f) => f(0.0),
        };
        // Validates Hermiticity as a side effect.
        let h0 = HermitianOperator::new(h0)?;
        let dim = h0.dim();
        let mut total_rate_op = ComplexMatrix::zeros(dim);
        for op in &jump_ops {
            if op.matrix.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: op.matrix.dim() });
            }
            total_rate_op = total_rate_op.add(&op.matrix.adjoint().mul(&op.matrix)?)?;
        }
        Ok(Self { dim, hamiltonian, jump_ops, total_rate_op })
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The Hamiltonian at time `t`.
    pub fn hamiltonian_at(&self, t: f64) -> ComplexMatrix {
        match &self.hamiltonian {
            Hamiltonian::Static(m) => m.clone(),
            Hamiltonian::TimeDependent(f) => f(t),
        }
    }

    /// Whether the Hamiltonian is time-independent (enables precomputed
    /// propagators in the stochastic stepper).
    pub fn is_static(&self) -> bool {
        matches!(self.hamiltonian, Hamiltonian::Static(_))
    }

    /// The jump operators.
    pub fn jump_ops(&self) -> &[JumpOperator] {
        &self.jump_ops
    }

    /// K = Σ_k L_k†L_k, the total jump-rate operator.
    pub fn total_rate_op(&self) -> &ComplexMatrix {
        &self.total_rate_op
    }

    /// The dissipative part `Σ_k (L_k m L_k† − ½{L_k†L_k, m})` applied to an
    /// arbitrary matrix.
    pub fn dissipator(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        let mut out = ComplexMatrix::zeros(self.dim);
        for op in &self.jump_ops {
            let sandwich = op.matrix.mul(&m.mul(&op.matrix.adjoint())?)?;
            out = out.add(&sandwich)?;
        }
        let damping = anticommutator(&self.total_rate_op, m)?.scale(Complex64::new(-0.5, 0.0));
        out.add(&damping)
    }

    /// Right-hand side of the master equation on a raw matrix (used by the
    /// integrator, whose internal stages are not valid density matrices).
    fn rhs_raw(&self, m: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
        let h = self.hamiltonian_at(t);
        let unitary = commutator(&h, m)?.scale(Complex64::new(0.0, -1.0));
        unitary.add(&self.dissipator(m)?)
    }

    /// The GKSL generator evaluated on a physical state: Hermitian and
    /// traceless by construction of the generator.
    pub fn gksl_rhs(&self, rho: &DensityMatrix, t: f64) -> Result<HermitianOperator> {
        HermitianOperator::new(self.rhs_raw(rho.matrix(), t)?)
    }

    /// A conservative magnitude for the fastest rate in the generator,
    /// used to reject steps too coarse to resolve the dynamics.
    pub fn max_rate(&self, t: f64) -> f64 {
        self.hamiltonian_at(t)
            .frobenius_norm()
            .max(self.total_rate_op.frobenius_norm())
    }

    /// Integrate the master equation from `rho0` over `[0, t_final]` with
    /// fixed step `dt`, recording the state and generator at every grid
    /// point (including both endpoints).
    pub fn evolve(&self, rho0: &DensityMatrix, t_final: f64, dt: f64) -> Result<EnsembleSolution> {
        if rho0.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: rho0.dim() });
        }
        let step_action = dt * self.max_rate(0.0);
        if !(step_action <= tol::MAX_STEP_ACTION) {
            return Err(Error::StepTooLarge { step_action, limit: tol::MAX_STEP_ACTION });
        }
        let n_steps = grid_steps(t_final, dt)?;

        let mut times = Vec::with_capacity(n_steps + 1);
        let mut states = Vec::with_capacity(n_steps + 1);
        let mut derivatives = Vec::with_capacity(n_steps + 1);

        let mut m = rho0.matrix().clone();
        for i in 0..=n_steps {
            let t = i as f64 * dt;
            let rho = DensityMatrix::from_matrix(m.clone())?;
            derivatives.push(self.gksl_rhs(&rho, t)?);
            states.push(rho);
            times.push(t);
            if i == n_steps {
                break;
            }

            let next = self.rk4_step(&m, t, dt)?;
            // Symmetrize to stop Hermiticity drift from accumulating over
            // long runs; the defect per step is at rounding level.
            let next = next.adjoint().add(&next)?.scale(Complex64::new(0.5, 0.0));
            let trace_drift = (next.trace().re - 1.0).abs();
            if trace_drift > tol::STEP_TRACE_DRIFT {
                return Err(Error::NonUnitTrace { trace: next.trace().re });
            }
            let min_eig =
                crate::eig::min_eigenvalue(&HermitianOperator::symmetrized(next.clone())?)?;
            if min_eig < -tol::POSITIVITY_LOSS {
                return Err(Error::PositivityLost { min_eigenvalue: min_eig, time: t + dt });
            }
            m = next;
        }

        Ok(EnsembleSolution { times, states, derivatives, dt })
    }

    fn rk4_step(&self, m: &ComplexMatrix, t: f64, dt: f64) -> Result<ComplexMatrix> {
        let half = 0.5 * dt;
        let k1 = self.rhs_raw(m, t)?;
        let k2 = self.rhs_raw(&m.add(&k1.scale(Complex64::new(half, 0.0)))?, t + half)?;
        let k3 = self.rhs_raw(&m.add(&k2.scale(Complex64::new(half, 0.0)))?, t + half)?;
        let k4 = self.rhs_raw(&m.add(&k3.scale(Complex64::new(dt, 0.0)))?, t + dt)?;
        let mut incr = k1;
        incr = incr.add(&k2.scale(Complex64::new(2.0, 0.0)))?;
        incr = incr.add(&k3.scale(Complex64::new(2.0, 0.0)))?;
        incr = incr.add(&k4)?;
        m.add(&incr.scale(Complex64::new(dt / 6.0, 0.0)))
    }
}

/// Number of steps on a uniform grid covering `[0, t_final]`; rejects
/// non-positive spans, non-commensurate steps, and absurd grid sizes.
pub fn grid_steps(t_final: f64, dt: f64) -> Result<usize> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::ConfigInvalid {
            path: "grid.dt".into(),
            message: format!("step must be positive and finite, got {dt}"),
        });
    }
    if !(t_final > 0.0) || !t_final.is_finite() {
        return Err(Error::ConfigInvalid {
            path: "grid.t_final".into(),
            message: format!("final time must be positive and finite, got {t_final}"),
        });
    }
    let ratio = t_final / dt;
    if ratio > 1e7 {
        return Err(Error::ConfigInvalid {
            path: "grid".into(),
            message: format!("t_final/dt = {ratio:.3e} exceeds the 1e7 grid-size limit"),
        });
    }
    let n = ratio.round();
    if (ratio - n).abs() > 1e-9 * ratio.max(1.0) {
        return Err(Error::ConfigInvalid {
            path: "grid".into(),
            message: format!("t_final = {t_final} is not an integer multiple of dt = {dt}"),
        });
    }
    Ok(n as usize)
}

/// Deterministic (ensemble-level) solution of the master equation.
#[derive(Debug, Clone)]
pub struct EnsembleSolution {
    times: Vec<f64>,
    states: Vec<DensityMatrix>,
    derivatives: Vec<HermitianOperator>,
    dt: f64,
}

impl EnsembleSolution {
    /// Grid times, `t_i = i·dt` from 0 to `t_final` inclusive.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// Whether the grid is empty (never true for a constructed solution).
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Grid spacing.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// State at grid index `i`.
    pub fn state(&self, i: usize) -> &DensityMatrix {
        &self.states[i]
    }

    /// Exact generator value ∂ρ at grid index `i` (the same object the
    /// integrator stepped with — no finite differencing).
    pub fn derivative(&self, i: usize) -> &HermitianOperator {
        &self.derivatives[i]
    }
}
