//! Quantum-jump (Monte Carlo wave function) unraveling of a GKSL model.
//!
//! Each trajectory is a pure state |ψ_γ(t)⟩ following the standard
//! first-order jump scheme: over a step `dt`, channel `k` fires with
//! probability `dp_k = ‖L_k ψ‖² dt`, replacing the state by the normalized
//! `L_k ψ`; otherwise the state drifts under the non-Hermitian effective
//! Hamiltonian `H_eff = H − (i/2) Σ_k L_k†L_k` and is renormalized. The
//! drift propagator is expanded to second order in `dt` so the no-jump
//! branch does not cap the global accuracy at first order.
//!
//! Averaging `|ψ_γ⟩⟨ψ_γ|` over trajectories recovers the master-equation
//! state to O(dt) per unit time plus Monte Carlo noise — that consistency
//! is enforced by the acceptance checks, not assumed.
//!
//! Reproducibility: trajectory `γ` draws from a counter-based RNG seeded
//! with the master seed and moved to stream `γ`. Every trajectory is an
//! independent, individually addressable random stream, so results are
//! bit-identical no matter how trajectories are batched or parallelized.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::eig::SpectralState;
use crate::error::{Error, Result};
use crate::lindblad::{grid_steps, GKSLModel};
use crate::linalg::{ComplexMatrix, HermitianOperator, PureState};
use crate::tol;

/// RNG for one trajectory: master seed selects the experiment, the stream
/// index isolates the trajectory.
pub fn trajectory_rng(master_seed: u64, traj_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(traj_index);
    rng
}

/// Sample an initial eigenstate of ρ₀ with Born weights p_n.
pub fn sample_initial(spectral: &SpectralState, rng: &mut impl Rng) -> Result<PureState> {
    let p = spectral.eigenvalues();
    let r: f64 = rng.random();
    let mut acc = 0.0;
    for (n, &pn) in p.iter().enumerate() {
        acc += pn;
        if r < acc {
            return Ok(spectral.eigenstate(n));
        }
    }
    // Rounding can leave acc marginally below 1; the tail belongs to the
    // last supported eigenstate.
    let last = p.iter().rposition(|&pn| pn > 0.0).unwrap_or(p.len() - 1);
    Ok(spectral.eigenstate(last))
}

/// Result of a single stochastic step.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    /// Normalized post-step state.
    pub state: PureState,
    /// Which channel fired, if any.
    pub jump_channel: Option<usize>,
}

/// One stochastic trajectory sampled on the simulation grid.
#[derive(Debug, Clone)]
pub struct TrajectoryPath {
    states: Vec<PureState>,
    /// Per grid point: the channel that fired on the step *ending* there
    /// (index 0 is the initial condition and never records a jump).
    jumps: Vec<Option<usize>>,
}

impl TrajectoryPath {
    /// State at grid index `i`.
    pub fn state(&self, i: usize) -> &PureState {
        &self.states[i]
    }

    /// All grid states.
    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    /// Jump record per grid point (channel index of the jump that produced
    /// the state at that grid point, if any).
    pub fn jumps(&self) -> &[Option<usize>] {
        &self.jumps
    }

    /// Total number of jumps, per channel.
    pub fn jump_counts(&self, n_channels: usize) -> Vec<usize> {
        let mut counts = vec![0usize; n_channels];
        for j in self.jumps.iter().flatten() {
            counts[*j] += 1;
        }
        counts
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    /// Whether the path is empty (never true for a simulated path).
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Precomputed stepping machinery for one (model, grid) pair.
#[derive(Debug)]
pub struct TrajectorySimulator<'a> {
    model: &'a GKSLModel,
    dt: f64,
    n_steps: usize,
    /// Second-order no-jump propagator `1 − i H_eff dt − ½ H_eff² dt²`,
    /// precomputed once when H is time-independent.
    static_drift: Option<ComplexMatrix>,
}

/// Build the second-order drift propagator at a given time.
fn drift_propagator(model: &GKSLModel, t: f64, dt: f64) -> Result<ComplexMatrix> {
    let d = model.dim();
    // H_eff = H − (i/2) K.
    let h_eff = model
        .hamiltonian_at(t)
        .add(&model.total_rate_op().scale(Complex64::new(0.0, -0.5)))?;
    let h_eff_sq = h_eff.mul(&h_eff)?;
    ComplexMatrix::identity(d)
        .add(&h_eff.scale(Complex64::new(0.0, -dt)))?
        .add(&h_eff_sq.scale(Complex64::new(-0.5 * dt * dt, 0.0)))
}

impl<'a> TrajectorySimulator<'a> {
    /// Validate the grid and precompute what the stepper reuses.
    pub fn new(model: &'a GKSLModel, t_final: f64, dt: f64) -> Result<Self> {
        let n_steps = grid_steps(t_final, dt)?;
        let step_action = dt * model.max_rate(0.0);
        if !(step_action <= tol::MAX_STEP_ACTION) {
            return Err(Error::StepTooLarge { step_action, limit: tol::MAX_STEP_ACTION });
        }
        let static_drift = if model.is_static() {
            Some(drift_propagator(model, 0.0, dt)?)
        } else {
            None
        };
        Ok(Self { model, dt, n_steps, static_drift })
    }

    /// Grid spacing.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Number of steps (grid points − 1).
    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    fn drift_at(&self, t: f64) -> Result<ComplexMatrix> {
        match &self.static_drift {
            Some(m) => Ok(m.clone()),
            None => drift_propagator(self.model, t, self.dt),
        }
    }

    /// Advance one step from `psi` at time `t`.
    pub fn step(&self, psi: &PureState, t: f64, rng: &mut impl Rng) -> Result<StepOutcome> {
        let ops = self.model.jump_ops();
        let mut jump_amps: Vec<Vec<Complex64>> = Vec::with_capacity(ops.len());
        let mut dp = Vec::with_capacity(ops.len());
        let mut total_dp = 0.0;
        for op in ops {
            let amp = op.matrix.apply(psi.amps());
            let w: f64 = amp.iter().map(|z| z.norm_sqr()).sum();
            let p = w * self.dt;
            total_dp += p;
            dp.push(p);
            jump_amps.push(amp);
        }
        if total_dp > tol::MAX_STEP_ACTION {
            return Err(Error::StepTooLarge { step_action: total_dp, limit: tol::MAX_STEP_ACTION });
        }

        let r: f64 = rng.random();
        if r < total_dp {
            let mut acc = 0.0;
            for (k, &p) in dp.iter().enumerate() {
                acc += p;
                if r < acc {
                    let state = PureState::normalized(jump_amps.swap_remove(k), t + self.dt)?;
                    return Ok(StepOutcome { state, jump_channel: Some(k) });
                }
            }
            // Unreachable up to rounding on the last partial sum; fall
            // through to the drift branch in that measure-zero case.
        }
        let drift = self.drift_at(t)?;
        let state = PureState::normalized(drift.apply(psi.amps()), t + self.dt)?;
        Ok(StepOutcome { state, jump_channel: None })
    }

    /// Simulate a full trajectory from a Born-sampled eigenstate of ρ₀.
    pub fn run(&self, initial: &SpectralState, rng: &mut impl Rng) -> Result<TrajectoryPath> {
        let mut states = Vec::with_capacity(self.n_steps + 1);
        let mut jumps = Vec::with_capacity(self.n_steps + 1);
        let mut psi = sample_initial(initial, rng)?;
        states.push(psi.clone());
        jumps.push(None);
        for i in 0..self.n_steps {
            let t = i as f64 * self.dt;
            let outcome = self.step(&psi, t, rng)?;
            psi = outcome.state;
            states.push(psi.clone());
            jumps.push(outcome.jump_channel);
        }
        Ok(TrajectoryPath { states, jumps })
    }
}

/// Drift rate of ⟨O⟩ along the no-jump branch of a trajectory:
///
/// ```text
/// ȯ_γ = −2 Im⟨Hψ|Oψ⟩ − Re⟨Kψ|Oψ⟩ + ⟨K⟩⟨O⟩
/// ```
///
/// i.e. the Heisenberg flow under `H_eff` plus the renormalization term.
/// Jumps are discrete events, not rates, and are excluded by definition.
pub fn observable_drift_rate(
    model: &GKSLModel,
    psi: &PureState,
    observable: &HermitianOperator,
    t: f64,
) -> Result<f64> {
    let o_psi = observable.matrix().apply(psi.amps());
    let h_psi = model.hamiltonian_at(t).apply(psi.amps());
    let k_psi = model.total_rate_op().apply(psi.amps());

    let inner = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };
    let h_o = inner(&h_psi, &o_psi);
    let k_o = inner(&k_psi, &o_psi);
    let k_avg = inner(psi.amps(), &k_psi).re;
    let o_avg = inner(psi.amps(), &o_psi).re;
    Ok(-2.0 * h_o.im - k_o.re + k_avg * o_avg)
}

/// Mean projector over a set of trajectory states at one grid point
/// (the Monte Carlo estimate of ρ(t)). The result is Hermitian and
/// unit-trace by construction but not re-validated here, because with few
/// samples it is legitimately noisy.
pub fn mean_projector(states: &[&PureState]) -> Result<ComplexMatrix> {
    let first = states.first().ok_or(Error::EmptySample)?;
    let mut acc = ComplexMatrix::zeros(first.dim());
    for s in states {
        acc = acc.add(&s.projector())?;
    }
    Ok(acc.scale(Complex64::new(1.0 / states.len() as f64, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::eig_density;
    use crate::lindblad::{Hamiltonian, JumpOperator};
    use crate::linalg::{qubit, DensityMatrix};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn decay_model(gamma: f64) -> GKSLModel {
        GKSLModel::new(
            Hamiltonian::Static(ComplexMatrix::zeros(2)),
            vec![JumpOperator {
                matrix: qubit::sigma_minus().scale(c(gamma.sqrt(), 0.0)),
                label: "emission".into(),
            }],
        )
        .unwrap()
    }

    fn excited_spectral() -> SpectralState {
        let rho = DensityMatrix::from_matrix(ComplexMatrix::from_real_rows(&[
            vec![1.0, 0.0],
            vec![0.0, 0.0],
        ]))
        .unwrap();
        eig_density(&rho).unwrap()
    }

    #[test]
    fn trajectories_are_bitwise_reproducible_and_stream_separated() {
        let model = decay_model(0.3);
        let sim = TrajectorySimulator::new(&model, 5.0, 0.01).unwrap();
        let initial = excited_spectral();

        let path_a = sim.run(&initial, &mut trajectory_rng(42, 7)).unwrap();
        let path_b = sim.run(&initial, &mut trajectory_rng(42, 7)).unwrap();
        for (a, b) in path_a.states().iter().zip(path_b.states()) {
            assert_eq!(a.amps(), b.amps(), "same seed and stream must replay exactly");
        }
        assert_eq!(path_a.jumps(), path_b.jumps());

        let path_c = sim.run(&initial, &mut trajectory_rng(42, 8)).unwrap();
        assert_ne!(
            path_a.jumps(),
            path_c.jumps(),
            "neighboring streams should decorrelate (decay times differ)"
        );
    }

    #[test]
    fn pure_decay_jumps_exactly_once_and_sticks_in_the_ground_state() {
        let model = decay_model(0.5);
        let sim = TrajectorySimulator::new(&model, 20.0, 0.01).unwrap();
        let initial = excited_spectral();
        for stream in 0..20 {
            let path = sim.run(&initial, &mut trajectory_rng(11, stream)).unwrap();
            let jumps = path.jump_counts(1)[0];
            assert!(jumps <= 1, "a two-level emitter cannot emit twice");
            if jumps == 1 {
                let last = path.state(path.len() - 1);
                assert!((last.amps()[1].norm() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn jump_statistics_match_the_exponential_law() {
        // P(no jump by T) = e^{−γT}; with γT = 1.5 and 500 trajectories the
        // binomial 4σ window is ±0.073.
        let gamma = 0.3;
        let t_final = 5.0;
        let model = decay_model(gamma);
        let sim = TrajectorySimulator::new(&model, t_final, 0.01).unwrap();
        let initial = excited_spectral();
        let n = 500;
        let mut survivors = 0;
        for stream in 0..n {
            let path = sim.run(&initial, &mut trajectory_rng(3, stream)).unwrap();
            if path.jump_counts(1)[0] == 0 {
                survivors += 1;
            }
        }
        let observed = survivors as f64 / n as f64;
        let expected = (-gamma * t_final).exp();
        let sigma = (expected * (1.0 - expected) / n as f64).sqrt();
        assert!(
            (observed - expected).abs() < 4.0 * sigma + 0.01,
            "survival fraction {observed} vs e^(-γT) = {expected}"
        );
    }

    #[test]
    fn mean_projector_tracks_the_master_equation() {
        // Thermal qubit with drive: compare the trajectory average against
        // the deterministic solution at the final time.
        let gamma: f64 = 0.2;
        let nbar: f64 = 0.5;
        let eps = 0.1;
        let model = GKSLModel::new(
            Hamiltonian::Static(qubit::sigma_x().scale(c(eps, 0.0))),
            vec![
                JumpOperator {
                    matrix: qubit::sigma_minus().scale(c((gamma * (nbar + 1.0)).sqrt(), 0.0)),
                    label: "emission".into(),
                },
                JumpOperator {
                    matrix: qubit::sigma_plus().scale(c((gamma * nbar).sqrt(), 0.0)),
                    label: "absorption".into(),
                },
            ],
        )
        .unwrap();
        let rho0 = DensityMatrix::from_matrix(ComplexMatrix::from_real_rows(&[
            vec![0.25, 0.0],
            vec![0.0, 0.75],
        ]))
        .unwrap();
        let t_final = 5.0;
        let dt = 0.01;
        let sol = model.evolve(&rho0, t_final, dt).unwrap();
        let exact = sol.state(sol.len() - 1).matrix();

        let initial = eig_density(&rho0).unwrap();
        let sim = TrajectorySimulator::new(&model, t_final, dt).unwrap();
        let n = 400;
        let mut finals = Vec::with_capacity(n);
        for stream in 0..n as u64 {
            let path = sim.run(&initial, &mut trajectory_rng(21, stream)).unwrap();
            finals.push(path.state(path.len() - 1).clone());
        }
        let refs: Vec<&PureState> = finals.iter().collect();
        let mean = mean_projector(&refs).unwrap();
        let defect = mean.sub(exact).unwrap().max_abs();
        // Monte Carlo noise scales like 1/√400 = 0.05; allow 4σ-ish room.
        assert!(defect < 0.1, "trajectory mean deviates from GKSL by {defect}");
    }

    #[test]
    fn single_step_reproduces_the_generator_to_first_order() {
        // Deterministically enumerate both branches of one step and check
        // Σ_outcome P(outcome)·|ψ'⟩⟨ψ'| = ρ + dt·GKSL(ρ) + O(dt²).
        let gamma = 0.4;
        let model = decay_model(gamma);
        let dt = 1e-4;
        let _sim = TrajectorySimulator::new(&model, 1.0, dt).unwrap();
        let psi = PureState::new(vec![c(0.8, 0.0), c(0.6, 0.0)]).unwrap();

        // Branch probabilities.
        let l = &model.jump_ops()[0].matrix;
        let l_psi = l.apply(psi.amps());
        let dp: f64 = l_psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * dt;

        let jump_state = PureState::normalized(l_psi, dt).unwrap();
        let drift = drift_propagator(&model, 0.0, dt).unwrap();
        let drift_state = PureState::normalized(drift.apply(psi.amps()), dt).unwrap();

        let mixed = jump_state
            .projector()
            .scale(c(dp, 0.0))
            .add(&drift_state.projector().scale(c(1.0 - dp, 0.0)))
            .unwrap();

        let rho = DensityMatrix::from_matrix(psi.projector()).unwrap();
        let generator = model.gksl_rhs(&rho, 0.0).unwrap();
        let first_order = psi
            .projector()
            .add(&generator.matrix().scale(c(dt, 0.0)))
            .unwrap();
        let defect = mixed.sub(&first_order).unwrap().max_abs();
        assert!(defect < 10.0 * dt * dt, "one-step defect {defect} not O(dt²)");
    }

    #[test]
    fn drift_rate_matches_numerical_differentiation() {
        let model = decay_model(0.7);
        let z = HermitianOperator::new(qubit::sigma_z()).unwrap();
        let psi = PureState::new(vec![c(0.6, 0.1), c(0.7, -0.2)].into_iter()
            .map(|v| v / (0.36f64 + 0.01 + 0.49 + 0.04).sqrt())
            .collect())
        .unwrap();
        let analytic = observable_drift_rate(&model, &psi, &z, 0.0).unwrap();

        // No-jump evolution over a tiny step, renormalized.
        let dt = 1e-6;
        let drift = drift_propagator(&model, 0.0, dt).unwrap();
        let after = PureState::normalized(drift.apply(psi.amps()), dt).unwrap();
        let numeric = (after.expectation(&z) - psi.expectation(&z)) / dt;
        assert!(
            (analytic - numeric).abs() < 1e-5,
            "analytic {analytic} vs numeric {numeric}"
        );
    }

    #[test]
    fn initial_sampling_follows_born_weights() {
        let rho = DensityMatrix::from_matrix(ComplexMatrix::from_real_rows(&[
            vec![0.25, 0.0],
            vec![0.0, 0.75],
        ]))
        .unwrap();
        let spectral = eig_density(&rho).unwrap();
        let mut rng = trajectory_rng(5, 0);
        let n = 2000;
        let mut hits = 0;
        for _ in 0..n {
            let psi = sample_initial(&spectral, &mut rng).unwrap();
            if psi.amps()[1].norm() > 0.5 {
                hits += 1;
            }
        }
        let frac = hits as f64 / n as f64;
        // Eigenvalues sort descending, so state index 1 (ground) carries
        // weight 0.75; binomial 4σ ≈ 0.039.
        assert!((frac - 0.75).abs() < 0.04, "ground-state fraction {frac}");
    }

    #[test]
    fn oversized_jump_probability_is_rejected() {
        let model = decay_model(50.0);
        assert!(matches!(
            TrajectorySimulator::new(&model, 1.0, 0.01),
            Err(Error::StepTooLarge { .. })
        ));
    }
}
