//! Property-based invariants over randomized inputs.

use num_complex::Complex64;
use proptest::prelude::*;

use jumpfisher::cqfi::{cqfi_average, cqfi_pure, cqfi_symmetric_form, cqfi_trace_form, sfi};
use jumpfisher::eig::{eig_density, eig_hermitian};
use jumpfisher::jump::{sample_initial, trajectory_rng, TrajectorySimulator};
use jumpfisher::linalg::{qubit, ComplexMatrix, DensityMatrix, HermitianOperator, PureState};
use jumpfisher::lindblad::{GKSLModel, Hamiltonian, JumpOperator};
use jumpfisher::models::driven_qubit::{self, DrivenQubitParams};
use jumpfisher::sld::{qfi, solve_sld};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Strategy: a random Hermitian matrix of the given dimension with entries
/// bounded by `scale`.
fn hermitian(dim: usize, scale: f64) -> impl Strategy<Value = ComplexMatrix> {
    let n_real = dim;
    let n_complex = dim * (dim - 1) / 2;
    (
        prop::collection::vec(-scale..scale, n_real),
        prop::collection::vec((-scale..scale, -scale..scale), n_complex),
    )
        .prop_map(move |(diag, off)| {
            let mut m = ComplexMatrix::zeros(dim);
            for (i, &d) in diag.iter().enumerate() {
                m.set(i, i, c(d, 0.0));
            }
            let mut k = 0;
            for i in 0..dim {
                for j in (i + 1)..dim {
                    let (re, im) = off[k];
                    m.set(i, j, c(re, im));
                    m.set(j, i, c(re, -im));
                    k += 1;
                }
            }
            m
        })
}

/// Strategy: a full-rank density matrix of the given dimension, built by
/// conjugating a strictly positive spectrum with a random eigenbasis.
fn density(dim: usize) -> impl Strategy<Value = DensityMatrix> {
    (hermitian(dim, 1.0), prop::collection::vec(0.05f64..1.0, dim)).prop_map(
        move |(gen, raw_p)| {
            let total: f64 = raw_p.iter().sum();
            let basis = eig_hermitian(&HermitianOperator::symmetrized(gen).unwrap()).unwrap();
            let mut diag = ComplexMatrix::zeros(dim);
            for (i, &p) in raw_p.iter().enumerate() {
                diag.set(i, i, c(p / total, 0.0));
            }
            DensityMatrix::from_matrix(basis.from_eigenbasis(&diag).unwrap()).unwrap()
        },
    )
}

/// Strategy: a traceless Hermitian perturbation (a valid ∂ρ direction).
fn traceless_hermitian(dim: usize) -> impl Strategy<Value = HermitianOperator> {
    hermitian(dim, 1.0).prop_map(move |mut m| {
        let shift = m.trace().re / dim as f64;
        for i in 0..dim {
            let d = m.get(i, i);
            m.set(i, i, c(d.re - shift, 0.0));
        }
        HermitianOperator::new(m).unwrap()
    })
}

/// Strategy: a normalized pure state.
fn pure_state(dim: usize) -> impl Strategy<Value = PureState> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_filter("needs nonzero norm", |amps| {
            amps.iter().map(|(re, im)| re * re + im * im).sum::<f64>() > 1e-3
        })
        .prop_map(|amps| {
            PureState::normalized(
                amps.into_iter().map(|(re, im)| c(re, im)).collect(),
                0.0,
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Diagonalization reconstructs the input and keeps the basis orthonormal.
    #[test]
    fn eigendecomposition_reconstructs((_dim, seed_m) in (2usize..5).prop_flat_map(|d| (Just(d), hermitian(d, 2.0)))) {
        let herm = HermitianOperator::symmetrized(seed_m.clone()).unwrap();
        let spec = eig_hermitian(&herm).unwrap();
        let defect = spec.reconstruct().sub(herm.matrix()).unwrap().frobenius_norm();
        let scale = herm.matrix().frobenius_norm().max(1.0);
        prop_assert!(defect < 1e-12 * scale, "reconstruction defect {defect}");
        prop_assert!(spec.orthonormality_defect() < 1e-12);
        // Eigenvalues are sorted in descending order.
        for w in spec.eigenvalues().windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
    }

    /// Diagonalization is a pure function: same input, bit-identical output.
    #[test]
    fn eigendecomposition_is_deterministic(m in hermitian(3, 2.0)) {
        let herm = HermitianOperator::symmetrized(m).unwrap();
        let a = eig_hermitian(&herm).unwrap();
        let b = eig_hermitian(&herm).unwrap();
        prop_assert_eq!(a.eigenvalues(), b.eigenvalues());
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(a.vectors().get(i, j), b.vectors().get(i, j));
            }
        }
    }

    /// The response operator L solves its defining Lyapunov equation
    /// ∂ρ = (Lρ + ρL)/2 and has vanishing symmetrized residual.
    #[test]
    fn response_operator_solves_the_lyapunov_equation(
        (dim, rho, drho) in (2usize..4)
            .prop_flat_map(|d| (Just(d), density(d), traceless_hermitian(d)))
    ) {
        let _ = dim;
        let sld = solve_sld(&rho, &drho).unwrap();
        let residual = sld.lyapunov_residual(&rho, &drho).unwrap();
        prop_assert!(residual < 1e-9, "residual {residual}");
        prop_assert!(qfi(&sld) >= 0.0);
    }

    /// total = ic + coh + cross holds to rounding for any probe, and the
    /// probability-weighted total over a complete orthonormal probe basis
    /// (trace form) reproduces the unconditional information.
    #[test]
    fn decomposition_closes_and_trace_form_completes(
        (rho, drho, probe_gen) in (density(2), traceless_hermitian(2), hermitian(2, 1.0))
    ) {
        let sld = solve_sld(&rho, &drho).unwrap();

        let probe_basis =
            eig_hermitian(&HermitianOperator::symmetrized(probe_gen).unwrap()).unwrap();
        let mut samples = Vec::new();
        for n in 0..2 {
            let alpha = probe_basis.eigenstate(n);
            let s = cqfi_pure(&alpha, &sld).unwrap();
            let closure = (s.total - (s.ic + s.coh + s.cross)).abs();
            prop_assert!(closure <= 1e-9 * s.total.abs().max(1.0), "closure {closure}");
            prop_assert!(s.total >= 0.0);
            prop_assert!(s.ic >= 0.0);
            prop_assert!(s.coh >= 0.0);
            let pi = alpha.projector();
            let tf = cqfi_trace_form(&pi, &sld, &rho).unwrap();
            samples.push((s.outcome_prob, tf));
        }
        // Born weights over a complete basis sum to one…
        let total_p: f64 = samples.iter().map(|(p, _)| p).sum();
        prop_assert!((total_p - 1.0).abs() < 1e-12);
        // …and the weighted trace-form average is exactly F_Q.
        let avg = cqfi_average(&samples).unwrap();
        let f = qfi(&sld);
        prop_assert!((avg - f).abs() <= 1e-10 * f.max(1.0), "avg {avg} vs F {f}");
    }

    /// The single-outcome surprisal information never exceeds the symmetric
    /// conditional form Tr(ΠLρL)/Tr(Πρ) — the bound Cauchy–Schwarz actually
    /// guarantees. (Its ⟨α|L²|α⟩ analogue is falsified in the oracle suite.)
    #[test]
    fn surprisal_is_bounded_by_the_symmetric_conditional_form(
        (rho, drho, probe) in (2usize..5)
            .prop_flat_map(|d| (density(d), traceless_hermitian(d), pure_state(d)))
    ) {
        let sld = solve_sld(&rho, &drho).unwrap();
        let pi = probe.projector();
        let sfi_val = sfi(&pi, drho.matrix(), &rho).unwrap();
        let sym = cqfi_symmetric_form(&pi, &sld, &rho).unwrap();
        prop_assert!(
            sfi_val <= sym + 1e-9 * sym.max(1.0),
            "SFI {sfi_val} exceeds the symmetric form {sym}"
        );
    }

    /// Thermal-qubit jump operators encode detailed balance: the squared
    /// norms of the two channels are Γ₀(n̄+1) and Γ₀n̄, whose ratio is the
    /// Boltzmann factor e^{ω/T}.
    #[test]
    fn thermal_channels_satisfy_detailed_balance(
        gamma0 in 0.01f64..0.5,
        temperature in 0.2f64..5.0,
    ) {
        let params = DrivenQubitParams {
            omega: 1.0,
            epsilon: 0.05,
            gamma0,
            temperature,
        };
        let model = driven_qubit::build(&params).unwrap();
        let ops = model.jump_ops();
        prop_assert_eq!(ops.len(), 2);
        let nbar = 1.0 / ((1.0f64 / temperature).exp() - 1.0);
        // Squared Frobenius norm of √γ σ_± is γ.
        let down = ops.iter().find(|o| o.label == "emission").unwrap();
        let up = ops.iter().find(|o| o.label == "absorption").unwrap();
        let down_rate = down.matrix.frobenius_norm().powi(2);
        let up_rate = up.matrix.frobenius_norm().powi(2);
        prop_assert!((down_rate - gamma0 * (nbar + 1.0)).abs() < 1e-12 * (1.0 + down_rate));
        prop_assert!((up_rate - gamma0 * nbar).abs() < 1e-12 * (1.0 + up_rate));
        let boltzmann = (1.0f64 / temperature).exp();
        prop_assert!((down_rate / up_rate - boltzmann).abs() < 1e-9 * boltzmann);
    }

    /// The master-equation integrator holds the trace exactly and reaches
    /// the Gibbs populations of the undriven thermal qubit from any mixed
    /// diagonal start.
    #[test]
    fn undriven_relaxation_reaches_gibbs_populations(
        p0 in 0.05f64..0.95,
        gamma in 0.2f64..0.6,
        nbar in 0.1f64..1.5,
    ) {
        let model = GKSLModel::new(
            Hamiltonian::Static(ComplexMatrix::zeros(2)),
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
        let mut m = ComplexMatrix::zeros(2);
        m.set(0, 0, c(p0, 0.0));
        m.set(1, 1, c(1.0 - p0, 0.0));
        let rho0 = DensityMatrix::from_matrix(m).unwrap();
        // Total relaxation rate γ(2n̄+1); integrate for 12 e-folds.
        let t_final = 12.0 / (gamma * (2.0 * nbar + 1.0));
        let sol = model.evolve(&rho0, t_final, t_final / 4000.0).unwrap();
        let last = sol.state(sol.len() - 1).matrix();
        let excited = last.get(0, 0).re;
        let expected = nbar / (2.0 * nbar + 1.0);
        prop_assert!((excited - expected).abs() < 1e-5, "p_e {excited} vs {expected}");
        prop_assert!((last.trace().re - 1.0).abs() < 1e-10);
    }

    /// Two trajectories with the same (seed, stream) replay identically;
    /// different streams decouple.
    #[test]
    fn trajectory_streams_replay_and_decouple(master_seed in 0u64..u64::MAX / 2) {
        let params = DrivenQubitParams {
            omega: 1.0,
            epsilon: 0.1,
            gamma0: 0.05,
            temperature: 1.0 / 3f64.ln(),
        };
        let model = driven_qubit::build(&params).unwrap();
        let rho0 = driven_qubit::initial_state(&params).unwrap();
        let spectral0 = eig_density(&rho0).unwrap();
        let sim = TrajectorySimulator::new(&model, 0.5, 0.01).unwrap();

        let walk = |stream: u64| -> Vec<Complex64> {
            let mut rng = trajectory_rng(master_seed, stream);
            let mut psi = sample_initial(&spectral0, &mut rng).unwrap();
            for i in 0..sim.n_steps() {
                psi = sim.step(&psi, i as f64 * sim.dt(), &mut rng).unwrap().state;
            }
            psi.amps().to_vec()
        };
        let a1 = walk(3);
        let a2 = walk(3);
        prop_assert_eq!(&a1, &a2, "same stream must replay bit-identically");
        // Norm stays exactly 1 up to rounding after every renormalized step.
        let norm: f64 = a1.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
    }
}

/// RK4 on the pure-decay channel matches the analytic exponential to its
/// asymptotic order: errors at dt and dt/2 shrink by ≈ 2⁴.
#[test]
fn integrator_exhibits_fourth_order_convergence() {
    let gamma: f64 = 0.8;
    let model = GKSLModel::new(
        Hamiltonian::Static(ComplexMatrix::zeros(2)),
        vec![JumpOperator {
            matrix: qubit::sigma_minus().scale(c(gamma.sqrt(), 0.0)),
            label: "emission".into(),
        }],
    )
    .unwrap();
    let mut m = ComplexMatrix::zeros(2);
    m.set(0, 0, c(1.0, 0.0));
    let rho0 = DensityMatrix::from_matrix(m).unwrap();
    let t_final = 2.0;
    let exact = (-gamma * t_final).exp();

    let error_at = |dt: f64| -> f64 {
        let sol = model.evolve(&rho0, t_final, dt).unwrap();
        (sol.state(sol.len() - 1).matrix().get(0, 0).re - exact).abs()
    };
    let e1 = error_at(0.05);
    let e2 = error_at(0.025);
    let order = (e1 / e2).log2();
    assert!(
        (3.7..4.3).contains(&order),
        "observed order {order} (errors {e1:.3e} → {e2:.3e})"
    );
}
