//! Conditional quantum Fisher information (CQFI) of measurement outcomes.
//!
//! Conditioning the ensemble on a measurement outcome leaves a pure state
//! `|α⟩` (for rank-one outcomes) or an effect `Π` (general POVM element).
//! The information carried by that branch about the encoded parameter is
//! scored against the *ensemble* SLD `L`:
//!
//! ```text
//! f(α)      = ⟨α|L²|α⟩                      (pure conditional form)
//! f(Π)      = Re Tr(Π L² ρ) / Tr(Π ρ)       (trace conditional form)
//! f_sym(Π)  = Tr(Π L ρ L) / Tr(Π ρ)         (symmetric form, ≥ SFI)
//! ι(Π)      = (Tr(Π ∂ρ) / Tr(Π ρ))²         (score Fisher information)
//! ```
//!
//! Averaged with Born weights over any complete POVM, the trace form
//! reproduces the ensemble QFI exactly: `Σ_Π Tr(Πρ)·f(Π) = Tr(ρL²) = F_Q`.
//! The pure form additionally splits into incoherent, coherent, and cross
//! channels by decomposing `L = D + C` in the eigenbasis of ρ (diagonal
//! and off-diagonal parts):
//!
//! ```text
//! ic    = ‖D|α⟩‖²        (classical population signal)
//! coh   = ‖C|α⟩‖²        (eigenbasis-rotation signal)
//! cross = 2 Re ⟨Dα|Cα⟩   (interference; averages to 0 over ρ's eigenbasis)
//! ```
//!
//! with `ic + coh + cross = f(α)` exactly. Individual cross terms can be
//! negative — a conditional state can carry *less* usable information than
//! either channel alone — but never push `f(α)` below zero since it is a
//! squared norm.
//!
//! The symmetric form dominates the SFI for every outcome (Cauchy–Schwarz
//! on the inner product `⟨A, B⟩ = Tr(Π A ρ B†)`). No such ordering holds
//! between `f(Π)` and the SFI in general; see the audit checks for a
//! concrete counterexample.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, PureState};
use crate::sld::SldData;
use crate::tol;

/// Pure-state conditional QFI with its channel decomposition.
#[derive(Debug, Clone)]
pub struct CqfiSample {
    /// Total conditional QFI ⟨α|L²|α⟩ ≥ 0.
    pub total: f64,
    /// Incoherent (population) channel ‖D α‖².
    pub ic: f64,
    /// Coherent (rotation) channel ‖C α‖².
    pub coh: f64,
    /// Interference channel 2 Re⟨Dα|Cα⟩; may be negative.
    pub cross: f64,
    /// Born probability ⟨α|ρ|α⟩ of the conditioning outcome.
    pub outcome_prob: f64,
}

/// Mean and standard error of a scalar sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanWithError {
    /// Sample mean.
    pub mean: f64,
    /// Standard error of the mean (unbiased variance / √n; 0 for n = 1).
    pub sem: f64,
    /// Sample size.
    pub n: usize,
}

/// Conditional QFI of a pure conditioning state, decomposed into
/// incoherent, coherent, and cross channels.
///
/// Errors with [`Error::PopulationFloor`] when the probe puts weight above
/// [`tol::PROBE_ON_DEAD_STATE`] on an eigendirection with `p < ε_pop`: the
/// SLD is undefined along dead directions, so scoring such a probe against
/// it would silently report 0 instead of "ill-posed".
pub fn cqfi_pure(alpha: &PureState, sld: &SldData) -> Result<CqfiSample> {
    let spectral = sld.spectral();
    if alpha.dim() != spectral.dim() {
        return Err(Error::DimensionMismatch { left: alpha.dim(), right: spectral.dim() });
    }
    let d = spectral.dim();
    let p = spectral.eigenvalues();
    let c = spectral.overlaps(alpha);

    let mut outcome_prob = 0.0;
    for n in 0..d {
        let w = c[n].norm_sqr();
        outcome_prob += p[n] * w;
        if p[n] < tol::POPULATION_FLOOR && w > tol::PROBE_ON_DEAD_STATE {
            return Err(Error::PopulationFloor { index: n, population: p[n], overlap: w });
        }
    }

    let l = sld.sld_in_eigenbasis();
    let dlogp = sld.dlogp();
    let mut da = vec![Complex64::new(0.0, 0.0); d];
    let mut ca = vec![Complex64::new(0.0, 0.0); d];
    for k in 0..d {
        da[k] = c[k] * dlogp[k];
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 0..d {
            if n != k {
                acc += l.get(k, n) * c[n];
            }
        }
        ca[k] = acc;
    }

    let mut ic = 0.0;
    let mut coh = 0.0;
    let mut cross = 0.0;
    for k in 0..d {
        ic += da[k].norm_sqr();
        coh += ca[k].norm_sqr();
        cross += 2.0 * (da[k].conj() * ca[k]).re;
    }
    // total = ‖(D + C)α‖² = ic + coh + cross identically; computing it as
    // the explicit square keeps it nonnegative to the last bit.
    let mut total = 0.0;
    for k in 0..d {
        total += (da[k] + ca[k]).norm_sqr();
    }

    Ok(CqfiSample { total, ic, coh, cross, outcome_prob })
}

fn outcome_probability(pi: &ComplexMatrix, rho: &DensityMatrix) -> Result<f64> {
    if pi.dim() != rho.dim() {
        return Err(Error::DimensionMismatch { left: pi.dim(), right: rho.dim() });
    }
    let prob = pi.mul(rho.matrix())?.trace().re;
    if prob < tol::OUTCOME_PROB_FLOOR {
        return Err(Error::VanishingOutcomeProbability {
            probability: prob,
            floor: tol::OUTCOME_PROB_FLOOR,
        });
    }
    Ok(prob)
}

/// Trace-form conditional QFI `Re Tr(Π L² ρ) / Tr(Π ρ)` for a POVM effect.
///
/// This is the form whose Born-weighted average over any complete POVM
/// recovers the ensemble QFI exactly. It can be negative for individual
/// effects that anti-align with `L²ρ`; positivity is only guaranteed on
/// average.
pub fn cqfi_trace_form(pi: &ComplexMatrix, sld: &SldData, rho: &DensityMatrix) -> Result<f64> {
    let prob = outcome_probability(pi, rho)?;
    let l = sld.sld().matrix();
    let l2rho = l.mul(&l.mul(rho.matrix())?)?;
    Ok(pi.mul(&l2rho)?.trace().re / prob)
}

/// Symmetric-form conditional QFI `Tr(Π L ρ L) / Tr(Π ρ)`.
///
/// Nonnegative for every positive effect, shares the same complete-POVM
/// average `F_Q`, and dominates the SFI pointwise.
pub fn cqfi_symmetric_form(pi: &ComplexMatrix, sld: &SldData, rho: &DensityMatrix) -> Result<f64> {
    let prob = outcome_probability(pi, rho)?;
    let l = sld.sld().matrix();
    let lrl = l.mul(&rho.matrix().mul(l)?)?;
    Ok(pi.mul(&lrl)?.trace().re / prob)
}

/// Score Fisher information `(Tr(Π ∂ρ) / Tr(Π ρ))²` of a single effect:
/// the square of the outcome's log-likelihood derivative.
pub fn sfi(pi: &ComplexMatrix, drho: &ComplexMatrix, rho: &DensityMatrix) -> Result<f64> {
    let prob = outcome_probability(pi, rho)?;
    let score = pi.mul(drho)?.trace().re / prob;
    Ok(score * score)
}

/// Born-weighted average of conditional information over a complete POVM.
///
/// `samples` pairs each outcome's probability with its conditional value;
/// the probabilities must sum to 1 within [`tol::STATE_NORM`], otherwise
/// the POVM is incomplete and the average would be silently biased.
pub fn cqfi_average(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let total_prob: f64 = samples.iter().map(|(p, _)| p).sum();
    if (total_prob - 1.0).abs() > tol::STATE_NORM {
        return Err(Error::IncompletePovm { total_probability: total_prob });
    }
    Ok(samples.iter().map(|(p, f)| p * f).sum())
}

/// Mean and standard error of a set of scalar samples (e.g. cross terms
/// across trajectories). Errors on an empty slice.
pub fn sample_mean(values: &[f64]) -> Result<MeanWithError> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let sem = if n > 1 {
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
        (var / n as f64).sqrt()
    } else {
        0.0
    };
    Ok(MeanWithError { mean, sem, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{qubit, HermitianOperator};
    use crate::sld::{qfi, solve_sld};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Mixed full-rank fixture with both population and rotation signal:
    /// ρ = diag(0.7, 0.3), ∂ρ = [[0.1, 0.2], [0.2, −0.1]].
    fn fixture() -> (DensityMatrix, HermitianOperator) {
        let rho = DensityMatrix::from_matrix(ComplexMatrix::from_real_rows(&[
            vec![0.7, 0.0],
            vec![0.0, 0.3],
        ]))
        .unwrap();
        let drho = HermitianOperator::new(ComplexMatrix::from_real_rows(&[
            vec![0.1, 0.2],
            vec![0.2, -0.1],
        ]))
        .unwrap();
        (rho, drho)
    }

    #[test]
    fn identity_effect_reproduces_ensemble_qfi() {
        let (rho, drho) = fixture();
        let sld = solve_sld(&rho, &drho).unwrap();
        let f = cqfi_trace_form(&ComplexMatrix::identity(2), &sld, &rho).unwrap();
        assert!((f - qfi(&sld)).abs() < 1e-12);
        let f_sym = cqfi_symmetric_form(&ComplexMatrix::identity(2), &sld, &rho).unwrap();
        assert!((f_sym - qfi(&sld)).abs() < 1e-12);
    }

    #[test]
    fn decomposition_closes_and_matches_direct_matrix_element() {
        let (rho, drho) = fixture();
        let sld = solve_sld(&rho, &drho).unwrap();
        let alpha = PureState::new(vec![c(0.6, 0.2), c(0.4, -0.1)].into_iter()
            .map(|z| z / (0.36f64 + 0.04 + 0.16 + 0.01).sqrt())
            .collect())
        .unwrap();
        let sample = cqfi_pure(&alpha, &sld).unwrap();
        assert!((sample.total - (sample.ic + sample.coh + sample.cross)).abs() < 1e-12);

        // Independent evaluation: ⟨α|L²|α⟩ straight from the matrix.
        let l = sld.sld().matrix();
        let la = l.apply(alpha.amps());
        let direct: f64 = la.iter().map(|z| z.norm_sqr()).sum();
        assert!((sample.total - direct).abs() < 1e-12);
        assert!(sample.total >= 0.0);
    }

    #[test]
    fn eigenstate_probes_have_no_cross_term() {
        let (rho, drho) = fixture();
        let sld = solve_sld(&rho, &drho).unwrap();
        for n in 0..2 {
            let probe = sld.spectral().eigenstate(n);
            let sample = cqfi_pure(&probe, &sld).unwrap();
            // D|n⟩ ∝ |n⟩ and C|n⟩ ⊥ |n⟩, so the interference term vanishes.
            assert!(sample.cross.abs() < 1e-12);
            assert!((sample.ic - sld.dlogp()[n] * sld.dlogp()[n]).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_rotation_family_has_no_incoherent_channel() {
        let rho = DensityMatrix::from_matrix(ComplexMatrix::from_real_rows(&[
            vec![0.8, 0.0],
            vec![0.0, 0.2],
        ]))
        .unwrap();
        let drho = HermitianOperator::new(qubit::sigma_x().scale(c(0.1, 0.0))).unwrap();
        let sld = solve_sld(&rho, &drho).unwrap();
        let probe = PureState::new(vec![c(0.6, 0.0), c(0.8, 0.0)]).unwrap();
        let sample = cqfi_pure(&probe, &sld).unwrap();
        assert_eq!(sample.ic, 0.0);
        assert_eq!(sample.cross, 0.0);
        assert!(sample.coh > 0.0);
    }

    #[test]
    fn balanced_probe_on_fixture_has_negative_cross_term() {
        // On the fixture, |α⟩ = (1,1)/√2 interferes destructively:
        // cross = (∂p₀/p₀ + ∂p₁/p₁)·L₀₁ = (1/7 − 1/3)·0.4 = −8/105.
        let (rho, drho) = fixture();
        let sld = solve_sld(&rho, &drho).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let alpha = PureState::new(vec![c(s, 0.0), c(s, 0.0)]).unwrap();
        let sample = cqfi_pure(&alpha, &sld).unwrap();
        assert!((sample.cross - (-8.0 / 105.0)).abs() < 1e-12);
        assert!(sample.total >= 0.0);
    }

    #[test]
    fn born_average_over_eigenbasis_recovers_qfi() {
        let (rho, drho) = fixture();
        let sld = solve_sld(&rho, &drho).unwrap();
        let mut samples = Vec::new();
        for n in 0..2 {
            let probe = sld.spectral().eigenstate(n);
            let s = cqfi_pure(&probe, &sld).unwrap();
            samples.push((s.outcome_prob, s.total));
        }
        let avg = cqfi_average(&samples).unwrap();
        assert!((avg - qfi(&sld)).abs() < 1e-12);
    }

    #[test]
    fn trace_form_average_is_basis_independent_but_pure_form_is_not() {
        // Over the rotated basis (1, ±1)/√2 the trace-form average still
        // equals F_Q, while the pure-form average lands elsewhere
        // ((221/1225 + 61/225)/2 = 0.22575963…) because conditional states are not ensemble members.
        let (rho, drho) = fixture();
        let sld = solve_sld(&rho, &drho).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = PureState::new(vec![c(s, 0.0), c(s, 0.0)]).unwrap();
        let minus = PureState::new(vec![c(s, 0.0), c(-s, 0.0)]).unwrap();

        let mut trace_samples = Vec::new();
        let mut pure_samples = Vec::new();
        for probe in [&plus, &minus] {
            let pi = probe.projector();
            let prob = pi.mul(rho.matrix()).unwrap().trace().re;
            trace_samples.push((prob, cqfi_trace_form(&pi, &sld, &rho).unwrap()));
            let sample = cqfi_pure(probe, &sld).unwrap();
            pure_samples.push((sample.outcome_prob, sample.total));
        }
        let trace_avg = cqfi_average(&trace_samples).unwrap();
        assert!((trace_avg - qfi(&sld)).abs() < 1e-12);

        let pure_avg = cqfi_average(&pure_samples).unwrap();
        assert!((pure_avg - 0.2257596371882086).abs() < 1e-12);
        assert!((pure_avg - qfi(&sld)).abs() > 1e-2);
    }

    #[test]
    fn symmetric_form_dominates_sfi_where_trace_form_does_not() {
        // ρ = diag(0.7, 0.3), ∂ρ = σ_x (so L = 2σ_x exactly) and a probe at
        // 50°: the score information exceeds the trace form — the ordering
        // claimed for f(Π) fails — while the symmetric form stays above.
        let rho = DensityMatrix::from_matrix(ComplexMatrix::from_real_rows(&[
            vec![0.7, 0.0],
            vec![0.0, 0.3],
        ]))
        .unwrap();
        let drho = HermitianOperator::new(qubit::sigma_x()).unwrap();
        let sld = solve_sld(&rho, &drho).unwrap();
        let t = 50.0_f64.to_radians();
        let alpha = PureState::new(vec![c(t.cos(), 0.0), c(t.sin(), 0.0)]).unwrap();
        let pi = alpha.projector();

        let trace = cqfi_trace_form(&pi, &sld, &rho).unwrap();
        let sym = cqfi_symmetric_form(&pi, &sld, &rho).unwrap();
        let score = sfi(&pi, drho.matrix(), &rho).unwrap();

        assert!((trace - 4.0).abs() < 1e-12, "⟨α|L²|α⟩ = 4 since L² = 4I");
        assert!(score > trace + 0.4, "score {score} should exceed trace form {trace}");
        assert!(sym + 1e-12 >= score, "symmetric form {sym} must dominate SFI {score}");
    }

    #[test]
    fn dead_direction_probe_is_rejected() {
        let rho = DensityMatrix::from_matrix(ComplexMatrix::from_real_rows(&[
            vec![1.0, 0.0],
            vec![0.0, 0.0],
        ]))
        .unwrap();
        let drho = HermitianOperator::new(qubit::sigma_x().scale(c(0.1, 0.0))).unwrap();
        let sld = solve_sld(&rho, &drho).unwrap();
        let dead = PureState::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(cqfi_pure(&dead, &sld), Err(Error::PopulationFloor { .. })));
        // The corresponding projector also has vanishing outcome probability.
        assert!(matches!(
            cqfi_trace_form(&dead.projector(), &sld, &rho),
            Err(Error::VanishingOutcomeProbability { .. })
        ));
    }

    #[test]
    fn incomplete_povm_is_rejected() {
        assert!(matches!(
            cqfi_average(&[(0.5, 1.0), (0.3, 2.0)]),
            Err(Error::IncompletePovm { .. })
        ));
        assert!(matches!(cqfi_average(&[]), Err(Error::EmptySample)));
    }

    #[test]
    fn sample_mean_matches_hand_computation() {
        let stats = sample_mean(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!((stats.mean - 2.5).abs() < 1e-15);
        // Unbiased variance 5/3, SEM = sqrt(5/12).
        assert!((stats.sem - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert_eq!(stats.n, 4);
        assert_eq!(sample_mean(&[7.0]).unwrap().sem, 0.0);
        assert!(matches!(sample_mean(&[]), Err(Error::EmptySample)));
    }
}
