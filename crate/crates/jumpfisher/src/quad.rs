//! Gauss–Hermite quadrature and Gaussian expectation values.
//!
//! Nodes and weights come from the Golub–Welsch construction: the
//! orthonormal-Hermite recurrence (weight `e^{−x²}`) defines a symmetric
//! tridiagonal Jacobi matrix with zero diagonal and off-diagonal entries
//! `√(k/2)`; its eigenvalues are the nodes, and each weight is
//! `√π · v₀²` with `v₀` the first component of the corresponding
//! eigenvector. The crate's own Hermitian eigensolver does the work, so
//! the quadrature inherits its determinism guarantees.
//!
//! An `n`-point rule integrates polynomials of degree ≤ 2n − 1 against
//! `e^{−x²}` exactly, which is why the Gaussian-model consumers can gate
//! convergence tightly: their integrands are low-degree polynomials times
//! the Gaussian weight.

use num_complex::Complex64;

use crate::eig::eig_hermitian;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator};

/// Nodes and weights of the `n`-point Gauss–Hermite rule for the weight
/// `e^{−x²}` on ℝ. Nodes come out in descending order (the eigensolver's
/// ordering); the rule is symmetric so ordering carries no meaning.
pub fn gauss_hermite(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let mut jacobi = ComplexMatrix::zeros(n);
    for k in 1..n {
        let b = (k as f64 / 2.0).sqrt();
        jacobi.set(k - 1, k, Complex64::new(b, 0.0));
        jacobi.set(k, k - 1, Complex64::new(b, 0.0));
    }
    let spectral = eig_hermitian(&HermitianOperator::new(jacobi)?)?;
    let nodes = spectral.eigenvalues().to_vec();
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let weights: Vec<f64> = (0..n)
        .map(|i| sqrt_pi * spectral.vectors().get(0, i).norm_sqr())
        .collect();
    Ok((nodes, weights))
}

/// Expectation of `g(x, p)` under the bivariate normal N(mean, cov) via a
/// tensor-product Gauss–Hermite rule with `n` nodes per axis:
///
/// ```text
/// E[g] = π⁻¹ Σ_ij w_i w_j g(μ + √2·A·(u_i, u_j)),   A Aᵀ = cov
/// ```
///
/// `A` is the Cholesky factor; a covariance that fails to factor is
/// rejected as singular.
pub fn gaussian_expectation_2d(
    mean: [f64; 2],
    cov: [[f64; 2]; 2],
    n: usize,
    g: impl Fn(f64, f64) -> f64,
) -> Result<f64> {
    let det = cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
    if !(cov[0][0] > 0.0) || !(det > 0.0) {
        return Err(Error::SingularCovariance { det });
    }
    let l00 = cov[0][0].sqrt();
    let l10 = cov[1][0] / l00;
    let l11 = (cov[1][1] - l10 * l10).sqrt();

    let (nodes, weights) = gauss_hermite(n)?;
    let scale = std::f64::consts::SQRT_2;
    let mut acc = 0.0;
    for (i, &u) in nodes.iter().enumerate() {
        let x = mean[0] + scale * l00 * u;
        let x_shear = scale * l10 * u;
        for (j, &v) in nodes.iter().enumerate() {
            let p = mean[1] + x_shear + scale * l11 * v;
            acc += weights[i] * weights[j] * g(x, p);
        }
    }
    Ok(acc / std::f64::consts::PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_PI: f64 = 1.7724538509055160273;

    #[test]
    fn two_point_rule_is_the_textbook_one() {
        let (nodes, weights) = gauss_hermite(2).unwrap();
        let expect = std::f64::consts::FRAC_1_SQRT_2;
        let mut sorted = nodes.clone();
        sorted.sort_by(f64::total_cmp);
        assert!((sorted[0] + expect).abs() < 1e-14);
        assert!((sorted[1] - expect).abs() < 1e-14);
        for w in weights {
            assert!((w - SQRT_PI / 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn moments_of_the_weight_match_closed_forms() {
        // ∫ x^{2m} e^{−x²} dx = √π (2m−1)!!/2^m.
        let (nodes, weights) = gauss_hermite(8).unwrap();
        let moment = |k: u32| -> f64 {
            nodes
                .iter()
                .zip(&weights)
                .map(|(&x, &w)| w * x.powi(k as i32))
                .sum()
        };
        assert!((moment(0) - SQRT_PI).abs() < 1e-12);
        assert!(moment(1).abs() < 1e-12);
        assert!((moment(2) - SQRT_PI / 2.0).abs() < 1e-12);
        assert!((moment(4) - 3.0 * SQRT_PI / 4.0).abs() < 1e-12);
        assert!((moment(8) - 105.0 * SQRT_PI / 16.0).abs() < 1e-11);
        // Degree 2n−1 = 15 is still exact; odd → zero by symmetry.
        assert!(moment(15).abs() < 1e-9);
    }

    #[test]
    fn standard_normal_expectation_of_cosine() {
        // E[cos X] = e^{−1/2} for X ~ N(0,1), via x = √2 u.
        let (nodes, weights) = gauss_hermite(20).unwrap();
        let val: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&u, &w)| w * (std::f64::consts::SQRT_2 * u).cos())
            .sum::<f64>()
            / SQRT_PI;
        assert!((val - (-0.5f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn bivariate_moments_with_correlation() {
        let mean = [1.5, -0.5];
        let cov = [[2.0, 0.6], [0.6, 1.0]];
        let n = 12;
        let e_x = gaussian_expectation_2d(mean, cov, n, |x, _| x).unwrap();
        let e_p = gaussian_expectation_2d(mean, cov, n, |_, p| p).unwrap();
        let var_x = gaussian_expectation_2d(mean, cov, n, |x, _| (x - mean[0]) * (x - mean[0])).unwrap();
        let cov_xp =
            gaussian_expectation_2d(mean, cov, n, |x, p| (x - mean[0]) * (p - mean[1])).unwrap();
        assert!((e_x - mean[0]).abs() < 1e-12);
        assert!((e_p - mean[1]).abs() < 1e-12);
        assert!((var_x - cov[0][0]).abs() < 1e-12);
        assert!((cov_xp - cov[0][1]).abs() < 1e-12);
    }

    #[test]
    fn singular_covariance_is_rejected() {
        let cov = [[1.0, 1.0], [1.0, 1.0]];
        assert!(matches!(
            gaussian_expectation_2d([0.0, 0.0], cov, 8, |_, _| 1.0),
            Err(Error::SingularCovariance { .. })
        ));
    }

    #[test]
    fn node_count_zero_is_rejected() {
        assert!(gauss_hermite(0).is_err());
    }
}
