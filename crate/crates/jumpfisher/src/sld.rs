//! Symmetric logarithmic derivative (SLD) and quantum Fisher information.
//!
//! Given a state `ρ` and its parameter derivative `∂ρ` (Hermitian,
//! traceless), the SLD `L` solves the Lyapunov equation `∂ρ = ½{L, ρ}`.
//! In the spectral basis `ρ = Σ p_n |n⟩⟨n|` the solution is explicit:
//!
//! ```text
//! L_nn = ⟨n|∂ρ|n⟩ / p_n                    (diagonal: ∂ log p_n)
//! L_kn = 2 ⟨k|∂ρ|n⟩ / (p_k + p_n),  k ≠ n  (off-diagonal)
//! ```
//!
//! with every term dropped on directions outside the support of `ρ`
//! (`p < ε_pop`), which implements the restriction of the defining sums to
//! `p_x + p_y > 0`. The QFI is `F_Q = Tr(ρ L²)`; splitting `L` into its
//! diagonal part `D` and off-diagonal part `C` *in the eigenbasis* yields
//!
//! ```text
//! F_IC = Tr(ρ D²) = Σ_n (∂p_n)²/p_n      (incoherent / population part)
//! F_C  = Tr(ρ C²)                        (coherent / rotation part)
//! ```
//!
//! with `F_Q = F_IC + F_C` exactly, because `Tr(ρ{D,C}) = 0` when `ρ` is
//! diagonal in the same basis. The `D`/`C` split (rather than the
//! perturbation-theory form `2 σ_xy |⟨y|∂x⟩|²`) is used because it stays
//! exact for degenerate spectra, where eigenvector derivatives `⟨k|∂n⟩`
//! are not identifiable; the two agree whenever the spectrum is simple.
//!
//! Eigenvector derivatives are still exposed ([`SldData::rot`]) through the
//! first-order perturbation identity `⟨k|∂n⟩ = ⟨k|∂ρ|n⟩/(p_n − p_k)`, with
//! degenerate pairs (gap below [`tol::DEGENERACY`]) set to zero and flagged —
//! this avoids numerically differentiating eigenvectors, which is
//! gauge-jittery.

use num_complex::Complex64;

use crate::eig::{eig_density, SpectralState};
use crate::error::{Error, Result};
use crate::linalg::{anticommutator, ComplexMatrix, DensityMatrix, HermitianOperator};
use crate::tol;

/// The SLD together with the spectral data it was built from.
#[derive(Debug, Clone)]
pub struct SldData {
    spectral: SpectralState,
    /// L expressed in the eigenbasis of ρ.
    sld_eigenbasis: ComplexMatrix,
    /// L in the original basis.
    sld: HermitianOperator,
    /// ∂p_n = ⟨n|∂ρ|n⟩ per eigenvalue.
    dp: Vec<f64>,
    /// ∂p_n / p_n with the population floor applied (0 on dropped terms).
    dlogp: Vec<f64>,
    /// rot[k][n] = ⟨k|∂n⟩; zero on the diagonal and on degenerate pairs.
    rot: ComplexMatrix,
    /// True when some `p_n < ε_pop` carries derivative weight above the
    /// floor: the metric has an undefined direction there (informational).
    rank_deficient: bool,
    /// True when some eigenvalue gap fell below the degeneracy threshold.
    degenerate: bool,
}

impl SldData {
    /// The SLD operator in the original basis.
    pub fn sld(&self) -> &HermitianOperator {
        &self.sld
    }

    /// The SLD in the eigenbasis of ρ.
    pub fn sld_in_eigenbasis(&self) -> &ComplexMatrix {
        &self.sld_eigenbasis
    }

    /// Spectral decomposition of ρ the solution is anchored to.
    pub fn spectral(&self) -> &SpectralState {
        &self.spectral
    }

    /// Eigenvalue derivatives ∂p_n.
    pub fn dp(&self) -> &[f64] {
        &self.dp
    }

    /// Floored logarithmic derivatives ∂p_n/p_n.
    pub fn dlogp(&self) -> &[f64] {
        &self.dlogp
    }

    /// Eigenvector derivative overlap ⟨k|∂n⟩ (0 for k = n or degenerate).
    pub fn rot(&self, k: usize, n: usize) -> Complex64 {
        self.rot.get(k, n)
    }

    /// σ_xy = (p_x − p_y)²/(p_x + p_y), or 0 when the pair is unsupported.
    pub fn sigma(&self, x: usize, y: usize) -> f64 {
        let p = self.spectral.eigenvalues();
        let sum = p[x] + p[y];
        if sum < tol::POPULATION_FLOOR {
            return 0.0;
        }
        let diff = p[x] - p[y];
        diff * diff / sum
    }

    /// Whether the derivative pushed weight outside the support of ρ.
    pub fn rank_deficient(&self) -> bool {
        self.rank_deficient
    }

    /// Whether any eigenvalue pair was treated as degenerate.
    pub fn degenerate(&self) -> bool {
        self.degenerate
    }

    /// Frobenius residual of the Lyapunov equation, `‖∂ρ − ½{L,ρ}‖_F`.
    pub fn lyapunov_residual(&self, rho: &DensityMatrix, drho: &HermitianOperator) -> Result<f64> {
        let half = anticommutator(self.sld.matrix(), rho.matrix())?.scale(Complex64::new(0.5, 0.0));
        Ok(drho.matrix().sub(&half)?.frobenius_norm())
    }
}

/// Solve the Lyapunov equation `∂ρ = ½{L, ρ}` in the spectral basis of ρ.
///
/// `drho` must be traceless (within [`tol::TRACE`]); a nonzero trace would
/// silently break every downstream identity, so it is rejected rather than
/// projected out.
pub fn solve_sld(rho: &DensityMatrix, drho: &HermitianOperator) -> Result<SldData> {
    if rho.dim() != drho.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: drho.dim() });
    }
    let dtrace = drho.matrix().trace().norm();
    if dtrace > tol::TRACE {
        return Err(Error::NonTracelessDerivative { trace: dtrace });
    }

    let spectral = eig_density(rho)?;
    let d = rho.dim();
    let p = spectral.eigenvalues().to_vec();
    let dr = spectral.to_eigenbasis(drho.matrix())?;

    let mut sld_eig = ComplexMatrix::zeros(d);
    let mut rot = ComplexMatrix::zeros(d);
    let mut dp = vec![0.0; d];
    let mut dlogp = vec![0.0; d];
    let mut rank_deficient = false;
    let mut degenerate = false;

    for n in 0..d {
        dp[n] = dr.get(n, n).re;
        if p[n] >= tol::POPULATION_FLOOR {
            dlogp[n] = dp[n] / p[n];
            sld_eig.set(n, n, Complex64::new(dlogp[n], 0.0));
        } else if dp[n].abs() > tol::POPULATION_FLOOR {
            // Weight is leaking out of the support: the metric is undefined
            // along this direction. Flag it and drop the term.
            rank_deficient = true;
        }
        for k in 0..d {
            if k == n {
                continue;
            }
            let sum = p[k] + p[n];
            if sum >= tol::POPULATION_FLOOR {
                sld_eig.set(k, n, dr.get(k, n) * (2.0 / sum));
            }
            let gap = p[n] - p[k];
            if gap.abs() > tol::DEGENERACY {
                rot.set(k, n, dr.get(k, n) / gap);
            } else {
                degenerate = true;
            }
        }
    }

    let sld = HermitianOperator::symmetrized(spectral.from_eigenbasis(&sld_eig)?)?;
    Ok(SldData { spectral, sld_eigenbasis: sld_eig, sld, dp, dlogp, rot, rank_deficient, degenerate })
}

/// QFI `F_Q = Tr(ρ L²) ≥ 0`, evaluated in the eigenbasis where ρ is
/// diagonal (so the product needs only the known eigenvalues).
pub fn qfi(sld: &SldData) -> f64 {
    let d = sld.spectral.dim();
    let p = sld.spectral.eigenvalues();
    let l = &sld.sld_eigenbasis;
    let mut total = 0.0;
    for n in 0..d {
        let mut row = 0.0;
        for k in 0..d {
            row += l.get(n, k).norm_sqr();
        }
        total += p[n] * row;
    }
    total.max(0.0)
}

/// The equivalent two-sum form `2 Σ_{x,y} |⟨x|∂ρ|y⟩|²/(p_x + p_y)` with the
/// sum restricted to supported pairs. Agrees with [`qfi`] for full-rank ρ;
/// used as an independent cross-check in tests.
pub fn qfi_two_sum(rho: &DensityMatrix, drho: &HermitianOperator) -> Result<f64> {
    let spectral = eig_density(rho)?;
    let d = rho.dim();
    let p = spectral.eigenvalues();
    let dr = spectral.to_eigenbasis(drho.matrix())?;
    let mut total = 0.0;
    for x in 0..d {
        for y in 0..d {
            let sum = p[x] + p[y];
            if sum >= tol::POPULATION_FLOOR {
                total += 2.0 * dr.get(x, y).norm_sqr() / sum;
            }
        }
    }
    Ok(total)
}

/// Incoherent/coherent split `(F_IC, F_C)` from the diagonal/off-diagonal
/// parts of `L` in the eigenbasis; `F_IC + F_C = F_Q` exactly.
pub fn qfi_decompose(sld: &SldData) -> (f64, f64) {
    let d = sld.spectral.dim();
    let p = sld.spectral.eigenvalues();
    let l = &sld.sld_eigenbasis;
    let mut f_ic = 0.0;
    let mut f_c = 0.0;
    for n in 0..d {
        f_ic += p[n] * l.get(n, n).norm_sqr();
        for k in 0..d {
            if k != n {
                f_c += p[n] * l.get(n, k).norm_sqr();
            }
        }
    }
    (f_ic, f_c)
}
