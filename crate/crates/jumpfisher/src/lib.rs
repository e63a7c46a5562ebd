//! # jumpfisher
//!
//! Monte Carlo wave-function (quantum-jump) unravelings of GKSL open-system
//! dynamics, with the information-geometric layer on top: the quantum Fisher
//! information of the time parameter, its conditional (per-trajectory)
//! counterpart, thermodynamic length and action, and the associated speed
//! limits.
//!
//! ## What the library computes
//!
//! For a density matrix `ρ` and its derivative `∂ρ` (here: the exact GKSL
//! right-hand side, so the estimated parameter is time itself), the symmetric
//! logarithmic derivative (SLD) `L` solves the Lyapunov equation
//!
//! ```text
//! ∂ρ = ½ {L, ρ}
//! ```
//!
//! and the quantum Fisher information (QFI) is `F_Q = Tr(ρ L²)`. In the
//! spectral basis of `ρ` the QFI splits into an incoherent (population) part
//! `F_IC = Σ_n (∂p_n)²/p_n` and a coherent (eigenbasis-rotation) part `F_C`.
//!
//! Conditioning on a measurement outcome or a pure trajectory state `|α⟩`
//! defines the conditional QFI (CQFI) `f = ⟨α|L²|α⟩`, which decomposes into
//! `ic + coh + cross`; the cross term may be negative and averages to zero
//! over the trajectory ensemble, while `f` itself averages to `F_Q`.
//!
//! Along each stochastic trajectory the realized CQFI profile `f(t)` yields a
//! stochastic thermodynamic length `ℓ(t) = ½∫√f dτ` and action
//! `j(t) = (t/4)∫f dτ`, obeying `j ≥ ℓ²` pathwise (Cauchy–Schwarz, exact even
//! for the discrete trapezoid rule used here), together with observable speed
//! limits of the form `|⟨Ȯ⟩| ≤ ΔO √F_Q`.
//!
//! ## Layout
//!
//! - [`linalg`]: dense complex matrices, Hermitian/density-matrix newtypes,
//!   pure states (dimensions ≤ 16; no external linear-algebra backend).
//! - [`eig`]: cyclic Jacobi Hermitian eigensolver with a deterministic,
//!   gauge-fixed eigenbasis (descending eigenvalues; largest-magnitude
//!   component of each vector real and non-negative).
//! - [`sld`]: SLD Lyapunov solver, QFI, incoherent/coherent split.
//! - [`cqfi`]: conditional QFI for POVM elements and pure probes, the
//!   three-term decomposition, stochastic Fisher information, averaging.
//! - [`lindblad`]: GKSL models and a fixed-step RK4 ensemble propagator that
//!   stores the exact right-hand side alongside each state.
//! - [`jump`]: first-order MCWF trajectory generator on the shared time grid
//!   with counter-based per-trajectory random streams.
//! - [`geometry`]: lengths, actions, δ-variance, observable speed limits,
//!   and the ensemble hierarchy report.
//! - [`models`]: the driven thermal qubit, a thermal-qubit field sensor with
//!   closed-form Fisher quantities (used as an oracle for the generic
//!   pipeline), and a Gaussian force-sensing model evaluated by
//!   Gauss–Hermite quadrature.
//! - [`config`] / [`pipeline`]: TOML experiment configs, the deterministic
//!   trajectory-ensemble runner, CSV emission, and the inequality audit.
//!
//! ## Conventions
//!
//! `ħ = k_B = 1`; all rates are in units of the qubit splitting. Eigenvalues
//! are reported in descending order. Basis index 0 is the excited state, so
//! `σ_- = |1⟩⟨0|` lowers. Every tolerance lives in [`tol`] with a rationale.
//!
//! ## Determinism
//!
//! A `(config, master_seed)` pair fully determines every output byte.
//! Trajectory `i` draws from `ChaCha8` stream `i` of the master seed, and all
//! parallel reductions combine partial results in a fixed order, so worker
//! counts never change results.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod config;
pub mod cqfi;
pub mod eig;
pub mod error;
pub mod geometry;
pub mod jump;
pub mod linalg;
pub mod lindblad;
pub mod models;
pub mod pipeline;
pub mod quad;
pub mod sld;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, HermitianOperator, PureState};
pub use eig::SpectralState;
pub use sld::SldData;
