//! Central registry of numerical tolerances.
//!
//! Every threshold used by the library is defined here with its origin and
//! rationale; no module hard-codes magic numbers. Tolerances fall into three
//! groups: *validation* (is an input well-formed?), *regularization* (when is
//! a denominator treated as zero?), and *audit slack* (how much floating-point
//! rounding an asserted inequality may absorb).

/// Per-entry Hermiticity tolerance: `|A_ij − conj(A_ji)| ≤ HERMITICITY`.
///
/// Inputs come from analytic constructions or an RK4 step of a Hermitian
/// generator, so any asymmetry is pure rounding; 1e-12 is ~1e4 ULP at the
/// O(1) matrix scales used here.
pub const HERMITICITY: f64 = 1e-12;

/// Density-matrix trace must satisfy `|Tr ρ − 1| ≤ TRACE`.
///
/// RK4 preserves the trace to rounding; the looser 1e-10 absorbs drift
/// accumulated over ~1e4 steps.
pub const TRACE: f64 = 1e-10;

/// Eigenvalues of a density matrix may undershoot zero by at most this much
/// (they are then clamped to exactly zero). Matches the trace tolerance.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

/// Pure-state norm tolerance after any normalization point.
pub const STATE_NORM: f64 = 1e-10;

/// Frobenius-residual bound for the eigendecomposition reconstruction
/// `‖A − Σ p_n |n⟩⟨n|‖_F` and for eigenvector orthonormality.
pub const EIG_RESIDUAL: f64 = 1e-10;

/// Residual bound for the SLD Lyapunov equation `‖∂ρ − ½{L,ρ}‖_F`.
///
/// Looser than [`EIG_RESIDUAL`] because the residual divides by eigenvalue
/// sums that can be O(1e-2) small in well-conditioned problems.
pub const LYAPUNOV_RESIDUAL: f64 = 1e-9;

/// Population floor `ε_pop` (relative to the unit trace): eigenvalues below
/// it are treated as outside the support of `ρ`. Diagonal SLD terms and
/// rotation denominators on such directions are dropped and flagged.
pub const POPULATION_FLOOR: f64 = 1e-10;

/// Outcome-probability floor `ε_prob`: a conditional quantity with
/// `Tr(Π ρ) ≤ ε_prob` is ill-defined and reported as an error, never clamped.
pub const OUTCOME_PROB_FLOOR: f64 = 1e-12;

/// Probe weight allowed on an unsupported eigenstate: a pure probe with
/// `|⟨n|α⟩|² > PROBE_ON_DEAD_STATE` while `p_n < ε_pop` makes the pure-form
/// CQFI divergent in exact arithmetic, so it is an error.
pub const PROBE_ON_DEAD_STATE: f64 = 1e-6;

/// Degeneracy threshold: eigenvalue pairs with `|p_n − p_k|` below this are
/// treated as degenerate and their perturbative rotation terms `⟨k|∂n⟩` are
/// set to zero (the derivative of an eigenvector is not identifiable inside
/// a degenerate subspace).
pub const DEGENERACY: f64 = 1e-9;

/// Variance floor `ε_var` for observable speed-limit ratios: grid points with
/// `Δ_ρO ≤ ε_var` are excluded from `|ȯ|/Δ_ρO` integrands (and counted)
/// instead of producing unbounded ratios.
pub const VARIANCE_FLOOR: f64 = 1e-10;

/// Variances may undershoot zero by at most this much before being clamped;
/// anything lower is a genuine numerical failure.
pub const NEGATIVE_VARIANCE: f64 = -1e-12;

/// Audit slack for asserted inequalities (`j ≥ ℓ²`, speed limits, δ ≥ 0):
/// covers trapezoid-rule rounding, nothing else — the discrete inequalities
/// are exact in exact arithmetic.
pub const AUDIT_SLACK: f64 = 1e-9;

/// Relative tolerance for the three-term CQFI decomposition closure
/// `total = ic + coh + cross`, an exact operator identity numerically
/// limited only by rounding.
pub const CLOSURE_REL: f64 = 1e-9;

/// Largest admissible per-step action `dt · max_rate` for both the RK4
/// ensemble step and the MCWF jump discretization. Above this the
/// first-order jump sampling is biased beyond the suite's statistical
/// resolution.
pub const MAX_STEP_ACTION: f64 = 0.1;

/// Minimum pre-normalization norm of a drifting MCWF state; collapse below
/// this signals a numerically unstable no-jump propagator.
pub const NORM_COLLAPSE: f64 = 1e-6;

/// Two Gauss–Hermite node counts must agree to this tolerance for the
/// phase-space CQFI integral to count as converged.
pub const QUADRATURE_AGREEMENT: f64 = 1e-7;

/// Minimum determinant of a 2×2 quadrature covariance matrix (ħ = 1,
/// vacuum = diag(1/2, 1/2)): the uncertainty relation requires det V ≥ 1/4.
/// A hair of slack below keeps the exact vacuum admissible in floating point.
pub const UNCERTAINTY_DET_FLOOR: f64 = 0.25;

/// Per-step trace-drift bound asserted by the RK4 propagator.
pub const STEP_TRACE_DRIFT: f64 = 1e-10;

/// Eigenvalue negativity admitted during propagation before declaring the
/// positivity of the evolved state lost.
pub const POSITIVITY_LOSS: f64 = 1e-8;
