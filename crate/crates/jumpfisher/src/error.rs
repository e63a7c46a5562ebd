//! Error taxonomy for the whole crate.
//!
//! Validation failures carry the offending value so messages are actionable
//! without a debugger. Exit-code mapping for the CLI lives in `main.rs`
//! (config errors → 2, numerical failures → 3, audit failures → 1).

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong between a config file and an audit report.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix expected to be Hermitian is not, beyond tolerance.
    #[error("matrix is not Hermitian: max |A_ij - conj(A_ji)| = {max_asymmetry:.3e} exceeds {tolerance:.1e}")]
    NonHermitianInput {
        /// Largest per-entry asymmetry found.
        max_asymmetry: f64,
        /// Tolerance that was violated.
        tolerance: f64,
    },

    /// The Jacobi eigensolver failed to drive the off-diagonal norm down.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    ConvergenceFailure {
        /// Sweeps performed before giving up.
        sweeps: usize,
        /// Remaining off-diagonal Frobenius norm.
        off_norm: f64,
    },

    /// Two operands live on different Hilbert-space dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch {
        /// Dimension of the left operand.
        left: usize,
        /// Dimension of the right operand.
        right: usize,
    },

    /// A density matrix trace strayed from one.
    #[error("density matrix trace {trace:.12} differs from 1 beyond tolerance")]
    NonUnitTrace {
        /// Offending trace value.
        trace: f64,
    },

    /// A state eigenvalue dropped below the admissible negativity.
    #[error("state lost positivity: min eigenvalue {min_eigenvalue:.3e} at t = {time}")]
    PositivityLost {
        /// Most negative eigenvalue encountered.
        min_eigenvalue: f64,
        /// Time at which it occurred (0 for static checks).
        time: f64,
    },

    /// A computed variance was negative beyond rounding.
    #[error("variance {value:.3e} is negative beyond tolerance")]
    NegativeVariance {
        /// Offending variance.
        value: f64,
    },

    /// A derivative matrix fed to the SLD solver must be traceless.
    #[error("state derivative has trace {trace:.3e}; trace-preserving dynamics requires a traceless derivative")]
    NonTracelessDerivative {
        /// Offending trace (absolute value of the complex trace).
        trace: f64,
    },

    /// Conditioning on an outcome whose probability is numerically zero.
    #[error("outcome probability {probability:.3e} is below the {floor:.1e} floor; conditional quantity undefined")]
    VanishingOutcomeProbability {
        /// Born probability of the outcome.
        probability: f64,
        /// The floor it violated.
        floor: f64,
    },

    /// A pure probe puts weight on an eigenstate outside the support of ρ.
    #[error("probe has weight {overlap:.3e} on eigenstate {index} with population {population:.3e} below the support floor")]
    PopulationFloor {
        /// Eigenstate index.
        index: usize,
        /// Population of that eigenstate.
        population: f64,
        /// Squared probe overlap with it.
        overlap: f64,
    },

    /// Probabilities handed to an averaging identity do not sum to one.
    #[error("POVM outcome probabilities sum to {total_probability:.12}, not 1")]
    IncompletePovm {
        /// Sum of the supplied probabilities.
        total_probability: f64,
    },

    /// A statistic was requested of an empty sample.
    #[error("empty sample: statistic undefined")]
    EmptySample,

    /// Too few samples for the requested statistical check.
    #[error("insufficient sample: {got} provided, at least {need} required")]
    InsufficientSample {
        /// Number of samples supplied.
        got: usize,
        /// Minimum required.
        need: usize,
    },

    /// The integration or jump step violates the step-action bound.
    #[error("step too large: dt * max_rate = {step_action:.3e} exceeds {limit}")]
    StepTooLarge {
        /// Product of step size and the largest rate present.
        step_action: f64,
        /// The admissible maximum.
        limit: f64,
    },

    /// A drifting MCWF state lost essentially all of its norm.
    #[error("state norm collapsed to {norm:.3e} at t = {time} before renormalization")]
    NormCollapse {
        /// Pre-normalization norm.
        norm: f64,
        /// Time of the step.
        time: f64,
    },

    /// A geometry integrand that must be non-negative was not.
    #[error("negative Fisher sample {value:.3e} at grid index {index}")]
    NegativeSample {
        /// Offending value.
        value: f64,
        /// Grid index where it appeared.
        index: usize,
    },

    /// A Gaussian state's covariance matrix is singular or indefinite.
    #[error("singular covariance matrix: det V = {det:.3e}")]
    SingularCovariance {
        /// Determinant of the covariance matrix.
        det: f64,
    },

    /// A Gaussian covariance matrix violates the uncertainty relation.
    #[error("unphysical covariance matrix: det V = {det:.6e} < {floor} (uncertainty floor, ħ = 1)")]
    UnphysicalCovariance {
        /// Determinant of the covariance matrix.
        det: f64,
        /// Minimum admissible determinant (1/4 in this convention).
        floor: f64,
    },

    /// Two quadrature node counts disagreed beyond the convergence gate.
    #[error("quadrature not converged: node counts {low_nodes} and {high_nodes} differ by {delta:.3e}")]
    QuadratureNonConvergence {
        /// Smaller node count.
        low_nodes: usize,
        /// Larger node count.
        high_nodes: usize,
        /// Absolute disagreement between the two estimates.
        delta: f64,
    },

    /// The experiment config failed validation; `path` names the field.
    #[error("invalid config at `{path}`: {message}")]
    ConfigInvalid {
        /// Dotted path of the offending field (e.g. `grid.dt`).
        path: String,
        /// Human-readable problem description.
        message: String,
    },

    /// Filesystem trouble while reading configs or writing outputs.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
