//! Dense complex matrices and the state types built on them.
//!
//! Target dimensions are tiny (d ≤ 16), so everything is a row-major
//! `Vec<Complex64>` with straightforward O(d³) products — no external
//! linear-algebra backend, which keeps eigenvector gauge and reduction
//! order fully under this crate's control (outputs must be byte-stable).
//!
//! Types form a validation ladder: [`ComplexMatrix`] (finite entries) →
//! [`HermitianOperator`] (self-adjoint within [`tol::HERMITICITY`]) →
//! [`DensityMatrix`] (unit trace, positive semidefinite). [`PureState`]
//! carries a normalized amplitude vector.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Dense row-major complex matrix on a d-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of dimension `dim` (≥ 1).
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    /// Identity matrix of dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from rows; all rows must share the outer length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        assert!(dim >= 1 && rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        let data = rows.iter().flatten().copied().collect();
        Self { dim, data }
    }

    /// Convenience: build from real entries.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let c: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&c)
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry (i, j).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    /// Overwrite entry (i, j).
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    /// All entries finite (no NaN/Inf)?
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { dim: self.dim, data })
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { dim: self.dim, data })
    }

    /// Scalar multiple.
    pub fn scale(&self, s: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    /// Complex trace.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius norm `√Σ|A_ij|²`.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest deviation from self-adjointness, `max_ij |A_ij − conj(A_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let defect = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(defect);
            }
        }
        worst
    }

    /// Apply to an amplitude vector (no normalization; callers manage norms).
    pub fn apply(&self, amps: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(amps.len(), self.dim, "vector length must match matrix dimension");
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for i in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..d {
                acc += self.get(i, j) * amps[j];
            }
            out[i] = acc;
        }
        out
    }
}

/// Commutator `[A, B] = AB − BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Anticommutator `{A, B} = AB + BA`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.mul(b)?.add(&b.mul(a)?)
}

/// A matrix validated to be self-adjoint within [`tol::HERMITICITY`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    /// Validate and wrap. Fails on non-finite entries or asymmetry.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonHermitianInput { max_asymmetry: f64::NAN, tolerance: tol::HERMITICITY });
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol::HERMITICITY {
            return Err(Error::NonHermitianInput { max_asymmetry: defect, tolerance: tol::HERMITICITY });
        }
        Ok(Self { matrix })
    }

    /// Symmetrize `(A + A†)/2` first, then wrap. For matrices whose only
    /// asymmetry is rounding noise from a long numerical pipeline.
    pub fn symmetrized(matrix: ComplexMatrix) -> Result<Self> {
        let sym = matrix.add(&matrix.adjoint())?.scale(Complex64::new(0.5, 0.0));
        Self::new(sym)
    }

    /// Underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// `Tr(Aρ)`; the imaginary residue (≤ rounding for Hermitian inputs) is
/// discarded.
pub fn expectation(a: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    let product = a.matrix().mul(rho.matrix())?;
    Ok(product.trace().re)
}

/// `Tr(ρO²) − Tr(ρO)²`, clamped to 0 if within rounding below it; a variance
/// below [`tol::NEGATIVE_VARIANCE`] is an error.
pub fn variance(o: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    let mean = expectation(o, rho)?;
    let o_sq = HermitianOperator::symmetrized(o.matrix().mul(o.matrix())?)?;
    let second = expectation(&o_sq, rho)?;
    let var = second - mean * mean;
    if var < tol::NEGATIVE_VARIANCE {
        return Err(Error::NegativeVariance { value: var });
    }
    Ok(var.max(0.0))
}

/// A Hermitian operator additionally validated to have unit trace and a
/// spectrum bounded below by [`tol::EIGENVALUE_FLOOR`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    operator: HermitianOperator,
}

impl DensityMatrix {
    /// Validate and wrap (trace, positivity via the Jacobi eigensolver).
    pub fn new(operator: HermitianOperator) -> Result<Self> {
        let trace = operator.matrix().trace().re;
        if (trace - 1.0).abs() > tol::TRACE {
            return Err(Error::NonUnitTrace { trace });
        }
        let min_eig = crate::eig::min_eigenvalue(&operator)?;
        if min_eig < tol::EIGENVALUE_FLOOR {
            return Err(Error::PositivityLost { min_eigenvalue: min_eig, time: 0.0 });
        }
        Ok(Self { operator })
    }

    /// Build from a raw matrix (validates Hermiticity too).
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        Self::new(HermitianOperator::new(matrix)?)
    }

    /// The validated Hermitian wrapper.
    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    /// Underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        self.operator.matrix()
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.operator.dim()
    }

    /// Purity `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix().mul(self.matrix()).expect("same dims").trace().re
    }
}

/// Normalized pure state `|ψ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: Vec<Complex64>,
}

impl PureState {
    /// Wrap amplitudes already normalized within [`tol::STATE_NORM`].
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let norm = l2_norm(&amps);
        if (norm - 1.0).abs() > tol::STATE_NORM {
            return Err(Error::NormCollapse { norm, time: 0.0 });
        }
        Ok(Self { amps })
    }

    /// Normalize arbitrary amplitudes; errors if the norm is below
    /// [`tol::NORM_COLLAPSE`].
    pub fn normalized(amps: Vec<Complex64>, time: f64) -> Result<Self> {
        let norm = l2_norm(&amps);
        if norm < tol::NORM_COLLAPSE {
            return Err(Error::NormCollapse { norm, time });
        }
        let inv = 1.0 / norm;
        Ok(Self { amps: amps.into_iter().map(|a| a * inv).collect() })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    /// Amplitudes.
    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `⟨ψ|A|ψ⟩` for Hermitian `A` (real part; imaginary residue is rounding).
    pub fn expectation(&self, a: &HermitianOperator) -> f64 {
        let av = a.matrix().apply(&self.amps);
        self.amps
            .iter()
            .zip(&av)
            .map(|(c, v)| (c.conj() * v).re)
            .sum()
    }

    /// Rank-one projector `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> ComplexMatrix {
        let d = self.amps.len();
        let mut m = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, self.amps[i] * self.amps[j].conj());
            }
        }
        m
    }
}

/// Euclidean norm of an amplitude vector.
pub fn l2_norm(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Standard qubit operators in the convention where index 0 is the excited
/// state: `σ_- = |1⟩⟨0|` lowers, `σ_+ = |0⟩⟨1|` raises.
pub mod qubit {
    use super::ComplexMatrix;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Pauli X.
    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]])
    }

    /// Pauli Y.
    pub fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0., 0.), c(0., -1.)], vec![c(0., 1.), c(0., 0.)]])
    }

    /// Pauli Z (+1 on the excited state |0⟩).
    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(1., 0.), c(0., 0.)], vec![c(0., 0.), c(-1., 0.)]])
    }

    /// Lowering operator `σ_- = |1⟩⟨0|`.
    pub fn sigma_minus() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0., 0.), c(0., 0.)], vec![c(1., 0.), c(0., 0.)]])
    }

    /// Raising operator `σ_+ = |0⟩⟨1|`.
    pub fn sigma_plus() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(0., 0.), c(0., 0.)]])
    }
}
