//! Density-matrix algebra and state-level decoherence measures.
//!
//! A [`DensityMatrix`] is Hermitian, unit-trace and positive semidefinite
//! (within tolerances); a [`DeviationMatrix`] is the traceless Hermitian
//! difference between an actual and an ideal state. The two operator norms on
//! deviations — largest absolute eigenvalue and sum of absolute eigenvalues —
//! are the building blocks of the worst-case error measure in
//! [`crate::measure`].

use num_complex::Complex;

use crate::linalg::{hermitian_eigenvalues, CMatrix};
use crate::{Error, Real, Result};

/// Entrywise Hermiticity / trace tolerance (absolute).
pub fn structure_tol<R: Real>() -> R {
    R::lit(1e-12)
}

/// Eigenvalue floor below which a state is rejected as non-positive.
pub fn positivity_tol<R: Real>() -> R {
    R::lit(-1e-10)
}

/// Normalized pure state |φ⟩.
#[derive(Clone, Debug)]
pub struct PureState<R> {
    amplitudes: Vec<Complex<R>>,
}

impl<R: Real> PureState<R> {
    /// Accepts amplitudes already normalized to within 1e-12.
    pub fn try_new(amplitudes: Vec<Complex<R>>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::invalid("empty amplitude vector"));
        }
        let norm_sq = amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .fold(R::zero(), |a, b| a + b);
        if (norm_sq - R::one()).abs() > structure_tol() {
            return Err(Error::NotNormalized(norm_sq.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales the amplitudes to unit norm; errors on a (near-)zero vector.
    pub fn normalized(amplitudes: Vec<Complex<R>>) -> Result<Self> {
        let norm = amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .fold(R::zero(), |a, b| a + b)
            .sqrt();
        if norm < R::lit(1e-8) {
            return Err(Error::NotNormalized(
                (norm * norm).to_f64().unwrap_or(f64::NAN),
            ));
        }
        let inv = Complex::new(R::one() / norm, R::zero());
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|a| a * inv).collect(),
        })
    }

    pub fn basis_state(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut amplitudes = vec![Complex::new(R::zero(), R::zero()); dim];
        amplitudes[index] = Complex::new(R::one(), R::zero());
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<R>] {
        &self.amplitudes
    }

    /// |⟨other|self⟩|².
    pub fn overlap_sq(&self, other: &Self) -> R {
        let mut ip = Complex::new(R::zero(), R::zero());
        for (a, b) in other.amplitudes.iter().zip(self.amplitudes.iter()) {
            ip = ip + a.conj() * *b;
        }
        ip.norm_sqr()
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix ρ.
#[derive(Clone, Debug)]
pub struct DensityMatrix<R> {
    mat: CMatrix<R>,
}

impl<R: Real> DensityMatrix<R> {
    pub fn try_new(mat: CMatrix<R>) -> Result<Self> {
        if !mat.is_square() || mat.nrows() == 0 {
            return Err(Error::invalid("density matrix must be square, nonempty"));
        }
        let herm = mat.hermiticity_defect();
        if herm > structure_tol() {
            return Err(Error::NotHermitian(herm.to_f64().unwrap_or(f64::NAN)));
        }
        let tr = mat.trace().re;
        if (tr - R::one()).abs() > structure_tol() {
            return Err(Error::BadTrace {
                got: tr.to_f64().unwrap_or(f64::NAN),
                expected: 1.0,
            });
        }
        let evs = hermitian_eigenvalues(&mat)?;
        if let Some(min) = evs.first() {
            if *min < positivity_tol() {
                return Err(Error::NotPositive(min.to_f64().unwrap_or(f64::NAN)));
            }
        }
        Ok(Self { mat })
    }

    pub fn from_diagonal(probs: &[R]) -> Result<Self> {
        let mut m = CMatrix::zeros(probs.len(), probs.len());
        for (i, p) in probs.iter().enumerate() {
            m[(i, i)] = Complex::new(*p, R::zero());
        }
        Self::try_new(m)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let p = R::one() / R::lit(dim as f64);
        Self::from_diagonal(&vec![p; dim]).expect("uniform diagonal is valid")
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<R> {
        &self.mat
    }

    pub fn eigenvalues(&self) -> Vec<R> {
        hermitian_eigenvalues(&self.mat).expect("validated Hermitian matrix")
    }
}

/// Traceless Hermitian deviation σ = ρ − ρ_ideal.
#[derive(Clone, Debug)]
pub struct DeviationMatrix<R> {
    mat: CMatrix<R>,
}

impl<R: Real> DeviationMatrix<R> {
    pub fn try_new(mat: CMatrix<R>) -> Result<Self> {
        if !mat.is_square() || mat.nrows() == 0 {
            return Err(Error::invalid("deviation matrix must be square, nonempty"));
        }
        let herm = mat.hermiticity_defect();
        if herm > structure_tol() {
            return Err(Error::NotHermitian(herm.to_f64().unwrap_or(f64::NAN)));
        }
        let tr = mat.trace().re;
        if tr.abs() > structure_tol() {
            return Err(Error::BadTrace {
                got: tr.to_f64().unwrap_or(f64::NAN),
                expected: 0.0,
            });
        }
        Ok(Self { mat })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            mat: CMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<R> {
        &self.mat
    }

    pub fn eigenvalues(&self) -> Vec<R> {
        hermitian_eigenvalues(&self.mat).expect("validated Hermitian matrix")
    }
}

/// ρ = |φ⟩⟨φ|.
pub fn density_from_pure<R: Real>(state: &PureState<R>) -> DensityMatrix<R> {
    let n = state.dim();
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = state.amplitudes()[i] * state.amplitudes()[j].conj();
        }
    }
    DensityMatrix { mat: m }
}

/// σ = actual − ideal; traceless by construction.
pub fn deviation<R: Real>(
    actual: &DensityMatrix<R>,
    ideal: &DensityMatrix<R>,
) -> Result<DeviationMatrix<R>> {
    if actual.dim() != ideal.dim() {
        return Err(Error::DimensionMismatch(actual.dim(), ideal.dim()));
    }
    Ok(DeviationMatrix {
        mat: actual.mat.sub(&ideal.mat),
    })
}

/// max_i |λ_i| over the eigenvalues of σ.
pub fn eigenvalue_norm<R: Real>(sigma: &DeviationMatrix<R>) -> R {
    sigma
        .eigenvalues()
        .into_iter()
        .map(|l| l.abs())
        .fold(R::zero(), |a, b| if b > a { b } else { a })
}

/// Σ_i |λ_i| over the eigenvalues of σ.
pub fn trace_norm<R: Real>(sigma: &DeviationMatrix<R>) -> R {
    sigma
        .eigenvalues()
        .into_iter()
        .map(|l| l.abs())
        .fold(R::zero(), |a, b| a + b)
}

/// Von Neumann entropy −Tr(ρ ln ρ) in nats, with 0·ln 0 := 0.
pub fn entropy<R: Real>(rho: &DensityMatrix<R>) -> Result<R> {
    let mut s = R::zero();
    for p in rho.eigenvalues() {
        if p < positivity_tol() {
            return Err(Error::NotPositive(p.to_f64().unwrap_or(f64::NAN)));
        }
        let p = p.max(R::zero()).min(R::one());
        if p > R::zero() {
            s = s - p * p.ln();
        }
    }
    Ok(s)
}

/// Idempotency defect 1 − Tr(ρ²); zero exactly on pure states.
pub fn idempotency_defect<R: Real>(rho: &DensityMatrix<R>) -> R {
    // Tr(ρ²) = ‖ρ‖_F² for Hermitian ρ
    R::one() - rho.matrix().frobenius_sq()
}

/// Fidelity Tr(ρ_ideal ρ).
pub fn fidelity<R: Real>(ideal: &DensityMatrix<R>, actual: &DensityMatrix<R>) -> Result<R> {
    if ideal.dim() != actual.dim() {
        return Err(Error::DimensionMismatch(ideal.dim(), actual.dim()));
    }
    Ok(ideal.matrix().matmul(actual.matrix()).trace().re)
}
