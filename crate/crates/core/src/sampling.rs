//! Random states and matrices for multistart optimization and property tests.
//!
//! Values are drawn in `f64` and converted to the target scalar, so a given
//! RNG stream produces the same draws regardless of the precision in use.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::density::{DensityMatrix, PureState};
use crate::linalg::CMatrix;
use crate::Real;

fn normal<R: Real>(rng: &mut impl Rng) -> R {
    let x: f64 = rng.sample(StandardNormal);
    R::lit(x)
}

pub fn random_complex_gaussian<R: Real>(rng: &mut impl Rng) -> Complex<R> {
    Complex::new(normal(rng), normal(rng))
}

/// Haar-uniform pure state: a normalized complex Gaussian vector.
pub fn random_pure_state<R: Real>(rng: &mut impl Rng, dim: usize) -> PureState<R> {
    loop {
        let amps: Vec<Complex<R>> = (0..dim).map(|_| random_complex_gaussian(rng)).collect();
        if let Ok(state) = PureState::normalized(amps) {
            return state;
        }
    }
}

/// Ginibre-induced random density matrix: G G† / Tr(G G†).
pub fn random_density<R: Real>(rng: &mut impl Rng, dim: usize) -> DensityMatrix<R> {
    let mut g = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = random_complex_gaussian(rng);
        }
    }
    let gg = g.matmul(&g.conj_transpose());
    let tr = gg.trace().re;
    let rho = gg.scale(Complex::new(R::one() / tr, R::zero()));
    DensityMatrix::try_new(rho).expect("Ginibre construction yields a valid density matrix")
}

/// Random Hermitian matrix (G + G†)/2 with Gaussian entries.
pub fn random_hermitian<R: Real>(rng: &mut impl Rng, dim: usize) -> CMatrix<R> {
    let mut g = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = random_complex_gaussian(rng);
        }
    }
    g.hermitized()
}

/// Haar-ish random unitary: Gram–Schmidt on a Ginibre matrix.
pub fn random_unitary<R: Real>(rng: &mut impl Rng, dim: usize) -> CMatrix<R> {
    let mut cols: Vec<Vec<Complex<R>>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex<R>> = (0..dim).map(|_| random_complex_gaussian(rng)).collect();
        for u in &cols {
            let mut proj = Complex::new(R::zero(), R::zero());
            for (a, b) in u.iter().zip(v.iter()) {
                proj = proj + a.conj() * *b;
            }
            for (a, b) in v.iter_mut().zip(u.iter()) {
                *a = *a - proj * *b;
            }
        }
        let norm = v
            .iter()
            .map(|z| z.norm_sqr())
            .fold(R::zero(), |a, b| a + b)
            .sqrt();
        if norm < R::lit(1e-6) {
            continue; // numerically degenerate draw; resample
        }
        for a in v.iter_mut() {
            *a = *a / Complex::new(norm, R::zero());
        }
        cols.push(v);
    }
    let mut u = CMatrix::zeros(dim, dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}
