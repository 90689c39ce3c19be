//! Small dense complex matrices and a Hermitian eigensolver.
//!
//! Everything in this crate works with Hilbert-space dimensions of at most 16
//! (three qubits plus a doubling ancilla space), so the representation is a
//! plain row-major `Vec` and the eigensolver is a cyclic complex Jacobi
//! iteration. No sparse or blocked paths.

use num_complex::Complex;

use crate::{Error, Real, Result};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<R>>,
}

impl<R: Real> CMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::new(R::zero(), R::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(R::one(), R::zero());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex<R>>>) -> Self {
        let nr = rows.len();
        let nc = if nr == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Self {
            rows: nr,
            cols: nc,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<R> {
        debug_assert!(self.is_square());
        (0..self.rows)
            .map(|i| self[(i, i)])
            .fold(Complex::new(R::zero(), R::zero()), |a, b| a + b)
    }

    /// Σ |a_ij|²; for Hermitian `A` this equals Tr(A²).
    pub fn frobenius_sq(&self) -> R {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(R::zero(), |a, b| a + b)
    }

    /// Largest entrywise deviation from A = A†.
    pub fn hermiticity_defect(&self) -> R {
        debug_assert!(self.is_square());
        let mut worst = R::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// (A + A†)/2 — used to strip rounding noise before eigensolves.
    pub fn hermitized(&self) -> Self {
        let mut out = self.clone();
        let half = R::half();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = (self[(i, j)] + self[(j, i)].conj()) * Complex::new(half, R::zero());
                out[(i, j)] = z;
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik.norm_sqr() == R::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex<R>]) -> Vec<Complex<R>> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Complex::new(R::zero(), R::zero());
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (a, b) in row.iter().zip(v.iter()) {
                acc = acc + *a * *b;
            }
            out.push(acc);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = *a + *b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = *a - *b;
        }
        out
    }

    pub fn scale(&self, z: Complex<R>) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = *a * z;
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> R {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(R::zero(), |m, d| if d > m { d } else { m })
    }
}

impl<R> std::ops::Index<(usize, usize)> for CMatrix<R> {
    type Output = Complex<R>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<R> {
        &self.data[i * self.cols + j]
    }
}

impl<R> std::ops::IndexMut<(usize, usize)> for CMatrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<R> {
        &mut self.data[i * self.cols + j]
    }
}

/// Column-stacking vectorization index: entry (i, j) of an n×n matrix sits at
/// position i + n·j. This convention is fixed crate-wide; the superoperator
/// algebra in [`crate::gates`] depends on it.
#[inline]
pub fn vec_index(i: usize, j: usize, n: usize) -> usize {
    i + n * j
}

/// Column-stack an n×n matrix into a length-n² vector.
pub fn vectorize<R: Real>(m: &CMatrix<R>) -> Vec<Complex<R>> {
    let n = m.nrows();
    debug_assert!(m.is_square());
    let mut v = vec![Complex::new(R::zero(), R::zero()); n * n];
    for j in 0..n {
        for i in 0..n {
            v[vec_index(i, j, n)] = m[(i, j)];
        }
    }
    v
}

/// Inverse of [`vectorize`].
pub fn unvectorize<R: Real>(v: &[Complex<R>], n: usize) -> CMatrix<R> {
    assert_eq!(v.len(), n * n, "unvectorize length mismatch");
    let mut m = CMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            m[(i, j)] = v[vec_index(i, j, n)];
        }
    }
    m
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Cyclic complex Jacobi iteration: each sweep annihilates every off-diagonal
/// pair through a phased Givens rotation. Quadratically convergent; dozens of
/// sweeps would already indicate a non-Hermitian input.
pub fn hermitian_eigenvalues<R: Real>(m: &CMatrix<R>) -> Result<Vec<R>> {
    assert!(m.is_square(), "eigensolver needs a square matrix");
    let n = m.nrows();
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![m[(0, 0)].re]);
    }

    let mut a = m.clone();
    let scale = a.frobenius_sq().sqrt();
    if scale == R::zero() {
        return Ok(vec![R::zero(); n]);
    }
    let tol = scale * R::epsilon() * R::lit(n as f64);

    const MAX_SWEEPS: usize = 100;
    for _sweep in 0..MAX_SWEEPS {
        let mut off = R::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + a[(p, q)].norm_sqr();
            }
        }
        if (off + off).sqrt() <= tol {
            let mut evs: Vec<R> = (0..n).map(|i| a[(i, i)].re).collect();
            evs.sort_by(|x, y| x.partial_cmp(y).expect("NaN eigenvalue"));
            return Ok(evs);
        }

        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, p, q);
            }
        }
    }
    Err(Error::EigensolverNotConverged(MAX_SWEEPS))
}

/// One phased Jacobi rotation annihilating entry (p, q) of the Hermitian
/// matrix `a`, applied in place as G† A G with
///
///   G[p][p] = c,      G[p][q] = s,
///   G[q][p] = -w̄ s,   G[q][q] = w̄ c,
///
/// where w = a_pq/|a_pq| absorbs the phase and (c, s) is the classic
/// symmetric-Schur rotation for the resulting real 2×2 block.
fn jacobi_rotate<R: Real>(a: &mut CMatrix<R>, p: usize, q: usize) {
    let n = a.nrows();
    let apq = a[(p, q)];
    let m = apq.norm();
    if m == R::zero() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let w = apq / Complex::new(m, R::zero());
    let tau = (aqq - app) / (m * R::two());
    let t = if tau >= R::zero() {
        R::one() / (tau + (R::one() + tau * tau).sqrt())
    } else {
        -R::one() / (-tau + (R::one() + tau * tau).sqrt())
    };
    let c = R::one() / (R::one() + t * t).sqrt();
    let s = t * c;

    let cc = Complex::new(c, R::zero());
    let sc = Complex::new(s, R::zero());
    let wbar_s = w.conj() * sc;
    let wbar_c = w.conj() * cc;
    let w_s = w * sc;
    let w_c = w * cc;

    // columns: B[k][p] = c A[k][p] - w̄ s A[k][q]; B[k][q] = s A[k][p] + w̄ c A[k][q]
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * cc - akq * wbar_s;
        a[(k, q)] = akp * sc + akq * wbar_c;
    }
    // rows: B[p][k] = c A[p][k] - w s A[q][k]; B[q][k] = s A[p][k] + w c A[q][k]
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * cc - aqk * w_s;
        a[(q, k)] = apk * sc + aqk * w_c;
    }

    // pin what the rotation guarantees, clearing rounding residue
    a[(p, q)] = Complex::new(R::zero(), R::zero());
    a[(q, p)] = Complex::new(R::zero(), R::zero());
    let dp = a[(p, p)].re;
    let dq = a[(q, q)].re;
    a[(p, p)] = Complex::new(dp, R::zero());
    a[(q, q)] = Complex::new(dq, R::zero());
}

#[cfg(test)]
mod tests {
    use super::*;

    type C64 = Complex<f64>;

    fn c(re: f64, im: f64) -> C64 {
        Complex::new(re, im)
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let mut m = CMatrix::<f64>::zeros(3, 3);
        m[(0, 0)] = c(2.0, 0.0);
        m[(1, 1)] = c(-1.0, 0.0);
        m[(2, 2)] = c(0.5, 0.0);
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(ev, vec![-1.0, 0.5, 2.0]);
    }

    #[test]
    fn eigenvalues_2x2_closed_form() {
        // [[a, b],[conj b, d]]: λ = (a+d)/2 ± sqrt(((a-d)/2)^2 + |b|^2)
        let (a, d) = (0.7, -0.3);
        let b = c(0.25, -0.4);
        let m = CMatrix::from_rows(vec![vec![c(a, 0.0), b], vec![b.conj(), c(d, 0.0)]]);
        let ev = hermitian_eigenvalues(&m).unwrap();
        let mid = (a + d) / 2.0;
        let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
        assert!((ev[0] - (mid - rad)).abs() < 1e-14);
        assert!((ev[1] - (mid + rad)).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_match_power_sums() {
        // deterministic pseudo-random Hermitian 8x8; checks Σλ^k = Tr(A^k)
        let n = 8;
        let mut g = CMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let t = (i * n + j) as f64;
                g[(i, j)] = c((7.0 * t + 1.0).sin(), (3.0 * t + 2.0).cos());
            }
        }
        let h = g.hermitized();
        let ev = hermitian_eigenvalues(&h).unwrap();
        let tr1: f64 = ev.iter().sum();
        let tr2: f64 = ev.iter().map(|l| l * l).sum();
        let tr3: f64 = ev.iter().map(|l| l * l * l).sum();
        let h2 = h.matmul(&h);
        let h3 = h2.matmul(&h);
        assert!((tr1 - h.trace().re).abs() < 1e-12);
        assert!((tr2 - h2.trace().re).abs() < 1e-11);
        assert!((tr3 - h3.trace().re).abs() < 1e-10);
    }

    #[test]
    fn eigenvalues_frozen_reference() {
        // 4x4 Hermitian with entries from the same generator as above (n=4);
        // reference eigenvalues precomputed with an independent solver.
        let n = 4;
        let mut g = CMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let t = (i * n + j) as f64;
                g[(i, j)] = c((7.0 * t + 1.0).sin(), (3.0 * t + 2.0).cos());
            }
        }
        let h = g.hermitized();
        let ev = hermitian_eigenvalues(&h).unwrap();
        let expected = [
            -1.8956137770171069,
            -0.4161913180122287,
            0.41877991302687356,
            1.966629466540765,
        ];
        for (got, want) in ev.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
    }

    #[test]
    fn vectorize_round_trip() {
        let m = CMatrix::from_rows(vec![
            vec![c(1.0, 2.0), c(3.0, -1.0)],
            vec![c(0.0, 0.5), c(-2.0, 0.0)],
        ]);
        let v = vectorize(&m);
        // column-stacking: (i, j) -> i + n j
        assert_eq!(v[0], m[(0, 0)]);
        assert_eq!(v[1], m[(1, 0)]);
        assert_eq!(v[2], m[(0, 1)]);
        assert_eq!(v[3], m[(1, 1)]);
        assert_eq!(unvectorize(&v, 2), m);
    }

    #[test]
    fn f32_instantiation_smoke() {
        let mut m = CMatrix::<f32>::zeros(2, 2);
        m[(0, 0)] = Complex::new(1.0f32, 0.0);
        m[(1, 1)] = Complex::new(-1.0f32, 0.0);
        m[(0, 1)] = Complex::new(0.0f32, 0.5);
        m[(1, 0)] = Complex::new(0.0f32, -0.5);
        let ev = hermitian_eigenvalues(&m).unwrap();
        let rad = (1.0f32 + 0.25).sqrt();
        assert!((ev[0] + rad).abs() < 1e-6);
        assert!((ev[1] - rad).abs() < 1e-6);
    }
}
