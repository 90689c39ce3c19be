//! Superoperator channels for the two constant-Hamiltonian gates.
//!
//! Density matrices are column-stacked (see [`crate::linalg::vec_index`]) and
//! channels are dense N²×N² matrices acting on the stacked vector. The two
//! physical channels are
//!
//! - the NOT-gate relaxation channel, expressed in the energy basis
//!   {|+⟩, |−⟩} with |±⟩ = (|0⟩ ± |1⟩)/√2: populations relax toward thermal
//!   occupations at rate Γ while coherences decay at Γ/2 with phase e^{∓iεt/ħ};
//! - the π-phase-gate pure-dephasing channel, in the logical basis: diagonals
//!   fixed, coherences multiplied by e^{-B²(t) ± iεt/ħ}.
//!
//! Sign convention: with electron Hamiltonian −(ε_A/2)σ_x and ε_A = ε > 0,
//! the symmetric state |+⟩ has energy −ε/2 and is the ground state, so its
//! thermal population is the larger one.

use num_complex::Complex;

use crate::constants::{hbar, k_b};
use crate::density::DensityMatrix;
use crate::linalg::{unvectorize, vec_index, vectorize, CMatrix};
use crate::{Error, Real, Result};

/// Which constant-Hamiltonian gate a channel models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    Not,
    Phase,
}

impl std::fmt::Display for GateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GateKind::Not => write!(f, "NOT"),
            GateKind::Phase => write!(f, "PHASE"),
        }
    }
}

/// Gate parameters: level splitting ε (J) and duration τ (s), tied by
/// τ = πħ/ε for a half-period pulse.
#[derive(Clone, Copy, Debug)]
pub struct GateSpec<R> {
    pub kind: GateKind,
    splitting_eps: R,
    duration_tau: R,
}

impl<R: Real> GateSpec<R> {
    /// Construct from the splitting; τ = πħ/ε is derived.
    pub fn from_splitting(kind: GateKind, splitting_eps: R) -> Result<Self> {
        if splitting_eps <= R::zero() {
            return Err(Error::invalid("level splitting must be positive"));
        }
        Ok(Self {
            kind,
            splitting_eps,
            duration_tau: R::pi() * hbar::<R>() / splitting_eps,
        })
    }

    /// Construct from the duration; ε = πħ/τ is derived.
    pub fn from_duration(kind: GateKind, duration_tau: R) -> Result<Self> {
        if duration_tau <= R::zero() {
            return Err(Error::invalid("gate duration must be positive"));
        }
        Ok(Self {
            kind,
            splitting_eps: R::pi() * hbar::<R>() / duration_tau,
            duration_tau,
        })
    }

    pub fn splitting_eps(&self) -> R {
        self.splitting_eps
    }

    pub fn duration_tau(&self) -> R {
        self.duration_tau
    }
}

/// Thermal occupations of the energy doublet {|+⟩ (ground), |−⟩ (excited)}.
#[derive(Clone, Copy, Debug)]
pub struct ThermalPopulations<R> {
    pub p_plus: R,
    pub p_minus: R,
}

/// Boltzmann populations for energies ∓ε/2, normalized to p₊ + p₋ = 1.
/// T = 0 gives (1, 0); T → ∞ tends to (1/2, 1/2).
pub fn thermal_populations<R: Real>(splitting_eps: R, temperature: R) -> ThermalPopulations<R> {
    assert!(splitting_eps > R::zero(), "splitting must be positive");
    if temperature <= R::zero() {
        return ThermalPopulations {
            p_plus: R::one(),
            p_minus: R::zero(),
        };
    }
    let boltzmann = (-splitting_eps / (k_b::<R>() * temperature)).exp();
    let p_plus = R::one() / (R::one() + boltzmann);
    ThermalPopulations {
        p_plus,
        p_minus: R::one() - p_plus,
    }
}

/// Linear superoperator on column-stacked density matrices.
#[derive(Clone, Debug)]
pub struct Channel<R> {
    dim: usize,
    matrix: CMatrix<R>,
    label: String,
}

impl<R: Real> Channel<R> {
    /// Validates that the matrix is trace-preserving and
    /// Hermiticity-preserving before wrapping it.
    ///
    /// Both properties are linear constraints on the entries, so they are
    /// checked structurally: Σ_i M[(i,i),(k,l)] = δ_kl for trace preservation
    /// and M[(i,j),(k,l)] = conj(M[(j,i),(l,k)]) for Hermiticity preservation.
    pub fn new(dim: usize, matrix: CMatrix<R>, label: impl Into<String>) -> Result<Self> {
        let n2 = dim * dim;
        if matrix.nrows() != n2 || matrix.ncols() != n2 {
            return Err(Error::DimensionMismatch(matrix.nrows(), n2));
        }
        let tol = R::lit(1e-10);

        let mut worst_trace = R::zero();
        for k in 0..dim {
            for l in 0..dim {
                let mut acc = Complex::new(R::zero(), R::zero());
                for i in 0..dim {
                    acc = acc + matrix[(vec_index(i, i, dim), vec_index(k, l, dim))];
                }
                let expect = if k == l { R::one() } else { R::zero() };
                let defect = (acc - Complex::new(expect, R::zero())).norm();
                if defect > worst_trace {
                    worst_trace = defect;
                }
            }
        }
        if worst_trace > tol {
            return Err(Error::NotTracePreserving(
                worst_trace.to_f64().unwrap_or(f64::NAN),
            ));
        }

        let mut worst_herm = R::zero();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    for l in 0..dim {
                        let lhs = matrix[(vec_index(i, j, dim), vec_index(k, l, dim))];
                        let rhs = matrix[(vec_index(j, i, dim), vec_index(l, k, dim))].conj();
                        let defect = (lhs - rhs).norm();
                        if defect > worst_herm {
                            worst_herm = defect;
                        }
                    }
                }
            }
        }
        if worst_herm > tol {
            return Err(Error::NotHermiticityPreserving(
                worst_herm.to_f64().unwrap_or(f64::NAN),
            ));
        }

        Ok(Self {
            dim,
            matrix,
            label: label.into(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            matrix: CMatrix::identity(dim * dim),
            label: "identity".into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix<R> {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Difference of the underlying superoperator matrices (not itself a
    /// channel; feeds the deviation-norm objectives).
    pub fn superop_difference(&self, other: &Channel<R>) -> Result<CMatrix<R>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(self.matrix.sub(&other.matrix))
    }

    /// Re-express the channel in the basis related by ρ' = UρU†:
    /// T' = S_U T S_U† with S_U the conjugation superoperator of U.
    pub fn basis_change(&self, u: &CMatrix<R>) -> Result<Self> {
        if u.nrows() != self.dim || u.ncols() != self.dim {
            return Err(Error::DimensionMismatch(u.nrows(), self.dim));
        }
        let s_u = conjugation_superop(u);
        let s_u_dag = s_u.conj_transpose();
        let matrix = s_u.matmul(&self.matrix).matmul(&s_u_dag);
        Channel::new(self.dim, matrix, format!("{} (rebased)", self.label))
    }
}

/// Superoperator of ρ ↦ UρU† under column stacking:
/// S[(i,j),(k,l)] = U[i][k]·conj(U[j][l]).
fn conjugation_superop<R: Real>(u: &CMatrix<R>) -> CMatrix<R> {
    let n = u.nrows();
    let mut s = CMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    s[(vec_index(i, j, n), vec_index(k, l, n))] = u[(i, k)] * u[(j, l)].conj();
                }
            }
        }
    }
    s
}

/// Relaxation channel of the NOT gate in the energy basis.
///
/// Populations approach the thermal values at rate Γ; coherences decay at
/// Γ/2 and rotate with e^{∓iεt/ħ}. With Γ = 0 this is the ideal gate
/// evolution expressed in the energy basis.
pub fn not_gate_channel<R: Real>(
    gamma: R,
    splitting_eps: R,
    temperature: R,
    t: R,
) -> Result<Channel<R>> {
    if t < R::zero() {
        return Err(Error::invalid("time must be nonnegative"));
    }
    if gamma < R::zero() {
        return Err(Error::invalid("relaxation rate must be nonnegative"));
    }
    let pops = thermal_populations(splitting_eps, temperature);
    let decay = (-gamma * t).exp();
    let half_decay = (-gamma * t * R::half()).exp();
    let phase = splitting_eps * t / hbar::<R>();

    let n = 2;
    let re = |x: R| Complex::new(x, R::zero());
    let mut m = CMatrix::zeros(4, 4);
    // populations: ρ'_kk = p_k^th (1 − e^{−Γt}) Tr ρ + e^{−Γt} ρ_kk
    m[(vec_index(0, 0, n), vec_index(0, 0, n))] = re(pops.p_plus * (R::one() - decay) + decay);
    m[(vec_index(0, 0, n), vec_index(1, 1, n))] = re(pops.p_plus * (R::one() - decay));
    m[(vec_index(1, 1, n), vec_index(0, 0, n))] = re(pops.p_minus * (R::one() - decay));
    m[(vec_index(1, 1, n), vec_index(1, 1, n))] = re(pops.p_minus * (R::one() - decay) + decay);
    // coherences: ρ'_{+-} = ρ_{+-} e^{−Γt/2} e^{+iεt/ħ}
    m[(vec_index(0, 1, n), vec_index(0, 1, n))] =
        Complex::new(phase.cos(), phase.sin()) * re(half_decay);
    m[(vec_index(1, 0, n), vec_index(1, 0, n))] =
        Complex::new(phase.cos(), -phase.sin()) * re(half_decay);

    Channel::new(2, m, "not-gate relaxation")
}

/// Pure-dephasing channel of the π-phase gate in the logical basis:
/// diagonals unchanged, ρ'_{01} = ρ_{01} e^{−B²} e^{+iεt/ħ}.
pub fn phase_gate_channel<R: Real>(b2_of_t: R, splitting_eps: R, t: R) -> Result<Channel<R>> {
    if b2_of_t < R::zero() {
        return Err(Error::invalid("B² must be nonnegative"));
    }
    if t < R::zero() {
        return Err(Error::invalid("time must be nonnegative"));
    }
    let damp = (-b2_of_t).exp();
    let phase = splitting_eps * t / hbar::<R>();
    let n = 2;
    let re = |x: R| Complex::new(x, R::zero());
    let mut m = CMatrix::zeros(4, 4);
    m[(vec_index(0, 0, n), vec_index(0, 0, n))] = re(R::one());
    m[(vec_index(1, 1, n), vec_index(1, 1, n))] = re(R::one());
    m[(vec_index(0, 1, n), vec_index(0, 1, n))] = Complex::new(phase.cos(), phase.sin()) * re(damp);
    m[(vec_index(1, 0, n), vec_index(1, 0, n))] =
        Complex::new(phase.cos(), -phase.sin()) * re(damp);
    Channel::new(2, m, "phase-gate dephasing")
}

/// Noiseless gate evolution: conjugation by e^{−iH_S t/ħ} with
/// H_S = −(ε_A/2)σ_x − (ε_P/2)σ_z, in the logical basis.
/// NOT: ε_A = ε, ε_P = 0. PHASE: ε_A = 0, ε_P = ε. Defined for 0 ≤ t ≤ τ.
pub fn ideal_channel<R: Real>(gate: &GateSpec<R>, t: R) -> Result<Channel<R>> {
    if t < R::zero() || t > gate.duration_tau() * (R::one() + R::lit(1e-12)) {
        return Err(Error::invalid("time outside the gate interval [0, τ]"));
    }
    let half_angle = gate.splitting_eps() * t / (R::two() * hbar::<R>());
    let (c, s) = (half_angle.cos(), half_angle.sin());
    let u = match gate.kind {
        // e^{+i(εt/2ħ)σ_x} = cos·I + i sin·σ_x
        GateKind::Not => CMatrix::from_rows(vec![
            vec![Complex::new(c, R::zero()), Complex::new(R::zero(), s)],
            vec![Complex::new(R::zero(), s), Complex::new(c, R::zero())],
        ]),
        // e^{+i(εt/2ħ)σ_z} = diag(e^{iεt/2ħ}, e^{−iεt/2ħ})
        GateKind::Phase => CMatrix::from_rows(vec![
            vec![Complex::new(c, s), Complex::new(R::zero(), R::zero())],
            vec![Complex::new(R::zero(), R::zero()), Complex::new(c, -s)],
        ]),
    };
    Channel::new(2, conjugation_superop(&u), format!("ideal {}", gate.kind))
}

/// Apply a channel: vectorize, multiply, devectorize, validate.
pub fn apply_channel<R: Real>(ch: &Channel<R>, rho: &DensityMatrix<R>) -> Result<DensityMatrix<R>> {
    if ch.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(ch.dim(), rho.dim()));
    }
    let v = ch.matrix().matvec(&vectorize(rho.matrix()));
    let out = unvectorize(&v, ch.dim());
    // strip rounding noise accumulated by the matrix-vector product before
    // re-validating the state invariants
    DensityMatrix::try_new(out.hermitized())
}

/// Tensor product of channels, consistent with the column-stacking
/// convention: (A ⊗ B)(ρ_a ⊗ ρ_b) = A(ρ_a) ⊗ B(ρ_b).
pub fn tensor_channels<R: Real>(a: &Channel<R>, b: &Channel<R>) -> Channel<R> {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let mut m = CMatrix::zeros(n * n, n * n);
    for i in 0..na {
        for j in 0..na {
            for k in 0..na {
                for l in 0..na {
                    let a_entry = a.matrix()[(vec_index(i, j, na), vec_index(k, l, na))];
                    if a_entry.norm_sqr() == R::zero() {
                        continue;
                    }
                    for p in 0..nb {
                        for q in 0..nb {
                            for r in 0..nb {
                                for s in 0..nb {
                                    let b_entry =
                                        b.matrix()[(vec_index(p, q, nb), vec_index(r, s, nb))];
                                    let row = vec_index(i * nb + p, j * nb + q, n);
                                    let col = vec_index(k * nb + r, l * nb + s, n);
                                    m[(row, col)] = a_entry * b_entry;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Channel {
        dim: n,
        matrix: m,
        label: format!("{} ⊗ {}", a.label(), b.label()),
    }
}

/// (T1, T2) = (1/Γ, 2/Γ): population and coherence decay times of the
/// relaxation channel.
pub fn extract_timescales<R: Real>(gamma: R) -> Result<(R, R)> {
    if gamma <= R::zero() {
        return Err(Error::invalid("relaxation rate must be positive"));
    }
    Ok((R::one() / gamma, R::two() / gamma))
}

/// Hadamard-like basis change between logical {|0⟩,|1⟩} and energy {|+⟩,|−⟩}
/// bases; its own inverse.
pub fn energy_basis_transform<R: Real>() -> CMatrix<R> {
    let h = R::one() / R::two().sqrt();
    CMatrix::from_rows(vec![
        vec![Complex::new(h, R::zero()), Complex::new(h, R::zero())],
        vec![Complex::new(h, R::zero()), Complex::new(-h, R::zero())],
    ])
}
