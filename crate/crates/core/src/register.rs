//! Multi-qubit registers with independent baths: additivity of the
//! worst-case error measure.
//!
//! Qubits couple to separate environments and do not interact, so register
//! evolution is the tensor product of the per-qubit channels. The searches
//! run over all pure register states — entangled states included — and the
//! checks verify that the register-level D never exceeds the sum of the
//! per-qubit values, approaching equality as the noise level shrinks.

use num_complex::Complex;

use crate::density::DensityMatrix;
use crate::gates::{tensor_channels, Channel};
use crate::linalg::CMatrix;
use crate::measure::{
    diamond_norm_lower_bound, maximal_deviation_norm, DecoherenceReport, OptimizerConfig,
};
use crate::{Error, Real, Result};

/// Per-qubit (actual, ideal) channel pairs; up to three qubits.
#[derive(Clone, Debug)]
pub struct RegisterSpec<R> {
    qubit_channels: Vec<(Channel<R>, Channel<R>)>,
}

impl<R: Real> RegisterSpec<R> {
    pub fn new(qubit_channels: Vec<(Channel<R>, Channel<R>)>) -> Result<Self> {
        let n = qubit_channels.len();
        if !(1..=3).contains(&n) {
            return Err(Error::RegisterSize(n));
        }
        for (actual, ideal) in &qubit_channels {
            if actual.dim() != 2 || ideal.dim() != 2 {
                return Err(Error::invalid("register qubits must have dimension 2"));
            }
        }
        Ok(Self { qubit_channels })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_channels.len()
    }

    pub fn qubit_channels(&self) -> &[(Channel<R>, Channel<R>)] {
        &self.qubit_channels
    }
}

/// Outcome of [`additivity_check`].
#[derive(Clone, Debug)]
pub struct AdditivityReport<R> {
    pub d_register: R,
    pub d_singles: Vec<R>,
    pub sum_singles: R,
    pub bound_satisfied: bool,
    pub relative_gap: R,
    pub converged: bool,
}

/// Outcome of [`diamond_subadditivity_check`]. Lower-bound estimates cannot
/// strictly certify the inequality, so this is informational.
#[derive(Clone, Debug)]
pub struct SubadditivityReport<R> {
    pub k_register: R,
    pub k_singles: Vec<R>,
    pub sum_singles: R,
    pub within_slack: bool,
}

/// Tensor the per-qubit channels into register-level (actual, ideal).
pub fn build_register_channels<R: Real>(spec: &RegisterSpec<R>) -> (Channel<R>, Channel<R>) {
    let mut iter = spec.qubit_channels().iter();
    let (first_actual, first_ideal) = iter.next().expect("register is nonempty");
    let mut actual = first_actual.clone();
    let mut ideal = first_ideal.clone();
    for (next_actual, next_ideal) in iter {
        actual = tensor_channels(&actual, next_actual);
        ideal = tensor_channels(&ideal, next_ideal);
    }
    (actual, ideal)
}

/// Register-level maximal deviation norm over all pure states of dimension
/// 2^n, entangled states included.
pub fn register_deviation_norm<R: Real>(
    spec: &RegisterSpec<R>,
    cfg: &OptimizerConfig<R>,
) -> Result<DecoherenceReport<R>> {
    let (actual, ideal) = build_register_channels(spec);
    maximal_deviation_norm(&actual, &ideal, cfg)
}

/// Verify D_register ≤ Σ_q D_q (with `slack` absorbing optimizer error) and
/// record the relative gap |D_register − ΣD_q| / ΣD_q.
pub fn additivity_check<R: Real>(
    spec: &RegisterSpec<R>,
    cfg: &OptimizerConfig<R>,
    slack: R,
) -> Result<AdditivityReport<R>> {
    let register = register_deviation_norm(spec, cfg)?;
    let mut d_singles = Vec::with_capacity(spec.qubit_count());
    let mut all_converged = register.converged;
    for (actual, ideal) in spec.qubit_channels() {
        let single = maximal_deviation_norm(actual, ideal, cfg)?;
        all_converged = all_converged && single.converged;
        d_singles.push(single.d_value);
    }
    let sum_singles = d_singles.iter().fold(R::zero(), |a, b| a + *b);
    let bound_satisfied = register.d_value <= sum_singles + slack;
    let relative_gap = if sum_singles > R::zero() {
        (register.d_value - sum_singles).abs() / sum_singles
    } else {
        R::zero()
    };
    Ok(AdditivityReport {
        d_register: register.d_value,
        d_singles,
        sum_singles,
        bound_satisfied,
        relative_gap,
        converged: all_converged,
    })
}

/// Compare the register diamond-norm lower bound with the sum of the
/// per-qubit bounds (two-qubit registers only).
pub fn diamond_subadditivity_check<R: Real>(
    spec: &RegisterSpec<R>,
    cfg: &OptimizerConfig<R>,
    slack: R,
) -> Result<SubadditivityReport<R>> {
    if spec.qubit_count() != 2 {
        return Err(Error::invalid(
            "diamond subadditivity check is implemented for two qubits",
        ));
    }
    let (actual, ideal) = build_register_channels(spec);
    let register = diamond_norm_lower_bound(&actual, &ideal, cfg)?;
    let mut k_singles = Vec::with_capacity(2);
    for (a, i) in spec.qubit_channels() {
        k_singles.push(diamond_norm_lower_bound(a, i, cfg)?.k_lower);
    }
    let sum_singles = k_singles.iter().fold(R::zero(), |a, b| a + *b);
    Ok(SubadditivityReport {
        k_register: register.k_lower,
        within_slack: register.k_lower <= sum_singles + slack,
        k_singles,
        sum_singles,
    })
}

/// Reduced state of the subsystem `keep` (0 = first factor, 1 = second) of a
/// bipartite state on dimensions (d_first, d_second).
pub fn partial_trace<R: Real>(
    rho: &DensityMatrix<R>,
    d_first: usize,
    d_second: usize,
    keep: usize,
) -> Result<DensityMatrix<R>> {
    if d_first * d_second != rho.dim() {
        return Err(Error::DimensionMismatch(d_first * d_second, rho.dim()));
    }
    let m = rho.matrix();
    let out = match keep {
        0 => {
            let mut red = CMatrix::zeros(d_first, d_first);
            for i in 0..d_first {
                for j in 0..d_first {
                    let mut acc = Complex::new(R::zero(), R::zero());
                    for a in 0..d_second {
                        acc = acc + m[(i * d_second + a, j * d_second + a)];
                    }
                    red[(i, j)] = acc;
                }
            }
            red
        }
        1 => {
            let mut red = CMatrix::zeros(d_second, d_second);
            for a in 0..d_second {
                for b in 0..d_second {
                    let mut acc = Complex::new(R::zero(), R::zero());
                    for i in 0..d_first {
                        acc = acc + m[(i * d_second + a, i * d_second + b)];
                    }
                    red[(a, b)] = acc;
                }
            }
            red
        }
        _ => return Err(Error::invalid("keep must be 0 or 1")),
    };
    DensityMatrix::try_new(out.hermitized())
}
