//! Physical constants (2019 SI exact values where applicable).

use crate::Real;

/// Reduced Planck constant, J·s.
pub fn hbar<R: Real>() -> R {
    R::lit(1.054_571_817e-34)
}

/// Boltzmann constant, J/K.
pub fn k_b<R: Real>() -> R {
    R::lit(1.380_649e-23)
}

/// Elementary charge, C.
pub fn elementary_charge<R: Real>() -> R {
    R::lit(1.602_176_634e-19)
}
