//! Gauss–Legendre quadrature.
//!
//! Fixed-order rules with nodes from Newton iteration on the Legendre
//! recurrence. The bath integrals use nested product rules with order
//! doubling until a relative tolerance is met; see [`crate::bath`].

use crate::Real;

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre<R> {
    pub nodes: Vec<R>,
    pub weights: Vec<R>,
}

impl<R: Real> GaussLegendre<R> {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let n = order;
        let mut nodes = vec![R::zero(); n];
        let mut weights = vec![R::zero(); n];

        let nf = R::lit(n as f64);
        // nodes come in ± pairs; solve for the upper half
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess
            let k = R::lit(i as f64);
            let theta = R::pi() * (k + R::lit(0.75)) / (nf + R::half());
            let mut x = theta.cos();
            let mut dp = R::one();
            for _ in 0..100 {
                let (p, p_deriv) = legendre_with_derivative(n, x);
                dp = p_deriv;
                let dx = p / p_deriv;
                x = x - dx;
                if dx.abs() <= R::epsilon() * (R::one() + x.abs()) {
                    break;
                }
            }
            let w = R::two() / ((R::one() - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        // odd order: the middle node is exactly 0
        if n % 2 == 1 {
            let (_, dp) = legendre_with_derivative(n, R::zero());
            nodes[n / 2] = R::zero();
            weights[n / 2] = R::two() / (dp * dp);
        }
        Self { nodes, weights }
    }

    /// ∫_a^b f(x) dx by affine transform of the rule.
    pub fn integrate<F: FnMut(R) -> R>(&self, a: R, b: R, mut f: F) -> R {
        let mid = (a + b) * R::half();
        let half = (b - a) * R::half();
        let mut acc = R::zero();
        for (x, w) in self.nodes.iter().zip(self.weights.iter()) {
            acc = acc + *w * f(mid + half * *x);
        }
        acc * half
    }
}

/// (P_n(x), P_n'(x)) from the three-term recurrence.
fn legendre_with_derivative<R: Real>(n: usize, x: R) -> (R, R) {
    let mut p_prev = R::one();
    let mut p = x;
    if n == 0 {
        return (R::one(), R::zero());
    }
    for k in 2..=n {
        let kf = R::lit(k as f64);
        let next = ((R::two() * kf - R::one()) * x * p - (kf - R::one()) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let deriv = R::lit(n as f64) * (x * p - p_prev) / (x * x - R::one());
    (p, deriv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        // order n is exact through degree 2n-1
        let rule = GaussLegendre::<f64>::new(5);
        let got = rule.integrate(0.0, 1.0, |x| x.powi(9));
        assert!((got - 0.1).abs() < 1e-15, "got {got}");
    }

    #[test]
    fn integrates_cosine() {
        let rule = GaussLegendre::<f64>::new(24);
        let got = rule.integrate(0.0, std::f64::consts::PI, |x| x.cos() * x.cos());
        assert!((got - std::f64::consts::PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for order in [1usize, 2, 3, 7, 16, 33, 128] {
            let rule = GaussLegendre::<f64>::new(order);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-12, "order {order}: {s}");
        }
    }

    #[test]
    fn nodes_are_symmetric_and_sorted() {
        let rule = GaussLegendre::<f64>::new(10);
        for i in 0..10 {
            assert!((rule.nodes[i] + rule.nodes[9 - i]).abs() < 1e-15);
            if i > 0 {
                assert!(rule.nodes[i] > rule.nodes[i - 1]);
            }
        }
    }
}
