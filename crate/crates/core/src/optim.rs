//! Derivative-free local minimization (Nelder–Mead simplex).
//!
//! The deviation-norm objectives are continuous but have kinks where
//! eigenvalues cross, so the worst-case searches in [`crate::measure`] use a
//! simplex method rather than gradients. A polish loop restarts the simplex
//! around the incumbent with a shrinking radius, which reliably buys several
//! extra digits near a smooth maximum.

use crate::Real;

#[derive(Clone, Debug)]
pub struct NelderMeadOptions<R> {
    /// Convergence threshold on the simplex function-value spread.
    pub f_tol: R,
    /// Convergence threshold on the simplex diameter.
    pub x_tol: R,
    /// Iteration cap per simplex run.
    pub max_iters: usize,
    /// Edge length of the initial simplex.
    pub initial_step: R,
    /// Polish restarts around the incumbent (0 = plain single run).
    pub restarts: usize,
}

impl<R: Real> Default for NelderMeadOptions<R> {
    fn default() -> Self {
        Self {
            f_tol: R::lit(1e-10),
            x_tol: R::lit(1e-10),
            max_iters: 2000,
            initial_step: R::lit(0.25),
            restarts: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeResult<R> {
    pub x: Vec<R>,
    pub value: R,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimize `f` starting from `x0`, with polish restarts.
pub fn minimize<R: Real, F: FnMut(&[R]) -> R>(
    f: &mut F,
    x0: &[R],
    opts: &NelderMeadOptions<R>,
) -> MinimizeResult<R> {
    let mut best = single_run(f, x0, opts.initial_step, opts);
    let mut step = opts.initial_step;
    for _ in 0..opts.restarts {
        step = step * R::lit(0.25);
        let next = single_run(f, &best.x, step, opts);
        let improved = best.value - next.value;
        let done = improved <= opts.f_tol;
        if next.value < best.value {
            let evals = best.evaluations + next.evaluations;
            best = next;
            best.evaluations = evals;
        } else {
            best.evaluations += next.evaluations;
        }
        if done {
            break;
        }
    }
    best
}

fn single_run<R: Real, F: FnMut(&[R]) -> R>(
    f: &mut F,
    x0: &[R],
    step: R,
    opts: &NelderMeadOptions<R>,
) -> MinimizeResult<R> {
    let n = x0.len();
    assert!(n >= 1, "empty parameter vector");
    let mut evals = 0usize;
    let mut eval = |x: &[R], evals: &mut usize| {
        *evals += 1;
        f(x)
    };

    // vertices and values, kept sorted best-first
    let mut simplex: Vec<(Vec<R>, R)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0, &mut evals)));
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] = v[i] + step;
        let fv = eval(&v, &mut evals);
        simplex.push((v, fv));
    }
    sort_simplex(&mut simplex);

    let (alpha, gamma, beta, delta) = (R::one(), R::two(), R::half(), R::half());
    let mut converged = false;

    for _ in 0..opts.max_iters {
        let f_best = simplex[0].1;
        let f_worst = simplex[n].1;
        let spread = (f_worst - f_best).abs();
        let diam = simplex_diameter(&simplex);
        if spread <= opts.f_tol * (R::one() + f_best.abs()) || diam <= opts.x_tol {
            converged = true;
            break;
        }

        // centroid of all but the worst vertex
        let mut centroid = vec![R::zero(); n];
        for (v, _) in simplex.iter().take(n) {
            for (c, x) in centroid.iter_mut().zip(v.iter()) {
                *c = *c + *x;
            }
        }
        let nf = R::lit(n as f64);
        for c in centroid.iter_mut() {
            *c = *c / nf;
        }

        let worst = simplex[n].0.clone();
        let reflected = affine(&centroid, &worst, alpha);
        let f_r = eval(&reflected, &mut evals);

        if f_r < simplex[0].1 {
            let expanded = affine(&centroid, &worst, gamma);
            let f_e = eval(&expanded, &mut evals);
            if f_e < f_r {
                simplex[n] = (expanded, f_e);
            } else {
                simplex[n] = (reflected, f_r);
            }
        } else if f_r < simplex[n - 1].1 {
            simplex[n] = (reflected, f_r);
        } else {
            // contraction: outside if the reflection helped over the worst
            let contracted = if f_r < simplex[n].1 {
                affine(&centroid, &worst, alpha * beta)
            } else {
                affine(&centroid, &worst, -beta)
            };
            let f_c = eval(&contracted, &mut evals);
            if f_c < simplex[n].1.min(f_r) {
                simplex[n] = (contracted, f_c);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let v: Vec<R> = vertex
                        .0
                        .iter()
                        .zip(best.iter())
                        .map(|(x, b)| *b + delta * (*x - *b))
                        .collect();
                    let fv = eval(&v, &mut evals);
                    *vertex = (v, fv);
                }
            }
        }
        sort_simplex(&mut simplex);
    }

    let (x, value) = simplex.swap_remove(0);
    MinimizeResult {
        x,
        value,
        evaluations: evals,
        converged,
    }
}

fn affine<R: Real>(centroid: &[R], worst: &[R], coeff: R) -> Vec<R> {
    centroid
        .iter()
        .zip(worst.iter())
        .map(|(c, w)| *c + coeff * (*c - *w))
        .collect()
}

fn sort_simplex<R: Real>(simplex: &mut [(Vec<R>, R)]) {
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("NaN objective value"));
}

fn simplex_diameter<R: Real>(simplex: &[(Vec<R>, R)]) -> R {
    let best = &simplex[0].0;
    let mut d = R::zero();
    for (v, _) in simplex.iter().skip(1) {
        let dist = v
            .iter()
            .zip(best.iter())
            .map(|(a, b)| (*a - *b) * (*a - *b))
            .fold(R::zero(), |acc, t| acc + t)
            .sqrt();
        if dist > d {
            d = dist;
        }
    }
    d
}
