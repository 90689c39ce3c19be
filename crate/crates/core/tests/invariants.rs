//! Cross-module invariant checks with seeded random sampling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dqd_core::bath::{
    absorption_rate_closed, bracket, dephasing_b2, emission_rate, relaxation_rate, BathSpec,
    DeviceGeometry, MaterialSpec, QuadratureConfig,
};
use dqd_core::density::{
    density_from_pure, deviation, eigenvalue_norm, entropy, idempotency_defect, trace_norm,
    DensityMatrix, DeviationMatrix,
};
use dqd_core::gates::{
    apply_channel, ideal_channel, not_gate_channel, phase_gate_channel, tensor_channels, Channel,
    GateKind, GateSpec,
};
use dqd_core::linalg::{hermitian_eigenvalues, CMatrix};
use dqd_core::measure::{d_not_closed, d_phase_closed, maximal_deviation_norm, OptimizerConfig};
use dqd_core::sampling::{random_density, random_hermitian, random_pure_state, random_unitary};

const UEV: f64 = 1e-6 * 1.602176634e-19;
const KB: f64 = 1.380649e-23;
const HBAR: f64 = 1.054571817e-34;

fn gaas_like() -> (MaterialSpec<f64>, DeviceGeometry<f64>, BathSpec<f64>) {
    (
        MaterialSpec::new(1.4e9, 5317.0, 5110.0).unwrap(),
        DeviceGeometry::new(25e-9, 120e-9).unwrap(),
        BathSpec::new(0.25).unwrap(),
    )
}

#[test]
fn two_level_norm_identity_on_random_deviations() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..1000 {
        let h = random_hermitian::<f64>(&mut rng, 2);
        // project out the trace to make it a valid deviation
        let tr = h.trace().re / 2.0;
        let mut t = h.clone();
        for i in 0..2 {
            let shifted = t[(i, i)] - num_complex::Complex::new(tr, 0.0);
            t[(i, i)] = shifted;
        }
        let sigma = DeviationMatrix::try_new(t).unwrap();
        let en = eigenvalue_norm(&sigma);
        let tn = trace_norm(&sigma);
        assert!((tn - 2.0 * en).abs() <= 1e-12 * (1.0 + tn));
    }
}

#[test]
fn norm_chain_on_random_state_pairs() {
    // ‖σ‖_λ ≤ ½‖σ‖_Tr ≤ 1 for deviations of density-matrix pairs
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for dim in [2usize, 4, 8] {
        for _ in 0..1000 {
            let a = random_density::<f64>(&mut rng, dim);
            let b = random_density::<f64>(&mut rng, dim);
            let sigma = deviation(&a, &b).unwrap();
            let en = eigenvalue_norm(&sigma);
            let tn = trace_norm(&sigma);
            assert!(en <= tn / 2.0 + 1e-12, "dim {dim}: {en} vs {tn}");
            assert!(tn / 2.0 <= 1.0 + 1e-12, "dim {dim}: trace norm {tn}");
        }
    }
}

#[test]
fn entropy_and_defect_are_basis_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for dim in [2usize, 4] {
        for _ in 0..50 {
            let rho = random_density::<f64>(&mut rng, dim);
            let u = random_unitary::<f64>(&mut rng, dim);
            let rotated = u.matmul(rho.matrix()).matmul(&u.conj_transpose());
            let rho_rot = DensityMatrix::try_new(rotated.hermitized()).unwrap();
            assert!((entropy(&rho).unwrap() - entropy(&rho_rot).unwrap()).abs() < 1e-10);
            assert!((idempotency_defect(&rho) - idempotency_defect(&rho_rot)).abs() < 1e-10);
        }
    }
}

#[test]
fn bracket_nonnegative_on_log_grid() {
    let decades = 6; // 1e-3 ..= 1e3
    let per_decade = 40;
    for k in 0..=(decades * per_decade) {
        let x = 1e-3 * 10f64.powf(k as f64 / per_decade as f64);
        let v = bracket(x);
        assert!(v >= -1e-12 * x.powi(7).max(1.0), "bracket({x}) = {v}");
    }
}

#[test]
fn absorption_vanishes_with_separation() {
    let (m, _, _) = gaas_like();
    let a = 25e-9;
    let eps = 30.0 * UEV;
    let bath = BathSpec::new(1.0).unwrap();
    let k = eps / (HBAR * m.sound_speed());

    // reference point: kL = π
    let g_ref = DeviceGeometry::new(a, std::f64::consts::PI / k).unwrap();
    let w_ref = absorption_rate_closed(&m, &g_ref, eps, &bath).unwrap();

    let g_tiny = DeviceGeometry::new(a, 1e-3 * a).unwrap();
    let w_tiny = absorption_rate_closed(&m, &g_tiny, eps, &bath).unwrap();
    assert!(w_tiny >= 0.0);
    assert!(w_tiny < 1e-6 * w_ref, "w_tiny {w_tiny:e} vs ref {w_ref:e}");
}

#[test]
fn dephasing_nonnegative_and_increasing_in_temperature() {
    let (m, g, _) = gaas_like();
    let cfg = QuadratureConfig::default();
    let eps = 30.0 * UEV;
    let tau = std::f64::consts::PI * HBAR / eps;
    for t in [0.25 * tau, tau] {
        let mut prev = -1.0;
        for temp in [0.0, 0.05, 0.15, 0.5, 1.5] {
            let bath = BathSpec::new(temp).unwrap();
            let b2 = dephasing_b2(&m, &g, &bath, t, &cfg).unwrap();
            assert!(b2 >= 0.0);
            assert!(
                b2 > prev - 1e-9,
                "B² not increasing at t={t:e}, T={temp}: {b2} after {prev}"
            );
            prev = b2;
        }
    }
}

#[test]
fn rates_scale_with_modulus_squared() {
    let (m, g, bath) = gaas_like();
    let m2 = MaterialSpec::new(2.0 * m.piezo_modulus(), m.mass_density(), m.sound_speed()).unwrap();
    let eps = 30.0 * UEV;
    let cfg = QuadratureConfig::default();
    let tau = std::f64::consts::PI * HBAR / eps;

    let pairs = [
        (
            absorption_rate_closed(&m, &g, eps, &bath).unwrap(),
            absorption_rate_closed(&m2, &g, eps, &bath).unwrap(),
        ),
        (
            emission_rate(&m, &g, eps, &bath).unwrap(),
            emission_rate(&m2, &g, eps, &bath).unwrap(),
        ),
        (
            relaxation_rate(&m, &g, eps, &bath).unwrap(),
            relaxation_rate(&m2, &g, eps, &bath).unwrap(),
        ),
        (
            dephasing_b2(&m, &g, &bath, tau, &cfg).unwrap(),
            dephasing_b2(&m2, &g, &bath, tau, &cfg).unwrap(),
        ),
    ];
    for (one, four) in pairs {
        assert!(
            (four / one - 4.0).abs() < 1e-12,
            "M² scaling violated: {one:e} -> {four:e}"
        );
    }
}

fn choi_matrix(ch: &Channel<f64>) -> CMatrix<f64> {
    // (ch ⊗ I) applied to the maximally entangled density
    let n = ch.dim();
    let big = tensor_channels(ch, &Channel::identity(n));
    let mut omega = vec![num_complex::Complex::new(0.0, 0.0); n * n];
    for i in 0..n {
        omega[i * n + i] = num_complex::Complex::new(1.0 / (n as f64).sqrt(), 0.0);
    }
    let psi = dqd_core::density::PureState::try_new(omega).unwrap();
    let rho = density_from_pure(&psi);
    apply_channel(&big, &rho).unwrap().matrix().clone()
}

#[test]
fn channels_are_completely_positive_on_grid() {
    let eps = 30.0 * UEV;
    let tau = std::f64::consts::PI * HBAR / eps;
    for gamma_tau in [0.0, 0.05, 0.3, 1.0, 2.0] {
        for temp in [0.0, 0.1, 1.0] {
            let ch = not_gate_channel(gamma_tau / tau, eps, temp, tau).unwrap();
            let evs = hermitian_eigenvalues(&choi_matrix(&ch)).unwrap();
            assert!(evs[0] >= -1e-9, "NOT Γτ={gamma_tau} T={temp}: {evs:?}");
        }
    }
    for b2 in [0.0, 0.01, 0.3, 1.0, 10.0] {
        let ch = phase_gate_channel(b2, eps, tau).unwrap();
        let evs = hermitian_eigenvalues(&choi_matrix(&ch)).unwrap();
        assert!(evs[0] >= -1e-9, "PHASE B²={b2}: {evs:?}");
    }
}

#[test]
fn ideal_channels_preserve_purity() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for kind in [GateKind::Not, GateKind::Phase] {
        let gate = GateSpec::from_splitting(kind, 30.0 * UEV).unwrap();
        for frac in [0.2, 0.6, 1.0] {
            let ch = ideal_channel(&gate, gate.duration_tau() * frac).unwrap();
            for _ in 0..20 {
                let rho = random_density::<f64>(&mut rng, 2);
                let out = apply_channel(&ch, &rho).unwrap();
                assert!((idempotency_defect(&out) - idempotency_defect(&rho)).abs() < 1e-12);
            }
            let st = random_pure_state::<f64>(&mut rng, 2);
            let out = apply_channel(&ch, &density_from_pure(&st)).unwrap();
            assert!(idempotency_defect(&out).abs() < 1e-12);
        }
    }
}

#[test]
fn d_bounded_and_monotone_on_grids() {
    let eps = 30.0 * UEV;
    let tau = std::f64::consts::PI * HBAR / eps;
    let temp = eps / (KB * 3.0);
    let cfg = OptimizerConfig {
        multistart_count: 8,
        ..Default::default()
    };

    let mut prev = -1.0;
    for i in 0..20 {
        let gamma_tau = 0.02 + 2.0 * i as f64 / 19.0;
        let actual = not_gate_channel(gamma_tau / tau, eps, temp, tau).unwrap();
        let ideal = not_gate_channel(0.0, eps, temp, tau).unwrap();
        let d = maximal_deviation_norm(&actual, &ideal, &cfg)
            .unwrap()
            .d_value;
        assert!((0.0..=1.0).contains(&d));
        assert!(
            d >= prev - 1e-8,
            "D not monotone in Γτ: {d} after {prev} at {gamma_tau}"
        );
        assert!((d - d_not_closed(gamma_tau / tau, tau, eps, temp)).abs() < 1e-6);
        prev = d;
    }

    let mut prev = -1.0;
    for i in 0..20 {
        let b2 = 0.01 + 3.0 * i as f64 / 19.0;
        let actual = phase_gate_channel(b2, eps, tau).unwrap();
        let ideal = phase_gate_channel(0.0, eps, tau).unwrap();
        let d = maximal_deviation_norm(&actual, &ideal, &cfg)
            .unwrap()
            .d_value;
        assert!((0.0..=1.0).contains(&d));
        assert!(d >= prev - 1e-8, "D not monotone in B²: {d} after {prev}");
        assert!((d - d_phase_closed(b2).unwrap()).abs() < 1e-6);
        prev = d;
    }
}
