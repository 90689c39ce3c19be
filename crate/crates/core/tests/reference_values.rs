//! Regression pins against values computed with an independent
//! high-precision quadrature stack (GaAs-like illustrative constants:
//! M = 1.4e9 V/m, ρ = 5317 kg/m³, s = 5110 m/s, a = 25 nm, L = 120 nm).

use dqd_core::bath::{
    absorption_rate_closed, absorption_rate_quadrature, dephasing_b2, BathSpec, DeviceGeometry,
    MaterialSpec, QuadratureConfig,
};

const UEV: f64 = 1e-6 * 1.602176634e-19;
const HBAR: f64 = 1.054571817e-34;

fn setup() -> (MaterialSpec<f64>, DeviceGeometry<f64>) {
    (
        MaterialSpec::new(1.4e9, 5317.0, 5110.0).unwrap(),
        DeviceGeometry::new(25e-9, 120e-9).unwrap(),
    )
}

#[test]
fn absorption_rate_reference_values() {
    let (m, g) = setup();
    let cases = [
        (30.0 * UEV, 1.0, 2.075144952742156e8),
        (30.0 * UEV, 0.030, 788.515438802663),
        (60.0 * UEV, 0.5, 1.823858250927906e8),
    ];
    for (eps, temp, expected) in cases {
        let bath = BathSpec::new(temp).unwrap();
        let got = absorption_rate_closed(&m, &g, eps, &bath).unwrap();
        assert!(
            (got / expected - 1.0).abs() < 1e-10,
            "eps={eps:e} T={temp}: got {got:e}, want {expected:e}"
        );
    }
}

#[test]
fn absorption_quadrature_matches_reference() {
    let (m, g) = setup();
    let cfg = QuadratureConfig::default();
    let bath = BathSpec::new(1.0).unwrap();
    let got = absorption_rate_quadrature(&m, &g, 30.0 * UEV, &bath, &cfg).unwrap();
    assert!(
        (got / 2.075144952742156e8 - 1.0).abs() < 1e-5,
        "got {got:e}"
    );
}

#[test]
fn dephasing_b2_reference_values() {
    let (m, g) = setup();
    let eps = 30.0 * UEV;
    let tau = std::f64::consts::PI * HBAR / eps;
    let cfg = QuadratureConfig::new(1e-7, 9, 14.0).unwrap();
    let cases = [
        (tau, 0.030, 0.009082326109984816),
        (tau, 0.3, 0.011636044774614246),
        (0.25 * tau, 0.030, 0.011257449780952418),
        (tau, 0.0, 0.00907824474529409),
        (2.0 * tau, 1.0, 0.026029893187846893),
    ];
    for (t, temp, expected) in cases {
        let bath = BathSpec::new(temp).unwrap();
        let got = dephasing_b2(&m, &g, &bath, t, &cfg).unwrap();
        assert!(
            (got / expected - 1.0).abs() < 2e-6,
            "t={t:e} T={temp}: got {got:e}, want {expected:e}"
        );
    }
}
