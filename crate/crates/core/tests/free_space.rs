use approx::assert_relative_eq;
use proptest::prelude::*;
use vdw_core::forces::{free_space_force, free_space_forces};
use vdw_core::greens::PlanarGeometry;
use vdw_core::materials::ResonanceAtom;
use vdw_core::potentials::{asymptotic_coefficients, u0_ee, u0_em};
use vdw_core::quadrature::QuadSpec;

fn e() -> ResonanceAtom {
    ResonanceAtom::unit_electric()
}

fn m() -> ResonanceAtom {
    ResonanceAtom::unit_magnetic()
}

fn log_slope(l: f64, spec: &QuadSpec) -> f64 {
    let h = 1.01;
    let lo = u0_ee(l / h, &e(), &e(), spec).unwrap().abs();
    let hi = u0_ee(l * h, &e(), &e(), spec).unwrap().abs();
    -(hi / lo).ln() / (h * h).ln()
}

#[test]
fn power_law_exponent_moves_from_six_to_seven() {
    let spec = QuadSpec::default();
    assert_relative_eq!(log_slope(1e-3, &spec), 6.0, max_relative = 1e-3);
    assert_relative_eq!(log_slope(1e3, &spec), 7.0, max_relative = 1e-3);
    let mut prev = log_slope(1e-2, &spec);
    for l in [0.1, 1.0, 10.0, 100.0] {
        let s = log_slope(l, &spec);
        assert!(s > prev, "slope not increasing at l = {l}: {s} <= {prev}");
        prev = s;
    }
}

#[test]
fn retarded_coefficients_agree_with_closed_values() {
    let spec = QuadSpec::default();
    let c = asymptotic_coefficients(&e(), &m(), &spec).unwrap();
    let pi3 = std::f64::consts::PI.powi(3);
    assert_relative_eq!(c.c7_ee, 23.0 / (64.0 * pi3), max_relative = 1e-14);
    assert_relative_eq!(c.c7_em, 7.0 / (64.0 * pi3), max_relative = 1e-14);
    let l = 1e3;
    let u = u0_em(l, &e(), &m(), &spec).unwrap();
    assert_relative_eq!(u * l.powi(7), c.c7_em, max_relative = 1e-2);
}

#[test]
fn forces_follow_the_potential_power_laws() {
    let spec = QuadSpec::default();
    let c = asymptotic_coefficients(&e(), &e(), &spec).unwrap();
    let l = 1e-3;
    let f = free_space_force(l, &e(), &e(), &spec).unwrap();
    assert_relative_eq!(-f, 6.0 * c.c6 / l.powi(7), max_relative = 1e-2);
    let l = 1e3;
    let f = free_space_force(l, &e(), &e(), &spec).unwrap();
    assert_relative_eq!(-f, 7.0 * c.c7_ee / l.powi(8), max_relative = 1e-2);
    let f = free_space_force(l, &e(), &m(), &spec).unwrap();
    assert_relative_eq!(f, 7.0 * c.c7_em / l.powi(8), max_relative = 1e-2);
}

#[test]
fn nonpositive_separation_is_rejected() {
    let spec = QuadSpec::default();
    assert!(free_space_force(0.0, &e(), &e(), &spec).is_err());
    assert!(u0_ee(-1.0, &e(), &e(), &spec).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pair_forces_cancel(x in -5.0f64..5.0, za in 0.01f64..5.0, zb in 0.01f64..5.0) {
        prop_assume!(x.hypot(za - zb) > 1e-3);
        let g = PlanarGeometry::new(0.0, za, x, zb).unwrap();
        let p = free_space_forces(&g, &e(), &e(), &QuadSpec::default()).unwrap();
        prop_assert_eq!(p.imbalance(), [0.0; 3]);
        prop_assert_eq!(p.f_on_b[1], 0.0);
        // attraction: the force on B points back toward A
        let toward_a = -(p.f_on_b[0] * x + p.f_on_b[2] * (zb - za));
        prop_assert!(toward_a > 0.0);
    }

    #[test]
    fn mixed_pair_repels_everywhere(log_l in -3.0f64..3.0) {
        let l = 10f64.powf(log_l);
        let spec = QuadSpec::default();
        prop_assert!(u0_em(l, &e(), &m(), &spec).unwrap() > 0.0);
        prop_assert!(free_space_force(l, &e(), &m(), &spec).unwrap() > 0.0);
    }
}
