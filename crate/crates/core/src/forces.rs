//! Forces on each atom: analytic radial derivatives in free space, central
//! finite differences of the body-induced potential near a half space.
//!
//! Near a body the two forces need not balance, so both are reported.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greens::{HalfSpaceMedium, PlanarGeometry};
use crate::materials::{AtomKind, ResonanceAtom};
use crate::potentials::{u1_halfspace_pair, PotentialBreakdown};
use crate::quadrature::{integrate_region, QuadSpec};

/// Forces on atom A and atom B as `[x, y, z]` vectors, with `x` along the
/// surface and `z` along its normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForcePair {
    pub f_on_a: [f64; 3],
    pub f_on_b: [f64; 3],
}

impl ForcePair {
    /// `f_on_A + f_on_B`, zero when momentum is conserved between the atoms.
    pub fn imbalance(&self) -> [f64; 3] {
        std::array::from_fn(|i| self.f_on_a[i] + self.f_on_b[i])
    }
}

/// `e^{−2x}(9 + 18x + 16x² + 8x³ + 3x⁴ + x⁵)`
fn ee_force_poly(x: f64) -> f64 {
    (-2.0 * x).exp() * (9.0 + x * (18.0 + x * (16.0 + x * (8.0 + x * (3.0 + x)))))
}

/// `e^{−2x}(2 + 4x + 3x² + x³)`
fn em_force_poly(x: f64) -> f64 {
    (-2.0 * x).exp() * (2.0 + x * (4.0 + x * (3.0 + x)))
}

/// Radial free-space force `−dU/dl`; positive means repulsion.
///
/// The pair type follows atom B's kind: an electric B gives the attractive
/// electric-electric force, a magnetic B the repulsive mixed one.
pub fn free_space_force(
    l: f64,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    spec: &QuadSpec,
) -> Result<f64> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::domain(format!(
            "separation must be positive, got {l}"
        )));
    }
    a.validate()?;
    b.validate()?;
    if a.kind != AtomKind::Electric {
        return Err(Error::domain("atom A must be electric"));
    }
    let region = crate::potentials::free_u_region(a, b, l);
    let spec = spec.with_abs_tol(f64::MIN_POSITIVE);
    let pi3 = PI.powi(3);
    match b.kind {
        AtomKind::Electric => {
            let r = integrate_region(
                |u| Ok(a.at(u) * b.at(u) * ee_force_poly(u * l)),
                &region,
                &spec,
            )?;
            Ok(-r.value / (8.0 * pi3 * l.powi(7)))
        }
        AtomKind::Magnetic => {
            let r = integrate_region(
                |u| Ok(u * u * a.at(u) * b.at(u) * em_force_poly(u * l)),
                &region,
                &spec,
            )?;
            Ok(r.value / (8.0 * pi3 * l.powi(5)))
        }
    }
}

/// Free-space forces on both atoms of a planar geometry; they cancel exactly.
pub fn free_space_forces(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    spec: &QuadSpec,
) -> Result<ForcePair> {
    geom.validate()?;
    let l = geom.l();
    let radial = free_space_force(l, a, b, spec)?;
    // unit vector from A to B
    let e = [geom.x() / l, 0.0, geom.z() / l];
    let f_on_b = e.map(|c| radial * c);
    Ok(ForcePair {
        f_on_a: f_on_b.map(|c| -c),
        f_on_b,
    })
}

/// Default relative finite-difference step, in units of `min(l, z_A, z_B)`.
pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// Forces on both atoms above a half space together with the potential at
/// the unshifted geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfSpaceForces {
    pub potential: PotentialBreakdown,
    pub forces: ForcePair,
    /// Free-space forces at the same separation, for normalization.
    pub free: ForcePair,
}

/// Forces on both atoms above a half space.
///
/// The free-space part is differentiated analytically. The body-induced
/// part `U⁽¹⁾ + U⁽²⁾` is differentiated by central differences in `X`, `z_A`
/// and `z_B` with step `h = step · min(l, z_A, z_B)`, Richardson-extrapolated
/// from `h` and `h/2`. Quadrature noise enters the derivative as roughly
/// `rel_tol/step` relative to the body-induced part.
pub fn halfspace_forces(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
    step: f64,
    spec: &QuadSpec,
) -> Result<HalfSpaceForces> {
    geom.validate()?;
    if !(step > 0.0 && step < 0.5) {
        return Err(Error::domain(format!(
            "finite-difference step must lie in (0, 0.5), got {step}"
        )));
    }
    let h = step * geom.l().min(geom.z_a).min(geom.z_b);
    let free = free_space_forces(geom, a, b, spec)?;
    let [u0, u1, u2] = {
        let [u1, u2] = u1_halfspace_pair(geom, a, b, medium, spec)?;
        let u0 = crate::potentials::u0_ee(geom.l(), a, b, spec)?;
        [u0, u1, u2]
    };
    let potential = PotentialBreakdown::new(u0, u1, u2);

    // shifted geometries: (coordinate, offset); coordinate 0 moves x_B (i.e. X),
    // 1 moves z_A, 2 moves z_B
    let mut shifts = Vec::with_capacity(12);
    for coord in 0..3 {
        for d in [h, -h, 0.5 * h, -0.5 * h] {
            shifts.push((coord, d));
        }
    }
    let shifted: Vec<PlanarGeometry> = shifts
        .iter()
        .map(|&(coord, d)| {
            let mut g = *geom;
            match coord {
                0 => g.x_b += d,
                1 => g.z_a += d,
                _ => g.z_b += d,
            }
            g.validate().map_err(|_| {
                Error::domain(format!(
                    "finite-difference step {d:e} pushes an atom onto the surface"
                ))
            })?;
            Ok(g)
        })
        .collect::<Result<_>>()?;
    let body: Vec<f64> = shifted
        .par_iter()
        .map(|g| {
            let [u1, u2] = u1_halfspace_pair(g, a, b, medium, spec)?;
            Ok(u1 + u2)
        })
        .collect::<Result<_>>()?;
    let deriv: Vec<f64> = body
        .chunks(4)
        .map(|c| {
            let coarse = (c[0] - c[1]) / (2.0 * h);
            let fine = (c[2] - c[3]) / h;
            (4.0 * fine - coarse) / 3.0
        })
        .collect();
    let (d_x, d_za, d_zb) = (deriv[0], deriv[1], deriv[2]);

    let forces = ForcePair {
        f_on_a: [free.f_on_a[0] + d_x, 0.0, free.f_on_a[2] - d_za],
        f_on_b: [free.f_on_b[0] - d_x, 0.0, free.f_on_b[2] - d_zb],
    };
    Ok(HalfSpaceForces {
        potential,
        forces,
        free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{LorentzMedium, MediumKind};
    use crate::potentials::{asymptotic_coefficients, u0_ee, u0_em, u_total};

    fn unit() -> ResonanceAtom {
        ResonanceAtom::unit_electric()
    }

    #[test]
    fn polynomials_at_origin() {
        assert_eq!(ee_force_poly(0.0), 9.0);
        assert_eq!(em_force_poly(0.0), 2.0);
    }

    #[test]
    fn radial_force_matches_numerical_derivative() {
        let spec = QuadSpec::default().with_rel_tol(1e-10);
        let m = ResonanceAtom::unit_magnetic();
        for l in [1e-2, 0.3, 2.0, 40.0] {
            let h = 1e-4 * l;
            let fd = -(u0_ee(l + h, &unit(), &unit(), &spec).unwrap()
                - u0_ee(l - h, &unit(), &unit(), &spec).unwrap())
                / (2.0 * h);
            let f = free_space_force(l, &unit(), &unit(), &spec).unwrap();
            assert!(f < 0.0);
            assert!((f - fd).abs() < 1e-6 * f.abs(), "{f} vs {fd}");

            let fd = -(u0_em(l + h, &unit(), &m, &spec).unwrap()
                - u0_em(l - h, &unit(), &m, &spec).unwrap())
                / (2.0 * h);
            let f = free_space_force(l, &unit(), &m, &spec).unwrap();
            assert!(f > 0.0);
            assert!((f - fd).abs() < 1e-6 * f.abs(), "{f} vs {fd}");
        }
    }

    #[test]
    fn power_law_limits() {
        let spec = QuadSpec::default();
        let c = asymptotic_coefficients(&unit(), &unit(), &spec).unwrap();
        let l = 1e-3;
        let f = free_space_force(l, &unit(), &unit(), &spec).unwrap();
        assert!((f * l.powi(7) / (6.0 * c.c6) + 1.0).abs() < 0.01);
        let l = 1e3;
        let f = free_space_force(l, &unit(), &unit(), &spec).unwrap();
        assert!((f * l.powi(8) / (7.0 * c.c7_ee) + 1.0).abs() < 0.01);
        assert!(free_space_force(0.0, &unit(), &unit(), &spec).is_err());
        assert!(free_space_force(-1.0, &unit(), &unit(), &spec).is_err());
    }

    #[test]
    fn free_space_action_reaction() {
        let g = PlanarGeometry::new(0.2, 1.0, 0.9, 1.4).unwrap();
        let p = free_space_forces(&g, &unit(), &unit(), &QuadSpec::default()).unwrap();
        assert_eq!(p.imbalance(), [0.0; 3]);
        // attraction: B pulled toward A
        assert!(p.f_on_b[0] < 0.0 && p.f_on_b[2] < 0.0);
    }

    #[test]
    fn far_plate_restores_balance() {
        let spec = QuadSpec::default();
        let eps = LorentzMedium::new(3.0, 1.0, 1e-3, MediumKind::Electric).unwrap();
        let g = PlanarGeometry::parallel(0.5, 50.0).unwrap();
        let r = halfspace_forces(
            &g,
            &unit(),
            &unit(),
            &HalfSpaceMedium::dielectric(eps),
            DEFAULT_FD_STEP,
            &spec,
        )
        .unwrap();
        let f = r.forces;
        assert!((f.f_on_a[0] + f.f_on_b[0]).abs() < 0.01 * f.f_on_b[0].abs());
        assert_eq!(f.f_on_a[1], 0.0);
        assert_eq!(f.f_on_b[1], 0.0);
    }

    #[test]
    fn plate_breaks_balance_and_vacuum_does_not() {
        let spec = QuadSpec::default();
        let g = PlanarGeometry::vertical(0.02, 0.05).unwrap();
        let r = halfspace_forces(
            &g,
            &unit(),
            &unit(),
            &HalfSpaceMedium::conducting(),
            DEFAULT_FD_STEP,
            &spec,
        )
        .unwrap();
        let imb = r.forces.imbalance();
        assert!(imb[2].abs() > 0.005 * r.forces.f_on_b[2].abs(), "{imb:?}");

        let v = halfspace_forces(
            &g,
            &unit(),
            &unit(),
            &HalfSpaceMedium::vacuum(),
            DEFAULT_FD_STEP,
            &spec,
        )
        .unwrap();
        assert_eq!(v.forces.imbalance(), [0.0; 3]);
    }

    #[test]
    fn body_part_matches_closed_form_derivative() {
        // nonretarded conducting plate, vertical: U⁽¹⁾ + U⁽²⁾ is known in
        // closed form, so its z-derivatives can be taken exactly
        let spec = QuadSpec::default().with_rel_tol(1e-8);
        let (za, zb) = (1e-3, 2.5e-3);
        let g = PlanarGeometry::vertical(za, zb).unwrap();
        let r = halfspace_forces(
            &g,
            &unit(),
            &unit(),
            &HalfSpaceMedium::conducting(),
            DEFAULT_FD_STEP,
            &spec,
        )
        .unwrap();
        let c6 = asymptotic_coefficients(&unit(), &unit(), &spec).unwrap().c6;
        // U⁽¹⁾ + U⁽²⁾ = −2C₆/(3Z₊³l³) − C₆/Z₊⁶ with l = z_B − z_A
        let body = |za: f64, zb: f64| {
            let (zp, l) = (za + zb, zb - za);
            -2.0 * c6 / (3.0 * zp.powi(3) * l.powi(3)) - c6 / zp.powi(6)
        };
        let hh = 1e-7;
        let d_zb = (body(za, zb + hh) - body(za, zb - hh)) / (2.0 * hh);
        let d_za = (body(za + hh, zb) - body(za - hh, zb)) / (2.0 * hh);
        let fb = r.forces.f_on_b[2] - r.free.f_on_b[2];
        let fa = r.forces.f_on_a[2] - r.free.f_on_a[2];
        assert!((fb + d_zb).abs() < 0.01 * d_zb.abs(), "{fb} vs {}", -d_zb);
        assert!((fa + d_za).abs() < 0.01 * d_za.abs(), "{fa} vs {}", -d_za);
    }

    #[test]
    fn richardson_step_halving_is_consistent() {
        let spec = QuadSpec::default().with_rel_tol(1e-8);
        let eps = LorentzMedium::new(3.0, 1.0, 1e-3, MediumKind::Electric).unwrap();
        let m = HalfSpaceMedium::dielectric(eps);
        let g = PlanarGeometry::parallel(0.3, 0.2).unwrap();
        let a = halfspace_forces(&g, &unit(), &unit(), &m, 2e-3, &spec).unwrap();
        let b = halfspace_forces(&g, &unit(), &unit(), &m, 1e-3, &spec).unwrap();
        for i in [0, 2] {
            for (x, y) in [
                (a.forces.f_on_a[i], b.forces.f_on_a[i]),
                (a.forces.f_on_b[i], b.forces.f_on_b[i]),
            ] {
                assert!((x - y).abs() < 1e-4 * y.abs().max(1e-300), "{x} vs {y}");
            }
        }
    }

    #[test]
    fn step_onto_surface_is_rejected() {
        let g = PlanarGeometry::parallel(1.0, 0.1).unwrap();
        let r = halfspace_forces(
            &g,
            &unit(),
            &unit(),
            &HalfSpaceMedium::conducting(),
            0.6,
            &QuadSpec::default(),
        );
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn potential_matches_u_total() {
        let spec = QuadSpec::default();
        let g = PlanarGeometry::parallel(0.4, 0.3).unwrap();
        let m = HalfSpaceMedium::permeable();
        let r = halfspace_forces(&g, &unit(), &unit(), &m, DEFAULT_FD_STEP, &spec).unwrap();
        let u = u_total(&g, &unit(), &unit(), &m, &spec).unwrap();
        assert_eq!(r.potential, u);
    }
}
