use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{require_kind, require_positive_length};
use crate::error::Result;
use crate::materials::{AtomKind, ResonanceAtom};
use crate::quadrature::{integrate_region, QuadSpec, Region};
use crate::specfun::free_space_polys;

/// Power-law coefficients of the free-space potentials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCoefficients {
    /// `U → −c6/l⁶` at short range (electric pair)
    pub c6: f64,
    /// `U → −c7_ee/l⁷` at long range (electric pair)
    pub c7_ee: f64,
    /// `U → +c7_em/l⁷` at long range (electric A, magnetic B)
    pub c7_em: f64,
    /// `U → +c4/l⁴` at short range (electric A, magnetic B)
    pub c4: f64,
}

/// Coefficients for atom A and atom B; B's static response is used as
/// `α_B` for the electric coefficients and as `β_B` for the mixed ones.
pub fn asymptotic_coefficients(
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    spec: &QuadSpec,
) -> Result<AsymptoticCoefficients> {
    a.validate()?;
    b.validate()?;
    let scale = a.omega10.min(b.omega10);
    let region = Region::semi_infinite(0.0, scale);
    let spec = rel_only(spec);
    let overlap = integrate_region(|u| Ok(a.at(u) * b.at(u)), &region, &spec)?.value;
    let weighted = integrate_region(|u| Ok(u * u * a.at(u) * b.at(u)), &region, &spec)?.value;
    let pi3 = PI.powi(3);
    Ok(AsymptoticCoefficients {
        c6: 3.0 / (16.0 * pi3) * overlap,
        c7_ee: 23.0 * a.alpha0 * b.alpha0 / (64.0 * pi3),
        c7_em: 7.0 * a.alpha0 * b.alpha0 / (64.0 * pi3),
        c4: weighted / (16.0 * pi3),
    })
}

pub(crate) fn rel_only(spec: &QuadSpec) -> QuadSpec {
    spec.with_abs_tol(f64::MIN_POSITIVE)
}

/// u-region for a free-space integral at separation `l`.
pub(crate) fn u_region(a: &ResonanceAtom, b: &ResonanceAtom, l: f64) -> Region {
    let scale = a.omega10.min(b.omega10).min(1.0 / l);
    Region::semi_infinite(0.0, scale)
}

/// Ground-state potential of two polarizable atoms in free space,
/// `−1/(32π³l⁶) ∫du α_A α_B g(ul)`.
pub fn u0_ee(l: f64, a: &ResonanceAtom, b: &ResonanceAtom, spec: &QuadSpec) -> Result<f64> {
    require_positive_length(l)?;
    require_kind(a, AtomKind::Electric, "A")?;
    require_kind(b, AtomKind::Electric, "B")?;
    let r = integrate_region(
        |u| Ok(a.at(u) * b.at(u) * free_space_polys(u * l).g),
        &u_region(a, b, l),
        &rel_only(spec),
    )?;
    Ok(-r.value / (32.0 * PI.powi(3) * l.powi(6)))
}

/// Potential of a polarizable atom A and a magnetizable atom B in free
/// space, `+1/(32π³l⁴) ∫du u² α_A β_B h(ul)`.
pub fn u0_em(l: f64, a: &ResonanceAtom, b: &ResonanceAtom, spec: &QuadSpec) -> Result<f64> {
    require_positive_length(l)?;
    require_kind(a, AtomKind::Electric, "A")?;
    require_kind(b, AtomKind::Magnetic, "B")?;
    let r = integrate_region(
        |u| Ok(u * u * a.at(u) * b.at(u) * free_space_polys(u * l).h),
        &u_region(a, b, l),
        &rel_only(spec),
    )?;
    Ok(r.value / (32.0 * PI.powi(3) * l.powi(4)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greens::{free_space_curls, free_space_green, matmul, trace};

    fn unit() -> ResonanceAtom {
        ResonanceAtom::unit_electric()
    }

    #[test]
    fn unit_atom_coefficients() {
        let c = asymptotic_coefficients(&unit(), &unit(), &QuadSpec::default()).unwrap();
        let pi3 = PI.powi(3);
        assert!((c.c6 - 3.0 / (64.0 * PI * PI)).abs() < 1e-10 * c.c6);
        assert!((c.c4 - 1.0 / (64.0 * PI * PI)).abs() < 1e-10 * c.c4);
        assert_eq!(c.c7_ee, 23.0 / (64.0 * pi3));
        assert_eq!(c.c7_em, 7.0 / (64.0 * pi3));
        assert!((c.c7_em / c.c7_ee - 7.0 / 23.0).abs() < 1e-15);
    }

    #[test]
    fn electric_pair_limits() {
        let spec = QuadSpec::default();
        let c = asymptotic_coefficients(&unit(), &unit(), &spec).unwrap();
        let far = 100.0;
        let u = u0_ee(far, &unit(), &unit(), &spec).unwrap();
        assert!((u * far.powi(7) / c.c7_ee + 1.0).abs() < 0.01);
        let near = 1e-3;
        let u = u0_ee(near, &unit(), &unit(), &spec).unwrap();
        assert!((u * near.powi(6) / c.c6 + 1.0).abs() < 0.01);
        assert!(u0_ee(0.0, &unit(), &unit(), &spec).is_err());
        assert!(u0_ee(1.0, &unit(), &ResonanceAtom::unit_magnetic(), &spec).is_err());
    }

    #[test]
    fn mixed_pair_limits_and_sign() {
        let spec = QuadSpec::default();
        let m = ResonanceAtom::unit_magnetic();
        let c = asymptotic_coefficients(&unit(), &m, &spec).unwrap();
        let near = 1e-3;
        let u = u0_em(near, &unit(), &m, &spec).unwrap();
        assert!((u * near.powi(4) / c.c4 - 1.0).abs() < 0.01);
        let far = 1e3;
        let u = u0_em(far, &unit(), &m, &spec).unwrap();
        assert!((u * far.powi(7) / c.c7_em - 1.0).abs() < 0.01);
        for i in 0..50 {
            let l = 10f64.powf(-3.0 + 6.0 * i as f64 / 49.0);
            assert!(u0_em(l, &unit(), &m, &spec).unwrap() > 0.0);
        }
    }

    #[test]
    fn closed_integrands_match_tensor_traces() {
        // −(1/2π) u⁴ Tr[G G] for the electric pair and
        // (1/2π) u² Tr[(∇×G)(G×∇')] for the mixed one, per unit α
        let rho = [0.3, 0.0, -0.4];
        let l = 0.5;
        for u in [0.1, 1.0, 4.0] {
            let g = free_space_green(rho, u).unwrap();
            let g_back = free_space_green([-rho[0], -rho[1], -rho[2]], u).unwrap();
            let tr = trace(&matmul(&g, &g_back));
            let from_tensor = -u.powi(4) * tr / (2.0 * PI);
            let closed = -free_space_polys(u * l).g / (32.0 * PI.powi(3) * l.powi(6));
            assert!(
                (from_tensor - closed).abs() < 1e-12 * closed.abs(),
                "{from_tensor} vs {closed}"
            );

            let (left, _) = free_space_curls(rho, u).unwrap();
            let (_, right_back) = free_space_curls([-rho[0], -rho[1], -rho[2]], u).unwrap();
            let tr = trace(&matmul(&left, &right_back));
            let from_tensor = -u * u * tr / (2.0 * PI);
            let closed = u * u * free_space_polys(u * l).h / (32.0 * PI.powi(3) * l.powi(4));
            assert!(
                (from_tensor - closed).abs() < 1e-12 * closed.abs(),
                "{from_tensor} vs {closed}"
            );
        }
    }

    #[test]
    fn log_slope_moves_from_six_to_seven() {
        let spec = QuadSpec::default();
        let slope = |l: f64| {
            let h = 1e-3;
            let up = u0_ee(l * (1.0 + h), &unit(), &unit(), &spec)
                .unwrap()
                .abs()
                .ln();
            let dn = u0_ee(l * (1.0 - h), &unit(), &unit(), &spec)
                .unwrap()
                .abs()
                .ln();
            -(up - dn) / ((1.0 + h).ln() - (1.0 - h).ln())
        };
        let mut last = 5.99;
        for i in 0..13 {
            let l = 10f64.powf(-3.0 + 0.5 * i as f64);
            let s = slope(l);
            assert!(s >= last - 1e-6, "slope {s} at l = {l} after {last}");
            last = s;
        }
        assert!((slope(1e-3) - 6.0).abs() < 0.01);
        assert!((slope(1e3) - 7.0).abs() < 0.01);
    }
}
