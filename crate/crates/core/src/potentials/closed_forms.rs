use std::f64::consts::PI;

use super::free_space::{asymptotic_coefficients, rel_only};
use super::{omega_max, require_kind, PotentialBreakdown, RegimeGuard};
use crate::error::{Error, Result};
use crate::greens::{static_reflection_unchecked, HalfSpaceMedium, PlanarGeometry, PlateKind};
use crate::materials::{AtomKind, LorentzMedium, ResonanceAtom};
use crate::quadrature::{integrate_region, QuadSpec, Region};
use crate::specfun::{m_all, weighted_ab, WeightedFamily, WeightedIntegralKey};

/// The magnetic nonretarded forms are not continued towards a perfectly
/// permeable plate; static permeabilities above this are rejected.
pub const MAX_MAGNETIC_STATIC_PERMEABILITY: f64 = 1e3;

fn electric_pair(a: &ResonanceAtom, b: &ResonanceAtom) -> Result<()> {
    require_kind(a, AtomKind::Electric, "A")?;
    require_kind(b, AtomKind::Electric, "B")
}

fn c7_static(a: &ResonanceAtom, b: &ResonanceAtom) -> f64 {
    23.0 * a.alpha0 * b.alpha0 / (64.0 * PI.powi(3))
}

/// Perfect-plate parts `(u0, u1, u2)` of the retarded potential for a given `C₇`.
pub(crate) fn perfect_retarded_parts(geom: &PlanarGeometry, plate: PlateKind, c7: f64) -> [f64; 3] {
    let (x, l, zp) = (geom.x(), geom.l(), geom.z_plus());
    [
        -c7 / l.powi(7),
        plate.sign() * 32.0 / 23.0 * (x * x + 6.0 * l * l) * c7
            / (l.powi(3) * zp * (l + zp).powi(5)),
        -c7 / zp.powi(7),
    ]
}

/// Geometric factor `[4X⁴ − 2Z²Z₊² + X²(Z² + Z₊²)] / (l⁵ l₊⁵)`.
fn image_factor(geom: &PlanarGeometry) -> f64 {
    let (x2, z2, zp2) = (geom.x().powi(2), geom.z().powi(2), geom.z_plus().powi(2));
    (4.0 * x2 * x2 - 2.0 * z2 * zp2 + x2 * (z2 + zp2)) / (geom.l().powi(5) * geom.l_plus().powi(5))
}

/// Perfect-plate parts `(u0, u1, u2)` of the nonretarded potential for a given `C₆`.
pub(crate) fn perfect_nonretarded_parts(
    geom: &PlanarGeometry,
    plate: PlateKind,
    c6: f64,
) -> [f64; 3] {
    [
        -c6 / geom.l().powi(6),
        plate.sign() * c6 / 3.0 * image_factor(geom),
        -c6 / geom.l_plus().powi(6),
    ]
}

/// Retarded potential near a perfect plate, valid for `X ≪ Z₊`.
pub fn perfect_retarded_closed(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    plate: PlateKind,
    guard: &RegimeGuard,
) -> Result<PotentialBreakdown> {
    geom.validate()?;
    electric_pair(a, b)?;
    guard.check_retarded(geom, a.omega10.min(b.omega10), true)?;
    let [u0, u1, u2] = perfect_retarded_parts(geom, plate, c7_static(a, b));
    Ok(PotentialBreakdown::new(u0, u1, u2))
}

/// Nonretarded potential near a perfect plate.
pub fn perfect_nonretarded_closed(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    plate: PlateKind,
    guard: &RegimeGuard,
    spec: &QuadSpec,
) -> Result<PotentialBreakdown> {
    geom.validate()?;
    electric_pair(a, b)?;
    let medium = HalfSpaceMedium::Perfect { plate };
    guard.check_nonretarded(geom, omega_max(a, b, &medium), 1.0)?;
    let c6 = asymptotic_coefficients(a, b, spec)?.c6;
    let [u0, u1, u2] = perfect_nonretarded_parts(geom, plate, c6);
    Ok(PotentialBreakdown::new(u0, u1, u2))
}

/// u-region shared by the frequency moments of the nonretarded forms.
fn moment_region(a: &ResonanceAtom, b: &ResonanceAtom, m: &LorentzMedium) -> Region {
    let mut scale = a.omega10.min(b.omega10);
    if m.omega_p > 0.0 && m.omega_t > 0.0 {
        scale = scale.min(m.omega_t);
    }
    Region::semi_infinite(0.0, scale)
}

/// Nonretarded potential near a purely electric half space:
/// `U = −C₆/l⁶ + [4X⁴ − 2Z²Z₊² + X²(Z² + Z₊²)] D/(l⁵l₊⁵) − E/l₊⁶` with
/// `D = (1/16π³) ∫ α_A α_B r₀`, `E = (3/16π³) ∫ α_A α_B r₀²`, `r₀ = (ε−1)/(ε+1)`.
pub fn nonretarded_electric_closed(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    eps: &LorentzMedium,
    guard: &RegimeGuard,
    spec: &QuadSpec,
) -> Result<PotentialBreakdown> {
    geom.validate()?;
    electric_pair(a, b)?;
    let medium = HalfSpaceMedium::dielectric(*eps);
    medium.validate()?;
    guard.check_nonretarded(geom, omega_max(a, b, &medium), eps.static_value().sqrt())?;
    let c6 = asymptotic_coefficients(a, b, spec)?.c6;
    let spec = rel_only(spec);
    let region = moment_region(a, b, eps);
    let pi3 = PI.powi(3);
    let r0 = |u: f64| {
        let e = eps.at(u);
        (e - 1.0) / (e + 1.0)
    };
    let d =
        integrate_region(|u| Ok(a.at(u) * b.at(u) * r0(u)), &region, &spec)?.value / (16.0 * pi3);
    let e = 3.0
        * integrate_region(|u| Ok(a.at(u) * b.at(u) * r0(u).powi(2)), &region, &spec)?.value
        / (16.0 * pi3);
    Ok(PotentialBreakdown::new(
        -c6 / geom.l().powi(6),
        d * image_factor(geom),
        -e / geom.l_plus().powi(6),
    ))
}

/// Nonretarded potential near a purely magnetic half space:
/// `U = −C₆/l⁶ + [Z² − 2X² + 3Z₊(l₊ − Z₊)] F/(l⁵l₊)` with
/// `F = (1/64π³) ∫ u² α_A α_B (μ−1)(μ−3)/(μ+1)`.
///
/// The double-reflection part is of higher order here and reported as zero.
pub fn nonretarded_magnetic_closed(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    mu: &LorentzMedium,
    guard: &RegimeGuard,
    spec: &QuadSpec,
) -> Result<PotentialBreakdown> {
    geom.validate()?;
    electric_pair(a, b)?;
    let medium = HalfSpaceMedium::magnetic(*mu);
    medium.validate()?;
    let mu0 = mu.static_value();
    if mu0 > MAX_MAGNETIC_STATIC_PERMEABILITY {
        return Err(Error::domain(format!(
            "μ(0) = {mu0:e} exceeds {MAX_MAGNETIC_STATIC_PERMEABILITY:e}; the nonretarded magnetic \
             form does not extend to a perfectly permeable plate"
        )));
    }
    guard.check_nonretarded(geom, omega_max(a, b, &medium), mu0.sqrt())?;
    let c6 = asymptotic_coefficients(a, b, spec)?.c6;
    let f = integrate_region(
        |u| {
            let m = mu.at(u);
            Ok(u * u * a.at(u) * b.at(u) * (m - 1.0) * (m - 3.0) / (m + 1.0))
        },
        &moment_region(a, b, mu),
        &rel_only(spec),
    )?
    .value
        / (64.0 * PI.powi(3));
    let (x2, z2, zp, lp, l) = (
        geom.x().powi(2),
        geom.z().powi(2),
        geom.z_plus(),
        geom.l_plus(),
        geom.l(),
    );
    let u1 = (z2 - 2.0 * x2 + 3.0 * zp * (lp - zp)) * f / (l.powi(5) * lp);
    Ok(PotentialBreakdown::new(-c6 / l.powi(6), u1, 0.0))
}

/// Largest `X/Z₊` at which the retarded double-reflection integral may
/// replace `M₀` by `720/s⁷` and drop `M₁`, `M₂` at relative tolerance
/// `rel_tol`: the neglected terms are below `14 (X/Z₊)²` relative.
pub fn m_closed_form_threshold(rel_tol: f64) -> f64 {
    (rel_tol / 14.0).sqrt()
}

fn ab(family: WeightedFamily, order: u32, lambda: f64, zeta: f64) -> Result<f64> {
    weighted_ab(WeightedIntegralKey { family, order }, lambda, zeta)
}

/// Retarded `(U⁽¹⁾, U⁽²⁾)` near a half space with static `ε(0)`, `μ(0)`
/// (either may be infinite for a perfect plate).
///
/// `U⁽¹⁾` is a single integral over `v = b/u ∈ [1, ∞)` of the closed
/// `A_{k±}`, `B_k` at `λ = l + vZ₊`, `ζ = X√(v²−1)`; `U⁽²⁾` is a double
/// integral over `(v, v′)` of the `M_ν` at `s = (v + v′)Z₊`.
pub fn retarded_halfspace_closed(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    eps0: f64,
    mu0: f64,
    guard: &RegimeGuard,
    spec: &QuadSpec,
) -> Result<(f64, f64)> {
    geom.validate()?;
    electric_pair(a, b)?;
    if !(eps0 >= 1.0 && mu0 >= 1.0) {
        return Err(Error::domain(format!(
            "static response must satisfy ε(0), μ(0) >= 1, got {eps0}, {mu0}"
        )));
    }
    guard.check_retarded(geom, a.omega10.min(b.omega10), false)?;
    if eps0 == 1.0 && mu0 == 1.0 {
        return Ok((0.0, 0.0));
    }
    let aa = a.alpha0 * b.alpha0;
    let u1 = aa * retarded_u1(geom, eps0, mu0, &rel_only(spec))?;
    let u2 = aa * retarded_u2(geom, eps0, mu0, spec)?;
    Ok((u1, u2))
}

fn retarded_u1(geom: &PlanarGeometry, eps0: f64, mu0: f64, spec: &QuadSpec) -> Result<f64> {
    use WeightedFamily::{AMinus, APlus, B};
    let (x, z, zp, l) = (geom.x().abs(), geom.z(), geom.z_plus(), geom.l());
    let (x2, z2) = (x * x, z * z);
    let r = integrate_region(
        |v| {
            let lambda = l + v * zp;
            let zeta = x * (v * v - 1.0).max(0.0).sqrt();
            let am = |k| ab(AMinus, k, lambda, zeta);
            let ap = |k| ab(APlus, k, lambda, zeta);
            let bk = |k| ab(B, k, lambda, zeta);
            let (rs, rp) = static_reflection_unchecked(v, eps0, mu0);
            let v2 = v * v;
            let p_bracket = v2
                * (z2 * am(5)?
                    + (z2 - 2.0 * x2) * (am(4)? / l + am(3)? / (l * l))
                    + l * l * ap(5)?
                    + l * ap(4)?
                    + ap(3)?)
                + 2.0
                    * (v2 - 1.0)
                    * (x2 * bk(5)? + (x2 - 2.0 * z2) * (bk(4)? / l + bk(3)? / (l * l)));
            let s_bracket = z2 * ap(5)?
                + (z2 - 2.0 * x2) * (ap(4)? / l + ap(3)? / (l * l))
                + l * l * am(5)?
                + l * am(4)?
                + am(3)?;
            Ok(p_bracket * rp - s_bracket * rs)
        },
        &Region::semi_infinite(1.0, 1.0),
        spec,
    )
    .map_err(|e| e.on_axis("v"))?;
    Ok(r.value / (32.0 * PI.powi(3) * l.powi(3)))
}

fn retarded_u2(geom: &PlanarGeometry, eps0: f64, mu0: f64, spec: &QuadSpec) -> Result<f64> {
    let (x, zp) = (geom.x().abs(), geom.z_plus());
    // the M integrals carry their own natural-scale absolute tolerance
    let m_spec = spec.inner().inner();
    let spec = rel_only(spec);
    let inner = spec.inner();
    let closed_m = x / zp <= m_closed_form_threshold(spec.rel_tol);
    let region = Region::semi_infinite(1.0, 1.0);
    let r = integrate_region(
        |v| {
            let (c, a) = static_reflection_unchecked(v, eps0, mu0);
            let sv = (v * v - 1.0).max(0.0).sqrt();
            integrate_region(
                |w| {
                    let (d, bw) = static_reflection_unchecked(w, eps0, mu0);
                    let sw = (w * w - 1.0).max(0.0).sqrt();
                    let s = (v + w) * zp;
                    let m = if closed_m {
                        [720.0 / s.powi(7), 0.0, 0.0]
                    } else {
                        m_all(x * sv, x * sw, s, &m_spec)?
                    };
                    let (v2, w2) = (v * v, w * w);
                    let ab = a * bw;
                    let t0 = (ab * (3.0 * v2 * w2 - 2.0 * (v2 + w2) + 2.0) + c * d
                        - c * bw * w2
                        - a * d * v2)
                        * m[0];
                    let t1 = 4.0 * v * w * sv * sw * ab * m[1];
                    let t2 = (c * d + ab * v2 * w2 + c * bw * w2 + a * d * v2) * m[2];
                    Ok(t0 + t1 + t2)
                },
                &region,
                &inner,
            )
            .map(|r| r.value)
            .map_err(|e| e.on_axis("v'"))
        },
        &region,
        &spec,
    )
    .map_err(|e| e.on_axis("v"))?;
    Ok(-r.value / (64.0 * PI.powi(3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::MediumKind;
    use crate::potentials::{u0_ee, u_total};

    fn unit() -> ResonanceAtom {
        ResonanceAtom::unit_electric()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs())
    }

    fn ref_eps() -> LorentzMedium {
        LorentzMedium::new(3.0, 1.0, 0.001, MediumKind::Electric).unwrap()
    }

    fn ref_mu() -> LorentzMedium {
        LorentzMedium::new(3.0, 1.0, 0.001, MediumKind::Magnetic).unwrap()
    }

    #[test]
    fn retarded_perfect_plate_limits() {
        let g = PlanarGeometry::vertical(1.0, 1e15).unwrap();
        let guard = RegimeGuard::default();
        let c =
            perfect_retarded_closed(&g, &unit(), &unit(), PlateKind::Conducting, &guard).unwrap();
        assert!(
            (c.ratio - 40.0 / 23.0).abs() < 1e-12,
            "{}",
            c.ratio - 40.0 / 23.0
        );
        let p =
            perfect_retarded_closed(&g, &unit(), &unit(), PlateKind::Permeable, &guard).unwrap();
        assert!((p.ratio - 52.0 / 23.0).abs() < 1e-12);
        assert!(close(c.u1 / c.u0, -6.0 / 23.0, 1e-12));
        // U⁽²⁾ depends on Z₊ only
        let g2 = PlanarGeometry::new(0.0, 3e14, 1.0, 1e15 - 3e14 + 1.0).unwrap();
        let c2 =
            perfect_retarded_closed(&g2, &unit(), &unit(), PlateKind::Conducting, &guard).unwrap();
        assert_eq!(c.u2, c2.u2);
    }

    #[test]
    fn retarded_guards() {
        let guard = RegimeGuard::default();
        let near = PlanarGeometry::vertical(1.0, 10.0).unwrap();
        assert!(matches!(
            perfect_retarded_closed(&near, &unit(), &unit(), PlateKind::Conducting, &guard),
            Err(Error::Regime(_))
        ));
        let wide = PlanarGeometry::new(0.0, 100.0, 100.0, 100.0).unwrap();
        assert!(matches!(
            perfect_retarded_closed(&wide, &unit(), &unit(), PlateKind::Conducting, &guard),
            Err(Error::Regime(_))
        ));
        assert!(perfect_retarded_closed(
            &near,
            &unit(),
            &unit(),
            PlateKind::Conducting,
            &RegimeGuard::disabled()
        )
        .is_ok());
    }

    #[test]
    fn nonretarded_on_surface_ratios() {
        let spec = QuadSpec::default();
        let guard = RegimeGuard::disabled();
        let g = PlanarGeometry::parallel(1e-3, 1e-15).unwrap();
        let c =
            perfect_nonretarded_closed(&g, &unit(), &unit(), PlateKind::Conducting, &guard, &spec)
                .unwrap();
        let p =
            perfect_nonretarded_closed(&g, &unit(), &unit(), PlateKind::Permeable, &guard, &spec)
                .unwrap();
        assert!((c.ratio - 2.0 / 3.0).abs() < 1e-10);
        assert!((p.ratio - 10.0 / 3.0).abs() < 1e-10);
        // vertical conducting: u1 = −2C₆/(3Z₊³l³)
        let g = PlanarGeometry::vertical(1e-3, 3e-3).unwrap();
        let c = perfect_nonretarded_closed(
            &g,
            &unit(),
            &unit(),
            PlateKind::Conducting,
            &RegimeGuard::default(),
            &spec,
        )
        .unwrap();
        let c6 = -c.u0 * g.l().powi(6);
        assert!(close(
            c.u1,
            -2.0 * c6 / (3.0 * g.z_plus().powi(3) * g.l().powi(3)),
            1e-12
        ));
    }

    #[test]
    fn nonretarded_guard_uses_image_distance_and_index() {
        let spec = QuadSpec::default();
        let g = PlanarGeometry::parallel(1e-3, 0.02).unwrap();
        let r = perfect_nonretarded_closed(
            &g,
            &unit(),
            &unit(),
            PlateKind::Conducting,
            &RegimeGuard::default(),
            &spec,
        );
        assert!(matches!(r, Err(Error::Regime(_))));
        let g = PlanarGeometry::parallel(1e-3, 2e-3).unwrap();
        assert!(nonretarded_electric_closed(
            &g,
            &unit(),
            &unit(),
            &ref_eps(),
            &RegimeGuard::default(),
            &spec
        )
        .is_ok());
        let g = PlanarGeometry::parallel(5e-3, 5e-3).unwrap();
        assert!(nonretarded_electric_closed(
            &g,
            &unit(),
            &unit(),
            &ref_eps(),
            &RegimeGuard::default(),
            &spec
        )
        .is_err());
    }

    #[test]
    fn electric_form_limits() {
        let spec = QuadSpec::default();
        let guard = RegimeGuard::disabled();
        let g = PlanarGeometry::new(0.0, 1e-3, 2e-3, 1.5e-3).unwrap();
        let vac = nonretarded_electric_closed(
            &g,
            &unit(),
            &unit(),
            &LorentzMedium::vacuum(),
            &guard,
            &spec,
        )
        .unwrap();
        assert_eq!((vac.u1, vac.u2), (0.0, 0.0));
        let strong = LorentzMedium::new(1e5, 1.0, 0.0, MediumKind::Electric).unwrap();
        let s = nonretarded_electric_closed(&g, &unit(), &unit(), &strong, &guard, &spec).unwrap();
        let p =
            perfect_nonretarded_closed(&g, &unit(), &unit(), PlateKind::Conducting, &guard, &spec)
                .unwrap();
        assert!(close(s.u1, p.u1, 1e-6) && close(s.u2, p.u2, 1e-6));
        // parallel with l ≪ Z₊: correction positive, potential reduced
        let g = PlanarGeometry::parallel(1e-4, 1e-3).unwrap();
        let r =
            nonretarded_electric_closed(&g, &unit(), &unit(), &ref_eps(), &guard, &spec).unwrap();
        assert!(r.u1 + r.u2 > 0.0 && r.ratio < 1.0);
    }

    #[test]
    fn magnetic_form_limits() {
        let spec = QuadSpec::default();
        let guard = RegimeGuard::disabled();
        let g = PlanarGeometry::parallel(1e-4, 1e-3).unwrap();
        let vac = nonretarded_magnetic_closed(
            &g,
            &unit(),
            &unit(),
            &LorentzMedium::vacuum(),
            &guard,
            &spec,
        )
        .unwrap();
        assert_eq!(vac.u1, 0.0);
        let r =
            nonretarded_magnetic_closed(&g, &unit(), &unit(), &ref_mu(), &guard, &spec).unwrap();
        assert!(r.u1 < 0.0 && r.ratio > 1.0);
        // X ≪ Z₊ parallel: correction → −X²F/(2l⁵Z₊)
        let f_from = |u1: f64| -u1 * 2.0 * g.l().powi(5) * g.z_plus() / g.x().powi(2);
        let g2 = PlanarGeometry::parallel(1e-7, 1e-3).unwrap();
        let r2 =
            nonretarded_magnetic_closed(&g2, &unit(), &unit(), &ref_mu(), &guard, &spec).unwrap();
        let f1 = f_from(r.u1);
        let f2 = -r2.u1 * 2.0 * g2.l().powi(5) * g2.z_plus() / g2.x().powi(2);
        assert!(close(f1, f2, 1e-2));
        let huge = LorentzMedium::new(1e2, 1.0, 0.0, MediumKind::Magnetic).unwrap();
        assert!(nonretarded_magnetic_closed(&g, &unit(), &unit(), &huge, &guard, &spec).is_err());
    }

    #[test]
    fn magnetic_form_vanishes_at_mu_three() {
        // μ(iu) = 3 at every u is approached by a stiff oscillator with ω_P² = 2ω_T²
        let spec = QuadSpec::default();
        let stiff = LorentzMedium::new(2f64.sqrt() * 1e6, 1e6, 0.0, MediumKind::Magnetic).unwrap();
        let g = PlanarGeometry::parallel(1e-4, 1e-3).unwrap();
        let r = nonretarded_magnetic_closed(
            &g,
            &unit(),
            &unit(),
            &stiff,
            &RegimeGuard::disabled(),
            &spec,
        )
        .unwrap();
        let base = nonretarded_magnetic_closed(
            &g,
            &unit(),
            &unit(),
            &ref_mu(),
            &RegimeGuard::disabled(),
            &spec,
        )
        .unwrap();
        assert!(r.u1.abs() < 1e-4 * base.u1.abs(), "{} vs {}", r.u1, base.u1);
    }

    #[test]
    fn retarded_media_forms() {
        let spec = QuadSpec::default().with_rel_tol(1e-8);
        let guard = RegimeGuard::disabled();
        let g = PlanarGeometry::vertical(60.0, 200.0).unwrap();
        assert_eq!(
            retarded_halfspace_closed(&g, &unit(), &unit(), 1.0, 1.0, &guard, &spec).unwrap(),
            (0.0, 0.0)
        );
        // a near-perfect conductor reproduces the perfect-plate forms
        let (u1, u2) =
            retarded_halfspace_closed(&g, &unit(), &unit(), 1e6, 1.0, &guard, &spec).unwrap();
        let p =
            perfect_retarded_closed(&g, &unit(), &unit(), PlateKind::Conducting, &guard).unwrap();
        assert!(close(u1, p.u1, 2e-2), "{u1} vs {}", p.u1);
        assert!(close(u2, p.u2, 2e-2), "{u2} vs {}", p.u2);
        let (u1, u2) =
            retarded_halfspace_closed(&g, &unit(), &unit(), f64::INFINITY, 1.0, &guard, &spec)
                .unwrap();
        assert!(close(u1, p.u1, 1e-7) && close(u2, p.u2, 1e-7));
    }

    #[test]
    fn retarded_media_forms_match_quadrature() {
        // static media and l, Z₊ in the retarded range: the full quadrature
        // must approach the static forms
        let spec = QuadSpec::default().with_rel_tol(1e-7);
        let guard = RegimeGuard::disabled();
        let g = PlanarGeometry::new(0.0, 300.0, 150.0, 500.0).unwrap();
        let eps = LorentzMedium::new(3.0 * 1e3, 1e3, 0.0, MediumKind::Electric).unwrap();
        let mu = LorentzMedium::new(1e3, 1e3, 0.0, MediumKind::Magnetic).unwrap();
        let (e0, m0) = (eps.static_value(), mu.static_value());
        let (u1, u2) =
            retarded_halfspace_closed(&g, &unit(), &unit(), e0, m0, &guard, &spec).unwrap();
        let full = u_total(
            &g,
            &unit(),
            &unit(),
            &HalfSpaceMedium::Lorentz { eps, mu },
            &spec,
        )
        .unwrap();
        // atoms are retarded to 1/(ω·min(l, Z₊)) ≈ 0.4%
        assert!(close(u1, full.u1, 2e-2), "{u1} vs {}", full.u1);
        assert!(close(u2, full.u2, 2e-2), "{u2} vs {}", full.u2);
        let u0 = u0_ee(g.l(), &unit(), &unit(), &spec).unwrap();
        assert!(close(u0, full.u0, 1e-12));
    }
}
