//! The acceptance suite: twelve numbered checks that pit quadrature against
//! closed forms, power laws and qualitative curve-shape properties.
//!
//! Every check runs at pinned geometries and tolerances so that the library
//! tests, the `acceptance` test target and `vdw validate` report identical
//! numbers.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::greens::{HalfSpaceMedium, PlanarGeometry, PlateKind};
use crate::imaging::{closed_form_evaluator, verify_against_closed_forms, ImageReport};
use crate::materials::{LorentzMedium, MediumKind, ResonanceAtom};
use crate::potentials::{
    asymptotic_coefficients, nonretarded_electric_closed, nonretarded_magnetic_closed,
    perfect_nonretarded_closed, perfect_retarded_closed, threshold, u0_ee, u0_em,
    u1_integrand_literal, u1_integrand_trace, u2_integrand_literal, u2_integrand_trace, u_total,
    PotentialBreakdown, RegimeGuard, ThresholdCase,
};
use crate::quadrature::QuadSpec;
use crate::specfun::{weighted_ab, weighted_ab_quadrature, WeightedIntegralKey};

/// Seed of the random geometries of the image-sign check.
pub const IMAGE_SEED: u64 = 2024;
/// Random geometries per image-sign case.
pub const IMAGE_GEOMETRIES: usize = 10;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub rel_tol: f64,
    pub criteria: Vec<CriterionOutcome>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.criteria.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] C{:<2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail
        )
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.criteria {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{} of {} criteria passed (rel_tol {:e})",
            self.criteria.len() - self.failures(),
            self.criteria.len(),
            self.rel_tol
        )
    }
}

pub const CRITERIA: [u8; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "retarded free-space ee power law",
        2 => "nonretarded free-space ee power law",
        3 => "em coefficient ratio and repulsion",
        4 => "retarded perfect plate, atom A on the surface",
        5 => "nonretarded on-surface parallel pair",
        6 => "sign-change thresholds",
        7 => "weighted Bessel integrals vs quadrature",
        8 => "explicit integrands vs Green-tensor traces",
        9 => "far-plate limit",
        10 => "nonretarded half-space closed forms",
        11 => "curve-shape properties",
        12 => "image-dipole sign table",
        _ => "unknown criterion",
    }
}

/// Runs one criterion; numerical failures fail the criterion rather than
/// aborting the suite.
pub fn run_criterion(id: u8, spec: &QuadSpec) -> CriterionOutcome {
    let result = match id {
        1 => c1(spec),
        2 => c2(spec),
        3 => c3(spec),
        4 => c4(spec),
        5 => c5(spec),
        6 => c6(),
        7 => c7(spec),
        8 => c8(spec),
        9 => c9(spec),
        10 => c10(spec),
        11 => c11(spec),
        12 => c12(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionOutcome {
        id,
        title: title(id).to_string(),
        passed,
        detail,
    }
}

/// Runs all criteria concurrently; the report keeps their numeric order.
pub fn run_all(spec: &QuadSpec) -> ValidationReport {
    let criteria = CRITERIA
        .par_iter()
        .map(|&id| run_criterion(id, spec))
        .collect();
    ValidationReport {
        rel_tol: spec.rel_tol,
        criteria,
    }
}

type Check = Result<(bool, String)>;

fn unit() -> ResonanceAtom {
    ResonanceAtom::unit_electric()
}

/// Lorentz media with `ω_P = 3`, `ω_T = 1`, `γ = 1e-3`, so `ε(0) = μ(0) = 10`.
pub fn reference_media() -> (LorentzMedium, LorentzMedium) {
    let eps = LorentzMedium::new(3.0, 1.0, 1e-3, MediumKind::Electric)
        .expect("reference permittivity is valid");
    let mu = LorentzMedium::new(3.0, 1.0, 1e-3, MediumKind::Magnetic)
        .expect("reference permeability is valid");
    (eps, mu)
}

fn rel_err(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

fn tighter(spec: &QuadSpec, rel: f64) -> QuadSpec {
    spec.with_rel_tol(spec.rel_tol.min(rel))
}

fn c1(spec: &QuadSpec) -> Check {
    let l = 100.0;
    let c = asymptotic_coefficients(&unit(), &unit(), spec)?;
    let u = u0_ee(l, &unit(), &unit(), spec)?;
    let dev = (u * l.powi(7) / c.c7_ee + 1.0).abs();
    Ok((
        dev < 0.01,
        format!("l = {l}: |U·l⁷/C₇ + 1| = {dev:.3e} (< 1e-2)"),
    ))
}

fn c2(spec: &QuadSpec) -> Check {
    let l = 1e-3;
    let c = asymptotic_coefficients(&unit(), &unit(), spec)?;
    let u = u0_ee(l, &unit(), &unit(), spec)?;
    let dev = (u * l.powi(6) / c.c6 + 1.0).abs();
    Ok((
        dev < 0.01,
        format!("l = {l}: |U·l⁶/C₆ + 1| = {dev:.3e} (< 1e-2)"),
    ))
}

fn c3(spec: &QuadSpec) -> Check {
    let (a, b) = (unit(), ResonanceAtom::unit_magnetic());
    let c = asymptotic_coefficients(&a, &b, spec)?;
    let ratio = c.c7_em / c.c7_ee;
    // equal up to the rounding of the two prefactors
    let exact = rel_err(ratio, 7.0 / 23.0) <= 4.0 * f64::EPSILON;
    let mut min = f64::INFINITY;
    let n = 50;
    for i in 0..n {
        let l = 10f64.powf(-3.0 + 6.0 * i as f64 / (n - 1) as f64);
        min = min.min(u0_em(l, &a, &b, spec)?);
    }
    Ok((
        exact && min > 0.0,
        format!("C₇ᵉᵐ/C₇ᵉᵉ = {ratio} (7/23 exact: {exact}); min U_em on {n} points over [1e-3, 1e3] = {min:.3e}"),
    ))
}

fn c4(spec: &QuadSpec) -> Check {
    let quad_geom = PlanarGeometry::vertical(0.1, 100.0)?;
    let closed_geom = PlanarGeometry::vertical(1.0, 1e15)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (plate, medium, target) in [
        (
            PlateKind::Conducting,
            HalfSpaceMedium::conducting(),
            40.0 / 23.0,
        ),
        (
            PlateKind::Permeable,
            HalfSpaceMedium::permeable(),
            52.0 / 23.0,
        ),
    ] {
        let q = u_total(&quad_geom, &unit(), &unit(), &medium, spec)?.ratio;
        let c = perfect_retarded_closed(
            &closed_geom,
            &unit(),
            &unit(),
            plate,
            &RegimeGuard::default(),
        )?
        .ratio;
        let (eq, ec) = (rel_err(q, target), rel_err(c, target));
        ok &= eq < 0.03 && ec < 1e-12;
        parts.push(format!(
            "{plate:?}: quadrature {q:.5} ({eq:.1e}), closed {c:.12} ({ec:.1e})"
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn c5(spec: &QuadSpec) -> Check {
    let closed_geom = PlanarGeometry::parallel(1e-3, 1e-12)?;
    let quad_geom = PlanarGeometry::parallel(1e-3, 5e-7)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (plate, medium, target) in [
        (
            PlateKind::Conducting,
            HalfSpaceMedium::conducting(),
            2.0 / 3.0,
        ),
        (
            PlateKind::Permeable,
            HalfSpaceMedium::permeable(),
            10.0 / 3.0,
        ),
    ] {
        let c = perfect_nonretarded_closed(
            &closed_geom,
            &unit(),
            &unit(),
            plate,
            &RegimeGuard::default(),
            spec,
        )?
        .ratio;
        let q = u_total(&quad_geom, &unit(), &unit(), &medium, spec)?.ratio;
        let (ec, eq) = (rel_err(c, target), rel_err(q, target));
        ok &= ec < 1e-12 && eq < 0.05;
        parts.push(format!(
            "{plate:?}: closed {c:.12} ({ec:.1e}), quadrature {q:.6} ({eq:.1e})"
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn c6() -> Check {
    let r = threshold(ThresholdCase::RetardedConductingVertical)?;
    let n = threshold(ThresholdCase::NonretardedPermeableVertical)?;
    let analytic = 1.0 + 2.0 / (1.5f64.cbrt() - 1.0);
    let ok = (r - 4.90).abs() <= 0.01 && (n - 14.82).abs() <= 0.01;
    Ok((
        ok,
        format!(
            "retarded conducting {r:.4}, nonretarded permeable {n:.4} (analytic {analytic:.4})"
        ),
    ))
}

fn c7(spec: &QuadSpec) -> Check {
    let spec = tighter(spec, 1e-11);
    let mut worst = 0.0f64;
    let mut at = String::new();
    for lambda in [0.5, 1.0, 2.0] {
        for zeta in [0.0, 0.5, 1.0] {
            for key in WeightedIntegralKey::all_ab() {
                let closed = weighted_ab(key, lambda, zeta)?;
                let quad = weighted_ab_quadrature(key, lambda, zeta, &spec)?;
                // natural size k!/(λ²+ζ²)^{(k+1)/2}; some forms vanish on the grid
                let k = key.order as i32;
                let size = (1..=k).product::<i32>() as f64
                    / (lambda * lambda + zeta * zeta).powf(f64::from(k + 1) / 2.0);
                let err = (closed - quad).abs() / closed.abs().max(size);
                if err > worst {
                    worst = err;
                    at = format!("{:?}{} at λ = {lambda}, ζ = {zeta}", key.family, key.order);
                }
            }
        }
    }
    Ok((worst < 1e-8, format!("81 values, worst {worst:.2e} ({at})")))
}

/// Grid of the trace-oracle check: five geometries times five frequencies.
pub fn trace_grid() -> Result<(Vec<PlanarGeometry>, [f64; 5])> {
    let geoms = vec![
        PlanarGeometry::parallel(0.5, 0.4)?,
        PlanarGeometry::vertical(0.3, 0.9)?,
        PlanarGeometry::new(0.0, 0.2, 0.6, 0.7)?,
        PlanarGeometry::new(0.1, 1.0, -0.9, 0.5)?,
        PlanarGeometry::new(0.0, 0.05, 0.15, 0.1)?,
    ];
    Ok((geoms, [0.05, 0.3, 1.0, 3.0, 8.0]))
}

fn c8(spec: &QuadSpec) -> Check {
    let spec = tighter(spec, 1e-11);
    let (eps, mu) = reference_media();
    let medium = HalfSpaceMedium::Lorentz { eps, mu };
    let (geoms, us) = trace_grid()?;
    let cells: Vec<(PlanarGeometry, f64)> = geoms
        .iter()
        .flat_map(|g| us.iter().map(move |&u| (*g, u)))
        .collect();
    let errs = cells
        .par_iter()
        .map(|(g, u)| -> Result<[f64; 2]> {
            let (a, b) = (unit(), unit());
            let l1 = u1_integrand_literal(g, *u, &a, &b, &medium, &spec)?;
            let t1 = u1_integrand_trace(g, *u, &a, &b, &medium, &spec)?;
            let l2 = u2_integrand_literal(g, *u, &a, &b, &medium, &spec)?;
            let t2 = u2_integrand_trace(g, *u, &a, &b, &medium, &spec)?;
            Ok([rel_err(l1, t1), rel_err(l2, t2)])
        })
        .collect::<Result<Vec<_>>>()?;
    let w1 = errs.iter().map(|e| e[0]).fold(0.0, f64::max);
    let w2 = errs.iter().map(|e| e[1]).fold(0.0, f64::max);
    Ok((
        w1 < 1e-8 && w2 < 1e-8,
        format!(
            "{} cells, worst U⁽¹⁾ {w1:.2e}, worst U⁽²⁾ {w2:.2e} (< 1e-8)",
            cells.len()
        ),
    ))
}

fn c9(spec: &QuadSpec) -> Check {
    let (eps, mu) = reference_media();
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for (name, medium) in [
        ("dielectric", HalfSpaceMedium::dielectric(eps)),
        ("magnetic", HalfSpaceMedium::magnetic(mu)),
    ] {
        for l in [0.01, 1.0] {
            let g = PlanarGeometry::parallel(l, 100.0 * l)?;
            let r = u_total(&g, &unit(), &unit(), &medium, spec)?.ratio;
            worst = worst.max((r - 1.0).abs());
            parts.push(format!("{name} l = {l}: {r:.8}"));
        }
    }
    Ok((worst < 0.01, parts.join(", ")))
}

/// Geometries of the nonretarded half-space check, an order of magnitude
/// inside `c/(√(ε(0)μ(0))ω₁₀) · 1e-2` for the reference media.
pub fn nonretarded_halfspace_geometries() -> Result<Vec<PlanarGeometry>> {
    Ok(vec![
        PlanarGeometry::parallel(3e-4, 3e-4)?,
        PlanarGeometry::vertical(3e-4, 6e-4)?,
        PlanarGeometry::new(0.0, 1e-4, 2e-4, 3e-4)?,
    ])
}

fn body(p: &PotentialBreakdown) -> f64 {
    p.u1 + p.u2
}

fn c10(spec: &QuadSpec) -> Check {
    let (eps, mu) = reference_media();
    let guard = RegimeGuard::default();
    let (mut we, mut wm) = (0.0f64, 0.0f64);
    for g in nonretarded_halfspace_geometries()? {
        let (a, b) = (unit(), unit());
        let qe = u_total(&g, &a, &b, &HalfSpaceMedium::dielectric(eps), spec)?;
        let ce = nonretarded_electric_closed(&g, &a, &b, &eps, &guard, spec)?;
        let qm = u_total(&g, &a, &b, &HalfSpaceMedium::magnetic(mu), spec)?;
        let cm = nonretarded_magnetic_closed(&g, &a, &b, &mu, &guard, spec)?;
        we = we.max(rel_err(body(&ce), body(&qe)));
        wm = wm.max(rel_err(body(&cm), body(&qm)));
    }
    Ok((
        we < 0.02 && wm < 0.02,
        format!(
            "body-induced U⁽¹⁾+U⁽²⁾ at 3 geometries: worst dielectric {we:.2e}, worst magnetic {wm:.2e} (< 2e-2)"
        ),
    ))
}

/// The separations of the curve-shape sweeps, `1e-4 … ≈ 20` at `z = 0.01`.
pub fn shape_grid() -> Vec<f64> {
    (0..17)
        .map(|i| 10f64.powf(-4.0 + 0.33 * i as f64))
        .collect()
}

pub const SHAPE_HEIGHT: f64 = 0.01;

fn ratios(medium: &HalfSpaceMedium, vertical: bool, spec: &QuadSpec) -> Result<Vec<f64>> {
    shape_grid()
        .par_iter()
        .map(|&l| {
            let g = if vertical {
                PlanarGeometry::vertical(SHAPE_HEIGHT, SHAPE_HEIGHT + l)?
            } else {
                PlanarGeometry::parallel(l, SHAPE_HEIGHT)?
            };
            Ok(u_total(&g, &unit(), &unit(), medium, spec)?.ratio)
        })
        .collect()
}

fn interior_extremum(r: &[f64], max: bool) -> bool {
    let key = |v: f64| if max { v } else { -v };
    let best = (0..r.len())
        .max_by(|&i, &j| key(r[i]).total_cmp(&key(r[j])))
        .unwrap_or(0);
    best > 0 && best + 1 < r.len()
}

/// Evaluates the four curve-shape properties on the reference media.
pub fn shape_properties(spec: &QuadSpec) -> Result<[(&'static str, bool); 4]> {
    let (eps, mu) = reference_media();
    let die = HalfSpaceMedium::dielectric(eps);
    let mag = HalfSpaceMedium::magnetic(mu);
    let dp = ratios(&die, false, spec)?;
    let dv = ratios(&die, true, spec)?;
    let mp = ratios(&mag, false, spec)?;
    let mv = ratios(&mag, true, spec)?;
    let below = mv.iter().take_while(|&&r| r < 1.0).count();
    let dips = below > 0 && below < mv.len() && mv[below..].iter().all(|&r| r > 1.0);
    Ok([
        (
            "dielectric parallel < 1 with interior minimum",
            dp.iter().all(|&r| r < 1.0) && interior_extremum(&dp, false),
        ),
        (
            "magnetic parallel > 1 and increasing",
            mp.iter().all(|&r| r > 1.0) && mp.windows(2).all(|w| w[1] > w[0]),
        ),
        (
            "dielectric vertical > 1 with interior maximum",
            dv.iter().all(|&r| r > 1.0) && interior_extremum(&dv, true),
        ),
        ("magnetic vertical below 1 only at small l", dips),
    ])
}

fn c11(spec: &QuadSpec) -> Check {
    let props = shape_properties(spec)?;
    let ok = props.iter().all(|p| p.1);
    let detail = props
        .iter()
        .map(|(name, ok)| format!("{name}: {}", if *ok { "yes" } else { "no" }))
        .collect::<Vec<_>>()
        .join("; ");
    Ok((ok, detail))
}

/// The image-sign cross-check with a caller-supplied evaluator.
pub fn image_check<F>(evaluate: F) -> Result<ImageReport>
where
    F: Fn(&PlanarGeometry, PlateKind) -> Result<PotentialBreakdown>,
{
    verify_against_closed_forms(evaluate, IMAGE_GEOMETRIES, IMAGE_SEED)
}

fn c12() -> Check {
    let r = image_check(closed_form_evaluator)?;
    let mismatches: usize = r.checks.iter().map(|c| c.sign_mismatches).sum();
    let violations: usize = r.checks.iter().map(|c| c.u2_violations).sum();
    Ok((
        r.passed(),
        format!(
            "4 cases × {IMAGE_GEOMETRIES} geometries: {mismatches} sign mismatches, {violations} with U⁽²⁾ ≥ 0"
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        let spec = QuadSpec::default();
        for id in [1, 2, 3, 6, 12] {
            let c = run_criterion(id, &spec);
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn unknown_criterion_fails() {
        let c = run_criterion(13, &QuadSpec::default());
        assert!(!c.passed);
    }

    #[test]
    fn interior_extremum_detection() {
        assert!(interior_extremum(&[1.0, 0.5, 0.8], false));
        assert!(!interior_extremum(&[0.4, 0.5, 0.8], false));
        assert!(interior_extremum(&[1.0, 1.5, 1.2], true));
        assert!(!interior_extremum(&[1.0, 1.1, 1.2], true));
    }

    #[test]
    fn shape_grid_spans_the_sweep() {
        let g = shape_grid();
        assert_eq!(g.len(), 17);
        assert_eq!(g[0], 1e-4);
        assert!(g[16] > 10.0);
    }
}
