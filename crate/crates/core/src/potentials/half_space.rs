use std::f64::consts::PI;

use super::free_space::{rel_only, u0_ee};
use super::{require_kind, PotentialBreakdown};
use crate::error::{Error, Result};
use crate::greens::{
    asymptote_limits, free_space_green, halfspace_scattering, matmul, q_integrate,
    sommerfeld_asymptote_integrals, sommerfeld_magnitudes, sommerfeld_scales, tensor_weights,
    trace, HalfSpaceMedium, PlanarGeometry, QSample,
};
use crate::materials::{AtomKind, ResonanceAtom};
use crate::quadrature::{integrate_vec_magnitude, QuadSpec, Region};
use crate::specfun::free_space_polys;

/// Beyond this many e-folds of the slowest exponential both integrands are zero.
const U_EXPONENT_LIMIT: f64 = 700.0;

fn check_inputs(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
) -> Result<()> {
    geom.validate()?;
    medium.validate()?;
    require_kind(a, AtomKind::Electric, "A")?;
    require_kind(b, AtomKind::Electric, "B")?;
    Ok(())
}

fn check_u(u: f64) -> Result<()> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::domain(format!(
            "imaginary frequency must be positive, got {u}"
        )));
    }
    Ok(())
}

/// Free-space factors `Ã = u² + u/l + 1/l²`, `B̃ = u² + 3u/l + 3/l²`.
fn free_factors(u: f64, l: f64) -> (f64, f64) {
    (
        u * u + u / l + 1.0 / (l * l),
        u * u + 3.0 * u / l + 3.0 / (l * l),
    )
}

/// The bracket of the single-reflection integrand at one `q`, already
/// multiplied by `q e^{−bZ₊}`.
#[inline]
fn u1_bracket(s: &QSample, u: f64, a_t: f64, b_t: f64, x2: f64, z2: f64, l2: f64) -> f64 {
    let u2 = u * u;
    let s_over_b = u2 * s.rs / s.b;
    let p_times_b = s.b * s.rp;
    let bracket = (2.0 * a_t - b_t * x2 / l2) * s.j[0] * (s_over_b - p_times_b)
        - 2.0 * (a_t - b_t * z2 / l2) * s.q * s.q * s.rp * s.j[0] / s.b
        - b_t * (x2 / l2) * s.j[2] * (s_over_b + p_times_b);
    s.q * s.decay * bracket
}

/// The single-reflection bracket written as a combination of the six
/// Sommerfeld integrands, used to subtract its large-q asymptote.
struct BracketCoefficients {
    u2: f64,
    c0: f64,
    c1: f64,
    c2: f64,
}

impl BracketCoefficients {
    fn new(u: f64, a_t: f64, b_t: f64, x2: f64, z2: f64, l2: f64) -> Self {
        BracketCoefficients {
            u2: u * u,
            c0: 2.0 * a_t - b_t * x2 / l2,
            c1: 2.0 * (a_t - b_t * z2 / l2),
            c2: b_t * x2 / l2,
        }
    }

    fn combine(&self, i: &[f64; 6]) -> f64 {
        self.c0 * (self.u2 * i[0] - i[2]) - self.c1 * i[4] - self.c2 * (self.u2 * i[1] + i[3])
    }

    /// Size of the combination without cancellation between its terms.
    fn magnitude(&self, i: &[f64; 6]) -> f64 {
        self.c0.abs() * (self.u2 * i[0].abs() + i[2].abs())
            + self.c1.abs() * i[4].abs()
            + self.c2.abs() * (self.u2 * i[1].abs() + i[3].abs())
    }
}

/// `[U⁽¹⁾, U⁽²⁾]` integrands at one imaginary frequency from a single
/// q-pass: `U⁽¹⁾` from the literal bracket, `U⁽²⁾` from the separable
/// square of the Sommerfeld integrals.
fn pair_integrand(
    geom: &PlanarGeometry,
    u: f64,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<[f64; 2]> {
    let l = geom.l();
    let zp = geom.z_plus();
    if u * (l + zp).min(2.0 * zp) > U_EXPONENT_LIMIT {
        return Ok([0.0; 2]);
    }
    let (a_t, b_t) = free_factors(u, l);
    let (x2, z2, l2) = (geom.x().powi(2), geom.z().powi(2), l * l);
    let coef = BracketCoefficients::new(u, a_t, b_t, x2, z2, l2);
    let closed = sommerfeld_asymptote_integrals(geom, asymptote_limits(geom, u, medium));
    // Errors in the scattering tensor below the free tensor between the
    // atoms, times the tolerance, cannot show up in U at that tolerance.
    let weights = tensor_weights(u);
    let free = {
        let p = free_space_polys(1.0 / (u * l));
        2.0 * u * u * (-u * l).exp() * (p.a + p.b) / l
    };
    let scales: [f64; 6] = {
        let s = sommerfeld_scales(u, &sommerfeld_magnitudes(geom, u, medium));
        std::array::from_fn(|i| s[i].max(free / weights[i]))
    };
    let residual: [f64; 6] = q_integrate(geom, u, medium, spec, scales, Some(weights), |s| {
        Ok(s.excess)
    })?;
    let v: [f64; 6] = std::array::from_fn(|i| residual[i] + closed[i]);
    // the literal U⁽¹⁾ bracket is this combination of the six integrands
    let aa = a.at(u) * b.at(u);
    let u1 = -aa * (-u * l).exp() * coef.combine(&v) / (32.0 * PI.powi(3) * l);
    Ok([u1, aa * separable_u2(v, u)])
}

/// `−1/(64π³) [(u²I_s0 − I_p0)² + 2I_z² + 4I_1² + (u²I_s2 + I_p2)²]`
fn separable_u2(i: [f64; 6], u: f64) -> f64 {
    let [s0, s2, p0, p2, z, one] = i;
    let u2 = u * u;
    let sum = (u2 * s0 - p0).powi(2) + 2.0 * z * z + 4.0 * one * one + (u2 * s2 + p2).powi(2);
    -sum / (64.0 * PI.powi(3))
}

fn u_region(geom: &PlanarGeometry, a: &ResonanceAtom, b: &ResonanceAtom) -> Region {
    let scale = a
        .omega10
        .min(b.omega10)
        .min(1.0 / (geom.l() + geom.z_plus()));
    Region::semi_infinite(0.0, scale)
}

pub(crate) fn halfspace_pair(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<[f64; 2]> {
    check_inputs(geom, a, b, medium)?;
    if medium.is_vacuum() {
        return Ok([0.0; 2]);
    }
    let inner = spec.inner();
    let r = integrate_vec_magnitude(
        |u| {
            if u == 0.0 {
                return Ok([0.0; 2]);
            }
            pair_integrand(geom, u, a, b, medium, &inner)
        },
        &u_region(geom, a, b),
        &rel_only(spec),
    )
    .map_err(|e| e.on_axis("u"))?;
    Ok(r.values)
}

/// Single-reflection part `U⁽¹⁾` of the two-atom potential near a half space.
pub fn u1_halfspace(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<f64> {
    Ok(halfspace_pair(geom, a, b, medium, spec)?[0])
}

/// Double-reflection part `U⁽²⁾` of the two-atom potential near a half space.
pub fn u2_halfspace(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<f64> {
    Ok(halfspace_pair(geom, a, b, medium, spec)?[1])
}

/// `U⁽⁰⁾ + U⁽¹⁾ + U⁽²⁾` for two polarizable atoms above a half space.
pub fn u_total(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<PotentialBreakdown> {
    let [u1, u2] = halfspace_pair(geom, a, b, medium, spec)?;
    let u0 = u0_ee(geom.l(), a, b, spec)?;
    Ok(PotentialBreakdown::new(u0, u1, u2))
}

/// u-integrand of `U⁽¹⁾` from the q-integral of the literal bracket.
pub fn u1_integrand_literal(
    geom: &PlanarGeometry,
    u: f64,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<f64> {
    check_inputs(geom, a, b, medium)?;
    check_u(u)?;
    let l = geom.l();
    let (a_t, b_t) = free_factors(u, l);
    let (x2, z2, l2) = (geom.x().powi(2), geom.z().powi(2), l * l);
    let coef = BracketCoefficients::new(u, a_t, b_t, x2, z2, l2);
    let closed = sommerfeld_asymptote_integrals(geom, asymptote_limits(geom, u, medium));
    let size = sommerfeld_magnitudes(geom, u, medium);
    let [residual] = q_integrate(geom, u, medium, spec, [coef.magnitude(&size)], None, |s| {
        Ok([u1_bracket(s, u, a_t, b_t, x2, z2, l2) - coef.combine(&s.tail)])
    })?;
    let v = residual + coef.combine(&closed);
    Ok(-a.at(u) * b.at(u) * (-u * l).exp() * v / (32.0 * PI.powi(3) * l))
}

/// u-integrand of `U⁽¹⁾` as `−(1/π) u⁴ α_A α_B Tr[G⁽⁰⁾(r_A, r_B) G⁽¹⁾(r_B, r_A)]`,
/// with both tensors assembled component by component.
pub fn u1_integrand_trace(
    geom: &PlanarGeometry,
    u: f64,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<f64> {
    check_inputs(geom, a, b, medium)?;
    check_u(u)?;
    let g0 = free_space_green(geom.separation(), u)?;
    let g1_back = halfspace_scattering(&geom.swapped(), u, medium, spec)?.to_tensor();
    let tr = trace(&matmul(&g0, &g1_back));
    Ok(-u.powi(4) * a.at(u) * b.at(u) * tr / PI)
}

/// u-integrand of `U⁽²⁾` as `−(1/2π) u⁴ α_A α_B Tr[G⁽¹⁾(r_A, r_B) G⁽¹⁾(r_B, r_A)]`.
pub fn u2_integrand_trace(
    geom: &PlanarGeometry,
    u: f64,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<f64> {
    check_inputs(geom, a, b, medium)?;
    check_u(u)?;
    let forward = halfspace_scattering(geom, u, medium, spec)?.to_tensor();
    let back = halfspace_scattering(&geom.swapped(), u, medium, spec)?.to_tensor();
    Ok(-u.powi(4) * a.at(u) * b.at(u) * trace(&matmul(&forward, &back)) / (2.0 * PI))
}

/// Integrand of the double q-integral at one `(q, q′)` pair, without the
/// common factor `q q′ e^{−(b+b′)Z₊}`.
#[inline]
fn u2_pair_kernel(s: &QSample, t: &QSample, u: f64) -> f64 {
    let u2 = u * u;
    let u4 = u2 * u2;
    let bb = s.b * t.b;
    let ss = s.rs * t.rs;
    let pp = s.rp * t.rp;
    let cross_sp = u2 * t.b * s.rs * t.rp / s.b;
    let cross_ps = u2 * s.b * s.rp * t.rs / t.b;
    let t0 = (u4 * ss / bb + pp * (bb + 2.0 * s.q * s.q * t.q * t.q / bb) - cross_sp - cross_ps)
        * s.j[0]
        * t.j[0];
    let t1 = 4.0 * s.q * t.q * pp * s.j[1] * t.j[1];
    let t2 = (u4 * ss / bb + bb * pp + cross_sp + cross_ps) * s.j[2] * t.j[2];
    t0 + t1 + t2
}

/// u-integrand of `U⁽²⁾` from the literal double q-integral, without using
/// its separability.
pub fn u2_integrand_literal(
    geom: &PlanarGeometry,
    u: f64,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<f64> {
    check_inputs(geom, a, b, medium)?;
    check_u(u)?;
    let inner = spec.inner();
    let [v] = q_integrate(geom, u, medium, spec, [0.0], None, |s| {
        let s = *s;
        q_integrate(geom, u, medium, &inner, [0.0], None, |t| {
            Ok([s.q * t.q * s.decay * t.decay * u2_pair_kernel(&s, t, u)])
        })
        .map_err(|e| match e {
            Error::Convergence {
                best,
                abs_error,
                evaluations,
                ..
            } => Error::Convergence {
                axis: "q'",
                best,
                abs_error,
                evaluations,
            },
            e => e,
        })
    })?;
    Ok(-a.at(u) * b.at(u) * v / (64.0 * PI.powi(3)))
}

/// `U⁽²⁾` by the literal triple integral over `(u, q, q′)`. Slow; meant as
/// an independent check of `u2_halfspace`.
pub fn u2_halfspace_nested(
    geom: &PlanarGeometry,
    a: &ResonanceAtom,
    b: &ResonanceAtom,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<f64> {
    check_inputs(geom, a, b, medium)?;
    if medium.is_vacuum() {
        return Ok(0.0);
    }
    let inner = spec.inner();
    let zp = geom.z_plus();
    let r = integrate_vec_magnitude(
        |u| {
            if u == 0.0 || 2.0 * u * zp > U_EXPONENT_LIMIT {
                return Ok([0.0]);
            }
            Ok([u2_integrand_literal(geom, u, a, b, medium, &inner)?])
        },
        &u_region(geom, a, b),
        &rel_only(spec),
    )
    .map_err(|e| e.on_axis("u"))?;
    Ok(r.values[0])
}
