//! Free-space and half-space Green tensors at imaginary frequency, Fresnel
//! reflection coefficients and the nonretarded closed forms of the
//! scattering tensor.
//!
//! The half space fills `z < 0`; both atoms sit in the vacuum region
//! `z > 0` and lie in the `xz` plane.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{LorentzMedium, MediumKind};
use crate::quadrature::{integrate_vec_floor, integrate_vec_joint, QuadSpec, Region};
use crate::specfun::{bessel_j012, free_space_polys};

pub type Tensor3 = [[f64; 3]; 3];

/// Positions of atoms A and B in the `xz` plane above the surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarGeometry {
    pub x_a: f64,
    pub z_a: f64,
    pub x_b: f64,
    pub z_b: f64,
}

impl PlanarGeometry {
    pub fn new(x_a: f64, z_a: f64, x_b: f64, z_b: f64) -> Result<Self> {
        let g = PlanarGeometry { x_a, z_a, x_b, z_b };
        g.validate()?;
        Ok(g)
    }

    /// Both atoms at height `z`, separated by `l` along `x`.
    pub fn parallel(l: f64, z: f64) -> Result<Self> {
        Self::new(0.0, z, l, z)
    }

    /// Atoms on a common surface normal.
    pub fn vertical(z_a: f64, z_b: f64) -> Result<Self> {
        Self::new(0.0, z_a, 0.0, z_b)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.x_a, self.z_a, self.x_b, self.z_b];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("atom coordinates must be finite"));
        }
        if !(self.z_a > 0.0 && self.z_b > 0.0) {
            return Err(Error::domain(format!(
                "atoms must lie above the surface, got z_A = {}, z_B = {}",
                self.z_a, self.z_b
            )));
        }
        if !(self.l() > 0.0) {
            return Err(Error::Singular("the two atoms coincide".into()));
        }
        Ok(())
    }

    /// `X = x_B − x_A`
    pub fn x(&self) -> f64 {
        self.x_b - self.x_a
    }

    /// `Z = z_B − z_A`
    pub fn z(&self) -> f64 {
        self.z_b - self.z_a
    }

    /// `Z₊ = z_A + z_B`
    pub fn z_plus(&self) -> f64 {
        self.z_a + self.z_b
    }

    pub fn l(&self) -> f64 {
        self.x().hypot(self.z())
    }

    /// Distance between one atom and the mirror image of the other.
    pub fn l_plus(&self) -> f64 {
        self.x().hypot(self.z_plus())
    }

    /// Same geometry with the roles of A and B exchanged.
    pub fn swapped(&self) -> Self {
        PlanarGeometry {
            x_a: self.x_b,
            z_a: self.z_b,
            x_b: self.x_a,
            z_b: self.z_a,
        }
    }

    /// `r_A − r_B` as a 3-vector.
    pub fn separation(&self) -> [f64; 3] {
        [-self.x(), 0.0, -self.z()]
    }
}

/// The in-plane nonzero elements of a scattering Green tensor.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GreenComponents {
    pub gxx: f64,
    pub gyy: f64,
    pub gxz: f64,
    pub gzx: f64,
    pub gzz: f64,
}

impl GreenComponents {
    pub fn to_tensor(&self) -> Tensor3 {
        [
            [self.gxx, 0.0, self.gxz],
            [0.0, self.gyy, 0.0],
            [self.gzx, 0.0, self.gzz],
        ]
    }

    /// Components with `r_A ↔ r_B` (only `X` changes sign, which flips the
    /// off-diagonal elements).
    pub fn reversed(&self) -> Self {
        GreenComponents {
            gxz: -self.gxz,
            gzx: -self.gzx,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlateKind {
    /// `r_s = −1`, `r_p = +1`
    Conducting,
    /// `r_s = +1`, `r_p = −1`
    Permeable,
}

impl PlateKind {
    /// `(r_s, r_p)`
    pub fn reflection(self) -> (f64, f64) {
        match self {
            PlateKind::Conducting => (-1.0, 1.0),
            PlateKind::Permeable => (1.0, -1.0),
        }
    }

    /// `+1` for a conducting plate, `−1` for a permeable one.
    pub fn sign(self) -> f64 {
        match self {
            PlateKind::Conducting => 1.0,
            PlateKind::Permeable => -1.0,
        }
    }
}

/// What fills the lower half space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum HalfSpaceMedium {
    Perfect {
        plate: PlateKind,
    },
    Lorentz {
        eps: LorentzMedium,
        mu: LorentzMedium,
    },
}

impl HalfSpaceMedium {
    pub fn vacuum() -> Self {
        HalfSpaceMedium::Lorentz {
            eps: LorentzMedium::vacuum(),
            mu: LorentzMedium::vacuum(),
        }
    }

    pub fn conducting() -> Self {
        HalfSpaceMedium::Perfect {
            plate: PlateKind::Conducting,
        }
    }

    pub fn permeable() -> Self {
        HalfSpaceMedium::Perfect {
            plate: PlateKind::Permeable,
        }
    }

    pub fn dielectric(eps: LorentzMedium) -> Self {
        HalfSpaceMedium::Lorentz {
            eps,
            mu: LorentzMedium::vacuum(),
        }
    }

    pub fn magnetic(mu: LorentzMedium) -> Self {
        HalfSpaceMedium::Lorentz {
            eps: LorentzMedium::vacuum(),
            mu,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let HalfSpaceMedium::Lorentz { eps, mu } = self {
            eps.validate()?;
            mu.validate()?;
            if eps.kind == MediumKind::Magnetic {
                return Err(Error::domain(
                    "permittivity needs an electric or vacuum oscillator",
                ));
            }
            if mu.kind == MediumKind::Electric {
                return Err(Error::domain(
                    "permeability needs a magnetic or vacuum oscillator",
                ));
            }
        }
        Ok(())
    }

    /// `(ε(0), μ(0))`; perfect reflectors report infinities.
    pub fn static_values(&self) -> (f64, f64) {
        match self {
            HalfSpaceMedium::Perfect {
                plate: PlateKind::Conducting,
            } => (f64::INFINITY, 1.0),
            HalfSpaceMedium::Perfect {
                plate: PlateKind::Permeable,
            } => (1.0, f64::INFINITY),
            HalfSpaceMedium::Lorentz { eps, mu } => (eps.static_value(), mu.static_value()),
        }
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(self, HalfSpaceMedium::Lorentz { eps, mu } if eps.omega_p == 0.0 && mu.omega_p == 0.0)
    }

    pub(crate) fn at(&self, u: f64) -> Reflector {
        match *self {
            HalfSpaceMedium::Perfect { plate } => {
                let (rs, rp) = plate.reflection();
                Reflector::Fixed { rs, rp }
            }
            HalfSpaceMedium::Lorentz { eps, mu } => Reflector::Fresnel {
                eps: eps.at(u),
                mu: mu.at(u),
            },
        }
    }
}

/// The medium frozen at one imaginary frequency.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Reflector {
    Fixed { rs: f64, rp: f64 },
    Fresnel { eps: f64, mu: f64 },
}

impl Reflector {
    /// `(r_s, r_p)` at in-plane wave number `q` with `b = √(u² + q²)`.
    #[inline]
    pub(crate) fn coeffs(&self, q: f64, u: f64, b: f64) -> (f64, f64) {
        match *self {
            Reflector::Fixed { rs, rp } => (rs, rp),
            Reflector::Fresnel { eps, mu } => {
                if eps == 1.0 && mu == 1.0 {
                    return (0.0, 0.0);
                }
                let q2 = q * q;
                let u2 = u * u;
                let bm = (eps * mu * u2 + q2).sqrt();
                if b == 0.0 {
                    return ((mu - 1.0) / (mu + 1.0), (eps - 1.0) / (eps + 1.0));
                }
                // numerators rewritten to avoid cancellation when q ≫ u
                let ds = mu * b + bm;
                let dp = eps * b + bm;
                let rs = ((mu * mu - 1.0) * q2 + mu * (mu - eps) * u2) / (ds * ds);
                let rp = ((eps * eps - 1.0) * q2 + eps * (eps - mu) * u2) / (dp * dp);
                (rs, rp)
            }
        }
    }

    /// `(r_s − r_s∞, r_p − r_p∞)`, free of cancellation at large `q`.
    #[inline]
    pub(crate) fn excess(&self, q: f64, u: f64, b: f64) -> (f64, f64) {
        match *self {
            Reflector::Fixed { .. } => (0.0, 0.0),
            Reflector::Fresnel { eps, mu } => {
                let bm = (eps * mu * u * u + q * q).sqrt();
                // b − b_m
                let gap = u * u * (1.0 - eps * mu) / (b + bm);
                (
                    2.0 * mu * gap / ((mu * b + bm) * (mu + 1.0)),
                    2.0 * eps * gap / ((eps * b + bm) * (eps + 1.0)),
                )
            }
        }
    }

    /// `(r_s, r_p)` as `q → ∞`.
    pub(crate) fn limits(&self) -> (f64, f64) {
        match *self {
            Reflector::Fixed { rs, rp } => (rs, rp),
            Reflector::Fresnel { eps, mu } => ((mu - 1.0) / (mu + 1.0), (eps - 1.0) / (eps + 1.0)),
        }
    }
}

/// Fresnel coefficients `(r_s, r_p)` at imaginary frequency.
pub fn reflection(q: f64, u: f64, medium: &HalfSpaceMedium) -> Result<(f64, f64)> {
    if !(q >= 0.0 && u > 0.0) {
        return Err(Error::domain(format!(
            "reflection needs q >= 0 and u > 0, got q = {q}, u = {u}"
        )));
    }
    medium.validate()?;
    Ok(medium.at(u).coeffs(q, u, u.hypot(q)))
}

/// Leading small-`u/b` expansion of the Fresnel coefficients.
pub fn reflection_expansion(q: f64, u: f64, medium: &HalfSpaceMedium) -> Result<(f64, f64)> {
    if !(q >= 0.0 && u > 0.0) {
        return Err(Error::domain(format!(
            "reflection needs q >= 0 and u > 0, got q = {q}, u = {u}"
        )));
    }
    match medium.at(u) {
        Reflector::Fixed { rs, rp } => Ok((rs, rp)),
        Reflector::Fresnel { eps, mu } => {
            let t = u * u / (u * u + q * q);
            let em1 = eps * mu - 1.0;
            let rs = (mu - 1.0) / (mu + 1.0) - mu * em1 / ((mu + 1.0) * (mu + 1.0)) * t;
            let rp = (eps - 1.0) / (eps + 1.0) - eps * em1 / ((eps + 1.0) * (eps + 1.0)) * t;
            Ok((rs, rp))
        }
    }
}

/// Zero-frequency coefficients in terms of `v = b/u ≥ 1`.
pub fn static_reflection(v: f64, eps0: f64, mu0: f64) -> Result<(f64, f64)> {
    if !(v >= 1.0) {
        return Err(Error::domain(format!(
            "static reflection needs v >= 1, got {v}"
        )));
    }
    let radicand = eps0 * mu0 - 1.0 + v * v;
    if !(radicand >= 0.0) {
        return Err(Error::domain(format!(
            "negative radicand {radicand} in static reflection"
        )));
    }
    Ok(static_reflection_unchecked(v, eps0, mu0))
}

#[inline]
pub(crate) fn static_reflection_unchecked(v: f64, eps0: f64, mu0: f64) -> (f64, f64) {
    let root = (eps0 * mu0 - 1.0 + v * v).sqrt();
    let rs = if mu0.is_infinite() {
        1.0
    } else if eps0.is_infinite() {
        -1.0
    } else {
        (mu0 * v - root) / (mu0 * v + root)
    };
    let rp = if eps0.is_infinite() {
        1.0
    } else if mu0.is_infinite() {
        -1.0
    } else {
        (eps0 * v - root) / (eps0 * v + root)
    };
    (rs, rp)
}

fn check_free_space_args(rho: [f64; 3], u: f64) -> Result<(f64, [f64; 3])> {
    let r = (rho[0] * rho[0] + rho[1] * rho[1] + rho[2] * rho[2]).sqrt();
    if !(r > 0.0) {
        return Err(Error::Singular(
            "free-space Green tensor at zero separation".into(),
        ));
    }
    if !(u > 0.0) {
        return Err(Error::domain(format!(
            "free-space Green tensor needs u > 0, got {u}"
        )));
    }
    Ok((r, [rho[0] / r, rho[1] / r, rho[2] / r]))
}

/// Bulk Green tensor `e^{−uρ}/(4πρ) [a(1/(uρ)) I − b(1/(uρ)) e e]`.
pub fn free_space_green(rho: [f64; 3], u: f64) -> Result<Tensor3> {
    let (r, e) = check_free_space_args(rho, u)?;
    let p = free_space_polys(1.0 / (u * r));
    let pref = (-u * r).exp() / (4.0 * PI * r);
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            g[i][j] = pref * (p.a * delta - p.b * e[i] * e[j]);
        }
    }
    Ok(g)
}

/// Curl of the bulk tensor from the left and from the right,
/// `∓ e^{−uρ}(1 + uρ)/(4πρ²) e×I`.
pub fn free_space_curls(rho: [f64; 3], u: f64) -> Result<(Tensor3, Tensor3)> {
    let (r, e) = check_free_space_args(rho, u)?;
    let p = (-u * r).exp() * (1.0 + u * r) / (4.0 * PI * r * r);
    let cross = cross_matrix(e);
    let mut left = [[0.0; 3]; 3];
    let mut right = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            left[i][j] = -p * cross[i][j];
            right[i][j] = p * cross[i][j];
        }
    }
    Ok((left, right))
}

/// Matrix of `v ↦ e × v`.
pub fn cross_matrix(e: [f64; 3]) -> Tensor3 {
    [[0.0, -e[2], e[1]], [e[2], 0.0, -e[0]], [-e[1], e[0], 0.0]]
}

pub fn matmul(a: &Tensor3, b: &Tensor3) -> Tensor3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

pub fn trace(a: &Tensor3) -> f64 {
    a[0][0] + a[1][1] + a[2][2]
}

/// Values carried to the integrand at one sample of the in-plane wave number.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QSample {
    pub q: f64,
    pub b: f64,
    /// `e^{−b Z₊}`
    pub decay: f64,
    pub rs: f64,
    pub rp: f64,
    /// `J_ν(qX)` for ν = 0, 1, 2
    pub j: [f64; 3],
    /// Large-q form of the six Sommerfeld integrands, see [`sommerfeld_asymptote`]
    pub tail: [f64; 6],
    /// Sommerfeld integrands minus `tail`, evaluated without cancellation
    pub excess: [f64; 6],
}

/// `q` beyond which `e^{−(b−u)Z₊}` has dropped by `e^{−40}`.
fn q_cutoff(u: f64, z_plus: f64) -> f64 {
    let b = u + 40.0 / z_plus;
    (b * b - u * u).sqrt()
}

/// Panel edges for a q-integral: about two Bessel periods per panel up to
/// the damping cutoff, then a mapped tail.
fn q_region(u: f64, geom: &PlanarGeometry) -> Region {
    let zp = geom.z_plus();
    let cut = q_cutoff(u, zp);
    let x = geom.x().abs();
    let per_panel = if x > 0.0 { 4.0 * PI / x } else { f64::INFINITY };
    // resolve the decay length near q = 0 as well
    let per_panel = per_panel.min(cut / 4.0);
    let panels = ((cut / per_panel).ceil() as usize).clamp(1, 50_000);
    let edges = (0..=panels)
        .map(|i| cut * i as f64 / panels as f64)
        .collect();
    Region::with_edges(edges, Some(1.0 / zp))
}

/// `∫_0^∞ dq F(q)` for a vector of q-integrands sharing the Sommerfeld
/// factors. Component `i` converges at `rel_tol · max(|value|, scales[i])`;
/// pass the size of any subtracted asymptote as its scale, or zero.
pub(crate) fn q_integrate<const N: usize, F>(
    geom: &PlanarGeometry,
    u: f64,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
    scales: [f64; N],
    weights: Option<[f64; N]>,
    mut f: F,
) -> Result<[f64; N]>
where
    F: FnMut(&QSample) -> Result<[f64; N]>,
{
    let reflector = medium.at(u);
    let limits = asymptote_limits(geom, u, medium);
    let subtracting = limits != (0.0, 0.0);
    let zp = geom.z_plus();
    let x = geom.x().abs();
    // J1 is odd in X; J0 and J2 are even
    let odd_sign = if geom.x() < 0.0 { -1.0 } else { 1.0 };
    let region = q_region(u, geom);
    let spec = QuadSpec {
        abs_tol: f64::MIN_POSITIVE,
        max_subdivisions: spec.max_subdivisions + 3 * region.panel_count(),
        ..*spec
    };
    let floor = scales.map(|v| spec.rel_tol * v.abs());
    let integrand = |q: f64| {
        let b = u.hypot(q);
        let decay = (-b * zp).exp();
        if decay == 0.0 {
            return Ok([0.0; N]);
        }
        let (rs, rp) = reflector.coeffs(q, u, b);
        let mut j = bessel_j012(q * x);
        j[1] *= odd_sign;
        let tail = sommerfeld_asymptote(q, zp, &j, limits);
        let shift = if subtracting {
            reflector.excess(q, u, b)
        } else {
            (rs, rp)
        };
        let excess = sommerfeld_excess(q, b, u, zp, &j, limits, shift);
        f(&QSample {
            q,
            b,
            decay,
            rs,
            rp,
            j,
            tail,
            excess,
        })
    };
    let r = match weights {
        Some(w) => integrate_vec_joint(integrand, &region, &spec, floor, w),
        None => integrate_vec_floor(integrand, &region, &spec, floor),
    }
    .map_err(|e| e.on_axis("q"))?;
    Ok(r.values)
}

/// The six Sommerfeld integrals from which every scattering component is
/// assembled:
/// `[∫q e r_s J0/b, ∫q e r_s J2/b, ∫q e b r_p J0, ∫q e b r_p J2, ∫q³ e r_p J0/b, ∫q² e r_p J1]`
/// with `e = e^{−bZ₊}`.
pub(crate) fn sommerfeld_integrals(
    geom: &PlanarGeometry,
    u: f64,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<[f64; 6]> {
    let closed = sommerfeld_asymptote_integrals(geom, asymptote_limits(geom, u, medium));
    let scales = sommerfeld_scales(u, &sommerfeld_magnitudes(geom, u, medium));
    let residual: [f64; 6] = q_integrate(
        geom,
        u,
        medium,
        spec,
        scales,
        Some(tensor_weights(u)),
        |s| Ok(s.excess),
    )?;
    Ok(std::array::from_fn(|i| residual[i] + closed[i]))
}

/// Asymptote integrals with the unscreened reflection limits, damped by
/// `e^{−uZ₊} ≥ e^{−bZ₊}`; used only to size error tolerances. They track the
/// non-oscillatory magnitude of the integrals even where the oscillating
/// parts cancel to almost nothing.
pub(crate) fn sommerfeld_magnitudes(
    geom: &PlanarGeometry,
    u: f64,
    medium: &HalfSpaceMedium,
) -> [f64; 6] {
    let damping = (-u * geom.z_plus()).exp();
    sommerfeld_asymptote_integrals(geom, medium.at(u).limits()).map(|v| v * damping)
}

/// Converts the six Sommerfeld integrals to the common units of the
/// scattering tensor entries they assemble into.
pub(crate) fn tensor_weights(u: f64) -> [f64; 6] {
    let u2 = u * u;
    [u2, u2, 1.0, 1.0, 1.0, 1.0]
}

/// Error scales for the six Sommerfeld integrals: the largest entry of the
/// scattering tensor they assemble into, expressed in each integral's units
/// (the r_s pair enters with weight 1, the r_p ones with `1/u²`).
pub(crate) fn sommerfeld_scales(u: f64, closed: &[f64; 6]) -> [f64; 6] {
    let u2 = u * u;
    let p = closed[2..]
        .iter()
        .fold(u2 * closed[0].abs().max(closed[1].abs()), |m, v| {
            m.max(v.abs())
        });
    [p / u2, p / u2, p, p, p, p]
}

/// Reflection limits used for the asymptote subtraction, or zeros when
/// `uZ₊ ≥ 1`: there `e^{−bZ₊}` already damps the integrands below the
/// asymptote, and subtracting it would cost accuracy instead of gaining it.
pub(crate) fn asymptote_limits(
    geom: &PlanarGeometry,
    u: f64,
    medium: &HalfSpaceMedium,
) -> (f64, f64) {
    if u * geom.z_plus() < 1.0 {
        medium.at(u).limits()
    } else {
        (0.0, 0.0)
    }
}

/// The Sommerfeld integrands with `b → q` and the reflection coefficients
/// replaced by their `q → ∞` limits `(r_s∞, r_p∞)`:
/// `[r_s∞ e J0, r_s∞ e J2, r_p∞ q² e J0, r_p∞ q² e J2, r_p∞ q² e J0, r_p∞ q² e J1]`
/// with `e = e^{−qZ₊}`. Their integrals are elementary, and subtracting them
/// removes the near-surface cancellation between Bessel half periods.
#[inline]
pub(crate) fn sommerfeld_asymptote(
    q: f64,
    z_plus: f64,
    j: &[f64; 3],
    limits: (f64, f64),
) -> [f64; 6] {
    let (rs, rp) = limits;
    let e = (-q * z_plus).exp();
    let s = rs * e;
    let p = rp * q * q * e;
    [s * j[0], s * j[2], p * j[0], p * j[2], p * j[0], p * j[1]]
}

/// [`sommerfeld_integrand`] minus [`sommerfeld_asymptote`] with the
/// differences taken analytically: `b − q = u²/(b + q)`,
/// `e^{−bZ₊} = e^{−qZ₊}(1 + D)` with `D = expm1(−(b − q)Z₊)`, and
/// `shift = (r_s − r_s∞, r_p − r_p∞)`.
#[inline]
pub(crate) fn sommerfeld_excess(
    q: f64,
    b: f64,
    u: f64,
    z_plus: f64,
    j: &[f64; 3],
    limits: (f64, f64),
    shift: (f64, f64),
) -> [f64; 6] {
    let (rs_inf, rp_inf) = limits;
    let (ds, dp) = shift;
    let e = (-q * z_plus).exp();
    let d = u * u / (b + q);
    let big_d = (-d * z_plus).exp_m1();
    // 1 + D taken directly: the sum loses every digit once dZ₊ ≫ 1
    let d_exp = (-d * z_plus).exp();
    let qb = q / b;
    // (q/b)(1 + D) − 1
    let ratio_m1 = -d / b + qb * big_d;
    let s = e * (qb * d_exp * ds + rs_inf * ratio_m1);
    let p = e * q * (b * d_exp * dp + rp_inf * (d + b * big_d));
    let z = e * q * q * (qb * d_exp * dp + rp_inf * ratio_m1);
    let one = e * q * q * (d_exp * dp + rp_inf * big_d);
    [s * j[0], s * j[2], p * j[0], p * j[2], z * j[0], one * j[1]]
}

/// Exact `∫_0^∞ dq` of [`sommerfeld_asymptote`].
pub(crate) fn sommerfeld_asymptote_integrals(
    geom: &PlanarGeometry,
    limits: (f64, f64),
) -> [f64; 6] {
    let (rs, rp) = limits;
    let lam = geom.z_plus();
    let x = geom.x();
    let rho = lam.hypot(x);
    let rho5 = rho.powi(5);
    let q2j0 = (2.0 * lam * lam - x * x) / rho5;
    [
        rs / rho,
        rs * x * x / ((rho + lam).powi(2) * rho),
        rp * q2j0,
        rp * 3.0 * x * x / rho5,
        rp * q2j0,
        rp * 3.0 * lam * x / rho5,
    ]
}

#[inline]
#[cfg(test)]
pub(crate) fn sommerfeld_integrand(s: &QSample) -> [f64; 6] {
    let qe = s.q * s.decay;
    let s_part = qe * s.rs / s.b;
    let p_part = qe * s.b * s.rp;
    [
        s_part * s.j[0],
        s_part * s.j[2],
        p_part * s.j[0],
        p_part * s.j[2],
        qe * s.q * s.q * s.rp * s.j[0] / s.b,
        qe * s.q * s.rp * s.j[1],
    ]
}

/// Scattering components from the six Sommerfeld integrals at frequency `u`.
pub(crate) fn components_from_integrals(i: &[f64; 6], u: f64) -> GreenComponents {
    let k2 = u * u;
    let [s0, s2, p0, p2, z, one] = *i;
    let xz = one / (4.0 * PI * k2);
    GreenComponents {
        gxx: ((s0 + s2) - (p0 - p2) / k2) / (8.0 * PI),
        gyy: ((s0 - s2) - (p0 + p2) / k2) / (8.0 * PI),
        gxz: xz,
        gzx: -xz,
        gzz: -z / (4.0 * PI * k2),
    }
}

/// Scattering Green tensor `G⁽¹⁾(r_A, r_B, iu)` by q-quadrature.
pub fn halfspace_scattering(
    geom: &PlanarGeometry,
    u: f64,
    medium: &HalfSpaceMedium,
    spec: &QuadSpec,
) -> Result<GreenComponents> {
    geom.validate()?;
    medium.validate()?;
    if !(u > 0.0) {
        return Err(Error::domain(format!(
            "scattering tensor needs u > 0, got {u}"
        )));
    }
    if medium.is_vacuum() {
        return Ok(GreenComponents::default());
    }
    let i = sommerfeld_integrals(geom, u, medium, spec)?;
    Ok(components_from_integrals(&i, u))
}

/// Nonretarded closed forms of `G⁽¹⁾(r_A, r_B, iu)`.
///
/// Valid for `u l₊ √(εμ) ≪ 1`. Covers perfect reflectors and purely
/// electric or purely magnetic half spaces.
pub fn nonretarded_scattering(
    geom: &PlanarGeometry,
    u: f64,
    medium: &HalfSpaceMedium,
) -> Result<GreenComponents> {
    geom.validate()?;
    medium.validate()?;
    if !(u > 0.0) {
        return Err(Error::domain(format!(
            "scattering tensor needs u > 0, got {u}"
        )));
    }
    let x = geom.x();
    let zp = geom.z_plus();
    let lp = geom.l_plus();
    let electric = |r: f64| {
        let f = r / (4.0 * PI * u * u * lp.powi(5));
        let xz = 3.0 * x * zp * f;
        GreenComponents {
            gxx: (2.0 * x * x - zp * zp) * f,
            gyy: -lp * lp * f,
            gxz: xz,
            gzx: -xz,
            gzz: (x * x - 2.0 * zp * zp) * f,
        }
    };
    match *medium {
        HalfSpaceMedium::Perfect { plate } => Ok(electric(plate.reflection().1)),
        HalfSpaceMedium::Lorentz { eps, mu } => {
            let e = eps.at(u);
            let m = mu.at(u);
            match (e == 1.0, m == 1.0) {
                (_, true) => Ok(electric((e - 1.0) / (e + 1.0))),
                (true, false) => {
                    let rm = (m - 1.0) / (m + 1.0);
                    let d = m - 1.0;
                    let s = lp + zp;
                    let xz = -d * x / (16.0 * PI * lp * s);
                    Ok(GreenComponents {
                        gxx: rm / (4.0 * PI * s) + d * zp / (16.0 * PI * lp * s),
                        gyy: d / (16.0 * PI * s) + rm * zp / (4.0 * PI * lp * s),
                        gxz: xz,
                        gzx: -xz,
                        gzz: d / (16.0 * PI * lp),
                    })
                }
                (false, false) => Err(Error::domain(
                    "nonretarded closed forms need a purely electric or purely magnetic half space",
                )),
            }
        }
    }
}
