//! Two-atom potentials: free space, the half-space decomposition
//! `U = U⁽⁰⁾ + U⁽¹⁾ + U⁽²⁾` by quadrature, and the closed-form limits.

mod closed_forms;
mod free_space;
mod half_space;
mod threshold;

pub use closed_forms::{
    m_closed_form_threshold, nonretarded_electric_closed, nonretarded_magnetic_closed,
    perfect_nonretarded_closed, perfect_retarded_closed, retarded_halfspace_closed,
    MAX_MAGNETIC_STATIC_PERMEABILITY,
};
pub use free_space::{asymptotic_coefficients, u0_ee, u0_em, AsymptoticCoefficients};
pub use half_space::{
    u1_halfspace, u1_integrand_literal, u1_integrand_trace, u2_halfspace, u2_halfspace_nested,
    u2_integrand_literal, u2_integrand_trace, u_total,
};
pub use threshold::{threshold, threshold_function, ThresholdCase};

pub(crate) use free_space::u_region as free_u_region;
pub(crate) use half_space::halfspace_pair as u1_halfspace_pair;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greens::{HalfSpaceMedium, PlanarGeometry};
use crate::materials::{AtomKind, ResonanceAtom};

/// `U = U⁽⁰⁾ + U⁽¹⁾ + U⁽²⁾` and its ratio to the free-space part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialBreakdown {
    pub u0: f64,
    pub u1: f64,
    pub u2: f64,
    pub total: f64,
    pub ratio: f64,
}

impl PotentialBreakdown {
    pub fn new(u0: f64, u1: f64, u2: f64) -> Self {
        let total = u0 + u1 + u2;
        PotentialBreakdown {
            u0,
            u1,
            u2,
            total,
            ratio: total / u0,
        }
    }
}

/// Limits on where the closed-form asymptotics may be evaluated.
///
/// Retarded forms need `ω_min · min(l, Z₊) ≥ retarded_min` and
/// `X ≤ lateral_max · Z₊`; nonretarded forms need
/// `ω_max · max(l, l₊) · √(ε(0)μ(0)) ≤ nonretarded_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RegimeGuard {
    pub enabled: bool,
    pub retarded_min: f64,
    pub nonretarded_max: f64,
    pub lateral_max: f64,
}

impl Default for RegimeGuard {
    fn default() -> Self {
        RegimeGuard {
            enabled: true,
            retarded_min: 50.0,
            nonretarded_max: 0.02,
            lateral_max: 0.1,
        }
    }
}

impl RegimeGuard {
    pub fn disabled() -> Self {
        RegimeGuard {
            enabled: false,
            ..Self::default()
        }
    }

    pub(crate) fn check_retarded(
        &self,
        geom: &PlanarGeometry,
        omega_min: f64,
        lateral: bool,
    ) -> Result<()> {
        if !self.enabled {
            return Ok(());
        }
        let reach = omega_min * geom.l().min(geom.z_plus());
        if reach < self.retarded_min {
            return Err(Error::Regime(format!(
                "retarded form needs ω_min·min(l, Z₊) >= {}, got {reach:.3e}",
                self.retarded_min
            )));
        }
        if lateral && geom.x().abs() > self.lateral_max * geom.z_plus() {
            return Err(Error::Regime(format!(
                "retarded plate form needs X <= {}·Z₊, got X/Z₊ = {:.3e}",
                self.lateral_max,
                geom.x().abs() / geom.z_plus()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_nonretarded(
        &self,
        geom: &PlanarGeometry,
        omega_max: f64,
        index: f64,
    ) -> Result<()> {
        if !self.enabled {
            return Ok(());
        }
        let reach = omega_max * geom.l().max(geom.l_plus()) * index;
        if reach > self.nonretarded_max {
            return Err(Error::Regime(format!(
                "nonretarded form needs ω_max·max(l, l₊)·√(ε(0)μ(0)) <= {}, got {reach:.3e}",
                self.nonretarded_max
            )));
        }
        Ok(())
    }
}

pub(crate) fn require_kind(atom: &ResonanceAtom, kind: AtomKind, which: &str) -> Result<()> {
    atom.validate()?;
    if atom.kind != kind {
        return Err(Error::domain(format!(
            "atom {which} must be {kind:?}, got {:?}",
            atom.kind
        )));
    }
    Ok(())
}

pub(crate) fn require_positive_length(l: f64) -> Result<()> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::domain(format!(
            "separation must be positive, got {l}"
        )));
    }
    Ok(())
}

/// Highest resonance among the atoms and the medium.
pub(crate) fn omega_max(a: &ResonanceAtom, b: &ResonanceAtom, medium: &HalfSpaceMedium) -> f64 {
    let mut w = a.omega10.max(b.omega10);
    if let HalfSpaceMedium::Lorentz { eps, mu } = medium {
        for m in [eps, mu] {
            if m.omega_p > 0.0 {
                w = w.max(m.omega_t);
            }
        }
    }
    w
}
