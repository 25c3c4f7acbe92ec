//! Scenario configuration: a JSON document whose every section is optional.
//! Missing sections fall back to the dielectric parallel-case defaults.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use vdw_core::greens::{HalfSpaceMedium, PlanarGeometry};
use vdw_core::materials::{AtomKind, LorentzMedium, MediumKind, ResonanceAtom};
use vdw_core::potentials::RegimeGuard;
use vdw_core::quadrature::QuadSpec;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub atoms: AtomPair,
    /// `null` selects free space.
    pub medium: Option<HalfSpaceMedium>,
    pub geometry: GeometrySpec,
    pub sweep: SweepSpec,
    pub output: OutputSpec,
    pub numerics: Numerics,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            atoms: AtomPair::default(),
            medium: Some(HalfSpaceMedium::dielectric(LorentzMedium {
                omega_p: 3.0,
                omega_t: 1.0,
                gamma: 1e-3,
                kind: MediumKind::Electric,
            })),
            geometry: GeometrySpec::default(),
            sweep: SweepSpec::default(),
            output: OutputSpec::default(),
            numerics: Numerics::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomPair {
    pub a: ResonanceAtom,
    pub b: ResonanceAtom,
}

impl Default for AtomPair {
    fn default() -> Self {
        AtomPair {
            a: ResonanceAtom::unit_electric(),
            b: ResonanceAtom::unit_electric(),
        }
    }
}

/// Where the atoms sit for a given separation `l` and height `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeometrySpec {
    /// Both atoms at height `z`, `X = l`.
    Parallel { l: f64, z: f64 },
    /// A at height `z`, B at `z + l` on the same normal.
    Vertical { l: f64, z: f64 },
    /// A at height `z`, B at `A + l·d/|d|` with `d = [dx, dz]`.
    General { l: f64, z: f64, direction: [f64; 2] },
}

impl Default for GeometrySpec {
    fn default() -> Self {
        GeometrySpec::Parallel { l: 0.1, z: 0.01 }
    }
}

impl GeometrySpec {
    fn lz(&self) -> (f64, f64) {
        match *self {
            GeometrySpec::Parallel { l, z }
            | GeometrySpec::Vertical { l, z }
            | GeometrySpec::General { l, z, .. } => (l, z),
        }
    }

    /// Geometry with the swept variable set to `value`.
    pub fn at(&self, variable: SweepVariable, value: f64) -> vdw_core::Result<PlanarGeometry> {
        let (mut l, mut z) = self.lz();
        match variable {
            SweepVariable::L => l = value,
            SweepVariable::Z => z = value,
        }
        match *self {
            GeometrySpec::Parallel { .. } => PlanarGeometry::parallel(l, z),
            GeometrySpec::Vertical { .. } => PlanarGeometry::vertical(z, z + l),
            GeometrySpec::General {
                direction: [dx, dz],
                ..
            } => {
                let n = dx.hypot(dz);
                PlanarGeometry::new(0.0, z, l * dx / n, z + l * dz / n)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    /// Interatomic separation.
    L,
    /// Height of atom A.
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            variable: SweepVariable::L,
            start: 1e-3,
            stop: 10.0,
            points: 21,
            spacing: Spacing::Log,
        }
    }
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Log => self.start * (self.stop / self.start).powf(t),
                    Spacing::Linear => self.start + (self.stop - self.start) * t,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSpec {
    /// `null` writes to stdout.
    pub path: Option<PathBuf>,
    pub format: Format,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            path: None,
            format: Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Numerics {
    pub quadrature: QuadSpec,
    /// Finite-difference step relative to `min(l, z_A, z_B)`.
    pub fd_step: f64,
    /// Skip the finite-difference forces in half-space sweeps when false.
    pub forces: bool,
    pub guard: RegimeGuard,
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics {
            quadrature: QuadSpec::default(),
            fd_step: vdw_core::forces::DEFAULT_FD_STEP,
            forces: true,
            guard: RegimeGuard::default(),
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub rel_tol: Option<f64>,
    pub points: Option<usize>,
    pub spacing: Option<Spacing>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(r) = o.rel_tol {
            self.numerics.quadrature.rel_tol = r;
        }
        if let Some(n) = o.points {
            self.sweep.points = n;
        }
        if let Some(s) = o.spacing {
            self.sweep.spacing = s;
        }
        if let Some(p) = &o.output {
            self.output.path = Some(p.clone());
        }
        if let Some(f) = o.format {
            self.output.format = f;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn spec(&self) -> QuadSpec {
        self.numerics.quadrature
    }

    /// Checks everything that does not need a numerical evaluation.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |field: &str, msg: String| Err(CliError::Config(format!("{field}: {msg}")));
        if let Err(e) = self.atoms.a.validate() {
            return bad("atoms.a", e.to_string());
        }
        if let Err(e) = self.atoms.b.validate() {
            return bad("atoms.b", e.to_string());
        }
        if let Some(m) = &self.medium {
            if let Err(e) = m.validate() {
                return bad("medium", e.to_string());
            }
        }
        if let Err(e) = self.numerics.quadrature.validate() {
            return bad("numerics.quadrature", e.to_string());
        }
        if !(self.numerics.fd_step > 0.0 && self.numerics.fd_step < 0.5) {
            return bad(
                "numerics.fd_step",
                format!("must lie in (0, 0.5), got {}", self.numerics.fd_step),
            );
        }
        let s = &self.sweep;
        if s.points == 0 {
            return bad("sweep.points", "must be at least 1".into());
        }
        if !(s.start > 0.0 && s.stop > 0.0 && s.start.is_finite() && s.stop.is_finite()) {
            return bad(
                "sweep",
                format!("range must be positive, got [{}, {}]", s.start, s.stop),
            );
        }
        if let GeometrySpec::General {
            direction: [dx, dz],
            ..
        } = self.geometry
        {
            if dx.hypot(dz).partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
                return bad("geometry.direction", "must be a nonzero vector".into());
            }
        }
        for v in [s.start, s.stop] {
            if let Err(e) = self.geometry.at(s.variable, v) {
                return bad("geometry", e.to_string());
            }
        }
        Ok(())
    }

    pub fn require_electric_pair(&self, what: &str) -> Result<(), CliError> {
        if self.atoms.a.kind != AtomKind::Electric || self.atoms.b.kind != AtomKind::Electric {
            return Err(CliError::Config(format!(
                "atoms: {what} needs two electric atoms"
            )));
        }
        Ok(())
    }
}
