//! Image-dipole sign predictor for the cross term `U⁽¹⁾` near a perfectly
//! reflecting plate, and its cross-check against the closed forms.
//!
//! The predictor is a lookup; it never feeds numerical results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::greens::{PlanarGeometry, PlateKind};
use crate::materials::ResonanceAtom;
use crate::potentials::{perfect_nonretarded_closed, PotentialBreakdown, RegimeGuard};
use crate::quadrature::QuadSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alignment {
    /// Both atoms at the same height.
    Parallel,
    /// Both atoms on one surface normal.
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageCase {
    pub plate: PlateKind,
    pub alignment: Alignment,
}

impl ImageCase {
    pub const ALL: [ImageCase; 4] = [
        ImageCase {
            plate: PlateKind::Conducting,
            alignment: Alignment::Parallel,
        },
        ImageCase {
            plate: PlateKind::Conducting,
            alignment: Alignment::Vertical,
        },
        ImageCase {
            plate: PlateKind::Permeable,
            alignment: Alignment::Parallel,
        },
        ImageCase {
            plate: PlateKind::Permeable,
            alignment: Alignment::Vertical,
        },
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn of(v: f64) -> Option<Sign> {
        if v > 0.0 {
            Some(Sign::Positive)
        } else if v < 0.0 {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// Sign of `U⁽¹⁾` from the image-dipole picture.
pub fn predict_u1_sign(case: ImageCase) -> Sign {
    match (case.plate, case.alignment) {
        (PlateKind::Conducting, Alignment::Parallel) => Sign::Positive,
        (PlateKind::Conducting, Alignment::Vertical) => Sign::Negative,
        (PlateKind::Permeable, Alignment::Parallel) => Sign::Negative,
        (PlateKind::Permeable, Alignment::Vertical) => Sign::Positive,
    }
}

/// The dipole/image configuration behind a prediction.
pub fn explain(case: ImageCase) -> &'static str {
    match (case.plate, case.alignment) {
        (PlateKind::Conducting, Alignment::Parallel) => {
            "a conductor mirrors a fluctuating dipole with its parallel component \
             reversed; the image of A sits beside B in the anti-aligned, repulsive \
             orientation, so the cross term weakens the attraction"
        }
        (PlateKind::Conducting, Alignment::Vertical) => {
            "a conductor keeps the normal component of the image dipole; A's image \
             lies on B's axis in the head-to-tail orientation, so the cross term adds \
             attraction"
        }
        (PlateKind::Permeable, Alignment::Parallel) => {
            "a permeable plate reverses the image rule of a conductor: the parallel \
             component is kept, the image of A attracts B and the cross term adds \
             attraction"
        }
        (PlateKind::Permeable, Alignment::Vertical) => {
            "a permeable plate reverses the normal component of the image dipole; \
             on a common normal this turns the head-to-tail coupling repulsive and \
             the cross term weakens the attraction"
        }
    }
}

/// One row of the cross-check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImageCheck {
    pub case: ImageCase,
    pub predicted: Sign,
    pub geometries: usize,
    /// Geometries whose evaluated `U⁽¹⁾` sign disagrees with the prediction.
    pub sign_mismatches: usize,
    /// Geometries where `U⁽²⁾ ≥ 0`, which no perfect plate allows.
    pub u2_violations: usize,
    pub explanation: String,
}

impl ImageCheck {
    pub fn passed(&self) -> bool {
        self.sign_mismatches == 0 && self.u2_violations == 0
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImageReport {
    pub checks: Vec<ImageCheck>,
}

impl ImageReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(ImageCheck::passed)
    }
}

impl std::fmt::Display for ImageReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:?}/{:?}: predicted {:?}, {} of {} geometries disagree, {} with U2 >= 0 [{}]",
                c.case.plate,
                c.case.alignment,
                c.predicted,
                c.sign_mismatches,
                c.geometries,
                c.u2_violations,
                if c.passed() { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Random nonretarded geometry of the given alignment; all lengths lie in
/// `[1e-4, 5e-3]` so that `l₊` stays well inside the short-range regime of
/// unit atoms.
pub fn random_geometry(alignment: Alignment, rng: &mut impl Rng) -> Result<PlanarGeometry> {
    let mut draw = || 10f64.powf(rng.gen_range(-4.0..(5e-3f64).log10()));
    match alignment {
        Alignment::Parallel => PlanarGeometry::parallel(draw(), draw()),
        Alignment::Vertical => {
            let (a, b) = (draw(), draw());
            if a == b {
                PlanarGeometry::vertical(a, 2.0 * b)
            } else {
                PlanarGeometry::vertical(a, b)
            }
        }
    }
}

/// Nonretarded closed form for two unit electric atoms.
pub fn closed_form_evaluator(
    geom: &PlanarGeometry,
    plate: PlateKind,
) -> Result<PotentialBreakdown> {
    let a = ResonanceAtom::unit_electric();
    perfect_nonretarded_closed(
        geom,
        &a,
        &a,
        plate,
        &RegimeGuard::default(),
        &QuadSpec::default(),
    )
}

/// Compares the predicted `U⁽¹⁾` signs against `evaluate` on `per_case`
/// seeded random geometries per image-sign case.
pub fn verify_against_closed_forms<F>(
    evaluate: F,
    per_case: usize,
    seed: u64,
) -> Result<ImageReport>
where
    F: Fn(&PlanarGeometry, PlateKind) -> Result<PotentialBreakdown>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(4);
    for case in ImageCase::ALL {
        let predicted = predict_u1_sign(case);
        let mut sign_mismatches = 0;
        let mut u2_violations = 0;
        for _ in 0..per_case {
            let g = random_geometry(case.alignment, &mut rng)?;
            let p = evaluate(&g, case.plate)?;
            if Sign::of(p.u1) != Some(predicted) {
                sign_mismatches += 1;
            }
            if p.u2 >= 0.0 {
                u2_violations += 1;
            }
        }
        checks.push(ImageCheck {
            case,
            predicted,
            geometries: per_case,
            sign_mismatches,
            u2_violations,
            explanation: explain(case).to_string(),
        });
    }
    Ok(ImageReport { checks })
}
