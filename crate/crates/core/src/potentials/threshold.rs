use serde::{Deserialize, Serialize};

use super::closed_forms::{perfect_nonretarded_parts, perfect_retarded_parts};
use crate::error::{Error, Result};
use crate::greens::{PlanarGeometry, PlateKind};

/// Vertical configurations whose plate correction `U⁽¹⁾ + U⁽²⁾` changes sign
/// as atom B moves away from the plate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdCase {
    RetardedConductingVertical,
    NonretardedPermeableVertical,
}

const BRACKET: (f64, f64) = (1.01, 100.0);
const SCAN_POINTS: usize = 400;
const ROOT_TOL: f64 = 1e-4;

/// `(U⁽¹⁾ + U⁽²⁾)/|U⁽⁰⁾|` from the perfect-plate closed forms at
/// `z_A = 1`, `z_B = t`.
pub fn threshold_function(case: ThresholdCase, t: f64) -> Result<f64> {
    if !(t > 1.0 && t.is_finite()) {
        return Err(Error::domain(format!(
            "height ratio must exceed 1, got {t}"
        )));
    }
    let geom = PlanarGeometry::vertical(1.0, t)?;
    let [u0, u1, u2] = match case {
        ThresholdCase::RetardedConductingVertical => {
            perfect_retarded_parts(&geom, PlateKind::Conducting, 1.0)
        }
        ThresholdCase::NonretardedPermeableVertical => {
            perfect_nonretarded_parts(&geom, PlateKind::Permeable, 1.0)
        }
    };
    Ok((u1 + u2) / u0.abs())
}

/// Height ratio `z_B/z_A` at which the plate correction vanishes.
///
/// The bracket `[1.01, 100]` is scanned first; exactly one sign change must
/// be present, which is then bisected to `1e-4`.
pub fn threshold(case: ThresholdCase) -> Result<f64> {
    let (lo, hi) = BRACKET;
    let f = |t| threshold_function(case, t);
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    let ratio = hi / lo;
    let mut changes = Vec::new();
    let mut prev = (lo, f_lo);
    for i in 1..=SCAN_POINTS {
        let t = lo * ratio.powf(i as f64 / SCAN_POINTS as f64);
        let v = f(t)?;
        if v.signum() != prev.1.signum() {
            changes.push((prev.0, t));
        }
        prev = (t, v);
    }
    let (mut a, mut b) = match changes.as_slice() {
        [one] => *one,
        [] => return Err(Error::NotBracketed { lo, hi, f_lo, f_hi }),
        many => {
            return Err(Error::domain(format!(
                "expected one sign change of the plate correction on [{lo}, {hi}], found {}",
                many.len()
            )))
        }
    };
    let mut fa = f(a)?;
    while b - a > ROOT_TOL {
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn retarded_conducting_root() {
        let t = threshold(ThresholdCase::RetardedConductingVertical).unwrap();
        assert!((t - 4.90).abs() < 0.01, "{t}");
        // independent form of the same condition: (6/23)(t+1)⁶ = t⁵(t−1)
        let g = |t: f64| 6.0 / 23.0 * (t + 1.0).powi(6) - t.powi(5) * (t - 1.0);
        assert!(g(t - 1e-3) * g(t + 1e-3) < 0.0);
    }

    #[test]
    fn nonretarded_permeable_root() {
        let t = threshold(ThresholdCase::NonretardedPermeableVertical).unwrap();
        let exact = 1.0 + 2.0 / (1.5f64.cbrt() - 1.0);
        assert!((t - exact).abs() < 1e-4, "{t} vs {exact}");
        assert!((t - 14.82).abs() < 0.01);
    }

    #[test]
    fn sign_changes_across_the_root() {
        for case in [
            ThresholdCase::RetardedConductingVertical,
            ThresholdCase::NonretardedPermeableVertical,
        ] {
            let t = threshold(case).unwrap();
            let below = threshold_function(case, t * 0.99).unwrap();
            let above = threshold_function(case, t * 1.01).unwrap();
            assert!(below * above < 0.0);
        }
        // retarded conducting: correction positive (reduction) close to the plate
        assert!(threshold_function(ThresholdCase::RetardedConductingVertical, 2.0).unwrap() > 0.0);
        // nonretarded permeable: correction positive close to the plate, negative far from it
        assert!(
            threshold_function(ThresholdCase::NonretardedPermeableVertical, 2.0).unwrap() > 0.0
        );
        assert!(
            threshold_function(ThresholdCase::NonretardedPermeableVertical, 50.0).unwrap() < 0.0
        );
    }

    #[test]
    fn rejects_ratios_at_or_below_one() {
        assert!(threshold_function(ThresholdCase::RetardedConductingVertical, 1.0).is_err());
    }
}
