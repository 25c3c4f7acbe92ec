//! Atom and medium response functions on the imaginary frequency axis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomKind {
    /// Electric dipole polarizable.
    Electric,
    /// Magnetic dipole magnetizable.
    Magnetic,
}

/// Single-resonance atom, `α(iu) = α0 ω10² / (ω10² + u²)`.
///
/// Magnetizable atoms use the same functional form for `β(iu)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceAtom {
    pub omega10: f64,
    #[serde(default = "default_alpha0")]
    pub alpha0: f64,
    #[serde(default = "default_atom_kind")]
    pub kind: AtomKind,
}

fn default_alpha0() -> f64 {
    1.0
}

fn default_atom_kind() -> AtomKind {
    AtomKind::Electric
}

impl ResonanceAtom {
    pub fn new(omega10: f64, alpha0: f64, kind: AtomKind) -> Result<Self> {
        let atom = ResonanceAtom {
            omega10,
            alpha0,
            kind,
        };
        atom.validate()?;
        Ok(atom)
    }

    /// Unit electric atom with `ω10 = α0 = 1`.
    pub fn unit_electric() -> Self {
        ResonanceAtom {
            omega10: 1.0,
            alpha0: 1.0,
            kind: AtomKind::Electric,
        }
    }

    pub fn unit_magnetic() -> Self {
        ResonanceAtom {
            kind: AtomKind::Magnetic,
            ..Self::unit_electric()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega10.is_finite() && self.omega10 > 0.0) {
            return Err(Error::domain(format!(
                "atom resonance frequency must be positive, got {}",
                self.omega10
            )));
        }
        if !(self.alpha0.is_finite() && self.alpha0 > 0.0) {
            return Err(Error::domain(format!(
                "atom static response must be positive, got {}",
                self.alpha0
            )));
        }
        Ok(())
    }

    /// Response at imaginary frequency `iu`.
    pub fn response_iu(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0) {
            return Err(Error::domain(format!(
                "imaginary frequency must be >= 0, got {u}"
            )));
        }
        Ok(self.at(u))
    }

    /// Unchecked evaluation for use inside integrands.
    #[inline]
    pub(crate) fn at(&self, u: f64) -> f64 {
        let w2 = self.omega10 * self.omega10;
        self.alpha0 * w2 / (w2 + u * u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MediumKind {
    Electric,
    Magnetic,
    Vacuum,
}

/// Lorentz oscillator, `1 + ωP² / (ωT² + u² + uγ)` at `ω = iu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzMedium {
    pub omega_p: f64,
    pub omega_t: f64,
    #[serde(default)]
    pub gamma: f64,
    pub kind: MediumKind,
}

impl LorentzMedium {
    pub fn new(omega_p: f64, omega_t: f64, gamma: f64, kind: MediumKind) -> Result<Self> {
        let m = LorentzMedium {
            omega_p,
            omega_t,
            gamma,
            kind,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn vacuum() -> Self {
        LorentzMedium {
            omega_p: 0.0,
            omega_t: 1.0,
            gamma: 0.0,
            kind: MediumKind::Vacuum,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_t.is_finite() && self.omega_t > 0.0) {
            return Err(Error::domain(format!(
                "transverse resonance frequency must be positive, got {}",
                self.omega_t
            )));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::domain(format!(
                "damping must be >= 0, got {}",
                self.gamma
            )));
        }
        if !(self.omega_p.is_finite() && self.omega_p >= 0.0) {
            return Err(Error::domain(format!(
                "plasma frequency must be >= 0, got {}",
                self.omega_p
            )));
        }
        if self.kind == MediumKind::Vacuum && self.omega_p != 0.0 {
            return Err(Error::domain(
                "vacuum medium requires a zero plasma frequency",
            ));
        }
        Ok(())
    }

    pub fn response_iu(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0) {
            return Err(Error::domain(format!(
                "imaginary frequency must be >= 0, got {u}"
            )));
        }
        Ok(self.at(u))
    }

    #[inline]
    pub(crate) fn at(&self, u: f64) -> f64 {
        if self.omega_p == 0.0 {
            return 1.0;
        }
        1.0 + self.omega_p * self.omega_p / (self.omega_t * self.omega_t + u * u + u * self.gamma)
    }

    /// Static value `1 + ωP²/ωT²`.
    pub fn static_value(&self) -> f64 {
        self.at(0.0)
    }
}

/// `ε(iu)` of an electric (or vacuum) medium.
pub fn permittivity_iu(m: &LorentzMedium, u: f64) -> Result<f64> {
    m.response_iu(u)
}

/// `μ(iu)` of a magnetic (or vacuum) medium.
pub fn permeability_iu(m: &LorentzMedium, u: f64) -> Result<f64> {
    m.response_iu(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn reference_dielectric() -> LorentzMedium {
        LorentzMedium::new(3.0, 1.0, 0.001, MediumKind::Electric).unwrap()
    }

    #[test]
    fn atom_examples() {
        let a = ResonanceAtom::unit_electric();
        assert_eq!(a.response_iu(0.0).unwrap(), 1.0);
        assert_eq!(a.response_iu(1.0).unwrap(), 0.5);
        assert!((a.response_iu(3.0).unwrap() - 0.1).abs() < 1e-15);
        assert!(a.response_iu(-1.0).is_err());
    }

    #[test]
    fn medium_examples() {
        assert_eq!(LorentzMedium::vacuum().response_iu(7.0).unwrap(), 1.0);
        assert_eq!(reference_dielectric().response_iu(0.0).unwrap(), 10.0);
        let undamped = LorentzMedium::new(3.0, 1.0, 0.0, MediumKind::Electric).unwrap();
        assert_eq!(permittivity_iu(&undamped, 1.0).unwrap(), 5.5);
        assert!(permeability_iu(&undamped, -0.1).is_err());
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(ResonanceAtom::new(0.0, 1.0, AtomKind::Electric).is_err());
        assert!(ResonanceAtom::new(1.0, -1.0, AtomKind::Electric).is_err());
        assert!(LorentzMedium::new(1.0, 0.0, 0.0, MediumKind::Electric).is_err());
        assert!(LorentzMedium::new(1.0, 1.0, -0.1, MediumKind::Electric).is_err());
        assert!(LorentzMedium::new(1.0, 1.0, 0.0, MediumKind::Vacuum).is_err());
    }

    #[test]
    fn high_frequency_tail() {
        let m = reference_dielectric();
        let u = 100.0 * m.omega_t;
        let ratio = (m.at(u) - 1.0) / (m.omega_p * m.omega_p / (u * u));
        assert!((ratio - 1.0).abs() < 0.01, "ratio {ratio}");
    }

    proptest! {
        #[test]
        fn atom_response_decreasing(w in 0.01f64..100.0, a0 in 0.01f64..100.0,
                                    u1 in 0.0f64..1e3, du in 1e-6f64..1e3) {
            let atom = ResonanceAtom::new(w, a0, AtomKind::Electric).unwrap();
            let (r1, r2) = (atom.at(u1), atom.at(u1 + du));
            prop_assert!(r2 < r1);
            prop_assert!(r1 > 0.0 && r1 <= a0);
        }

        #[test]
        fn medium_response_decreasing(wp in 0.01f64..10.0, wt in 0.01f64..10.0, g in 0.0f64..1.0,
                                      u1 in 0.0f64..1e3, du in 1e-6f64..1e3) {
            let m = LorentzMedium::new(wp, wt, g, MediumKind::Electric).unwrap();
            let (e1, e2) = (m.at(u1), m.at(u1 + du));
            prop_assert!(e2 < e1);
            prop_assert!(e2 >= 1.0);
        }
    }
}
