//! Normalization conventions, beam parameters, screening and material presets.
//!
//! Conventions used throughout the crate:
//!
//! * energies in `E_p = ħω_p`, with the eigenvalue `E = (γ² − μ)/2` and the
//!   chemical potential `μ = μ0 / (2 E_p)`;
//! * wavenumbers in `k_p = √(2 m E_p)/ħ`, positions in `1/k_p`;
//! * speeds in `v_p = ħ k_p / m`, so the drive wavenumber equals the speed,
//!   `k_d = γ`;
//! * temperatures in `T_p = E_p / k_B`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::specfun::{self, FermiOrder, SpecfunError};

/// CODATA 2018 values, SI units.
pub mod units {
    pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
    pub const HBAR: f64 = 1.054_571_817e-34;
    pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
    pub const BOLTZMANN: f64 = 1.380_649e-23;
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid beam parameter {field} = {value}")]
    InvalidBeam { field: &'static str, value: f64 },
    #[error("invalid material {name}: {field} = {value} must be positive")]
    InvalidMaterial {
        name: String,
        field: &'static str,
        value: f64,
    },
    #[error("fractional temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),
    #[error("unknown material '{0}'")]
    UnknownMaterial(String),
    #[error("unknown screening convention '{0}'")]
    UnknownConvention(String),
    #[error("material config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("screening evaluation failed: {0}")]
    Screening(#[from] SpecfunError),
}

impl ModelError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::InvalidBeam { .. } => "model::InvalidBeam",
            Self::InvalidMaterial { .. } => "model::InvalidMaterial",
            Self::NonPositiveTemperature(_) => "model::NonPositiveTemperature",
            Self::UnknownMaterial(_) => "model::UnknownMaterial",
            Self::UnknownConvention(_) => "model::UnknownConvention",
            Self::Config { .. } => "model::Config",
            Self::Screening(_) => "model::Screening",
        }
    }
}

pub type Result<T> = std::result::Result<T, ModelError>;

/// Which chemical potential enters the screening formula.
///
/// * `Primary`: the normalized `μ = μ0/(2E_p)`.
/// * `PaperCompat`: `μ0` expressed in eV, used as a bare number. This is the
///   only reading that reproduces the published screening values
///   (0.25317 for Al, 0.36951 for Ag at `θ = 0.1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum ScreeningConvention {
    #[default]
    Primary,
    PaperCompat,
}

impl ScreeningConvention {
    pub fn label(self) -> &'static str {
        match self {
            Self::Primary => "primary",
            Self::PaperCompat => "paper-compat",
        }
    }

    /// Chemical potential fed to [`screening_parameter`] for `material`.
    pub fn screening_mu(self, material: &Material) -> f64 {
        match self {
            Self::Primary => material.normalized_mu(),
            Self::PaperCompat => material.mu0_ev(),
        }
    }
}

impl fmt::Display for ScreeningConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ScreeningConvention {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "primary" => Ok(Self::Primary),
            "paper-compat" | "paper_compat" | "papercompat" => Ok(Self::PaperCompat),
            other => Err(ModelError::UnknownConvention(other.to_string())),
        }
    }
}

/// Screening wavenumber `ξ = K/k_p` from
/// `ξ² = (1/2θ) Li_{1/2}(−e^{μ/θ}) / Li_{3/2}(−e^{μ/θ})`.
pub fn screening_parameter(mu: f64, theta: f64) -> Result<f64> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(ModelError::NonPositiveTemperature(theta));
    }
    let point = specfun::DegeneracyPoint::from_normalized(mu, theta)?;
    let eta = point.eta();
    // both polylogs reduce to −e^η far in the classical tail
    let ratio = if eta < -700.0 {
        1.0
    } else {
        let lower = specfun::polylog_neg_exp(FermiOrder::MINUS_HALF, eta)?;
        let upper = specfun::polylog_neg_exp(FermiOrder::HALF, eta)?;
        lower / upper
    };
    Ok((ratio / (2.0 * theta)).sqrt())
}

/// Host metal: equilibrium chemical potential and plasmon energy, both in eV.
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    name: String,
    mu0_ev: f64,
    ep_ev: f64,
}

impl Material {
    pub fn new(name: impl Into<String>, mu0_ev: f64, ep_ev: f64) -> Result<Self> {
        let name = name.into();
        for (field, value) in [("mu0_eV", mu0_ev), ("Ep_eV", ep_ev)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(ModelError::InvalidMaterial { name, field, value });
            }
        }
        Ok(Self { name, mu0_ev, ep_ev })
    }

    pub fn aluminium() -> Self {
        Self {
            name: "Al".into(),
            mu0_ev: 11.7,
            ep_ev: 15.0,
        }
    }

    pub fn silver() -> Self {
        Self {
            name: "Ag".into(),
            mu0_ev: 5.49,
            ep_ev: 3.76,
        }
    }

    pub fn presets() -> Vec<Self> {
        vec![Self::aluminium(), Self::silver()]
    }

    /// Built-in preset by name (`Al`, `aluminium`, `aluminum`, `Ag`, `silver`).
    pub fn preset(name: &str) -> Result<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "al" | "aluminium" | "aluminum" => Ok(Self::aluminium()),
            "ag" | "silver" => Ok(Self::silver()),
            _ => Err(ModelError::UnknownMaterial(name.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mu0_ev(&self) -> f64 {
        self.mu0_ev
    }

    pub fn ep_ev(&self) -> f64 {
        self.ep_ev
    }

    /// `μ = μ0 / (2 E_p)`
    pub fn normalized_mu(&self) -> f64 {
        self.mu0_ev / (2.0 * self.ep_ev)
    }

    pub fn scales(&self) -> MaterialScales {
        material_scales(self)
    }
}

/// Parses `key=value` material definitions. A `name=` line opens a new block;
/// `mu0_eV` and `Ep_eV` must follow before the next block. `#` starts a
/// comment, blank lines are ignored.
pub fn parse_materials(text: &str) -> Result<Vec<Material>> {
    struct Pending {
        name: String,
        line: usize,
        mu0: Option<f64>,
        ep: Option<f64>,
    }

    fn finish(p: Pending) -> Result<Material> {
        let missing = |what: &str| ModelError::Config {
            line: p.line,
            message: format!("material '{}' is missing {what}", p.name),
        };
        let mu0 = p.mu0.ok_or_else(|| missing("mu0_eV"))?;
        let ep = p.ep.ok_or_else(|| missing("Ep_eV"))?;
        Material::new(p.name, mu0, ep)
    }

    let mut out = Vec::new();
    let mut current: Option<Pending> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ModelError::Config {
            line: line_no,
            message: format!("expected key=value, found '{line}'"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let number = || {
            value.parse::<f64>().map_err(|_| ModelError::Config {
                line: line_no,
                message: format!("'{value}' is not a number"),
            })
        };
        match key {
            "name" => {
                if let Some(p) = current.take() {
                    out.push(finish(p)?);
                }
                if value.is_empty() {
                    return Err(ModelError::Config {
                        line: line_no,
                        message: "empty material name".into(),
                    });
                }
                current = Some(Pending {
                    name: value.to_string(),
                    line: line_no,
                    mu0: None,
                    ep: None,
                });
            }
            "mu0_eV" | "mu0_ev" | "Ep_eV" | "ep_ev" => {
                let p = current.as_mut().ok_or_else(|| ModelError::Config {
                    line: line_no,
                    message: format!("'{key}' before any name= line"),
                })?;
                let v = number()?;
                if key.starts_with("mu0") {
                    p.mu0 = Some(v);
                } else {
                    p.ep = Some(v);
                }
            }
            other => {
                return Err(ModelError::Config {
                    line: line_no,
                    message: format!("unknown key '{other}'"),
                })
            }
        }
    }
    if let Some(p) = current.take() {
        out.push(finish(p)?);
    }
    Ok(out)
}

/// Plasmon scales of a material, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialScales {
    /// `k_p = √(2 m E_p)/ħ` [1/m]
    pub k_p: f64,
    /// `v_p = ħ k_p / m` [m/s]
    pub v_p: f64,
    /// `T_p = E_p / k_B` [K]
    pub t_p: f64,
    /// `ω_p = E_p / ħ` [1/s]
    pub omega_p: f64,
}

pub fn material_scales(material: &Material) -> MaterialScales {
    use units::*;
    let ep = material.ep_ev * ELEMENTARY_CHARGE;
    let k_p = (2.0 * ELECTRON_MASS * ep).sqrt() / HBAR;
    MaterialScales {
        k_p,
        v_p: HBAR * k_p / ELECTRON_MASS,
        t_p: ep / BOLTZMANN,
        omega_p: ep / HBAR,
    }
}

/// `√(2 E_p / m)`, the same speed as `ħ k_p / m` reached through the energy.
pub fn plasmon_speed_from_energy(material: &Material) -> f64 {
    use units::*;
    (2.0 * material.ep_ev * ELEMENTARY_CHARGE / ELECTRON_MASS).sqrt()
}

/// Normalized beam state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamParameters {
    gamma: f64,
    mu: f64,
    theta: Option<f64>,
    xi: f64,
    u0: f64,
}

impl BeamParameters {
    /// Beam with an explicitly prescribed screening `ξ`.
    pub fn new(gamma: f64, mu: f64, xi: f64, u0: f64) -> Result<Self> {
        let check = |field, value: f64, ok: bool| {
            if ok && value.is_finite() {
                Ok(())
            } else {
                Err(ModelError::InvalidBeam { field, value })
            }
        };
        check("gamma", gamma, gamma >= 0.0)?;
        check("mu", mu, true)?;
        check("xi", xi, xi >= 0.0)?;
        check("u0", u0, true)?;
        Ok(Self {
            gamma,
            mu,
            theta: None,
            xi,
            u0,
        })
    }

    /// Beam whose screening follows from `(μ, θ)`.
    pub fn screened(gamma: f64, mu: f64, theta: f64, u0: f64) -> Result<Self> {
        let xi = screening_parameter(mu, theta)?;
        Self::new(gamma, mu, xi, u0)?.with_theta(theta)
    }

    /// Records the temperature the screening was derived from.
    pub fn with_theta(mut self, theta: f64) -> Result<Self> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(ModelError::NonPositiveTemperature(theta));
        }
        self.theta = Some(theta);
        Ok(self)
    }

    pub fn with_gamma(self, gamma: f64) -> Result<Self> {
        Self::new(gamma, self.mu, self.xi, self.u0).map(|b| Self {
            theta: self.theta,
            ..b
        })
    }

    pub fn with_xi(self, xi: f64) -> Result<Self> {
        Self::new(self.gamma, self.mu, xi, self.u0).map(|b| Self {
            theta: self.theta,
            ..b
        })
    }

    pub fn with_u0(self, u0: f64) -> Result<Self> {
        Self::new(self.gamma, self.mu, self.xi, u0).map(|b| Self {
            theta: self.theta,
            ..b
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn theta(&self) -> Option<f64> {
        self.theta
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn u0(&self) -> f64 {
        self.u0
    }

    /// Drive (de Broglie) wavenumber, identical to the speed in these units.
    pub fn kd(&self) -> f64 {
        self.gamma
    }

    /// `E = (γ² − μ)/2`
    pub fn energy(&self) -> f64 {
        0.5 * (self.gamma * self.gamma - self.mu)
    }

    /// `E_K = γ²`
    pub fn kinetic_energy(&self) -> f64 {
        self.gamma * self.gamma
    }
}

/// Beam bound to a host material.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialBeam {
    pub beam: BeamParameters,
    pub scales: MaterialScales,
    pub convention: ScreeningConvention,
}

pub fn beam_from_material(
    material: &Material,
    v_fraction: f64,
    theta: f64,
    convention: ScreeningConvention,
    u0: f64,
) -> Result<MaterialBeam> {
    let material = Material::new(material.name.clone(), material.mu0_ev, material.ep_ev)?;
    if !(v_fraction >= 0.0) || !v_fraction.is_finite() {
        return Err(ModelError::InvalidBeam {
            field: "gamma",
            value: v_fraction,
        });
    }
    let xi = screening_parameter(convention.screening_mu(&material), theta)?;
    let beam = BeamParameters::new(v_fraction, material.normalized_mu(), xi, u0)?.with_theta(theta)?;
    Ok(MaterialBeam {
        beam,
        scales: material.scales(),
        convention,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_mu_of_presets() {
        assert!((Material::aluminium().normalized_mu() - 0.39).abs() < 1e-15);
        assert!((Material::silver().normalized_mu() - 0.730_053_191_489_361_7).abs() < 1e-12);
    }

    #[test]
    fn aluminium_scales() {
        let s = Material::aluminium().scales();
        assert!((s.k_p / 1.984e10 - 1.0).abs() < 1e-3, "{}", s.k_p);
        assert!((s.v_p / 2.297e6 - 1.0).abs() < 1e-3, "{}", s.v_p);
        assert!((s.t_p / 1.7407e5 - 1.0).abs() < 1e-3, "{}", s.t_p);
        let alt = plasmon_speed_from_energy(&Material::aluminium());
        assert!((alt / s.v_p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn screening_limits() {
        let theta = 0.2;
        let classical = screening_parameter(-20.0 * theta, theta).unwrap();
        assert!((classical * (2.0 * theta).sqrt() - 1.0).abs() < 1e-6);
        let degenerate = screening_parameter(0.39, 0.01).unwrap();
        let limit = (3.0 / (4.0 * 0.39f64)).sqrt();
        assert!((degenerate / limit - 1.0).abs() < 1e-3, "{degenerate} vs {limit}");
        assert!(screening_parameter(0.1, 0.0).is_err());
    }

    #[test]
    fn paper_compat_values() {
        let al = screening_parameter(
            ScreeningConvention::PaperCompat.screening_mu(&Material::aluminium()),
            0.1,
        )
        .unwrap();
        let ag = screening_parameter(
            ScreeningConvention::PaperCompat.screening_mu(&Material::silver()),
            0.1,
        )
        .unwrap();
        assert!((al - 0.25317).abs() < 1e-5, "{al}");
        assert!((ag - 0.36951).abs() < 1e-5, "{ag}");
    }

    #[test]
    fn beam_identities() {
        let b = BeamParameters::new(1.7, 0.39, 0.2, 0.1).unwrap();
        assert_eq!(b.kd(), b.gamma());
        assert!((b.energy() - (1.7 * 1.7 - 0.39) / 2.0).abs() < 1e-15);
        assert!(BeamParameters::new(-1.0, 0.0, 0.0, 0.0).is_err());
        assert!(BeamParameters::new(1.0, 0.0, -0.1, 0.0).is_err());
        let zero = beam_from_material(
            &Material::aluminium(),
            0.0,
            0.1,
            ScreeningConvention::Primary,
            0.1,
        )
        .unwrap();
        assert_eq!(zero.beam.kd(), 0.0);
        assert!((zero.beam.mu() - 0.39).abs() < 1e-15);
    }

    #[test]
    fn config_parsing() {
        let text = "# hosts\nname = Cu\nmu0_eV = 7.0\nEp_eV = 10.8 # bulk\n\nname=Au\nmu0_eV=5.53\nEp_eV=9.0\n";
        let mats = parse_materials(text).unwrap();
        assert_eq!(mats.len(), 2);
        assert_eq!(mats[0].name(), "Cu");
        assert_eq!(mats[1].ep_ev(), 9.0);

        let err = parse_materials("name=X\nmu0_eV=1\n").unwrap_err();
        assert!(matches!(err, ModelError::Config { line: 1, .. }));
        let err = parse_materials("mu0_eV=1\n").unwrap_err();
        assert!(matches!(err, ModelError::Config { line: 1, .. }));
        let err = parse_materials("name=X\nmu0_eV=-1\nEp_eV=2\n").unwrap_err();
        assert!(matches!(err, ModelError::InvalidMaterial { .. }));
    }

    #[test]
    fn convention_round_trip() {
        for c in [ScreeningConvention::Primary, ScreeningConvention::PaperCompat] {
            assert_eq!(c.label().parse::<ScreeningConvention>().unwrap(), c);
        }
        assert!("other".parse::<ScreeningConvention>().is_err());
    }
}
