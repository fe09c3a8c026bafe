//! Plasmon dispersion, the dual characteristic wavenumbers and the four
//! complex-wavenumber regimes of a screened beam.
//!
//! With `K = k² + ξ²` the dispersion reads `K² − 2EK + 1 = 0`, so
//! `K_{1,2} = E ∓ α` with `α = √(E² − 1)` and `K_1 K_2 = 1`. The wave-like
//! branch is `k1 = √(K_1 − ξ²)`, the particle-like branch `k2 = √(K_2 − ξ²)`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::complex::principal_sqrt;
use crate::model::BeamParameters;

/// Tolerance on `|γ − γ_c|` below which a speed counts as on a regime edge.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DispersionError {
    #[error("dispersion is singular at k = xi = 0")]
    SingularInput,
    #[error("regime classification needs 0 <= xi < 1, got xi = {0}")]
    UnsupportedRegime(f64),
    #[error("regime closed forms need E >= -1, got E = {0}")]
    ClosedFormInvalid(f64),
    #[error("beam speed is zero; de Broglie coefficients are undefined")]
    ZeroSpeed,
    #[error("{0} is undefined for a complex particle-like wavenumber")]
    UndefinedQuantity(&'static str),
    #[error("invalid sampling range: {0}")]
    InvalidRange(String),
    #[error("invalid input {field} = {value}")]
    InvalidInput { field: &'static str, value: f64 },
}

impl DispersionError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::SingularInput => "dispersion::SingularInput",
            Self::UnsupportedRegime(_) => "dispersion::UnsupportedRegime",
            Self::ClosedFormInvalid(_) => "dispersion::ClosedFormInvalid",
            Self::ZeroSpeed => "dispersion::ZeroSpeed",
            Self::UndefinedQuantity(_) => "dispersion::UndefinedQuantity",
            Self::InvalidRange(_) => "dispersion::InvalidRange",
            Self::InvalidInput { .. } => "dispersion::InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, DispersionError>;

/// `E(k) = [1 + (k² + ξ²)²] / [2(k² + ξ²)]`
pub fn plasmon_energy(k: f64, xi: f64) -> Result<f64> {
    let big_k = k * k + xi * xi;
    if big_k == 0.0 {
        return Err(DispersionError::SingularInput);
    }
    Ok((1.0 + big_k * big_k) / (2.0 * big_k))
}

/// Minimum of the screened dispersion over `k ≥ 0`.
pub fn dispersion_gap(xi: f64) -> f64 {
    if xi >= 1.0 {
        let x2 = xi * xi;
        (1.0 + x2 * x2) / (2.0 * x2)
    } else {
        1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `γ < √μ`
    SubChemical,
    /// `√μ < γ < √(μ+2)`
    OscillatoryConjugate,
    /// `√(μ+2) < γ < √(μ + ξ² + ξ⁻²)`
    BothReal,
    /// `γ > √(μ + ξ² + ξ⁻²)`
    WaveEvanescent,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::SubChemical => "SubChemical",
            Regime::OscillatoryConjugate => "OscillatoryConjugate",
            Regime::BothReal => "BothReal",
            Regime::WaveEvanescent => "WaveEvanescent",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Speeds bounding the window where both branches are real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityWindow {
    /// `√μ`, below which the eigenvalue is negative.
    pub chemical: f64,
    /// `√(μ + 2)`
    pub low: f64,
    /// `√(μ + ξ² + ξ⁻²)`, infinite without screening.
    pub high: f64,
    /// No stable speeds at all (`ξ ≥ 1`).
    pub empty: bool,
}

impl StabilityWindow {
    pub fn width(&self) -> f64 {
        self.high - self.low
    }
}

pub fn critical_speeds(mu: f64, xi: f64) -> Result<StabilityWindow> {
    if !mu.is_finite() || mu < 0.0 {
        return Err(DispersionError::InvalidInput { field: "mu", value: mu });
    }
    if !xi.is_finite() || xi < 0.0 {
        return Err(DispersionError::InvalidInput { field: "xi", value: xi });
    }
    let low = (mu + 2.0).sqrt();
    let chemical = mu.sqrt();
    if xi >= 1.0 {
        return Ok(StabilityWindow {
            chemical,
            low,
            high: low,
            empty: true,
        });
    }
    let high = if xi == 0.0 {
        f64::INFINITY
    } else {
        (mu + xi * xi + 1.0 / (xi * xi)).sqrt()
    };
    Ok(StabilityWindow {
        chemical,
        low,
        high,
        empty: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeClass {
    pub regime: Regime,
    /// Speed was within [`BOUNDARY_TOL`] of the lower edge of `regime`.
    pub on_boundary: bool,
    pub window: StabilityWindow,
}

pub fn classify_regime(gamma: f64, mu: f64, xi: f64) -> Result<RegimeClass> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(DispersionError::InvalidInput {
            field: "gamma",
            value: gamma,
        });
    }
    if xi >= 1.0 {
        return Err(DispersionError::UnsupportedRegime(xi));
    }
    let window = critical_speeds(mu, xi)?;
    let edges = [
        (window.high, Regime::WaveEvanescent),
        (window.low, Regime::BothReal),
        (window.chemical, Regime::OscillatoryConjugate),
    ];
    for (edge, regime) in edges {
        if gamma >= edge - BOUNDARY_TOL {
            return Ok(RegimeClass {
                regime,
                on_boundary: (gamma - edge).abs() <= BOUNDARY_TOL,
                window,
            });
        }
    }
    Ok(RegimeClass {
        regime: Regime::SubChemical,
        on_boundary: false,
        window,
    })
}

/// The two branches of the (screened) dispersion at one eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavenumberPair {
    /// Wave-like branch.
    pub k1: Complex64,
    /// Particle-like branch.
    pub k2: Complex64,
    pub k1_sq: Complex64,
    pub k2_sq: Complex64,
    /// `√(E² − 1)`
    pub alpha: Complex64,
    pub xi: f64,
    /// `None` for unscreened queries by energy and for `ξ ≥ 1`.
    pub regime: Option<RegimeClass>,
}

/// `(K_1, K_2, α)` with `K_1 K_2 = 1`; the smaller root is taken as the
/// reciprocal of the larger to avoid cancellation.
fn dispersion_roots(energy: f64) -> (Complex64, Complex64, Complex64) {
    let e = Complex64::new(energy, 0.0);
    let alpha = principal_sqrt(Complex64::new(energy * energy - 1.0, 0.0));
    let plus = e + alpha;
    let minus = e - alpha;
    if plus.norm() >= minus.norm() {
        (plus.inv(), plus, alpha)
    } else {
        (minus, minus.inv(), alpha)
    }
}

/// Branches of the screened dispersion for eigenvalue `energy`.
pub fn screened_wavenumbers(energy: f64, xi: f64) -> WavenumberPair {
    let (big1, big2, alpha) = dispersion_roots(energy);
    let shift = xi * xi;
    let k1_sq = big1 - shift;
    let k2_sq = big2 - shift;
    WavenumberPair {
        k1: principal_sqrt(k1_sq),
        k2: principal_sqrt(k2_sq),
        k1_sq,
        k2_sq,
        alpha,
        xi,
        regime: None,
    }
}

/// Unscreened characteristic wavenumbers `k_{1,2} = √(E ∓ α)`.
pub fn characteristic_wavenumbers(energy: f64) -> WavenumberPair {
    screened_wavenumbers(energy, 0.0)
}

/// Wavenumbers of a beam, tagged with its regime when `ξ < 1`.
pub fn debroglie_wavenumbers(beam: &BeamParameters) -> WavenumberPair {
    let mut pair = screened_wavenumbers(beam.energy(), beam.xi());
    pair.regime = classify_regime(beam.gamma(), beam.mu(), beam.xi()).ok();
    pair
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeComponents {
    pub k1r: f64,
    pub k1i: f64,
    pub k2r: f64,
    pub k2i: f64,
    pub class: RegimeClass,
}

impl RegimeComponents {
    pub fn k1(&self) -> Complex64 {
        Complex64::new(self.k1r, self.k1i)
    }

    pub fn k2(&self) -> Complex64 {
        Complex64::new(self.k2r, self.k2i)
    }
}

/// Real and imaginary parts from the per-regime closed forms.
pub fn regime_components(gamma: f64, mu: f64, xi: f64) -> Result<RegimeComponents> {
    let class = classify_regime(gamma, mu, xi)?;
    let e = 0.5 * (gamma * gamma - mu);
    let shift = xi * xi;
    let (k1r, k1i, k2r, k2i) = match class.regime {
        Regime::SubChemical | Regime::OscillatoryConjugate => {
            if e < -1.0 {
                return Err(DispersionError::ClosedFormInvalid(e));
            }
            let s = (1.0 - e * e).max(0.0).sqrt();
            let r = ((e - shift).powi(2) + s * s).sqrt().sqrt();
            let phase = if class.regime == Regime::SubChemical {
                PI - (s / (shift - e)).atan()
            } else {
                s.atan2(e - shift)
            };
            let (re, im) = (r * (0.5 * phase).cos(), r * (0.5 * phase).sin());
            (re, -im, re, im)
        }
        Regime::BothReal => {
            let alpha = (e * e - 1.0).max(0.0).sqrt();
            (
                (e - shift - alpha).max(0.0).sqrt(),
                0.0,
                (e - shift + alpha).sqrt(),
                0.0,
            )
        }
        Regime::WaveEvanescent => {
            let alpha = (e * e - 1.0).max(0.0).sqrt();
            (
                0.0,
                (alpha - e + shift).max(0.0).sqrt(),
                (e - shift + alpha).sqrt(),
                0.0,
            )
        }
    };
    Ok(RegimeComponents {
        k1r,
        k1i,
        k2r,
        k2i,
        class,
    })
}

/// `χ_{1,2} = k_{1,2} / γ`, so that `k = χ p/ħ` in physical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeBroglieCoefficients {
    pub chi1: Complex64,
    pub chi2: Complex64,
}

pub fn debroglie_coefficients(beam: &BeamParameters) -> Result<DeBroglieCoefficients> {
    if beam.gamma() == 0.0 {
        return Err(DispersionError::ZeroSpeed);
    }
    let pair = screened_wavenumbers(beam.energy(), beam.xi());
    Ok(DeBroglieCoefficients {
        chi1: pair.k1 / beam.gamma(),
        chi2: pair.k2 / beam.gamma(),
    })
}

/// `δk/k = 1 − k2/γ`, for real particle-like wavenumbers only.
pub fn relative_difference(beam: &BeamParameters) -> Result<f64> {
    if beam.gamma() == 0.0 {
        return Err(DispersionError::ZeroSpeed);
    }
    let pair = screened_wavenumbers(beam.energy(), beam.xi());
    if pair.k2_sq.im != 0.0 || pair.k2_sq.re < 0.0 {
        return Err(DispersionError::UndefinedQuantity("relative wavenumber difference"));
    }
    Ok(1.0 - pair.k2.re / beam.gamma())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionCurve {
    /// `(k, E)` pairs with strictly increasing `k`.
    pub samples: Vec<(f64, f64)>,
    pub xi: f64,
}

impl DispersionCurve {
    /// Sample with the smallest energy.
    pub fn minimum(&self) -> (f64, f64) {
        self.samples
            .iter()
            .copied()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("curves have at least two samples")
    }
}

pub fn sample_dispersion(xi: f64, k_min: f64, k_max: f64, n_points: usize) -> Result<DispersionCurve> {
    if !(k_min >= 0.0) || !(k_max > k_min) || !k_max.is_finite() {
        return Err(DispersionError::InvalidRange(format!(
            "need 0 <= k_min < k_max, got [{k_min}, {k_max}]"
        )));
    }
    if n_points < 2 {
        return Err(DispersionError::InvalidRange(format!(
            "need at least 2 points, got {n_points}"
        )));
    }
    if !xi.is_finite() || xi < 0.0 {
        return Err(DispersionError::InvalidInput { field: "xi", value: xi });
    }
    let step = (k_max - k_min) / (n_points - 1) as f64;
    let samples = (0..n_points)
        .map(|i| {
            let k = if i + 1 == n_points {
                k_max
            } else {
                k_min + step * i as f64
            };
            plasmon_energy(k, xi).map(|e| (k, e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DispersionCurve { samples, xi })
}
