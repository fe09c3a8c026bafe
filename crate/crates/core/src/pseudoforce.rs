//! Closed-form solutions of the driven pseudoforce systems
//!
//! ```text
//! Ψ'' + 2ξΨ' + Φ + 2EΨ = U0 cos(k_d x)
//! Φ'' + 2ξΦ' − Ψ       = 0
//! ```
//!
//! for `ξ = 0` (undamped) and `ξ > 0` (screened), plus the scalar driven
//! oscillator `Ψ'' + k²Ψ = k0² cos(k_d x)`.

use num_complex::Complex64;
use thiserror::Error;

use crate::complex::{principal_sqrt, sinc_scaled};
use crate::dispersion::characteristic_wavenumbers;
use crate::field::{BoundaryConditions, FieldError, FieldEvaluator, FieldPoint, FieldSolution};
use crate::model::BeamParameters;

/// Distance `|k_d − k_j|` below which the undamped response is treated as
/// resonant.
pub const RESONANCE_TOL: f64 = 1e-8;

/// `|α|` below which the two branches are considered merged.
pub const DEGENERACY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PseudoforceError {
    #[error("drive k_d = {kd} is resonant with the {branch} branch k = {k}")]
    Resonant {
        branch: &'static str,
        kd: f64,
        k: Complex64,
    },
    #[error("branches merge (alpha = {0}); the closed form is degenerate at E = 1")]
    DegenerateEigenvalue(f64),
    #[error("undamped solution only supports zero boundary slopes, got dphi0 = {dphi0}, dpsi0 = {dpsi0}")]
    NonZeroSlope { dphi0: f64, dpsi0: f64 },
    #[error("steady state needs a drive; k_d = 0")]
    NoDrive,
    #[error("invalid input {field} = {value}")]
    InvalidInput { field: &'static str, value: f64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl PseudoforceError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Resonant { .. } => "pseudoforce::Resonant",
            Self::DegenerateEigenvalue(_) => "pseudoforce::DegenerateEigenvalue",
            Self::NonZeroSlope { .. } => "pseudoforce::NonZeroSlope",
            Self::NoDrive => "pseudoforce::NoDrive",
            Self::InvalidInput { .. } => "pseudoforce::InvalidInput",
            Self::Field(e) => e.name(),
        }
    }
}

pub type Result<T> = std::result::Result<T, PseudoforceError>;

/// Coefficients of the driven system: eigenvalue, screening, drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrivenSystem {
    pub energy: f64,
    pub xi: f64,
    pub u0: f64,
    pub kd: f64,
}

impl DrivenSystem {
    pub fn new(energy: f64, xi: f64, u0: f64, kd: f64) -> Result<Self> {
        for (field, value, ok) in [
            ("energy", energy, true),
            ("xi", xi, xi >= 0.0),
            ("u0", u0, true),
            ("kd", kd, kd >= 0.0),
        ] {
            if !ok || !value.is_finite() {
                return Err(PseudoforceError::InvalidInput { field, value });
            }
        }
        Ok(Self { energy, xi, u0, kd })
    }

    pub fn from_beam(beam: &BeamParameters) -> Self {
        Self {
            energy: beam.energy(),
            xi: beam.xi(),
            u0: beam.u0(),
            kd: beam.kd(),
        }
    }

    /// Same plasma state, different drive wavenumber.
    pub fn with_drive(self, kd: f64) -> Result<Self> {
        Self::new(self.energy, self.xi, self.u0, kd)
    }

    pub fn with_xi(self, xi: f64) -> Result<Self> {
        Self::new(self.energy, xi, self.u0, self.kd)
    }

    pub fn with_u0(self, u0: f64) -> Result<Self> {
        Self::new(self.energy, self.xi, u0, self.kd)
    }

    /// `s = −k_d² + 2iξk_d`, the operator `d²/dx² + 2ξ d/dx` on `e^{ik_d x}`.
    fn drive_symbol(&self) -> Complex64 {
        Complex64::new(-self.kd * self.kd, 2.0 * self.xi * self.kd)
    }

    /// `P = s² + 2Es + 1`; the steady response is `Φ = U0 e^{ik_d x}/P`.
    fn response_denominator(&self) -> Complex64 {
        let s = self.drive_symbol();
        s * s + 2.0 * self.energy * s + 1.0
    }
}

/// `Ψ(x) = k0² [cos kx − cos k_d x]/(k_d² − k²)` with `Ψ(0) = Ψ'(0) = 0`,
/// switching to `k0² x sin(kx)/(2k)` on resonance.
pub fn scalar_pseudoresonance(k: f64, k0: f64, kd: f64, x: &[f64]) -> Result<Vec<f64>> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(PseudoforceError::InvalidInput { field: "k", value: k });
    }
    crate::field::check_grid(x)?;
    let k0_sq = k0 * k0;
    Ok(if (kd - k).abs() <= RESONANCE_TOL {
        x.iter().map(|&x| k0_sq * x * (k * x).sin() / (2.0 * k)).collect()
    } else {
        let denom = kd * kd - k * k;
        x.iter()
            .map(|&x| k0_sq * ((k * x).cos() - (kd * x).cos()) / denom)
            .collect()
    })
}

/// One `cos(kx)` mode with complex coefficients for both fields.
#[derive(Debug, Clone, Copy, PartialEq)]
struct CosineMode {
    k: Complex64,
    phi: Complex64,
    psi: Complex64,
}

impl CosineMode {
    fn eval(&self, x: f64) -> FieldPoint {
        let c = (self.k * x).cos();
        FieldPoint {
            phi: (self.phi * c).re,
            psi: (self.psi * c).re,
        }
    }
}

/// Undamped solution with `Φ'(0) = Ψ'(0) = 0`: homogeneous part fixed by
/// `(Φ0, Ψ0)` plus the driven part that vanishes at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct UndampedSolution {
    homogeneous: [CosineMode; 2],
    driven: [CosineMode; 3],
}

fn check_resonance(kd: f64, k1: Complex64, k2: Complex64) -> Result<()> {
    for (branch, k) in [("wave-like", k1), ("particle-like", k2)] {
        if (k - kd).norm() <= RESONANCE_TOL {
            return Err(PseudoforceError::Resonant { branch, kd, k });
        }
    }
    Ok(())
}

impl UndampedSolution {
    /// Ignores `sys.xi`.
    pub fn new(sys: &DrivenSystem, bc: &BoundaryConditions) -> Result<Self> {
        check_bc(bc)?;
        if bc.dphi0 != 0.0 || bc.dpsi0 != 0.0 {
            return Err(PseudoforceError::NonZeroSlope {
                dphi0: bc.dphi0,
                dpsi0: bc.dpsi0,
            });
        }
        let pair = characteristic_wavenumbers(sys.energy);
        let (k1_sq, k2_sq) = (pair.k1_sq, pair.k2_sq);
        let two_alpha = k2_sq - k1_sq;
        if pair.alpha.norm() <= DEGENERACY_TOL {
            return Err(PseudoforceError::DegenerateEigenvalue(pair.alpha.norm()));
        }
        let (phi0, psi0) = (bc.phi0, bc.psi0);
        let homogeneous = [
            CosineMode {
                k: pair.k1,
                phi: (psi0 + k2_sq * phi0) / two_alpha,
                psi: -(phi0 + k1_sq * psi0) / two_alpha,
            },
            CosineMode {
                k: pair.k2,
                phi: -(psi0 + k1_sq * phi0) / two_alpha,
                psi: (phi0 + k2_sq * psi0) / two_alpha,
            },
        ];

        let driven = if sys.u0 == 0.0 {
            let zero = Complex64::new(0.0, 0.0);
            let k = Complex64::new(sys.kd, 0.0);
            [CosineMode { k, phi: zero, psi: zero }; 3]
        } else {
            check_resonance(sys.kd, pair.k1, pair.k2)?;
            let kd_sq = sys.kd * sys.kd;
            let denom = (kd_sq - k1_sq) * (kd_sq - k2_sq);
            let scale = sys.u0 / (two_alpha * denom);
            [
                CosineMode {
                    k: pair.k1,
                    phi: scale * (kd_sq - k2_sq),
                    psi: scale * (1.0 - kd_sq * k1_sq),
                },
                CosineMode {
                    k: pair.k2,
                    phi: -scale * (kd_sq - k1_sq),
                    psi: -scale * (1.0 - kd_sq * k2_sq),
                },
                CosineMode {
                    k: Complex64::new(sys.kd, 0.0),
                    phi: sys.u0 / denom,
                    psi: -sys.u0 * kd_sq / denom,
                },
            ]
        };
        Ok(Self {
            homogeneous,
            driven,
        })
    }
}

impl FieldEvaluator for UndampedSolution {
    fn component_labels(&self) -> &'static [&'static str] {
        &["homogeneous", "driven"]
    }

    fn component(&self, index: usize, x: f64) -> FieldPoint {
        let modes: &[CosineMode] = if index == 0 {
            &self.homogeneous
        } else {
            &self.driven
        };
        modes
            .iter()
            .map(|m| m.eval(x))
            .fold(FieldPoint::default(), |a, b| a + b)
    }
}

fn check_bc(bc: &BoundaryConditions) -> Result<()> {
    if bc.is_finite() {
        Ok(())
    } else {
        Err(PseudoforceError::InvalidInput {
            field: "boundary condition",
            value: f64::NAN,
        })
    }
}

/// Samples the undamped closed form of `beam` (screening ignored).
pub fn solve_undamped(beam: &BeamParameters, bc: &BoundaryConditions, x: &[f64]) -> Result<FieldSolution> {
    let sys = DrivenSystem::from_beam(beam).with_xi(0.0)?;
    Ok(UndampedSolution::new(&sys, bc)?.sample(x)?)
}

/// Shifted oscillation wavenumbers and resonance denominators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedCoefficients {
    /// `√(k_j² − ξ²)`, complex when `ξ > k_j`.
    pub beta1: Complex64,
    pub beta2: Complex64,
    /// `|k_d² − k_j² − 2ik_dξ|²`
    pub eta1: f64,
    pub eta2: f64,
}

pub fn damped_coefficients(sys: &DrivenSystem) -> DampedCoefficients {
    let pair = characteristic_wavenumbers(sys.energy);
    let shift = sys.xi * sys.xi;
    let s = sys.drive_symbol();
    DampedCoefficients {
        beta1: principal_sqrt(pair.k1_sq - shift),
        beta2: principal_sqrt(pair.k2_sq - shift),
        eta1: (s + pair.k1_sq).norm_sqr(),
        eta2: (s + pair.k2_sq).norm_sqr(),
    }
}

/// `e^{−ξx}[a cos βx + b sin(βx)/β]` in `Φ`, times `−k²` in `Ψ`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct DecayingMode {
    beta: Complex64,
    k_sq: Complex64,
    a: Complex64,
    b: Complex64,
}

impl DecayingMode {
    fn eval(&self, xi: f64, x: f64) -> FieldPoint {
        let phi = (-xi * x).exp() * (self.a * (self.beta * x).cos() + self.b * sinc_scaled(self.beta, x));
        FieldPoint {
            phi: phi.re,
            psi: (-self.k_sq * phi).re,
        }
    }
}

/// Screened solution: decaying transient plus the persistent response at
/// the drive wavenumber, for arbitrary boundary values and slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct DampedSolution {
    xi: f64,
    kd: f64,
    modes: [DecayingMode; 2],
    /// `Φ_s = Re[steady_phi e^{ik_d x}]`
    steady_phi: Complex64,
    steady_psi: Complex64,
    coefficients: DampedCoefficients,
}

impl DampedSolution {
    pub fn new(sys: &DrivenSystem, bc: &BoundaryConditions) -> Result<Self> {
        check_bc(bc)?;
        let pair = characteristic_wavenumbers(sys.energy);
        if pair.alpha.norm() <= DEGENERACY_TOL {
            return Err(PseudoforceError::DegenerateEigenvalue(pair.alpha.norm()));
        }
        let denom = sys.response_denominator();
        let (steady_phi, steady_psi) = if sys.u0 == 0.0 {
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            if denom.norm() == 0.0 {
                check_resonance(sys.kd, pair.k1, pair.k2)?;
            }
            let a = sys.u0 / denom;
            (a, sys.drive_symbol() * a)
        };
        let ikd = Complex64::new(0.0, sys.kd);
        let d_phi = bc.phi0 - steady_phi.re;
        let d_psi = bc.psi0 - steady_psi.re;
        let d_dphi = bc.dphi0 - (ikd * steady_phi).re;
        let d_dpsi = bc.dpsi0 - (ikd * steady_psi).re;

        let (k1_sq, k2_sq) = (pair.k1_sq, pair.k2_sq);
        let two_alpha = k2_sq - k1_sq;
        let split = |value: f64, other: f64| {
            (
                (k2_sq * value + other) / two_alpha,
                -(k1_sq * value + other) / two_alpha,
            )
        };
        let (a1, a2) = split(d_phi, d_psi);
        let (s1, s2) = split(d_dphi, d_dpsi);
        let coefficients = damped_coefficients(sys);
        let modes = [
            DecayingMode {
                beta: coefficients.beta1,
                k_sq: k1_sq,
                a: a1,
                b: s1 + sys.xi * a1,
            },
            DecayingMode {
                beta: coefficients.beta2,
                k_sq: k2_sq,
                a: a2,
                b: s2 + sys.xi * a2,
            },
        ];
        Ok(Self {
            xi: sys.xi,
            kd: sys.kd,
            modes,
            steady_phi,
            steady_psi,
            coefficients,
        })
    }

    pub fn coefficients(&self) -> DampedCoefficients {
        self.coefficients
    }

    pub fn transient(&self, x: f64) -> FieldPoint {
        self.modes[0].eval(self.xi, x) + self.modes[1].eval(self.xi, x)
    }

    pub fn steady(&self, x: f64) -> FieldPoint {
        let phase = Complex64::from_polar(1.0, self.kd * x);
        FieldPoint {
            phi: (self.steady_phi * phase).re,
            psi: (self.steady_psi * phase).re,
        }
    }
}

impl FieldEvaluator for DampedSolution {
    fn component_labels(&self) -> &'static [&'static str] {
        &["transient", "steady"]
    }

    fn component(&self, index: usize, x: f64) -> FieldPoint {
        if index == 0 {
            self.transient(x)
        } else {
            self.steady(x)
        }
    }
}

/// Closed-form solution for either system, chosen by `ξ`.
#[derive(Debug, Clone, PartialEq)]
pub enum PseudoforceSolution {
    Undamped(UndampedSolution),
    Damped(DampedSolution),
}

impl PseudoforceSolution {
    /// `ξ = 0` goes to the undamped form (which requires zero slopes).
    pub fn new(sys: &DrivenSystem, bc: &BoundaryConditions) -> Result<Self> {
        if sys.xi == 0.0 {
            UndampedSolution::new(sys, bc).map(Self::Undamped)
        } else {
            DampedSolution::new(sys, bc).map(Self::Damped)
        }
    }
}

impl FieldEvaluator for PseudoforceSolution {
    fn component_labels(&self) -> &'static [&'static str] {
        match self {
            Self::Undamped(s) => s.component_labels(),
            Self::Damped(s) => s.component_labels(),
        }
    }

    fn component(&self, index: usize, x: f64) -> FieldPoint {
        match self {
            Self::Undamped(s) => s.component(index, x),
            Self::Damped(s) => s.component(index, x),
        }
    }
}

/// Samples the screened closed form of `beam`; delegates to the undamped
/// form when `ξ = 0`.
pub fn solve_damped(beam: &BeamParameters, bc: &BoundaryConditions, x: &[f64]) -> Result<FieldSolution> {
    let sys = DrivenSystem::from_beam(beam);
    Ok(PseudoforceSolution::new(&sys, bc)?.sample(x)?)
}

/// Persistent oscillation `Φ_s = amp_phi cos(k_d x − θ_φ)`,
/// `Ψ_s = amp_psi cos(k_d x − θ_ψ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyStateResponse {
    pub amp_phi: f64,
    pub amp_psi: f64,
    /// In `(−π, π]`.
    pub theta_phi: f64,
    pub theta_psi: f64,
    pub eta1: f64,
    pub eta2: f64,
}

fn wrap_phase(theta: f64) -> f64 {
    use std::f64::consts::PI;
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

pub fn steady_state_of(sys: &DrivenSystem) -> Result<SteadyStateResponse> {
    if sys.kd == 0.0 {
        return Err(PseudoforceError::NoDrive);
    }
    let coefficients = damped_coefficients(sys);
    let denom = sys.response_denominator();
    if denom.norm() == 0.0 {
        let pair = characteristic_wavenumbers(sys.energy);
        check_resonance(sys.kd, pair.k1, pair.k2)?;
    }
    let s = sys.drive_symbol();
    // U0/P = (|U0|/|P|) e^{−i(arg P − arg U0)}
    let sign_phase = if sys.u0 < 0.0 { std::f64::consts::PI } else { 0.0 };
    let theta_phi = wrap_phase(denom.arg() + sign_phase);
    let theta_psi = wrap_phase(denom.arg() + sign_phase - s.arg());
    let amp_phi = sys.u0.abs() / (coefficients.eta1 * coefficients.eta2).sqrt();
    Ok(SteadyStateResponse {
        amp_phi,
        amp_psi: amp_phi * s.norm(),
        theta_phi,
        theta_psi,
        eta1: coefficients.eta1,
        eta2: coefficients.eta2,
    })
}

pub fn steady_state(beam: &BeamParameters) -> Result<SteadyStateResponse> {
    steady_state_of(&DrivenSystem::from_beam(beam))
}

/// Drive wavenumbers in `[kd_lo, kd_hi]` where the closed-form steady
/// amplitude `U0/√(η1η2)` peaks, at fixed eigenvalue and screening.
pub fn predicted_resonances(energy: f64, xi: f64, kd_lo: f64, kd_hi: f64) -> Result<Vec<f64>> {
    if !(kd_lo >= 0.0 && kd_hi > kd_lo && kd_hi.is_finite()) {
        return Err(PseudoforceError::InvalidInput {
            field: "kd range",
            value: kd_hi - kd_lo,
        });
    }
    let base = DrivenSystem::new(energy, xi, 1.0, kd_lo)?;
    let gain = |kd: f64| -> f64 {
        let sys = DrivenSystem { kd, ..base };
        let c = damped_coefficients(&sys);
        1.0 / (c.eta1 * c.eta2).sqrt()
    };
    const SAMPLES: usize = 4000;
    let step = (kd_hi - kd_lo) / SAMPLES as f64;
    let values: Vec<f64> = (0..=SAMPLES).map(|i| gain(kd_lo + step * i as f64)).collect();
    let mut peaks = Vec::new();
    for i in 1..SAMPLES {
        if values[i] > values[i - 1] && values[i] >= values[i + 1] {
            let lo = kd_lo + step * (i - 1) as f64;
            peaks.push(golden_max(&gain, lo, lo + 2.0 * step));
        }
    }
    Ok(peaks)
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > 1e-13 * (1.0 + a.abs()) {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
