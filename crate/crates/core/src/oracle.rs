//! Independent numerical checks: fixed-step RK4 integration of the coupled
//! systems, a brute-force frequency-domain resonance scan and simple fits
//! of harmonic amplitude and decay rate.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use thiserror::Error;

use crate::field::{BoundaryConditions, FieldError, FieldSolution};
use crate::lattice::LatticeParameters;
use crate::model::BeamParameters;
use crate::parallel;
use crate::pseudoforce::DrivenSystem;

/// Largest sup-norm change tolerated when the step is halved.
pub const RICHARDSON_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid integrator setting {field} = {value}")]
    InvalidConfig { field: &'static str, value: f64 },
    #[error("invalid system: {0}")]
    InvalidSpec(String),
    #[error("step halving changed the solution by {difference:e} (limit {limit:e})")]
    Accuracy { difference: f64, limit: f64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl OracleError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::InvalidConfig { .. } => "oracle::InvalidConfig",
            Self::InvalidSpec(_) => "oracle::InvalidSpec",
            Self::Accuracy { .. } => "oracle::Accuracy",
            Self::Field(e) => e.name(),
        }
    }
}

pub type Result<T> = std::result::Result<T, OracleError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    Undamped,
    Damped,
    Lattice,
}

/// Right-hand side of
/// `Φ'' = Ψ − 2ξΦ' + Ug cos(qx)`, `Ψ'' = U0 cos(k_d x) − Φ − 2EΨ − 2ξΨ'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    pub kind: SystemKind,
    pub energy: f64,
    pub xi: f64,
    pub u0: f64,
    pub kd: f64,
    pub ug: f64,
    pub q: f64,
}

impl SystemSpec {
    pub fn undamped(beam: &BeamParameters) -> Self {
        Self {
            kind: SystemKind::Undamped,
            energy: beam.energy(),
            xi: 0.0,
            u0: beam.u0(),
            kd: beam.kd(),
            ug: 0.0,
            q: 0.0,
        }
    }

    pub fn damped(beam: &BeamParameters) -> Self {
        Self {
            kind: SystemKind::Damped,
            xi: beam.xi(),
            ..Self::undamped(beam)
        }
    }

    /// Lattice system driven at the `n`-th harmonic `q = nG`.
    pub fn lattice(beam: &BeamParameters, lat: &LatticeParameters, n: usize) -> Self {
        Self {
            kind: SystemKind::Lattice,
            ug: lat.ug(),
            q: n as f64 * lat.g(),
            ..Self::undamped(beam)
        }
    }

    pub fn from_driven(sys: &DrivenSystem) -> Self {
        Self {
            kind: if sys.xi == 0.0 {
                SystemKind::Undamped
            } else {
                SystemKind::Damped
            },
            energy: sys.energy,
            xi: sys.xi,
            u0: sys.u0,
            kd: sys.kd,
            ug: 0.0,
            q: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let values = [self.energy, self.xi, self.u0, self.kd, self.ug, self.q];
        if values.iter().any(|v| !v.is_finite()) {
            return Err(OracleError::InvalidSpec("non-finite coefficient".into()));
        }
        if self.xi < 0.0 {
            return Err(OracleError::InvalidSpec(format!("negative screening {}", self.xi)));
        }
        match self.kind {
            SystemKind::Undamped | SystemKind::Lattice if self.xi != 0.0 => Err(OracleError::InvalidSpec(
                format!("{:?} system must be unscreened", self.kind),
            )),
            SystemKind::Undamped | SystemKind::Damped if self.ug != 0.0 => {
                Err(OracleError::InvalidSpec("lattice drive on a beam-only system".into()))
            }
            _ => Ok(()),
        }
    }

    /// `d/dx (Φ, Φ', Ψ, Ψ')`
    fn rhs(&self, x: f64, y: &[f64; 4]) -> [f64; 4] {
        let [phi, dphi, psi, dpsi] = *y;
        [
            dphi,
            psi - 2.0 * self.xi * dphi + self.ug * (self.q * x).cos(),
            dpsi,
            self.u0 * (self.kd * x).cos() - phi - 2.0 * self.energy * psi - 2.0 * self.xi * dpsi,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    step: f64,
    x_end: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            step: 1e-3,
            x_end: 20.0,
        }
    }
}

impl IntegratorConfig {
    pub fn new(step: f64, x_end: f64) -> Result<Self> {
        if !(step > 0.0 && step <= 1e-2) {
            return Err(OracleError::InvalidConfig { field: "step", value: step });
        }
        if !(x_end > 0.0) || !x_end.is_finite() || x_end / step > 1e8 {
            return Err(OracleError::InvalidConfig {
                field: "x_end",
                value: x_end,
            });
        }
        Ok(Self { step, x_end })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn x_end(&self) -> f64 {
        self.x_end
    }

    fn steps(&self) -> usize {
        (self.x_end / self.step).round().max(1.0) as usize
    }
}

/// Classical RK4 with `n` equal steps on `[0, x_end]`, recording every
/// `stride`-th state.
fn rk4(spec: &SystemSpec, bc: &BoundaryConditions, x_end: f64, n: usize, stride: usize) -> FieldSolution {
    let h = x_end / n as f64;
    let mut y = [bc.phi0, bc.dphi0, bc.psi0, bc.dpsi0];
    let samples = n / stride + 1;
    let mut xs = Vec::with_capacity(samples);
    let mut phi = Vec::with_capacity(samples);
    let mut psi = Vec::with_capacity(samples);
    let record = |x: f64, y: &[f64; 4], xs: &mut Vec<f64>, phi: &mut Vec<f64>, psi: &mut Vec<f64>| {
        xs.push(x);
        phi.push(y[0]);
        psi.push(y[2]);
    };
    record(0.0, &y, &mut xs, &mut phi, &mut psi);
    let axpy = |y: &[f64; 4], k: &[f64; 4], s: f64| -> [f64; 4] {
        [y[0] + s * k[0], y[1] + s * k[1], y[2] + s * k[2], y[3] + s * k[3]]
    };
    for i in 0..n {
        let x = i as f64 * h;
        let k1 = spec.rhs(x, &y);
        let k2 = spec.rhs(x + 0.5 * h, &axpy(&y, &k1, 0.5 * h));
        let k3 = spec.rhs(x + 0.5 * h, &axpy(&y, &k2, 0.5 * h));
        let k4 = spec.rhs(x + h, &axpy(&y, &k3, h));
        for j in 0..4 {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        if (i + 1) % stride == 0 {
            record((i + 1) as f64 * h, &y, &mut xs, &mut phi, &mut psi);
        }
    }
    FieldSolution {
        x: xs,
        phi,
        psi,
        parts: Vec::new(),
    }
}

/// Integrates at a fixed step of roughly `step` without any accuracy check;
/// every step is recorded. Any step size is accepted.
pub fn integrate_fixed(spec: &SystemSpec, bc: &BoundaryConditions, step: f64, x_end: f64) -> Result<FieldSolution> {
    spec.validate()?;
    if !(step > 0.0 && x_end > 0.0 && step.is_finite() && x_end.is_finite()) {
        return Err(OracleError::InvalidConfig { field: "step", value: step });
    }
    let n = (x_end / step).round().max(1.0) as usize;
    Ok(rk4(spec, bc, x_end, n, 1))
}

/// Integrates with `cfg.step` and `cfg.step/2`, rejects the run if the two
/// disagree by more than [`RICHARDSON_TOL`], and returns the finer solution
/// sampled at the coarse grid.
pub fn integrate_system(spec: &SystemSpec, bc: &BoundaryConditions, cfg: &IntegratorConfig) -> Result<FieldSolution> {
    spec.validate()?;
    if !bc.is_finite() {
        return Err(OracleError::InvalidSpec("non-finite boundary condition".into()));
    }
    let n = cfg.steps();
    let runs = parallel::map(&[(n, 1usize), (2 * n, 2usize)], |&(steps, stride)| {
        rk4(spec, bc, cfg.x_end, steps, stride)
    });
    let difference = crate::field::sup_distance(&runs[0], &runs[1]);
    if !(difference <= RICHARDSON_TOL) {
        return Err(OracleError::Accuracy {
            difference,
            limit: RICHARDSON_TOL,
        });
    }
    Ok(runs.into_iter().nth(1).expect("two runs"))
}

/// Brute-force steady response at one drive wavenumber: solves the 2×2
/// complex system for the amplitudes of `e^{ik_d x}`.
pub fn driven_amplitude(energy: f64, xi: f64, u0: f64, kd: f64) -> (Complex64, Complex64) {
    let s = Complex64::new(-kd * kd, 2.0 * xi * kd);
    let one = Complex64::new(1.0, 0.0);
    // rows: (s + 2E)Ψ + Φ = U0 ; −Ψ + sΦ = 0, unknowns (Ψ, Φ)
    let m = Matrix2::new(s + 2.0 * energy, one, -one, s);
    let rhs = Vector2::new(Complex64::new(u0, 0.0), Complex64::new(0.0, 0.0));
    match m.lu().solve(&rhs) {
        Some(v) => (v[1], v[0]),
        None => (Complex64::new(f64::INFINITY, 0.0), Complex64::new(f64::INFINITY, 0.0)),
    }
}

/// Scan of the steady `Φ` amplitude over the drive wavenumber at a fixed
/// plasma state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceScan {
    pub energy: f64,
    pub xi: f64,
    pub u0: f64,
    pub kd_lo: f64,
    pub kd_hi: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonancePeak {
    pub kd: f64,
    pub amplitude: f64,
}

impl ResonanceScan {
    fn validate(&self) -> Result<()> {
        if !(self.xi > 0.0) || !self.xi.is_finite() {
            return Err(OracleError::InvalidSpec(format!(
                "resonance scan needs xi > 0, got {}",
                self.xi
            )));
        }
        if !(self.kd_lo >= 0.0 && self.kd_hi > self.kd_lo && self.kd_hi.is_finite()) {
            return Err(OracleError::InvalidSpec(format!(
                "invalid scan window [{}, {}]",
                self.kd_lo, self.kd_hi
            )));
        }
        if self.n_points < 3 {
            return Err(OracleError::InvalidSpec("scan needs at least 3 points".into()));
        }
        Ok(())
    }

    fn amplitude(&self, kd: f64) -> f64 {
        driven_amplitude(self.energy, self.xi, self.u0, kd).0.norm()
    }

    pub fn grid(&self) -> Vec<f64> {
        let step = (self.kd_hi - self.kd_lo) / (self.n_points - 1) as f64;
        (0..self.n_points).map(|i| self.kd_lo + step * i as f64).collect()
    }

    /// Sampled `(k_d, |Φ|)` curve.
    pub fn curve(&self) -> Result<Vec<(f64, f64)>> {
        self.validate()?;
        let grid = self.grid();
        Ok(parallel::map(&grid, |&kd| (kd, self.amplitude(kd))))
    }

    pub fn curve_sequential(&self) -> Result<Vec<(f64, f64)>> {
        self.validate()?;
        let grid = self.grid();
        Ok(parallel::map_sequential(&grid, |&kd| (kd, self.amplitude(kd))))
    }
}

/// Interior local maxima of the brute-force amplitude, refined by
/// golden-section search between the neighbouring samples.
pub fn scan_resonances(scan: &ResonanceScan) -> Result<Vec<ResonancePeak>> {
    let curve = scan.curve()?;
    Ok(peaks_of(scan, &curve))
}

pub fn scan_resonances_sequential(scan: &ResonanceScan) -> Result<Vec<ResonancePeak>> {
    let curve = scan.curve_sequential()?;
    Ok(peaks_of(scan, &curve))
}

fn peaks_of(scan: &ResonanceScan, curve: &[(f64, f64)]) -> Vec<ResonancePeak> {
    let f = |kd: f64| scan.amplitude(kd);
    curve
        .windows(3)
        .filter(|w| w[1].1 > w[0].1 && w[1].1 >= w[2].1)
        .map(|w| {
            let kd = crate::pseudoforce::golden_max(&f, w[0].0, w[2].0);
            ResonancePeak { kd, amplitude: f(kd) }
        })
        .collect()
}

/// Least-squares fit `y ≈ amp·cos(kx − phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicFit {
    pub amplitude: f64,
    pub phase: f64,
    /// RMS of the residual.
    pub residual: f64,
}

pub fn fit_harmonic(x: &[f64], y: &[f64], k: f64) -> Result<HarmonicFit> {
    if x.len() != y.len() || x.len() < 3 {
        return Err(OracleError::InvalidSpec("harmonic fit needs >= 3 matched samples".into()));
    }
    let (mut scc, mut scs, mut sss, mut syc, mut sys) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(y) {
        let (s, c) = (k * xi).sin_cos();
        scc += c * c;
        scs += c * s;
        sss += s * s;
        syc += yi * c;
        sys += yi * s;
    }
    let det = scc * sss - scs * scs;
    if det.abs() <= f64::EPSILON * scc * sss {
        return Err(OracleError::InvalidSpec("harmonic fit is ill-conditioned".into()));
    }
    let a = (syc * sss - sys * scs) / det;
    let b = (sys * scc - syc * scs) / det;
    let residual = (x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| (yi - a * (k * xi).cos() - b * (k * xi).sin()).powi(2))
        .sum::<f64>()
        / x.len() as f64)
        .sqrt();
    Ok(HarmonicFit {
        amplitude: a.hypot(b),
        phase: b.atan2(a),
        residual,
    })
}

/// Decay rate `λ` of `|y| ~ C e^{−λx}`, from a least-squares line through
/// `ln|y|` at the local maxima of `|y|`.
pub fn fit_decay_rate(x: &[f64], y: &[f64]) -> Result<f64> {
    let peaks: Vec<(f64, f64)> = x
        .windows(3)
        .zip(y.windows(3))
        .filter(|(_, w)| w[1].abs() > w[0].abs() && w[1].abs() >= w[2].abs() && w[1] != 0.0)
        .map(|(xs, w)| (xs[1], w[1].abs().ln()))
        .collect();
    if peaks.len() < 3 {
        return Err(OracleError::InvalidSpec(format!(
            "decay fit needs at least 3 envelope maxima, found {}",
            peaks.len()
        )));
    }
    let n = peaks.len() as f64;
    let mx = peaks.iter().map(|p| p.0).sum::<f64>() / n;
    let my = peaks.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = peaks.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = peaks.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(-sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_solution_stays_zero() {
        let beam = BeamParameters::new(2.0, 0.0, 0.0, 0.0).unwrap();
        let s = integrate_system(
            &SystemSpec::undamped(&beam),
            &BoundaryConditions::rest(),
            &IntegratorConfig::default(),
        )
        .unwrap();
        assert!(s.phi.iter().chain(&s.psi).all(|v| *v == 0.0));
        assert_eq!(s.x.len(), 20001);
    }

    #[test]
    fn config_validation() {
        assert!(IntegratorConfig::new(0.1, 20.0).is_err());
        assert!(IntegratorConfig::new(1e-3, -1.0).is_err());
        assert!(IntegratorConfig::new(1e-9, 1e3).is_err());
        let beam = BeamParameters::new(2.0, 0.0, 0.3, 0.1).unwrap();
        let mut spec = SystemSpec::damped(&beam);
        spec.kind = SystemKind::Undamped;
        assert!(integrate_fixed(&spec, &BoundaryConditions::rest(), 0.1, 1.0).is_err());
    }

    #[test]
    fn harmonic_fit_recovers_phase() {
        let x: Vec<f64> = (0..500).map(|i| i as f64 * 0.05).collect();
        let y: Vec<f64> = x.iter().map(|&x| 0.3 * (1.7 * x - 0.4).cos()).collect();
        let fit = fit_harmonic(&x, &y, 1.7).unwrap();
        assert!((fit.amplitude - 0.3).abs() < 1e-12);
        assert!((fit.phase - 0.4).abs() < 1e-12);
    }

    #[test]
    fn decay_fit_on_damped_cosine() {
        let x: Vec<f64> = (0..4000).map(|i| i as f64 * 0.01).collect();
        let y: Vec<f64> = x.iter().map(|&x| (-0.2 * x).exp() * (3.0 * x).cos()).collect();
        let rate = fit_decay_rate(&x, &y).unwrap();
        assert!((rate - 0.2).abs() < 1e-3, "{rate}");
    }

    #[test]
    fn zero_drive_has_no_peaks() {
        let scan = ResonanceScan {
            energy: 2.0,
            xi: 0.1,
            u0: 0.0,
            kd_lo: 0.05,
            kd_hi: 3.0,
            n_points: 500,
        };
        assert!(scan_resonances(&scan).unwrap().is_empty());
    }
}
