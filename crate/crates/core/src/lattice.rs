//! Beam response to a periodic lattice potential:
//!
//! ```text
//! Ψ'' + Φ + 2EΨ = U0 cos(k_d x)
//! Φ'' − Ψ       = Ug cos(qx),   q = nG
//! ```
//!
//! Bloch-component response, periodic boundary-value solve and the Bragg
//! resonance speeds `k_d = nG`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use thiserror::Error;

use crate::dispersion::characteristic_wavenumbers;
use crate::field::{FieldError, FieldEvaluator, FieldPoint, FieldSolution};
use crate::model::BeamParameters;
use crate::pseudoforce::{DEGENERACY_TOL, RESONANCE_TOL};

/// Relative tolerance on `k_d/G` being an integer.
pub const COMMENSURABILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("invalid lattice parameter {field} = {value}")]
    InvalidParameter { field: &'static str, value: f64 },
    #[error("the lattice system is unscreened; got xi = {0}")]
    Screened(f64),
    #[error("resonant lattice response: {condition} (|difference| = {distance:e})")]
    Resonant {
        condition: &'static str,
        distance: f64,
    },
    #[error("drive k_d = {kd} is incommensurate with G = {g}; periodic conditions cannot hold")]
    Incommensurate { kd: f64, g: f64 },
    #[error("periodic boundary problem is singular: {0}")]
    DegenerateLattice(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl LatticeError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::InvalidParameter { .. } => "lattice::InvalidParameter",
            Self::Screened(_) => "lattice::Screened",
            Self::Resonant { .. } => "lattice::Resonant",
            Self::Incommensurate { .. } => "lattice::Incommensurate",
            Self::DegenerateLattice(_) => "lattice::DegenerateLattice",
            Self::Field(e) => e.name(),
        }
    }
}

pub type Result<T> = std::result::Result<T, LatticeError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParameters {
    g: f64,
    ug: f64,
    n_max: usize,
}

impl LatticeParameters {
    pub fn new(g: f64, ug: f64, n_max: usize) -> Result<Self> {
        if !(g > 0.0) || !g.is_finite() {
            return Err(LatticeError::InvalidParameter { field: "G", value: g });
        }
        if !ug.is_finite() {
            return Err(LatticeError::InvalidParameter { field: "Ug", value: ug });
        }
        if n_max == 0 {
            return Err(LatticeError::InvalidParameter {
                field: "n_max",
                value: 0.0,
            });
        }
        Ok(Self { g, ug, n_max })
    }

    /// Reciprocal lattice vector.
    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn ug(&self) -> f64 {
        self.ug
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Lattice constant `2π/G`.
    pub fn a(&self) -> f64 {
        2.0 * PI / self.g
    }
}

/// `Φ = phi cos(kx)`, `Ψ = psi cos(kx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct DriveTerm {
    k: f64,
    phi: f64,
    psi: f64,
}

impl DriveTerm {
    fn eval(&self, x: f64) -> FieldPoint {
        let c = (self.k * x).cos();
        FieldPoint {
            phi: self.phi * c,
            psi: self.psi * c,
        }
    }

    fn slope(&self, x: f64) -> FieldPoint {
        let s = -self.k * (self.k * x).sin();
        FieldPoint {
            phi: self.phi * s,
            psi: self.psi * s,
        }
    }
}

fn require_unscreened(beam: &BeamParameters) -> Result<()> {
    if beam.xi() != 0.0 {
        Err(LatticeError::Screened(beam.xi()))
    } else {
        Ok(())
    }
}

/// Particular response to the beam drive and the lattice harmonic `q`.
fn particular_terms(beam: &BeamParameters, ug: f64, q: f64) -> Result<[DriveTerm; 2]> {
    let energy = beam.energy();
    let pair = characteristic_wavenumbers(energy);
    let kd = beam.kd();
    let u0 = beam.u0();
    let conditions: [(&'static str, f64, Complex64, bool); 4] = [
        ("k_d = k1 (wave-like)", kd, pair.k1, u0 != 0.0),
        ("k_d = k2 (particle-like)", kd, pair.k2, u0 != 0.0),
        ("nG = k1 (wave-like)", q, pair.k1, ug != 0.0),
        ("nG = k2 (particle-like)", q, pair.k2, ug != 0.0),
    ];
    for (condition, wavenumber, k, active) in conditions {
        let distance = (k - wavenumber).norm();
        if active && distance <= RESONANCE_TOL {
            return Err(LatticeError::Resonant { condition, distance });
        }
    }
    // (q² − k1²)(q² − k2²) = q⁴ − 2Eq² + 1
    let denom = |k: f64| {
        let k2 = k * k;
        k2 * k2 - 2.0 * energy * k2 + 1.0
    };
    let kd_sq = kd * kd;
    let q_sq = q * q;
    let drive = if u0 == 0.0 {
        DriveTerm { k: kd, phi: 0.0, psi: 0.0 }
    } else {
        let d = denom(kd);
        DriveTerm {
            k: kd,
            phi: u0 / d,
            psi: -u0 * kd_sq / d,
        }
    };
    let lattice = if ug == 0.0 {
        DriveTerm { k: q, phi: 0.0, psi: 0.0 }
    } else {
        let d = denom(q);
        DriveTerm {
            k: q,
            phi: -ug * (q_sq - 2.0 * energy) / d,
            psi: -ug / d,
        }
    };
    Ok([drive, lattice])
}

/// Bloch-component response to the `n`-th lattice harmonic.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochResponse {
    terms: [DriveTerm; 2],
}

impl BlochResponse {
    pub fn new(beam: &BeamParameters, lat: &LatticeParameters, n: usize) -> Result<Self> {
        require_unscreened(beam)?;
        if n == 0 {
            return Err(LatticeError::InvalidParameter { field: "n", value: 0.0 });
        }
        let q = n as f64 * lat.g;
        Ok(Self {
            terms: particular_terms(beam, lat.ug, q)?,
        })
    }

    /// `(Φ, Ψ)` amplitudes of the lattice harmonic.
    pub fn lattice_amplitudes(&self) -> (f64, f64) {
        (self.terms[1].phi, self.terms[1].psi)
    }
}

impl FieldEvaluator for BlochResponse {
    fn component_labels(&self) -> &'static [&'static str] {
        &["drive", "lattice"]
    }

    fn component(&self, index: usize, x: f64) -> FieldPoint {
        self.terms[index].eval(x)
    }
}

pub fn lattice_bloch_response(
    beam: &BeamParameters,
    lat: &LatticeParameters,
    n: usize,
    x: &[f64],
) -> Result<FieldSolution> {
    Ok(BlochResponse::new(beam, lat, n)?.sample(x)?)
}

/// Solution of the lattice system under `a`-periodic values and slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeBvpSolution {
    particular: [DriveTerm; 2],
    k: [Complex64; 2],
    k_sq: [Complex64; 2],
    /// `(cos, sin)` coefficients of `Φ` for each branch.
    coeffs: [(Complex64, Complex64); 2],
}

impl LatticeBvpSolution {
    pub fn new(beam: &BeamParameters, lat: &LatticeParameters) -> Result<Self> {
        require_unscreened(beam)?;
        let a = lat.a();
        if beam.u0() != 0.0 {
            let ratio = beam.kd() / lat.g;
            if (ratio - ratio.round()).abs() > COMMENSURABILITY_TOL * ratio.max(1.0) {
                return Err(LatticeError::Incommensurate {
                    kd: beam.kd(),
                    g: lat.g,
                });
            }
        }
        let pair = characteristic_wavenumbers(beam.energy());
        if pair.alpha.norm() <= DEGENERACY_TOL {
            return Err(LatticeError::DegenerateLattice("the two branches coincide (E = 1)"));
        }
        let k = [pair.k1, pair.k2];
        let k_sq = [pair.k1_sq, pair.k2_sq];
        for (branch, kj) in [("k1 a is a multiple of 2 pi", k[0]), ("k2 a is a multiple of 2 pi", k[1])] {
            if ((kj * a).cos() - 1.0).norm() < 1e-10 {
                return Err(LatticeError::DegenerateLattice(branch));
            }
        }
        let particular = particular_terms(beam, lat.ug, lat.g)?;

        let zero = FieldPoint::default();
        let (p0, pa) = particular
            .iter()
            .fold((zero, zero), |(u, v), t| (u + t.eval(0.0), v + t.eval(a)));
        let (dp0, dpa) = particular
            .iter()
            .fold((zero, zero), |(u, v), t| (u + t.slope(0.0), v + t.slope(a)));

        let one = Complex64::new(1.0, 0.0);
        let mut m = Matrix4::<Complex64>::zeros();
        for j in 0..2 {
            let (c, s) = ((k[j] * a).cos(), (k[j] * a).sin());
            let value = [c - one, s];
            let slope = [-k[j] * s, k[j] * (c - one)];
            for col in 0..2 {
                m[(0, 2 * j + col)] = value[col];
                m[(1, 2 * j + col)] = slope[col];
                m[(2, 2 * j + col)] = -k_sq[j] * value[col];
                m[(3, 2 * j + col)] = -k_sq[j] * slope[col];
            }
        }
        let rhs = Vector4::new(
            Complex64::new(p0.phi - pa.phi, 0.0),
            Complex64::new(dp0.phi - dpa.phi, 0.0),
            Complex64::new(p0.psi - pa.psi, 0.0),
            Complex64::new(dp0.psi - dpa.psi, 0.0),
        );
        let sol = m
            .lu()
            .solve(&rhs)
            .ok_or(LatticeError::DegenerateLattice("periodicity matrix is singular"))?;
        if sol.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(LatticeError::DegenerateLattice("periodicity matrix is singular"));
        }
        Ok(Self {
            particular,
            k,
            k_sq,
            coeffs: [(sol[0], sol[1]), (sol[2], sol[3])],
        })
    }

    /// Largest homogeneous coefficient; zero when the particular part is
    /// already periodic.
    pub fn homogeneous_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .flat_map(|(c, s)| [c.norm(), s.norm()])
            .fold(0.0, f64::max)
    }

    /// Field slope at `x`.
    pub fn slope(&self, x: f64) -> FieldPoint {
        let mut out = self
            .particular
            .iter()
            .fold(FieldPoint::default(), |acc, t| acc + t.slope(x));
        for j in 0..2 {
            let (c, s) = self.coeffs[j];
            let kx = self.k[j] * x;
            let d = self.k[j] * (s * kx.cos() - c * kx.sin());
            out.phi += d.re;
            out.psi += (-self.k_sq[j] * d).re;
        }
        out
    }
}

impl FieldEvaluator for LatticeBvpSolution {
    fn component_labels(&self) -> &'static [&'static str] {
        &["particular", "homogeneous"]
    }

    fn component(&self, index: usize, x: f64) -> FieldPoint {
        if index == 0 {
            return self
                .particular
                .iter()
                .fold(FieldPoint::default(), |acc, t| acc + t.eval(x));
        }
        let mut out = FieldPoint::default();
        for j in 0..2 {
            let (c, s) = self.coeffs[j];
            let kx = self.k[j] * x;
            let v = c * kx.cos() + s * kx.sin();
            out.phi += v.re;
            out.psi += (-self.k_sq[j] * v).re;
        }
        out
    }
}

pub fn solve_lattice_bvp(beam: &BeamParameters, lat: &LatticeParameters, x: &[f64]) -> Result<FieldSolution> {
    Ok(LatticeBvpSolution::new(beam, lat)?.sample(x)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraggChannel {
    WaveLike,
    ParticleLike,
}

impl BraggChannel {
    pub fn label(self) -> &'static str {
        match self {
            Self::WaveLike => "wave-like",
            Self::ParticleLike => "particle-like",
        }
    }
}

impl fmt::Display for BraggChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BraggResonance {
    pub n: usize,
    pub channel: BraggChannel,
    /// `nG`
    pub wavenumber: f64,
    pub gamma_res: f64,
}

/// Beam speeds at which `k_d = nG` lies on the screened dispersion:
/// `γ² = μ + Q + 1/Q` with `Q = n²G² + ξ²`. The branch is wave-like for
/// `Q < 1` and particle-like otherwise. Speeds below `√(μ+2)` would fall in
/// the unstable window and are dropped; with `Q + 1/Q ≥ 2` that never occurs.
pub fn bragg_resonant_speeds(mu: f64, xi: f64, lat: &LatticeParameters) -> Result<Vec<BraggResonance>> {
    if !mu.is_finite() || mu < 0.0 {
        return Err(LatticeError::InvalidParameter { field: "mu", value: mu });
    }
    if !xi.is_finite() || xi < 0.0 {
        return Err(LatticeError::InvalidParameter { field: "xi", value: xi });
    }
    let gamma_low = (mu + 2.0).sqrt();
    Ok((1..=lat.n_max)
        .filter_map(|n| {
            let q = n as f64 * lat.g;
            let big_q = q * q + xi * xi;
            let gamma_res = (mu + big_q + 1.0 / big_q).sqrt();
            let channel = if big_q < 1.0 {
                BraggChannel::WaveLike
            } else {
                BraggChannel::ParticleLike
            };
            (gamma_res >= gamma_low - 1e-12).then_some(BraggResonance {
                n,
                channel,
                wavenumber: q,
                gamma_res,
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters() {
        let lat = LatticeParameters::new(3.0, 0.1, 2).unwrap();
        assert!((lat.a() * lat.g() - 2.0 * PI).abs() < 1e-12);
        assert!(LatticeParameters::new(0.0, 0.1, 1).is_err());
        assert!(LatticeParameters::new(1.0, 0.1, 0).is_err());
    }

    #[test]
    fn bloch_amplitude_example() {
        let beam = BeamParameters::new(2.0, 0.0, 0.0, 0.0).unwrap();
        let lat = LatticeParameters::new(3.0, 0.1, 1).unwrap();
        let r = BlochResponse::new(&beam, &lat, 1).unwrap();
        let (_, psi) = r.lattice_amplitudes();
        let k1_sq = 2.0 - 3f64.sqrt();
        let k2_sq = 2.0 + 3f64.sqrt();
        let expected = 0.1 / ((9.0 - k1_sq) * (9.0 - k2_sq));
        assert!((psi.abs() - expected).abs() < 1e-15);
        assert!((psi.abs() - 0.002_173_913).abs() < 1e-9);
    }

    #[test]
    fn bloch_errors_name_condition() {
        let k2 = characteristic_wavenumbers(2.0).k2.re;
        let beam = BeamParameters::new(2.0, 0.0, 0.0, 0.0).unwrap();
        let lat = LatticeParameters::new(k2, 0.1, 1).unwrap();
        match BlochResponse::new(&beam, &lat, 1) {
            Err(LatticeError::Resonant { condition, .. }) => assert_eq!(condition, "nG = k2 (particle-like)"),
            other => panic!("{other:?}"),
        }
        let screened = BeamParameters::new(2.0, 0.0, 0.1, 0.0).unwrap();
        assert!(matches!(
            BlochResponse::new(&screened, &lat, 1),
            Err(LatticeError::Screened(_))
        ));
    }

    #[test]
    fn bragg_examples() {
        let lat = LatticeParameters::new(2.0, 0.0, 3).unwrap();
        let r = bragg_resonant_speeds(0.0, 0.0, &lat).unwrap();
        assert!((r[0].gamma_res - 4.25f64.sqrt()).abs() < 1e-12);
        assert_eq!(r[0].channel, BraggChannel::ParticleLike);

        let lat = LatticeParameters::new(0.3, 0.0, 5).unwrap();
        let r = bragg_resonant_speeds(0.0, 1.0, &lat).unwrap();
        assert!(r.iter().all(|b| b.channel == BraggChannel::ParticleLike));
        let r = bragg_resonant_speeds(0.0, 0.0, &lat).unwrap();
        assert_eq!(r[0].channel, BraggChannel::WaveLike);
    }

    #[test]
    fn bvp_incommensurate_and_degenerate() {
        let beam = BeamParameters::new(2.0, 0.0, 0.0, 0.1).unwrap();
        let lat = LatticeParameters::new(1.5, 0.1, 1).unwrap();
        assert!(matches!(
            LatticeBvpSolution::new(&beam, &lat),
            Err(LatticeError::Incommensurate { .. })
        ));
        // k2 a = 2π when G = k2
        let k2 = characteristic_wavenumbers(2.0).k2.re;
        let beam = BeamParameters::new(2.0, 0.0, 0.0, 0.0).unwrap();
        let lat = LatticeParameters::new(k2, 0.1, 1).unwrap();
        assert!(matches!(
            LatticeBvpSolution::new(&beam, &lat),
            Err(LatticeError::DegenerateLattice(_))
        ));
    }
}
