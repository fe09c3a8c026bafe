mod common;

use common::residual;
use plasmon_core::field::{sup_distance, uniform_grid, FieldEvaluator};
use plasmon_core::lattice::{
    bragg_resonant_speeds, BlochResponse, BraggChannel, LatticeBvpSolution, LatticeError, LatticeParameters,
};
use plasmon_core::model::BeamParameters;
use plasmon_core::pseudoforce::{steady_state_of, DrivenSystem};
use plasmon_core::spectrum::amplitude_spectrum;

fn beam(gamma: f64, u0: f64) -> BeamParameters {
    BeamParameters::new(gamma, 0.0, 0.0, u0).unwrap()
}

fn points(hi: f64) -> impl Iterator<Item = f64> {
    (0..=40).map(move |i| hi * i as f64 / 40.0)
}

#[test]
fn bloch_response_satisfies_system() {
    for (gamma, g, n) in [(2.0, 3.0, 1), (2.0, 3.0, 2), (1.2, 0.7, 3), (2.5, 0.45, 1)] {
        let b = beam(gamma, 0.1);
        let lat = LatticeParameters::new(g, 0.1, n).unwrap();
        let r = BlochResponse::new(&b, &lat, n).unwrap();
        let q = n as f64 * g;
        let res = residual(&r, b.energy(), 0.0, 0.1, b.kd(), (0.1, q), points(20.0));
        assert!(res <= 1e-8, "gamma={gamma} n={n}: {res:e}");
    }
}

#[test]
fn bvp_is_periodic_and_solves_system() {
    for (gamma, g) in [(2.0, 1.0), (1.7, 0.85), (2.4, 0.6)] {
        let b = beam(gamma, 0.1);
        let lat = LatticeParameters::new(g, 0.1, 1).unwrap();
        let sol = LatticeBvpSolution::new(&b, &lat).unwrap();
        let a = lat.a();
        let res = residual(&sol, b.energy(), 0.0, 0.1, b.kd(), (0.1, g), points(a));
        assert!(res <= 1e-8, "gamma={gamma}: {res:e}");
        let (v0, va) = (sol.eval(0.0), sol.eval(a));
        let (s0, sa) = (sol.slope(0.0), sol.slope(a));
        for d in [v0.phi - va.phi, v0.psi - va.psi, s0.phi - sa.phi, s0.psi - sa.psi] {
            assert!(d.abs() <= 1e-8, "gamma={gamma}: {d:e}");
        }
    }
}

#[test]
fn bvp_matches_bloch_when_commensurate() {
    let b = beam(2.0, 0.1);
    let lat = LatticeParameters::new(2.0, 0.1, 1).unwrap();
    let x = uniform_grid(0.0, 20.0, 801).unwrap();
    let bvp = LatticeBvpSolution::new(&b, &lat).unwrap();
    assert!(bvp.homogeneous_norm() <= 1e-12);
    let bloch = BlochResponse::new(&b, &lat, 1).unwrap();
    assert!(sup_distance(&bvp.sample(&x).unwrap(), &bloch.sample(&x).unwrap()) <= 1e-12);
}

#[test]
fn vanishing_lattice_reduces_to_drive() {
    let b = beam(2.0, 0.1);
    let lat = LatticeParameters::new(3.0, 0.0, 1).unwrap();
    let r = BlochResponse::new(&b, &lat, 1).unwrap();
    let ss = steady_state_of(&DrivenSystem::from_beam(&b)).unwrap();
    for x in points(20.0) {
        let f = r.eval(x);
        let phi = ss.amp_phi * (b.kd() * x - ss.theta_phi).cos();
        let psi = ss.amp_psi * (b.kd() * x - ss.theta_psi).cos();
        assert!((f.phi - phi).abs() <= 1e-12 && (f.psi - psi).abs() <= 1e-12);
    }
}

#[test]
fn vanishing_drive_leaves_lattice_term() {
    let lat = LatticeParameters::new(3.0, 0.1, 1).unwrap();
    let r = BlochResponse::new(&beam(2.0, 0.0), &lat, 1).unwrap();
    let with_drive = BlochResponse::new(&beam(2.0, 0.1), &lat, 1).unwrap();
    assert_eq!(r.lattice_amplitudes(), with_drive.lattice_amplitudes());
    for x in points(20.0) {
        let d = r.component(0, x);
        assert!(d.phi.abs() <= 1e-12 && d.psi.abs() <= 1e-12);
    }
}

#[test]
fn incommensurate_drive_rejected() {
    let lat = LatticeParameters::new(3.0, 0.1, 1).unwrap();
    assert!(matches!(
        LatticeBvpSolution::new(&beam(2.0, 0.1), &lat),
        Err(LatticeError::Incommensurate { .. })
    ));
    assert!(LatticeBvpSolution::new(&beam(2.0, 0.0), &lat).is_ok());
}

fn screened_denominator(gamma: f64, mu: f64, xi: f64, q: f64) -> f64 {
    let energy = 0.5 * (gamma * gamma - mu);
    let big = q * q + xi * xi;
    big * big - 2.0 * energy * big + 1.0
}

#[test]
fn bragg_speeds_zero_the_denominator() {
    for (mu, xi, g) in [(0.0, 0.0, 3.0), (0.39, 0.2, 0.4), (0.73, 0.5, 1.1)] {
        let lat = LatticeParameters::new(g, 0.1, 4).unwrap();
        let speeds = bragg_resonant_speeds(mu, xi, &lat).unwrap();
        assert_eq!(speeds.len(), 4);
        for r in speeds {
            assert!(screened_denominator(r.gamma_res, mu, xi, r.wavenumber).abs() < 1e-8);
            for off in [-0.05, 0.05] {
                assert!(screened_denominator(r.gamma_res + off, mu, xi, r.wavenumber).abs() > 1e-3);
            }
        }
    }
}

#[test]
fn particle_like_speeds_grow_with_order() {
    let lat = LatticeParameters::new(0.3, 0.1, 12).unwrap();
    let speeds = bragg_resonant_speeds(0.2, 0.1, &lat).unwrap();
    assert!(speeds.iter().any(|r| r.channel == BraggChannel::WaveLike));
    let particle: Vec<f64> = speeds
        .iter()
        .filter(|r| r.channel == BraggChannel::ParticleLike)
        .map(|r| r.gamma_res)
        .collect();
    assert!(particle.len() > 3);
    assert!(particle.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn second_harmonic_spectrum() {
    let lat = LatticeParameters::new(3.0, 0.1, 2).unwrap();
    let r = BlochResponse::new(&beam(2.0, 0.0), &lat, 2).unwrap();
    let x = uniform_grid(0.0, 2000.0, 65_536).unwrap();
    let field = r.sample(&x).unwrap();
    let s = amplitude_spectrum(&field.psi, x[1] - x[0]);
    assert!((s.dominant() - 6.0).abs() <= s.resolution);
}
