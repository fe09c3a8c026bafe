mod common;

use common::{residual, sup};
use plasmon_core::dispersion::characteristic_wavenumbers;
use plasmon_core::field::{uniform_grid, BoundaryConditions, FieldEvaluator};
use plasmon_core::pseudoforce::{
    predicted_resonances, steady_state_of, DampedSolution, DrivenSystem, PseudoforceError, PseudoforceSolution,
    UndampedSolution,
};
use plasmon_core::spectrum::amplitude_spectrum;

fn bc(phi0: f64, psi0: f64, dphi0: f64, dpsi0: f64) -> BoundaryConditions {
    BoundaryConditions {
        phi0,
        psi0,
        dphi0,
        dpsi0,
    }
}

fn grid_points() -> impl Iterator<Item = f64> {
    (0..=40).map(|i| 0.5 * i as f64)
}

#[test]
fn undamped_solution_satisfies_system() {
    for (energy, kd) in [(2.0, 2.0), (0.6, 1.3), (1.4, 0.4)] {
        let sys = DrivenSystem::new(energy, 0.0, 0.1, kd).unwrap();
        let sol = UndampedSolution::new(&sys, &bc(0.3, -0.2, 0.0, 0.0)).unwrap();
        let scale = sup(&sol.sample(&uniform_grid(0.0, 20.0, 801).unwrap()).unwrap().phi).max(1.0);
        let r = residual(&sol, energy, 0.0, 0.1, kd, (0.0, 0.0), grid_points());
        assert!(r <= 1e-8 * scale, "E={energy}: {r:e}");
    }
}

#[test]
fn damped_solution_satisfies_system() {
    for (energy, xi, kd) in [(2.0, 0.3, 2.0), (0.7, 0.1, 1.0), (1.2, 0.8, 0.5)] {
        let sys = DrivenSystem::new(energy, xi, 0.1, kd).unwrap();
        let sol = DampedSolution::new(&sys, &bc(0.3, -0.2, 0.05, 0.1)).unwrap();
        let start = sol.eval(0.0);
        assert!((start.phi - 0.3).abs() < 1e-12 && (start.psi + 0.2).abs() < 1e-12);
        let r = residual(&sol, energy, xi, 0.1, kd, (0.0, 0.0), grid_points());
        assert!(r <= 1e-8, "E={energy} xi={xi}: {r:e}");
    }
}

#[test]
fn superposition_in_data() {
    let x = uniform_grid(0.0, 20.0, 401).unwrap();
    let sys = DrivenSystem::new(1.5, 0.2, 0.1, 1.1).unwrap();
    let free = sys.with_u0(0.0).unwrap();
    let (a, b) = (bc(0.1, 0.2, 0.0, 0.3), bc(-0.4, 0.05, 0.2, 0.0));
    let sum = bc(0.1 - 0.4, 0.2 + 0.05, 0.2, 0.3);
    let lhs = DampedSolution::new(&sys, &sum).unwrap().sample(&x).unwrap();
    let p = DampedSolution::new(&sys, &a).unwrap().sample(&x).unwrap();
    let q = DampedSolution::new(&free, &b).unwrap().sample(&x).unwrap();
    for i in 0..x.len() {
        assert!((lhs.phi[i] - p.phi[i] - q.phi[i]).abs() < 1e-12);
        assert!((lhs.psi[i] - p.psi[i] - q.psi[i]).abs() < 1e-12);
    }
}

#[test]
fn undamped_spectrum_has_three_lines() {
    let n = 65_536;
    let x = uniform_grid(0.0, 2000.0, n).unwrap();
    let dx = x[1] - x[0];
    let sys = DrivenSystem::new(2.0, 0.0, 0.1, 2.0).unwrap();
    let sol = UndampedSolution::new(&sys, &bc(0.5, 0.2, 0.0, 0.0)).unwrap();
    let field = sol.sample(&x).unwrap();
    let spectrum = amplitude_spectrum(&field.phi, dx);
    let peaks: Vec<f64> = spectrum.peaks(0.01).into_iter().take(3).map(|p| p.0).collect();
    for expected in [0.51764, 1.93185, 2.0] {
        assert!(
            peaks.iter().any(|k| (k - expected).abs() <= spectrum.resolution),
            "{expected} not in {peaks:?}"
        );
    }
}

#[test]
fn transient_dies_at_screening_rate() {
    let sys = DrivenSystem::new(2.0, 0.5, 0.1, 1.5).unwrap();
    let sol = DampedSolution::new(&sys, &bc(1.0, -1.0, 0.5, 0.5)).unwrap();
    let t0 = sol.transient(0.0);
    let t = sol.transient(40.0);
    assert!(t.phi.abs().max(t.psi.abs()) <= 1e-6 * t0.phi.abs().max(t0.psi.abs()));
}

#[test]
fn no_drive_no_steady_part() {
    let sys = DrivenSystem::new(2.0, 0.4, 0.0, 1.5).unwrap();
    let sol = DampedSolution::new(&sys, &bc(1.0, 0.0, 0.0, 0.0)).unwrap();
    for x in grid_points() {
        let s = sol.steady(x);
        assert_eq!((s.phi, s.psi), (0.0, 0.0));
    }
}

#[test]
fn steady_state_matches_late_field() {
    let sys = DrivenSystem::new(1.8, 0.3, -0.1, 1.7).unwrap();
    let sol = DampedSolution::new(&sys, &BoundaryConditions::rest()).unwrap();
    let ss = steady_state_of(&sys).unwrap();
    for x in [120.0, 121.3, 135.7] {
        let f = sol.eval(x);
        let phi = ss.amp_phi * (sys.kd * x - ss.theta_phi).cos();
        let psi = ss.amp_psi * (sys.kd * x - ss.theta_psi).cos();
        assert!((f.phi - phi).abs() < 1e-10 && (f.psi - psi).abs() < 1e-10);
    }
}

#[test]
fn resonant_drive_is_rejected() {
    let pair = characteristic_wavenumbers(2.0);
    for (k, branch) in [(pair.k1.re, "wave-like"), (pair.k2.re, "particle-like")] {
        let sys = DrivenSystem::new(2.0, 0.0, 0.1, k).unwrap();
        match UndampedSolution::new(&sys, &BoundaryConditions::rest()) {
            Err(PseudoforceError::Resonant { branch: b, .. }) => assert_eq!(b, branch),
            other => panic!("{other:?}"),
        }
    }
    let screened = DrivenSystem::new(2.0, 0.1, 0.1, pair.k2.re).unwrap();
    assert!(PseudoforceSolution::new(&screened, &BoundaryConditions::rest()).is_ok());
}

#[test]
fn undamped_needs_zero_slopes() {
    let sys = DrivenSystem::new(2.0, 0.0, 0.1, 1.0).unwrap();
    assert!(matches!(
        UndampedSolution::new(&sys, &bc(0.0, 0.0, 0.1, 0.0)),
        Err(PseudoforceError::NonZeroSlope { .. })
    ));
}

#[test]
fn strong_screening_merges_peaks() {
    let weak = predicted_resonances(2.0, 0.1, 0.05, 3.0).unwrap();
    assert_eq!(weak.len(), 2);
    let strong = predicted_resonances(2.0, 0.9, 0.05, 3.0).unwrap();
    assert!(strong.len() < 2, "{strong:?}");
}
