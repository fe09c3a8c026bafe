#![allow(dead_code)]

use plasmon_core::field::{FieldEvaluator, FieldPoint};

/// Fourth-order central second and first derivatives of both fields at `x`.
pub fn derivatives(f: &dyn FieldEvaluator, x: f64, h: f64) -> (FieldPoint, FieldPoint, FieldPoint) {
    let p: Vec<FieldPoint> = (-2..=2).map(|j| f.eval(x + j as f64 * h)).collect();
    let d1 = |g: fn(&FieldPoint) -> f64| (g(&p[0]) - 8.0 * g(&p[1]) + 8.0 * g(&p[3]) - g(&p[4])) / (12.0 * h);
    let d2 = |g: fn(&FieldPoint) -> f64| {
        (-g(&p[0]) + 16.0 * g(&p[1]) - 30.0 * g(&p[2]) + 16.0 * g(&p[3]) - g(&p[4])) / (12.0 * h * h)
    };
    let first = FieldPoint {
        phi: d1(|q| q.phi),
        psi: d1(|q| q.psi),
    };
    let second = FieldPoint {
        phi: d2(|q| q.phi),
        psi: d2(|q| q.psi),
    };
    (p[2], first, second)
}

/// Sup over `points` of the residuals of
/// `Ψ'' + 2ξΨ' + Φ + 2EΨ = U0 cos(k_d x) + a_ψ cos(q x)`,
/// `Φ'' + 2ξΦ' − Ψ = a_φ cos(q x)`.
#[allow(clippy::too_many_arguments)]
pub fn residual(
    f: &dyn FieldEvaluator,
    energy: f64,
    xi: f64,
    u0: f64,
    kd: f64,
    lattice: (f64, f64),
    points: impl Iterator<Item = f64>,
) -> f64 {
    let (ug, q) = lattice;
    points
        .map(|x| {
            let (v, d1, d2) = derivatives(f, x, 5e-3);
            let r_psi = d2.psi + 2.0 * xi * d1.psi + v.phi + 2.0 * energy * v.psi - u0 * (kd * x).cos();
            let r_phi = d2.phi + 2.0 * xi * d1.phi - v.psi - ug * (q * x).cos();
            r_psi.abs().max(r_phi.abs())
        })
        .fold(0.0, f64::max)
}

pub fn sup(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}
