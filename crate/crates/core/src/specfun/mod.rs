//! Complete Fermi–Dirac integrals `F_ν(η) = ∫₀^∞ x^ν / (e^{x−η} + 1) dx` and
//! the polylogarithm of negative exponential argument, `Li_{ν+1}(−e^η)`,
//! related by `F_ν(η) = −Γ(ν+1) Li_{ν+1}(−e^η)`.
//!
//! Two evaluation routes are kept side by side:
//!
//! * `η ≤ 0`: the alternating series `Γ(ν+1) Σ (−1)^{k+1} e^{kη} / k^{ν+1}`,
//!   accelerated so that it converges geometrically even at `η = 0`;
//! * `η > 0`: adaptive Gauss–Kronrod quadrature of the integral, split at
//!   `x = max(η, 1)` with `x = t²` on the head and a truncated exponential
//!   tail.
//!
//! For `η ≥ 30` the Sommerfeld expansion with its reflection term is a third,
//! independent route; it is only used for cross-checking.

mod quadrature;
mod series;

pub use quadrature::{integrate, QuadResult};
pub use series::{alternating_sum, dirichlet_eta};

use std::f64::consts::PI;

use statrs::function::gamma::{gamma as gamma_fn, ln_gamma};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("Fermi order must satisfy nu > -1, got {0}")]
    InvalidOrder(f64),
    #[error("degeneracy parameter must be finite, got {0}")]
    NonFiniteEta(f64),
    #[error("inversion target must be positive and finite, got {0}")]
    NonPositiveTarget(f64),
    #[error("fractional temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),
    #[error("{route} route is not valid at eta = {eta}")]
    OutsideRoute { route: &'static str, eta: f64 },
    #[error("quadrature did not converge at eta = {eta} (error estimate {error:e})")]
    QuadratureFailed { eta: f64, error: f64 },
    #[error("eta inversion did not converge for target {0}")]
    InversionFailed(f64),
}

impl SpecfunError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::InvalidOrder(_) => "specfun::InvalidOrder",
            Self::NonFiniteEta(_) => "specfun::NonFiniteEta",
            Self::NonPositiveTarget(_) => "specfun::NonPositiveTarget",
            Self::NonPositiveTemperature(_) => "specfun::NonPositiveTemperature",
            Self::OutsideRoute { .. } => "specfun::OutsideRoute",
            Self::QuadratureFailed { .. } => "specfun::QuadratureFailed",
            Self::InversionFailed(_) => "specfun::InversionFailed",
        }
    }
}

pub type Result<T> = std::result::Result<T, SpecfunError>;

/// Order `ν > −1` of a Fermi–Dirac integral.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FermiOrder(f64);

impl FermiOrder {
    pub const MINUS_HALF: FermiOrder = FermiOrder(-0.5);
    pub const HALF: FermiOrder = FermiOrder(0.5);
    pub const THREE_HALVES: FermiOrder = FermiOrder(1.5);
    pub const FIVE_HALVES: FermiOrder = FermiOrder(2.5);

    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu > -1.0 {
            Ok(Self(nu))
        } else {
            Err(SpecfunError::InvalidOrder(nu))
        }
    }

    /// Order whose Fermi integral gives `Li_s(−e^η)`, i.e. `ν = s − 1`.
    pub fn for_polylog(s: f64) -> Result<Self> {
        Self::new(s - 1.0)
    }

    pub fn nu(self) -> f64 {
        self.0
    }

    /// `Γ(ν + 1)`
    pub fn gamma_factor(self) -> f64 {
        gamma_fn(self.0 + 1.0)
    }
}

/// Point on the degeneracy axis: `η` is the argument of `Li(−e^η)` and
/// `θ = T/T_p` the fractional temperature it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegeneracyPoint {
    eta: f64,
    theta: f64,
}

impl DegeneracyPoint {
    /// Builds the point `η = μ/θ` used by the screening formula.
    pub fn from_normalized(mu: f64, theta: f64) -> Result<Self> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(SpecfunError::NonPositiveTemperature(theta));
        }
        let eta = mu / theta;
        if !eta.is_finite() {
            return Err(SpecfunError::NonFiniteEta(eta));
        }
        Ok(Self { eta, theta })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Gamma function on the real line (reflection for `x < 1/2`).
pub fn gamma(x: f64) -> f64 {
    gamma_fn(x)
}

fn check_eta(eta: f64) -> Result<()> {
    if eta.is_finite() {
        Ok(())
    } else {
        Err(SpecfunError::NonFiniteEta(eta))
    }
}

/// `F_ν(η)`, routed to the series for `η ≤ 0` and to quadrature otherwise.
pub fn fermi_integral(order: FermiOrder, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    if eta <= 0.0 {
        fermi_integral_series(order, eta)
    } else {
        fermi_integral_quadrature(order, eta)
    }
}

/// `Li_{ν+1}(−e^η) = −F_ν(η) / Γ(ν+1)`.
pub fn polylog_neg_exp(order: FermiOrder, eta: f64) -> Result<f64> {
    Ok(-fermi_integral(order, eta)? / order.gamma_factor())
}

/// Alternating-series route, valid for `η ≤ 0`.
pub fn fermi_integral_series(order: FermiOrder, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    if eta > 0.0 {
        return Err(SpecfunError::OutsideRoute {
            route: "series",
            eta,
        });
    }
    let s = order.nu() + 1.0;
    let x = eta.exp();
    // Σ_{k≥0} (−1)^k x^{k+1} / (k+1)^s, written as x · Σ (−1)^k x^k/(k+1)^s
    let sum = series::alternating_sum(|k| {
        let kk = (k + 1) as f64;
        x.powi(k as i32) * kk.powf(-s)
    });
    Ok(order.gamma_factor() * x * sum)
}

const QUAD_REL_TOL: f64 = 1e-13;
const QUAD_MAX_SEGMENTS: usize = 4000;

/// Adaptive quadrature route, valid for every finite `η`.
pub fn fermi_integral_quadrature(order: FermiOrder, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    let nu = order.nu();
    let split = eta.max(1.0);

    // Lower bound on F, used to scale the absolute tolerances:
    //  η ≤ 0: 1/(e^{x−η}+1) ≥ e^{η−x}/2 everywhere;
    //  η > 0: the integrand is ≥ x^ν/2 on [0, η].
    let floor = if eta <= 0.0 {
        0.5 * order.gamma_factor() * eta.exp()
    } else {
        (0.5 * order.gamma_factor() * (-eta).exp())
            .max(eta.powf(nu + 1.0) / (2.0 * (nu + 1.0)))
    };
    let abs_tol = 1e-14 * floor;

    // head: x = t², dx = 2t dt, integrand 2 t^{2ν+1} / (e^{t²−η} + 1)
    let t_max = split.sqrt();
    let head = quadrature::integrate(
        |t| 2.0 * t.powf(2.0 * nu + 1.0) * fermi_weight(t * t - eta),
        0.0,
        t_max,
        abs_tol,
        QUAD_REL_TOL,
        QUAD_MAX_SEGMENTS,
    );

    // tail: x = split + y, truncated once the Boltzmann tail bound is negligible
    let mut y_max = 40.0;
    loop {
        let x = split + y_max;
        let bound = 2.0 * x.powf(nu.max(0.0)) * (-(x - eta)).exp();
        if bound <= 1e-18 * floor || y_max > 2000.0 {
            break;
        }
        y_max += 5.0;
    }
    let tail = quadrature::integrate(
        |y| {
            let x = split + y;
            x.powf(nu) * fermi_weight(x - eta)
        },
        0.0,
        y_max,
        abs_tol,
        QUAD_REL_TOL,
        QUAD_MAX_SEGMENTS,
    );

    let value = head.value + tail.value;
    let error = head.error + tail.error;
    if !(head.converged && tail.converged) && error > 1e-11 * value.abs() {
        return Err(SpecfunError::QuadratureFailed { eta, error });
    }
    Ok(value)
}

/// `1 / (e^z + 1)` without overflow.
#[inline]
fn fermi_weight(z: f64) -> f64 {
    if z > 0.0 {
        let e = (-z).exp();
        e / (1.0 + e)
    } else {
        1.0 / (z.exp() + 1.0)
    }
}

/// Sommerfeld expansion with the reflection term,
/// `F_ν(η) = Γ(ν+1) [2 Σ_k t_{2k} η^{ν+1−2k} / Γ(ν+2−2k)] + cos(πν) F_ν(−η)`,
/// with `t_0 = 1/2`, `t_{2k} = η_D(2k)`. The asymptotic sum is truncated at its
/// smallest term, which is of order `e^{−η}`; the route refuses `η < 30`.
pub fn fermi_integral_asymptotic(order: FermiOrder, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    if eta < 30.0 {
        return Err(SpecfunError::OutsideRoute {
            route: "asymptotic",
            eta,
        });
    }
    let nu = order.nu();
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..400usize {
        let coeff = if k == 0 {
            0.5
        } else {
            series::dirichlet_eta(2.0 * k as f64)
        };
        let arg = nu + 2.0 - 2.0 * k as f64;
        let term = coeff * eta.powf(nu + 1.0 - 2.0 * k as f64) * recip_gamma(arg);
        let mag = term.abs();
        if k > 1 && mag > prev {
            break;
        }
        sum += 2.0 * term;
        if mag <= 1e-18 * sum.abs() {
            break;
        }
        if mag > 0.0 {
            prev = mag;
        }
    }
    let reflected = (PI * nu).cos() * fermi_integral_series(order, -eta)?;
    Ok(order.gamma_factor() * sum + reflected)
}

// 1/Γ(x); negative arguments go through the reflection formula in logs.
fn recip_gamma(x: f64) -> f64 {
    if x > 0.0 {
        1.0 / gamma_fn(x)
    } else if x == x.floor() {
        0.0
    } else {
        // 1/Γ(x) = sin(πx) Γ(1−x) / π
        let ln_mag = ln_gamma(1.0 - x) - PI.ln();
        (PI * x).sin() * ln_mag.exp()
    }
}

/// Solves `F_ν(η) = target` for `η`.
///
/// The classical guess `η₀ = ln(target/Γ(ν+1))` is always a lower bound
/// (`F_ν(η) ≤ Γ(ν+1) e^η`); the upper end is found by doubling the step, then
/// Newton iterations with `dF_ν/dη = ν F_{ν−1}` are kept inside the bracket by
/// bisection. Orders `ν ≤ 0` use the secant slope instead.
pub fn invert_eta(order: FermiOrder, target: f64) -> Result<f64> {
    if !(target > 0.0) || !target.is_finite() {
        return Err(SpecfunError::NonPositiveTarget(target));
    }
    let f = |eta: f64| fermi_integral(order, eta).map(|v| v - target);

    let mut lo = (target / order.gamma_factor()).ln();
    let mut f_lo = f(lo)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let mut step = 1.0;
    let mut hi = lo + step;
    let mut f_hi = f(hi)?;
    while f_hi < 0.0 {
        lo = hi;
        f_lo = f_hi;
        step *= 2.0;
        hi = lo + step;
        f_hi = f(hi)?;
        if step > 1e6 {
            return Err(SpecfunError::InversionFailed(target));
        }
    }

    let nu = order.nu();
    let derivative_order = if nu > 0.0 {
        Some(FermiOrder::new(nu - 1.0)?)
    } else {
        None
    };

    let mut eta = if f_hi.abs() < f_lo.abs() { hi } else { lo };
    let mut f_eta = if eta == hi { f_hi } else { f_lo };
    for _ in 0..200 {
        if f_eta.abs() <= 1e-13 * target {
            return Ok(eta);
        }
        let slope = match derivative_order {
            Some(d) => nu * fermi_integral(d, eta)?,
            None => (f_hi - f_lo) / (hi - lo),
        };
        let mut next = eta - f_eta / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        let f_next = f(next)?;
        if f_next < 0.0 {
            lo = next;
            f_lo = f_next;
        } else {
            hi = next;
            f_hi = f_next;
        }
        let converged = (next - eta).abs() <= 4.0 * f64::EPSILON * next.abs().max(1.0);
        eta = next;
        f_eta = f_next;
        if converged || hi - lo <= 4.0 * f64::EPSILON * eta.abs().max(1.0) {
            break;
        }
    }
    if f_eta.abs() <= 1e-10 * target {
        Ok(eta)
    } else {
        Err(SpecfunError::InversionFailed(target))
    }
}
