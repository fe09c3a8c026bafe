//! Sampled field pairs `(Φ, Ψ)` and the shared evaluation interface of the
//! closed-form solvers.

use thiserror::Error;

use crate::parallel;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("field is not finite at x = {0}")]
    NonFinite(f64),
}

impl FieldError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::InvalidGrid(_) => "field::InvalidGrid",
            Self::NonFinite(_) => "field::NonFinite",
        }
    }
}

/// Values and slopes at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundaryConditions {
    pub phi0: f64,
    pub psi0: f64,
    pub dphi0: f64,
    pub dpsi0: f64,
}

impl BoundaryConditions {
    /// Both fields and slopes vanish at the origin.
    pub fn rest() -> Self {
        Self::default()
    }

    /// Prescribed values, zero slopes.
    pub fn values(phi0: f64, psi0: f64) -> Self {
        Self {
            phi0,
            psi0,
            ..Self::default()
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.phi0, self.psi0, self.dphi0, self.dpsi0]
            .iter()
            .all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldPoint {
    pub phi: f64,
    pub psi: f64,
}

impl std::ops::Add for FieldPoint {
    type Output = FieldPoint;
    fn add(self, o: FieldPoint) -> FieldPoint {
        FieldPoint {
            phi: self.phi + o.phi,
            psi: self.psi + o.psi,
        }
    }
}

/// One labelled part of a solution (e.g. `transient`, `steady`).
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub label: &'static str,
    pub phi: Vec<f64>,
    pub psi: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSolution {
    pub x: Vec<f64>,
    pub phi: Vec<f64>,
    pub psi: Vec<f64>,
    pub parts: Vec<Component>,
}

impl FieldSolution {
    pub fn part(&self, label: &str) -> Option<&Component> {
        self.parts.iter().find(|c| c.label == label)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Sup-norm distance between two fields sampled on the same grid.
pub fn sup_distance(a: &FieldSolution, b: &FieldSolution) -> f64 {
    a.phi
        .iter()
        .zip(&b.phi)
        .chain(a.psi.iter().zip(&b.psi))
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max)
}

/// `n` evenly spaced points on `[lo, hi]`, both ends included.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, FieldError> {
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(FieldError::InvalidGrid(format!("need lo < hi, got [{lo}, {hi}]")));
    }
    if n < 2 {
        return Err(FieldError::InvalidGrid(format!("need at least 2 points, got {n}")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect())
}

/// `x ∈ [0, 20]` with 4001 samples.
pub fn default_grid() -> Vec<f64> {
    uniform_grid(0.0, 20.0, 4001).expect("static grid is valid")
}

pub fn check_grid(x: &[f64]) -> Result<(), FieldError> {
    if x.is_empty() {
        return Err(FieldError::InvalidGrid("empty grid".into()));
    }
    if let Some(bad) = x.iter().find(|v| !v.is_finite()) {
        return Err(FieldError::InvalidGrid(format!("non-finite abscissa {bad}")));
    }
    if x.windows(2).any(|w| w[1] <= w[0]) {
        return Err(FieldError::InvalidGrid("abscissae must be strictly increasing".into()));
    }
    Ok(())
}

/// A closed-form field that can be evaluated pointwise.
pub trait FieldEvaluator: Sync {
    /// Labels of the additive parts returned by [`FieldEvaluator::component`].
    fn component_labels(&self) -> &'static [&'static str];

    fn component(&self, index: usize, x: f64) -> FieldPoint;

    fn eval(&self, x: f64) -> FieldPoint {
        (0..self.component_labels().len())
            .map(|i| self.component(i, x))
            .fold(FieldPoint::default(), |a, b| a + b)
    }

    /// Samples the field and each part on `x`.
    fn sample(&self, x: &[f64]) -> Result<FieldSolution, FieldError> {
        check_grid(x)?;
        let labels = self.component_labels();
        let rows: Vec<Vec<FieldPoint>> =
            parallel::map(x, |&xi| (0..labels.len()).map(|i| self.component(i, xi)).collect());
        let mut phi = Vec::with_capacity(x.len());
        let mut psi = Vec::with_capacity(x.len());
        let mut parts: Vec<Component> = labels
            .iter()
            .map(|&label| Component {
                label,
                phi: Vec::with_capacity(x.len()),
                psi: Vec::with_capacity(x.len()),
            })
            .collect();
        for (row, &xi) in rows.iter().zip(x) {
            let total = row.iter().fold(FieldPoint::default(), |a, &b| a + b);
            if !(total.phi.is_finite() && total.psi.is_finite()) {
                return Err(FieldError::NonFinite(xi));
            }
            phi.push(total.phi);
            psi.push(total.psi);
            for (part, p) in parts.iter_mut().zip(row) {
                part.phi.push(p.phi);
                part.psi.push(p.psi);
            }
        }
        Ok(FieldSolution {
            x: x.to_vec(),
            phi,
            psi,
            parts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = uniform_grid(0.0, 1.0, 5).unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(default_grid().len(), 4001);
        assert_eq!(*default_grid().last().unwrap(), 20.0);
        assert!(uniform_grid(1.0, 1.0, 3).is_err());
        assert!(check_grid(&[0.0, 1.0, 1.0]).is_err());
    }
}
