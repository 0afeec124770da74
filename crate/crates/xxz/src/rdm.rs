//! Reduced density matrices assembled from spin correlators.
//!
//! Basis order for two spins: |uu>, |ud>, |du>, |dd>. With the XXZ
//! symmetries (only txx = tyy, tzz and a uniform magnetization survive)
//! the two-spin matrix is real and X-shaped.

use nalgebra::Matrix4;

use crate::correlations::SpinCorrelators;
use crate::error::{Error, Result};

/// Eigenvalues this far below zero are still accepted; quadrature noise
/// in the correlators can push exact zeros slightly negative.
const POSITIVITY_TOL: f64 = -1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct TwoSpinRDM {
    matrix: Matrix4<f64>,
}

impl TwoSpinRDM {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut ev: Vec<f64> = self.matrix.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        [ev[0], ev[1], ev[2], ev[3]]
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// Partial trace over either site (they coincide here by symmetry).
    pub fn partial_trace(&self) -> OneSiteRDM {
        let m = &self.matrix;
        // tracing out site 2: diag entries (m00 + m11, m22 + m33)
        let up = m[(0, 0)] + m[(1, 1)];
        let down = m[(2, 2)] + m[(3, 3)];
        OneSiteRDM { m: up - down }
    }
}

/// rho = 1/4 [ I + m (sz x I + I x sz) + txx (sx x sx + sy x sy) + tzz sz x sz ]
pub fn build_two_spin(c: &SpinCorrelators) -> Result<TwoSpinRDM> {
    let q = 0.25;
    let mut m = Matrix4::<f64>::zeros();
    m[(0, 0)] = q * (1.0 + c.tzz + c.pz + c.qz);
    m[(1, 1)] = q * (1.0 - c.tzz + c.pz - c.qz);
    m[(2, 2)] = q * (1.0 - c.tzz - c.pz + c.qz);
    m[(3, 3)] = q * (1.0 + c.tzz - c.pz - c.qz);
    m[(1, 2)] = q * 2.0 * c.txx;
    m[(2, 1)] = q * 2.0 * c.txx;
    let rho = TwoSpinRDM { matrix: m };
    let min_ev = rho.eigenvalues()[0];
    if min_ev < POSITIVITY_TOL {
        return Err(Error::Physicality(min_ev));
    }
    Ok(rho)
}

/// One-site reduced density matrix, diag((1+m)/2, (1-m)/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneSiteRDM {
    m: f64,
}

impl OneSiteRDM {
    pub fn magnetization(&self) -> f64 {
        self.m
    }

    /// The eigenvalue x = (1 + m) / 2; the other is 1 - x.
    pub fn x(&self) -> f64 {
        0.5 * (1.0 + self.m)
    }

    pub fn eigenvalues(&self) -> (f64, f64) {
        (self.x(), 1.0 - self.x())
    }
}

pub fn build_one_site(m: f64) -> Result<OneSiteRDM> {
    if !m.is_finite() || m.abs() > 1.0 + 1e-12 {
        return Err(Error::Domain(format!("magnetization m = {m} outside [-1, 1]")));
    }
    Ok(OneSiteRDM { m: m.clamp(-1.0, 1.0) })
}
