//! Concurrence and one-site von Neumann entropy.
//!
//! The symmetric closed form is C = max{0, |txx| - (1 + tzz)/2}; with a
//! broken-symmetry magnetization the subtracted term becomes
//! sqrt((1 + tzz)^2 - (pz + qz)^2)/2. The general Wootters procedure on
//! the assembled density matrix serves as the independent cross-check of
//! both closed forms.

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::correlations::SpinCorrelators;
use crate::error::{Error, Result};
use crate::rdm::{self, TwoSpinRDM};

/// Pre-max and clipped concurrences plus the Wootters cross-check.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConcurrenceReport {
    pub r: usize,
    pub c_tilde: f64,
    pub c: f64,
    pub c_tilde_ssb: f64,
    pub c_ssb: f64,
    pub wootters: f64,
}

/// Symmetric-state concurrence: (c_tilde, max(0, c_tilde)).
/// Magnetization fields of the input are ignored.
pub fn concurrence_symmetric(c: &SpinCorrelators) -> (f64, f64) {
    let c_tilde = 0.5 * (2.0 * c.txx.abs() - (1.0 + c.tzz));
    (c_tilde, c_tilde.max(0.0))
}

/// Radicand this far below zero is treated as rounding and clamped;
/// anything lower is a hard error.
const RADICAND_TOL: f64 = -1e-12;

/// Broken-symmetry concurrence; reduces to `concurrence_symmetric` when
/// pz = qz = 0.
pub fn concurrence_ssb(c: &SpinCorrelators) -> Result<(f64, f64)> {
    let one_tzz = 1.0 + c.tzz;
    let mag = c.pz + c.qz;
    let radicand = one_tzz * one_tzz - mag * mag;
    if radicand < RADICAND_TOL {
        return Err(Error::Domain(format!(
            "radicand {radicand:.3e} negative: (1+tzz)^2 < (pz+qz)^2"
        )));
    }
    let c_tilde = 0.5 * (2.0 * c.txx.abs() - radicand.max(0.0).sqrt());
    Ok((c_tilde, c_tilde.max(0.0)))
}

fn spin_flip_matrix() -> Matrix4<f64> {
    // sigma_y x sigma_y is real in this basis
    let mut y = Matrix4::<f64>::zeros();
    y[(0, 3)] = -1.0;
    y[(1, 2)] = 1.0;
    y[(2, 1)] = 1.0;
    y[(3, 0)] = -1.0;
    y
}

fn matrix_sqrt_psd(m: &Matrix4<f64>) -> Result<Matrix4<f64>> {
    let eig = m.symmetric_eigen();
    let mut d = Matrix4::<f64>::zeros();
    for i in 0..4 {
        let ev = eig.eigenvalues[i];
        if ev < -1e-9 {
            return Err(Error::Numerical(format!("negative eigenvalue {ev:.3e} in sqrt")));
        }
        d[(i, i)] = ev.max(0.0).sqrt();
    }
    Ok(eig.eigenvectors * d * eig.eigenvectors.transpose())
}

/// Wootters concurrence of a (real, symmetric) two-qubit density matrix:
/// C = max(0, l1 - l2 - l3 - l4) with l_i the decreasing square roots of
/// the eigenvalues of rho (sy x sy) rho* (sy x sy).
pub fn wootters_concurrence(rho: &TwoSpinRDM) -> Result<f64> {
    let y = spin_flip_matrix();
    let sqrt_rho = matrix_sqrt_psd(rho.matrix())?;
    // M = sqrt(rho) Y sqrt(rho) is symmetric and M^2 is similar to
    // rho rho~, so the l_i are just |eig(M)|. Taking absolute values of
    // eigenvalues instead of square roots of eigenvalues of M^2 avoids
    // sqrt-amplified noise on rank-deficient states (sqrt turns an O(eps)
    // zero eigenvalue into an O(sqrt(eps)) lambda).
    let m = sqrt_rho * y * sqrt_rho;
    let eig = m.symmetric_eigen();
    let mut lambdas = [0.0f64; 4];
    for i in 0..4 {
        lambdas[i] = eig.eigenvalues[i].abs();
    }
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBase {
    Two,
    Natural,
}

/// One-site von Neumann entropy of a state with magnetization m, in bits.
pub fn entropy_one_site(m: f64) -> Result<f64> {
    entropy_one_site_in(m, LogBase::Two)
}

pub fn entropy_one_site_in(m: f64, base: LogBase) -> Result<f64> {
    let x = rdm::build_one_site(m)?.x();
    let term = |p: f64| {
        if p <= 0.0 {
            0.0
        } else {
            match base {
                LogBase::Two => -p * p.log2(),
                LogBase::Natural => -p * p.ln(),
            }
        }
    };
    Ok(term(x) + term(1.0 - x))
}

/// Full report for one correlator set: both closed forms plus the
/// Wootters value computed from the assembled density matrix.
pub fn concurrence_report(c: &SpinCorrelators) -> Result<ConcurrenceReport> {
    let (c_tilde, conc) = concurrence_symmetric(c);
    let (c_tilde_ssb, c_ssb) = concurrence_ssb(c)?;
    let rho = rdm::build_two_spin(c)?;
    let wootters = wootters_concurrence(&rho)?;
    Ok(ConcurrenceReport { r: c.r, c_tilde, c: conc, c_tilde_ssb, c_ssb, wootters })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::Matrix4;

    fn corr(txx: f64, tzz: f64, m: f64) -> SpinCorrelators {
        SpinCorrelators::new(1, txx, txx, tzz, m, false).unwrap()
    }

    #[test]
    fn symmetric_known_points() {
        let (ct, c) = concurrence_symmetric(&corr(0.0, 1.0, 0.0));
        assert_eq!((ct, c), (-1.0, 0.0));

        let (ct, c) = concurrence_symmetric(&corr(-0.6366, -0.4053, 0.0));
        assert_abs_diff_eq!(ct, 0.33925, epsilon = 1e-4);
        assert_eq!(c, ct);

        let (ct, c) = concurrence_symmetric(&corr(-1.0, -1.0, 0.0));
        assert_eq!((ct, c), (1.0, 1.0));
    }

    #[test]
    fn ssb_known_points() {
        // ferro broken branch: radicand is exactly zero
        let (ct, c) = concurrence_ssb(&corr(0.0, 1.0, 1.0)).unwrap();
        assert_eq!((ct, c), (0.0, 0.0));

        // hand evaluation: 0.5 (0.6 - sqrt(1.44 - 1.0))
        let (ct, _) = concurrence_ssb(&corr(-0.3, 0.2, 0.5)).unwrap();
        assert_abs_diff_eq!(ct, 0.5 * (0.6 - 0.44f64.sqrt()), epsilon = 1e-15);
        assert_abs_diff_eq!(ct, -0.0317, epsilon = 1e-4);

        // reduction to the symmetric form at m = 0
        let input = corr(-0.5, -0.2, 0.0);
        let (ct_ssb, c_ssb) = concurrence_ssb(&input).unwrap();
        let (ct, c) = concurrence_symmetric(&input);
        assert_eq!((ct_ssb, c_ssb), (ct, c));
    }

    #[test]
    fn ssb_rejects_bad_radicand() {
        let c = SpinCorrelators { pz: 1.0, qz: 1.0, ..corr(0.0, -0.5, 0.0) };
        assert!(concurrence_ssb(&c).is_err());
    }

    #[test]
    fn wootters_bell_state() {
        // |Phi+> = (|uu> + |dd>)/sqrt(2)
        let mut m = Matrix4::<f64>::zeros();
        m[(0, 0)] = 0.5;
        m[(3, 3)] = 0.5;
        m[(0, 3)] = 0.5;
        m[(3, 0)] = 0.5;
        let y = spin_flip_matrix();
        let sq = matrix_sqrt_psd(&m).unwrap();
        let s = sq * y * sq;
        let mut l: Vec<f64> = s.symmetric_eigen().eigenvalues.iter().map(|e| e.abs()).collect();
        l.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_abs_diff_eq!(l[0] - l[1] - l[2] - l[3], 1.0, epsilon = 1e-9);
    }

    #[test]
    fn wootters_separable_and_singlet() {
        let mixed = rdm::build_two_spin(&corr(0.0, 0.0, 0.0)).unwrap(); // I/4
        assert_abs_diff_eq!(wootters_concurrence(&mixed).unwrap(), 0.0, epsilon = 1e-12);

        let singlet = rdm::build_two_spin(&corr(-1.0, -1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(wootters_concurrence(&singlet).unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn wootters_matches_closed_form_at_xx_point() {
        let c = corr(-0.6366, -0.4053, 0.0);
        let rho = rdm::build_two_spin(&c).unwrap();
        let w = wootters_concurrence(&rho).unwrap();
        let (_, expected) = concurrence_symmetric(&c);
        assert_abs_diff_eq!(w, expected, epsilon = 1e-9);
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy_one_site(0.0).unwrap(), 1.0);
        assert_eq!(entropy_one_site(1.0).unwrap(), 0.0);
        assert_eq!(entropy_one_site(-1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(entropy_one_site(0.5).unwrap(), 0.811278, epsilon = 1e-6);
        // natural-log variant
        assert_abs_diff_eq!(
            entropy_one_site_in(0.0, LogBase::Natural).unwrap(),
            std::f64::consts::LN_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn entropy_symmetry_in_m() {
        for k in 0..=20 {
            let m = -1.0 + 0.1 * k as f64;
            assert_abs_diff_eq!(
                entropy_one_site(m).unwrap(),
                entropy_one_site(-m).unwrap(),
                epsilon = 1e-14
            );
        }
    }
}
