//! Sweeps over the anisotropy and detection of non-analyticities.
//!
//! The transition point Δ = −1 is genuinely double-valued, so it is never
//! placed on the grid; instead one-sided values at −1 ∓ 1e−6 are stored
//! separately and the detector treats the point specially. Detected
//! features are classified by origin: created by the max-clipping in the
//! concurrence definition, or inherited from the density-matrix elements
//! themselves.

use serde::{Deserialize, Serialize};

use crate::bethe::{self, Anisotropy};
use crate::correlations;
use crate::entanglement;
use crate::error::{Error, Result};
use crate::par;

/// Offset of the one-sided limits around Δ = −1.
pub const SIDE_EPS: f64 = 1e-6;
const TRANSITION: f64 = -1.0;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub lo: f64,
    pub hi: f64,
    pub n_points: usize,
    pub rs: Vec<usize>,
    /// Use the broken-symmetry branch (m = +1 in the ferro phase) for the
    /// SSB signals; otherwise they reduce to the symmetric ones.
    pub ssb: bool,
}

impl SweepConfig {
    pub fn new(lo: f64, hi: f64, n_points: usize, rs: Vec<usize>, ssb: bool) -> Result<Self> {
        if !(lo < hi) || lo < -3.0 || hi >= 1.0 {
            return Err(Error::Domain(format!(
                "sweep range [{lo}, {hi}] must be increasing and inside [-3, 1)"
            )));
        }
        if n_points < 16 {
            return Err(Error::Domain("sweep needs at least 16 points".into()));
        }
        if rs.is_empty() || rs.iter().any(|&r| r == 0 || r > 3) {
            return Err(Error::Domain("separations must be a non-empty subset of {1,2,3}".into()));
        }
        Ok(SweepConfig { lo, hi, n_points, rs, ssb })
    }
}

/// One-sided signal values at the excluded transition point.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TransitionLimits {
    pub location: f64,
    pub eps: f64,
    /// Values at location − eps, aligned with the signal list.
    pub left: Vec<f64>,
    /// Values at location + eps.
    pub right: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub grid: Vec<f64>,
    /// (name, series) pairs in canonical column order.
    pub signals: Vec<(String, Vec<f64>)>,
    pub transition: Option<TransitionLimits>,
}

impl SweepResult {
    pub fn signal(&self, name: &str) -> Option<&[f64]> {
        self.signals.iter().find(|(n, _)| n == name).map(|(_, s)| s.as_slice())
    }

    pub fn signal_index(&self, name: &str) -> Option<usize> {
        self.signals.iter().position(|(n, _)| n == name)
    }

    pub fn signal_names(&self) -> Vec<&str> {
        self.signals.iter().map(|(n, _)| n.as_str()).collect()
    }
}

/// Canonical signal names for a set of separations.
pub fn signal_names(rs: &[usize]) -> Vec<String> {
    let mut names = vec!["e0".to_string()];
    for &r in rs {
        for base in ["tzz", "txx", "c_tilde", "c", "c_tilde_ssb", "c_ssb"] {
            names.push(format!("{base}_{r}"));
        }
    }
    names.push("entropy_sym".into());
    names.push("entropy_ssb".into());
    names
}

/// All signal values at one anisotropy, in canonical order.
fn eval_point(delta: f64, rs: &[usize], ssb: bool) -> Result<Vec<f64>> {
    let d = Anisotropy::new(delta)?;
    let mut out = Vec::with_capacity(3 + 6 * rs.len());
    out.push(bethe::ground_energy(d)?.e0);
    for &r in rs {
        let sym = correlations::correlators_at(d, r, false)?;
        let broken = if ssb { correlations::correlators_at(d, r, true)? } else { sym };
        let (c_tilde, c) = entanglement::concurrence_symmetric(&sym);
        let (c_tilde_ssb, c_ssb) = entanglement::concurrence_ssb(&broken)?;
        out.extend_from_slice(&[sym.tzz, sym.txx, c_tilde, c, c_tilde_ssb, c_ssb]);
    }
    let m_broken = if ssb && d.is_ferro() { 1.0 } else { 0.0 };
    out.push(entanglement::entropy_one_site(0.0)?);
    out.push(entanglement::entropy_one_site(m_broken)?);
    Ok(out)
}

fn sweep_impl(config: &SweepConfig, parallel: bool) -> Result<SweepResult> {
    let n = config.n_points;
    let mut grid: Vec<f64> = (0..n)
        .map(|i| config.lo + (config.hi - config.lo) * i as f64 / (n - 1) as f64)
        .collect();
    grid.retain(|g| (g - TRANSITION).abs() > 1e-9);

    let eval = |&g: &f64| -> Result<Vec<f64>> {
        eval_point(g, &config.rs, config.ssb)
            .map_err(|e| Error::Numerical(format!("sweep failed at delta = {g}: {e}")))
    };
    let rows = if parallel { par::map(&grid, eval) } else { par::map_seq(&grid, eval) };
    let mut points = Vec::with_capacity(rows.len());
    for row in rows {
        points.push(row?);
    }

    let names = signal_names(&config.rs);
    let signals: Vec<(String, Vec<f64>)> = names
        .iter()
        .enumerate()
        .map(|(k, name)| (name.clone(), points.iter().map(|p| p[k]).collect()))
        .collect();

    let transition = (config.lo < TRANSITION && config.hi > TRANSITION)
        .then(|| -> Result<TransitionLimits> {
            Ok(TransitionLimits {
                location: TRANSITION,
                eps: SIDE_EPS,
                left: eval_point(TRANSITION - SIDE_EPS, &config.rs, config.ssb)?,
                right: eval_point(TRANSITION + SIDE_EPS, &config.rs, config.ssb)?,
            })
        })
        .transpose()?;

    Ok(SweepResult { config: config.clone(), grid, signals, transition })
}

/// Evaluate all signals on the grid (parallel when the `parallel` feature
/// is enabled).
pub fn sweep(config: &SweepConfig) -> Result<SweepResult> {
    sweep_impl(config, true)
}

/// Sequential reference path; identical results, used as benchmark
/// baseline and as the fallback without the `parallel` feature.
pub fn sweep_seq(config: &SweepConfig) -> Result<SweepResult> {
    sweep_impl(config, false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    Jump,
    Kink,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    MaxOperation,
    MatrixElements,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImpliedOrder {
    FirstOrder,
    SecondOrder,
    None,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NonAnalyticityReport {
    pub signal: String,
    pub location: f64,
    pub kind: Kind,
    pub left_value: f64,
    pub right_value: f64,
    pub left_slope: f64,
    pub right_slope: f64,
    pub origin: Origin,
    pub implied_order: ImpliedOrder,
    /// Free-text caveat, e.g. when a slope break survives only because a
    /// magnetization term compensates the correlator discontinuity.
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Thresholds {
    pub jump: Option<f64>,
    pub slope: Option<f64>,
}

fn median(values: &mut Vec<f64>) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Representative index of each run of consecutive flagged indices:
/// the one with the largest magnitude.
fn merge_runs(flags: &[usize], magnitude: impl Fn(usize) -> f64) -> Vec<(usize, usize, usize)> {
    // returns (run_start, run_end, representative)
    let mut runs = Vec::new();
    let mut k = 0;
    while k < flags.len() {
        let start = flags[k];
        let mut end = start;
        let mut rep = start;
        while k + 1 < flags.len() && flags[k + 1] == end + 1 {
            k += 1;
            end = flags[k];
            if magnitude(end) > magnitude(rep) {
                rep = end;
            }
        }
        runs.push((start, end, rep));
        k += 1;
    }
    runs
}

/// Cells this close to the straddled transition are folded into the
/// transition report instead of being reported on their own; steep but
/// continuous behavior next to Δ = −1 belongs to the transition.
const FOLD_WINDOW: usize = 3;

struct SeriesGeometry {
    diffs: Vec<f64>,
    slopes: Vec<f64>,
    slope_diffs: Vec<f64>,
    /// Index of the cell (i, i+1) straddling the transition, if any.
    straddle: Option<usize>,
}

fn geometry(grid: &[f64], f: &[f64], has_transition: bool) -> SeriesGeometry {
    let n = grid.len();
    let diffs: Vec<f64> = (0..n - 1).map(|i| f[i + 1] - f[i]).collect();
    let slopes: Vec<f64> = (0..n - 1).map(|i| diffs[i] / (grid[i + 1] - grid[i])).collect();
    let slope_diffs: Vec<f64> = (0..n - 2).map(|i| slopes[i + 1] - slopes[i]).collect();
    let straddle = has_transition
        .then(|| (0..n - 1).find(|&i| grid[i] < TRANSITION && grid[i + 1] > TRANSITION))
        .flatten();
    SeriesGeometry { diffs, slopes, slope_diffs, straddle }
}

fn near_straddle(idx: usize, straddle: Option<usize>, window: usize) -> bool {
    match straddle {
        Some(s) => idx + window >= s && idx <= s + window,
        None => false,
    }
}

/// Scale-free default threshold: 10x the median magnitude (straddle
/// neighborhood excluded), floored at roundoff scale. Piecewise-constant
/// series have a zero median, so an isolated step falls back to the floor
/// and is caught by the local-contrast test instead.
fn default_threshold(values: &[f64], straddle: Option<usize>, scale: f64) -> f64 {
    let mut mags: Vec<f64> = values
        .iter()
        .enumerate()
        .filter(|&(i, _)| !near_straddle(i, straddle, FOLD_WINDOW))
        .map(|(_, v)| v.abs())
        .collect();
    let med = median(&mut mags);
    (10.0 * med).max(1e-9 * (1.0 + scale))
}

/// Find jump and kink locations in one signal of a sweep. Returned
/// reports carry origin = NotApplicable; see [`classify_origin`].
pub fn detect(sweep: &SweepResult, signal: &str) -> Result<Vec<NonAnalyticityReport>> {
    detect_with(sweep, signal, Thresholds::default())
}

pub fn detect_with(
    sweep: &SweepResult,
    signal: &str,
    thresholds: Thresholds,
) -> Result<Vec<NonAnalyticityReport>> {
    let f = sweep
        .signal(signal)
        .ok_or_else(|| Error::MissingSeries(signal.to_string()))?;
    let grid = &sweep.grid;
    if grid.len() < 8 {
        return Err(Error::Domain("detection needs at least 8 grid points".into()));
    }
    let geo = geometry(grid, f, sweep.transition.is_some());

    let max_f = f.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let max_d = geo.slopes.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let jump_thr =
        thresholds.jump.unwrap_or_else(|| default_threshold(&geo.diffs, geo.straddle, max_f));
    let slope_thr =
        thresholds.slope.unwrap_or_else(|| default_threshold(&geo.slope_diffs, geo.straddle, max_d));

    let mut reports = Vec::new();

    // Local contrast: a genuine break stands out against at least one
    // neighboring cell, while a steep but smooth region has comparable
    // magnitudes cell to cell. The min of the available neighbors is used
    // so a break split across two cells still registers on both; at the
    // grid edges the single existing neighbor stands in for the missing
    // one, otherwise the first/last cell of a smooth steep signal would
    // have no contrast to defeat.
    fn stands_out(vals: &[f64], i: usize, floor: f64) -> bool {
        let prev = (i > 0).then(|| vals[i - 1].abs());
        let next = vals.get(i + 1).map(|v| v.abs());
        let baseline = match (prev, next) {
            (Some(p), Some(n)) => p.min(n),
            (Some(p), None) => p,
            (None, Some(n)) => n,
            (None, None) => 0.0,
        };
        vals[i].abs() > 5.0 * baseline + floor
    }
    let local_jump = |i: usize| stands_out(&geo.diffs, i, 1e-9 * (1.0 + max_f));
    let jump_cells: Vec<usize> = (0..geo.diffs.len())
        .filter(|&i| Some(i) != geo.straddle && geo.diffs[i].abs() > jump_thr && local_jump(i))
        .collect();
    for (start, end, rep) in merge_runs(&jump_cells, |i| geo.diffs[i].abs()) {
        if near_straddle(start, geo.straddle, FOLD_WINDOW)
            || near_straddle(end, geo.straddle, FOLD_WINDOW)
        {
            continue; // folded into the transition report
        }
        reports.push(NonAnalyticityReport {
            signal: signal.to_string(),
            location: 0.5 * (grid[rep] + grid[rep + 1]),
            kind: Kind::Jump,
            left_value: f[rep],
            right_value: f[rep + 1],
            left_slope: if rep > 0 { geo.slopes[rep - 1] } else { geo.slopes[rep] },
            right_slope: if rep + 1 < geo.slopes.len() { geo.slopes[rep + 1] } else { geo.slopes[rep] },
            origin: Origin::NotApplicable,
            implied_order: ImpliedOrder::FirstOrder,
            note: None,
        });
    }

    // regular-grid kinks: slope breaks with continuous values; the same
    // local-contrast rule as for jumps keeps signals whose curvature merely
    // varies a lot across the window (exp, log near a wall) from firing
    let local_kink = |i: usize| stands_out(&geo.slope_diffs, i, 1e-9 * (1.0 + max_d));
    let is_jump_cell = |i: usize| geo.diffs.get(i).map_or(false, |v| v.abs() > jump_thr);
    let kink_points: Vec<usize> = (0..geo.slope_diffs.len())
        .filter(|&i| {
            geo.slope_diffs[i].abs() > slope_thr
                && local_kink(i)
                && !is_jump_cell(i)
                && !is_jump_cell(i + 1)
                && Some(i) != geo.straddle
                && Some(i + 1) != geo.straddle
        })
        .collect();
    for (start, end, rep) in merge_runs(&kink_points, |i| geo.slope_diffs[i].abs()) {
        if near_straddle(start, geo.straddle, FOLD_WINDOW)
            || near_straddle(end, geo.straddle, FOLD_WINDOW)
        {
            continue;
        }
        reports.push(NonAnalyticityReport {
            signal: signal.to_string(),
            location: grid[rep + 1],
            kind: Kind::Kink,
            left_value: f[rep + 1],
            right_value: f[rep + 1],
            left_slope: geo.slopes[rep],
            right_slope: geo.slopes[rep + 1],
            origin: Origin::NotApplicable,
            implied_order: ImpliedOrder::SecondOrder,
            note: None,
        });
    }

    // the transition point, from the stored one-sided limits
    if let (Some(limits), Some(s)) = (&sweep.transition, geo.straddle) {
        let k = sweep
            .signal_index(signal)
            .ok_or_else(|| Error::MissingSeries(signal.to_string()))?;
        let left = limits.left[k];
        let right = limits.right[k];
        let left_slope = (left - f[s]) / ((limits.location - limits.eps) - grid[s]);
        let right_slope = (f[s + 1] - right) / (grid[s + 1] - (limits.location + limits.eps));
        if (left - right).abs() > jump_thr {
            reports.push(NonAnalyticityReport {
                signal: signal.to_string(),
                location: limits.location,
                kind: Kind::Jump,
                left_value: left,
                right_value: right,
                left_slope,
                right_slope,
                origin: Origin::NotApplicable,
                implied_order: ImpliedOrder::FirstOrder,
                note: None,
            });
        } else if (left_slope - right_slope).abs() > slope_thr {
            reports.push(NonAnalyticityReport {
                signal: signal.to_string(),
                location: limits.location,
                kind: Kind::Kink,
                left_value: left,
                right_value: right,
                left_slope,
                right_slope,
                origin: Origin::NotApplicable,
                implied_order: ImpliedOrder::SecondOrder,
                note: None,
            });
        }
    }

    reports.sort_by(|a, b| a.location.partial_cmp(&b.location).unwrap());
    Ok(reports)
}

/// Companion pre-max series of a clipped concurrence signal, if any.
fn companion_name(signal: &str) -> Option<String> {
    if let Some(rest) = signal.strip_prefix("c_ssb_") {
        Some(format!("c_tilde_ssb_{rest}"))
    } else if let Some(rest) = signal.strip_prefix("c_") {
        if signal.starts_with("c_tilde") {
            None
        } else {
            Some(format!("c_tilde_{rest}"))
        }
    } else {
        None
    }
}

/// Side values of `signal` around `location` (one-sided limits when the
/// location is the transition point, nearest grid values otherwise).
fn side_values(sweep: &SweepResult, signal: &str, location: f64) -> Result<(f64, f64)> {
    let f = sweep
        .signal(signal)
        .ok_or_else(|| Error::MissingSeries(signal.to_string()))?;
    if let Some(limits) = &sweep.transition {
        if (location - limits.location).abs() < 1e-12 {
            let k = sweep
                .signal_index(signal)
                .ok_or_else(|| Error::MissingSeries(signal.to_string()))?;
            return Ok((limits.left[k], limits.right[k]));
        }
    }
    let i = sweep.grid.partition_point(|&g| g < location);
    let lo = i.saturating_sub(1);
    let hi = i.min(f.len() - 1);
    Ok((f[lo], f[hi]))
}

/// Decide whether a detected non-analyticity is created by the max
/// operation in the concurrence definition or inherited from the matrix
/// elements. Signals that are not clipped (energies, correlators, pre-max
/// concurrences, entropies) are matrix-element-driven by construction.
pub fn classify_origin(
    sweep: &SweepResult,
    report: &NonAnalyticityReport,
) -> Result<NonAnalyticityReport> {
    let mut out = report.clone();
    if report.kind == Kind::None {
        out.origin = Origin::NotApplicable;
        return Ok(out);
    }
    let Some(companion) = companion_name(&report.signal) else {
        out.origin = Origin::MatrixElements;
        return Ok(out);
    };
    if sweep.signal(&companion).is_none() {
        return Err(Error::MissingSeries(companion));
    }

    let (pre_left, pre_right) = side_values(sweep, &companion, report.location)?;
    let (post_left, post_right) = (report.left_value, report.right_value);
    let clip_tol = 1e-9;
    let clipped = (pre_left < -clip_tol && post_left.abs() <= clip_tol)
        || (pre_right < -clip_tol && post_right.abs() <= clip_tol);

    if clipped {
        out.origin = Origin::MaxOperation;
    } else {
        out.origin = Origin::MatrixElements;
        if report.kind == Kind::Kink && report.signal.starts_with("c_ssb") {
            out.note = Some(
                "the zz-correlator discontinuity is compensated by the magnetization \
                 term under the square root, so only a slope break survives"
                    .to_string(),
            );
        }
    }
    Ok(out)
}

/// Detect and classify in one pass.
pub fn detect_classified(sweep: &SweepResult, signal: &str) -> Result<Vec<NonAnalyticityReport>> {
    detect(sweep, signal)?
        .iter()
        .map(|r| classify_origin(sweep, r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Build a SweepResult carrying arbitrary signal series, for detector
    /// tests that do not need the physics pipeline.
    fn synthetic(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> f64) -> SweepResult {
        let grid: Vec<f64> =
            (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
        let series: Vec<f64> = grid.iter().map(|&g| f(g)).collect();
        let transition = (lo < TRANSITION && hi > TRANSITION).then(|| TransitionLimits {
            location: TRANSITION,
            eps: SIDE_EPS,
            left: vec![f(TRANSITION - SIDE_EPS)],
            right: vec![f(TRANSITION + SIDE_EPS)],
        });
        SweepResult {
            config: SweepConfig { lo, hi, n_points: n, rs: vec![1], ssb: false },
            grid,
            signals: vec![("s".to_string(), series)],
            transition,
        }
    }

    #[test]
    fn analytic_signals_produce_no_reports() {
        let cases: Vec<Box<dyn Fn(f64) -> f64>> = vec![
            Box::new(|x| x),
            Box::new(|x| x * x),
            Box::new(|x| x * x * x),
            Box::new(|x| x * x * x * x),
            Box::new(|x| 1.0 + 0.5 * x - 0.25 * x * x),
            Box::new(|x| x.sin()),
            Box::new(|x| (3.0 * x).sin()),
            Box::new(|x| x.cos()),
            Box::new(|x| (2.0 * x).cos() * 0.3),
            Box::new(|x| x.exp()),
            Box::new(|x| (-x).exp()),
            Box::new(|x| (0.5 * x).exp() + x),
            Box::new(|x| 1.0 / (2.0 + x.abs().powi(2))),
            Box::new(|x| (x + 2.5).ln()),
            Box::new(|x| x.sinh() * 0.1),
            Box::new(|x| x.tanh()),
            Box::new(|x| 0.2 * x * x.sin()),
            Box::new(|x| (x * x - 1.0) * 0.1),
            Box::new(|_| 5.0),
            Box::new(|x| 0.3 * x + (1.3 * x).cos()),
        ];
        for (k, f) in cases.iter().enumerate() {
            let sweep = synthetic(-2.0, 0.9, 300, f);
            let reports = detect(&sweep, "s").unwrap();
            assert!(reports.is_empty(), "case {k}: false positives {reports:?}");
        }
    }

    #[test]
    fn step_function_reported_as_jump_at_transition() {
        let sweep = synthetic(-2.0, 0.0, 200, |x| if x < TRANSITION { 0.0 } else { 1.0 });
        let reports = detect(&sweep, "s").unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].kind, Kind::Jump);
        assert_eq!(reports[0].location, TRANSITION);
        assert_eq!(reports[0].implied_order, ImpliedOrder::FirstOrder);
    }

    #[test]
    fn interior_step_away_from_transition() {
        let sweep = synthetic(-0.8, 0.8, 200, |x| if x < 0.1 { 0.0 } else { 1.0 });
        let reports = detect(&sweep, "s").unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].kind, Kind::Jump);
        assert!((reports[0].location - 0.1).abs() < 0.02);
    }

    #[test]
    fn hinge_reported_as_kink() {
        let sweep = synthetic(-2.0, 0.0, 200, |x| (x - TRANSITION).max(0.0));
        let reports = detect(&sweep, "s").unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].kind, Kind::Kink);
        assert_eq!(reports[0].location, TRANSITION);
        assert_eq!(reports[0].implied_order, ImpliedOrder::SecondOrder);
        assert!(reports[0].left_slope.abs() < 1e-6);
        assert!((reports[0].right_slope - 1.0).abs() < 1e-3);
    }

    #[test]
    fn threshold_overrides_respected() {
        let sweep = synthetic(-2.0, 0.0, 200, |x| if x < TRANSITION { 0.0 } else { 1.0 });
        let none = detect_with(
            &sweep,
            "s",
            Thresholds { jump: Some(10.0), slope: Some(1e9) },
        )
        .unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn missing_signal_errors() {
        let sweep = synthetic(-2.0, 0.0, 64, |x| x);
        assert!(matches!(detect(&sweep, "nope"), Err(Error::MissingSeries(_))));
    }

    #[test]
    fn companion_names() {
        assert_eq!(companion_name("c_1").as_deref(), Some("c_tilde_1"));
        assert_eq!(companion_name("c_ssb_2").as_deref(), Some("c_tilde_ssb_2"));
        assert_eq!(companion_name("c_tilde_1"), None);
        assert_eq!(companion_name("entropy_ssb"), None);
        assert_eq!(companion_name("e0"), None);
    }
}
