//! Parameter grids, violation-threshold root finding, and B = 2 contour
//! extraction over the figure windows.

use crate::bell::{bell_with_loss, BellOutcome};
use crate::circuit::CircuitParams;
use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

/// Swept parameter. Detuning is swept as the fraction δω/ωd to match the
/// figure axes; temperature is in kelvin internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisParam {
    Epsilon,
    Temperature,
    DeltaOmegaFrac,
    Eta,
}

impl AxisParam {
    /// Column name used by the output writers (units encoded in the name).
    pub fn column_name(&self) -> &'static str {
        match self {
            AxisParam::Epsilon => "epsilon",
            AxisParam::Temperature => "temperature_mK",
            AxisParam::DeltaOmegaFrac => "detuning_frac",
            AxisParam::Eta => "eta",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "epsilon" => Ok(AxisParam::Epsilon),
            "temperature" => Ok(AxisParam::Temperature),
            "delta_omega_frac" | "detuning_frac" => Ok(AxisParam::DeltaOmegaFrac),
            "eta" => Ok(AxisParam::Eta),
            other => Err(Error::config(format!(
                "unknown axis parameter '{other}' (expected epsilon, temperature, detuning_frac or eta)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axis {
    pub param: AxisParam,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn linspace(param: AxisParam, min: f64, max: f64, count: usize) -> Result<Self> {
        if !(min < max) {
            return Err(Error::config(format!(
                "axis {param:?}: min ({min}) must be < max ({max})"
            )));
        }
        if count < 2 {
            return Err(Error::config(format!("axis {param:?}: count must be >= 2, got {count}")));
        }
        let values = (0..count)
            .map(|i| {
                let t = i as f64 / (count - 1) as f64;
                (min * (1.0 - t) + max * t).clamp(min, max)
            })
            .collect();
        Ok(Axis { param, values })
    }

    pub fn from_values(param: AxisParam, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::config(format!("axis {param:?}: empty value list")));
        }
        Ok(Axis { param, values })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub base: CircuitParams,
    /// Transmission efficiency when loss is part of the scenario and not an
    /// axis; None means lossless.
    pub loss_eta: Option<f64>,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if let Some(eta) = self.loss_eta {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::config(format!("loss_eta must lie in [0, 1], got {eta}")));
            }
        }
        if let Some(axis2) = &self.axis2 {
            if axis2.param == self.axis1.param {
                return Err(Error::config("axis1 and axis2 must sweep distinct parameters"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub outcome: BellOutcome,
}

fn apply_axis(params: &mut CircuitParams, eta: &mut f64, param: AxisParam, value: f64) {
    match param {
        AxisParam::Epsilon => params.epsilon = value,
        AxisParam::Temperature => params.temperature = value,
        AxisParam::DeltaOmegaFrac => params.delta_omega = value * params.omega_d,
        AxisParam::Eta => *eta = value,
    }
}

/// Evaluate the Bell pipeline at one grid point of a spec.
pub fn evaluate_point(spec: &SweepSpec, a1: f64, a2: Option<f64>) -> Result<BellOutcome> {
    let mut params = spec.base;
    let mut eta = spec.loss_eta.unwrap_or(1.0);
    apply_axis(&mut params, &mut eta, spec.axis1.param, a1);
    if let (Some(axis2), Some(v2)) = (&spec.axis2, a2) {
        apply_axis(&mut params, &mut eta, axis2.param, v2);
    }
    bell_with_loss(&params, eta)
}

/// Dense sweep over the grid, axis2-major then axis1 (row order is part of
/// the output contract).
pub fn grid_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let outer: Vec<Option<f64>> = match &spec.axis2 {
        Some(axis2) => axis2.values.iter().copied().map(Some).collect(),
        None => vec![None],
    };
    let mut rows = Vec::with_capacity(outer.len() * spec.axis1.values.len());
    for &a2 in &outer {
        for &a1 in &spec.axis1.values {
            let outcome = evaluate_point(spec, a1, a2)?;
            rows.push(SweepRow { axis1: a1, axis2: a2, outcome });
        }
    }
    Ok(rows)
}

/// Bisection for the axis value where b = 2, given a bracket with a sign
/// change of b − 2.
pub fn violation_threshold(
    base: &CircuitParams,
    loss_eta: Option<f64>,
    param: AxisParam,
    bracket: (f64, f64),
) -> Result<f64> {
    base.validate()?;
    let eval = |x: f64| -> Result<f64> {
        let mut params = *base;
        let mut eta = loss_eta.unwrap_or(1.0);
        apply_axis(&mut params, &mut eta, param, x);
        Ok(bell_with_loss(&params, eta)?.b_value - 2.0)
    };
    let (mut lo, mut hi) = bracket;
    let mut flo = eval(lo)?;
    let fhi = eval(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Bracket(format!(
            "no sign change of b - 2 on [{lo}, {hi}]: f(lo) = {flo:.3e}, f(hi) = {fhi:.3e}"
        )));
    }
    let width = hi - lo;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fmid = eval(mid)?;
        if fmid.abs() <= 1e-9 || (hi - lo) <= 1e-9 * width {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourResult {
    /// Contour level in b (fixed at 2).
    pub level: f64,
    /// Disconnected polylines of (axis1, axis2) points, ordered along each
    /// curve.
    pub segments: Vec<Vec<(f64, f64)>>,
    pub refined: bool,
}

impl ContourResult {
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.segments.iter().flatten().copied()
    }
}

/// Marching squares over the grid of b − 2 followed by per-edge bisection
/// refinement to |b − 2| ≤ contour_tol. An empty window (no crossing) is an
/// empty segment list, not an error.
pub fn contour_b2(spec: &SweepSpec, contour_tol: f64) -> Result<ContourResult> {
    spec.validate()?;
    let axis2 = spec
        .axis2
        .as_ref()
        .ok_or_else(|| Error::config("contour extraction needs two axes"))?;
    if !(contour_tol > 0.0) {
        return Err(Error::config(format!("contour_tol must be > 0, got {contour_tol}")));
    }
    let xs = &spec.axis1.values;
    let ys = &axis2.values;
    // grid of b - 2
    let mut field = vec![vec![0.0f64; ys.len()]; xs.len()];
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            field[i][j] = evaluate_point(spec, x, Some(y))?.b_value - 2.0;
        }
    }
    // refine a crossing along the straight edge between two grid nodes
    let refine = |p0: (f64, f64), f0: f64, p1: (f64, f64), f1: f64| -> Result<(f64, f64)> {
        debug_assert!(f0.signum() != f1.signum());
        let (mut a, mut fa, mut b) = (p0, f0, p1);
        for _ in 0..100 {
            let mid = (0.5 * (a.0 + b.0), 0.5 * (a.1 + b.1));
            let fm = evaluate_point(spec, mid.0, Some(mid.1))?.b_value - 2.0;
            if fm.abs() <= contour_tol {
                return Ok(mid);
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        Ok((0.5 * (a.0 + b.0), 0.5 * (a.1 + b.1)))
    };
    // collect one refined point per sign-changing cell edge, then join them
    // into per-cell segments
    let mut raw_segments: Vec<((f64, f64), (f64, f64))> = Vec::new();
    for i in 0..xs.len() - 1 {
        for j in 0..ys.len() - 1 {
            let corners = [
                ((xs[i], ys[j]), field[i][j]),
                ((xs[i + 1], ys[j]), field[i + 1][j]),
                ((xs[i + 1], ys[j + 1]), field[i + 1][j + 1]),
                ((xs[i], ys[j + 1]), field[i][j + 1]),
            ];
            // exact-zero nodes count as non-violating: treat 0 as negative
            let sign = |f: f64| f > 0.0;
            let mut crossings: Vec<(f64, f64)> = Vec::new();
            for e in 0..4 {
                let (p0, f0) = corners[e];
                let (p1, f1) = corners[(e + 1) % 4];
                if sign(f0) != sign(f1) && f0 != f1 {
                    crossings.push(refine(p0, f0, p1, f1)?);
                }
            }
            match crossings.len() {
                0 => {}
                2 => raw_segments.push((crossings[0], crossings[1])),
                4 => {
                    // saddle: disambiguate with the cell-center value
                    let cx = 0.5 * (xs[i] + xs[i + 1]);
                    let cy = 0.5 * (ys[j] + ys[j + 1]);
                    let fc = evaluate_point(spec, cx, Some(cy))?.b_value - 2.0;
                    if sign(fc) == sign(corners[0].1) {
                        raw_segments.push((crossings[0], crossings[3]));
                        raw_segments.push((crossings[1], crossings[2]));
                    } else {
                        raw_segments.push((crossings[0], crossings[1]));
                        raw_segments.push((crossings[2], crossings[3]));
                    }
                }
                _ => {
                    // a crossing through a grid node; skip the degenerate cell
                }
            }
        }
    }
    Ok(ContourResult {
        level: 2.0,
        segments: chain_segments(raw_segments, xs, ys),
        refined: true,
    })
}

/// Join per-cell segments into polylines by endpoint matching.
fn chain_segments(
    mut segments: Vec<((f64, f64), (f64, f64))>,
    xs: &[f64],
    ys: &[f64],
) -> Vec<Vec<(f64, f64)>> {
    let eps_x = 1e-9 * (xs[xs.len() - 1] - xs[0]).abs().max(1e-300);
    let eps_y = 1e-9 * (ys[ys.len() - 1] - ys[0]).abs().max(1e-300);
    let close = |a: (f64, f64), b: (f64, f64)| {
        (a.0 - b.0).abs() <= eps_x && (a.1 - b.1).abs() <= eps_y
    };
    let mut polylines = Vec::new();
    while let Some((a, b)) = segments.pop() {
        let mut line = vec![a, b];
        loop {
            let head = line[0];
            let tail = *line.last().unwrap();
            let mut extended = false;
            let mut k = 0;
            while k < segments.len() {
                let (p, q) = segments[k];
                if close(p, tail) {
                    line.push(q);
                } else if close(q, tail) {
                    line.push(p);
                } else if close(p, head) {
                    line.insert(0, q);
                } else if close(q, head) {
                    line.insert(0, p);
                } else {
                    k += 1;
                    continue;
                }
                segments.swap_remove(k);
                extended = true;
                break;
            }
            if !extended {
                break;
            }
        }
        polylines.push(line);
    }
    polylines
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl FigureId {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "fig1" => Ok(FigureId::Fig1),
            "fig2" => Ok(FigureId::Fig2),
            "fig3" => Ok(FigureId::Fig3),
            "fig4" => Ok(FigureId::Fig4),
            "fig5" => Ok(FigureId::Fig5),
            "fig6" => Ok(FigureId::Fig6),
            "fig7" => Ok(FigureId::Fig7),
            other => Err(Error::config(format!("unknown figure id '{other}' (fig1..fig7)"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
        }
    }
}

/// Grid points per linspace axis in the figure presets.
pub const PRESET_AXIS_POINTS: usize = 201;

/// Default contour tolerance in b.
pub const DEFAULT_CONTOUR_TOL: f64 = 1e-6;

/// Caption parameters of the figures: ωd = 20π×10⁹ rad/s, v = 1.2×10⁸ m/s,
/// L⁰_eff = 0.5 mm throughout; per-figure temperature, detuning, drive and
/// loss windows as captioned.
pub fn figure_preset(fig: FigureId) -> SweepSpec {
    let base = CircuitParams {
        omega_d: 20.0 * PI * 1e9,
        epsilon: 0.6,
        delta_omega: 0.0,
        v: 1.2e8,
        l0_eff: 5e-4,
        temperature: 0.020,
    };
    let n = PRESET_AXIS_POINTS;
    let eps_axis = || Axis::linspace(AxisParam::Epsilon, 0.0, 0.6, n).unwrap();
    let detuning_axis = || Axis::linspace(AxisParam::DeltaOmegaFrac, 0.0, 0.4, n).unwrap();
    let eta_axis = || Axis::linspace(AxisParam::Eta, 0.1, 1.0, n).unwrap();
    match fig {
        FigureId::Fig1 => SweepSpec {
            base: CircuitParams { temperature: 0.015, ..base },
            loss_eta: None,
            axis1: eps_axis(),
            axis2: Some(
                Axis::from_values(AxisParam::Temperature, vec![0.015, 0.030, 0.035]).unwrap(),
            ),
        },
        FigureId::Fig2 => SweepSpec {
            base,
            loss_eta: None,
            axis1: eps_axis(),
            axis2: Some(detuning_axis()),
        },
        FigureId::Fig3 => SweepSpec {
            base,
            loss_eta: None,
            axis1: Axis::linspace(AxisParam::Temperature, 0.010, 0.060, n).unwrap(),
            axis2: Some(detuning_axis()),
        },
        FigureId::Fig4 => SweepSpec {
            base,
            loss_eta: Some(1.0),
            axis1: eps_axis(),
            axis2: Some(eta_axis()),
        },
        FigureId::Fig5 => SweepSpec {
            base,
            loss_eta: Some(1.0),
            axis1: Axis::linspace(AxisParam::Temperature, 0.010, 0.045, n).unwrap(),
            axis2: Some(eta_axis()),
        },
        FigureId::Fig6 => SweepSpec {
            base,
            loss_eta: Some(1.0),
            axis1: eta_axis(),
            axis2: Some(detuning_axis()),
        },
        FigureId::Fig7 => SweepSpec {
            base: CircuitParams { delta_omega: 0.2 * base.omega_d, ..base },
            loss_eta: Some(1.0),
            axis1: Axis::linspace(AxisParam::Temperature, 0.010, 0.035, n).unwrap(),
            axis2: Some(eta_axis()),
        },
    }
}
