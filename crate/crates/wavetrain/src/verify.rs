//! Executable checks for the dynamic-pressure extrema results and the
//! supporting sign, monotonicity and elliptic-identity properties.
//!
//! Strict inequalities are tested against a positive nondimensional margin:
//! samples whose margin stays within `STRICT_MARGIN` of zero are reported as
//! inconclusive rather than as violations (this happens only where a quantity
//! decays below rounding level, e.g. in the deep-water truncation tail).
//! Every reported number is Galilean-invariant: checks are computed from the
//! moving-frame stream function, never from the still-frame velocity and wave
//! speed separately, so a current-shifted state produces a byte-identical
//! report.

use crate::basis::{Basis, BasisKind};
use crate::fields::{self, floor_level, sample_grid};
use crate::model::{FieldGrid, FlowState, Region, Scaling};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Margin below which a strict inequality is inconclusive (internal units).
pub const STRICT_MARGIN: f64 = 1e-9;

/// Nondimensional dynamic-pressure span below which a field is degenerate.
pub const DEGENERATE_FLOOR: f64 = 1e-10;

/// Gate on |k - c| / sqrt(gL) for the degenerate-current pathway.
pub const DEGENERATE_CURRENT_GATE: f64 = 1e-8;

/// Deep-water tail bound on |p| at the truncation depth, relative to rho*g*H.
pub const TAIL_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum VerifyError {
    #[error("dynamic pressure span {span:.3e} is below the degeneracy floor")]
    DegenerateField { span: f64 },
    #[error("|k - c| = {gap:.3e} exceeds the degenerate-current gate")]
    NotDegenerate { gap: f64 },
    #[error("|grad psi|^2 vanishes at ({x}, {y}); the elliptic identity is undefined")]
    VanishingGradient { x: f64, y: f64 },
    #[error("path sample ({x}, {y}) left the fluid domain")]
    PathOutOfDomain { x: f64, y: f64 },
}

/// Where the sampled dynamic pressure attains its extrema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremaReport {
    pub max_location: (f64, f64),
    pub max_value: f64,
    pub min_location: (f64, f64),
    pub min_value: f64,
    pub crest_is_max: bool,
    pub trough_is_min: bool,
    /// Gap between the boundary maximum and the best other sample (Pa).
    pub max_margin: f64,
    pub min_margin: f64,
}

/// One strict-inequality check over a sample set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub name: String,
    /// No sample violated the inequality beyond the margin.
    pub satisfied: bool,
    /// Smallest margin seen; positive means strict satisfaction (internal units).
    pub worst_margin: f64,
    pub worst_location: (f64, f64),
    /// Samples whose margin fell inside the inconclusive band.
    pub inconclusive: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub checks: Vec<InvariantCheck>,
}

impl InvariantReport {
    pub fn all_satisfied(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }

    pub fn check(&self, name: &str) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Discretized residual of p_xx + p_yy = alpha p_x + beta p_y.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticResidualReport {
    /// Finite-difference spacing in meters.
    pub spacing: f64,
    /// Max residual over the interior sub-grid, internal units.
    pub residual_max: f64,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathCheck {
    pub name: String,
    pub direction: String,
    pub strictly_monotone: bool,
    pub violation_location: Option<(f64, f64)>,
}

/// Monotone descent of p along the boundary of the half-period domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub degenerate: bool,
    pub paths: Vec<PathCheck>,
    /// Deep water only: |p| at the truncation depth under both lines, in Pa.
    pub tail_values: Option<(f64, f64)>,
    pub tail_bound: Option<f64>,
}

impl MonotonicityReport {
    pub fn all_monotone(&self) -> bool {
        if self.degenerate {
            return true;
        }
        let paths_ok = self.paths.iter().all(|p| p.strictly_monotone);
        let tails_ok = match (self.tail_values, self.tail_bound) {
            (Some((a, b)), Some(bound)) => a <= bound && b <= bound,
            _ => true,
        };
        paths_ok && tails_ok
    }
}

/// Everything `cmd_verify` serializes; `passed` is the exit-code verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub degenerate_current: bool,
    pub degenerate_checks: Option<InvariantReport>,
    pub extrema: Option<ExtremaReport>,
    pub signs: Option<InvariantReport>,
    pub monotonicity: Option<MonotonicityReport>,
    pub symmetry: InvariantReport,
    pub elliptic: Option<EllipticResidualReport>,
    pub interior_exclusion: Option<InvariantReport>,
    pub passed: bool,
}

impl VerificationReport {
    /// Names of every check that came back violated, for diagnostics.
    pub fn failed_checks(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut from_invariants = |report: &Option<InvariantReport>| {
            if let Some(r) = report {
                out.extend(
                    r.checks
                        .iter()
                        .filter(|c| !c.satisfied)
                        .map(|c| c.name.clone()),
                );
            }
        };
        from_invariants(&self.degenerate_checks);
        from_invariants(&self.signs);
        from_invariants(&self.interior_exclusion);
        out.extend(
            self.symmetry
                .checks
                .iter()
                .filter(|c| !c.satisfied)
                .map(|c| c.name.clone()),
        );
        if let Some(e) = &self.extrema {
            if !e.crest_is_max {
                out.push("dynamic_pressure_max_at_crest".to_string());
            }
            if !e.trough_is_min {
                out.push("dynamic_pressure_min_at_trough".to_string());
            }
        }
        if let Some(m) = &self.monotonicity {
            out.extend(
                m.paths
                    .iter()
                    .filter(|p| !p.strictly_monotone)
                    .map(|p| format!("monotone_descent_{}", p.name)),
            );
            if let (Some((a, b)), Some(bound)) = (m.tail_values, m.tail_bound) {
                if a > bound || b > bound {
                    out.push("deep_tail_decay".to_string());
                }
            }
        }
        out
    }
}

fn setup(state: &FlowState) -> (Scaling, Basis) {
    let scaling = state.params.scaling();
    (scaling, Basis::from_state(state, &scaling))
}

/// Locates the global extrema of the sampled dynamic pressure and compares
/// them against the crest and trough surface nodes.
pub fn locate_extrema(grid: &FieldGrid, degenerate_floor: f64) -> Result<ExtremaReport, VerifyError> {
    let mut max_idx = 0;
    let mut min_idx = 0;
    for (idx, s) in grid.samples.iter().enumerate() {
        if s.dynamic_pressure > grid.samples[max_idx].dynamic_pressure {
            max_idx = idx;
        }
        if s.dynamic_pressure < grid.samples[min_idx].dynamic_pressure {
            min_idx = idx;
        }
    }
    let max_s = grid.samples[max_idx];
    let min_s = grid.samples[min_idx];
    let span = max_s.dynamic_pressure - min_s.dynamic_pressure;
    if span < degenerate_floor {
        return Err(VerifyError::DegenerateField { span });
    }
    let crest_idx = grid.crest_column() * grid.ny + (grid.ny - 1);
    let trough_idx = grid
        .trough_column()
        .map(|c| c * grid.ny + (grid.ny - 1))
        .unwrap_or(usize::MAX);
    let mut second_max = f64::NEG_INFINITY;
    let mut second_min = f64::INFINITY;
    for (idx, s) in grid.samples.iter().enumerate() {
        if idx != crest_idx {
            second_max = second_max.max(s.dynamic_pressure);
        }
        if idx != trough_idx {
            second_min = second_min.min(s.dynamic_pressure);
        }
    }
    Ok(ExtremaReport {
        max_location: (max_s.x, max_s.y),
        max_value: max_s.dynamic_pressure,
        min_location: (min_s.x, min_s.y),
        min_value: min_s.dynamic_pressure,
        crest_is_max: max_idx == crest_idx,
        trough_is_min: min_idx == trough_idx,
        max_margin: grid.samples[crest_idx].dynamic_pressure - second_max,
        min_margin: second_min - grid.samples[trough_idx.min(grid.samples.len() - 1)].dynamic_pressure,
    })
}

/// Folds one margin sample into a check accumulator.
struct MarginAcc {
    worst: f64,
    worst_location: (f64, f64),
    violated: bool,
    inconclusive: usize,
}

impl MarginAcc {
    fn new() -> Self {
        MarginAcc {
            worst: f64::INFINITY,
            worst_location: (0.0, 0.0),
            violated: false,
            inconclusive: 0,
        }
    }

    fn push(&mut self, margin: f64, x: f64, y: f64) {
        if margin < self.worst {
            self.worst = margin;
            self.worst_location = (x, y);
        }
        if margin < -STRICT_MARGIN {
            self.violated = true;
        } else if margin <= STRICT_MARGIN {
            self.inconclusive += 1;
        }
    }

    fn finish(self, name: &str) -> InvariantCheck {
        InvariantCheck {
            name: name.to_string(),
            satisfied: !self.violated,
            worst_margin: if self.worst.is_finite() { self.worst } else { 0.0 },
            worst_location: self.worst_location,
            inconclusive: self.inconclusive,
        }
    }
}

/// Sign checks from the theorems: u - c keeps the sign of k - c everywhere,
/// v has the case's sign in the open half period, deep water also has
/// P_x < 0 there. v vanishes on the crest and trough lines.
pub fn check_sign_invariants(state: &FlowState, grid: &FieldGrid) -> InvariantReport {
    let (scaling, basis) = setup(state);
    let ls = scaling.length;
    let deep = state.is_deep();
    // k > c means psi_y > 0 throughout; k < c (and deep water) the reverse
    let ascending = !deep && basis.linear_coeff() > 0.0;
    let trough_col = grid.trough_column().unwrap_or(grid.nx - 1);

    let mut u_acc = MarginAcc::new();
    let mut v_acc = MarginAcc::new();
    let mut px_acc = MarginAcc::new();
    let mut line_acc = MarginAcc::new();
    let fd_h = 1e-3; // internal units, for P_x central differences
    for (col, row, s) in grid.iter() {
        let xn = s.x / ls;
        let yn = s.y / ls;
        let (gx, gy) = basis.grad(xn, yn);
        // u - c = psi_y, margin oriented by the case
        u_acc.push(if ascending { gy } else { -gy }, s.x, s.y);
        let on_line = col == grid.crest_column() || col == trough_col;
        if on_line {
            // antisymmetry forces v = 0 on the crest and trough lines
            line_acc.push(STRICT_MARGIN - gx.abs(), s.x, s.y);
        } else if row > 0 && row < grid.ny - 1 {
            // open half period: v < 0 for k > c, v > 0 for k < c and deep water
            let v = -gx;
            v_acc.push(if ascending { -v } else { v }, s.x, s.y);
            if deep {
                let p_plus =
                    fields::pressure_unchecked(state, &scaling, &basis, s.x + fd_h * ls, s.y);
                let p_minus =
                    fields::pressure_unchecked(state, &scaling, &basis, s.x - fd_h * ls, s.y);
                let px = (p_plus - p_minus) / (2.0 * fd_h * ls);
                // margin is -P_x in units of rho*g
                px_acc.push(-px / (scaling.density * scaling.gravity()), s.x, s.y);
            }
        }
    }
    let mut checks = vec![
        u_acc.finish(if ascending { "u_above_wave_speed" } else { "u_below_wave_speed" }),
        v_acc.finish(if ascending {
            "v_negative_in_open_half_period"
        } else {
            "v_positive_in_open_half_period"
        }),
        line_acc.finish("v_vanishes_on_crest_trough_lines"),
    ];
    if deep {
        checks.push(px_acc.finish("pressure_x_negative_in_open_half_period"));
    }
    InvariantReport { checks }
}

fn monotone_path(
    name: &str,
    direction: &str,
    points: impl Iterator<Item = (f64, f64, f64)>,
) -> PathCheck {
    let mut prev: Option<f64> = None;
    let mut violation = None;
    for (x, y, p) in points {
        if let Some(q) = prev {
            if p >= q && violation.is_none() {
                violation = Some((x, y));
            }
        }
        prev = Some(p);
    }
    PathCheck {
        name: name.to_string(),
        direction: direction.to_string(),
        strictly_monotone: violation.is_none(),
        violation_location: violation,
    }
}

/// Strict descent of p along the boundary of the half-period domain, in the
/// traversal order crest surface -> down the crest line -> along the bed from
/// crest to trough -> up the trough line -> trough surface. Deep water
/// replaces the bed leg by decay bounds at the truncation depth.
pub fn check_monotonicity(state: &FlowState, npath: usize) -> MonotonicityReport {
    let (scaling, basis) = setup(state);
    let ls = scaling.length;
    let ps = scaling.pressure();
    let n = npath.max(16);
    let p_at = |xn: f64, yn: f64| basis.dynamic_pressure(xn, yn);

    // degenerate gate on a coarse surface sample
    let mut span: f64 = 0.0;
    for t in 0..=32 {
        let xn = t as f64 * PI / 32.0;
        span = span.max(p_at(xn, basis.eta(xn)).abs());
        span = span.max(p_at(xn, basis.eta(xn) - 0.3).abs());
    }
    if span < DEGENERATE_FLOOR {
        return MonotonicityReport {
            degenerate: true,
            paths: Vec::new(),
            tail_values: None,
            tail_bound: None,
        };
    }

    let deep = state.is_deep();
    // vertical extent: full depth for finite, one wavelength for deep (the
    // fields are uniform-stream below that, within rounding)
    let bottom = match basis.kind {
        BasisKind::Finite { depth } => -depth,
        BasisKind::Deep => -2.0 * PI,
    };
    let crest_eta = basis.eta(0.0);
    let trough_eta = basis.eta(PI);

    let vertical = |x: f64, top: f64, downward: bool| {
        let levels = (0..n).map(move |i| {
            let t = i as f64 / (n - 1) as f64;
            if downward {
                top + t * (bottom - top)
            } else {
                bottom + t * (top - bottom)
            }
        });
        levels.map(move |y| (x * ls, y * ls, p_at(x, y)))
    };

    let mut paths = vec![
        monotone_path(
            "crest_vertical",
            "surface downward",
            vertical(0.0, crest_eta, true),
        ),
        monotone_path("surface", "crest to trough", (0..n).map(|i| {
            let xn = i as f64 * PI / (n - 1) as f64;
            let eta = basis.eta(xn);
            (xn * ls, eta * ls, p_at(xn, eta))
        })),
    ];
    let mut tail_values = None;
    let mut tail_bound = None;
    if deep {
        paths.push(monotone_path(
            "trough_vertical",
            "depth upward to the trough",
            vertical(PI, trough_eta, false),
        ));
        let floor_nd = floor_level(state) / ls;
        let tails = (
            (p_at(0.0, floor_nd) * ps).abs(),
            (p_at(PI, floor_nd) * ps).abs(),
        );
        tail_values = Some(tails);
        tail_bound = Some(
            TAIL_TOLERANCE * scaling.density * scaling.gravity() * state.params.wave_height,
        );
    } else {
        let depth_nd = bottom;
        paths.push(monotone_path("bed", "crest to trough", (0..n).map(|i| {
            let xn = i as f64 * PI / (n - 1) as f64;
            (xn * ls, depth_nd * ls, p_at(xn, depth_nd))
        })));
        paths.push(monotone_path(
            "trough_vertical",
            "bed upward to the trough",
            vertical(PI, trough_eta, false),
        ));
    }
    MonotonicityReport {
        degenerate: false,
        paths,
        tail_values,
        tail_bound,
    }
}

/// Finite-difference residual of the elliptic identity satisfied by p.
/// `resolution` is the number of sub-grid points per direction; halving the
/// spacing (doubling the resolution) should shrink the residual about 4x.
pub fn check_elliptic_identity(
    state: &FlowState,
    resolution: usize,
) -> Result<EllipticResidualReport, VerifyError> {
    let (scaling, basis) = setup(state);
    let ls = scaling.length;
    let res = resolution.max(8);
    let trough = basis.eta(PI);
    let y_top = trough - 0.05;
    let y_bot = match basis.kind {
        BasisKind::Finite { depth } => -depth + 0.05,
        BasisKind::Deep => -2.0 * PI,
    };
    let hx = PI / (res - 1) as f64;
    let hy = (y_top - y_bot) / (res - 1) as f64;
    let p_at = |x: f64, y: f64| basis.dynamic_pressure(x, y);
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for i in 0..res {
        let x = i as f64 * hx;
        for j in 0..res {
            let y = y_bot + j as f64 * hy;
            let (gx, gy) = basis.grad(x, y);
            let speed2 = gx * gx + gy * gy;
            if speed2 < 1e-12 {
                return Err(VerifyError::VanishingGradient {
                    x: x * ls,
                    y: y * ls,
                });
            }
            let p0 = p_at(x, y);
            let px = (p_at(x + hx, y) - p_at(x - hx, y)) / (2.0 * hx);
            let py = (p_at(x, y + hy) - p_at(x, y - hy)) / (2.0 * hy);
            let pxx = (p_at(x + hx, y) - 2.0 * p0 + p_at(x - hx, y)) / (hx * hx);
            let pyy = (p_at(x, y + hy) - 2.0 * p0 + p_at(x, y - hy)) / (hy * hy);
            let alpha = -2.0 * px / speed2;
            let beta = -2.0 * py / speed2;
            let r = (pxx + pyy - alpha * px - beta * py).abs();
            worst = worst.max(r);
            points += 1;
        }
    }
    Ok(EllipticResidualReport {
        spacing: hx.max(hy.abs()) * ls,
        residual_max: worst,
        points,
    })
}

/// The k = c pathway: the flow must reduce to a uniform stream with a flat
/// surface, zero flux, head equal to the depth, vanishing dynamic pressure
/// and hydrostatic total pressure.
pub fn check_degenerate_current(state: &FlowState) -> Result<InvariantReport, VerifyError> {
    let p = &state.params;
    let gate = DEGENERATE_CURRENT_GATE * (p.gravity * p.wavelength).sqrt();
    let gap = state.relative_current.abs();
    if gap >= gate {
        return Err(VerifyError::NotDegenerate { gap });
    }
    let d = p.finite_depth().unwrap_or(0.0);
    let rho_g = p.density * p.gravity;
    let l = p.wavelength;
    let scaling = p.scaling();

    let mut checks = Vec::new();
    let mut push = |name: &str, margin: f64, loc: (f64, f64)| {
        checks.push(InvariantCheck {
            name: name.to_string(),
            satisfied: margin >= 0.0,
            worst_margin: margin,
            worst_location: loc,
            inconclusive: 0,
        });
    };
    let eta_max = state.surface_coeffs.iter().map(|a| a.abs()).fold(0.0, f64::max);
    push("surface_flat", 1e-12 * l - eta_max, (0.0, 0.0));
    push(
        "flux_zero",
        1e-10 * scaling.stream() - state.stream_gauge.abs(),
        (0.0, -d),
    );
    push("head_equals_depth", 1e-10 * d.max(l) - (state.head - d).abs(), (0.0, 0.0));

    let grid = sample_grid(state, 65, 33, Region::HalfPeriod);
    let mut p_max: f64 = 0.0;
    let mut hydro_max: f64 = 0.0;
    let mut p_loc = (0.0, 0.0);
    for s in &grid.samples {
        if s.dynamic_pressure.abs() > p_max {
            p_max = s.dynamic_pressure.abs();
            p_loc = (s.x, s.y);
        }
        let hydro = p.atmospheric_pressure - rho_g * s.y;
        hydro_max = hydro_max.max((s.pressure - hydro).abs());
    }
    push("dynamic_pressure_zero", 1e-10 * rho_g * d.max(l) - p_max, p_loc);
    push("pressure_hydrostatic", 1e-10 * rho_g * d.max(l) - hydro_max, p_loc);
    Ok(InvariantReport { checks })
}

/// Structural symmetry: eta, u and P even about the crest line, v odd, and a
/// single monotone crest-to-trough descent per period.
pub fn check_symmetry(state: &FlowState, grid: &FieldGrid) -> InvariantReport {
    let (scaling, basis) = setup(state);
    let ls = scaling.length;
    let l = state.params.wavelength;
    let vs = scaling.velocity();
    let ps = scaling.pressure();
    let tol = 1e-10;

    let mut even_acc = MarginAcc::new();
    let mut odd_acc = MarginAcc::new();
    let ny = grid.ny;
    for col in 0..grid.nx {
        let mirror = grid.nx - 1 - col; // x -> L - x
        for row in 0..ny {
            let s = grid.sample(col, row);
            let m = grid.sample(mirror, row);
            let (gx, gy) = basis.grad(s.x / ls, s.y / ls);
            let (mgx, mgy) = basis.grad(m.x / ls, m.y / ls);
            // u(x) - u(-x) and P(x) - P(-x) via the moving-frame fields
            let du = (gy - mgy).abs();
            let d_eta = (basis.eta(s.x / ls) - basis.eta(m.x / ls)).abs();
            let dp = (fields::pressure_unchecked(state, &scaling, &basis, s.x, s.y)
                - fields::pressure_unchecked(state, &scaling, &basis, m.x, m.y))
            .abs()
                / ps;
            even_acc.push(tol - du.max(d_eta).max(dp), s.x, s.y);
            // v(x) + v(-x) = 0
            let dv = ((-gx * vs) + (-mgx * vs)).abs() / vs;
            odd_acc.push(tol - dv, s.x, s.y);
        }
    }

    // profile shape on the sampled surface: one crest, one trough, monotone between
    let surface: Vec<f64> = (0..grid.nx)
        .map(|col| basis.eta(grid.sample(col, 0).x / ls))
        .collect();
    let flat = surface.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - surface.iter().cloned().fold(f64::INFINITY, f64::min)
        < 1e-13;
    let trough_col = grid.trough_column().unwrap_or(grid.nx / 2);
    let mut monotone_ok = true;
    if !flat {
        for w in surface[..=trough_col].windows(2) {
            if w[1] >= w[0] {
                monotone_ok = false;
            }
        }
        for w in surface[trough_col..].windows(2) {
            if w[1] <= w[0] {
                monotone_ok = false;
            }
        }
    }
    let shape = InvariantCheck {
        name: "single_monotone_crest_trough".to_string(),
        satisfied: monotone_ok,
        worst_margin: if monotone_ok { 0.0 } else { -1.0 },
        worst_location: (l / 2.0, 0.0),
        inconclusive: usize::from(flat),
    };

    // the grid's own v samples (catches corrupted fixtures, not just the basis)
    let mut grid_odd = MarginAcc::new();
    for col in 0..grid.nx {
        let mirror = grid.nx - 1 - col;
        for row in 0..ny {
            let dv = (grid.sample(col, row).v + grid.sample(mirror, row).v).abs() / vs;
            grid_odd.push(tol - dv, grid.sample(col, row).x, grid.sample(col, row).y);
        }
    }

    InvariantReport {
        checks: vec![
            even_acc.finish("eta_u_pressure_even_about_crest"),
            odd_acc.finish("v_odd_about_crest"),
            grid_odd.finish("sampled_v_odd_about_crest"),
            shape,
        ],
    }
}

/// Deep water: at the interior sample where |grad p| is smallest (the
/// candidate for an interior extremum), P_x must still be strictly negative.
pub fn check_interior_exclusion(state: &FlowState, grid: &FieldGrid) -> InvariantReport {
    let (scaling, basis) = setup(state);
    let ls = scaling.length;
    let ps = scaling.pressure();
    let h = 1e-3; // internal units
    let trough_col = grid.trough_column().unwrap_or(grid.nx - 1);

    let mut span: f64 = 0.0;
    for s in &grid.samples {
        span = span.max(s.dynamic_pressure.abs() / ps);
    }
    if span < DEGENERATE_FLOOR {
        return InvariantReport {
            checks: vec![InvariantCheck {
                name: "interior_exclusion_degenerate".to_string(),
                satisfied: true,
                worst_margin: 0.0,
                worst_location: (0.0, 0.0),
                inconclusive: 1,
            }],
        };
    }

    let mut best: Option<(f64, (f64, f64))> = None;
    // restrict to the top wavelength: below it the whole field has decayed
    // under rounding level and gradients carry no signal
    let y_floor = -state.params.wavelength;
    for (col, row, s) in grid.iter() {
        if col == grid.crest_column() || col == trough_col || row == 0 || row == grid.ny - 1 {
            continue;
        }
        if s.y < y_floor {
            continue;
        }
        let xn = s.x / ls;
        let yn = s.y / ls;
        let px = (basis.dynamic_pressure(xn + h, yn) - basis.dynamic_pressure(xn - h, yn))
            / (2.0 * h);
        let py = (basis.dynamic_pressure(xn, yn + h) - basis.dynamic_pressure(xn, yn - h))
            / (2.0 * h);
        let norm = (px * px + py * py).sqrt();
        if best.map_or(true, |(b, _)| norm < b) {
            best = Some((norm, (s.x, s.y)));
        }
    }
    let (grad_min, (bx, by)) = best.expect("grid has interior samples");
    let p_plus = fields::pressure_unchecked(state, &scaling, &basis, bx + h * ls, by);
    let p_minus = fields::pressure_unchecked(state, &scaling, &basis, bx - h * ls, by);
    let px_total = (p_plus - p_minus) / (2.0 * h * ls) / (scaling.density * scaling.gravity());
    InvariantReport {
        checks: vec![
            InvariantCheck {
                name: "pressure_x_negative_at_near_critical_point".to_string(),
                satisfied: px_total < -STRICT_MARGIN,
                worst_margin: -px_total,
                worst_location: (bx, by),
                inconclusive: 0,
            },
            InvariantCheck {
                name: "min_interior_grad_p".to_string(),
                satisfied: true,
                worst_margin: grad_min,
                worst_location: (bx, by),
                inconclusive: 0,
            },
        ],
    }
}

/// Runs every applicable check on one state, sampling a half-period grid of
/// the given size (and a matching full-period grid for the symmetry checks).
pub fn run_all(state: &FlowState, nx: usize, ny: usize) -> VerificationReport {
    let p = &state.params;
    let gate = DEGENERATE_CURRENT_GATE * (p.gravity * p.wavelength).sqrt();
    let degenerate = !state.is_deep() && state.relative_current.abs() < gate;

    let full = sample_grid(state, 2 * nx.max(3) - 1, ny, Region::FullPeriod);
    let symmetry = check_symmetry(state, &full);

    if degenerate {
        let checks = check_degenerate_current(state).expect("gate already tested");
        let passed = checks.all_satisfied() && symmetry.all_satisfied();
        return VerificationReport {
            degenerate_current: true,
            degenerate_checks: Some(checks),
            extrema: None,
            signs: None,
            monotonicity: Some(check_monotonicity(state, 64)),
            symmetry,
            elliptic: None,
            interior_exclusion: None,
            passed,
        };
    }

    let half = sample_grid(state, nx, ny, Region::HalfPeriod);
    let floor = DEGENERATE_FLOOR * p.density * p.gravity * p.wavelength;
    let extrema = locate_extrema(&half, floor).ok();
    let signs = check_sign_invariants(state, &half);
    let monotonicity = check_monotonicity(state, 64);
    let elliptic = check_elliptic_identity(state, 33).ok();
    let interior = state.is_deep().then(|| check_interior_exclusion(state, &half));

    let flat_wave = p.wave_height == 0.0;
    let extrema_ok = match &extrema {
        Some(e) => e.crest_is_max && e.trough_is_min,
        // a flat non-degenerate stream has p identically zero; nothing to place
        None => flat_wave,
    };
    let passed = extrema_ok
        && signs.all_satisfied()
        && monotonicity.all_monotone()
        && symmetry.all_satisfied()
        && interior.as_ref().map_or(true, |r| r.all_satisfied());
    VerificationReport {
        degenerate_current: degenerate,
        degenerate_checks: None,
        extrema,
        signs: Some(signs),
        monotonicity: Some(monotonicity),
        symmetry,
        elliptic,
        interior_exclusion: interior,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate, Depth, ParameterSet};
    use crate::solver::{shift_current, solve_deep, solve_steady, SolverSettings};

    fn finite_state(height: f64, current: f64) -> FlowState {
        let p = validate(
            ParameterSet::new(10.0, Depth::Finite(5.0))
                .with_height(height)
                .with_current(current),
        )
        .unwrap();
        solve_steady(&p, &SolverSettings::default()).unwrap()
    }

    fn deep_state(height: f64) -> FlowState {
        let p = validate(ParameterSet::new(10.0, Depth::Deep).with_height(height)).unwrap();
        solve_deep(&p, &SolverSettings::default()).unwrap()
    }

    #[test]
    fn degenerate_current_state_passes() {
        let s = finite_state(0.0, 0.7); // c = k
        let report = check_degenerate_current(&s).unwrap();
        assert!(report.all_satisfied(), "{report:?}");
        let grid = sample_grid(&s, 33, 17, Region::HalfPeriod);
        assert!(matches!(
            locate_extrema(&grid, 1e-10 * 1000.0 * 9.81 * 10.0),
            Err(VerifyError::DegenerateField { .. })
        ));
    }

    #[test]
    fn nondegenerate_gate_rejects() {
        let s = finite_state(0.3, 0.0);
        assert!(matches!(
            check_degenerate_current(&s),
            Err(VerifyError::NotDegenerate { .. })
        ));
    }

    #[test]
    fn finite_wave_extrema_at_crest_and_trough() {
        let s = finite_state(0.5, 0.0); // H/L = 0.05
        let grid = sample_grid(&s, 129, 65, Region::HalfPeriod);
        let e = locate_extrema(&grid, 1e-10 * 1000.0 * 9.81 * 10.0).unwrap();
        assert!(e.crest_is_max, "{e:?}");
        assert!(e.trough_is_min, "{e:?}");
        assert!(e.max_margin > 0.0 && e.min_margin > 0.0);
    }

    #[test]
    fn deep_wave_extrema_at_crest_and_trough() {
        let s = deep_state(0.5);
        let grid = sample_grid(&s, 129, 65, Region::HalfPeriod);
        let e = locate_extrema(&grid, 1e-10 * 1000.0 * 9.81 * 10.0).unwrap();
        assert!(e.crest_is_max && e.trough_is_min, "{e:?}");
    }

    #[test]
    fn sign_invariants_follow_the_case() {
        // k < c
        let s = finite_state(0.5, 0.0);
        let grid = sample_grid(&s, 65, 33, Region::HalfPeriod);
        let r = check_sign_invariants(&s, &grid);
        assert!(r.all_satisfied(), "{r:?}");
        assert!(r.check("u_below_wave_speed").is_some());
        assert!(r.check("v_positive_in_open_half_period").is_some());

        // k > c: the x-reflected train travels left under the same zero
        // current, which negates the stream function
        let mut mirrored = s.clone();
        mirrored.wave_speed = -s.wave_speed;
        mirrored.relative_current = -s.relative_current;
        mirrored.stream_coeffs = s.stream_coeffs.iter().map(|b| -b).collect();
        mirrored.stream_gauge = -s.stream_gauge;
        let grid = sample_grid(&mirrored, 65, 33, Region::HalfPeriod);
        let r = check_sign_invariants(&mirrored, &grid);
        assert!(r.all_satisfied(), "{r:?}");
        assert!(r.check("u_above_wave_speed").is_some());
        assert!(r.check("v_negative_in_open_half_period").is_some());
    }

    #[test]
    fn deep_sign_invariants_hold() {
        let s = deep_state(0.5);
        let grid = sample_grid(&s, 65, 33, Region::HalfPeriod);
        let r = check_sign_invariants(&s, &grid);
        assert!(r.all_satisfied(), "{r:?}");
        assert!(r
            .check("pressure_x_negative_in_open_half_period")
            .is_some());
    }

    #[test]
    fn monotone_descent_along_all_paths() {
        let s = finite_state(0.5, 0.0);
        let r = check_monotonicity(&s, 64);
        assert!(!r.degenerate);
        assert_eq!(r.paths.len(), 4);
        assert!(r.all_monotone(), "{r:?}");
    }

    #[test]
    fn deep_monotonicity_with_tail_decay() {
        let s = deep_state(0.5);
        let r = check_monotonicity(&s, 64);
        assert!(r.all_monotone(), "{r:?}");
        let (t0, t1) = r.tail_values.unwrap();
        assert!(t0 <= r.tail_bound.unwrap() && t1 <= r.tail_bound.unwrap());
    }

    #[test]
    fn degenerate_monotonicity_is_flagged_not_violated() {
        let s = finite_state(0.0, 0.7);
        let r = check_monotonicity(&s, 32);
        assert!(r.degenerate);
        assert!(r.all_monotone());
    }

    #[test]
    fn elliptic_residual_refines_at_second_order() {
        let s = finite_state(0.5, 0.0);
        let coarse = check_elliptic_identity(&s, 17).unwrap();
        let fine = check_elliptic_identity(&s, 33).unwrap();
        let ratio = coarse.residual_max / fine.residual_max;
        assert!(ratio > 3.0 && ratio < 5.0, "ratio {ratio}");
    }

    #[test]
    fn elliptic_identity_rejects_degenerate_flow() {
        let s = finite_state(0.0, 0.7);
        assert!(matches!(
            check_elliptic_identity(&s, 17),
            Err(VerifyError::VanishingGradient { .. })
        ));
    }

    #[test]
    fn symmetry_holds_for_solver_output() {
        let s = finite_state(0.5, 0.0);
        let grid = sample_grid(&s, 65, 17, Region::FullPeriod);
        let r = check_symmetry(&s, &grid);
        assert!(r.all_satisfied(), "{r:?}");
    }

    #[test]
    fn corrupted_antisymmetry_is_detected() {
        let s = finite_state(0.5, 0.0);
        let mut grid = sample_grid(&s, 65, 17, Region::FullPeriod);
        // break v's oddness at one off-axis sample
        let idx = 10 * grid.ny + 5;
        grid.samples[idx].v += 0.05 * s.wave_speed;
        let r = check_symmetry(&s, &grid);
        assert!(!r.check("sampled_v_odd_about_crest").unwrap().satisfied);
    }

    #[test]
    fn interior_exclusion_deep() {
        let s = deep_state(0.5);
        let grid = sample_grid(&s, 65, 33, Region::HalfPeriod);
        let r = check_interior_exclusion(&s, &grid);
        assert!(r.all_satisfied(), "{r:?}");
        let flat = deep_state(0.0);
        let grid = sample_grid(&flat, 17, 9, Region::HalfPeriod);
        let r = check_interior_exclusion(&flat, &grid);
        assert_eq!(r.checks[0].name, "interior_exclusion_degenerate");
    }

    #[test]
    fn run_all_passes_for_wave_and_degenerate_states() {
        assert!(run_all(&finite_state(0.5, 0.0), 65, 33).passed);
        let degenerate = run_all(&finite_state(0.0, 0.7), 65, 33);
        assert!(degenerate.passed && degenerate.degenerate_current);
        assert!(run_all(&deep_state(0.5), 65, 33).passed);
    }

    #[test]
    fn verdicts_are_byte_identical_under_current_shift() {
        let s = finite_state(0.4, 0.0);
        let shifted = shift_current(&s, 1.25).unwrap();
        let a = serde_json::to_string(&run_all(&s, 33, 17)).unwrap();
        let b = serde_json::to_string(&run_all(&shifted, 33, 17)).unwrap();
        assert_eq!(a, b);
    }
}
