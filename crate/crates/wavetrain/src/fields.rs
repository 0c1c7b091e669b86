//! Field evaluation: surface, stream function, velocities, pressures and the
//! integral functionals (mass flux, mean current), plus boundary-fitted grid
//! sampling.
//!
//! All inputs and outputs are dimensional. Evaluation goes through the
//! internal-unit basis so that every quantity built from the moving-frame flow
//! (psi, v, u - c, dynamic pressure) is bitwise invariant under Galilean
//! current shifts.

use crate::basis::Basis;
use crate::model::{FieldGrid, FieldSample, FlowState, Region, Scaling};
use std::f64::consts::PI;
use thiserror::Error;

/// Deep-water truncation depth for field grids, in wavelengths. The basis
/// modes have decayed below 1e-8 of their surface value there.
pub const DEEP_TRUNCATION_WAVELENGTHS: f64 = 3.0;

/// Tolerance band (relative to L) admitting surface points into the domain.
pub const SURFACE_BAND: f64 = 1e-12;

/// Exponential stretch rate for deep-water sigma grids.
const DEEP_STRETCH: f64 = 5.0;

#[derive(Debug, Error, PartialEq)]
pub enum FieldError {
    #[error("point ({x}, {y}) lies outside the fluid domain")]
    OutOfDomain { x: f64, y: f64 },
    #[error("operation is undefined in deep water")]
    DeepWaterUnsupported,
    #[error("y0 = {y0} lies above the trough level {trough}")]
    AboveTrough { y0: f64, trough: f64 },
}

fn setup(state: &FlowState) -> (Scaling, Basis) {
    let scaling = state.params.scaling();
    let basis = Basis::from_state(state, &scaling);
    (scaling, basis)
}

/// Lower truncation boundary for evaluation: the bed, or -3L in deep water.
pub fn floor_level(state: &FlowState) -> f64 {
    match state.params.finite_depth() {
        Some(d) => -d,
        None => -DEEP_TRUNCATION_WAVELENGTHS * state.params.wavelength,
    }
}

fn check_domain(state: &FlowState, basis: &Basis, scaling: &Scaling, x: f64, y: f64)
    -> Result<(), FieldError> {
    let band = SURFACE_BAND * state.params.wavelength;
    let eta = basis.eta(x / scaling.length) * scaling.length;
    if y > eta + band {
        return Err(FieldError::OutOfDomain { x, y });
    }
    if let Some(d) = state.params.finite_depth() {
        if y < -d - band {
            return Err(FieldError::OutOfDomain { x, y });
        }
    }
    Ok(())
}

/// Surface elevation eta(x) from the cosine series.
pub fn surface_at(state: &FlowState, x: f64) -> f64 {
    let (scaling, basis) = setup(state);
    basis.eta(x / scaling.length) * scaling.length
}

/// Stream function psi(x, y) in m^2/s.
pub fn stream_at(state: &FlowState, x: f64, y: f64) -> Result<f64, FieldError> {
    let (scaling, basis) = setup(state);
    check_domain(state, &basis, &scaling, x, y)?;
    Ok(basis.psi(x / scaling.length, y / scaling.length) * scaling.stream())
}

/// Still-frame velocity (u, v) = (c + psi_y, -psi_x).
pub fn velocity_at(state: &FlowState, x: f64, y: f64) -> Result<(f64, f64), FieldError> {
    let (scaling, basis) = setup(state);
    check_domain(state, &basis, &scaling, x, y)?;
    let (px, py) = basis.grad(x / scaling.length, y / scaling.length);
    let vs = scaling.velocity();
    Ok((state.wave_speed + py * vs, -px * vs))
}

/// Total pressure from the head: P = P_atm + rho*g*(Q - (y + d)) - rho*|grad psi|^2/2
/// (deep water: P_atm + rho*g*(E - y) - rho*|grad psi|^2/2).
pub fn pressure_at(state: &FlowState, x: f64, y: f64) -> Result<f64, FieldError> {
    let (scaling, basis) = setup(state);
    check_domain(state, &basis, &scaling, x, y)?;
    Ok(pressure_unchecked(state, &scaling, &basis, x, y))
}

pub(crate) fn pressure_unchecked(
    state: &FlowState,
    scaling: &Scaling,
    basis: &Basis,
    x: f64,
    y: f64,
) -> f64 {
    let p = &state.params;
    let (px, py) = basis.grad(x / scaling.length, y / scaling.length);
    let vs2 = scaling.velocity() * scaling.velocity();
    let depth_ref = p.finite_depth().unwrap_or(0.0);
    p.atmospheric_pressure + p.density * p.gravity * (state.head - (y + depth_ref))
        - 0.5 * p.density * (px * px + py * py) * vs2
}

/// Dynamic pressure p = rho*g*(Q - d) - rho*|grad psi|^2/2 (finite depth) or
/// rho*g*E - rho*|grad psi|^2/2 (deep water). Identical to
/// `pressure_at - (P_atm - rho*g*y)` up to rounding.
pub fn dynamic_pressure_at(state: &FlowState, x: f64, y: f64) -> Result<f64, FieldError> {
    let (scaling, basis) = setup(state);
    check_domain(state, &basis, &scaling, x, y)?;
    Ok(dynamic_pressure_unchecked(state, &scaling, &basis, x, y))
}

fn dynamic_pressure_unchecked(
    _state: &FlowState,
    scaling: &Scaling,
    basis: &Basis,
    x: f64,
    y: f64,
) -> f64 {
    let nd = basis.dynamic_pressure(x / scaling.length, y / scaling.length);
    nd * scaling.pressure()
}

/// Gauss-Legendre nodes and weights on [-1, 1].
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre recurrence and Newton update
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Relative mass flux by 32-node Gauss-Legendre quadrature of -(u - c) over
/// depth, averaged over several verticals. Finite depth only.
pub fn flux(state: &FlowState) -> Result<f64, FieldError> {
    let d = state
        .params
        .finite_depth()
        .ok_or(FieldError::DeepWaterUnsupported)?;
    let (scaling, basis) = setup(state);
    let (nodes, weights) = gauss_legendre(32);
    let l = state.params.wavelength;
    let xs = [0.0, 0.17 * l, 0.31 * l, 0.5 * l];
    let mut acc = 0.0;
    for &x in &xs {
        let eta = basis.eta(x / scaling.length) * scaling.length;
        let half = 0.5 * (eta + d);
        let mid = 0.5 * (eta - d);
        let mut integral = 0.0;
        for (t, w) in nodes.iter().zip(weights.iter()) {
            let y = mid + half * t;
            let (_, py) = basis.grad(x / scaling.length, y / scaling.length);
            integral += w * py * scaling.velocity();
        }
        // m = -integral of (u - c) dy, and u - c = psi_y
        acc += -integral * half;
    }
    Ok(acc / xs.len() as f64)
}

/// Mean still-frame horizontal velocity over one period at depth `y0`, which
/// must lie below the trough. Equals the underlying current k independently
/// of y0.
pub fn mean_current(state: &FlowState, y0: f64) -> Result<f64, FieldError> {
    let trough = surface_at(state, state.params.wavelength / 2.0);
    if y0 > trough {
        return Err(FieldError::AboveTrough { y0, trough });
    }
    if let Some(d) = state.params.finite_depth() {
        if y0 < -d {
            return Err(FieldError::OutOfDomain { x: 0.0, y: y0 });
        }
    }
    let (scaling, basis) = setup(state);
    // periodic trapezoid: exact for the truncated trigonometric integrand
    let panels = (4 * state.params.truncation_order).max(256);
    let mut mean_py = 0.0;
    for t in 0..panels {
        let x = 2.0 * PI * t as f64 / panels as f64;
        let (_, py) = basis.grad(x, y0 / scaling.length);
        mean_py += py;
    }
    mean_py /= panels as f64;
    Ok(state.wave_speed + mean_py * scaling.velocity())
}

fn reduce_period(x: f64, l: f64) -> f64 {
    let mut r = x % l;
    if r < 0.0 {
        r += l;
    }
    r
}

/// Vertical coordinate of grid row `row` (0..ny) on the column with surface
/// elevation `eta`: linear sigma between bed and surface for finite depth,
/// exponential stretching concentrated near the surface for deep water.
fn row_level(state: &FlowState, eta: f64, row: usize, ny: usize) -> f64 {
    let sigma = row as f64 / (ny - 1) as f64;
    if row == ny - 1 {
        return eta; // exactly on the surface
    }
    match state.params.finite_depth() {
        Some(d) => {
            if row == 0 {
                -d // exactly on the bed
            } else {
                -d + sigma * (eta + d)
            }
        }
        None => {
            let floor = floor_level(state);
            let t = 1.0 - sigma;
            let frac = ((DEEP_STRETCH * t).exp() - 1.0) / (DEEP_STRETCH.exp() - 1.0);
            eta - frac * (eta - floor)
        }
    }
}

/// Samples all fields on a boundary-fitted nx-by-ny grid over the region.
///
/// For `FullPeriod` and `HalfPeriod`, choose odd-friendly nx so the crest
/// x = 0 and trough x = L/2 land exactly on grid columns.
pub fn sample_grid(state: &FlowState, nx: usize, ny: usize, region: Region) -> FieldGrid {
    let (scaling, basis) = setup(state);
    let l = state.params.wavelength;
    let (nx, ny) = match region {
        Region::Surface | Region::Bed => (nx.max(2), 1),
        Region::CrestLine | Region::TroughLine => (1, ny.max(3)),
        _ => (nx.max(3), ny.max(3)),
    };
    let column_x = |i: usize| -> f64 {
        match region {
            Region::FullPeriod | Region::Surface | Region::Bed => {
                reduce_period(i as f64 * l / (nx.max(2) - 1) as f64, l)
            }
            Region::HalfPeriod => i as f64 * (l / 2.0) / (nx - 1) as f64,
            Region::CrestLine => 0.0,
            Region::TroughLine => l / 2.0,
        }
    };
    let mut samples = Vec::with_capacity(nx * ny);
    for i in 0..nx {
        let x = column_x(i);
        let eta = basis.eta(x / scaling.length) * scaling.length;
        for row in 0..ny {
            let y = match region {
                Region::Surface => eta,
                Region::Bed => floor_level(state),
                _ => row_level(state, eta, row, ny),
            };
            let xn = x / scaling.length;
            let yn = y / scaling.length;
            let psi = basis.psi(xn, yn) * scaling.stream();
            let (px, py) = basis.grad(xn, yn);
            let vs = scaling.velocity();
            samples.push(FieldSample {
                x,
                y,
                psi,
                u: state.wave_speed + py * vs,
                v: -px * vs,
                pressure: pressure_unchecked(state, &scaling, &basis, x, y),
                dynamic_pressure: dynamic_pressure_unchecked(state, &scaling, &basis, x, y),
            });
        }
    }
    FieldGrid {
        nx,
        ny,
        region,
        samples,
    }
}
