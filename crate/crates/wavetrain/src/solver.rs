//! Newton solver for the steady wave collocation system.
//!
//! Unknowns are the surface cosine coefficients a_1..a_N, the stream
//! coefficients b_1..b_N, the wave speed c, the head Q (or E) and the gauge
//! constant (mass flux m for finite depth, additive constant for deep water).
//! Equations are the kinematic and Bernoulli surface conditions at M
//! collocation points spanning crest to trough, plus the crest-to-trough
//! height constraint. Laplace's equation, the bed condition and the current
//! constraint are satisfied identically by the basis. The mean surface level
//! is zero because the series carries no constant term.

use crate::basis::{Basis, BasisKind, HALF_PERIOD};
use crate::model::{self, FlowState, Scaling, ValidationError, WaveParameters};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Newton iteration and continuation controls.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    /// Max-norm threshold on the nondimensional collocation residual.
    pub newton_tol: f64,
    pub max_newton_iters: usize,
    /// Uniform amplitude continuation steps from zero to the target height.
    pub continuation_steps: usize,
    /// Newton step damping factor in (0, 1].
    pub damping: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            newton_tol: 1e-11,
            max_newton_iters: 30,
            continuation_steps: 8,
            damping: 1.0,
        }
    }
}

/// Boundary-condition residuals sampled off the collocation grid (dimensional).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// max |psi(x, eta(x))| in m^2/s.
    pub kinematic_max: f64,
    /// max Bernoulli defect on the surface, in meters.
    pub bernoulli_max: f64,
    /// max |psi(x, -d) - m| in m^2/s; `None` for deep water.
    pub bed_max: Option<f64>,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("Newton stalled after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { residual: f64, iterations: usize },
    #[error("continuation failed at height {reached:.6} of target {target:.6}")]
    SteepnessLimit { target: f64, reached: f64 },
    #[error("continuation step {index} failed: {source}")]
    SweepStep {
        index: usize,
        #[source]
        source: Box<SolveError>,
    },
    #[error("operation requires {0} parameters")]
    WrongRegime(&'static str),
    #[error("sweep heights must be strictly increasing")]
    NonIncreasingHeights,
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// The nondimensional collocation system for one target height.
struct Problem {
    kind: BasisKind,
    current: f64,
    order: usize,
    nodes: usize,
    /// Target crest-to-trough height (internal units).
    height: f64,
}

impl Problem {
    fn unknowns(&self) -> usize {
        2 * self.order + 3
    }

    fn equations(&self) -> usize {
        2 * self.nodes + 1
    }

    fn node(&self, i: usize) -> f64 {
        i as f64 * HALF_PERIOD / (self.nodes - 1) as f64
    }

    fn pack(&self, basis: &Basis) -> DVector<f64> {
        let n = self.order;
        let mut z = DVector::zeros(self.unknowns());
        for j in 0..n {
            z[j] = basis.a[j];
            z[n + j] = basis.b[j];
        }
        z[2 * n] = basis.wave_speed();
        z[2 * n + 1] = basis.head;
        z[2 * n + 2] = basis.gauge;
        z
    }

    fn unpack(&self, z: &DVector<f64>) -> Basis {
        let n = self.order;
        Basis {
            kind: self.kind,
            current: self.current,
            linear: match self.kind {
                BasisKind::Finite { .. } => self.current - z[2 * n],
                BasisKind::Deep => -z[2 * n],
            },
            gauge: z[2 * n + 2],
            a: z.as_slice()[..n].to_vec(),
            b: z.as_slice()[n..2 * n].to_vec(),
            head: z[2 * n + 1],
        }
    }

    fn residual(&self, basis: &Basis) -> DVector<f64> {
        let m = self.nodes;
        let mut f = DVector::zeros(self.equations());
        for i in 0..m {
            let x = self.node(i);
            let eta = basis.eta(x);
            let (px, py) = basis.grad(x, eta);
            f[i] = basis.psi(x, eta);
            f[m + i] = 0.5 * (px * px + py * py) + eta + basis.depth_offset() - basis.head;
        }
        let mut height = 0.0;
        for (idx, &aj) in basis.a.iter().enumerate() {
            if idx % 2 == 0 {
                // odd harmonics (1-based index odd)
                height += 2.0 * aj;
            }
        }
        f[2 * m] = height - self.height;
        f
    }

    fn jacobian(&self, basis: &Basis) -> DMatrix<f64> {
        let n = self.order;
        let m = self.nodes;
        let mut jac = DMatrix::zeros(self.equations(), self.unknowns());
        for i in 0..m {
            let x = self.node(i);
            let eta = basis.eta(x);
            let (px, py) = basis.grad(x, eta);
            let (_, pxy, pyy) = basis.second(x, eta);
            for j in 1..=n {
                let jf = j as f64;
                let cosj = (jf * x).cos();
                let sinj = (jf * x).sin();
                let (v, dv) = basis.profile(j, eta);
                jac[(i, j - 1)] = py * cosj;
                jac[(i, n + j - 1)] = v * cosj;
                jac[(m + i, j - 1)] = (px * pxy + py * pyy + 1.0) * cosj;
                jac[(m + i, n + j - 1)] = -px * jf * v * sinj + py * dv * cosj;
            }
            jac[(i, 2 * n)] = -(eta + basis.depth_offset());
            jac[(i, 2 * n + 2)] = 1.0;
            jac[(m + i, 2 * n)] = -py;
            jac[(m + i, 2 * n + 1)] = -1.0;
        }
        for j in 1..=n {
            jac[(2 * m, j - 1)] = 1.0 - (-1.0f64).powi(j as i32);
        }
        jac
    }
}

fn solve_linear(jac: DMatrix<f64>, f: &DVector<f64>) -> Option<DVector<f64>> {
    if jac.nrows() == jac.ncols() {
        jac.lu().solve(f)
    } else {
        // Over-determined when surface_nodes > N+1: least-squares Newton.
        jac.svd(true, true).solve(f, 1e-14).ok()
    }
}

/// Damped Newton iteration. Returns the converged basis, the final residual
/// max-norm and the iteration count.
fn newton(
    problem: &Problem,
    seed: Basis,
    settings: &SolverSettings,
) -> Result<(Basis, f64, usize), SolveError> {
    let mut z = problem.pack(&seed);
    for it in 0..=settings.max_newton_iters {
        let basis = problem.unpack(&z);
        let f = problem.residual(&basis);
        let res = f.amax();
        if res <= settings.newton_tol && res.is_finite() {
            return Ok((basis, res, it));
        }
        if it == settings.max_newton_iters || !res.is_finite() {
            return Err(SolveError::NoConvergence {
                residual: res,
                iterations: it,
            });
        }
        let jac = problem.jacobian(&basis);
        let delta = solve_linear(jac, &f).ok_or(SolveError::NoConvergence {
            residual: res,
            iterations: it,
        })?;
        z -= settings.damping * delta;
    }
    unreachable!()
}

fn basis_kind(params: &WaveParameters, scaling: &Scaling) -> BasisKind {
    match params.finite_depth() {
        Some(d) => BasisKind::Finite {
            depth: d / scaling.length,
        },
        None => BasisKind::Deep,
    }
}

fn problem_for(params: &WaveParameters, scaling: &Scaling, height_nd: f64) -> Problem {
    Problem {
        kind: basis_kind(params, scaling),
        current: params.current / scaling.velocity(),
        order: params.truncation_order,
        nodes: params.surface_nodes,
        height: height_nd,
    }
}

/// Linear (first-order) wave of the given crest amplitude, used as the Newton
/// seed and as an independent small-amplitude oracle. The wave speed is the
/// linear dispersion value c = k + sqrt((g/kappa) tanh(kappa d)), or
/// sqrt(g/kappa) in deep water.
pub fn linear_wave(params: &WaveParameters, amplitude: f64) -> FlowState {
    let scaling = params.scaling();
    let sp = model::scale(params);
    let amp = amplitude / scaling.length;
    let n = params.truncation_order;
    let mut a = vec![0.0; n];
    let mut b = vec![0.0; n];
    let basis = match sp.depth {
        Some(d) => {
            let c = sp.current + d.tanh().sqrt();
            if n > 0 && amp != 0.0 {
                a[0] = amp;
                b[0] = amp / (c - sp.current);
            }
            Basis {
                kind: BasisKind::Finite { depth: d },
                current: sp.current,
                linear: sp.current - c,
                gauge: (c - sp.current) * d,
                a,
                b,
                head: 0.5 * (sp.current - c) * (sp.current - c) + d,
            }
        }
        None => {
            let c = 1.0;
            if n > 0 && amp != 0.0 {
                a[0] = amp;
                b[0] = amp * c;
            }
            Basis {
                kind: BasisKind::Deep,
                current: 0.0,
                linear: -c,
                gauge: 0.0,
                a,
                b,
                head: 0.5 * c * c,
            }
        }
    };
    let problem = problem_for(params, &scaling, 2.0 * amp);
    let res = problem.residual(&basis).amax();
    state_from_basis(params, &scaling, &basis, res, 0)
}

fn state_from_basis(
    params: &WaveParameters,
    scaling: &Scaling,
    basis: &Basis,
    residual_norm: f64,
    newton_iters: usize,
) -> FlowState {
    let ls = scaling.length;
    let ss = scaling.stream();
    let vs = scaling.velocity();
    let mut surface = Vec::with_capacity(basis.a.len() + 1);
    surface.push(0.0); // a_0: mean surface level defines y = 0
    surface.extend(basis.a.iter().map(|a| a * ls));
    FlowState {
        params: params.clone(),
        wavenumber: params.wavenumber(),
        wave_speed: basis.wave_speed() * vs,
        relative_current: basis.linear * vs,
        surface_coeffs: surface,
        stream_coeffs: basis.b.iter().map(|b| b * ss).collect(),
        stream_gauge: basis.gauge * ss,
        head: basis.head * ls,
        residual_norm,
        newton_iters,
    }
}

/// Exact flat solution: a uniform stream translating at speed c = k, for which
/// psi vanishes identically, m = 0 and Q = d (E = 0 in deep water).
fn flat_state(params: &WaveParameters) -> FlowState {
    let n = params.truncation_order;
    FlowState {
        params: params.clone(),
        wavenumber: params.wavenumber(),
        wave_speed: params.current,
        relative_current: 0.0,
        surface_coeffs: vec![0.0; n + 1],
        stream_coeffs: vec![0.0; n],
        stream_gauge: 0.0,
        head: params.finite_depth().unwrap_or(0.0),
        residual_norm: 0.0,
        newton_iters: 0,
    }
}

/// Deep-water flat limit: uniform stream at the linear wave speed, E = c^2/2g.
fn flat_deep_state(params: &WaveParameters) -> FlowState {
    let scaling = params.scaling();
    let n = params.truncation_order;
    FlowState {
        params: params.clone(),
        wavenumber: params.wavenumber(),
        wave_speed: scaling.velocity(),
        relative_current: -scaling.velocity(),
        surface_coeffs: vec![0.0; n + 1],
        stream_coeffs: vec![0.0; n],
        stream_gauge: 0.0,
        head: 0.5 * scaling.length,
        residual_norm: 0.0,
        newton_iters: 0,
    }
}

/// Continuation in height from the linear seed to the target, with one step
/// bisection on Newton failure.
fn solve_by_continuation(
    params: &WaveParameters,
    settings: &SolverSettings,
) -> Result<FlowState, SolveError> {
    let scaling = params.scaling();
    let target = params.wave_height / scaling.length;
    let steps = settings.continuation_steps.max(1);
    let first = target / steps as f64;
    let seed_state = linear_wave(params, first * scaling.length / 2.0);
    let mut basis = Basis::from_state(&seed_state, &scaling);
    let mut reached = 0.0;
    let mut total_iters = 0;
    for i in 1..=steps {
        let h = target * i as f64 / steps as f64;
        let problem = problem_for(params, &scaling, h);
        match newton(&problem, basis.clone(), settings) {
            Ok((b, _, it)) => {
                basis = b;
                reached = h;
                total_iters += it;
            }
            Err(_) => {
                // one bisection of the failing step
                let mid = 0.5 * (reached + h);
                let mid_problem = problem_for(params, &scaling, mid);
                let recovered = newton(&mid_problem, basis.clone(), settings)
                    .and_then(|(b, _, it1)| {
                        newton(&problem, b, settings).map(|(b2, r, it2)| (b2, r, it1 + it2))
                    });
                match recovered {
                    Ok((b, _, it)) => {
                        basis = b;
                        reached = h;
                        total_iters += it;
                    }
                    Err(_) => {
                        return Err(SolveError::SteepnessLimit {
                            target: target * scaling.length,
                            reached: reached * scaling.length,
                        })
                    }
                }
            }
        }
    }
    let final_problem = problem_for(params, &scaling, target);
    let res = final_problem.residual(&basis).amax();
    Ok(state_from_basis(params, &scaling, &basis, res, total_iters))
}

/// Solves the finite-depth system for the target wave height.
pub fn solve_steady(
    params: &WaveParameters,
    settings: &SolverSettings,
) -> Result<FlowState, SolveError> {
    if params.depth.is_deep() {
        return Err(SolveError::WrongRegime("finite-depth"));
    }
    if params.wave_height == 0.0 {
        return Ok(flat_state(params));
    }
    solve_by_continuation(params, settings)
}

/// Solves the deep-water system (zero underlying current) for the target height.
pub fn solve_deep(
    params: &WaveParameters,
    settings: &SolverSettings,
) -> Result<FlowState, SolveError> {
    if !params.depth.is_deep() {
        return Err(SolveError::WrongRegime("deep-water"));
    }
    if params.wave_height == 0.0 {
        return Ok(flat_deep_state(params));
    }
    solve_by_continuation(params, settings)
}

/// Dispatches on the depth regime of `params`.
pub fn solve(params: &WaveParameters, settings: &SolverSettings) -> Result<FlowState, SolveError> {
    if params.depth.is_deep() {
        solve_deep(params, settings)
    } else {
        solve_steady(params, settings)
    }
}

/// Solves a strictly increasing list of heights, chaining Newton seeds.
pub fn continuation_sweep(
    params: &WaveParameters,
    heights: &[f64],
    settings: &SolverSettings,
) -> Result<Vec<FlowState>, SolveError> {
    if heights.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SolveError::NonIncreasingHeights);
    }
    let scaling = params.scaling();
    let mut out = Vec::with_capacity(heights.len());
    let mut prev: Option<Basis> = None;
    for (index, &h) in heights.iter().enumerate() {
        let step_params = WaveParameters {
            wave_height: h,
            ..params.clone()
        };
        if h == 0.0 {
            let state = if params.depth.is_deep() {
                flat_deep_state(&step_params)
            } else {
                flat_state(&step_params)
            };
            out.push(state);
            continue;
        }
        let seed = match prev.take() {
            Some(b) => b,
            None => Basis::from_state(&linear_wave(&step_params, h / 2.0), &scaling),
        };
        let problem = problem_for(&step_params, &scaling, h / scaling.length);
        let (basis, res, iters) =
            newton(&problem, seed, settings).map_err(|e| SolveError::SweepStep {
                index,
                source: Box::new(e),
            })?;
        out.push(state_from_basis(&step_params, &scaling, &basis, res, iters));
        prev = Some(basis);
    }
    Ok(out)
}

/// Evaluates the surface (and bed) residuals at `dense_factor * M` points that
/// do not coincide with the collocation grid.
pub fn residual(state: &FlowState, dense_factor: usize) -> ResidualReport {
    let scaling = state.params.scaling();
    let basis = Basis::from_state(state, &scaling);
    let count = dense_factor.max(2) * state.params.surface_nodes;
    let mut kin: f64 = 0.0;
    let mut bern: f64 = 0.0;
    for t in 0..count {
        // offset by half a spacing so the points interleave the collocation nodes
        let x = (t as f64 + 0.5) * HALF_PERIOD / count as f64;
        let eta = basis.eta(x);
        let (px, py) = basis.grad(x, eta);
        kin = kin.max(basis.psi(x, eta).abs());
        bern = bern
            .max((0.5 * (px * px + py * py) + eta + basis.depth_offset() - basis.head).abs());
    }
    let bed_max = match basis.kind {
        BasisKind::Finite { depth } => {
            let mut bed: f64 = 0.0;
            for t in 0..count {
                let x = (t as f64 + 0.5) * HALF_PERIOD / count as f64;
                bed = bed.max((basis.psi(x, -depth) - basis.gauge).abs());
            }
            Some(bed * scaling.stream())
        }
        BasisKind::Deep => None,
    };
    ResidualReport {
        kinematic_max: kin * scaling.stream(),
        bernoulli_max: bern * scaling.length,
        bed_max,
    }
}

/// Galilean shift: the same wave observed with a different underlying current.
/// The surface, stream coefficients, flux and head are unchanged; only k and c
/// move together. Finite depth only (deep water fixes k = 0).
pub fn shift_current(state: &FlowState, new_current: f64) -> Result<FlowState, SolveError> {
    if state.is_deep() {
        return Err(SolveError::WrongRegime("finite-depth"));
    }
    let mut shifted = state.clone();
    shifted.params.current = new_current;
    // relative_current is copied bitwise; the wave speed follows from it
    shifted.wave_speed = new_current - state.relative_current;
    Ok(shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate, Depth, ParameterSet};
    use approx::assert_relative_eq;

    fn finite_params(height: f64) -> WaveParameters {
        validate(ParameterSet::new(10.0, Depth::Finite(5.0)).with_height(height)).unwrap()
    }

    fn deep_params(height: f64) -> WaveParameters {
        validate(ParameterSet::new(10.0, Depth::Deep).with_height(height)).unwrap()
    }

    #[test]
    fn linear_wave_dispersion_finite() {
        let p = finite_params(0.0);
        let state = linear_wave(&p, 0.0);
        let kappa = p.wavenumber();
        let expected = (p.gravity / kappa * (kappa * 5.0).tanh()).sqrt();
        assert_relative_eq!(state.wave_speed, expected, max_relative = 1e-14);
    }

    #[test]
    fn linear_wave_dispersion_deep() {
        let p = deep_params(0.0);
        let state = linear_wave(&p, 0.0);
        let expected = (p.gravity / p.wavenumber()).sqrt();
        assert_relative_eq!(state.wave_speed, expected, max_relative = 1e-14);
    }

    #[test]
    fn flat_solve_is_degenerate_uniform_stream() {
        let p = finite_params(0.0);
        let state = solve_steady(&p, &SolverSettings::default()).unwrap();
        assert_eq!(state.wave_speed, p.current);
        assert!(state.surface_coeffs.iter().all(|&a| a == 0.0));
        assert!(state.stream_coeffs.iter().all(|&b| b == 0.0));
        assert_eq!(state.flux(), Some(0.0));
        assert_eq!(state.head, 5.0);
    }

    #[test]
    fn flat_solve_with_current_keeps_head_at_depth() {
        let p = validate(
            ParameterSet::new(10.0, Depth::Finite(5.0)).with_current(0.8),
        )
        .unwrap();
        let state = solve_steady(&p, &SolverSettings::default()).unwrap();
        // c = k: psi vanishes identically and Q = d
        assert_eq!(state.wave_speed, 0.8);
        assert_eq!(state.head, 5.0);
        assert_eq!(state.flux(), Some(0.0));
    }

    #[test]
    fn small_wave_speed_matches_linear_oracle() {
        let p = finite_params(0.1); // H/L = 0.01
        let state = solve_steady(&p, &SolverSettings::default()).unwrap();
        let linear = linear_wave(&p, 0.05);
        assert_relative_eq!(state.wave_speed, linear.wave_speed, max_relative = 1e-3);
        assert!(state.residual_norm <= 1e-11);
    }

    #[test]
    fn small_deep_wave_matches_linear_oracle() {
        let p = deep_params(0.1);
        let state = solve_deep(&p, &SolverSettings::default()).unwrap();
        let c_lin = (p.gravity / p.wavenumber()).sqrt();
        assert_relative_eq!(state.wave_speed, c_lin, max_relative = 1e-3);
        assert!(state.residual_norm <= 1e-11);
    }

    #[test]
    fn height_constraint_enforced() {
        let p = finite_params(0.5);
        let state = solve_steady(&p, &SolverSettings::default()).unwrap();
        let crest: f64 = state.surface_coeffs.iter().sum();
        let trough: f64 = state
            .surface_coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a * (-1.0f64).powi(j as i32))
            .sum();
        assert_relative_eq!(crest - trough, 0.5, max_relative = 1e-10);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let p = finite_params(0.3);
        let scaling = p.scaling();
        let state = solve_steady(&p, &SolverSettings::default()).unwrap();
        let basis = Basis::from_state(&state, &scaling);
        let problem = problem_for(&p, &scaling, p.wave_height / scaling.length);
        let jac = problem.jacobian(&basis);
        let z = problem.pack(&basis);
        let h = 1e-7;
        for col in 0..problem.unknowns() {
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp[col] += h;
            zm[col] -= h;
            let fp = problem.residual(&problem.unpack(&zp));
            let fm = problem.residual(&problem.unpack(&zm));
            for row in 0..problem.equations() {
                let fd = (fp[row] - fm[row]) / (2.0 * h);
                assert!(
                    (jac[(row, col)] - fd).abs() < 1e-6,
                    "J[{row},{col}] = {} vs FD {}",
                    jac[(row, col)],
                    fd
                );
            }
        }
    }

    #[test]
    fn galilean_consistency() {
        let settings = SolverSettings::default();
        let base = solve_steady(&finite_params(0.4), &settings).unwrap();
        let p_shifted = validate(
            ParameterSet::new(10.0, Depth::Finite(5.0))
                .with_height(0.4)
                .with_current(0.6),
        )
        .unwrap();
        let with_current = solve_steady(&p_shifted, &settings).unwrap();
        assert_relative_eq!(
            with_current.wave_speed - 0.6,
            base.wave_speed,
            max_relative = 1e-9
        );
        for (a, b) in base
            .surface_coeffs
            .iter()
            .zip(with_current.surface_coeffs.iter())
        {
            assert!((a - b).abs() < 1e-9 * 10.0);
        }
        assert_relative_eq!(base.head, with_current.head, max_relative = 1e-9);
    }

    #[test]
    fn sweep_speeds_increase_with_height() {
        let p = finite_params(0.0);
        let heights = [0.1, 0.2, 0.3, 0.4];
        let states =
            continuation_sweep(&p, &heights, &SolverSettings::default()).unwrap();
        for pair in states.windows(2) {
            assert!(pair[1].wave_speed > pair[0].wave_speed);
        }
        // second-order Stokes: c grows like the square of the steepness
        let c0 = linear_wave(&p, 0.0).wave_speed;
        let d1 = states[0].wave_speed - c0;
        let d3 = states[3].wave_speed - c0;
        assert!(d3 / d1 > 10.0 && d3 / d1 < 22.0, "ratio {}", d3 / d1);
    }

    #[test]
    fn sweep_rejects_decreasing_heights() {
        let p = finite_params(0.0);
        assert!(matches!(
            continuation_sweep(&p, &[0.2, 0.1], &SolverSettings::default()),
            Err(SolveError::NonIncreasingHeights)
        ));
    }

    #[test]
    fn direct_steep_solve_may_fail_cleanly() {
        let p = finite_params(2.0); // H/L = 0.2, far beyond reach in one step
        let settings = SolverSettings {
            continuation_steps: 1,
            ..SolverSettings::default()
        };
        match solve_steady(&p, &settings) {
            Err(SolveError::SteepnessLimit { .. }) | Err(SolveError::NoConvergence { .. }) => {}
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn flat_residual_report_is_clean() {
        let p = finite_params(0.0);
        let state = solve_steady(&p, &SolverSettings::default()).unwrap();
        let rep = residual(&state, 4);
        assert!(rep.kinematic_max < 1e-13);
        assert!(rep.bernoulli_max < 1e-13);
        assert!(rep.bed_max.unwrap() < 1e-13);
    }

    #[test]
    fn deep_flat_kinematic_residual_is_exact_zero() {
        let p = deep_params(0.0);
        let state = solve_deep(&p, &SolverSettings::default()).unwrap();
        let rep = residual(&state, 4);
        assert_eq!(rep.kinematic_max, 0.0);
        assert!(rep.bed_max.is_none());
    }

    #[test]
    fn shift_current_moves_speed_with_current() {
        let state = solve_steady(&finite_params(0.3), &SolverSettings::default()).unwrap();
        let shifted = shift_current(&state, 1.5).unwrap();
        assert_eq!(shifted.params.current, 1.5);
        assert_relative_eq!(
            shifted.wave_speed - state.wave_speed,
            1.5,
            max_relative = 1e-14
        );
        assert_eq!(shifted.surface_coeffs, state.surface_coeffs);
        assert_eq!(shifted.head, state.head);
    }

    #[test]
    fn regime_mismatch_is_rejected() {
        let settings = SolverSettings::default();
        assert!(matches!(
            solve_steady(&deep_params(0.1), &settings),
            Err(SolveError::WrongRegime(_))
        ));
        assert!(matches!(
            solve_deep(&finite_params(0.1), &settings),
            Err(SolveError::WrongRegime(_))
        ));
        let deep = solve_deep(&deep_params(0.1), &settings).unwrap();
        assert!(matches!(
            shift_current(&deep, 0.5),
            Err(SolveError::WrongRegime(_))
        ));
    }
}
