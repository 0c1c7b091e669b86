//! Domain types, validation and nondimensional scaling.
//!
//! All public quantities are dimensional (SI). Internally the solver works in
//! units where the wavenumber and gravity are both one; [`Scaling`] carries the
//! back-and-forth transformation.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Depth regime: a finite mean depth in meters, or infinitely deep water.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Depth {
    Finite(f64),
    Deep,
}

impl Depth {
    pub fn is_deep(&self) -> bool {
        matches!(self, Depth::Deep)
    }
}

/// Raw, unvalidated solver inputs. Construct one, then call [`validate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterSet {
    /// Wavelength L in meters.
    pub wavelength: f64,
    pub depth: Depth,
    /// Underlying current strength k in m/s (must be zero for deep water).
    pub current: f64,
    /// Density in kg/m^3.
    pub density: f64,
    /// Gravitational acceleration in m/s^2.
    pub gravity: f64,
    /// Atmospheric pressure in Pa.
    pub atmospheric_pressure: f64,
    /// Crest-to-trough wave height H in meters.
    pub wave_height: f64,
    /// Spectral truncation order N.
    pub truncation_order: usize,
    /// Surface collocation nodes M; defaults to N+1 when absent.
    pub surface_nodes: Option<usize>,
}

pub const DEFAULT_DENSITY: f64 = 1000.0;
pub const DEFAULT_GRAVITY: f64 = 9.81;
pub const DEFAULT_ATMOSPHERIC_PRESSURE: f64 = 101_325.0;
pub const DEFAULT_TRUNCATION_ORDER: usize = 32;

impl ParameterSet {
    /// Conventional SI defaults for everything except geometry and height.
    pub fn new(wavelength: f64, depth: Depth) -> Self {
        ParameterSet {
            wavelength,
            depth,
            current: 0.0,
            density: DEFAULT_DENSITY,
            gravity: DEFAULT_GRAVITY,
            atmospheric_pressure: DEFAULT_ATMOSPHERIC_PRESSURE,
            wave_height: 0.0,
            truncation_order: DEFAULT_TRUNCATION_ORDER,
            surface_nodes: None,
        }
    }

    pub fn with_height(mut self, h: f64) -> Self {
        self.wave_height = h;
        self
    }

    pub fn with_current(mut self, k: f64) -> Self {
        self.current = k;
        self
    }

    pub fn with_order(mut self, n: usize) -> Self {
        self.truncation_order = n;
        self
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ValidationError {
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("wave height must be non-negative")]
    NegativeHeight,
    #[error("deep water requires zero underlying current (got k = {0})")]
    DeepWithCurrent(f64),
    #[error("wave height {height} must be below the mean depth {depth}")]
    HeightExceedsDepth { height: f64, depth: f64 },
    #[error("surface nodes ({nodes}) must be at least truncation order + 1 ({min})")]
    TooFewSurfaceNodes { nodes: usize, min: usize },
    #[error("parameter {0} must be finite")]
    NotFinite(&'static str),
}

/// Validated solver inputs. Only [`validate`] constructs these.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveParameters {
    pub wavelength: f64,
    pub depth: Depth,
    pub current: f64,
    pub density: f64,
    pub gravity: f64,
    pub atmospheric_pressure: f64,
    pub wave_height: f64,
    pub truncation_order: usize,
    pub surface_nodes: usize,
}

impl WaveParameters {
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    pub fn scaling(&self) -> Scaling {
        Scaling::for_params(self)
    }

    /// Finite depth in meters, if any.
    pub fn finite_depth(&self) -> Option<f64> {
        match self.depth {
            Depth::Finite(d) => Some(d),
            Depth::Deep => None,
        }
    }
}

impl From<WaveParameters> for ParameterSet {
    fn from(p: WaveParameters) -> Self {
        ParameterSet {
            wavelength: p.wavelength,
            depth: p.depth,
            current: p.current,
            density: p.density,
            gravity: p.gravity,
            atmospheric_pressure: p.atmospheric_pressure,
            wave_height: p.wave_height,
            truncation_order: p.truncation_order,
            surface_nodes: Some(p.surface_nodes),
        }
    }
}

/// Checks ranges and cross-field constraints, resolving defaults.
pub fn validate(raw: ParameterSet) -> Result<WaveParameters, ValidationError> {
    for (name, v) in [
        ("wavelength", raw.wavelength),
        ("density", raw.density),
        ("gravity", raw.gravity),
        ("current", raw.current),
        ("wave height", raw.wave_height),
        ("atmospheric pressure", raw.atmospheric_pressure),
    ] {
        if !v.is_finite() {
            return Err(ValidationError::NotFinite(name));
        }
    }
    if raw.wavelength <= 0.0 {
        return Err(ValidationError::NonPositive("wavelength"));
    }
    if raw.density <= 0.0 {
        return Err(ValidationError::NonPositive("density"));
    }
    if raw.gravity <= 0.0 {
        return Err(ValidationError::NonPositive("gravity"));
    }
    if raw.truncation_order < 1 {
        return Err(ValidationError::NonPositive("truncation order"));
    }
    if raw.wave_height < 0.0 {
        return Err(ValidationError::NegativeHeight);
    }
    match raw.depth {
        Depth::Finite(d) => {
            if !d.is_finite() {
                return Err(ValidationError::NotFinite("depth"));
            }
            if d <= 0.0 {
                return Err(ValidationError::NonPositive("depth"));
            }
            // Solver sanity bound, not a physical claim.
            if raw.wave_height >= d {
                return Err(ValidationError::HeightExceedsDepth {
                    height: raw.wave_height,
                    depth: d,
                });
            }
        }
        Depth::Deep => {
            if raw.current != 0.0 {
                return Err(ValidationError::DeepWithCurrent(raw.current));
            }
        }
    }
    let min_nodes = raw.truncation_order + 1;
    let nodes = raw.surface_nodes.unwrap_or(min_nodes);
    if nodes < min_nodes {
        return Err(ValidationError::TooFewSurfaceNodes {
            nodes,
            min: min_nodes,
        });
    }
    Ok(WaveParameters {
        wavelength: raw.wavelength,
        depth: raw.depth,
        current: raw.current,
        density: raw.density,
        gravity: raw.gravity,
        atmospheric_pressure: raw.atmospheric_pressure,
        wave_height: raw.wave_height,
        truncation_order: raw.truncation_order,
        surface_nodes: nodes,
    })
}

/// Transformation between dimensional and internal units (wavenumber = 1,
/// gravity = 1, density = 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scaling {
    /// Length scale 1/kappa in meters.
    pub length: f64,
    /// Time scale 1/sqrt(g*kappa) in seconds.
    pub time: f64,
    /// Density in kg/m^3 (pressure scale needs it).
    pub density: f64,
}

impl Scaling {
    pub fn for_params(p: &WaveParameters) -> Self {
        let kappa = p.wavenumber();
        Scaling {
            length: 1.0 / kappa,
            time: 1.0 / (p.gravity * kappa).sqrt(),
            density: p.density,
        }
    }

    pub fn velocity(&self) -> f64 {
        self.length / self.time
    }

    /// Stream-function scale in m^2/s.
    pub fn stream(&self) -> f64 {
        self.length * self.length / self.time
    }

    /// Pressure scale rho*g/kappa in Pa.
    pub fn pressure(&self) -> f64 {
        self.density * self.gravity() * self.length
    }

    pub fn gravity(&self) -> f64 {
        self.length / (self.time * self.time)
    }
}

/// Nondimensional counterpart of [`WaveParameters`]: kappa' = 1, g' = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledParameters {
    /// Nondimensional depth kappa*d, `None` for deep water.
    pub depth: Option<f64>,
    /// Nondimensional current k/sqrt(g/kappa).
    pub current: f64,
    /// Nondimensional crest-to-trough height kappa*H.
    pub height: f64,
    pub truncation_order: usize,
    pub surface_nodes: usize,
    pub scaling: Scaling,
    /// Carried through unchanged so the round trip is total.
    pub atmospheric_pressure: f64,
}

/// Maps validated parameters to internal units.
pub fn scale(params: &WaveParameters) -> ScaledParameters {
    let s = params.scaling();
    ScaledParameters {
        depth: params.finite_depth().map(|d| d / s.length),
        current: params.current / s.velocity(),
        height: params.wave_height / s.length,
        truncation_order: params.truncation_order,
        surface_nodes: params.surface_nodes,
        scaling: s,
        atmospheric_pressure: params.atmospheric_pressure,
    }
}

/// Inverse of [`scale`].
pub fn unscale(scaled: &ScaledParameters) -> WaveParameters {
    let s = &scaled.scaling;
    WaveParameters {
        wavelength: 2.0 * PI * s.length,
        depth: match scaled.depth {
            Some(d) => Depth::Finite(d * s.length),
            None => Depth::Deep,
        },
        current: scaled.current * s.velocity(),
        density: s.density,
        gravity: s.gravity(),
        atmospheric_pressure: scaled.atmospheric_pressure,
        wave_height: scaled.height * s.length,
        truncation_order: scaled.truncation_order,
        surface_nodes: scaled.surface_nodes,
    }
}

/// A converged spectral solution.
///
/// The free surface is `eta(x) = sum_j a_j cos(j*kappa*x)` with the crest at
/// x = 0 and the trough at x = L/2. The stream function is reconstructed from
/// `stream_coeffs` by the harmonic basis in the solver; `stream_gauge` is the
/// relative mass flux m for finite depth and the additive gauge constant for
/// deep water. `head` is Q (finite depth) or E (deep water), in meters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowState {
    pub params: WaveParameters,
    pub wavenumber: f64,
    pub wave_speed: f64,
    /// Moving-frame mean current c_bar = k - c, stored so every field
    /// evaluation uses one authoritative value (it is Galilean-invariant).
    pub relative_current: f64,
    /// a_0..a_N in meters (a_0 is zero: the mean surface level defines y = 0).
    pub surface_coeffs: Vec<f64>,
    /// b_1..b_N in m^2/s.
    pub stream_coeffs: Vec<f64>,
    /// Relative mass flux m (finite depth) or stream gauge constant (deep), m^2/s.
    pub stream_gauge: f64,
    /// Total head Q or E in meters.
    pub head: f64,
    /// Max-norm of the nondimensional collocation residual.
    pub residual_norm: f64,
    /// Total Newton iterations spent across continuation steps.
    pub newton_iters: usize,
}

impl FlowState {
    /// Relative mass flux m; `None` in deep water.
    pub fn flux(&self) -> Option<f64> {
        match self.params.depth {
            Depth::Finite(_) => Some(self.stream_gauge),
            Depth::Deep => None,
        }
    }

    pub fn is_deep(&self) -> bool {
        self.params.depth.is_deep()
    }
}

/// Pointwise field values at one grid node.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub x: f64,
    pub y: f64,
    /// Stream function, m^2/s.
    pub psi: f64,
    /// Still-frame horizontal velocity, m/s.
    pub u: f64,
    pub v: f64,
    /// Total pressure, Pa.
    pub pressure: f64,
    /// Dynamic pressure P - (P_atm - rho*g*y), Pa.
    pub dynamic_pressure: f64,
}

/// Subdomain selector for grids and path checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// One full period, 0 <= x <= L.
    FullPeriod,
    /// Half period between crest and trough, 0 <= x <= L/2.
    HalfPeriod,
    Surface,
    Bed,
    CrestLine,
    TroughLine,
}

/// Boundary-fitted structured sampling of the fluid domain.
///
/// Samples are stored column-major: column i (constant x) holds `ny`
/// consecutive samples ordered from the bed (or truncation depth) up to the
/// surface; the sigma = 1 row lies exactly on y = eta(x_i).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldGrid {
    pub nx: usize,
    pub ny: usize,
    pub region: Region,
    pub samples: Vec<FieldSample>,
}

impl FieldGrid {
    pub fn sample(&self, col: usize, row: usize) -> &FieldSample {
        &self.samples[col * self.ny + row]
    }

    /// Column index lying on the crest line x = 0.
    pub fn crest_column(&self) -> usize {
        0
    }

    /// Column index lying on the trough line x = L/2, if the region has one.
    pub fn trough_column(&self) -> Option<usize> {
        match self.region {
            Region::HalfPeriod => Some(self.nx - 1),
            Region::FullPeriod => Some((self.nx - 1) / 2),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &FieldSample)> {
        self.samples.iter().enumerate().map(move |(idx, s)| {
            let col = idx / self.ny;
            let row = idx % self.ny;
            (col, row, s)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ParameterSet {
        ParameterSet::new(10.0, Depth::Finite(5.0))
            .with_height(0.2)
            .with_order(16)
    }

    #[test]
    fn accepts_plain_finite_depth() {
        let p = validate(base()).unwrap();
        assert_eq!(p.surface_nodes, 17);
        assert_eq!(p.density, 1000.0);
    }

    #[test]
    fn rejects_deep_with_current() {
        let raw = ParameterSet::new(10.0, Depth::Deep)
            .with_height(0.2)
            .with_current(0.5);
        assert_eq!(
            validate(raw),
            Err(ValidationError::DeepWithCurrent(0.5))
        );
    }

    #[test]
    fn rejects_negative_height() {
        let raw = base().with_height(-0.1);
        assert_eq!(validate(raw), Err(ValidationError::NegativeHeight));
    }

    #[test]
    fn rejects_height_exceeding_depth() {
        let raw = base().with_height(5.0);
        assert!(matches!(
            validate(raw),
            Err(ValidationError::HeightExceedsDepth { .. })
        ));
    }

    #[test]
    fn rejects_nonpositive_core_fields() {
        let mut raw = base();
        raw.wavelength = 0.0;
        assert_eq!(validate(raw), Err(ValidationError::NonPositive("wavelength")));
        let mut raw = base();
        raw.gravity = -1.0;
        assert_eq!(validate(raw), Err(ValidationError::NonPositive("gravity")));
        let mut raw = base();
        raw.truncation_order = 0;
        assert_eq!(
            validate(raw),
            Err(ValidationError::NonPositive("truncation order"))
        );
    }

    #[test]
    fn validate_is_idempotent() {
        let once = validate(base()).unwrap();
        let twice = validate(ParameterSet::from(once.clone())).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn scaling_is_identity_for_nondimensional_input() {
        let mut raw = ParameterSet::new(2.0 * PI, Depth::Finite(2.0));
        raw.gravity = 1.0;
        raw.density = 1.0;
        let p = validate(raw).unwrap();
        let s = scale(&p);
        assert!((s.scaling.length - 1.0).abs() < 1e-15);
        assert!((s.scaling.time - 1.0).abs() < 1e-15);
        assert!((s.depth.unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn scale_sets_unit_wavenumber() {
        let p = validate(base()).unwrap();
        let s = scale(&p);
        assert!((s.scaling.length - 10.0 / (2.0 * PI)).abs() < 1e-12);
        // kappa' = kappa * length scale = 1
        assert!((p.wavenumber() * s.scaling.length - 1.0).abs() < 1e-15);
        assert!((s.scaling.gravity() - 9.81).abs() < 1e-12);
    }

    #[test]
    fn scale_round_trip() {
        let p = validate(base().with_current(0.7)).unwrap();
        let back = unscale(&scale(&p));
        let rel = |a: f64, b: f64| ((a - b) / b.max(1e-300)).abs();
        assert!(rel(back.wavelength, p.wavelength) < 1e-14);
        assert!(rel(back.gravity, p.gravity) < 1e-14);
        assert!(rel(back.current, p.current) < 1e-14);
        assert!(rel(back.wave_height, p.wave_height) < 1e-14);
        match (back.depth, p.depth) {
            (Depth::Finite(a), Depth::Finite(b)) => assert!(rel(a, b) < 1e-14),
            _ => panic!("depth mode changed in round trip"),
        }
    }
}
