//! Nondimensional harmonic stream-function basis.
//!
//! Finite depth:
//!   psi(x,y) = m + (k - c)(y + d) + sum_j b_j S_j(y) cos(j x),
//!   S_j(y) = sinh(j(y + d)) / cosh(j d),
//! deep water:
//!   psi(x,y) = b_0 - c y + sum_j b_j e^{j y} cos(j x).
//!
//! Both families satisfy Laplace's equation term by term, the finite-depth one
//! additionally satisfies bed impermeability (S_j(-d) = 0 exactly), and the
//! deep one has grad psi -> (0, -c) as y -> -infinity. The hyperbolic ratios
//! are evaluated through decaying exponentials so large j*d cannot overflow.
//!
//! Everything here is in internal units: wavenumber 1 (period 2*pi), gravity 1,
//! density 1.

use crate::model::{FlowState, Scaling};
use std::f64::consts::PI;

/// Half period in internal units.
pub(crate) const HALF_PERIOD: f64 = PI;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum BasisKind {
    /// Nondimensional depth kappa*d.
    Finite { depth: f64 },
    Deep,
}

/// One wave solution in internal units, directly evaluable anywhere.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Basis {
    pub kind: BasisKind,
    /// Underlying current k (0 for deep water).
    pub current: f64,
    /// Coefficient of the linear-in-y term: k - c (finite), -c (deep). Stored
    /// directly so it is bitwise invariant under Galilean shifts.
    pub linear: f64,
    /// Mass flux m (finite) or gauge constant b_0 (deep).
    pub gauge: f64,
    /// Surface cosine coefficients a_1..a_N.
    pub a: Vec<f64>,
    /// Stream coefficients b_1..b_N.
    pub b: Vec<f64>,
    /// Total head Q (finite) or E (deep).
    pub head: f64,
}

/// Vertical profile values of the j-th mode: (V_j, V_j') at y.
#[inline]
fn mode_profile(kind: BasisKind, j: f64, y: f64) -> (f64, f64) {
    match kind {
        BasisKind::Finite { depth } => {
            // S_j = (e^{jy} - e^{-j(y+2d)}) / (1 + e^{-2jd}), C_j likewise with +.
            let ep = (j * y).exp();
            let em = (-j * (y + 2.0 * depth)).exp();
            let den = 1.0 + (-2.0 * j * depth).exp();
            let s = (ep - em) / den;
            let c = (ep + em) / den;
            (s, j * c)
        }
        BasisKind::Deep => {
            let e = (j * y).exp();
            (e, j * e)
        }
    }
}

/// Second derivative helper: V_j'' = j^2 V_j for both families.
#[inline]
fn mode_profile_full(kind: BasisKind, j: f64, y: f64) -> (f64, f64, f64) {
    let (v, dv) = mode_profile(kind, j, y);
    (v, dv, j * j * v)
}

impl Basis {
    /// Coefficient of the linear-in-y part of psi: k - c (finite), -c (deep).
    pub fn linear_coeff(&self) -> f64 {
        self.linear
    }

    /// Wave speed c.
    pub fn wave_speed(&self) -> f64 {
        self.current - self.linear
    }

    /// Reference depth added to y in the linear term (d finite, 0 deep).
    pub fn depth_offset(&self) -> f64 {
        match self.kind {
            BasisKind::Finite { depth } => depth,
            BasisKind::Deep => 0.0,
        }
    }

    /// Surface elevation eta(x).
    pub fn eta(&self, x: f64) -> f64 {
        let mut s = 0.0;
        for (idx, &aj) in self.a.iter().enumerate() {
            let j = (idx + 1) as f64;
            s += aj * (j * x).cos();
        }
        s
    }

    pub fn psi(&self, x: f64, y: f64) -> f64 {
        let mut s = self.gauge + self.linear_coeff() * (y + self.depth_offset());
        for (idx, &bj) in self.b.iter().enumerate() {
            let j = (idx + 1) as f64;
            let (v, _) = mode_profile(self.kind, j, y);
            s += bj * v * (j * x).cos();
        }
        s
    }

    /// (psi_x, psi_y).
    pub fn grad(&self, x: f64, y: f64) -> (f64, f64) {
        let mut px = 0.0;
        let mut py = self.linear_coeff();
        for (idx, &bj) in self.b.iter().enumerate() {
            let j = (idx + 1) as f64;
            let (v, dv) = mode_profile(self.kind, j, y);
            px -= bj * j * v * (j * x).sin();
            py += bj * dv * (j * x).cos();
        }
        (px, py)
    }

    /// (psi_xx, psi_xy, psi_yy); psi_yy = -psi_xx by harmonicity.
    pub fn second(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let mut pxx = 0.0;
        let mut pxy = 0.0;
        for (idx, &bj) in self.b.iter().enumerate() {
            let j = (idx + 1) as f64;
            let (v, dv, _) = mode_profile_full(self.kind, j, y);
            pxx -= bj * j * j * v * (j * x).cos();
            pxy -= bj * j * dv * (j * x).sin();
        }
        (pxx, pxy, -pxx)
    }

    /// Mode profile of the j-th basis function (1-based) at y: (V_j, V_j').
    pub fn profile(&self, j: usize, y: f64) -> (f64, f64) {
        mode_profile(self.kind, j as f64, y)
    }

    /// Dynamic pressure p = g(Q - d) - |grad psi|^2 / 2 in internal units
    /// (g = rho = 1; for deep water the reference depth is 0).
    pub fn dynamic_pressure(&self, x: f64, y: f64) -> f64 {
        let (px, py) = self.grad(x, y);
        (self.head - self.depth_offset()) - 0.5 * (px * px + py * py)
    }

    /// Rebuilds the internal-unit basis from a dimensional state.
    pub fn from_state(state: &FlowState, scaling: &Scaling) -> Basis {
        let ls = scaling.length;
        let ss = scaling.stream();
        let vs = scaling.velocity();
        let kind = match state.params.finite_depth() {
            Some(d) => BasisKind::Finite { depth: d / ls },
            None => BasisKind::Deep,
        };
        Basis {
            kind,
            current: state.params.current / vs,
            linear: state.relative_current / vs,
            gauge: state.stream_gauge / ss,
            a: state.surface_coeffs[1..].iter().map(|a| a / ls).collect(),
            b: state.stream_coeffs.iter().map(|b| b / ss).collect(),
            head: state.head / ls,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_basis(kind: BasisKind) -> Basis {
        Basis {
            kind,
            current: 0.2,
            linear: -0.9,
            gauge: 0.3,
            a: vec![0.05, 0.01, -0.002],
            b: vec![0.04, 0.008, 0.001],
            head: 1.9,
        }
    }

    #[test]
    fn laplace_holds_pointwise() {
        for kind in [BasisKind::Finite { depth: 1.7 }, BasisKind::Deep] {
            let basis = sample_basis(kind);
            // psi_yy computed independently by central differences.
            let h = 1e-4;
            for &(x, y) in &[(0.3, -0.4), (1.9, -1.2), (2.7, -0.05)] {
                let (pxx, _, pyy) = basis.second(x, y);
                let fd_yy = (basis.psi(x, y + h) - 2.0 * basis.psi(x, y) + basis.psi(x, y - h))
                    / (h * h);
                assert!((pyy - fd_yy).abs() < 1e-5);
                assert!((pxx + pyy).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        for kind in [BasisKind::Finite { depth: 2.0 }, BasisKind::Deep] {
            let basis = sample_basis(kind);
            let h = 1e-6;
            let (x, y) = (0.77, -0.6);
            let (px, py) = basis.grad(x, y);
            let fd_x = (basis.psi(x + h, y) - basis.psi(x - h, y)) / (2.0 * h);
            let fd_y = (basis.psi(x, y + h) - basis.psi(x, y - h)) / (2.0 * h);
            assert!((px - fd_x).abs() < 1e-8);
            assert!((py - fd_y).abs() < 1e-8);
        }
    }

    #[test]
    fn bed_mode_vanishes_exactly() {
        let d = 2.4;
        let basis = sample_basis(BasisKind::Finite { depth: d });
        for x in [0.0, 0.5, 2.0, 3.1] {
            assert_eq!(basis.psi(x, -d), basis.gauge);
            let (px, _) = basis.grad(x, -d);
            assert_eq!(px, 0.0);
        }
    }

    #[test]
    fn large_order_does_not_overflow() {
        let d = 50.0;
        let mut basis = sample_basis(BasisKind::Finite { depth: d });
        basis.a = vec![0.0; 64];
        basis.b = vec![1e-3; 64];
        let v = basis.psi(0.4, -0.1);
        assert!(v.is_finite());
    }

    #[test]
    fn deep_gradient_decays_to_uniform_stream() {
        let mut basis = sample_basis(BasisKind::Deep);
        basis.current = 0.0; // deep water carries no underlying current
        let (px, py) = basis.grad(1.0, -40.0);
        assert!(px.abs() < 1e-15);
        assert!((py + basis.wave_speed()).abs() < 1e-15);
    }
}
