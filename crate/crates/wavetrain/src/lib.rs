//! Steady periodic irrotational gravity water waves: a stream-function
//! spectral solver for finite depth with a uniform underlying current and for
//! deep water, field reconstruction (velocities, total and dynamic pressure),
//! and numerical certification that the dynamic pressure attains its maximum
//! at the wave crest and its minimum at the trough, degenerating to zero when
//! the current strength equals the wave speed.
//!
//! See the `examples/` directory for one runnable example per capability, and
//! the `wavetrain` binary for the scriptable front end.

mod basis;

pub mod cli;
pub mod fields;
pub mod model;
pub mod solver;
pub mod verify;

pub use model::{
    validate, Depth, FieldGrid, FieldSample, FlowState, ParameterSet, Region, Scaling,
    WaveParameters,
};
pub use solver::{
    continuation_sweep, linear_wave, residual, shift_current, solve, solve_deep, solve_steady,
    SolverSettings,
};
