//! The degenerate case: when the current strength equals the wave speed the
//! flow collapses to a uniform stream — flat surface, zero flux, head equal
//! to the depth and identically zero dynamic pressure.

use wavetrain::fields::sample_grid;
use wavetrain::verify::check_degenerate_current;
use wavetrain::{solve, validate, Depth, ParameterSet, Region, SolverSettings};

fn main() {
    // H = 0 forces the uniform-stream branch, whose speed equals the current
    let params = validate(ParameterSet::new(10.0, Depth::Finite(5.0)).with_current(0.7))
        .expect("parameters in range");
    let state = solve(&params, &SolverSettings::default()).expect("degenerate branch is exact");

    println!("current k = {} m/s, wave speed c = {} m/s", params.current, state.wave_speed);
    println!("head Q = {} m (the depth), flux m = {} m^2/s", state.head, state.flux().unwrap());

    let grid = sample_grid(&state, 65, 33, Region::HalfPeriod);
    let p_max = grid
        .samples
        .iter()
        .map(|s| s.dynamic_pressure.abs())
        .fold(0.0, f64::max);
    println!("max |dynamic pressure| over the grid: {p_max:.3e} Pa");

    let checks = check_degenerate_current(&state).expect("k = c within the gate");
    for c in &checks.checks {
        println!(
            "  {:25} {}",
            c.name,
            if c.satisfied { "ok" } else { "VIOLATED" }
        );
    }
}
