//! Solve a deep-water wave train and compare its speed against the linear
//! dispersion relation c = sqrt(g/kappa).

use wavetrain::{solve, validate, Depth, ParameterSet, SolverSettings};

fn main() {
    let params = validate(ParameterSet::new(10.0, Depth::Deep).with_height(0.5))
        .expect("parameters in range");
    let state = solve(&params, &SolverSettings::default()).expect("Newton converges");

    let c_lin = (params.gravity / state.wavenumber).sqrt();
    println!("deep-water train, L = {} m, H = {} m", params.wavelength, params.wave_height);
    println!("wave speed        c      = {:.6} m/s", state.wave_speed);
    println!("linear dispersion c_lin  = {c_lin:.6} m/s");
    println!(
        "amplitude dispersion     = {:+.4} % (steeper waves travel faster)",
        100.0 * (state.wave_speed - c_lin) / c_lin
    );
    println!("Bernoulli constant E     = {:.6} m", state.head);
}
