//! Solve a finite-depth wave train riding a uniform current and print the
//! converged integral quantities.

use wavetrain::{solve, validate, Depth, ParameterSet, SolverSettings};

fn main() {
    let raw = ParameterSet::new(10.0, Depth::Finite(5.0))
        .with_height(0.6)
        .with_current(0.4);
    let params = validate(raw).expect("parameters in range");
    let state = solve(&params, &SolverSettings::default()).expect("Newton converges");

    println!("wavelength          L = {} m", params.wavelength);
    println!("depth               d = 5 m, current k = {} m/s", params.current);
    println!("wave height         H = {} m", params.wave_height);
    println!("wave speed          c = {:.6} m/s", state.wave_speed);
    println!("total head          Q = {:.6} m", state.head);
    println!(
        "relative mass flux  m = {:.6} m^2/s",
        state.flux().unwrap()
    );
    println!(
        "converged in {} Newton iterations, residual {:.3e}",
        state.newton_iters, state.residual_norm
    );
    println!("\nsurface harmonics (m):");
    for (j, a) in state.surface_coeffs.iter().enumerate().skip(1).take(8) {
        println!("  a_{j} = {a:+.3e}");
    }
}
