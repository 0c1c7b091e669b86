//! Galilean invariance: superposing a uniform current shifts the wave speed
//! by exactly the same amount and leaves every moving-frame quantity — and
//! therefore every verification verdict — bitwise unchanged.

use wavetrain::verify::run_all;
use wavetrain::{shift_current, solve, validate, Depth, ParameterSet, SolverSettings};

fn main() {
    let params = validate(ParameterSet::new(10.0, Depth::Finite(5.0)).with_height(0.5))
        .expect("parameters in range");
    let base = solve(&params, &SolverSettings::default()).expect("Newton converges");
    let shifted = shift_current(&base, 1.25).expect("finite depth supports currents");

    println!("base:    k = {:.2} m/s, c = {:.6} m/s", base.params.current, base.wave_speed);
    println!("shifted: k = {:.2} m/s, c = {:.6} m/s", shifted.params.current, shifted.wave_speed);
    println!(
        "c - k is preserved exactly: {} == {}",
        base.wave_speed - base.params.current,
        shifted.wave_speed - shifted.params.current
    );

    let a = serde_json::to_string(&run_all(&base, 65, 33)).unwrap();
    let b = serde_json::to_string(&run_all(&shifted, 65, 33)).unwrap();
    println!(
        "verification reports byte-identical: {}",
        if a == b { "yes" } else { "NO" }
    );
}
