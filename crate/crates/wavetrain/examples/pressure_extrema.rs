//! Locate the extrema of the dynamic pressure over the half-period domain:
//! the maximum sits at the crest and the minimum at the trough, on the
//! surface, never in the interior.

use wavetrain::fields::sample_grid;
use wavetrain::verify::locate_extrema;
use wavetrain::{solve, validate, Depth, ParameterSet, Region, SolverSettings};

fn main() {
    for (label, depth) in [("finite depth (d = 5 m)", Depth::Finite(5.0)), ("deep water", Depth::Deep)] {
        let params = validate(ParameterSet::new(10.0, depth).with_height(0.5))
            .expect("parameters in range");
        let state = solve(&params, &SolverSettings::default()).expect("Newton converges");
        let grid = sample_grid(&state, 129, 65, Region::HalfPeriod);
        let floor = 1e-10 * params.density * params.gravity * params.wavelength;
        let e = locate_extrema(&grid, floor).expect("non-degenerate field");

        println!("{label}:");
        println!(
            "  max p = {:+9.3} Pa at (x, y) = ({:.3}, {:+.3})  [crest: {}]",
            e.max_value, e.max_location.0, e.max_location.1, e.crest_is_max
        );
        println!(
            "  min p = {:+9.3} Pa at (x, y) = ({:.3}, {:+.3})  [trough: {}]",
            e.min_value, e.min_location.0, e.min_location.1, e.trough_is_min
        );
        println!(
            "  gap to the best interior sample: {:.3e} / {:.3e} Pa\n",
            e.max_margin, e.min_margin
        );
    }
}
