//! Run the full verification battery on one solved state and print every
//! check's verdict and margin.

use wavetrain::verify::run_all;
use wavetrain::{solve, validate, Depth, ParameterSet, SolverSettings};

fn main() {
    let params = validate(
        ParameterSet::new(10.0, Depth::Finite(5.0))
            .with_height(0.5)
            .with_current(0.3),
    )
    .expect("parameters in range");
    let state = solve(&params, &SolverSettings::default()).expect("Newton converges");
    let report = run_all(&state, 65, 33);

    let print_checks = |title: &str, checks: &[wavetrain::verify::InvariantCheck]| {
        println!("{title}:");
        for c in checks {
            println!(
                "  {:45} {}  (worst margin {:+.3e}, {} inconclusive)",
                c.name,
                if c.satisfied { "ok " } else { "VIOLATED" },
                c.worst_margin,
                c.inconclusive
            );
        }
    };
    if let Some(signs) = &report.signs {
        print_checks("sign invariants", &signs.checks);
    }
    print_checks("symmetry", &report.symmetry.checks);
    if let Some(m) = &report.monotonicity {
        println!("monotone descent of p:");
        for p in &m.paths {
            println!(
                "  {:45} {}  ({})",
                p.name,
                if p.strictly_monotone { "ok " } else { "VIOLATED" },
                p.direction
            );
        }
    }
    if let Some(e) = &report.elliptic {
        println!(
            "elliptic identity residual: {:.3e} at spacing {:.3} m",
            e.residual_max, e.spacing
        );
    }
    if let Some(e) = &report.extrema {
        println!(
            "extrema: crest_is_max = {}, trough_is_min = {}",
            e.crest_is_max, e.trough_is_min
        );
    }
    println!("\noverall: {}", if report.passed { "PASS" } else { "FAIL" });
}
