//! Checks tile shapes against their systems: intervals exactly, polygons
//! with exact areas and tolerance-based disjointness and containment.

use stardual::fixtures::{all_fixtures, Solution};
use stardual::geometry::{verify_interval_solution, verify_polygon_solution, Margin, DEFAULT_TOL};

fn main() {
    for f in all_fixtures() {
        let Some(sol) = &f.candidate_solution else { continue };
        let report = match sol {
            Solution::Intervals(iv) => verify_interval_solution(&f.system, iv).unwrap(),
            Solution::Polygons(ps) => verify_polygon_solution(&f.system, ps, DEFAULT_TOL).unwrap(),
        };
        println!("{}: {}", f.name, if report.passed() { "PASS" } else { "FAIL" });
        for c in &report.checks {
            let margin = match c.margin {
                Margin::Exact => "exact".to_string(),
                Margin::Value(v) => format!("{v:.3e}"),
            };
            println!("  {:>4} {:?} {:?} ({margin})", c.component, c.check, c.status);
        }
    }
}
