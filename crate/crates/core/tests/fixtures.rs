use stardual::dualizer::dualize;
use stardual::fixtures::{all_fixtures, ammann_beenker_subdivision, Solution};
use stardual::geometry::{subdivision_check, verify_interval_solution, verify_polygon_solution, Report, DEFAULT_TOL};
use stardual::substitution::SubstitutionSystem;

fn check(s: &SubstitutionSystem, sol: &Solution) -> Report {
    match sol {
        Solution::Intervals(iv) => verify_interval_solution(s, iv).unwrap(),
        Solution::Polygons(p) => verify_polygon_solution(s, p, DEFAULT_TOL).unwrap(),
    }
}

#[test]
fn candidate_solutions_verify() {
    for f in all_fixtures() {
        let sol = f.candidate_solution.as_ref().unwrap();
        let r = check(&f.system, sol);
        assert!(r.passed(), "{}: {}", f.name, r.to_json());
    }
}

#[test]
fn dual_solutions_verify() {
    for f in all_fixtures() {
        let dual = dualize(&f.system, f.default_star).unwrap();
        let r = check(&dual, f.dual_solution.as_ref().unwrap());
        assert!(r.passed(), "{}: {}", f.name, r.to_json());
    }
}

#[test]
fn ammann_beenker_subdivision_verifies() {
    for (parent, pieces) in ammann_beenker_subdivision() {
        let r = subdivision_check(&parent, &pieces, DEFAULT_TOL).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }
}
