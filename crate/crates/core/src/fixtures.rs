//! Built-in substitutions with known tile shapes.

use crate::cyclotomic::CycNum;
use crate::dualizer::StarMapChoice;
use crate::error::{Error, Result};
use crate::geometry::{similarity_onto, Polygon};
use crate::substitution::{geometric_realization, parse_word_substitution, AffineSimilarity, SubstitutionSystem};

pub const FIXTURE_NAMES: [&str; 5] = ["fibonacci_squared", "ab_aab", "penrose", "tuebingen_triangle", "ammann_beenker"];

/// Tile shapes solving a system: intervals in dimension 1, polygons in 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Intervals(Vec<(CycNum, CycNum)>),
    Polygons(Vec<Polygon>),
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub system: SubstitutionSystem,
    pub default_star: StarMapChoice,
    pub candidate_solution: Option<Solution>,
    /// Tiles of `dualize(system, default_star)`.
    pub dual_solution: Option<Solution>,
}

pub fn list_fixtures() -> &'static [&'static str] {
    &FIXTURE_NAMES
}

pub fn fixture(name: &str) -> Result<Fixture> {
    match name {
        "fibonacci_squared" => Ok(fibonacci_squared()),
        "ab_aab" => Ok(ab_aab()),
        "penrose" => Ok(penrose()),
        "tuebingen_triangle" => Ok(tuebingen_triangle()),
        "ammann_beenker" => Ok(ammann_beenker()),
        _ => Err(Error::input(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", ")))),
    }
}

pub fn all_fixtures() -> Vec<Fixture> {
    FIXTURE_NAMES.iter().map(|n| fixture(n).expect("built-in fixture")).collect()
}

fn num(n: u32, c: &[i64]) -> CycNum {
    CycNum::from_ints(n, c)
}

fn half(z: CycNum) -> CycNum {
    z.scale(&num::BigRational::new(1.into(), 2.into()))
}

fn map(scale: CycNum, conj: bool, translate: CycNum, label: &str) -> AffineSimilarity {
    AffineSimilarity::new(scale, conj, translate).expect("valid map").with_label(label)
}

fn tau() -> CycNum {
    num(5, &[1, 1, 0, 0, 1])
}

fn word_fixture(name: &'static str, rules: &str) -> SubstitutionSystem {
    let w = parse_word_substitution(rules).expect("valid rules");
    geometric_realization(&w).expect("realizable").with_name(name)
}

fn fibonacci_squared() -> Fixture {
    let z = CycNum::zero(5);
    let tau_inv = tau().inverse().unwrap();
    Fixture {
        name: "fibonacci_squared",
        system: word_fixture("fibonacci_squared", "a -> aab\nb -> ab"),
        default_star: StarMapChoice::new(5, 2).unwrap(),
        candidate_solution: Some(Solution::Intervals(vec![(z.clone(), CycNum::one(5)), (z, tau_inv)])),
        dual_solution: Some(Solution::Intervals(vec![
            (CycNum::zero(5), tau()),
            (tau(), &tau() + &CycNum::one(5)),
        ])),
    }
}

fn ab_aab() -> Fixture {
    let sqrt2 = num(8, &[0, 1, 0, 0, 0, 0, 0, 1]);
    let z = CycNum::zero(8);
    let h = half(sqrt2.clone());
    Fixture {
        name: "ab_aab",
        system: word_fixture("ab_aab", "a -> ab\nb -> aab"),
        default_star: StarMapChoice::new(8, 3).unwrap(),
        candidate_solution: Some(Solution::Intervals(vec![(z.clone(), CycNum::one(8)), (z, sqrt2)])),
        dual_solution: Some(Solution::Intervals(vec![(-&h, h.clone()), (h.clone(), &h + &CycNum::one(8))])),
    }
}

/// Robinson triangles solving the Penrose system: `S = (0, -1, -tau xi^4)`,
/// `L = (0, tau^2, -tau xi^3)`.
///
/// The triangles `(0, -1, -xi^4)` and `(0, tau, -xi^3)` point the same way but
/// have equal areas, so they cannot satisfy the area identity (ratio `tau`).
pub fn penrose_prototiles() -> Vec<Polygon> {
    vec![
        Polygon::from_ints(5, &[&[0], &[-1], &[-1, 0, 0, -1, -1]]).unwrap(),
        Polygon::from_ints(5, &[&[0], &[2, 1, 0, 0, 1], &[0, 0, -1, -1, -1]]).unwrap(),
    ]
}

/// Tuebingen triangles: `S* = (xi^2, xi^3, tau - 2)`,
/// `L* = (1 + xi^2 + xi^4, 1 + xi + xi^3, 1 + xi^2 + xi^3)`.
pub fn tuebingen_prototiles() -> Vec<Polygon> {
    vec![
        Polygon::from_ints(5, &[&[0, 0, 1], &[0, 0, 0, 1], &[-1, 1, 0, 0, 1]]).unwrap(),
        Polygon::from_ints(5, &[&[1, 0, 1, 0, 1], &[1, 1, 0, 1], &[1, 0, 1, 1]]).unwrap(),
    ]
}

fn penrose() -> Fixture {
    let n = 5;
    let t = num(n, &[0, 1, 0, 0, 1]); // tau^-1
    let s = |c: &[i64]| &t * &num(n, c);
    let f1 = map(s(&[0, 0, 0, 0, -1]), false, num(n, &[-1, 0, 0, -1]), "f1");
    let f2 = map(s(&[0, -1]), false, num(n, &[-1, 0, 0, -1, -1]), "f2");
    let f3 = map(s(&[0, 0, 0, 1]), false, num(n, &[1, 1]), "f3");
    let f4 = map(s(&[0, 0, -1]), true, num(n, &[1, 0, 0, -1]), "f4");
    let f5 = map(s(&[-1]), true, num(n, &[1, 0, -1, -1]), "f5");
    // S = f1(S) u f2(L), L = f3(L) u f4(S) u f5(L)
    let entries = vec![vec![vec![f1], vec![f4]], vec![vec![f2], vec![f3, f5]]];
    let system = SubstitutionSystem::new("penrose", n, 2, vec!["S".into(), "L".into()], tau(), entries).unwrap();
    Fixture {
        name: "penrose",
        system,
        default_star: StarMapChoice::new(n, 3).unwrap(),
        candidate_solution: Some(Solution::Polygons(penrose_prototiles())),
        dual_solution: Some(Solution::Polygons(tuebingen_prototiles())),
    }
}

fn tuebingen_triangle() -> Fixture {
    let n = 5;
    let t = num(n, &[0, 1, 0, 0, 1]);
    let s = |c: &[i64]| &t * &num(n, c);
    let g1 = map(s(&[0, 0, 0, 1]), false, s(&[0, 0, 1, 1]), "f1♯");
    let g2 = map(s(&[0, 0, 1]), false, s(&[0, 1, 1, 0, 1]), "f2♯");
    let g3 = map(s(&[0, -1]), false, s(&[0, 1, 0, 0, 1]), "f3♯");
    let g4 = map(s(&[0, 1]), true, s(&[0, -1, 1]), "f4♯");
    let g5 = map(s(&[1]), true, s(&[-1, 1, 0, 0, 1]), "f5♯");
    // S* = f1#(S*) u f4#(L*), L* = f2#(S*) u f3#(L*) u f5#(L*)
    let entries = vec![vec![vec![g1], vec![g2]], vec![vec![g4], vec![g3, g5]]];
    let system =
        SubstitutionSystem::new("tuebingen_triangle", n, 2, vec!["S⋆".into(), "L⋆".into()], -tau(), entries).unwrap();
    Fixture {
        name: "tuebingen_triangle",
        system,
        default_star: StarMapChoice::new(n, 2).unwrap(),
        candidate_solution: Some(Solution::Polygons(tuebingen_prototiles())),
        dual_solution: Some(Solution::Polygons(penrose_prototiles())),
    }
}

/// Unit Ammann-Beenker tiles `S = (0, i, 1 + i)`, `L = (0, 1, 1 + xi, xi)`.
/// The fixture system is solved by `lambda S`, `lambda L`.
pub fn ammann_beenker_prototiles() -> Vec<Polygon> {
    vec![
        Polygon::from_ints(8, &[&[0], &[0, 0, 1], &[1, 0, 1]]).unwrap(),
        Polygon::from_ints(8, &[&[0], &[1], &[1, 1], &[0, 1]]).unwrap(),
    ]
}

/// Tiles of the dual of Ammann-Beenker under `xi -> xi^3`: an isosceles right
/// triangle and a thin right triangle.
pub fn ammann_beenker_dual_prototiles() -> Vec<Polygon> {
    let v = |c: &[i64]| half(num(8, c));
    vec![
        Polygon::new(vec![v(&[1, 0, -1, 2]), v(&[1, -1, 1, 1]), v(&[-1, 1, -1, 1])]).unwrap(),
        Polygon::new(vec![v(&[1, 1, -3, 3]), v(&[1, -1, -1, 1]), v(&[2, -1, -1, 2])]).unwrap(),
    ]
}

/// Dissections of `S` into two and `L` into four copies of `lambda S*`,
/// `lambda L*`: `S` is cut along its altitude, `L` along both diagonals.
pub fn ammann_beenker_subdivision() -> Vec<(Polygon, Vec<(AffineSimilarity, Polygon)>)> {
    let n = 8;
    let orig = ammann_beenker_prototiles();
    let dual = ammann_beenker_dual_prototiles();
    let i = num(n, &[0, 0, 1]);
    let one = CycNum::one(n);
    let xi = num(n, &[0, 1]);
    let zero = CycNum::zero(n);
    let c = half(&one + &i);
    let s_parts = [[i.clone(), zero.clone(), c.clone()], [i.clone(), &one + &i, c]];
    let m = half(&one + &xi);
    let l_parts = [
        [zero.clone(), one.clone(), m.clone()],
        [one.clone(), &one + &xi, m.clone()],
        [&one + &xi, xi.clone(), m.clone()],
        [xi, zero, m],
    ];
    let pieces = |proto: &Polygon, parts: &[[CycNum; 3]]| -> Vec<(AffineSimilarity, Polygon)> {
        parts
            .iter()
            .map(|tri| {
                let target = Polygon::new(tri.to_vec()).unwrap();
                let g = similarity_onto(proto, &target).expect("piece is similar to the dual tile");
                (g, proto.clone())
            })
            .collect()
    };
    vec![(orig[0].clone(), pieces(&dual[0], &s_parts)), (orig[1].clone(), pieces(&dual[1], &l_parts))]
}

fn ammann_beenker() -> Fixture {
    let n = 8;
    let lambda = num(n, &[1, 1, 0, 0, 0, 0, 0, 1]);
    let lambda_inv = num(n, &[-1, 1, 0, 0, 0, 0, 0, 1]);
    let f = |rot: i64, conj: bool, t: &[i64], label: &str| {
        map(&lambda_inv * &CycNum::xi_pow(n, rot), conj, num(n, t), label)
    };
    let f1 = f(4, false, &[1, 1], "f1");
    let f2 = f(1, true, &[1, 1, 1, 0, 0, 0, 0, 1], "f2");
    let f3 = f(7, true, &[1, 1, 1], "f3");
    let f4 = f(0, false, &[0, 1, 1], "f4");
    let f5 = f(2, false, &[0, 1], "f5");
    let f6 = f(2, true, &[0, 1], "f6");
    let f7 = f(3, false, &[1, 2, 1, 0, 0, 0, 0, 1], "f7");
    let f8 = f(6, true, &[2, 1, 1, 0, 0, 0, 0, 1], "f8");
    let f9 = f(7, false, &[1], "f9");
    let f10 = f(5, false, &[0, 1, 0, 1], "f10");
    let f11 = f(6, true, &[1, 1, 1], "f11");
    let f12 = f(3, false, &[0, 2, 1], "f12");
    // prototiles (S, L); L = f1..f3(L) u f6..f9(S), S = f4, f5(L) u f10..f12(S)
    let entries = vec![vec![vec![f10, f11, f12], vec![f6, f7, f8, f9]], vec![vec![f4, f5], vec![f1, f2, f3]]];
    let system =
        SubstitutionSystem::new("ammann_beenker", n, 2, vec!["S".into(), "L".into()], lambda.clone(), entries).unwrap();
    Fixture {
        name: "ammann_beenker",
        system,
        default_star: StarMapChoice::new(n, 3).unwrap(),
        // the translates above place tiles lambda times the unit shapes
        candidate_solution: Some(Solution::Polygons(
            ammann_beenker_prototiles().iter().map(|p| p.transform(&AffineSimilarity::linear(lambda.clone()).unwrap())).collect(),
        )),
        dual_solution: Some(Solution::Polygons(ammann_beenker_dual_prototiles())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{is_primitive, Incidence};

    #[test]
    fn registry() {
        assert_eq!(list_fixtures().len(), 5);
        for f in all_fixtures() {
            assert!(is_primitive(&f.system.substitution_matrix()), "{}", f.name);
            assert!(f.system.contraction_ratio() < 1.0);
            assert_eq!(f.system.name(), f.name);
        }
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn map_counts() {
        assert_eq!(fixture("penrose").unwrap().system.map_count(), 5);
        assert_eq!(fixture("ammann_beenker").unwrap().system.map_count(), 12);
        assert_eq!(fixture("penrose").unwrap().system.substitution_matrix(), vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(fixture("ammann_beenker").unwrap().system.substitution_matrix(), vec![vec![3, 4], vec![2, 3]]);
    }

    #[test]
    fn subdivision_pieces_exist() {
        let sub = ammann_beenker_subdivision();
        assert_eq!(sub[0].1.len(), 2);
        assert_eq!(sub[1].1.len(), 4);
        let lambda_sq = num(8, &[1, 1, 0, 0, 0, 0, 0, 1]).norm_sq();
        for (_, pieces) in &sub {
            for (g, _) in pieces {
                assert_eq!(g.scale().norm_sq(), lambda_sq);
            }
        }
    }
}
