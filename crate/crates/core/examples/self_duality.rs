//! Algebraic self-duality checks on the one-dimensional fixtures and a few
//! word substitutions.

use stardual::dualizer::StarMapChoice;
use stardual::fixtures::fixture;
use stardual::selfdual::{certificate_search, necessary_check, verify_certificate, SearchOutcome};
use stardual::substitution::{geometric_realization, parse_word_substitution, Incidence};

fn report(name: &str, s: &stardual::substitution::SubstitutionSystem, k: i64, scaled: bool) {
    let c = StarMapChoice::new(s.order(), k).unwrap();
    let out = certificate_search(s, c, scaled).unwrap();
    let mode = if scaled { "scaled" } else { "strict" };
    match &out {
        SearchOutcome::Certificate(cert) => {
            let ok = verify_certificate(s, c, cert).unwrap();
            println!("{name} [{mode}]: certificate, permutation {:?}, power {}, re-verified {ok}", cert.permutation, cert.power);
        }
        SearchOutcome::Failure(f) => println!("{name} [{mode}]: {} at {:?}", f.obstruction, f.entry),
    }
}

fn main() {
    println!("matrix condition for [[1,1],[2,1]]: {:?}", necessary_check(&vec![vec![1, 1], vec![2, 1]]).unwrap());
    for name in ["ab_aab", "fibonacci_squared"] {
        let f = fixture(name).unwrap();
        for scaled in [false, true] {
            report(name, &f.system, f.default_star.k() as i64, scaled);
        }
    }
    for rules in ["a -> ab\nb -> a", "a -> aba\nb -> ba", "a -> abaab\nb -> aab", "a -> aab\nb -> ba"] {
        let w = parse_word_substitution(rules).unwrap();
        let Ok(s) = geometric_realization(&w) else {
            println!("{}: not realizable", rules.replace('\n', ", "));
            continue;
        };
        let k = if s.order() == 5 { 2 } else { 3 };
        println!("{}: M = {:?}", s.name(), s.substitution_matrix());
        for scaled in [false, true] {
            report(s.name(), &s, k, scaled);
        }
    }
}
