//! From letter rules to a geometric substitution: Perron-Frobenius data,
//! interval lengths and the realized digit sets.

use stardual::substitution::{geometric_realization, parse_word_substitution, pf_data, Incidence};

fn main() {
    for rules in ["a -> aab\nb -> ab", "a -> ab\nb -> aab", "a -> ab\nb -> a", "a -> abc\nb -> c\nc -> a"] {
        let w = parse_word_substitution(rules).unwrap();
        let mut word = vec![0];
        for _ in 0..5 {
            word = w.apply(&word);
        }
        let text: String = word.iter().take(40).map(|&i| w.alphabet()[i]).collect();
        println!("{}", rules.replace('\n', ", "));
        println!("  sigma^5(a) = {text}... ({} letters)", word.len());
        match geometric_realization(&w) {
            Ok(s) => {
                let m = s.substitution_matrix();
                let pf = pf_data(&m).unwrap();
                println!("  M = {m:?}, PF {:.10}, lengths {:?}", pf.eigenvalue, pf.left);
                println!("  field Q(xi_{}), expansion {}", s.order(), s.expansion());
                for (i, row) in s.digit_matrix().unwrap().iter().enumerate() {
                    for (j, set) in row.iter().enumerate() {
                        let set: Vec<String> = set.iter().map(|d| d.to_string()).collect();
                        println!("  D[{i}][{j}] = {{{}}}", set.join(", "));
                    }
                }
            }
            Err(e) => println!("  not realized: {e}"),
        }
    }
}
