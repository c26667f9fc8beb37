use super::SubstitutionSystem;
use crate::cyclotomic::CycNum;
use std::fmt::Write;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of the automaton: one node per prototile, one edge
/// `parent -> child` per map. Edges are labeled with the map label (if any),
/// the rotation part `lambda * scale` when it is not 1, the digit
/// `lambda * translate`, and `conj` for orientation-reversing maps.
pub fn export_automaton(s: &SubstitutionSystem) -> String {
    let lambda = s.expansion();
    let mut edges: Vec<(usize, CycNum, usize, bool, CycNum, Option<&str>)> = s
        .maps()
        .map(|(i, j, f)| (j, s.digit_of(f), i, f.conjugate(), lambda * f.scale(), f.label()))
        .collect();
    edges.sort_by(|a, b| (a.0, &a.1, a.2, a.3, &a.4).cmp(&(b.0, &b.1, b.2, b.3, &b.4)));

    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(s.name())).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for (k, name) in s.prototiles().iter().enumerate() {
        writeln!(out, "  t{k} [label=\"{}\"];", escape(name)).unwrap();
    }
    for (parent, digit, child, conj, rot, label) in edges {
        let mut text = String::new();
        if let Some(l) = label {
            text.push_str(l);
            text.push_str(": ");
        }
        if !rot.is_one() {
            write!(text, "R = {rot}, ").unwrap();
        }
        write!(text, "d = {digit}").unwrap();
        if conj {
            text.push_str(", conj");
        }
        writeln!(out, "  t{parent} -> t{child} [label=\"{}\"];", escape(&text)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{geometric_realization, parse_word_substitution};

    #[test]
    fn fibonacci_squared_automaton() {
        let s = geometric_realization(&parse_word_substitution("a -> aab\nb -> ab").unwrap()).unwrap();
        let dot = export_automaton(&s);
        assert_eq!(dot.matches(" -> t").count(), 5);
        assert_eq!(dot.matches("[label=\"").count(), 7);
        let expected = "digraph \"a->aab,b->ab\" {\n  rankdir=LR;\n  t0 [label=\"a\"];\n  t1 [label=\"b\"];\n  \
                        t0 -> t0 [label=\"d = 0\"];\n  t0 -> t0 [label=\"d = 1\"];\n  t0 -> t1 [label=\"d = 2\"];\n  \
                        t1 -> t0 [label=\"d = 0\"];\n  t1 -> t1 [label=\"d = 1\"];\n}\n";
        assert_eq!(dot, expected);
    }
}
