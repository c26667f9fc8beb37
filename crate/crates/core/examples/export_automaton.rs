//! Graphviz automata of a system and its dual.

use stardual::dualizer::{dualize, StarMapChoice};
use stardual::fixtures::fixture;
use stardual::substitution::export_automaton;

fn main() {
    let s = fixture("ammann_beenker").unwrap().system;
    print!("{}", export_automaton(&s));
    let dual = dualize(&s, StarMapChoice::new(8, 3).unwrap()).unwrap();
    print!("{}", export_automaton(&dual));
}
