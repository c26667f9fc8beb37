//! Star-dual of the Penrose triangle system: the Tuebingen triangle maps.

use stardual::dualizer::{dualize, expansion_check, StarMapChoice};
use stardual::fixtures::fixture;
use stardual::substitution::Incidence;

fn main() {
    let penrose = fixture("penrose").unwrap().system;
    for k in [2, 3] {
        let c = StarMapChoice::new(5, k).unwrap();
        let dual = dualize(&penrose, c).unwrap();
        println!("xi -> xi^{k}: {} with expansion {}", dual.name(), dual.expansion());
        println!("  matrix {:?} (original {:?})", dual.substitution_matrix(), penrose.substitution_matrix());
        println!("  expansion ratio {}", expansion_check(&penrose, &dual, c).unwrap());
        for (child, parent, f) in dual.maps() {
            let conj = if f.conjugate() { "conj(x)" } else { "x" };
            println!(
                "  {} <- {}: ({}) {conj} + {}",
                dual.prototiles()[parent],
                dual.prototiles()[child],
                f.scale(),
                f.translate()
            );
        }
        let back = dualize(&dual, c.inverse()).unwrap();
        println!("  dual of the dual is the original: {}", back == penrose);
    }
}
