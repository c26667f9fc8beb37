//! The Ammann-Beenker tiles cut into copies of their dual tiles: the
//! triangle into two, the rhombus into four.

use stardual::fixtures::{ammann_beenker_dual_prototiles, ammann_beenker_subdivision};
use stardual::geometry::{render_svg, subdivision_check, RenderInput, Style, DEFAULT_TOL};

fn main() {
    let dual = ammann_beenker_dual_prototiles();
    for (k, p) in dual.iter().enumerate() {
        let v: Vec<String> = p.embedded().iter().map(|z| format!("{z:.4}")).collect();
        println!("dual tile {k}: area {:.6}, vertices {}", p.area(), v.join(", "));
    }
    let subdivision = ammann_beenker_subdivision();
    let mut row = Vec::new();
    for (parent, pieces) in &subdivision {
        let report = subdivision_check(parent, pieces, DEFAULT_TOL).unwrap();
        println!(
            "parent area {:.6}: {} pieces, {}",
            parent.area(),
            pieces.len(),
            if report.passed() { "PASS" } else { "FAIL" }
        );
        for (g, _) in pieces {
            println!("  piece map: ({}) x + {}", g.scale(), g.translate());
        }
        row.push(RenderInput::Subdivision { parent, pieces });
    }
    let path = std::env::temp_dir().join("ammann_beenker_subdivision.svg");
    std::fs::write(&path, render_svg(&RenderInput::Row(row), &Style::default()).unwrap()).unwrap();
    println!("wrote {}", path.display());
}
