//! Numerical attractor of the dual Penrose system next to a substituted
//! Penrose patch, written as SVG files.

use stardual::dualizer::{dualize, StarMapChoice};
use stardual::fixtures::{fixture, penrose_prototiles};
use stardual::geometry::{attractor_cloud_thinned, hausdorff, render_svg, PointCloud, RenderInput, Style};
use stardual::substitution::{iterate, Patch};

fn main() {
    let penrose = fixture("penrose").unwrap().system;
    let dual = dualize(&penrose, StarMapChoice::new(5, 3).unwrap()).unwrap();
    let clouds: Vec<PointCloud> = (0..2).map(|j| attractor_cloud_thinned(&dual, 10, j, 2e-3).unwrap()).collect();
    for (j, c) in clouds.iter().enumerate() {
        let (lo, hi) = c.bounds();
        println!("{}: {} points in [{lo:.3}, {hi:.3}]", dual.prototiles()[j], c.len());
    }
    let coarse = attractor_cloud_thinned(&dual, 6, 0, 2e-3).unwrap();
    println!("depth 6 vs depth 10 Hausdorff: {:.2e}", hausdorff(&coarse, &clouds[0]).unwrap());

    let out = std::env::temp_dir();
    let style = Style::for_points(clouds.iter().map(PointCloud::len).sum());
    let svg = render_svg(&RenderInput::Clouds(&clouds), &style).unwrap();
    std::fs::write(out.join("penrose_dual_attractor.svg"), svg).unwrap();

    let patch = iterate(&penrose, &Patch::single(1, 5), 6);
    let shapes: Vec<_> = penrose_prototiles().iter().map(|p| p.embedded()).collect();
    println!("patch after 6 steps: {} tiles, census {:?}", patch.len(), patch.census(2));
    let svg = render_svg(&RenderInput::Patch { patch: &patch, shapes: &shapes }, &Style::default()).unwrap();
    std::fs::write(out.join("penrose_patch.svg"), svg).unwrap();
    println!("wrote SVG files to {}", out.display());
}
