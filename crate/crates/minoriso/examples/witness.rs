//! Extracting a topological clique from an engineered instance where every
//! color class is large.
//!
//! ```bash
//! cargo run -p minoriso --example witness
//! ```

use minoriso::corpus::{clique_instance, rng};
use minoriso::refinement::color_refine;
use minoriso::witness::{extract_topological_clique, validate_witness, WitnessOutcome};
use minoriso::VertexColoring;

fn main() -> minoriso::Result<()> {
    let h = 3;
    let inst = clique_instance(h, 81, 2, &mut rng(7))?;
    let init: Vec<usize> = (0..inst.graph.n()).map(|v| if v < h { v + 1 } else { 0 }).collect();
    let chi = color_refine(&inst.graph, &VertexColoring::from_raw(&init), None)?;
    println!("instance: {} vertices, {} edges, {} classes", inst.graph.n(), inst.graph.m(), chi.num_colors);
    match extract_topological_clique(&inst.graph, &chi, &inst.branch, &inst.region)? {
        WitnessOutcome::Witness(w) => {
            println!("K{h} subdivision on branch vertices {:?}", w.branch);
            for p in &w.paths {
                println!("  path of length {}: {} .. {}", p.len() - 1, p[0], p[p.len() - 1]);
            }
            println!("valid: {}", validate_witness(&inst.graph, &w));
        }
        WitnessOutcome::SmallClass(c) => println!("class of size {} is too small", c.len()),
    }
    Ok(())
}
