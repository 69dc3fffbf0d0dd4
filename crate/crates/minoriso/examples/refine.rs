//! Color refinement (1-WL) on a path and on two graphs it cannot tell apart.
//!
//! ```bash
//! cargo run -p minoriso --example refine
//! ```

use minoriso::refinement::{color_refine, color_refine_trace};
use minoriso::{Graph, VertexColoring};

fn main() -> minoriso::Result<()> {
    let p5 = Graph::path(5);
    let trace = color_refine_trace(&p5, &VertexColoring::uniform(5), None)?;
    println!("P5 stabilizes after {} refining rounds", trace.round_count);
    for (i, round) in trace.rounds.iter().enumerate() {
        println!("  round {i}: {:?}", round.colors);
    }

    // C6 and two triangles are both 2-regular, so 1-WL sees one class in each.
    let c6 = Graph::cycle(6);
    let two_k3 = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
    let a = color_refine(&c6, &VertexColoring::uniform(6), None)?;
    let b = color_refine(&two_k3, &VertexColoring::uniform(6), None)?;
    println!("C6 classes: {}, 2K3 classes: {}", a.num_colors, b.num_colors);
    Ok(())
}
