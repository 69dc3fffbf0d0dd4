//! 2-WL distinguishes C6 from two triangles, which 1-WL cannot.
//!
//! ```bash
//! cargo run -p minoriso --example wl2
//! ```

use minoriso::refinement::{wl2_rounds, Wl2Init};
use minoriso::{Graph, VertexColoring};

fn class_sizes(colors: &[usize], k: usize) -> Vec<usize> {
    let mut sizes = vec![0; k];
    for &c in colors {
        sizes[c] += 1;
    }
    sizes.sort_unstable();
    sizes
}

fn main() -> minoriso::Result<()> {
    let c6 = Graph::cycle(6);
    let two_k3 = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
    for (name, g) in [("C6", &c6), ("2K3", &two_k3)] {
        let (pc, rounds) = wl2_rounds(g, Wl2Init::Vertex(&VertexColoring::uniform(g.n())))?;
        println!(
            "{name}: {} pair colors after {rounds} rounds, sizes {:?}",
            pc.num_colors,
            class_sizes(&pc.colors, pc.num_colors)
        );
    }
    Ok(())
}
