//! Isomorphism tests: a planar graph against a shuffled copy, and a pair
//! that differs by one edge.
//!
//! ```bash
//! cargo run -p minoriso --example iso
//! ```

use minoriso::corpus::{random_planar, rng, shuffled};
use minoriso::iso_engine::{aut, is_isomorphic, Decision};
use minoriso::{Config, Graph, VertexColoring};

fn main() -> minoriso::Result<()> {
    let cfg = Config::with_h(5);
    let mut r = rng(11);
    let g = random_planar(25, 0.3, &mut r);
    let h = shuffled(&g, &mut r);
    let u = VertexColoring::uniform(g.n());
    match is_isomorphic(&g, &u, &h, &u, &cfg)? {
        Decision::Iso { rep, aut } => {
            println!("isomorphic; map verifies: {}; |Aut| = {}", g.is_isomorphism(&h, &rep), aut.order())
        }
        other => println!("unexpected: {}", other.label()),
    }

    let mut edges = g.edges();
    edges.pop();
    let g2 = Graph::from_edges(g.n(), &edges)?;
    println!("after deleting one edge: {}", is_isomorphic(&g, &u, &g2, &u, &cfg)?.label());

    println!("|Aut(Petersen)| = {}", aut(&Graph::petersen(), &VertexColoring::uniform(10))?.order());
    Ok(())
}
