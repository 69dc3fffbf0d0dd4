//! The tree decomposition traced out by the recursion, checked against the
//! definition.
//!
//! ```bash
//! cargo run -p minoriso --example decompose
//! ```

use minoriso::corpus::{random_partial_k_tree, rng};
use minoriso::iso_engine::tree_decomposition;
use minoriso::{Config, Graph, VertexColoring};

fn main() -> minoriso::Result<()> {
    // The default threshold swallows small graphs in one bag; a small t
    // shows the recursion. Minor conclusions are never drawn below the
    // default threshold, so the result is still a valid decomposition.
    let small = |h, t| Config { h, t: Some(t), ..Config::default() };
    let graphs = [
        ("grid 4x4, default t", Graph::grid(4, 4), Config::with_h(5)),
        ("grid 4x4, t = 2", Graph::grid(4, 4), small(5, 2)),
        ("random tree, h = 3, t = 1", minoriso::corpus::random_tree(20, &mut rng(4)), small(3, 1)),
        ("partial 3-tree, t = 3", random_partial_k_tree(30, 3, 0.3, &mut rng(2)), small(5, 3)),
    ];
    for (name, g, cfg) in graphs {
        match tree_decomposition(&g, &VertexColoring::uniform(g.n()), &cfg)? {
            Some(td) => {
                let widest = td.bags.iter().map(Vec::len).max().unwrap_or(0);
                println!(
                    "{name}: {} bags, largest {widest}, adhesion {}, valid: {:?}",
                    td.bags.len(),
                    td.adhesion(),
                    td.validate(&g)
                );
            }
            None => println!("{name}: K5 minor"),
        }
    }
    Ok(())
}
