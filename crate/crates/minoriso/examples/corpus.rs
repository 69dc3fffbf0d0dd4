//! Seeded graph generators and graph6 round trips.
//!
//! ```bash
//! cargo run -p minoriso --example corpus
//! ```

use minoriso::corpus::{generate, Family};
use minoriso::io::{parse_graph6, to_graph6};

fn main() -> minoriso::Result<()> {
    for family in [Family::Planar, Family::KTree, Family::Gnp, Family::Tree] {
        for g in generate(family, 2, 12, 42) {
            let line = to_graph6(&g);
            let back = parse_graph6(&line)?;
            println!("{family:?}: n={} m={} {line} round trip: {}", g.n(), g.m(), back == g);
        }
    }
    Ok(())
}
