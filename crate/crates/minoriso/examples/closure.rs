//! The t-CR closure: individualize, refine, and split every class of size
//! at most t until nothing changes.
//!
//! ```bash
//! cargo run -p minoriso --example closure
//! ```

use minoriso::closure::{closure_t, components_and_separators, TraceStep};
use minoriso::{Graph, VertexColoring};

fn main() -> minoriso::Result<()> {
    let g = Graph::grid(4, 4);
    let uniform = VertexColoring::uniform(g.n());
    for t in [1, 2] {
        let r = closure_t(&g, &uniform, None, &[0], t)?;
        println!("grid 4x4, seed {{0}}, t = {t}: closure has {} vertices", r.d.len());
        for step in &r.trace {
            match step {
                TraceStep::Refine { classes } => println!("  refine -> {classes} classes"),
                TraceStep::Individualize { classes } => println!("  individualize {classes:?}"),
            }
        }
    }

    // A closure that stops early leaves components hanging off small separators.
    let star = Graph::star(6);
    let r = closure_t(&star, &VertexColoring::uniform(7), None, &[0], 1)?;
    for (comp, sep) in components_and_separators(&star, &r.d)? {
        println!("star: component {comp:?} with separator {sep:?}");
    }
    Ok(())
}
