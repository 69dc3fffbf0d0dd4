//! The isomorphism-invariant initial color class that seeds each recursion step.
//!
//! ```bash
//! cargo run -p minoriso --example initial_color
//! ```

use minoriso::corpus::{random_planar, rng};
use minoriso::initial_color::{find_initial_class, postcondition_holds, InitialColorOutput};
use minoriso::{Config, Graph, VertexColoring};

fn main() -> minoriso::Result<()> {
    let cfg = Config::with_h(5);
    let graphs =
        [("C8", Graph::cycle(8)), ("grid 3x5", Graph::grid(3, 5)), ("planar 30", random_planar(30, 0.3, &mut rng(3)))];
    for (name, g) in graphs {
        match find_initial_class(&g, &VertexColoring::uniform(g.n()), &cfg)? {
            InitialColorOutput::Class(c) => println!(
                "{name}: class {:?} (color {}, {} restarts), postcondition {}",
                c.x_in_g(),
                c.color,
                c.restarts,
                postcondition_holds(&c, cfg.t())?
            ),
            InitialColorOutput::MinorFound => println!("{name}: K5 minor"),
        }
    }
    Ok(())
}
