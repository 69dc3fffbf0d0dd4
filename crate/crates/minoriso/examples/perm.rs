//! Permutation groups via Schreier-Sims, and cosets of them.
//!
//! ```bash
//! cargo run -p minoriso --example perm
//! ```

use minoriso::perm::{brute_force_closure, compose, from_cycles, Coset, PermGroup};

fn main() -> minoriso::Result<()> {
    // The dihedral group of the square.
    let r = from_cycles(4, &[&[0, 1, 2, 3]])?;
    let s = from_cycles(4, &[&[1, 3]])?;
    let d4 = PermGroup::new(4, &[r.clone(), s.clone()])?;
    println!("D4: order {}, base {:?}", d4.order(), d4.base());
    println!("brute-force closure agrees: {}", brute_force_closure(4, &[r.clone(), s.clone()]).len() == 8);
    println!("stabilizer of 0 has order {}", d4.pointwise_stabilizer(&[0])?.order());

    let s6 = PermGroup::symmetric(6);
    println!("S6: order {}, derived subgroup order {}", s6.order(), s6.derived_subgroup()?.order());

    // A coset D4 * rep contains p iff p * rep^-1 lies in D4.
    let rep = from_cycles(4, &[&[0, 1]])?;
    let coset = Coset::new(d4, rep.clone())?;
    println!("coset size {}, contains r*rep: {}", coset.size(), coset.contains(&compose(&r, &rep)));
    Ok(())
}
