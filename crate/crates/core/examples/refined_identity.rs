//! Both sides of the refined ascent/descent identity for one w, then the
//! sweep over all of S_{n+1}.

use braid_cfhp::cfhp::{refined_identity_sweep, refined_sides, specialize};
use braid_cfhp::{Permutation, Variable};

fn main() {
    let w: Permutation = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("2413")
        .parse()
        .unwrap();
    let sides = refined_sides(&w).unwrap();
    println!("w = {w}");
    println!("ascents:  {}", sides.ascent_side);
    println!("descents: {}", sides.descent_side);
    println!("equal: {}", sides.holds());
    println!(
        "in y, t:  {}",
        specialize(&sides.descent_side).to_text_grouped(Variable::T)
    );

    let n = w.len() - 1;
    let sweep = refined_identity_sweep(n).unwrap();
    println!(
        "all w in S_{}: {} checked, {} failures, total {}",
        n + 1,
        sweep.checked,
        sweep.failures.len(),
        sweep.specialized_total.to_text_grouped(Variable::T)
    );
}
