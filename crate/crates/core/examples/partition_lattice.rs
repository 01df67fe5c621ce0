//! The partition lattice: sizes, Möbius values, Poincaré polynomials, the
//! max-of-minima edge labels and their R-labeling property.

use braid_cfhp::braid::{composition_poset, partition_lattice};
use braid_cfhp::Variable;

fn main() {
    for n in 1..=4 {
        let pi = partition_lattice(n).unwrap();
        let p = pi.poset();
        let (bottom, top) = (p.bottom().unwrap(), p.top().unwrap());
        let chains = p.maximal_chains().unwrap().count();
        let bad = p.r_labeling_violations(|a, b| pi.edge_label(a, b).unwrap() as i64);
        println!(
            "n={n}: {} partitions, {} maximal chains, mu = {}, Poin = {}, R-labeling: {}",
            p.size(),
            chains,
            p.mobius(bottom, top).unwrap(),
            p.interval_poincare(bottom, top, Variable::Y).unwrap(),
            bad.is_empty()
        );
    }
    for n in 1..=3 {
        println!(
            "set compositions of {}: {}",
            n + 1,
            composition_poset(n).unwrap().poset().size()
        );
    }

    let pi = partition_lattice(2).unwrap();
    print!(
        "{}",
        pi.poset().to_dot_with(
            "Pi_2",
            |x| pi.element(x).to_string(),
            |a, b| pi.edge_label(a, b).map(|l| l.to_string())
        )
    );
}
