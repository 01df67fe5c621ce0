//! The chain of set compositions for a pair (w, sigma), its signed labels,
//! and where each label comes from.

use braid_cfhp::braid::{chain_from_pair, ino_set, lambda, last_bar_positions};
use braid_cfhp::Permutation;

fn main() {
    let mut args = std::env::args().skip(1);
    let w: Permutation = args.next().as_deref().unwrap_or("215463").parse().unwrap();
    let sigma: Permutation = args.next().as_deref().unwrap_or("14253").parse().unwrap();

    let chain = chain_from_pair(&w, &sigma).unwrap();
    let lam = lambda(&w, &sigma).unwrap();
    println!("{}", chain[0]);
    for (step, c) in chain.iter().enumerate().skip(1) {
        println!(
            "{c:<16} delete bar {}, label {}",
            sigma.at(step),
            lam.entries()[step - 1]
        );
    }
    println!("lambda = {lam}, Ino = {}", ino_set(&w, &sigma).unwrap());

    println!("\nvalue  l  r  l_sigma  r_sigma");
    for v in 2..=w.len() {
        let bp = last_bar_positions(&w, &sigma, v).unwrap();
        let show = |x: Option<usize>| x.map_or("-".to_string(), |k| k.to_string());
        println!(
            "{v:>5} {:>2} {:>2} {:>8} {:>8}",
            show(bp.ell),
            show(bp.r),
            bp.ell_sigma,
            bp.r_sigma
        );
    }
}
