//! K_{P,omega} of a labeled P_{w,Y}, computed from reverse (P,omega)-partitions
//! and from fundamental quasisymmetric functions.

use braid_cfhp::perms::word_descent_set;
use braid_cfhp::pwy::build_pwy;
use braid_cfhp::qsym::{fundamental_l, k_p_omega, k_via_fundamental, pwy_labeling_checks};

fn main() {
    let w = "215463".parse().unwrap();
    let p = build_pwy(&w, [3, 5, 6].into_iter().collect()).unwrap();
    let omega = p.labels();

    for sigma in p.linear_extensions().take(4) {
        let word: Vec<i64> = sigma.oneline().iter().map(|&k| omega[k - 1]).collect();
        let des = word_descent_set(&word);
        let l = fundamental_l(des, 5, 3).unwrap();
        println!("{sigma}: Des = {des}, L_Des(1,1,1) = {}", l.total());
    }

    for m in 1..=5 {
        let direct = k_p_omega(p.poset(), omega, m).unwrap();
        let expanded = k_via_fundamental(p.poset(), omega, m).unwrap();
        println!(
            "m={m}: {} monomials, equal: {}",
            direct.num_monomials(),
            direct == expanded
        );
    }
    println!("m=2: {}", k_p_omega(p.poset(), omega, 2).unwrap());

    let [standardized, reversed] = pwy_labeling_checks(&p);
    println!("Lambda vs standardized: {}", standardized.holds());
    println!("natural vs -Lambda:     {}", reversed.holds());
}
