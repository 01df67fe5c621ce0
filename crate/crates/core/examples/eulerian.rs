//! Eulerian polynomials, and the numerator at y = 1 as (n+1)! E_n(t).

use braid_cfhp::cfhp::{closed_form_checks, expected_at_y_one};
use braid_cfhp::perms::eulerian_polynomial;

fn main() {
    for n in 1..=7 {
        println!("E_{n}(t) = {}", eulerian_polynomial(n).unwrap());
    }
    for n in 1..=5 {
        let r = closed_form_checks(n).unwrap();
        println!(
            "n={n}: N(1,t) = {} [{}], N(y,0) = {} [{}]",
            expected_at_y_one(n).unwrap(),
            if r.y_one_holds() { "ok" } else { "MISMATCH" },
            r.at_t_zero,
            if r.t_zero_holds() { "ok" } else { "MISMATCH" }
        );
    }
}
