//! N_{B_n}(y,t) by all three methods: `cargo run --example numerator -- 4`

use braid_cfhp::cfhp::Method;
use braid_cfhp::Variable;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("n must be a number"))
        .unwrap_or(3);

    let mut polys = Vec::new();
    for m in Method::ALL {
        let p = m.numerator(n).unwrap_or_else(|e| panic!("{m}: {e}"));
        println!("{:<10} {}", m.name(), p.to_text_grouped(Variable::T));
        polys.push(p);
    }
    println!("agree: {}", polys.windows(2).all(|w| w[0] == w[1]));
    println!(
        "N(1,t) = {}",
        polys[0].substitute_values(&[(Variable::Y, 1)])
    );
    println!(
        "N(y,0) = {}",
        polys[0].substitute_values(&[(Variable::T, 0)])
    );
}
