//! P_{w,Y} with its vertex labels, its linear extensions, and a DOT drawing.
//! Arguments: w and a comma-separated Y, default `215463 3,5,6`.

use braid_cfhp::braid::lambda;
use braid_cfhp::pwy::{admissible_y, build_pwy, vertex_word};
use braid_cfhp::{Permutation, ValueSet};

fn main() {
    let mut args = std::env::args().skip(1);
    let w: Permutation = args.next().as_deref().unwrap_or("215463").parse().unwrap();
    let y: ValueSet = args
        .next()
        .unwrap_or_else(|| "3,5,6".into())
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().unwrap())
        .collect();

    let admissible: Vec<String> = admissible_y(&w).iter().map(ToString::to_string).collect();
    println!("admissible Y for {w}: {}", admissible.join(" "));

    let p = match build_pwy(&w, y) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    print!("{}", p.to_text());
    for sigma in p.linear_extensions() {
        let word = vertex_word(&p, &sigma).unwrap();
        assert_eq!(word, lambda(&w, &sigma).unwrap());
        println!("  {sigma}  {word}");
    }
    println!();
    print!("{}", p.to_dot());
}
