//! Every identity suite whose budget admits n, as the `verify` command runs them.

use braid_cfhp::verify::{run_suites, Suite};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().unwrap())
        .unwrap_or(4);
    let report = run_suites(n, &Suite::admitting(n)).unwrap();
    print!("{}", report.to_text());
    if !report.passed {
        std::process::exit(1);
    }
}
