use braid_cfhp::cfhp::Method;
use braid_cfhp::cli::run;
use braid_cfhp::MultiPoly;

fn golden(n: usize) -> String {
    let path = format!(
        "{}/tests/golden/numerator_n{n}.json",
        env!("CARGO_MANIFEST_DIR")
    );
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn stored_numerators_match_every_method() {
    for n in 1..=3 {
        let v: serde_json::Value = serde_json::from_str(&golden(n)).unwrap();
        let stored: MultiPoly = serde_json::from_value(v["poly"].clone()).unwrap();
        for m in Method::ALL {
            assert_eq!(m.numerator(n).unwrap(), stored, "n={n} {m}");
        }
    }
}

#[test]
fn cli_json_is_byte_identical_to_golden() {
    for n in 1..=3 {
        let out = run([
            "braid-cfhp",
            "numerator",
            "--n",
            &n.to_string(),
            "--method",
            "statistic",
            "--format",
            "json",
        ]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, golden(n), "n={n}");
    }
}

#[test]
fn larger_n_agree_across_methods() {
    for n in 4..=5 {
        let polys: Vec<MultiPoly> = Method::ALL
            .iter()
            .map(|m| m.numerator(n).unwrap())
            .collect();
        assert_eq!(polys[0], polys[1]);
        assert_eq!(polys[1], polys[2]);
    }
}
