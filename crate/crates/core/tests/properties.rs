use std::collections::BTreeMap;

use braid_cfhp::braid::{chain_from_pair, ino_set, lambda};
use braid_cfhp::cfhp::NumeratorReport;
use braid_cfhp::pwy::{build_pwy, vertex_word};
use braid_cfhp::verify::{run_suites, Suite, VerifyReport};
use braid_cfhp::{FinitePoset, Monomial, MultiPoly, Permutation, Variable};
use proptest::prelude::*;

const VARS: [Variable; 4] = [Variable::Y, Variable::T, Variable::Yi(2), Variable::Ti(1)];

fn poly() -> impl Strategy<Value = MultiPoly> {
    let term = (-5i64..=5, prop::collection::vec(0u32..3, VARS.len()));
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, exps)| MultiPoly::term(c, Monomial::from_pairs(VARS.into_iter().zip(exps))))
            .sum()
    })
}

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(|m| {
        Just((1..=m).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

/// A pair `(w, σ)` with `|w| = |σ| + 1`.
fn pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| {
        let w = Just((1..=n + 1).collect::<Vec<_>>()).prop_shuffle();
        let s = Just((1..=n).collect::<Vec<_>>()).prop_shuffle();
        (w, s).prop_map(|(w, s)| (Permutation::new(w).unwrap(), Permutation::new(s).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &MultiPoly::zero(), a.clone());
        prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a * &MultiPoly::zero()).is_zero());
    }

    #[test]
    fn substitution_composes(p in poly(), f in poly(), g in poly(), h in poly()) {
        // a: y -> f, t -> g ; b: y -> h
        let a: BTreeMap<Variable, MultiPoly> =
            [(Variable::Y, f.clone()), (Variable::T, g.clone())].into_iter().collect();
        let b: BTreeMap<Variable, MultiPoly> = [(Variable::Y, h.clone())].into_iter().collect();
        let composed: BTreeMap<Variable, MultiPoly> =
            [(Variable::Y, f.substitute(&b)), (Variable::T, g.substitute(&b))].into_iter().collect();
        prop_assert_eq!(p.substitute(&a).substitute(&b), p.substitute(&composed));
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(), q in poly(), y in -3i64..=3, t in -3i64..=3) {
        let vals = [(Variable::Y, y), (Variable::T, t), (Variable::Yi(2), 2), (Variable::Ti(1), -1)];
        prop_assert_eq!(
            (&p * &q).substitute_values(&vals),
            &p.substitute_values(&vals) * &q.substitute_values(&vals)
        );
        prop_assert_eq!(
            (&p + &q).substitute_values(&vals),
            &p.substitute_values(&vals) + &q.substitute_values(&vals)
        );
    }

    #[test]
    fn polynomial_json_round_trips(p in poly()) {
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<MultiPoly>(&text).unwrap(), p);
    }

    #[test]
    fn permutation_round_trips(w in permutation(12)) {
        prop_assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w.clone());
        let text = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&text).unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Beyond the exhaustive range: labels are a permutation of 2..=n+1,
    /// agree with the explicit block-merging chain, and are reproduced by
    /// the vertex labeling of P_{w,Ino}.
    #[test]
    fn signed_labeling_at_larger_n((w, s) in pair(9)) {
        let lam = lambda(&w, &s).unwrap();
        let mut abs: Vec<i64> = lam.entries().iter().map(|l| l.abs()).collect();
        abs.sort_unstable();
        prop_assert_eq!(abs, (2..=w.len() as i64).collect::<Vec<_>>());

        let chain = chain_from_pair(&w, &s).unwrap();
        for (k, step) in chain.windows(2).enumerate() {
            // the two blocks of step[0] that are not blocks of step[1]
            let gone: Vec<&Vec<usize>> =
                step[0].blocks().iter().filter(|b| !step[1].blocks().contains(b)).collect();
            prop_assert_eq!(gone.len(), 2);
            let (left, right) = (gone[0][0], gone[1][0]);
            let expected = if left < right { right as i64 } else { -(left as i64) };
            prop_assert_eq!(lam.entries()[k], expected);
        }

        let lp = build_pwy(&w, ino_set(&w, &s).unwrap()).unwrap();
        prop_assert_eq!(vertex_word(&lp, &s).unwrap(), lam);
        prop_assert!(lp.covers_reverse_labels());
    }

    #[test]
    fn poset_json_round_trips(w in permutation(8)) {
        prop_assume!(w.len() >= 2);
        let ys = braid_cfhp::pwy::admissible_y(&w);
        let lp = build_pwy(&w, ys[ys.len() / 2]).unwrap();
        let text = serde_json::to_string(lp.poset()).unwrap();
        prop_assert_eq!(&serde_json::from_str::<FinitePoset>(&text).unwrap(), lp.poset());
    }
}

#[test]
fn report_json_round_trips() {
    let r = NumeratorReport::compute(3).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<NumeratorReport>(&text).unwrap(), r);

    let v = run_suites(2, &Suite::admitting(2)).unwrap();
    let text = serde_json::to_string(&v).unwrap();
    assert_eq!(serde_json::from_str::<VerifyReport>(&text).unwrap(), v);
}
