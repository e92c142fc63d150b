use entropy_core::sft::charpoly::perron_root;
use entropy_core::sft::{decompose, is_irreducible, spectral_radius, TransitionMatrix};
use entropy_core::tangency::{
    entropy_gap, extend_matrix, perron_chain, validate_markov_structure, ExtensionSpec,
};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn matrix(order: usize, bits: &[bool]) -> TransitionMatrix {
    let mut a = TransitionMatrix::zeros(order).unwrap();
    for i in 0..order {
        for j in 0..order {
            a.set(i, j, bits[i * order + j]);
        }
    }
    a
}

/// Random 0-1 matrix of the given order range.
fn any_matrix(orders: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = TransitionMatrix> {
    orders.prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * n)
            .prop_map(move |bits| matrix(n, &bits))
    })
}

/// Random irreducible matrix: a shuffled Hamiltonian cycle plus noise.
fn irreducible(orders: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = TransitionMatrix> {
    orders.prop_flat_map(|n| {
        let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        let bits = proptest::collection::vec(proptest::bool::weighted(0.25), n * n);
        (perm, bits).prop_map(move |(perm, bits)| {
            let mut a = matrix(n, &bits);
            for k in 0..n {
                a.set(perm[k], perm[(k + 1) % n], true);
            }
            a
        })
    })
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn every_minor_is_strictly_smaller(a in irreducible(2..=8)) {
        prop_assume!(is_irreducible(&a));
        let full = spectral_radius(&a, TOL).unwrap().radius;
        for k in 0..a.order() {
            let minor = spectral_radius(&a.principal_minor(k).unwrap(), TOL).unwrap().radius;
            prop_assert!(minor < full - 1e-9, "drop {k}: {minor} vs {full}");
        }
    }

    #[test]
    fn power_iteration_agrees_with_oracle(a in any_matrix(1..=8)) {
        let got = spectral_radius(&a, TOL).unwrap();
        let exact = perron_root(&a, 1e-14);
        prop_assert!((got.radius - exact).abs() < 1e-9, "{} vs {exact}", got.radius);
        if let Some(o) = got.oracle_radius {
            prop_assert!((o - exact).abs() < 1e-9);
        }
        prop_assert_eq!(got.degenerate, exact < 1e-9);
    }

    #[test]
    fn decomposition_maximum_is_the_entropy(a in any_matrix(1..=10)) {
        let d = decompose(&a, TOL).unwrap();
        let h = spectral_radius(&a, TOL).unwrap().entropy;
        if h == 0.0 {
            prop_assert!(d.max_entropy <= 1e-9);
        } else {
            prop_assert!((d.max_entropy - h).abs() < 1e-9);
            let idx = d.responsible_index.unwrap();
            prop_assert!((d.components[idx].entropy - h).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn extensions_grow_entropy(h in irreducible(2..=5), n1 in 1usize..=4, n2 in 1usize..=4) {
        prop_assume!(is_irreducible(&h));
        let spec = ExtensionSpec::new(h.clone(), n1, n2).unwrap();
        let a = extend_matrix(&spec);
        prop_assert!(is_irreducible(&a));
        prop_assert!(validate_markov_structure(&a, &spec).is_empty());
        prop_assert_eq!(a.leading_block(spec.s()).unwrap(), h.clone());
        let l0 = spectral_radius(&h, TOL).unwrap().radius;
        let lm = spectral_radius(&a, TOL).unwrap().radius;
        prop_assert!(lm > l0 + 1e-9);
        let chain = perron_chain(&a, &spec, TOL).unwrap();
        prop_assert!(chain.conclusion && chain.is_non_increasing());
        prop_assert!((chain.radii.last().unwrap() - l0).abs() < 1e-9);
    }

    #[test]
    fn gap_shrinks_with_strip_length(h in irreducible(2..=4)) {
        prop_assume!(is_irreducible(&h));
        let gaps: Vec<f64> = (1..=8)
            .map(|n| entropy_gap(&ExtensionSpec::new(h.clone(), n, n).unwrap(), TOL).unwrap())
            .collect();
        for w in gaps[..4].windows(2) {
            prop_assert!(w[1] < w[0], "{gaps:?}");
        }
        prop_assert!(gaps.iter().all(|g| *g > 0.0));
        prop_assert!(gaps[7] < gaps[0] / 2.0, "{gaps:?}");
    }
}
