//! Property tests for the rewrite engine: ring axioms, involution, grading
//! and normal-form stability under randomized inputs.

use proptest::prelude::*;

use lpa_core::algebra::LeavittAlgebra;
use lpa_core::graph::Graph;
use lpa_core::rng::SplitMix64;
use lpa_core::sample::random_element;

const GRAPHS: &[&str] = &[
    "vertex v\nedge c v v\n",
    "vertex v\nedge e v v\nedge f v v\n",
    "vertex u\nvertex w\nedge c u u\nedge e u w\n",
    "vertex v1\nvertex v2\nvertex v3\nedge e1 v1 v2\nedge e2 v2 v3\nedge c v3 v3\n",
    "vertex a\nvertex b\nedge e a b\nedge f a b\n",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn multiplication_is_associative(graph_idx in 0..GRAPHS.len(), seed in any::<u64>()) {
        let g = Graph::parse(GRAPHS[graph_idx]).unwrap();
        let alg = LeavittAlgebra::new(&g).unwrap();
        let mut rng = SplitMix64::new(seed);
        let x = random_element(&alg, &mut rng, 3, 3);
        let y = random_element(&alg, &mut rng, 3, 3);
        let z = random_element(&alg, &mut rng, 3, 3);
        prop_assert_eq!(
            alg.multiply(&alg.multiply(&x, &y), &z),
            alg.multiply(&x, &alg.multiply(&y, &z))
        );
    }

    #[test]
    fn involution_is_an_anti_automorphism(graph_idx in 0..GRAPHS.len(), seed in any::<u64>()) {
        let g = Graph::parse(GRAPHS[graph_idx]).unwrap();
        let alg = LeavittAlgebra::new(&g).unwrap();
        let mut rng = SplitMix64::new(seed);
        let x = random_element(&alg, &mut rng, 3, 3);
        let y = random_element(&alg, &mut rng, 3, 3);
        prop_assert_eq!(alg.multiply(&x, &y).star(), alg.multiply(&y.star(), &x.star()));
        prop_assert_eq!(x.star().star(), x);
    }

    #[test]
    fn grading_is_multiplicative(graph_idx in 0..GRAPHS.len(), seed in any::<u64>()) {
        let g = Graph::parse(GRAPHS[graph_idx]).unwrap();
        let alg = LeavittAlgebra::new(&g).unwrap();
        let mut rng = SplitMix64::new(seed);
        let x = random_element(&alg, &mut rng, 3, 2);
        let y = random_element(&alg, &mut rng, 3, 2);
        for (m, xm) in x.grade_split() {
            for (n, yn) in y.grade_split() {
                let prod = alg.multiply(&xm, &yn);
                for (deg, part) in prod.grade_split() {
                    prop_assert_eq!(deg, m + n);
                    prop_assert!(!part.is_zero());
                }
            }
        }
    }

    #[test]
    fn distributivity(graph_idx in 0..GRAPHS.len(), seed in any::<u64>()) {
        let g = Graph::parse(GRAPHS[graph_idx]).unwrap();
        let alg = LeavittAlgebra::new(&g).unwrap();
        let mut rng = SplitMix64::new(seed);
        let x = random_element(&alg, &mut rng, 3, 3);
        let y = random_element(&alg, &mut rng, 3, 3);
        let z = random_element(&alg, &mut rng, 3, 3);
        prop_assert_eq!(
            alg.multiply(&x, &y.add(&z)),
            alg.multiply(&x, &y).add(&alg.multiply(&x, &z))
        );
    }

    #[test]
    fn printer_and_parser_are_inverse(graph_idx in 0..GRAPHS.len(), seed in any::<u64>()) {
        let g = Graph::parse(GRAPHS[graph_idx]).unwrap();
        let alg = LeavittAlgebra::new(&g).unwrap();
        let mut rng = SplitMix64::new(seed);
        let x = random_element(&alg, &mut rng, 3, 4);
        let reparsed = alg.parse_element(&alg.format_element(&x)).unwrap();
        prop_assert_eq!(x, reparsed);
    }

    #[test]
    fn identity_is_neutral(graph_idx in 0..GRAPHS.len(), seed in any::<u64>()) {
        let g = Graph::parse(GRAPHS[graph_idx]).unwrap();
        let alg = LeavittAlgebra::new(&g).unwrap();
        let mut rng = SplitMix64::new(seed);
        let x = random_element(&alg, &mut rng, 3, 3);
        let one = alg.one();
        prop_assert_eq!(alg.multiply(&one, &x), x.clone());
        prop_assert_eq!(alg.multiply(&x, &one), x);
    }
}

#[test]
fn corner_basis_monomials_have_distinct_keys() {
    // Linear independence of the basis by construction: distinct keys.
    let g = Graph::parse("vertex u\nvertex w\nedge c u u\nedge e u w\n").unwrap();
    let alg = LeavittAlgebra::new(&g).unwrap();
    for d in 0..4 {
        let basis = alg.basis_up_to(d);
        let set: std::collections::BTreeSet<_> = basis.iter().cloned().collect();
        assert_eq!(set.len(), basis.len());
    }
}
