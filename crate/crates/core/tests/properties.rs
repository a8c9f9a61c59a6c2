use proptest::prelude::*;

use flaghodge::complex::FlagComplex;
use flaghodge::domination::{
    edge_incidence_representation, fractional_strong_domination, representation_value, strong_domination_lp,
};
use flaghodge::graphs::{complement, lambda_max, laplacian_matrix, spectral_gap, Graph};
use flaghodge::hypergraph::{fractional_width, width, Hypergraph};
use flaghodge::lp::{solve_covering_lp, solve_packing_dual, LinearProgram};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn hypergraph_strategy() -> impl Strategy<Value = Hypergraph> {
    (2usize..=7).prop_flat_map(|ground| {
        proptest::collection::vec(proptest::collection::btree_set(0..ground, 1..=3), 1..=6)
            .prop_map(move |edges| Hypergraph::new(ground, edges.into_iter().map(|e| e.into_iter().collect()).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_is_an_involution(g in graph_strategy(9)) {
        prop_assert_eq!(complement(&complement(&g)), g);
    }

    #[test]
    fn laplacian_rows_sum_to_zero(g in graph_strategy(9)) {
        let l = laplacian_matrix(&g).unwrap();
        for i in 0..g.n() {
            prop_assert_eq!(l.row(i).iter().sum::<f64>(), 0.0);
        }
    }

    #[test]
    fn top_and_second_eigenvalues_of_complements(g in graph_strategy(9)) {
        prop_assume!(g.n() >= 2);
        let n = g.n() as f64;
        let sum = lambda_max(&g).unwrap() + spectral_gap(&complement(&g)).unwrap();
        prop_assert!((sum - n).abs() <= 1e-8, "sum {}", sum);
    }

    #[test]
    fn flag_complex_is_closed_under_faces(g in graph_strategy(8)) {
        let x = FlagComplex::full(&g).unwrap();
        for k in 1..=x.top_dim() {
            for s in x.simplices(k) {
                for i in 0..=k {
                    prop_assert!(x.contains(&s.face(i).unwrap()));
                }
                for (a, &u) in s.vertices().iter().enumerate() {
                    for &v in &s.vertices()[a + 1..] {
                        prop_assert!(g.has_edge(u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn coboundary_squares_to_zero(g in graph_strategy(8)) {
        let x = FlagComplex::full(&g).unwrap();
        for k in 0..x.top_dim() as i64 {
            let d = x.coboundary_matrix(k).unwrap().mul(&x.coboundary_matrix(k - 1).unwrap()).unwrap();
            prop_assert!(d.is_zero());
        }
    }

    #[test]
    fn strong_duality_on_domination_programs(g in graph_strategy(9)) {
        prop_assume!(g.isolated_vertex().is_none());
        let lp = strong_domination_lp(&g);
        let primal = solve_covering_lp(&lp).unwrap();
        let dual = solve_packing_dual(&lp.dual()).unwrap();
        prop_assert!(primal.is_optimal() && dual.is_optimal());
        prop_assert!((primal.objective - dual.objective).abs() <= 1e-7);
        prop_assert!(primal.certificate(&lp).unwrap().holds(primal.objective));
        prop_assert!(dual.certificate(&lp.dual()).unwrap().holds(dual.objective));
    }

    #[test]
    fn strong_duality_on_random_covering_programs(
        rows in proptest::collection::vec(proptest::collection::vec(0u8..4, 4), 1..6),
        costs in proptest::collection::vec(1u8..5, 4),
        rhs in proptest::collection::vec(0u8..3, 6),
    ) {
        let matrix: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&a| a as f64).collect()).collect();
        let b: Vec<f64> = rhs[..matrix.len()].iter().map(|&v| v as f64).collect();
        let lp = LinearProgram::new(costs.iter().map(|&c| c as f64).collect(), matrix, b).unwrap();
        let primal = solve_covering_lp(&lp).unwrap();
        let dual = solve_packing_dual(&lp.dual()).unwrap();
        if primal.is_optimal() {
            prop_assert!(dual.is_optimal());
            prop_assert!((primal.objective - dual.objective).abs() <= 1e-7 * (1.0 + primal.objective.abs()));
            prop_assert!(primal.certificate(&lp).unwrap().holds(primal.objective));
        } else {
            // nonnegative costs keep the covering side bounded below
            prop_assert_eq!(primal.objective, f64::INFINITY);
            prop_assert_eq!(dual.objective, f64::INFINITY);
        }
    }

    #[test]
    fn fractional_width_is_at_most_width(f in hypergraph_strategy()) {
        let ws = fractional_width(&f).unwrap().value;
        let w = width(&f).unwrap().value as f64;
        prop_assert!(ws <= w + 1e-7);
        // Σ f(F)|E ∩ F| ≤ (max edge size)·Σ f(F)
        let largest = f.edges().iter().map(|e| e.len()).max().unwrap() as f64;
        prop_assert!(ws >= 1.0 / largest - 1e-9);
    }

    #[test]
    fn zero_padding_keeps_the_value(g in graph_strategy(8), extra in 1usize..4) {
        prop_assume!(g.edge_count() > 0);
        let p = edge_incidence_representation(&g).unwrap();
        let a = representation_value(&g, &p).unwrap().value;
        let b = representation_value(&g, &p.zero_padded(extra)).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()) || (a.is_infinite() && a == b));
    }

    #[test]
    fn edge_incidence_value_is_fractional_strong_domination(g in graph_strategy(8)) {
        prop_assume!(g.edge_count() > 0 && g.isolated_vertex().is_none());
        let p = edge_incidence_representation(&g).unwrap();
        let a = representation_value(&g, &p).unwrap().value;
        let b = fractional_strong_domination(&g).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-6 * (1.0 + b));
    }
}
