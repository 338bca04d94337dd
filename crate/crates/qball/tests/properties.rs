//! Property-based invariants of the symbolic word algebra and the path
//! encodings, with the numeric path-space representation as the oracle.

use proptest::prelude::*;
use qball::graph::{ball_graph, DirectedGraph, LoopEncodedPath};
use qball::rep::{build_generators, TruncatedPathSpace};
use qball::word::{reduce, GeneratorLetter, WordExpr};
use std::sync::Arc;

fn e2() -> Arc<DirectedGraph> {
    Arc::new(ball_graph(2).unwrap())
}

fn letter(g: &DirectedGraph) -> impl Strategy<Value = GeneratorLetter> {
    let edges = g.edge_count();
    let vertices = g.vertex_count();
    prop_oneof![
        (0..edges).prop_map(GeneratorLetter::Edge),
        (0..edges).prop_map(GeneratorLetter::EdgeStar),
        (0..vertices).prop_map(GeneratorLetter::Vertex),
    ]
}

fn word(g: &DirectedGraph, max_len: usize) -> impl Strategy<Value = Vec<GeneratorLetter>> {
    prop::collection::vec(letter(g), 0..=max_len)
}

fn expr_eq(a: &WordExpr, b: &WordExpr) -> bool {
    a.sub(b).map(|d| d.is_zero()).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiply_is_associative(
        a in word(&e2(), 3),
        b in word(&e2(), 3),
        c in word(&e2(), 3),
    ) {
        let g = e2();
        let (ea, eb, ec) = (reduce(&g, &a), reduce(&g, &b), reduce(&g, &c));
        let left = ea.multiply(&eb).unwrap().multiply(&ec).unwrap();
        let right = ea.multiply(&eb.multiply(&ec).unwrap()).unwrap();
        prop_assert!(expr_eq(&left, &right));
    }

    #[test]
    fn adjoint_is_an_anti_homomorphism(a in word(&e2(), 4), b in word(&e2(), 4)) {
        let g = e2();
        let (ea, eb) = (reduce(&g, &a), reduce(&g, &b));
        let left = ea.multiply(&eb).unwrap().adjoint();
        let right = eb.adjoint().multiply(&ea.adjoint()).unwrap();
        prop_assert!(expr_eq(&left, &right));
        prop_assert!(expr_eq(&ea.adjoint().adjoint(), &ea));
    }

    #[test]
    fn gauge_is_a_star_homomorphism(
        a in word(&e2(), 4),
        b in word(&e2(), 4),
        t in 0.0..std::f64::consts::TAU,
    ) {
        let g = e2();
        let (ea, eb) = (reduce(&g, &a), reduce(&g, &b));
        let prod_then_gauge = ea.multiply(&eb).unwrap().gauge(t);
        let gauge_then_prod = ea.gauge(t).multiply(&eb.gauge(t)).unwrap();
        prop_assert!(expr_eq(&prod_then_gauge, &gauge_then_prod));
        prop_assert!(expr_eq(&ea.adjoint().gauge(t), &ea.gauge(t).adjoint()));
    }

    #[test]
    fn reduction_matches_numeric_products(a in word(&e2(), 5)) {
        let space = TruncatedPathSpace::for_ball(2, 7).unwrap();
        let gens = build_generators(&space);
        let g = space.graph();
        let reduced = reduce(g, &a);
        let symbolic = gens.evaluate_word(&reduced).unwrap();
        let mut direct = qball::rep::SparseOperator::identity(space.dim());
        for &l in &a {
            let m = match l {
                GeneratorLetter::Edge(e) => gens.s[e].clone(),
                GeneratorLetter::EdgeStar(e) => gens.s[e].adjoint(),
                GeneratorLetter::Vertex(v) => gens.p[v].clone(),
                GeneratorLetter::Unit => qball::rep::SparseOperator::identity(space.dim()),
            };
            direct = direct.mul(&m);
        }
        let interior = space.interior(a.len() as u32);
        prop_assert!(symbolic.column_residual(&direct, &interior) < 1e-12);
    }

    #[test]
    fn ck_expand_preserves_numeric_value(
        a in word(&e2(), 3),
        v in 1usize..=2,
    ) {
        let space = TruncatedPathSpace::for_ball(2, 7).unwrap();
        let gens = build_generators(&space);
        let g = space.graph();
        let reduced = reduce(g, &a);
        let vertex = g.vertex_index(&format!("v{v}")).unwrap();
        let expanded = reduced.ck_expand(vertex, 1).unwrap();
        let before = gens.evaluate_word(&reduced).unwrap();
        let after = gens.evaluate_word(&expanded).unwrap();
        let interior = space.interior(a.len() as u32 + 1);
        prop_assert!(after.column_residual(&before, &interior) < 1e-12);
    }

    #[test]
    fn loop_encoding_round_trips(
        base in 0usize..=2,
        include in prop::collection::vec(any::<bool>(), 2),
        exps in prop::collection::vec(0u32..=4, 2),
    ) {
        // A loop-encoded path is a strictly descending chain of
        // (level, exponent) blocks above its base level.
        let g = e2();
        let space = TruncatedPathSpace::new(Arc::clone(&g), "v0", 4).unwrap();
        let lm = space.level_map();
        let chain: Vec<(usize, u32)> = (base + 1..=lm.max_level())
            .rev()
            .filter(|&l| include[l - 1])
            .map(|l| (l, exps[l - 1]))
            .collect();
        let encoded = if chain.is_empty() {
            LoopEncodedPath::vertex_path(base)
        } else {
            LoopEncodedPath { base, chain }
        };
        let path = encoded.to_path(&g, lm).unwrap();
        let back = LoopEncodedPath::from_path(&g, lm, &path).unwrap();
        prop_assert_eq!(encoded, back);
    }
}
