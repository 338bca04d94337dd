//! Reduce symbolic *-words over the graph generators to normal form.

use qball::graph::ball_graph;
use qball::word::{parse_expr, reduce, GeneratorLetter};
use std::sync::Arc;

fn main() {
    let g = Arc::new(ball_graph(2).unwrap());

    for text in [
        "S[e]* S[e]",
        "S[b] S[b]* S[e]",
        "S[a] S[a]* + S[c] S[c]* + S[d] S[d]*",
        "S[b]S[b]* - 0.5 P[v1]",
    ] {
        let expr = parse_expr(&g, text).unwrap();
        println!("{text:40} -> {}", expr.render());
    }

    // The same engine by letters instead of text.
    let e = g.edge_index("e").unwrap();
    let expr = reduce(&g, &[GeneratorLetter::EdgeStar(e), GeneratorLetter::Edge(e)]);
    println!("\nS_e^* S_e reduces to {}", expr.render());

    // The gauge action multiplies each word by exp(it(|mu|-|nu|)); words of
    // degree zero are fixed.
    let fixed = parse_expr(&g, "S[b]S[b]*").unwrap();
    println!(
        "gauge at t=0.7 fixes degree-0 words: {}",
        fixed.gauge(0.7).render()
    );
}
