//! Build the ball graphs by iterated quantum double suspension and list
//! their hereditary and saturated vertex sets.

use qball::graph::{
    ball_graph, double_suspension, hereditary_saturated_sets, point_graph, quotient_graph,
};

fn main() {
    let mut g = point_graph();
    for n in 1..=3 {
        g = double_suspension(&g);
        println!(
            "E_{n}: {} vertices, {} edges",
            g.vertex_count(),
            g.edge_count()
        );
    }

    let e2 = ball_graph(2).unwrap();
    println!("\nE_2 as canonical JSON:\n{}", e2.to_json());

    println!("hereditary and saturated subsets of E_2:");
    for set in hereditary_saturated_sets(&e2) {
        let names: Vec<&str> = set.iter().map(|&v| e2.vertex_name(v)).collect();
        println!("  {{{}}}", names.join(", "));
    }

    // Quotient by the saturated hereditary set {v0}: the compacts drop out
    // and the disc graph of one dimension lower remains.
    let v0 = e2.vertex_index("v0").unwrap();
    let q = quotient_graph(&e2, &[v0]).unwrap();
    println!(
        "\nE_2 / {{v0}}: {} vertices, {} edges",
        q.vertex_count(),
        q.edge_count()
    );
}
