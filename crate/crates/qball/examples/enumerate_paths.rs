//! Enumerate the canonical truncated path basis of E_2 and its loop
//! classes.

use qball::graph::{ball_graph, path_classes};
use qball::rep::TruncatedPathSpace;

fn main() {
    let g = ball_graph(2).unwrap();
    let classes = path_classes(&g).unwrap();
    println!("E_2 has {} path classes (2^n):", classes.len());

    let space = TruncatedPathSpace::for_ball(2, 2).unwrap();
    println!(
        "truncated basis at cutoff 2: {} vectors, in canonical order:",
        space.dim()
    );
    for line in space.manifest() {
        println!("  {line}");
    }

    let interior = space.interior(1);
    println!(
        "interior with headroom 1: {} of {} vectors",
        interior.len(),
        space.dim()
    );
}
