//! The base case n = 1: the quantum disc. The weighted shift z acts as
//! z zeta_i = sqrt(1-q^{i+1}) zeta_{i+1} and satisfies
//! z^*z - q zz^* = (1-q) 1.

use num_complex::Complex64;
use qball::rep::{build_generators, QParam, SparseOperator, TruncatedPathSpace};

fn main() {
    let q = QParam::new(0.5).unwrap();
    let cutoff = 8;
    let space = TruncatedPathSpace::for_ball(1, cutoff).unwrap();
    let gens = build_generators(&space);
    let z = gens.weighted_shift(1, q).unwrap();

    println!("z on the first basis vectors (q = {}):", q.value());
    for (i, line) in space.manifest().iter().enumerate().take(5) {
        let col = z.column(i);
        let amp = col.first().map(|&(_, v)| v.re).unwrap_or(0.0);
        let expect = (1.0 - q.value().powi(i as i32 + 1)).sqrt();
        println!("  z zeta_{{{line}}}: amplitude {amp:.12} (sqrt(1-q^{}) = {expect:.12})", i + 1);
    }

    let qv = Complex64::new(q.value(), 0.0);
    let lhs = z.adjoint().mul(&z).sub(&z.mul(&z.adjoint()).scale(qv));
    let rhs = SparseOperator::scalar(space.dim(), Complex64::new(1.0 - q.value(), 0.0));
    let residual = lhs.column_residual(&rhs, &space.interior(2));
    println!("\ndisc relation residual on interior(2): {residual:e}");
}
