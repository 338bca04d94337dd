//! Polar decomposition of the weighted shifts: the phase of z_i inside
//! its corner is the aggregate shift S_i.

use qball::polar::{modulus, phase_in_corner, CornerContext};
use qball::rep::{build_generators, QParam, TruncatedPathSpace};

fn main() {
    let q = QParam::new(0.5).unwrap();
    let space = TruncatedPathSpace::for_ball(2, 6).unwrap();
    let gens = build_generators(&space);
    let interior = space.interior(1);

    for i in 1..=2usize {
        let z = gens.weighted_shift(i, q).unwrap();
        let m = modulus(&z).unwrap();
        println!(
            "|z_{i}| is diagonal: {}, nonzero entries: {}",
            m.is_diagonal(),
            m.nnz()
        );

        // The corner is Q_i = P_0 + ... + P_i; |z_i| is invertible there
        // away from the truncation boundary.
        let g = space.graph();
        let mut corner = gens.p[g.vertex_index("v0").unwrap()].clone();
        for j in 1..=i {
            corner = corner.add(&gens.p[g.vertex_index(&format!("v{j}")).unwrap()]);
        }
        let required: Vec<usize> = interior
            .iter()
            .copied()
            .filter(|&j| corner.entry(j, j).re > 0.5)
            .collect();
        let ctx = CornerContext::new(corner, required).unwrap();
        let u = phase_in_corner(&z, &ctx).unwrap();
        let s = gens.aggregate_shift(i).unwrap();
        println!(
            "phase(z_{i}) vs S_{i} residual on interior(1): {:e}",
            u.column_residual(&s, &interior)
        );
    }
}
