//! Build every irreducible representation family of C(B_q^6) and check
//! the defining relations in each.

use qball::rep::{build_irrep, list_irreps, QParam};
use qball::verify::check_ball_relations;

fn main() {
    let n = 3;
    let q = QParam::new(0.5).unwrap();
    for family in list_irreps(n) {
        let spec = family.at(1.2);
        let irrep = build_irrep(spec, n, q, 6).unwrap();
        let reports = check_ball_relations(&irrep, q, 1e-12);
        let worst = reports
            .iter()
            .map(|r| r.residual)
            .fold(0.0f64, f64::max);
        let all_pass = reports.iter().all(|r| r.pass);
        println!(
            "{:28} dim {:5}  {} relations, worst residual {:e}, pass: {}",
            spec.label(),
            irrep.dim,
            reports.len(),
            worst,
            all_pass
        );
    }
}
