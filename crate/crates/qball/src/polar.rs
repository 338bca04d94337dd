//! Modulus and phase of truncated operators, including polar
//! decompositions restricted to a corner pAp with p a basis-diagonal
//! projection.
//!
//! The modulus |T| = (T^* T)^{1/2} has two routes: an entrywise square
//! root when T^* T is already diagonal in the path basis (true for every
//! weighted shift in this algebra), and a dense Hermitian
//! eigendecomposition otherwise. The fast path is cross-checked against
//! the general one in tests.

use crate::rep::SparseOperator;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum PolarError {
    #[error("corner projection is not diagonal 0/1 in the path basis")]
    NotDiagonalProjection,
    #[error("operator is not supported in the corner: T != PTP")]
    NotInCorner,
    #[error("not polar decomposable in corner: |T| singular at basis vector {0}")]
    SingularModulus(usize),
    #[error("negative eigenvalue {0} in claimed-positive operator")]
    NotPositive(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
}

/// A basis-diagonal corner: the projection P and the basis indices it
/// selects. `required` lists the selected indices on which inverses must
/// exist (the interior of the corner); outside it, singular directions
/// are compressed to zero.
#[derive(Debug, Clone)]
pub struct CornerContext {
    projection: SparseOperator,
    selected: Vec<usize>,
    required: Vec<usize>,
}

impl CornerContext {
    pub fn new(projection: SparseOperator, required: Vec<usize>) -> Result<Self, PolarError> {
        if !projection.is_diagonal() {
            return Err(PolarError::NotDiagonalProjection);
        }
        let mut selected = Vec::new();
        for j in 0..projection.dim() {
            let d = projection.entry(j, j);
            if (d - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
                selected.push(j);
            } else if d.norm() > 1e-12 {
                return Err(PolarError::NotDiagonalProjection);
            }
        }
        for &j in &required {
            if !selected.contains(&j) {
                return Err(PolarError::NotInCorner);
            }
        }
        Ok(Self { projection, selected, required })
    }

    /// The full space as a corner (unit projection); every index in
    /// `required` must be invertible.
    pub fn full(dim: usize, required: Vec<usize>) -> Self {
        Self {
            projection: SparseOperator::identity(dim),
            selected: (0..dim).collect(),
            required,
        }
    }

    pub fn projection(&self) -> &SparseOperator {
        &self.projection
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn contains(&self, t: &SparseOperator) -> bool {
        let p = &self.projection;
        p.mul(t).mul(p).column_residual(t, &(0..t.dim()).collect::<Vec<_>>()) < 1e-12
    }
}

fn to_dense(op: &SparseOperator) -> DMatrix<Complex64> {
    let n = op.dim();
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        for &(r, v) in op.column(j) {
            m[(r, j)] = v;
        }
    }
    m
}

fn from_dense(m: &DMatrix<Complex64>) -> SparseOperator {
    let mut entries = Vec::new();
    for j in 0..m.ncols() {
        for r in 0..m.nrows() {
            let v = m[(r, j)];
            if v.norm() >= 1e-14 {
                entries.push((r, j, v));
            }
        }
    }
    SparseOperator::from_triplets(m.nrows(), &entries)
}

/// Square root of a positive semidefinite operator by Hermitian
/// eigendecomposition. Small negative eigenvalues from roundoff are
/// clamped; genuinely negative spectrum is an error.
pub fn positive_sqrt(h: &SparseOperator) -> Result<SparseOperator, PolarError> {
    let dense = to_dense(h);
    let eig = SymmetricEigen::new(dense);
    let mut values = eig.eigenvalues.clone();
    for v in values.iter_mut() {
        if *v < -1e-10 {
            return Err(PolarError::NotPositive(*v));
        }
        *v = v.max(0.0).sqrt();
    }
    let q = &eig.eigenvectors;
    let sqrt = q * DMatrix::from_diagonal(&values.map(|v| Complex64::new(v, 0.0))) * q.adjoint();
    Ok(from_dense(&sqrt))
}

/// |T| = (T^* T)^{1/2}. Uses the entrywise square root when T^* T is
/// diagonal in the path basis, the eigendecomposition route otherwise.
pub fn modulus(t: &SparseOperator) -> Result<SparseOperator, PolarError> {
    let gram = t.adjoint().mul(t);
    if gram.is_diagonal() {
        let mut entries = Vec::new();
        for j in 0..gram.dim() {
            let d = gram.entry(j, j);
            if d.re < -1e-10 {
                return Err(PolarError::NotPositive(d.re));
            }
            let v = d.re.max(0.0).sqrt();
            if v >= 1e-14 {
                entries.push((j, j, Complex64::new(v, 0.0)));
            }
        }
        Ok(SparseOperator::from_triplets(gram.dim(), &entries))
    } else {
        positive_sqrt(&gram)
    }
}

/// Inverse of a positive operator A = PAP inside the corner: B with
/// AB = BA = P on the required subspace and B = PBP. Singular directions
/// outside `required` are compressed to zero; a singular required basis
/// vector is an error naming the offending index.
pub fn corner_inverse(
    a: &SparseOperator,
    ctx: &CornerContext,
) -> Result<SparseOperator, PolarError> {
    if !ctx.contains(a) {
        return Err(PolarError::NotInCorner);
    }
    if a.is_diagonal() {
        let mut entries = Vec::new();
        for &j in ctx.selected() {
            let d = a.entry(j, j);
            if d.norm() < 1e-12 {
                if ctx.required.contains(&j) {
                    return Err(PolarError::SingularModulus(j));
                }
                continue;
            }
            entries.push((j, j, d.inv()));
        }
        return Ok(SparseOperator::from_triplets(a.dim(), &entries));
    }
    // General positive A: eigendecompose the corner block and invert the
    // nonzero part of the spectrum.
    let sel = ctx.selected();
    let k = sel.len();
    let mut block = DMatrix::zeros(k, k);
    for (cj, &j) in sel.iter().enumerate() {
        for &(r, v) in a.column(j) {
            if let Some(ci) = sel.iter().position(|&x| x == r) {
                block[(ci, cj)] = v;
            }
        }
    }
    let eig = SymmetricEigen::new(block);
    let mut inv_vals = eig.eigenvalues.clone();
    for v in inv_vals.iter_mut() {
        *v = if v.abs() < 1e-12 { 0.0 } else { 1.0 / *v };
    }
    let q = &eig.eigenvectors;
    let inv_block =
        q * DMatrix::from_diagonal(&inv_vals.map(|v| Complex64::new(v, 0.0))) * q.adjoint();
    let mut entries = Vec::new();
    for (cj, &j) in sel.iter().enumerate() {
        for (ci, &i) in sel.iter().enumerate() {
            let v = inv_block[(ci, cj)];
            if v.norm() >= 1e-13 {
                entries.push((i, j, v));
            }
        }
    }
    let b = SparseOperator::from_triplets(a.dim(), &entries);
    // Verify invertibility on the required columns.
    let ab = a.mul(&b);
    for &j in &ctx.required {
        if (ab.entry(j, j) - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(PolarError::SingularModulus(j));
        }
    }
    Ok(b)
}

/// Phase of T inside the corner: U = T · (corner inverse of |T|), so that
/// T = U|T| and U^* U = P on the corner interior.
pub fn phase_in_corner(
    t: &SparseOperator,
    ctx: &CornerContext,
) -> Result<SparseOperator, PolarError> {
    if !ctx.contains(t) {
        return Err(PolarError::NotInCorner);
    }
    let m = modulus(t)?;
    let inv = corner_inverse(&m, ctx)?;
    Ok(t.mul(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{build_generators, QParam, TruncatedPathSpace};

    fn q(v: f64) -> QParam {
        QParam::new(v).unwrap()
    }

    #[test]
    fn modulus_of_weighted_shift_is_diagonal() {
        let space = TruncatedPathSpace::for_ball(2, 5).unwrap();
        let gens = build_generators(&space);
        let z1 = gens.weighted_shift(1, q(0.5)).unwrap();
        let m = modulus(&z1).unwrap();
        assert!(m.is_diagonal());
        // |z_1| zeta_w = sqrt(1-q) zeta_w
        let w = space
            .index_of(&crate::graph::LoopEncodedPath::vertex_path(0))
            .unwrap();
        assert!((m.entry(w, w).re - 0.5f64.sqrt()).abs() < 1e-14);
        // |z_1| zeta_{b^0 e} = sqrt(1 - q^2) zeta_{b^0 e}  (~0.8660254)
        let b0e = space
            .index_of(&crate::graph::LoopEncodedPath { base: 0, chain: vec![(1, 0)] })
            .unwrap();
        assert!((m.entry(b0e, b0e).re - 0.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn diagonal_and_eigen_routes_agree() {
        let space = TruncatedPathSpace::for_ball(2, 3).unwrap();
        let gens = build_generators(&space);
        for i in 1..=2usize {
            let z = gens.weighted_shift(i, q(0.3)).unwrap();
            let fast = modulus(&z).unwrap();
            let general = positive_sqrt(&z.adjoint().mul(&z)).unwrap();
            let all: Vec<usize> = (0..space.dim()).collect();
            assert!(fast.column_residual(&general, &all) < 1e-10);
        }
    }

    #[test]
    fn modulus_of_projection_is_projection() {
        let space = TruncatedPathSpace::for_ball(1, 4).unwrap();
        let gens = build_generators(&space);
        for v in 0..space.graph().vertex_count() {
            let m = modulus(&gens.p[v]).unwrap();
            assert_eq!(m, gens.p[v]);
        }
        // |S| for a partial isometry = its domain projection.
        let s = gens.aggregate_shift(1).unwrap();
        let m = modulus(&s).unwrap();
        let dom = s.adjoint().mul(&s);
        let all: Vec<usize> = (0..space.dim()).collect();
        assert!(m.column_residual(&dom, &all) < 1e-12);
    }

    #[test]
    fn phase_of_z_is_the_shift() {
        // n = 1: phase(z) = S on interior(1).
        let space = TruncatedPathSpace::for_ball(1, 6).unwrap();
        let gens = build_generators(&space);
        let z = gens.weighted_shift(1, q(0.5)).unwrap();
        let ctx = CornerContext::full(space.dim(), space.interior(1));
        let u = phase_in_corner(&z, &ctx).unwrap();
        let s = gens.aggregate_shift(1).unwrap();
        assert!(u.column_residual(&s, &space.interior(1)) < 1e-12);
        // Reconstruction: U |z| = z on interior(1).
        let m = modulus(&z).unwrap();
        assert!(u.mul(&m).column_residual(&z, &space.interior(1)) < 1e-12);
    }

    #[test]
    fn phase_of_z1_in_corner_e2() {
        let space = TruncatedPathSpace::for_ball(2, 6).unwrap();
        let gens = build_generators(&space);
        let g = space.graph();
        let corner = gens.p[g.vertex_index("v0").unwrap()]
            .add(&gens.p[g.vertex_index("v1").unwrap()]);
        let z1 = gens.weighted_shift(1, q(0.5)).unwrap();
        let interior = space.interior(1);
        // Required: interior vectors inside the corner.
        let required: Vec<usize> = interior
            .iter()
            .copied()
            .filter(|&j| corner.entry(j, j).re > 0.5)
            .collect();
        let ctx = CornerContext::new(corner, required).unwrap();
        let u = phase_in_corner(&z1, &ctx).unwrap();
        let s1 = gens.aggregate_shift(1).unwrap();
        assert!(u.column_residual(&s1, &interior) < 1e-12);
        // U^* U = P on interior.
        assert!(u
            .adjoint()
            .mul(&u)
            .column_residual(ctx.projection(), &interior)
            < 1e-12);
    }

    #[test]
    fn corner_inverse_diagonal_values() {
        let space = TruncatedPathSpace::for_ball(2, 5).unwrap();
        let gens = build_generators(&space);
        let g = space.graph();
        let corner = gens.p[g.vertex_index("v0").unwrap()]
            .add(&gens.p[g.vertex_index("v1").unwrap()]);
        let z1 = gens.weighted_shift(1, q(0.5)).unwrap();
        let m = modulus(&z1).unwrap();
        let required: Vec<usize> = space
            .interior(1)
            .into_iter()
            .filter(|&j| corner.entry(j, j).re > 0.5)
            .collect();
        let ctx = CornerContext::new(corner.clone(), required.clone()).unwrap();
        let inv = corner_inverse(&m, &ctx).unwrap();
        // Diagonal entries are 1/sqrt(1 - q^{m+2})-type values.
        let w = space
            .index_of(&crate::graph::LoopEncodedPath::vertex_path(0))
            .unwrap();
        assert!((inv.entry(w, w).re - 1.0 / 0.5f64.sqrt()).abs() < 1e-12);
        // A B = B A = P on the interior of the corner.
        let ab = m.mul(&inv);
        assert!(ab.column_residual(ctx.projection(), &required) < 1e-12);
        // corner_inverse(P, P) = P.
        let pctx = CornerContext::new(corner.clone(), required).unwrap();
        let pinv = corner_inverse(&corner, &pctx).unwrap();
        assert_eq!(pinv, corner);
    }

    #[test]
    fn phase_of_diagonal_positive_is_support_projection() {
        use num_complex::Complex64;
        let a = SparseOperator::from_triplets(
            3,
            &[
                (0, 0, Complex64::new(2.0, 0.0)),
                (1, 1, Complex64::new(0.5, 0.0)),
            ],
        );
        let ctx = CornerContext::full(3, vec![0, 1]);
        let u = phase_in_corner(&a, &ctx).unwrap();
        let support = SparseOperator::from_triplets(
            3,
            &[
                (0, 0, Complex64::new(1.0, 0.0)),
                (1, 1, Complex64::new(1.0, 0.0)),
            ],
        );
        assert!(u.column_residual(&support, &[0, 1, 2]) < 1e-12);
    }

    #[test]
    fn singular_required_direction_is_an_error() {
        use num_complex::Complex64;
        let a = SparseOperator::from_triplets(2, &[(0, 0, Complex64::new(1.0, 0.0))]);
        let ctx = CornerContext::full(2, vec![0, 1]);
        assert!(matches!(
            corner_inverse(&a, &ctx),
            Err(PolarError::SingularModulus(1))
        ));
    }
}
