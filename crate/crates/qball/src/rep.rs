//! Truncated path Hilbert spaces and the numeric side of the graph
//! algebra: Cuntz-Krieger generators, aggregate shifts `S_i`, weighted
//! shifts `z_i`, and the irreducible-representation catalogue.
//!
//! Truncation policy: applying an edge that would push a loop exponent
//! above the cutoff maps the basis vector to zero (compression). Every
//! identity of the algebra holds exactly on the interior subspace with
//! enough headroom, so all checks quantify over `interior(h)` vectors.

use crate::graph::{enumerate_paths, DirectedGraph, GraphError, LevelMap, LoopEncodedPath};
use crate::word::{NormalWord, WordError, WordExpr};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("q must satisfy 0 < q < 1, got {0}")]
    BadQ(f64),
    #[error("shift index {0} out of range 1..={1}")]
    ShiftIndex(usize, usize),
    #[error("epsilon representation index k={0} out of range 1..={1}")]
    EpsilonIndex(usize, usize),
    #[error("operator dimensions differ: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("word is over a different graph than the generator family")]
    GraphMismatch,
}

/// Deformation parameter, 0 < q < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam(f64);

impl QParam {
    pub fn new(q: f64) -> Result<Self, RepError> {
        if q > 0.0 && q < 1.0 {
            Ok(Self(q))
        } else {
            Err(RepError::BadQ(q))
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// lambda_k = sqrt(1 - q^{k+1}) - sqrt(1 - q^k), the series coefficients
/// of the weighted shift.
pub fn lambda_coeff(k: u32, q: QParam) -> f64 {
    let q = q.value();
    (1.0 - q.powi(k as i32 + 1)).sqrt() - (1.0 - q.powi(k as i32)).sqrt()
}

/// Ordered truncated basis of paths ending at a fixed vertex with all
/// loop exponents at most `cutoff`.
#[derive(Debug)]
pub struct TruncatedPathSpace {
    graph: Arc<DirectedGraph>,
    level_map: LevelMap,
    end_vertex: usize,
    cutoff: u32,
    basis: Vec<LoopEncodedPath>,
    index: HashMap<LoopEncodedPath, usize>,
}

impl TruncatedPathSpace {
    pub fn new(
        graph: Arc<DirectedGraph>,
        end_vertex: &str,
        cutoff: u32,
    ) -> Result<Arc<Self>, RepError> {
        let level_map = LevelMap::new(&graph)?;
        let end = graph
            .vertex_index(end_vertex)
            .ok_or_else(|| GraphError::UnknownVertex(end_vertex.to_string()))?;
        let basis = enumerate_paths(&graph, end_vertex, cutoff)?;
        let index = basis.iter().cloned().zip(0..).collect();
        Ok(Arc::new(Self { graph, level_map, end_vertex: end, cutoff, basis, index }))
    }

    pub fn for_ball(n: usize, cutoff: u32) -> Result<Arc<Self>, RepError> {
        let g = Arc::new(crate::graph::ball_graph(n)?);
        Self::new(g, "v0", cutoff)
    }

    pub fn graph(&self) -> &Arc<DirectedGraph> {
        &self.graph
    }

    pub fn level_map(&self) -> &LevelMap {
        &self.level_map
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn end_vertex(&self) -> usize {
        self.end_vertex
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LoopEncodedPath] {
        &self.basis
    }

    pub fn index_of(&self, p: &LoopEncodedPath) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis indices whose every loop exponent is at most `cutoff - h`.
    pub fn interior(&self, headroom: u32) -> Vec<usize> {
        assert!(headroom <= self.cutoff, "headroom exceeds cutoff");
        let cap = self.cutoff - headroom;
        (0..self.basis.len())
            .filter(|&i| self.basis[i].max_exponent() <= cap)
            .collect()
    }

    /// One path string per basis vector, in basis order.
    pub fn manifest(&self) -> Vec<String> {
        self.basis
            .iter()
            .map(|p| p.render(&self.graph, &self.level_map))
            .collect()
    }
}

/// Sparse complex matrix acting on a truncated basis, stored column-major
/// (column j = image of basis vector j). Immutable in practice: all
/// arithmetic returns new operators.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    cols: Vec<Vec<(usize, Complex64)>>,
}

const PRUNE: f64 = 1e-14;

impl SparseOperator {
    pub fn zero(dim: usize) -> Self {
        Self { dim, cols: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let cols = (0..dim).map(|j| vec![(j, Complex64::new(1.0, 0.0))]).collect();
        Self { dim, cols }
    }

    pub fn scalar(dim: usize, s: Complex64) -> Self {
        Self::identity(dim).scale(s)
    }

    pub fn from_triplets(dim: usize, entries: &[(usize, usize, Complex64)]) -> Self {
        let mut cols: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); dim];
        for &(r, c, v) in entries {
            cols[c].push((r, v));
        }
        let mut op = Self { dim, cols };
        op.normalize();
        op
    }

    fn normalize(&mut self) {
        for col in &mut self.cols {
            col.sort_by_key(|&(r, _)| r);
            let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|&(_, v)| v.norm() >= PRUNE);
            *col = merged;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> &[(usize, Complex64)] {
        &self.cols[j]
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.cols[c]
            .iter()
            .find(|&&(row, _)| row == r)
            .map(|&(_, v)| v)
            .unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (j, col) in other.cols.iter().enumerate() {
            out.cols[j].extend_from_slice(col);
        }
        out.normalize();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for col in &mut out.cols {
            for (_, v) in col.iter_mut() {
                *v *= s;
            }
        }
        out.normalize();
        out
    }

    /// Operator composition: (self · other) x = self(other(x)).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut cols = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut col: Vec<(usize, Complex64)> = Vec::new();
            for &(k, c) in &other.cols[j] {
                for &(r, a) in &self.cols[k] {
                    col.push((r, a * c));
                }
            }
            cols.push(col);
        }
        let mut out = Self { dim: self.dim, cols };
        out.normalize();
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut cols: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                cols[r].push((j, v.conj()));
            }
        }
        let mut out = Self { dim: self.dim, cols };
        out.normalize();
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..k {
            acc = self.mul(&acc);
        }
        acc
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim);
        let mut y = vec![Complex64::default(); self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            if x[j].norm_sqr() == 0.0 {
                continue;
            }
            for &(r, v) in col {
                y[r] += v * x[j];
            }
        }
        y
    }

    pub fn is_diagonal(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(j, col)| col.iter().all(|&(r, _)| r == j))
    }

    /// Sum of diagonal entries over the given basis indices.
    pub fn trace_on(&self, indices: &[usize]) -> Complex64 {
        indices.iter().map(|&j| self.entry(j, j)).sum()
    }

    /// Max over the given columns of the 2-norm of the column of
    /// `self - other`.
    pub fn column_residual(&self, other: &Self, columns: &[usize]) -> f64 {
        let diff = self.sub(other);
        columns
            .iter()
            .map(|&j| {
                diff.cols[j]
                    .iter()
                    .map(|&(_, v)| v.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Max column 2-norm of `self` over the given columns.
    pub fn column_norm(&self, columns: &[usize]) -> f64 {
        self.column_residual(&Self::zero(self.dim), columns)
    }

    /// Largest singular value via power iteration on self*·self,
    /// deterministic (fixed start vector).
    pub fn operator_norm(&self) -> f64 {
        if self.nnz() == 0 {
            return 0.0;
        }
        let gram = self.adjoint().mul(self);
        let mut x = vec![Complex64::new(1.0 / (self.dim as f64).sqrt(), 0.0); self.dim];
        let mut value = 0.0;
        for _ in 0..500 {
            let y = gram.apply(&x);
            let norm = y.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return 0.0;
            }
            let next = norm;
            x = y.into_iter().map(|v| v / next).collect();
            if (next - value).abs() <= 1e-15 * next.max(1.0) {
                value = next;
                break;
            }
            value = next;
        }
        value.sqrt()
    }

    /// Coordinate-list export: one `row col re im` line per stored entry,
    /// in column-major order.
    pub fn to_coordinate_list(&self) -> String {
        let mut out = String::new();
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                out.push_str(&format!("{} {} {:.17e} {:.17e}\n", r, j, v.re, v.im));
            }
        }
        out
    }
}

/// The Cuntz-Krieger family on a truncated path space: one projection per
/// vertex and one partial isometry per edge.
pub struct Generators {
    pub space: Arc<TruncatedPathSpace>,
    /// Vertex projections, indexed like the graph's vertices.
    pub p: Vec<SparseOperator>,
    /// Edge operators, indexed like the graph's edges.
    pub s: Vec<SparseOperator>,
}

/// pi(S_f) zeta_a = zeta_{fa} when r(f) = s(a) and the loop exponent stays
/// within the cutoff, else 0; pi(P_v) zeta_a = zeta_a iff s(a) = v.
pub fn build_generators(space: &Arc<TruncatedPathSpace>) -> Generators {
    let g = space.graph();
    let lm = space.level_map();
    let dim = space.dim();
    let one = Complex64::new(1.0, 0.0);

    let mut p = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let level = lm.level_of(v);
        let entries: Vec<_> = space
            .basis()
            .iter()
            .enumerate()
            .filter(|(_, path)| Some(path.start_level()) == level)
            .map(|(j, _)| (j, j, one))
            .collect();
        p.push(SparseOperator::from_triplets(dim, &entries));
    }

    let mut s = Vec::with_capacity(g.edge_count());
    for ei in 0..g.edge_count() {
        let e = g.edge(ei);
        let i = lm.level_of(e.src).unwrap();
        let j = lm.level_of(e.dst).unwrap();
        let mut entries = Vec::new();
        for (col, path) in space.basis().iter().enumerate() {
            if path.start_level() != j {
                continue;
            }
            let mut target = path.clone();
            if i == j {
                // Loop edge: raise the leading exponent (compressed at the cutoff).
                match target.chain.first_mut() {
                    Some((_, m)) if *m < space.cutoff() => *m += 1,
                    _ => continue,
                }
            } else {
                target.chain.insert(0, (i, 0));
            }
            if let Some(row) = space.index_of(&target) {
                entries.push((row, col, one));
            }
        }
        s.push(SparseOperator::from_triplets(dim, &entries));
    }

    Generators { space: Arc::clone(space), p, s }
}

impl Generators {
    /// The aggregate shift S_i = sum over j <= i of S_{ij}.
    pub fn aggregate_shift(&self, i: usize) -> Result<SparseOperator, RepError> {
        let lm = self.space.level_map();
        if i < lm.min_level() + 1 || i > lm.max_level() {
            return Err(RepError::ShiftIndex(i, lm.max_level()));
        }
        let mut acc = SparseOperator::zero(self.space.dim());
        for j in lm.min_level()..=i {
            let ei = lm.edge_between(i, j).expect("ball graph edge");
            acc = acc.add(&self.s[ei]);
        }
        Ok(acc)
    }

    /// The weighted shift z_i as the truncated series
    /// sum_{k=0}^{N+1} lambda_k S_i^{k+1} (S_i^*)^k. Terms beyond k = N+1
    /// annihilate the truncated space.
    pub fn weighted_shift(&self, i: usize, q: QParam) -> Result<SparseOperator, RepError> {
        let shift = self.aggregate_shift(i)?;
        let adj = shift.adjoint();
        let mut acc = SparseOperator::zero(self.space.dim());
        let mut raise = shift.clone(); // S_i^{k+1}
        let mut lower = SparseOperator::identity(self.space.dim()); // (S_i^*)^k
        for k in 0..=self.space.cutoff() + 1 {
            let term = raise.mul(&lower).scale(Complex64::new(lambda_coeff(k, q), 0.0));
            acc = acc.add(&term);
            raise = shift.mul(&raise);
            lower = lower.mul(&adj);
        }
        Ok(acc)
    }

    /// pi(S_mu S_nu^*) for a single normal word.
    fn evaluate_normal_word(&self, w: &NormalWord) -> SparseOperator {
        let dim = self.space.dim();
        let eval_path = |path: &crate::graph::Path| -> SparseOperator {
            if path.is_empty() {
                return self.p[path.source()].clone();
            }
            let mut acc = SparseOperator::identity(dim);
            for &e in path.edges() {
                acc = acc.mul(&self.s[e]);
            }
            acc
        };
        eval_path(w.mu()).mul(&eval_path(w.nu()).adjoint())
    }

    /// Linear extension of pi over a word expression.
    pub fn evaluate_word(&self, expr: &WordExpr) -> Result<SparseOperator, RepError> {
        if expr.graph().as_ref() != self.space.graph().as_ref() {
            return Err(RepError::GraphMismatch);
        }
        let mut acc = SparseOperator::zero(self.space.dim());
        for (w, &coeff) in expr.terms() {
            acc = acc.add(&self.evaluate_normal_word(w).scale(coeff));
        }
        Ok(acc)
    }
}

/// Tagged choice of irreducible representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RepSpec {
    /// The faithful path-space representation.
    Pi,
    /// Circle family at level k (1 <= k <= n-1); theta in radians.
    Epsilon { k: usize, theta: f64 },
    /// One-dimensional circle family; theta in radians.
    Sigma { theta: f64 },
}

impl RepSpec {
    pub fn label(&self) -> String {
        match self {
            RepSpec::Pi => "pi".to_string(),
            RepSpec::Epsilon { k, theta } => format!("epsilon(k={k},theta={theta})"),
            RepSpec::Sigma { theta } => format!("sigma(theta={theta})"),
        }
    }
}

/// One of the representation families, before choosing a circle parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepFamily {
    Pi,
    Epsilon { k: usize },
    Sigma,
}

impl RepFamily {
    pub fn at(&self, theta: f64) -> RepSpec {
        match *self {
            RepFamily::Pi => RepSpec::Pi,
            RepFamily::Epsilon { k } => RepSpec::Epsilon { k, theta },
            RepFamily::Sigma => RepSpec::Sigma { theta },
        }
    }
}

/// The catalogue for C(B_q^{2n}): the point family pi plus n circle
/// families (epsilon_{k,theta} for k = 1..n-1 and sigma_theta).
pub fn list_irreps(n: usize) -> Vec<RepFamily> {
    let mut out = vec![RepFamily::Pi];
    for k in 1..n {
        out.push(RepFamily::Epsilon { k });
    }
    out.push(RepFamily::Sigma);
    out
}

/// A built irreducible representation: the operators x_1..x_n plus the
/// corner projections Q_0..Q_n used by the q-deformed relations
/// (Q_n = identity; in pi, Q_i = P_0 + ... + P_i).
pub struct Irrep {
    pub spec: RepSpec,
    pub n: usize,
    pub dim: usize,
    /// x_1..x_n (index 0 holds x_1).
    pub x: Vec<SparseOperator>,
    /// Q_0..Q_n (index i holds Q_i).
    pub q_proj: Vec<SparseOperator>,
    /// Backing path space for pi and epsilon; none for sigma.
    pub space: Option<Arc<TruncatedPathSpace>>,
    /// Generator family on the backing space, when there is one.
    pub gens: Option<Generators>,
}

impl Irrep {
    /// Basis indices on which relation checks with the given headroom are
    /// quantified. The sigma representation is exact everywhere.
    pub fn interior(&self, headroom: u32) -> Vec<usize> {
        match &self.space {
            Some(space) => space.interior(headroom),
            None => (0..self.dim).collect(),
        }
    }
}

/// Build the operator assignment x_1..x_n for a representation of
/// C(B_q^{2n}) at loop cutoff N.
pub fn build_irrep(spec: RepSpec, n: usize, q: QParam, cutoff: u32) -> Result<Irrep, RepError> {
    match spec {
        RepSpec::Pi => {
            let space = TruncatedPathSpace::for_ball(n, cutoff)?;
            let gens = build_generators(&space);
            let mut x = Vec::with_capacity(n);
            for i in 1..=n {
                x.push(gens.weighted_shift(i, q)?);
            }
            let mut q_proj = Vec::with_capacity(n + 1);
            let mut acc = SparseOperator::zero(space.dim());
            for i in 0..=n {
                let v = space.graph().vertex_index(&format!("v{i}")).unwrap();
                acc = acc.add(&gens.p[v]);
                q_proj.push(acc.clone());
            }
            Ok(Irrep {
                spec,
                n,
                dim: space.dim(),
                x,
                q_proj,
                space: Some(Arc::clone(&space)),
                gens: Some(gens),
            })
        }
        RepSpec::Epsilon { k, theta } => {
            if k == 0 || k >= n {
                return Err(RepError::EpsilonIndex(k, n.saturating_sub(1)));
            }
            // Basis: paths ending at v_k with no e_{kk} loops. Under the
            // index shift v'_i = v_{i-k} this is the full path space of
            // E_{n-k}; x_i for i > k acts as z_{i-k} there.
            let inner = build_irrep(RepSpec::Pi, n - k, q, cutoff)?;
            let dim = inner.dim;
            let phase = Complex64::from_polar(1.0, theta);
            let sink = inner
                .space
                .as_ref()
                .unwrap()
                .index_of(&LoopEncodedPath::vertex_path(0))
                .expect("sink path present");
            let mut x = Vec::with_capacity(n);
            for _ in 1..k {
                x.push(SparseOperator::zero(dim));
            }
            x.push(SparseOperator::from_triplets(dim, &[(sink, sink, phase)]));
            x.extend(inner.x.iter().cloned());
            let mut q_proj = Vec::with_capacity(n + 1);
            for _ in 0..k {
                q_proj.push(SparseOperator::zero(dim));
            }
            // Q_i = P'_0 + ... + P'_{i-k} for i >= k.
            q_proj.extend(inner.q_proj.iter().cloned());
            Ok(Irrep { spec, n, dim, x, q_proj, space: inner.space, gens: inner.gens })
        }
        RepSpec::Sigma { theta } => {
            let dim = 1;
            let phase = Complex64::from_polar(1.0, theta);
            let mut x = vec![SparseOperator::zero(dim); n - 1];
            x.push(SparseOperator::scalar(dim, phase));
            let mut q_proj = vec![SparseOperator::zero(dim); n];
            q_proj.push(SparseOperator::identity(dim));
            Ok(Irrep { spec, n, dim, x, q_proj, space: None, gens: None })
        }
    }
}
