//! Relation checks. Every identity of the algebra becomes a named,
//! headroom-aware residual check: the residual is the max over interior
//! basis columns of the 2-norm of the (LHS - RHS) column, and the
//! headroom states how far from the cutoff the check quantifies.
//!
//! Strict operator inequalities A < B are certified by showing B - A is a
//! projection (idempotent and self-adjoint to tolerance) with trace at
//! least 1 on the interior.

use crate::graph::DirectedGraph;
use crate::polar::{phase_in_corner, CornerContext, PolarError};
use crate::rep::{
    build_generators, build_irrep, lambda_coeff, list_irreps, Generators, Irrep, QParam, RepError,
    RepSpec, SparseOperator, TruncatedPathSpace,
};
use crate::word::{letter_expr, reduce, GeneratorLetter, WordError, WordExpr};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Polar(#[from] PolarError),
    #[error("headroom {0} exceeds cutoff {1}; rerun with a larger cutoff")]
    HeadroomExceedsCutoff(u32, u32),
    #[error("representation lacks a generator family for this check")]
    NoGenerators,
}

/// Outcome of one relation check.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub id: String,
    pub headroom: u32,
    pub residual: f64,
    pub pass: bool,
}

impl RelationReport {
    fn from_residual(id: String, headroom: u32, residual: f64, tol: f64) -> Self {
        Self { id, headroom, residual, pass: residual <= tol }
    }
}

fn residual_check(
    id: String,
    headroom: u32,
    lhs: &SparseOperator,
    rhs: &SparseOperator,
    interior: &[usize],
    tol: f64,
) -> RelationReport {
    RelationReport::from_residual(id, headroom, lhs.column_residual(rhs, interior), tol)
}

/// Certify that `diff` is a nonzero projection on the interior: idempotent
/// and self-adjoint to tolerance, with trace at least 1.
fn strict_check(
    id: String,
    headroom: u32,
    diff: &SparseOperator,
    interior: &[usize],
    tol: f64,
) -> RelationReport {
    let idem = diff.mul(diff).column_residual(diff, interior);
    let herm = diff.adjoint().column_residual(diff, interior);
    let residual = idem.max(herm);
    let trace = diff.trace_on(interior).re;
    RelationReport { id, headroom, residual, pass: residual <= tol && trace >= 1.0 - tol }
}

/// The Cuntz-Krieger relations of the generator family: (G1) vertex
/// projections are mutually orthogonal, (G2) S_e^*S_e = P_{r(e)},
/// (G3) P_v = sum of S_eS_e^* over edges with source v, for v not a sink.
pub fn check_cuntz_krieger(gens: &Generators, tol: f64) -> Vec<RelationReport> {
    let g = gens.space.graph();
    let dim = gens.space.dim();
    let all: Vec<usize> = (0..dim).collect();
    let int1 = gens.space.interior(1);
    let zero = SparseOperator::zero(dim);
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        for w in v + 1..g.vertex_count() {
            out.push(residual_check(
                format!("ck/G1/{},{}", g.vertex_name(v), g.vertex_name(w)),
                0,
                &gens.p[v].mul(&gens.p[w]),
                &zero,
                &all,
                tol,
            ));
        }
    }
    for e in 0..g.edge_count() {
        let r = g.edge(e).dst;
        out.push(residual_check(
            format!("ck/G2/{}", g.edge_label(e)),
            1,
            &gens.s[e].adjoint().mul(&gens.s[e]),
            &gens.p[r],
            &int1,
            tol,
        ));
    }
    for v in 0..g.vertex_count() {
        if g.is_sink(v) {
            continue;
        }
        let mut sum = SparseOperator::zero(dim);
        for e in g.out_edges(v) {
            sum = sum.add(&gens.s[e].mul(&gens.s[e].adjoint()));
        }
        out.push(residual_check(
            format!("ck/G3/{}", g.vertex_name(v)),
            1,
            &gens.p[v],
            &sum,
            &int1,
            tol,
        ));
    }
    out
}

/// The defining relations of the ball algebra on any representation:
/// x_ix_j = 0 for i < j, x_i^*x_j = 0 for i != j, and
/// x_i^*x_i - q x_ix_i^* = (1-q) Q_i with the representation's own Q_i.
pub fn check_ball_relations(irrep: &Irrep, q: QParam, tol: f64) -> Vec<RelationReport> {
    let n = irrep.n;
    let label = irrep.spec.label();
    let interior = irrep.interior(2);
    let zero = SparseOperator::zero(irrep.dim);
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(residual_check(
                format!("ball/{label}/x{i}x{j}=0"),
                2,
                &irrep.x[i - 1].mul(&irrep.x[j - 1]),
                &zero,
                &interior,
                tol,
            ));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            out.push(residual_check(
                format!("ball/{label}/x{i}*x{j}=0"),
                2,
                &irrep.x[i - 1].adjoint().mul(&irrep.x[j - 1]),
                &zero,
                &interior,
                tol,
            ));
        }
    }
    let qv = Complex64::new(q.value(), 0.0);
    let one_minus_q = Complex64::new(1.0 - q.value(), 0.0);
    for i in 1..=n {
        let x = &irrep.x[i - 1];
        let lhs = x.adjoint().mul(x).sub(&x.mul(&x.adjoint()).scale(qv));
        let rhs = irrep.q_proj[i].scale(one_minus_q);
        out.push(residual_check(
            format!("ball/{label}/qrel{i}"),
            2,
            &lhs,
            &rhs,
            &interior,
            tol,
        ));
    }
    out
}

/// The phases alpha_i of the weighted shifts x_i = z_i in the path-space
/// representation, computed inside the corner Q_i.
pub fn phases(irrep: &Irrep) -> Result<Vec<SparseOperator>, VerifyError> {
    let space = irrep.space.as_ref().ok_or(VerifyError::NoGenerators)?;
    let int1 = space.interior(1);
    let mut out = Vec::with_capacity(irrep.n);
    for i in 1..=irrep.n {
        let corner = irrep.q_proj[i].clone();
        let required: Vec<usize> = int1
            .iter()
            .copied()
            .filter(|&j| corner.entry(j, j).re > 0.5)
            .collect();
        let ctx = CornerContext::new(corner, required)?;
        out.push(phase_in_corner(&irrep.x[i - 1], &ctx)?);
    }
    Ok(out)
}

/// The projection lemma for R_i = alpha_i alpha_i^* and the corner
/// projections Q_i: the telescoping identities, mutual orthogonality, and
/// the strict inclusions R_i < Q_j for i <= j.
pub fn check_projection_lemma(irrep: &Irrep, tol: f64) -> Result<Vec<RelationReport>, VerifyError> {
    let n = irrep.n;
    let alphas = phases(irrep)?;
    let r: Vec<SparseOperator> = alphas.iter().map(|a| a.mul(&a.adjoint())).collect();
    let q = &irrep.q_proj;
    let interior = irrep.interior(2);
    let dim = irrep.dim;
    let zero = SparseOperator::zero(dim);
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(residual_check(
            format!("lemma/Q{}=Q{}-R{}", i - 1, i, i),
            2,
            &q[i - 1],
            &q[i].sub(&r[i - 1]),
            &interior,
            tol,
        ));
    }
    for i in 2..=n {
        let mut sum = SparseOperator::identity(dim);
        for j in i..=n {
            sum = sum.sub(&r[j - 1]);
        }
        out.push(residual_check(
            format!("lemma/Q{}=1-sumR{}..R{}", i - 1, i, n),
            2,
            &q[i - 1],
            &sum,
            &interior,
            tol,
        ));
    }
    for i in 1..=n {
        for j in i..=n {
            out.push(strict_check(
                format!("lemma/R{i}<Q{j}"),
                2,
                &q[j].sub(&r[i - 1]),
                &interior,
                tol,
            ));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            out.push(residual_check(
                format!("lemma/R{i}R{j}=0"),
                2,
                &r[i - 1].mul(&r[j - 1]),
                &zero,
                &interior,
                tol,
            ));
        }
    }
    for i in 0..n {
        for j in i + 1..=n {
            out.push(residual_check(
                format!("lemma/Q{i}R{j}=0"),
                2,
                &q[i].mul(&r[j - 1]),
                &zero,
                &interior,
                tol,
            ));
        }
    }
    Ok(out)
}

/// The universal T-relations satisfied by the aggregate shifts S_1..S_n:
/// T_iT_j = 0 and T_i^*T_j = 0 off the diagonal, T_n is an isometry, the
/// descending recursion T_{i-1}^*T_{i-1} = T_i^*T_i - T_iT_i^*, and the
/// strict inequality T_1T_1^* < T_1^*T_1 (Coburn's proper isometry when
/// n = 1).
pub fn check_universal_relations(
    irrep: &Irrep,
    tol: f64,
) -> Result<Vec<RelationReport>, VerifyError> {
    let n = irrep.n;
    let gens = irrep.gens.as_ref().ok_or(VerifyError::NoGenerators)?;
    let mut t = Vec::with_capacity(n);
    for i in 1..=n {
        t.push(gens.aggregate_shift(i)?);
    }
    let interior = irrep.interior(2);
    let dim = irrep.dim;
    let zero = SparseOperator::zero(dim);
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(residual_check(
                format!("universal/T{i}T{j}=0"),
                2,
                &t[i - 1].mul(&t[j - 1]),
                &zero,
                &interior,
                tol,
            ));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            out.push(residual_check(
                format!("universal/T{i}*T{j}=0"),
                2,
                &t[i - 1].adjoint().mul(&t[j - 1]),
                &zero,
                &interior,
                tol,
            ));
        }
    }
    out.push(residual_check(
        format!("universal/T{n}*T{n}=1"),
        2,
        &t[n - 1].adjoint().mul(&t[n - 1]),
        &SparseOperator::identity(dim),
        &interior,
        tol,
    ));
    for i in 2..=n {
        let rhs = t[i - 1]
            .adjoint()
            .mul(&t[i - 1])
            .sub(&t[i - 1].mul(&t[i - 1].adjoint()));
        out.push(residual_check(
            format!("universal/T{}*T{}=T{i}*T{i}-T{i}T{i}*", i - 1, i - 1),
            2,
            &t[i - 2].adjoint().mul(&t[i - 2]),
            &rhs,
            &interior,
            tol,
        ));
    }
    out.push(strict_check(
        "universal/T1T1*<T1*T1".to_string(),
        2,
        &t[0].adjoint().mul(&t[0]).sub(&t[0].mul(&t[0].adjoint())),
        &interior,
        tol,
    ));
    Ok(out)
}

/// Recovery of the Cuntz-Krieger family from the aggregate shifts and the
/// round trip through the phases: S_i^*S_i = P_0+...+P_i, S_iS_i^* = P_i,
/// P_0 = S_1^*S_1 - S_1S_1^*, S_{ij} = S_iP_j; phase(z_i) = S_i; and the
/// phi-images alpha_i alpha_j alpha_j^* (j >= 1) and
/// alpha_i(alpha_1^*alpha_1 - alpha_1alpha_1^*) reproduce the edge
/// operators.
pub fn check_generator_recovery(
    irrep: &Irrep,
    tol: f64,
) -> Result<Vec<RelationReport>, VerifyError> {
    let n = irrep.n;
    let gens = irrep.gens.as_ref().ok_or(VerifyError::NoGenerators)?;
    let space = irrep.space.as_ref().ok_or(VerifyError::NoGenerators)?;
    let g = space.graph();
    let lm = space.level_map();
    let mut t = Vec::with_capacity(n);
    for i in 1..=n {
        t.push(gens.aggregate_shift(i)?);
    }
    let int1 = space.interior(1);
    let int2 = space.interior(2);
    let vertex = |i: usize| g.vertex_index(&format!("v{i}")).unwrap();
    let mut out = Vec::new();
    for i in 1..=n {
        let mut sum = SparseOperator::zero(irrep.dim);
        for j in 0..=i {
            sum = sum.add(&gens.p[vertex(j)]);
        }
        out.push(residual_check(
            format!("recovery/S{i}*S{i}=P0..P{i}"),
            1,
            &t[i - 1].adjoint().mul(&t[i - 1]),
            &sum,
            &int1,
            tol,
        ));
        out.push(residual_check(
            format!("recovery/S{i}S{i}*=P{i}"),
            1,
            &t[i - 1].mul(&t[i - 1].adjoint()),
            &gens.p[vertex(i)],
            &int1,
            tol,
        ));
    }
    out.push(residual_check(
        "recovery/P0=S1*S1-S1S1*".to_string(),
        1,
        &gens.p[vertex(0)],
        &t[0].adjoint().mul(&t[0]).sub(&t[0].mul(&t[0].adjoint())),
        &int1,
        tol,
    ));
    for i in 1..=n {
        for j in 0..=i {
            let e = lm.edge_between(i, j).unwrap();
            out.push(residual_check(
                format!("recovery/S{i}{j}=S{i}P{j}"),
                1,
                &gens.s[e],
                &t[i - 1].mul(&gens.p[vertex(j)]),
                &int1,
                tol,
            ));
        }
    }
    let alphas = phases(irrep)?;
    for i in 1..=n {
        out.push(residual_check(
            format!("recovery/phase(z{i})=S{i}"),
            1,
            &alphas[i - 1],
            &t[i - 1],
            &int1,
            tol,
        ));
    }
    // phi-image round trip: substitute alpha_i for the abstract phases.
    let p0_image = alphas[0]
        .adjoint()
        .mul(&alphas[0])
        .sub(&alphas[0].mul(&alphas[0].adjoint()));
    out.push(residual_check(
        "recovery/phi(P0)".to_string(),
        2,
        &gens.p[vertex(0)],
        &p0_image,
        &int2,
        tol,
    ));
    for i in 1..=n {
        out.push(residual_check(
            format!("recovery/phi(P{i})"),
            2,
            &gens.p[vertex(i)],
            &alphas[i - 1].mul(&alphas[i - 1].adjoint()),
            &int2,
            tol,
        ));
        for j in 0..=i {
            let e = lm.edge_between(i, j).unwrap();
            let image = if j == 0 {
                alphas[i - 1].mul(&p0_image)
            } else {
                alphas[i - 1].mul(&alphas[j - 1].mul(&alphas[j - 1].adjoint()))
            };
            out.push(residual_check(
                format!("recovery/phi(S{i}{j})"),
                2,
                &gens.s[e],
                &image,
                &int2,
                tol,
            ));
        }
    }
    Ok(out)
}

/// Norm bound on a block of the weighted-shift series: the largest
/// singular value of sum_{k=m+1}^{n} lambda_k S^{k+1}(S^*)^k on the
/// one-loop truncated space is at most
/// sqrt(1-q^{n+1}) - sqrt(1-q^{m+1}).
pub fn check_partial_sum_bound(
    q: QParam,
    m: u32,
    n_terms: u32,
    cutoff: u32,
    tol: f64,
) -> Result<RelationReport, VerifyError> {
    assert!(m <= n_terms);
    let space = TruncatedPathSpace::for_ball(1, cutoff)?;
    let gens = build_generators(&space);
    let shift = gens.aggregate_shift(1)?;
    let adj = shift.adjoint();
    let mut acc = SparseOperator::zero(space.dim());
    for k in m + 1..=n_terms {
        let term = shift
            .pow(k + 1)
            .mul(&adj.pow(k))
            .scale(Complex64::new(lambda_coeff(k, q), 0.0));
        acc = acc.add(&term);
    }
    let norm = acc.operator_norm();
    let qv = q.value();
    let bound = (1.0 - qv.powi(n_terms as i32 + 1)).sqrt() - (1.0 - qv.powi(m as i32 + 1)).sqrt();
    let residual = (norm - bound).max(0.0);
    Ok(RelationReport::from_residual(
        format!("bound/m={m},n={n_terms}"),
        0,
        residual,
        tol,
    ))
}

/// Matrix-unit law for the words S_alpha S_beta^* over paths ending at the
/// sink: products satisfy u_{ab} u_{cd} = delta_{bc} u_{ad}. All pairs are
/// checked against elementary matrices; the four-index product law is
/// checked exhaustively on small bases and on a seeded sample otherwise.
pub fn check_matrix_units(n: usize, cutoff: u32, tol: f64) -> Result<RelationReport, VerifyError> {
    let space = TruncatedPathSpace::for_ball(n, cutoff)?;
    let gens = build_generators(&space);
    let g = space.graph();
    let lm = space.level_map();
    let dim = space.dim();
    let all: Vec<usize> = (0..dim).collect();
    let one = Complex64::new(1.0, 0.0);
    let path_op = |idx: usize| -> SparseOperator {
        let p = space.basis()[idx].to_path(g, lm).unwrap();
        if p.is_empty() {
            return gens.p[p.source()].clone();
        }
        let mut acc = SparseOperator::identity(dim);
        for &e in p.edges() {
            acc = acc.mul(&gens.s[e]);
        }
        acc
    };
    let unit = |a: usize, b: usize| -> SparseOperator { path_op(a).mul(&path_op(b).adjoint()) };
    let units: Vec<Vec<SparseOperator>> = (0..dim)
        .map(|a| (0..dim).map(|b| unit(a, b)).collect())
        .collect();
    let mut residual: f64 = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            let elementary = SparseOperator::from_triplets(dim, &[(a, b, one)]);
            residual = residual.max(units[a][b].column_residual(&elementary, &all));
            residual =
                residual.max(units[a][b].adjoint().column_residual(&units[b][a], &all));
        }
    }
    let check_quad = |a: usize, b: usize, c: usize, d: usize, residual: &mut f64| {
        let prod = units[a][b].mul(&units[c][d]);
        let expect = if b == c {
            units[a][d].clone()
        } else {
            SparseOperator::zero(dim)
        };
        *residual = residual.max(prod.column_residual(&expect, &all));
    };
    if dim <= 16 {
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    for d in 0..dim {
                        check_quad(a, b, c, d, &mut residual);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..2000 {
            let (a, b) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
            let (c, d) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
            check_quad(a, b, c, d, &mut residual);
            check_quad(a, b, b, d, &mut residual);
        }
    }
    Ok(RelationReport::from_residual(
        format!("matrix-units/n={n},N={cutoff}"),
        0,
        residual,
        tol,
    ))
}

/// Evaluate two word expressions under the path-space representation and
/// report the interior residual; the numeric representation is the
/// equality oracle for the symbolic engine.
pub fn symbolic_numeric_crosscheck(
    a: &WordExpr,
    b: &WordExpr,
    gens: &Generators,
    headroom: u32,
    tol: f64,
    id: String,
) -> Result<RelationReport, VerifyError> {
    if headroom > gens.space.cutoff() {
        return Err(VerifyError::HeadroomExceedsCutoff(headroom, gens.space.cutoff()));
    }
    let lhs = gens.evaluate_word(a)?;
    let rhs = gens.evaluate_word(b)?;
    let interior = gens.space.interior(headroom);
    Ok(residual_check(id, headroom, &lhs, &rhs, &interior, tol))
}

/// Seeded random letter sequences over the generators of the graph.
pub fn random_letters(
    g: &DirectedGraph,
    rng: &mut ChaCha8Rng,
    max_len: usize,
) -> Vec<GeneratorLetter> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => GeneratorLetter::Edge(rng.gen_range(0..g.edge_count())),
            1 => GeneratorLetter::EdgeStar(rng.gen_range(0..g.edge_count())),
            _ => GeneratorLetter::Vertex(rng.gen_range(0..g.vertex_count())),
        })
        .collect()
}

/// Randomized validation of the symbolic engine: reduce each word and the
/// concatenation of each consecutive pair, and compare everything against
/// direct numeric products of the generator matrices.
pub fn check_random_words(
    gens: &Generators,
    seed: u64,
    count: usize,
    max_len: usize,
    tol: f64,
) -> Result<Vec<RelationReport>, VerifyError> {
    let g = gens.space.graph();
    let headroom = max_len as u32;
    if headroom > gens.space.cutoff() {
        return Err(VerifyError::HeadroomExceedsCutoff(headroom, gens.space.cutoff()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let interior = gens.space.interior(headroom);
    let numeric = |letters: &[GeneratorLetter]| -> SparseOperator {
        let mut acc = SparseOperator::identity(gens.space.dim());
        for &l in letters {
            let m = match l {
                GeneratorLetter::Edge(e) => gens.s[e].clone(),
                GeneratorLetter::EdgeStar(e) => gens.s[e].adjoint(),
                GeneratorLetter::Vertex(v) => gens.p[v].clone(),
                GeneratorLetter::Unit => SparseOperator::identity(gens.space.dim()),
            };
            acc = acc.mul(&m);
        }
        acc
    };
    let mut out = Vec::new();
    let mut prev: Option<(Vec<GeneratorLetter>, WordExpr)> = None;
    for idx in 0..count {
        let letters = random_letters(g, &mut rng, max_len / 2);
        let reduced = reduce(g, &letters);
        let direct = numeric(&letters);
        let symbolic = gens.evaluate_word(&reduced)?;
        out.push(residual_check(
            format!("crosscheck/word{idx}"),
            headroom,
            &symbolic,
            &direct,
            &interior,
            tol,
        ));
        if let Some((prev_letters, prev_reduced)) = prev.take() {
            // Product of reduced forms vs reduction of the concatenation.
            let product = prev_reduced.multiply(&reduced)?;
            let concat: Vec<GeneratorLetter> =
                prev_letters.iter().chain(letters.iter()).copied().collect();
            let whole = reduce(g, &concat);
            out.push(symbolic_numeric_crosscheck(
                &product,
                &whole,
                gens,
                headroom,
                tol,
                format!("crosscheck/pair{idx}"),
            )?);
        }
        prev = Some((letters, reduced));
    }
    Ok(out)
}

/// The defining relations are gauge invariant: applying the circle action
/// to each Cuntz-Krieger relation leaves it numerically satisfied.
pub fn check_gauge_invariance(
    gens: &Generators,
    angle: f64,
    tol: f64,
) -> Result<Vec<RelationReport>, VerifyError> {
    let g = gens.space.graph();
    let zero = SparseOperator::zero(gens.space.dim());
    let int1 = gens.space.interior(1);
    let mut out = Vec::new();
    for e in 0..g.edge_count() {
        let se = letter_expr(g, GeneratorLetter::Edge(e));
        let rel = se
            .adjoint()
            .multiply(&se)?
            .sub(&WordExpr::projection(Arc::clone(g), g.edge(e).dst))?;
        let gauged = rel.gauge(angle);
        out.push(residual_check(
            format!("crosscheck/gauge/G2/{}", g.edge_label(e)),
            1,
            &gens.evaluate_word(&gauged)?,
            &zero,
            &int1,
            tol,
        ));
    }
    for v in 0..g.vertex_count() {
        if g.is_sink(v) {
            continue;
        }
        let mut rel = WordExpr::projection(Arc::clone(g), v);
        for e in g.out_edges(v) {
            let se = letter_expr(g, GeneratorLetter::Edge(e));
            rel = rel.sub(&se.multiply(&se.adjoint())?)?;
        }
        let gauged = rel.gauge(angle);
        out.push(residual_check(
            format!("crosscheck/gauge/G3/{}", g.vertex_name(v)),
            1,
            &gens.evaluate_word(&gauged)?,
            &zero,
            &int1,
            tol,
        ));
    }
    Ok(out)
}

/// Suite identifiers accepted by the report runner, in run order.
pub const SUITES: &[&str] = &[
    "ck",
    "ball",
    "lemma",
    "universal",
    "recovery",
    "bound",
    "matrix-units",
    "crosscheck",
];

/// Angle at which the circle representation families are instantiated in
/// reports.
pub const REPORT_THETA: f64 = 1.0;

/// Run the selected suites over a parameter grid and aggregate a
/// machine-readable report. Deterministic: identical inputs produce an
/// identical value.
pub fn run_report(
    n: usize,
    qs: &[f64],
    cutoff: u32,
    tol: f64,
    seed: u64,
    suites: &[String],
) -> Result<(serde_json::Value, bool), VerifyError> {
    let selected: Vec<&str> = SUITES
        .iter()
        .copied()
        .filter(|s| suites.is_empty() || suites.iter().any(|x| x == s))
        .collect();
    let mut checks: Vec<serde_json::Value> = Vec::new();
    let mut all_pass = true;
    let push = |reports: Vec<RelationReport>,
                    q: f64,
                    checks: &mut Vec<serde_json::Value>,
                    all_pass: &mut bool| {
        for r in reports {
            *all_pass &= r.pass;
            let mut v = serde_json::to_value(&r).unwrap();
            v["id"] = serde_json::Value::String(format!("q={q}/{}", r.id));
            checks.push(v);
        }
    };
    for &qf in qs {
        let q = QParam::new(qf)?;
        let pi = build_irrep(RepSpec::Pi, n, q, cutoff)?;
        for suite in &selected {
            match *suite {
                "ck" => {
                    let gens = pi.gens.as_ref().ok_or(VerifyError::NoGenerators)?;
                    push(check_cuntz_krieger(gens, tol), qf, &mut checks, &mut all_pass);
                }
                "ball" => {
                    for family in list_irreps(n) {
                        let spec = family.at(REPORT_THETA);
                        let irrep = build_irrep(spec, n, q, cutoff)?;
                        push(check_ball_relations(&irrep, q, tol), qf, &mut checks, &mut all_pass);
                    }
                }
                "lemma" => {
                    push(check_projection_lemma(&pi, tol)?, qf, &mut checks, &mut all_pass);
                }
                "universal" => {
                    push(check_universal_relations(&pi, tol)?, qf, &mut checks, &mut all_pass);
                }
                "recovery" => {
                    push(check_generator_recovery(&pi, tol)?, qf, &mut checks, &mut all_pass);
                }
                "bound" => {
                    let mut reports = Vec::new();
                    for nn in 1..=4u32 {
                        for m in 0..nn {
                            reports.push(check_partial_sum_bound(q, m, nn, cutoff.max(8), tol)?);
                        }
                    }
                    push(reports, qf, &mut checks, &mut all_pass);
                }
                "matrix-units" => {
                    let small_cutoff = if n <= 2 { 2 } else { 1 };
                    let report = check_matrix_units(n, small_cutoff, tol)?;
                    push(vec![report], qf, &mut checks, &mut all_pass);
                }
                "crosscheck" => {
                    let space = TruncatedPathSpace::for_ball(n, cutoff.max(10))?;
                    let gens = build_generators(&space);
                    push(
                        check_random_words(&gens, seed, 20, 8, tol)?,
                        qf,
                        &mut checks,
                        &mut all_pass,
                    );
                    push(
                        check_gauge_invariance(&gens, 0.37, tol)?,
                        qf,
                        &mut checks,
                        &mut all_pass,
                    );
                }
                _ => unreachable!(),
            }
        }
    }
    let report = serde_json::json!({
        "context": {
            "n": n,
            "q": qs,
            "cutoff": cutoff,
            "tol": tol,
            "seed": seed,
            "theta": REPORT_THETA,
            "suites": selected,
        },
        "checks": checks,
        "pass": all_pass,
    });
    Ok((report, all_pass))
}
