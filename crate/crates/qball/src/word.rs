//! Symbolic *-algebra of a graph: normal-form words `S_mu S_nu^*` with
//! complex coefficients, reduction of generator words, Cuntz-Krieger
//! expansion, and the gauge action.
//!
//! Symbolic equality is not decided by rewriting alone (CK expansion has
//! no finite canonical form); the equality oracle is numeric evaluation
//! under the faithful path representation.

use crate::graph::{DirectedGraph, GraphError, Path};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Coefficients with magnitude below this are pruned after every
/// arithmetic step; coefficient values in this algebra are products of
/// exact factors, so pruning only removes exact-zero dust.
pub const COEFF_PRUNE: f64 = 1e-14;

#[derive(Debug, thiserror::Error)]
pub enum WordError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("normal word requires r(mu) = r(nu); got `{0}` vs `{1}`")]
    RangeMismatch(String, String),
    #[error("expressions live over different graphs")]
    GraphMismatch,
    #[error("(G3) does not apply: vertex `{0}` is a sink")]
    SinkExpansion(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A normal-form word `S_mu S_nu^*` with r(mu) = r(nu). The double-empty
/// case mu = nu = vertex v denotes the projection P_v.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalWord {
    mu: Path,
    nu: Path,
}

impl NormalWord {
    pub fn new(g: &DirectedGraph, mu: Path, nu: Path) -> Result<Self, WordError> {
        if mu.range(g) != nu.range(g) {
            return Err(WordError::RangeMismatch(mu.render(g), nu.render(g)));
        }
        Ok(Self { mu, nu })
    }

    pub fn projection(v: usize) -> Self {
        Self { mu: Path::empty(v), nu: Path::empty(v) }
    }

    pub fn mu(&self) -> &Path {
        &self.mu
    }

    pub fn nu(&self) -> &Path {
        &self.nu
    }

    /// Gauge degree |mu| - |nu|.
    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    pub fn adjoint(&self) -> Self {
        Self { mu: self.nu.clone(), nu: self.mu.clone() }
    }

    pub fn render(&self, g: &DirectedGraph) -> String {
        if self.mu.is_empty() && self.nu.is_empty() {
            return format!("P[{}]", g.vertex_name(self.mu.source()));
        }
        let mut out = String::new();
        for &e in self.mu.edges() {
            out.push_str(&format!("S[{}]", g.edge_label(e)));
        }
        if self.mu.is_empty() && !self.nu.is_empty() {
            // Keep the source vertex visible when only the starred half exists.
            out.push_str(&format!("P[{}]", g.vertex_name(self.mu.source())));
        }
        for &e in self.nu.edges().iter().rev() {
            out.push_str(&format!("S[{}]*", g.edge_label(e)));
        }
        out
    }
}

/// One generator letter of the free *-algebra on the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorLetter {
    Edge(usize),
    EdgeStar(usize),
    Vertex(usize),
    Unit,
}

/// Finite linear combination of normal words with complex coefficients.
#[derive(Debug, Clone)]
pub struct WordExpr {
    graph: Arc<DirectedGraph>,
    terms: BTreeMap<NormalWord, Complex64>,
}

impl WordExpr {
    pub fn zero(graph: Arc<DirectedGraph>) -> Self {
        Self { graph, terms: BTreeMap::new() }
    }

    /// The unit: sum of P_v over all vertices.
    pub fn unit(graph: Arc<DirectedGraph>) -> Self {
        let mut terms = BTreeMap::new();
        for v in 0..graph.vertex_count() {
            terms.insert(NormalWord::projection(v), Complex64::new(1.0, 0.0));
        }
        Self { graph, terms }
    }

    pub fn projection(graph: Arc<DirectedGraph>, v: usize) -> Self {
        Self::monomial(graph, NormalWord::projection(v), Complex64::new(1.0, 0.0))
    }

    pub fn monomial(graph: Arc<DirectedGraph>, w: NormalWord, coeff: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff.norm() >= COEFF_PRUNE {
            terms.insert(w, coeff);
        }
        Self { graph, terms }
    }

    /// Single edge letter as a normal word: S_e = S_e S_{r(e)}^*.
    pub fn edge(graph: Arc<DirectedGraph>, e: usize) -> Self {
        let mu = Path::from_edges(&graph, vec![e]).expect("single edge is a path");
        let nu = Path::empty(graph.edge(e).dst);
        let w = NormalWord::new(&graph, mu, nu).expect("ranges agree");
        Self::monomial(graph, w, Complex64::new(1.0, 0.0))
    }

    pub fn graph(&self) -> &Arc<DirectedGraph> {
        &self.graph
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalWord, &Complex64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, w: NormalWord, coeff: Complex64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                if coeff.norm() >= COEFF_PRUNE {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                let v = *e.get() + coeff;
                if v.norm() < COEFF_PRUNE {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, WordError> {
        self.check_graph(other)?;
        let mut out = self.clone();
        for (w, &c) in other.terms.iter() {
            out.insert(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, WordError> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero(Arc::clone(&self.graph));
        for (w, &c) in self.terms.iter() {
            let v = c * s;
            if v.norm() >= COEFF_PRUNE {
                out.terms.insert(w.clone(), v);
            }
        }
        out
    }

    fn check_graph(&self, other: &Self) -> Result<(), WordError> {
        if self.graph.as_ref() != other.graph.as_ref() {
            return Err(WordError::GraphMismatch);
        }
        Ok(())
    }

    /// Product of two normal words:
    /// (S_mu S_nu^*)(S_gamma S_delta^*) = S_mu S_delta^*       if gamma = nu,
    ///                                    S_mu S_{delta nu'}^* if nu = gamma nu',
    ///                                    S_{mu gamma'} S_delta^* if gamma = nu gamma',
    ///                                    0 otherwise.
    fn multiply_words(
        g: &DirectedGraph,
        a: &NormalWord,
        b: &NormalWord,
    ) -> Option<NormalWord> {
        let (nu, gamma) = (&a.nu, &b.mu);
        if nu == gamma {
            return Some(NormalWord { mu: a.mu.clone(), nu: b.nu.clone() });
        }
        if let Some(nu_rest) = nu.strip_prefix(g, gamma) {
            let new_nu = b.nu.concat(g, &nu_rest).ok()?;
            return Some(NormalWord { mu: a.mu.clone(), nu: new_nu });
        }
        if let Some(gamma_rest) = gamma.strip_prefix(g, nu) {
            let new_mu = a.mu.concat(g, &gamma_rest).ok()?;
            return Some(NormalWord { mu: new_mu, nu: b.nu.clone() });
        }
        None
    }

    /// Bilinear extension of the normal-word product.
    pub fn multiply(&self, other: &Self) -> Result<Self, WordError> {
        self.check_graph(other)?;
        let mut out = Self::zero(Arc::clone(&self.graph));
        for (a, &ca) in self.terms.iter() {
            for (b, &cb) in other.terms.iter() {
                if let Some(w) = Self::multiply_words(&self.graph, a, b) {
                    out.insert(w, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate-linear involution: (S_mu S_nu^*)^* = S_nu S_mu^*.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(Arc::clone(&self.graph));
        for (w, &c) in self.terms.iter() {
            out.insert(w.adjoint(), c.conj());
        }
        out
    }

    /// Gauge action: multiply the coefficient of each word by
    /// e^{i t (|mu| - |nu|)}.
    pub fn gauge(&self, angle: f64) -> Self {
        let mut out = Self::zero(Arc::clone(&self.graph));
        for (w, &c) in self.terms.iter() {
            let phase = Complex64::from_polar(1.0, angle * w.degree() as f64);
            out.insert(w.clone(), c * phase);
        }
        out
    }

    /// Cuntz-Krieger expansion at a non-sink vertex v, applied `depth`
    /// times: every word ending at v becomes
    /// sum over s(e) = v of S_{mu e} S_{nu e}^*.
    pub fn ck_expand(&self, v: usize, depth: u32) -> Result<Self, WordError> {
        let g = &self.graph;
        if g.is_sink(v) {
            return Err(WordError::SinkExpansion(g.vertex_name(v).to_string()));
        }
        let mut cur = self.clone();
        for _ in 0..depth {
            let mut next = Self::zero(Arc::clone(g));
            for (w, &c) in cur.terms.iter() {
                if w.mu.range(g) != v {
                    next.insert(w.clone(), c);
                    continue;
                }
                for ei in g.out_edges(v) {
                    let ext = Path::from_edges(g, vec![ei]).expect("edge path");
                    let mu = w.mu.concat(g, &ext).expect("s(e) = r(mu)");
                    let nu = w.nu.concat(g, &ext).expect("s(e) = r(nu)");
                    next.insert(NormalWord { mu, nu }, c);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Text rendering with a stable grammar, e.g. `S[b]S[e]* - 0.5 P[v0]`.
    /// The zero expression renders as `0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.im == 0.0 && c.re < 0.0 {
                ("-", Complex64::new(-c.re, 0.0))
            } else {
                ("+", *c)
            };
            if i == 0 {
                if sign == "-" {
                    out.push_str("-");
                }
            } else {
                out.push_str(&format!(" {} ", sign));
            }
            out.push_str(&render_coeff_word(mag, &w.render(&self.graph)));
        }
        out
    }
}

fn render_coeff_word(c: Complex64, word: &str) -> String {
    if c.im == 0.0 {
        if c.re == 1.0 {
            word.to_string()
        } else {
            format!("{} {}", c.re, word)
        }
    } else if c.re == 0.0 && c.im == 1.0 {
        format!("i {}", word)
    } else if c.re == 0.0 {
        format!("{}i {}", c.im, word)
    } else {
        format!("({}{}{}i) {}", c.re, if c.im >= 0.0 { "+" } else { "" }, c.im, word)
    }
}

/// Lift a letter to a normal-word expression: S_e = S_e S_{r(e)}^*,
/// S_e^* = (S_e)^*, P_v = S_v S_v^*, unit = sum of all P_v.
pub fn letter_expr(graph: &Arc<DirectedGraph>, letter: GeneratorLetter) -> WordExpr {
    match letter {
        GeneratorLetter::Edge(e) => WordExpr::edge(Arc::clone(graph), e),
        GeneratorLetter::EdgeStar(e) => WordExpr::edge(Arc::clone(graph), e).adjoint(),
        GeneratorLetter::Vertex(v) => WordExpr::projection(Arc::clone(graph), v),
        GeneratorLetter::Unit => WordExpr::unit(Arc::clone(graph)),
    }
}

/// Normal-form reduction of a generator word; the empty word reduces to
/// the unit.
pub fn reduce(graph: &Arc<DirectedGraph>, letters: &[GeneratorLetter]) -> WordExpr {
    let mut acc = WordExpr::unit(Arc::clone(graph));
    for &l in letters {
        acc = acc
            .multiply(&letter_expr(graph, l))
            .expect("same graph by construction");
    }
    acc
}

/// Parse a generator-word expression in the rendering grammar:
/// terms of `S[label]`, `S[label]*`, `P[vertex]` factors, joined by
/// `+`/`-`, with optional leading real coefficients.
pub fn parse_expr(graph: &Arc<DirectedGraph>, text: &str) -> Result<WordExpr, WordError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut acc = WordExpr::zero(Arc::clone(graph));

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        // Empty input: the unit element.
        return Ok(WordExpr::unit(Arc::clone(graph)));
    }

    let mut first = true;
    while pos < bytes.len() {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        let mut sign = 1.0;
        match bytes[pos] {
            b'+' => {
                pos += 1;
            }
            b'-' => {
                sign = -1.0;
                pos += 1;
            }
            _ if !first => {
                return Err(WordError::Parse { pos, msg: "expected `+` or `-`".into() });
            }
            _ => {}
        }
        first = false;
        skip_ws(&mut pos);
        // Optional numeric coefficient.
        let num_start = pos;
        while pos < bytes.len()
            && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.' )
        {
            pos += 1;
        }
        let coeff = if pos > num_start {
            let s = &text[num_start..pos];
            let v: f64 = s
                .parse()
                .map_err(|_| WordError::Parse { pos: num_start, msg: format!("bad number `{s}`") })?;
            sign * v
        } else {
            sign
        };
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'*' {
            // allow `2 * S[e]` style
            pos += 1;
            skip_ws(&mut pos);
        }
        // One or more letter factors.
        let mut letters = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] == b'+' || bytes[pos] == b'-' {
                break;
            }
            let kind = bytes[pos];
            if kind != b'S' && kind != b'P' {
                return Err(WordError::Parse { pos, msg: "expected `S[...]` or `P[...]`".into() });
            }
            pos += 1;
            if pos >= bytes.len() || bytes[pos] != b'[' {
                return Err(WordError::Parse { pos, msg: "expected `[`".into() });
            }
            pos += 1;
            let name_start = pos;
            while pos < bytes.len() && bytes[pos] != b']' {
                pos += 1;
            }
            if pos >= bytes.len() {
                return Err(WordError::Parse { pos, msg: "unterminated `[`".into() });
            }
            let name = &text[name_start..pos];
            pos += 1; // consume ]
            let starred = pos < bytes.len() && bytes[pos] == b'*';
            if starred {
                pos += 1;
            }
            let letter = if kind == b'S' {
                let e = graph.edge_index(name).ok_or_else(|| WordError::Parse {
                    pos: name_start,
                    msg: format!("unknown edge `{name}`"),
                })?;
                if starred {
                    GeneratorLetter::EdgeStar(e)
                } else {
                    GeneratorLetter::Edge(e)
                }
            } else {
                if starred {
                    return Err(WordError::Parse {
                        pos,
                        msg: "projections are self-adjoint; drop the `*`".into(),
                    });
                }
                let v = graph.vertex_index(name).ok_or_else(|| WordError::Parse {
                    pos: name_start,
                    msg: format!("unknown vertex `{name}`"),
                })?;
                GeneratorLetter::Vertex(v)
            };
            letters.push(letter);
        }
        if letters.is_empty() {
            return Err(WordError::Parse { pos, msg: "term has no factors".into() });
        }
        let term = reduce(graph, &letters).scale(Complex64::new(coeff, 0.0));
        acc = acc.add(&term)?;
    }
    Ok(acc)
}
