//! Directed graphs, the quantum double suspension, hereditary/saturated
//! vertex sets, and path enumeration for the ball graphs `E_n`.
//!
//! `E_n` has vertices `v0..vn` (with `v0` the sink) and an edge `eij` from
//! `vi` to `vj` whenever `0 <= j <= i <= n` and `i != 0`. Basis vectors of
//! the path Hilbert space are indexed by paths ending at the sink, written
//! in loop-exponent form: a strictly descending vertex chain with a loop
//! count at each chain vertex.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("vertex `{0}` is not in the graph")]
    UnknownVertex(String),
    #[error("edge `{0}` is not in the graph")]
    UnknownEdge(String),
    #[error("vertex set {0:?} is not hereditary and saturated")]
    NotHereditarySaturated(Vec<String>),
    #[error("graph is not a ball graph (E_n-shaped): {0}")]
    NotBallShaped(String),
    #[error("n must be >= 1 (the 0-ball is `point_graph`)")]
    ZeroBall,
    #[error("invalid graph: {0}")]
    Invalid(String),
}

/// Edge record. `src` and `dst` index into the graph's vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    /// Optional display label (the paper letters a..e for E_1 and E_2).
    pub label: Option<String>,
}

/// A finite directed graph with ordered, uniquely named vertices and edges.
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    id: String,
    src: String,
    dst: String,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

impl DirectedGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Result<Self, GraphError> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(GraphError::Invalid(format!("duplicate vertex id `{v}`")));
            }
        }
        let index: BTreeMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut eseen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (id, src, dst) in edges {
            if !eseen.insert(id.clone()) {
                return Err(GraphError::Invalid(format!("duplicate edge id `{id}`")));
            }
            let s = *index.get(src.as_str()).ok_or_else(|| GraphError::UnknownVertex(src.clone()))?;
            let d = *index.get(dst.as_str()).ok_or_else(|| GraphError::UnknownVertex(dst.clone()))?;
            out.push(Edge { id, src: s, dst: d, label: None });
        }
        Ok(Self { vertices, edges: out })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    /// Display label of an edge: the paper letter when one is attached,
    /// otherwise the canonical id.
    pub fn edge_label(&self, i: usize) -> &str {
        self.edges[i].label.as_deref().unwrap_or(&self.edges[i].id)
    }

    pub fn edge_index(&self, id_or_label: &str) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| e.id == id_or_label || e.label.as_deref() == Some(id_or_label))
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.edges.iter().all(|e| e.src != v)
    }

    /// Edges with source `v`, in edge order.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.src == v)
            .map(|(i, _)| i)
    }

    /// Canonical JSON serialization. Field order is fixed:
    /// `{"vertices": [...], "edges": [{"id","src","dst"}, ...]}`.
    pub fn to_json(&self) -> String {
        let g = GraphJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.clone(),
                    src: self.vertices[e.src].clone(),
                    dst: self.vertices[e.dst].clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&g).expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let g: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Invalid(e.to_string()))?;
        Self::new(
            g.vertices,
            g.edges.into_iter().map(|e| (e.id, e.src, e.dst)).collect(),
        )
    }
}

/// The single-vertex graph: the seed of the suspension iteration.
pub fn point_graph() -> DirectedGraph {
    DirectedGraph::new(vec!["v0".into()], vec![]).unwrap()
}

fn vertex_level(name: &str) -> Option<usize> {
    name.strip_prefix('v').and_then(|s| s.parse().ok())
}

/// Quantum double suspension of a graph: one new vertex with an edge to
/// every vertex of the new graph, the new vertex included.
///
/// When the input vertices are canonically named `v0..vk`, the new vertex
/// becomes `v{k+1}` (indices count distance from the sink) and the new
/// edges are named `e{k+1}{j}`. Otherwise the new vertex is `w` and the
/// new edges `f_<dst>`.
pub fn double_suspension(g: &DirectedGraph) -> DirectedGraph {
    let levels: Option<Vec<usize>> =
        g.vertex_names().iter().map(|v| vertex_level(v)).collect();
    let canonical = levels
        .as_ref()
        .map(|ls| {
            let mut sorted = ls.clone();
            sorted.sort_unstable();
            sorted == (sorted.first().copied().unwrap_or(0)..).take(ls.len()).collect::<Vec<_>>()
        })
        .unwrap_or(false);

    let mut vertices = g.vertex_names().to_vec();
    let mut edges: Vec<(String, String, String)> = g
        .edges()
        .iter()
        .map(|e| {
            (
                e.id.clone(),
                g.vertex_name(e.src).to_string(),
                g.vertex_name(e.dst).to_string(),
            )
        })
        .collect();

    let new_name = if canonical {
        let top = levels.as_ref().unwrap().iter().max().copied().unwrap_or(0);
        format!("v{}", top + 1)
    } else {
        "w".to_string()
    };
    vertices.push(new_name.clone());
    // New edges: loop at the new vertex first, then edges to old vertices
    // in descending level order (matching the e_{ij}, j = i..0 layout).
    let mut targets: Vec<String> = vec![new_name.clone()];
    let mut old: Vec<String> = g.vertex_names().to_vec();
    if canonical {
        old.sort_by_key(|v| std::cmp::Reverse(vertex_level(v).unwrap()));
    }
    targets.extend(old);
    for t in &targets {
        let id = if canonical {
            let i = vertex_level(&new_name).unwrap();
            let j = vertex_level(t).unwrap();
            format!("e{i}{j}")
        } else {
            format!("f_{t}")
        };
        edges.push((id, new_name.clone(), t.clone()));
    }
    DirectedGraph::new(vertices, edges).unwrap()
}

/// The ball graph `E_n`: vertices `v0..vn`, edges `eij` for
/// `0 <= j <= i <= n`, `i != 0`. For n = 1 and n = 2 the edges also carry
/// their traditional letter labels (b, e and a, b, c, d, e).
pub fn ball_graph(n: usize) -> Result<DirectedGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::ZeroBall);
    }
    let vertices: Vec<String> = (0..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in (0..=i).rev() {
            edges.push((format!("e{i}{j}"), format!("v{i}"), format!("v{j}")));
        }
    }
    let mut g = DirectedGraph::new(vertices, edges)?;
    let letters: &[(&str, &str)] = match n {
        1 => &[("e11", "b"), ("e10", "e")],
        2 => &[("e22", "a"), ("e11", "b"), ("e21", "c"), ("e20", "d"), ("e10", "e")],
        _ => &[],
    };
    for (id, label) in letters {
        let i = g.edge_index(id).unwrap();
        g.edges[i].label = Some(label.to_string());
    }
    Ok(g)
}

pub fn is_hereditary(g: &DirectedGraph, h: &[usize]) -> bool {
    let member = |v: usize| h.contains(&v);
    // Closed under following edges out of members.
    let mut closed = true;
    let mut frontier: Vec<usize> = h.to_vec();
    let mut reach: Vec<bool> = vec![false; g.vertex_count()];
    for &v in h {
        reach[v] = true;
    }
    while let Some(v) = frontier.pop() {
        for ei in g.out_edges(v) {
            let d = g.edge(ei).dst;
            if !reach[d] {
                reach[d] = true;
                frontier.push(d);
            }
            if !member(d) {
                closed = false;
            }
        }
    }
    closed
}

pub fn is_saturated(g: &DirectedGraph, h: &[usize]) -> bool {
    (0..g.vertex_count()).all(|v| {
        if g.is_sink(v) || h.contains(&v) {
            return true;
        }
        // If every range of an edge out of v lands in H, v must be in H.
        !g.out_edges(v).all(|ei| h.contains(&g.edge(ei).dst))
    })
}

/// All simultaneously hereditary and saturated vertex subsets, by brute
/// force over the power set, in canonical (bitmask) order.
pub fn hereditary_saturated_sets(g: &DirectedGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    assert!(n <= 24, "brute-force enumeration is for desk-scale graphs");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let h: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if is_hereditary(g, &h) && is_saturated(g, &h) {
            out.push(h);
        }
    }
    out
}

/// The quotient graph `E \ H`: remove the vertices of `H` and every edge
/// with source or range in `H`.
pub fn quotient_graph(g: &DirectedGraph, h: &[usize]) -> Result<DirectedGraph, GraphError> {
    if !(is_hereditary(g, h) && is_saturated(g, h)) {
        let names = h.iter().map(|&v| g.vertex_name(v).to_string()).collect();
        return Err(GraphError::NotHereditarySaturated(names));
    }
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|v| !h.contains(v)).collect();
    let vertices: Vec<String> = keep.iter().map(|&v| g.vertex_name(v).to_string()).collect();
    let edges: Vec<(String, String, String)> = g
        .edges()
        .iter()
        .filter(|e| keep.contains(&e.src) && keep.contains(&e.dst))
        .map(|e| {
            (
                e.id.clone(),
                g.vertex_name(e.src).to_string(),
                g.vertex_name(e.dst).to_string(),
            )
        })
        .collect();
    let mut q = DirectedGraph::new(vertices, edges)?;
    // Preserve letter labels across the quotient.
    for e in q.edges.iter_mut() {
        if let Some(orig) = g.edges().iter().find(|o| o.id == e.id) {
            e.label = orig.label.clone();
        }
    }
    Ok(q)
}

/// A generic composable edge path. `vertex` is the source; for the empty
/// path it is the base vertex and source = range.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    vertex: usize,
    edges: Vec<usize>,
}

impl Path {
    pub fn empty(vertex: usize) -> Self {
        Self { vertex, edges: Vec::new() }
    }

    pub fn from_edges(g: &DirectedGraph, edges: Vec<usize>) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::Invalid("empty edge list needs a base vertex".into()));
        }
        for w in edges.windows(2) {
            if g.edge(w[0]).dst != g.edge(w[1]).src {
                return Err(GraphError::Invalid(format!(
                    "edges `{}` and `{}` do not compose",
                    g.edge(w[0]).id,
                    g.edge(w[1]).id
                )));
            }
        }
        let vertex = g.edge(edges[0]).src;
        Ok(Self { vertex, edges })
    }

    pub fn source(&self) -> usize {
        self.vertex
    }

    pub fn range(&self, g: &DirectedGraph) -> usize {
        self.edges.last().map(|&e| g.edge(e).dst).unwrap_or(self.vertex)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// Concatenation self · other (self first), requires range(self) = source(other).
    pub fn concat(&self, g: &DirectedGraph, other: &Path) -> Result<Path, GraphError> {
        if self.range(g) != other.source() {
            return Err(GraphError::Invalid("paths do not compose".into()));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path { vertex: self.vertex, edges })
    }

    /// If `self = prefix · rest`, return `rest`.
    pub fn strip_prefix(&self, g: &DirectedGraph, prefix: &Path) -> Option<Path> {
        if self.edges.len() < prefix.edges.len() || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        let rest = self.edges[prefix.edges.len()..].to_vec();
        if rest.is_empty() {
            Some(Path::empty(self.range(g)))
        } else {
            let vertex = g.edge(rest[0]).src;
            Some(Path { vertex, edges: rest })
        }
    }

    pub fn render(&self, g: &DirectedGraph) -> String {
        if self.edges.is_empty() {
            return g.vertex_name(self.vertex).to_string();
        }
        self.edges
            .iter()
            .map(|&e| g.edge_label(e).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// View of an `E_n`-shaped graph (possibly a quotient `E_n \ {v0..v_{k-1}}`)
/// by numeric vertex level, with `(i, j) -> edge` lookup.
#[derive(Debug, Clone)]
pub struct LevelMap {
    /// level -> vertex index, for levels present in the graph
    vertex_of_level: BTreeMap<usize, usize>,
    /// (src level, dst level) -> edge index
    edge_of: BTreeMap<(usize, usize), usize>,
    min_level: usize,
    max_level: usize,
}

impl LevelMap {
    pub fn new(g: &DirectedGraph) -> Result<Self, GraphError> {
        let mut vertex_of_level = BTreeMap::new();
        for (i, v) in g.vertex_names().iter().enumerate() {
            let l = vertex_level(v)
                .ok_or_else(|| GraphError::NotBallShaped(format!("vertex `{v}` is not v<k>")))?;
            vertex_of_level.insert(l, i);
        }
        if vertex_of_level.len() != g.vertex_count() {
            return Err(GraphError::NotBallShaped("duplicate vertex levels".into()));
        }
        let min_level = *vertex_of_level.keys().next().unwrap();
        let max_level = *vertex_of_level.keys().last().unwrap();
        let level_of_vertex: BTreeMap<usize, usize> =
            vertex_of_level.iter().map(|(&l, &v)| (v, l)).collect();
        let mut edge_of = BTreeMap::new();
        for (ei, e) in g.edges().iter().enumerate() {
            let i = level_of_vertex[&e.src];
            let j = level_of_vertex[&e.dst];
            if i < j || i == min_level {
                return Err(GraphError::NotBallShaped(format!(
                    "edge `{}` does not descend",
                    e.id
                )));
            }
            if edge_of.insert((i, j), ei).is_some() {
                return Err(GraphError::NotBallShaped(format!(
                    "parallel edges between levels {i} and {j}"
                )));
            }
        }
        // E_n completeness: every (i, j) with min < i, j <= i must exist.
        for i in min_level + 1..=max_level {
            for j in min_level..=i {
                if !edge_of.contains_key(&(i, j)) {
                    return Err(GraphError::NotBallShaped(format!("missing edge e{i}{j}")));
                }
            }
        }
        Ok(Self { vertex_of_level, edge_of, min_level, max_level })
    }

    pub fn min_level(&self) -> usize {
        self.min_level
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn vertex_at(&self, level: usize) -> Option<usize> {
        self.vertex_of_level.get(&level).copied()
    }

    pub fn level_of(&self, vertex: usize) -> Option<usize> {
        self.vertex_of_level
            .iter()
            .find(|(_, &v)| v == vertex)
            .map(|(&l, _)| l)
    }

    pub fn edge_between(&self, i: usize, j: usize) -> Option<usize> {
        self.edge_of.get(&(i, j)).copied()
    }
}

/// A path ending at the sink of an `E_n`-shaped graph in loop-exponent
/// form: a strictly descending chain of (vertex level, loop count) pairs.
/// The empty chain is the zero-length path at the base vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopEncodedPath {
    /// Level of the end (range) vertex.
    pub base: usize,
    /// (level, loop exponent) pairs, levels strictly decreasing, all > base.
    pub chain: Vec<(usize, u32)>,
}

impl LoopEncodedPath {
    pub fn vertex_path(base: usize) -> Self {
        Self { base, chain: Vec::new() }
    }

    /// Level of the source vertex (first chain entry, or base if empty).
    pub fn start_level(&self) -> usize {
        self.chain.first().map(|&(l, _)| l).unwrap_or(self.base)
    }

    pub fn max_exponent(&self) -> u32 {
        self.chain.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    /// Expand to the generic edge-sequence form:
    /// `e_{i1 i1}^{m1} e_{i1 i2} e_{i2 i2}^{m2} ... e_{ik base}`.
    pub fn to_path(&self, g: &DirectedGraph, lm: &LevelMap) -> Result<Path, GraphError> {
        if self.chain.is_empty() {
            let v = lm
                .vertex_at(self.base)
                .ok_or_else(|| GraphError::UnknownVertex(format!("v{}", self.base)))?;
            return Ok(Path::empty(v));
        }
        let mut edges = Vec::new();
        for (t, &(level, m)) in self.chain.iter().enumerate() {
            let next = self.chain.get(t + 1).map(|&(l, _)| l).unwrap_or(self.base);
            let loop_edge = lm
                .edge_between(level, level)
                .ok_or_else(|| GraphError::NotBallShaped(format!("missing loop e{level}{level}")))?;
            edges.extend(std::iter::repeat(loop_edge).take(m as usize));
            let step = lm
                .edge_between(level, next)
                .ok_or_else(|| GraphError::NotBallShaped(format!("missing edge e{level}{next}")))?;
            edges.push(step);
        }
        Path::from_edges(g, edges)
    }

    /// Parse a generic edge path (which must end at a level-map vertex)
    /// back into loop-exponent form.
    pub fn from_path(g: &DirectedGraph, lm: &LevelMap, p: &Path) -> Result<Self, GraphError> {
        let base = lm
            .level_of(p.range(g))
            .ok_or_else(|| GraphError::NotBallShaped("range vertex has no level".into()))?;
        let mut chain: Vec<(usize, u32)> = Vec::new();
        let mut current: Option<(usize, u32)> = None;
        for &ei in p.edges() {
            let i = lm.level_of(g.edge(ei).src).unwrap();
            let j = lm.level_of(g.edge(ei).dst).unwrap();
            match current {
                None => current = Some((i, 0)),
                Some((l, _)) if l != i => {
                    return Err(GraphError::Invalid("path does not compose".into()))
                }
                _ => {}
            }
            if i == j {
                current = current.map(|(l, m)| (l, m + 1));
            } else {
                chain.push(current.take().unwrap());
                current = Some((j, 0));
            }
        }
        if let Some((l, m)) = current {
            // Trailing loops with no descent would not end at the base.
            if l != base || m != 0 {
                return Err(GraphError::Invalid("path does not end at the base vertex".into()));
            }
        }
        Ok(Self { base, chain })
    }

    /// Render in the manifest form, e.g. `a^2 c b^0 e` for E_2 or
    /// `e22^1 e21 e11^0 e10` for larger graphs; the empty path renders as
    /// its base vertex name.
    pub fn render(&self, g: &DirectedGraph, lm: &LevelMap) -> String {
        if self.chain.is_empty() {
            let v = lm.vertex_at(self.base).unwrap();
            return g.vertex_name(v).to_string();
        }
        let mut parts = Vec::new();
        for (t, &(level, m)) in self.chain.iter().enumerate() {
            let next = self.chain.get(t + 1).map(|&(l, _)| l).unwrap_or(self.base);
            let loop_edge = lm.edge_between(level, level).unwrap();
            let step = lm.edge_between(level, next).unwrap();
            parts.push(format!("{}^{}", g.edge_label(loop_edge), m));
            parts.push(g.edge_label(step).to_string());
        }
        parts.join(" ")
    }
}

impl fmt::Display for LoopEncodedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_empty() {
            return write!(f, "v{}", self.base);
        }
        for (t, &(l, m)) in self.chain.iter().enumerate() {
            if t > 0 {
                write!(f, " ")?;
            }
            write!(f, "e{l}{l}^{m}", l = l)?;
            let next = self.chain.get(t + 1).map(|&(x, _)| x).unwrap_or(self.base);
            write!(f, " e{l}{next}")?;
        }
        Ok(())
    }
}

/// Descriptor of a loop-equivalence class of paths: the descending vertex
/// chain with a loop slot at every chain vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathClass {
    pub base: usize,
    /// Strictly descending levels; each carries one loop slot.
    pub levels: Vec<usize>,
}

impl PathClass {
    pub fn loop_slots(&self) -> usize {
        self.levels.len()
    }
}

/// The `2^(max - base)` loop-equivalence classes of paths ending at
/// `end_level`, ordered by descending-chain lexicographic order (the sink
/// class, an empty chain, first).
pub fn path_classes_at(lm: &LevelMap, end_level: usize) -> Vec<PathClass> {
    let levels: Vec<usize> = (end_level + 1..=lm.max_level()).collect();
    let mut classes = Vec::new();
    for mask in 0u32..(1 << levels.len()) {
        let mut chain: Vec<usize> =
            levels.iter().copied().filter(|l| mask >> (l - end_level - 1) & 1 == 1).collect();
        chain.sort_unstable_by(|a, b| b.cmp(a));
        classes.push(PathClass { base: end_level, levels: chain });
    }
    classes.sort();
    classes
}

/// All loop-equivalence classes of paths ending at the sink.
pub fn path_classes(g: &DirectedGraph) -> Result<Vec<PathClass>, GraphError> {
    let lm = LevelMap::new(g)?;
    Ok(path_classes_at(&lm, lm.min_level()))
}

/// All paths ending at `end_vertex` with every loop exponent at most
/// `cutoff`, in canonical order: first by class, then lexicographically by
/// loop-exponent tuple. Deterministic across runs.
pub fn enumerate_paths(
    g: &DirectedGraph,
    end_vertex: &str,
    cutoff: u32,
) -> Result<Vec<LoopEncodedPath>, GraphError> {
    let lm = LevelMap::new(g)?;
    let end = g
        .vertex_index(end_vertex)
        .ok_or_else(|| GraphError::UnknownVertex(end_vertex.to_string()))?;
    let end_level = lm.level_of(end).unwrap();
    let mut out = Vec::new();
    for class in path_classes_at(&lm, end_level) {
        let slots = class.loop_slots();
        let mut exps = vec![0u32; slots];
        loop {
            out.push(LoopEncodedPath {
                base: end_level,
                chain: class.levels.iter().copied().zip(exps.iter().copied()).collect(),
            });
            // Next exponent tuple in lexicographic order.
            let mut t = slots;
            loop {
                if t == 0 {
                    break;
                }
                t -= 1;
                if exps[t] < cutoff {
                    exps[t] += 1;
                    for e in exps.iter_mut().skip(t + 1) {
                        *e = 0;
                    }
                    break;
                }
                if t == 0 {
                    t = usize::MAX;
                    break;
                }
            }
            if t == usize::MAX || slots == 0 {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suspension_of_point_is_e1() {
        let e1 = double_suspension(&point_graph());
        assert_eq!(e1.vertex_count(), 2);
        assert_eq!(e1.edge_count(), 2);
        let loop_edge = e1.edge_index("e11").unwrap();
        assert_eq!(e1.edge(loop_edge).src, e1.edge(loop_edge).dst);
        assert_eq!(e1.edge(e1.edge_index("e10").unwrap()).dst, e1.vertex_index("v0").unwrap());
    }

    #[test]
    fn suspension_of_e1_is_e2() {
        let e2 = double_suspension(&double_suspension(&point_graph()));
        assert_eq!(e2.vertex_count(), 3);
        assert_eq!(e2.edge_count(), 5);
    }

    #[test]
    fn suspension_edge_count() {
        // One new vertex, |vertices|+1 new edges.
        let mut g = point_graph();
        for _ in 0..5 {
            let before_v = g.vertex_count();
            let before_e = g.edge_count();
            g = double_suspension(&g);
            assert_eq!(g.vertex_count(), before_v + 1);
            assert_eq!(g.edge_count(), before_e + before_v + 1);
        }
    }

    #[test]
    fn ball_graph_matches_iterated_suspension() {
        let mut g = point_graph();
        for n in 1..=5usize {
            g = double_suspension(&g);
            let b = ball_graph(n).unwrap();
            assert_eq!(g.vertex_names(), b.vertex_names());
            let mut ge: Vec<_> = g
                .edges()
                .iter()
                .map(|e| (e.id.clone(), e.src, e.dst))
                .collect();
            let mut be: Vec<_> = b
                .edges()
                .iter()
                .map(|e| (e.id.clone(), e.src, e.dst))
                .collect();
            ge.sort();
            be.sort();
            assert_eq!(ge, be);
        }
    }

    #[test]
    fn ball_graph_sizes() {
        for n in 1..=6usize {
            let g = ball_graph(n).unwrap();
            assert_eq!(g.vertex_count(), n + 1);
            assert_eq!(g.edge_count(), n * (n + 3) / 2);
        }
        assert!(matches!(ball_graph(0), Err(GraphError::ZeroBall)));
    }

    #[test]
    fn hereditary_saturated_chains() {
        // E_n: empty set plus the chains {v0..vi}.
        for n in 1..=4usize {
            let g = ball_graph(n).unwrap();
            let sets = hereditary_saturated_sets(&g);
            let mut expected: Vec<Vec<usize>> = vec![vec![]];
            for i in 0..=n {
                expected.push((0..=i).map(|k| g.vertex_index(&format!("v{k}")).unwrap()).collect());
            }
            let mut got = sets.clone();
            got.sort();
            expected.sort();
            assert_eq!(got, expected, "n = {n}");
        }
    }

    #[test]
    fn hereditary_saturated_membership_is_exhaustive() {
        for n in 1..=3usize {
            let g = ball_graph(n).unwrap();
            let sets = hereditary_saturated_sets(&g);
            for mask in 0u32..(1 << g.vertex_count()) {
                let h: Vec<usize> =
                    (0..g.vertex_count()).filter(|i| mask >> i & 1 == 1).collect();
                let listed = sets.contains(&h);
                assert_eq!(listed, is_hereditary(&g, &h) && is_saturated(&g, &h));
            }
        }
    }

    #[test]
    fn quotient_graphs_of_e2() {
        let e2 = ball_graph(2).unwrap();
        let v0 = e2.vertex_index("v0").unwrap();
        let v1 = e2.vertex_index("v1").unwrap();
        // E_2 \ {v0}: the quantum 3-sphere graph, 2 vertices, 3 edges.
        let s3 = quotient_graph(&e2, &[v0]).unwrap();
        assert_eq!(s3.vertex_count(), 2);
        assert_eq!(s3.edge_count(), 3);
        // E_2 \ {v0, v1}: single vertex with one loop.
        let circle = quotient_graph(&e2, &[v0, v1]).unwrap();
        assert_eq!(circle.vertex_count(), 1);
        assert_eq!(circle.edge_count(), 1);
        // Empty H: unchanged.
        let same = quotient_graph(&e2, &[]).unwrap();
        assert_eq!(same, e2);
        // Non-hereditary set rejected.
        let v2 = e2.vertex_index("v2").unwrap();
        assert!(quotient_graph(&e2, &[v2]).is_err());
    }

    #[test]
    fn enumerate_paths_e2() {
        let e2 = ball_graph(2).unwrap();
        let paths = enumerate_paths(&e2, "v0", 2).unwrap();
        // 1 + (N+1) + (N+1) + (N+1)^2 = 16 for N = 2.
        assert_eq!(paths.len(), 16);
        assert_eq!(paths[0], LoopEncodedPath::vertex_path(0));
        let lm = LevelMap::new(&e2).unwrap();
        assert_eq!(paths[1].render(&e2, &lm), "b^0 e");
    }

    #[test]
    fn enumerate_paths_e1_cutoff_zero() {
        let e1 = ball_graph(1).unwrap();
        let paths = enumerate_paths(&e1, "v0", 0).unwrap();
        assert_eq!(
            paths,
            vec![
                LoopEncodedPath::vertex_path(0),
                LoopEncodedPath { base: 0, chain: vec![(1, 0)] },
            ]
        );
    }

    #[test]
    fn path_count_matches_class_formula_and_dfs() {
        for n in 1..=3usize {
            let g = ball_graph(n).unwrap();
            let classes = path_classes(&g).unwrap();
            assert_eq!(classes.len(), 1 << n);
            for cutoff in 0..=3u32 {
                let paths = enumerate_paths(&g, "v0", cutoff).unwrap();
                let formula: usize = classes
                    .iter()
                    .map(|c| (cutoff as usize + 1).pow(c.loop_slots() as u32))
                    .sum();
                assert_eq!(paths.len(), formula);
                assert_eq!(paths.len(), dfs_paths(&g, cutoff), "n={n} N={cutoff}");
            }
        }
    }

    /// Brute-force DFS oracle: count edge paths ending at v0 with every
    /// loop edge used at most `cutoff` times in a row.
    fn dfs_paths(g: &DirectedGraph, cutoff: u32) -> usize {
        let sink = g.vertex_index("v0").unwrap();
        // Walk backwards from the sink: count paths by extending at the front.
        fn go(g: &DirectedGraph, cutoff: u32, start: usize, run: &mut Vec<usize>) -> usize {
            let mut count = 1; // the path accumulated so far
            for ei in 0..g.edge_count() {
                let e = g.edge(ei);
                if e.dst != start {
                    continue;
                }
                // Loop-run length restriction applies per consecutive loop block.
                if e.src == e.dst {
                    let tail_run = run.iter().rev().take_while(|&&x| x == ei).count();
                    if tail_run as u32 >= cutoff {
                        continue;
                    }
                }
                run.push(ei);
                count += go(g, cutoff, e.src, run);
                run.pop();
            }
            count
        }
        go(g, cutoff, sink, &mut Vec::new())
    }

    #[test]
    fn class_count_doubles_with_suspension() {
        let mut prev = path_classes(&ball_graph(1).unwrap()).unwrap().len();
        for n in 2..=5usize {
            let cur = path_classes(&ball_graph(n).unwrap()).unwrap().len();
            assert_eq!(cur, 2 * prev);
            prev = cur;
        }
    }

    #[test]
    fn loop_encoding_round_trip() {
        let g = ball_graph(3).unwrap();
        let lm = LevelMap::new(&g).unwrap();
        for p in enumerate_paths(&g, "v0", 3).unwrap() {
            let generic = p.to_path(&g, &lm).unwrap();
            let back = LoopEncodedPath::from_path(&g, &lm, &generic).unwrap();
            assert_eq!(p, back);
        }
    }

    #[test]
    fn json_round_trip() {
        let g = ball_graph(2).unwrap();
        let text = g.to_json();
        assert!(text.contains("\"e11\""));
        let back = DirectedGraph::from_json(&text).unwrap();
        assert_eq!(back.vertex_names(), g.vertex_names());
        assert_eq!(back.edge_count(), g.edge_count());
    }
}
