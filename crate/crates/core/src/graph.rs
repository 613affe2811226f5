//! Undirected simple graphs with label-ranked vertex ids, plus the structural
//! predicates used by the solvers: blocks and cut vertices, chordality,
//! local connectivity and cover predicates.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex id, equal to the rank of the vertex label.
pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("self-loop on vertex `{label}` (line {line})")]
    SelfLoop { label: String, line: usize },
    #[error("duplicate edge {{{u}, {v}}} (line {line})")]
    DuplicateEdge { u: String, v: String, line: usize },
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph must have at least {0} vertices")]
    TooSmall(usize),
    #[error("graph has {n} vertices; bit-set routines support at most 64")]
    TooLarge { n: usize },
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn singleton(v: VertexId) -> Self {
        Self(vec![v])
    }

    /// Builds a set from the low 64 ids of a bit mask.
    pub fn from_mask(mask: u64) -> Self {
        Self(iter_mask(mask).collect())
    }

    /// Bit mask of the set. Panics if an id is 64 or larger.
    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| {
            assert!(v < 64, "vertex id {v} does not fit in a 64-bit mask");
            m | (1u64 << v)
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn symmetric_difference_len(&self, other: &VertexSet) -> usize {
        self.difference(other).len() + other.difference(self).len()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Labels of the members, in id order.
    pub fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.iter().map(|v| g.label(v)).collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut v: Vec<VertexId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl From<Vec<VertexId>> for VertexSet {
    fn from(v: Vec<VertexId>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[VertexId; N]> for VertexSet {
    fn from(v: [VertexId; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Iterates the set bits of a mask in increasing order.
pub fn iter_mask(mut mask: u64) -> impl Iterator<Item = VertexId> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Labeled undirected simple graph. Vertex ids are label ranks under
/// lexicographic order; adjacency lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph from labels and labeled edges. Labels of edge endpoints
    /// must appear in `vertices`.
    pub fn from_labeled<V, E, S, T>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (T, T)>,
        S: Into<String>,
        T: AsRef<str>,
    {
        let mut labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        let index: BTreeMap<&str, VertexId> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut ids = Vec::new();
        for (line, (a, b)) in edges.into_iter().enumerate() {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let v = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            ids.push((u, v, line + 1));
        }
        let n = labels.len();
        let mut g = Graph {
            labels,
            adj: vec![Vec::new(); n],
        };
        g.insert_edges(ids)?;
        Ok(g)
    }

    /// Builds a graph on ids `0..n` with zero-padded numeric labels, so that
    /// label rank equals the given id.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Graph {
            labels: numeric_labels(n),
            adj: vec![Vec::new(); n],
        };
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
        }
        g.insert_edges(edges.iter().enumerate().map(|(i, &(u, v))| (u, v, i + 1)))?;
        Ok(g)
    }

    fn insert_edges(
        &mut self,
        edges: impl IntoIterator<Item = (VertexId, VertexId, usize)>,
    ) -> Result<(), GraphError> {
        let mut seen = BTreeSet::new();
        for (u, v, line) in edges {
            if u == v {
                return Err(GraphError::SelfLoop {
                    label: self.labels[u].clone(),
                    line,
                });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge {
                    u: self.labels[u].clone(),
                    v: self.labels[v].clone(),
                    line,
                });
            }
            self.adj[u].push(v);
            self.adj[v].push(u);
        }
        for list in &mut self.adj {
            list.sort_unstable();
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id_of(&self, label: &str) -> Option<VertexId> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId, GraphError> {
        self.id_of(label)
            .ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Neighborhood bit masks; requires `n <= 64`.
    pub fn neighbor_masks(&self) -> Result<Vec<u64>, GraphError> {
        if self.n() > 64 {
            return Err(GraphError::TooLarge { n: self.n() });
        }
        Ok(self
            .adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &w| m | (1u64 << w)))
            .collect())
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Induced subgraph on `keep`. Labels are preserved, so the returned map
    /// (new id -> old id) is increasing.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<VertexId>) {
        let map: Vec<VertexId> = keep.iter().collect();
        let mut back = vec![usize::MAX; self.n()];
        for (new, &old) in map.iter().enumerate() {
            back[old] = new;
        }
        let adj = map
            .iter()
            .map(|&old| {
                self.adj[old]
                    .iter()
                    .filter_map(|&w| (back[w] != usize::MAX).then_some(back[w]))
                    .collect()
            })
            .collect();
        let labels = map.iter().map(|&old| self.labels[old].clone()).collect();
        (Graph { labels, adj }, map)
    }

    /// The graph with the given vertices deleted.
    pub fn without(&self, removed: &VertexSet) -> (Graph, Vec<VertexId>) {
        let keep: VertexSet = self.vertices().filter(|&v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// Connected components as sorted vertex sets, ordered by least member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp.into());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<(), GraphError> {
        if self.n() == 0 {
            return Err(GraphError::TooSmall(1));
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(())
    }

    /// JSON document with labels (`{"vertices": [...], "edges": [[u, v], ...]}`).
    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: Some(self.labels.clone()),
            edges: self
                .edges()
                .map(|(u, v)| [self.labels[u].clone(), self.labels[v].clone()])
                .collect(),
            faces: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("graph documents always serialize")
    }

    /// Edge-list text. Isolated vertices are not representable in this format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&self.labels[u]);
            out.push(' ');
            out.push_str(&self.labels[v]);
            out.push('\n');
        }
        out
    }
}

/// Labels `0..n` zero-padded to a common width so lexicographic order matches
/// numeric order.
pub fn numeric_labels(n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| format!("{i:0width$}")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    EdgeList,
    Json,
}

impl InputFormat {
    /// Guesses the format from the first non-blank character.
    pub fn detect(text: &str) -> InputFormat {
        match text.trim_start().chars().next() {
            Some('{') => InputFormat::Json,
            _ => InputFormat::EdgeList,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonLabel {
    Str(String),
    Int(i64),
}

impl From<JsonLabel> for String {
    fn from(l: JsonLabel) -> String {
        match l {
            JsonLabel::Str(s) => s,
            JsonLabel::Int(i) => i.to_string(),
        }
    }
}

/// Serialized graph, optionally carrying face boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<FacesDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacesDocument {
    #[serde(default)]
    pub internal: Vec<Vec<String>>,
    #[serde(default)]
    pub outer: Vec<String>,
}

#[derive(Deserialize)]
struct RawDocument {
    #[serde(default)]
    vertices: Option<Vec<JsonLabel>>,
    #[serde(default)]
    edges: Vec<[JsonLabel; 2]>,
    #[serde(default)]
    faces: Option<RawFaces>,
}

#[derive(Deserialize)]
struct RawFaces {
    #[serde(default)]
    internal: Vec<Vec<JsonLabel>>,
    #[serde(default)]
    outer: Vec<JsonLabel>,
}

/// Face boundaries of a fixed plane drawing, as vertex-id cycles (first
/// vertex not repeated at the end).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlanarEmbedding {
    pub internal_faces: Vec<Vec<VertexId>>,
    pub outer_face: Vec<VertexId>,
}

impl GraphDocument {
    /// Resolves the document into a graph and, if present, its embedding.
    pub fn build(&self) -> Result<(Graph, Option<PlanarEmbedding>), GraphError> {
        let vertices: Vec<String> = match &self.vertices {
            Some(v) => v.clone(),
            None => {
                let set: BTreeSet<&String> = self.edges.iter().flatten().collect();
                set.into_iter().cloned().collect()
            }
        };
        let g = Graph::from_labeled(
            vertices,
            self.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())),
        )?;
        let emb = match &self.faces {
            None => None,
            Some(f) => {
                let resolve = |face: &Vec<String>| -> Result<Vec<VertexId>, GraphError> {
                    face.iter().map(|l| g.vertex(l)).collect()
                };
                Some(PlanarEmbedding {
                    internal_faces: f.internal.iter().map(resolve).collect::<Result<_, _>>()?,
                    outer_face: resolve(&f.outer)?,
                })
            }
        };
        Ok((g, emb))
    }
}

/// Parses a graph, discarding any face data.
pub fn parse_graph(text: &str, format: InputFormat) -> Result<Graph, GraphError> {
    parse_graph_document(text, format).map(|(g, _)| g)
}

/// Parses a graph together with its optional embedding (JSON only).
pub fn parse_graph_document(
    text: &str,
    format: InputFormat,
) -> Result<(Graph, Option<PlanarEmbedding>), GraphError> {
    match format {
        InputFormat::EdgeList => parse_edge_list(text).map(|g| (g, None)),
        InputFormat::Json => parse_json(text)?.build(),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut labels = BTreeSet::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(GraphError::Parse {
                line,
                column: 1,
                message: format!("expected two vertex labels, found {}", tokens.len()),
            });
        }
        labels.insert(tokens[0].to_string());
        labels.insert(tokens[1].to_string());
        edges.push((tokens[0].to_string(), tokens[1].to_string(), line));
    }
    let mut g = Graph::from_labeled(labels, std::iter::empty::<(&str, &str)>())?;
    let ids: Vec<_> = edges
        .iter()
        .map(|(a, b, line)| (g.id_of(a).unwrap(), g.id_of(b).unwrap(), *line))
        .collect();
    g.insert_edges(ids)?;
    Ok(g)
}

fn parse_json(text: &str) -> Result<GraphDocument, GraphError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| GraphError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(GraphDocument {
        vertices: raw
            .vertices
            .map(|v| v.into_iter().map(String::from).collect()),
        edges: raw
            .edges
            .into_iter()
            .map(|[a, b]| [String::from(a), String::from(b)])
            .collect(),
        faces: raw.faces.map(|f| FacesDocument {
            internal: f
                .internal
                .into_iter()
                .map(|face| face.into_iter().map(String::from).collect())
                .collect(),
            outer: f.outer.into_iter().map(String::from).collect(),
        }),
    })
}

/// Articulation points and blocks of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub cut_vertices: VertexSet,
    /// Maximal biconnected components and bridges, sorted.
    pub blocks: Vec<VertexSet>,
}

struct DfsFrame {
    v: VertexId,
    parent: VertexId,
    next: usize,
}

/// Tarjan low-link computation with an edge stack.
pub fn cut_vertices_and_blocks(g: &Graph) -> Result<BlockDecomposition, GraphError> {
    g.require_connected()?;
    let n = g.n();
    if n == 1 {
        return Ok(BlockDecomposition {
            cut_vertices: VertexSet::new(),
            blocks: vec![VertexSet::singleton(0)],
        });
    }
    const NONE: usize = usize::MAX;
    let mut disc = vec![NONE; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(VertexId, VertexId)> = Vec::new();
    let mut timer = 0;
    let mut root_children = 0;

    disc[0] = timer;
    low[0] = timer;
    timer += 1;
    let mut stack = vec![DfsFrame {
        v: 0,
        parent: NONE,
        next: 0,
    }];
    while let Some(frame) = stack.last_mut() {
        let v = frame.v;
        if frame.next < g.adj[v].len() {
            let w = g.adj[v][frame.next];
            frame.next += 1;
            if disc[w] == NONE {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                edge_stack.push((v, w));
                stack.push(DfsFrame {
                    v: w,
                    parent: v,
                    next: 0,
                });
            } else if w != frame.parent && disc[w] < disc[v] {
                edge_stack.push((v, w));
                low[v] = low[v].min(disc[w]);
            }
            continue;
        }
        stack.pop();
        let Some(parent) = stack.last() else { break };
        let p = parent.v;
        low[p] = low[p].min(low[v]);
        if low[v] >= disc[p] {
            if p == 0 {
                root_children += 1;
            } else {
                is_cut[p] = true;
            }
            let mut block = Vec::new();
            while let Some((a, b)) = edge_stack.pop() {
                block.push(a);
                block.push(b);
                if (a, b) == (p, v) {
                    break;
                }
            }
            blocks.push(VertexSet::from(block));
        }
    }
    if root_children > 1 {
        is_cut[0] = true;
    }
    blocks.sort();
    Ok(BlockDecomposition {
        cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
        blocks,
    })
}

/// Whether `set` is nonempty and induces a connected subgraph.
pub fn induces_connected(g: &Graph, set: &VertexSet) -> bool {
    let Some(start) = set.iter().next() else {
        return false;
    };
    let mut seen = VertexSet::singleton(start);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if set.contains(w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == set.len()
}

/// Least-id vertex whose open neighborhood is empty or induces a
/// disconnected subgraph; `None` if the graph is locally connected.
pub fn locally_disconnected_vertex(g: &Graph) -> Option<VertexId> {
    g.vertices().find(|&v| {
        let nbhd: VertexSet = g.neighbors(v).iter().copied().collect();
        !induces_connected(g, &nbhd)
    })
}

pub fn is_locally_connected(g: &Graph) -> bool {
    locally_disconnected_vertex(g).is_none()
}

/// Whether every block induces a locally connected graph. Bridges (`K_2`
/// blocks) qualify since a single neighbor is connected.
pub fn every_block_locally_connected(g: &Graph) -> Result<bool, GraphError> {
    let dec = cut_vertices_and_blocks(g)?;
    Ok(dec
        .blocks
        .iter()
        .all(|b| is_locally_connected(&g.induced(b).0)))
}

/// Lex-BFS order, breaking ties by smallest id.
pub fn lex_bfs(g: &Graph) -> Vec<VertexId> {
    let n = g.n();
    let mut label: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let mut best: Option<VertexId> = None;
        for v in 0..n {
            if visited[v] {
                continue;
            }
            match best {
                Some(b) if label[v] <= label[b] => {}
                _ => best = Some(v),
            }
        }
        let v = best.expect("an unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                label[w].push(n - step);
            }
        }
    }
    order
}

/// Whether `order` (first eliminated first) is a perfect elimination order.
pub fn is_perfect_elimination_order(g: &Graph, order: &[VertexId]) -> bool {
    let n = g.n();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    order.iter().all(|&v| {
        let later: Vec<VertexId> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        match later.iter().min_by_key(|&&w| pos[w]) {
            None => true,
            Some(&p) => later.iter().all(|&w| w == p || g.has_edge(p, w)),
        }
    })
}

/// Perfect elimination order from reversed Lex-BFS, or `None` if the graph
/// is not chordal.
pub fn perfect_elimination_order(g: &Graph) -> Option<Vec<VertexId>> {
    let mut order = lex_bfs(g);
    order.reverse();
    is_perfect_elimination_order(g, &order).then_some(order)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_order(g).is_some()
}

pub fn is_vertex_cover(g: &Graph, s: &VertexSet) -> bool {
    g.edges().all(|(u, v)| s.contains(u) || s.contains(v))
}

pub fn is_connected_cover(g: &Graph, s: &VertexSet) -> bool {
    is_vertex_cover(g, s) && induces_connected(g, s)
}

#[cfg(test)]
pub(crate) fn mask_is_cover(nbr: &[u64], mask: u64) -> bool {
    nbr.iter()
        .enumerate()
        .all(|(v, &nb)| mask & (1 << v) != 0 || nb & !mask == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        parse_graph("a b\nb c", InputFormat::EdgeList).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn parses_path() {
        let g = p3();
        assert_eq!(g.labels(), ["a", "b", "c"]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn edge_list_comments_and_errors() {
        let g = parse_graph("# header\n\nb a\n  # more\nc b\n", InputFormat::EdgeList).unwrap();
        assert_eq!(g.m(), 2);
        assert!(matches!(
            parse_graph("a a", InputFormat::EdgeList),
            Err(GraphError::SelfLoop { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("a b\nb a", InputFormat::EdgeList),
            Err(GraphError::DuplicateEdge { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("a b c", InputFormat::EdgeList),
            Err(GraphError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn json_with_faces_and_numbers() {
        let text = r#"{"vertices":[1,2,3,4],"edges":[[1,2],[2,3],[3,4],[4,1]],
            "faces":{"internal":[[1,2,3,4]],"outer":[1,2,3,4]}}"#;
        let (g, emb) = parse_graph_document(text, InputFormat::Json).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(emb.unwrap().internal_faces, vec![vec![0, 1, 2, 3]]);
        assert!(matches!(
            parse_graph("{\"edges\": [[1,", InputFormat::Json),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            parse_graph(r#"{"vertices":["a"],"edges":[["a","b"]]}"#, InputFormat::Json),
            Err(GraphError::UnknownVertex(_))
        ));
    }

    #[test]
    fn isolated_vertices_parse_but_are_disconnected() {
        let g = parse_graph(r#"{"vertices":["a","b","c"],"edges":[["a","b"]]}"#, InputFormat::Json)
            .unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(
            cut_vertices_and_blocks(&g).unwrap_err(),
            GraphError::Disconnected
        );
    }

    #[test]
    fn blocks_of_small_graphs() {
        let d = cut_vertices_and_blocks(&p3()).unwrap();
        assert_eq!(d.cut_vertices, VertexSet::from([1]));
        assert_eq!(d.blocks.len(), 2);
        let d = cut_vertices_and_blocks(&cycle(5)).unwrap();
        assert!(d.cut_vertices.is_empty());
        assert_eq!(d.blocks, vec![VertexSet::from([0, 1, 2, 3, 4])]);
        // two triangles sharing vertex 2
        let bowtie =
            Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let d = cut_vertices_and_blocks(&bowtie).unwrap();
        assert_eq!(d.cut_vertices, VertexSet::from([2]));
        assert_eq!(
            d.blocks,
            vec![VertexSet::from([0, 1, 2]), VertexSet::from([2, 3, 4])]
        );
    }

    #[test]
    fn local_connectivity() {
        assert!(is_locally_connected(&complete(4)));
        assert_eq!(locally_disconnected_vertex(&cycle(5)), Some(0));
        assert_eq!(locally_disconnected_vertex(&p3()), Some(1));
    }

    #[test]
    fn block_local_connectivity() {
        let bowtie =
            Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(every_block_locally_connected(&bowtie).unwrap());
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(every_block_locally_connected(&p4).unwrap());
        // C_4 on 0..3 with a triangle hanging off vertex 3
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (3, 5)])
            .unwrap();
        assert!(!every_block_locally_connected(&g).unwrap());
    }

    #[test]
    fn chordality() {
        assert!(!is_chordal(&cycle(4)));
        let tree = Graph::from_edges(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        let peo = perfect_elimination_order(&tree).unwrap();
        assert!(is_perfect_elimination_order(&tree, &peo));
        let k23 = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(!is_chordal(&k23));
        assert!(is_chordal(&complete(5)));
    }

    #[test]
    fn cover_predicates() {
        let c4 = parse_graph("a b\nb c\nc d\nd a", InputFormat::EdgeList).unwrap();
        let s = VertexSet::from([0, 2]);
        assert!(is_vertex_cover(&c4, &s));
        assert!(!is_connected_cover(&c4, &s));
        let k3 = complete(3);
        assert!(is_connected_cover(&k3, &VertexSet::from([0, 1])));
        assert!(!is_vertex_cover(&p3(), &VertexSet::from([0])));
    }

    #[test]
    fn numeric_labels_sort_like_ids() {
        let labels = numeric_labels(12);
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(labels, sorted);
        assert_eq!(labels[3], "03");
    }

    #[test]
    fn induced_keeps_labels() {
        let g = p3();
        let (h, map) = g.without(&VertexSet::from([1]));
        assert_eq!(h.labels(), ["a", "c"]);
        assert_eq!(map, vec![0, 2]);
        assert_eq!(h.m(), 0);
    }
}
