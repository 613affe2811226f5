//! Graph constructions: the universal-vertex, face-triangulation and
//! double-and-join gadgets, the bipartite counterexample instance, and the
//! generators used for test pools.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    cut_vertices_and_blocks, is_chordal, Graph, GraphError, PlanarEmbedding, VertexId, VertexSet,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("face {face} is not a cycle of the graph")]
    NotACycle { face: usize },
    #[error("{{{0}, {1}}} is not an edge of the graph")]
    NotAnEdge(String, String),
    #[error("no valid sample within {0} attempts")]
    RejectionBudget(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Declared relation `mvc(output) = scale * mvc(input) + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SizeIdentity {
    pub scale: usize,
    pub offset: usize,
}

impl SizeIdentity {
    pub fn expected(&self, input_mvc: usize) -> usize {
        self.scale * input_mvc + self.offset
    }
}

impl fmt::Display for SizeIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scale {
            1 => write!(f, "k+{}", self.offset),
            s => write!(f, "{s}k+{}", self.offset),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetOutput {
    pub graph: Graph,
    pub new_vertices: VertexSet,
    pub size_identity: SizeIdentity,
}

fn fresh_label(taken: &HashSet<String>, base: &str) -> String {
    let mut label = base.to_string();
    while taken.contains(&label) {
        label.push('\'');
    }
    label
}

fn build_output(
    labels: Vec<String>,
    edges: Vec<(String, String)>,
    new: &[String],
    size_identity: SizeIdentity,
) -> Result<GadgetOutput, GadgetError> {
    let graph = Graph::from_labeled(labels, edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))?;
    let new_vertices = new.iter().map(|l| graph.vertex(l)).collect::<Result<_, _>>()?;
    Ok(GadgetOutput {
        graph,
        new_vertices,
        size_identity,
    })
}

fn labeled_edges(g: &Graph) -> Vec<(String, String)> {
    g.edges()
        .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
        .collect()
}

/// Adds one vertex adjacent to every existing vertex. The result is locally
/// connected when the input is connected, and its minimum cover grows by one.
pub fn add_universal_vertex(g: &Graph) -> Result<GadgetOutput, GadgetError> {
    g.require_connected()?;
    let taken: HashSet<String> = g.labels().iter().cloned().collect();
    let hub = fresh_label(&taken, "hub");
    let mut edges = labeled_edges(g);
    edges.extend(g.labels().iter().map(|l| (hub.clone(), l.clone())));
    let mut labels = g.labels().to_vec();
    labels.push(hub.clone());
    build_output(
        labels,
        edges,
        &[hub],
        SizeIdentity {
            scale: 1,
            offset: 1,
        },
    )
}

/// Split indices (1-based) for a face of length `t > 3`.
pub fn split_indices(t: usize) -> (usize, usize) {
    let i = 2.max(t.div_ceil(3));
    let j = (i + 1).max((2 * t).div_ceil(3));
    (i, j)
}

/// Edges triangulating the face `boundary` (length > 3) with three fan
/// vertices and an apex joined to all three.
fn face_gadget_edges(boundary: &[String], names: &[String; 4]) -> Vec<(String, String)> {
    let t = boundary.len();
    let (i, j) = split_indices(t);
    let u = |k: usize| boundary[k - 1].clone();
    let [f1, f2, f3, apex] = names.clone();
    let mut edges = Vec::new();
    edges.extend((1..=i).map(|k| (f1.clone(), u(k))));
    edges.extend((i..=j).map(|k| (f2.clone(), u(k))));
    edges.extend((j..=t).map(|k| (f3.clone(), u(k))));
    edges.push((f3.clone(), u(1)));
    edges.push((f1.clone(), f2.clone()));
    edges.push((f2.clone(), f3.clone()));
    edges.push((f1.clone(), f3.clone()));
    for f in [&f1, &f2, &f3] {
        edges.push((apex.clone(), f.clone()));
    }
    edges
}

fn is_cycle(g: &Graph, face: &[VertexId]) -> bool {
    let distinct: BTreeSet<_> = face.iter().collect();
    distinct.len() == face.len()
        && face.len() >= 3
        && face.iter().all(|&v| v < g.n())
        && (0..face.len()).all(|k| g.has_edge(face[k], face[(k + 1) % face.len()]))
}

/// Triangulates every internal face with more than three boundary vertices
/// by inserting four vertices; the minimum cover grows by three per face.
pub fn triangulate_faces(g: &Graph, emb: &PlanarEmbedding) -> Result<GadgetOutput, GadgetError> {
    let mut taken: HashSet<String> = g.labels().iter().cloned().collect();
    let mut labels = g.labels().to_vec();
    let mut edges = labeled_edges(g);
    let mut new = Vec::new();
    let mut processed = 0;
    for (idx, face) in emb.internal_faces.iter().enumerate() {
        if face.len() <= 3 {
            continue;
        }
        if !is_cycle(g, face) {
            return Err(GadgetError::NotACycle { face: idx });
        }
        let names: [String; 4] = std::array::from_fn(|k| {
            let l = fresh_label(&taken, &format!("f{idx}.{}", k + 1));
            taken.insert(l.clone());
            l
        });
        let boundary: Vec<String> = face.iter().map(|&v| g.label(v).to_string()).collect();
        edges.extend(face_gadget_edges(&boundary, &names));
        labels.extend(names.iter().cloned());
        new.extend(names);
        processed += 1;
    }
    build_output(
        labels,
        edges,
        &new,
        SizeIdentity {
            scale: 1,
            offset: 3 * processed,
        },
    )
}

/// Two disjoint copies joined by the cross edges `u1 v2` and `v1 u2`, with
/// the quadrilateral `u1 v1 u2 v2` triangulated by four new vertices
/// `p, q, r, s`. The minimum cover becomes `2k + 3`.
pub fn double_and_join(
    g: &Graph,
    outer_edge: (VertexId, VertexId),
) -> Result<GadgetOutput, GadgetError> {
    let (u, v) = outer_edge;
    if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
        return Err(GadgetError::NotAnEdge(u.to_string(), v.to_string()));
    }
    let copy = |l: &str, c: usize| format!("{l}.{c}");
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for c in 1..=2 {
        labels.extend(g.labels().iter().map(|l| copy(l, c)));
        edges.extend(
            g.edges()
                .map(|(a, b)| (copy(g.label(a), c), copy(g.label(b), c))),
        );
    }
    let (lu, lv) = (g.label(u), g.label(v));
    edges.push((copy(lu, 1), copy(lv, 2)));
    edges.push((copy(lv, 1), copy(lu, 2)));
    let names = ["p", "q", "r", "s"].map(String::from);
    let quad = [copy(lu, 1), copy(lv, 1), copy(lu, 2), copy(lv, 2)];
    edges.extend(face_gadget_edges(&quad, &names));
    labels.extend(names.iter().cloned());
    build_output(
        labels,
        edges,
        &names,
        SizeIdentity {
            scale: 2,
            offset: 3,
        },
    )
}

/// Biconnected bipartite planar graph whose vertices each lie in some
/// minimum vertex cover, yet whose eternal vertex cover number exceeds its
/// vertex cover number 5: two copies of `K_{2,3}` on `{x1,x2,x3,y4,y5}` and
/// `{y1,y2,y3,x4,x5}` joined by `x1 y1` and `x4 y4`.
pub fn fig4_instance() -> Graph {
    let mut edges = Vec::new();
    for a in ["x1", "x2", "x3"] {
        for b in ["y4", "y5"] {
            edges.push((a, b));
        }
    }
    for a in ["y1", "y2", "y3"] {
        for b in ["x4", "x5"] {
            edges.push((a, b));
        }
    }
    edges.push(("x1", "y1"));
    edges.push(("x4", "y4"));
    let vertices = [
        "x1", "x2", "x3", "x4", "x5", "y1", "y2", "y3", "y4", "y5",
    ];
    Graph::from_labeled(vertices, edges).expect("fixed instance is well formed")
}

pub fn path(n: usize) -> Graph {
    assert!(n >= 1, "path needs at least one vertex");
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path is simple")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least three vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle is simple")
}

pub fn complete(n: usize) -> Graph {
    assert!(n >= 1, "complete graph needs at least one vertex");
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges).expect("complete graph is simple")
}

const REJECTION_BUDGET: usize = 256;

fn check_density(density: f64) -> Result<(), GadgetError> {
    if (0.0..=1.0).contains(&density) {
        Ok(())
    } else {
        Err(GadgetError::InvalidParameter(format!(
            "density {density} outside [0, 1]"
        )))
    }
}

/// Relabels `edges` on `0..n` by a random permutation.
fn shuffled_graph(
    n: usize,
    edges: &[(VertexId, VertexId)],
    rng: &mut ChaCha8Rng,
) -> Result<Graph, GraphError> {
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    let mapped: Vec<_> = edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    Graph::from_edges(n, &mapped)
}

/// Clique-tree growth: each new vertex is joined to a random clique around a
/// random earlier vertex, so it is simplicial when added.
fn grow_chordal(n: usize, density: f64, min_attach: usize, rng: &mut ChaCha8Rng) -> Vec<(VertexId, VertexId)> {
    let mut adj: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
    let mut edges = Vec::new();
    for i in 1..n {
        let w = rng.gen_range(0..i);
        let mut clique = vec![w];
        let mut candidates: Vec<VertexId> = adj[w].iter().copied().collect();
        candidates.shuffle(rng);
        for &y in &candidates {
            if rng.gen_bool(density) && clique.iter().all(|c| adj[*c].contains(&y)) {
                clique.push(y);
            }
        }
        for &y in &candidates {
            if clique.len() >= min_attach.min(i) {
                break;
            }
            if !clique.contains(&y) && clique.iter().all(|c| adj[*c].contains(&y)) {
                clique.push(y);
            }
        }
        for c in clique {
            adj[i].insert(c);
            adj[c].insert(i);
            edges.push((c, i));
        }
    }
    edges
}

fn sample<F>(seed: u64, mut attempt: F) -> Result<Graph, GadgetError>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<Option<Graph>, GadgetError>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REJECTION_BUDGET {
        if let Some(g) = attempt(&mut rng)? {
            return Ok(g);
        }
    }
    Err(GadgetError::RejectionBudget(REJECTION_BUDGET))
}

/// Random connected chordal graph on `n` vertices; larger `density` gives
/// larger attachment cliques.
pub fn random_connected_chordal(n: usize, density: f64, seed: u64) -> Result<Graph, GadgetError> {
    check_density(density)?;
    if n == 0 {
        return Err(GadgetError::InvalidParameter("n must be positive".into()));
    }
    sample(seed, |rng| {
        let edges = grow_chordal(n, density, 1, rng);
        let g = shuffled_graph(n, &edges, rng)?;
        Ok((g.is_connected() && is_chordal(&g)).then_some(g))
    })
}

/// Random biconnected chordal graph: attachment cliques have at least two
/// vertices once possible; every sample is certified and rejected otherwise.
pub fn random_biconnected_chordal(n: usize, density: f64, seed: u64) -> Result<Graph, GadgetError> {
    check_density(density)?;
    if n < 2 {
        return Err(GadgetError::InvalidParameter("n must be at least 2".into()));
    }
    sample(seed, |rng| {
        let edges = grow_chordal(n, density, 2, rng);
        let g = shuffled_graph(n, &edges, rng)?;
        let ok = is_chordal(&g) && cut_vertices_and_blocks(&g)?.cut_vertices.is_empty();
        Ok(ok.then_some(g))
    })
}

/// Random connected graph: a random recursive tree plus each remaining pair
/// independently with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph, GadgetError> {
    check_density(p)?;
    if n == 0 {
        return Err(GadgetError::InvalidParameter("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = BTreeSet::new();
    for i in 1..n {
        present.insert((rng.gen_range(0..i), i));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present.contains(&(u, v)) && rng.gen_bool(p) {
                present.insert((u, v));
            }
        }
    }
    let edges: Vec<_> = present.into_iter().collect();
    Ok(shuffled_graph(n, &edges, &mut rng)?)
}

/// Canonical adjacency code under relabelings that respect a refined degree
/// invariant. Intended for `n <= 8`.
fn canonical_code(n: usize, adj: &[u32]) -> u64 {
    let degree = |v: usize| adj[v].count_ones();
    let invariant: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n)
                .filter(|&w| adj[v] & (1 << w) != 0)
                .map(degree)
                .collect();
            nd.sort_unstable();
            (degree(v), nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| invariant[a].cmp(&invariant[b]));
    // cells of equal invariant, in invariant order
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(cell) if invariant[cell[0]] == invariant[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut placement = Vec::with_capacity(n);
    permute_cells(&cells, 0, &mut placement, &mut |placed: &[usize]| {
        let mut code = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                code <<= 1;
                if adj[placed[i]] & (1 << placed[j]) != 0 {
                    code |= 1;
                }
            }
        }
        best = best.min(code);
    });
    best
}

fn permute_cells(
    cells: &[Vec<usize>],
    idx: usize,
    placed: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if idx == cells.len() {
        visit(placed);
        return;
    }
    let mut cell = cells[idx].clone();
    let len = cell.len();
    heap_permutations(&mut cell, len, &mut |perm: &[usize]| {
        let mark = placed.len();
        placed.extend_from_slice(perm);
        permute_cells(cells, idx + 1, placed, visit);
        placed.truncate(mark);
    });
}

fn heap_permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, visit);
        let swap = if k.is_multiple_of(2) { i } else { 0 };
        items.swap(swap, k - 1);
    }
}

/// All connected graphs on `n` vertices (`1 <= n <= 8`), one per
/// isomorphism class, in a deterministic order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n), "exhaustive generation supports 1..=8 vertices");
    // adjacency rows as bit sets; grow by attaching a vertex to a nonempty
    // neighbor set, since every connected graph has a non-cut vertex
    let mut level: Vec<Vec<u32>> = vec![vec![0]];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for base in &level {
            for nb in 1u32..(1 << (size - 1)) {
                let mut adj = base.clone();
                adj.push(nb);
                for (w, row) in adj.iter_mut().enumerate().take(size - 1) {
                    if nb & (1 << w) != 0 {
                        *row |= 1 << (size - 1);
                    }
                }
                if seen.insert(canonical_code(size, &adj)) {
                    next.push(adj);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|adj| {
            let edges: Vec<_> = (0..n)
                .flat_map(|u| {
                    let row = adj[u];
                    (u + 1..n).filter(move |&v| row & (1 << v) != 0).map(move |v| (u, v))
                })
                .collect();
            Graph::from_edges(n, &edges).expect("generated graphs are simple")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        every_block_locally_connected, is_locally_connected,
    };
    use crate::vc::{mvc_exact, Limits};

    fn mvc(g: &Graph) -> usize {
        mvc_exact(g, &Limits::default()).unwrap().size
    }

    fn single_face(g: &Graph) -> PlanarEmbedding {
        let face: Vec<VertexId> = g.vertices().collect();
        PlanarEmbedding {
            internal_faces: vec![face.clone()],
            outer_face: face,
        }
    }

    #[test]
    fn universal_vertex() {
        let out = add_universal_vertex(&path(3)).unwrap();
        assert_eq!((mvc(&path(3)), mvc(&out.graph)), (1, 2));
        assert!(is_locally_connected(&out.graph));
        let out = add_universal_vertex(&cycle(5)).unwrap();
        assert_eq!(mvc(&out.graph), 4);
        let out = add_universal_vertex(&path(1)).unwrap();
        assert_eq!(out.graph.n(), 2);
        assert_eq!(mvc(&out.graph), 1);
        assert_eq!(out.size_identity.expected(0), 1);
    }

    #[test]
    fn split_indices_in_range() {
        for t in 4..40 {
            let (i, j) = split_indices(t);
            assert!(2 <= i && i < j && j <= t, "t={t}: {i},{j}");
        }
        assert_eq!(split_indices(4), (2, 3));
    }

    #[test]
    fn triangulated_cycles() {
        let c4 = cycle(4);
        let out = triangulate_faces(&c4, &single_face(&c4)).unwrap();
        assert_eq!(out.graph.n(), 8);
        assert_eq!(mvc(&out.graph), 5);
        assert_eq!(out.size_identity.to_string(), "k+3");
        let c6 = cycle(6);
        let out = triangulate_faces(&c6, &single_face(&c6)).unwrap();
        assert_eq!(mvc(&out.graph), 6);
        assert!(every_block_locally_connected(&out.graph).unwrap());
        assert!(cut_vertices_and_blocks(&out.graph).unwrap().cut_vertices.is_empty());
    }

    #[test]
    fn triangles_are_left_alone() {
        let k4 = complete(4);
        let emb = PlanarEmbedding {
            internal_faces: vec![vec![0, 1, 3], vec![1, 2, 3], vec![0, 3, 2]],
            outer_face: vec![0, 1, 2],
        };
        let out = triangulate_faces(&k4, &emb).unwrap();
        assert_eq!(out.graph, k4);
        assert!(out.new_vertices.is_empty());
        assert_eq!(out.size_identity.offset, 0);
    }

    #[test]
    fn malformed_face_rejected() {
        let c4 = cycle(4);
        let emb = PlanarEmbedding {
            internal_faces: vec![vec![0, 2, 1, 3]],
            outer_face: vec![0, 1, 2, 3],
        };
        assert_eq!(
            triangulate_faces(&c4, &emb).unwrap_err(),
            GadgetError::NotACycle { face: 0 }
        );
    }

    #[test]
    fn doubled_cliques() {
        let out = double_and_join(&complete(3), (0, 1)).unwrap();
        assert_eq!(out.graph.n(), 10);
        assert_eq!(mvc(&out.graph), 7);
        assert!(every_block_locally_connected(&out.graph).unwrap());
        let out = double_and_join(&complete(4), (0, 1)).unwrap();
        assert_eq!(mvc(&out.graph), 9);
        assert!(matches!(
            double_and_join(&path(3), (0, 2)),
            Err(GadgetError::NotAnEdge(..))
        ));
    }

    #[test]
    fn fig4_shape() {
        let g = fig4_instance();
        assert_eq!((g.n(), g.m()), (10, 14));
        assert_eq!(g.degree(g.vertex("x1").unwrap()), 3);
        assert_eq!(g.degree(g.vertex("x2").unwrap()), 2);
        assert!(cut_vertices_and_blocks(&g).unwrap().cut_vertices.is_empty());
        // bipartite: every edge joins an x to a y
        assert!(g
            .edges()
            .all(|(u, v)| g.label(u).starts_with('x') != g.label(v).starts_with('x')));
        assert_eq!(mvc(&g), 5);
    }

    #[test]
    fn simple_generators() {
        assert_eq!(cycle(5).m(), 5);
        assert_eq!(path(2), complete(2));
        assert_eq!(complete(5).m(), 10);
    }

    #[test]
    fn random_chordal_generators() {
        let g = random_biconnected_chordal(10, 0.4, 7).unwrap();
        assert_eq!(g.n(), 10);
        assert!(is_chordal(&g));
        assert!(cut_vertices_and_blocks(&g).unwrap().cut_vertices.is_empty());
        assert_eq!(g, random_biconnected_chordal(10, 0.4, 7).unwrap());
        for seed in 0..20 {
            let g = random_connected_chordal(9, 0.3, seed).unwrap();
            assert!(g.is_connected() && is_chordal(&g));
        }
        assert!(random_connected_chordal(5, 1.5, 0).is_err());
    }

    #[test]
    fn isomorphism_class_counts() {
        // OEIS A001349
        let counts: Vec<usize> = (1..=7).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    }
}
