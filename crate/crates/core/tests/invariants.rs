use evc_core::characterize::exhaustive_class_f;
use evc_core::gadgets::{connected_graphs, random_connected};
use evc_core::graph::{
    cut_vertices_and_blocks, every_block_locally_connected, is_chordal, parse_graph, InputFormat,
};
use evc_core::vc::{mvc_chordal, mvc_exact, Limits};
use evc_core::{Graph, VertexSet};

fn pool() -> Vec<Graph> {
    let mut graphs: Vec<Graph> = (1..=6).flat_map(connected_graphs).collect();
    graphs.extend((0..60).map(|i| random_connected(3 + i % 8, 0.35, 77 + i as u64).unwrap()));
    graphs
}

fn components_without(g: &Graph, v: usize) -> usize {
    g.without(&VertexSet::singleton(v)).0.components().len()
}

/// Cycles of length >= 4 without chords, by DFS over simple paths.
fn has_induced_long_cycle(g: &Graph) -> bool {
    fn extend(g: &Graph, path: &mut Vec<usize>) -> bool {
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w < path[0] || path.contains(&w) {
                continue;
            }
            // w may touch only `last` among interior path vertices
            let chord = path.len() > 1 && path[1..path.len() - 1].iter().any(|&p| g.has_edge(p, w));
            if chord {
                continue;
            }
            path.push(w);
            if path.len() >= 4 && g.has_edge(w, path[0]) && !g.has_edge(path[1], w) {
                return true;
            }
            if (path.len() == 2 || !g.has_edge(w, path[0])) && extend(g, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    g.vertices().any(|s| extend(g, &mut vec![s]))
}

#[test]
fn cut_vertices_match_removal() {
    for g in pool() {
        if g.n() < 2 {
            continue;
        }
        let cut = cut_vertices_and_blocks(&g).unwrap().cut_vertices;
        for v in g.vertices() {
            assert_eq!(cut.contains(v), components_without(&g, v) > 1, "{}", g.to_edge_list());
        }
    }
}

#[test]
fn blocks_partition_edges() {
    for g in pool() {
        let dec = cut_vertices_and_blocks(&g).unwrap();
        let mut covered = 0;
        for b in &dec.blocks {
            let (h, _) = g.induced(b);
            covered += h.m();
            if h.n() > 2 {
                assert!(h.vertices().all(|v| components_without(&h, v) == 1));
            }
        }
        assert_eq!(covered, g.m());
    }
}

#[test]
fn chordality_matches_cycle_search() {
    for g in pool() {
        assert_eq!(is_chordal(&g), !has_induced_long_cycle(&g), "{}", g.to_edge_list());
    }
}

#[test]
fn chordal_engine_matches_exact() {
    let limits = Limits::default();
    for g in pool().into_iter().filter(is_chordal) {
        let fast = mvc_chordal(&g).unwrap();
        assert_eq!(fast.size, mvc_exact(&g, &limits).unwrap().size);
        assert!(evc_core::graph::is_vertex_cover(&g, &fast.cover));
    }
}

#[test]
fn locally_connected_blocks_give_class_f() {
    let limits = Limits::default();
    for g in pool().into_iter().filter(|g| g.n() >= 2) {
        if every_block_locally_connected(&g).unwrap() {
            assert!(exhaustive_class_f(&g, &limits).unwrap(), "{}", g.to_edge_list());
        }
    }
}

#[test]
fn serialization_round_trips() {
    for g in pool().into_iter().filter(|g| g.m() > 0) {
        let from_json = parse_graph(&g.to_json(), InputFormat::Json).unwrap();
        assert_eq!(from_json.labels(), g.labels());
        assert_eq!(from_json.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        let from_list = parse_graph(&g.to_edge_list(), InputFormat::EdgeList).unwrap();
        assert_eq!(from_list.m(), g.m());
        for (a, b) in g.edges() {
            let a2 = from_list.vertex(g.label(a)).unwrap();
            let b2 = from_list.vertex(g.label(b)).unwrap();
            assert!(from_list.has_edge(a2, b2));
        }
    }
}
