//! Per-round guard movement.
//!
//! Two strategies are implemented:
//!
//! * **hall-equal** (`evc = mvc`): guards always sit on a minimum cover that
//!   contains every cut vertex. After an attack on `uv` with `v` unguarded,
//!   the next configuration is a minimum cover containing the cut vertices
//!   and `v`, refined along alternating paths until the bipartite graph
//!   between the vacated and newly occupied vertices has the perfect
//!   matchings the movement needs.
//! * **connected-plus-one** (`evc = mvc + 1`, biconnected): guards occupy a
//!   fixed connected minimum cover `S` plus one extra vertex, and an attack
//!   is answered by shifting guards along a path inside `S`.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::characterize::{decide_evc_equals_mvc, CharError, CharReport, ClassFEvidence, Verdict};
use crate::game::MoveSet;
use crate::graph::{
    cut_vertices_and_blocks, induces_connected, is_vertex_cover, Graph, GraphError, VertexId,
    VertexSet,
};
use crate::matching::Bipartite;
use crate::vc::{mvc_forced, Engine, Limits, SolverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefenseError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("no certified strategy for this instance (verdict {0:?})")]
    NotCertifiable(Verdict),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("invalid starting configuration: {0}")]
    InvalidStart(String),
    #[error("attack at round {round} cannot be defended: {reason}")]
    DefenseImpossible { round: usize, reason: String },
    #[error("strategy contract violated: {0}")]
    Contract(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyMode {
    HallEqual,
    ConnectedPlusOne,
}

/// One repair of the candidate configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementStep {
    pub candidate: VertexSet,
    pub violator: VertexId,
    pub deficient: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementTrace {
    pub iterations: Vec<RefinementStep>,
    pub final_config: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub attack: (VertexId, VertexId),
    pub moves: MoveSet,
    pub config: VertexSet,
}

impl RoundRecord {
    /// `{"round":r,"attack":[u,v],"moves":[[f,t],...],"config":[...]}` with
    /// vertex labels.
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({
            "round": self.round,
            "attack": [g.label(self.attack.0), g.label(self.attack.1)],
            "moves": self.moves.moves.iter()
                .map(|&(f, t)| [g.label(f), g.label(t)])
                .collect::<Vec<_>>(),
            "config": self.config.labels(g),
        })
    }
}

#[derive(Debug, Clone)]
pub struct DefenseSession {
    pub graph: Graph,
    pub mode: StrategyMode,
    pub cut_vertices: VertexSet,
    pub config: VertexSet,
    pub extra_vertex: Option<VertexId>,
    pub base_cover: Option<VertexSet>,
    pub round: usize,
    pub log: Vec<RoundRecord>,
    pub mvc: usize,
    pub report: CharReport,
    /// Largest refinement iteration count seen so far.
    pub max_refinements: usize,
    engine: Engine,
    limits: Limits,
}

fn mode_for(report: &CharReport) -> Result<StrategyMode, DefenseError> {
    match report.verdict {
        Verdict::EvcEqualsMvc => Ok(StrategyMode::HallEqual),
        Verdict::EvcEqualsMvcPlusOne if report.cut_vertices.is_empty() => {
            Ok(StrategyMode::ConnectedPlusOne)
        }
        v => Err(DefenseError::NotCertifiable(v)),
    }
}

impl DefenseSession {
    /// Starts a session in the mode certified by the characterization, from
    /// a deterministic starting configuration.
    pub fn new(
        g: &Graph,
        evidence: ClassFEvidence,
        engine: Engine,
        limits: &Limits,
    ) -> Result<Self, DefenseError> {
        let report = decide_evc_equals_mvc(g, evidence, engine, limits)?;
        let mode = mode_for(&report)?;
        let cut = report.cut_vertices.clone();
        let (config, base, extra) = match mode {
            StrategyMode::HallEqual => (mvc_forced(g, &cut, engine, limits)?.cover, None, None),
            StrategyMode::ConnectedPlusOne => {
                let base = mvc_forced(g, &VertexSet::new(), engine, limits)?.cover;
                let extra = g
                    .vertices()
                    .find(|&v| !base.contains(v))
                    .expect("a minimum cover of a connected graph misses a vertex");
                let mut config = base.clone();
                config.insert(extra);
                (config, Some(base), Some(extra))
            }
        };
        let session = DefenseSession {
            graph: g.clone(),
            mode,
            cut_vertices: cut,
            config,
            extra_vertex: extra,
            base_cover: base,
            round: 0,
            log: Vec::new(),
            mvc: report.mvc,
            report,
            max_refinements: 0,
            engine,
            limits: *limits,
        };
        session.check_invariants()?;
        Ok(session)
    }

    /// Like [`DefenseSession::new`] but starting from `start`, which must
    /// satisfy the mode's round invariant.
    pub fn with_start(
        g: &Graph,
        evidence: ClassFEvidence,
        start: VertexSet,
        engine: Engine,
        limits: &Limits,
    ) -> Result<Self, DefenseError> {
        let mut session = Self::new(g, evidence, engine, limits)?;
        match session.mode {
            StrategyMode::HallEqual => session.config = start,
            StrategyMode::ConnectedPlusOne => {
                let extra = start
                    .iter()
                    .find(|&z| {
                        let mut base = start.clone();
                        base.remove(z);
                        base.len() == session.mvc
                            && is_vertex_cover(g, &base)
                            && induces_connected(g, &base)
                    })
                    .ok_or_else(|| {
                        DefenseError::InvalidStart(
                            "not a connected minimum cover plus one vertex".into(),
                        )
                    })?;
                let mut base = start.clone();
                base.remove(extra);
                session.base_cover = Some(base);
                session.extra_vertex = Some(extra);
                session.config = start;
            }
        }
        session
            .check_invariants()
            .map_err(|e| DefenseError::InvalidStart(e.to_string()))?;
        Ok(session)
    }

    fn check_invariants(&self) -> Result<(), DefenseError> {
        let g = &self.graph;
        match self.mode {
            StrategyMode::HallEqual => {
                if self.config.len() != self.mvc
                    || !is_vertex_cover(g, &self.config)
                    || !self.cut_vertices.is_subset(&self.config)
                {
                    return Err(DefenseError::Contract(format!(
                        "{} is not a minimum cover containing the cut vertices",
                        self.config
                    )));
                }
            }
            StrategyMode::ConnectedPlusOne => {
                let (Some(base), Some(extra)) = (&self.base_cover, self.extra_vertex) else {
                    return Err(DefenseError::Contract("missing base cover".into()));
                };
                let mut expected = base.clone();
                if base.contains(extra) || !expected.insert(extra) || expected != self.config {
                    return Err(DefenseError::Contract(
                        "configuration is not base cover plus one extra vertex".into(),
                    ));
                }
                if base.len() != self.mvc || !is_vertex_cover(g, base) || !induces_connected(g, base)
                {
                    return Err(DefenseError::Contract(
                        "base is not a connected minimum cover".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Answers an attack on the edge `{a, b}`, updating the configuration
    /// and appending to the log.
    pub fn defend(&mut self, attack: (VertexId, VertexId)) -> Result<&RoundRecord, DefenseError> {
        let (a, b) = attack;
        if !self.graph.has_edge(a, b) {
            return Err(DefenseError::NotAnEdge(a, b));
        }
        let round = self.round + 1;
        let impossible = |e: DefenseError| match e {
            DefenseError::DefenseImpossible { reason, .. } => {
                DefenseError::DefenseImpossible { round, reason }
            }
            other => DefenseError::DefenseImpossible {
                round,
                reason: other.to_string(),
            },
        };
        let (moves, next, extra) = match self.mode {
            StrategyMode::HallEqual => {
                let (moves, next) = self.hall_round(attack, round).map_err(impossible)?;
                (moves, next, None)
            }
            StrategyMode::ConnectedPlusOne => {
                let (moves, next, extra) = moves_plus_one(self, attack).map_err(impossible)?;
                (moves, next, Some(extra))
            }
        };
        if !verify_moveset(&self.graph, &self.config, &next, &moves, attack) {
            return Err(DefenseError::Contract(format!(
                "generated moves {:?} fail validation",
                moves.moves
            )));
        }
        self.config = next;
        if extra.is_some() {
            self.extra_vertex = extra;
        }
        self.check_invariants()?;
        self.round = round;
        self.log.push(RoundRecord {
            round,
            attack,
            moves,
            config: self.config.clone(),
        });
        Ok(self.log.last().expect("just pushed"))
    }

    fn hall_round(
        &mut self,
        (a, b): (VertexId, VertexId),
        round: usize,
    ) -> Result<(MoveSet, VertexSet), DefenseError> {
        let s_i = self.config.clone();
        if s_i.contains(a) && s_i.contains(b) {
            return Ok((swap_moves(&s_i, a, b), s_i));
        }
        let (u, v) = if s_i.contains(a) { (a, b) } else { (b, a) };
        let mut forced = self.cut_vertices.clone();
        forced.insert(v);
        let candidate = mvc_forced(&self.graph, &forced, self.engine, &self.limits)?;
        if candidate.size != self.mvc {
            return Err(DefenseError::DefenseImpossible {
                round,
                reason: format!(
                    "no minimum cover contains the cut vertices and {}",
                    self.graph.label(v)
                ),
            });
        }
        let trace = refine_candidate(&self.graph, &s_i, &candidate.cover, v, &self.cut_vertices)?;
        self.max_refinements = self.max_refinements.max(trace.iterations.len());
        let moves = moves_hall_equal(&self.graph, &s_i, &trace.final_config, (u, v))?;
        Ok((moves, trace.final_config))
    }

    /// Bound on the exact eternal vertex cover number known for this session.
    pub fn evc_bound(&self) -> (usize, usize) {
        if self.cut_vertices.is_empty() {
            (self.mvc, self.mvc + 1)
        } else {
            (self.mvc, self.mvc)
        }
    }
}

fn swap_moves(config: &VertexSet, a: VertexId, b: VertexId) -> MoveSet {
    MoveSet::new(
        config
            .iter()
            .map(|x| match x {
                x if x == a => (a, b),
                x if x == b => (b, a),
                x => (x, x),
            })
            .collect(),
    )
}

/// Perfect matching from `from` onto `to` along graph edges, or `None`.
fn match_sides(g: &Graph, from: &[VertexId], to: &[VertexId]) -> Option<Vec<(VertexId, VertexId)>> {
    let adjacency = from
        .iter()
        .map(|&x| {
            to.iter()
                .enumerate()
                .filter(|&(_, &y)| g.has_edge(x, y))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let m = Bipartite::new(adjacency, to.len()).maximum_matching();
    (m.is_left_perfect() && from.len() == to.len()).then(|| {
        m.left_to_right
            .iter()
            .enumerate()
            .map(|(i, r)| (from[i], to[r.expect("perfect")]))
            .collect()
    })
}

/// Repairs the candidate `s_prime` until, for every vacated vertex `x`, the
/// bipartite graph between vacated and newly occupied vertices minus
/// `{x, v}` has a perfect matching. Each repair swaps in the deficient side
/// of a Hall violator found along alternating paths, which strictly shrinks
/// the symmetric difference with `s_i`.
pub fn refine_candidate(
    g: &Graph,
    s_i: &VertexSet,
    s_prime: &VertexSet,
    v: VertexId,
    x_set: &VertexSet,
) -> Result<RefinementTrace, DefenseError> {
    if s_i.contains(v) || !s_prime.contains(v) {
        return Err(DefenseError::Contract(
            "attacked endpoint must be new in the candidate".into(),
        ));
    }
    if s_i.len() != s_prime.len() || !x_set.is_subset(s_i) || !x_set.is_subset(s_prime) {
        return Err(DefenseError::Contract(
            "configurations must be equal-size covers containing the forced set".into(),
        ));
    }
    let mut candidate = s_prime.clone();
    let mut iterations = Vec::new();
    'repair: loop {
        if iterations.len() >= g.n() {
            return Err(DefenseError::Contract(format!(
                "refinement did not settle within {} iterations",
                g.n()
            )));
        }
        let kept = s_i.intersection(&candidate);
        let vacated = s_i.difference(&candidate);
        let entered = candidate.difference(s_i);
        for x in vacated.iter() {
            let left: Vec<VertexId> = entered.iter().filter(|&y| y != v).collect();
            let right: Vec<VertexId> = vacated.iter().filter(|&w| w != x).collect();
            let adjacency = left
                .iter()
                .map(|&y| {
                    right
                        .iter()
                        .enumerate()
                        .filter(|&(_, &w)| g.has_edge(y, w))
                        .map(|(j, _)| j)
                        .collect()
                })
                .collect();
            let h = Bipartite::new(adjacency, right.len());
            let m = h.maximum_matching();
            let Some(free) = (0..left.len()).find(|&l| m.left_to_right[l].is_none()) else {
                continue;
            };
            let (deficient_idx, nbhd_idx) = h.hall_violator(&m, free);
            let deficient: VertexSet = deficient_idx.iter().map(|&l| left[l]).collect();
            let nbhd: VertexSet = nbhd_idx.iter().map(|&r| right[r]).collect();
            let mut next = kept.union(&entered.difference(&deficient)).union(&nbhd);
            next.insert(x);
            if next.len() != candidate.len() || !is_vertex_cover(g, &next) {
                return Err(DefenseError::Contract(format!(
                    "repaired candidate {next} is not a minimum cover"
                )));
            }
            if next.symmetric_difference_len(s_i) >= candidate.symmetric_difference_len(s_i) {
                return Err(DefenseError::Contract(
                    "symmetric difference did not decrease".into(),
                ));
            }
            iterations.push(RefinementStep {
                candidate: std::mem::replace(&mut candidate, next),
                violator: x,
                deficient,
            });
            continue 'repair;
        }
        return Ok(RefinementTrace {
            iterations,
            final_config: candidate,
        });
    }
}

/// Breadth-first path from `start` to the first vertex satisfying `is_goal`,
/// moving only through vertices accepted by `allowed`. Neighbors are
/// expanded in increasing id order.
fn bfs_path(
    g: &Graph,
    start: VertexId,
    allowed: impl Fn(VertexId) -> bool,
    is_goal: impl Fn(VertexId) -> bool,
) -> Option<Vec<VertexId>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if parent[y] != usize::MAX || !(allowed(y) || is_goal(y)) {
                continue;
            }
            parent[y] = x;
            if is_goal(y) {
                let mut path = vec![y];
                let mut cur = y;
                while cur != start {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(y);
        }
    }
    None
}

/// Moves from `s_i` to `s_j` answering the attack `(u, v)` with `u` guarded.
/// If `u` leaves, its guard crosses to `v` and the other vacated vertices
/// are matched onto the new ones. If `u` is kept, guards shift along a
/// shortest path from a vacated vertex to `u` through kept vertices.
pub fn moves_hall_equal(
    g: &Graph,
    s_i: &VertexSet,
    s_j: &VertexSet,
    (u, v): (VertexId, VertexId),
) -> Result<MoveSet, DefenseError> {
    if !g.has_edge(u, v) {
        return Err(DefenseError::NotAnEdge(u, v));
    }
    if s_i.contains(u) && s_i.contains(v) {
        return Ok(swap_moves(s_i, u, v));
    }
    if !s_i.contains(u) || !s_j.contains(v) || s_i.contains(v) {
        return Err(DefenseError::Contract(
            "attack must run from a guarded vertex to a newly occupied one".into(),
        ));
    }
    let kept = s_i.intersection(s_j);
    let vacated = s_i.difference(s_j);
    let entered = s_j.difference(s_i);
    let mut moves: Vec<(VertexId, VertexId)>;
    let source = if vacated.contains(u) {
        moves = vec![(u, v)];
        moves.extend(kept.iter().map(|t| (t, t)));
        u
    } else {
        let path = bfs_path(g, u, |y| kept.contains(y), |y| vacated.contains(y)).ok_or_else(|| {
            DefenseError::DefenseImpossible {
                round: 0,
                reason: format!(
                    "no path from a vacated vertex to {} inside the current cover",
                    g.label(u)
                ),
            }
        })?;
        // path = (u = z_t, ..., z_1, x); guards shift one step toward u
        let x = *path.last().expect("nonempty path");
        moves = vec![(u, v)];
        moves.extend(path.windows(2).map(|w| (w[1], w[0])));
        let on_path: VertexSet = path.iter().copied().collect();
        moves.extend(kept.iter().filter(|t| !on_path.contains(*t)).map(|t| (t, t)));
        x
    };
    let from: Vec<VertexId> = vacated.iter().filter(|&w| w != source).collect();
    let to: Vec<VertexId> = entered.iter().filter(|&w| w != v).collect();
    let matched = match_sides(g, &from, &to).ok_or_else(|| DefenseError::DefenseImpossible {
        round: 0,
        reason: "vacated and entered vertices admit no perfect matching".into(),
    })?;
    moves.extend(matched);
    Ok(MoveSet::new(moves))
}

/// Shifting strategy for `evc = mvc + 1`: keep the base cover `S` guarded
/// and move the extra guard toward the attack along a path inside `S`.
/// Returns the moves, the new configuration and the new extra vertex.
pub fn moves_plus_one(
    session: &DefenseSession,
    (a, b): (VertexId, VertexId),
) -> Result<(MoveSet, VertexSet, VertexId), DefenseError> {
    let (Some(base), Some(extra)) = (&session.base_cover, session.extra_vertex) else {
        return Err(DefenseError::Contract(
            "session is not in connected-plus-one mode".into(),
        ));
    };
    let g = &session.graph;
    let config = &session.config;
    if !g.has_edge(a, b) {
        return Err(DefenseError::NotAnEdge(a, b));
    }
    if config.contains(a) && config.contains(b) {
        return Ok((swap_moves(config, a, b), config.clone(), extra));
    }
    let (u, v) = if config.contains(a) { (a, b) } else { (b, a) };
    if !base.contains(u) {
        return Err(DefenseError::Contract(
            "base cover leaves an edge uncovered".into(),
        ));
    }
    let path = bfs_path(g, u, |y| base.contains(y), |y| y == extra).ok_or_else(|| {
        DefenseError::Contract("base cover is not connected".into())
    })?;
    // path = (u, ..., s_0, z)
    let on_path: VertexSet = path.iter().copied().collect();
    let mut moves = vec![(u, v)];
    moves.extend(path.windows(2).map(|w| (w[1], w[0])));
    moves.extend(config.iter().filter(|w| !on_path.contains(*w)).map(|w| (w, w)));
    let mut next = base.clone();
    next.insert(v);
    Ok((MoveSet::new(moves), next, v))
}

/// Independent validator: `moves` is a bijection from `s` onto `t`, each
/// guard stays or crosses one edge, some guard crosses the attacked edge,
/// and `t` is a vertex cover.
pub fn verify_moveset(
    g: &Graph,
    s: &VertexSet,
    t: &VertexSet,
    moves: &MoveSet,
    attack: (VertexId, VertexId),
) -> bool {
    let mut sources: Vec<VertexId> = moves.moves.iter().map(|m| m.0).collect();
    let mut targets: Vec<VertexId> = moves.moves.iter().map(|m| m.1).collect();
    sources.sort_unstable();
    targets.sort_unstable();
    let distinct = targets.windows(2).all(|w| w[0] != w[1]);
    let (a, b) = attack;
    sources.as_slice() == s.as_slice()
        && distinct
        && targets.as_slice() == t.as_slice()
        && moves
            .moves
            .iter()
            .all(|&(f, to)| f == to || g.has_edge(f, to))
        && g.has_edge(a, b)
        && moves.moves.iter().any(|&m| m == (a, b) || m == (b, a))
        && g.edges().all(|(x, y)| t.contains(x) || t.contains(y))
}

/// Cut vertices of a connected graph.
pub fn cut_vertices(g: &Graph) -> Result<VertexSet, DefenseError> {
    Ok(cut_vertices_and_blocks(g)?.cut_vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characterize::ClassFEvidence;
    use crate::gadgets::{complete, cycle, fig4_instance, path};
    use crate::graph::{parse_graph, InputFormat};
    use rand::{Rng, SeedableRng};

    const EV: ClassFEvidence = ClassFEvidence::EveryBlockLocallyConnected;

    fn lim() -> Limits {
        Limits::default()
    }

    fn diamond() -> Graph {
        parse_graph("a b\na c\nb c\na d\nb d", InputFormat::EdgeList).unwrap()
    }

    #[test]
    fn session_modes() {
        let s = DefenseSession::new(&complete(4), EV, Engine::Exact, &lim()).unwrap();
        assert_eq!(s.mode, StrategyMode::HallEqual);
        assert_eq!(s.config, VertexSet::from([0, 1, 2]));

        let s = DefenseSession::new(&diamond(), EV, Engine::Exact, &lim()).unwrap();
        assert_eq!(s.mode, StrategyMode::ConnectedPlusOne);
        assert_eq!(s.base_cover, Some(VertexSet::from([0, 1])));
        assert_eq!(s.extra_vertex, Some(2));

        let s = DefenseSession::new(&path(2), EV, Engine::Exact, &lim()).unwrap();
        assert_eq!(s.mode, StrategyMode::HallEqual);
        assert_eq!(s.config, VertexSet::from([0]));

        assert!(matches!(
            DefenseSession::new(&path(4), EV, Engine::Exact, &lim()),
            Err(DefenseError::NotCertifiable(Verdict::EvcExceedsMvc))
        ));
        assert!(matches!(
            DefenseSession::new(&fig4_instance(), ClassFEvidence::Unknown, Engine::Exact, &lim()),
            Err(DefenseError::NotCertifiable(Verdict::Undetermined))
        ));
    }

    #[test]
    fn refinement_examples() {
        let c4 = parse_graph("a b\nb c\nc d\nd a", InputFormat::EdgeList).unwrap();
        let s_i = VertexSet::from([0, 2]);
        let t = refine_candidate(&c4, &s_i, &VertexSet::from([1, 3]), 1, &VertexSet::new()).unwrap();
        assert!(t.iterations.is_empty());
        assert_eq!(t.final_config, VertexSet::from([1, 3]));
        let m = moves_hall_equal(&c4, &s_i, &t.final_config, (0, 1)).unwrap();
        assert_eq!(m.moves, vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn clique_moves() {
        let k4 = complete(4);
        let s_i = VertexSet::from([0, 1, 2]);
        let s_j = VertexSet::from([0, 1, 3]);
        let m = moves_hall_equal(&k4, &s_i, &s_j, (2, 3)).unwrap();
        assert_eq!(m.moves, vec![(0, 0), (1, 1), (2, 3)]);
        let m = moves_hall_equal(&k4, &s_i, &s_i, (0, 1)).unwrap();
        assert_eq!(m.moves, vec![(0, 1), (1, 0), (2, 2)]);
        assert!(verify_moveset(&k4, &s_i, &s_i, &m, (0, 1)));
    }

    #[test]
    fn pool_rounds_exercise_both_cases() {
        let mut kept_attacker = 0;
        for n in 2..=6 {
            for g in crate::gadgets::connected_graphs(n) {
                let ev = crate::characterize::class_f_membership(
                    &g,
                    crate::characterize::MembershipMode::Sufficient,
                    &lim(),
                )
                .unwrap();
                let Ok(mut s) = DefenseSession::new(&g, ev, Engine::Exact, &lim()) else {
                    continue;
                };
                let edges: Vec<_> = g.edges().collect();
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n as u64);
                for _ in 0..200 {
                    let (a, b) = edges[rng.gen_range(0..edges.len())];
                    let before = s.config.clone();
                    let rec = s.defend((a, b)).unwrap().clone();
                    assert!(verify_moveset(&g, &before, &rec.config, &rec.moves, (a, b)));
                    let u = if before.contains(a) { a } else { b };
                    let v = if u == a { b } else { a };
                    if s.mode == StrategyMode::HallEqual
                        && !before.contains(v)
                        && rec.config.contains(u)
                    {
                        kept_attacker += 1;
                    }
                }
                assert!(s.max_refinements < g.n());
            }
        }
        assert!(kept_attacker > 0);
    }

    #[test]
    fn plus_one_examples() {
        let g = diamond();
        let mut s = DefenseSession::new(&g, EV, Engine::Exact, &lim()).unwrap();
        // config {a,b,c}; attack (b,d)
        let rec = s.defend((1, 3)).unwrap().clone();
        assert_eq!(rec.config, VertexSet::from([0, 1, 3]));
        assert_eq!(s.extra_vertex, Some(3));
        assert!(rec.moves.moves.contains(&(1, 3)));
        // attack inside S
        let rec = s.defend((0, 1)).unwrap().clone();
        assert_eq!(rec.config, VertexSet::from([0, 1, 3]));
        assert_eq!(rec.moves.moves, vec![(0, 1), (1, 0), (3, 3)]);
        // attack (u, z) with z the extra vertex
        let rec = s.defend((1, 3)).unwrap().clone();
        assert_eq!(rec.moves.moves, vec![(0, 0), (1, 3), (3, 1)]);
        assert_eq!(s.round, 3);
    }

    #[test]
    fn validator_rejects_bad_moves() {
        let k3 = complete(3);
        let s = VertexSet::from([0, 1]);
        let collide = MoveSet::new(vec![(0, 2), (1, 2)]);
        assert!(!verify_moveset(&k3, &s, &VertexSet::from([2]), &collide, (0, 2)));
        let no_cross = MoveSet::new(vec![(0, 0), (1, 2)]);
        assert!(!verify_moveset(&k3, &s, &VertexSet::from([0, 2]), &no_cross, (0, 1)));
        assert!(verify_moveset(&k3, &s, &VertexSet::from([0, 2]), &no_cross, (1, 2)));
    }

    #[test]
    fn random_rounds_on_k5() {
        let g = complete(5);
        let mut s = DefenseSession::new(&g, EV, Engine::Exact, &lim()).unwrap();
        let edges: Vec<_> = g.edges().collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let e = edges[rng.gen_range(0..edges.len())];
            let rec = s.defend(e).unwrap();
            assert_eq!(rec.config.len(), 4);
        }
        assert_eq!(s.log.len(), 1000);
    }

    #[test]
    fn cycle_rotation() {
        let g = cycle(6);
        let mut s = DefenseSession::new(&g, ClassFEvidence::Assumed, Engine::Exact, &lim()).unwrap();
        assert_eq!(s.config, VertexSet::from([0, 2, 4]));
        // C_6 min covers are the two alternating sets, disconnected; the
        // rotation still works since every guard moves
        let rec = s.defend((0, 1)).unwrap().clone();
        assert_eq!(rec.config, VertexSet::from([1, 3, 5]));
    }

    #[test]
    fn fig4_scripted_failure() {
        let g = fig4_instance();
        let id = |l: &str| g.vertex(l).unwrap();
        let start: VertexSet = ["y1", "y2", "y3", "y4", "y5"].iter().map(|l| id(l)).collect();
        let mut s =
            DefenseSession::with_start(&g, ClassFEvidence::Assumed, start, Engine::Exact, &lim())
                .unwrap();
        let rec = s.defend((id("y4"), id("x2"))).unwrap();
        assert_eq!(rec.config.labels(&g), ["x1", "x2", "x3", "x4", "x5"]);
        assert!(!g.has_edge(id("x5"), id("y5")));
        // the text names the edge x5 y5, which the described construction does
        // not contain; x1 y5 is the attack whose only answers keep x1 guarded
        let err = s.defend((id("x1"), id("y5"))).unwrap_err();
        assert!(matches!(err, DefenseError::DefenseImpossible { round: 2, .. }), "{err}");
        assert_eq!(s.round, 1);
    }

    #[test]
    fn round_log_json() {
        let g = complete(3);
        let mut s = DefenseSession::new(&g, EV, Engine::Exact, &lim()).unwrap();
        let rec = s.defend((1, 2)).unwrap().clone();
        let v = rec.to_json(&g);
        assert_eq!(v["round"], 1);
        assert_eq!(v["attack"], serde_json::json!(["1", "2"]));
        assert_eq!(v["config"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn non_edges_are_rejected() {
        let mut s = DefenseSession::new(&cycle(5).clone(), ClassFEvidence::Assumed, Engine::Exact, &lim());
        // C_5 has evc = mvc = 3
        let s = s.as_mut().unwrap();
        assert!(matches!(s.defend((0, 2)), Err(DefenseError::NotAnEdge(0, 2))));
    }
}
