//! Exact eternal vertex cover numbers by solving the attacker-defender game
//! over the space of guard configurations.
//!
//! Guards are interchangeable, one per vertex. In each round the attacker
//! picks an edge, and every guard either stays or crosses one edge (all in
//! parallel) so that at least one guard crosses the attacked edge. A
//! transition between two configurations is therefore a bijection in which
//! every guard stays or moves to a neighbor, which we decide with a bipartite
//! perfect matching.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{iter_mask, Graph, GraphError, VertexId, VertexSet};
use crate::matching::Bipartite;
use crate::vc::{mvc_exact, mvc_forced, CoverIter, Engine, Limits, SolverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no safe family with at most {max_k} guards")]
    NoSafeFamily { max_k: usize },
}

/// Guarded vertices at a round boundary.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Configuration {
    pub guards: VertexSet,
}

impl From<VertexSet> for Configuration {
    fn from(guards: VertexSet) -> Self {
        Configuration { guards }
    }
}

/// One round of guard movement: `(from, to)` per guard, sorted by `from`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct MoveSet {
    pub moves: Vec<(VertexId, VertexId)>,
}

impl MoveSet {
    pub fn new(mut moves: Vec<(VertexId, VertexId)>) -> Self {
        moves.sort_unstable();
        MoveSet { moves }
    }

    pub fn targets(&self) -> VertexSet {
        self.moves.iter().map(|&(_, t)| t).collect()
    }
}

/// Witness bijection `s -> t` where each guard stays or crosses one edge.
/// With `attack = Some((u, v))` the guard on `u` must move to `v`. Cover
/// validity of `t` is the caller's concern.
pub fn legal_transition(
    g: &Graph,
    s: &VertexSet,
    t: &VertexSet,
    attack: Option<(VertexId, VertexId)>,
) -> Option<MoveSet> {
    if s.len() != t.len() {
        return None;
    }
    let mut left: Vec<VertexId> = s.iter().collect();
    let mut right: Vec<VertexId> = t.iter().collect();
    let mut moves = Vec::with_capacity(s.len());
    if let Some((u, v)) = attack {
        if !s.contains(u) || !t.contains(v) || !g.has_edge(u, v) {
            return None;
        }
        left.retain(|&x| x != u);
        right.retain(|&y| y != v);
        moves.push((u, v));
    }
    let position: HashMap<VertexId, usize> =
        right.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let adjacency = left
        .iter()
        .map(|&x| {
            std::iter::once(x)
                .chain(g.neighbors(x).iter().copied())
                .filter_map(|y| position.get(&y).copied())
                .collect()
        })
        .collect();
    let matching = Bipartite::new(adjacency, right.len()).maximum_matching();
    if !matching.is_left_perfect() {
        return None;
    }
    for (i, r) in matching.left_to_right.iter().enumerate() {
        moves.push((left[i], right[r.expect("perfect matching")]));
    }
    Some(MoveSet::new(moves))
}

/// Mask-level transition test used by the fixed-point solver.
fn transition_exists(nbr: &[u64], s: u64, t: u64, forced: Option<(VertexId, VertexId)>) -> bool {
    let (mut s, mut t) = (s, t);
    if let Some((u, v)) = forced {
        s &= !(1 << u);
        t &= !(1 << v);
    }
    let left: Vec<VertexId> = iter_mask(s).collect();
    let right: Vec<VertexId> = iter_mask(t).collect();
    let adjacency = left
        .iter()
        .map(|&x| {
            let reach = (nbr[x] | (1 << x)) & t;
            iter_mask(reach)
                .map(|y| right.binary_search(&y).expect("y is in t"))
                .collect()
        })
        .collect();
    Bipartite::new(adjacency, right.len())
        .maximum_matching()
        .is_left_perfect()
}

/// Surviving configurations of the safe-family fixed point, with the number
/// of sweeps it took.
#[derive(Debug, Clone)]
struct FixedPoint {
    survivors: Vec<u64>,
    sweeps: usize,
}

fn closed_neighborhood(nbr: &[u64], s: u64) -> u64 {
    iter_mask(s).fold(s, |acc, v| acc | nbr[v])
}

/// Greatest fixed point over covers of size `k` containing `required`:
/// repeatedly drop every configuration with an attack it cannot answer
/// inside the surviving set. Deletions are applied between sweeps.
fn safe_family_masks(nbr: &[u64], k: usize, required: u64) -> FixedPoint {
    let edges: Vec<(VertexId, VertexId)> = (0..nbr.len())
        .flat_map(|u| iter_mask(nbr[u]).filter(move |&v| u < v).map(move |v| (u, v)))
        .collect();
    let configs: Vec<u64> = CoverIter::new(nbr.to_vec(), k, required).collect();
    let reach: Vec<u64> = configs.iter().map(|&s| closed_neighborhood(nbr, s)).collect();

    // defenders[i][e]: configurations that answer attack e from configuration i
    let defenders: Vec<Vec<Vec<usize>>> = configs
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            edges
                .iter()
                .map(|&(a, b)| {
                    configs
                        .iter()
                        .enumerate()
                        .filter(|&(j, &t)| {
                            if t & !reach[i] != 0 || s & !reach[j] != 0 {
                                return false;
                            }
                            let forward = s & (1 << a) != 0
                                && t & (1 << b) != 0
                                && transition_exists(nbr, s, t, Some((a, b)));
                            forward
                                || (s & (1 << b) != 0
                                    && t & (1 << a) != 0
                                    && transition_exists(nbr, s, t, Some((b, a))))
                        })
                        .map(|(j, _)| j)
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut alive = vec![true; configs.len()];
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let doomed: Vec<usize> = (0..configs.len())
            .filter(|&i| alive[i])
            .filter(|&i| {
                defenders[i]
                    .iter()
                    .any(|answers| !answers.iter().any(|&j| alive[j]))
            })
            .collect();
        if doomed.is_empty() {
            break;
        }
        for i in doomed {
            alive[i] = false;
        }
    }
    FixedPoint {
        survivors: configs
            .iter()
            .zip(&alive)
            .filter_map(|(&c, &a)| a.then_some(c))
            .collect(),
        sweeps,
    }
}

fn game_masks(g: &Graph, limits: &Limits) -> Result<Vec<u64>, GameError> {
    limits.check_enumerate(g.n())?;
    Ok(g.neighbor_masks()?)
}

/// The largest family of size-`k` covers from which every attack can be
/// answered by moving to a member of the family (possibly empty).
pub fn safe_family(g: &Graph, k: usize, limits: &Limits) -> Result<Vec<Configuration>, GameError> {
    let nbr = game_masks(g, limits)?;
    Ok(safe_family_masks(&nbr, k, 0)
        .survivors
        .into_iter()
        .map(|m| VertexSet::from_mask(m).into())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvcResult {
    pub evc: usize,
    pub mvc: usize,
    /// Safe family at `k = evc`.
    pub safe_family: Vec<Configuration>,
    /// `(k, sweeps)` for every guard count tried.
    pub iterations: Vec<(usize, usize)>,
}

/// Exact eternal vertex cover number: the least `k` in `[mvc, 2 mvc]` (and at
/// most `n - 1`) with a nonempty safe family.
pub fn evc_exact(g: &Graph, limits: &Limits) -> Result<EvcResult, GameError> {
    g.require_connected()?;
    if g.n() < 2 {
        return Err(GraphError::TooSmall(2).into());
    }
    let nbr = game_masks(g, limits)?;
    let mvc = mvc_exact(g, limits)?.size;
    let max_k = (2 * mvc).min(g.n() - 1);
    let mut iterations = Vec::new();
    for k in mvc..=max_k {
        let fp = safe_family_masks(&nbr, k, 0);
        iterations.push((k, fp.sweeps));
        if !fp.survivors.is_empty() {
            return Ok(EvcResult {
                evc: k,
                mvc,
                safe_family: fp
                    .survivors
                    .into_iter()
                    .map(|m| VertexSet::from_mask(m).into())
                    .collect(),
                iterations,
            });
        }
    }
    Err(GameError::NoSafeFamily { max_k })
}

/// Least `k` admitting a safe family of size-`k` covers that all contain `u`.
pub fn evc_forced_exact(g: &Graph, u: &VertexSet, limits: &Limits) -> Result<usize, GameError> {
    g.require_connected()?;
    let nbr = game_masks(g, limits)?;
    let start = mvc_forced(g, u, Engine::Exact, limits)?.size;
    for k in start..=g.n() {
        if !safe_family_masks(&nbr, k, u.to_mask()).survivors.is_empty() {
            return Ok(k);
        }
    }
    Err(GameError::NoSafeFamily { max_k: g.n() })
}

/// Independent check of whether `k` guards suffice: retrograde analysis of
/// the attacker's winning region over all `k`-subsets, with successors
/// generated by enumerating guard moves directly (no matching).
pub fn minimax_oracle(g: &Graph, k: usize, limits: &Limits) -> Result<bool, GameError> {
    limits.check_enumerate(g.n())?;
    let n = g.n();
    let edges: Vec<(VertexId, VertexId)> = g.edges().collect();
    let covers = |pos: u64| {
        edges
            .iter()
            .all(|&(a, b)| pos & (1 << a) != 0 || pos & (1 << b) != 0)
    };
    let positions: Vec<u64> = (0u64..1 << n)
        .filter(|p| p.count_ones() as usize == k && covers(*p))
        .collect();

    // options for the guard standing on each vertex
    let options: Vec<Vec<VertexId>> = g
        .vertices()
        .map(|v| std::iter::once(v).chain(g.neighbors(v).iter().copied()).collect())
        .collect();
    let successors = |pos: u64, (a, b): (VertexId, VertexId)| -> HashSet<u64> {
        let mut out = HashSet::new();
        for (from, to) in [(a, b), (b, a)] {
            if pos & (1 << from) == 0 {
                continue;
            }
            let mut layer: HashSet<u64> = HashSet::from([0u64]);
            for guard in (0..n).filter(|&v| pos & (1 << v) != 0) {
                let choices: &[VertexId] = if guard == from {
                    std::slice::from_ref(&to)
                } else {
                    &options[guard]
                };
                layer = layer
                    .iter()
                    .flat_map(|&placed| {
                        choices
                            .iter()
                            .filter(move |&&c| placed & (1 << c) == 0)
                            .map(move |&c| placed | (1 << c))
                    })
                    .collect();
            }
            out.extend(layer);
        }
        out
    };

    let mut answers: HashMap<(u64, usize), Vec<u64>> = HashMap::new();
    for &p in &positions {
        for (e, &edge) in edges.iter().enumerate() {
            answers.insert((p, e), successors(p, edge).into_iter().collect());
        }
    }
    let mut attacker_wins: HashSet<u64> = HashSet::new();
    let lost = |q: u64, wins: &HashSet<u64>| !covers(q) || wins.contains(&q);
    loop {
        let newly: Vec<u64> = positions
            .iter()
            .copied()
            .filter(|p| !attacker_wins.contains(p))
            .filter(|&p| {
                (0..edges.len()).any(|e| answers[&(p, e)].iter().all(|&q| lost(q, &attacker_wins)))
            })
            .collect();
        if newly.is_empty() {
            break;
        }
        attacker_wins.extend(newly);
    }
    Ok(positions.iter().any(|p| !attacker_wins.contains(p)))
}
