//! Minimum vertex covers: exact branch-and-bound, the chordal greedy, forced
//! subsets, and exhaustive enumeration of covers of a given size.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    iter_mask, perfect_elimination_order, Graph, GraphError, VertexId, VertexSet,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("{what} limited to {limit} vertices, graph has {n}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("graph is not chordal")]
    NotChordal,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Solver size caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest graph accepted by the exact vertex cover solver (at most 64).
    pub exact: usize,
    /// Largest graph accepted by cover enumeration and the game solvers.
    pub enumerate: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exact: 24,
            enumerate: 16,
        }
    }
}

impl Limits {
    /// Parses overrides such as `exact=30,enum=18`; missing keys keep their
    /// defaults.
    pub fn parse(spec: &str) -> Result<Limits, String> {
        let mut limits = Limits::default();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| format!("invalid number in `{part}`"))?;
            match key.trim() {
                "exact" => limits.exact = value.min(64),
                "enum" | "enumerate" => limits.enumerate = value.min(64),
                other => return Err(format!("unknown limit `{other}`")),
            }
        }
        Ok(limits)
    }

    pub(crate) fn check_exact(&self, n: usize) -> Result<(), SolverError> {
        check(n, self.exact.min(64), "exact vertex cover")
    }

    pub(crate) fn check_enumerate(&self, n: usize) -> Result<(), SolverError> {
        check(n, self.enumerate.min(64), "cover enumeration")
    }
}

fn check(n: usize, limit: usize, what: &'static str) -> Result<(), SolverError> {
    if n > limit {
        Err(SolverError::SizeLimit { what, n, limit })
    } else {
        Ok(())
    }
}

/// Which minimum vertex cover routine backs forced-set queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Branch-and-bound on every query.
    #[default]
    Exact,
    /// The chordal greedy whenever the residual graph is chordal, otherwise
    /// branch-and-bound.
    Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub size: usize,
    pub cover: VertexSet,
    pub forced: VertexSet,
}

struct Search<'a> {
    nbr: &'a [u64],
    best: u64,
    best_size: u32,
}

impl Search<'_> {
    fn first_uncovered_edge(&self, cover: u64) -> Option<(VertexId, VertexId)> {
        iter_mask(!cover & mask_of(self.nbr.len())).find_map(|u| {
            let open = self.nbr[u] & !cover;
            (open != 0).then(|| (u, open.trailing_zeros() as usize))
        })
    }

    /// Size of a greedy maximal matching on the uncovered edges.
    fn matching_bound(&self, cover: u64) -> u32 {
        let mut used = cover;
        let mut size = 0;
        for u in iter_mask(!cover & mask_of(self.nbr.len())) {
            if used & (1 << u) != 0 {
                continue;
            }
            let open = self.nbr[u] & !used;
            if open != 0 {
                used |= (1 << u) | (1 << open.trailing_zeros());
                size += 1;
            }
        }
        size
    }

    fn run(&mut self, cover: u64) {
        let size = cover.count_ones();
        if size + self.matching_bound(cover) >= self.best_size {
            return;
        }
        let Some((u, _)) = self.first_uncovered_edge(cover) else {
            self.best = cover;
            self.best_size = size;
            return;
        };
        self.run(cover | (1 << u));
        // Without u, every uncovered neighbor of u must be taken.
        self.run(cover | (self.nbr[u] & !cover));
    }
}

fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Optimal cover containing `forced`, as a mask.
pub(crate) fn min_cover_mask(nbr: &[u64], forced: u64) -> u64 {
    let mut s = Search {
        nbr,
        best: mask_of(nbr.len()),
        best_size: nbr.len() as u32 + 1,
    };
    s.run(forced);
    s.best
}

fn validate_subset(g: &Graph, u: &VertexSet) -> Result<(), SolverError> {
    match u.iter().find(|&v| v >= g.n()) {
        Some(v) => Err(GraphError::VertexOutOfRange(v).into()),
        None => Ok(()),
    }
}

/// Minimum vertex cover by branch-and-bound on uncovered edges, with a
/// maximal-matching lower bound.
pub fn mvc_exact(g: &Graph, limits: &Limits) -> Result<CoverResult, SolverError> {
    forced_exact(g, &VertexSet::new(), limits)
}

fn forced_exact(g: &Graph, u: &VertexSet, limits: &Limits) -> Result<CoverResult, SolverError> {
    limits.check_exact(g.n())?;
    let nbr = g.neighbor_masks()?;
    let cover = VertexSet::from_mask(min_cover_mask(&nbr, u.to_mask()));
    Ok(CoverResult {
        size: cover.len(),
        cover,
        forced: u.clone(),
    })
}

/// Minimum vertex cover of a chordal graph: the complement of the greedy
/// independent set taken along a perfect elimination order.
pub fn mvc_chordal(g: &Graph) -> Result<CoverResult, SolverError> {
    let peo = perfect_elimination_order(g).ok_or(SolverError::NotChordal)?;
    let mut blocked = vec![false; g.n()];
    let mut independent = vec![false; g.n()];
    for v in peo {
        if !blocked[v] {
            independent[v] = true;
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
    }
    let cover: VertexSet = g.vertices().filter(|&v| !independent[v]).collect();
    Ok(CoverResult {
        size: cover.len(),
        cover,
        forced: VertexSet::new(),
    })
}

/// Minimum vertex cover among covers containing `u`: `u` plus an optimal
/// cover of `g - u`.
pub fn mvc_forced(
    g: &Graph,
    u: &VertexSet,
    engine: Engine,
    limits: &Limits,
) -> Result<CoverResult, SolverError> {
    validate_subset(g, u)?;
    if engine == Engine::Polynomial {
        let (rest, map) = g.without(u);
        if let Ok(inner) = mvc_chordal(&rest) {
            let cover = u.union(&inner.cover.iter().map(|v| map[v]).collect());
            return Ok(CoverResult {
                size: cover.len(),
                cover,
                forced: u.clone(),
            });
        }
    }
    forced_exact(g, u, limits)
}

pub fn mvc_size(g: &Graph, engine: Engine, limits: &Limits) -> Result<usize, SolverError> {
    mvc_forced(g, &VertexSet::new(), engine, limits).map(|r| r.size)
}

/// Whether some minimum vertex cover of `g` contains all of `u`.
pub fn has_min_cover_containing(
    g: &Graph,
    u: &VertexSet,
    engine: Engine,
    limits: &Limits,
) -> Result<bool, SolverError> {
    let unforced = mvc_size(g, engine, limits)?;
    Ok(mvc_forced(g, u, engine, limits)?.size == unforced)
}

/// Lazily enumerates covers of size exactly `k` that contain `required`, as
/// masks in lexicographic order of their sorted id lists.
#[derive(Debug, Clone)]
pub(crate) struct CoverIter {
    nbr: Vec<u64>,
    k: u32,
    stack: Vec<(usize, u64, u64)>,
}

impl CoverIter {
    pub(crate) fn new(nbr: Vec<u64>, k: usize, required: u64) -> Self {
        CoverIter {
            nbr,
            k: k as u32,
            stack: vec![(0, 0, required)],
        }
    }
}

impl Iterator for CoverIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let n = self.nbr.len();
        // state: next vertex to decide, chosen so far, later vertices that must be chosen
        while let Some((i, chosen, must)) = self.stack.pop() {
            let taken = chosen.count_ones();
            if taken + must.count_ones() > self.k || taken + ((n - i) as u32) < self.k {
                continue;
            }
            if i == n {
                if taken == self.k {
                    return Some(chosen);
                }
                continue;
            }
            let bit = 1u64 << i;
            let below = bit - 1;
            if must & bit == 0 && self.nbr[i] & below & !chosen == 0 {
                let above = self.nbr[i] & !(below | bit);
                self.stack.push((i + 1, chosen, must | above));
            }
            self.stack.push((i + 1, chosen | bit, must & !bit));
        }
        None
    }
}

/// Every vertex cover of size exactly `k`, once each, in lexicographic order.
pub fn enumerate_covers(
    g: &Graph,
    k: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = VertexSet>, SolverError> {
    limits.check_enumerate(g.n())?;
    Ok(CoverIter::new(g.neighbor_masks()?, k, 0).map(VertexSet::from_mask))
}

pub(crate) fn mask_induces_connected(nbr: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let mut reached = 1u64 << mask.trailing_zeros();
    loop {
        let grown = iter_mask(reached).fold(reached, |acc, v| acc | (nbr[v] & mask));
        if grown == reached {
            return reached == mask;
        }
        reached = grown;
    }
}

/// Whether every vertex cover of size `mvc_x(g)` that contains `x` induces a
/// connected subgraph. Exhaustive.
pub fn all_forced_min_covers_connected(
    g: &Graph,
    x: &VertexSet,
    limits: &Limits,
) -> Result<bool, SolverError> {
    validate_subset(g, x)?;
    limits.check_enumerate(g.n())?;
    let k = mvc_forced(g, x, Engine::Exact, limits)?.size;
    let nbr = g.neighbor_masks()?;
    Ok(CoverIter::new(nbr.clone(), k, x.to_mask()).all(|c| mask_induces_connected(&nbr, c)))
}
