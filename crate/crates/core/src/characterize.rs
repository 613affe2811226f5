//! Deciding whether the eternal vertex cover number equals the vertex cover
//! number, for graphs where every minimum cover containing the cut vertices
//! is connected (class F).
//!
//! Membership in class F is exponential to test exactly, so callers thread
//! an explicit [`ClassFEvidence`] value through the decision procedure.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    cut_vertices_and_blocks, every_block_locally_connected, is_chordal, Graph, GraphError,
    VertexId, VertexSet,
};
use crate::vc::{
    all_forced_min_covers_connected, has_min_cover_containing, mvc_forced, mvc_size, CoverResult,
    Engine, Limits, SolverError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("class F evidence is required")]
    EvidenceMissing,
    #[error("no vertex cover of size {k} contains vertex {vertex}")]
    InfeasibleK { k: usize, vertex: VertexId },
}

/// Why the graph is taken to be in class F.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassFEvidence {
    EveryBlockLocallyConnected,
    Chordal,
    Exhaustive,
    Assumed,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipMode {
    /// Polynomial sufficient conditions only.
    Sufficient,
    /// Enumerate the relevant minimum covers.
    Exhaustive,
    /// Trust the caller.
    Assume,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "evc-equals-mvc")]
    EvcEqualsMvc,
    #[serde(rename = "evc-equals-mvc-plus-1")]
    EvcEqualsMvcPlusOne,
    #[serde(rename = "evc-exceeds-mvc")]
    EvcExceedsMvc,
    #[serde(rename = "undetermined")]
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharReport {
    pub mvc: usize,
    pub cut_vertices: VertexSet,
    pub necessary_condition: bool,
    pub failing_vertex: Option<VertexId>,
    pub class_f_evidence: ClassFEvidence,
    pub verdict: Verdict,
    /// Exact eternal vertex cover number when the verdict pins it down.
    pub evc: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NecessaryCondition {
    pub holds: bool,
    pub failing_vertex: Option<VertexId>,
}

fn require_game_graph(g: &Graph) -> Result<(), CharError> {
    g.require_connected()?;
    if g.n() < 2 {
        return Err(GraphError::TooSmall(2).into());
    }
    Ok(())
}

/// Every non-cut vertex must lie in a minimum cover together with all cut
/// vertices. A leaf in a graph with at least three vertices fails at once,
/// since its neighbor is a cut vertex.
pub fn necessary_condition(
    g: &Graph,
    engine: Engine,
    limits: &Limits,
) -> Result<NecessaryCondition, CharError> {
    require_game_graph(g)?;
    if g.n() >= 3 {
        if let Some(leaf) = g.vertices().find(|&v| g.degree(v) == 1) {
            return Ok(NecessaryCondition {
                holds: false,
                failing_vertex: Some(leaf),
            });
        }
    }
    let cut = cut_vertices_and_blocks(g)?.cut_vertices;
    let mvc = mvc_size(g, engine, limits)?;
    for v in g.vertices().filter(|&v| !cut.contains(v)) {
        let mut forced = cut.clone();
        forced.insert(v);
        if mvc_forced(g, &forced, engine, limits)?.size != mvc {
            return Ok(NecessaryCondition {
                holds: false,
                failing_vertex: Some(v),
            });
        }
    }
    Ok(NecessaryCondition {
        holds: true,
        failing_vertex: None,
    })
}

/// Exact class F test: every minimum cover containing all cut vertices is
/// connected. Vacuously true when no minimum cover contains them.
pub fn exhaustive_class_f(g: &Graph, limits: &Limits) -> Result<bool, CharError> {
    let cut = cut_vertices_and_blocks(g)?.cut_vertices;
    let mvc = mvc_size(g, Engine::Exact, limits)?;
    if mvc_forced(g, &cut, Engine::Exact, limits)?.size > mvc {
        return Ok(true);
    }
    Ok(all_forced_min_covers_connected(g, &cut, limits)?)
}

pub fn class_f_membership(
    g: &Graph,
    mode: MembershipMode,
    limits: &Limits,
) -> Result<ClassFEvidence, CharError> {
    g.require_connected()?;
    match mode {
        MembershipMode::Assume => Ok(ClassFEvidence::Assumed),
        MembershipMode::Exhaustive => Ok(if exhaustive_class_f(g, limits)? {
            ClassFEvidence::Exhaustive
        } else {
            ClassFEvidence::Unknown
        }),
        MembershipMode::Sufficient => {
            if every_block_locally_connected(g)? {
                Ok(ClassFEvidence::EveryBlockLocallyConnected)
            } else if is_chordal(g)
                && g.n() <= limits.enumerate
                && exhaustive_class_f(g, limits)?
            {
                Ok(ClassFEvidence::Chordal)
            } else {
                Ok(ClassFEvidence::Unknown)
            }
        }
    }
}

/// Applies the characterization: under class F evidence, `evc = mvc` iff the
/// necessary condition holds; biconnected graphs otherwise have
/// `evc = mvc + 1`.
pub fn decide_evc_equals_mvc(
    g: &Graph,
    evidence: ClassFEvidence,
    engine: Engine,
    limits: &Limits,
) -> Result<CharReport, CharError> {
    require_game_graph(g)?;
    let cut_vertices = cut_vertices_and_blocks(g)?.cut_vertices;
    let mvc = mvc_size(g, engine, limits)?;
    let nc = necessary_condition(g, engine, limits)?;
    let (verdict, evc) = if evidence == ClassFEvidence::Unknown {
        (Verdict::Undetermined, None)
    } else if nc.holds {
        (Verdict::EvcEqualsMvc, Some(mvc))
    } else if cut_vertices.is_empty() {
        (Verdict::EvcEqualsMvcPlusOne, Some(mvc + 1))
    } else {
        (Verdict::EvcExceedsMvc, None)
    };
    Ok(CharReport {
        mvc,
        cut_vertices,
        necessary_condition: nc.holds,
        failing_vertex: nc.failing_vertex,
        class_f_evidence: evidence,
        verdict,
        evc,
    })
}

/// Least `k` such that every vertex lies in some cover of size `k`. Equals
/// the eternal vertex cover number when every minimum cover is connected,
/// which `evidence` must vouch for.
pub fn evc_min_k_all_vertices(
    g: &Graph,
    evidence: ClassFEvidence,
    engine: Engine,
    limits: &Limits,
) -> Result<usize, CharError> {
    if evidence == ClassFEvidence::Unknown {
        return Err(CharError::EvidenceMissing);
    }
    require_game_graph(g)?;
    let mvc = mvc_size(g, engine, limits)?;
    for v in g.vertices() {
        if !has_min_cover_containing(g, &VertexSet::singleton(v), engine, limits)? {
            return Ok(mvc + 1);
        }
    }
    Ok(mvc)
}

/// One size-`k` cover per vertex, containing that vertex. Together they
/// certify `evc <= k` when every minimum cover is connected.
pub fn np_certificate(
    g: &Graph,
    k: usize,
    evidence: ClassFEvidence,
    engine: Engine,
    limits: &Limits,
) -> Result<Vec<CoverResult>, CharError> {
    if evidence == ClassFEvidence::Unknown {
        return Err(CharError::EvidenceMissing);
    }
    require_game_graph(g)?;
    g.vertices()
        .map(|v| {
            let forced = VertexSet::singleton(v);
            let base = mvc_forced(g, &forced, engine, limits)?;
            if base.size > k || k > g.n() {
                return Err(CharError::InfeasibleK { k, vertex: v });
            }
            let mut cover = base.cover;
            for w in g.vertices() {
                if cover.len() == k {
                    break;
                }
                cover.insert(w);
            }
            Ok(CoverResult {
                size: k,
                cover,
                forced,
            })
        })
        .collect()
}

/// Polynomial-time check of a certificate produced by [`np_certificate`].
pub fn verify_certificate(g: &Graph, k: usize, certificate: &[CoverResult]) -> bool {
    certificate.len() == g.n()
        && certificate.iter().enumerate().all(|(v, c)| {
            c.cover.len() == k
                && c.cover.contains(v)
                && g.edges().all(|(a, b)| c.cover.contains(a) || c.cover.contains(b))
        })
}
