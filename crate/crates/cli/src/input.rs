use std::fmt;
use std::io::Read;

use evc_core::characterize::CharError;
use evc_core::defense::DefenseError;
use evc_core::gadgets::{self, GadgetError};
use evc_core::game::GameError;
use evc_core::graph::{parse_graph_document, InputFormat, PlanarEmbedding};
use evc_core::vc::SolverError;
use evc_core::{Graph, GraphError, Limits, VertexSet};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;
pub const EXIT_UNDETERMINED: u8 = 4;
pub const EXIT_DEFENSE_IMPOSSIBLE: u8 = 5;

/// Error carrying the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new(EXIT_INPUT, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::new(EXIT_FAILURE, e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        Self::input(e.to_string())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::SizeLimit { .. } => Self::new(EXIT_LIMIT, e.to_string()),
            _ => Self::input(e.to_string()),
        }
    }
}

impl From<CharError> for CliError {
    fn from(e: CharError) -> Self {
        match e {
            CharError::Solver(s) => s.into(),
            CharError::EvidenceMissing => Self::new(EXIT_UNDETERMINED, e.to_string()),
            _ => Self::input(e.to_string()),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Solver(s) => s.into(),
            GameError::Graph(g) => g.into(),
            _ => Self::new(EXIT_FAILURE, e.to_string()),
        }
    }
}

impl From<GadgetError> for CliError {
    fn from(e: GadgetError) -> Self {
        Self::input(e.to_string())
    }
}

impl From<DefenseError> for CliError {
    fn from(e: DefenseError) -> Self {
        match e {
            DefenseError::Solver(s) => s.into(),
            DefenseError::Graph(g) => g.into(),
            DefenseError::Char(c) => c.into(),
            DefenseError::DefenseImpossible { .. } => {
                Self::new(EXIT_DEFENSE_IMPOSSIBLE, e.to_string())
            }
            DefenseError::NotCertifiable(_) => Self::new(EXIT_UNDETERMINED, e.to_string()),
            DefenseError::Contract(_) => Self::new(EXIT_FAILURE, e.to_string()),
            DefenseError::NotAnEdge(..) | DefenseError::InvalidStart(_) => {
                Self::input(e.to_string())
            }
        }
    }
}

/// Solver caps, overridden by `EVC_LIMITS` (e.g. `exact=30,enum=18`).
pub fn limits_from_env() -> Result<Limits, CliError> {
    match std::env::var("EVC_LIMITS") {
        Ok(spec) => Limits::parse(&spec).map_err(|e| CliError::input(format!("EVC_LIMITS: {e}"))),
        Err(_) => Ok(Limits::default()),
    }
}

/// Named instances: `fig4`, `diamond`, `K<n>`, `C<n>`, `P<n>`.
pub fn builtin(name: &str) -> Option<Graph> {
    let sized = |prefix: char, min: usize| {
        name.strip_prefix(prefix)
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= min && n <= 64)
    };
    match name {
        "fig4" => Some(gadgets::fig4_instance()),
        "diamond" => Graph::from_labeled(
            ["a", "b", "c", "d"],
            [("a", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")],
        )
        .ok(),
        _ => {
            if let Some(n) = sized('K', 1) {
                Some(gadgets::complete(n))
            } else if let Some(n) = sized('C', 3) {
                Some(gadgets::cycle(n))
            } else {
                sized('P', 1).map(gadgets::path)
            }
        }
    }
}

/// Reads a graph from a file, `-` for stdin, or `builtin:<name>`.
pub fn load_graph(
    source: &str,
    format: Option<InputFormat>,
) -> Result<(Graph, Option<PlanarEmbedding>), CliError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        let g = builtin(name).ok_or_else(|| CliError::input(format!("unknown builtin `{name}`")))?;
        return Ok((g, None));
    }
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| CliError::input(format!("cannot read {source}: {e}")))?
    };
    let format = format.unwrap_or_else(|| InputFormat::detect(&text));
    Ok(parse_graph_document(&text, format)?)
}

pub fn labels(g: &Graph, set: &VertexSet) -> Vec<String> {
    set.iter().map(|v| g.label(v).to_string()).collect()
}

/// Resolves a comma-separated or repeated list of labels.
pub fn resolve_labels(g: &Graph, items: &[String]) -> Result<VertexSet, CliError> {
    items
        .iter()
        .flat_map(|s| s.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|l| g.vertex(l).map_err(CliError::from))
        .collect()
}
