use std::io::{BufRead, Write};

use evc_core::characterize::{class_f_membership, decide_evc_equals_mvc, MembershipMode, Verdict};
use evc_core::defense::{DefenseError, DefenseSession};
use evc_core::gadgets::{self, GadgetOutput};
use evc_core::game::evc_exact;
use evc_core::graph::{is_chordal, PlanarEmbedding};
use evc_core::vc::{mvc_forced, Engine};
use evc_core::{Graph, Limits, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{labels, resolve_labels, CliError, EXIT_UNDETERMINED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

fn emit(out: &mut dyn Write, value: &Value, format: OutputFormat) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => writeln!(out, "{value}")?,
        OutputFormat::Table => {
            let Value::Object(map) = value else {
                unreachable!("reports are objects")
            };
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in map {
                let cell = match v {
                    Value::Array(items) => items
                        .iter()
                        .map(|i| match i {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        })
                        .collect::<Vec<_>>()
                        .join(" "),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                writeln!(out, "{k:<width$}  {cell}")?;
            }
        }
    }
    Ok(())
}

pub fn mvc(
    g: &Graph,
    chordal: bool,
    forced: &[String],
    limits: &Limits,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let forced = resolve_labels(g, forced)?;
    let engine = if chordal { Engine::Polynomial } else { Engine::Exact };
    let r = mvc_forced(g, &forced, engine, limits)?;
    let report = json!({
        "size": r.size,
        "cover": labels(g, &r.cover),
        "forced": labels(g, &r.forced),
    });
    emit(out, &report, format)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvcMode {
    Exact,
    Characterize(MembershipMode),
}

/// Exit status is 4 when the characterization cannot decide.
pub fn evc(
    g: &Graph,
    mode: EvcMode,
    limits: &Limits,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match mode {
        EvcMode::Exact => {
            let r = evc_exact(g, limits)?;
            let report = json!({
                "evc": r.evc,
                "mvc": r.mvc,
                "iterations": r.iterations.iter()
                    .map(|&(k, sweeps)| json!({"k": k, "sweeps": sweeps}))
                    .collect::<Vec<_>>(),
                "safe_family": r.safe_family.iter()
                    .map(|c| labels(g, &c.guards))
                    .collect::<Vec<_>>(),
            });
            match format {
                OutputFormat::Json => emit(out, &report, format),
                OutputFormat::Table => emit(
                    out,
                    &json!({
                        "evc": r.evc,
                        "mvc": r.mvc,
                        "safe_family_size": r.safe_family.len(),
                    }),
                    format,
                ),
            }
        }
        EvcMode::Characterize(membership) => {
            // chordal inputs take the polynomial cover engine
            let engine = if is_chordal(g) {
                Engine::Polynomial
            } else {
                Engine::Exact
            };
            let evidence = class_f_membership(g, membership, limits)?;
            let r = decide_evc_equals_mvc(g, evidence, engine, limits)?;
            let report = json!({
                "verdict": r.verdict,
                "evc": r.evc,
                "mvc": r.mvc,
                "necessary_condition": r.necessary_condition,
                "failing_vertex": r.failing_vertex.map(|v| g.label(v).to_string()),
                "cut_vertices": labels(g, &r.cut_vertices),
                "class_f_evidence": r.class_f_evidence,
                "engine": match engine {
                    Engine::Exact => "exact",
                    Engine::Polynomial => "polynomial",
                },
            });
            emit(out, &report, format)?;
            if r.verdict == Verdict::Undetermined {
                return Err(CliError::new(
                    EXIT_UNDETERMINED,
                    "verdict undetermined: no class F evidence (try --assume-class-f or --exhaustive-class-check)",
                ));
            }
            Ok(())
        }
    }
}

pub enum DefendMode<'a> {
    Random { rounds: usize, seed: u64 },
    Script(&'a str),
    Interactive(&'a mut dyn BufRead),
}

fn start_session(
    g: &Graph,
    membership: MembershipMode,
    start: Option<&[String]>,
    limits: &Limits,
) -> Result<DefenseSession, CliError> {
    let evidence = class_f_membership(g, membership, limits)?;
    let session = match start {
        None => DefenseSession::new(g, evidence, Engine::Exact, limits)?,
        Some(items) => {
            let start = resolve_labels(g, items)?;
            DefenseSession::with_start(g, evidence, start, Engine::Exact, limits)?
        }
    };
    log::info!(
        "mode {:?}, mvc {}, start {:?}",
        session.mode,
        session.mvc,
        labels(g, &session.config)
    );
    Ok(session)
}

fn attack_of(g: &Graph, u: &str, v: &str) -> Result<(VertexId, VertexId), CliError> {
    let a = g.vertex(u)?;
    let b = g.vertex(v)?;
    if !g.has_edge(a, b) {
        return Err(CliError::input(format!("{{{u}, {v}}} is not an edge")));
    }
    Ok((a, b))
}

fn play(
    session: &mut DefenseSession,
    attack: (VertexId, VertexId),
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let record = session.defend(attack)?.clone();
    writeln!(out, "{}", record.to_json(&session.graph))?;
    Ok(())
}

/// Runs defense rounds, writing one JSON line per round.
pub fn defend(
    g: &Graph,
    membership: MembershipMode,
    mode: DefendMode<'_>,
    limits: &Limits,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match mode {
        DefendMode::Random { rounds, seed } => {
            let mut session = start_session(g, membership, None, limits)?;
            let edges: Vec<_> = g.edges().collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..rounds {
                let (a, b) = edges[rng.gen_range(0..edges.len())];
                let attack = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
                play(&mut session, attack, out)?;
            }
            Ok(())
        }
        DefendMode::Script(text) => {
            let mut session = None;
            for (i, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let tokens: Vec<&str> = line.split_whitespace().collect();
                let at = |msg: &str| CliError::input(format!("script line {}: {msg}", i + 1));
                match tokens.as_slice() {
                    ["start", rest @ ..] => {
                        if session.is_some() {
                            return Err(at("`start` must precede every attack"));
                        }
                        let rest: Vec<String> = rest.iter().map(|s| s.to_string()).collect();
                        session = Some(start_session(g, membership, Some(&rest), limits)?);
                    }
                    ["attack", u, v] => {
                        if session.is_none() {
                            session = Some(start_session(g, membership, None, limits)?);
                        }
                        let attack = attack_of(g, u, v).map_err(|e| at(&e.message))?;
                        play(session.as_mut().expect("set above"), attack, out)?;
                    }
                    _ => return Err(at("expected `start v...` or `attack u v`")),
                }
            }
            Ok(())
        }
        DefendMode::Interactive(input) => {
            let mut session = start_session(g, membership, None, limits)?;
            writeln!(out, "{}", json!({"config": labels(g, &session.config)}))?;
            for line in input.lines() {
                let line = line?;
                let tokens: Vec<&str> = line.split_whitespace().collect();
                let (u, v) = match tokens.as_slice() {
                    [] => continue,
                    ["quit"] | ["exit"] => break,
                    ["attack", u, v] | [u, v] => (*u, *v),
                    _ => {
                        log::warn!("expected `attack u v`");
                        continue;
                    }
                };
                match attack_of(g, u, v) {
                    Ok(attack) => match session.defend(attack) {
                        Ok(record) => writeln!(out, "{}", record.to_json(g))?,
                        Err(e @ DefenseError::DefenseImpossible { .. }) => return Err(e.into()),
                        Err(e) => log::warn!("{e}"),
                    },
                    Err(e) => log::warn!("{e}"),
                }
                out.flush()?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GadgetKind {
    Universal,
    Triangulate,
    Double { edge: (String, String) },
    Fig4,
    RandomChordal { n: usize, density: f64, seed: u64, biconnected: bool },
    RandomConnected { n: usize, p: f64, seed: u64 },
}

/// Builds a gadget and writes the resulting graph as JSON.
pub fn gadget(
    kind: &GadgetKind,
    input: Option<(Graph, Option<PlanarEmbedding>)>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let need = |input: Option<(Graph, Option<PlanarEmbedding>)>| {
        input.ok_or_else(|| CliError::input("this gadget needs an input graph"))
    };
    let built: Option<GadgetOutput> = match kind {
        GadgetKind::Universal => Some(gadgets::add_universal_vertex(&need(input)?.0)?),
        GadgetKind::Triangulate => {
            let (g, emb) = need(input)?;
            let emb = emb.ok_or_else(|| {
                CliError::input("triangulation needs a JSON input with a `faces` section")
            })?;
            Some(gadgets::triangulate_faces(&g, &emb)?)
        }
        GadgetKind::Double { edge } => {
            let g = need(input)?.0;
            let e = (g.vertex(&edge.0)?, g.vertex(&edge.1)?);
            Some(gadgets::double_and_join(&g, e)?)
        }
        _ => None,
    };
    let graph = match (kind, built) {
        (_, Some(o)) => {
            log::info!(
                "mvc identity {}; {} new vertices",
                o.size_identity,
                o.new_vertices.len()
            );
            o.graph
        }
        (GadgetKind::Fig4, None) => gadgets::fig4_instance(),
        (GadgetKind::RandomChordal { n, density, seed, biconnected }, None) => {
            if *biconnected {
                gadgets::random_biconnected_chordal(*n, *density, *seed)?
            } else {
                gadgets::random_connected_chordal(*n, *density, *seed)?
            }
        }
        (GadgetKind::RandomConnected { n, p, seed }, None) => {
            gadgets::random_connected(*n, *p, *seed)?
        }
        _ => unreachable!("constructions above always build"),
    };
    writeln!(out, "{}", graph.to_json())?;
    Ok(())
}
