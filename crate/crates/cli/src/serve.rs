//! HTTP/JSON service hosting interactive defense sessions.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::SystemTime;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use evc_core::characterize::{class_f_membership, MembershipMode};
use evc_core::defense::{verify_moveset, DefenseError, DefenseSession, StrategyMode};
use evc_core::graph::GraphDocument;
use evc_core::vc::Engine;
use evc_core::{Graph, Limits};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::input::{builtin, labels};

struct Entry {
    session: DefenseSession,
    created: SystemTime,
    /// Set once an attack could not be answered; later attacks are refused.
    finished: Option<String>,
}

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<Mutex<HashMap<String, Arc<Mutex<Entry>>>>>,
    limits: Limits,
}

impl AppState {
    pub fn new(limits: Limits) -> Self {
        AppState {
            sessions: Arc::default(),
            limits,
        }
    }

    fn get(&self, id: &str) -> Option<Arc<Mutex<Entry>>> {
        self.sessions.lock().expect("store lock").get(id).cloned()
    }
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({"error": self.1}))).into_response()
    }
}

fn bad_request(msg: impl ToString) -> ApiError {
    ApiError(StatusCode::BAD_REQUEST, msg.to_string())
}

fn not_found() -> ApiError {
    ApiError(StatusCode::NOT_FOUND, "unknown session".into())
}

#[derive(Debug, Default, Deserialize, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
enum Membership {
    #[default]
    Sufficient,
    Exhaustive,
    Assume,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateRequest {
    graph: Option<GraphDocument>,
    builtin: Option<String>,
    #[serde(default)]
    class_f: Membership,
}

/// Accepts `{"graph": {...}}`, `{"builtin": "K4"}` or a bare graph document.
fn parse_create(body: &[u8]) -> Result<(Graph, MembershipMode), ApiError> {
    let (graph, builtin_name, membership) = match serde_json::from_slice::<CreateRequest>(body) {
        Ok(r) => (r.graph, r.builtin, r.class_f),
        Err(_) => {
            let doc: GraphDocument = serde_json::from_slice(body).map_err(bad_request)?;
            (Some(doc), None, Membership::Sufficient)
        }
    };
    let g = match (graph, builtin_name) {
        (Some(doc), None) => doc.build().map_err(bad_request)?.0,
        (None, Some(name)) => {
            builtin(&name).ok_or_else(|| bad_request(format!("unknown builtin `{name}`")))?
        }
        _ => return Err(bad_request("expected exactly one of `graph` or `builtin`")),
    };
    let mode = match membership {
        Membership::Sufficient => MembershipMode::Sufficient,
        Membership::Exhaustive => MembershipMode::Exhaustive,
        Membership::Assume => MembershipMode::Assume,
    };
    Ok((g, mode))
}

fn summary(id: &str, s: &DefenseSession) -> Value {
    let (lo, hi) = s.evc_bound();
    json!({
        "id": id,
        "mode": s.mode,
        "mvc": s.mvc,
        "evc_bound": [lo, hi],
        "config": labels(&s.graph, &s.config),
        "round": s.round,
        "graph": s.graph.to_document(),
    })
}

async fn create(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let (g, membership) = parse_create(&body)?;
    let limits = state.limits;
    let created = tokio::task::spawn_blocking(move || {
        let evidence = class_f_membership(&g, membership, &limits)?;
        DefenseSession::new(&g, evidence, Engine::Exact, &limits)
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    let session = created.map_err(|e| match e {
        DefenseError::Graph(_) => bad_request(e),
        other => ApiError(StatusCode::UNPROCESSABLE_ENTITY, other.to_string()),
    })?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let body = summary(&id, &session);
    log::info!("session {id}: {:?}, n={}", session.mode, session.graph.n());
    state.sessions.lock().expect("store lock").insert(
        id,
        Arc::new(Mutex::new(Entry {
            session,
            created: SystemTime::now(),
            finished: None,
        })),
    );
    Ok((StatusCode::CREATED, Json(body)).into_response())
}

#[derive(Deserialize)]
struct AttackRequest {
    edge: [LabelValue; 2],
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LabelValue {
    Str(String),
    Int(i64),
}

impl LabelValue {
    fn text(&self) -> String {
        match self {
            LabelValue::Str(s) => s.clone(),
            LabelValue::Int(i) => i.to_string(),
        }
    }
}

async fn attack(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<Value>, ApiError> {
    let req: AttackRequest = serde_json::from_slice(&body).map_err(bad_request)?;
    let entry = state.get(&id).ok_or_else(not_found)?;
    tokio::task::spawn_blocking(move || {
        // the per-session lock serializes rounds
        let mut entry = entry.lock().expect("session lock");
        let g = &entry.session.graph;
        let (u, v) = (req.edge[0].text(), req.edge[1].text());
        let (Some(a), Some(b)) = (g.id_of(&u), g.id_of(&v)) else {
            return Err(bad_request(format!("unknown vertex in {{{u}, {v}}}")));
        };
        if !g.has_edge(a, b) {
            return Err(ApiError(
                StatusCode::CONFLICT,
                format!("{{{u}, {v}}} is not an edge"),
            ));
        }
        if let Some(reason) = &entry.finished {
            return Err(ApiError(
                StatusCode::CONFLICT,
                format!("session is over: {reason}"),
            ));
        }
        let before = entry.session.config.clone();
        match entry.session.defend((a, b)) {
            Ok(record) => {
                let record = record.clone();
                let s = &entry.session;
                if !verify_moveset(&s.graph, &before, &record.config, &record.moves, (a, b)) {
                    return Err(ApiError(
                        StatusCode::INTERNAL_SERVER_ERROR,
                        "generated moves failed validation".into(),
                    ));
                }
                let line = record.to_json(&s.graph);
                Ok(Json(json!({
                    "defended": true,
                    "moves": line["moves"],
                    "config": line["config"],
                    "round": record.round,
                })))
            }
            Err(DefenseError::DefenseImpossible { round, reason }) => {
                entry.finished = Some(reason.clone());
                let s = &entry.session;
                Ok(Json(json!({
                    "defended": false,
                    "moves": [],
                    "config": labels(&s.graph, &s.config),
                    "round": round,
                    "reason": reason,
                })))
            }
            Err(e) => Err(ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())),
        }
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
}

async fn show(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<Value>, ApiError> {
    let entry = state.get(&id).ok_or_else(not_found)?;
    let entry = entry.lock().expect("session lock");
    let s = &entry.session;
    let mut body = summary(&id, s);
    body["log"] = s.log.iter().map(|r| r.to_json(&s.graph)).collect();
    body["finished"] = json!(entry.finished);
    body["created"] = json!(entry
        .created
        .duration_since(SystemTime::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0));
    if s.mode == StrategyMode::ConnectedPlusOne {
        body["base_cover"] = json!(s.base_cover.as_ref().map(|b| labels(&s.graph, b)));
        body["extra_vertex"] = json!(s.extra_vertex.map(|z| s.graph.label(z)));
    }
    Ok(Json(body))
}

async fn remove(State(state): State<AppState>, Path(id): Path<String>) -> StatusCode {
    match state.sessions.lock().expect("store lock").remove(&id) {
        Some(_) => StatusCode::NO_CONTENT,
        None => StatusCode::NOT_FOUND,
    }
}

pub fn router(state: AppState, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/session", post(create))
        .route("/api/session/{id}", get(show).delete(remove))
        .route("/api/session/{id}/attack", post(attack))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(tower_http::services::ServeDir::new(dir)),
        None => api,
    }
}

pub async fn run(addr: SocketAddr, static_dir: Option<PathBuf>, limits: Limits) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(limits), static_dir))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
