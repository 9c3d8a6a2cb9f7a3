//! HTTP API for the web client: game sessions against the engine plus
//! position analysis.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, Write};
use std::net::{Ipv4Addr, SocketAddr};
use std::path::Path;
use std::sync::{Arc, Mutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use snort_core::{Error, Family, Player, VertexLabel};

use crate::cli::ServeArgs;
use crate::session::{AnalysisView, GameSession, SessionError, SessionView};

type Shared = Arc<Mutex<GameSession>>;

#[derive(Default)]
pub struct AppState {
    sessions: Mutex<HashMap<String, Shared>>,
    journal: Option<Mutex<File>>,
}

impl AppState {
    pub fn with_journal(path: &Path) -> std::io::Result<AppState> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(AppState {
            sessions: Mutex::default(),
            journal: Some(Mutex::new(file)),
        })
    }

    fn session(&self, id: &str) -> Result<Shared, ApiError> {
        self.sessions
            .lock()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::NotFound(id.to_string()))
    }

    fn record(&self, event: &JournalEvent) {
        if let Some(journal) = &self.journal {
            let mut file = journal.lock().unwrap();
            let line = serde_json::to_string(event).expect("journal events serialize");
            if let Err(e) = writeln!(file, "{line}") {
                tracing::warn!("journal write failed: {e}");
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "lowercase")]
pub enum JournalEvent {
    Create {
        id: String,
        family: Family,
        n: usize,
        human_player: Player,
        first_player: Player,
        engine_opening: Option<usize>,
    },
    Move {
        id: String,
        vertex: usize,
        engine_reply: Option<usize>,
    },
}

/// Rebuilds every journaled session, checking that the engine makes the same
/// choices it made when the journal was written.
pub fn replay_journal(reader: impl BufRead) -> anyhow::Result<Vec<GameSession>> {
    let mut order = Vec::new();
    let mut sessions: HashMap<String, GameSession> = HashMap::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<JournalEvent>(&line)? {
            JournalEvent::Create { id, family, n, human_player, first_player, engine_opening } => {
                let s = GameSession::start(id.clone(), family, n, human_player, first_player)?;
                let opening = s.history().first().map(|p| p.vertex);
                anyhow::ensure!(
                    opening == engine_opening,
                    "line {}: engine opened {opening:?}, journal says {engine_opening:?}",
                    lineno + 1
                );
                order.push(id.clone());
                sessions.insert(id, s);
            }
            JournalEvent::Move { id, vertex, engine_reply } => {
                let s = sessions
                    .get_mut(&id)
                    .ok_or_else(|| anyhow::anyhow!("line {}: unknown session {id}", lineno + 1))?;
                let reply = s.human_move(vertex)?;
                anyhow::ensure!(
                    reply == engine_reply,
                    "line {}: engine replied {reply:?}, journal says {engine_reply:?}",
                    lineno + 1
                );
            }
        }
    }
    Ok(order.into_iter().filter_map(|id| sessions.remove(&id)).collect())
}

#[derive(Debug)]
pub enum ApiError {
    NotFound(String),
    Unprocessable(String),
    Conflict(String),
    Unavailable(String),
    Internal(String),
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::Unprocessable(r.body_text())
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceBudget { .. } => ApiError::Unavailable(e.to_string()),
            Error::TooManyVertices { .. }
            | Error::InvalidSize(_)
            | Error::NotAVariant { .. }
            | Error::UnknownFamily(_)
            | Error::UnknownLabel(_) => ApiError::Unprocessable(e.to_string()),
            _ => ApiError::Internal(e.to_string()),
        }
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::NotYourTurn(_) | SessionError::GameOver | SessionError::Illegal(_) => {
                ApiError::Conflict(e.to_string())
            }
            SessionError::Core(e) => e.into(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, msg) = match self {
            ApiError::NotFound(id) => (StatusCode::NOT_FOUND, format!("no game with id {id}")),
            ApiError::Unprocessable(m) => (StatusCode::UNPROCESSABLE_ENTITY, m),
            ApiError::Conflict(m) => (StatusCode::CONFLICT, m),
            ApiError::Unavailable(m) => (StatusCode::SERVICE_UNAVAILABLE, m),
            ApiError::Internal(m) => (StatusCode::INTERNAL_SERVER_ERROR, m),
        };
        (status, Json(json!({ "error": msg }))).into_response()
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct NewGame {
    pub family: Family,
    pub n: usize,
    #[serde(alias = "human")]
    pub human_player: Player,
    #[serde(default = "default_first")]
    pub first_player: Player,
}

fn default_first() -> Player {
    Player::Left
}

/// A vertex as an index into the graph's vertex list or as a label.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Label(VertexLabel),
}

#[derive(Debug, Clone, Deserialize)]
pub struct MoveRequest {
    pub vertex: VertexRef,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyInfo {
    pub family: Family,
    pub rows: usize,
    pub min_n: usize,
    pub max_n: usize,
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/families", get(families))
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/moves", post(make_move))
        .route("/games/{id}/analysis", get(analysis))
        .with_state(state)
}

async fn families() -> Json<Vec<FamilyInfo>> {
    Json(
        Family::ALL
            .iter()
            .map(|&f| FamilyInfo { family: f, rows: f.rows(), min_n: 1, max_n: f.max_n() })
            .collect(),
    )
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))?
}

async fn create_game(
    State(state): State<Arc<AppState>>,
    body: Result<Json<NewGame>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let Json(req) = body?;
    let id = uuid::Uuid::new_v4().to_string();
    let view = blocking(move || {
        let session = GameSession::start(id.clone(), req.family, req.n, req.human_player, req.first_player)?;
        state.record(&JournalEvent::Create {
            id: id.clone(),
            family: req.family,
            n: req.n,
            human_player: req.human_player,
            first_player: req.first_player,
            engine_opening: session.history().first().map(|p| p.vertex),
        });
        let view = session.view();
        state.sessions.lock().unwrap().insert(id, Arc::new(Mutex::new(session)));
        Ok(view)
    })
    .await?;
    tracing::info!(id = %view.id, family = %view.family, n = view.n, "game created");
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_game(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<SessionView>, ApiError> {
    let session = state.session(&id)?;
    let view = session.lock().unwrap().view();
    Ok(Json(view))
}

async fn make_move(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<SessionView>, ApiError> {
    let session = state.session(&id)?;
    let Json(req) = body?;
    let view = blocking(move || {
        let mut s = session.lock().unwrap();
        let vertex = match req.vertex {
            VertexRef::Index(v) => v,
            VertexRef::Label(l) => s
                .graph()
                .index_of(l)
                .ok_or_else(|| ApiError::Unprocessable(format!("no vertex labelled {l}")))?,
        };
        let engine_reply = s.human_move(vertex)?;
        state.record(&JournalEvent::Move { id, vertex, engine_reply });
        Ok(s.view())
    })
    .await?;
    Ok(Json(view))
}

async fn analysis(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<AnalysisView>, ApiError> {
    let session = state.session(&id)?;
    let snapshot = session.lock().unwrap().clone();
    let view = blocking(move || Ok(snapshot.analysis()?)).await?;
    Ok(Json(view))
}

pub async fn serve(args: &ServeArgs) -> anyhow::Result<()> {
    let state = match &args.journal {
        Some(path) => AppState::with_journal(path)?,
        None => AppState::default(),
    };
    let host = if args.open { Ipv4Addr::UNSPECIFIED } else { Ipv4Addr::LOCALHOST };
    let addr = SocketAddr::from((host, args.port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(state))).await?;
    Ok(())
}
