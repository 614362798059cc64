//! HTTP routes over a [`SessionStore`].

use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;
use tower_http::services::ServeDir;

use sixbox_core::Color;

use crate::session::{NewSession, SessionError, SessionStore};
use crate::view::StateView;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn bad_request(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            code: "bad_request",
            message: message.into(),
        }
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let (status, code) = match &e {
            SessionError::NotFound(_) => (StatusCode::NOT_FOUND, "not_found"),
            SessionError::Revealed(_) => (StatusCode::CONFLICT, "revealed"),
            SessionError::EmptyHistory(_) => (StatusCode::CONFLICT, "empty_history"),
            SessionError::Conflict(_) => (StatusCode::CONFLICT, "contradictory_evidence"),
            SessionError::BadInput(_) => (StatusCode::BAD_REQUEST, "bad_request"),
            SessionError::Journal(_) => (StatusCode::INTERNAL_SERVER_ERROR, "journal"),
        };
        ApiError {
            status,
            code,
            message: e.to_string(),
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::bad_request(e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (
            self.status,
            Json(json!({ "error": self.code, "message": self.message })),
        )
            .into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

#[derive(Debug, Deserialize)]
struct CreateBody {
    mode: String,
    #[serde(rename = "box")]
    index: Option<usize>,
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
struct ObserveBody {
    color: String,
}

fn parse_mode(body: &CreateBody) -> ApiResult<NewSession> {
    match body.mode.as_str() {
        "random-secret" => Ok(NewSession::RandomSecret { seed: body.seed }),
        "chosen-secret" => body
            .index
            .map(|index| NewSession::ChosenSecret { index })
            .ok_or_else(|| ApiError::bad_request("chosen-secret mode needs a box")),
        "no-secret" => Ok(NewSession::NoSecret),
        other => Err(ApiError::bad_request(format!(
            "unknown mode {other:?} (expected random-secret, chosen-secret or no-secret)"
        ))),
    }
}

async fn create(
    State(store): State<Arc<SessionStore>>,
    body: Result<Json<CreateBody>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<serde_json::Value>)> {
    let Json(body) = body?;
    let id = store.create(parse_mode(&body)?)?;
    Ok((StatusCode::CREATED, Json(json!({ "id": id }))))
}

async fn state(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> ApiResult<Json<StateView>> {
    Ok(Json(store.state(&id)?))
}

async fn observe(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    body: Result<Json<ObserveBody>, JsonRejection>,
) -> ApiResult<Json<StateView>> {
    let Json(body) = body?;
    let color = match body.color.as_str() {
        "B" => Color::Black,
        "W" => Color::White,
        other => {
            return Err(ApiError::bad_request(format!(
                "invalid color {other:?} (expected \"B\" or \"W\")"
            )))
        }
    };
    Ok(Json(store.observe(&id, color)?))
}

async fn undo(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> ApiResult<Json<StateView>> {
    Ok(Json(store.undo(&id)?))
}

async fn reveal(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> ApiResult<Json<StateView>> {
    Ok(Json(store.reveal(&id)?))
}

async fn healthz() -> &'static str {
    "ok"
}

/// API routes, plus static files from `static_dir` for every other path.
pub fn router(store: Arc<SessionStore>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/healthz", get(healthz))
        .route("/sessions", post(create))
        .route("/sessions/{id}/state", get(state))
        .route("/sessions/{id}/observe", post(observe))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/reveal", post(reveal))
        .with_state(store);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}
