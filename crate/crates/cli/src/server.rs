//! HTTP/JSON review API.
//!
//! All mutations go through the single [`Store`] behind a write lock and are
//! persisted before the response is sent. Reads take the read lock and see a
//! consistent snapshot.

use std::sync::{Arc, PoisonError, RwLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{HeaderName, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use slangguard_core::{
    ConceptEntry, DetectionReport, Error, LexiconEntry, PipelineConfig, ReviewAction,
    ReviewDecision, Store, SuspiciousRecord,
};

/// Response header carrying the promotion threshold on `GET /api/suspicious`.
pub const THRESHOLD_HEADER: &str = "x-promotion-threshold";

pub struct AppState {
    store: RwLock<Store>,
    config: PipelineConfig,
}

pub type SharedState = Arc<AppState>;

pub fn state(store: Store, config: PipelineConfig) -> SharedState {
    Arc::new(AppState {
        store: RwLock::new(store),
        config,
    })
}

pub fn router(state: SharedState) -> Router {
    Router::new()
        .route("/api/suspicious", get(list_suspicious))
        .route("/api/suspicious/{word}/decision", post(decide))
        .route("/api/lexicon/slang", get(list_slang))
        .route("/api/concepts", get(list_concepts))
        .route("/api/filter", post(filter))
        .route("/api/audit", get(audit))
        .with_state(state)
}

pub struct ApiError {
    status: StatusCode,
    message: String,
}

#[derive(Serialize)]
struct ErrorBody {
    error: String,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (
            self.status,
            Json(ErrorBody {
                error: self.message,
            }),
        )
            .into_response()
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::UnknownSuspicious(_) => StatusCode::NOT_FOUND,
            Error::Io { .. } | Error::Malformed { .. } => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError {
            status,
            message: e.to_string(),
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError {
            status: r.status(),
            message: r.body_text(),
        }
    }
}

async fn list_suspicious(State(state): State<SharedState>) -> impl IntoResponse {
    let store = state.store.read().unwrap_or_else(PoisonError::into_inner);
    let rows: Vec<SuspiciousRecord> = store.bundle().suspicious().to_vec();
    let threshold = HeaderValue::from(state.config.learner.threshold());
    (
        [(HeaderName::from_static(THRESHOLD_HEADER), threshold)],
        Json(rows),
    )
}

async fn list_slang(State(state): State<SharedState>) -> Json<Vec<LexiconEntry>> {
    let store = state.store.read().unwrap_or_else(PoisonError::into_inner);
    Json(store.bundle().slang().to_vec())
}

async fn list_concepts(State(state): State<SharedState>) -> Json<Vec<ConceptEntry>> {
    let store = state.store.read().unwrap_or_else(PoisonError::into_inner);
    Json(store.bundle().concepts().to_vec())
}

#[derive(Deserialize)]
pub struct FilterRequest {
    pub text: String,
}

async fn filter(
    State(state): State<SharedState>,
    req: Result<Json<FilterRequest>, JsonRejection>,
) -> Result<Json<DetectionReport>, ApiError> {
    let Json(req) = req?;
    let mut store = state.store.write().unwrap_or_else(PoisonError::into_inner);
    Ok(Json(store.filter(&req.text, &state.config)?))
}

#[derive(Deserialize)]
pub struct DecisionRequest {
    pub action: ReviewAction,
}

async fn decide(
    State(state): State<SharedState>,
    Path(word): Path<String>,
    req: Result<Json<DecisionRequest>, JsonRejection>,
) -> Result<Json<ReviewDecision>, ApiError> {
    let Json(req) = req?;
    let mut store = state.store.write().unwrap_or_else(PoisonError::into_inner);
    Ok(Json(store.review(&word, req.action)?))
}

async fn audit(State(state): State<SharedState>) -> Result<Json<Vec<ReviewDecision>>, ApiError> {
    let store = state.store.read().unwrap_or_else(PoisonError::into_inner);
    Ok(Json(store.audit()?))
}
