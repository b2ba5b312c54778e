//! HTTP front end for the validation workflow.
//!
//! | method | path              | body / query                                 |
//! |--------|-------------------|----------------------------------------------|
//! | GET    | `/candidates`     | `offset`, `limit`, `category`, `minScore`    |
//! | POST   | `/verdict`        | `{grams, category, verdict, meaning?, addedBy?}` |
//! | POST   | `/false-negative` | `{grams, category?, meaning?, addedBy?}`     |
//! | GET    | `/gold/export`    |                                              |
//! | GET    | `/lemmatize`      | `word`, `level`                              |
//! | GET    | `/stats`          |                                              |

use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;

use mwe_core::review::{ApiError, CandidateQuery, FalseNegativeRequest, ReviewService, VerdictRequest};

pub struct HttpError(ApiError);

impl From<ApiError> for HttpError {
    fn from(e: ApiError) -> Self {
        HttpError(e)
    }
}

impl IntoResponse for HttpError {
    fn into_response(self) -> Response {
        let (status, body) = match self.0 {
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, json!({ "error": m })),
            ApiError::NotFound(m) => (StatusCode::NOT_FOUND, json!({ "error": m })),
            ApiError::Conflict(c) => (
                StatusCode::CONFLICT,
                json!({
                    "error": "conflicting verdict from another session",
                    "existing": c.existing,
                    "proposed": c.proposed,
                }),
            ),
            ApiError::Internal(m) => (StatusCode::INTERNAL_SERVER_ERROR, json!({ "error": m })),
        };
        (status, Json(body)).into_response()
    }
}

type Shared = State<Arc<ReviewService>>;
type Reply = Result<Response, HttpError>;

fn query<T>(q: Result<Query<T>, QueryRejection>) -> Result<T, HttpError> {
    q.map(|Query(t)| t)
        .map_err(|e| HttpError(ApiError::BadRequest(e.body_text())))
}

async fn candidates(State(s): Shared, q: Result<Query<CandidateQuery>, QueryRejection>) -> Reply {
    Ok(Json(s.candidates(&query(q)?)?).into_response())
}

fn body<T>(req: Result<Json<T>, JsonRejection>) -> Result<T, HttpError> {
    req.map(|Json(t)| t)
        .map_err(|e| HttpError(ApiError::BadRequest(e.body_text())))
}

async fn verdict(State(s): Shared, req: Result<Json<VerdictRequest>, JsonRejection>) -> Reply {
    Ok(Json(s.verdict(body(req)?)?).into_response())
}

async fn false_negative(State(s): Shared, req: Result<Json<FalseNegativeRequest>, JsonRejection>) -> Reply {
    let r = s.false_negative(body(req)?)?;
    Ok((StatusCode::CREATED, Json(r)).into_response())
}

async fn gold_export(State(s): Shared) -> Json<serde_json::Value> {
    Json(json!(s.export()))
}

#[derive(Deserialize)]
struct LemmaQuery {
    word: String,
    #[serde(default)]
    level: usize,
}

async fn lemmatize(State(s): Shared, q: Result<Query<LemmaQuery>, QueryRejection>) -> Reply {
    let q = query(q)?;
    Ok(Json(s.lemmatize(&q.word, q.level)?).into_response())
}

async fn stats(State(s): Shared) -> Response {
    Json(s.stats()).into_response()
}

pub fn router(service: Arc<ReviewService>) -> Router {
    Router::new()
        .route("/candidates", get(candidates))
        .route("/verdict", post(verdict))
        .route("/false-negative", post(false_negative))
        .route("/gold/export", get(gold_export))
        .route("/lemmatize", get(lemmatize))
        .route("/stats", get(stats))
        .with_state(service)
}
