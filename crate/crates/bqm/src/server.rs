//! Stateless JSON-over-HTTP service.

use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde_json::json;

use crate::api::{handle, ApiError, Route};

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

async fn dispatch(State(route): State<Route>, body: String) -> Response {
    // class enumeration and sweeps are CPU-bound
    let result = tokio::task::spawn_blocking(move || handle(route, &body)).await;
    match result {
        Ok(Ok(reply)) => json_response(StatusCode::OK, reply.to_json()),
        Ok(Err(ApiError::BadRequest(e))) => json_response(StatusCode::BAD_REQUEST, json!({ "error": e }).to_string()),
        Ok(Err(ApiError::Unprocessable(e))) => json_response(StatusCode::UNPROCESSABLE_ENTITY, json!({ "error": e }).to_string()),
        Err(e) => json_response(StatusCode::INTERNAL_SERVER_ERROR, json!({ "error": e.to_string() }).to_string()),
    }
}

async fn health() -> Response {
    json_response(StatusCode::OK, json!({ "status": "ok" }).to_string())
}

pub fn router() -> Router {
    let mut app = Router::new().route("/api/health", get(health));
    for (path, route) in Route::HTTP {
        app = app.route(path, post(dispatch).with_state(route));
    }
    app
}

pub async fn serve(listener: tokio::net::TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}
