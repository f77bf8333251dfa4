use axum::body::Body;
use axum::http::{Request, StatusCode};
use bqm::api::{handle, Route};
use bqm::server::router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tokio::io::{AsyncReadExt, AsyncWriteExt};
use tower::ServiceExt;

async fn post(path: &str, body: &str) -> (StatusCode, String) {
    let req = Request::post(path).header("content-type", "application/json").body(Body::from(body.to_string())).unwrap();
    let resp = router().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

#[tokio::test]
async fn health() {
    let resp = router().oneshot(Request::get("/api/health").body(Body::empty()).unwrap()).await.unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    assert_eq!(serde_json::from_slice::<Value>(&bytes).unwrap(), json!({"status": "ok"}));
}

#[tokio::test]
async fn mutate_matches_the_cli_example() {
    let (s, body) = post("/api/mutate", r#"{"quiver":{"vertices":[1,2,3],"arrows":[[1,2],[2,3]]},"vertex":2}"#).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(body, r#"{"vertices":[1,2,3],"arrows":[[1,3],[2,1],[3,2]]}"#);
}

#[tokio::test]
async fn wordeq_braid_relation() {
    let (s, body) = post("/api/wordeq", r#"{"type":"A2","w1":"s1 s2 s1","w2":"s2 s1 s2"}"#).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(serde_json::from_str::<Value>(&body).unwrap(), json!({"equal": true, "normal_form_trivial": true}));
}

#[tokio::test]
async fn error_statuses() {
    let (s, body) = post("/api/mutate", "{").await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert!(serde_json::from_str::<Value>(&body).unwrap()["error"].is_string());
    let (s, _) = post("/api/mutate", r#"{"type":"A3","vertex":1,"colour":"red"}"#).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    // a triple arrow inside a connected rank-3 quiver is mutation-infinite
    let (s, body) = post("/api/class", r#"{"quiver":{"vertices":[1,2,3],"arrows":[[1,2],[1,2],[1,2],[2,3]]}}"#).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(serde_json::from_str::<Value>(&body).unwrap()["error"].is_string());
    let (s, _) = post("/api/wordeq", r#"{"quiver":{"vertices":[1,2],"arrows":[[1,2],[1,2]]},"w1":"s1","w2":"s1"}"#).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn every_endpoint_answers_and_agrees_with_the_handler() {
    let requests = [
        (Route::Mutate, r#"{"type":"D4","path":[2,1]}"#),
        (Route::Presentation, r#"{"type":"A3","coxeter":true}"#),
        (Route::WordEq, r#"{"type":"D4","w1":[1,2,1],"w2":[2,1,2],"verbose":true}"#),
        (Route::Phi, r#"{"type":"A4","vertex":2,"inverse":true}"#),
        (Route::Class, r#"{"type":"A4"}"#),
        (Route::SurfaceFlip, r#"{"type":"D4","vertex":4}"#),
        (Route::SurfaceQuiver, r#"{"type":"D5"}"#),
        (Route::QpMutate, r#"{"type":"A4","path":[2,3,2]}"#),
        (Route::K0Verify, r#"{"type":"E6","pullback":3,"matrices":true}"#),
    ];
    for (path, route) in Route::HTTP {
        let body = requests.iter().find(|(r, _)| *r == route).expect("request for every route").1;
        let (s, got) = post(path, body).await;
        assert_eq!(s, StatusCode::OK, "{path}: {got}");
        assert_eq!(got, handle(route, body).unwrap().to_json(), "{path}");
    }
}

#[tokio::test]
async fn stateless() {
    let a = post("/api/class", r#"{"type":"A3"}"#).await;
    post("/api/mutate", r#"{"type":"A3","vertex":2}"#).await;
    post("/api/class", r#"{"type":"D5","members":false}"#).await;
    assert_eq!(post("/api/class", r#"{"type":"A3"}"#).await, a);
}

#[tokio::test]
async fn serves_over_tcp() {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(bqm::server::serve(listener));
    let mut stream = tokio::net::TcpStream::connect(addr).await.unwrap();
    stream.write_all(b"GET /api/health HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n").await.unwrap();
    let mut resp = String::new();
    stream.read_to_string(&mut resp).await.unwrap();
    assert!(resp.starts_with("HTTP/1.1 200"), "{resp}");
    assert!(resp.ends_with(r#"{"status":"ok"}"#), "{resp}");
}
