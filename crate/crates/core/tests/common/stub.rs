//! In-process HTTP stand-ins for the completion provider and scoring sidecar.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Duration;

use axum::extract::State;
use axum::http::{HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde_json::{json, Value};

pub const API_KEY: &str = "test-key";
pub const EMBED_DIM: usize = 64;

pub fn serve(router: Router) -> String {
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    listener.set_nonblocking(true).unwrap();
    let addr = listener.local_addr().unwrap();
    std::thread::spawn(move || {
        let rt = tokio::runtime::Builder::new_multi_thread()
            .worker_threads(4)
            .enable_all()
            .build()
            .unwrap();
        rt.block_on(async move {
            let listener = tokio::net::TcpListener::from_std(listener).unwrap();
            axum::serve(listener, router).await.unwrap();
        });
    });
    format!("http://{addr}")
}

#[derive(Default)]
pub struct ChatStub {
    pub bodies: Mutex<Vec<Value>>,
    per_model: Mutex<HashMap<String, usize>>,
    in_flight: AtomicUsize,
    pub max_in_flight: AtomicUsize,
}

impl ChatStub {
    pub fn hits(&self, model: &str) -> usize {
        self.per_model.lock().unwrap().get(model).copied().unwrap_or(0)
    }
}

/// Behaviour is chosen by model id: `flaky` fails twice with 500, `down`
/// always returns 503, `broken` returns 400, `blank` answers empty once,
/// `slow` sleeps; anything else echoes the prompt.
async fn chat(State(stub): State<Arc<ChatStub>>, headers: HeaderMap, Json(body): Json<Value>) -> Response {
    if headers.get("authorization").and_then(|v| v.to_str().ok()) != Some(&format!("Bearer {API_KEY}")) {
        return (StatusCode::UNAUTHORIZED, "bad key").into_response();
    }
    let model = body["model"].as_str().unwrap_or_default().to_string();
    let prompt = body["messages"][0]["content"].as_str().unwrap_or_default().to_string();
    stub.bodies.lock().unwrap().push(body);
    let n = {
        let mut m = stub.per_model.lock().unwrap();
        let e = m.entry(model.clone()).or_default();
        *e += 1;
        *e
    };
    let content = match model.as_str() {
        "flaky" if n <= 2 => return (StatusCode::INTERNAL_SERVER_ERROR, "boom").into_response(),
        "down" => return (StatusCode::SERVICE_UNAVAILABLE, "down").into_response(),
        "broken" => return (StatusCode::BAD_REQUEST, "no such model").into_response(),
        "blank" if n == 1 => String::new(),
        "slow" => {
            let now = stub.in_flight.fetch_add(1, Ordering::SeqCst) + 1;
            stub.max_in_flight.fetch_max(now, Ordering::SeqCst);
            tokio::time::sleep(Duration::from_millis(40)).await;
            stub.in_flight.fetch_sub(1, Ordering::SeqCst);
            format!("slow: {prompt}")
        }
        _ => format!("echo: {prompt}"),
    };
    Json(json!({
        "id": "stub",
        "choices": [{"index": 0, "message": {"role": "assistant", "content": content}, "finish_reason": "stop"}]
    }))
    .into_response()
}

pub fn chat_server() -> (String, Arc<ChatStub>) {
    let stub = Arc::new(ChatStub::default());
    let router = Router::new()
        .route("/v1/chat/completions", post(chat))
        .with_state(stub.clone());
    (serve(router), stub)
}

/// Deterministic unit vector from hashed character trigrams.
pub fn stub_embedding(text: &str) -> Vec<f64> {
    let chars: Vec<char> = format!("  {text}  ").chars().collect();
    let mut v = vec![0.0f64; EMBED_DIM];
    for w in chars.windows(3) {
        let mut h: u64 = 0xcbf29ce484222325;
        for c in w {
            h ^= u64::from(*c);
            h = h.wrapping_mul(0x100000001b3);
        }
        v[(h % EMBED_DIM as u64) as usize] += 1.0;
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / norm).collect()
}

#[derive(Default)]
pub struct SidecarStub {
    pub embed_calls: AtomicUsize,
    pub comet_calls: AtomicUsize,
}

async fn embed(State(stub): State<Arc<SidecarStub>>, Json(body): Json<Value>) -> Response {
    stub.embed_calls.fetch_add(1, Ordering::SeqCst);
    let Some(texts) = body["texts"].as_array().filter(|t| !t.is_empty()) else {
        return (StatusCode::BAD_REQUEST, "texts must be a nonempty list").into_response();
    };
    let vectors: Vec<Vec<f64>> = texts
        .iter()
        .map(|t| stub_embedding(t.as_str().unwrap_or_default()))
        .collect();
    Json(json!({"vectors": vectors, "dim": EMBED_DIM})).into_response()
}

async fn comet(State(stub): State<Arc<SidecarStub>>, Json(body): Json<Value>) -> Response {
    stub.comet_calls.fetch_add(1, Ordering::SeqCst);
    let Some(items) = body["items"].as_array() else {
        return (StatusCode::BAD_REQUEST, "items missing").into_response();
    };
    let mut scores = Vec::new();
    for item in items {
        let (Some(_), Some(mt), Some(reference)) = (item["src"].as_str(), item["mt"].as_str(), item["ref"].as_str())
        else {
            return (StatusCode::BAD_REQUEST, "missing field").into_response();
        };
        let s = errprompt::intensity::chrf_default(mt, reference).unwrap_or(0.0) / 100.0;
        scores.push(s);
    }
    Json(json!({"scores": scores})).into_response()
}

pub fn sidecar_server() -> (String, Arc<SidecarStub>) {
    let stub = Arc::new(SidecarStub::default());
    let router = Router::new()
        .route("/embed", post(embed))
        .route("/comet", post(comet))
        .route("/healthz", get(|| async { "ok" }))
        .with_state(stub.clone());
    (serve(router), stub)
}
