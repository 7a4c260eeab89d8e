//! Read-only HTTP server for a scene document and the viewer's static files.

use std::future::Future;
use std::net::SocketAddr;
use std::path::{Component, Path, PathBuf};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Request, State};
use axum::http::{header, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use tokio::net::TcpListener;

use crate::error::Result;
use crate::scene::SceneDocument;

pub const SCENE_PATH: &str = "/scene.json";

const PLACEHOLDER_PAGE: &str = r#"<!doctype html>
<html lang="en">
<head><meta charset="utf-8"><title>tricube</title></head>
<body>
<p>No viewer bundle was configured for this server.</p>
<p>The scene document is available at <a href="/scene.json">/scene.json</a>.</p>
</body>
</html>
"#;

struct Shared {
    scene: Bytes,
    index: Bytes,
    assets: Option<PathBuf>,
}

pub struct SceneServer {
    listener: TcpListener,
    router: Router,
    dataset: String,
}

impl SceneServer {
    /// Loads and validates the document, then binds `addr`. Without an
    /// asset directory, `/` serves a minimal placeholder page.
    pub async fn bind(doc: &Path, assets: Option<&Path>, addr: SocketAddr) -> Result<Self> {
        let text = tokio::fs::read_to_string(doc).await?;
        let scene = SceneDocument::from_json(&text)?;
        let index = match assets {
            Some(dir) => Bytes::from(tokio::fs::read(dir.join("index.html")).await?),
            None => Bytes::from_static(PLACEHOLDER_PAGE.as_bytes()),
        };
        let shared = Arc::new(Shared {
            scene: Bytes::from(text),
            index,
            assets: assets.map(Path::to_path_buf),
        });
        let router = Router::new()
            .route("/", get(index_page))
            .route(SCENE_PATH, get(scene_document))
            .fallback(static_asset)
            .with_state(shared);
        let listener = TcpListener::bind(addr).await?;
        Ok(SceneServer {
            listener,
            router,
            dataset: scene.meta.dataset,
        })
    }

    pub fn local_addr(&self) -> Result<SocketAddr> {
        Ok(self.listener.local_addr()?)
    }

    pub fn dataset(&self) -> &str {
        &self.dataset
    }

    /// Serves until `shutdown` resolves, then drains open connections.
    pub async fn run_until(
        self,
        shutdown: impl Future<Output = ()> + Send + 'static,
    ) -> Result<()> {
        axum::serve(self.listener, self.router)
            .with_graceful_shutdown(shutdown)
            .await?;
        Ok(())
    }
}

/// Validates `doc` and serves it on `127.0.0.1:port` until `shutdown`.
pub async fn serve_scene(
    doc: &Path,
    assets: Option<&Path>,
    port: u16,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> Result<()> {
    let server = SceneServer::bind(doc, assets, SocketAddr::from(([127, 0, 0, 1], port))).await?;
    server.run_until(shutdown).await
}

async fn index_page(State(shared): State<Arc<Shared>>) -> Response {
    (
        [(header::CONTENT_TYPE, "text/html; charset=utf-8")],
        shared.index.clone(),
    )
        .into_response()
}

async fn scene_document(State(shared): State<Arc<Shared>>) -> Response {
    (
        [(header::CONTENT_TYPE, "application/json")],
        shared.scene.clone(),
    )
        .into_response()
}

async fn static_asset(State(shared): State<Arc<Shared>>, request: Request) -> Response {
    if request.method() != Method::GET && request.method() != Method::HEAD {
        return StatusCode::METHOD_NOT_ALLOWED.into_response();
    }
    let Some(dir) = &shared.assets else {
        return StatusCode::NOT_FOUND.into_response();
    };
    let Some(relative) = sanitize(request.uri().path()) else {
        return StatusCode::NOT_FOUND.into_response();
    };
    match tokio::fs::read(dir.join(&relative)).await {
        Ok(bytes) => ([(header::CONTENT_TYPE, content_type(&relative))], bytes).into_response(),
        Err(_) => StatusCode::NOT_FOUND.into_response(),
    }
}

/// Maps a request path to a relative file path, refusing anything that could
/// leave the asset directory.
fn sanitize(path: &str) -> Option<PathBuf> {
    let trimmed = path.trim_start_matches('/');
    if trimmed.is_empty() || trimmed.contains('\\') {
        return None;
    }
    let candidate = PathBuf::from(trimmed);
    candidate
        .components()
        .all(|c| matches!(c, Component::Normal(s) if !s.to_string_lossy().starts_with('.')))
        .then_some(candidate)
}

fn content_type(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("html") => "text/html; charset=utf-8",
        Some("js" | "mjs") => "text/javascript",
        Some("css") => "text/css",
        Some("json") => "application/json",
        Some("svg") => "image/svg+xml",
        Some("png") => "image/png",
        Some("wasm") => "application/wasm",
        Some("map") => "application/json",
        _ => "application/octet-stream",
    }
}
