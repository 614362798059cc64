//! Live "hidden box" game over HTTP.
//!
//! A session hides one box; players report each drawn color and get back the
//! updated beliefs, the probability of white on the next draw, the frequency
//! and rule-of-succession baselines, and odds against the leading box.
//!
//! | method | path                     | body                          |
//! |--------|--------------------------|-------------------------------|
//! | POST   | `/sessions`              | `{mode, box?, seed?}` → `{id}` |
//! | GET    | `/sessions/{id}/state`   |                               |
//! | POST   | `/sessions/{id}/observe` | `{color: "B" \| "W"}`          |
//! | POST   | `/sessions/{id}/undo`    |                               |
//! | POST   | `/sessions/{id}/reveal`  |                               |
//! | GET    | `/healthz`               |                               |
//!
//! Errors come back as `{error, message}` with 400, 404 or 409.

mod http;
pub mod journal;
mod session;
mod view;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

pub use http::{router, ApiError};
pub use session::{GameSession, Mode, NewSession, SessionError, SessionResult, SessionStore};
pub use view::{Num, Secret, StateView, SummaryView};

/// Binds `addr` and serves until the process is stopped. Binding errors
/// (e.g. port in use) are returned before anything is served.
pub async fn serve(
    addr: SocketAddr,
    store: Arc<SessionStore>,
    static_dir: Option<PathBuf>,
) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, "serving");
    axum::serve(listener, router(store, static_dir)).await
}
