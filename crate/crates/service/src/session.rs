//! Game sessions and the in-memory store that owns them.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use sixbox_core::{BoxModel, Color, CoreError, LogPosterior, ObservationSequence};

use crate::journal::{Event, Journal};
use crate::view::StateView;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    RandomSecret,
    ChosenSecret,
    NoSecret,
}

/// How a new session picks (or does not pick) its hidden box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewSession {
    /// Box drawn uniformly; a seed makes the draw reproducible.
    RandomSecret {
        seed: Option<u64>,
    },
    ChosenSecret {
        index: usize,
    },
    /// Belief calculator only, e.g. to follow a game played with a real urn.
    NoSecret,
}

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("no session with id {0}")]
    NotFound(String),
    #[error("session {0} has been revealed and accepts no more draws")]
    Revealed(String),
    #[error("session {0} has no draws to undo")]
    EmptyHistory(String),
    #[error("{0}")]
    Conflict(CoreError),
    #[error("{0}")]
    BadInput(String),
    #[error("journal: {0}")]
    Journal(String),
}

impl From<CoreError> for SessionError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::ContradictoryEvidence => SessionError::Conflict(e),
            other => SessionError::BadInput(other.to_string()),
        }
    }
}

pub type SessionResult<T> = Result<T, SessionError>;

#[derive(Debug, Clone)]
pub struct GameSession {
    id: String,
    mode: Mode,
    secret: Option<usize>,
    prior: LogPosterior,
    history: ObservationSequence,
    beliefs: LogPosterior,
    revealed: bool,
    created_at_ms: u64,
}

impl GameSession {
    fn new(
        id: String,
        mode: Mode,
        secret: Option<usize>,
        model: BoxModel,
        created_at_ms: u64,
    ) -> Self {
        let prior = LogPosterior::uniform(model);
        GameSession {
            id,
            mode,
            secret,
            beliefs: prior.clone(),
            prior,
            history: ObservationSequence::live(),
            revealed: false,
            created_at_ms,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn secret(&self) -> Option<usize> {
        self.secret
    }

    pub fn prior(&self) -> &LogPosterior {
        &self.prior
    }

    pub fn history(&self) -> &ObservationSequence {
        &self.history
    }

    pub fn beliefs(&self) -> &LogPosterior {
        &self.beliefs
    }

    pub fn revealed(&self) -> bool {
        self.revealed
    }

    pub fn created_at_ms(&self) -> u64 {
        self.created_at_ms
    }

    pub fn view(&self) -> StateView {
        StateView::of(self)
    }

    fn observe(&mut self, color: Color) -> SessionResult<()> {
        if self.revealed {
            return Err(SessionError::Revealed(self.id.clone()));
        }
        self.beliefs = self.beliefs.observe(color)?;
        self.history.push(color);
        Ok(())
    }

    fn undo(&mut self) -> SessionResult<()> {
        if self.revealed {
            return Err(SessionError::Revealed(self.id.clone()));
        }
        if self.history.pop().is_none() {
            return Err(SessionError::EmptyHistory(self.id.clone()));
        }
        self.beliefs = self.prior.observe_all(self.history.draws())?;
        Ok(())
    }

    fn reveal(&mut self) {
        self.revealed = true;
    }
}

fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// All live sessions. Each session sits behind its own lock, so different
/// sessions never wait on each other.
#[derive(Debug)]
pub struct SessionStore {
    model: BoxModel,
    sessions: RwLock<HashMap<String, Arc<Mutex<GameSession>>>>,
    journal: Option<Mutex<Journal>>,
}

impl SessionStore {
    pub fn new(model: BoxModel) -> Self {
        SessionStore {
            model,
            sessions: RwLock::new(HashMap::new()),
            journal: None,
        }
    }

    /// Store backed by an append-only journal. Sessions recorded in an
    /// existing journal are restored first.
    pub fn with_journal(model: BoxModel, path: impl AsRef<Path>) -> SessionResult<Self> {
        let path: PathBuf = path.as_ref().to_path_buf();
        let events = Journal::load(&path).map_err(|e| SessionError::Journal(e.to_string()))?;
        let mut store = SessionStore::new(model);
        for (line, event) in events {
            store
                .apply(event)
                .map_err(|e| SessionError::Journal(format!("{}:{line}: {e}", path.display())))?;
        }
        store.journal = Some(Mutex::new(
            Journal::open(&path).map_err(|e| SessionError::Journal(e.to_string()))?,
        ));
        Ok(store)
    }

    pub fn model(&self) -> BoxModel {
        self.model
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("session map poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn record(&self, event: &Event) -> SessionResult<()> {
        if let Some(j) = &self.journal {
            j.lock()
                .expect("journal poisoned")
                .append(event)
                .map_err(|e| SessionError::Journal(e.to_string()))?;
        }
        Ok(())
    }

    /// Replays one journal event without writing it back.
    fn apply(&mut self, event: Event) -> SessionResult<()> {
        match event {
            Event::Create {
                id,
                mode,
                secret,
                balls,
                created_at_ms,
            } => {
                let model = BoxModel::new(balls)?;
                if let Some(s) = secret {
                    model.check_index(s)?;
                }
                let session = GameSession::new(id.clone(), mode, secret, model, created_at_ms);
                self.sessions
                    .get_mut()
                    .expect("session map poisoned")
                    .insert(id, Arc::new(Mutex::new(session)));
                Ok(())
            }
            Event::Observe { id, color } => self.with_session(&id, |s| s.observe(color)),
            Event::Undo { id } => self.with_session(&id, |s| s.undo()),
            Event::Reveal { id } => self.with_session(&id, |s| {
                s.reveal();
                Ok(())
            }),
        }
    }

    fn get(&self, id: &str) -> SessionResult<Arc<Mutex<GameSession>>> {
        self.sessions
            .read()
            .expect("session map poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::NotFound(id.to_string()))
    }

    fn with_session<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut GameSession) -> SessionResult<T>,
    ) -> SessionResult<T> {
        let cell = self.get(id)?;
        let mut session = cell.lock().expect("session poisoned");
        f(&mut session)
    }

    /// Registers a new session and returns its id.
    pub fn create(&self, request: NewSession) -> SessionResult<String> {
        let (mode, secret) = match request {
            NewSession::RandomSecret { seed } => {
                let boxes = self.model.boxes();
                let index = match seed {
                    Some(s) => ChaCha8Rng::seed_from_u64(s).random_range(0..boxes),
                    None => rand::rng().random_range(0..boxes),
                };
                (Mode::RandomSecret, Some(index))
            }
            NewSession::ChosenSecret { index } => {
                self.model.check_index(index)?;
                (Mode::ChosenSecret, Some(index))
            }
            NewSession::NoSecret => (Mode::NoSecret, None),
        };
        let id = uuid::Uuid::new_v4().simple().to_string();
        let created_at_ms = now_ms();
        self.record(&Event::Create {
            id: id.clone(),
            mode,
            secret,
            balls: self.model.balls(),
            created_at_ms,
        })?;
        let session = GameSession::new(id.clone(), mode, secret, self.model, created_at_ms);
        self.sessions
            .write()
            .expect("session map poisoned")
            .insert(id.clone(), Arc::new(Mutex::new(session)));
        Ok(id)
    }

    pub fn state(&self, id: &str) -> SessionResult<StateView> {
        self.with_session(id, |s| Ok(s.view()))
    }

    pub fn observe(&self, id: &str, color: Color) -> SessionResult<StateView> {
        self.with_session(id, |s| {
            let mut next = s.clone();
            next.observe(color)?;
            self.record(&Event::Observe {
                id: id.to_string(),
                color,
            })?;
            *s = next;
            Ok(s.view())
        })
    }

    pub fn undo(&self, id: &str) -> SessionResult<StateView> {
        self.with_session(id, |s| {
            let mut next = s.clone();
            next.undo()?;
            self.record(&Event::Undo { id: id.to_string() })?;
            *s = next;
            Ok(s.view())
        })
    }

    /// Freezes the session and discloses its secret. Revealing twice is
    /// allowed and returns the same view.
    pub fn reveal(&self, id: &str) -> SessionResult<StateView> {
        self.with_session(id, |s| {
            if !s.revealed() {
                self.record(&Event::Reveal { id: id.to_string() })?;
                s.reveal();
            }
            Ok(s.view())
        })
    }

    /// Snapshot of a session, for tests and tooling.
    pub fn snapshot(&self, id: &str) -> SessionResult<GameSession> {
        self.with_session(id, |s| Ok(s.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sixbox_core::Color::{Black, White};

    fn store() -> SessionStore {
        SessionStore::new(BoxModel::default())
    }

    #[test]
    fn sixteen_blacks_then_white() {
        let st = store();
        let id = st.create(NewSession::ChosenSecret { index: 1 }).unwrap();
        let first = st.observe(&id, Black).unwrap();
        assert_eq!(first.posterior[5].0, 0.0);
        for _ in 0..15 {
            st.observe(&id, Black).unwrap();
        }
        let v = st.observe(&id, White).unwrap();
        assert!((v.predictive_white.0 - 0.203948).abs() < 1e-6);
        assert_eq!(v.secret_box, None);
        let r = st.reveal(&id).unwrap();
        assert_eq!(r.secret_box, Some(crate::view::Secret::Box(1)));
    }

    #[test]
    fn observe_after_reveal_conflicts() {
        let st = store();
        let id = st.create(NewSession::NoSecret).unwrap();
        let r = st.reveal(&id).unwrap();
        assert_eq!(
            r.secret_box,
            Some(crate::view::Secret::NoSecret("no secret"))
        );
        assert!(matches!(
            st.observe(&id, Black),
            Err(SessionError::Revealed(_))
        ));
        assert!(matches!(st.undo(&id), Err(SessionError::Revealed(_))));
    }

    #[test]
    fn undo_restores_fresh_state() {
        let st = store();
        let id = st.create(NewSession::NoSecret).unwrap();
        let fresh = st.state(&id).unwrap();
        st.observe(&id, Black).unwrap();
        assert_eq!(st.undo(&id).unwrap(), fresh);
        assert!(matches!(st.undo(&id), Err(SessionError::EmptyHistory(_))));
    }

    #[test]
    fn unknown_and_invalid() {
        let st = store();
        assert!(matches!(st.state("nope"), Err(SessionError::NotFound(_))));
        assert!(matches!(
            st.create(NewSession::ChosenSecret { index: 6 }),
            Err(SessionError::BadInput(_))
        ));
    }

    #[test]
    fn seeded_random_secret_is_reproducible() {
        let st = store();
        let a = st
            .create(NewSession::RandomSecret { seed: Some(9) })
            .unwrap();
        let b = st
            .create(NewSession::RandomSecret { seed: Some(9) })
            .unwrap();
        assert_ne!(a, b);
        let sa = st.snapshot(&a).unwrap().secret();
        assert_eq!(sa, st.snapshot(&b).unwrap().secret());
        assert!(sa.unwrap() < 6);
    }

    #[test]
    fn two_box_contradiction_is_rejected_without_change() {
        let st = SessionStore::new(BoxModel::new(1).unwrap());
        let id = st.create(NewSession::NoSecret).unwrap();
        st.observe(&id, White).unwrap();
        assert!(matches!(
            st.observe(&id, Black),
            Err(SessionError::Conflict(_))
        ));
        assert_eq!(st.state(&id).unwrap().history_length, 1);
    }
}
