//! Single-session event loop shared by replay and the network service.
//!
//! The engine owns one [`Session`] and its gesture history. Inputs are applied
//! strictly in the order they are handed in.

use guidance_core::commands::{gesture_to_command, parse_speech_token, Command, ControlMode};
use guidance_core::gesture::{detect_all, Gesture, HistoryError};
use guidance_core::workflow::SessionError;
use guidance_core::{
    validate_frame, Event, FloorPoint, FrameHistory, GestureParams, JointId, PartsDb, Session, SessionState,
    SkeletonFrame, WorkflowConfig,
};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EngineConfig {
    pub params: GestureParams,
    pub workflow: WorkflowConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Event(Event),
    Detected { gesture: Gesture, t: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("unrecognized phrase `{0}`")]
    UnrecognizedPhrase(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error(transparent)]
    History(#[from] HistoryError),
}

pub struct Engine {
    session: Session,
    history: FrameHistory,
}

impl Engine {
    pub fn new(db: PartsDb, config: EngineConfig) -> Result<Self, SessionError> {
        let history = FrameHistory::new(config.params.history_capacity().max(1));
        let session = Session::with_config(db, config.params, config.workflow)?;
        Ok(Self { session, history })
    }

    pub fn session(&self) -> &Session {
        &self.session
    }

    fn command(&mut self, cmd: Command) -> Vec<Output> {
        self.session.handle_command(cmd).iter().cloned().map(Output::Event).collect()
    }

    /// Speech reaches the workflow unless gesture control is active; in gesture
    /// mode only `start` and selection phrases are accepted by voice.
    pub fn speech(&mut self, text: &str) -> Result<Vec<Output>, EngineError> {
        let cmd = parse_speech_token(text).ok_or_else(|| EngineError::UnrecognizedPhrase(text.to_string()))?;
        let forwarded = match self.session.control_mode() {
            Some(ControlMode::Gesture) => cmd == Command::Start || cmd.is_selection(),
            _ => true,
        };
        Ok(if forwarded { self.command(cmd) } else { Vec::new() })
    }

    /// Applies a recognized gesture, honoring control and assembly mode gating.
    pub fn gesture(&mut self, gesture: Gesture) -> Vec<Output> {
        if self.session.control_mode() != Some(ControlMode::Gesture) {
            return Vec::new();
        }
        match self.session.assembly_mode().and_then(|mode| gesture_to_command(gesture, mode)) {
            Some(cmd) => self.command(cmd),
            None => Vec::new(),
        }
    }

    /// Feeds one skeleton frame: guidance from the hip position, then gesture
    /// detection when gesture control is active.
    pub fn frame(&mut self, frame: SkeletonFrame) -> Result<Vec<Output>, EngineError> {
        if let Err(violations) = validate_frame(&frame) {
            let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
            return Err(EngineError::InvalidFrame(list.join("; ")));
        }
        let hip = frame[JointId::HipCenter];
        self.history.push_frame(frame)?;

        let mut out = Vec::new();
        if matches!(self.session.state(), SessionState::Guiding { .. } | SessionState::StepActive { .. }) {
            let events = self.session.handle_position(FloorPoint::new(hip.x, hip.z));
            out.extend(events.iter().cloned().map(Output::Event));
        }
        if self.session.control_mode() == Some(ControlMode::Gesture) {
            if let Some((gesture, t)) = detect_all(&mut self.history, self.session.params()) {
                out.push(Output::Detected { gesture, t });
                out.extend(self.gesture(gesture));
            }
        }
        Ok(out)
    }
}
