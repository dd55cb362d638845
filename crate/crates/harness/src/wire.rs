//! Newline-delimited JSON protocol spoken between the session service and
//! operator clients.
//!
//! Every message is one JSON object on its own line, tagged by `kind`.

use std::collections::BTreeMap;

use guidance_core::skeleton::{JointId, JointPosition, SkeletonFrame};
use guidance_core::workflow::{Target, Event as SessionEvent};
use guidance_core::{validate_frame, Event, Session, StepStatus};
use serde::{Deserialize, Serialize};

use crate::engine::Output;

pub const PROTOCOL_VERSION: &str = "gav1";

/// Tracked flag as sent by clients: `true`/`false` or `1`/`0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TrackedFlag {
    Flag(bool),
    Number(f64),
}

impl TrackedFlag {
    fn is_tracked(self) -> bool {
        match self {
            TrackedFlag::Flag(b) => b,
            TrackedFlag::Number(n) => n != 0.0,
        }
    }
}

pub type WireJoint = (f64, f64, f64, TrackedFlag);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Inbound {
    Hello { version: String },
    Speech { text: String },
    Frame { t: f64, joints: BTreeMap<String, WireJoint> },
    Gesture { name: String },
    Status {},
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WireStatus {
    pub id: u32,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum WireEvent {
    ModeSelectionShown,
    AssemblySelectionShown,
    PartSelectionShown,
    InstructionDisplayed { step: usize, image: String, text: String },
    VideoPlay { path: String },
    InstructionRepeated { step: usize },
    Alarm { distance: f64 },
    SignalGreen,
    SignalRed,
    StatusChanged { step: usize, status: String },
    TargetReached { step: usize, target: String },
    Paused,
    Resumed,
    Stopped,
    InvalidCommand { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outbound {
    Event(WireEvent),
    /// A gesture recognized from the frame stream, before command mapping.
    Detected { gesture: String, t: f64 },
    Statuses { state: String, list: Vec<WireStatus> },
    Error { message: String },
    Ack {},
}

pub fn status_name(s: StepStatus) -> &'static str {
    match s {
        StepStatus::Completed => "Completed",
        StepStatus::Current => "Current",
        StepStatus::YetToStart => "YetToStart",
    }
}

impl From<&Event> for WireEvent {
    fn from(e: &Event) -> Self {
        match e {
            SessionEvent::ModeSelectionShown => WireEvent::ModeSelectionShown,
            SessionEvent::AssemblySelectionShown => WireEvent::AssemblySelectionShown,
            SessionEvent::PartSelectionShown => WireEvent::PartSelectionShown,
            SessionEvent::InstructionDisplayed { step, image, text } => {
                WireEvent::InstructionDisplayed { step: *step, image: image.clone(), text: text.clone() }
            }
            SessionEvent::VideoPlay { path } => WireEvent::VideoPlay { path: path.clone() },
            SessionEvent::InstructionRepeated { step } => WireEvent::InstructionRepeated { step: *step },
            SessionEvent::Alarm { distance } => WireEvent::Alarm { distance: *distance },
            SessionEvent::SignalGreen => WireEvent::SignalGreen,
            SessionEvent::SignalRed => WireEvent::SignalRed,
            SessionEvent::StatusChanged { step, status } => {
                WireEvent::StatusChanged { step: *step, status: status_name(*status).to_string() }
            }
            SessionEvent::TargetReached { step, target } => WireEvent::TargetReached {
                step: *step,
                target: match target {
                    Target::Lift => "Lift".into(),
                    Target::Put => "Put".into(),
                },
            },
            SessionEvent::Paused => WireEvent::Paused,
            SessionEvent::Resumed => WireEvent::Resumed,
            SessionEvent::Stopped => WireEvent::Stopped,
            SessionEvent::InvalidCommand { reason } => WireEvent::InvalidCommand { reason: reason.clone() },
        }
    }
}

impl From<&Output> for Outbound {
    fn from(o: &Output) -> Self {
        match o {
            Output::Event(e) => Outbound::Event(e.into()),
            Output::Detected { gesture, t } => Outbound::Detected { gesture: gesture.name().to_string(), t: *t },
        }
    }
}

pub fn statuses_message(session: &Session) -> Outbound {
    Outbound::Statuses {
        state: session.state().to_string(),
        list: session
            .step_statuses()
            .into_iter()
            .map(|(id, s)| WireStatus { id, status: status_name(s).to_string() })
            .collect(),
    }
}

impl Outbound {
    /// One line of JSON, without the trailing newline.
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("outbound messages always serialize")
    }
}

/// Converts a wire frame into a validated skeleton frame.
pub fn frame_from_wire(t: f64, joints: &BTreeMap<String, WireJoint>) -> Result<SkeletonFrame<f64>, String> {
    let mut frame = SkeletonFrame::empty(t);
    for (name, (x, y, z, tracked)) in joints {
        let id: JointId = name.parse().map_err(|e| format!("{e}"))?;
        frame.set(id, JointPosition { x: *x, y: *y, z: *z, tracked: tracked.is_tracked() });
    }
    validate_frame(&frame).map_err(|v| {
        let list: Vec<String> = v.iter().map(ToString::to_string).collect();
        format!("invalid frame: {}", list.join("; "))
    })?;
    Ok(frame)
}

pub fn frame_to_wire(frame: &SkeletonFrame<f64>) -> Inbound {
    Inbound::Frame {
        t: frame.timestamp,
        joints: frame
            .joints()
            .map(|(id, p)| (id.name().to_string(), (p.x, p.y, p.z, TrackedFlag::Number(f64::from(u8::from(p.tracked))))))
            .collect(),
    }
}
