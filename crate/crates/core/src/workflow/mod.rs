//! Guided-assembly session: mode selection, step progression, positional
//! guidance with a range alarm, and tool verification signals.
//!
//! A [`Session`] is driven by [`Command`]s and floor-plane position updates.
//! Every call appends at least one [`Event`] to the session's log; requests
//! that do not apply in the current state append [`Event::InvalidCommand`]
//! and leave the state untouched.

mod tool;

use std::fmt;

use thiserror::Error;

use crate::commands::{AssemblyMode, Command, ControlMode};
use crate::gesture::{GestureParams, ParamsError};
use crate::partsdb::{validate_db, DbViolation, FloorPoint, Part, PartsDb};
use crate::scalar::Scalar;

pub use tool::{difference_mask, mask_iou, verify_tool, DepthGrid, Signal, ToolCheck, ToolError, ToolShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    ToLift,
    ToPut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Lift,
    Put,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SessionState {
    Idle,
    AwaitingControlMode,
    AwaitingAssemblyMode,
    AwaitingPartSelection,
    /// Walking the operator to the current part's lift or put point.
    Guiding { step: usize, phase: Phase },
    /// At the put point; the step's work is under way.
    StepActive { step: usize },
    /// Holds the state to restore on resume; never itself `Paused`.
    Paused(Box<SessionState>),
    Finished,
}

impl SessionState {
    pub fn name(&self) -> &'static str {
        match self {
            SessionState::Idle => "Idle",
            SessionState::AwaitingControlMode => "AwaitingControlMode",
            SessionState::AwaitingAssemblyMode => "AwaitingAssemblyMode",
            SessionState::AwaitingPartSelection => "AwaitingPartSelection",
            SessionState::Guiding { .. } => "Guiding",
            SessionState::StepActive { .. } => "StepActive",
            SessionState::Paused(_) => "Paused",
            SessionState::Finished => "Finished",
        }
    }

    /// Step index for guiding and active states.
    pub fn step(&self) -> Option<usize> {
        match self {
            SessionState::Guiding { step, .. } | SessionState::StepActive { step } => Some(*step),
            _ => None,
        }
    }
}

impl fmt::Display for SessionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SessionState::Guiding { step, phase } => write!(f, "Guiding({step}, {phase:?})"),
            SessionState::StepActive { step } => write!(f, "StepActive({step})"),
            SessionState::Paused(prior) => write!(f, "Paused({prior})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepStatus {
    Completed,
    Current,
    YetToStart,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Event<T> {
    ModeSelectionShown,
    AssemblySelectionShown,
    PartSelectionShown,
    InstructionDisplayed { step: usize, image: String, text: String },
    VideoPlay { path: String },
    InstructionRepeated { step: usize },
    Alarm { distance: T },
    SignalGreen,
    SignalRed,
    StatusChanged { step: usize, status: StepStatus },
    TargetReached { step: usize, target: Target },
    Paused,
    Resumed,
    Stopped,
    InvalidCommand { reason: String },
}

impl<T> Event<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Event::ModeSelectionShown => "ModeSelectionShown",
            Event::AssemblySelectionShown => "AssemblySelectionShown",
            Event::PartSelectionShown => "PartSelectionShown",
            Event::InstructionDisplayed { .. } => "InstructionDisplayed",
            Event::VideoPlay { .. } => "VideoPlay",
            Event::InstructionRepeated { .. } => "InstructionRepeated",
            Event::Alarm { .. } => "Alarm",
            Event::SignalGreen => "SignalGreen",
            Event::SignalRed => "SignalRed",
            Event::StatusChanged { .. } => "StatusChanged",
            Event::TargetReached { .. } => "TargetReached",
            Event::Paused => "Paused",
            Event::Resumed => "Resumed",
            Event::Stopped => "Stopped",
            Event::InvalidCommand { .. } => "InvalidCommand",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkflowConfig<T> {
    /// Distance (m) from the current target beyond which the alarm sounds.
    pub range_radius: T,
    /// Distance (m) at which a lift or put target counts as reached.
    pub arrival_radius: T,
    pub tool_check: ToolCheck<T>,
    /// Refuse to finish a full assembly until the last step got a green tool signal.
    pub require_final_verification: bool,
}

impl<T: Scalar> Default for WorkflowConfig<T> {
    fn default() -> Self {
        Self {
            range_radius: T::lit(1.5),
            arrival_radius: T::lit(0.3),
            tool_check: ToolCheck::default(),
            require_final_verification: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SessionError {
    #[error("parts database has no parts")]
    EmptyDb,
    #[error("invalid parts database: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidDb(Vec<DbViolation>),
    #[error("range radius must be positive")]
    BadRangeRadius,
    #[error("arrival radius must be non-negative")]
    BadArrivalRadius,
    #[error(transparent)]
    Params(#[from] ParamsError),
}

/// Returns the distance when `position` lies strictly farther than `radius` from `target`.
pub fn range_alarm<T: Scalar>(position: FloorPoint<T>, target: FloorPoint<T>, radius: T) -> Option<T> {
    let distance = position.distance_to(&target);
    (distance > radius).then_some(distance)
}

#[derive(Debug, Clone)]
pub struct Session<T> {
    db: PartsDb<T>,
    params: GestureParams<T>,
    config: WorkflowConfig<T>,
    control_mode: Option<ControlMode>,
    assembly_mode: Option<AssemblyMode>,
    state: SessionState,
    statuses: Vec<StepStatus>,
    verified_step: Option<usize>,
    events: Vec<Event<T>>,
}

impl<T: Scalar> Session<T> {
    pub fn new(db: PartsDb<T>, params: GestureParams<T>, range_radius: T) -> Result<Self, SessionError> {
        Self::with_config(db, params, WorkflowConfig { range_radius, ..WorkflowConfig::default() })
    }

    pub fn with_config(
        db: PartsDb<T>,
        params: GestureParams<T>,
        config: WorkflowConfig<T>,
    ) -> Result<Self, SessionError> {
        if db.is_empty() {
            return Err(SessionError::EmptyDb);
        }
        validate_db(&db).map_err(SessionError::InvalidDb)?;
        if !(config.range_radius.is_finite() && config.range_radius > T::zero()) {
            return Err(SessionError::BadRangeRadius);
        }
        if !(config.arrival_radius.is_finite() && config.arrival_radius >= T::zero()) {
            return Err(SessionError::BadArrivalRadius);
        }
        params.validate()?;
        let statuses = vec![StepStatus::YetToStart; db.len()];
        Ok(Self {
            db,
            params,
            config,
            control_mode: None,
            assembly_mode: None,
            state: SessionState::Idle,
            statuses,
            verified_step: None,
            events: Vec::new(),
        })
    }

    pub fn db(&self) -> &PartsDb<T> {
        &self.db
    }

    pub fn params(&self) -> &GestureParams<T> {
        &self.params
    }

    pub fn config(&self) -> &WorkflowConfig<T> {
        &self.config
    }

    pub fn state(&self) -> &SessionState {
        &self.state
    }

    pub fn control_mode(&self) -> Option<ControlMode> {
        self.control_mode
    }

    pub fn assembly_mode(&self) -> Option<AssemblyMode> {
        self.assembly_mode
    }

    pub fn statuses(&self) -> &[StepStatus] {
        &self.statuses
    }

    pub fn events(&self) -> &[Event<T>] {
        &self.events
    }

    /// Per-part progress in step order.
    pub fn step_statuses(&self) -> Vec<(u32, StepStatus)> {
        self.db.parts.iter().map(|p| p.id).zip(self.statuses.iter().copied()).collect()
    }

    fn emit(&mut self, event: Event<T>) {
        self.events.push(event);
    }

    fn reject(&mut self, reason: String) {
        self.emit(Event::InvalidCommand { reason });
    }

    fn set_status(&mut self, step: usize, status: StepStatus) {
        if self.statuses[step] != status {
            self.statuses[step] = status;
            self.emit(Event::StatusChanged { step, status });
        }
    }

    fn part(&self, step: usize) -> &Part<T> {
        &self.db.parts[step]
    }

    fn display(&mut self, step: usize, target: Target) {
        let part = self.part(step);
        let (image, text) = match target {
            Target::Lift => (part.image1.clone(), part.commands_lift.clone()),
            Target::Put => (part.image2.clone(), part.commands_put.clone()),
        };
        self.emit(Event::InstructionDisplayed { step, image, text });
    }

    fn enter_step(&mut self, step: usize) {
        self.set_status(step, StepStatus::Current);
        self.state = SessionState::Guiding { step, phase: Phase::ToLift };
        self.display(step, Target::Lift);
    }

    fn start(&mut self) {
        for step in 0..self.statuses.len() {
            self.set_status(step, StepStatus::YetToStart);
        }
        self.control_mode = None;
        self.assembly_mode = None;
        self.verified_step = None;
        self.state = SessionState::AwaitingControlMode;
        self.emit(Event::ModeSelectionShown);
    }

    fn finish(&mut self) {
        self.state = SessionState::Finished;
        self.emit(Event::Stopped);
    }

    fn next(&mut self, step: usize, active: bool) {
        match self.assembly_mode {
            Some(AssemblyMode::Full) => {
                let last = step + 1 == self.db.len();
                if last && self.config.require_final_verification && self.verified_step != Some(step) {
                    self.reject("result not verified: a green tool signal is required on the last step".into());
                    return;
                }
                self.set_status(step, StepStatus::Completed);
                if last {
                    self.finish();
                } else {
                    self.enter_step(step + 1);
                }
            }
            Some(AssemblyMode::Part) if active => {
                self.set_status(step, StepStatus::Completed);
                self.state = SessionState::AwaitingPartSelection;
                self.emit(Event::PartSelectionShown);
            }
            _ => self.reject(format!("NextInstruction is not accepted in {}", self.state)),
        }
    }

    fn previous(&mut self, step: usize) {
        if self.assembly_mode != Some(AssemblyMode::Full) {
            self.reject("PreviousInstruction is only available in full assembly".into());
        } else if step == 0 {
            self.reject("no previous instruction before the first step".into());
        } else {
            self.set_status(step, StepStatus::YetToStart);
            self.enter_step(step - 1);
        }
    }

    fn current_target(&self) -> Option<(usize, Target)> {
        match self.state {
            SessionState::Guiding { step, phase: Phase::ToLift } => Some((step, Target::Lift)),
            SessionState::Guiding { step, phase: Phase::ToPut } | SessionState::StepActive { step } => {
                Some((step, Target::Put))
            }
            _ => None,
        }
    }

    /// Applies one command and returns the events it appended.
    pub fn handle_command(&mut self, cmd: Command) -> &[Event<T>] {
        let mark = self.events.len();
        self.apply(cmd);
        &self.events[mark..]
    }

    fn apply(&mut self, cmd: Command) {
        use Command as C;
        use SessionState as S;

        if cmd == C::Stop {
            self.finish();
            return;
        }
        let state = self.state.clone();
        match (state, cmd) {
            (S::Idle | S::Finished, C::Start) => self.start(),
            (S::Paused(prior), C::Resume) => {
                self.state = *prior;
                self.emit(Event::Resumed);
            }
            (S::Paused(_), other) => self.reject(format!("{other} ignored while paused")),
            (s @ (S::Idle | S::Finished), other) => self.reject(format!("{other} is not accepted in {s}")),
            (s, C::Pause) => {
                self.state = S::Paused(Box::new(s));
                self.emit(Event::Paused);
            }
            (S::AwaitingControlMode, C::SelectSpeechMode | C::SelectGestureMode) => {
                self.control_mode = Some(if cmd == C::SelectSpeechMode {
                    ControlMode::Speech
                } else {
                    ControlMode::Gesture
                });
                self.state = S::AwaitingAssemblyMode;
                self.emit(Event::AssemblySelectionShown);
            }
            (S::AwaitingAssemblyMode, C::SelectFullAssembly) => {
                self.assembly_mode = Some(AssemblyMode::Full);
                self.enter_step(0);
            }
            (S::AwaitingAssemblyMode, C::SelectPartAssembly) => {
                self.assembly_mode = Some(AssemblyMode::Part);
                self.state = S::AwaitingPartSelection;
                self.emit(Event::PartSelectionShown);
            }
            (S::AwaitingPartSelection, C::SelectPart(id)) => match self.db.position_of(id) {
                Some(step) => self.enter_step(step),
                None => self.reject(format!("no part with id {id}")),
            },
            (S::Guiding { step, .. }, C::NextInstruction) => self.next(step, false),
            (S::StepActive { step }, C::NextInstruction) => self.next(step, true),
            (S::Guiding { step, .. } | S::StepActive { step }, C::PreviousInstruction) => self.previous(step),
            (S::Guiding { .. } | S::StepActive { .. }, C::MoreDetails) => {
                let path = self.part(self.state.step().unwrap()).video_path.clone();
                self.emit(Event::VideoPlay { path });
            }
            (S::Guiding { .. } | S::StepActive { .. }, C::RepeatInstruction) => {
                let (step, target) = self.current_target().unwrap();
                self.emit(Event::InstructionRepeated { step });
                self.display(step, target);
            }
            (s, other) => self.reject(format!("{other} is not accepted in {s}")),
        }
    }

    /// Feeds the operator's floor-plane position.
    ///
    /// Sounds the alarm when out of range of the current target and advances
    /// guidance when the target is reached.
    pub fn handle_position(&mut self, position: FloorPoint<T>) -> &[Event<T>] {
        let mark = self.events.len();
        match self.current_target() {
            None => self.reject(format!("position update is not accepted in {}", self.state)),
            Some((step, target)) => {
                let part = self.part(step);
                let point = match target {
                    Target::Lift => part.lift,
                    Target::Put => part.put,
                };
                let distance = position.distance_to(&point);
                if let Some(distance) = range_alarm(position, point, self.config.range_radius) {
                    self.emit(Event::Alarm { distance });
                }
                if let SessionState::Guiding { phase, .. } = self.state {
                    if distance <= self.config.arrival_radius {
                        self.emit(Event::TargetReached { step, target });
                        match phase {
                            Phase::ToLift => {
                                self.state = SessionState::Guiding { step, phase: Phase::ToPut };
                                self.display(step, Target::Put);
                            }
                            Phase::ToPut => self.state = SessionState::StepActive { step },
                        }
                    }
                }
            }
        }
        &self.events[mark..]
    }

    /// Compares two depth images against the expected tool and signals the result.
    pub fn check_tool(
        &mut self,
        before: &DepthGrid<T>,
        during: &DepthGrid<T>,
        template: &ToolShape,
    ) -> Result<&[Event<T>], ToolError> {
        let mark = self.events.len();
        match self.state.step() {
            None => self.reject(format!("tool check is not accepted in {}", self.state)),
            Some(step) => match verify_tool(before, during, template, &self.config.tool_check)? {
                Signal::Green => {
                    self.verified_step = Some(step);
                    self.emit(Event::SignalGreen);
                }
                Signal::Red => self.emit(Event::SignalRed),
            },
        }
        Ok(&self.events[mark..])
    }
}
