//! Gesture-driven guided assembly.
//!
//! The crate is generic over its floating point type; the aliases at the
//! root pin the common `f64` instantiation.

pub mod commands;
pub mod gesture;
pub mod partsdb;
pub mod scalar;
pub mod skeleton;
pub mod workflow;

pub use commands::{gesture_to_command, parse_speech_token, AssemblyMode, Command, ControlMode};
pub use gesture::{detect_all, Gesture};
pub use partsdb::{parse_parts_xml, validate_db};
pub use scalar::Scalar;
pub use skeleton::{parse_recording, serialize_recording, synth_trajectory, validate_frame, JointId};
pub use workflow::{SessionState, StepStatus};

pub type JointPosition = skeleton::JointPosition<f64>;
pub type SkeletonFrame = skeleton::SkeletonFrame<f64>;
pub type FrameStream = skeleton::FrameStream<f64>;
pub type TrajectorySpec = skeleton::TrajectorySpec<f64>;
pub type Waypoint = skeleton::Waypoint<f64>;
pub type FrameHistory = gesture::FrameHistory<f64>;
pub type GestureParams = gesture::GestureParams<f64>;
pub type FloorPoint = partsdb::FloorPoint<f64>;
pub type Part = partsdb::Part<f64>;
pub type PartsDb = partsdb::PartsDb<f64>;
pub type Session = workflow::Session<f64>;
pub type Event = workflow::Event<f64>;
pub type WorkflowConfig = workflow::WorkflowConfig<f64>;
pub type DepthGrid = workflow::DepthGrid<f64>;

pub type SkeletonFrameF32 = skeleton::SkeletonFrame<f32>;
pub type FrameHistoryF32 = gesture::FrameHistory<f32>;
pub type GestureParamsF32 = gesture::GestureParams<f32>;
pub type SessionF32 = workflow::Session<f32>;
