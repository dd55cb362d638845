//! Replay runner, network service and command-line front end for the
//! assembly guidance core.

pub mod engine;
pub mod replay;
pub mod script;
pub mod serve;
pub mod trajectory;
pub mod wire;

pub use engine::{Engine, EngineConfig, EngineError, Output};
pub use replay::{run_replay, ReplayOptions, ReplayOutcome};
