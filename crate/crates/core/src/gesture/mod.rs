//! Sliding-window gesture recognition over skeleton frames.

mod detectors;
mod history;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::{round_count, Scalar};

pub use detectors::{
    detect_hands_forward, detect_hands_up, detect_hands_up_folded, detect_left_sweep, detect_right_sweep,
    detect_zoom_in, detect_zoom_out,
};
pub use history::{FrameHistory, HistoryError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gesture {
    HandsUp,
    RightSweep,
    ZoomIn,
    ZoomOut,
    LeftSweep,
    HandsForward,
    HandsUpFolded,
}

impl Gesture {
    pub const ALL: [Gesture; 7] = [
        Gesture::HandsUp,
        Gesture::RightSweep,
        Gesture::ZoomIn,
        Gesture::ZoomOut,
        Gesture::LeftSweep,
        Gesture::HandsForward,
        Gesture::HandsUpFolded,
    ];

    /// Arbitration order used by [`detect_all`].
    pub const PRIORITY: [Gesture; 7] = [
        Gesture::HandsUpFolded,
        Gesture::HandsUp,
        Gesture::HandsForward,
        Gesture::RightSweep,
        Gesture::LeftSweep,
        Gesture::ZoomIn,
        Gesture::ZoomOut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gesture::HandsUp => "HandsUp",
            Gesture::RightSweep => "RightSweep",
            Gesture::ZoomIn => "ZoomIn",
            Gesture::ZoomOut => "ZoomOut",
            Gesture::LeftSweep => "LeftSweep",
            Gesture::HandsForward => "HandsForward",
            Gesture::HandsUpFolded => "HandsUpFolded",
        }
    }

    pub fn detect<T: Scalar>(self, history: &FrameHistory<T>, params: &GestureParams<T>) -> bool {
        match self {
            Gesture::HandsUp => detect_hands_up(history, params),
            Gesture::RightSweep => detect_right_sweep(history, params),
            Gesture::ZoomIn => detect_zoom_in(history, params),
            Gesture::ZoomOut => detect_zoom_out(history, params),
            Gesture::LeftSweep => detect_left_sweep(history, params),
            Gesture::HandsForward => detect_hands_forward(history, params),
            Gesture::HandsUpFolded => detect_hands_up_folded(history, params),
        }
    }
}

impl fmt::Display for Gesture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown gesture `{0}`")]
pub struct UnknownGesture(pub String);

impl FromStr for Gesture {
    type Err = UnknownGesture;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Gesture::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| UnknownGesture(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamsError {
    #[error("gesture period must be positive")]
    GesturePeriod,
    #[error("fps must be positive")]
    Fps,
    #[error("debounce period must be non-negative")]
    Debounce,
    #[error("window of {0} frames is too short (need at least 2)")]
    WindowTooShort(usize),
    #[error("threshold `{0}` must be non-negative")]
    Threshold(&'static str),
}

/// Detector timing and thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GestureParams<T> {
    /// Seconds of motion inspected by the windowed detectors.
    pub gesture_period: T,
    pub fps: T,
    /// Refractory time after any detection.
    pub debounce_period: T,
    /// Maximum lateral hand gap (m) that counts as folded.
    pub fold_gap: T,
    /// Minimum distance (m) of the hands in front of the shoulder center.
    pub forward_reach: T,
    /// Per-frame tolerance (m) on monotone hand spread for zooms.
    pub zoom_slack: T,
}

impl<T: Scalar> Default for GestureParams<T> {
    fn default() -> Self {
        Self {
            gesture_period: T::one(),
            fps: T::lit(30.0),
            debounce_period: T::one(),
            fold_gap: T::lit(0.10),
            forward_reach: T::lit(0.35),
            zoom_slack: T::lit(0.02),
        }
    }
}

impl<T: Scalar> GestureParams<T> {
    pub fn new(gesture_period: T, fps: T) -> Result<Self, ParamsError> {
        let p = Self { gesture_period, fps, ..Self::default() };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        let positive = |v: T| v.is_finite() && v > T::zero();
        let non_negative = |v: T| v.is_finite() && v >= T::zero();
        if !positive(self.gesture_period) {
            return Err(ParamsError::GesturePeriod);
        }
        if !positive(self.fps) {
            return Err(ParamsError::Fps);
        }
        if !non_negative(self.debounce_period) {
            return Err(ParamsError::Debounce);
        }
        for (name, v) in [("fold_gap", self.fold_gap), ("forward_reach", self.forward_reach), ("zoom_slack", self.zoom_slack)] {
            if !non_negative(v) {
                return Err(ParamsError::Threshold(name));
            }
        }
        let w = self.window_len();
        if w < 2 {
            return Err(ParamsError::WindowTooShort(w));
        }
        Ok(())
    }

    /// Frames per window: `round(gesture_period * fps)`.
    pub fn window_len(&self) -> usize {
        round_count(self.gesture_period * self.fps)
    }

    /// Frames a static pose must be held: half a window, at least 2.
    pub fn hold_len(&self) -> usize {
        round_count(T::lit(0.5) * self.gesture_period * self.fps).max(2)
    }

    /// A history capacity comfortably larger than one window.
    pub fn history_capacity(&self) -> usize {
        2 * self.window_len() + 1
    }
}

/// Runs all detectors in priority order, honoring the debounce period.
///
/// On a detection the newest frame's timestamp is recorded in the history.
pub fn detect_all<T: Scalar>(history: &mut FrameHistory<T>, params: &GestureParams<T>) -> Option<(Gesture, T)> {
    let now = history.newest()?.timestamp;
    if let Some(last) = history.last_detection_time {
        if now - last < params.debounce_period {
            return None;
        }
    }
    let gesture = Gesture::PRIORITY.into_iter().find(|g| g.detect(history, params))?;
    history.last_detection_time = Some(now);
    Some((gesture, now))
}
