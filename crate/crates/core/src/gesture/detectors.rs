//! Per-gesture detectors. Each inspects the newest frames of a
//! [`FrameHistory`] and answers whether its gesture is present.
//!
//! Every detector returns `false` while the history holds no more than
//! `round(gesture_period * fps)` frames.

use super::{FrameHistory, GestureParams};
use crate::scalar::Scalar;
use crate::skeleton::{JointId, SkeletonFrame};

/// Joints and lateral orientation for one arm's sweep.
struct SweepSide {
    hand: JointId,
    wrist: JointId,
    elbow: JointId,
    /// +1 for the right arm, -1 for the mirrored left arm.
    sign: f64,
}

const RIGHT: SweepSide =
    SweepSide { hand: JointId::HandRight, wrist: JointId::WristRight, elbow: JointId::ElbowRight, sign: 1.0 };
const LEFT: SweepSide =
    SweepSide { hand: JointId::HandLeft, wrist: JointId::WristLeft, elbow: JointId::ElbowLeft, sign: -1.0 };

fn has_enough<T: Scalar>(history: &FrameHistory<T>, params: &GestureParams<T>) -> bool {
    history.len() > params.window_len()
}

#[allow(clippy::if_same_then_else)]
fn sweep<T: Scalar>(history: &FrameHistory<T>, params: &GestureParams<T>, side: &SweepSide) -> bool {
    let index = params.window_len();
    if !has_enough(history, params) {
        return false;
    }
    let first = history.len() - index;
    let anchor = history.get(first).expect("index within history");
    let s = T::lit(side.sign);
    // lateral coordinate, oriented so that the sweep direction is positive
    let lat = |v: T| v * s;
    let start = lat(anchor[side.hand].x);
    let reference = anchor[JointId::ShoulderCenter].y - anchor[JointId::Spine].y;

    for f in history.iter().skip(first) {
        let hand = f[side.hand];
        let wrist = f[side.wrist];
        let elbow = f[side.elbow];
        let head = f[JointId::Head];
        let shoulder = f[JointId::ShoulderCenter];

        if hand.y > head.y {
            return false;
        } else if lat(hand.x) < lat(wrist.x) {
            return false;
        } else if lat(elbow.x) > lat(hand.x) {
            return false;
        }
        if lat(hand.x) > lat(shoulder.x)
            && elbow.y > hand.y
            && hand.y > shoulder.y
            && lat(hand.x) > start + reference
        {
            return true;
        }
    }
    false
}

/// Right-hand sweep, following the reference listing line for line.
pub fn detect_right_sweep<T: Scalar>(history: &FrameHistory<T>, params: &GestureParams<T>) -> bool {
    sweep(history, params, &RIGHT)
}

/// Left-hand sweep: the right sweep under `x -> -x` and a left/right joint swap.
pub fn detect_left_sweep<T: Scalar>(history: &FrameHistory<T>, params: &GestureParams<T>) -> bool {
    sweep(history, params, &LEFT)
}

fn both_hands_above_head<T: Scalar>(f: &SkeletonFrame<T>) -> bool {
    let head = f[JointId::Head].y;
    f[JointId::HandLeft].y > head && f[JointId::HandRight].y > head
}

fn hands_folded<T: Scalar>(f: &SkeletonFrame<T>, params: &GestureParams<T>) -> bool {
    (f[JointId::HandLeft].x - f[JointId::HandRight].x).abs() < params.fold_gap
}

fn hold<T: Scalar>(
    history: &FrameHistory<T>,
    params: &GestureParams<T>,
    pred: impl Fn(&SkeletonFrame<T>) -> bool,
) -> bool {
    if !has_enough(history, params) {
        return false;
    }
    match history.tail(params.hold_len()) {
        Some(mut frames) => frames.all(pred),
        None => false,
    }
}

/// Both hands held above the head, apart.
pub fn detect_hands_up<T: Scalar>(history: &FrameHistory<T>, params: &GestureParams<T>) -> bool {
    hold(history, params, |f| both_hands_above_head(f) && !hands_folded(f, params))
}

/// Both hands held above the head with the hands brought together.
pub fn detect_hands_up_folded<T: Scalar>(history: &FrameHistory<T>, params: &GestureParams<T>) -> bool {
    hold(history, params, |f| both_hands_above_head(f) && hands_folded(f, params))
}

fn in_chest_band<T: Scalar>(f: &SkeletonFrame<T>, hand: JointId) -> bool {
    let y = f[hand].y;
    y > f[JointId::Spine].y && y < f[JointId::Head].y
}

/// Both hands pushed out towards the sensor at chest height.
pub fn detect_hands_forward<T: Scalar>(history: &FrameHistory<T>, params: &GestureParams<T>) -> bool {
    hold(history, params, |f| {
        let shoulder_z = f[JointId::ShoulderCenter].z;
        [JointId::HandLeft, JointId::HandRight]
            .into_iter()
            .all(|h| shoulder_z - f[h].z > params.forward_reach && in_chest_band(f, h))
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Zoom {
    In,
    Out,
}

fn zoom<T: Scalar>(history: &FrameHistory<T>, params: &GestureParams<T>, dir: Zoom) -> bool {
    if !has_enough(history, params) {
        return false;
    }
    let Some(window) = history.tail(params.window_len()) else {
        return false;
    };
    let frames: Vec<&SkeletonFrame<T>> = window.collect();
    let band_ok = frames
        .iter()
        .all(|f| in_chest_band(f, JointId::HandLeft) && in_chest_band(f, JointId::HandRight));
    if !band_ok {
        return false;
    }
    let spread: Vec<T> = frames.iter().map(|f| f[JointId::HandLeft].distance(&f[JointId::HandRight])).collect();
    let first = frames[0];
    let reference = first[JointId::ShoulderCenter].y - first[JointId::Spine].y;
    let (d0, dn) = (spread[0], spread[spread.len() - 1]);
    let slack = params.zoom_slack;
    match dir {
        Zoom::In => dn - d0 > reference && spread.windows(2).all(|w| w[1] >= w[0] - slack),
        Zoom::Out => d0 - dn > reference && spread.windows(2).all(|w| w[1] <= w[0] + slack),
    }
}

/// Hands moving apart by more than the shoulder-to-spine height.
pub fn detect_zoom_in<T: Scalar>(history: &FrameHistory<T>, params: &GestureParams<T>) -> bool {
    zoom(history, params, Zoom::In)
}

/// Hands moving together by more than the shoulder-to-spine height.
pub fn detect_zoom_out<T: Scalar>(history: &FrameHistory<T>, params: &GestureParams<T>) -> bool {
    zoom(history, params, Zoom::Out)
}
