//! Line-by-line transcription of the RightSweep listing, kept apart from the
//! engine so the two can be compared.
//!
//! `history` plays the role of `localhistory`, oldest entry first. The length
//! guard runs before `start` is read. `Reference` is read from the entry that
//! supplies `start`.

use guidance_core::skeleton::{JointId, SkeletonFrame};

fn y(frame: &SkeletonFrame<f64>, joint: JointId) -> f64 {
    frame.get(joint).expect("complete frame").y
}

fn x(frame: &SkeletonFrame<f64>, joint: JointId) -> f64 {
    frame.get(joint).expect("complete frame").x
}

#[allow(clippy::collapsible_if, clippy::if_same_then_else)]
pub fn right_sweep(gesture_period: f64, fps: f64, history: &[SkeletonFrame<f64>]) -> bool {
    let index = (gesture_period * fps).round() as usize;
    let count = history.len();
    if count <= index {
        return false;
    }
    let first = &history[count - index];
    let start = x(first, JointId::HandRight);
    let reference = y(first, JointId::ShoulderCenter) - y(first, JointId::Spine);
    for data in &history[count - index..] {
        if y(data, JointId::HandRight) > y(data, JointId::Head) {
            return false;
        } else if x(data, JointId::HandRight) < x(data, JointId::WristRight) {
            return false;
        } else if x(data, JointId::ElbowRight) > x(data, JointId::HandRight) {
            return false;
        }
        if x(data, JointId::HandRight) > x(data, JointId::ShoulderCenter) {
            if y(data, JointId::ElbowRight) > y(data, JointId::HandRight) {
                if y(data, JointId::HandRight) > y(data, JointId::ShoulderCenter) {
                    if x(data, JointId::HandRight) > start + reference {
                        return true;
                    }
                }
            }
        }
    }
    false
}
