#![allow(dead_code)]

use guidance_core::gesture::FrameHistory;
use guidance_core::skeleton::{rest_pose, synth_trajectory, JointId, JointPosition, SkeletonFrame, TrajectorySpec, Waypoint};
use rand::Rng;

pub const FPS: f64 = 30.0;

pub type Track = (JointId, Vec<(f64, [f64; 3])>);

/// Builds a stream from per-joint tracks of `(time, [x, y, z])` on top of the rest pose.
pub fn stream(duration: f64, tracks: &[Track]) -> Vec<SkeletonFrame<f64>> {
    let mut spec = TrajectorySpec::new(duration, FPS, rest_pose());
    for (joint, points) in tracks {
        spec = spec.with_track(*joint, points.iter().map(|(t, p)| Waypoint::new(*t, *p)).collect());
    }
    synth_trajectory(&spec).unwrap().into_frames()
}

/// Static pose held for `duration` seconds.
pub fn hold(duration: f64, joints: &[(JointId, [f64; 3])]) -> Vec<SkeletonFrame<f64>> {
    let tracks: Vec<_> = joints.iter().map(|(j, p)| (*j, vec![(0.0, *p)])).collect();
    stream(duration, &tracks)
}

pub fn history_of(frames: &[SkeletonFrame<f64>]) -> FrameHistory<f64> {
    let mut h = FrameHistory::new(frames.len().max(1));
    for f in frames {
        h.push_frame(f.clone()).unwrap();
    }
    h
}

/// Feeds frames one at a time and reports whether `detect` ever fired.
pub fn fires_during(frames: &[SkeletonFrame<f64>], detect: impl Fn(&FrameHistory<f64>) -> bool) -> bool {
    let mut h = FrameHistory::new(61);
    frames.iter().any(|f| {
        h.push_frame(f.clone()).unwrap();
        detect(&h)
    })
}

/// Right-hand sweep from x = 0.05 to x = 0.50 between t = 0.5 s and 1.5 s at
/// hand height 0.55, wrist 2 cm behind the hand and the elbow 25 cm behind at
/// height `elbow_y`.
pub fn right_sweep(elbow_y: f64) -> Vec<SkeletonFrame<f64>> {
    let track = |dx: f64, y: f64| vec![(0.5, [0.05 + dx, y, 2.5]), (1.5, [0.50 + dx, y, 2.5])];
    stream(
        2.0,
        &[
            (JointId::HandRight, track(0.0, 0.55)),
            (JointId::WristRight, track(-0.02, 0.55)),
            (JointId::ElbowRight, track(-0.25, elbow_y)),
        ],
    )
}

/// Same joint positions played backwards, with fresh increasing timestamps.
pub fn time_reversed(frames: &[SkeletonFrame<f64>]) -> Vec<SkeletonFrame<f64>> {
    frames
        .iter()
        .rev()
        .zip(frames.iter())
        .map(|(src, slot)| {
            let mut f = src.clone();
            f.timestamp = slot.timestamp;
            f
        })
        .collect()
}

fn q(v: f64) -> f64 {
    (v * 1024.0).round() / 1024.0
}

fn jitter(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    q(rng.gen_range(lo..hi))
}

/// Random joint walk around a fixed torso. Coordinates sit on a 1/1024 m
/// grid so that translations by multiples of 1/4 m are exact.
///
/// Each arm gets a per-walk drift and joint offsets so that a fair share of
/// walks pass or fail each of the sweep's checks.
pub fn random_walk(rng: &mut impl Rng, len: usize) -> Vec<SkeletonFrame<f64>> {
    let rest = rest_pose::<f64>();
    let sides = [
        (JointId::HandRight, JointId::WristRight, JointId::ElbowRight, 1.0),
        (JointId::HandLeft, JointId::WristLeft, JointId::ElbowLeft, -1.0),
    ];
    struct Arm {
        hand: [f64; 3],
        drift: f64,
        wrist_dx: f64,
        elbow_dx: f64,
        elbow_dy: f64,
    }
    let mut arms: Vec<Arm> = (0..2)
        .map(|_| Arm {
            hand: [jitter(rng, -0.3, 0.2), jitter(rng, 0.45, 0.8), jitter(rng, 2.0, 2.6)],
            drift: jitter(rng, -0.01, 0.03),
            wrist_dx: jitter(rng, -0.04, 0.005),
            elbow_dx: jitter(rng, -0.3, 0.01),
            elbow_dy: jitter(rng, -0.1, 0.2),
        })
        .collect();
    (0..len)
        .map(|k| {
            let mut f = SkeletonFrame::from_positions(k as f64 / FPS, rest);
            for ((hand, wrist, elbow, s), arm) in sides.into_iter().zip(arms.iter_mut()) {
                let h = &mut arm.hand;
                h[0] = q(h[0] + s * (arm.drift + jitter(rng, -0.01, 0.01)));
                h[1] = q(h[1] + jitter(rng, -0.012, 0.012));
                h[2] = q(h[2] + jitter(rng, -0.01, 0.01));
                f.set(hand, JointPosition::new(h[0], h[1], h[2]));
                let wx = q(h[0] + s * (arm.wrist_dx + jitter(rng, -0.004, 0.004)));
                f.set(wrist, JointPosition::new(wx, q(h[1] - 0.02), h[2]));
                let ex = q(h[0] + s * (arm.elbow_dx + jitter(rng, -0.01, 0.01)));
                let ey = q(h[1] + arm.elbow_dy + jitter(rng, -0.02, 0.02));
                f.set(elbow, JointPosition::new(ex, ey, h[2]));
            }
            f
        })
        .collect()
}
