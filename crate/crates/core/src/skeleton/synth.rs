//! Piecewise-linear synthetic skeleton streams, used in place of a live sensor.

use thiserror::Error;

use super::{FrameStream, JointId, JointPosition, SkeletonFrame, JOINT_COUNT};
use crate::scalar::{round_count, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Waypoint<T> {
    pub time: T,
    pub position: [T; 3],
}

impl<T> Waypoint<T> {
    pub fn new(time: T, position: [T; 3]) -> Self {
        Self { time, position }
    }
}

/// Describes a synthetic stream: a rest pose plus per-joint waypoint tracks.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySpec<T> {
    pub duration: T,
    pub fps: T,
    pub rest_pose: [JointPosition<T>; JOINT_COUNT],
    pub tracks: Vec<(JointId, Vec<Waypoint<T>>)>,
}

impl<T: Scalar> TrajectorySpec<T> {
    pub fn new(duration: T, fps: T, rest_pose: [JointPosition<T>; JOINT_COUNT]) -> Self {
        Self { duration, fps, rest_pose, tracks: Vec::new() }
    }

    pub fn with_track(mut self, joint: JointId, waypoints: Vec<Waypoint<T>>) -> Self {
        self.tracks.push((joint, waypoints));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("duration must be positive")]
    BadDuration,
    #[error("fps must be positive")]
    BadFps,
    #[error("waypoint at t={time} for {joint} lies outside [0, duration]")]
    WaypointOutOfRange { joint: JointId, time: String },
    #[error("waypoints for {0} are not in increasing time order")]
    UnorderedWaypoints(JointId),
}

fn interpolate<T: Scalar>(track: &[Waypoint<T>], t: T) -> [T; 3] {
    let first = &track[0];
    if t <= first.time {
        return first.position;
    }
    for pair in track.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if t <= b.time {
            let u = (t - a.time) / (b.time - a.time);
            return [0, 1, 2].map(|k| a.position[k] + (b.position[k] - a.position[k]) * u);
        }
    }
    track[track.len() - 1].position
}

/// Generates `round(duration * fps)` frames at timestamps `k / fps`.
///
/// Joints with a track interpolate linearly between waypoints and hold the
/// first/last waypoint outside the track's span; other joints hold the rest pose.
pub fn synth_trajectory<T: Scalar>(spec: &TrajectorySpec<T>) -> Result<FrameStream<T>, SynthError> {
    if !(spec.duration.is_finite() && spec.duration > T::zero()) {
        return Err(SynthError::BadDuration);
    }
    if !(spec.fps.is_finite() && spec.fps > T::zero()) {
        return Err(SynthError::BadFps);
    }
    for (joint, track) in &spec.tracks {
        if let Some(w) = track.iter().find(|w| !(w.time >= T::zero() && w.time <= spec.duration)) {
            return Err(SynthError::WaypointOutOfRange { joint: *joint, time: w.time.to_string() });
        }
        if track.windows(2).any(|p| p[1].time <= p[0].time) {
            return Err(SynthError::UnorderedWaypoints(*joint));
        }
    }

    let count = round_count(spec.duration * spec.fps);
    let frames = (0..count)
        .map(|k| {
            let t = T::from_usize(k).expect("frame index fits scalar") / spec.fps;
            let mut frame = SkeletonFrame::from_positions(t, spec.rest_pose);
            for (joint, track) in spec.tracks.iter().filter(|(_, tr)| !tr.is_empty()) {
                let [x, y, z] = interpolate(track, t);
                let tracked = spec.rest_pose[joint.index()].tracked;
                frame.set(*joint, JointPosition { x, y, z, tracked });
            }
            frame
        })
        .collect();
    Ok(FrameStream::new(spec.fps, frames).expect("k/fps timestamps are increasing"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeleton::{rest_pose, validate_frame};

    #[test]
    fn rest_only_gives_identical_frames() {
        let spec = TrajectorySpec::<f64>::new(1.0, 30.0, rest_pose());
        let s = synth_trajectory(&spec).unwrap();
        assert_eq!(s.len(), 30);
        for (k, f) in s.frames().iter().enumerate() {
            assert_eq!(f.timestamp, k as f64 / 30.0);
            assert!(f.joints().map(|(_, p)| *p).eq(s.frames()[0].joints().map(|(_, p)| *p)));
            assert!(validate_frame(f).is_ok());
        }
    }

    #[test]
    fn hand_interpolates_linearly() {
        let rest = rest_pose::<f64>();
        let h = rest[JointId::HandRight.index()];
        let spec = TrajectorySpec::new(1.0, 30.0, rest).with_track(
            JointId::HandRight,
            vec![Waypoint::new(0.0, [0.1, h.y, h.z]), Waypoint::new(1.0, [0.6, h.y, h.z])],
        );
        let s = synth_trajectory(&spec).unwrap();
        // t = 15/30 = 0.5, halfway between 0.1 and 0.6
        assert!((s.frames()[15][JointId::HandRight].x - 0.35).abs() < 1e-9);
        assert_eq!(s.frames()[15][JointId::HandLeft], rest[JointId::HandLeft.index()]);
    }

    #[test]
    fn holds_outside_track_span() {
        let rest = rest_pose::<f64>();
        let spec = TrajectorySpec::new(2.0, 10.0, rest).with_track(
            JointId::Head,
            vec![Waypoint::new(0.5, [0.0, 1.0, 2.0]), Waypoint::new(1.0, [1.0, 1.0, 2.0])],
        );
        let s = synth_trajectory(&spec).unwrap();
        assert_eq!(s.frames()[0][JointId::Head].x, 0.0);
        assert_eq!(s.frames()[19][JointId::Head].x, 1.0);
    }

    #[test]
    fn precondition_errors() {
        let rest = rest_pose::<f64>();
        assert_eq!(synth_trajectory(&TrajectorySpec::new(1.0, 0.0, rest)), Err(SynthError::BadFps));
        assert_eq!(synth_trajectory(&TrajectorySpec::new(0.0, 30.0, rest)), Err(SynthError::BadDuration));
        let late = TrajectorySpec::new(1.0, 30.0, rest)
            .with_track(JointId::Head, vec![Waypoint::new(1.5, [0.0, 1.0, 2.0])]);
        assert!(matches!(synth_trajectory(&late), Err(SynthError::WaypointOutOfRange { .. })));
        let unordered = TrajectorySpec::new(1.0, 30.0, rest).with_track(
            JointId::Head,
            vec![Waypoint::new(0.5, [0.0, 1.0, 2.0]), Waypoint::new(0.2, [0.0, 1.0, 2.0])],
        );
        assert_eq!(synth_trajectory(&unordered), Err(SynthError::UnorderedWaypoints(JointId::Head)));
    }
}
