//! 20-joint skeleton model, stream recordings and synthetic trajectories.
//!
//! Coordinates are sensor-centric meters: `x` lateral (positive towards the
//! subject's left), `y` up, `z` depth away from the sensor.

mod recording;
mod synth;

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::Scalar;

pub use recording::{parse_recording, serialize_recording, RecordingError};
pub use synth::{synth_trajectory, SynthError, TrajectorySpec, Waypoint};

pub const JOINT_COUNT: usize = 20;

/// Tracked body joints, in canonical stream order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JointId {
    Head,
    ShoulderCenter,
    ShoulderLeft,
    ShoulderRight,
    ElbowLeft,
    ElbowRight,
    WristLeft,
    WristRight,
    HandLeft,
    HandRight,
    Spine,
    HipCenter,
    HipLeft,
    HipRight,
    KneeLeft,
    KneeRight,
    AnkleLeft,
    AnkleRight,
    FootLeft,
    FootRight,
}

impl JointId {
    pub const ALL: [JointId; JOINT_COUNT] = [
        JointId::Head,
        JointId::ShoulderCenter,
        JointId::ShoulderLeft,
        JointId::ShoulderRight,
        JointId::ElbowLeft,
        JointId::ElbowRight,
        JointId::WristLeft,
        JointId::WristRight,
        JointId::HandLeft,
        JointId::HandRight,
        JointId::Spine,
        JointId::HipCenter,
        JointId::HipLeft,
        JointId::HipRight,
        JointId::KneeLeft,
        JointId::KneeRight,
        JointId::AnkleLeft,
        JointId::AnkleRight,
        JointId::FootLeft,
        JointId::FootRight,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            JointId::Head => "Head",
            JointId::ShoulderCenter => "ShoulderCenter",
            JointId::ShoulderLeft => "ShoulderLeft",
            JointId::ShoulderRight => "ShoulderRight",
            JointId::ElbowLeft => "ElbowLeft",
            JointId::ElbowRight => "ElbowRight",
            JointId::WristLeft => "WristLeft",
            JointId::WristRight => "WristRight",
            JointId::HandLeft => "HandLeft",
            JointId::HandRight => "HandRight",
            JointId::Spine => "Spine",
            JointId::HipCenter => "HipCenter",
            JointId::HipLeft => "HipLeft",
            JointId::HipRight => "HipRight",
            JointId::KneeLeft => "KneeLeft",
            JointId::KneeRight => "KneeRight",
            JointId::AnkleLeft => "AnkleLeft",
            JointId::AnkleRight => "AnkleRight",
            JointId::FootLeft => "FootLeft",
            JointId::FootRight => "FootRight",
        }
    }

    /// The same joint on the other side of the body. Midline joints map to themselves.
    pub fn mirrored(self) -> JointId {
        use JointId::*;
        match self {
            ShoulderLeft => ShoulderRight,
            ShoulderRight => ShoulderLeft,
            ElbowLeft => ElbowRight,
            ElbowRight => ElbowLeft,
            WristLeft => WristRight,
            WristRight => WristLeft,
            HandLeft => HandRight,
            HandRight => HandLeft,
            HipLeft => HipRight,
            HipRight => HipLeft,
            KneeLeft => KneeRight,
            KneeRight => KneeLeft,
            AnkleLeft => AnkleRight,
            AnkleRight => AnkleLeft,
            FootLeft => FootRight,
            FootRight => FootLeft,
            other => other,
        }
    }
}

impl fmt::Display for JointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown joint name `{0}`")]
pub struct UnknownJoint(pub String);

impl FromStr for JointId {
    type Err = UnknownJoint;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        JointId::ALL
            .iter()
            .copied()
            .find(|j| j.name() == s)
            .ok_or_else(|| UnknownJoint(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointPosition<T> {
    pub x: T,
    pub y: T,
    pub z: T,
    /// Measured (`true`) rather than inferred by the tracker.
    pub tracked: bool,
}

impl<T: Scalar> JointPosition<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z, tracked: true }
    }

    pub fn distance(&self, other: &Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// One timestamped sample of the skeleton.
///
/// Joints are stored by [`JointId`] slot; a well-formed frame has all slots
/// filled (see [`validate_frame`]).
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonFrame<T> {
    pub timestamp: T,
    joints: [Option<JointPosition<T>>; JOINT_COUNT],
}

impl<T: Scalar> SkeletonFrame<T> {
    /// Frame with no joints set.
    pub fn empty(timestamp: T) -> Self {
        Self { timestamp, joints: [None; JOINT_COUNT] }
    }

    /// Frame with every joint set from `positions`, in [`JointId::ALL`] order.
    pub fn from_positions(timestamp: T, positions: [JointPosition<T>; JOINT_COUNT]) -> Self {
        Self { timestamp, joints: positions.map(Some) }
    }

    pub fn get(&self, joint: JointId) -> Option<&JointPosition<T>> {
        self.joints[joint.index()].as_ref()
    }

    pub fn set(&mut self, joint: JointId, position: JointPosition<T>) {
        self.joints[joint.index()] = Some(position);
    }

    pub fn remove(&mut self, joint: JointId) -> Option<JointPosition<T>> {
        self.joints[joint.index()].take()
    }

    pub fn is_complete(&self) -> bool {
        self.joints.iter().all(Option::is_some)
    }

    pub fn joints(&self) -> impl Iterator<Item = (JointId, &JointPosition<T>)> {
        JointId::ALL
            .iter()
            .zip(self.joints.iter())
            .filter_map(|(id, p)| p.as_ref().map(|p| (*id, p)))
    }

    /// Applies `f` to every present joint.
    pub fn map_positions(&self, mut f: impl FnMut(JointId, &JointPosition<T>) -> JointPosition<T>) -> Self {
        let mut out = Self::empty(self.timestamp);
        for (id, p) in self.joints() {
            out.set(id, f(id, p));
        }
        out
    }

    /// Left/right mirror image: negates `x` and swaps sided joints.
    pub fn mirrored(&self) -> Self {
        let mut out = Self::empty(self.timestamp);
        for (id, p) in self.joints() {
            out.set(id.mirrored(), JointPosition { x: -p.x, ..*p });
        }
        out
    }

    /// Rigid translation of every joint.
    pub fn translated(&self, dx: T, dy: T, dz: T) -> Self {
        self.map_positions(|_, p| JointPosition { x: p.x + dx, y: p.y + dy, z: p.z + dz, tracked: p.tracked })
    }
}

impl<T: Scalar> Index<JointId> for SkeletonFrame<T> {
    type Output = JointPosition<T>;

    /// Panics if the joint is missing; histories only hold complete frames.
    fn index(&self, joint: JointId) -> &JointPosition<T> {
        self.get(joint)
            .unwrap_or_else(|| panic!("frame at t={} is missing joint {joint}", self.timestamp))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FrameViolation {
    MissingJoint(JointId),
    NonFiniteCoordinate(JointId),
    NonPositiveDepth(JointId),
    BadTimestamp,
}

impl fmt::Display for FrameViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameViolation::MissingJoint(j) => write!(f, "missing joint {j}"),
            FrameViolation::NonFiniteCoordinate(j) => write!(f, "non-finite coordinate in {j}"),
            FrameViolation::NonPositiveDepth(j) => write!(f, "non-positive depth in {j}"),
            FrameViolation::BadTimestamp => f.write_str("timestamp must be finite and non-negative"),
        }
    }
}

/// Checks every frame invariant and names each violation found.
pub fn validate_frame<T: Scalar>(frame: &SkeletonFrame<T>) -> Result<(), Vec<FrameViolation>> {
    let mut violations = Vec::new();
    if !frame.timestamp.is_finite() || frame.timestamp < T::zero() {
        violations.push(FrameViolation::BadTimestamp);
    }
    for id in JointId::ALL {
        match frame.get(id) {
            None => violations.push(FrameViolation::MissingJoint(id)),
            Some(p) => {
                if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
                    violations.push(FrameViolation::NonFiniteCoordinate(id));
                } else if p.tracked && p.z <= T::zero() {
                    violations.push(FrameViolation::NonPositiveDepth(id));
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StreamError {
    #[error("nominal fps must be positive and finite")]
    BadFps,
    #[error("non-monotone timestamp at frame {0}")]
    NonMonotone(usize),
}

/// A recorded or synthesized sequence of frames.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameStream<T> {
    nominal_fps: T,
    frames: Vec<SkeletonFrame<T>>,
}

impl<T: Scalar> FrameStream<T> {
    pub fn new(nominal_fps: T, frames: Vec<SkeletonFrame<T>>) -> Result<Self, StreamError> {
        if !(nominal_fps.is_finite() && nominal_fps > T::zero()) {
            return Err(StreamError::BadFps);
        }
        if let Some(i) = frames.windows(2).position(|w| w[1].timestamp <= w[0].timestamp) {
            return Err(StreamError::NonMonotone(i + 1));
        }
        Ok(Self { nominal_fps, frames })
    }

    pub fn nominal_fps(&self) -> T {
        self.nominal_fps
    }

    pub fn frames(&self) -> &[SkeletonFrame<T>] {
        &self.frames
    }

    pub fn into_frames(self) -> Vec<SkeletonFrame<T>> {
        self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }
}

/// A neutral standing pose 2.5 m in front of the sensor, hands at the sides.
pub fn rest_pose<T: Scalar>() -> [JointPosition<T>; JOINT_COUNT] {
    const REST: [(f64, f64, f64); JOINT_COUNT] = [
        (0.0, 0.80, 2.5),    // Head
        (0.0, 0.50, 2.5),    // ShoulderCenter
        (0.18, 0.45, 2.5),   // ShoulderLeft
        (-0.18, 0.45, 2.5),  // ShoulderRight
        (0.22, 0.18, 2.5),   // ElbowLeft
        (-0.22, 0.18, 2.5),  // ElbowRight
        (0.24, -0.05, 2.5),  // WristLeft
        (-0.24, -0.05, 2.5), // WristRight
        (0.25, -0.12, 2.5),  // HandLeft
        (-0.25, -0.12, 2.5), // HandRight
        (0.0, 0.20, 2.5),    // Spine
        (0.0, 0.0, 2.5),     // HipCenter
        (0.10, -0.05, 2.5),  // HipLeft
        (-0.10, -0.05, 2.5), // HipRight
        (0.11, -0.50, 2.5),  // KneeLeft
        (-0.11, -0.50, 2.5), // KneeRight
        (0.12, -0.90, 2.5),  // AnkleLeft
        (-0.12, -0.90, 2.5), // AnkleRight
        (0.12, -0.97, 2.45), // FootLeft
        (-0.12, -0.97, 2.45), // FootRight
    ];
    REST.map(|(x, y, z)| JointPosition::new(T::lit(x), T::lit(y), T::lit(z)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rest_frame() -> SkeletonFrame<f64> {
        SkeletonFrame::from_positions(0.0, rest_pose())
    }

    #[test]
    fn joint_set_is_twenty_distinct_names() {
        let mut names: Vec<_> = JointId::ALL.iter().map(|j| j.name()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 20);
        for j in JointId::ALL {
            assert_eq!(j.name().parse::<JointId>().unwrap(), j);
            assert_eq!(j.mirrored().mirrored(), j);
        }
        assert!("Neck".parse::<JointId>().is_err());
    }

    #[test]
    fn well_formed_frame_is_ok() {
        assert_eq!(validate_frame(&rest_frame()), Ok(()));
    }

    #[test]
    fn missing_joint_is_named() {
        let mut f = rest_frame();
        f.remove(JointId::FootLeft);
        let v = validate_frame(&f).unwrap_err();
        assert_eq!(v, vec![FrameViolation::MissingJoint(JointId::FootLeft)]);
        assert_eq!(v[0].to_string(), "missing joint FootLeft");
    }

    #[test]
    fn negative_depth_is_named() {
        let mut f = rest_frame();
        let mut hand = f[JointId::HandRight];
        hand.z = -0.5;
        f.set(JointId::HandRight, hand);
        let v = validate_frame(&f).unwrap_err();
        assert_eq!(v, vec![FrameViolation::NonPositiveDepth(JointId::HandRight)]);
        assert!(v[0].to_string().starts_with("non-positive depth"));
    }

    #[test]
    fn every_violation_is_reported() {
        let mut f = rest_frame();
        f.timestamp = f64::NAN;
        f.remove(JointId::Head);
        f.set(JointId::Spine, JointPosition::new(f64::INFINITY, 0.0, 1.0));
        let v = validate_frame(&f).unwrap_err();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn stream_rejects_non_monotone_timestamps() {
        let a = rest_frame();
        let mut b = rest_frame();
        b.timestamp = 0.0;
        assert_eq!(FrameStream::new(30.0, vec![a, b]), Err(StreamError::NonMonotone(1)));
        assert_eq!(FrameStream::<f64>::new(0.0, vec![]), Err(StreamError::BadFps));
    }

    #[test]
    fn mirror_is_an_involution() {
        let f = rest_frame();
        assert_eq!(f.mirrored().mirrored(), f);
        // the rest pose is symmetric
        assert_eq!(f.mirrored(), f);
    }

    #[test]
    fn works_in_single_precision() {
        let f: SkeletonFrame<f32> = SkeletonFrame::from_positions(0.0, rest_pose());
        assert!(validate_frame(&f).is_ok());
    }
}
