//! JSON trajectory descriptions for the `synth` subcommand.
//!
//! ```json
//! {
//!   "duration": 2.0,
//!   "fps": 30,
//!   "rest_pose": { "Head": [0.0, 0.8, 2.5] },
//!   "root": [ { "t": 0.0, "x": 0.0, "z": 0.0 }, { "t": 2.0, "x": -1.0, "z": 1.2 } ],
//!   "tracks": { "HandRight": [ { "t": 0.5, "x": 0.05, "y": 0.55 }, { "t": 1.5, "x": 0.5 } ] }
//! }
//! ```
//!
//! `rest_pose` overrides joints of the default standing pose. Waypoint axes
//! that are left out take the joint's rest value. `root` is a floor-plane
//! offset applied to every joint, so a whole body can walk while its limbs
//! follow body-relative tracks.

use std::collections::BTreeMap;

use guidance_core::skeleton::{rest_pose, synth_trajectory, SynthError, Waypoint};
use guidance_core::{FrameStream, JointId, TrajectorySpec};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryFile {
    pub duration: f64,
    pub fps: f64,
    #[serde(default)]
    pub rest_pose: BTreeMap<String, [f64; 3]>,
    #[serde(default)]
    pub root: Vec<RootPoint>,
    #[serde(default)]
    pub tracks: BTreeMap<String, Vec<WaypointFile>>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootPoint {
    pub t: f64,
    #[serde(default)]
    pub x: f64,
    #[serde(default)]
    pub z: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaypointFile {
    pub t: f64,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub z: Option<f64>,
}

#[derive(Debug, Error)]
pub enum TrajectoryError {
    #[error("trajectory JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    UnknownJoint(#[from] guidance_core::skeleton::UnknownJoint),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error("root waypoints must have increasing times within [0, duration]")]
    BadRoot,
}

fn root_offset(root: &[RootPoint], t: f64) -> (f64, f64) {
    let Some(first) = root.first() else {
        return (0.0, 0.0);
    };
    if t <= first.t {
        return (first.x, first.z);
    }
    for w in root.windows(2) {
        if t <= w[1].t {
            let u = (t - w[0].t) / (w[1].t - w[0].t);
            return (w[0].x + (w[1].x - w[0].x) * u, w[0].z + (w[1].z - w[0].z) * u);
        }
    }
    let last = root[root.len() - 1];
    (last.x, last.z)
}

impl TrajectoryFile {
    pub fn parse(text: &str) -> Result<Self, TrajectoryError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_spec(&self) -> Result<TrajectorySpec, TrajectoryError> {
        let mut rest = rest_pose::<f64>();
        for (name, [x, y, z]) in &self.rest_pose {
            let id: JointId = name.parse()?;
            rest[id.index()] = guidance_core::JointPosition::new(*x, *y, *z);
        }
        let mut spec = TrajectorySpec::new(self.duration, self.fps, rest);
        for (name, points) in &self.tracks {
            let id: JointId = name.parse()?;
            let base = rest[id.index()];
            let waypoints = points
                .iter()
                .map(|w| Waypoint::new(w.t, [w.x.unwrap_or(base.x), w.y.unwrap_or(base.y), w.z.unwrap_or(base.z)]))
                .collect();
            spec = spec.with_track(id, waypoints);
        }
        Ok(spec)
    }

    pub fn synthesize(&self) -> Result<FrameStream, TrajectoryError> {
        let stream = synth_trajectory(&self.to_spec()?)?;
        let ordered = self.root.windows(2).all(|w| w[1].t > w[0].t);
        let in_range = self.root.iter().all(|r| r.t >= 0.0 && r.t <= self.duration);
        if !ordered || !in_range {
            return Err(TrajectoryError::BadRoot);
        }
        if self.root.is_empty() {
            return Ok(stream);
        }
        let fps = stream.nominal_fps();
        let frames = stream
            .into_frames()
            .into_iter()
            .map(|f| {
                let (dx, dz) = root_offset(&self.root, f.timestamp);
                f.translated(dx, 0.0, dz)
            })
            .collect();
        Ok(FrameStream::new(fps, frames).expect("timestamps unchanged"))
    }
}
