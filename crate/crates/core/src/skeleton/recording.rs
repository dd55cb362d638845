//! Line-oriented text format for skeleton streams.
//!
//! ```text
//! SKSTREAM v1 fps=30
//! t=0 Head:0,0.8,2.5,1 ShoulderCenter:0,0.5,2.5,1 ...
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::{FrameStream, JointId, JointPosition, SkeletonFrame, JOINT_COUNT};
use crate::scalar::Scalar;

const MAGIC: &str = "SKSTREAM";
const VERSION: &str = "v1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RecordingError {
    #[error("malformed header at line {line}: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("non-monotone timestamp at line {line}")]
    NonMonotone { line: usize },
    #[error("missing joint {joint} at line {line}")]
    MissingJoint { line: usize, joint: JointId },
    #[error("unexpected joint group `{found}` at line {line} (expected {expected})")]
    UnexpectedJoint { line: usize, expected: JointId, found: String },
    #[error("non-numeric field `{field}` at line {line}")]
    NotNumeric { line: usize, field: String },
    #[error("malformed frame record at line {line}: {reason}")]
    MalformedFrame { line: usize, reason: String },
}

/// Formats a number canonically: at most six fractional digits, no trailing zeros.
pub(crate) fn format_number<T: Scalar>(v: T) -> String {
    let mut s = format!("{v:.6}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

fn parse_number<T: Scalar>(field: &str, line: usize) -> Result<T, RecordingError> {
    field
        .parse::<T>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| RecordingError::NotNumeric { line, field: field.to_string() })
}

pub fn serialize_recording<T: Scalar>(stream: &FrameStream<T>) -> String {
    let mut out = format!("{MAGIC} {VERSION} fps={}\n", format_number(stream.nominal_fps()));
    for frame in stream.frames() {
        let _ = write!(out, "t={}", format_number(frame.timestamp));
        for id in JointId::ALL {
            let p = frame[id];
            let _ = write!(
                out,
                " {}:{},{},{},{}",
                id.name(),
                format_number(p.x),
                format_number(p.y),
                format_number(p.z),
                u8::from(p.tracked)
            );
        }
        out.push('\n');
    }
    out
}

fn parse_header<T: Scalar>(line: &str) -> Result<T, RecordingError> {
    let bad = |reason: &str| RecordingError::MalformedHeader { line: 1, reason: reason.to_string() };
    let mut parts = line.split_whitespace();
    if parts.next() != Some(MAGIC) {
        return Err(bad("expected SKSTREAM"));
    }
    if parts.next() != Some(VERSION) {
        return Err(bad("unsupported version"));
    }
    let fps = parts
        .next()
        .and_then(|p| p.strip_prefix("fps="))
        .ok_or_else(|| bad("expected fps=<number>"))?;
    if parts.next().is_some() {
        return Err(bad("trailing fields"));
    }
    let fps: T = fps.parse().map_err(|_| bad("fps is not a number"))?;
    if !(fps.is_finite() && fps > T::zero()) {
        return Err(bad("fps must be positive"));
    }
    Ok(fps)
}

fn parse_frame<T: Scalar>(text: &str, line: usize) -> Result<SkeletonFrame<T>, RecordingError> {
    let mut fields = text.split_whitespace();
    let t = fields
        .next()
        .and_then(|f| f.strip_prefix("t="))
        .ok_or_else(|| RecordingError::MalformedFrame { line, reason: "expected t=<seconds>".into() })?;
    let t: T = parse_number(t, line)?;
    if t < T::zero() {
        return Err(RecordingError::MalformedFrame { line, reason: "negative timestamp".into() });
    }
    let mut frame = SkeletonFrame::empty(t);
    let mut count = 0;
    for group in fields.by_ref() {
        let Some(&expected) = JointId::ALL.get(count) else {
            return Err(RecordingError::MalformedFrame { line, reason: "more than 20 joint groups".into() });
        };
        let (name, coords) = group
            .split_once(':')
            .ok_or_else(|| RecordingError::MalformedFrame { line, reason: format!("bad joint group `{group}`") })?;
        if name != expected.name() {
            return Err(match name.parse::<JointId>() {
                Ok(j) if j > expected => RecordingError::MissingJoint { line, joint: expected },
                _ => RecordingError::UnexpectedJoint { line, expected, found: name.to_string() },
            });
        }
        let parts: Vec<&str> = coords.split(',').collect();
        let [x, y, z, tracked] = parts[..] else {
            return Err(RecordingError::MalformedFrame { line, reason: format!("joint {name} needs x,y,z,tracked") });
        };
        let tracked = match tracked {
            "1" => true,
            "0" => false,
            other => return Err(RecordingError::NotNumeric { line, field: other.to_string() }),
        };
        frame.set(
            expected,
            JointPosition {
                x: parse_number(x, line)?,
                y: parse_number(y, line)?,
                z: parse_number(z, line)?,
                tracked,
            },
        );
        count += 1;
    }
    if count < JOINT_COUNT {
        return Err(RecordingError::MissingJoint { line, joint: JointId::ALL[count] });
    }
    Ok(frame)
}

/// Parses a recording document. Blank lines are skipped.
pub fn parse_recording<T: Scalar>(text: &str) -> Result<FrameStream<T>, RecordingError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| RecordingError::MalformedHeader { line: 1, reason: "empty document".into() })?;
    let fps = parse_header(header)?;
    let mut frames: Vec<SkeletonFrame<T>> = Vec::new();
    for (line, text) in lines {
        if text.trim().is_empty() {
            continue;
        }
        let frame = parse_frame(text, line)?;
        if frames.last().is_some_and(|prev| frame.timestamp <= prev.timestamp) {
            return Err(RecordingError::NonMonotone { line });
        }
        frames.push(frame);
    }
    Ok(FrameStream::new(fps, frames).expect("invariants checked while parsing"))
}
