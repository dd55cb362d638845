//! Timed operator inputs for replay runs.
//!
//! One entry per line: `<seconds> speech <phrase...>` or `<seconds> gesture <Name>`.
//! Blank lines and lines starting with `#` are ignored. Times must not decrease.

use guidance_core::Gesture;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum ScriptAction {
    Speech(String),
    Gesture(Gesture),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScriptEntry {
    pub at: f64,
    pub action: ScriptAction,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("script line {line}: {reason}")]
pub struct ScriptError {
    pub line: usize,
    pub reason: String,
}

pub fn parse_script(text: &str) -> Result<Vec<ScriptEntry>, ScriptError> {
    let mut entries: Vec<ScriptEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |reason: String| ScriptError { line, reason };
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut fields = content.split_whitespace();
        let at: f64 = fields
            .next()
            .and_then(|t| t.parse().ok())
            .filter(|t: &f64| t.is_finite() && *t >= 0.0)
            .ok_or_else(|| err("expected a non-negative time".into()))?;
        let kind = fields.next().ok_or_else(|| err("expected `speech` or `gesture`".into()))?;
        let rest = fields.collect::<Vec<_>>().join(" ");
        if rest.is_empty() {
            return Err(err(format!("missing argument for `{kind}`")));
        }
        let action = match kind {
            "speech" => ScriptAction::Speech(rest),
            "gesture" => ScriptAction::Gesture(rest.parse().map_err(|e| err(format!("{e}")))?),
            other => return Err(err(format!("unknown action `{other}`"))),
        };
        if entries.last().is_some_and(|prev| at < prev.at) {
            return Err(err("times must not decrease".into()));
        }
        entries.push(ScriptEntry { at, action });
    }
    Ok(entries)
}
