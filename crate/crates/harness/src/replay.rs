//! Offline replay of a recorded skeleton stream against a parts database.

use std::io::Write;
use std::time::{Duration, Instant};

use guidance_core::{FrameStream, SessionState};

use crate::engine::{Engine, Output};
use crate::script::{ScriptAction, ScriptEntry};
use crate::wire::Outbound;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplayOutcome {
    pub finished: bool,
    pub frames: usize,
    pub outputs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReplayOptions {
    pub realtime: bool,
}

fn emit<W: Write>(out: &mut W, outputs: &[Output], count: &mut usize) -> std::io::Result<()> {
    for o in outputs {
        writeln!(out, "{}", Outbound::from(o).to_line())?;
        *count += 1;
    }
    Ok(())
}

fn apply<W: Write>(engine: &mut Engine, entry: &ScriptEntry, out: &mut W, count: &mut usize) -> std::io::Result<()> {
    let outputs = match &entry.action {
        ScriptAction::Speech(text) => match engine.speech(text) {
            Ok(o) => o,
            Err(e) => {
                writeln!(out, "{}", Outbound::Error { message: e.to_string() }.to_line())?;
                *count += 1;
                return Ok(());
            }
        },
        ScriptAction::Gesture(g) => engine.gesture(*g),
    };
    emit(out, &outputs, count)
}

/// Feeds every frame in order, applying each script entry just before the
/// first frame whose timestamp reaches the entry's time. Entries later than
/// the last frame are applied after it. Every output is written as one JSON
/// line; invalid frames produce an `error` line and are skipped.
pub fn run_replay<W: Write>(
    engine: &mut Engine,
    stream: &FrameStream,
    script: &[ScriptEntry],
    options: ReplayOptions,
    out: &mut W,
) -> std::io::Result<ReplayOutcome> {
    let mut pending = script.iter().peekable();
    let mut count = 0;
    let clock = Instant::now();
    let origin = stream.frames().first().map_or(0.0, |f| f.timestamp);
    for frame in stream.frames() {
        while let Some(entry) = pending.next_if(|e| e.at <= frame.timestamp) {
            apply(engine, entry, out, &mut count)?;
        }
        if options.realtime {
            let due = Duration::from_secs_f64((frame.timestamp - origin).max(0.0));
            if let Some(wait) = due.checked_sub(clock.elapsed()) {
                std::thread::sleep(wait);
            }
        }
        match engine.frame(frame.clone()) {
            Ok(outputs) => emit(out, &outputs, &mut count)?,
            Err(e) => {
                writeln!(out, "{}", Outbound::Error { message: e.to_string() }.to_line())?;
                count += 1;
            }
        }
    }
    for entry in pending {
        apply(engine, entry, out, &mut count)?;
    }
    out.flush()?;
    Ok(ReplayOutcome {
        finished: *engine.session().state() == SessionState::Finished,
        frames: stream.len(),
        outputs: count,
    })
}
