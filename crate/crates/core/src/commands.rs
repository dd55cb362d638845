//! Command alphabet, speech phrase parsing and gesture-to-command mapping.

use std::fmt;

use crate::gesture::Gesture;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Start,
    Pause,
    NextInstruction,
    MoreDetails,
    RepeatInstruction,
    PreviousInstruction,
    Resume,
    Stop,
    SelectSpeechMode,
    SelectGestureMode,
    SelectFullAssembly,
    SelectPartAssembly,
    /// Select a part by its database id (>= 1).
    SelectPart(u32),
}

impl Command {
    /// The eight operator commands, in table order.
    pub const CONTROL: [Command; 8] = [
        Command::Start,
        Command::Pause,
        Command::NextInstruction,
        Command::MoreDetails,
        Command::RepeatInstruction,
        Command::PreviousInstruction,
        Command::Resume,
        Command::Stop,
    ];

    pub fn is_selection(self) -> bool {
        matches!(
            self,
            Command::SelectSpeechMode
                | Command::SelectGestureMode
                | Command::SelectFullAssembly
                | Command::SelectPartAssembly
                | Command::SelectPart(_)
        )
    }

    /// Canonical spoken phrase for this command.
    pub fn phrase(self) -> String {
        match self {
            Command::Start => "start".into(),
            Command::Pause => "pause".into(),
            Command::NextInstruction => "next instruction".into(),
            Command::MoreDetails => "more details".into(),
            Command::RepeatInstruction => "repeat instruction".into(),
            Command::PreviousInstruction => "previous instruction".into(),
            Command::Resume => "resume".into(),
            Command::Stop => "stop".into(),
            Command::SelectSpeechMode => "speech mode".into(),
            Command::SelectGestureMode => "gesture mode".into(),
            Command::SelectFullAssembly => "full assembly".into(),
            Command::SelectPartAssembly => "part assembly".into(),
            Command::SelectPart(id) => format!("part {id}"),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::SelectPart(id) => write!(f, "SelectPart({id})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssemblyMode {
    Full,
    Part,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControlMode {
    Speech,
    Gesture,
}

/// Lower-cases, trims and collapses internal whitespace.
pub fn normalize_utterance(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// Matches an utterance against the fixed phrase set.
pub fn parse_speech_token(text: &str) -> Option<Command> {
    let norm = normalize_utterance(text);
    let cmd = match norm.as_str() {
        "start" => Command::Start,
        "pause" => Command::Pause,
        "next instruction" | "next command" => Command::NextInstruction,
        "more details" => Command::MoreDetails,
        "repeat instruction" => Command::RepeatInstruction,
        "previous instruction" => Command::PreviousInstruction,
        "resume" => Command::Resume,
        "stop" => Command::Stop,
        "speech mode" => Command::SelectSpeechMode,
        "gesture mode" => Command::SelectGestureMode,
        "full assembly" => Command::SelectFullAssembly,
        "part assembly" => Command::SelectPartAssembly,
        other => {
            let digits = other.strip_prefix("part ")?;
            if !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            match digits.parse::<u32>() {
                Ok(id) if id >= 1 => Command::SelectPart(id),
                _ => return None,
            }
        }
    };
    Some(cmd)
}

/// Maps a gesture to its command when the gesture is enabled in `mode`.
pub fn gesture_to_command(gesture: Gesture, mode: AssemblyMode) -> Option<Command> {
    use AssemblyMode::*;
    match (gesture, mode) {
        (Gesture::HandsUp, _) => Some(Command::Pause),
        (Gesture::RightSweep, Full) => Some(Command::NextInstruction),
        (Gesture::RightSweep, Part) => None,
        (Gesture::ZoomIn, _) => Some(Command::MoreDetails),
        (Gesture::ZoomOut, _) => Some(Command::RepeatInstruction),
        (Gesture::LeftSweep, Full) => Some(Command::PreviousInstruction),
        (Gesture::LeftSweep, Part) => None,
        (Gesture::HandsForward, _) => Some(Command::Resume),
        (Gesture::HandsUpFolded, _) => Some(Command::Stop),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_phrases_parse() {
        assert_eq!(parse_speech_token("Next Instruction"), Some(Command::NextInstruction));
        assert_eq!(parse_speech_token("  STOP "), Some(Command::Stop));
        assert_eq!(parse_speech_token("next   command"), Some(Command::NextInstruction));
        assert_eq!(parse_speech_token("open sesame"), None);
        for cmd in Command::CONTROL {
            assert_eq!(parse_speech_token(&cmd.phrase()), Some(cmd));
        }
    }

    #[test]
    fn selection_phrases_parse() {
        assert_eq!(parse_speech_token("Gesture Mode"), Some(Command::SelectGestureMode));
        assert_eq!(parse_speech_token("part 12"), Some(Command::SelectPart(12)));
        assert_eq!(parse_speech_token("part 0"), None);
        assert_eq!(parse_speech_token("part +3"), None);
        assert_eq!(parse_speech_token("part"), None);
        assert_eq!(parse_speech_token("part 99999999999"), None);
    }

    #[test]
    fn sweeps_are_full_only() {
        assert_eq!(gesture_to_command(Gesture::RightSweep, AssemblyMode::Full), Some(Command::NextInstruction));
        assert_eq!(gesture_to_command(Gesture::RightSweep, AssemblyMode::Part), None);
        assert_eq!(gesture_to_command(Gesture::ZoomIn, AssemblyMode::Part), Some(Command::MoreDetails));
    }

    #[test]
    fn no_gesture_starts_the_system() {
        for g in Gesture::ALL {
            for m in [AssemblyMode::Full, AssemblyMode::Part] {
                assert_ne!(gesture_to_command(g, m), Some(Command::Start));
            }
        }
    }
}
