use guidance_core::commands::{AssemblyMode, Command};
use guidance_core::gesture::GestureParams;
use guidance_core::partsdb::{FloorPoint, Part, PartsDb};
use guidance_core::workflow::*;
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Input {
    Cmd(Command),
    /// Step onto the current lift/put point.
    Arrive,
    Wander(f64, f64),
}

fn db(n: u32) -> PartsDb<f64> {
    PartsDb::new(
        (1..=n)
            .map(|id| Part {
                id,
                part_name: format!("P{id}"),
                lift: FloorPoint::new(-1.0 + f64::from(id), 3.0),
                put: FloorPoint::new(0.5, 2.0 + f64::from(id) / 10.0),
                image1: format!("l{id}.jpg"),
                image2: format!("p{id}.jpg"),
                commands_lift: "Lift".into(),
                commands_put: "Put".into(),
                video_path: format!("v{id}.avi"),
            })
            .collect(),
    )
}

fn current_target(s: &Session<f64>) -> Option<FloorPoint<f64>> {
    let part = |i: usize| &s.db().parts[i];
    match *s.state() {
        SessionState::Guiding { step, phase: Phase::ToLift } => Some(part(step).lift),
        SessionState::Guiding { step, phase: Phase::ToPut } | SessionState::StepActive { step } => Some(part(step).put),
        _ => None,
    }
}

fn feed(s: &mut Session<f64>, input: &Input) -> usize {
    match input {
        Input::Cmd(c) => s.handle_command(*c).len(),
        Input::Arrive => match current_target(s) {
            Some(t) => s.handle_position(t).len(),
            None => 0,
        },
        Input::Wander(x, z) => match current_target(s) {
            Some(_) => s.handle_position(FloorPoint::new(*x, *z)).len(),
            None => 0,
        },
    }
}

fn command() -> impl Strategy<Value = Command> {
    prop_oneof![
        Just(Command::Start),
        Just(Command::Pause),
        Just(Command::NextInstruction),
        Just(Command::MoreDetails),
        Just(Command::RepeatInstruction),
        Just(Command::PreviousInstruction),
        Just(Command::Resume),
        Just(Command::Stop),
        Just(Command::SelectSpeechMode),
        Just(Command::SelectGestureMode),
        Just(Command::SelectFullAssembly),
        Just(Command::SelectPartAssembly),
        (0u32..6).prop_map(Command::SelectPart),
    ]
}

fn input() -> impl Strategy<Value = Input> {
    prop_oneof![
        6 => command().prop_map(Input::Cmd),
        3 => Just(Input::Arrive),
        1 => (-3.0f64..3.0, 0.5f64..5.0).prop_map(|(x, z)| Input::Wander(x, z)),
    ]
}

/// Completed* Current? YetToStart*
fn prefix_law(statuses: &[StepStatus]) -> bool {
    let rank = |s: &StepStatus| match s {
        StepStatus::Completed => 0,
        StepStatus::Current => 1,
        StepStatus::YetToStart => 2,
    };
    statuses.windows(2).all(|w| rank(&w[0]) <= rank(&w[1]))
        && statuses.iter().filter(|s| **s == StepStatus::Current).count() <= 1
}

fn session(n: u32) -> Session<f64> {
    Session::new(db(n), GestureParams::default(), 1.5).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn invariants_hold_after_every_input(n in 1u32..5, inputs in proptest::collection::vec(input(), 0..80)) {
        let mut s = session(n);
        for input in &inputs {
            let before_state = s.state().clone();
            let before_len = s.events().len();
            let appended = feed(&mut s, input);
            prop_assert_eq!(s.events().len(), before_len + appended);
            if matches!(input, Input::Cmd(_)) {
                prop_assert!(appended >= 1);
            }
            if *s.state() != before_state {
                prop_assert!(appended >= 1);
            }
            if s.assembly_mode() != Some(AssemblyMode::Part) {
                prop_assert!(prefix_law(s.statuses()), "{:?}", s.statuses());
            }
            if let SessionState::Paused(prior) = s.state() {
                prop_assert!(!matches!(**prior, SessionState::Paused(_)));
            }
            if let Some(step) = s.state().step() {
                prop_assert!(step < n as usize);
            }
        }
    }

    #[test]
    fn pause_resume_is_transparent(inputs in proptest::collection::vec(input(), 0..60), at in 0usize..60) {
        let at = at.min(inputs.len());
        let mut plain = session(3);
        for i in &inputs {
            feed(&mut plain, i);
        }

        let mut paused = session(3);
        let mut kept = Vec::new();
        let mut injected = false;
        for (k, i) in inputs.iter().enumerate() {
            if k == at && !matches!(paused.state(), SessionState::Paused(_)) {
                paused.handle_command(Command::Pause);
                paused.handle_command(Command::Resume);
                injected = true;
            }
            let mark = paused.events().len();
            feed(&mut paused, i);
            kept.extend_from_slice(&paused.events()[mark..]);
        }
        if !injected && !matches!(paused.state(), SessionState::Paused(_)) {
            paused.handle_command(Command::Pause);
            paused.handle_command(Command::Resume);
        }
        prop_assert_eq!(plain.state(), paused.state());
        prop_assert_eq!(plain.statuses(), paused.statuses());
        prop_assert_eq!(plain.events(), &kept[..]);
    }

    #[test]
    fn stop_is_idempotent(inputs in proptest::collection::vec(input(), 0..40)) {
        let mut s = session(3);
        for i in &inputs {
            feed(&mut s, i);
        }
        s.handle_command(Command::Stop);
        let statuses = s.statuses().to_vec();
        let len = s.events().len();
        prop_assert_eq!(s.handle_command(Command::Stop), &[Event::Stopped]);
        prop_assert_eq!(s.events().len(), len + 1);
        prop_assert_eq!(s.statuses(), &statuses[..]);
        prop_assert_eq!(s.state(), &SessionState::Finished);
    }

    #[test]
    fn alarm_iff_out_of_range(x in -5.0f64..5.0, z in 0.0f64..6.0, radius in 0.01f64..4.0) {
        let mut s = Session::new(db(1), GestureParams::default(), radius).unwrap();
        for c in [Command::Start, Command::SelectSpeechMode, Command::SelectFullAssembly] {
            s.handle_command(c);
        }
        let target = s.db().parts[0].lift;
        let distance = ((x - target.x).powi(2) + (z - target.z).powi(2)).sqrt();
        let events = s.handle_position(FloorPoint::new(x, z)).to_vec();
        let alarm = events.iter().find_map(|e| match e { Event::Alarm { distance } => Some(*distance), _ => None });
        prop_assert_eq!(alarm.is_some(), distance > radius);
        if let Some(d) = alarm {
            prop_assert!((d - distance).abs() < 1e-9);
        }
    }
}

#[test]
fn every_state_is_reachable() {
    use Command::*;
    let mut seen = std::collections::HashSet::new();
    let mut record = |s: &Session<f64>| {
        let key = match s.state() {
            SessionState::Guiding { phase, .. } => format!("Guiding/{phase:?}"),
            other => other.name().to_string(),
        };
        seen.insert(key);
    };

    let mut s = session(2);
    record(&s);
    for input in [
        Input::Cmd(Start),
        Input::Cmd(SelectGestureMode),
        Input::Cmd(SelectPartAssembly),
        Input::Cmd(SelectPart(2)),
        Input::Arrive,
        Input::Arrive,
        Input::Cmd(Pause),
        Input::Cmd(Resume),
        Input::Cmd(Stop),
    ] {
        feed(&mut s, &input);
        record(&s);
    }
    for name in [
        "Idle",
        "AwaitingControlMode",
        "AwaitingAssemblyMode",
        "AwaitingPartSelection",
        "Guiding/ToLift",
        "Guiding/ToPut",
        "StepActive",
        "Paused",
        "Finished",
    ] {
        assert!(seen.contains(name), "{name} not reached: {seen:?}");
    }
}
