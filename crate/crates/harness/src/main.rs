use std::fs;
use std::io::{self, BufWriter};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use guidance_core::{parse_parts_xml, parse_recording, serialize_recording, validate_db, FrameStream, GestureParams, PartsDb, WorkflowConfig};
use guidance_harness::script::parse_script;
use guidance_harness::serve::run_serve;
use guidance_harness::trajectory::TrajectoryFile;
use guidance_harness::{run_replay, Engine, EngineConfig, ReplayOptions};

#[derive(Parser)]
#[command(name = "guidance", version, about = "Assembly guidance replay and service")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replay a skeleton recording and print every output as a JSON line.
    Replay {
        recording: PathBuf,
        #[command(flatten)]
        session: SessionArgs,
        /// Pace frames by their timestamps.
        #[arg(long)]
        realtime: bool,
        /// Timed speech and gesture inputs.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Frame rate used by the detectors (defaults to the recording's rate).
        #[arg(long)]
        fps: Option<f64>,
    },
    /// Serve the line-delimited JSON protocol over TCP.
    Serve {
        #[command(flatten)]
        session: SessionArgs,
        #[arg(long, default_value = "127.0.0.1:7878")]
        listen: String,
        #[arg(long, default_value_t = 30.0)]
        fps: f64,
    },
    /// Check a parts database and report problems.
    Validate {
        #[arg(long)]
        parts: PathBuf,
    },
    /// Render a JSON trajectory description into a recording.
    Synth {
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct SessionArgs {
    /// Parts database XML.
    #[arg(long)]
    parts: PathBuf,
    /// Seconds of motion examined by the gesture detectors.
    #[arg(long, default_value_t = 1.0)]
    gesture_period: f64,
    /// Distance in metres beyond which the range alarm sounds.
    #[arg(long, default_value_t = 1.5)]
    range_radius: f64,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot open {}", path.display()))
}

fn load_db(path: &Path) -> Result<PartsDb> {
    let parsed = parse_parts_xml::<f64>(&read(path)?).with_context(|| format!("{}", path.display()))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    if let Err(violations) = validate_db(&parsed.db) {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        bail!("{}: {}", path.display(), list.join("; "));
    }
    Ok(parsed.db)
}

fn engine_config(args: &SessionArgs, fps: f64) -> Result<EngineConfig> {
    let params = GestureParams::new(args.gesture_period, fps).map_err(|e| anyhow!("{e}"))?;
    let workflow = WorkflowConfig { range_radius: args.range_radius, ..WorkflowConfig::default() };
    Ok(EngineConfig { params, workflow })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Cmd::Replay { recording, session, realtime, script, fps } => {
            let db = load_db(&session.parts)?;
            let stream: FrameStream =
                parse_recording(&read(&recording)?).with_context(|| format!("{}", recording.display()))?;
            let script = match script {
                Some(path) => parse_script(&read(&path)?).with_context(|| format!("{}", path.display()))?,
                None => Vec::new(),
            };
            let config = engine_config(&session, fps.unwrap_or(stream.nominal_fps()))?;
            let mut engine = Engine::new(db, config).map_err(|e| anyhow!("{e}"))?;
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            let outcome = run_replay(&mut engine, &stream, &script, ReplayOptions { realtime }, &mut out)?;
            Ok(if outcome.finished { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Cmd::Serve { session, listen, fps } => {
            let db = load_db(&session.parts)?;
            let config = engine_config(&session, fps)?;
            Engine::new(db.clone(), config).map_err(|e| anyhow!("{e}"))?;
            let listener = TcpListener::bind(&listen).with_context(|| format!("cannot listen on {listen}"))?;
            eprintln!("listening on {}", listener.local_addr()?);
            run_serve(listener, db, config)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Validate { parts } => {
            let db = load_db(&parts)?;
            println!("{}: {} parts ok", parts.display(), db.len());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Synth { spec, output } => {
            let file = TrajectoryFile::parse(&read(&spec)?).with_context(|| format!("{}", spec.display()))?;
            let stream = file.synthesize().with_context(|| format!("{}", spec.display()))?;
            fs::write(&output, serialize_recording(&stream))
                .with_context(|| format!("cannot write {}", output.display()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
