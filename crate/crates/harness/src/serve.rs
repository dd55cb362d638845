//! Line-delimited JSON service for the operator console.
//!
//! Each connection owns its own session. The first message must be a `hello`
//! with the supported protocol version. Every inbound line is answered, in
//! arrival order, with the lines it produced or a single `ack`.

use std::io::{BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};
use std::thread;

use guidance_core::PartsDb;

use crate::engine::{Engine, EngineConfig, Output};
use crate::wire::{frame_from_wire, statuses_message, Inbound, Outbound, PROTOCOL_VERSION};

fn reply<W: Write>(out: &mut W, lines: &[Outbound]) -> std::io::Result<()> {
    for l in lines {
        writeln!(out, "{}", l.to_line())?;
    }
    out.flush()
}

fn error(message: impl Into<String>) -> Vec<Outbound> {
    vec![Outbound::Error { message: message.into() }]
}

fn outputs(list: Vec<Output>) -> Vec<Outbound> {
    if list.is_empty() {
        vec![Outbound::Ack {}]
    } else {
        list.iter().map(Outbound::from).collect()
    }
}

fn handle(engine: &mut Engine, msg: Inbound) -> Vec<Outbound> {
    match msg {
        Inbound::Hello { .. } => error("duplicate hello"),
        Inbound::Speech { text } => match engine.speech(&text) {
            Ok(list) => outputs(list),
            Err(e) => error(e.to_string()),
        },
        Inbound::Gesture { name } => match name.parse() {
            Ok(g) => outputs(engine.gesture(g)),
            Err(e) => error(format!("{e}")),
        },
        Inbound::Frame { t, joints } => match frame_from_wire(t, &joints) {
            Ok(frame) => match engine.frame(frame) {
                Ok(list) => outputs(list),
                Err(e) => error(e.to_string()),
            },
            Err(e) => error(e),
        },
        Inbound::Status {} => vec![statuses_message(engine.session())],
    }
}

/// Runs one connection to completion. Returns when the peer closes the
/// stream or the handshake fails.
pub fn serve_connection<R: BufRead, W: Write>(
    db: PartsDb,
    config: EngineConfig,
    input: R,
    mut output: W,
) -> std::io::Result<()> {
    let mut engine: Option<Engine> = None;
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let msg: Inbound = match serde_json::from_str(&line) {
            Ok(m) => m,
            Err(e) => {
                reply(&mut output, &error(format!("malformed message: {e}")))?;
                if engine.is_none() {
                    return Ok(());
                }
                continue;
            }
        };
        match engine.as_mut() {
            Some(engine) => reply(&mut output, &handle(engine, msg))?,
            None => match msg {
                Inbound::Hello { version } if version == PROTOCOL_VERSION => {
                    match Engine::new(db.clone(), config) {
                        Ok(e) => engine = Some(e),
                        Err(e) => return reply(&mut output, &error(e.to_string())),
                    }
                    reply(&mut output, &[Outbound::Ack {}])?;
                }
                Inbound::Hello { version } => {
                    return reply(
                        &mut output,
                        &error(format!("unsupported protocol version `{version}`, expected `{PROTOCOL_VERSION}`")),
                    );
                }
                _ => return reply(&mut output, &error("expected hello")),
            },
        }
    }
    Ok(())
}

fn connection(db: PartsDb, config: EngineConfig, stream: TcpStream) -> std::io::Result<()> {
    let reader = BufReader::new(stream.try_clone()?);
    serve_connection(db, config, reader, stream)
}

/// Accepts connections forever, one thread per connection.
pub fn run_serve(listener: TcpListener, db: PartsDb, config: EngineConfig) -> std::io::Result<()> {
    for stream in listener.incoming() {
        let stream = stream?;
        let db = db.clone();
        thread::spawn(move || {
            let peer = stream.peer_addr().ok();
            if let Err(e) = connection(db, config, stream) {
                eprintln!("connection {peer:?}: {e}");
            }
        });
    }
    Ok(())
}
