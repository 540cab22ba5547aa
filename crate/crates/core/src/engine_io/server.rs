//! NDJSON over TCP. Each connection gets its own session and thread; the
//! first line it receives is the initial frame.

use std::io::{BufRead, BufReader, BufWriter, Write};
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::thread;

use super::protocol::Message;
use super::session::{Session, SessionConfig};
use super::EngineError;

/// Lines longer than this close the connection.
pub const MAX_LINE: usize = 64 * 1024;

/// Talks the protocol over any reader and writer until `quit` or EOF.
pub fn run_stream<R: BufRead, W: Write>(config: SessionConfig, reader: R, mut writer: W) -> Result<(), EngineError> {
    let mut session = Session::new(config)?;
    let send = |w: &mut W, msgs: &[Message]| -> std::io::Result<()> {
        for m in msgs {
            w.write_all(m.to_line().as_bytes())?;
            w.write_all(b"\n")?;
        }
        w.flush()
    };
    let first = session.current_frame()?;
    send(&mut writer, &[first])?;
    for line in reader.lines() {
        let line = line?;
        if line.len() > MAX_LINE {
            send(&mut writer, &[Message::Error(super::ProtocolError::new("", "line too long"))])?;
            break;
        }
        if line.trim().is_empty() {
            continue;
        }
        send(&mut writer, &session.handle_line(&line))?;
        if session.is_closed() {
            break;
        }
    }
    Ok(())
}

fn connection(stream: TcpStream, config: SessionConfig) -> Result<(), EngineError> {
    let reader = BufReader::new(stream.try_clone()?);
    run_stream(config, reader, BufWriter::new(stream))
}

/// Accepts connections forever. `on_ready` gets the bound address, which
/// matters when `port` is 0.
pub fn serve(
    host: &str,
    port: u16,
    config: SessionConfig,
    on_ready: impl FnOnce(SocketAddr),
) -> Result<(), EngineError> {
    // fail early on a bad configuration instead of per connection
    Session::new(config.clone())?;
    let listener = TcpListener::bind((host, port))?;
    on_ready(listener.local_addr()?);
    for stream in listener.incoming() {
        let Ok(stream) = stream else { continue };
        let config = config.clone();
        thread::spawn(move || {
            if let Err(e) = connection(stream, config) {
                eprintln!("connection closed: {e}");
            }
        });
    }
    Ok(())
}
