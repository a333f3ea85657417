//! Front end for the `linkgraph` binary: argument parsing, commands, the
//! verification harness and output handling.
//!
//! Exit codes: 0 ok, 1 a check failed, 2 parse or I/O error, 3 invalid
//! input, 4 a search budget ran out.

pub mod args;
pub mod commands;
pub mod verify;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> CliError {
        CliError { code, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<linkgraph::Error> for CliError {
    fn from(e: linkgraph::Error) -> CliError {
        use linkgraph::Error;
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::TooLarge { .. } => EXIT_BUDGET,
            _ => EXIT_INVALID,
        };
        CliError::new(code, e.to_string())
    }
}

/// What a command produced: the text for stdout or `--out`, and the exit
/// status to report after writing it.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    pub fn ok(text: String) -> Output {
        Output { text, code: EXIT_OK }
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

pub fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

/// Writes `text` to a temporary file next to `path`, then renames it over
/// `path`, so readers never see a partial file.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display()));
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| CliError::new(EXIT_PARSE, format!("{}: not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = fs::File::create(&tmp)
        .and_then(|mut f| {
            f.write_all(text.as_bytes())?;
            f.sync_all()
        })
        .and_then(|_| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io_err)
}

/// Sizes the global thread pool from `LINKGRAPH_THREADS` when it is set.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("LINKGRAPH_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::new(EXIT_INVALID, format!("LINKGRAPH_THREADS must be a number, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::new(EXIT_INVALID, e.to_string()))
}
