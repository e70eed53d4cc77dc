//! Session files, command dispatch and JSON reports for the difference-algebra
//! kernel in `dakernel-core`.

pub mod commands;
pub mod session;

pub use commands::{execute, Command, Report, Status, Verb};
pub use session::{parse_session, ParseError, Session};
