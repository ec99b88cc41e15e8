//! Workspace documents, their resolution into `hhx-core` objects, and the
//! `hhx` subcommands.

pub mod commands;
pub mod error;
pub mod report;
pub mod schema;
pub mod texpr;
pub mod workspace;

pub use commands::{execute, run_requests, Command, Outcome, Settings};
pub use error::CliError;
pub use report::ResultReport;
pub use schema::{parse_document, read_document, WorkspaceDocument};
pub use workspace::{ResolveOptions, Workspace};
