//! Command-line front end: JSON documents in, text or JSON reports out.

pub mod document;
pub mod report;
pub mod run;

pub use document::{parse, ExtensionDocument, SchemaError};
pub use report::Report;
pub use run::{execute, Command, ExitStatus, Options, Outcome};
