//! Command-line and HTTP front ends for `aerorisk-core`.

pub mod command;
pub mod server;
pub mod service;
pub mod store;

pub use command::{execute_command, CommandResult};
pub use service::{ApiError, ErrorCode, Response, Service};
pub use store::{ModelStore, StoreError};
