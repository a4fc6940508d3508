//! Command implementations behind the `eds` binary: character tables,
//! closure/identity verification, and the full reference-table run.

pub mod commands;
pub mod golden;
pub mod record;

/// Exit-code taxonomy, stable for scripting.
pub mod exit_code {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const MODEL: i32 = 3;
    pub const DISAGREEMENT: i32 = 4;
    pub const CHECK_FAILED: i32 = 5;
}
