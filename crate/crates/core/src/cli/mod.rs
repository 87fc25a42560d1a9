//! Configuration format and the commands behind the `mcsusy` binary.

mod commands;
mod config;

pub use commands::{cmd_report, cmd_spectrum, cmd_verify, cmd_wigner, verification_report, write_atomic, Outcome};
pub use config::{parse_config, parse_state, serialize_config, Format, Functions, Grid, Mode, RunConfig};
