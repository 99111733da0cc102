//! Game files, bundled instances, command drivers and report rendering.

mod commands;
mod format;
mod report;

pub use commands::{
    bundled_game, bundled_instances, exit_code, instance_report, run_command, Bundled, Command, Options, DEFAULT_SEED,
    SAMPLE_COUNT,
};
pub use format::{parse_game, render_game};
pub use report::*;
