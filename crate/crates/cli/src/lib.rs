//! Command-line orchestration over `grunwald-core`.
//!
//! Every command builds a [`Report`] whose machine section is a pure
//! function of the inputs; timing is printed separately by the binary.

pub mod args;
mod commands;
mod input;
pub mod report;

use anyhow::Result;
use grunwald_core::Caps;
use serde_json::{json, Value};

pub use args::{Cli, Command, Format, Toggle};
pub use report::{machine_section, CrossCheck, Report, Verdict};

/// Settings shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub caps: Caps,
    pub oracle: bool,
}

impl Ctx {
    pub fn from_cli(cli: &Cli) -> Self {
        Ctx {
            caps: Caps { max_group_order: cli.max_group_order, max_enumeration: cli.max_enumeration },
            oracle: cli.oracle == Toggle::On,
        }
    }

    /// Everything that can change a result, hashed into the report.
    pub(crate) fn digest_input(&self, command: &str, inputs: Value) -> Value {
        json!({
            "command": command,
            "inputs": inputs,
            "caps": { "max_group_order": self.caps.max_group_order, "max_enumeration": self.caps.max_enumeration },
            "oracle": self.oracle,
        })
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let ctx = Ctx::from_cli(cli);
    match &cli.command {
        Command::Group(args::GroupCmd::Analyze { spec }) => commands::group::analyze(&ctx, spec),
        Command::ShaBic { group, module } => commands::sha::sha_bic(&ctx, group, module),
        Command::Counterexample(args::CounterexampleCmd::Verify { p }) => commands::counterexample::verify(&ctx, *p),
        Command::Local(args::LocalCmd::H1(a)) => commands::local::h1(&ctx, a),
        Command::Local(args::LocalCmd::Reoccur(a)) => commands::local::reoccur(&ctx, a),
        Command::Local(args::LocalCmd::Realizable(a)) => commands::local::realizable(&ctx, a),
    }
}

/// Stable error category: the core variant name when there is one.
pub fn error_kind(err: &anyhow::Error) -> &'static str {
    err.chain()
        .find_map(|e| e.downcast_ref::<grunwald_core::Error>())
        .map(|e| e.kind())
        .unwrap_or("Error")
}
