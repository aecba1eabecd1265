use std::collections::BTreeMap;

use clap::{Arg, ArgMatches};
use serde_json::Value;

use crate::error::CliError;
use crate::flags::{self, CommonFlags};

/// One subcommand: its arguments and a job producing a JSON document.
pub trait Command {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn args(&self) -> Vec<Arg>;
    fn run(&self, m: &ArgMatches, flags: &CommonFlags) -> Result<Value, CliError>;
}

#[derive(Default)]
pub struct Registry {
    commands: BTreeMap<&'static str, Box<dyn Command>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, cmd: Box<dyn Command>) {
        let name = cmd.name();
        assert!(self.commands.insert(name, cmd).is_none(), "duplicate subcommand {name}");
    }

    pub fn cli(&self) -> clap::Command {
        let mut root = clap::Command::new("hwcyclic")
            .about("Hasse-Witt invariants, tame monodromy and Newton strata, as JSON")
            .version(env!("CARGO_PKG_VERSION"))
            .subcommand_required(true)
            .args(flags::global_args());
        for cmd in self.commands.values() {
            root = root.subcommand(clap::Command::new(cmd.name()).about(cmd.about()).args(cmd.args()));
        }
        root
    }

    pub fn dispatch(&self, m: &ArgMatches) -> Result<Value, CliError> {
        let (name, sub) = m.subcommand().ok_or_else(|| CliError::input("no subcommand"))?;
        let cmd = self.commands.get(name).ok_or_else(|| CliError::input(format!("unknown subcommand {name}")))?;
        cmd.run(sub, &CommonFlags::from_matches(sub))
    }
}
