//! Reading job input: a file path, `-` for standard input, or inline JSON.

use std::io::Read;

use clap::{Arg, ArgMatches};
use serde::de::DeserializeOwned;

use crate::error::CliError;

pub fn input_arg(required: bool) -> Arg {
    Arg::new("input")
        .required(required)
        .help("JSON file, `-` for standard input, or an inline JSON document")
}

pub fn read(m: &ArgMatches) -> Result<Option<String>, CliError> {
    let Some(src) = m.get_one::<String>("input") else {
        return Ok(None);
    };
    let trimmed = src.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(Some(src.clone()));
    }
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::input(format!("standard input: {e}")))?;
        return Ok(Some(s));
    }
    std::fs::read_to_string(src).map(Some).map_err(|e| CliError::input(format!("{src}: {e}")))
}

pub fn require(m: &ArgMatches) -> Result<String, CliError> {
    read(m)?.ok_or_else(|| CliError::input("this subcommand needs an input document"))
}

/// Deserialize, reporting the path of the offending field on failure.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let msg = e.into_inner().to_string();
        if path == "." {
            CliError::input(msg)
        } else {
            CliError::at(path, msg)
        }
    })
}
