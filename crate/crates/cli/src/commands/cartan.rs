use clap::{Arg, ArgMatches};
use hwcyclic::gltheory::nonsplit_cartan_gen;
use hwcyclic::json::{self, ModMatrixJson};
use hwcyclic::monodromy::cartan_check;
use serde_json::{json, Value};

use super::{need, uint_arg};
use crate::error::CliError;
use crate::flags::CommonFlags;
use crate::input;
use crate::registry::Command;

pub struct Cartan;

impl Command for Cartan {
    fn name(&self) -> &'static str {
        "cartan"
    }
    fn about(&self) -> &'static str {
        "A generator of the nonsplit Cartan subgroup of GL_n(F_p), or a check of a given matrix"
    }
    fn args(&self) -> Vec<Arg> {
        vec![uint_arg("n", "matrix size"), uint_arg("p", "prime"), input::input_arg(false)]
    }
    fn run(&self, m: &ArgMatches, _flags: &CommonFlags) -> Result<Value, CliError> {
        let g = match input::read(m)? {
            Some(text) => json::mod_matrix(&input::parse::<ModMatrixJson>(&text)?)?,
            None => nonsplit_cartan_gen(need(m, "n")? as usize, need(m, "p")?)?,
        };
        let c = cartan_check(&g)?;
        Ok(json!({
            "matrix": json::mod_matrix_to_json(&g),
            "is_field": c.is_field,
            "algebra_dim": c.algebra_dim,
            "order": c.order,
            "in_nonsplit_cartan": c.in_nonsplit_cartan,
            "generates_cartan": c.generates_cartan,
            "minimal_polynomial": c.minimal_polynomial,
        }))
    }
}
