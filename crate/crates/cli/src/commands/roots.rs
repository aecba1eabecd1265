use clap::{Arg, ArgMatches};
use hwcyclic::json::{self, AdditiveJson};
use hwcyclic::monodromy::{cartan_check, tame_generator_matrix, tame_roots};
use serde_json::{json, Value};

use super::additive;
use crate::error::CliError;
use crate::flags::CommonFlags;
use crate::input;
use crate::registry::Command;

pub struct Roots;

impl Command for Roots {
    fn name(&self) -> &'static str {
        "roots"
    }
    fn about(&self) -> &'static str {
        "All roots of a tamely ramified additive polynomial with the tame generator's action"
    }
    fn args(&self) -> Vec<Arg> {
        vec![input::input_arg(true)]
    }
    fn run(&self, m: &ArgMatches, flags: &CommonFlags) -> Result<Value, CliError> {
        let j: AdditiveJson = input::parse(&input::require(m)?)?;
        let (poly, _) = additive(&j, flags.prec)?;
        let sys = tame_roots(&poly)?;
        let g = tame_generator_matrix(&sys)?;
        let c = cartan_check(&g.matrix)?;
        Ok(json!({
            "e": sys.e,
            "base": json::ctx_to_json(&sys.ctx),
            "roots": sys.roots.iter().map(json::series_to_json).collect::<Vec<_>>(),
            "valuations": sys.valuations().iter().map(json::rat_to_json).collect::<Vec<_>>(),
            "dim": sys.dim(),
            "basis": sys.basis,
            "coords": sys.coords,
            "generator": {
                "zeta": json::elem_to_json(&g.zeta),
                "perm": g.perm,
                "matrix": json::mod_matrix_to_json(&g.matrix),
                "order": g.order,
                "free": g.free,
                "transitive": g.transitive,
            },
            "cartan": {
                "is_field": c.is_field,
                "algebra_dim": c.algebra_dim,
                "order": c.order,
                "in_nonsplit_cartan": c.in_nonsplit_cartan,
                "generates_cartan": c.generates_cartan,
                "minimal_polynomial": c.minimal_polynomial,
            },
        }))
    }
}
