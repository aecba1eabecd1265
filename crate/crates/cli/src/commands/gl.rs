use clap::{Arg, ArgMatches};
use hwcyclic::gltheory::{check_graded_lift, check_cartan_mirabolic, gl_order, ModMatrix};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{need, uint, uint_arg};
use crate::error::CliError;
use crate::flags::CommonFlags;
use crate::input;
use crate::registry::Command;

/// Generators of a subgroup of `GL_n(Z/p^{m_max + 1})`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GradedJson {
    n: usize,
    p: u64,
    m_max: u32,
    generators: Vec<Vec<Vec<i64>>>,
}

pub struct Gl;

impl Command for Gl {
    fn name(&self) -> &'static str {
        "gl"
    }
    fn about(&self) -> &'static str {
        "Finite checks on subgroups of GL_n(Z/p^m): Cartan-mirabolic generation, graded surjectivity, orders"
    }
    fn args(&self) -> Vec<Arg> {
        vec![
            Arg::new("check")
                .long("check")
                .required(true)
                .value_parser(["cartan-mirabolic", "graded-lift", "order", "lemma65", "lemma63"])
                .help("cartan-mirabolic (alias lemma65): nonsplit Cartan and mirabolic generate GL_n(F_p); graded-lift (alias lemma63): graded criterion on input generators; order: |GL_n(Z/p^m)|"),
            uint_arg("n", "matrix size"),
            uint_arg("p", "prime"),
            uint_arg("m", "level, for --check order (default 1)"),
            input::input_arg(false),
        ]
    }
    fn run(&self, m: &ArgMatches, flags: &CommonFlags) -> Result<Value, CliError> {
        match m.get_one::<String>("check").map(String::as_str) {
            Some("cartan-mirabolic" | "lemma65") => {
                let r = check_cartan_mirabolic(need(m, "n")? as usize, need(m, "p")?, flags.budget)?;
                Ok(json!({
                    "n": r.n,
                    "p": r.p,
                    "gl_order": big(r.gl_order),
                    "h_order": r.h_order,
                    "c_order": r.c_order,
                    "counting": r.counting,
                    "intersection_trivial": r.intersection_trivial,
                    "generates": r.generates,
                    "order": r.order,
                }))
            }
            Some("graded-lift" | "lemma63") => {
                let j: GradedJson = input::parse(&input::require(m)?)?;
                let level = j.m_max + 1;
                let mut gens = Vec::with_capacity(j.generators.len());
                for (k, g) in j.generators.iter().enumerate() {
                    gens.push(ModMatrix::new(j.n, j.p, level, g).map_err(|e| CliError::at(format!("generators[{k}]"), e.to_string()))?);
                }
                if gens.is_empty() {
                    return Err(CliError::at("generators", "need at least one generator"));
                }
                let r = check_graded_lift(&gens, j.n, j.p, j.m_max, flags.budget)?;
                Ok(json!({
                    "n": r.n,
                    "p": r.p,
                    "m_max": r.m_max,
                    "condition_i": r.condition_i,
                    "condition_ii": r.condition_ii,
                    "conditions_hold": r.conditions_hold,
                    "conclusion": r.conclusion,
                    "closure_order": r.closure_order,
                    "reduction_order": r.reduction_order,
                    "gl_order": big(r.gl_order),
                }))
            }
            Some("order") => {
                let (n, p) = (need(m, "n")? as usize, need(m, "p")?);
                let lvl = uint(m, "m")?.unwrap_or(1) as u32;
                Ok(json!({"n": n, "p": p, "m": lvl, "order": big(gl_order(n, p, lvl)?)}))
            }
            _ => Err(CliError::input("unknown --check")),
        }
    }
}

/// A number when it fits in 64 bits, otherwise a decimal string.
fn big(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| Value::from(n.to_string()), Value::from)
}
