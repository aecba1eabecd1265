use clap::{Arg, ArgMatches};
use hwcyclic::json::{self, IgusaJson};
use hwcyclic::monodromy::{igusa_expected, igusa_tower};
use hwcyclic::series::SeriesCtx;
use serde_json::{json, Value};

use super::{prime_field, uint, uint_arg};
use crate::error::CliError;
use crate::flags::CommonFlags;
use crate::input;
use crate::registry::Command;

pub struct Igusa;

impl Command for Igusa {
    fn name(&self) -> &'static str {
        "igusa"
    }
    fn about(&self) -> &'static str {
        "Valuations along the level tower of V(X) = a_1 X + alpha X^p (default a_1 = t, alpha = 1)"
    }
    fn args(&self) -> Vec<Arg> {
        vec![uint_arg("p", "prime, without an input document (default 2)"), uint_arg("levels", "number of levels (default 3)"), input::input_arg(false)]
    }
    fn run(&self, m: &ArgMatches, flags: &CommonFlags) -> Result<Value, CliError> {
        let (p, a1, alpha, n) = match input::read(m)? {
            Some(text) => {
                let j: IgusaJson = input::parse(&text)?;
                let f = json::field(&j.field, "field")?;
                let ctx = SeriesCtx::new(f, 1, j.prec.unwrap_or(flags.prec)).map_err(|e| CliError::at("prec", e.to_string()))?;
                (ctx.p(), json::series(&ctx, &j.a1, "a1")?, json::series(&ctx, &j.alpha, "alpha")?, j.levels)
            }
            None => {
                let p = uint(m, "p")?.unwrap_or(2);
                let ctx = SeriesCtx::new(prime_field(p, 1)?, 1, flags.prec).map_err(|e| CliError::input(e.to_string()))?;
                (p, ctx.t(), ctx.one(), uint(m, "levels")?.unwrap_or(3) as usize)
            }
        };
        let t = igusa_tower(p, &a1, &alpha, n)?;
        let expected: Vec<Value> = (1..=n as u32).map(|i| json::rat_to_json(&igusa_expected(p, i))).collect();
        Ok(json!({
            "p": p,
            "levels": n,
            "valuations": t.valuations.iter().map(json::rat_to_json).collect::<Vec<_>>(),
            "ram_bound": t.ram_bound,
            "expected": expected,
        }))
    }
}
