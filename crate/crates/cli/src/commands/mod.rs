mod cartan;
mod certificate;
mod gl;
mod igusa;
mod invariants;
mod roots;
mod strata;
mod versality;

use clap::{value_parser, Arg, ArgMatches};
use hwcyclic::ff::FieldDesc;
use hwcyclic::json::{self, AdditiveJson};
use hwcyclic::monodromy::AdditivePoly;

use crate::error::CliError;
use crate::registry::Registry;

pub fn registry() -> Registry {
    let mut r = Registry::new();
    r.register(Box::new(invariants::Invariants));
    r.register(Box::new(roots::Roots));
    r.register(Box::new(certificate::Certificate));
    r.register(Box::new(strata::Strata));
    r.register(Box::new(gl::Gl));
    r.register(Box::new(igusa::Igusa));
    r.register(Box::new(cartan::Cartan));
    r.register(Box::new(versality::Versality));
    r
}

fn uint_arg(name: &'static str, help: &'static str) -> Arg {
    Arg::new(name).long(name).value_parser(value_parser!(u64).range(0..=1 << 20)).help(help)
}

fn uint(m: &ArgMatches, name: &str) -> Result<Option<u64>, CliError> {
    Ok(m.get_one::<u64>(name).copied())
}

fn need(m: &ArgMatches, name: &str) -> Result<u64, CliError> {
    uint(m, name)?.ok_or_else(|| CliError::input(format!("--{name} is required")))
}

fn prime_field(p: u64, deg: u32) -> Result<FieldDesc, CliError> {
    FieldDesc::new(p, deg).map_err(|e| CliError::input(e.to_string()))
}

/// An additive polynomial and the field to search for witnesses in.
fn additive(j: &AdditiveJson, prec: i64) -> Result<(AdditivePoly, FieldDesc), CliError> {
    let ctx = json::series_ctx(&j.base, prec, "base")?;
    if j.coeffs.is_empty() {
        return Err(CliError::at("coeffs", "need a_1, ..., a_c with c >= 1"));
    }
    let mut a = Vec::with_capacity(j.coeffs.len());
    for (k, s) in j.coeffs.iter().enumerate() {
        a.push(json::series(&ctx, s, &format!("coeffs[{k}]"))?);
    }
    let search = match &j.search {
        Some(f) => json::field(f, "search")?,
        None => ctx.residue().clone(),
    };
    Ok((AdditivePoly::new(a)?, search))
}
