use clap::{Arg, ArgMatches};
use hwcyclic::json::{self, AdditiveJson};
use hwcyclic::monodromy::{monodromy_certificate, nonsplit_witness};
use serde_json::{json, Value};

use super::additive;
use crate::error::CliError;
use crate::flags::CommonFlags;
use crate::input;
use crate::registry::Command;

pub struct Certificate;

impl Command for Certificate {
    fn name(&self) -> &'static str {
        "certificate"
    }
    fn about(&self) -> &'static str {
        "Ramification divisors from Newton polygons, with a residue witness when one exists"
    }
    fn args(&self) -> Vec<Arg> {
        vec![input::input_arg(true)]
    }
    fn run(&self, m: &ArgMatches, flags: &CommonFlags) -> Result<Value, CliError> {
        let j: AdditiveJson = input::parse(&input::require(m)?)?;
        let (poly, search) = additive(&j, flags.prec)?;
        let w = nonsplit_witness(&poly, &search)?;
        let cert = monodromy_certificate(&poly, w.witness.as_ref())?;
        let witness = w.witness.as_ref().map(|x| {
            json!({
                "alpha": json::elem_to_json(&x.alpha),
                "field": json::field_to_json(&x.field),
                "alpha_embedded": json::elem_to_json(&x.alpha_embedded),
            })
        });
        Ok(json!({
            "certificate": {
                "slopes": json::segments_to_json(&cert.slopes),
                "witness_slopes": cert.witness_slopes.as_deref().map(json::segments_to_json),
                "ram_divisors": cert.ram_divisors,
                "image_order_divisors": cert.image_order_divisors,
                "tame": cert.tame,
                "closed_i0": cert.closed_i0,
            },
            "witness": {
                "found": witness,
                "value": w.value.as_ref().map(json::rat_to_json),
                "searched": w.searched,
                "search_field": json::field_to_json(&search),
                "hypothesis_holds": w.hypothesis_holds,
            },
        }))
    }
}
