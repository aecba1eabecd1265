use clap::{Arg, ArgAction, ArgMatches};
use hwcyclic::btgroup::{universal_deformation_hw, versality_check};
use hwcyclic::json::{self, BtJson, MPolyJson};
use serde_json::{json, Value};

use super::{need, prime_field, uint_arg};
use crate::error::CliError;
use crate::flags::CommonFlags;
use crate::input;
use crate::registry::Command;

pub struct Versality;

impl Command for Versality {
    fn name(&self) -> &'static str {
        "versality"
    }
    fn about(&self) -> &'static str {
        "Whether a companion family over F_q[t_1..t_m] is versal at the origin, from the Jacobian rank"
    }
    fn args(&self) -> Vec<Arg> {
        vec![
            Arg::new("universal")
                .long("universal")
                .action(ArgAction::SetTrue)
                .help("check the universal family with a_i = t_i (needs --c and --p)"),
            uint_arg("c", "codimension, with --universal"),
            uint_arg("p", "prime, with --universal"),
            input::input_arg(false),
        ]
    }
    fn run(&self, m: &ArgMatches, _flags: &CommonFlags) -> Result<Value, CliError> {
        let b = if m.get_flag("universal") {
            let f = prime_field(need(m, "p")?, 1)?;
            universal_deformation_hw(need(m, "c")? as usize, &f, hwcyclic::mpoly::DEFAULT_MAX_DEG)?
        } else {
            let j: BtJson<MPolyJson> = input::parse(&input::require(m)?)?;
            json::bt_mpoly(&j)?
        };
        let r = versality_check(&b)?;
        Ok(json!({
            "c": b.c,
            "d": b.d,
            "versal": r.subset_of_parameters,
            "rank": r.rank,
            "independent": r.independent,
            "connected_at_origin": r.connected_at_origin,
            "universal": r.universal,
        }))
    }
}
