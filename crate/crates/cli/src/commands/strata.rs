use clap::{Arg, ArgMatches};
use hwcyclic::json;
use hwcyclic::strata::{diamond_dim, enumerate_np, hasse_edges, special_beta};
use serde_json::{json, Value};

use super::{need, uint_arg};
use crate::error::CliError;
use crate::flags::CommonFlags;
use crate::registry::Command;

/// Enumeration grows quickly; keep the height modest.
const MAX_HEIGHT: u64 = 24;

pub struct Strata;

impl Command for Strata {
    fn name(&self) -> &'static str {
        "strata"
    }
    fn about(&self) -> &'static str {
        "Newton polygons of height c + d and dimension d, their order and stratum dimensions"
    }
    fn args(&self) -> Vec<Arg> {
        vec![uint_arg("c", "codimension"), uint_arg("d", "dimension")]
    }
    fn run(&self, m: &ArgMatches, flags: &CommonFlags) -> Result<Value, CliError> {
        let c = need(m, "c")?;
        let d = need(m, "d")?;
        if c + d > MAX_HEIGHT {
            return Err(CliError::input(format!("c + d = {} exceeds {MAX_HEIGHT}", c + d)));
        }
        let (c, d) = (c as usize, d as usize);
        let polys = enumerate_np(c, d, flags.open_slopes)?;
        let edges = hasse_edges(&polys)?;
        let special = special_beta(c, d).ok().and_then(|b| polys.iter().position(|x| *x == b));
        let list: Vec<Value> = polys
            .iter()
            .map(|b| json!({"beta": b.slopes().iter().map(json::rat_to_json).collect::<Vec<_>>(), "dim": diamond_dim(b).1}))
            .collect();
        Ok(json!({
            "c": c,
            "d": d,
            "open_slopes": flags.open_slopes,
            "polygons": list,
            "edges": edges.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
            "special": special,
        }))
    }
}
