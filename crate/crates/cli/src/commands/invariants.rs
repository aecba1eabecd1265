use clap::{Arg, ArgMatches};
use hwcyclic::btgroup::{self, fiber_heights_with_bound, generic_i0, hasse_invariant, BTDesc, HasseInvariant};
use hwcyclic::ff::FieldDesc;
use hwcyclic::json::{self, BaseJson, BaseOnly, BtJson, ElemJson, SeriesJson};
use hwcyclic::semilinear::CyclicSearch;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::flags::CommonFlags;
use crate::input;
use crate::registry::Command;

pub struct Invariants;

impl Command for Invariants {
    fn name(&self) -> &'static str {
        "invariants"
    }
    fn about(&self) -> &'static str {
        "Hasse invariant, a-number, i0 and the etale and connected heights of a Hasse-Witt matrix"
    }
    fn args(&self) -> Vec<Arg> {
        vec![input::input_arg(true)]
    }
    fn run(&self, m: &ArgMatches, flags: &CommonFlags) -> Result<Value, CliError> {
        let text = input::require(m)?;
        let base: BaseOnly = input::parse(&text)?;
        match base.base {
            BaseJson::Field { .. } => {
                let j: BtJson<ElemJson> = input::parse(&text)?;
                let b = json::bt_field(&j)?;
                let mut out = fiber_report(&b, flags.ext_bound)?;
                out.insert("h".into(), Value::Null);
                out.insert("matrix".into(), json::bt_field_to_json(&b));
                Ok(Value::Object(out))
            }
            BaseJson::Series { .. } => {
                let j: BtJson<SeriesJson> = input::parse(&text)?;
                let b = json::bt_series(&j, flags.prec)?;
                let closed = btgroup::closed_fiber(&b)?;
                let mut out = fiber_report(&closed, flags.ext_bound)?;
                let h = match hasse_invariant(&b)? {
                    HasseInvariant::Finite(v) => json::rat_compact(&v),
                    HasseInvariant::Infinite => Value::from("infinite"),
                };
                out.insert("h".into(), h);
                let generic = if b.hw.is_companion() { Value::from(generic_i0(&b)?) } else { Value::Null };
                out.insert("generic_i0".into(), generic);
                out.insert("matrix".into(), json::bt_series_to_json(&b));
                Ok(Value::Object(out))
            }
            BaseJson::Mpoly { .. } => Err(CliError::at("base.kind", "invariants takes a field or series base; see `versality` for families")),
        }
    }
}

/// Invariants of a fiber. Heights come from a companion form when one is
/// found, and otherwise from the rank of the bijective part.
fn fiber_report(b: &BTDesc<FieldDesc>, bound: u32) -> Result<Map<String, Value>, CliError> {
    let stable = b.hw.stable_rank();
    let search = b.hw.cyclic_vector(bound);
    let cyclic = match &search {
        CyclicSearch::Found { .. } => Value::Bool(true),
        CyclicSearch::NotCyclic => Value::Bool(false),
        CyclicSearch::Inconclusive { .. } => Value::Null,
    };
    let (i0, etale, connected_height) = if search.is_found() {
        let h = fiber_heights_with_bound(b, bound)?;
        (Value::from(h.i0), h.etale_height, h.connected_height)
    } else {
        (Value::Null, stable, b.d + b.c - stable)
    };
    let v = json!({
        "c": b.c,
        "d": b.d,
        "a_number": b.hw.kernel_dim(),
        "i0": i0,
        "etale_height": etale,
        "connected_height": connected_height,
        "connected": etale == 0,
        "ordinary": stable == b.c,
        "hw_cyclic": cyclic,
    });
    let Value::Object(map) = v else { unreachable!() };
    Ok(map)
}
