use std::fmt;

use hwcyclic::btgroup::BtError;
use hwcyclic::gltheory::GlError;
use hwcyclic::json::JsonError;
use hwcyclic::monodromy::MonodromyError;
use hwcyclic::npoly::NpError;
use hwcyclic::semilinear::SemilinearError;
use hwcyclic::series::SeriesError;
use hwcyclic::strata::StrataError;

/// Failure of a job. `Input` covers malformed or unsuitable input; `Limit`
/// covers exhausted precision, extension bounds and element budgets, which
/// a rerun with larger flags may clear.
#[derive(Debug)]
pub enum CliError {
    Input { path: Option<String>, msg: String },
    Limit(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input { path: None, msg: msg.into() }
    }

    pub fn at(path: impl Into<String>, msg: impl Into<String>) -> Self {
        CliError::Input { path: Some(path.into()), msg: msg.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } => 1,
            CliError::Limit(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input { path: Some(p), msg } => write!(f, "input error at `{p}`: {msg}"),
            CliError::Input { path: None, msg } => write!(f, "input error: {msg}"),
            CliError::Limit(msg) => write!(f, "limit reached: {msg}"),
        }
    }
}

/// Whether an error comes from a resource bound rather than from the input.
trait Limited {
    fn limited(&self) -> bool;
}

impl Limited for SeriesError {
    fn limited(&self) -> bool {
        matches!(self, SeriesError::InsufficientPrecision { .. } | SeriesError::NoConvergence)
    }
}

impl Limited for NpError {
    fn limited(&self) -> bool {
        matches!(self, NpError::Indeterminate { .. } | NpError::UnknownLeading(_))
    }
}

impl Limited for SemilinearError {
    fn limited(&self) -> bool {
        match self {
            SemilinearError::UnknownResidue(..) => true,
            SemilinearError::Series(e) => e.limited(),
            _ => false,
        }
    }
}

impl Limited for BtError {
    fn limited(&self) -> bool {
        match self {
            BtError::CyclicInconclusive(_) | BtError::IndeterminateDeterminant(_) | BtError::IndeterminateCoefficient(_) => true,
            BtError::Semilinear(e) => e.limited(),
            _ => false,
        }
    }
}

impl Limited for GlError {
    fn limited(&self) -> bool {
        matches!(self, GlError::BudgetExceeded { .. } | GlError::Overflow)
    }
}

impl Limited for MonodromyError {
    fn limited(&self) -> bool {
        match self {
            MonodromyError::SeparabilityUndetermined(_) | MonodromyError::Precision { .. } | MonodromyError::ResidueTooLarge(_) => true,
            MonodromyError::Series(e) => e.limited(),
            MonodromyError::Np(e) => e.limited(),
            MonodromyError::Gl(e) => e.limited(),
            MonodromyError::Bt(e) => e.limited(),
            _ => false,
        }
    }
}

impl Limited for StrataError {
    fn limited(&self) -> bool {
        false
    }
}

macro_rules! classify {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                if e.limited() {
                    CliError::Limit(format!("{e}; rerun with a larger --prec, --ext-bound or --budget"))
                } else {
                    CliError::input(e.to_string())
                }
            }
        }
    )*};
}

classify!(SeriesError, NpError, SemilinearError, BtError, GlError, MonodromyError, StrataError);

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        CliError::at(e.path, e.msg)
    }
}
