use clap::{value_parser, Arg, ArgAction, ArgMatches};

pub const DEFAULT_PREC: i64 = 64;
pub const DEFAULT_EXT_BOUND: u32 = 8;
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Flags shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonFlags {
    /// Working precision for series bases that do not state one.
    pub prec: i64,
    pub ext_bound: u32,
    pub budget: usize,
    pub open_slopes: bool,
}

impl Default for CommonFlags {
    fn default() -> Self {
        CommonFlags { prec: DEFAULT_PREC, ext_bound: DEFAULT_EXT_BOUND, budget: DEFAULT_BUDGET, open_slopes: false }
    }
}

pub fn global_args() -> Vec<Arg> {
    vec![
        Arg::new("prec")
            .long("prec")
            .global(true)
            .default_value("64")
            .value_parser(value_parser!(i64).range(1..=4096))
            .help("series precision, in powers of the uniformizer"),
        Arg::new("ext-bound")
            .long("ext-bound")
            .global(true)
            .default_value("8")
            .value_parser(value_parser!(u32).range(1..=16))
            .help("largest residue extension degree tried"),
        Arg::new("budget")
            .long("budget")
            .global(true)
            .default_value("10000000")
            .value_parser(value_parser!(u64).range(1..=1_000_000_000))
            .help("element budget for subgroup enumeration"),
        Arg::new("open-slopes")
            .long("open-slopes")
            .global(true)
            .action(ArgAction::SetTrue)
            .overrides_with("closed-slopes")
            .help("restrict polygons to slopes in (0, 1)"),
        Arg::new("closed-slopes")
            .long("closed-slopes")
            .global(true)
            .action(ArgAction::SetTrue)
            .overrides_with("open-slopes")
            .help("allow slopes in [0, 1] (default)"),
    ]
}

impl CommonFlags {
    pub fn from_matches(m: &ArgMatches) -> Self {
        CommonFlags {
            prec: *m.get_one::<i64>("prec").unwrap(),
            ext_bound: *m.get_one::<u32>("ext-bound").unwrap(),
            budget: *m.get_one::<u64>("budget").unwrap() as usize,
            open_slopes: m.get_flag("open-slopes"),
        }
    }
}
