pub mod escape;
pub mod gn;
pub mod hk;
pub mod parity;
pub mod verify;

use tclab::binaryfield::{format_elem, parse_elem, FieldCtx, FieldElem};
use tclab::dynamics::{escape_from_bounded, Escape, ProjPoint};

use crate::report::{usage, CliError};

/// `--field` is a preset name or `d:..;mod:..`; `--alpha` is read in that field.
pub fn field_and_elem(field: &str, alpha: &str) -> Result<(FieldCtx, FieldElem), CliError> {
    let ctx = FieldCtx::parse_spec(field)?;
    let a = parse_elem(alpha, &ctx)?;
    Ok((ctx, a))
}

/// Orbit steps tried before giving up on an element; orbits in large fields can be astronomically long.
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

pub fn bounded_escape(a: &FieldElem, max_steps: u64) -> Result<Escape, CliError> {
    let start = ProjPoint::Finite(a.ctx().one());
    match escape_from_bounded(a, start, max_steps) {
        Some(e) => Ok(e),
        None => usage(format!("orbit of {} undecided after {max_steps} steps (raise --max-steps)", format_elem(a))),
    }
}

pub fn describe_escape(e: &Escape) -> String {
    match e {
        Escape::Finite { steps } => steps.to_string(),
        Escape::Cycle { period } => format!("infinite (cycle of period {period})"),
        Escape::ReachedInfinity { step } => format!("infinite (reaches infinity at step {step})"),
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
