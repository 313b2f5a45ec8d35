use clap::ValueEnum;
use serde_json::json;
use tclab::parity::{cover_check, tiling_check_mutated, Mutation};

use crate::report::{to_value, usage, CliError, Outcome};

/// Cover bookkeeping scans a `4^l x 2^{2l-1}` box per tile.
const COVER_MAX_ELL: u32 = 6;
const MAX_ELL: u32 = 8;

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum MutationArg {
    None,
    DropABound,
    DropIFloor,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    ell: u32,
    /// Deliberately falsified region, for negative controls.
    #[arg(long, value_enum, default_value_t = MutationArg::None)]
    mutation: MutationArg,
}

pub fn run(args: &Args) -> Result<Outcome, CliError> {
    let ell = args.ell;
    if ell == 0 || ell > MAX_ELL {
        return usage(format!("--ell must be in 1..={MAX_ELL}"));
    }
    let mutation = match args.mutation {
        MutationArg::None => Mutation::None,
        MutationArg::DropABound => Mutation::DropABound,
        MutationArg::DropIFloor => Mutation::DropIFloor,
    };
    let r = tiling_check_mutated(ell, mutation);
    let cover = (ell <= COVER_MAX_ELL && mutation == Mutation::None).then(|| cover_check(ell));
    let uncovered = cover.as_ref().map(|c| c.uncovered_points.clone());
    let mut text = format!(
        "l = {ell}: {} points, {} with C(i,a) C(j,b) odd, {} of them W0 generators\n",
        r.points_checked,
        r.violations.len(),
        r.generator_violations.len()
    );
    for p in &r.violations {
        text.push_str(&format!("  odd at i={} a={} j={} b={} k={}\n", p.i, p.a, p.j, p.b, p.k));
    }
    if let Some(u) = &uncovered {
        text.push_str(&format!("uncovered by tiles and candidate lines: {}\n", u.len()));
    }
    Ok(Outcome {
        inputs: json!({ "ell": ell, "mutation": format!("{mutation:?}") }),
        results: json!({
            "ell": ell,
            "points_checked": r.points_checked,
            "violations": to_value(&r.violations),
            "generator_violations": to_value(&r.generator_violations),
            "uncovered_points": uncovered,
            "cover": cover.as_ref().map(to_value),
        }),
        text,
        table: vec![
            vec!["ell".into(), "points_checked".into(), "violations".into(), "generator_violations".into()],
            vec![ell.to_string(), r.points_checked.to_string(), r.violations.len().to_string(), r.generator_violations.len().to_string()],
        ],
        ok: r.violations.is_empty(),
    })
}
