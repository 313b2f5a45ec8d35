use serde_json::json;
use tclab::binaryfield::format_elem;
use tclab::dynamics::check_table2;

use super::{bounded_escape, describe_escape, field_and_elem, DEFAULT_MAX_STEPS};
use crate::report::{to_value, usage, CliError, Outcome};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Element, e.g. `a^3+a+1` or an exponent list `3,1,0`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Field: preset name or `d:<degree>;mod:<exponents>`.
    #[arg(long)]
    field: Option<String>,
    /// Recompute every stored representative and diff against its expected escape time.
    #[arg(long, conflicts_with_all = ["alpha", "field"])]
    table2: bool,
    /// Give up after this many orbit steps (exit 2).
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
}

pub fn run(args: &Args) -> Result<Outcome, CliError> {
    if args.table2 {
        return table2();
    }
    let (Some(alpha), Some(field)) = (&args.alpha, &args.field) else {
        return usage("escape needs --alpha and --field, or --table2");
    };
    let (ctx, a) = field_and_elem(field, alpha)?;
    let result = bounded_escape(&a, args.max_steps)?;
    Ok(Outcome {
        inputs: json!({ "alpha": alpha, "field": field }),
        results: json!({
            "alpha": format_elem(&a),
            "field": ctx.spec(),
            "escape": to_value(&result),
            "escape_time": result.finite(),
        }),
        text: format!("escape time of {} in {}: {}", format_elem(&a), ctx.spec(), describe_escape(&result)),
        table: vec![
            vec!["alpha".into(), "field".into(), "escape_time".into()],
            vec![format_elem(&a), ctx.spec(), describe_escape(&result)],
        ],
        ok: true,
    })
}

fn table2() -> Result<Outcome, CliError> {
    let rows = check_table2();
    let mut table = vec![vec!["beta".into(), "field".into(), "expected".into(), "computed".into(), "match".into()]];
    let mut text = String::new();
    let mut json_rows = Vec::with_capacity(rows.len());
    for r in &rows {
        let computed = describe_escape(&r.record.result);
        let expected = r.row.expected.map_or("infinite".to_string(), |e| e.to_string());
        let beta = if r.row.beta.len() > 40 { format!("{}...", &r.row.beta[..37]) } else { r.row.beta.to_string() };
        text.push_str(&format!(
            "{:<42} {:<8} expected {:<9} computed {:<9} {}\n",
            beta,
            r.row.field,
            expected,
            computed,
            if r.matches() { "ok" } else { "MISMATCH" }
        ));
        table.push(vec![r.row.beta.into(), r.row.field.into(), expected.clone(), computed.clone(), r.matches().to_string()]);
        json_rows.push(json!({
            "beta": r.row.beta,
            "field": r.row.field,
            "expected": r.row.expected,
            "computed": to_value(&r.record.result),
            "match": r.matches(),
        }));
    }
    let mismatches = rows.iter().filter(|r| !r.matches()).count();
    text.push_str(&format!("{} rows, {mismatches} mismatches\n", rows.len()));
    Ok(Outcome {
        inputs: json!({ "table2": true }),
        results: json!({ "rows": json_rows, "mismatches": mismatches }),
        text,
        table,
        ok: mismatches == 0,
    })
}
