use serde_json::json;
use tclab::dynamics::{gn_hn, TABLE1};
use tclab::unipoly::factor;

use super::yes_no;
use crate::report::{usage, CliError, Outcome};

/// `G_8` has degree 8^7; refuse before computing it.
const MAX_N: u32 = 7;
const FACTOR_MAX_N: u32 = 5;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    n: Option<u32>,
    /// Also factor G_n over F_2.
    #[arg(long)]
    factor: bool,
    /// Diff factor degrees of G_1..G_max-n against the stored table.
    #[arg(long, conflicts_with_all = ["n", "factor"])]
    table1: bool,
    #[arg(long, default_value_t = 4)]
    max_n: u32,
}

pub fn run(args: &Args) -> Result<Outcome, CliError> {
    if args.table1 {
        return table1(args.max_n);
    }
    let Some(n) = args.n else {
        return usage("gn needs --n or --table1");
    };
    if n == 0 || n > MAX_N {
        return usage(format!("refusing n = {n}: supported range is 1..={MAX_N}"));
    }
    if args.factor && n > FACTOR_MAX_N {
        return usage(format!("refusing to factor G_{n}: factoring is limited to n <= {FACTOR_MAX_N}"));
    }
    let (g, h) = gn_hn(n);
    let degree = g.degree().unwrap_or(0);
    let squarefree = g.gcd(&g.derivative()).is_one();
    let degrees = if args.factor { Some(factor(&g)?.degrees()) } else { None };
    let mut text = format!("G_{n}: degree {degree}, squarefree {}\n", yes_no(squarefree));
    if let Some(d) = &degrees {
        text.push_str(&format!("factor degrees: {d:?}\n"));
    }
    let factor_cell = degrees.as_ref().map_or(String::new(), |d| join(d));
    Ok(Outcome {
        inputs: json!({ "n": n, "factor": args.factor }),
        results: json!({
            "n": n,
            "degree": degree,
            "h_degree": h.degree(),
            "squarefree": squarefree,
            "factor_degrees": degrees,
        }),
        text,
        table: vec![
            vec!["n".into(), "degree".into(), "squarefree".into(), "factor_degrees".into()],
            vec![n.to_string(), degree.to_string(), squarefree.to_string(), factor_cell],
        ],
        ok: squarefree && degree == 8usize.pow(n - 1),
    })
}

fn join(d: &[usize]) -> String {
    d.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn table1(max_n: u32) -> Result<Outcome, CliError> {
    if max_n == 0 || max_n > FACTOR_MAX_N {
        return usage(format!("--max-n must be in 1..={FACTOR_MAX_N}"));
    }
    let mut table = vec![vec!["n".into(), "expected".into(), "computed".into(), "match".into()]];
    let mut rows = vec![];
    let mut text = String::new();
    let mut all = true;
    for n in 1..=max_n {
        let got = factor(&gn_hn(n).0)?.degrees();
        let want = TABLE1[(n - 1) as usize];
        let ok = got == want;
        all &= ok;
        text.push_str(&format!("n = {n}: {got:?} {}\n", if ok { "ok" } else { "MISMATCH" }));
        table.push(vec![n.to_string(), join(want), join(&got), ok.to_string()]);
        rows.push(json!({ "n": n, "expected": want, "computed": got, "match": ok }));
    }
    Ok(Outcome { inputs: json!({ "table1": true, "max_n": max_n }), results: json!({ "rows": rows }), text, table, ok: all })
}
