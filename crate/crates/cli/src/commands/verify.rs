use clap::Subcommand;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tclab::binaryfield::presets::preset;
use tclab::hilbertkunz::generic_points;
use tclab::tightverify::{
    a_matrix, basis_claim, containment_generic, invariance, noncontainment, span_check, t_matrix, v_annihilates_w0,
    v_times_u_all, Witness,
};
use tclab::trivarring::check_q;

use super::{bounded_escape, field_and_elem, yes_no, DEFAULT_MAX_STEPS};
use crate::report::{to_value, usage, CliError, Outcome};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(subcommand)]
    what: What,
}

impl Args {
    pub fn name(&self) -> &'static str {
        match self.what {
            What::Noncontainment { .. } => "verify noncontainment",
            What::Containment { .. } => "verify containment",
            What::Lemmas { .. } => "verify lemmas",
        }
    }
}

#[derive(Subcommand, Debug)]
enum What {
    /// x y^{3Q+1} z^{3Q} is not a multiple of h_a modulo (x^{4Q}, y^{4Q}, z^{4Q}).
    Noncontainment {
        /// Escape time; with no --alpha the canonical witness is used.
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long, allow_hyphen_values = true, requires = "field")]
        alpha: Option<String>,
        #[arg(long)]
        field: Option<String>,
        /// Allow direct elimination past l = 3.
        #[arg(long)]
        force: bool,
    },
    /// y f^Q lies in (x^{4Q}, y^{4Q}, z^{4Q}, h_t) for generic t.
    Containment {
        #[arg(long = "Q", alias = "q")]
        q: u64,
    },
    /// The per-Q lemma checks.
    Lemmas {
        #[arg(long = "Q", alias = "q")]
        q: u64,
    },
}

pub fn run(args: &Args, seed: u64) -> Result<Outcome, CliError> {
    match &args.what {
        What::Noncontainment { ell, alpha, field, force } => run_noncontainment(*ell, alpha.as_deref(), field.as_deref(), *force),
        What::Containment { q } => run_containment(*q, seed),
        What::Lemmas { q } => run_lemmas(*q, seed),
    }
}

fn run_noncontainment(ell: Option<u32>, alpha: Option<&str>, field: Option<&str>, force: bool) -> Result<Outcome, CliError> {
    let w = match (alpha, field) {
        (Some(a), Some(f)) => {
            let (_, a) = field_and_elem(f, a)?;
            let Some(got) = bounded_escape(&a, DEFAULT_MAX_STEPS)?.finite() else {
                return usage("alpha has infinite escape time");
            };
            if ell.is_some_and(|l| u64::from(l) != got) {
                return usage(format!("alpha has escape time {got}, not {}", ell.unwrap()));
            }
            Witness::new(got as u32, a)?
        }
        _ => match ell {
            Some(l) => Witness::canonical(l)?,
            None => return usage("noncontainment needs --ell or --alpha with --field"),
        },
    };
    let r = noncontainment(&w, force)?;
    let d = r.direct.as_ref().expect("direct route runs");
    let text = format!(
        "l = {}, Q = {}, alpha = {} in {}\n\
         direct: v in h_a O: {} (blocks {}), certificate verified: {}\n\
         basis route: v u_1 = (xyz)^(4Q-1): {}, v u_i = 0 for i > 1: {}, nullity N(Q,1) = {}, \
         v W0 = 0: {}, h_a W in span W': {}, u_i basis of W/W0: {}\n\
         routes agree on v not in h_a O: {}\n",
        r.ell,
        r.q,
        r.alpha,
        r.field,
        yes_no(d.member),
        d.blocks.iter().map(|b| format!("{}x{}", b.rows, b.cols)).collect::<Vec<_>>().join(","),
        yes_no(d.certificate_verified),
        yes_no(r.v_u1_is_one),
        yes_no(r.v_ui_vanish),
        r.nullity,
        yes_no(r.w0.passes()),
        yes_no(r.span.contained()),
        yes_no(r.basis.holds()),
        yes_no(r.agree),
    );
    let table = vec![
        vec!["ell".into(), "Q".into(), "field".into(), "alpha".into(), "member".into(), "certificate_verified".into(), "basis_route".into(), "agree".into()],
        vec![
            r.ell.to_string(),
            r.q.to_string(),
            r.field.clone(),
            r.alpha.clone(),
            d.member.to_string(),
            d.certificate_verified.to_string(),
            r.basis_route.to_string(),
            r.agree.to_string(),
        ],
    ];
    Ok(Outcome {
        inputs: json!({ "ell": ell, "alpha": alpha, "field": field, "force": force }),
        results: to_value(&r),
        text,
        table,
        ok: r.agree,
    })
}

fn run_containment(q: u64, seed: u64) -> Result<Outcome, CliError> {
    if q != 2 && q != 8 {
        return usage("--Q must be 2 or 8");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = generic_points(&mut rng, 3);
    let r = containment_generic(q, &pts)?;
    let ok = r.generic.certified && r.surjective && r.preimage_verified;
    let text = format!(
        "Q = {q}: h_t maps degree {} onto degree {} ({} x {}), rank {} at t = {} in {}\n\
         certified: {}, surjective: {}, preimage of y^{}z^{} ({} terms) verified: {}\n",
        r.degree_from,
        r.degree_to,
        r.rows,
        r.cols,
        r.generic.lower_bound,
        r.point,
        r.field,
        yes_no(r.generic.certified),
        yes_no(r.surjective),
        3 * q + 1,
        3 * q,
        r.preimage_terms,
        yes_no(r.preimage_verified),
    );
    let table = vec![
        vec!["Q".into(), "rows".into(), "cols".into(), "rank".into(), "certified".into(), "surjective".into(), "preimage_verified".into()],
        vec![
            q.to_string(),
            r.rows.to_string(),
            r.cols.to_string(),
            r.generic.lower_bound.to_string(),
            r.generic.certified.to_string(),
            r.surjective.to_string(),
            r.preimage_verified.to_string(),
        ],
    ];
    Ok(Outcome { inputs: json!({ "Q": q }), results: to_value(&r), text, table, ok })
}

/// Generator-level checks get expensive past this `Q`.
const GENERATOR_CHECK_MAX_Q: u64 = 32;

fn run_lemmas(q: u64, seed: u64) -> Result<Outcome, CliError> {
    check_q(q)?;
    if q > 128 {
        return usage("--Q must be one of 2, 8, 32, 128");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f2 = tclab::binaryfield::FieldCtx::f2();
    let mut checks: Vec<(&str, bool)> = vec![];
    let mut results = serde_json::Map::new();

    let vu = v_times_u_all(q, &f2)?;
    let u1 = vu[0].value.is_one();
    let rest = vu[1..].iter().all(|r| r.value.is_zero());
    checks.push(("v u_1 = (xyz)^(4Q-1)", u1));
    checks.push(("v u_i = 0 for i > 1", rest));
    results.insert("v_times_u".into(), to_value(&vu));

    if q <= GENERATOR_CHECK_MAX_Q {
        let w0 = v_annihilates_w0(q, &f2)?;
        checks.push(("v W0 = 0 (product and Lucas routes)", w0.passes()));
        results.insert("w0".into(), to_value(&w0));
        let basis = basis_claim(q)?;
        checks.push(("u_i extend a basis of W0 to W", basis.holds()));
        results.insert("basis".into(), to_value(&basis));
        let k = preset("t2-d13").expect("preset");
        let alpha = k.random(&mut rng);
        let span = span_check(q, &alpha)?;
        checks.push(("h_a W in span W'", span.contained()));
        results.insert("span".into(), json!({ "alpha": alpha.to_string(), "field": k.spec(), "report": to_value(&span) }));
    }

    if q >= 8 {
        let fields = ["t2-d2", "t2-d3", "t2-d5", "t2-d7", "t2-d13"];
        let mut pairs: Vec<Value> = vec![];
        let mut all = true;
        while pairs.len() < 100 {
            let k = preset(fields[rng.gen_range(0..fields.len())]).expect("preset");
            let (a, t) = (k.random(&mut rng), k.random(&mut rng));
            if let Some(c) = invariance(q, &a, &t)? {
                all &= c.holds();
                pairs.push(json!({ "field": k.spec(), "alpha": a.to_string(), "t": t.to_string(), "before": c.before, "after": c.after }));
            }
        }
        checks.push(("N(Q, t) = N(Q/4, t*) on 100 random pairs", all));
        results.insert("nullity_invariance".into(), Value::Array(pairs));
    }
    if q == 8 || q == 32 {
        let mut all = true;
        for _ in 0..100 {
            let k = preset(["t2-d2", "t2-d3", "t2-d5"][rng.gen_range(0..3)]).expect("preset");
            let (a, t) = (k.random(&mut rng), k.random(&mut rng));
            all &= t_matrix(q, &a, &t)?.nullity() == a_matrix(q, &a, &t)?.nullity();
        }
        checks.push(("a and b maps have equal nullity on 100 random pairs", all));
    }

    let ok = checks.iter().all(|c| c.1);
    let mut text = format!("Q = {q}\n");
    let mut table = vec![vec!["Q".into(), "check".into(), "passed".into()]];
    for (name, pass) in &checks {
        text.push_str(&format!("  {name}: {}\n", if *pass { "ok" } else { "FAILED" }));
        table.push(vec![q.to_string(), (*name).into(), pass.to_string()]);
    }
    results.insert("checks".into(), Value::Array(checks.iter().map(|(n, p)| json!({ "check": n, "passed": p })).collect()));
    Ok(Outcome { inputs: json!({ "Q": q }), results: Value::Object(results), text, table, ok })
}
