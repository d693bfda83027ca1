//! `verify`: exhaustive identity sweeps over `|n| <= max-degree`.

use std::time::Instant;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::appell::{check_equivalence, AppellSeed, EquivalenceReport};
use crate::charlier::{
    addition_formula, charlier_explicit, charlier_series, classical_charlier_check,
    connection_formula, diff_relations_check, inversion_formula, recurrence_residuals,
    verify_difference_rule, CharlierParams,
};
use crate::index::MultiIndex;
use crate::ortho::{
    charlier_identification, verify_multiple_orthogonality, Identification, RefutationWitness,
    Warning,
};
use crate::poly::{FFPoly, Step};
use crate::rational::{int, Rational};
use crate::sample::Sampler;
use crate::series::MultiSeries;

use super::record::{write_record, RecordContext, ResultRecord, Tally, Verdict, CSV_HEADER};
use super::{Context, Failure, Format, Outcome, Suite, VerifyArgs};

struct ParamSet {
    a: CharlierParams,
    b: CharlierParams,
    alpha: CharlierParams,
    random_seed: Option<AppellSeed>,
}

const ORDER: [Suite; 9] = [
    Suite::Difference,
    Suite::Genfunc,
    Suite::Inversion,
    Suite::Connection,
    Suite::Addition,
    Suite::Recurrences,
    Suite::Classical,
    Suite::Orthogonality,
    Suite::Appell,
];

fn shifted(a: &CharlierParams, by: &Rational) -> CharlierParams {
    CharlierParams::new(a.values().iter().map(|v| v + by).collect()).expect("nonempty")
}

fn halved(a: &CharlierParams) -> CharlierParams {
    CharlierParams::new(a.values().iter().map(|v| v / int(2)).collect()).expect("nonempty")
}

fn parse_matching(text: &str, arity: usize, flag: &str) -> Result<CharlierParams, Failure> {
    let p = CharlierParams::parse(text)?;
    if p.arity() != arity {
        return Err(Failure::Input(format!(
            "--{flag} has {} entries, --a has {arity}",
            p.arity()
        )));
    }
    Ok(p)
}

fn param_sets(ctx: &Context, args: &VerifyArgs, order: usize) -> Result<Vec<ParamSet>, Failure> {
    if let Some(text) = &args.a {
        let a = CharlierParams::parse(text)?;
        let b = match &args.b {
            Some(t) => parse_matching(t, a.arity(), "b")?,
            None => shifted(&a, &int(1)),
        };
        let alpha = match &args.alpha {
            Some(t) => parse_matching(t, a.arity(), "alpha")?,
            None => halved(&a),
        };
        return Ok(vec![ParamSet {
            a,
            b,
            alpha,
            random_seed: None,
        }]);
    }
    let count = args.random.unwrap_or(0);
    if args.arity == 0 {
        return Err(Failure::Input("--arity must be at least 1".into()));
    }
    let mut sampler = Sampler::new(ctx.seed);
    (0..count)
        .map(|_| {
            Ok(ParamSet {
                a: sampler.params(args.arity),
                b: sampler.params(args.arity),
                alpha: sampler.params(args.arity),
                random_seed: Some(sampler.seed(&ctx.step, args.arity, order)?),
            })
        })
        .collect()
}

pub(super) fn run(ctx: &mut Context, args: &VerifyArgs) -> Outcome {
    let max = ctx.max_degree_or(5)?;
    let sets = param_sets(ctx, args, max)?;
    let suites: Vec<Suite> = match args.suite {
        Suite::All => ORDER.to_vec(),
        s => vec![s],
    };
    let records = RecordContext {
        command: ctx.command.clone(),
        rng_seed: ctx.seed,
    };
    if ctx.format == Format::Csv {
        writeln!(ctx.out, "{CSV_HEADER}")?;
    }
    let mut worst = Verdict::Pass;
    for set in &sets {
        for &suite in &suites {
            for record in run_suite(&records, suite, set, max, &ctx.step)? {
                write_record(ctx.out, ctx.format, &record)?;
                worst = worst.max_with(record.verdict);
            }
        }
    }
    match worst {
        Verdict::Fail => Err(Failure::Verification),
        Verdict::Warn if ctx.strict => Err(Failure::Verification),
        _ => Ok(()),
    }
}

impl Verdict {
    fn max_with(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Warn, _) | (_, Verdict::Warn) => Verdict::Warn,
            _ => Verdict::Pass,
        }
    }
}

fn base_params(set: &ParamSet, max: usize) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("a".into(), json!(set.a.to_string()));
    m.insert("max_degree".into(), json!(max));
    m
}

fn with(mut m: serde_json::Map<String, Value>, key: &str, value: Value) -> Value {
    m.insert(key.into(), value);
    Value::Object(m)
}

fn run_suite(
    rc: &RecordContext,
    suite: Suite,
    set: &ParamSet,
    max: usize,
    step: &Step,
) -> Result<Vec<ResultRecord>, Failure> {
    let a = &set.a;
    let r = a.arity();
    let indices = MultiIndex::simplex(r, max);
    let params = Value::Object(base_params(set, max));
    let mut out = Vec::new();
    let started = Instant::now();
    match suite {
        Suite::Difference => {
            let mut t = Tally::new();
            for n in &indices {
                t.residual(n, "difference", &verify_difference_rule(n, a)?.residual);
            }
            out.push(rc.record("difference", params, t, started));
        }
        Suite::Genfunc => {
            let series = charlier_series(a, max);
            let mut t = Tally::new();
            for n in &indices {
                let diff = series.extract(n)?.sub(&charlier_explicit(n, a)?)?;
                t.residual(n, "genfunc - explicit", &diff);
            }
            out.push(rc.record("genfunc", params, t, started));
        }
        Suite::Inversion => {
            let mut t = Tally::new();
            for n in &indices {
                t.residual(n, "inversion", &inversion_formula(n, a)?.residual);
            }
            out.push(rc.record("inversion", params, t, started));
        }
        Suite::Connection => {
            let mut t = Tally::new();
            for n in &indices {
                t.residual(n, "connection", &connection_formula(n, a, &set.b)?.residual);
            }
            let p = with(base_params(set, max), "b", json!(set.b.to_string()));
            out.push(rc.record("connection", p, t, started));
        }
        Suite::Addition => {
            let mut t = Tally::new();
            for n in &indices {
                t.bivariate(n, "addition", &addition_formula(n, a, &set.alpha)?.residual);
            }
            let p = with(base_params(set, max), "alpha", json!(set.alpha.to_string()));
            out.push(rc.record("addition", p, t, started));
        }
        Suite::Recurrences => {
            if r == 2 {
                let rows = indices
                    .iter()
                    .map(|n| recurrence_residuals(n, a).map(|res| (n, res)))
                    .collect::<crate::error::Result<Vec<_>>>()?;
                for (name, pick) in [("rec-1", 0usize), ("rec-2", 1), ("rec-3", 2)] {
                    let started = Instant::now();
                    let mut t = Tally::new();
                    for (n, res) in &rows {
                        let p = [&res.rec1, &res.rec2, &res.rec3][pick];
                        t.residual(n, name, p);
                    }
                    out.push(rc.record(name, params.clone(), t, started));
                }
            }
            let started = Instant::now();
            let order = max.max(1);
            let rel = diff_relations_check(a, order)?;
            let mut t = Tally::new();
            for (j, s) in rel.rel1.iter().enumerate() {
                series_residual(&mut t, &format!("gen-rel1 j={}", j + 2), s);
            }
            for (i, s) in rel.rel2.iter().enumerate() {
                series_residual(&mut t, &format!("gen-rel2 i={}", i + 1), s);
            }
            let p = with(base_params(set, max), "series_order", json!(order));
            out.push(rc.record("gen-rel", p, t, started));
        }
        Suite::Classical => {
            if r == 2 {
                let mut t = Tally::new();
                for n1 in 0..=max {
                    let c = classical_charlier_check(n1, a)?;
                    let n = MultiIndex::from([n1, 0]);
                    t.residual(&n, "single-weight", &c.single_weight_residual);
                    t.residual(&n, "a2 shift", &c.a2_shift_residual);
                    t.residual(&n, "monic three-term", &c.recurrence_residual);
                }
                out.push(rc.record("classical", params, t, started));
            }
        }
        Suite::Orthogonality => {
            let mut t = Tally::new();
            for n in &indices {
                let v = verify_multiple_orthogonality(n, a)?;
                t.warn_all(&v.warnings);
                for c in &v.conditions {
                    if c.value.is_zero() {
                        t.pass();
                    } else {
                        t.checked += 1;
                        let label = format!("L_a{}[x^({}) C_n]", c.weight + 1, c.k);
                        t.fail_with(n, &label, &FFPoly::constant(c.value.clone(), &Step::one()));
                    }
                }
                if !v.warnings.contains(&Warning::RepeatedParameter) && !v.normal() {
                    let c = charlier_explicit(n, a)?;
                    t.fail_with(n, "normality: moment at k = n_i vanishes", &c);
                }
            }
            out.push(rc.record("orthogonality", params, t, started));
        }
        Suite::Appell => {
            let seed = AppellSeed::charlier(a, max)?;
            let mut t = Tally::new();
            equivalence_tally(&mut t, &check_equivalence(&seed)?);
            out.push(rc.record("appell-equivalence", params.clone(), t, started));

            if max > r {
                let started = Instant::now();
                let family = crate::charlier::charlier_family(a, max);
                let mut t = Tally::new();
                identification_tally(&mut t, a, &charlier_identification(&family, max));
                out.push(rc.record("identification", params.clone(), t, started));
            }

            if let Some(seed) = &set.random_seed {
                let started = Instant::now();
                let mut t = Tally::new();
                equivalence_tally(&mut t, &check_equivalence(seed)?);
                let p = with(
                    base_params(set, max),
                    "omega",
                    json!(step.value().to_string()),
                );
                out.push(rc.record("appell-random-seed", p, t, started));
            }
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
    Ok(out)
}

fn series_residual(t: &mut Tally, label: &str, s: &MultiSeries) {
    t.checked += 1;
    if s.is_zero() {
        return;
    }
    t.failures += 1;
    for (k, p) in s.terms().filter(|(_, p)| !p.is_zero()) {
        t.witness(k, label, p);
    }
}

fn equivalence_tally(t: &mut Tally, report: &EquivalenceReport) {
    t.checked += 5;
    for (n, d) in &report.b_mismatches {
        t.fail_with(n, "series construction minus binomial sum", d);
    }
    for (n, d) in &report.e_mismatches {
        t.fail_with(n, "difference-power construction minus binomial sum", d);
    }
    for (n, res) in &report.appell.residuals {
        t.fail_with(n, "difference rule", res);
    }
    for (n, res) in &report.addition.residuals {
        t.failures += 1;
        for (k, slot) in res.slots().iter().enumerate() {
            if !slot.is_zero() {
                t.witness(n, &format!("addition [y^({k})]"), slot);
            }
        }
    }
    if !report.round_trip {
        t.fail_with(
            &MultiIndex::new(vec![]),
            "seed round trip",
            &FFPoly::one(&Step::one()),
        );
    }
}

fn identification_tally(t: &mut Tally, expected: &CharlierParams, id: &Identification) {
    t.checked += 1;
    match id {
        Identification::Identified { params, warnings } => {
            t.warn_all(warnings);
            if params != expected {
                for (i, (got, want)) in params.values().iter().zip(expected.values()).enumerate() {
                    if got != want {
                        t.fail_with(
                            &MultiIndex::unit(expected.arity(), i),
                            &format!("identified a{} minus expected", i + 1),
                            &FFPoly::constant(got - want, &Step::one()),
                        );
                    }
                }
            }
        }
        Identification::Refuted {
            stage,
            index,
            witness,
        } => {
            let at = index.clone().unwrap_or_else(|| MultiIndex::new(vec![]));
            let label = format!("refuted at {stage} stage");
            match witness {
                RefutationWitness::Residual(p) => t.fail_with(&at, &label, p),
                RefutationWitness::RankDeficient { null_space, .. } => t.fail_with(
                    &at,
                    &format!("{label}: rank deficient, null vector as coefficients"),
                    &FFPoly::from_coeffs(null_space[0].clone(), &Step::one()),
                ),
                RefutationWitness::Constraint(v) => {
                    let p = v.residual.clone().unwrap_or_else(|| {
                        let gap = match (&v.expected, &v.found) {
                            (Some(e), Some(f)) => f - e,
                            _ => Rational::from_integer(1.into()),
                        };
                        FFPoly::constant(gap, &Step::one())
                    });
                    t.fail_with(&at, &format!("{label}: {}", v.constraint), &p)
                }
                _ => t.fail_with(&at, &label, &FFPoly::one(&Step::one())),
            }
        }
    }
}
