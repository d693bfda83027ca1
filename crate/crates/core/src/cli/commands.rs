//! `charlier`, `appell`, `recurrence` and `table`.

use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use crate::appell::{
    build_via_c, check_addition_formula, check_appell_property, check_equivalence, recover_seed,
};
use crate::charlier::{charlier_explicit, charlier_family, CharlierParams};
use crate::error::Error;
use crate::family::Family;
use crate::index::MultiIndex;
use crate::io::{family_from_json, Basis, FamilyJson, PolyJson, SeedFile};
use crate::ortho::{
    check_appell_orthogonal_constraints, extract_recurrence, ConstraintVerdict, RowStatus, Window,
};
use crate::poly::FFPoly;
use crate::rational::{int, parse_rational, parse_rational_list, Rational};

use super::record::{write_record, RecordContext, Tally, Verdict, CSV_HEADER};
use super::{
    parse_index_list, AppellAction, Context, Failure, Format, Outcome, RecurrenceArgs, TableArgs,
};

pub(super) fn charlier(ctx: &mut Context, n: &str, a: &str, basis: Basis) -> Outcome {
    let n = MultiIndex::parse(n)?;
    let params = CharlierParams::parse(a)?;
    ctx.check_cap(n.total())?;
    let p = charlier_explicit(&n, &params)?;
    match ctx.format {
        Format::Json => {
            let mut v = serde_json::to_value(PolyJson::encode(&p, basis)).expect("serializable");
            v["n"] = json!(n.components());
            v["a"] = json!(params
                .values()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>());
            writeln!(ctx.out, "{v}")?;
        }
        Format::Csv => {
            writeln!(ctx.out, "k,coeff")?;
            let coeffs = match basis {
                Basis::Ff => p.coeffs().to_vec(),
                Basis::Monomial => p.to_monomial(),
            };
            for (k, c) in coeffs.iter().enumerate() {
                writeln!(ctx.out, "{k},{c}")?;
            }
        }
        Format::Text => {
            let text = match basis {
                Basis::Ff => p.to_ff_string(),
                Basis::Monomial => p.to_monomial_string(),
            };
            writeln!(ctx.out, "{text}")?;
        }
    }
    Ok(())
}

enum Input {
    Seed(SeedFile),
    Family(Family),
}

fn read_input(ctx: &Context, path: &Path) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if value.get("members").is_some() {
        let family = family_from_json(&text)?;
        ctx.check_cap(family.order())?;
        Ok(Input::Family(family))
    } else {
        Ok(Input::Seed(SeedFile::parse(&text)?))
    }
}

fn write_family(ctx: &mut Context, family: &Family) -> Outcome {
    match ctx.format {
        Format::Json => {
            let text = serde_json::to_string(&FamilyJson::encode(family, Basis::Ff))
                .expect("serializable");
            writeln!(ctx.out, "{text}")?;
        }
        Format::Csv => {
            let header: Vec<String> = (1..=family.arity()).map(|i| format!("n{i}")).collect();
            writeln!(ctx.out, "{},omega,k,coeff", header.join(","))?;
            for (n, p) in family.members() {
                let idx: Vec<String> = n.components().iter().map(ToString::to_string).collect();
                for (k, c) in p.coeffs().iter().enumerate() {
                    writeln!(ctx.out, "{},{},{k},{c}", idx.join(","), family.step())?;
                }
            }
        }
        Format::Text => {
            for (n, p) in family.members() {
                writeln!(ctx.out, "P{n} = {p}")?;
            }
        }
    }
    Ok(())
}

fn finish(ctx: &mut Context, records: Vec<super::ResultRecord>) -> Outcome {
    if ctx.format == Format::Csv {
        writeln!(ctx.out, "{CSV_HEADER}")?;
    }
    let mut failed = false;
    for r in &records {
        write_record(ctx.out, ctx.format, r)?;
        failed |= r.verdict == Verdict::Fail || (ctx.strict && r.verdict == Verdict::Warn);
    }
    if failed {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

pub(super) fn appell(ctx: &mut Context, path: &Path, action: AppellAction) -> Outcome {
    let input = read_input(ctx, path)?;
    let rc = RecordContext {
        command: ctx.command.clone(),
        rng_seed: ctx.seed,
    };
    match (action, input) {
        (AppellAction::Build, Input::Seed(file)) => {
            let seed = file.to_seed(ctx.degree_cap)?;
            let mut family = build_via_c(&seed).into_family();
            if let Some(max) = ctx.max_degree {
                family = family.truncate(max);
            }
            write_family(ctx, &family)
        }
        (AppellAction::Check, Input::Seed(file)) => {
            let seed = file.to_seed(ctx.degree_cap)?;
            let started = Instant::now();
            let report = check_equivalence(&seed)?;
            let params = json!({"omega": seed.step().to_string(), "arity": seed.arity(), "order": seed.order()});
            let mut records = Vec::new();
            let mut pair = |name: &str, diffs: &std::collections::BTreeMap<MultiIndex, FFPoly>| {
                let mut t = Tally::new();
                t.checked = MultiIndex::simplex(seed.arity(), seed.order()).len();
                for (n, d) in diffs {
                    t.fail_with(n, name, d);
                }
                records.push(rc.record(name, params.clone(), t, started));
            };
            pair(
                "series construction minus binomial sum",
                &report.b_mismatches,
            );
            pair(
                "difference-power construction minus binomial sum",
                &report.e_mismatches,
            );
            pair("difference rule", &report.appell.residuals);
            let mut t = Tally::new();
            t.checked = MultiIndex::simplex(seed.arity(), seed.order()).len()
                - report.addition.residuals.len();
            for (n, b) in &report.addition.residuals {
                t.bivariate(n, "addition", b);
            }
            records.push(rc.record("addition formula", params.clone(), t, started));
            let mut t = Tally::new();
            t.checked = 1;
            if !report.round_trip {
                t.fail_with(
                    &MultiIndex::zeros(seed.arity()),
                    "recovered seed differs",
                    &FFPoly::one(seed.step()),
                );
            }
            records.push(rc.record("seed round trip", params, t, started));
            finish(ctx, records)
        }
        (AppellAction::Check, Input::Family(family)) => {
            let max = ctx.max_degree.unwrap_or(family.order()).min(family.order());
            let started = Instant::now();
            let params = json!({"omega": family.step().to_string(), "arity": family.arity(), "max_degree": max});
            let mut t = Tally::new();
            t.checked = MultiIndex::simplex(family.arity(), max).len();
            for (n, r) in &check_appell_property(&family, max)?.residuals {
                t.fail_with(n, "difference rule", r);
            }
            let mut records = vec![rc.record("difference rule", params.clone(), t, started)];
            let started = Instant::now();
            let addition = check_addition_formula(&family, max)?;
            let mut t = Tally::new();
            t.checked = MultiIndex::simplex(family.arity(), max).len() - addition.residuals.len();
            for (n, b) in &addition.residuals {
                t.bivariate(n, "addition", b);
            }
            records.push(rc.record("addition formula", params, t, started));
            finish(ctx, records)
        }
        (AppellAction::Recover, Input::Family(family)) => match recover_seed(&family) {
            Ok(seed) => {
                match ctx.format {
                    Format::Text => {
                        for (k, c) in seed.coeffs() {
                            writeln!(ctx.out, "a{k} = {c}")?;
                        }
                    }
                    _ => writeln!(ctx.out, "{}", SeedFile::from_seed(&seed).to_json())?,
                }
                Ok(())
            }
            Err(Error::NotAppell { index, residual }) => {
                let mut t = Tally::new();
                t.residual(&index, "difference rule", &residual);
                let params = json!({"omega": family.step().to_string(), "arity": family.arity()});
                finish(ctx, vec![rc.record("recover", params, t, Instant::now())])
            }
            Err(e) => Err(e.into()),
        },
        (AppellAction::Recover, Input::Seed(_)) => Err(Failure::Input(
            "recover needs a family file (with \"members\"), not a seed file".into(),
        )),
        (AppellAction::Build, Input::Family(_)) => Err(Failure::Input(
            "build needs a seed file (with \"coeffs\"), not a family file".into(),
        )),
    }
}

fn cell(v: &Option<Rational>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn status_name(s: &RowStatus) -> &'static str {
    match s {
        RowStatus::Solved => "solved",
        RowStatus::RankDeficient { .. } => "rank-deficient",
        RowStatus::NoRecurrence { .. } => "no-recurrence",
    }
}

pub(super) fn recurrence(ctx: &mut Context, args: &RecurrenceArgs) -> Outcome {
    let window = match (&args.indices, args.window) {
        (Some(text), _) => Window::Indices(parse_index_list(text)?),
        (None, Some(w)) => Window::Simplex(w),
        (None, None) => Window::Simplex(ctx.max_degree.unwrap_or(3)),
    };
    let family = match (&args.a, &args.family) {
        (Some(a), _) => {
            let params = CharlierParams::parse(a)?;
            let top = window
                .indices(params.arity())
                .iter()
                .map(MultiIndex::total)
                .max()
                .unwrap_or(0);
            ctx.check_cap(top + 1)?;
            charlier_family(&params, top + 1)
        }
        (None, Some(path)) => match read_input(ctx, path)? {
            Input::Family(f) => f,
            Input::Seed(file) => build_via_c(&file.to_seed(ctx.degree_cap)?).into_family(),
        },
        (None, None) => unreachable!("clap requires one source"),
    };
    let r = family.arity();
    if args.direction == 0 || args.direction > r {
        return Err(Failure::Input(format!(
            "--direction must be between 1 and {r}"
        )));
    }
    if let Window::Indices(v) = &window {
        if let Some(bad) = v.iter().find(|n| n.arity() != r) {
            return Err(Error::ArityMismatch {
                expected: r,
                found: bad.arity(),
            }
            .into());
        }
    }
    let coeffs = extract_recurrence(&family, args.direction - 1, &window)?;
    let verdict = check_appell_orthogonal_constraints(&coeffs, &window);

    let header: Vec<String> = if r == 2 {
        ["m", "n", "E", "F", "G"].map(String::from).to_vec()
    } else {
        (1..=r)
            .map(|i| format!("n{i}"))
            .chain(std::iter::once("b".to_string()))
            .chain((1..=r).map(|j| format!("a{j}")))
            .collect()
    };
    if ctx.format != Format::Json {
        writeln!(ctx.out, "{},status", header.join(","))?;
    }
    for (n, row) in &coeffs.rows {
        let mut cells: Vec<String> = n.components().iter().map(ToString::to_string).collect();
        cells.push(cell(&row.diagonal));
        if r == 2 {
            // F and G follow the raised direction: F is the lower coefficient
            // along it
            let (f, g) = if args.direction == 1 { (0, 1) } else { (1, 0) };
            cells.push(cell(&row.lower[f]));
            cells.push(cell(&row.lower[g]));
        } else {
            cells.extend(row.lower.iter().map(cell));
        }
        match ctx.format {
            Format::Json => {
                let mut obj = serde_json::Map::new();
                for (h, c) in header.iter().zip(&cells) {
                    let v = if c.is_empty() { Value::Null } else { json!(c) };
                    obj.insert(h.clone(), v);
                }
                obj.insert("status".into(), json!(status_name(&row.status)));
                if let RowStatus::NoRecurrence { residual } = &row.status {
                    obj.insert(
                        "residual".into(),
                        serde_json::to_value(PolyJson::encode(residual, Basis::Ff))
                            .expect("serializable"),
                    );
                }
                writeln!(ctx.out, "{}", Value::Object(obj))?;
            }
            _ => writeln!(ctx.out, "{},{}", cells.join(","), status_name(&row.status))?,
        }
    }

    let list = |v: &[Rational]| {
        let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
        format!("({})", parts.join(","))
    };
    let mut footer: Vec<(&str, Option<String>)> = Vec::new();
    let clean = match &verdict {
        ConstraintVerdict::Satisfied { b0, params } => {
            footer.push(("constraints", Some("satisfied".into())));
            footer.push(("b0", Some(b0.to_string())));
            footer.push(("params", Some(list(params))));
            true
        }
        ConstraintVerdict::Violated(v) => {
            footer.push(("constraints", Some("violated".into())));
            footer.push(("index", Some(v.index.to_string())));
            footer.push(("constraint", Some(v.constraint.to_string())));
            footer.push(("expected", v.expected.as_ref().map(ToString::to_string)));
            footer.push(("found", v.found.as_ref().map(ToString::to_string)));
            false
        }
        ConstraintVerdict::InsufficientWindow { missing } => {
            let m: Vec<String> = missing.iter().map(ToString::to_string).collect();
            footer.push(("constraints", Some("insufficient-window".into())));
            footer.push(("missing", Some(m.join(" "))));
            false
        }
        ConstraintVerdict::MissingRow(n) => {
            footer.push(("constraints", Some("missing-row".into())));
            footer.push(("index", Some(n.to_string())));
            false
        }
    };
    let rank_deficient = coeffs.rank_deficient().count();
    let no_recurrence = coeffs.failures().count();
    footer.push(("rank_deficient_rows", Some(rank_deficient.to_string())));
    footer.push(("no_recurrence_rows", Some(no_recurrence.to_string())));
    match ctx.format {
        Format::Json => {
            let obj: serde_json::Map<String, Value> = footer
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone().map_or(Value::Null, Value::String)))
                .collect();
            writeln!(ctx.out, "{}", Value::Object(obj))?;
        }
        _ => {
            let parts: Vec<String> = footer
                .iter()
                .filter_map(|(k, v)| v.as_ref().map(|v| format!("{k}={v}")))
                .collect();
            writeln!(ctx.out, "# verdict: {}", parts.join("; "))?;
        }
    }
    if ctx.strict && (!clean || rank_deficient > 0 || no_recurrence > 0) {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn x_points(args: &TableArgs) -> Result<Vec<Rational>, Failure> {
    if let Some(text) = &args.x {
        return Ok(parse_rational_list(text)?);
    }
    let Some(range) = &args.x_range else {
        return Ok((0..=4).map(int).collect());
    };
    let (lo, hi) = range
        .split_once("..")
        .ok_or_else(|| Failure::Input(format!("--x-range {range:?} must look like 0..4")))?;
    let lo = parse_rational(lo)?;
    let hi = parse_rational(hi)?;
    let mut out = Vec::new();
    let mut x = lo;
    while x <= hi {
        out.push(x.clone());
        x += int(1);
    }
    Ok(out)
}

pub(super) fn table(ctx: &mut Context, args: &TableArgs) -> Outcome {
    let params = CharlierParams::parse(&args.a)?;
    let r = params.arity();
    let indices = match &args.n {
        Some(text) => parse_index_list(text)?,
        None => MultiIndex::simplex(r, ctx.max_degree_or(3)?),
    };
    for n in &indices {
        ctx.check_cap(n.total())?;
    }
    let xs = x_points(args)?;
    let polys = indices
        .iter()
        .map(|n| charlier_explicit(n, &params))
        .collect::<crate::error::Result<Vec<_>>>()?;
    let a_cells: Vec<String> = params.values().iter().map(ToString::to_string).collect();
    if ctx.format != Format::Json {
        let header: Vec<String> = (1..=r)
            .map(|i| format!("n{i}"))
            .chain((1..=r).map(|i| format!("a{i}")))
            .collect();
        writeln!(ctx.out, "{},x,value", header.join(","))?;
    }
    for (n, p) in indices.iter().zip(&polys) {
        for x in &xs {
            let value = p.eval(x);
            match ctx.format {
                Format::Json => writeln!(
                    ctx.out,
                    "{}",
                    json!({"n": n.components(), "a": a_cells, "x": x.to_string(), "value": value.to_string()})
                )?,
                _ => {
                    let idx: Vec<String> = n.components().iter().map(ToString::to_string).collect();
                    writeln!(
                        ctx.out,
                        "{},{},{x},{value}",
                        idx.join(","),
                        a_cells.join(",")
                    )?;
                }
            }
        }
    }
    Ok(())
}
