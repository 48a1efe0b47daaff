use std::env;

use rayon::prelude::*;
use serde::Serialize;

use uniratio::families::{
    family_pair, family_spec, h_family_spec, hbounds as h_bounds, salem_power_coeffs,
    specialize_bivariate, t_family_closed_forms, t_family_spec, FamilyParams,
};
use uniratio::oracle::{
    c_ratio, c_ratio_polynomial, convergence_row, erdos_turan_bound_polynomial,
    erdos_turan_constant,
};
use uniratio::solver::{
    limit_ratio_exact, limit_ratio_pair, limit_ratio_riemann, mahler_limit, CurvePair,
    LimitRatioResult,
};
use uniratio::{Error, FamilySpec};

use crate::args::{Format, HboundsArgs, LimitRatioArgs, MethodArg, OutputArgs, SalemArgs, VerifyArgs};
use crate::input::{self, Input};
use crate::output::{emit, real, Table};
use crate::table2::rows as table_rows;
use crate::Failure;

/// Expected limit of the H family's limit ratio, checked at `H_LIMIT_M`.
const H_LIMIT: f64 = 0.209;
const H_LIMIT_M: u32 = 200;

/// Maps `f` over `items` in order, in parallel unless `UNIRATIO_THREADS=0`.
fn par_map<T, R, F>(items: Vec<T>, f: F) -> Result<Vec<R>, Failure>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    let threads = match env::var("UNIRATIO_THREADS") {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| Failure::input(format!("UNIRATIO_THREADS must be an integer, got {v:?}")))?,
        ),
        Err(_) => None,
    };
    match threads {
        Some(0) => Ok(items.into_iter().map(f).collect()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::input(format!("thread pool: {e}")))?;
            Ok(pool.install(|| items.into_par_iter().map(f).collect()))
        }
        None => Ok(items.into_par_iter().map(f).collect()),
    }
}

fn write_table(table: &Table, out: &OutputArgs, default: Format) -> Result<(), Failure> {
    let text = match out.format.unwrap_or(default) {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json(),
    };
    emit(&text, out.out.as_deref())
}

fn pair_of(input: &Input) -> Result<CurvePair, Failure> {
    Ok(match input {
        Input::Spec(spec) => CurvePair::from_spec(spec)?,
        Input::Family(params) => family_pair(params)?,
    })
}

#[derive(Serialize)]
struct LimitRatioReport {
    lc: f64,
    intervals: Vec<[f64; 2]>,
    crossings: Vec<f64>,
    method: &'static str,
    mahler: Option<f64>,
}

pub fn limit_ratio(args: &LimitRatioArgs) -> Result<u8, Failure> {
    let input = input::read(&args.input)?;
    let pair = pair_of(&input)?;
    let exact: LimitRatioResult = limit_ratio_pair(&pair).map_err(|e| {
        let mut f = Failure::from(e);
        if f.code == 2 {
            f.message.push_str("; no limit ratio exists, use `verify` for the finite oracle");
        }
        f
    })?;
    let report = match args.method {
        MethodArg::Exact => {
            let mahler = match mahler_limit(&pair) {
                Ok(m) => Some(m),
                Err(e) => {
                    eprintln!("warning: no limit Mahler measure: {e}");
                    None
                }
            };
            LimitRatioReport {
                lc: exact.lc,
                intervals: exact.above_set.intervals().iter().map(|&(a, b)| [a, b]).collect(),
                crossings: exact.crossings.clone(),
                method: "exact",
                mahler,
            }
        }
        MethodArg::Riemann => LimitRatioReport {
            lc: limit_ratio_riemann(&pair, args.points),
            intervals: Vec::new(),
            crossings: Vec::new(),
            method: "riemann",
            mahler: None,
        },
    };
    let text = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Csv => {
            let mut t = Table::new(vec!["lc", "method", "mahler", "intervals", "crossings"]);
            if args.method == MethodArg::Riemann {
                t.meta("points", args.points.to_string());
            }
            t.rows.push(vec![
                real(report.lc),
                report.method.to_string(),
                report.mahler.map(real).unwrap_or_default(),
                report.intervals.len().to_string(),
                report.crossings.len().to_string(),
            ]);
            t.to_csv()?
        }
    };
    emit(&text, args.output.out.as_deref())?;
    Ok(0)
}

enum VerifyTarget {
    Spec(FamilySpec),
    Bivariate(FamilyParams),
}

pub fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    if args.n_list.is_empty() {
        return Err(Failure::input("--n-list must not be empty"));
    }
    let target = match input::read(&args.input)? {
        Input::Spec(s) => VerifyTarget::Spec(s),
        Input::Family(p) => match family_spec(&p)? {
            Some(s) => VerifyTarget::Spec(s),
            None => VerifyTarget::Bivariate(p),
        },
    };
    let mut table = Table::new(vec!["n", "degree", "C", "abs_err", "et_bound"]);
    let mut code = 0;
    let mut flag = |table: &mut Table, n: u64, what: String| {
        table.meta("flagged", format!("n = {n}: {what}"));
        code = 3;
    };
    match target {
        VerifyTarget::Spec(spec) if !spec.is_palindromic() => {
            table.meta("mode", "oracle-only");
            table.meta("lc", "0");
            table.meta("exact_path", "not applicable to a non-palindromic spec; lc reported as 0");
            let results = par_map(args.n_list.clone(), |n| (n, c_ratio(&spec, n)))?;
            for (n, res) in results {
                match res {
                    Ok(c) => table.rows.push(vec![
                        n.to_string(),
                        spec.degree(n).to_string(),
                        real(c),
                        String::new(),
                        String::new(),
                    ]),
                    Err(e) => return Err(Failure::from(e)),
                }
            }
        }
        VerifyTarget::Spec(spec) => {
            let exact = limit_ratio_exact(&spec)?;
            let r = exact.interval_count();
            table.meta("mode", "spec");
            table.meta("lc", real(exact.lc));
            table.meta("r", r.to_string());
            table.meta("D", real(erdos_turan_constant(&spec)));
            let results = par_map(args.n_list.clone(), |n| (n, convergence_row(&spec, n, exact.lc, r)))?;
            for (n, res) in results {
                match res {
                    Ok(row) => {
                        if !row.within_bound() {
                            flag(&mut table, n, "abs_err exceeds et_bound".into());
                        }
                        table.rows.push(vec![
                            n.to_string(),
                            row.degree.to_string(),
                            real(row.c),
                            real(row.abs_err),
                            real(row.et_bound),
                        ]);
                    }
                    Err(e) if crate::exit_code(&e) == 3 => {
                        flag(&mut table, n, e.to_string());
                        table.rows.push(vec![n.to_string(), spec.degree(n).to_string(), String::new(), String::new(), String::new()]);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        VerifyTarget::Bivariate(params) => {
            let exact = limit_ratio_pair(&family_pair(&params)?)?;
            let r = exact.interval_count();
            table.meta("mode", format!("bivariate {} at y = x^N", params.label()));
            table.meta("lc", real(exact.lc));
            table.meta("r", r.to_string());
            let results = par_map(args.n_list.clone(), |n| {
                let row = u32::try_from(n)
                    .map_err(|_| Error::Overflow)
                    .and_then(|big_n| specialize_bivariate(&params, big_n))
                    .and_then(|p| Ok((p.degree(), c_ratio_polynomial(&p)?, erdos_turan_bound_polynomial(&p, r))));
                (n, row)
            })?;
            for (n, res) in results {
                match res {
                    Ok((degree, c, bound)) => {
                        let err = (c - exact.lc).abs();
                        if err > bound {
                            flag(&mut table, n, "abs_err exceeds et_bound".into());
                        }
                        table.rows.push(vec![n.to_string(), degree.to_string(), real(c), real(err), real(bound)]);
                    }
                    Err(e) if crate::exit_code(&e) == 3 => {
                        flag(&mut table, n, e.to_string());
                        table.rows.push(vec![n.to_string(), String::new(), String::new(), String::new(), String::new()]);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    write_table(&table, &args.output, Format::Csv)?;
    Ok(code)
}

pub fn table2(out: &OutputArgs) -> Result<u8, Failure> {
    let rows = table_rows()?;
    let computed = par_map(rows.clone(), |row| {
        row.params.map(|p| -> Result<(f64, f64), Error> {
            let pair = family_pair(&p)?;
            Ok((limit_ratio_pair(&pair)?.lc, mahler_limit(&pair)?))
        })
    })?;
    let mut table = Table::new(vec![
        "row",
        "label",
        "paper_measure",
        "computed_measure",
        "paper_lc",
        "computed_lc",
        "lc_abs_err",
        "measure_abs_err",
        "status",
    ]);
    table.meta("source", "transcribed table of limit points (crates/cli/data/table2.csv)");
    let mut code = 0;
    let (mut worst_lc, mut worst_m) = (0f64, 0f64);
    for (row, result) in rows.iter().zip(computed) {
        let mut cells = vec![row.row.clone(), row.label.clone(), row.measure.clone()];
        match result {
            None => {
                cells.extend([String::new(), row.lc.clone(), String::new(), String::new(), String::new()]);
                cells.push("skipped".into());
            }
            Some(Ok((lc, m))) => {
                let printed_lc: f64 = row.lc.parse().expect("checked on load");
                let printed_m: f64 = row.measure.parse().expect("checked on load");
                let (e_lc, e_m) = ((lc - printed_lc).abs(), (m - printed_m).abs());
                worst_lc = worst_lc.max(e_lc);
                worst_m = worst_m.max(e_m);
                cells.extend([real(m), row.lc.clone(), real(lc), real(e_lc), real(e_m), "ok".into()]);
            }
            Some(Err(e)) => {
                code = code.max(crate::exit_code(&e));
                cells.extend([String::new(), row.lc.clone(), String::new(), String::new(), String::new()]);
                cells.push(format!("error: {e}"));
            }
        }
        table.rows.push(cells);
    }
    table.meta("max_lc_abs_err", real(worst_lc));
    table.meta("max_measure_abs_err", real(worst_m));
    write_table(&table, out, Format::Csv)?;
    Ok(code)
}

/// Distance from `w` to the nearest `cos t` over the crossings, if `w` is
/// a cosine at all.
fn closed_form_residual(w: f64, crossings: &[f64]) -> Option<f64> {
    (w.abs() <= 1.0).then(|| {
        crossings.iter().map(|&t| (t.cos() - w).abs()).fold(f64::INFINITY, f64::min)
    })
}

pub fn salem(args: &SalemArgs) -> Result<u8, Failure> {
    let ms = args.range.values((1, 12));
    if ms.contains(&0) {
        return Err(Failure::input("m must be at least 1"));
    }
    let results = par_map(ms.clone(), |m| -> Result<_, Error> {
        let (b1, b2) = salem_power_coeffs(m)?;
        let res = limit_ratio_exact(&t_family_spec(m)?)?;
        let (ca, cb) = t_family_closed_forms(m)?;
        Ok((m, b1, b2, res.lc, ca, cb, closed_form_residual(ca, &res.crossings), closed_form_residual(cb, &res.crossings)))
    })?;
    let mut table = Table::new(vec![
        "m", "b1", "b2", "lc", "cos_alpha", "cos_beta", "alpha_residual", "beta_residual",
    ]);
    let mut lcs = Vec::new();
    for r in results {
        let (m, b1, b2, lc, ca, cb, ra, rb) = r.map_err(|e| match e {
            Error::Integrality { .. } => Failure::numeric(e.to_string()),
            other => other.into(),
        })?;
        lcs.push(lc);
        table.rows.push(vec![
            m.to_string(),
            b1.to_string(),
            b2.to_string(),
            real(lc),
            real(ca),
            real(cb),
            ra.map(real).unwrap_or_default(),
            rb.map(real).unwrap_or_default(),
        ]);
    }
    let decreasing = lcs.windows(2).all(|w| w[1] < w[0]);
    table.meta("lc_strictly_decreasing", decreasing.to_string());
    write_table(&table, &args.output, Format::Csv)?;
    Ok(0)
}

pub fn hbounds(args: &HboundsArgs) -> Result<u8, Failure> {
    let mut ms = args.range.values((2, 50));
    if ms.iter().any(|&m| m < 2) {
        return Err(Failure::input("m must be at least 2"));
    }
    if !ms.contains(&H_LIMIT_M) {
        ms.push(H_LIMIT_M);
    }
    let results = par_map(ms, |m| -> Result<_, Error> {
        let lc = limit_ratio_exact(&h_family_spec(m)?)?.lc;
        let (lo, hi) = h_bounds(m);
        Ok((m, lo, hi, lc))
    })?;
    let mut table = Table::new(vec!["m", "lower", "upper", "lc", "inside_bounds"]);
    for r in results {
        let (m, lo, hi, lc) = r?;
        if m == H_LIMIT_M {
            table.meta("limit_check", format!("|lc(H_{m}) - {H_LIMIT}| = {}", real((lc - H_LIMIT).abs())));
        }
        table.rows.push(vec![m.to_string(), real(lo), real(hi), real(lc), (lo < lc && lc < hi).to_string()]);
    }
    write_table(&table, &args.output, Format::Csv)?;
    Ok(0)
}
