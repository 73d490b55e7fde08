//! CSV and JSON writers. Numbers are printed with `{:.16e}` so files are
//! locale-independent and round-trip to the same `f64`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use trigfrac_core::prelude::{ErrorReport, ScanReport};

use crate::Format;

#[derive(Debug, Clone, Serialize)]
pub struct Profile {
    pub t: f64,
    pub x: Vec<f64>,
    pub numeric: Vec<f64>,
    pub exact: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveOutput {
    pub problem: String,
    pub gamma: f64,
    pub alpha: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub profiles: Vec<Profile>,
    pub errors: Vec<ErrorReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergeRow {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "L2")]
    pub l2: f64,
    #[serde(rename = "Linf")]
    pub linf: f64,
    pub order_l2: Option<f64>,
    pub order_linf: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergeBlock {
    pub gamma: f64,
    pub rows: Vec<ConvergeRow>,
}

#[derive(Serialize)]
struct StabilityPointOut {
    gamma: f64,
    h: f64,
    dt: f64,
    alpha: f64,
    beta: f64,
    nu: f64,
    max_abs_xi: f64,
    bound_ok: bool,
    violation: bool,
    wave_corner: bool,
}

#[derive(Serialize)]
struct StabilityOut {
    start_rule: trigfrac_core::prelude::StartRule,
    n_max: usize,
    points: usize,
    violations: usize,
    fractional_violations: usize,
    results: Vec<StabilityPointOut>,
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn json<T: Serialize>(value: &T, path: Option<&Path>) -> io::Result<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()
}

fn errors_csv(errors: &[ErrorReport], w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "t,N,M,L2,Linf")?;
    for e in errors {
        writeln!(w, "{},{},{},{},{}", num(e.time), e.n, e.m, num(e.l2), num(e.linf))?;
    }
    Ok(())
}

/// Profiles as `t,x,numeric,exact,abs_error`; `exact` and `abs_error` are
/// empty when no exact solution is known. In CSV mode the error reports go
/// to `<out stem>.errors.csv`, or to stderr when writing to stdout.
pub fn write_solve(out: &SolveOutput, format: Format, path: Option<&Path>) -> io::Result<()> {
    if format == Format::Json {
        return json(out, path);
    }
    let mut w = sink(path)?;
    writeln!(w, "t,x,numeric,exact,abs_error")?;
    for p in &out.profiles {
        for (j, (&x, &u)) in p.x.iter().zip(&p.numeric).enumerate() {
            let exact = p.exact.as_ref().map(|e| e[j]);
            let err = exact.map(|e| (e - u).abs());
            writeln!(w, "{},{},{},{},{}", num(p.t), num(x), num(u), opt(exact), opt(err))?;
        }
    }
    w.flush()?;
    if out.errors.is_empty() {
        return Ok(());
    }
    match path {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p.with_extension("errors.csv"))?);
            errors_csv(&out.errors, &mut f)?;
            f.flush()
        }
        None => errors_csv(&out.errors, &mut io::stderr().lock()),
    }
}

/// `gamma,N,M,L2,Linf,order_l2,order_linf`, one block of rows per order;
/// the order columns are empty on the first row of each block.
pub fn write_converge(blocks: &[ConvergeBlock], format: Format, path: Option<&Path>) -> io::Result<()> {
    if format == Format::Json {
        return json(&blocks, path);
    }
    let mut w = sink(path)?;
    writeln!(w, "gamma,N,M,L2,Linf,order_l2,order_linf")?;
    for b in blocks {
        for r in &b.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                num(b.gamma),
                r.n,
                r.m,
                num(r.l2),
                num(r.linf),
                opt(r.order_l2),
                opt(r.order_linf)
            )?;
        }
    }
    w.flush()
}

pub fn write_stability(report: &ScanReport, format: Format, path: Option<&Path>) -> io::Result<()> {
    let results: Vec<StabilityPointOut> = report
        .points
        .iter()
        .map(|p| StabilityPointOut {
            gamma: p.params.gamma,
            h: p.params.h,
            dt: p.params.dt,
            alpha: p.params.alpha,
            beta: p.params.beta,
            nu: p.nu,
            max_abs_xi: p.max_abs_xi,
            bound_ok: p.bound_ok,
            violation: p.is_violation(),
            wave_corner: p.is_wave_corner(),
        })
        .collect();
    if format == Format::Json {
        let out = StabilityOut {
            start_rule: report.start_rule,
            n_max: report.n_max,
            points: results.len(),
            violations: report.violations().count(),
            fractional_violations: report.fractional_violations().count(),
            results,
        };
        return json(&out, path);
    }
    let mut w = sink(path)?;
    writeln!(w, "gamma,h,dt,alpha,beta,nu,max_abs_xi,bound_ok,violation,wave_corner")?;
    for r in &results {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            num(r.gamma),
            num(r.h),
            num(r.dt),
            num(r.alpha),
            num(r.beta),
            num(r.nu),
            num(r.max_abs_xi),
            r.bound_ok,
            r.violation,
            r.wave_corner
        )?;
    }
    w.flush()
}
