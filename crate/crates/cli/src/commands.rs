use std::fs;
use std::io::Write;

use apaver_core::oracle::{
    verify_fixed_test, verify_partition, verify_retractions, verify_springer, verify_uniqueness, VerificationReport,
};
use apaver_core::paving::triangle_vertices;
use apaver_core::springer::working_precision;
use apaver_core::{
    cell, classify, filtration_order, fixed_cell_dimension, make_gamma, poincare, region_of, triangle_index, Budget,
    Strategy,
};
use serde::Serialize;

use crate::config::{Cli, CliError, Command, Format, Params};
use crate::figure;

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let p = &cli.params;
    let (bytes, outcome) = match cli.command {
        Command::Classify => (classify_table(p)?, Ok(())),
        Command::Cells => (cells_table(p)?, Ok(())),
        Command::Dims => (dims_table(p)?, Ok(())),
        Command::Poincare => (poincare_table(p)?, Ok(())),
        Command::Order => (order_table(p)?, Ok(())),
        Command::Verify => verify(p)?,
        Command::Figure { kind } => {
            p.format(Format::Svg, &[Format::Svg])?;
            (figure::render(kind, p.big_n()?, p.level()?).into_bytes(), Ok(()))
        }
    };
    match &p.out {
        Some(path) => fs::write(path, &bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    outcome
}

fn emit<R: Serialize>(rows: &[R], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(rows).expect("rows serialize");
            out.push(b'\n');
            Ok(out)
        }
        _ => {
            let mut w = csv::Writer::from_writer(vec![]);
            for r in rows {
                w.serialize(r).map_err(|e| CliError::Io(e.into()))?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
    }
}

#[derive(Serialize)]
struct TypeRow {
    s: i32,
    t: i32,
    triangle: i32,
    #[serde(rename = "type")]
    ty: String,
    region: String,
}

fn classify_table(p: &Params) -> Result<Vec<u8>, CliError> {
    let format = p.format(Format::Csv, &[Format::Csv, Format::Json])?;
    let a = p.level()?;
    let rows: Vec<TypeRow> = triangle_vertices(p.big_n()?)
        .into_iter()
        .map(|v| TypeRow {
            s: v.s,
            t: v.t,
            triangle: triangle_index(v),
            ty: classify(v, a).to_string(),
            region: region_of(v).to_string(),
        })
        .collect();
    emit(&rows, format)
}

#[derive(Serialize)]
struct CellRow {
    s: i32,
    t: i32,
    region: String,
    a: i32,
    dimension: usize,
    i: String,
    j: String,
    k: String,
    x: String,
    y: String,
    z: String,
}

fn cells_table(p: &Params) -> Result<Vec<u8>, CliError> {
    let format = p.format(Format::Json, &[Format::Csv, Format::Json])?;
    let a = p.level()?;
    let cells = triangle_vertices(p.big_n()?)
        .into_iter()
        .map(|v| cell(v, a))
        .collect::<Result<Vec<_>, _>>()?;
    if format == Format::Json {
        return emit(&cells, format);
    }
    let rows: Vec<CellRow> = cells
        .iter()
        .map(|c| {
            let w: Vec<String> = c
                .windows
                .iter()
                .map(|w| if w.is_empty() { String::new() } else { format!("{}:{}", w.lo, w.hi) })
                .collect();
            CellRow {
                s: c.vertex.s,
                t: c.vertex.t,
                region: c.region.to_string(),
                a: c.a,
                dimension: c.dimension,
                i: w[0].clone(),
                j: w[1].clone(),
                k: w[2].clone(),
                x: w[3].clone(),
                y: w[4].clone(),
                z: w[5].clone(),
            }
        })
        .collect();
    emit(&rows, format)
}

#[derive(Serialize)]
struct DimRow {
    rank: usize,
    s: i32,
    t: i32,
    region: String,
    dim: usize,
}

fn dims_table(p: &Params) -> Result<Vec<u8>, CliError> {
    let format = p.format(Format::Csv, &[Format::Csv, Format::Json])?;
    let inv = p.required_invariants()?;
    let a = p.level()?;
    let rows: Vec<DimRow> = filtration_order(p.big_n()?, a)
        .into_iter()
        .map(|e| DimRow {
                rank: e.rank + 1,
                s: e.vertex.s,
                t: e.vertex.t,
                region: region_of(e.vertex).to_string(),
                dim: fixed_cell_dimension(e.vertex, inv),
        })
        .collect();
    emit(&rows, format)
}

#[derive(Serialize)]
struct PoincareRow {
    dim: usize,
    cells: u64,
}

fn poincare_table(p: &Params) -> Result<Vec<u8>, CliError> {
    let format = p.format(Format::Json, &[Format::Csv, Format::Json])?;
    let inv = p.required_invariants()?;
    p.level()?;
    let poly = poincare(p.big_n()?, inv);
    if format == Format::Json {
        let mut out = serde_json::to_vec(&poly).expect("poincare serializes");
        out.push(b'\n');
        return Ok(out);
    }
    let rows: Vec<PoincareRow> = poly
        .coeffs
        .iter()
        .enumerate()
        .map(|(dim, &cells)| PoincareRow { dim, cells })
        .collect();
    emit(&rows, format)
}

#[derive(Serialize)]
struct OrderRow {
    rank: usize,
    s: i32,
    t: i32,
    triangle: i32,
    stage: String,
    sort_key: usize,
}

fn order_table(p: &Params) -> Result<Vec<u8>, CliError> {
    let format = p.format(Format::Csv, &[Format::Csv, Format::Json])?;
    let rows: Vec<OrderRow> = filtration_order(p.big_n()?, p.level()?)
        .into_iter()
        .map(|e| OrderRow {
            rank: e.rank + 1,
            s: e.vertex.s,
            t: e.vertex.t,
            triangle: e.triangle,
            stage: e.stage.to_string(),
            sort_key: e.sort_key,
        })
        .collect();
    emit(&rows, format)
}

#[derive(Serialize)]
struct VerifyOutput {
    passed: bool,
    reports: Vec<VerificationReport>,
}

/// Runs every verifier over `Δ_N`; the artifact is written even when a check
/// fails.
fn verify(p: &Params) -> Result<(Vec<u8>, Result<(), CliError>), CliError> {
    p.format(Format::Json, &[Format::Json])?;
    let inv = p.required_invariants()?;
    let (big_n, a, field) = (p.big_n()?, p.level()?, p.field()?);
    let prec = p.prec.unwrap_or_else(|| working_precision(big_n, inv));
    let budget = Budget::from_env();
    let g = make_gamma(inv.m, inv.n, field, prec)?;
    let mut reports = vec![
        verify_springer(big_n, inv.m, inv.n, field, prec, Strategy::default(), budget)?,
        verify_fixed_test(big_n, &g, budget)?,
    ];
    let mut uniqueness = VerificationReport::new(format!("orbit uniqueness on Δ_{big_n}, a={a}, q={}", field.size()));
    for v in triangle_vertices(big_n) {
        uniqueness = uniqueness.merge(verify_uniqueness(v, a, field, budget)?);
    }
    reports.push(uniqueness);
    reports.push(verify_partition(big_n, a, field, budget)?);
    reports.push(verify_retractions(big_n, a, field, budget)?);
    let passed = reports.iter().all(VerificationReport::passed);
    let summary: String = reports.iter().map(|r| r.to_string()).collect();
    let mut out = serde_json::to_vec_pretty(&VerifyOutput { passed, reports }).expect("reports serialize");
    out.push(b'\n');
    let outcome = if passed { Ok(()) } else { Err(CliError::Failed(summary)) };
    Ok((out, outcome))
}
