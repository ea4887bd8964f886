use std::collections::BTreeSet;
use std::fmt::Write;

use degenflag::bijections::{
    complete_dims, dellac_to_dumont, dellac_to_tuple, dumont_to_dellac, enumerate_dumont, enumerate_tuples,
    tuple_to_dellac,
};
use degenflag::dellac::enumerate_dellac;
use degenflag::flag::{cell_point_counts, count_points};
use degenflag::genocchi::{kreweras_triangle, normalized_h_sequence, poincare_polynomial, seidel_triangle};
use degenflag::pluecker::{classical_relation, degenerate_relation, verify_ideal_cutout};
use degenflag::{DellacConfig, Error, PrimeField};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::output::{join, Report};
use crate::{BijectionKind, RelationKindArg};

/// A command that could not produce a report; `code` is the exit status.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Internal(_)) { 1 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub type CmdResult = Result<Report, Failure>;

pub fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn triangle_table(rows: &[Vec<BigUint>]) -> Vec<Vec<String>> {
    rows.iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(k, v)| vec![(i + 1).to_string(), (k + 1).to_string(), v.to_string()])
        })
        .collect()
}

fn triangle_text(rows: &[Vec<BigUint>]) -> String {
    rows.iter().map(|r| join(r, " ")).collect::<Vec<_>>().join("\n")
}

pub fn numbers(max_n: usize) -> CmdResult {
    let hs = normalized_h_sequence(max_n)?;
    let result: Vec<Value> = hs
        .iter()
        .enumerate()
        .map(|(i, h)| json!({"n": i + 1, "h": h.to_string()}))
        .collect();
    let rows: Vec<Vec<String>> = hs
        .iter()
        .enumerate()
        .map(|(i, h)| vec![(i + 1).to_string(), h.to_string()])
        .collect();
    let text = rows.iter().map(|r| format!("h_{} = {}", r[0], r[1])).collect::<Vec<_>>().join("\n");
    Ok(Report::new("numbers", json!({"max_n": max_n}), Value::Array(result))
        .table(&["n", "h"], rows)
        .text(text))
}

pub fn seidel(rows: usize) -> CmdResult {
    let t = seidel_triangle(rows)?;
    let result = serde_json::to_value(&t).expect("triangle serializes");
    Ok(Report::new("seidel", json!({"rows": rows}), result)
        .table(&["row", "k", "value"], triangle_table(t.rows()))
        .text(triangle_text(t.rows())))
}

pub fn kreweras(rows: usize) -> CmdResult {
    let t = kreweras_triangle(rows)?;
    let result = serde_json::to_value(&t).expect("triangle serializes");
    Ok(Report::new("kreweras", json!({"rows": rows}), result)
        .table(&["row", "k", "value"], triangle_table(t.rows()))
        .text(triangle_text(t.rows())))
}

fn boxes_string(d: &DellacConfig) -> String {
    d.boxes().iter().map(|(c, r)| format!("{c}:{r}")).collect::<Vec<_>>().join(" ")
}

pub fn dellac_enum(n: usize) -> CmdResult {
    let all = enumerate_dellac(n)?;
    let configs: Vec<Value> = all
        .iter()
        .map(|d| {
            json!({
                "boxes": d.boxes().iter().map(|&(c, r)| [c, r]).collect::<Vec<_>>(),
                "length": d.length(),
                "refinement": d.refinement_stat(),
            })
        })
        .collect();
    let rows: Vec<Vec<String>> = all
        .iter()
        .enumerate()
        .map(|(i, d)| {
            vec![
                (i + 1).to_string(),
                boxes_string(d),
                d.length().to_string(),
                d.refinement_stat().to_string(),
            ]
        })
        .collect();
    let mut text = format!("{} Dellac configurations for n = {n}\n", all.len());
    for (i, d) in all.iter().enumerate() {
        let _ = write!(
            text,
            "\n#{} length {} refinement {}\n{}",
            i + 1,
            d.length(),
            d.refinement_stat(),
            d.to_grid_string()
        );
    }
    Ok(Report::new(
        "dellac enum",
        json!({"n": n}),
        json!({"n": n, "count": all.len(), "configurations": configs}),
    )
    .table(&["index", "boxes", "length", "refinement"], rows)
    .text(text))
}

pub fn poincare(n: usize) -> CmdResult {
    let poly = poincare_polynomial(n)?;
    let coeffs: Vec<String> = poly.coeffs().iter().map(ToString::to_string).collect();
    let rows = coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| vec![m.to_string(), c.clone()])
        .collect();
    Ok(Report::new("poincare", json!({"n": n}), json!({"n": n, "coeffs": coeffs}))
        .table(&["degree", "coeff"], rows)
        .text(format!("P_{n}(q) = {poly}")))
}

pub fn roundtrip(n: usize, kind: BijectionKind) -> CmdResult {
    let dellac: BTreeSet<DellacConfig> = enumerate_dellac(n)?.into_iter().collect();
    let mut pairs = Vec::new();
    let mut rows = Vec::new();
    let mut images = BTreeSet::new();
    let mut failures = Vec::new();
    let (kind_name, domain_size) = match kind {
        BijectionKind::Tuple => {
            let domain = enumerate_tuples(n, &complete_dims(n))?;
            for t in &domain {
                let d = tuple_to_dellac(t)?;
                let back = dellac_to_tuple(&d);
                if &back != t {
                    failures.push(format!("{t} -> {} -> {back}", boxes_string(&d)));
                }
                pairs.push(json!({"tuple": t, "dellac": d}));
                rows.push(vec![t.to_string(), boxes_string(&d)]);
                images.insert(d);
            }
            ("tuple", domain.len())
        }
        BijectionKind::Dumont => {
            let domain = enumerate_dumont(n)?;
            for p in &domain {
                let d = dumont_to_dellac(p)?;
                let back = dellac_to_dumont(&d);
                if &back != p {
                    failures.push(format!("{} -> {} -> {}", join(p.values(), ""), boxes_string(&d), join(back.values(), "")));
                }
                pairs.push(json!({"permutation": p, "dellac": d}));
                rows.push(vec![join(p.values(), " "), boxes_string(&d)]);
                images.insert(d);
            }
            ("dumont", domain.len())
        }
    };
    if images != dellac {
        failures.push("image of the domain is not DC_n".to_string());
    }
    let identity = failures.is_empty();
    let mut text = format!(
        "{kind_name} <-> Dellac, n = {n}: domain {domain_size}, DC_n {}, round trips {}\n",
        dellac.len(),
        if identity { "identity" } else { "FAILED" }
    );
    for f in &failures {
        let _ = writeln!(text, "  {f}");
    }
    let mut report = Report::new(
        "bijection roundtrip",
        json!({"n": n, "kind": kind_name}),
        json!({
            "kind": kind_name,
            "n": n,
            "domain_size": domain_size,
            "dellac_size": dellac.len(),
            "identity": identity,
            "failures": failures,
            "pairs": pairs,
        }),
    )
    .table(&[kind_name, "dellac"], rows)
    .text(text);
    report.success = identity;
    Ok(report)
}

fn field(p: u32) -> Result<PrimeField, Failure> {
    Ok(PrimeField::new(p)?)
}

pub fn flag_count(n: usize, p: u32, dims: Option<Vec<usize>>) -> CmdResult {
    let f = field(p)?;
    let complete = dims.is_none();
    let dims = dims.unwrap_or_else(|| complete_dims(n));
    let points = count_points(&dims, n, f)?;
    let expected = if complete {
        Some(poincare_polynomial(n)?.eval_u64(p as u64))
    } else {
        None
    };
    let mut text = format!("{points} points over F_{p} for n = {n}, dims ({})", join(&dims, ","));
    if let Some(e) = &expected {
        let _ = write!(text, "\nP_{n}({p}) = {e}");
    }
    Ok(Report::new(
        "flag count",
        json!({"n": n, "p": p, "dims": dims}),
        json!({
            "points": points.to_string(),
            "poincare_value": expected.as_ref().map(ToString::to_string),
        }),
    )
    .table(&["n", "p", "dims", "points"], vec![vec![n.to_string(), p.to_string(), join(&dims, " "), points.to_string()]])
    .text(text))
}

pub fn flag_cells(n: usize, p: u32, dims: Option<Vec<usize>>) -> CmdResult {
    let f = field(p)?;
    let dims = dims.unwrap_or_else(|| complete_dims(n));
    let cells = cell_point_counts(&dims, n, f)?;
    let total: BigUint = cells.iter().map(|c| &c.count).sum();
    let rows: Vec<Vec<String>> = cells
        .iter()
        .map(|c| {
            vec![
                c.tuple.to_string(),
                c.dellac_length.map(|l| l.to_string()).unwrap_or_default(),
                c.count.to_string(),
            ]
        })
        .collect();
    let mut text = format!("{} cells, {total} points over F_{p}\n", cells.len());
    for r in &rows {
        let len = if r[1].is_empty() { String::new() } else { format!("  length {}", r[1]) };
        let _ = writeln!(text, "{}{len}  count {}", r[0], r[2]);
    }
    Ok(Report::new(
        "flag cells",
        json!({"n": n, "p": p, "dims": dims}),
        json!({"cells": cells, "total": total.to_string()}),
    )
    .table(&["tuple", "dellac_length", "count"], rows)
    .text(text))
}

pub fn cutout(n: usize, p: u32, dims: &[usize]) -> CmdResult {
    let f = field(p)?;
    let r = verify_ideal_cutout(dims, n, f)?;
    let mut text = format!(
        "{} points scanned, {} relations\non the variety: {}\nrelations vanish: {}\n{}",
        r.points_scanned,
        r.relations,
        r.points_by_chain,
        r.points_by_relations,
        if r.equal { "PASS zero set equals the variety" } else { "FAIL zero set differs from the variety" }
    );
    for m in &r.mismatches {
        let _ = write!(text, "\n  mismatch: {}", m.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | "));
    }
    let mut report = Report::new(
        "pluecker cutout",
        json!({"n": n, "p": p, "dims": dims}),
        serde_json::to_value(&r).expect("report serializes"),
    )
    .table(
        &["points_scanned", "relations", "points_by_chain", "points_by_relations", "equal"],
        vec![vec![
            r.points_scanned.to_string(),
            r.relations.to_string(),
            r.points_by_chain.to_string(),
            r.points_by_relations.to_string(),
            r.equal.to_string(),
        ]],
    )
    .text(text);
    report.success = r.equal;
    Ok(report)
}

pub fn relation(l: &[usize], j: &[usize], k: usize, kind: RelationKindArg) -> CmdResult {
    let rel = match kind {
        RelationKindArg::Classical => classical_relation(l, j, k)?,
        RelationKindArg::Degenerate => degenerate_relation(l, j, k)?,
    };
    let rows = rel
        .terms
        .iter()
        .map(|t| vec![t.sign.to_string(), join(&t.l, " "), join(&t.j, " ")])
        .collect();
    Ok(Report::new(
        "pluecker relation",
        json!({"L": l, "J": j, "k": k, "kind": rel.kind}),
        serde_json::to_value(&rel).expect("relation serializes"),
    )
    .table(&["sign", "L", "J"], rows)
    .text(rel.to_string()))
}
