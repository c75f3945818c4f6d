//! Deterministic report tables for the command line front end: basis,
//! mark matrix, species table, idempotent expansions, and conductor rows,
//! rendered as JSON, TSV, or plain text.
//!
//! Cyclotomic entries serialize as {"m": .., "coords": \["p/q", ..\]} in
//! JSON and as comma-joined coordinate strings in TSV and text.

use crate::cyclotomic::CycNum;
use crate::fibered::FiberedRing;
use crate::verify::SuiteReport;
use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub enum Cell {
    UInt(u64),
    Int(i64),
    Bool(bool),
    Text(String),
    Ints(Vec<i64>),
    Cyc(CycNum),
    Cycs(Vec<CycNum>),
    CycMap(Vec<(u32, CycNum)>),
}

pub fn cyc_to_json(c: &CycNum) -> Value {
    json!({
        "m": c.m(),
        "coords": c.coords().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    })
}

pub fn cyc_to_string(c: &CycNum) -> String {
    c.coords()
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::UInt(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(v) => json!(v),
            Cell::Ints(v) => json!(v),
            Cell::Cyc(c) => cyc_to_json(c),
            Cell::Cycs(cs) => Value::Array(cs.iter().map(cyc_to_json).collect()),
            Cell::CycMap(m) => Value::Object(
                m.iter()
                    .map(|(k, c)| (k.to_string(), cyc_to_json(c)))
                    .collect(),
            ),
        }
    }

    fn to_flat(&self) -> String {
        match self {
            Cell::UInt(v) => v.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Ints(v) => v
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            Cell::Cyc(c) => cyc_to_string(c),
            Cell::Cycs(cs) => cs
                .iter()
                .map(cyc_to_string)
                .collect::<Vec<_>>()
                .join(" | "),
            Cell::CycMap(m) => m
                .iter()
                .map(|(k, c)| format!("{k}:{}", cyc_to_string(c)))
                .collect::<Vec<_>>()
                .join("; "),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub group: String,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "group": self.group,
            "tables": self.tables.iter().map(|t| json!({
                "title": t.title,
                "rows": t.rows.iter().map(|row| {
                    Value::Object(
                        t.columns.iter().zip(row).map(|(c, cell)| (c.clone(), cell.to_json())).collect()
                    )
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            out.push_str(&format!("# {}\n", t.title));
            out.push_str(&t.columns.join("\t"));
            out.push('\n');
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(Cell::to_flat).collect();
                out.push_str(&cells.join("\t"));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} for {}\n", self.command, self.group);
        for t in &self.tables {
            out.push_str(&format!("\n== {} ==\n", t.title));
            let mut widths: Vec<usize> = t.columns.iter().map(String::len).collect();
            let rendered: Vec<Vec<String>> = t
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .map(|(i, c)| {
                            let s = c.to_flat();
                            if i < widths.len() {
                                widths[i] = widths[i].max(s.len().min(40));
                            }
                            s
                        })
                        .collect()
                })
                .collect();
            for (i, c) in t.columns.iter().enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{:w$}", c, w = widths[i]));
            }
            out.push('\n');
            for row in rendered {
                for (i, cell) in row.iter().enumerate() {
                    if i > 0 {
                        out.push_str("  ");
                    }
                    out.push_str(&format!("{:w$}", cell, w = widths[i]));
                }
                out.push('\n');
            }
        }
        out
    }
}

fn pair_cells(ring: &FiberedRing, index: u32) -> (Vec<i64>, Vec<i64>) {
    let pair = ring.basis_pair(index);
    let sub = ring.lattice().subgroup(pair.sub);
    let pos = ring.pos_of_sub(pair.sub);
    let values = ring.hom_values(pos, pair.hom);
    (
        sub.elems().iter().map(|&x| x as i64).collect(),
        values.iter().map(|&v| v as i64).collect(),
    )
}

/// One row per standard basis orbit: subgroup elements, hom exponents and
/// the stabilizer order.
pub fn basis_table(ring: &FiberedRing) -> Table {
    let rows = ring
        .basis_pairs()
        .into_iter()
        .enumerate()
        .map(|(i, (_, stab_order))| {
            let (h, phi) = pair_cells(ring, i as u32);
            vec![
                Cell::UInt(i as u64),
                Cell::Ints(h),
                Cell::Ints(phi),
                Cell::UInt(stab_order as u64),
            ]
        })
        .collect();
    Table {
        title: format!("basis n={}", ring.fiber_order()),
        columns: vec!["index".into(), "H".into(), "phi".into(), "stabilizer_order".into()],
        rows,
    }
}

/// The full mark matrix: one row per basis element, columns indexed by the
/// ghost coordinates (the same canonical pairs).
pub fn marks_table(ring: &FiberedRing) -> Table {
    let matrix = ring.mark_matrix();
    let rows = (0..ring.rank())
        .map(|j| {
            let (h, phi) = pair_cells(ring, j as u32);
            let marks: Vec<i64> = (0..ring.rank()).map(|row| matrix[row][j] as i64).collect();
            vec![
                Cell::UInt(j as u64),
                Cell::Ints(h),
                Cell::Ints(phi),
                Cell::Ints(marks),
            ]
        })
        .collect();
    Table {
        title: format!("marks n={}", ring.fiber_order()),
        columns: vec!["index".into(), "H".into(), "phi".into(), "marks".into()],
        rows,
    }
}

/// Species values: one row per point, one cyclotomic entry per basis
/// element.
pub fn species_table(ring: &FiberedRing) -> Table {
    let table = ring.species_table();
    let rows = (0..ring.points().len())
        .map(|p| {
            let point = ring.point(p);
            vec![
                Cell::UInt(p as u64),
                Cell::Ints(
                    ring.lattice()
                        .subgroup(point.sub)
                        .elems()
                        .iter()
                        .map(|&x| x as i64)
                        .collect(),
                ),
                Cell::UInt(point.h as u64),
                Cell::Cycs(table[p].clone()),
            ]
        })
        .collect();
    Table {
        title: format!("species n={}", ring.fiber_order()),
        columns: vec!["point".into(), "H".into(), "h".into(), "values".into()],
        rows,
    }
}

/// Idempotent expansions in the standard basis, sparse.
pub fn idempotents_table(ring: &FiberedRing) -> Table {
    let rows = (0..ring.points().len())
        .map(|p| {
            let point = ring.point(p);
            let e = ring.idempotent(p);
            let coeffs: Vec<(u32, CycNum)> =
                e.coeffs().iter().map(|(&i, c)| (i, c.clone())).collect();
            vec![
                Cell::UInt(p as u64),
                Cell::Ints(
                    ring.lattice()
                        .subgroup(point.sub)
                        .elems()
                        .iter()
                        .map(|&x| x as i64)
                        .collect(),
                ),
                Cell::UInt(point.h as u64),
                Cell::CycMap(coeffs),
            ]
        })
        .collect();
    Table {
        title: format!("idempotents n={}", ring.fiber_order()),
        columns: vec!["point".into(), "H".into(), "h".into(), "coeffs".into()],
        rows,
    }
}

/// Conductor rows with the divisor bounds and the main-theorem match flag.
pub fn conductors_table(ring: &FiberedRing) -> Table {
    let rows = ring
        .conductors()
        .into_iter()
        .map(|rep| {
            vec![
                Cell::UInt(rep.point as u64),
                Cell::Ints(rep.subgroup.iter().map(|&x| x as i64).collect()),
                Cell::UInt(rep.h as u64),
                Cell::UInt(rep.stab_order),
                Cell::UInt(rep.c),
                Cell::UInt(rep.rhs),
                Cell::UInt(rep.r),
                Cell::UInt(rep.u),
                Cell::Bool(rep.coprime_case),
                Cell::Bool(rep.matches()),
            ]
        })
        .collect();
    Table {
        title: format!("conductors n={}", ring.fiber_order()),
        columns: vec![
            "point".into(),
            "H".into(),
            "h".into(),
            "stab_order".into(),
            "c".into(),
            "rhs".into(),
            "r".into(),
            "u".into(),
            "coprime_case".into(),
            "match".into(),
        ],
        rows,
    }
}

/// Renders a verify suite as a report table.
pub fn verify_table(report: &SuiteReport) -> Table {
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![
                Cell::Text(c.name.clone()),
                Cell::Text(if c.pass { "pass" } else { "FAIL" }.into()),
                Cell::Text(c.detail.clone().unwrap_or_default()),
            ]
        })
        .collect();
    Table {
        title: format!("verify {}", report.suite),
        columns: vec!["check".into(), "status".into(), "detail".into()],
        rows,
    }
}
