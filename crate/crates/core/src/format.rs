//! Line-oriented text formats for carriers and fuzzy sets.
//!
//! ```text
//! hemiring example21
//! order 4
//! add:
//! 0 1 2 3
//! ...
//! mul:
//! ...
//! ```
//!
//! ```text
//! fuzzy mu over zmod(4)
//! 0 1
//! 1 1/2
//! ...
//! ```
//!
//! A fuzzy file may instead hold one `rule ...` line for sets on N0.
//! Lines starting with `#` are comments.

use std::fmt::Write as _;

use thiserror::Error;

use crate::carrier::{CarrierError, FiniteHemiring, Hemiring};
use crate::fuzzy::{FuzzyError, FuzzySet, GradeRule};
use crate::grade::Grade;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error(transparent)]
    Carrier(#[from] CarrierError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn write_carrier(h: &FiniteHemiring) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "hemiring {}", h.name());
    let _ = writeln!(out, "order {}", h.order());
    for (label, rows) in [("add:", h.add_rows()), ("mul:", h.mul_rows())] {
        let _ = writeln!(out, "{label}");
        for row in rows {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
    }
    out
}

pub fn parse_carrier(text: &str) -> Result<FiniteHemiring, FormatError> {
    let mut lines = content_lines(text);
    let mut next = |what: &str| lines.next().ok_or_else(|| FormatError::Eof(format!("expected {what}")));

    let (ln, l) = next("`hemiring <name>`")?;
    let name = l
        .strip_prefix("hemiring")
        .map(str::trim)
        .filter(|n| !n.is_empty())
        .ok_or_else(|| syntax(ln, "expected `hemiring <name>`"))?
        .to_string();

    let (ln, l) = next("`order <n>`")?;
    let order: usize = l
        .strip_prefix("order")
        .and_then(|n| n.trim().parse().ok())
        .ok_or_else(|| syntax(ln, "expected `order <n>`"))?;
    if order == 0 {
        return Err(syntax(ln, "order must be positive"));
    }

    let mut tables = Vec::new();
    for label in ["add:", "mul:"] {
        let (ln, l) = next(label)?;
        if l != label {
            return Err(syntax(ln, format!("expected `{label}`")));
        }
        let mut rows = Vec::with_capacity(order);
        for r in 0..order {
            let (ln, l) = next(&format!("row {r} of the {} table", &label[..3]))?;
            let row = l
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| syntax(ln, format!("bad table entry `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != order {
                return Err(syntax(ln, format!("expected {order} entries, found {}", row.len())));
            }
            rows.push(row);
        }
        tables.push(rows);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(syntax(ln, "trailing content after the mul table"));
    }
    Ok(FiniteHemiring::from_tables(name, &tables[0], &tables[1])?)
}

/// A parsed fuzzy file: explicit table or N0 rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuzzySource {
    Table(FuzzySet),
    Rule(GradeRule),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyFile {
    pub name: String,
    pub carrier: String,
    pub source: FuzzySource,
}

pub fn write_fuzzy(mu: &FuzzySet, carrier: &str) -> String {
    let mut out = format!("fuzzy {} over {carrier}\n", mu.name());
    for (x, g) in mu.grades().iter().enumerate() {
        let _ = writeln!(out, "{x} {g}");
    }
    out
}

pub fn write_rule(rule: &GradeRule, carrier: &str) -> String {
    format!("fuzzy {} over {carrier}\n{rule}\n", rule.name())
}

/// Parses a fuzzy file. With `order` given, a table must list every
/// element `0..order` exactly once.
pub fn parse_fuzzy(text: &str, order: Option<usize>) -> Result<FuzzyFile, FormatError> {
    let mut lines = content_lines(text);
    let (ln, head) = lines
        .next()
        .ok_or_else(|| FormatError::Eof("expected `fuzzy <name> over <carrier>`".into()))?;
    let rest = head
        .strip_prefix("fuzzy ")
        .ok_or_else(|| syntax(ln, "expected `fuzzy <name> over <carrier>`"))?;
    let (name, carrier) = rest
        .split_once(" over ")
        .map(|(n, c)| (n.trim().to_string(), c.trim().to_string()))
        .filter(|(n, c)| !n.is_empty() && !c.is_empty())
        .ok_or_else(|| syntax(ln, "expected `fuzzy <name> over <carrier>`"))?;

    let body: Vec<(usize, &str)> = lines.collect();
    if let Some(&(ln, first)) = body.first() {
        if first.starts_with("rule") {
            if body.len() > 1 {
                return Err(syntax(body[1].0, "a rule file holds a single rule line"));
            }
            let rule = GradeRule::parse(first).map_err(|e| syntax(ln, e.to_string()))?.named(name.clone());
            return Ok(FuzzyFile {
                name,
                carrier,
                source: FuzzySource::Rule(rule),
            });
        }
    }

    let mut entries: Vec<(usize, usize, Grade)> = Vec::new();
    for &(ln, l) in &body {
        let mut parts = l.split_whitespace();
        let (Some(x), Some(gr), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(syntax(ln, "expected `<element> <grade>`"));
        };
        let x: usize = x.parse().map_err(|_| syntax(ln, format!("bad element `{x}`")))?;
        let gr: Grade = gr.parse().map_err(|e| syntax(ln, format!("{}", FuzzyError::Grade(e))))?;
        entries.push((ln, x, gr));
    }
    let n = order.unwrap_or(entries.len());
    if n == 0 {
        return Err(FormatError::Eof("no grades listed".into()));
    }
    let mut grades: Vec<Option<Grade>> = vec![None; n];
    for (ln, x, gr) in entries {
        if x >= n {
            return Err(syntax(ln, format!("element {x} is outside 0..{n}")));
        }
        if grades[x].replace(gr).is_some() {
            return Err(syntax(ln, format!("element {x} listed twice")));
        }
    }
    let grades = grades
        .into_iter()
        .enumerate()
        .map(|(x, gr)| gr.ok_or_else(|| FormatError::Eof(format!("no grade for element {x}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FuzzyFile {
        name: name.clone(),
        carrier,
        source: FuzzySource::Table(FuzzySet::new(grades).named(name)),
    })
}
