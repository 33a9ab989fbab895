//! Resolution dumps.
//!
//! ```text
//! ring x1 x2; weights 1 1; order wdegrevlex;
//! F 0: 0
//! F 1: 2 2
//! F 2: 3
//! d 1
//! 0 0 x1^2
//! 0 1 x1*x2
//! d 2
//! 0 0 x2
//! 1 0 -x1
//! ```
//!
//! `F i:` lists the shifts of the basis of `F_i`; under `d i` each line is
//! `row col polynomial`, the entry of `d_i` in row `row` of `F_{i-1}` and
//! column `col` of `F_i`. Zero entries are omitted.

use sl2betti_core::poly::OrderKind;
use sl2betti_core::resolution::{FreeModule, ModuleElement, Resolution};

use crate::grammar::{self, parse_polynomial, GrammarError};

pub fn write_dump(res: &Resolution) -> String {
    let ring = res.ring();
    let mut out = grammar::header(ring, OrderKind::WeightedRevLex);
    out.push('\n');
    for (i, f) in res.modules().iter().enumerate() {
        let s: Vec<String> = f.shifts().iter().map(|s| s.to_string()).collect();
        out.push_str(&format!("F {i}: {}\n", s.join(" ")).replace(" \n", "\n"));
    }
    for i in 1..=res.length() {
        out.push_str(&format!("d {i}\n"));
        let mut triples: Vec<(usize, usize, String)> = Vec::new();
        for (c, col) in res.differential(i).iter().enumerate() {
            for (r, p) in col.entries() {
                triples.push((*r, c, p.to_text(ring.names())));
            }
        }
        triples.sort_by_key(|t| (t.0, t.1));
        for (r, c, p) in triples {
            out.push_str(&format!("{r} {c} {p}\n"));
        }
    }
    out
}

fn syntax(line: usize, message: impl Into<String>) -> GrammarError {
    GrammarError::Syntax {
        line,
        message: message.into(),
    }
}

/// Reads a dump written by [`write_dump`].
pub fn read_dump(text: &str) -> Result<Resolution, GrammarError> {
    let split = text
        .lines()
        .position(|l| l.trim_start().starts_with("F "))
        .ok_or_else(|| syntax(1, "no modules"))?;
    let head: Vec<&str> = text.lines().take(split).collect();
    let file = grammar::parse_poly_file(&head.join("\n"), None)?;
    let ring = file.ring;
    let ord = ring.default_order();
    let mut modules: Vec<FreeModule> = Vec::new();
    let mut entries: Vec<Vec<Vec<(usize, sl2betti_core::poly::Polynomial)>>> = Vec::new();
    let mut current: Option<usize> = None;
    for (k, line) in text.lines().enumerate().skip(split) {
        let n = k + 1;
        let line = line.split_once('#').map_or(line, |(a, _)| a).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("F ") {
            let (idx, shifts) = rest.split_once(':').ok_or_else(|| syntax(n, "missing ':'"))?;
            if idx.trim().parse::<usize>().ok() != Some(modules.len()) {
                return Err(syntax(n, "modules out of order"));
            }
            let shifts: Result<Vec<u32>, _> = shifts.split_whitespace().map(str::parse).collect();
            modules.push(FreeModule::new(shifts.map_err(|_| syntax(n, "bad shift"))?));
            continue;
        }
        if let Some(idx) = line.strip_prefix("d ") {
            let i: usize = idx.trim().parse().map_err(|_| syntax(n, "bad index"))?;
            if i == 0 || i >= modules.len() || i != entries.len() + 1 {
                return Err(syntax(n, "differentials out of order"));
            }
            entries.push(vec![Vec::new(); modules[i].rank()]);
            current = Some(i);
            continue;
        }
        let i = current.ok_or_else(|| syntax(n, "entry before any `d` line"))?;
        let mut parts = line.splitn(3, char::is_whitespace);
        let r: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| syntax(n, "bad row"))?;
        let c: usize = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| syntax(n, "bad column"))?;
        let p = parse_polynomial(parts.next().unwrap_or(""), &ring, &ord).map_err(|m| syntax(n, m))?;
        if r >= modules[i - 1].rank() || c >= modules[i].rank() {
            return Err(syntax(n, "entry outside the matrix"));
        }
        entries[i - 1][c].push((r, p));
    }
    if modules.is_empty() {
        return Err(syntax(split + 1, "no modules"));
    }
    while entries.len() + 1 < modules.len() {
        let i = entries.len() + 1;
        entries.push(vec![Vec::new(); modules[i].rank()]);
    }
    let differentials = entries
        .into_iter()
        .map(|d| d.into_iter().map(ModuleElement::new).collect())
        .collect();
    Resolution::new(ring, modules, differentials).map_err(|e| syntax(split + 1, e.to_string()))
}
