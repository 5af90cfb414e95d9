//! Plain-text instance and solution files.
//!
//! Instance:
//!
//! ```text
//! mmdc 1
//! s t
//! w_11 … w_1t        (s rows)
//! α_1 … α_s
//! α′_1 … α′_s
//! β_1 … β_t
//! β′_1 … β′_t
//! ```
//!
//! Solution: `cost C`, then `i j m` per matched pair (1-based, sorted),
//! then `# stats:` comment lines. Blank lines and lines starting with `#`
//! are ignored on input. Output is ASCII with `\n` line endings and single
//! spaces.

use std::fmt::Write as _;

use crate::error::{ParseError, Result};
use crate::model::{Instance, Solution};

pub const FORMAT_VERSION: &str = "1";

struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(k, raw)| {
            let trimmed = raw.trim();
            (!trimmed.is_empty() && !trimmed.starts_with('#')).then_some(Line {
                number: k + 1,
                text: raw,
            })
        })
        .collect()
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(k),
            (true, Some(st)) => {
                out.push((line[..st].chars().count() + 1, &line[st..k]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((line[..st].chars().count() + 1, &line[st..]));
    }
    out
}

fn number<T: std::str::FromStr>(
    line: &Line<'_>,
    column: usize,
    tok: &str,
    what: &str,
) -> Result<T, ParseError> {
    if tok.starts_with('-') {
        return Err(ParseError::new(
            line.number,
            column,
            format!("negative {what} '{tok}'"),
        ));
    }
    tok.parse()
        .map_err(|_| ParseError::new(line.number, column, format!("invalid {what} '{tok}'")))
}

fn row<T: std::str::FromStr>(
    line: &Line<'_>,
    len: usize,
    what: &str,
) -> Result<Vec<T>, ParseError> {
    let toks = tokens(line.text);
    if toks.len() != len {
        let column = toks.get(len).map_or(line.text.len() + 1, |t| t.0);
        return Err(ParseError::new(
            line.number,
            column,
            format!("expected {len} values for {what}, found {}", toks.len()),
        ));
    }
    toks.iter()
        .map(|&(c, tok)| number(line, c, tok, what))
        .collect()
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let lines = content_lines(text);
    let Some(header) = lines.first() else {
        return Err(ParseError::new(1, 1, "empty input, expected header 'mmdc 1'").into());
    };
    let head = tokens(header.text);
    match head.as_slice() {
        [(_, "mmdc"), (_, FORMAT_VERSION)] => {}
        [(_, "mmdc"), (c, v)] => {
            return Err(ParseError::new(
                header.number,
                *c,
                format!("unsupported version '{v}', expected {FORMAT_VERSION}"),
            )
            .into())
        }
        _ => {
            return Err(
                ParseError::new(header.number, 1, "malformed header, expected 'mmdc 1'").into(),
            )
        }
    }

    let Some(dims) = lines.get(1) else {
        return Err(ParseError::new(header.number + 1, 1, "missing size line 's t'").into());
    };
    let st: Vec<usize> = row(dims, 2, "sizes")?;
    let (s, t) = (st[0], st[1]);
    if s == 0 || t == 0 {
        return Err(ParseError::new(dims.number, 1, "sizes must be positive").into());
    }

    let expected = 6 + s;
    if lines.len() != expected {
        let at = lines.get(expected).or(lines.last()).unwrap();
        return Err(ParseError::new(
            at.number,
            1,
            format!(
                "expected {expected} content lines (header, sizes, {s} weight rows, 4 bound rows), found {}",
                lines.len()
            ),
        )
        .into());
    }

    let mut weights = Vec::with_capacity(s * t);
    for line in &lines[2..2 + s] {
        weights.extend(row::<u64>(line, t, "weights")?);
    }
    let bounds = &lines[2 + s..];
    let demand_a: Vec<u32> = row(&bounds[0], s, "α (demands of A)")?;
    let cap_a: Vec<u32> = row(&bounds[1], s, "α′ (capacities of A)")?;
    let demand_b: Vec<u32> = row(&bounds[2], t, "β (demands of B)")?;
    let cap_b: Vec<u32> = row(&bounds[3], t, "β′ (capacities of B)")?;

    for (dem, cap, line, side) in [
        (&demand_a, &cap_a, &bounds[1], "a"),
        (&demand_b, &cap_b, &bounds[3], "b"),
    ] {
        if let Some(k) = (0..dem.len()).find(|&k| dem[k] > cap[k]) {
            let column = tokens(line.text)[k].0;
            return Err(ParseError::new(
                line.number,
                column,
                format!(
                    "capacity {} of {side}_{} is below its demand {}",
                    cap[k],
                    k + 1,
                    dem[k]
                ),
            )
            .into());
        }
    }

    Instance::from_flat(s, t, weights, demand_a, cap_a, demand_b, cap_b)
        .map_err(|e| ParseError::new(lines[2].number, 1, e.to_string()).into())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// Canonical text of an instance; `parse_instance` inverts it.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = format!("mmdc {FORMAT_VERSION}\n{} {}\n", inst.s(), inst.t());
    for i in 0..inst.s() {
        out.push_str(&join(inst.row(i)));
        out.push('\n');
    }
    for v in [inst.demand_a(), inst.cap_a(), inst.demand_b(), inst.cap_b()] {
        out.push_str(&join(v));
        out.push('\n');
    }
    out
}

/// Solution text. Timing is left out so the output is reproducible.
pub fn write_solution(sol: &Solution) -> String {
    let mut out = format!("cost {}\n", sol.total_cost);
    for (&(i, j), &m) in &sol.multiplicities {
        let _ = writeln!(out, "{} {} {m}", i + 1, j + 1);
    }
    let st = &sol.stats;
    if st.augmentations > 0 {
        let _ = writeln!(
            out,
            "# stats: augmentations={} label_updates={} tree_extensions={}",
            st.augmentations, st.label_updates, st.tree_extensions
        );
        let hist: Vec<String> = st
            .path_lengths
            .iter()
            .map(|(len, n)| format!("{len}:{n}"))
            .collect();
        let _ = writeln!(out, "# stats: path_lengths={}", hist.join(","));
    }
    out
}

/// Reads `cost C` and the `i j m` pair lines; comments are skipped and the
/// stats are left empty.
pub fn parse_solution(text: &str) -> Result<Solution> {
    let lines = content_lines(text);
    let Some(first) = lines.first() else {
        return Err(ParseError::new(1, 1, "empty solution, expected 'cost C'").into());
    };
    let toks = tokens(first.text);
    let total_cost = match toks.as_slice() {
        [(_, "cost"), (c, v)] => number(first, *c, v, "cost")?,
        _ => return Err(ParseError::new(first.number, 1, "expected 'cost C'").into()),
    };
    let mut sol = Solution {
        total_cost,
        ..Solution::default()
    };
    for line in &lines[1..] {
        let v: Vec<usize> = row(line, 3, "pair 'i j m'")?;
        if v[0] == 0 || v[1] == 0 {
            return Err(ParseError::new(line.number, 1, "pair indices are 1-based").into());
        }
        let m = u32::try_from(v[2])
            .map_err(|_| ParseError::new(line.number, 1, "multiplicity too large"))?;
        if sol.multiplicities.insert((v[0] - 1, v[1] - 1), m).is_some() {
            return Err(ParseError::new(
                line.number,
                1,
                format!("pair ({}, {}) listed twice", v[0], v[1]),
            )
            .into());
        }
    }
    Ok(sol)
}
