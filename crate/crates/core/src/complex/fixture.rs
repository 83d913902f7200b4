//! Plain-text fixtures for complexes and filtrations.
//!
//! ```text
//! # cellular cochains of an interval
//! field q
//! dims 2 1
//! labels 0 v0 v1
//! labels 1 e
//! d 0
//! -1 1
//! filtration F 0
//! level 1 1
//! 1
//! truncation cap=4 complete=3 floor=-2
//! ```
//!
//! * `field` is `q` or `f<p>`; `dims` lists `dim C^n` for `n = 0, 1, …`.
//! * `d n` is followed by `dim C^{n+1}` rows of `dim C^n` entries. Missing
//!   blocks are zero maps. Entries are integers or fractions `a/b`.
//! * `filtration NAME s_min` opens a filtration with `F^{s_min} = C`. Each
//!   `level s n` is followed by spanning vectors of `F^s C^n`, one per line.
//!   Levels that are not given are zero, and the filtration vanishes above
//!   the largest `s` mentioned.
//! * `truncation` is optional and applies to every filtration.
//! * `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;

use num_bigint::BigInt;

use super::cochain::CochainComplex;
use super::filtered::{FilteredComplex, Truncation};
use super::graded::GradedSpace;
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar, Subspace};

const MAX_DEGREES: usize = 256;
const MAX_DIM: usize = 2048;
const MAX_ENTRIES: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub complex: CochainComplex,
    pub filtrations: Vec<(String, FilteredComplex)>,
}

impl Fixture {
    pub fn filtration(&self, name: &str) -> Option<&FilteredComplex> {
        self.filtrations.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_scalar(field: FieldSpec, tok: &str, line: usize) -> Result<Scalar> {
    let (num, den) = match tok.split_once('/') {
        Some((a, b)) => (a, b),
        None => (tok, "1"),
    };
    let parse = |s: &str| -> Result<BigInt> {
        s.trim_start_matches('+').parse::<BigInt>().map_err(|_| err(line, format!("bad number `{tok}`")))
    };
    field.from_fraction(&parse(num)?, &parse(den)?).map_err(|e| err(line, e.to_string()))
}

fn is_data_line(l: &str) -> bool {
    l.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+')
}

struct PendingFiltration {
    name: String,
    s_min: i64,
    line: usize,
    levels: Vec<(i64, usize, Vec<Vec<Scalar>>)>,
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut field = None;
    let mut dims: Option<Vec<usize>> = None;
    let mut labels: Vec<(usize, Vec<String>)> = Vec::new();
    let mut diffs: Vec<(usize, usize, Vec<Vec<Scalar>>)> = Vec::new();
    let mut filtrations: Vec<PendingFiltration> = Vec::new();
    let mut truncation = Truncation::exact();

    let mut i = 0;
    while i < lines.len() {
        let (ln, line) = lines[i];
        let mut words = line.split_whitespace();
        let key = words.next().unwrap_or("");
        let args: Vec<&str> = words.collect();
        i += 1;
        let block_end = |start: usize| -> usize {
            let mut j = start;
            while j < lines.len() && is_data_line(lines[j].1) {
                j += 1;
            }
            j
        };
        let need_field = || field.ok_or_else(|| err(ln, "`field` must come first"));
        match key {
            "field" => {
                let f: FieldSpec = args.first().ok_or_else(|| err(ln, "missing field"))?.parse().map_err(|e: Error| err(ln, e.to_string()))?;
                field = Some(f);
            }
            "dims" => {
                let v = args
                    .iter()
                    .map(|a| a.parse::<usize>().map_err(|_| err(ln, format!("bad dimension `{a}`"))))
                    .collect::<Result<Vec<_>>>()?;
                let entries: usize = v.windows(2).map(|w| w[0] * w[1]).sum::<usize>() + v.iter().map(|d| d * d).sum::<usize>();
                if v.len() > MAX_DEGREES || v.iter().any(|&d| d > MAX_DIM) || entries > MAX_ENTRIES {
                    return Err(err(ln, "complex too large for a fixture"));
                }
                dims = Some(v);
            }
            "labels" => {
                let n = args.first().and_then(|a| a.parse::<usize>().ok()).ok_or_else(|| err(ln, "labels need a degree"))?;
                labels.push((n, args[1..].iter().map(|s| s.to_string()).collect()));
            }
            "d" => {
                let f = need_field()?;
                let n = args.first().and_then(|a| a.parse::<usize>().ok()).ok_or_else(|| err(ln, "d needs a degree"))?;
                let end = block_end(i);
                let rows = lines[i..end]
                    .iter()
                    .map(|(l, text)| text.split_whitespace().map(|t| parse_scalar(f, t, *l)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                diffs.push((n, ln, rows));
                i = end;
            }
            "filtration" => {
                let name = args.first().ok_or_else(|| err(ln, "filtration needs a name"))?.to_string();
                let s_min = args.get(1).and_then(|a| a.parse::<i64>().ok()).ok_or_else(|| err(ln, "filtration needs s_min"))?;
                filtrations.push(PendingFiltration { name, s_min, line: ln, levels: Vec::new() });
            }
            "level" => {
                let f = need_field()?;
                let s = args.first().and_then(|a| a.parse::<i64>().ok()).ok_or_else(|| err(ln, "level needs s"))?;
                let n = args.get(1).and_then(|a| a.parse::<usize>().ok()).ok_or_else(|| err(ln, "level needs a degree"))?;
                let end = block_end(i);
                let vecs = lines[i..end]
                    .iter()
                    .map(|(l, text)| text.split_whitespace().map(|t| parse_scalar(f, t, *l)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let fil = filtrations.last_mut().ok_or_else(|| err(ln, "level outside a filtration"))?;
                fil.levels.push((s, n, vecs));
                i = end;
            }
            "truncation" => {
                for a in &args {
                    let (k, v) = a.split_once('=').ok_or_else(|| err(ln, format!("bad truncation entry `{a}`")))?;
                    let bad = || err(ln, format!("bad truncation value `{v}`"));
                    match k {
                        "cap" => truncation.degree_cap = Some(v.parse().map_err(|_| bad())?),
                        "complete" => truncation.complete_below = Some(v.parse().map_err(|_| bad())?),
                        "floor" => truncation.filtration_floor = Some(v.parse().map_err(|_| bad())?),
                        _ => return Err(err(ln, format!("unknown truncation key `{k}`"))),
                    }
                }
            }
            _ if is_data_line(line) => return Err(err(ln, "numbers outside a block")),
            _ => return Err(err(ln, format!("unknown keyword `{key}`"))),
        }
    }

    let field = field.ok_or_else(|| err(0, "missing `field` line"))?;
    let dims = dims.ok_or_else(|| err(0, "missing `dims` line"))?;
    let mut label_table: Vec<Vec<String>> = GradedSpace::from_dims(&dims).labels_table();
    for (n, ls) in labels {
        if n >= dims.len() || ls.len() != dims[n] {
            return Err(err(0, format!("labels for degree {n} do not match its dimension")));
        }
        label_table[n] = ls;
    }
    let space = GradedSpace::new(label_table).map_err(|e| err(0, e.to_string()))?;
    let top = dims.len().saturating_sub(1);
    let mut d: Vec<Matrix> = (0..top).map(|n| Matrix::zero(field, dims[n + 1], dims[n])).collect();
    for (n, ln, rows) in diffs {
        if n >= top {
            return Err(err(ln, format!("d {n} leaves the window")));
        }
        if rows.len() != dims[n + 1] {
            return Err(err(ln, format!("d {n} needs {} rows", dims[n + 1])));
        }
        d[n] = Matrix::from_rows(field, dims[n], rows).map_err(|e| err(ln, e.to_string()))?;
    }
    let complex = CochainComplex::new(field, space, d).map_err(|e| err(0, e.to_string()))?;

    let mut out = Vec::new();
    for pf in filtrations {
        let s_max = pf.levels.iter().map(|(s, _, _)| *s).max().unwrap_or(pf.s_min).max(pf.s_min);
        if s_max.abs_diff(pf.s_min) > MAX_DEGREES as u64 {
            return Err(err(pf.line, "filtration window too wide"));
        }
        let mut levels: Vec<Vec<Subspace>> = (pf.s_min..=s_max)
            .map(|s| {
                (0..complex.len())
                    .map(|n| {
                        if s == pf.s_min {
                            Subspace::full(field, complex.dim(n))
                        } else {
                            Subspace::zero(field, complex.dim(n))
                        }
                    })
                    .collect()
            })
            .collect();
        for (s, n, vecs) in pf.levels {
            if s <= pf.s_min || n >= complex.len() {
                return Err(err(pf.line, format!("level {s} {n} outside the filtration window")));
            }
            let sub = Subspace::span(field, complex.dim(n), vecs).map_err(|e| err(pf.line, e.to_string()))?;
            let slot = &mut levels[(s - pf.s_min) as usize][n];
            *slot = slot.sum(&sub).expect("same ambient");
        }
        let fc = FilteredComplex::new(complex.clone(), pf.s_min, levels, truncation).map_err(|e| err(pf.line, e.to_string()))?;
        out.push((pf.name, fc));
    }
    Ok(Fixture { complex, filtrations: out })
}

fn write_rows(out: &mut String, rows: &[Vec<Scalar>]) {
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
}

/// Serializes a complex and named filtrations in the fixture format.
pub fn write_fixture(complex: &CochainComplex, filtrations: &[(&str, &FilteredComplex)]) -> String {
    let mut out = String::new();
    let field = match complex.field() {
        FieldSpec::Rationals => "q".to_string(),
        FieldSpec::Prime(p) => format!("f{p}"),
    };
    let _ = writeln!(out, "field {field}");
    let dims: Vec<String> = complex.dims().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "dims {}", dims.join(" "));
    for n in 0..complex.len() {
        if complex.dim(n) > 0 && complex.space().labels(n).iter().all(|l| !l.contains(char::is_whitespace) && !l.contains('#')) {
            let _ = writeln!(out, "labels {n} {}", complex.space().labels(n).join(" "));
        }
    }
    for n in 0..complex.len().saturating_sub(1) {
        let d = complex.d(n);
        if !d.is_zero() {
            let _ = writeln!(out, "d {n}");
            write_rows(&mut out, &d.row_vecs());
        }
    }
    let mut truncation = None;
    for (name, fc) in filtrations {
        let _ = writeln!(out, "filtration {name} {}", fc.s_min());
        for s in fc.s_min() + 1..=fc.s_max() {
            let top_is_zero = s == fc.s_max() && (0..complex.len()).all(|n| fc.level(s, n).is_zero());
            for n in 0..complex.len() {
                let lvl = fc.level(s, n);
                if !lvl.is_zero() || (top_is_zero && n == 0) {
                    let _ = writeln!(out, "level {s} {n}");
                    write_rows(&mut out, lvl.basis());
                }
            }
        }
        truncation = Some(fc.truncation());
    }
    if let Some(t) = truncation.filter(|t| *t != Truncation::exact()) {
        let mut parts = Vec::new();
        if let Some(c) = t.degree_cap {
            parts.push(format!("cap={c}"));
        }
        if let Some(c) = t.complete_below {
            parts.push(format!("complete={c}"));
        }
        if let Some(f) = t.filtration_floor {
            parts.push(format!("floor={f}"));
        }
        let _ = writeln!(out, "truncation {}", parts.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const INTERVAL: &str = "\
# two vertices and an edge
field q
dims 2 1
labels 0 v0 v1
labels 1 e
d 0
-1 1
filtration F 0
level 1 1
1
";

    #[test]
    fn parses_interval() {
        let fx = parse_fixture(INTERVAL).unwrap();
        assert_eq!(fx.complex.dims(), vec![2, 1]);
        assert_eq!(fx.complex.cohomology().dims(), vec![1, 0]);
        let f = fx.filtration("F").unwrap();
        assert_eq!(f.s_max(), 1);
        assert_eq!(f.gr(1).dims(), vec![0, 1]);
    }

    #[test]
    fn roundtrip() {
        let fx = parse_fixture(INTERVAL).unwrap();
        let text = write_fixture(&fx.complex, &[("F", fx.filtration("F").unwrap())]);
        assert_eq!(parse_fixture(&text).unwrap(), fx);
    }

    #[test]
    fn fractions_and_primes() {
        let fx = parse_fixture("field f3\ndims 1 1\nd 0\n1/2\n").unwrap();
        assert_eq!(fx.complex.d(0).get(0, 0), &Scalar::Mod(2));
        assert!(parse_fixture("field f3\ndims 1 1\nd 0\n1/3\n").is_err());
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_fixture("field q\ndims 1 1\nd 0\n1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_fixture("field q\nbogus\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn rejects_d_squared() {
        let e = parse_fixture("field q\ndims 1 1 1\nd 0\n1\nd 1\n1\n").unwrap_err();
        assert!(e.to_string().contains("d∘d"));
    }
}
