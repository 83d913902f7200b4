use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use super::report::Report;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartSs {
    Ls,
    Em,
    PreludeLs,
    PreludeEm,
    /// The trigraded page, sliced at fixed `s` or `t`.
    Tri,
}

impl FromStr for ChartSs {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ls" => Ok(ChartSs::Ls),
            "em" => Ok(ChartSs::Em),
            "prelude-ls" => Ok(ChartSs::PreludeLs),
            "prelude-em" => Ok(ChartSs::PreludeEm),
            "tri" => Ok(ChartSs::Tri),
            _ => Err(Error::Invalid(format!("unknown sequence `{s}` (ls, em, prelude-ls, prelude-em, tri)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slice {
    S(i64),
    T(i64),
}

impl FromStr for Slice {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("slice `{text}` is not s=K or t=K"));
        let (k, v) = text.split_once('=').ok_or_else(bad)?;
        let v: i64 = v.trim().parse().map_err(|_| bad())?;
        match k.trim() {
            "s" => Ok(Slice::S(v)),
            "t" => Ok(Slice::T(v)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChartFormat {
    #[default]
    Ascii,
    Tex,
}

impl FromStr for ChartFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(ChartFormat::Ascii),
            "tex" => Ok(ChartFormat::Tex),
            _ => Err(Error::Invalid(format!("unknown format `{s}` (ascii, tex)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChartRequest {
    pub ss: ChartSs,
    pub page: usize,
    pub slice: Option<Slice>,
    pub format: ChartFormat,
}

/// A grid: cell texts at `(x, y)` and arrows between cells.
struct Grid {
    title: String,
    axes: (&'static str, &'static str),
    cells: BTreeMap<(i64, i64), String>,
    arrows: Vec<((i64, i64), (i64, i64), usize)>,
}

fn sequence_grid(report: &Report, name: &str, page: usize) -> Result<Grid> {
    let seq = report.sequence(name).ok_or_else(|| Error::Invalid(format!("report has no sequence `{name}`")))?;
    let pg = seq.page(page).ok_or(Error::PageOutOfRange(page))?;
    let cells = pg
        .entries
        .iter()
        .filter(|e| e.dim > 0 || !e.certified)
        .map(|e| ((e.p, e.q), if e.certified { e.dim.to_string() } else { format!("{}?", e.dim) }))
        .collect();
    Ok(Grid {
        title: format!("{} E_{page}", seq.name),
        axes: ("p", "q"),
        cells,
        arrows: pg.d_nonzero.iter().map(|d| (d.from, d.to, d.rank)).collect(),
    })
}

fn tri_grid(report: &Report, slice: Slice) -> Grid {
    let (title, axes, cells) = match slice {
        Slice::S(k) => (
            format!("tri E_1 at s={k}"),
            ("t", "u"),
            report.tri.iter().filter(|e| e.s == k).map(|e| ((e.t, e.u), e.dim.to_string())).collect(),
        ),
        Slice::T(k) => (
            format!("tri E_1 at t={k}"),
            ("s", "u"),
            report.tri.iter().filter(|e| e.t == k).map(|e| ((e.s, e.u), e.dim.to_string())).collect(),
        ),
    };
    Grid { title, axes, cells, arrows: Vec::new() }
}

/// Renders one page of a report as a grid of dimensions (`?` marks
/// uncertified entries) followed by the nonzero differentials.
pub fn render_chart(report: &Report, req: &ChartRequest) -> Result<String> {
    let grid = match (req.ss, req.slice) {
        (ChartSs::Ls, _) => sequence_grid(report, "ls", req.page)?,
        (ChartSs::Em, _) => sequence_grid(report, "em", req.page)?,
        (ChartSs::PreludeLs, Some(Slice::S(k))) => sequence_grid(report, &format!("prelude-ls s={k}"), req.page)?,
        (ChartSs::PreludeEm, Some(Slice::T(k))) => sequence_grid(report, &format!("prelude-em t={k}"), req.page)?,
        (ChartSs::PreludeLs, _) => return Err(Error::Invalid("prelude-ls needs --slice s=K".into())),
        (ChartSs::PreludeEm, _) => return Err(Error::Invalid("prelude-em needs --slice t=K".into())),
        (ChartSs::Tri, Some(slice)) if req.page == 1 => tri_grid(report, slice),
        (ChartSs::Tri, Some(_)) => return Err(Error::PageOutOfRange(req.page)),
        (ChartSs::Tri, None) => return Err(Error::Invalid("tri needs --slice s=K or t=K".into())),
    };
    let (xs, ys) = ranges(&grid).ok_or_else(|| Error::Invalid(format!("chart spans more than {MAX_SPAN} cells")))?;
    Ok(match req.format {
        ChartFormat::Ascii => ascii(&grid, &xs, &ys),
        ChartFormat::Tex => tex(&grid, &xs, &ys),
    })
}

const MAX_SPAN: usize = 1024;

fn ranges(grid: &Grid) -> Option<(Vec<i64>, Vec<i64>)> {
    let pts = grid.cells.keys().copied().chain(grid.arrows.iter().flat_map(|(a, b, _)| [*a, *b]));
    let (mut x0, mut x1, mut y0, mut y1) = (0, 0, 0, 0);
    for (x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1.abs_diff(x0) >= MAX_SPAN as u64 || y1.abs_diff(y0) >= MAX_SPAN as u64 {
        return None;
    }
    Some(((x0..=x1).collect(), (y0..=y1).rev().collect()))
}

fn ascii(grid: &Grid, xs: &[i64], ys: &[i64]) -> String {
    let width = grid.cells.values().map(|s| s.len()).chain(xs.iter().map(|x| x.to_string().len())).max().unwrap_or(1).max(1) + 1;
    let label = ys.iter().map(|y| y.to_string().len()).max().unwrap_or(1).max(grid.axes.1.len());
    let mut out = format!("{}\n", grid.title);
    for y in ys {
        let _ = write!(out, "{y:>label$} |");
        for x in xs {
            let cell = grid.cells.get(&(*x, *y)).map_or(".", |s| s.as_str());
            let _ = write!(out, "{cell:>width$}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{:>label$} +{}", "", "-".repeat(width * xs.len()));
    let _ = write!(out, "{:>label$}  ", grid.axes.1);
    for x in xs {
        let _ = write!(out, "{x:>width$}");
    }
    let _ = writeln!(out, "   {}", grid.axes.0);
    for (a, b, rank) in &grid.arrows {
        let _ = writeln!(out, "d: ({},{}) -> ({},{}) rank {rank}", a.0, a.1, b.0, b.1);
    }
    out
}

fn tex(grid: &Grid, xs: &[i64], ys: &[i64]) -> String {
    let mut out = format!("% {}\n\\begin{{tabular}}{{r|{}}}\n", grid.title, "c".repeat(xs.len()));
    for y in ys {
        let row: Vec<String> = xs.iter().map(|x| grid.cells.get(&(*x, *y)).cloned().unwrap_or_default()).collect();
        let _ = writeln!(out, "${y}$ & {} \\\\", row.join(" & "));
    }
    let _ = writeln!(out, "\\hline");
    let head: Vec<String> = xs.iter().map(|x| format!("${x}$")).collect();
    let _ = writeln!(out, "${}/{}$ & {} \\\\", grid.axes.1, grid.axes.0, head.join(" & "));
    out.push_str("\\end{tabular}\n");
    for (a, b, rank) in &grid.arrows {
        let _ = writeln!(out, "% $d\\colon ({},{}) \\to ({},{})$, rank {rank}", a.0, a.1, b.0, b.1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::report::{DRecord, EntryRecord, PageRecord, SequenceRecord};
    use crate::scenarios::spec::ScenarioBounds;
    use crate::engine::Degeneration;

    fn report(entries: Vec<EntryRecord>, d: Vec<DRecord>) -> Report {
        Report {
            scenario: "t".into(),
            field: "q".into(),
            bounds: ScenarioBounds { max_degree: 3, max_word: 3, pages: 2 },
            formal_model: true,
            y_minimal: None,
            tri: Vec::new(),
            sequences: vec![SequenceRecord {
                name: "ls".into(),
                pages: vec![PageRecord { r: 2, entries, d_nonzero: d }],
                degeneration: Degeneration { page: Some(3), certified: true },
            }],
            criteria: serde_json::Value::Null,
            checks: Vec::new(),
        }
    }

    #[test]
    fn huge_coordinates_are_rejected() {
        let far = EntryRecord { p: i64::MAX, q: 0, dim: 1, certified: true };
        let near = EntryRecord { p: -1, q: 0, dim: 1, certified: true };
        assert!(render_chart(&report(vec![far, near], vec![]), &req(ChartSs::Ls, 2)).is_err());
    }

    fn req(ss: ChartSs, page: usize) -> ChartRequest {
        ChartRequest { ss, page, slice: None, format: ChartFormat::Ascii }
    }

    #[test]
    fn empty_page_has_axes() {
        let out = render_chart(&report(vec![], vec![]), &req(ChartSs::Ls, 2)).unwrap();
        assert!(out.contains('+'));
        assert!(out.contains("p"));
    }

    #[test]
    fn arrow_is_listed() {
        let e = |p, q| EntryRecord { p, q, dim: 1, certified: true };
        let r = report(vec![e(0, 1), e(2, 0)], vec![DRecord { from: (0, 1), to: (2, 0), rank: 1 }]);
        let out = render_chart(&r, &req(ChartSs::Ls, 2)).unwrap();
        assert!(out.contains("(0,1) -> (2,0)"));
        let tex = render_chart(&r, &ChartRequest { format: ChartFormat::Tex, ..req(ChartSs::Ls, 2) }).unwrap();
        assert!(tex.contains("\\begin{tabular}"));
        assert!(!tex.contains("tikz"));
    }

    #[test]
    fn errors() {
        let r = report(vec![], vec![]);
        assert!(matches!(render_chart(&r, &req(ChartSs::Ls, 7)), Err(Error::PageOutOfRange(7))));
        assert!(render_chart(&r, &req(ChartSs::Em, 2)).is_err());
        assert!(render_chart(&r, &req(ChartSs::PreludeEm, 2)).is_err());
        assert!("s=x".parse::<Slice>().is_err());
        assert_eq!("t=-2".parse::<Slice>().unwrap(), Slice::T(-2));
    }
}
