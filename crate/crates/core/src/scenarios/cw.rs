use crate::complex::{CochainComplex, FilteredComplex, GradedSpace, Truncation};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix};

/// A finite CW structure recorded through its cells and integral cellular
/// coboundaries. `coboundary[n]` has shape `#cells[n+1] × #cells[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwModel {
    pub name: String,
    pub cells: Vec<Vec<String>>,
    pub coboundary: Vec<Vec<Vec<i64>>>,
}

fn zero(rows: usize, cols: usize) -> Vec<Vec<i64>> {
    vec![vec![0; cols]; rows]
}

fn compose(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()).collect()
}

impl CwModel {
    pub fn new(name: impl Into<String>, cells: Vec<Vec<String>>, coboundary: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let name = name.into();
        if cells.is_empty() {
            return Err(Error::Invalid(format!("{name}: no cells")));
        }
        if coboundary.len() + 1 != cells.len() {
            return Err(Error::Dimension(format!("{name}: {} coboundaries for {} dimensions", coboundary.len(), cells.len())));
        }
        for (n, m) in coboundary.iter().enumerate() {
            if m.len() != cells[n + 1].len() || m.iter().any(|r| r.len() != cells[n].len()) {
                return Err(Error::Dimension(format!("{name}: coboundary {n} has the wrong shape")));
            }
        }
        for n in 0..coboundary.len().saturating_sub(1) {
            if compose(&coboundary[n + 1], &coboundary[n]).iter().flatten().any(|&x| x != 0) {
                return Err(Error::DSquared(n));
            }
        }
        Ok(CwModel { name, cells, coboundary })
    }

    fn uniform(name: String, counts: &[usize], label: impl Fn(usize, usize) -> String) -> Self {
        let cells: Vec<Vec<String>> = counts.iter().enumerate().map(|(n, &c)| (0..c).map(|i| label(n, i)).collect()).collect();
        let coboundary = (0..counts.len() - 1).map(|n| zero(counts[n + 1], counts[n])).collect();
        CwModel { name, cells, coboundary }
    }

    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    /// Cellular cochains over `field`.
    pub fn cochains(&self, field: FieldSpec) -> CochainComplex {
        let space = GradedSpace::new(self.cells.clone()).expect("cell labels are unique");
        let d = self
            .coboundary
            .iter()
            .enumerate()
            .map(|(n, m)| {
                let mut out = Matrix::zero(field, self.cells[n + 1].len(), self.cells[n].len());
                for (i, row) in m.iter().enumerate() {
                    for (j, &x) in row.iter().enumerate() {
                        out.set(i, j, field.from_i64(x));
                    }
                }
                out
            })
            .collect();
        CochainComplex::new(field, space, d).expect("coboundary squares to zero")
    }

    /// Cochains filtered by the skeleta: `F^s` is spanned by cells of
    /// dimension `≥ s`.
    pub fn skeletal(&self, field: FieldSpec) -> FilteredComplex {
        let weights = self.cells.iter().enumerate().map(|(n, c)| vec![n as i64; c.len()]).collect();
        FilteredComplex::from_weights(self.cochains(field), weights, Truncation::exact()).expect("skeletal weights are monotone")
    }

    /// Parses `point`, `sphere(r)`, `torus(n)`, `cp(n)`, `hp(n)`, `rp(n)`,
    /// `flag-su3`, `s2-nonminimal` and products `a * b`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split('*').map(str::trim).collect();
        let mut out = Self::atom(parts[0])?;
        for p in &parts[1..] {
            out = product(&out, &Self::atom(p)?);
        }
        Ok(out)
    }

    fn atom(text: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("unknown CW model `{text}`"));
        let (head, arg) = match text.split_once('(') {
            Some((h, rest)) => {
                let n: usize = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
                (h.trim(), Some(n))
            }
            None => (text, None),
        };
        match (head, arg) {
            ("point", None) => Ok(point()),
            ("flag-su3", None) => Ok(flag_su3()),
            ("s2-nonminimal", None) => Ok(sphere_nonminimal()),
            ("sphere", Some(r)) if r >= 1 => Ok(sphere(r)),
            ("torus", Some(n)) => Ok(torus(n)),
            ("cp", Some(n)) => Ok(cp(n)),
            ("hp", Some(n)) => Ok(hp(n)),
            ("rp", Some(n)) => Ok(rp(n)),
            _ => Err(bad()),
        }
    }
}

pub fn point() -> CwModel {
    CwModel::uniform("point".into(), &[1], |_, _| "e0".into())
}

/// `S^r = e^0 ∪ e^r`.
pub fn sphere(r: usize) -> CwModel {
    let mut counts = vec![0; r + 1];
    counts[0] = 1;
    counts[r] = 1;
    CwModel::uniform(format!("sphere({r})"), &counts, |n, _| format!("e{n}"))
}

/// `T^n` as the product of `n` circles.
pub fn torus(n: usize) -> CwModel {
    let mut out = point();
    for _ in 0..n {
        out = product(&out, &sphere(1));
    }
    out.name = format!("torus({n})");
    out
}

fn projective(name: String, step: usize, n: usize) -> CwModel {
    let mut counts = vec![0; step * n + 1];
    for k in 0..=n {
        counts[step * k] = 1;
    }
    CwModel::uniform(name, &counts, |d, _| format!("e{d}"))
}

/// `CP^n`, one cell in each even degree up to `2n`.
pub fn cp(n: usize) -> CwModel {
    projective(format!("cp({n})"), 2, n)
}

/// `CP^∞` truncated to its `bound`-skeleton.
pub fn cp_trunc(bound: usize) -> CwModel {
    let mut m = cp(bound / 2);
    m.name = format!("cp-trunc({bound})");
    m
}

pub fn hp(n: usize) -> CwModel {
    projective(format!("hp({n})"), 4, n)
}

/// `HP^∞` truncated to its `bound`-skeleton.
pub fn hp_trunc(bound: usize) -> CwModel {
    let mut m = hp(bound / 4);
    m.name = format!("hp-trunc({bound})");
    m
}

/// `RP^n` with one cell per degree; `δ: C^{k-1} → C^k` is `1 + (-1)^k`.
pub fn rp(n: usize) -> CwModel {
    let cells = (0..=n).map(|k| vec![format!("e{k}")]).collect();
    let coboundary = (1..=n).map(|k| vec![vec![if k % 2 == 0 { 2 } else { 0 }]]).collect();
    CwModel { name: format!("rp({n})"), cells, coboundary }
}

/// Schubert cells of `SU(3)/T`: counts 1, 2, 2, 1 in degrees 0, 2, 4, 6.
pub fn flag_su3() -> CwModel {
    let names: [&[&str]; 7] = [&["e"], &[], &["s1", "s2"], &[], &["s1s2", "s2s1"], &[], &["w0"]];
    let counts: Vec<usize> = names.iter().map(|c| c.len()).collect();
    CwModel::uniform("flag-su3".into(), &counts, |n, i| names[n][i].to_string())
}

/// `S²` as a circle `e0 ∪ e1` capped by two hemispheres, so that
/// `δ(e1) = e2a - e2b` is nonzero over every field.
pub fn sphere_nonminimal() -> CwModel {
    let cells = vec![vec!["e0".into()], vec!["e1".into()], vec!["e2a".into(), "e2b".into()]];
    let coboundary = vec![zero(1, 1), vec![vec![1], vec![-1]]];
    CwModel { name: "s2-nonminimal".into(), cells, coboundary }
}

/// Product cells `a × b` with `δ(a × b) = δa × b + (-1)^{|a|} a × δb`.
pub fn product(x: &CwModel, y: &CwModel) -> CwModel {
    let top = x.dimension() + y.dimension();
    // index[n] lists (i, a, b) with i the dimension in x
    let mut index: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); top + 1];
    for (i, xa) in x.cells.iter().enumerate() {
        for (j, yb) in y.cells.iter().enumerate() {
            for a in 0..xa.len() {
                for b in 0..yb.len() {
                    index[i + j].push((i, a, b));
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = index
        .iter()
        .enumerate()
        .map(|(n, l)| l.iter().map(|&(i, a, b)| format!("{}×{}", x.cells[i][a], y.cells[n - i][b])).collect())
        .collect();
    let coboundary = (0..top)
        .map(|n| {
            let mut m = zero(index[n + 1].len(), index[n].len());
            for (col, &(i, a, b)) in index[n].iter().enumerate() {
                let j = n - i;
                if i < x.dimension() {
                    for (a2, row) in x.coboundary[i].iter().enumerate() {
                        if row[a] != 0 {
                            let r = index[n + 1].iter().position(|&t| t == (i + 1, a2, b)).expect("product cell");
                            m[r][col] += row[a];
                        }
                    }
                }
                if j < y.dimension() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for (b2, row) in y.coboundary[j].iter().enumerate() {
                        if row[b] != 0 {
                            let r = index[n + 1].iter().position(|&t| t == (i, a, b2)).expect("product cell");
                            m[r][col] += sign * row[b];
                        }
                    }
                }
            }
            m
        })
        .collect();
    CwModel { name: format!("{} * {}", x.name, y.name), cells, coboundary }
}

/// Whether every cellular coboundary vanishes over `field`. This decides
/// minimality of the given structure only, not of the space.
pub fn is_k_minimal(m: &CwModel, field: FieldSpec) -> bool {
    m.coboundary.iter().flatten().flatten().all(|&x| field.is_zero(&field.from_i64(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn f(p: u32) -> FieldSpec {
        FieldSpec::Prime(p)
    }

    #[test]
    fn sphere_cells() {
        let s = sphere(3);
        assert_eq!(s.cell_counts(), vec![1, 0, 0, 1]);
        assert!(s.coboundary.iter().flatten().flatten().all(|&x| x == 0));
    }

    #[test]
    fn rp_coboundaries() {
        let m = rp(3);
        let entries: Vec<i64> = m.coboundary.iter().map(|c| c[0][0]).collect();
        assert_eq!(entries, vec![0, 2, 0]);
        assert!(is_k_minimal(&m, f(2)));
        assert!(!is_k_minimal(&rp(2), Q));
        assert_eq!(rp(4).cochains(Q).betti(), vec![1, 0, 0, 0, 0]);
        assert_eq!(rp(3).cochains(Q).betti(), vec![1, 0, 0, 1]);
        assert_eq!(rp(3).cochains(f(2)).betti(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn flag_dims() {
        let m = flag_su3();
        assert_eq!(m.cell_counts(), vec![1, 0, 2, 0, 2, 0, 1]);
    }

    #[test]
    fn minimal_over_all_fields() {
        for m in [sphere(2), sphere(5), torus(3), cp(3), hp(2), flag_su3(), product(&sphere(2), &cp(2))] {
            for field in [Q, f(2), f(3), f(5)] {
                assert!(is_k_minimal(&m, field), "{} over {field}", m.name);
            }
        }
        assert!(!is_k_minimal(&sphere_nonminimal(), f(2)));
        assert_eq!(sphere_nonminimal().cochains(f(2)).betti(), vec![1, 0, 1]);
    }

    #[test]
    fn torus_counts_are_binomial() {
        assert_eq!(torus(3).cell_counts(), vec![1, 3, 3, 1]);
        assert_eq!(torus(2).cochains(Q).betti(), vec![1, 2, 1]);
    }

    #[test]
    fn product_of_rp_squares_to_zero() {
        let m = product(&rp(3), &rp(2));
        assert!(CwModel::new("check", m.cells.clone(), m.coboundary.clone()).is_ok());
        // Künneth over F2
        assert_eq!(m.cochains(f(2)).betti(), vec![1, 2, 3, 3, 2, 1]);
    }

    #[test]
    fn parse_names() {
        assert_eq!(CwModel::parse("sphere(2)").unwrap(), sphere(2));
        assert_eq!(CwModel::parse("cp(2) * sphere(3)").unwrap().cell_counts(), vec![1, 0, 1, 1, 1, 1, 0, 1]);
        assert!(CwModel::parse("klein").is_err());
        assert!(CwModel::parse("sphere(0)").is_err());
    }

    #[test]
    fn skeletal_filtration_degenerates_for_minimal_models() {
        let ss = crate::engine::compute_spectral_sequence(&cp(3).skeletal(Q), 3);
        assert_eq!(ss.degeneration.page, Some(1));
        let ss = crate::engine::compute_spectral_sequence(&sphere_nonminimal().skeletal(Q), 3);
        assert_eq!(ss.degeneration.page, Some(2));
    }
}
