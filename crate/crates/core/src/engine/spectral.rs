use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::split::split_coordinate;
use crate::complex::{describe_vector, FilteredComplex, Truncation};
use crate::error::{Error, Result};
use crate::linalg::{induced_map_unchecked, restricted_preimage, Matrix, Quotient, Subspace};

const LABEL_TERMS: usize = 3;

/// One `E_r^{p,q}`; `n = p + q` is the total degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
    pub certified: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
}

impl PageEntry {
    pub fn n(&self) -> i64 {
        self.p + self.q
    }
}

/// `d_r: E_r^{p,q} → E_r^{p+r,q-r+1}` between two nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub matrix: Matrix,
    pub certified: bool,
}

impl Differential {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    pub r: usize,
    pub entries: Vec<PageEntry>,
    pub differentials: Vec<Differential>,
}

impl Page {
    pub fn entry(&self, p: i64, q: i64) -> Option<&PageEntry> {
        self.entries.iter().find(|e| e.p == p && e.q == q)
    }

    /// `dim E_r^{p, n-p}`, zero outside the stored window.
    pub fn dim(&self, p: i64, n: i64) -> usize {
        self.entry(p, n - p).map_or(0, |e| e.dim)
    }

    pub fn certified(&self, p: i64, n: i64) -> bool {
        self.entry(p, n - p).is_none_or(|e| e.certified)
    }

    /// Sum of `dim E_r^{p, n-p}` over `p`.
    pub fn total(&self, n: i64) -> usize {
        self.entries.iter().filter(|e| e.n() == n).map(|e| e.dim).sum()
    }

    pub fn differential(&self, from: (i64, i64)) -> Option<&Differential> {
        self.differentials.iter().find(|d| d.from == from)
    }

    pub fn nonzero_differentials(&self) -> impl Iterator<Item = &Differential> {
        self.differentials.iter().filter(|d| !d.matrix.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degeneration {
    /// Smallest `r ≥ 1` after which every certified `d_s` (`r ≤ s ≤ r_max`)
    /// vanishes; `None` if `d_{r_max}` itself is nonzero.
    pub page: Option<usize>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbutmentDegree {
    pub n: usize,
    pub dim: usize,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequence {
    pub s_min: i64,
    pub s_max: i64,
    pub degrees: usize,
    pub r_max: usize,
    pub truncation: Truncation,
    pub pages: Vec<Page>,
    /// `E_∞^{p,q} = Gr^p H^{p+q}` of the stored complex.
    pub infinity: Page,
    pub abutment: Vec<AbutmentDegree>,
    pub degeneration: Degeneration,
}

impl SpectralSequence {
    pub fn page(&self, r: usize) -> Result<&Page> {
        self.pages.get(r).ok_or(Error::PageOutOfRange(r))
    }

    /// The last computed page.
    pub fn last(&self) -> &Page {
        self.pages.last().expect("page 0 always exists")
    }

    /// `dim E_∞` totals per degree.
    pub fn infinity_totals(&self) -> Vec<usize> {
        (0..self.degrees as i64).map(|n| self.infinity.total(n)).collect()
    }

    pub fn abutment_dims(&self) -> Vec<usize> {
        self.abutment.iter().map(|a| a.dim).collect()
    }

    /// Nonzero certified differentials on page `r`.
    pub fn nonzero_d(&self, r: usize) -> Vec<&Differential> {
        self.pages
            .get(r)
            .map(|p| p.nonzero_differentials().filter(|d| d.certified).collect())
            .unwrap_or_default()
    }
}

/// Per-component worker: memoizes `Z_r^p C^n`.
struct Worker<'a> {
    fc: &'a FilteredComplex,
    z: HashMap<(i64, i64, usize), Subspace>,
}

impl<'a> Worker<'a> {
    fn new(fc: &'a FilteredComplex) -> Self {
        Worker { fc, z: HashMap::new() }
    }

    fn field(&self) -> crate::linalg::FieldSpec {
        self.fc.complex().field()
    }

    /// `Z_r^p C^n = F^p ∩ d^{-1} F^{p+r}`; equals `F^p` for `r ≤ 0`.
    fn z(&mut self, r: i64, p: i64, n: usize) -> Subspace {
        let c = self.fc.complex();
        if n >= c.len() {
            return Subspace::zero(self.field(), 0);
        }
        let r = r.max(0);
        // beyond s_max + 1 the target filtration is already zero
        let r = r.min(self.fc.s_max() + 1 - p).max(0);
        if let Some(s) = self.z.get(&(r, p, n)) {
            return s.clone();
        }
        let fp = self.fc.level(p, n).into_owned();
        let out = if r == 0 || n + 1 >= c.len() {
            fp
        } else {
            let target = self.fc.level(p + r, n + 1);
            restricted_preimage(c.d_ref(n).expect("in window"), &fp, &target).expect("shapes")
        };
        self.z.insert((r, p, n), out.clone());
        out
    }

    fn e(&mut self, r: usize, p: i64, n: usize) -> Quotient {
        let c = self.fc.complex();
        if r == 0 {
            return Quotient::new_unchecked(self.fc.level(p, n).into_owned(), self.fc.level(p + 1, n).into_owned());
        }
        let r = r as i64;
        let top = self.z(r, p, n);
        let mut bottom = self.z(r - 1, p + 1, n);
        if n > 0 {
            let src = self.z(r - 1, p - r + 1, n - 1);
            let img = src.image_under(c.d_ref(n - 1).expect("in window")).expect("shape");
            bottom = bottom.sum(&img).expect("shape");
        }
        Quotient::new_unchecked(top, bottom)
    }

    fn e_infinity(&mut self, p: i64, n: usize) -> Quotient {
        let c = self.fc.complex();
        let cocycles = c.cocycles(n);
        let boundaries = c.coboundaries(n);
        let top = self.fc.level(p, n).intersect(&cocycles).expect("shape");
        let lower = self.fc.level(p + 1, n).intersect(&cocycles).expect("shape");
        let bottom = lower.sum(&self.fc.level(p, n).intersect(&boundaries).expect("shape")).expect("shape");
        Quotient::new_unchecked(top, bottom)
    }
}

struct RawPage {
    dims: HashMap<(i64, usize), usize>,
    labels: HashMap<(i64, usize), Vec<String>>,
    d: HashMap<(i64, usize), Matrix>,
}

fn label(fc: &FilteredComplex, n: usize, q: &Quotient) -> Vec<String> {
    let c = fc.complex();
    q.representatives()
        .iter()
        .map(|v| {
            let nz: Vec<usize> = (0..v.len()).filter(|&i| !c.field().is_zero(&v[i])).collect();
            if nz.len() <= LABEL_TERMS {
                c.describe(n, v)
            } else {
                let mut w = c.field().zeros(v.len());
                for &i in &nz[..LABEL_TERMS] {
                    w[i] = v[i].clone();
                }
                format!("{} + …", describe_vector(c.field(), c.space().labels(n), &w))
            }
        })
        .collect()
}

/// Runs one filtered complex without splitting; pages `0..=r_max` plus `E_∞`.
fn compute_raw(fc: &FilteredComplex, r_max: usize) -> (Vec<RawPage>, RawPage, Vec<usize>) {
    let c = fc.complex();
    let mut w = Worker::new(fc);
    let mut pages = Vec::with_capacity(r_max + 1);
    for r in 0..=r_max {
        let mut quotients: HashMap<(i64, usize), Quotient> = HashMap::new();
        for p in fc.s_min()..=fc.s_max() {
            for n in 0..c.len() {
                if c.dim(n) > 0 {
                    quotients.insert((p, n), w.e(r, p, n));
                }
            }
        }
        let mut raw = RawPage { dims: HashMap::new(), labels: HashMap::new(), d: HashMap::new() };
        for (&(p, n), q) in &quotients {
            raw.dims.insert((p, n), q.dim());
            raw.labels.insert((p, n), label(fc, n, q));
            if q.dim() == 0 || n + 1 >= c.len() {
                continue;
            }
            if let Some(target) = quotients.get(&(p + r as i64, n + 1)) {
                if target.dim() > 0 {
                    let m = induced_map_unchecked(c.d_ref(n).expect("in window"), q, target);
                    raw.d.insert((p, n), m);
                }
            }
        }
        pages.push(raw);
    }
    let mut inf = RawPage { dims: HashMap::new(), labels: HashMap::new(), d: HashMap::new() };
    for p in fc.s_min()..=fc.s_max() {
        for n in 0..c.len() {
            if c.dim(n) > 0 {
                let q = w.e_infinity(p, n);
                inf.dims.insert((p, n), q.dim());
                inf.labels.insert((p, n), label(fc, n, &q));
            }
        }
    }
    (pages, inf, c.betti())
}

/// Block-diagonal merge of per-component raw pages.
fn merge(parts: Vec<RawPage>, r: usize, s_min: i64, s_max: i64, degrees: usize, trunc: &Truncation, field: crate::linalg::FieldSpec, infinity: bool) -> Page {
    let mut entries = Vec::new();
    let mut offsets: HashMap<(i64, usize), Vec<usize>> = HashMap::new();
    for p in s_min..=s_max {
        for n in 0..degrees {
            let mut off = Vec::with_capacity(parts.len());
            let mut total = 0;
            let mut basis = Vec::new();
            for part in &parts {
                off.push(total);
                let k = part.dims.get(&(p, n)).copied().unwrap_or(0);
                total += k;
                if let Some(ls) = part.labels.get(&(p, n)) {
                    basis.extend(ls.iter().cloned());
                }
            }
            offsets.insert((p, n), off);
            let certified = trunc.certifies(p, n, if infinity { None } else { Some(r) });
            entries.push(PageEntry { p, q: n as i64 - p, dim: total, certified, basis });
        }
    }
    let dim_of = |p: i64, n: usize| entries.iter().find(|e| e.p == p && e.n() == n as i64).map_or(0, |e| e.dim);
    let cert_of = |p: i64, n: usize| entries.iter().find(|e| e.p == p && e.n() == n as i64).is_none_or(|e| e.certified);
    let mut differentials = Vec::new();
    if !infinity {
        for p in s_min..=s_max {
            for n in 0..degrees.saturating_sub(1) {
                let tp = p + r as i64;
                let (rows, cols) = (dim_of(tp, n + 1), dim_of(p, n));
                if rows == 0 || cols == 0 {
                    continue;
                }
                let mut m = Matrix::zero(field, rows, cols);
                for (k, part) in parts.iter().enumerate() {
                    if let Some(block) = part.d.get(&(p, n)) {
                        m.set_block(offsets[&(tp, n + 1)][k], offsets[&(p, n)][k], block);
                    }
                }
                differentials.push(Differential {
                    from: (p, n as i64 - p),
                    to: (tp, n as i64 + 1 - tp),
                    matrix: m,
                    certified: cert_of(p, n) && cert_of(tp, n + 1),
                });
            }
        }
    }
    Page { r, entries, differentials }
}

/// The spectral sequence of a filtered complex, pages `0..=r_max` and `E_∞`.
///
/// `E_r^p = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1})` with
/// `Z_r^p = F^p ∩ d^{-1} F^{p+r}`. Coordinate filtrations are split into the
/// connected components of the differential first.
pub fn compute_spectral_sequence(fc: &FilteredComplex, r_max: usize) -> SpectralSequence {
    compute_spectral_sequence_sum(std::slice::from_ref(fc), r_max)
}

/// The spectral sequence of a direct sum of filtered complexes, all with
/// the same field, number of degrees and truncation.
pub fn compute_spectral_sequence_sum(parts: &[FilteredComplex], r_max: usize) -> SpectralSequence {
    assert!(!parts.is_empty(), "direct sum of no complexes");
    let field = parts[0].complex().field();
    let degrees = parts[0].complex().len();
    let trunc = parts[0].truncation();
    assert!(
        parts.iter().all(|p| p.complex().len() == degrees && p.truncation() == trunc && p.complex().field() == field),
        "summands must share field, degrees and truncation"
    );
    let pieces: Vec<FilteredComplex> =
        parts.iter().flat_map(|p| split_coordinate(p).unwrap_or_else(|| vec![p.clone()])).collect();
    let mut raw_pages: Vec<Vec<RawPage>> = (0..=r_max).map(|_| Vec::new()).collect();
    let mut raw_inf = Vec::new();
    let mut betti = vec![0usize; degrees];
    let results = run_parallel(&pieces, r_max);
    for (pages, inf, b) in results {
        for (r, pg) in pages.into_iter().enumerate() {
            raw_pages[r].push(pg);
        }
        raw_inf.push(inf);
        for (n, x) in b.into_iter().enumerate() {
            betti[n] += x;
        }
    }
    let s_min = parts.iter().map(|p| p.s_min()).min().expect("nonempty");
    let s_max = parts.iter().map(|p| p.s_max()).max().expect("nonempty");
    let pages: Vec<Page> = raw_pages
        .into_iter()
        .enumerate()
        .map(|(r, parts)| merge(parts, r, s_min, s_max, degrees, &trunc, field, false))
        .collect();
    let infinity = merge(raw_inf, usize::MAX, s_min, s_max, degrees, &trunc, field, true);
    let abutment = betti
        .iter()
        .enumerate()
        .map(|(n, &dim)| AbutmentDegree { n, dim, certified: trunc.certifies_cohomology(n) })
        .collect();
    let mut ss = SpectralSequence {
        s_min,
        s_max,
        degrees,
        r_max,
        truncation: trunc,
        pages,
        infinity,
        abutment,
        degeneration: Degeneration { page: None, certified: false },
    };
    ss.degeneration = degeneration_page(&ss);
    ss
}

fn run_parallel(parts: &[FilteredComplex], r_max: usize) -> Vec<(Vec<RawPage>, RawPage, Vec<usize>)> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(parts.len()).max(1);
    if threads == 1 || parts.len() < 4 {
        return parts.iter().map(|p| compute_raw(p, r_max)).collect();
    }
    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(parts[i].complex().space().total_dim()));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<(Vec<RawPage>, RawPage, Vec<usize>)>>> =
        parts.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if k >= order.len() {
                    break;
                }
                let i = order[k];
                let out = compute_raw(&parts[i], r_max);
                *slots[i].lock().expect("no poisoning") = Some(out);
            });
        }
    });
    slots.into_iter().map(|s| s.into_inner().expect("no poisoning").expect("computed")).collect()
}

/// Smallest `r ≥ 1` such that every certified `d_s` with `r ≤ s ≤ r_max`
/// vanishes; certified when the certified part of `E_{r_max}` already
/// matches the abutment in some degree and nowhere disagrees with it.
pub fn degeneration_page(ss: &SpectralSequence) -> Degeneration {
    let mut page = None;
    for r in (1..=ss.r_max).rev() {
        if ss.nonzero_d(r).is_empty() {
            page = Some(r);
        } else {
            break;
        }
    }
    let last = ss.last();
    let mut any = false;
    let mut agree = true;
    for a in &ss.abutment {
        let n = a.n as i64;
        let entries: Vec<&PageEntry> = last.entries.iter().filter(|e| e.n() == n).collect();
        if !a.certified || entries.iter().any(|e| !e.certified) {
            continue;
        }
        any = true;
        if last.total(n) != a.dim {
            agree = false;
        }
    }
    Degeneration { page, certified: page.is_some() && any && agree }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{CochainComplex, GradedSpace};
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn one_step_filtration_degenerates_at_one() {
        let c = CochainComplex::from_dims(Q, &[2, 1], vec![Matrix::from_i64(Q, &[&[-1, 1]])]).unwrap();
        let ss = compute_spectral_sequence(&FilteredComplex::trivial(c, 0, Truncation::exact()), 3);
        assert_eq!(ss.page(1).unwrap().dim(0, 0), 1);
        assert_eq!(ss.page(1).unwrap().dim(0, 1), 0);
        assert_eq!(ss.degeneration, Degeneration { page: Some(1), certified: true });
    }

    #[test]
    fn sphere_three_cells() {
        let c = CochainComplex::from_space(Q, GradedSpace::from_dims(&[1, 0, 0, 1]));
        let fc = FilteredComplex::from_weights(c, vec![vec![0], vec![], vec![], vec![3]], Truncation::exact()).unwrap();
        let ss = compute_spectral_sequence(&fc, 4);
        let e1 = ss.page(1).unwrap();
        assert_eq!(e1.dim(0, 0), 1);
        assert_eq!(e1.dim(3, 3), 1);
        assert_eq!(e1.entries.iter().map(|e| e.dim).sum::<usize>(), 2);
        assert_eq!(ss.degeneration.page, Some(1));
    }

    #[test]
    fn interval_cells_kill_each_other() {
        let c = CochainComplex::from_dims(Q, &[2, 1], vec![Matrix::from_i64(Q, &[&[-1, 1]])]).unwrap();
        let fc = FilteredComplex::from_weights(c, vec![vec![0, 0], vec![1]], Truncation::exact()).unwrap();
        let ss = compute_spectral_sequence(&fc, 3);
        let e1 = ss.page(1).unwrap();
        assert_eq!((e1.dim(0, 0), e1.dim(1, 1)), (2, 1));
        assert_eq!(e1.differential((0, 0)).unwrap().rank(), 1);
        let e2 = ss.page(2).unwrap();
        assert_eq!((e2.dim(0, 0), e2.dim(1, 1)), (1, 0));
        assert_eq!(ss.degeneration.page, Some(2));
    }
}
