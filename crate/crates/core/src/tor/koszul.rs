use std::collections::HashMap;

use super::regular::is_regular_sequence;
use super::{Homogeneous, TorEntry, TorTable};
use crate::algebra::{DGAlgebra, DGModule, Sparse};
use crate::complex::{CochainComplex, FilteredComplex, GradedSpace, Truncation};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar};

/// The polynomial generators of a monomial algebra, in order, as elements.
pub fn generator_sequence(a: &DGAlgebra) -> Result<Vec<(String, Homogeneous)>> {
    let mono = a.monomials().ok_or_else(|| Error::Algebra("algebra has no named generators".into()))?;
    Ok(mono
        .gens
        .iter()
        .enumerate()
        .filter(|(_, g)| g.degree <= a.top())
        .map(|(i, g)| (g.label.clone(), (g.degree, a.generator_value(i))))
        .collect())
}

/// `m ⊗ ω_S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Cell {
    md: usize,
    mi: usize,
    subset: Vec<usize>,
}

/// Basis of `M ⊗ Λ(ω_1, …, ω_r)` in total degrees `0..=top`, where
/// `ω_j` has total degree `|h_j| - 1`.
fn cells(mdims: &[usize], hdeg: &[usize], top: usize) -> Vec<Vec<Cell>> {
    let r = hdeg.len();
    let mut out = vec![Vec::new(); top + 1];
    let mut subsets: Vec<Vec<usize>> = vec![Vec::new()];
    for j in 0..r {
        let more: Vec<Vec<usize>> = subsets.iter().map(|s| s.iter().copied().chain([j]).collect()).collect();
        subsets.extend(more);
    }
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    for s in &subsets {
        let shift: usize = s.iter().map(|&j| hdeg[j] - 1).sum();
        for (md, &dim) in mdims.iter().enumerate() {
            let n = md + shift;
            if n > top {
                break;
            }
            for mi in 0..dim {
                out[n].push(Cell { md, mi, subset: s.clone() });
            }
        }
    }
    out
}

/// `d(m ⊗ ω_S) = Σ_i (-1)^i (h_{s_i} · m) ⊗ ω_{S ∖ s_i}`.
fn column(field: FieldSpec, cell: &Cell, hdeg: &[usize], act: &dyn Fn(usize, usize, usize) -> Sparse, index: &HashMap<Cell, usize>) -> Result<Sparse> {
    let mut out: HashMap<usize, Scalar> = HashMap::new();
    for (pos, &j) in cell.subset.iter().enumerate() {
        let sign = field.sign(pos as i64);
        let rest: Vec<usize> = cell.subset.iter().copied().filter(|&x| x != j).collect();
        for (i, c) in act(j, cell.md, cell.mi) {
            let target = Cell { md: cell.md + hdeg[j], mi: i, subset: rest.clone() };
            let id = *index.get(&target).ok_or_else(|| Error::Bounds("Koszul term past the module window".into()))?;
            let e = out.entry(id).or_insert_with(|| field.zero());
            *e = field.add(e, &field.mul(&sign, &c));
        }
    }
    let mut col: Sparse = out.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
    col.sort_by_key(|(i, _)| *i);
    Ok(col)
}

fn check_degrees(field: FieldSpec, hdeg: &[usize]) -> Result<()> {
    if let Some(d) = hdeg.iter().find(|&&d| d == 0) {
        return Err(Error::Algebra(format!("Koszul sequence element of degree {d}")));
    }
    if field.characteristic() != 2 && hdeg.iter().any(|d| d % 2 == 1) {
        return Err(Error::Algebra("odd-degree Koszul elements need characteristic 2".into()));
    }
    Ok(())
}

/// `Tor^A(A/(h), M)` from the Koszul complex `M ⊗ Λ(ω_1, …, ω_r)` with
/// `d ω_i = h_i`. With `h` the generators of a polynomial algebra this is
/// `Tor^A(K, M)`. The sequence is checked to be regular in `A` first.
pub fn koszul_tor(a: &DGAlgebra, h: &[Homogeneous], m: &DGModule, max_total: usize) -> Result<TorTable> {
    let f = a.field();
    if m.field() != f {
        return Err(Error::FieldMismatch(f, m.field()));
    }
    if !a.has_zero_differential() || (0..m.top()).any(|d| m.complex().d_ref(d).is_some_and(|x| !x.is_zero())) {
        return Err(Error::Algebra("koszul_tor needs zero differentials".into()));
    }
    if !a.is_commutative() {
        return Err(Error::Algebra("koszul_tor needs a commutative algebra".into()));
    }
    let hdeg: Vec<usize> = h.iter().map(|(d, _)| *d).collect();
    check_degrees(f, &hdeg)?;
    if m.top() < max_total + 1 {
        return Err(Error::Bounds(format!("module window {} is below {}", m.top(), max_total + 1)));
    }
    let reg = is_regular_sequence(a, h, a.top());
    if let Some((prefix, degree)) = reg.witness {
        return Err(Error::Algebra(format!("Koszul sequence is not regular: prefix {prefix} fails in degree {degree}")));
    }
    let mdims: Vec<usize> = (0..=m.top()).map(|d| m.dim(d)).collect();
    let all = cells(&mdims, &hdeg, max_total + 1);
    let act = |j: usize, md: usize, mi: usize| -> Sparse {
        let (d, v) = &h[j];
        m.act(*d, v, md, &f.unit_vector(m.dim(md), mi))
            .map(|w| w.into_iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect())
            .unwrap_or_default()
    };
    // group by (k, q); d preserves q and lowers k
    let kq = |c: &Cell| -> (usize, usize) { (c.subset.len(), c.md + c.subset.iter().map(|&j| hdeg[j]).sum::<usize>()) };
    let mut groups: HashMap<(usize, usize), Vec<Cell>> = HashMap::new();
    for c in all.into_iter().flatten() {
        groups.entry(kq(&c)).or_default().push(c);
    }
    let index: HashMap<Cell, usize> = groups.values().flat_map(|g| g.iter().enumerate().map(|(i, c)| (c.clone(), i))).collect();
    let rank_out = |k: usize, q: usize| -> Result<usize> {
        if k == 0 {
            return Ok(0);
        }
        let Some(src) = groups.get(&(k, q)) else { return Ok(0) };
        let rows = groups.get(&(k - 1, q)).map_or(0, |g| g.len());
        let mut mat = Matrix::zero(f, rows, src.len());
        for (c, cell) in src.iter().enumerate() {
            for (i, v) in column(f, cell, &hdeg, &act, &index)? {
                mat.set(i, c, v);
            }
        }
        Ok(mat.rank())
    };
    let mut entries = Vec::new();
    let mut keys: Vec<(usize, usize)> = groups.keys().copied().filter(|(k, q)| q - k <= max_total).collect();
    keys.sort();
    for (k, q) in keys {
        let dim = groups[&(k, q)].len() - rank_out(k, q)? - rank_out(k + 1, q)?;
        entries.push(TorEntry { k, q, dim, certified: true });
    }
    Ok(TorTable { max_total, entries })
}

/// `H(Y) ⊗ Λ(ω(z_j))` with `d ω(z_j) = f(z_j)`, filtered by the degree in
/// `H(Y)`.
#[derive(Clone, Debug)]
pub struct KoszulModel {
    pub filtered: FilteredComplex,
    pub omegas: Vec<(String, usize)>,
}

/// Builds the Koszul model of `images` (`f(z_j)` in `b`, labelled by
/// `z_j`) in total degrees `≤ cap`.
pub fn koszul_model(b: &DGAlgebra, images: &[(String, Homogeneous)], cap: usize) -> Result<KoszulModel> {
    let f = b.field();
    let hdeg: Vec<usize> = images.iter().map(|(_, (d, _))| *d).collect();
    check_degrees(f, &hdeg)?;
    if b.top() < cap + 1 {
        return Err(Error::Bounds(format!("algebra window {} is below {}", b.top(), cap + 1)));
    }
    let bdims: Vec<usize> = (0..=b.top()).map(|d| b.dim(d)).collect();
    let all = cells(&bdims, &hdeg, cap);
    let index: HashMap<Cell, usize> = all.iter().flat_map(|l| l.iter().enumerate().map(|(i, c)| (c.clone(), i))).collect();
    let act = |j: usize, md: usize, mi: usize| -> Sparse {
        let (d, v) = &images[j].1;
        b.mul(*d, v, md, &f.unit_vector(b.dim(md), mi))
            .map(|w| w.into_iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect())
            .unwrap_or_default()
    };
    let mut d = Vec::with_capacity(cap);
    for n in 0..cap {
        let mut mat = Matrix::zero(f, all[n + 1].len(), all[n].len());
        for (c, cell) in all[n].iter().enumerate() {
            for (i, v) in column(f, cell, &hdeg, &act, &index)? {
                mat.set(i, c, v);
            }
        }
        d.push(mat);
    }
    let label = |c: &Cell| -> String {
        let w: Vec<String> = c.subset.iter().map(|&j| format!("ω({})", images[j].0)).collect();
        let m = b.label(c.md, c.mi);
        match (m == "1", w.is_empty()) {
            (true, true) => "1".into(),
            (true, false) => w.join("·"),
            (false, true) => m.to_string(),
            (false, false) => format!("{m}·{}", w.join("·")),
        }
    };
    let labels = all.iter().map(|l| l.iter().map(label).collect()).collect();
    let complex = CochainComplex::new(f, GradedSpace::new(labels)?, d)?;
    let weights = all.iter().map(|l| l.iter().map(|c| c.md as i64).collect()).collect();
    let filtered = FilteredComplex::from_weights(complex, weights, Truncation::capped(cap))?;
    Ok(KoszulModel { filtered, omegas: images.iter().map(|(l, (d, _))| (l.clone(), *d)).collect() })
}
