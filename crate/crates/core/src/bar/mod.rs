//! The normalized bar complex `B(M, A, N)` with its word-length filtration
//! `W` and the filtration `F` induced from a filtration of `N`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{DGAlgebra, DGModule};
use crate::complex::{BifilteredComplex, CochainComplex, FilteredComplex, GradedSpace, Truncation};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar};
use crate::sign::{bar_left_action, bar_product, bar_right_action, koszul, suspended_differential, word_position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarBounds {
    /// Largest total degree kept.
    pub max_degree: usize,
    /// Largest number of letters kept.
    pub max_word: usize,
}

/// `m[a_1|…|a_k]n`, each factor a `(degree, basis index)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarWord {
    pub m: (usize, usize),
    pub letters: Vec<(usize, usize)>,
    pub n: (usize, usize),
    pub degree: usize,
}

impl BarWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// A truncated bar complex, stored as the direct sum of the connected
/// components of its differential.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub bounds: BarBounds,
    pub parts: Vec<BifilteredComplex>,
    /// `words[c][n][i]` is basis element `i` of degree `n` in part `c`.
    pub words: Vec<Vec<Vec<BarWord>>>,
}

impl BarComplex {
    pub fn field(&self) -> FieldSpec {
        self.parts[0].complex().field()
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.bounds.max_degree + 1];
        for p in &self.parts {
            for (n, d) in p.complex().dims().into_iter().enumerate() {
                out[n] += d;
            }
        }
        out
    }

    /// Summed cohomology dimensions.
    pub fn betti(&self) -> Vec<usize> {
        let mut out = vec![0; self.bounds.max_degree + 1];
        for p in &self.parts {
            for (n, d) in p.complex().betti().into_iter().enumerate() {
                out[n] += d;
            }
        }
        out
    }

    pub fn f_parts(&self) -> Vec<FilteredComplex> {
        self.parts.iter().map(|p| p.f.clone()).collect()
    }

    pub fn w_parts(&self) -> Vec<FilteredComplex> {
        self.parts.iter().map(|p| p.w.clone()).collect()
    }

    /// The whole complex as one bifiltered complex with block-diagonal
    /// differential.
    pub fn assemble(&self) -> BifilteredComplex {
        let field = self.field();
        let len = self.bounds.max_degree + 1;
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); len];
        let mut fw: Vec<Vec<i64>> = vec![Vec::new(); len];
        let mut ww: Vec<Vec<i64>> = vec![Vec::new(); len];
        let dims = self.dims();
        let mut d: Vec<Matrix> = (0..len.saturating_sub(1)).map(|n| Matrix::zero(field, dims[n + 1], dims[n])).collect();
        let mut offset = vec![0usize; len];
        for p in &self.parts {
            let c = p.complex();
            for n in 0..len {
                labels[n].extend(c.space().labels(n).iter().cloned());
                fw[n].extend(p.f.weights().expect("coordinate")[n].iter().copied());
                ww[n].extend(p.w.weights().expect("coordinate")[n].iter().copied());
                if n + 1 < len {
                    d[n].set_block(offset[n + 1], offset[n], c.d_ref(n).expect("in window"));
                }
            }
            for n in 0..len {
                offset[n] += c.dim(n);
            }
        }
        let complex = CochainComplex::new(field, GradedSpace::new(labels).expect("unique words"), d).expect("blocks square to zero");
        let f = FilteredComplex::from_weights(complex.clone(), fw, self.parts[0].f.truncation()).expect("valid weights");
        let w = FilteredComplex::from_weights(complex, ww, self.parts[0].w.truncation()).expect("valid weights");
        BifilteredComplex::new(f, w).expect("same complex")
    }
}

/// Which truncations the stored complex carries for its `F` and `W`
/// spectral sequences.
fn truncations(a: &DGAlgebra, bounds: BarBounds) -> (Truncation, Truncation) {
    // least shifted degree of a letter
    let delta = (1..=a.top()).find(|&n| a.dim(n) > 0).map(|n| n - 1);
    let complete = match delta {
        None => None,
        Some(0) => Some(0),
        Some(d) => {
            let c = d * (bounds.max_word + 1);
            (c <= bounds.max_degree + 1).then_some(c)
        }
    };
    let f = Truncation { degree_cap: Some(bounds.max_degree), complete_below: complete, filtration_floor: None };
    let w = Truncation { filtration_floor: Some(-(bounds.max_word as i64)), ..f };
    (f, w)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Degree-based filtration weights of a module: `F^s` is spanned by basis
/// elements of degree `≥ s`.
pub fn degree_weights(n: &DGModule) -> Vec<Vec<i64>> {
    (0..=n.top()).map(|d| vec![d as i64; n.dim(d)]).collect()
}

/// The normalized bar complex `B(M, A, N)` with words of total degree
/// `≤ max_degree` and at most `max_word` letters.
///
/// `M` acts on the right through `m·a = (-1)^{|m||a|} a·m`, which needs `A`
/// graded-commutative unless `M` is an augmentation module. The optional
/// `n_weights` give a coordinate filtration of `N` that must be stable
/// under `d` and the action; `F` on the bar complex filters by the weight
/// of the `N` factor. Without it `F` is the one-step filtration.
pub fn build_bar(a: &DGAlgebra, m: &DGModule, n: &DGModule, bounds: BarBounds, n_weights: Option<&[Vec<i64>]>) -> Result<BarComplex> {
    let f = a.field();
    if m.field() != f || n.field() != f {
        return Err(Error::FieldMismatch(f, if m.field() != f { m.field() } else { n.field() }));
    }
    if a.dim(0) != 1 {
        return Err(Error::Algebra("bar complexes need a connected algebra".into()));
    }
    let nm = bounds.max_degree;
    if a.top() < nm + 1 || m.top() < nm || n.top() < nm {
        return Err(Error::Bounds(format!(
            "windows too small for max_degree {nm}: algebra to {}, modules to {} and {}",
            a.top(),
            m.top(),
            n.top()
        )));
    }
    if !a.is_commutative() && !m.is_augmentation_module() {
        return Err(Error::Module("right action of a noncommutative algebra on M is not available".into()));
    }
    let weights_n: Vec<Vec<i64>> = match n_weights {
        Some(w) => {
            check_module_filtration(a, n, w)?;
            w.to_vec()
        }
        None => (0..=n.top()).map(|d| vec![0; n.dim(d)]).collect(),
    };

    // enumerate words
    let mut words: Vec<BarWord> = Vec::new();
    let mut index: HashMap<BarWord, usize> = HashMap::new();
    let letters: Vec<(usize, usize)> = (1..=a.top()).flat_map(|d| (0..a.dim(d)).map(move |i| (d, i))).collect();
    for k in 0..=bounds.max_word {
        for dm in 0..=nm {
            for im in 0..m.dim(dm) {
                let mut stack = Vec::new();
                extend_words(&letters, k, dm, nm, &mut stack, &mut |seq: &[(usize, usize)], deg: usize| {
                    for dn in 0..=nm - deg {
                        for jn in 0..n.dim(dn) {
                            let w = BarWord { m: (dm, im), letters: seq.to_vec(), n: (dn, jn), degree: deg + dn };
                            index.insert(w.clone(), words.len());
                            words.push(w);
                        }
                    }
                });
            }
        }
    }

    // sparse differential
    let columns: Vec<Vec<(usize, Scalar)>> = words
        .iter()
        .map(|w| if w.degree < nm { differential(a, m, n, w, &index) } else { Ok(Vec::new()) })
        .collect::<Result<_>>()?;

    // connected components
    let mut parent: Vec<usize> = (0..words.len()).collect();
    for (j, col) in columns.iter().enumerate() {
        for (i, _) in col {
            let (x, y) = (find(&mut parent, j), find(&mut parent, *i));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let mut comp: HashMap<usize, usize> = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for j in 0..words.len() {
        let r = find(&mut parent, j);
        let c = *comp.entry(r).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[c].push(j);
    }

    let (tf, tw) = truncations(a, bounds);
    let len = nm + 1;
    let mut parts = Vec::with_capacity(members.len());
    let mut part_words = Vec::with_capacity(members.len());
    for ids in members {
        let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); len];
        for &j in &ids {
            by_degree[words[j].degree].push(j);
        }
        let mut local = HashMap::new();
        for list in &by_degree {
            for (i, &j) in list.iter().enumerate() {
                local.insert(j, i);
            }
        }
        let labels = by_degree.iter().map(|l| l.iter().map(|&j| word_label(a, m, n, &words[j])).collect()).collect();
        let mut d = Vec::with_capacity(nm);
        for deg in 0..nm {
            let mut mat = Matrix::zero(f, by_degree[deg + 1].len(), by_degree[deg].len());
            for (c, &j) in by_degree[deg].iter().enumerate() {
                for (i, v) in &columns[j] {
                    mat.set(local[i], c, v.clone());
                }
            }
            d.push(mat);
        }
        let space = GradedSpace::new(labels)?;
        let complex = CochainComplex::new(f, space, d).map_err(|e| match e {
            Error::DSquared(k) => Error::Algebra(format!("bar differential squares to nonzero out of degree {k}")),
            other => other,
        })?;
        let fw: Vec<Vec<i64>> = by_degree.iter().map(|l| l.iter().map(|&j| weights_n[words[j].n.0][words[j].n.1]).collect()).collect();
        let ww: Vec<Vec<i64>> = by_degree.iter().map(|l| l.iter().map(|&j| -(words[j].len() as i64)).collect()).collect();
        let fc = FilteredComplex::from_weights(complex.clone(), fw, tf)?;
        let wc = FilteredComplex::from_weights(complex, ww, tw)?;
        parts.push(BifilteredComplex::new(fc, wc)?);
        part_words.push(by_degree.iter().map(|l| l.iter().map(|&j| words[j].clone()).collect()).collect());
    }
    if parts.is_empty() {
        let complex = CochainComplex::from_space(f, GradedSpace::from_dims(&vec![0; len]));
        let fc = FilteredComplex::from_weights(complex.clone(), vec![Vec::new(); len], tf)?;
        let wc = FilteredComplex::from_weights(complex, vec![Vec::new(); len], tw)?;
        parts.push(BifilteredComplex::new(fc, wc)?);
        part_words.push(vec![Vec::new(); len]);
    }
    Ok(BarComplex { bounds, parts, words: part_words })
}

/// The Eilenberg–Moore model `B(K, A, N)` of the fiber of `Y → Z`, with
/// `F` induced from a cell filtration of `Y` when given.
pub fn em_model(z: &DGAlgebra, y: &DGModule, cell_weights: Option<&[Vec<i64>]>, bounds: BarBounds) -> Result<BarComplex> {
    build_bar(z, &DGModule::trivial(z), y, bounds, cell_weights)
}

fn extend_words(
    letters: &[(usize, usize)],
    k: usize,
    deg: usize,
    max: usize,
    stack: &mut Vec<(usize, usize)>,
    emit: &mut dyn FnMut(&[(usize, usize)], usize),
) {
    if k == 0 {
        emit(stack, deg);
        return;
    }
    for &l in letters {
        let nd = deg + l.0 - 1;
        if nd > max {
            continue;
        }
        stack.push(l);
        extend_words(letters, k - 1, nd, max, stack, emit);
        stack.pop();
    }
}

fn word_label(a: &DGAlgebra, m: &DGModule, n: &DGModule, w: &BarWord) -> String {
    let ml = m.label(w.m.0, w.m.1);
    let nl = n.label(w.n.0, w.n.1);
    let inner: Vec<&str> = w.letters.iter().map(|&(d, i)| a.label(d, i)).collect();
    format!("{}[{}]{}", if ml == "1" { "" } else { ml }, inner.join("|"), if nl == "1" { "" } else { nl })
}

fn check_module_filtration(a: &DGAlgebra, n: &DGModule, w: &[Vec<i64>]) -> Result<()> {
    let f = a.field();
    if w.len() != n.top() + 1 || (0..=n.top()).any(|d| w[d].len() != n.dim(d)) {
        return Err(Error::Filtration("module weights have the wrong shape".into()));
    }
    for d in 0..n.top() {
        let m = n.complex().d_ref(d).expect("in window");
        for j in 0..n.dim(d) {
            for i in 0..n.dim(d + 1) {
                if !f.is_zero(m.get(i, j)) && w[d + 1][i] < w[d][j] {
                    return Err(Error::Filtration(format!("d lowers the weight of {}", n.label(d, j))));
                }
            }
        }
    }
    for da in 1..=a.top() {
        for ia in 0..a.dim(da) {
            for dx in 0..=n.top().saturating_sub(da) {
                for jx in 0..n.dim(dx) {
                    for (i, _) in n.basis_action(da, ia, dx, jx) {
                        if w[da + dx][*i] < w[dx][jx] {
                            return Err(Error::Filtration(format!(
                                "filtration not action-stable: {} · {}",
                                a.label(da, ia),
                                n.label(dx, jx)
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Accumulates `c · word` into a sparse column.
fn push(out: &mut HashMap<usize, Scalar>, f: FieldSpec, index: &HashMap<BarWord, usize>, w: BarWord, c: Scalar) -> Result<()> {
    if f.is_zero(&c) {
        return Ok(());
    }
    let id = *index.get(&w).ok_or_else(|| Error::Bounds(format!("bar word of degree {} missing from the window", w.degree)))?;
    let e = out.entry(id).or_insert_with(|| f.zero());
    *e = f.add(e, &c);
    Ok(())
}

fn differential(a: &DGAlgebra, m: &DGModule, n: &DGModule, w: &BarWord, index: &HashMap<BarWord, usize>) -> Result<Vec<(usize, Scalar)>> {
    let f = a.field();
    let mut out: HashMap<usize, Scalar> = HashMap::new();
    let k = w.len();
    let deg = w.degree;
    // degree of everything left of letter i, and left of n
    let mut prefix = Vec::with_capacity(k + 1);
    let mut acc = w.m.0 as i64;
    for &(d, _) in &w.letters {
        prefix.push(acc);
        acc += d as i64 - 1;
    }
    prefix.push(acc);

    // internal: d on m
    if let Some(dm) = m.complex().d_ref(w.m.0) {
        for i in 0..m.dim(w.m.0 + 1).min(dm.rows()) {
            let c = dm.get(i, w.m.1).clone();
            push(&mut out, f, index, BarWord { m: (w.m.0 + 1, i), degree: deg + 1, ..w.clone() }, c)?;
        }
    }
    // internal: d on each letter
    for (pos, &(d, i)) in w.letters.iter().enumerate() {
        let da = a.complex().d_ref(d).expect("letter below the top");
        let sign = f.mul(&word_position(f, prefix[pos]), &suspended_differential(f));
        for r in 0..da.rows() {
            let c = da.get(r, i);
            if f.is_zero(c) {
                continue;
            }
            let mut letters = w.letters.clone();
            letters[pos] = (d + 1, r);
            push(&mut out, f, index, BarWord { letters, degree: deg + 1, ..w.clone() }, f.mul(&sign, c))?;
        }
    }
    // internal: d on n
    if let Some(dn) = n.complex().d_ref(w.n.0) {
        let sign = word_position(f, prefix[k]);
        for i in 0..dn.rows() {
            let c = dn.get(i, w.n.1);
            if !f.is_zero(c) {
                push(&mut out, f, index, BarWord { n: (w.n.0 + 1, i), degree: deg + 1, ..w.clone() }, f.mul(&sign, c))?;
            }
        }
    }
    if k > 0 {
        // m · a_1
        let (d1, i1) = w.letters[0];
        if w.m.0 + d1 <= m.top() {
            let sign = f.mul(&bar_left_action(f, w.m.0 as i64, d1 as i64), &koszul(f, w.m.0 as i64, d1 as i64));
            for (r, c) in m.basis_action(d1, i1, w.m.0, w.m.1) {
                let nw = BarWord { m: (w.m.0 + d1, *r), letters: w.letters[1..].to_vec(), n: w.n, degree: deg + 1 };
                push(&mut out, f, index, nw, f.mul(&sign, c))?;
            }
        }
        // a_i a_{i+1}
        for pos in 0..k - 1 {
            let (da, ia) = w.letters[pos];
            let (db, ib) = w.letters[pos + 1];
            if da + db > a.top() {
                return Err(Error::Bounds("letter product beyond the algebra window".into()));
            }
            let sign = f.mul(&word_position(f, prefix[pos]), &bar_product(f, da as i64));
            for (r, c) in a.basis_product(da, ia, db, ib) {
                let mut letters = w.letters[..pos].to_vec();
                letters.push((da + db, *r));
                letters.extend_from_slice(&w.letters[pos + 2..]);
                push(&mut out, f, index, BarWord { letters, degree: deg + 1, ..w.clone() }, f.mul(&sign, c))?;
            }
        }
        // a_k · n
        let (dk, ik) = w.letters[k - 1];
        if w.n.0 + dk <= n.top() {
            let sign = f.mul(&word_position(f, prefix[k - 1]), &bar_right_action(f, dk as i64));
            for (r, c) in n.basis_action(dk, ik, w.n.0, w.n.1) {
                let nw = BarWord { m: w.m, letters: w.letters[..k - 1].to_vec(), n: (w.n.0 + dk, *r), degree: deg + 1 };
                push(&mut out, f, index, nw, f.mul(&sign, c))?;
            }
        }
    }
    let mut col: Vec<(usize, Scalar)> = out.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
    col.sort_by_key(|(i, _)| *i);
    Ok(col)
}

#[cfg(test)]
mod tests;
