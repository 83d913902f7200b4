use std::collections::HashMap;

use crate::complex::FilteredComplex;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits a complex with a coordinate filtration into the connected
/// components of its differential. Returns `None` when the filtration is not
/// a coordinate one or there is only one component.
pub(crate) fn split_coordinate(fc: &FilteredComplex) -> Option<Vec<FilteredComplex>> {
    let weights = fc.weights()?;
    let c = fc.complex();
    let field = c.field();
    let mut offset = Vec::with_capacity(c.len() + 1);
    let mut total = 0;
    for n in 0..c.len() {
        offset.push(total);
        total += c.dim(n);
    }
    let mut parent: Vec<usize> = (0..total).collect();
    for n in 0..c.len().saturating_sub(1) {
        let d = c.d_ref(n)?;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if !field.is_zero(d.get(i, j)) {
                    let a = find(&mut parent, offset[n] + j);
                    let b = find(&mut parent, offset[n + 1] + i);
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut roots: HashMap<usize, usize> = HashMap::new();
    let mut comp_of = vec![0usize; total];
    for x in 0..total {
        let r = find(&mut parent, x);
        let next = roots.len();
        comp_of[x] = *roots.entry(r).or_insert(next);
    }
    if roots.len() <= 1 {
        return None;
    }
    let mut keep: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); c.len()]; roots.len()];
    for n in 0..c.len() {
        for i in 0..c.dim(n) {
            keep[comp_of[offset[n] + i]][n].push(i);
        }
    }
    Some(
        keep.into_iter()
            .map(|k| {
                let sub = c.coordinate_subcomplex(&k);
                let w = (0..c.len()).map(|n| k[n].iter().map(|&i| weights[n][i]).collect()).collect();
                FilteredComplex::from_weights_unchecked(sub, w, fc.truncation())
            })
            .collect(),
    )
}
