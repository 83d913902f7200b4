use serde::Serialize;

use super::Homogeneous;
use crate::algebra::{ideal_span, DGAlgebra};
use crate::error::Result;
use crate::linalg::Subspace;

/// Outcome of the Hilbert-series test for a sequence `h_1, …, h_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub bound: usize,
    /// `quotient_dims[i][d] = dim (A/(h_1, …, h_i))_d`.
    pub quotient_dims: Vec<Vec<usize>>,
    /// `predicted[i][d]`: coefficients of `HS_A(q) · Π_{j ≤ i} (1 - q^{|h_j|})`.
    pub predicted: Vec<Vec<usize>>,
    /// First `(prefix length, degree)` where the two disagree.
    pub witness: Option<(usize, usize)>,
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        self.witness.is_none()
    }
}

fn ideal_dims(a: &DGAlgebra, gens: &[Homogeneous], bound: usize) -> Result<Vec<Subspace>> {
    (0..=bound).map(|n| ideal_span(a, gens, n)).collect()
}

/// Compares the degreewise dimensions of `A/(h_1, …, h_i)` with the
/// Hilbert-series prediction for every prefix, up to degree `bound`
/// (clamped to the window of `A`).
pub fn is_regular_sequence(a: &DGAlgebra, h: &[Homogeneous], bound: usize) -> Regularity {
    let bound = bound.min(a.top());
    let base: Vec<i64> = (0..=bound).map(|d| a.dim(d) as i64).collect();
    let mut quotient_dims = vec![base.iter().map(|&x| x as usize).collect::<Vec<_>>()];
    let mut predicted = quotient_dims.clone();
    let mut series = base;
    let mut witness = None;
    for i in 1..=h.len() {
        let deg = h[i - 1].0;
        let mut next = series.clone();
        for d in (0..=bound).rev() {
            if d >= deg {
                next[d] -= series[d - deg];
            }
        }
        series = next;
        let ideal = ideal_dims(a, &h[..i], bound).expect("inside the window");
        let q: Vec<usize> = (0..=bound).map(|d| a.dim(d) - ideal[d].dim()).collect();
        if witness.is_none() {
            if let Some(d) = (0..=bound).find(|&d| q[d] as i64 != series[d]) {
                witness = Some((i, d));
            }
        }
        quotient_dims.push(q);
        predicted.push(series.iter().map(|&x| x.max(0) as usize).collect());
    }
    Regularity { bound, quotient_dims, predicted, witness }
}

/// Outcome of the test `HS_M = HS_R · HS_{M/JM}` for `M = B` over the
/// subalgebra `R ⊆ B` generated by given elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Freeness {
    pub bound: usize,
    pub r_dims: Vec<usize>,
    /// `dim (B/J)_d` with `J` the ideal generated by `R` in positive degrees.
    pub quotient_dims: Vec<usize>,
    /// First degree where `dim B_d ≠ Σ_j dim R_j · dim (B/J)_{d-j}`.
    pub witness: Option<usize>,
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        self.witness.is_none()
    }
}

/// Degreewise span of the subalgebra generated by positive-degree `gens`.
pub(crate) fn subalgebra(b: &DGAlgebra, gens: &[Homogeneous], bound: usize) -> Vec<Subspace> {
    let f = b.field();
    let mut out: Vec<Subspace> = Vec::with_capacity(bound + 1);
    out.push(Subspace::coordinate(f, b.dim(0), [0]));
    for d in 1..=bound {
        let mut span = Vec::new();
        for (k, g) in gens {
            if *k == 0 || *k > d {
                continue;
            }
            for r in out[d - k].basis() {
                span.push(b.mul(*k, g, d - k, r).expect("inside the window"));
            }
        }
        out.push(Subspace::span(f, b.dim(d), span).expect("shape"));
    }
    out
}

/// Checks whether `B` is free over the subalgebra generated by `gens`, by
/// Hilbert series up to degree `bound` (clamped to the window of `B`).
pub fn check_freeness(b: &DGAlgebra, gens: &[Homogeneous], bound: usize) -> Freeness {
    let bound = bound.min(b.top());
    let positive: Vec<Homogeneous> = gens.iter().filter(|(d, _)| *d > 0).cloned().collect();
    let r_dims: Vec<usize> = subalgebra(b, &positive, bound).iter().map(|s| s.dim()).collect();
    let ideal = ideal_dims(b, &positive, bound).expect("inside the window");
    let quotient_dims: Vec<usize> = (0..=bound).map(|d| b.dim(d) - ideal[d].dim()).collect();
    let witness = (0..=bound).find(|&d| b.dim(d) != (0..=d).map(|j| r_dims[j] * quotient_dims[d - j]).sum::<usize>());
    Freeness { bound, r_dims, quotient_dims, witness }
}
