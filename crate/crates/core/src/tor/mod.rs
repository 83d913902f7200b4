//! Tor over graded algebras, regular sequences and freeness, and the
//! degeneracy criteria for the Eilenberg–Moore and Leray–Serre sequences
//! of a principal fibration.

mod analysis;
mod koszul;
mod regular;
mod steenrod;

pub use analysis::{analyze_morphism, EmVerdict, LsVerdict, MorphismAnalysis, Transgression, INCONCLUSIVE};
pub use koszul::{generator_sequence, koszul_model, koszul_tor, KoszulModel};
pub use regular::{check_freeness, is_regular_sequence, Freeness, Regularity};
pub use steenrod::{steenrod_square, total_steenrod_square};

use serde::Serialize;

use crate::algebra::{poly::parse_poly, DGAlgebra, DGModule};
use crate::bar::{build_bar, BarBounds};
use crate::engine::compute_spectral_sequence_sum;
use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// A homogeneous element: its degree and coordinates in that degree.
pub type Homogeneous = (usize, Vec<Scalar>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorEntry {
    /// Homological degree `-p`.
    pub k: usize,
    /// Internal degree.
    pub q: usize,
    pub dim: usize,
    pub certified: bool,
}

/// `Tor_k(−,−)^q` for total degrees `q - k ≤ max_total`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorTable {
    pub max_total: usize,
    pub entries: Vec<TorEntry>,
}

impl TorTable {
    pub fn dim(&self, k: usize, q: usize) -> usize {
        self.entries.iter().find(|e| e.k == k && e.q == q).map_or(0, |e| e.dim)
    }

    pub fn certified(&self, k: usize, q: usize) -> bool {
        self.entries.iter().find(|e| e.k == k && e.q == q).is_some_and(|e| e.certified)
    }

    /// Dimensions summed over `q - k = n`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_total + 1];
        for e in &self.entries {
            out[e.q - e.k] += e.dim;
        }
        out
    }

    /// Whether every entry of total degree `n` is certified.
    pub fn total_certified(&self, n: usize) -> bool {
        self.entries.iter().filter(|e| e.q - e.k == n).all(|e| e.certified)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &TorEntry> {
        self.entries.iter().filter(|e| e.dim > 0)
    }
}

/// Parses a homogeneous polynomial in the named generators of `a`.
pub fn homogeneous(a: &DGAlgebra, text: &str) -> Result<Homogeneous> {
    let f = a.field();
    let parts = a.eval(&parse_poly(text)?)?;
    let present: Vec<usize> = (0..parts.len()).filter(|&n| parts[n].as_ref().is_some_and(|v| !f.is_zero_vec(v))).collect();
    match present.as_slice() {
        [n] => Ok((*n, parts[*n].clone().expect("present"))),
        [] if parts.iter().all(|p| p.is_some()) => Ok((0, f.zeros(a.dim(0)))),
        [] => Err(Error::Bounds(format!("'{text}' lies past the algebra window"))),
        _ => Err(Error::Algebra(format!("'{text}' is not homogeneous"))),
    }
}

/// `Tor^A(K, N)` as the homology of the bar complex `B(K, A, N)` in each
/// word length, for `A` and `N` with zero differential.
pub fn tor_via_bar(a: &DGAlgebra, n: &DGModule, bounds: BarBounds) -> Result<TorTable> {
    if !a.has_zero_differential() {
        return Err(Error::Algebra("tor_via_bar needs an algebra with zero differential".into()));
    }
    if (0..n.top()).any(|d| n.complex().d_ref(d).is_some_and(|m| !m.is_zero())) {
        return Err(Error::Module("tor_via_bar needs a module with zero differential".into()));
    }
    let bar = build_bar(a, &DGModule::trivial(a), n, bounds, None)?;
    let ss = compute_spectral_sequence_sum(&bar.w_parts(), 2);
    let e2 = ss.page(2)?;
    let mut entries: Vec<TorEntry> = e2
        .entries
        .iter()
        .filter(|e| e.p <= 0)
        .map(|e| {
            let k = (-e.p) as usize;
            let total = e.n() as usize;
            TorEntry { k, q: total + k, dim: e.dim, certified: e.certified }
        })
        .collect();
    entries.sort_by_key(|e| (e.k, e.q));
    Ok(TorTable { max_total: bounds.max_degree, entries })
}

#[cfg(test)]
mod tests;
