use serde::Serialize;

use super::quartet::Quartet;
use super::spectral::SpectralSequence;

/// Outcome of comparing the EM page `E_1(W)` with the LS page `E_1(F)` after
/// the index shift `(p, n) ↦ (p + n, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DecalageRelation {
    /// One of the preludes has a nonzero differential past `E_1`.
    HypothesisNotMet { prelude: String },
    Checked { holds: bool, failures: Vec<Failure> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub p: i64,
    pub n: i64,
    pub em_dim: usize,
    pub ls_dim: usize,
}

impl DecalageRelation {
    pub fn holds(&self) -> bool {
        matches!(self, DecalageRelation::Checked { holds: true, .. })
    }

    pub fn hypothesis_met(&self) -> bool {
        matches!(self, DecalageRelation::Checked { .. })
    }
}

/// Checks `dim E_1^{p, n-p}(W) = dim E_1^{p+n, -p}(F)` on certified
/// bidegrees, provided both preludes degenerate at `E_1`.
pub fn check_decalage_relation(q: &Quartet) -> DecalageRelation {
    if q.prelude_em_page() != Some(1) {
        return DecalageRelation::HypothesisNotMet { prelude: "prelude-EM".into() };
    }
    if q.prelude_ls_page() != Some(1) {
        return DecalageRelation::HypothesisNotMet { prelude: "prelude-LS".into() };
    }
    let failures = compare_e1(&q.em, &q.ls);
    DecalageRelation::Checked { holds: failures.is_empty(), failures }
}

/// Bidegrees where the shifted `E_1` dimensions differ, restricted to entries
/// certified on both sides.
pub fn compare_e1(em: &SpectralSequence, ls: &SpectralSequence) -> Vec<Failure> {
    let (Ok(a), Ok(b)) = (em.page(1), ls.page(1)) else { return Vec::new() };
    let mut out = Vec::new();
    let keys = a.entries.iter().map(|e| (e.p, e.n())).chain(b.entries.iter().map(|e| (e.p - e.n(), e.n())));
    let mut seen = std::collections::BTreeSet::new();
    for (p, n) in keys {
        if !seen.insert((p, n)) {
            continue;
        }
        let certified = a.certified(p, n) && b.certified(p + n, n);
        let (em_dim, ls_dim) = (a.dim(p, n), b.dim(p + n, n));
        if certified && em_dim != ls_dim {
            out.push(Failure { p, n, em_dim, ls_dim });
        }
    }
    out
}
