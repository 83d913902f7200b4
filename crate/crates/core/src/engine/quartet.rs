use serde::Serialize;

use super::spectral::{compute_spectral_sequence_sum, SpectralSequence};
use crate::complex::{BifilteredComplex, Truncation};
use crate::linalg::Matrix;

/// One entry `E_1^{s,t,u} = H^{s+t+u}(Gr_F^s Gr_W^t C)` of the trigraded page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriEntry {
    pub s: i64,
    pub t: i64,
    pub u: i64,
    pub dim: usize,
    pub certified: bool,
}

/// A first differential on the trigraded page, between two `(s,t,u)` triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriDifferential {
    pub from: (i64, i64, i64),
    pub to: (i64, i64, i64),
    pub matrix: Matrix,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriPage {
    pub entries: Vec<TriEntry>,
    /// `d_1^F`, raising `s` by one.
    pub d_f: Vec<TriDifferential>,
    /// `d_1^W`, raising `t` by one.
    pub d_w: Vec<TriDifferential>,
}

impl TriPage {
    pub fn dim(&self, s: i64, t: i64, u: i64) -> usize {
        self.entries.iter().find(|e| (e.s, e.t, e.u) == (s, t, u)).map_or(0, |e| e.dim)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &TriEntry> {
        self.entries.iter().filter(|e| e.dim > 0)
    }
}

/// The four spectral sequences of a bifiltered complex and the page that
/// starts both preludes.
#[derive(Clone, Debug)]
pub struct Quartet {
    pub tri: TriPage,
    /// Sequence of the `F` filtration.
    pub ls: SpectralSequence,
    /// Sequence of the `W` filtration.
    pub em: SpectralSequence,
    /// For each `t`, `Gr_W^t C` filtered by `F`.
    pub prelude_em: Vec<(i64, SpectralSequence)>,
    /// For each `s`, `Gr_F^s C` filtered by `W`.
    pub prelude_ls: Vec<(i64, SpectralSequence)>,
    /// Places where the four sequences fail to fit together.
    pub mismatches: Vec<String>,
}

impl Quartet {
    pub fn prelude_em_at(&self, t: i64) -> Option<&SpectralSequence> {
        self.prelude_em.iter().find(|(k, _)| *k == t).map(|(_, s)| s)
    }

    pub fn prelude_ls_at(&self, s: i64) -> Option<&SpectralSequence> {
        self.prelude_ls.iter().find(|(k, _)| *k == s).map(|(_, s)| s)
    }

    /// Largest degeneration page over all pieces of a prelude, `None` if some
    /// piece does not degenerate within `r_max`.
    pub fn prelude_em_page(&self) -> Option<usize> {
        max_page(&self.prelude_em)
    }

    pub fn prelude_ls_page(&self) -> Option<usize> {
        max_page(&self.prelude_ls)
    }

    pub fn prelude_em_has_nonzero(&self, r: usize) -> bool {
        self.prelude_em.iter().any(|(_, ss)| !ss.nonzero_d(r).is_empty())
    }

    pub fn prelude_ls_has_nonzero(&self, r: usize) -> bool {
        self.prelude_ls.iter().any(|(_, ss)| !ss.nonzero_d(r).is_empty())
    }
}

fn max_page(parts: &[(i64, SpectralSequence)]) -> Option<usize> {
    parts.iter().try_fold(1, |acc, (_, ss)| ss.degeneration.page.map(|p| acc.max(p)))
}

fn prelude_truncation(outer: &Truncation, t: i64) -> Truncation {
    let complete = match outer.filtration_floor {
        Some(f) if t >= f => None,
        _ => outer.complete_below,
    };
    Truncation { degree_cap: outer.degree_cap, complete_below: complete, filtration_floor: None }
}

/// Computes the LS (`F`) and EM (`W`) sequences together with both
/// preludes, and assembles the trigraded page `E_1^{s,t,u}` with
/// `u = n - s - t`.
pub fn zassenhaus_quartet(bc: &BifilteredComplex, r_max: usize) -> Quartet {
    zassenhaus_quartet_sum(std::slice::from_ref(bc), r_max)
}

/// [`zassenhaus_quartet`] for a direct sum of bifiltered complexes.
pub fn zassenhaus_quartet_sum(parts: &[BifilteredComplex], r_max: usize) -> Quartet {
    let fs: Vec<_> = parts.iter().map(|b| b.f.clone()).collect();
    let ws: Vec<_> = parts.iter().map(|b| b.w.clone()).collect();
    let ls = compute_spectral_sequence_sum(&fs, r_max);
    let em = compute_spectral_sequence_sum(&ws, r_max);
    let w_trunc = ws[0].truncation();
    let prelude_em: Vec<(i64, SpectralSequence)> = (em.s_min..=em.s_max)
        .map(|t| {
            let tr = prelude_truncation(&w_trunc, t);
            let pieces: Vec<_> = parts.iter().map(|b| b.w.gr_filtered_by(t, &b.f, tr)).collect();
            (t, compute_spectral_sequence_sum(&pieces, r_max))
        })
        .collect();
    let prelude_ls: Vec<(i64, SpectralSequence)> = (ls.s_min..=ls.s_max)
        .map(|s| {
            let pieces: Vec<_> = parts.iter().map(|b| b.f.gr_filtered_by(s, &b.w, w_trunc)).collect();
            (s, compute_spectral_sequence_sum(&pieces, r_max))
        })
        .collect();

    let mut tri = TriPage::default();
    let mut mismatches = Vec::new();
    for (t, ss) in &prelude_em {
        let Ok(e1) = ss.page(1) else { continue };
        for e in &e1.entries {
            let (s, n) = (e.p, e.n());
            tri.entries.push(TriEntry { s, t: *t, u: n - s - t, dim: e.dim, certified: e.certified });
        }
        for d in &e1.differentials {
            let (s0, n0) = (d.from.0, d.from.0 + d.from.1);
            let (s1, n1) = (d.to.0, d.to.0 + d.to.1);
            tri.d_f.push(TriDifferential {
                from: (s0, *t, n0 - s0 - t),
                to: (s1, *t, n1 - s1 - t),
                matrix: d.matrix.clone(),
            });
        }
    }
    for (s, ss) in &prelude_ls {
        let Ok(e1) = ss.page(1) else { continue };
        for e in &e1.entries {
            let (t, n) = (e.p, e.n());
            let other = tri.dim(*s, t, n - s - t);
            if other != e.dim {
                mismatches.push(format!("E1 at (s,t,n)=({s},{t},{n}): prelude-EM has {other}, prelude-LS has {}", e.dim));
            }
        }
        for d in &e1.differentials {
            let (t0, n0) = (d.from.0, d.from.0 + d.from.1);
            let (t1, n1) = (d.to.0, d.to.0 + d.to.1);
            tri.d_w.push(TriDifferential {
                from: (*s, t0, n0 - s - t0),
                to: (*s, t1, n1 - s - t1),
                matrix: d.matrix.clone(),
            });
        }
    }
    tri.entries.sort_by_key(|e| (e.s, e.t, e.u));

    // Each prelude piece abuts to the E1 entry of the outer sequence.
    for (t, ss) in &prelude_em {
        check_abutment("prelude-EM", "EM", *t, ss, &em, &mut mismatches);
    }
    for (s, ss) in &prelude_ls {
        check_abutment("prelude-LS", "LS", *s, ss, &ls, &mut mismatches);
    }
    Quartet { tri, ls, em, prelude_em, prelude_ls, mismatches }
}

fn check_abutment(
    name: &str,
    outer_name: &str,
    k: i64,
    piece: &SpectralSequence,
    outer: &SpectralSequence,
    out: &mut Vec<String>,
) {
    let Ok(e1) = outer.page(1) else { return };
    for a in &piece.abutment {
        let n = a.n as i64;
        let expected = e1.dim(k, n);
        if a.dim != expected {
            out.push(format!("{name} piece {k} has H^{n} of dim {}, {outer_name} E1 has {expected}", a.dim));
        }
    }
}

/// Compares dimensions of `Gr_F^s Gr_W^t` and `Gr_W^t Gr_F^s` in every
/// degree. Returns the triples `(s,t,n)` where they differ.
pub fn zassenhaus_dims(bc: &BifilteredComplex) -> Vec<(i64, i64, usize)> {
    let mut bad = Vec::new();
    for n in 0..bc.complex().len() {
        for s in bc.f.s_min()..=bc.f.s_max() {
            for t in bc.w.s_min()..=bc.w.s_max() {
                if bc.dim_gr_f_gr_w(s, t, n) != bc.dim_gr_w_gr_f(s, t, n) {
                    bad.push((s, t, n));
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::random::{random_bifiltered_complex, RandomBounds};
    use crate::complex::FilteredComplex;
    use crate::linalg::FieldSpec;
    use proptest::prelude::*;

    fn bounds() -> RandomBounds {
        RandomBounds { max_degree: 3, max_dim: 3, steps: 3 }
    }

    #[test]
    fn quartet_fits_together_on_random_complexes() {
        for seed in 0..30 {
            let bc = random_bifiltered_complex(FieldSpec::Prime(3), seed, bounds());
            let q = zassenhaus_quartet(&bc, 4);
            assert!(q.mismatches.is_empty(), "seed {seed}: {:?}", q.mismatches);
            let tri_total: usize = q.tri.entries.iter().map(|e| e.dim).sum();
            let gr_total: usize = q.em.page(1).unwrap().entries.iter().map(|e| e.dim).sum();
            assert!(tri_total >= gr_total);
        }
    }

    fn forget_weights(fc: &FilteredComplex) -> FilteredComplex {
        let levels = (fc.s_min()..=fc.s_max())
            .map(|s| (0..fc.complex().len()).map(|n| fc.level(s, n).into_owned()).collect())
            .collect();
        FilteredComplex::new(fc.complex().clone(), fc.s_min(), levels, fc.truncation()).unwrap()
    }

    #[test]
    fn coordinate_pieces_match_quotient_pieces() {
        let q = FieldSpec::Rationals;
        let c = crate::complex::CochainComplex::from_dims(q, &[2, 2], vec![Matrix::from_i64(q, &[&[1, 0], &[1, 1]])]).unwrap();
        let f = FilteredComplex::from_weights(c.clone(), vec![vec![0, 1], vec![0, 1]], Truncation::exact()).unwrap();
        let w = FilteredComplex::from_weights(c, vec![vec![0, 0], vec![0, 1]], Truncation::exact()).unwrap();
        let fast = zassenhaus_quartet(&BifilteredComplex::new(f.clone(), w.clone()).unwrap(), 3);
        let slow = zassenhaus_quartet(&BifilteredComplex::new(forget_weights(&f), forget_weights(&w)).unwrap(), 3);
        let nz = |t: &TriPage| t.nonzero().map(|e| (e.s, e.t, e.u, e.dim)).collect::<Vec<_>>();
        assert_eq!(nz(&fast.tri), nz(&slow.tri));
        assert!(fast.mismatches.is_empty() && slow.mismatches.is_empty());
        let ranks = |ds: &[TriDifferential]| ds.iter().map(|d| (d.from, d.matrix.rank())).filter(|x| x.1 > 0).collect::<Vec<_>>();
        assert_eq!(ranks(&fast.tri.d_f), ranks(&slow.tri.d_f));
        assert_eq!(ranks(&fast.tri.d_w), ranks(&slow.tri.d_w));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn zassenhaus_lemma(seed in any::<u64>(), p in prop::sample::select(vec![0u32, 2, 3, 5])) {
            let field = if p == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(p) };
            let bc = random_bifiltered_complex(field, seed, bounds());
            prop_assert!(zassenhaus_dims(&bc).is_empty());
        }
    }
}
