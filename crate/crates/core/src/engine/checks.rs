use super::decalage::decalage;
use super::spectral::{compute_spectral_sequence, SpectralSequence};
use crate::complex::FilteredComplex;

/// `Σ_p dim E_∞^{p,n-p} = dim H^n` in every degree where both sides are
/// certified.
pub fn check_abutment(ss: &SpectralSequence) -> Result<(), String> {
    for a in &ss.abutment {
        let n = a.n as i64;
        let cert = a.certified && ss.infinity.entries.iter().filter(|e| e.n() == n).all(|e| e.certified);
        if cert && ss.infinity.total(n) != a.dim {
            return Err(format!("degree {n}: E_inf total {} but H has dim {}", ss.infinity.total(n), a.dim));
        }
    }
    Ok(())
}

fn euler(ss: &SpectralSequence, r: usize) -> Option<i64> {
    let page = ss.page(r).ok()?;
    if page.entries.iter().any(|e| !e.certified) {
        return None;
    }
    Some(page.entries.iter().map(|e| if e.n().rem_euclid(2) == 0 { e.dim as i64 } else { -(e.dim as i64) }).sum())
}

/// The Euler characteristic of `E_r` does not depend on `r ≥ 1`, on pages
/// that are certified throughout.
pub fn check_euler(ss: &SpectralSequence) -> Result<(), String> {
    let values: Vec<(usize, i64)> = (1..=ss.r_max).filter_map(|r| euler(ss, r).map(|x| (r, x))).collect();
    if let Some(&(r0, x0)) = values.first() {
        if let Some(&(r, x)) = values.iter().find(|(_, x)| *x != x0) {
            return Err(format!("Euler characteristic {x0} on E_{r0} but {x} on E_{r}"));
        }
    }
    Ok(())
}

/// `E_{r+1}` is the cohomology of `(E_r, d_r)` at every certified entry.
pub fn check_next_page(ss: &SpectralSequence) -> Result<(), String> {
    for r in 0..ss.r_max {
        let (cur, next) = (&ss.pages[r], &ss.pages[r + 1]);
        for e in &next.entries {
            let n = e.n();
            if !e.certified || !cur.certified(e.p, n) {
                continue;
            }
            let out = cur.differential((e.p, e.q)).map_or(0, |d| d.rank());
            let src = (e.p - r as i64, e.q + r as i64 - 1);
            let inc = cur.differential(src).map_or(0, |d| d.rank());
            let expected = cur.dim(e.p, n) - out - inc;
            if e.dim != expected {
                return Err(format!("E_{} at ({},{}) has dim {} but H(E_{r}, d_{r}) has {expected}", r + 1, e.p, e.q, e.dim));
            }
        }
        for d in &cur.differentials {
            let Some(next_d) = cur.differential(d.to) else { continue };
            if !next_d.matrix.mul(&d.matrix).is_ok_and(|m| m.is_zero()) {
                return Err(format!("d_{r} ∘ d_{r} ≠ 0 at {:?}", d.from));
            }
        }
    }
    Ok(())
}

/// Deligne's identity `dim E_r^{p,n-p}(Dec F) = dim E_{r+1}^{p+n,-p}(F)` for
/// each `r` in `pages`.
pub fn check_deligne(fc: &FilteredComplex, pages: &[usize]) -> Result<(), String> {
    let top = pages.iter().copied().max().unwrap_or(0);
    let a = compute_spectral_sequence(fc, top + 1);
    let dec = decalage(fc);
    let b = compute_spectral_sequence(&dec, top);
    for &r in pages {
        for n in 0..fc.complex().len() as i64 {
            for p in dec.s_min()..=dec.s_max() {
                let (x, y) = (b.pages[r].dim(p, n), a.pages[r + 1].dim(p + n, n));
                if x != y {
                    return Err(format!("r={r}, p={p}, n={n}: Dec side {x}, F side {y}"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::random::{random_filtered_complex, RandomBounds};
    use crate::linalg::FieldSpec;
    use proptest::prelude::*;

    fn field(p: u32) -> FieldSpec {
        if p == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(p) }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn page_invariants(seed in any::<u64>(), p in prop::sample::select(vec![0u32, 2, 3, 5])) {
            let fc = random_filtered_complex(field(p), seed, RandomBounds { max_degree: 3, max_dim: 4, steps: 4 });
            let ss = compute_spectral_sequence(&fc, 5);
            prop_assert_eq!(check_abutment(&ss), Ok(()));
            prop_assert_eq!(check_euler(&ss), Ok(()));
            prop_assert_eq!(check_next_page(&ss), Ok(()));
        }

        #[test]
        fn deligne(seed in any::<u64>(), p in prop::sample::select(vec![0u32, 2, 3])) {
            let fc = random_filtered_complex(field(p), seed, RandomBounds::default());
            prop_assert_eq!(check_deligne(&fc, &[1, 2, 3]), Ok(()));
        }
    }
}
