use crate::complex::{FilteredComplex, Truncation};
use crate::linalg::restricted_preimage;

/// Deligne's shifted filtration: `(Dec F)^p C^n = {x ∈ F^{p+n} C^n | dx ∈ F^{p+n+1} C^{n+1}}`.
pub fn decalage(fc: &FilteredComplex) -> FilteredComplex {
    let c = fc.complex();
    let top = c.len().saturating_sub(1) as i64;
    let lo = fc.s_min() - top - 1;
    let hi = fc.s_max();
    let levels = (lo..=hi)
        .map(|p| {
            (0..c.len())
                .map(|n| {
                    let s = p + n as i64;
                    let fs = fc.level(s, n).into_owned();
                    if n + 1 >= c.len() {
                        fs
                    } else {
                        restricted_preimage(c.d_ref(n).expect("in window"), &fs, &fc.level(s + 1, n + 1)).expect("shapes")
                    }
                })
                .collect()
        })
        .collect();
    let t = fc.truncation();
    let truncation = Truncation { filtration_floor: None, ..t };
    FilteredComplex::new(c.clone(), lo, levels, truncation).expect("décalage of a valid filtration is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::random::{random_filtered_complex, RandomBounds};
    use crate::complex::CochainComplex;
    use crate::engine::compute_spectral_sequence;
    use crate::linalg::{FieldSpec, Matrix};

    #[test]
    fn acyclic_pair_has_empty_e1() {
        let q = FieldSpec::Rationals;
        let c = CochainComplex::from_dims(q, &[1, 1], vec![Matrix::identity(q, 1)]).unwrap();
        let dec = decalage(&FilteredComplex::trivial(c, 0, Truncation::exact()));
        let ss = compute_spectral_sequence(&dec, 2);
        assert!(ss.page(1).unwrap().entries.iter().all(|e| e.dim == 0));
    }

    #[test]
    fn zero_complex() {
        let q = FieldSpec::Rationals;
        let c = CochainComplex::from_dims(q, &[0, 0], vec![Matrix::zero(q, 0, 0)]).unwrap();
        let dec = decalage(&FilteredComplex::trivial(c, 0, Truncation::exact()));
        assert!(dec.complex().dims().iter().all(|&d| d == 0));
    }

    #[test]
    fn deligne_shift_on_random_complexes() {
        for seed in 0..50 {
            let field = [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)][seed as usize % 3];
            let fc = random_filtered_complex(field, seed, RandomBounds { max_degree: 3, max_dim: 3, steps: 4 });
            let dec = decalage(&fc);
            let a = compute_spectral_sequence(&fc, 5);
            let b = compute_spectral_sequence(&dec, 4);
            for r in 1..=3 {
                for n in 0..fc.complex().len() as i64 {
                    for p in dec.s_min()..=dec.s_max() {
                        assert_eq!(
                            b.page(r).unwrap().dim(p, n),
                            a.page(r + 1).unwrap().dim(p + n, n),
                            "seed {seed}, r {r}, p {p}, n {n}"
                        );
                    }
                }
            }
        }
    }
}
