use super::*;
use crate::algebra::{free_cdga, polynomial_dga};
use crate::engine::{compute_spectral_sequence_sum, zassenhaus_quartet_sum};

fn bounds(max_degree: usize, max_word: usize) -> BarBounds {
    BarBounds { max_degree, max_word }
}

#[test]
fn exterior_on_odd_class_gives_divided_powers() {
    let a = free_cdga(FieldSpec::Rationals, &[("x", 3)], &[], 9).unwrap();
    let k = DGModule::trivial(&a);
    let b = build_bar(&a, &k, &k, bounds(8, 4), None).unwrap();
    assert_eq!(b.betti(), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
}

#[test]
fn polynomial_on_even_class_gives_exterior() {
    let a = polynomial_dga(FieldSpec::Rationals, &[("c", 2)], 7).unwrap();
    let k = DGModule::trivial(&a);
    let b = build_bar(&a, &k, &k, bounds(6, 6), None).unwrap();
    assert_eq!(b.betti()[..6], [1, 1, 0, 0, 0, 0]);
}

#[test]
fn two_sided_bar_is_acyclic() {
    for field in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
        let a = if field == FieldSpec::Prime(2) {
            polynomial_dga(field, &[("x", 2)], 6).unwrap()
        } else {
            free_cdga(field, &[("e", 2), ("y", 3)], &[("y", "e^2")], 6).unwrap()
        };
        let k = DGModule::trivial(&a);
        let r = DGModule::regular(&a);
        let b = build_bar(&a, &k, &r, bounds(5, 6), None).unwrap();
        let h = b.betti();
        assert_eq!(h[0], 1, "{field:?}");
        assert!(h[1..5].iter().all(|&d| d == 0), "{field:?}: {h:?}");
    }
}

#[test]
fn word_counts_match_letter_enumeration() {
    let a = polynomial_dga(FieldSpec::Prime(2), &[("x", 1), ("y", 2)], 6).unwrap();
    let k = DGModule::trivial(&a);
    let b = build_bar(&a, &k, &k, bounds(5, 5), None).unwrap();
    // letters of shifted degree j: dim A^{j+1}
    let shifted: Vec<usize> = (0..=5).map(|j| a.dim(j + 1)).collect();
    let mut counts = vec![vec![0usize; 6]; 6];
    counts[0][0] = 1;
    for k in 1..=5 {
        for d in 0..=5 {
            counts[k][d] = (0..=d).map(|j| shifted[j] * counts[k - 1][d - j]).sum();
        }
    }
    let expected: Vec<usize> = (0..=5).map(|d| (0..=5).map(|k| counts[k][d]).sum()).collect();
    assert_eq!(b.dims(), expected);
    let total: usize = b.words.iter().flatten().map(|l| l.len()).sum();
    assert_eq!(total, expected.iter().sum::<usize>());
}

#[test]
fn assembled_complex_matches_parts() {
    let a = free_cdga(FieldSpec::Rationals, &[("x", 3)], &[], 7).unwrap();
    let k = DGModule::trivial(&a);
    let b = build_bar(&a, &k, &k, bounds(6, 3), None).unwrap();
    let whole = b.assemble();
    assert_eq!(whole.complex().betti(), b.betti());
    assert_eq!(whole.complex().dims(), b.dims());
}

#[test]
fn word_filtration_page_one_is_tor_of_cohomology() {
    // d = 0 on A: the W sequence has E1 = bar construction on H(A) itself
    let a = polynomial_dga(FieldSpec::Rationals, &[("c", 2)], 7).unwrap();
    let k = DGModule::trivial(&a);
    let b = build_bar(&a, &k, &k, bounds(6, 6), None).unwrap();
    let ss = compute_spectral_sequence_sum(&b.w_parts(), 4);
    let e1 = ss.page(1).unwrap();
    assert_eq!(e1.dim(0, 0), 1);
    assert_eq!(e1.dim(-1, 1), 1);
    assert_eq!(e1.dim(-2, 2), 1);
    assert_eq!(e1.dim(-1, 3), 1);
    let e2 = ss.page(2).unwrap();
    assert_eq!(e2.dim(-1, 1), 1);
    assert_eq!(e2.dim(-2, 2), 0);
    assert_eq!(e2.dim(-1, 3), 0);
    assert_eq!(ss.infinity_totals()[..6], [1, 1, 0, 0, 0, 0]);
}

#[test]
fn quartet_on_bar_complex_fits_together() {
    let a = free_cdga(FieldSpec::Rationals, &[("e", 2), ("y", 3)], &[("y", "e^2")], 6).unwrap();
    let k = DGModule::trivial(&a);
    let r = DGModule::regular(&a);
    let b = build_bar(&a, &k, &r, bounds(5, 5), Some(&degree_weights(&r))).unwrap();
    let q = zassenhaus_quartet_sum(&b.parts, 6);
    assert!(q.mismatches.is_empty(), "{:?}", q.mismatches);
}

#[test]
fn rejects_small_windows_and_noncommutative_right_actions() {
    let a = polynomial_dga(FieldSpec::Rationals, &[("c", 2)], 5).unwrap();
    let k = DGModule::trivial(&a);
    assert!(matches!(build_bar(&a, &k, &k, bounds(5, 3), None), Err(Error::Bounds(_))));
    let g = crate::algebra::group_cochain_dga(2, 4).unwrap();
    let r = DGModule::regular(&g);
    let kg = DGModule::trivial(&g);
    assert!(matches!(build_bar(&g, &r, &kg, bounds(3, 3), None), Err(Error::Module(_))));
    assert!(build_bar(&g, &kg, &r, bounds(3, 3), None).is_ok());
}

#[test]
fn rejects_unstable_module_filtration() {
    let a = polynomial_dga(FieldSpec::Rationals, &[("c", 2)], 5).unwrap();
    let k = DGModule::trivial(&a);
    let r = DGModule::regular(&a);
    let mut w = degree_weights(&r);
    w[2][0] = -5;
    assert!(matches!(build_bar(&a, &k, &r, bounds(4, 3), Some(&w)), Err(Error::Filtration(_))));
}
