use super::*;
use crate::algebra::{
    cohomology_algebra, free_cdga, morphism_to_cohomology, polynomial_dga, quotient_dga, restrict_module, AlgebraMorphism,
};
use crate::linalg::FieldSpec;

const Q: FieldSpec = FieldSpec::Rationals;
const F2: FieldSpec = FieldSpec::Prime(2);

fn nonzero(t: &TorTable) -> Vec<(usize, usize, usize)> {
    t.nonzero().map(|e| (e.k, e.q, e.dim)).collect()
}

fn certified_nonzero(t: &TorTable) -> Vec<(usize, usize, usize)> {
    t.nonzero().filter(|e| e.certified).map(|e| (e.k, e.q, e.dim)).collect()
}

#[test]
fn bar_tor_of_polynomial_on_even_class() {
    let a = polynomial_dga(Q, &[("c", 2)], 8).unwrap();
    let t = tor_via_bar(&a, &DGModule::trivial(&a), BarBounds { max_degree: 7, max_word: 7 }).unwrap();
    assert_eq!(certified_nonzero(&t), vec![(0, 0, 1), (1, 2, 1)]);
    assert!((0..=6).all(|n| t.total_certified(n)));
}

#[test]
fn bar_tor_of_sphere_cohomology() {
    let a = quotient_dga(&polynomial_dga(Q, &[("s", 2)], 9).unwrap(), &["s^2"]).unwrap();
    let t = tor_via_bar(&a, &DGModule::trivial(&a), BarBounds { max_degree: 8, max_word: 8 }).unwrap();
    let got = certified_nonzero(&t);
    assert_eq!(got, (0..=7).map(|k| (k, 2 * k, 1)).collect::<Vec<_>>());
}

#[test]
fn bar_tor_of_free_module() {
    let a = polynomial_dga(Q, &[("c", 2), ("e", 4)], 8).unwrap();
    let t = tor_via_bar(&a, &DGModule::regular(&a), BarBounds { max_degree: 7, max_word: 7 }).unwrap();
    assert_eq!(certified_nonzero(&t), vec![(0, 0, 1)]);
}

#[test]
fn koszul_tor_on_two_generators() {
    let a = polynomial_dga(Q, &[("t1", 2), ("t2", 2)], 8).unwrap();
    let h: Vec<_> = generator_sequence(&a).unwrap().into_iter().map(|(_, g)| g).collect();
    let k = DGModule::trivial(&a);
    let t = koszul_tor(&a, &h, &k, 6).unwrap();
    assert_eq!(nonzero(&t), vec![(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
}

#[test]
fn koszul_tor_of_c_over_w() {
    let w = polynomial_dga(Q, &[("w", 4)], 9).unwrap();
    let c = polynomial_dga(Q, &[("c", 2)], 9).unwrap();
    let phi = AlgebraMorphism::from_generators(&w, &c, &[("w", "c^2")]).unwrap();
    let m = restrict_module(&phi, &w, &c).unwrap();
    let h: Vec<_> = generator_sequence(&w).unwrap().into_iter().map(|(_, g)| g).collect();
    let t = koszul_tor(&w, &h, &m, 8).unwrap();
    assert_eq!(nonzero(&t), vec![(0, 0, 1), (0, 2, 1)]);
}

#[test]
fn koszul_and_bar_routes_agree() {
    let cases: Vec<(DGAlgebra, DGAlgebra, Vec<(&str, &str)>)> = vec![
        (polynomial_dga(Q, &[("w", 4)], 9).unwrap(), polynomial_dga(Q, &[("c", 2)], 9).unwrap(), vec![("w", "c^2")]),
        (
            polynomial_dga(Q, &[("c", 2)], 9).unwrap(),
            quotient_dga(&polynomial_dga(Q, &[("s", 2)], 9).unwrap(), &["s^2"]).unwrap(),
            vec![("c", "s")],
        ),
        (
            polynomial_dga(F2, &[("z2", 2), ("z3", 3)], 8).unwrap(),
            polynomial_dga(F2, &[("x", 1), ("y", 1)], 8).unwrap(),
            vec![("z2", "x*y"), ("z3", "x^2*y + x*y^2")],
        ),
        (
            polynomial_dga(Q, &[("t1", 2), ("t2", 4)], 9).unwrap(),
            polynomial_dga(Q, &[("a", 2), ("b", 2)], 9).unwrap(),
            vec![("t1", "a + b"), ("t2", "a*b")],
        ),
    ];
    for (src, tgt, images) in cases {
        let phi = AlgebraMorphism::from_generators(&src, &tgt, &images).unwrap();
        let m = restrict_module(&phi, &src, &tgt).unwrap();
        let h: Vec<_> = generator_sequence(&src).unwrap().into_iter().map(|(_, g)| g).collect();
        let kt = koszul_tor(&src, &h, &m, 6).unwrap();
        let bt = tor_via_bar(&src, &m, BarBounds { max_degree: 7, max_word: 7 }).unwrap();
        let mut compared = 0;
        for e in bt.entries.iter().filter(|e| e.certified && e.q - e.k <= 6) {
            assert_eq!(e.dim, kt.dim(e.k, e.q), "{images:?} at (k, q) = ({}, {})", e.k, e.q);
            compared += 1;
        }
        for e in kt.nonzero() {
            if bt.certified(e.k, e.q) {
                assert_eq!(e.dim, bt.dim(e.k, e.q));
            }
        }
        assert!(compared > 0);
    }
}

#[test]
fn koszul_rejects_irregular_sequences() {
    let a = polynomial_dga(F2, &[("x", 1), ("y", 1)], 8).unwrap();
    let h = vec![homogeneous(&a, "x*y").unwrap(), homogeneous(&a, "x^2*y + x*y^2").unwrap()];
    let k = DGModule::trivial(&a);
    assert!(matches!(koszul_tor(&a, &h, &k, 4), Err(Error::Algebra(_))));
}

#[test]
fn regular_sequences() {
    let a = polynomial_dga(F2, &[("x", 1), ("y", 1)], 8).unwrap();
    let squares = vec![homogeneous(&a, "x^2").unwrap(), homogeneous(&a, "y^2").unwrap()];
    let r = is_regular_sequence(&a, &squares, 8);
    assert!(r.is_regular());
    assert_eq!(r.quotient_dims[2][..5], [1, 2, 1, 0, 0]);
    let bad = vec![homogeneous(&a, "x*y").unwrap(), homogeneous(&a, "x^2*y + x*y^2").unwrap()];
    let r = is_regular_sequence(&a, &bad, 8);
    assert_eq!(r.witness, Some((2, 3)));
    assert!(is_regular_sequence(&a, &[], 8).is_regular());
}

#[test]
fn freeness() {
    let c = polynomial_dga(Q, &[("c", 2)], 9).unwrap();
    let c2 = homogeneous(&c, "c^2").unwrap();
    let fr = check_freeness(&c, &[c2], 9);
    assert!(fr.is_free());
    assert_eq!(fr.quotient_dims[..4], [1, 0, 1, 0]);
    let all = homogeneous(&c, "c").unwrap();
    let fr = check_freeness(&c, &[all], 9);
    assert!(fr.is_free());
    assert_eq!(fr.quotient_dims.iter().sum::<usize>(), 1);

    let a = polynomial_dga(F2, &[("x", 1), ("y", 1)], 8).unwrap();
    let fr = check_freeness(&a, &[homogeneous(&a, "x*y").unwrap()], 8);
    assert!(fr.is_free());
    assert_eq!(fr.quotient_dims[..5], [1, 2, 2, 2, 2]);
    let fr = check_freeness(&a, &[homogeneous(&a, "x*y").unwrap(), homogeneous(&a, "x^2*y + x*y^2").unwrap()], 8);
    assert_eq!(fr.witness, Some(3));
}

#[test]
fn steenrod_squares() {
    let a = polynomial_dga(F2, &[("x", 1), ("y", 1)], 12).unwrap();
    let x = homogeneous(&a, "x").unwrap();
    let sq = total_steenrod_square(&a, 1, &x.1).unwrap();
    assert_eq!(sq[0], x.1);
    assert_eq!(sq[1], homogeneous(&a, "x^2").unwrap().1);
    let xy = homogeneous(&a, "x*y").unwrap();
    assert_eq!(steenrod_square(&a, 1, 2, &xy.1).unwrap(), homogeneous(&a, "x^2*y + x*y^2").unwrap().1);
    let q = homogeneous(&a, "x^2 + x*y + y^2").unwrap();
    let sq1 = steenrod_square(&a, 1, 2, &q.1).unwrap();
    assert_eq!(sq1, homogeneous(&a, "x^2*y + x*y^2").unwrap().1);
    let sq2sq1 = steenrod_square(&a, 2, 3, &sq1).unwrap();
    let ideal = crate::algebra::ideal_span(&a, &[q.clone(), (3, sq1.clone())], 5).unwrap();
    assert!(ideal.contains_vector(&sq2sq1));
    assert!(!crate::algebra::ideal_span(&a, &[q], 3).unwrap().contains_vector(&sq1));
    assert!(total_steenrod_square(&polynomial_dga(Q, &[("c", 2)], 4).unwrap(), 0, &[Q.one()]).is_err());
}

#[test]
fn analysis_of_w_to_c_squared() {
    let w = polynomial_dga(Q, &[("w", 4)], 12).unwrap();
    let c = polynomial_dga(Q, &[("c", 2)], 12).unwrap();
    let phi = AlgebraMorphism::from_generators(&w, &c, &[("w", "c^2")]).unwrap();
    let an = analyze_morphism(&w, &c, &phi, 10).unwrap();
    assert!(an.kernel_dims.iter().all(|&d| d == 0));
    assert!(an.freeness.is_free());
    match &an.em {
        EmVerdict::Degenerates { e2_totals } => assert_eq!(e2_totals[..], [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
        other => panic!("{other:?}"),
    }
    match &an.ls {
        LsVerdict::Predicted { page, model_page, e_infinity_totals, .. } => {
            assert_eq!(*page, 5);
            assert_eq!(*model_page, Some(5));
            assert_eq!(e_infinity_totals[..9], [1, 0, 1, 0, 0, 0, 0, 0, 0]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn analysis_of_c_to_sphere() {
    let c = polynomial_dga(Q, &[("c", 2)], 10).unwrap();
    let s = quotient_dga(&polynomial_dga(Q, &[("s", 2)], 10).unwrap(), &["s^2"]).unwrap();
    let phi = AlgebraMorphism::from_generators(&c, &s, &[("c", "s")]).unwrap();
    let an = analyze_morphism(&c, &s, &phi, 8).unwrap();
    assert_eq!(an.regular_sequence, vec![("c^2".to_string(), 4)]);
    assert_eq!(an.exterior_generators, vec![("z(c^2)".to_string(), (-1, 4))]);
    match &an.em {
        EmVerdict::Degenerates { e2_totals } => assert_eq!(e2_totals[..], [1, 0, 0, 1, 0, 0, 0, 0, 0]),
        other => panic!("{other:?}"),
    }
    match &an.ls {
        LsVerdict::Predicted { page, model_page, .. } => assert_eq!((*page, *model_page), (3, Some(3))),
        other => panic!("{other:?}"),
    }
}

fn quillen(images: &[(&str, &str)]) -> MorphismAnalysis {
    let z = polynomial_dga(F2, &[("z2", 2), ("z3", 3), ("z5", 5), ("z9", 9)], 10).unwrap();
    let v = polynomial_dga(F2, &[("x", 1), ("y", 1)], 10).unwrap();
    let phi = AlgebraMorphism::from_generators(&z, &v, images).unwrap();
    analyze_morphism(&z, &v, &phi, 9).unwrap()
}

fn squares_of(e: &str) -> Vec<(&'static str, String)> {
    let v = polynomial_dga(F2, &[("x", 1), ("y", 1)], 20).unwrap();
    let h = homogeneous(&v, e).unwrap();
    let s1 = steenrod_square(&v, 1, 2, &h.1).unwrap();
    let s2 = steenrod_square(&v, 2, 3, &s1).unwrap();
    let s4 = steenrod_square(&v, 4, 5, &s2).unwrap();
    let text = |n: usize, x: &[crate::linalg::Scalar]| v.complex().describe(n, x).replace('·', "*");
    vec![("z2", e.to_string()), ("z3", text(3, &s1)), ("z5", text(5, &s2)), ("z9", text(9, &s4))]
}

#[test]
fn quillen_pages() {
    for (class, expected) in [("x*y", 3), ("x^2 + x*y + y^2", 4)] {
        let imgs = squares_of(class);
        let imgs: Vec<(&str, &str)> = imgs.iter().map(|(a, b)| (*a, b.as_str())).collect();
        let an = quillen(&imgs);
        match &an.ls {
            LsVerdict::Predicted { page, model_page, route, .. } => {
                assert_eq!(*page, expected, "{class}: {route}");
                assert_eq!(*model_page, Some(expected), "{class}");
            }
            other => panic!("{class}: {other:?}"),
        }
    }
}

#[test]
fn ustinovskii_is_inconclusive() {
    let y = free_cdga(Q, &[("a", 2), ("b", 2), ("u", 3), ("v", 3), ("t", 3)], &[("u", "a^2"), ("v", "b^2"), ("t", "a*b")], 9).unwrap();
    let z = polynomial_dga(Q, &[("a'", 2), ("b'", 2)], 8).unwrap();
    let phi = AlgebraMorphism::from_generators(&z, &y, &[("a'", "a"), ("b'", "b")]).unwrap();
    let hy = cohomology_algebra(&y).unwrap();
    assert_eq!(hy.algebra.dim(5), 2);
    let hphi = morphism_to_cohomology(&phi, &z, &hy).unwrap();
    let an = analyze_morphism(&z, &hy.algebra, &hphi, 8).unwrap();
    assert!(!an.is_conclusive());
    assert!(an.summary().starts_with(INCONCLUSIVE));
}
