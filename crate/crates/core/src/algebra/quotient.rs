use super::dga::{build_table, DGAlgebra};
use super::monomial::MonomialBasis;
use super::poly::parse_poly;
use crate::complex::{CochainComplex, GradedSpace};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};

/// Degree-`n` part of the ideal generated by homogeneous elements
/// `(degree, coefficients)`, as the span of `r · b` over basis elements `b`.
pub fn ideal_span(a: &DGAlgebra, gens: &[(usize, Vec<Scalar>)], n: usize) -> Result<Subspace> {
    let f = a.field();
    let mut span = Vec::new();
    for (k, r) in gens {
        if *k > n {
            continue;
        }
        for j in 0..a.dim(n - k) {
            let m = f.unit_vector(a.dim(n - k), j);
            span.push(a.mul(*k, r, n - k, &m).ok_or_else(|| Error::Bounds(format!("degree {n} past the algebra window")))?);
        }
    }
    Subspace::span(f, a.dim(n), span)
}

/// `A / (r_1, …, r_k)` for homogeneous relations in the generators of a
/// monomial algebra. The basis is the set of monomials that are not leading
/// terms of the ideal; the ideal must be stable under `d`.
pub fn quotient_dga(a: &DGAlgebra, relations: &[&str]) -> Result<DGAlgebra> {
    let f = a.field();
    let mono = a.monomials().ok_or_else(|| Error::Algebra("quotients need named generators".into()))?;
    let top = a.top();
    let mut rels: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for text in relations {
        let parts = a.eval(&parse_poly(text)?)?;
        let present: Vec<usize> = (0..=top).filter(|&n| parts[n].as_ref().is_some_and(|v| !f.is_zero_vec(v))).collect();
        match present.as_slice() {
            [] => {}
            [n] => rels.push((*n, parts[*n].clone().expect("present"))),
            _ => return Err(Error::Algebra(format!("relation '{text}' is not homogeneous"))),
        }
    }
    let ideal: Vec<Subspace> = (0..=top).map(|n| ideal_span(a, &rels, n)).collect::<Result<_>>()?;
    if ideal[0].dim() > 0 {
        return Err(Error::Algebra("relations generate the unit ideal".into()));
    }
    for n in 0..top {
        let img = ideal[n].image_under(a.complex().d_ref(n).expect("in window"))?;
        if !ideal[n + 1].contains(&img)? {
            return Err(Error::Algebra(format!("ideal is not closed under d in degree {n}")));
        }
    }
    let keep: Vec<Vec<usize>> = (0..=top).map(|n| (0..a.dim(n)).filter(|i| !ideal[n].pivots().contains(i)).collect()).collect();
    let normal = |n: usize, v: &[Scalar]| -> Vec<Scalar> {
        let r = ideal[n].reduce(v);
        keep[n].iter().map(|&i| r[i].clone()).collect()
    };
    let lift = |n: usize, i: usize| f.unit_vector(a.dim(n), keep[n][i]);
    let labels: Vec<Vec<String>> = (0..=top).map(|n| keep[n].iter().map(|&i| a.label(n, i).to_string()).collect()).collect();
    let d: Vec<Matrix> = (0..top)
        .map(|n| {
            let cols: Vec<Vec<Scalar>> = (0..keep[n].len()).map(|i| normal(n + 1, &a.d(n, &lift(n, i)).expect("in window"))).collect();
            Matrix::from_cols(f, keep[n + 1].len(), &cols)
        })
        .collect::<Result<_>>()?;
    let complex = CochainComplex::new(f, GradedSpace::new(labels)?, d)?;
    let table = build_table(&complex, |n, i, m, j| {
        let p = a.mul(n, &lift(n, i), m, &lift(m, j)).expect("in window");
        normal(n + m, &p).into_iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect()
    });
    let kept = MonomialBasis::from_lists(
        mono.gens.clone(),
        (0..=top).map(|n| keep[n].iter().map(|&i| mono.by_degree[n][i].clone()).collect()).collect(),
    );
    let values = (0..mono.gens.len())
        .map(|g| {
            let v = a.generator_value(g);
            if v.is_empty() { v } else { normal(mono.gens[g].degree, &v) }
        })
        .collect();
    let mut aug = f.zeros(keep[0].len());
    aug[0] = f.one();
    Ok(DGAlgebra::from_parts(complex, table, aug, a.is_commutative(), Some(kept))?.with_generator_values(values))
}
