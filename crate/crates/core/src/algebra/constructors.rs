use super::dga::{monomial_algebra, DGAlgebra};
use super::monomial::{Generator, MonomialBasis};
use super::poly::parse_poly;
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar};

fn check_generators(gens: &[(&str, usize)]) -> Result<()> {
    for (i, (label, deg)) in gens.iter().enumerate() {
        if *deg == 0 {
            return Err(Error::Algebra(format!("generator {label} has degree 0")));
        }
        if gens[..i].iter().any(|(l, _)| l == label) {
            return Err(Error::Algebra(format!("generator {label} appears twice")));
        }
        if label.is_empty() || !label.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(Error::Algebra(format!("generator label '{label}' is not an identifier")));
        }
    }
    Ok(())
}

/// `K[x_1, …, x_k]` with zero differential, truncated at degree `top`.
/// Odd-degree generators are allowed only in characteristic 2.
pub fn polynomial_dga(field: FieldSpec, gens: &[(&str, usize)], top: usize) -> Result<DGAlgebra> {
    check_generators(gens)?;
    if field.characteristic() != 2 {
        if let Some((l, d)) = gens.iter().find(|(_, d)| d % 2 == 1) {
            return Err(Error::Algebra(format!("polynomial generator {l} has odd degree {d} over {field}")));
        }
    }
    let g = gens.iter().map(|(l, d)| Generator::new(*l, *d, false)).collect();
    monomial_algebra(field, MonomialBasis::new(g, top), &vec![None; gens.len()])
}

/// The free graded-commutative algebra on `gens` (even generators
/// polynomial, odd ones exterior) with the derivation given by `diffs`,
/// each a polynomial string of degree one more than its generator.
/// Generators without an entry are cocycles.
pub fn free_cdga(field: FieldSpec, gens: &[(&str, usize)], diffs: &[(&str, &str)], top: usize) -> Result<DGAlgebra> {
    check_generators(gens)?;
    let g: Vec<Generator> = gens.iter().map(|(l, d)| Generator::new(*l, *d, d % 2 == 1)).collect();
    let basis = MonomialBasis::new(g, top);
    let flat = monomial_algebra(field, basis.clone(), &vec![None; gens.len()])?;
    let mut d_gens: Vec<Option<Vec<Scalar>>> = vec![None; gens.len()];
    for (label, text) in diffs {
        let i = gens.iter().position(|(l, _)| l == label).ok_or_else(|| Error::Algebra(format!("differential given for unknown generator {label}")))?;
        if d_gens[i].is_some() {
            return Err(Error::Algebra(format!("differential of {label} given twice")));
        }
        let expr = parse_poly(text)?;
        let target = gens[i].1 + 1;
        let v = flat.eval_homogeneous(&expr, target)?;
        if target <= top {
            d_gens[i] = Some(v);
        }
    }
    monomial_algebra(field, basis, &d_gens)
}
