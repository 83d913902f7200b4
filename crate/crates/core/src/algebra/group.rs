use super::dga::DGAlgebra;
use crate::complex::{CochainComplex, GradedSpace};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix};

fn tuples(l: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| (1..l).map(move |g| [t.clone(), vec![g]].concat())).collect();
    }
    out
}

fn index(l: u32, t: &[u32]) -> usize {
    t.iter().fold(0, |acc, &g| acc * (l as usize - 1) + (g as usize - 1))
}

fn label(t: &[u32]) -> String {
    if t.is_empty() {
        "1".into()
    } else {
        format!("δ({})", t.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Normalized cochains `C^•(BZ/ℓ; F_ℓ)` through degree `top`.
///
/// The degree-`n` basis is the indicator functions `δ(g_1,…,g_n)` of
/// nonzero tuples, the product is the cup product
/// `δ(a) ∪ δ(b) = δ(a,b)` and the differential is the bar differential
/// with trivial coefficients.
pub fn group_cochain_dga(l: u32, top: usize) -> Result<DGAlgebra> {
    let field = FieldSpec::prime(l as u64)?;
    if top > 32 || (l as f64 - 1.0).powi(top as i32) > 1e6 {
        return Err(Error::Bounds(format!("group cochains of Z/{l} to degree {top} are too large")));
    }
    let basis: Vec<Vec<Vec<u32>>> = (0..=top).map(|n| tuples(l, n)).collect();
    let space = GradedSpace::new(basis.iter().map(|ts| ts.iter().map(|t| label(t)).collect()).collect())?;
    let mut d = Vec::with_capacity(top);
    for n in 0..top {
        let mut m = Matrix::zero(field, basis[n + 1].len(), basis[n].len());
        for (row, b) in basis[n + 1].iter().enumerate() {
            let mut add = |face: &[u32], k: i64| {
                let col = index(l, face);
                let v = field.add(m.get(row, col), &field.sign(k));
                m.set(row, col, v);
            };
            add(&b[1..], 0);
            for i in 0..n {
                let g = (b[i] + b[i + 1]) % l;
                if g != 0 {
                    let face: Vec<u32> = b[..i].iter().copied().chain([g]).chain(b[i + 2..].iter().copied()).collect();
                    add(&face, i as i64 + 1);
                }
            }
            add(&b[..n], n as i64 + 1);
        }
        d.push(m);
    }
    let complex = CochainComplex::new(field, space, d)?;
    DGAlgebra::new(
        complex,
        |n, i, m, j| {
            let t = [basis[n][i].clone(), basis[m][j].clone()].concat();
            vec![(index(l, &t), field.one())]
        },
        vec![field.one()],
        false,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_dga;

    #[test]
    fn dims_and_cohomology() {
        let a = group_cochain_dga(2, 6).unwrap();
        assert_eq!(a.dims(), vec![1; 7]);
        assert_eq!(a.cohomology_dims()[..6].to_vec(), vec![1; 6]);
        verify_dga(&a, 0).unwrap();
        let b = group_cochain_dga(3, 5).unwrap();
        assert_eq!(b.dims(), vec![1, 2, 4, 8, 16, 32]);
        assert_eq!(b.cohomology_dims()[..5].to_vec(), vec![1; 5]);
        verify_dga(&b, 0).unwrap();
        let c = group_cochain_dga(5, 3).unwrap();
        assert_eq!(c.cohomology_dims()[..3].to_vec(), vec![1; 3]);
    }

    #[test]
    fn cup_of_degree_one_cochains() {
        let a = group_cochain_dga(3, 3).unwrap();
        let f = a.field();
        // f = 2δ(1) + δ(2), g = δ(1) + 2δ(2); (f ∪ g)(g1, g2) = f(g1) g(g2)
        let fv = vec![f.from_i64(2), f.from_i64(1)];
        let gv = vec![f.from_i64(1), f.from_i64(2)];
        let p = a.mul(1, &fv, 1, &gv).unwrap();
        for g1 in 1..3u32 {
            for g2 in 1..3u32 {
                let expect = f.mul(&fv[g1 as usize - 1], &gv[g2 as usize - 1]);
                assert_eq!(p[index(3, &[g1, g2])], expect);
            }
        }
    }

    #[test]
    fn rejects_composite() {
        assert!(group_cochain_dga(4, 3).is_err());
    }
}
