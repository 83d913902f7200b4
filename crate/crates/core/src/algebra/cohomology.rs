use super::dga::{build_table, DGAlgebra};
use super::morphism::AlgebraMorphism;
use crate::complex::{CochainComplex, GradedSpace};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Quotient, Scalar};

/// `H(A)` of a connected DG algebra as an algebra with zero differential,
/// in degrees below the top of the window of `A`.
#[derive(Clone, Debug)]
pub struct CohomologyAlgebra {
    pub algebra: DGAlgebra,
    groups: Vec<Quotient>,
    unit_scale: Scalar,
}

impl CohomologyAlgebra {
    /// Coordinates of the class of a cocycle, `None` if `v` is not a cocycle
    /// or lies past the window.
    pub fn class(&self, n: usize, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c = self.groups.get(n)?.class_of(v)?;
        if n == 0 {
            let f = self.algebra.field();
            return Some(c.iter().map(|x| f.mul(x, &self.unit_scale)).collect());
        }
        Some(c)
    }

    /// A cocycle representing basis element `i` of degree `n`.
    pub fn representative(&self, n: usize, i: usize) -> &[Scalar] {
        &self.groups[n].representatives()[i]
    }
}

pub fn cohomology_algebra(a: &DGAlgebra) -> Result<CohomologyAlgebra> {
    let f = a.field();
    if a.dim(0) != 1 {
        return Err(Error::Algebra("cohomology algebras are built for connected algebras".into()));
    }
    if a.top() == 0 {
        return Err(Error::Bounds("window too small for cohomology".into()));
    }
    let c = a.complex();
    let top = a.top() - 1;
    let groups: Vec<Quotient> = (0..=top).map(|n| Quotient::new(c.cocycles(n), c.coboundaries(n))).collect::<Result<_>>()?;
    let e0 = f.unit_vector(1, 0);
    let raw = groups[0].class_of(&e0).ok_or_else(|| Error::Algebra("unit is not a cocycle".into()))?;
    let unit_scale = f.inv(&raw[0]).ok_or_else(|| Error::Algebra("unit is a coboundary".into()))?;
    let class = |n: usize, v: &[Scalar]| -> Vec<Scalar> {
        let c = groups[n].class_of(v).expect("products of cocycles are cocycles");
        if n == 0 {
            c.iter().map(|x| f.mul(x, &unit_scale)).collect()
        } else {
            c
        }
    };
    let rep = |n: usize, i: usize| -> Vec<Scalar> { if n == 0 { e0.clone() } else { groups[n].representatives()[i].clone() } };
    let labels: Vec<Vec<String>> = (0..=top)
        .map(|n| {
            if n == 0 {
                vec!["1".to_string()]
            } else {
                groups[n].representatives().iter().map(|v| format!("[{}]", c.describe(n, v))).collect()
            }
        })
        .collect();
    let dims: Vec<usize> = groups.iter().map(|g| g.dim()).collect();
    let d = (0..top).map(|n| Matrix::zero(f, dims[n + 1], dims[n])).collect();
    let complex = CochainComplex::new(f, GradedSpace::new(labels).unwrap_or_else(|_| GradedSpace::from_dims(&dims)), d)?;
    let table = build_table(&complex, |n, i, m, j| {
        let p = a.mul(n, &rep(n, i), m, &rep(m, j)).expect("inside the window");
        class(n + m, &p).into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect()
    });
    let algebra = DGAlgebra::from_parts(complex, table, vec![f.one()], a.is_commutative(), None)?;
    Ok(CohomologyAlgebra { algebra, groups, unit_scale })
}

/// `H(φ): A → H(B)` for a map `φ: A → B` out of an algebra with zero
/// differential.
pub fn morphism_to_cohomology(phi: &AlgebraMorphism, src: &DGAlgebra, h: &CohomologyAlgebra) -> Result<AlgebraMorphism> {
    let f = src.field();
    if !src.has_zero_differential() {
        return Err(Error::Algebra("source must have zero differential".into()));
    }
    let top = src.top().min(h.algebra.top());
    let maps = (0..=top)
        .map(|n| {
            let cols: Vec<Vec<Scalar>> = (0..src.dim(n))
                .map(|i| {
                    let v = phi.apply(n, &f.unit_vector(src.dim(n), i));
                    h.class(n, &v).ok_or_else(|| Error::Algebra(format!("image of {} is not a cocycle", src.label(n, i))))
                })
                .collect::<Result<_>>()?;
            Matrix::from_cols(f, h.algebra.dim(n), &cols)
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraMorphism::new(src, &h.algebra, maps)
}
