use super::dga::DGAlgebra;
use super::module::DGModule;
use super::poly::parse_poly;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// A map of DG algebras, one matrix per degree `0..=min(top_A, top_B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    maps: Vec<Matrix>,
}

impl AlgebraMorphism {
    pub fn new(src: &DGAlgebra, tgt: &DGAlgebra, maps: Vec<Matrix>) -> Result<Self> {
        let top = src.top().min(tgt.top());
        if maps.len() != top + 1 {
            return Err(Error::Dimension(format!("need {} matrices, got {}", top + 1, maps.len())));
        }
        for (n, m) in maps.iter().enumerate() {
            if m.rows() != tgt.dim(n) || m.cols() != src.dim(n) {
                return Err(Error::Dimension(format!("degree {n}: expected {}×{}, got {}×{}", tgt.dim(n), src.dim(n), m.rows(), m.cols())));
            }
        }
        Ok(AlgebraMorphism { maps })
    }

    pub fn identity(a: &DGAlgebra) -> Self {
        AlgebraMorphism { maps: (0..=a.top()).map(|n| Matrix::identity(a.field(), a.dim(n))).collect() }
    }

    /// Extends `generator ↦ polynomial` multiplicatively over the monomial
    /// basis of `src`. Every generator of `src` needs an image.
    pub fn from_generators(src: &DGAlgebra, tgt: &DGAlgebra, images: &[(&str, &str)]) -> Result<Self> {
        let f = src.field();
        let mono = src.monomials().ok_or_else(|| Error::Algebra("source has no named generators".into()))?;
        let top = src.top().min(tgt.top());
        let mut gen_images: Vec<Option<Vec<Scalar>>> = vec![None; mono.gens.len()];
        for (label, text) in images {
            let g = mono.generator_index(label).ok_or_else(|| Error::Algebra(format!("unknown source generator {label}")))?;
            gen_images[g] = Some(tgt.eval_homogeneous(&parse_poly(text)?, mono.gens[g].degree)?);
        }
        if let Some(g) = gen_images.iter().position(|x| x.is_none()) {
            return Err(Error::Algebra(format!("no image for generator {}", mono.gens[g].label)));
        }
        let maps = (0..=top)
            .map(|n| {
                let cols: Vec<Vec<Scalar>> = mono.by_degree[n]
                    .iter()
                    .map(|e| {
                        let mut acc = (0usize, f.unit_vector(tgt.dim(0), 0));
                        for (g, &k) in e.iter().enumerate() {
                            let deg = mono.gens[g].degree;
                            let img = gen_images[g].as_ref().expect("checked");
                            for _ in 0..k {
                                acc = (acc.0 + deg, tgt.mul(acc.0, &acc.1, deg, img).expect("within the window"));
                            }
                        }
                        acc.1
                    })
                    .collect();
                Matrix::from_cols(f, tgt.dim(n), &cols)
            })
            .collect::<Result<_>>()?;
        AlgebraMorphism::new(src, tgt, maps)
    }

    pub fn top(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn matrix(&self, n: usize) -> &Matrix {
        &self.maps[n]
    }

    pub fn apply(&self, n: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.maps[n].apply(v).expect("shape")
    }
}

/// Checks that `φ` commutes with `d`, is multiplicative on all basis pairs,
/// and preserves unit and augmentation.
pub fn verify_morphism(src: &DGAlgebra, tgt: &DGAlgebra, phi: &AlgebraMorphism) -> Result<()> {
    let f = src.field();
    let top = phi.top();
    for n in 0..top {
        let lhs = phi.maps[n + 1].mul(src.complex().d_ref(n).expect("window"))?;
        let rhs = tgt.complex().d_ref(n).expect("window").mul(&phi.maps[n])?;
        if lhs != rhs {
            return Err(Error::Algebra(format!("morphism does not commute with d in degree {n}")));
        }
    }
    if phi.apply(0, &f.unit_vector(src.dim(0), 0)) != f.unit_vector(tgt.dim(0), 0) {
        return Err(Error::Algebra("morphism does not preserve the unit".into()));
    }
    for i in 0..src.dim(0) {
        let img = phi.apply(0, &f.unit_vector(src.dim(0), i));
        let eps = img.iter().zip(tgt.augmentation()).fold(f.zero(), |s, (c, e)| f.add(&s, &f.mul(c, e)));
        if eps != src.augmentation()[i] {
            return Err(Error::Algebra("morphism does not preserve the augmentation".into()));
        }
    }
    for n in 0..=top {
        for m in 0..=top - n {
            for i in 0..src.dim(n) {
                for j in 0..src.dim(m) {
                    let (a, b) = (f.unit_vector(src.dim(n), i), f.unit_vector(src.dim(m), j));
                    let lhs = phi.apply(n + m, &src.mul(n, &a, m, &b).expect("window"));
                    let rhs = tgt.mul(n, &phi.apply(n, &a), m, &phi.apply(m, &b)).expect("window");
                    if lhs != rhs {
                        return Err(Error::Algebra(format!("morphism is not multiplicative on {} · {}", src.label(n, i), src.label(m, j))));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `tgt` as a module over `src` through `φ`: `a · b = φ(a) b`.
pub fn restrict_module(phi: &AlgebraMorphism, src: &DGAlgebra, tgt: &DGAlgebra) -> Result<DGModule> {
    if src.top() < tgt.top() {
        return Err(Error::Bounds(format!("source window {} is smaller than target window {}", src.top(), tgt.top())));
    }
    let f = src.field();
    DGModule::new(src, tgt.complex().clone(), |n, i, m, j| {
        let a = phi.apply(n, &f.unit_vector(src.dim(n), i));
        let p = tgt.mul(n, &a, m, &f.unit_vector(tgt.dim(m), j)).expect("window");
        p.into_iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{free_cdga, polynomial_dga, verify_module};
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn identity_gives_regular_module() {
        let a = polynomial_dga(Q, &[("c", 2)], 6).unwrap();
        let m = restrict_module(&AlgebraMorphism::identity(&a), &a, &a).unwrap();
        verify_module(&a, &m, 0).unwrap();
        let r = DGModule::regular(&a);
        for n in 0..=6 {
            for i in 0..a.dim(n) {
                assert_eq!(m.basis_action(n, i, 0, 0), r.basis_action(n, i, 0, 0));
            }
        }
    }

    #[test]
    fn w_acts_as_c_squared() {
        let hp = polynomial_dga(Q, &[("w", 4)], 12).unwrap();
        let cp = polynomial_dga(Q, &[("c", 2)], 12).unwrap();
        let phi = AlgebraMorphism::from_generators(&hp, &cp, &[("w", "c^2")]).unwrap();
        verify_morphism(&hp, &cp, &phi).unwrap();
        let m = restrict_module(&phi, &hp, &cp).unwrap();
        verify_module(&hp, &m, 0).unwrap();
        assert_eq!(m.basis_action(4, 0, 0, 0), &vec![(0, Q.one())]);
        assert_eq!(m.label(4, 0), "c^2");
    }

    #[test]
    fn ustinovskii_pair_is_a_dga_map() {
        let z = polynomial_dga(Q, &[("a'", 2), ("b'", 2)], 7).unwrap();
        let y = free_cdga(Q, &[("a", 2), ("b", 2), ("u", 3), ("v", 3), ("t", 3)], &[("u", "a^2"), ("v", "b^2"), ("t", "a b")], 7).unwrap();
        let phi = AlgebraMorphism::from_generators(&z, &y, &[("a'", "a"), ("b'", "b")]).unwrap();
        verify_morphism(&z, &y, &phi).unwrap();
        let m = restrict_module(&phi, &z, &y).unwrap();
        verify_module(&z, &m, 3).unwrap();
    }

    #[test]
    fn non_multiplicative_map_is_caught() {
        let src = crate::algebra::quotient_dga(&polynomial_dga(FieldSpec::Prime(2), &[("x", 1)], 4).unwrap(), &["x^2"]).unwrap();
        let tgt = polynomial_dga(FieldSpec::Prime(2), &[("t", 1)], 4).unwrap();
        let phi = AlgebraMorphism::from_generators(&src, &tgt, &[("x", "t")]).unwrap();
        assert!(verify_morphism(&src, &tgt, &phi).is_err());
    }

    #[test]
    fn trivial_module() {
        let a = polynomial_dga(Q, &[("c", 2)], 6).unwrap();
        let k = DGModule::trivial(&a);
        verify_module(&a, &k, 0).unwrap();
        assert_eq!(k.top(), 6);
        assert!(k.is_augmentation_module());
        assert!(!DGModule::regular(&a).is_augmentation_module());
    }
}
