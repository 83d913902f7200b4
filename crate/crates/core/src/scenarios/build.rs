use super::cw::CwModel;
use super::spec::{AlgebraSpec, CellFiltration, ModuleSpec, YSpec};
use crate::algebra::{free_cdga, group_cochain_dga, polynomial_dga, quotient_dga, restrict_module, verify_module, AlgebraMorphism, DGAlgebra, DGModule, Sparse};
use crate::bar::degree_weights;
use crate::complex::{CochainComplex, GradedSpace};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar};

/// The models of one run: `Z`, the module `N` standing for `Y` and the
/// optional filtration weights of `N`.
#[derive(Clone, Debug)]
pub struct Models {
    pub z: DGAlgebra,
    pub n: DGModule,
    pub weights: Option<Vec<Vec<i64>>>,
    /// The algebra model of `Y` with its map from `Z`, when `Y` is one.
    pub y: Option<(DGAlgebra, AlgebraMorphism)>,
    pub cw: Option<CwModel>,
}

fn borrowed(gens: &[(String, usize)]) -> Vec<(&str, usize)> {
    gens.iter().map(|(l, d)| (l.as_str(), *d)).collect()
}

pub fn build_algebra(spec: &AlgebraSpec, field: FieldSpec, top: usize) -> Result<DGAlgebra> {
    match spec {
        AlgebraSpec::Polynomial { generators, relations } => {
            let a = polynomial_dga(field, &borrowed(generators), top)?;
            if relations.is_empty() {
                Ok(a)
            } else {
                quotient_dga(&a, &relations.iter().map(String::as_str).collect::<Vec<_>>())
            }
        }
        AlgebraSpec::FreeCdga { generators, differentials } => {
            let diffs: Vec<(&str, &str)> = differentials.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            free_cdga(field, &borrowed(generators), &diffs, top)
        }
        AlgebraSpec::GroupCochains { order } => {
            if field != FieldSpec::Prime(*order) {
                return Err(Error::Invalid(format!("group cochains of Z/{order} are only modelled over F{order}, not {field}")));
            }
            group_cochain_dga(*order, top)
        }
    }
}

/// `c` with empty degrees appended up to `top`.
fn pad(c: &CochainComplex, top: usize) -> Result<CochainComplex> {
    let f = c.field();
    if c.len() > top + 1 {
        return Err(Error::Bounds(format!("cellular model has cells above degree {top}")));
    }
    let labels: Vec<Vec<String>> = (0..=top).map(|n| if n < c.len() { c.space().labels(n).to_vec() } else { Vec::new() }).collect();
    let space = GradedSpace::new(labels)?;
    let d = (0..top).map(|n| if n + 1 < c.len() { c.d(n) } else { Matrix::zero(f, space.dim(n + 1), space.dim(n)) }).collect();
    CochainComplex::new(f, space, d)
}

/// Cellular cochains with a polynomial algebra acting through the given
/// generator matrices, extended over monomials by composition.
fn cellular_module(z: &DGAlgebra, cw: &CwModel, action: &[(String, String, Vec<(String, i64)>)], top: usize) -> Result<DGModule> {
    let f = z.field();
    let c = pad(&cw.cochains(f), top)?;
    let mono = z.monomials().ok_or_else(|| Error::Module("a cellular action needs a polynomial Z".into()))?;
    let locate = |label: &str| -> Result<(usize, usize)> {
        (0..=top)
            .find_map(|n| c.space().labels(n).iter().position(|l| l == label).map(|i| (n, i)))
            .ok_or_else(|| Error::Module(format!("unknown cell {label}")))
    };
    // gen_maps[g][(n, i)] = image of cell (n, i)
    let mut gen_maps: Vec<std::collections::HashMap<(usize, usize), Sparse>> = vec![Default::default(); mono.gens.len()];
    for (g, cell, image) in action {
        let gi = mono.generator_index(g).ok_or_else(|| Error::Module(format!("unknown generator {g}")))?;
        let deg = mono.gens[gi].degree;
        let (n, i) = locate(cell)?;
        let mut col: Sparse = Vec::new();
        for (target, coeff) in image {
            let (m, j) = locate(target)?;
            if m != n + deg {
                return Err(Error::Module(format!("{g}·{cell} = {target} has the wrong degree")));
            }
            col.push((j, f.from_i64(*coeff)));
        }
        col.sort_by_key(|(j, _)| *j);
        if gen_maps[gi].insert((n, i), col).is_some() {
            return Err(Error::Module(format!("action of {g} on {cell} given twice")));
        }
    }
    let apply = |g: usize, n: usize, v: &[Scalar]| -> Vec<Scalar> {
        let deg = mono.gens[g].degree;
        let mut out = f.zeros(if n + deg <= top { c.dim(n + deg) } else { 0 });
        for (i, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in gen_maps[g].get(&(n, i)).map_or(&[][..], |s| s.as_slice()) {
                out[*j] = f.add(&out[*j], &f.mul(x, y));
            }
        }
        out
    };
    DGModule::new(z, c.clone(), |n, i, m, j| {
        let exps = &mono.by_degree[n][i];
        let mut deg = m;
        let mut v = f.unit_vector(c.dim(m), j);
        for (g, &k) in exps.iter().enumerate().rev() {
            for _ in 0..k {
                if deg + mono.gens[g].degree > top {
                    return Vec::new();
                }
                v = apply(g, deg, &v);
                deg += mono.gens[g].degree;
            }
        }
        v.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect()
    })
}

/// Builds `Z` with window `top + 1` and the module for `Y` with window
/// `top + 1`.
pub fn build_models(z_spec: &AlgebraSpec, y_spec: &ModuleSpec, field: FieldSpec, top: usize) -> Result<Models> {
    let z = build_algebra(z_spec, field, top + 1)?;
    let cw = y_spec.cells.as_deref().map(CwModel::parse).transpose()?;
    let (n, y) = match &y_spec.model {
        YSpec::Point => (DGModule::trivial(&z), None),
        YSpec::Regular => (DGModule::regular(&z), None),
        YSpec::Algebra { algebra, images } => {
            let y = build_algebra(algebra, field, top + 1)?;
            let imgs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let phi = AlgebraMorphism::from_generators(&z, &y, &imgs)?;
            (restrict_module(&phi, &z, &y)?, Some((y, phi)))
        }
        YSpec::Cellular { action } => {
            let cw = cw.as_ref().ok_or_else(|| Error::Invalid("a cellular Y needs `cells`".into()))?;
            let n = cellular_module(&z, cw, action, top + 1)?;
            verify_module(&z, &n, 0)?;
            (n, None)
        }
    };
    let weights = match y_spec.filtration {
        CellFiltration::Degree => Some(degree_weights(&n)),
        CellFiltration::None => None,
    };
    Ok(Models { z, n, weights, y, cw })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonminimal_sphere_module() {
        let z = AlgebraSpec::Polynomial { generators: vec![("c".into(), 2)], relations: vec![] };
        let y = ModuleSpec {
            model: YSpec::Cellular { action: vec![("c".into(), "e0".into(), vec![("e2a".into(), 1)])] },
            cells: Some("s2-nonminimal".into()),
            filtration: CellFiltration::Degree,
        };
        let m = build_models(&z, &y, FieldSpec::Rationals, 4).unwrap();
        verify_module(&m.z, &m.n, 1).unwrap();
        assert_eq!(m.n.complex().dims(), vec![1, 1, 2, 0, 0, 0]);
        assert_eq!(m.n.complex().betti(), vec![1, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn action_of_wrong_degree_is_rejected() {
        let z = AlgebraSpec::Polynomial { generators: vec![("c".into(), 2)], relations: vec![] };
        let y = ModuleSpec {
            model: YSpec::Cellular { action: vec![("c".into(), "e1".into(), vec![("e2a".into(), 1)])] },
            cells: Some("s2-nonminimal".into()),
            filtration: CellFiltration::Degree,
        };
        // c raises degree by 2, so e1 cannot go to a 2-cell
        assert!(build_models(&z, &y, FieldSpec::Rationals, 4).is_err());
    }

    #[test]
    fn group_cochains_need_their_field() {
        let z = AlgebraSpec::GroupCochains { order: 3 };
        let y = ModuleSpec { model: YSpec::Point, cells: None, filtration: CellFiltration::None };
        assert!(build_models(&z, &y, FieldSpec::Prime(2), 3).is_err());
        assert!(build_models(&z, &y, FieldSpec::Prime(3), 3).is_ok());
    }
}
