use serde::Serialize;

use super::koszul::{generator_sequence, koszul_model};
use super::regular::{check_freeness, is_regular_sequence, Freeness, Regularity};
use super::Homogeneous;
use crate::algebra::{ideal_span, verify_morphism, AlgebraMorphism, DGAlgebra, MonomialBasis};
use crate::engine::compute_spectral_sequence;
use crate::error::{Error, Result};
use crate::linalg::{kernel, Matrix, Subspace};

pub const INCONCLUSIVE: &str = "criteria inconclusive";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EmVerdict {
    /// `E_2 ≅ E_∞ ≅ Λ(z_i) ⊗ H(Y)/J`, with these totals per degree.
    Degenerates { e2_totals: Vec<usize> },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transgression {
    pub generator: String,
    pub degree: usize,
    pub image: String,
    /// Whether `f(z)` survives modulo the images of lower generators, so that
    /// `d_{|z|}(ω(z))` is nonzero.
    pub effective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LsVerdict {
    Predicted {
        /// Which hypothesis justified the prediction.
        route: String,
        transgressions: Vec<Transgression>,
        /// `max{|z| : d_{|z|}(ω(z)) ≠ 0} + 1`.
        page: usize,
        /// Degeneration page of the Koszul model filtered by the base degree.
        model_page: Option<usize>,
        e_infinity_totals: Vec<usize>,
    },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismAnalysis {
    pub bound: usize,
    #[serde(skip)]
    pub f_degreewise: Vec<Matrix>,
    pub f_ranks: Vec<usize>,
    pub kernel_dims: Vec<usize>,
    pub kernel_generators: Vec<(String, usize)>,
    pub image_dims: Vec<usize>,
    pub ideal_j_dims: Vec<usize>,
    pub regular_sequence: Vec<(String, usize)>,
    pub regularity: Regularity,
    pub freeness: Freeness,
    /// `z_i` with bidegree `(-1, |h_i|)`.
    pub exterior_generators: Vec<(String, (i64, usize))>,
    pub em: EmVerdict,
    pub ls: LsVerdict,
}

impl MorphismAnalysis {
    pub fn is_conclusive(&self) -> bool {
        matches!(self.em, EmVerdict::Degenerates { .. }) || matches!(self.ls, LsVerdict::Predicted { .. })
    }

    pub fn summary(&self) -> String {
        let em = match &self.em {
            EmVerdict::Degenerates { .. } => "EM degenerates from E2".to_string(),
            EmVerdict::Inconclusive { reason } => format!("EM: {reason}"),
        };
        let ls = match &self.ls {
            LsVerdict::Predicted { page, .. } => format!("LS degenerates from E{page}"),
            LsVerdict::Inconclusive { reason } => format!("LS: {reason}"),
        };
        if self.is_conclusive() {
            format!("{em}; {ls}")
        } else {
            format!("{INCONCLUSIVE} ({em}; {ls})")
        }
    }
}

/// Whether `a` is a polynomial algebra with zero differential on generators
/// of degree at least two.
fn polynomial_generators(a: &DGAlgebra) -> Option<&MonomialBasis> {
    let mono = a.monomials()?;
    let char2 = a.field().characteristic() == 2;
    if !a.has_zero_differential() || mono.gens.iter().any(|g| g.degree < 2 || (g.exterior && !char2) || (g.degree % 2 == 1 && !char2)) {
        return None;
    }
    let free = MonomialBasis::new(mono.gens.iter().map(|g| crate::algebra::Generator { exterior: false, ..g.clone() }).collect(), a.top());
    (0..=a.top()).all(|n| free.by_degree[n].len() == a.dim(n)).then_some(mono)
}

/// Exterior-algebra dimensions on generators of the given total degrees.
fn exterior_dims(degrees: &[usize], bound: usize) -> Vec<usize> {
    let mut dims = vec![0; bound + 1];
    dims[0] = 1;
    for &d in degrees {
        for n in (d..=bound).rev() {
            dims[n] += dims[n - d];
        }
    }
    dims
}

fn convolve(a: &[usize], b: &[usize], bound: usize) -> Vec<usize> {
    (0..=bound).map(|n| (0..=n).map(|j| a[j] * b[n - j]).sum()).collect()
}

/// Applies the Eilenberg–Moore collapse criterion (kernel generated by a
/// regular sequence and `H(Y)` free over the image) and the transgression
/// criterion for the Leray–Serre sequence to `f: H(Z) → H(Y)`.
pub fn analyze_morphism(src: &DGAlgebra, tgt: &DGAlgebra, f: &AlgebraMorphism, bound: usize) -> Result<MorphismAnalysis> {
    let field = src.field();
    if tgt.field() != field {
        return Err(Error::FieldMismatch(field, tgt.field()));
    }
    if !src.has_zero_differential() || !tgt.has_zero_differential() {
        return Err(Error::Algebra("analyze_morphism works on cohomology algebras with zero differential".into()));
    }
    verify_morphism(src, tgt, f)?;
    let bound = bound.min(f.top());
    let f_degreewise: Vec<Matrix> = (0..=bound).map(|n| f.matrix(n).clone()).collect();
    let f_ranks: Vec<usize> = f_degreewise.iter().map(|m| m.rank()).collect();
    let kernels: Vec<Subspace> = f_degreewise.iter().map(kernel).collect();
    let kernel_dims: Vec<usize> = kernels.iter().map(|k| k.dim()).collect();

    // minimal generators of I, preferring polynomial generators
    let named = generator_sequence(src).unwrap_or_default();
    let mut gens: Vec<Homogeneous> = Vec::new();
    let mut kernel_generators = Vec::new();
    for n in 1..=bound {
        let mut span = ideal_span(src, &gens, n)?;
        let canonical = named.iter().filter(|(_, (d, v))| *d == n && !v.is_empty() && kernels[n].contains_vector(v));
        let candidates: Vec<(String, Vec<_>)> = canonical
            .map(|(l, (_, v))| (l.clone(), v.clone()))
            .chain(kernels[n].basis().iter().map(|v| (src.complex().describe(n, v), v.clone())))
            .collect();
        for (label, v) in candidates {
            if !span.contains_vector(&v) {
                gens.push((n, v));
                kernel_generators.push((label, n));
                span = ideal_span(src, &gens, n)?;
            }
        }
    }
    let regularity = is_regular_sequence(src, &gens, bound);

    // R is generated by the images of generators of H(Z), or of all of H(Z)
    let image_gens: Vec<Homogeneous> = if named.is_empty() {
        (1..=bound).flat_map(|n| (0..src.dim(n)).map(move |i| (n, i))).map(|(n, i)| (n, f.apply(n, &field.unit_vector(src.dim(n), i)))).collect()
    } else {
        named.iter().filter(|(_, (d, v))| *d <= bound && !v.is_empty()).map(|(_, (d, v))| (*d, f.apply(*d, v))).collect()
    };
    let freeness = check_freeness(tgt, &image_gens, bound);
    let ideal_j_dims: Vec<usize> = (0..=bound).map(|n| tgt.dim(n) - freeness.quotient_dims[n]).collect();
    let image_dims = f_ranks.clone();

    let exterior_generators: Vec<(String, (i64, usize))> = kernel_generators.iter().map(|(l, d)| (format!("z({l})"), (-1, *d))).collect();
    let em = if !regularity.is_regular() {
        let (i, d) = regularity.witness.expect("irregular");
        EmVerdict::Inconclusive { reason: format!("kernel generators are not a regular sequence (prefix {i}, degree {d})") }
    } else if let Some(d) = freeness.witness {
        EmVerdict::Inconclusive { reason: format!("H(Y) is not free over the image (degree {d})") }
    } else {
        let ext = exterior_dims(&kernel_generators.iter().map(|(_, d)| d - 1).collect::<Vec<_>>(), bound);
        EmVerdict::Degenerates { e2_totals: convolve(&ext, &freeness.quotient_dims, bound) }
    };

    let ls = ls_verdict(src, tgt, f, bound, &em)?;
    Ok(MorphismAnalysis {
        bound,
        f_degreewise,
        f_ranks,
        kernel_dims,
        kernel_generators: kernel_generators.clone(),
        image_dims,
        ideal_j_dims,
        regular_sequence: kernel_generators.clone(),
        regularity,
        freeness,
        exterior_generators,
        em,
        ls,
    })
}

fn ls_verdict(src: &DGAlgebra, tgt: &DGAlgebra, f: &AlgebraMorphism, bound: usize, em: &EmVerdict) -> Result<LsVerdict> {
    if polynomial_generators(src).is_none() {
        return Ok(LsVerdict::Inconclusive { reason: "H(Z) is not polynomial on generators of degree ≥ 2".into() });
    }
    let top = bound.min(tgt.top().saturating_sub(1));
    let images: Vec<(String, Homogeneous)> = generator_sequence(src)?
        .into_iter()
        .filter(|(_, (d, v))| *d <= top + 1 && *d <= f.top() && !v.is_empty())
        .map(|(l, (d, v))| (l, (d, f.apply(d, &v))))
        .collect();
    let mut effective: Vec<Homogeneous> = Vec::new();
    let mut transgressions = Vec::new();
    for (label, (d, v)) in &images {
        let survives = !ideal_span(tgt, &effective, *d)?.contains_vector(v);
        if survives {
            effective.push((*d, v.clone()));
        }
        transgressions.push(Transgression { generator: label.clone(), degree: *d, image: tgt.complex().describe(*d, v), effective: survives });
    }
    let route = if matches!(em, EmVerdict::Degenerates { .. }) {
        "EM collapse with polynomial H(Z)"
    } else if is_regular_sequence(tgt, &effective, bound).is_regular() {
        "transgressions form a regular sequence"
    } else {
        return Ok(LsVerdict::Inconclusive { reason: "effective transgressions do not form a regular sequence and EM collapse is not established".into() });
    };
    let page = transgressions.iter().filter(|t| t.effective).map(|t| t.degree + 1).max().unwrap_or(2);
    let model = koszul_model(tgt, &images, top)?;
    let ss = compute_spectral_sequence(&model.filtered, top + 2);
    Ok(LsVerdict::Predicted {
        route: route.into(),
        transgressions,
        page,
        model_page: ss.degeneration.page,
        e_infinity_totals: ss.infinity_totals(),
    })
}
