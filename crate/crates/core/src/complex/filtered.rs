use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use super::cochain::CochainComplex;
use super::graded::GradedSpace;
use crate::error::{Error, Result};
use crate::linalg::{induced_map_unchecked, Matrix, Quotient, Subspace};

/// How a finite complex relates to the (possibly infinite) complex it stands for.
///
/// * `degree_cap`: degrees above the cap were dropped, so the differential out
///   of the cap is unknown. `None` for genuinely finite complexes.
/// * `complete_below`: degrees `< complete_below` agree with the untruncated
///   complex. `None` means every stored degree does.
/// * `filtration_floor`: the stored complex equals `F^floor` of the full one,
///   so `F^s` is exact for `s ≥ floor` in every stored degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub degree_cap: Option<usize>,
    pub complete_below: Option<usize>,
    pub filtration_floor: Option<i64>,
}

impl Truncation {
    pub fn exact() -> Self {
        Truncation::default()
    }

    pub fn capped(cap: usize) -> Self {
        Truncation { degree_cap: Some(cap), ..Default::default() }
    }

    pub fn is_exact(&self) -> bool {
        self.degree_cap.is_none() && self.complete_below.is_none()
    }

    /// Whether `E_r^{p,n-p}` (or `E_∞` when `r` is `None`) of the stored
    /// complex equals the one of the untruncated complex.
    pub fn certifies(&self, p: i64, n: usize, r: Option<usize>) -> bool {
        let needs_d = r != Some(0);
        let top_ok = self.degree_cap.is_none_or(|c| if needs_d { n < c } else { n <= c });
        let reach = if needs_d { n + 1 } else { n };
        let complete = self.complete_below.is_none_or(|c| reach < c);
        let floor_ok = match (self.filtration_floor, r) {
            (Some(f), Some(0)) => p >= f,
            (Some(f), Some(r)) => p - r as i64 + 1 >= f,
            _ => false,
        };
        top_ok && (complete || floor_ok)
    }

    /// Whether `H^n` of the stored complex is the true one.
    pub fn certifies_cohomology(&self, n: usize) -> bool {
        self.degree_cap.is_none_or(|c| n < c) && self.complete_below.is_none_or(|c| n + 1 < c)
    }
}

/// A cochain complex with a descending filtration `F^s`, `s_min ≤ s ≤ s_max`.
///
/// `F^s = C` for `s ≤ s_min` and `F^s = 0` for `s > s_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: CochainComplex,
    s_min: i64,
    s_max: i64,
    /// Explicit levels; empty for coordinate filtrations, whose levels are
    /// built from `weights` on demand.
    levels: Vec<Vec<Subspace>>,
    weights: Option<Vec<Vec<i64>>>,
    truncation: Truncation,
}

impl FilteredComplex {
    /// `levels[k][n]` is `F^{s_min + k} C^n`; `levels[0]` must be all of `C`.
    pub fn new(complex: CochainComplex, s_min: i64, levels: Vec<Vec<Subspace>>, truncation: Truncation) -> Result<Self> {
        let s_max = s_min + levels.len() as i64 - 1;
        let fc = FilteredComplex { complex, s_min, s_max, levels, weights: None, truncation };
        fc.validate()?;
        Ok(fc)
    }

    /// The filtration by basis weights: `F^s C^n = span{e_i : weights[n][i] ≥ s}`.
    pub fn from_weights(complex: CochainComplex, weights: Vec<Vec<i64>>, truncation: Truncation) -> Result<Self> {
        if weights.len() != complex.len() || (0..complex.len()).any(|n| weights[n].len() != complex.dim(n)) {
            return Err(Error::Filtration("weights do not match the basis".into()));
        }
        let fc = Self::from_weights_unchecked(complex, weights, truncation);
        fc.validate_weights()?;
        Ok(fc)
    }

    /// Stability of a coordinate filtration: `d` never lowers weights.
    fn validate_weights(&self) -> Result<()> {
        let c = &self.complex;
        let w = self.weights.as_ref().expect("coordinate filtration");
        for n in 0..c.len().saturating_sub(1) {
            let d = c.d_ref(n).expect("in window");
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    if !c.field().is_zero(d.get(i, j)) && w[n + 1][i] < w[n][j] {
                        return Err(Error::Filtration(format!(
                            "d lowers the filtration from {} to {} in degree {n}",
                            w[n][j],
                            w[n + 1][i]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn from_weights_unchecked(complex: CochainComplex, weights: Vec<Vec<i64>>, truncation: Truncation) -> Self {
        let all = weights.iter().flatten();
        let (s_min, s_max) = match (all.clone().min(), all.max()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => (0, 0),
        };
        FilteredComplex { complex, s_min, s_max, levels: Vec::new(), weights: Some(weights), truncation }
    }

    /// The one-step filtration `F^s = C` for `s ≤ s0`, `0` above.
    pub fn trivial(complex: CochainComplex, s0: i64, truncation: Truncation) -> Self {
        let weights = (0..complex.len()).map(|n| vec![s0; complex.dim(n)]).collect();
        FilteredComplex { complex, s_min: s0, s_max: s0, levels: Vec::new(), weights: Some(weights), truncation }
    }

    fn validate(&self) -> Result<()> {
        let c = &self.complex;
        if self.levels.is_empty() {
            return Err(Error::Filtration("no filtration levels".into()));
        }
        for (k, level) in self.levels.iter().enumerate() {
            let s = self.s_min + k as i64;
            if level.len() != c.len() {
                return Err(Error::Filtration(format!("F^{s} has {} degrees, complex has {}", level.len(), c.len())));
            }
            for (n, sub) in level.iter().enumerate() {
                if sub.ambient() != c.dim(n) || sub.field() != c.field() {
                    return Err(Error::Filtration(format!("F^{s}C^{n} lives in the wrong space")));
                }
                if k == 0 && !sub.is_full() {
                    return Err(Error::Filtration(format!("F^{s}C^{n} must be all of C^{n} at the bottom of the window")));
                }
                if k > 0 && !self.levels[k - 1][n].contains(sub)? {
                    return Err(Error::Filtration(format!("F^{s}C^{n} is not contained in F^{}C^{n}", s - 1)));
                }
                if n + 1 < c.len() {
                    let img = sub.image_under(c.d_ref(n).expect("in window"))?;
                    if !level[n + 1].contains(&img)? {
                        return Err(Error::Filtration(format!("d(F^{s}C^{n}) is not contained in F^{s}C^{}", n + 1)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn s_min(&self) -> i64 {
        self.s_min
    }

    pub fn s_max(&self) -> i64 {
        self.s_max
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn with_truncation(mut self, t: Truncation) -> Self {
        self.truncation = t;
        self
    }

    /// Basis weights when the filtration is a coordinate filtration.
    pub fn weights(&self) -> Option<&[Vec<i64>]> {
        self.weights.as_deref()
    }

    pub fn level(&self, s: i64, n: usize) -> Cow<'_, Subspace> {
        let field = self.complex.field();
        let dim = self.complex.dim(n);
        if n >= self.complex.len() {
            return Cow::Owned(Subspace::zero(field, 0));
        }
        if s > self.s_max {
            return Cow::Owned(Subspace::zero(field, dim));
        }
        if let Some(w) = &self.weights {
            let idx = w[n].iter().enumerate().filter(|(_, &x)| x >= s).map(|(i, _)| i);
            return Cow::Owned(Subspace::coordinate(field, dim, idx));
        }
        Cow::Borrowed(&self.levels[(s.max(self.s_min) - self.s_min) as usize][n])
    }

    /// `Gr^s C = F^s C / F^{s+1} C` with the induced differential.
    pub fn gr(&self, s: i64) -> CochainComplex {
        let c = &self.complex;
        let quotients: Vec<Quotient> = (0..c.len())
            .map(|n| Quotient::new_unchecked(self.level(s, n).into_owned(), self.level(s + 1, n).into_owned()))
            .collect();
        let labels = quotients
            .iter()
            .enumerate()
            .map(|(n, q)| q.representatives().iter().map(|v| c.describe(n, v)).collect())
            .collect();
        let space = GradedSpace::new(labels)
            .unwrap_or_else(|_| GradedSpace::from_dims(&quotients.iter().map(|q| q.dim()).collect::<Vec<_>>()));
        let d: Vec<Matrix> = (0..c.len().saturating_sub(1))
            .map(|n| induced_map_unchecked(c.d_ref(n).expect("in window"), &quotients[n], &quotients[n + 1]))
            .collect();
        CochainComplex::new(c.field(), space, d).expect("filtration is d-stable")
    }

    /// `Gr^t C` of this filtration, carrying the filtration induced by
    /// `other`, which must filter the same complex.
    pub fn gr_filtered_by(&self, t: i64, other: &FilteredComplex, truncation: Truncation) -> FilteredComplex {
        let c = &self.complex;
        if let (Some(wa), Some(wb)) = (self.weights(), other.weights()) {
            let keep: Vec<Vec<usize>> = wa
                .iter()
                .map(|ws| ws.iter().enumerate().filter(|(_, &w)| w == t).map(|(i, _)| i).collect())
                .collect();
            let sub = c.coordinate_subcomplex(&keep);
            let w = keep.iter().enumerate().map(|(n, k)| k.iter().map(|&i| wb[n][i]).collect()).collect();
            let mut fc = FilteredComplex::from_weights_unchecked(sub, w, truncation);
            if fc.weights().is_none_or(|w| w.iter().all(|x| x.is_empty())) {
                fc.s_min = other.s_min;
                fc.s_max = other.s_min;
            }
            return fc;
        }
        let quotients: Vec<Quotient> = (0..c.len())
            .map(|n| Quotient::new_unchecked(self.level(t, n).into_owned(), self.level(t + 1, n).into_owned()))
            .collect();
        let gr = self.gr(t);
        let field = c.field();
        let levels = (other.s_min..=other.s_max())
            .map(|s| {
                (0..c.len())
                    .map(|n| {
                        let both = other.level(s, n).intersect(&self.level(t, n)).expect("same ambient");
                        let vs = both.basis().iter().map(|v| quotients[n].class_of_unchecked(v)).collect();
                        Subspace::span_unchecked(field, quotients[n].dim(), vs)
                    })
                    .collect()
            })
            .collect();
        FilteredComplex { complex: gr, s_min: other.s_min, s_max: other.s_max(), levels, weights: None, truncation }
    }
}

/// A cochain complex with two filtrations, `F` and `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BifilteredComplex {
    pub f: FilteredComplex,
    pub w: FilteredComplex,
}

impl BifilteredComplex {
    pub fn new(f: FilteredComplex, w: FilteredComplex) -> Result<Self> {
        if f.complex() != w.complex() {
            return Err(Error::Filtration("F and W filter different complexes".into()));
        }
        Ok(BifilteredComplex { f, w })
    }

    pub fn complex(&self) -> &CochainComplex {
        self.f.complex()
    }

    /// `F^s C^n ∩ W^t C^n`.
    pub fn both(&self, s: i64, t: i64, n: usize) -> Subspace {
        self.f.level(s, n).intersect(&self.w.level(t, n)).expect("same ambient")
    }

    /// `dim Gr_F^s Gr_W^t C^n`, computed as `Gr_F^s` of `Gr_W^t C^n`.
    pub fn dim_gr_f_gr_w(&self, s: i64, t: i64, n: usize) -> usize {
        // (F^s ∩ W^t + W^{t+1}) / (F^{s+1} ∩ W^t + W^{t+1})
        let wt1 = self.w.level(t + 1, n);
        let a = self.both(s, t, n).sum(&wt1).unwrap();
        let b = self.both(s + 1, t, n).sum(&wt1).unwrap();
        a.dim() - b.dim()
    }

    /// `dim Gr_W^t Gr_F^s C^n`, computed as `Gr_W^t` of `Gr_F^s C^n`.
    pub fn dim_gr_w_gr_f(&self, s: i64, t: i64, n: usize) -> usize {
        let fs1 = self.f.level(s + 1, n);
        let a = self.both(s, t, n).sum(&fs1).unwrap();
        let b = self.both(s, t + 1, n).sum(&fs1).unwrap();
        a.dim() - b.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn interval() -> CochainComplex {
        // two vertices, one edge: d(v0) = -e, d(v1) = e
        CochainComplex::from_dims(Q, &[2, 1], vec![Matrix::from_i64(Q, &[&[-1, 1]])]).unwrap()
    }

    #[test]
    fn one_step_filtration_gr_is_everything() {
        let fc = FilteredComplex::trivial(interval(), 0, Truncation::exact());
        assert_eq!(fc.gr(0).dims(), vec![2, 1]);
        assert_eq!(fc.gr(1).dims(), vec![0, 0]);
    }

    #[test]
    fn skeletal_gr_is_cells_in_one_degree() {
        let fc = FilteredComplex::from_weights(interval(), vec![vec![0, 0], vec![1]], Truncation::exact()).unwrap();
        assert_eq!(fc.gr(0).dims(), vec![2, 0]);
        assert_eq!(fc.gr(1).dims(), vec![0, 1]);
    }

    #[test]
    fn unstable_filtration_is_rejected() {
        let err = FilteredComplex::from_weights(interval(), vec![vec![1, 0], vec![0]], Truncation::exact()).unwrap_err();
        assert!(matches!(err, Error::Filtration(_)));
    }

    #[test]
    fn certification_rules() {
        let t = Truncation { degree_cap: Some(5), complete_below: Some(3), filtration_floor: Some(-4) };
        assert!(t.certifies(0, 1, Some(2)));
        assert!(!t.certifies(0, 5, Some(1)));
        assert!(t.certifies(-2, 3, Some(3)));
        assert!(!t.certifies(-2, 3, Some(4)));
        assert!(!t.certifies(-2, 3, None));
        assert!(Truncation::exact().certifies(-100, 100, None));
    }

    #[test]
    fn zassenhaus_on_coordinate_bifiltration() {
        let c = interval();
        let f = FilteredComplex::from_weights(c.clone(), vec![vec![0, 0], vec![1]], Truncation::exact()).unwrap();
        let w = FilteredComplex::trivial(c, 0, Truncation::exact());
        let b = BifilteredComplex::new(f, w).unwrap();
        for s in -1..3 {
            for t in -1..2 {
                for n in 0..2 {
                    assert_eq!(b.dim_gr_f_gr_w(s, t, n), b.dim_gr_w_gr_f(s, t, n));
                }
            }
        }
    }
}
