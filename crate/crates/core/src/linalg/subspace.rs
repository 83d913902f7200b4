use super::field::{FieldSpec, Scalar};
use super::matrix::{rref_rows, Matrix};
use crate::error::{Error, Result};

/// A subspace of `K^ambient`, stored as the rows of its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: (0..ambient).map(|i| field.unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: FieldSpec, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::Dimension(format!(
                    "vector of length {} in K^{ambient}",
                    v.len()
                )));
            }
            if let Some(bad) = v.iter().find(|s| !field.contains(s)) {
                return Err(Error::Invalid(format!("entry {bad} does not lie in {field}")));
            }
        }
        Ok(Self::span_unchecked(field, ambient, vectors))
    }

    pub(crate) fn span_unchecked(field: FieldSpec, ambient: usize, mut vectors: Vec<Vec<Scalar>>) -> Self {
        let pivots = rref_rows(field, &mut vectors, ambient);
        vectors.truncate(pivots.len());
        Subspace { field, ambient, basis: vectors, pivots }
    }

    /// Span of the coordinate vectors `e_i` for `i` in `indices`.
    pub fn coordinate(field: FieldSpec, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Subspace {
            field,
            ambient,
            basis: idx.iter().map(|&i| field.unit_vector(ambient, i)).collect(),
            pivots: idx,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, self.basis.clone()).expect("consistent shape")
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "subspaces of K^{} and K^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// The canonical coset representative of `v`: zero in every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn reduce_in_place(&self, v: &mut [Scalar]) {
        let f = self.field;
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                let c = f.neg(&v[p]);
                f.axpy(v, row, &c);
            }
        }
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && self.field.is_zero_vec(&self.reduce(v))
    }

    /// Coefficients of `v` in the stored basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().map(|r| self.reduce(r)));
        Ok(Self::span_unchecked(self.field, self.ambient, rows))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        // x = Σ c_i a_i lies in `other` iff Σ c_i reduce(a_i) = 0.
        let reduced: Vec<Vec<Scalar>> = self.basis.iter().map(|a| other.reduce(a)).collect();
        let m = Matrix::from_cols(self.field, self.ambient, &reduced)?;
        let vectors = m
            .kernel()
            .into_iter()
            .map(|c| self.combine(&c))
            .collect();
        Ok(Self::span_unchecked(self.field, self.ambient, vectors))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok(other.dim() <= self.dim() && other.basis.iter().all(|v| self.contains_vector(v)))
    }

    /// `Σ c_i b_i` over the stored basis.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.field.zeros(self.ambient);
        for (c, row) in coeffs.iter().zip(&self.basis) {
            self.field.axpy(&mut out, row, c);
        }
        out
    }

    /// `f(self)` inside the codomain of `f`.
    pub fn image_under(&self, f: &Matrix) -> Result<Subspace> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch(f.field(), self.field));
        }
        let vectors = self.basis.iter().map(|v| f.apply(v)).collect::<Result<Vec<_>>>()?;
        Ok(Self::span_unchecked(self.field, f.rows(), vectors))
    }
}

/// Column space of `f`.
pub fn image(f: &Matrix) -> Subspace {
    Subspace::full(f.field(), f.cols())
        .image_under(f)
        .expect("matching shapes")
}

pub fn kernel(f: &Matrix) -> Subspace {
    Subspace::span_unchecked(f.field(), f.cols(), f.kernel())
}

/// `{x | f(x) ∈ w}`.
pub fn preimage(f: &Matrix, w: &Subspace) -> Result<Subspace> {
    if f.field() != w.field() {
        return Err(Error::FieldMismatch(f.field(), w.field()));
    }
    if f.rows() != w.ambient() {
        return Err(Error::Dimension(format!(
            "map into K^{} but target subspace of K^{}",
            f.rows(),
            w.ambient()
        )));
    }
    if w.is_full() {
        return Ok(Subspace::full(f.field(), f.cols()));
    }
    let cols: Vec<Vec<Scalar>> = (0..f.cols()).map(|j| w.reduce(&f.col(j))).collect();
    let m = Matrix::from_cols(f.field(), f.rows(), &cols)?;
    Ok(Subspace::span_unchecked(f.field(), f.cols(), m.kernel()))
}

/// `{x ∈ dom | f(x) ∈ w}`.
pub fn restricted_preimage(f: &Matrix, dom: &Subspace, w: &Subspace) -> Result<Subspace> {
    if f.field() != w.field() || f.field() != dom.field() {
        return Err(Error::FieldMismatch(f.field(), w.field()));
    }
    if f.rows() != w.ambient() || f.cols() != dom.ambient() {
        return Err(Error::Dimension("restricted preimage shapes".into()));
    }
    if w.is_full() || dom.is_zero() {
        return Ok(dom.clone());
    }
    let cols: Vec<Vec<Scalar>> = dom.basis().iter().map(|b| w.reduce(&f.apply(b).expect("shape"))).collect();
    if cols.iter().all(|c| f.field().is_zero_vec(c)) {
        return Ok(dom.clone());
    }
    let m = Matrix::from_cols(f.field(), f.rows(), &cols)?;
    let vectors = m.kernel().into_iter().map(|c| dom.combine(&c)).collect();
    Ok(Subspace::span_unchecked(f.field(), f.cols(), vectors))
}

/// The subquotient `big / small` with a fixed basis of coset representatives.
///
/// Representatives are the reduced echelon basis of `big` reduced modulo
/// `small`; they vanish on the pivot columns of `small`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    big: Subspace,
    small: Subspace,
    reps: Subspace,
}

impl Quotient {
    pub fn new(big: Subspace, small: Subspace) -> Result<Self> {
        if !big.contains(&small)? {
            let witness = small
                .basis()
                .iter()
                .find(|v| !big.contains_vector(v))
                .map(|v| fmt_vector(v))
                .unwrap_or_default();
            return Err(Error::NotInduced { witness });
        }
        Ok(Self::new_unchecked(big, small))
    }

    pub(crate) fn new_unchecked(big: Subspace, small: Subspace) -> Self {
        let reduced = big.basis().iter().map(|v| small.reduce(v)).collect();
        let reps = Subspace::span_unchecked(big.field(), big.ambient(), reduced);
        Quotient { big, small, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn big(&self) -> &Subspace {
        &self.big
    }

    pub fn small(&self) -> &Subspace {
        &self.small
    }

    pub fn representatives(&self) -> &[Vec<Scalar>] {
        self.reps.basis()
    }

    /// Coordinates of the class of `v` (which must lie in `big`).
    pub fn class_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let r = self.small.reduce(v);
        self.reps.coordinates(&r)
    }

    /// The class of `v` without the membership check.
    pub(crate) fn class_of_unchecked(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.small.reduce(v);
        self.reps.pivots().iter().map(|&p| r[p].clone()).collect()
    }
}

/// The map `dom.big/dom.small → cod.big/cod.small` induced by `f`, in the
/// representative bases of both quotients. Both containments are verified.
pub fn induced_map(f: &Matrix, dom: &Quotient, cod: &Quotient) -> Result<Matrix> {
    if f.field() != dom.big.field() || f.field() != cod.big.field() {
        return Err(Error::FieldMismatch(f.field(), dom.big.field()));
    }
    if f.cols() != dom.big.ambient() || f.rows() != cod.big.ambient() {
        return Err(Error::Dimension("map does not match the quotient ambients".into()));
    }
    for v in dom.small.basis() {
        let y = f.apply(v)?;
        if !cod.small.contains_vector(&y) {
            return Err(Error::NotInduced { witness: fmt_vector(v) });
        }
    }
    let mut cols = Vec::with_capacity(dom.dim());
    for v in dom.representatives() {
        let y = f.apply(v)?;
        match cod.class_of(&y) {
            Some(c) => cols.push(c),
            None => return Err(Error::NotInduced { witness: fmt_vector(v) }),
        }
    }
    Matrix::from_cols(f.field(), cod.dim(), &cols)
}

/// As [`induced_map`] for callers that guarantee the containments.
pub(crate) fn induced_map_unchecked(f: &Matrix, dom: &Quotient, cod: &Quotient) -> Matrix {
    let cols: Vec<Vec<Scalar>> = dom
        .representatives()
        .iter()
        .map(|v| cod.class_of_unchecked(&f.apply(v).expect("shape")))
        .collect();
    Matrix::from_cols(f.field(), cod.dim(), &cols).expect("shape")
}

pub(crate) fn fmt_vector(v: &[Scalar]) -> String {
    let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", cells.join(", "))
}
