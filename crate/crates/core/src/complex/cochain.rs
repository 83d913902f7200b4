use super::graded::GradedSpace;
use crate::error::{Error, Result};
use crate::linalg::{self, FieldSpec, Matrix, Quotient, Scalar, Subspace};
use crate::sign;

/// A cochain complex `C^0 → C^1 → … → C^top → 0`.
///
/// `d(n)` has shape `dim C^{n+1} × dim C^n`; the map out of the top degree is
/// the zero map into the zero space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    field: FieldSpec,
    space: GradedSpace,
    d: Vec<Matrix>,
}

/// Cohomology with a chosen basis of cocycle representatives in each degree.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub space: GradedSpace,
    pub groups: Vec<Quotient>,
}

impl Cohomology {
    pub fn dims(&self) -> Vec<usize> {
        self.groups.iter().map(|q| q.dim()).collect()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.groups.get(n).map_or(0, |q| q.dim())
    }

    pub fn representatives(&self, n: usize) -> &[Vec<Scalar>] {
        self.groups[n].representatives()
    }
}

impl CochainComplex {
    /// `d` lists `d_0, …, d_{top-1}`; the zero map out of the top is added.
    pub fn new(field: FieldSpec, space: GradedSpace, mut d: Vec<Matrix>) -> Result<Self> {
        let len = space.len();
        if len == 0 {
            if !d.is_empty() {
                return Err(Error::Dimension("differentials on an empty complex".into()));
            }
            return Ok(CochainComplex { field, space, d });
        }
        if d.len() + 1 != len {
            return Err(Error::Dimension(format!(
                "{} differentials for degrees 0..={}",
                d.len(),
                len - 1
            )));
        }
        d.push(Matrix::zero(field, 0, space.dim(len - 1)));
        let c = CochainComplex { field, space, d };
        c.validate()?;
        Ok(c)
    }

    pub fn from_dims(field: FieldSpec, dims: &[usize], d: Vec<Matrix>) -> Result<Self> {
        Self::new(field, GradedSpace::from_dims(dims), d)
    }

    /// Zero differential.
    pub fn from_space(field: FieldSpec, space: GradedSpace) -> Self {
        let len = space.len();
        let d = (0..len)
            .map(|n| {
                let rows = if n + 1 < len { space.dim(n + 1) } else { 0 };
                Matrix::zero(field, rows, space.dim(n))
            })
            .collect();
        CochainComplex { field, space, d }
    }

    fn validate(&self) -> Result<()> {
        for (n, m) in self.d.iter().enumerate() {
            if m.field() != self.field {
                return Err(Error::FieldMismatch(m.field(), self.field));
            }
            let rows = self.space.dim(n + 1);
            if m.cols() != self.space.dim(n) || (n + 1 < self.len() && m.rows() != rows) {
                return Err(Error::Dimension(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    rows,
                    self.space.dim(n)
                )));
            }
        }
        for n in 0..self.len().saturating_sub(2) {
            if !self.d[n + 1].mul(&self.d[n])?.is_zero() {
                return Err(Error::DSquared(n));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    /// Number of degrees; the top degree is `len() - 1`.
    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.space.dim(n)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.space.dims()
    }

    /// `d_n: C^n → C^{n+1}`; beyond the window this is a zero map.
    pub fn d(&self, n: usize) -> Matrix {
        match self.d.get(n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.field, 0, 0),
        }
    }

    pub fn d_ref(&self, n: usize) -> Option<&Matrix> {
        self.d.get(n)
    }

    pub fn cocycles(&self, n: usize) -> Subspace {
        match self.d.get(n) {
            Some(m) => linalg::kernel(m),
            None => Subspace::zero(self.field, 0),
        }
    }

    pub fn coboundaries(&self, n: usize) -> Subspace {
        if n == 0 || n >= self.len() {
            return Subspace::zero(self.field, self.dim(n));
        }
        linalg::image(&self.d[n - 1])
    }

    pub fn cohomology(&self) -> Cohomology {
        let mut labels = Vec::with_capacity(self.len());
        let mut groups = Vec::with_capacity(self.len());
        for n in 0..self.len() {
            let q = Quotient::new(self.cocycles(n), self.coboundaries(n)).expect("d² = 0");
            labels.push(
                q.representatives()
                    .iter()
                    .map(|v| format!("[{}]", self.describe(n, v)))
                    .collect(),
            );
            groups.push(q);
        }
        let space = GradedSpace::new(labels).unwrap_or_else(|_| GradedSpace::from_dims(
            &groups.iter().map(|g| g.dim()).collect::<Vec<_>>(),
        ));
        Cohomology { space, groups }
    }

    pub fn betti(&self) -> Vec<usize> {
        (0..self.len())
            .map(|n| {
                let z = self.dim(n) - self.d[n].rank();
                let b = if n == 0 { 0 } else { self.d[n - 1].rank() };
                z - b
            })
            .collect()
    }

    /// Readable form of a vector of `C^n`, e.g. `2·a + b`.
    pub fn describe(&self, n: usize, v: &[Scalar]) -> String {
        describe_vector(self.field, self.space.labels(n), v)
    }

    /// `C[k]^n = C^{n+k}` with differential `(-1)^k d`; degrees pushed below zero are dropped.
    pub fn shift(&self, k: i64) -> CochainComplex {
        let f = self.field;
        let len = self.len() as i64 - k;
        if len <= 0 {
            return CochainComplex { field: f, space: GradedSpace::default(), d: Vec::new() };
        }
        let len = len as usize;
        let src = |n: usize| -> Option<usize> {
            let m = n as i64 + k;
            (m >= 0 && (m as usize) < self.len()).then_some(m as usize)
        };
        let labels: Vec<Vec<String>> = (0..len)
            .map(|n| src(n).map_or(Vec::new(), |m| self.space.labels(m).to_vec()))
            .collect();
        let space = GradedSpace::new(labels).expect("labels copied");
        let sgn = f.sign(k);
        let d = (0..len)
            .map(|n| {
                let rows = if n + 1 < len { space.dim(n + 1) } else { 0 };
                match src(n) {
                    Some(m) if n + 1 < len && rows > 0 => self.d[m].scaled(&sgn),
                    _ => Matrix::zero(f, rows, space.dim(n)),
                }
            })
            .collect();
        CochainComplex { field: f, space, d }
    }

    /// Tensor product with Koszul signs, truncated to degrees `≤ max_degree`
    /// (default: the full sum of both windows).
    pub fn tensor(&self, other: &CochainComplex, max_degree: Option<usize>) -> Result<CochainComplex> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let f = self.field;
        if self.is_empty() || other.is_empty() {
            return Ok(CochainComplex { field: f, space: GradedSpace::default(), d: Vec::new() });
        }
        let full_top = self.len() + other.len() - 2;
        let top = max_degree.map_or(full_top, |m| m.min(full_top));
        // index[n] lists (i, a, b): factor degrees i and n-i, basis indices a and b.
        let mut index: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); top + 2];
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); top + 1];
        for n in 0..=top + 1 {
            for i in 0..=n.min(self.len() - 1) {
                let j = n - i;
                if j >= other.len() {
                    continue;
                }
                for a in 0..self.dim(i) {
                    for b in 0..other.dim(j) {
                        index[n].push((i, a, b));
                        if n <= top {
                            labels[n].push(format!("{}⊗{}", self.space.labels(i)[a], other.space.labels(j)[b]));
                        }
                    }
                }
            }
        }
        let position = |n: usize, i: usize, a: usize, b: usize| -> usize {
            index[n]
                .binary_search_by(|&(i2, a2, b2)| (i2, a2, b2).cmp(&(i, a, b)))
                .expect("basis element present")
        };
        let space = GradedSpace::new(labels).unwrap_or_else(|_| {
            GradedSpace::from_dims(&index[..=top].iter().map(|v| v.len()).collect::<Vec<_>>())
        });
        let mut d = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let rows = if n < top { index[n + 1].len() } else { 0 };
            let mut m = Matrix::zero(f, rows, index[n].len());
            if n < top {
                for (col, &(i, a, b)) in index[n].iter().enumerate() {
                    let j = n - i;
                    if i + 1 < self.len() {
                        let dx = &self.d[i];
                        for a2 in 0..dx.rows() {
                            let c = dx.get(a2, a);
                            if !f.is_zero(c) {
                                let row = position(n + 1, i + 1, a2, b);
                                m.set(row, col, f.add(m.get(row, col), c));
                            }
                        }
                    }
                    if j + 1 < other.len() {
                        let dy = &other.d[j];
                        let s = sign::leibniz(f, i as i64);
                        for b2 in 0..dy.rows() {
                            let c = dy.get(b2, b);
                            if !f.is_zero(c) {
                                let row = position(n + 1, i, a, b2);
                                m.set(row, col, f.add(m.get(row, col), &f.mul(&s, c)));
                            }
                        }
                    }
                }
            }
            d.push(m);
        }
        let out = CochainComplex { field: f, space, d };
        out.validate()?;
        Ok(out)
    }

    /// Restriction to the coordinate subcomplex spanned by `keep[n]` (sorted
    /// basis indices per degree). The caller guarantees `d` preserves it.
    pub(crate) fn coordinate_subcomplex(&self, keep: &[Vec<usize>]) -> CochainComplex {
        let f = self.field;
        let len = self.len();
        let labels = (0..len)
            .map(|n| keep[n].iter().map(|&i| self.space.labels(n)[i].clone()).collect())
            .collect();
        let space = GradedSpace::new(labels).expect("subset of unique labels");
        let d = (0..len)
            .map(|n| {
                let rows = if n + 1 < len { keep[n + 1].len() } else { 0 };
                let mut m = Matrix::zero(f, rows, keep[n].len());
                if n + 1 < len {
                    for (r, &i) in keep[n + 1].iter().enumerate() {
                        for (c, &j) in keep[n].iter().enumerate() {
                            m.set(r, c, self.d[n].get(i, j).clone());
                        }
                    }
                }
                m
            })
            .collect();
        CochainComplex { field: f, space, d }
    }
}

pub(crate) fn describe_vector(field: FieldSpec, labels: &[String], v: &[Scalar]) -> String {
    let one = field.one();
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(i, c)| {
            let name = labels.get(i).cloned().unwrap_or_else(|| format!("e{i}"));
            if *c == one {
                name
            } else {
                format!("{c}·{name}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
