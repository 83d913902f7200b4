use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::monomial::MonomialBasis;
use super::poly::Expr;
use crate::complex::{CochainComplex, GradedSpace};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar};
use crate::sign::{koszul, leibniz};

/// Sparse vector: `(basis index, coefficient)` pairs.
pub type Sparse = Vec<(usize, Scalar)>;

/// Product table: `table[n][m][i * dim_m + j]` is `e^n_i · e^m_j`, empty when
/// `n + m` is beyond the window.
pub(crate) type Table = Vec<Vec<Vec<Sparse>>>;

/// An augmented differential graded algebra, truncated to degrees
/// `0..=top`. The unit is basis element 0 of degree 0.
#[derive(Clone, Debug)]
pub struct DGAlgebra {
    complex: CochainComplex,
    table: Table,
    augmentation: Vec<Scalar>,
    commutative: bool,
    monomials: Option<MonomialBasis>,
    /// Values of the generators when they are not themselves basis monomials.
    generator_values: Option<Vec<Vec<Scalar>>>,
}

impl DGAlgebra {
    /// Builds an algebra from its complex and a product on basis elements.
    /// Checks unit and augmentation shape; the remaining axioms are checked
    /// by [`verify_dga`].
    pub fn new(
        complex: CochainComplex,
        product: impl Fn(usize, usize, usize, usize) -> Sparse,
        augmentation: Vec<Scalar>,
        commutative: bool,
    ) -> Result<Self> {
        let table = build_table(&complex, product);
        Self::from_parts(complex, table, augmentation, commutative, None)
    }

    pub(crate) fn from_parts(
        complex: CochainComplex,
        table: Table,
        augmentation: Vec<Scalar>,
        commutative: bool,
        monomials: Option<MonomialBasis>,
    ) -> Result<Self> {
        let field = complex.field();
        if complex.is_empty() || complex.dim(0) == 0 {
            return Err(Error::Algebra("an algebra needs a unit in degree 0".into()));
        }
        if augmentation.len() != complex.dim(0) {
            return Err(Error::Algebra("augmentation must be a functional on degree 0".into()));
        }
        if augmentation[0] != field.one() {
            return Err(Error::Algebra("augmentation must send the unit to 1".into()));
        }
        let a = DGAlgebra { complex, table, augmentation, commutative, monomials, generator_values: None };
        for n in 0..a.complex.len() {
            for i in 0..a.complex.dim(n) {
                let e = vec![(i, field.one())];
                if a.table[0][n][i] != e || a.table[n][0][i * a.complex.dim(0)] != e {
                    return Err(Error::Algebra(format!("basis element {} does not see basis element 0 as unit", a.complex.space().labels(n)[i])));
                }
            }
        }
        Ok(a)
    }

    pub fn field(&self) -> FieldSpec {
        self.complex.field()
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    /// Highest stored degree.
    pub fn top(&self) -> usize {
        self.complex.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.complex.dim(n)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.complex.dims()
    }

    pub fn label(&self, n: usize, i: usize) -> &str {
        &self.complex.space().labels(n)[i]
    }

    pub fn augmentation(&self) -> &[Scalar] {
        &self.augmentation
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Whether every differential vanishes.
    pub fn has_zero_differential(&self) -> bool {
        (0..self.complex.len()).all(|n| self.complex.d_ref(n).is_none_or(|d| d.is_zero()))
    }

    pub fn monomials(&self) -> Option<&MonomialBasis> {
        self.monomials.as_ref()
    }

    pub(crate) fn with_generator_values(mut self, values: Vec<Vec<Scalar>>) -> Self {
        self.generator_values = Some(values);
        self
    }

    /// The element named by generator `g`, empty when it lies past the window.
    pub fn generator_value(&self, g: usize) -> Vec<Scalar> {
        if let Some(v) = &self.generator_values {
            return v[g].clone();
        }
        let mono = self.monomials.as_ref().expect("named generators");
        let deg = mono.gens[g].degree;
        if deg > self.top() {
            return Vec::new();
        }
        let mut e = vec![0u32; mono.gens.len()];
        e[g] = 1;
        match mono.lookup(&e) {
            Some((n, i)) => self.field().unit_vector(self.dim(n), i),
            None => self.field().zeros(self.dim(deg)),
        }
    }

    /// Basis indices spanning the augmentation ideal in degree `n`.
    pub fn ideal_basis(&self, n: usize) -> Vec<usize> {
        if n == 0 {
            (1..self.dim(0)).collect()
        } else {
            (0..self.dim(n)).collect()
        }
    }

    pub fn basis_product(&self, n: usize, i: usize, m: usize, j: usize) -> &Sparse {
        &self.table[n][m][i * self.dim(m) + j]
    }

    /// `a · b` for `a` of degree `n` and `b` of degree `m`; `None` past the window.
    pub fn mul(&self, n: usize, a: &[Scalar], m: usize, b: &[Scalar]) -> Option<Vec<Scalar>> {
        if n + m > self.top() {
            return None;
        }
        let f = self.field();
        let mut out = f.zeros(self.dim(n + m));
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
                let c = f.mul(x, y);
                for (k, z) in self.basis_product(n, i, m, j) {
                    out[*k] = f.add(&out[*k], &f.mul(&c, z));
                }
            }
        }
        Some(out)
    }

    pub fn d(&self, n: usize, a: &[Scalar]) -> Option<Vec<Scalar>> {
        if n + 1 > self.top() {
            return None;
        }
        Some(self.complex.d_ref(n).expect("in window").apply(a).expect("shape"))
    }

    /// Evaluates a polynomial in the generators into its homogeneous parts.
    pub fn eval(&self, e: &Expr) -> Result<Vec<Option<Vec<Scalar>>>> {
        let f = self.field();
        let top = self.top();
        let mono = self.monomials.as_ref().ok_or_else(|| Error::Algebra("algebra has no named generators".into()))?;
        let mut out: Vec<Option<Vec<Scalar>>> = vec![None; top + 1];
        match e {
            Expr::Num(a, b) => out[0] = Some(f.scaled_unit(self.dim(0), &f.from_fraction(a, b)?)),
            Expr::Var(v) => {
                let g = mono.generator_index(v).ok_or_else(|| Error::Algebra(format!("unknown generator '{v}'")))?;
                let deg = mono.gens[g].degree;
                if deg <= top {
                    out[deg] = Some(self.generator_value(g));
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let sub = matches!(e, Expr::Sub(..));
                for n in 0..=top {
                    out[n] = match (&x[n], &y[n]) {
                        (None, None) => None,
                        (Some(u), None) => Some(u.clone()),
                        (u, Some(v)) => {
                            let mut w = u.clone().unwrap_or_else(|| f.zeros(self.dim(n)));
                            let c = if sub { f.from_i64(-1) } else { f.one() };
                            f.axpy(&mut w, v, &c);
                            Some(w)
                        }
                    };
                }
            }
            Expr::Neg(a) => {
                out = self.eval(a)?;
                for v in out.iter_mut().flatten() {
                    f.scale(v, &f.from_i64(-1));
                }
            }
            Expr::Mul(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                out = self.mul_mixed(&x, &y);
            }
            Expr::Pow(a, k) => {
                let x = self.eval(a)?;
                let mut acc: Vec<Option<Vec<Scalar>>> = vec![None; top + 1];
                acc[0] = Some(f.unit_vector(self.dim(0), 0));
                for _ in 0..*k {
                    acc = self.mul_mixed(&acc, &x);
                }
                out = acc;
            }
        }
        Ok(out)
    }

    fn mul_mixed(&self, x: &[Option<Vec<Scalar>>], y: &[Option<Vec<Scalar>>]) -> Vec<Option<Vec<Scalar>>> {
        let f = self.field();
        let mut out: Vec<Option<Vec<Scalar>>> = vec![None; self.top() + 1];
        for (n, u) in x.iter().enumerate() {
            for (m, v) in y.iter().enumerate() {
                if let (Some(u), Some(v)) = (u, v) {
                    if let Some(p) = self.mul(n, u, m, v) {
                        let slot = out[n + m].get_or_insert_with(|| f.zeros(self.dim(n + m)));
                        f.axpy(slot, &p, &f.one());
                    }
                }
            }
        }
        out
    }

    /// Evaluates a polynomial that must be homogeneous of degree `n`.
    pub fn eval_homogeneous(&self, e: &Expr, n: usize) -> Result<Vec<Scalar>> {
        let f = self.field();
        let parts = self.eval(e)?;
        for (k, p) in parts.iter().enumerate() {
            if let Some(v) = p {
                if k != n && !f.is_zero_vec(v) {
                    return Err(Error::Algebra(format!("expression has a nonzero part in degree {k}, expected degree {n}")));
                }
            }
        }
        if n > self.top() {
            return Ok(Vec::new());
        }
        Ok(parts[n].clone().unwrap_or_else(|| f.zeros(self.dim(n))))
    }

    /// The cohomology of the underlying complex.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        self.complex.betti()
    }
}

impl FieldSpec {
    fn scaled_unit(&self, dim: usize, c: &Scalar) -> Vec<Scalar> {
        let mut v = self.zeros(dim);
        v[0] = c.clone();
        v
    }
}

pub(crate) fn build_table(complex: &CochainComplex, product: impl Fn(usize, usize, usize, usize) -> Sparse) -> Table {
    let top = complex.len().saturating_sub(1);
    (0..complex.len())
        .map(|n| {
            (0..complex.len())
                .map(|m| {
                    if n + m > top {
                        return Vec::new();
                    }
                    let mut cell = Vec::with_capacity(complex.dim(n) * complex.dim(m));
                    for i in 0..complex.dim(n) {
                        for j in 0..complex.dim(m) {
                            cell.push(product(n, i, m, j));
                        }
                    }
                    cell
                })
                .collect()
        })
        .collect()
}

/// Checks associativity, the Leibniz rule, commutativity when claimed, and
/// that the augmentation is multiplicative and kills boundaries. Exhaustive
/// when the basis has at most 200 elements, otherwise 4000 sampled cases.
pub fn verify_dga(a: &DGAlgebra, seed: u64) -> Result<()> {
    let f = a.field();
    let cells: Vec<(usize, usize)> = (0..=a.top()).flat_map(|n| (0..a.dim(n)).map(move |i| (n, i))).collect();
    let unit = |(n, i): (usize, usize)| f.unit_vector(a.dim(n), i);
    let exhaustive = cells.len() <= 200;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| cells[rng.gen_range(0..cells.len())];
    let fail = |what: &str, xs: &[(usize, usize)]| {
        let names: Vec<String> = xs.iter().map(|&(n, i)| a.label(n, i).to_string()).collect();
        Err(Error::Algebra(format!("{what} fails on {}", names.join(", "))))
    };

    let pairs: Vec<[(usize, usize); 2]> = if exhaustive {
        cells.iter().flat_map(|&x| cells.iter().map(move |&y| [x, y])).collect()
    } else {
        (0..4000).map(|_| [pick(&mut rng), pick(&mut rng)]).collect()
    };
    for &[x, y] in &pairs {
        let (n, m) = (x.0, y.0);
        let (ux, uy) = (unit(x), unit(y));
        if a.commutative {
            if let (Some(xy), Some(mut yx)) = (a.mul(n, &ux, m, &uy), a.mul(m, &uy, n, &ux)) {
                f.scale(&mut yx, &koszul(f, n as i64, m as i64));
                if xy != yx {
                    return fail("graded commutativity", &[x, y]);
                }
            }
        }
        if n + m < a.top() {
            let lhs = a.d(n + m, &a.mul(n, &ux, m, &uy).expect("in window")).expect("in window");
            let mut rhs = a.mul(n + 1, &a.d(n, &ux).expect("in window"), m, &uy).expect("in window");
            let right = a.mul(n, &ux, m + 1, &a.d(m, &uy).expect("in window")).expect("in window");
            f.axpy(&mut rhs, &right, &leibniz(f, n as i64));
            if lhs != rhs {
                return fail("Leibniz rule", &[x, y]);
            }
        }
        if n == 0 && m == 0 {
            let p = a.mul(0, &ux, 0, &uy).expect("degree 0");
            let eps = |v: &[Scalar]| v.iter().zip(&a.augmentation).fold(f.zero(), |s, (c, e)| f.add(&s, &f.mul(c, e)));
            if eps(&p) != f.mul(&eps(&ux), &eps(&uy)) {
                return fail("multiplicativity of the augmentation", &[x, y]);
            }
        }
    }

    let triples: Vec<[(usize, usize); 3]> = if exhaustive {
        let mut t = Vec::new();
        for &x in &cells {
            for &y in &cells {
                if x.0 + y.0 > a.top() {
                    continue;
                }
                for &z in &cells {
                    if x.0 + y.0 + z.0 <= a.top() {
                        t.push([x, y, z]);
                    }
                }
            }
        }
        t
    } else {
        (0..4000).map(|_| [pick(&mut rng), pick(&mut rng), pick(&mut rng)]).collect()
    };
    for &[x, y, z] in &triples {
        let (n, m, k) = (x.0, y.0, z.0);
        if n + m + k > a.top() {
            continue;
        }
        let (ux, uy, uz) = (unit(x), unit(y), unit(z));
        let l = a.mul(n + m, &a.mul(n, &ux, m, &uy).expect("window"), k, &uz).expect("window");
        let r = a.mul(n, &ux, m + k, &a.mul(m, &uy, k, &uz).expect("window")).expect("window");
        if l != r {
            return fail("associativity", &[x, y, z]);
        }
    }
    Ok(())
}

/// The algebra on a monomial basis with product from the free algebra and
/// differential given on generators.
pub(crate) fn monomial_algebra(field: FieldSpec, basis: MonomialBasis, d_gens: &[Option<Vec<Scalar>>]) -> Result<DGAlgebra> {
    let top = basis.top();
    let space = GradedSpace::new(basis.labels()).map_err(|e| Error::Algebra(format!("generator labels clash: {e}")))?;
    let zero_d: Vec<Matrix> = (0..top).map(|n| Matrix::zero(field, basis.by_degree[n + 1].len(), basis.by_degree[n].len())).collect();
    let skeleton = CochainComplex::new(field, space.clone(), zero_d)?;
    let table = build_table(&skeleton, |n, i, m, j| {
        let (a, b) = (&basis.by_degree[n][i], &basis.by_degree[m][j]);
        match basis.product(field, a, b) {
            Some((e, s)) => match basis.lookup(&e) {
                Some((_, k)) => vec![(k, s)],
                None => Vec::new(),
            },
            None => Vec::new(),
        }
    });
    let mut aug = field.zeros(basis.by_degree[0].len());
    aug[0] = field.one();
    let flat = DGAlgebra::from_parts(skeleton, table, aug.clone(), true, Some(basis.clone()))?;
    if d_gens.iter().all(|d| d.as_ref().is_none_or(|v| field.is_zero_vec(v))) {
        return Ok(flat);
    }
    let d = monomial_differential(field, &basis, &flat, d_gens)?;
    for (g, gen) in basis.gens.iter().enumerate() {
        let (Some(dx), true) = (&d_gens[g], gen.degree + 2 <= top) else { continue };
        if !field.is_zero_vec(&d[gen.degree + 1].apply(dx)?) {
            return Err(Error::Algebra(format!("d² ≠ 0 on generator {}", gen.label)));
        }
    }
    let complex = CochainComplex::new(field, space, d).map_err(|e| match e {
        Error::DSquared(n) => Error::Algebra(format!("d² ≠ 0 on degree {n}")),
        other => other,
    })?;
    let table = flat.table;
    DGAlgebra::from_parts(complex, table, aug, true, Some(basis))
}

/// Extends values on generators to a derivation on all monomials:
/// `d(x · rest) = dx · rest + (-1)^|x| x · d(rest)` with `x` the first
/// generator present.
fn monomial_differential(field: FieldSpec, basis: &MonomialBasis, flat: &DGAlgebra, d_gens: &[Option<Vec<Scalar>>]) -> Result<Vec<Matrix>> {
    let top = basis.top();
    let mut dmono: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for n in 0..top {
        let mut cols = Vec::new();
        for e in &basis.by_degree[n] {
            let mut out = field.zeros(basis.by_degree[n + 1].len());
            if let Some(g) = e.iter().position(|&k| k > 0) {
                let mut x = vec![0u32; e.len()];
                x[g] = 1;
                let mut rest = e.clone();
                rest[g] -= 1;
                let dg = basis.gens[g].degree;
                let (_, ix) = basis.lookup(&x).expect("generator below the top");
                let (rn, ri) = basis.lookup(&rest).expect("factor of a stored monomial");
                let ux = field.unit_vector(basis.by_degree[dg].len(), ix);
                let urest = field.unit_vector(basis.by_degree[rn].len(), ri);
                if let Some(dx) = &d_gens[g] {
                    if let Some(p) = flat.mul(dg + 1, dx, rn, &urest) {
                        field.axpy(&mut out, &p, &field.one());
                    }
                }
                if let Some(p) = flat.mul(dg, &ux, rn + 1, &dmono[rn][ri]) {
                    field.axpy(&mut out, &p, &leibniz(field, dg as i64));
                }
            }
            cols.push(out);
        }
        dmono.push(cols);
    }
    (0..top).map(|n| Matrix::from_cols(field, basis.by_degree[n + 1].len(), &dmono[n])).collect()
}

