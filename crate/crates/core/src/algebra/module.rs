use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dga::{DGAlgebra, Sparse};
use crate::complex::{CochainComplex, GradedSpace};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar};
use crate::sign::leibniz;

/// A left DG module over a [`DGAlgebra`], stored through its action table
/// `action[n][m][i * dim_m + j] = a^n_i · x^m_j`.
#[derive(Clone, Debug)]
pub struct DGModule {
    complex: CochainComplex,
    action: Vec<Vec<Vec<Sparse>>>,
    algebra_dims: Vec<usize>,
}

impl DGModule {
    /// Builds the action table from `act(n, i, m, j)`; checks that the unit
    /// acts as the identity. The other axioms are checked by
    /// [`verify_module`].
    pub fn new(a: &DGAlgebra, complex: CochainComplex, act: impl Fn(usize, usize, usize, usize) -> Sparse) -> Result<Self> {
        if a.field() != complex.field() {
            return Err(Error::FieldMismatch(a.field(), complex.field()));
        }
        let top = complex.len().saturating_sub(1);
        let action: Vec<Vec<Vec<Sparse>>> = (0..=a.top())
            .map(|n| {
                (0..complex.len())
                    .map(|m| {
                        if n + m > top {
                            return Vec::new();
                        }
                        let mut cell = Vec::with_capacity(a.dim(n) * complex.dim(m));
                        for i in 0..a.dim(n) {
                            for j in 0..complex.dim(m) {
                                cell.push(act(n, i, m, j));
                            }
                        }
                        cell
                    })
                    .collect()
            })
            .collect();
        let module = DGModule { complex, action, algebra_dims: a.dims() };
        let f = a.field();
        for m in 0..module.complex.len() {
            for j in 0..module.complex.dim(m) {
                if module.action[0][m][j] != vec![(j, f.one())] {
                    return Err(Error::Module(format!("unit does not fix {}", module.complex.space().labels(m)[j])));
                }
            }
        }
        Ok(module)
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(a: &DGAlgebra) -> Self {
        DGModule::new(a, a.complex().clone(), |n, i, m, j| a.basis_product(n, i, m, j).clone()).expect("unit acts trivially")
    }

    /// The ground field in degree 0, acted on through the augmentation,
    /// stored with the same window as `a`.
    pub fn trivial(a: &DGAlgebra) -> Self {
        let f = a.field();
        let mut labels = vec![Vec::new(); a.top() + 1];
        labels[0].push("1".to_string());
        let c = CochainComplex::from_space(f, GradedSpace::new(labels).expect("one label"));
        DGModule::new(a, c, |n, i, _, _| {
            if n == 0 && !f.is_zero(&a.augmentation()[i]) {
                vec![(0, a.augmentation()[i].clone())]
            } else {
                Vec::new()
            }
        })
        .expect("augmentation sends the unit to 1")
    }

    pub fn field(&self) -> FieldSpec {
        self.complex.field()
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn top(&self) -> usize {
        self.complex.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.complex.dim(n)
    }

    pub fn label(&self, n: usize, j: usize) -> &str {
        &self.complex.space().labels(n)[j]
    }

    pub fn algebra_top(&self) -> usize {
        self.algebra_dims.len() - 1
    }

    pub fn basis_action(&self, n: usize, i: usize, m: usize, j: usize) -> &Sparse {
        &self.action[n][m][i * self.dim(m) + j]
    }

    /// Whether positive-degree elements act by zero.
    pub fn is_augmentation_module(&self) -> bool {
        (1..self.action.len()).all(|n| self.action[n].iter().all(|cell| cell.iter().all(|v| v.is_empty())))
    }

    /// `a · x` with `a` of degree `n`, `x` of degree `m`; `None` past the window.
    pub fn act(&self, n: usize, a: &[Scalar], m: usize, x: &[Scalar]) -> Option<Vec<Scalar>> {
        if n + m > self.top() || n > self.algebra_top() {
            return None;
        }
        let f = self.field();
        let mut out = f.zeros(self.dim(n + m));
        for (i, c) in a.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
            for (j, y) in x.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
                let cy = f.mul(c, y);
                for (k, z) in self.basis_action(n, i, m, j) {
                    out[*k] = f.add(&out[*k], &f.mul(&cy, z));
                }
            }
        }
        Some(out)
    }
}

/// Checks associativity of the action and the Leibniz rule
/// `d(a·x) = da·x + (-1)^|a| a·dx`, exhaustively for small bases and on
/// 4000 sampled cases otherwise.
pub fn verify_module(a: &DGAlgebra, m: &DGModule, seed: u64) -> Result<()> {
    let f = a.field();
    let acells: Vec<(usize, usize)> = (0..=a.top()).flat_map(|n| (0..a.dim(n)).map(move |i| (n, i))).collect();
    let mcells: Vec<(usize, usize)> = (0..=m.top()).flat_map(|n| (0..m.dim(n)).map(move |i| (n, i))).collect();
    let exhaustive = acells.len() * acells.len() * mcells.len() <= 200_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<((usize, usize), (usize, usize), (usize, usize))> = if exhaustive {
        let mut v = Vec::new();
        for &x in &acells {
            for &y in &acells {
                for &z in &mcells {
                    v.push((x, y, z));
                }
            }
        }
        v
    } else {
        (0..4000)
            .map(|_| {
                (
                    acells[rng.gen_range(0..acells.len())],
                    acells[rng.gen_range(0..acells.len())],
                    mcells[rng.gen_range(0..mcells.len())],
                )
            })
            .collect()
    };
    let ua = |(n, i): (usize, usize)| f.unit_vector(a.dim(n), i);
    let um = |(n, i): (usize, usize)| f.unit_vector(m.dim(n), i);
    for (x, y, z) in cases {
        let (p, q, r) = (x.0, y.0, z.0);
        if p + q + r <= m.top() {
            let l = m.act(p + q, &a.mul(p, &ua(x), q, &ua(y)).expect("window"), r, &um(z)).expect("window");
            let rr = m.act(p, &ua(x), q + r, &m.act(q, &ua(y), r, &um(z)).expect("window")).expect("window");
            if l != rr {
                return Err(Error::Module(format!("action is not associative on {}, {}, {}", a.label(p, x.1), a.label(q, y.1), m.label(r, z.1))));
            }
        }
        if p + r < m.top() && p < a.top() {
            let ax = m.act(p, &ua(x), r, &um(z)).expect("window");
            let lhs = m.complex().d_ref(p + r).expect("window").apply(&ax)?;
            let mut rhs = m.act(p + 1, &a.d(p, &ua(x)).expect("window"), r, &um(z)).expect("window");
            let dx = m.complex().d_ref(r).expect("window").apply(&um(z))?;
            f.axpy(&mut rhs, &m.act(p, &ua(x), r + 1, &dx).expect("window"), &leibniz(f, p as i64));
            if lhs != rhs {
                return Err(Error::Module(format!("Leibniz rule fails on {} · {}", a.label(p, x.1), m.label(r, z.1))));
            }
        }
    }
    Ok(())
}
