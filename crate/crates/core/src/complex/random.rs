use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cochain::CochainComplex;
use super::filtered::{BifilteredComplex, FilteredComplex, Truncation};
use super::graded::GradedSpace;
use crate::linalg::{FieldSpec, Matrix, Scalar, Subspace};

/// Size limits for random complexes.
#[derive(Clone, Copy, Debug)]
pub struct RandomBounds {
    pub max_degree: usize,
    pub max_dim: usize,
    pub steps: usize,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds { max_degree: 3, max_dim: 3, steps: 3 }
    }
}

/// A basis element of the split model: degree, two filtration weights, and
/// the index of its partner if it is the source of a differential.
struct Cell {
    degree: usize,
    f: i64,
    w: i64,
    target: Option<usize>,
}

fn random_scalar(field: FieldSpec, rng: &mut ChaCha8Rng, nonzero: bool) -> Scalar {
    loop {
        let x = field.from_i64(rng.gen_range(-3..=3));
        if !nonzero || !field.is_zero(&x) {
            return x;
        }
    }
}

fn random_invertible(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    // unit lower times unit upper triangular
    let mut l = Matrix::identity(field, n);
    let mut u = Matrix::identity(field, n);
    for i in 0..n {
        for j in 0..n {
            if i > j {
                l.set(i, j, random_scalar(field, rng, false));
            } else if i < j {
                u.set(i, j, random_scalar(field, rng, false));
            }
        }
    }
    l.mul(&u).expect("square")
}

/// Generates cells of a split bifiltered complex: each cell is either a
/// lone cocycle or the source of `d` onto a partner one degree up whose
/// weights are no smaller.
fn random_cells(rng: &mut ChaCha8Rng, b: RandomBounds) -> Vec<Cell> {
    let mut cells = Vec::new();
    let mut count = vec![0usize; b.max_degree + 1];
    let steps = b.steps.max(1) as i64;
    let attempts = rng.gen_range(0..=(b.max_dim * (b.max_degree + 1)));
    for _ in 0..attempts {
        let n = rng.gen_range(0..=b.max_degree);
        if count[n] >= b.max_dim {
            continue;
        }
        let f = rng.gen_range(0..steps);
        let w = rng.gen_range(0..steps);
        let paired = n < b.max_degree && count[n + 1] < b.max_dim && rng.gen_bool(0.6);
        count[n] += 1;
        if paired {
            count[n + 1] += 1;
            let idx = cells.len();
            cells.push(Cell { degree: n, f, w, target: Some(idx + 1) });
            cells.push(Cell {
                degree: n + 1,
                f: rng.gen_range(f..steps),
                w: rng.gen_range(w..steps),
                target: None,
            });
        } else {
            cells.push(Cell { degree: n, f, w, target: None });
        }
    }
    cells
}

struct Assembled {
    complex: CochainComplex,
    f_weights: Vec<Vec<i64>>,
    w_weights: Vec<Vec<i64>>,
    change: Vec<Matrix>,
}

fn assemble(field: FieldSpec, cells: &[Cell], top: usize, rng: &mut ChaCha8Rng, scramble: bool) -> Assembled {
    let mut position = vec![0usize; cells.len()];
    let mut dims = vec![0usize; top + 1];
    let mut f_weights = vec![Vec::new(); top + 1];
    let mut w_weights = vec![Vec::new(); top + 1];
    for (i, c) in cells.iter().enumerate() {
        position[i] = dims[c.degree];
        dims[c.degree] += 1;
        f_weights[c.degree].push(c.f);
        w_weights[c.degree].push(c.w);
    }
    let mut d: Vec<Matrix> = (0..top).map(|n| Matrix::zero(field, dims[n + 1], dims[n])).collect();
    for (i, c) in cells.iter().enumerate() {
        if let Some(t) = c.target {
            d[c.degree].set(position[t], position[i], random_scalar(field, rng, true));
        }
    }
    let change: Vec<Matrix> = (0..=top)
        .map(|n| if scramble { random_invertible(field, dims[n], rng) } else { Matrix::identity(field, dims[n]) })
        .collect();
    if scramble {
        for n in 0..top {
            let inv = change[n].inverse().expect("invertible");
            d[n] = change[n + 1].mul(&d[n]).unwrap().mul(&inv).unwrap();
        }
    }
    let complex = CochainComplex::new(field, GradedSpace::from_dims(&dims), d).expect("split model has d² = 0");
    Assembled { complex, f_weights, w_weights, change }
}

fn filtration_from(a: &Assembled, weights: &[Vec<i64>], steps: usize) -> FilteredComplex {
    let field = a.complex.field();
    let levels = (0..steps.max(1) as i64)
        .map(|s| {
            (0..a.complex.len())
                .map(|n| {
                    let cols = weights[n]
                        .iter()
                        .enumerate()
                        .filter(|(_, &w)| w >= s)
                        .map(|(i, _)| a.change[n].col(i))
                        .collect();
                    Subspace::span(field, a.complex.dim(n), cols).expect("shape")
                })
                .collect()
        })
        .collect();
    FilteredComplex::new(a.complex.clone(), 0, levels, Truncation::exact()).expect("valid by construction")
}

/// A random cochain complex with the given dimensions' upper bounds.
pub fn random_complex(field: FieldSpec, max_dims: &[usize], seed: u64) -> CochainComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = max_dims.len().saturating_sub(1);
    let max_dim = max_dims.iter().copied().max().unwrap_or(0);
    let cells: Vec<Cell> = random_cells(&mut rng, RandomBounds { max_degree: top, max_dim, steps: 1 })
        .into_iter()
        .collect();
    // respect per-degree limits by dropping whole pairs
    let mut kept = Vec::new();
    let mut count = vec![0usize; top + 1];
    let mut i = 0;
    while i < cells.len() {
        let c = &cells[i];
        if let Some(t) = c.target {
            let ok = count[c.degree] < max_dims[c.degree] && count[c.degree + 1] < max_dims[c.degree + 1];
            if ok {
                count[c.degree] += 1;
                count[c.degree + 1] += 1;
                let base = kept.len();
                kept.push(Cell { degree: c.degree, f: 0, w: 0, target: Some(base + 1) });
                kept.push(Cell { degree: cells[t].degree, f: 0, w: 0, target: None });
            }
            i += 2;
        } else {
            if count[c.degree] < max_dims[c.degree] {
                count[c.degree] += 1;
                kept.push(Cell { degree: c.degree, f: 0, w: 0, target: None });
            }
            i += 1;
        }
    }
    if max_dims.is_empty() {
        return CochainComplex::from_space(field, GradedSpace::default());
    }
    assemble(field, &kept, top, &mut rng, true).complex
}

/// A random filtered complex with filtration indices in `0..steps`, in a
/// scrambled basis so that the filtration is not a coordinate one.
pub fn random_filtered_complex(field: FieldSpec, seed: u64, bounds: RandomBounds) -> FilteredComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = random_cells(&mut rng, bounds);
    let a = assemble(field, &cells, bounds.max_degree, &mut rng, true);
    filtration_from(&a, &a.f_weights, bounds.steps)
}

/// A random bifiltered complex; both filtrations are split in a common scrambled basis.
pub fn random_bifiltered_complex(field: FieldSpec, seed: u64, bounds: RandomBounds) -> BifilteredComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = random_cells(&mut rng, bounds);
    let a = assemble(field, &cells, bounds.max_degree, &mut rng, true);
    let f = filtration_from(&a, &a.f_weights, bounds.steps);
    let w = filtration_from(&a, &a.w_weights, bounds.steps);
    BifilteredComplex::new(f, w).expect("same complex")
}
