use crate::algebra::DGAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar};

/// `C(n, k) mod 2` via Lucas: odd iff the bits of `k` are a subset of those of `n`.
fn odd_binomial(n: u32, k: u32) -> bool {
    k <= n && (n & k) == k
}

/// The total square `Sq(v) = Σ_i Sq^i(v)` of a degree-`n` element of a
/// polynomial algebra over `F_2` on degree-one generators, extended
/// multiplicatively from `Sq(x) = x + x²`. Entry `i` holds `Sq^i(v)`.
pub fn total_steenrod_square(a: &DGAlgebra, n: usize, v: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
    let f = a.field();
    if f != FieldSpec::Prime(2) {
        return Err(Error::Algebra("Steenrod squares need characteristic 2".into()));
    }
    let mono = a.monomials().ok_or_else(|| Error::Algebra("Steenrod squares need named generators".into()))?;
    if mono.gens.iter().any(|g| g.degree != 1) {
        return Err(Error::Algebra("Steenrod squares are implemented for degree-one generators only".into()));
    }
    if 2 * n > a.top() {
        return Err(Error::Bounds(format!("Sq of a degree-{n} class needs the window up to {}", 2 * n)));
    }
    let mut out: Vec<Vec<Scalar>> = (0..=n).map(|i| f.zeros(a.dim(n + i))).collect();
    for (idx, c) in v.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let e = &mono.by_degree[n][idx];
        // Π_g (x_g + x_g²)^{e_g} = Π_g Σ_j C(e_g, j) x_g^{e_g + j}
        let mut terms: Vec<Vec<u32>> = vec![Vec::new()];
        for &eg in e {
            terms = terms
                .into_iter()
                .flat_map(|t| (0..=eg).filter(move |&j| odd_binomial(eg, j)).map(move |j| t.iter().copied().chain([eg + j]).collect::<Vec<u32>>()))
                .collect();
        }
        for t in terms {
            let (deg, i) = mono.lookup(&t).ok_or_else(|| Error::Bounds("square past the monomial window".into()))?;
            let slot = &mut out[deg - n][i];
            *slot = f.add(slot, c);
        }
    }
    Ok(out)
}

/// `Sq^i(v)` for `v` of degree `n`.
pub fn steenrod_square(a: &DGAlgebra, i: usize, n: usize, v: &[Scalar]) -> Result<Vec<Scalar>> {
    let total = total_steenrod_square(a, n, v)?;
    Ok(total.into_iter().nth(i).unwrap_or_else(|| a.field().zeros(a.dim(n + i))))
}
