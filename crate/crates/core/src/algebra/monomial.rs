use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::linalg::{FieldSpec, Scalar};
use crate::sign::koszul;

/// A generator of a free graded-commutative (or polynomial) algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub degree: usize,
    /// Squares to zero.
    pub exterior: bool,
}

impl Generator {
    pub fn new(label: impl Into<String>, degree: usize, exterior: bool) -> Self {
        Generator { label: label.into(), degree, exterior }
    }
}

/// Monomials of degree `≤ top` in a fixed generator list, by degree, in
/// graded-lex order (higher powers of earlier generators first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub gens: Vec<Generator>,
    pub by_degree: Vec<Vec<Vec<u32>>>,
    index: HashMap<Vec<u32>, (usize, usize)>,
}

impl MonomialBasis {
    pub fn new(gens: Vec<Generator>, top: usize) -> Self {
        let mut by_degree: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top + 1];
        let mut cur = vec![0u32; gens.len()];
        enumerate(&gens, 0, 0, top, &mut cur, &mut by_degree);
        for list in &mut by_degree {
            list.sort_by(|a, b| b.cmp(a));
        }
        Self::from_lists(gens, by_degree)
    }

    pub(crate) fn from_lists(gens: Vec<Generator>, by_degree: Vec<Vec<Vec<u32>>>) -> Self {
        let mut index = HashMap::new();
        for (n, list) in by_degree.iter().enumerate() {
            for (i, e) in list.iter().enumerate() {
                index.insert(e.clone(), (n, i));
            }
        }
        MonomialBasis { gens, by_degree, index }
    }

    pub fn top(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn degree(&self, e: &[u32]) -> usize {
        e.iter().zip(&self.gens).map(|(&k, g)| k as usize * g.degree).sum()
    }

    pub fn lookup(&self, e: &[u32]) -> Option<(usize, usize)> {
        self.index.get(e).copied()
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.label == label)
    }

    pub fn label(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(&self.gens)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, g)| if k == 1 { g.label.clone() } else { format!("{}^{k}", g.label) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }

    pub fn labels(&self) -> Vec<Vec<String>> {
        self.by_degree.iter().map(|l| l.iter().map(|e| self.label(e)).collect()).collect()
    }

    /// `a · b` in the free algebra: the product exponent and the Koszul sign
    /// of sorting the factors, or `None` when an exterior generator repeats.
    pub fn product(&self, field: FieldSpec, a: &[u32], b: &[u32]) -> Option<(Vec<u32>, Scalar)> {
        let mut out = Vec::with_capacity(a.len());
        for (i, g) in self.gens.iter().enumerate() {
            let k = a[i] + b[i];
            if g.exterior && k > 1 {
                return None;
            }
            out.push(k);
        }
        // move each factor of b leftwards past the later factors of a
        let mut swaps = 0i64;
        for j in 0..self.gens.len() {
            if b[j] == 0 {
                continue;
            }
            let later: i64 = (j + 1..self.gens.len()).map(|i| a[i] as i64 * self.gens[i].degree as i64).sum();
            swaps += later * b[j] as i64 * self.gens[j].degree as i64;
        }
        Some((out, koszul(field, swaps, 1)))
    }
}

fn enumerate(gens: &[Generator], i: usize, deg: usize, top: usize, cur: &mut Vec<u32>, out: &mut [Vec<Vec<u32>>]) {
    if i == gens.len() {
        out[deg].push(cur.clone());
        return;
    }
    let g = &gens[i];
    let max = if g.exterior { 1 } else if g.degree == 0 { 0 } else { ((top - deg) / g.degree) as u32 };
    for k in 0..=max {
        let d = deg + k as usize * g.degree;
        if d > top {
            break;
        }
        cur[i] = k;
        enumerate(gens, i + 1, d, top, cur, out);
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let b = MonomialBasis::new(vec![Generator::new("c", 2, false)], 8);
        let dims: Vec<usize> = b.by_degree.iter().map(|l| l.len()).collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let b = MonomialBasis::new(vec![Generator::new("x", 1, false), Generator::new("y", 1, false)], 6);
        for n in 0..=6 {
            assert_eq!(b.by_degree[n].len(), n + 1);
        }
        assert_eq!(b.by_degree[2][0], vec![2, 0]);
        assert_eq!(b.label(&[2, 1]), "x^2·y");
    }

    #[test]
    fn exterior_signs() {
        let q = FieldSpec::Rationals;
        let b = MonomialBasis::new(vec![Generator::new("u", 3, true), Generator::new("v", 3, true)], 6);
        let (e, s) = b.product(q, &[0, 1], &[1, 0]).unwrap();
        assert_eq!(e, vec![1, 1]);
        assert_eq!(s, q.from_i64(-1));
        assert!(b.product(q, &[1, 0], &[1, 0]).is_none());
        let (_, s) = b.product(q, &[1, 0], &[0, 1]).unwrap();
        assert_eq!(s, q.one());
    }
}
