//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

/// Multiplication table of the dihedral group of order 8, elements
/// `r^a s^b` indexed by `a + 4b`.
pub fn dihedral8() -> Vec<Vec<usize>> {
    let elt = |i: usize| (i % 4, i / 4);
    let idx = |(a, b): (usize, usize)| a + 4 * b;
    (0..8)
        .map(|i| {
            (0..8)
                .map(|j| {
                    let ((a, b), (c, d)) = (elt(i), elt(j));
                    // r^a s^b r^c s^d = r^{a ± c} s^{b+d}
                    let c = if b == 1 { (4 - c) % 4 } else { c };
                    idx(((a + c) % 4, (b + d) % 2))
                })
                .collect()
        })
        .collect()
}

/// Multiplication table of the quaternion group, elements `±1, ±i, ±j, ±k`
/// indexed by `unit + 4 * sign` with units `1, i, j, k`.
pub fn quaternion8() -> Vec<Vec<usize>> {
    // unit products: (unit, negate)
    let table = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    (0..8)
        .map(|i| {
            (0..8)
                .map(|j| {
                    let (u, neg) = table[i % 4][j % 4];
                    let sign = (i / 4 + j / 4 + usize::from(neg)) % 2;
                    u + 4 * sign
                })
                .collect()
        })
        .collect()
}

/// Row-reduces `rows` over F_2 in place, returning the rank.
fn f2_rank(rows: &mut Vec<u128>) -> usize {
    let mut rank = 0;
    for bit in 0..128 {
        let mask = 1u128 << bit;
        let Some(pos) = (rank..rows.len()).find(|&i| rows[i] & mask != 0) else { continue };
        rows.swap(rank, pos);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r & mask != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rank
}

fn f2_contains(basis: &[u128], v: u128) -> bool {
    let mut rows = basis.to_vec();
    let r = f2_rank(&mut rows);
    rows.push(v);
    f2_rank(&mut rows) == r
}

/// `g · v` for `v` in the free module `F_2[G]^r`, coordinates `h + |G| k`.
fn act(mult: &[Vec<usize>], g: usize, v: u128, r: usize) -> u128 {
    let n = mult.len();
    let mut out = 0;
    for k in 0..r {
        for h in 0..n {
            if v >> (h + n * k) & 1 == 1 {
                out ^= 1 << (mult[g][h] + n * k);
            }
        }
    }
    out
}

/// Nullspace of the F_2-linear map `e_i ↦ images[i]`.
fn kernel(images: &[u128]) -> Vec<u128> {
    // augment each image with its index bit
    let width = 128 - images.len();
    let mut rows: Vec<u128> = images.iter().enumerate().map(|(i, &v)| v | 1 << (width + i)).collect();
    let low = (1u128 << width) - 1;
    f2_rank(&mut rows);
    rows.into_iter().filter(|r| r & low == 0).map(|r| r >> width).collect()
}

/// `dim H^n(G; F_2)` for `n ≤ top`, from a minimal free resolution of the
/// trivial module over `F_2[G]`. Valid for 2-groups, where `F_2[G]` is local.
pub fn group_cohomology_f2(mult: &[Vec<usize>], top: usize) -> Vec<usize> {
    let n = mult.len();
    // K_0 = augmentation ideal inside F_2[G]^1
    let mut module: Vec<u128> = (1..n).map(|g| 1 | 1 << g).collect();
    let mut rank_prev = 1;
    let mut dims = vec![1];
    while dims.len() <= top {
        // radical: span of (g - 1)·k
        let mut rad: Vec<u128> = Vec::new();
        for &k in &module {
            for g in 1..n {
                rad.push(act(mult, g, k, rank_prev) ^ k);
            }
        }
        f2_rank(&mut rad);
        let mut gens = Vec::new();
        let mut span = rad.clone();
        for &k in &module {
            if !f2_contains(&span, k) {
                gens.push(k);
                span.push(k);
            }
        }
        let m = gens.len();
        dims.push(m);
        assert!(n * m + n * rank_prev <= 128, "resolution too wide for the oracle");
        // images of the F_2-basis g·e_i of F_2[G]^m
        let images: Vec<u128> = (0..m).flat_map(|i| (0..n).map(move |g| (i, g))).map(|(i, g)| act(mult, g, gens[i], rank_prev)).collect();
        // basis index i*n + g corresponds to coordinate g + n*i
        module = kernel(&images);
        rank_prev = m;
    }
    dims
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_group(m: &[Vec<usize>]) -> bool {
        let n = m.len();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m[m[a][b]][c] == m[a][m[b][c]]))) && (0..n).all(|a| m[0][a] == a && m[a][0] == a)
    }

    #[test]
    fn tables_are_groups() {
        assert!(is_group(&dihedral8()));
        assert!(is_group(&quaternion8()));
    }

    #[test]
    fn cyclic_group_of_order_two() {
        let c2 = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(group_cohomology_f2(&c2, 5), vec![1; 6]);
    }
}
