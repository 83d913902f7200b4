/// Sends an EM bidegree `(p, q)` to the trigraded triple `(s, t, u)` with
/// `s = p + n`, `t = p`, `u = -2p`, where `n = p + q`.
pub fn index_transform(p: i64, q: i64) -> (i64, i64, i64) {
    let n = p + q;
    (p + n, p, -2 * p)
}

/// Inverse of [`index_transform`] on its image.
pub fn index_transform_inverse(s: i64, t: i64, u: i64) -> Option<(i64, i64)> {
    if u != -2 * t {
        return None;
    }
    let n = s - t;
    Some((t, n - t))
}

/// The LS bidegree `(s, n - s)` that the EM entry `(p, q)` lands on after the
/// transform.
pub fn em_to_ls(p: i64, q: i64) -> (i64, i64) {
    let (s, _, _) = index_transform(p, q);
    let n = p + q;
    (s, n - s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degree_is_preserved() {
        let (s, t, u) = index_transform(-2, 7);
        assert_eq!(s + t + u, 5);
        assert_eq!((s, t, u), (3, -2, 4));
    }

    #[test]
    fn d2_goes_to_d3() {
        let (a, b) = (em_to_ls(-2, 2), em_to_ls(0, 1));
        assert_eq!(b.0 - a.0, 3);
        assert_eq!((b.0 + b.1) - (a.0 + a.1), 1);
    }

    proptest! {
        #[test]
        fn roundtrip(p in -50i64..50, q in -50i64..50) {
            let (s, t, u) = index_transform(p, q);
            prop_assert_eq!(index_transform_inverse(s, t, u), Some((p, q)));
            prop_assert_eq!(s + t + u, p + q);
        }
    }
}
