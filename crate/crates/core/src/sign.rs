//! The one place where Koszul signs are decided. Tensor products, algebra
//! constructions and the bar complex all route their signs through here.

use crate::linalg::{FieldSpec, Scalar};

/// `(-1)^(a*b)`: the sign for moving an element of degree `b` past one of degree `a`.
pub fn koszul(field: FieldSpec, a: i64, b: i64) -> Scalar {
    field.sign(a * b)
}

/// Sign of `x ⊗ dy` in `d(x ⊗ y) = dx ⊗ y + (-1)^|x| x ⊗ dy`.
pub fn leibniz(field: FieldSpec, deg_x: i64) -> Scalar {
    field.sign(deg_x)
}

/// Sign of the `i`-th summand of a differential acting on a tensor word,
/// where `preceding` is the total degree of the factors to its left.
pub fn word_position(field: FieldSpec, preceding: i64) -> Scalar {
    field.sign(preceding)
}

/// Differential of the suspension: `d(sa) = sign * s(da)`.
pub fn suspended_differential(field: FieldSpec) -> Scalar {
    field.one()
}

/// `m ⊗ sa ↦ sign * (m·a)` in the bar complex.
pub fn bar_left_action(field: FieldSpec, deg_m: i64, deg_a: i64) -> Scalar {
    field.sign(deg_m + deg_a)
}

/// `sa ⊗ sb ↦ sign * s(ab)` in the bar complex.
pub fn bar_product(field: FieldSpec, deg_a: i64) -> Scalar {
    field.sign(deg_a - 1)
}

/// `sa ⊗ n ↦ sign * (a·n)` in the bar complex.
pub fn bar_right_action(field: FieldSpec, deg_a: i64) -> Scalar {
    field.sign(deg_a - 1)
}
