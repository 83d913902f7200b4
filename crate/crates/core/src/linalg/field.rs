use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime characteristics are capped below 2^31 so products fit in a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

/// The ground field: the rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

/// An exact scalar; residues lie in `[0, p)`.
///
/// Rationals are in lowest terms with positive denominator. A rational is
/// `Rat(num, den)` whenever both fit an `i64` (with `num > i64::MIN`) and
/// `Big` otherwise, so equal values have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u32),
    Rat(i64, i64),
    Big(Box<BigRational>),
}

fn small(num: i128, den: i128) -> Option<Scalar> {
    let n = i64::try_from(num).ok().filter(|&n| n != i64::MIN)?;
    Some(Scalar::Rat(n, i64::try_from(den).ok()?))
}

/// `num / den` in lowest terms, `den != 0`.
fn rat128(num: i128, den: i128) -> Scalar {
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / g, den / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    small(n, d).unwrap_or_else(|| Scalar::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))))
}

fn rat_big(r: BigRational) -> Scalar {
    match (r.numer().to_i128(), r.denom().to_i128()) {
        (Some(n), Some(d)) => small(n, d).unwrap_or_else(|| Scalar::Big(Box::new(r))),
        _ => Scalar::Big(Box::new(r)),
    }
}

fn to_big(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rat(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
        Scalar::Big(r) => (**r).clone(),
        Scalar::Mod(_) => panic!("scalar from a different field"),
    }
}

fn rat_add(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rat(x, y), Scalar::Rat(u, v)) => {
            let (x, y, u, v) = (*x as i128, *y as i128, *u as i128, *v as i128);
            if y == v {
                rat128(x + u, y)
            } else {
                rat128(x * v + u * y, y * v)
            }
        }
        _ => rat_big(to_big(a) + to_big(b)),
    }
}

fn rat_mul(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rat(x, y), Scalar::Rat(u, v)) => rat128(*x as i128 * *u as i128, *y as i128 * *v as i128),
        _ => rat_big(to_big(a) * to_big(b)),
    }
}

fn is_rat(s: &Scalar) -> bool {
    !matches!(s, Scalar::Mod(_))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(0, 1),
            FieldSpec::Prime(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => rat128(v as i128, 1),
            FieldSpec::Prime(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u32),
        }
    }

    /// `num / den`; fails when `den` vanishes in this field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => {
                if den.is_zero() {
                    return Err(Error::Invalid("zero denominator".into()));
                }
                Ok(rat_big(BigRational::new(num.clone(), den.clone())))
            }
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = x % &pb;
                    let r = if r.is_negative() { r + &pb } else { r };
                    r.to_u32().expect("residue fits")
                };
                let d = reduce(den);
                if d == 0 {
                    return Err(Error::Invalid(format!("denominator vanishes mod {p}")));
                }
                let n = Scalar::Mod(reduce(num));
                Ok(self.mul(&n, &self.inv(&Scalar::Mod(d)).expect("nonzero")))
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (FieldSpec::Rationals, Scalar::Rat(..) | Scalar::Big(_)) | (FieldSpec::Prime(_), Scalar::Mod(_))
        ) && match (self, s) {
            (FieldSpec::Prime(p), Scalar::Mod(x)) => x < p,
            (_, Scalar::Rat(n, d)) => *d > 0 && *n != i64::MIN && n.gcd(d) == 1,
            (_, Scalar::Big(r)) => rat_big((**r).clone()) == *s,
            _ => true,
        }
    }

    #[inline]
    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Mod(x) => *x == 0,
            Scalar::Rat(n, _) => *n == 0,
            Scalar::Big(_) => false,
        }
    }

    #[inline]
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (FieldSpec::Rationals, x, y) if is_rat(x) && is_rat(y) => rat_add(x, y),
            _ => panic!("scalar from a different field"),
        }
    }

    #[inline]
    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            (FieldSpec::Rationals, Scalar::Rat(n, d)) => Scalar::Rat(-n, *d),
            (FieldSpec::Rationals, Scalar::Big(r)) => rat_big(-(**r).clone()),
            _ => panic!("scalar from a different field"),
        }
    }

    #[inline]
    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (FieldSpec::Rationals, x, y) if is_rat(x) && is_rat(y) => rat_mul(x, y),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Mod(x)) => Some(Scalar::Mod(pow_mod(*x, p - 2, *p))),
            (FieldSpec::Rationals, Scalar::Rat(n, d)) => Some(rat128(*d as i128, *n as i128)),
            (FieldSpec::Rationals, Scalar::Big(r)) => Some(rat_big(r.recip())),
            _ => panic!("scalar from a different field"),
        }
    }

    /// `(-1)^k` as a field element.
    pub fn sign(&self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    /// `dst += c * src`, skipping zero entries of `src`.
    pub fn axpy(&self, dst: &mut [Scalar], src: &[Scalar], c: &Scalar) {
        debug_assert_eq!(dst.len(), src.len());
        match (self, c) {
            (FieldSpec::Prime(p), Scalar::Mod(c)) => {
                let p = *p as u64;
                let c = *c as u64;
                if c == 0 {
                    return;
                }
                for (d, s) in dst.iter_mut().zip(src) {
                    if let (Scalar::Mod(x), Scalar::Mod(y)) = (d, s) {
                        if *y != 0 {
                            *x = ((*x as u64 + c * *y as u64) % p) as u32;
                        }
                    }
                }
            }
            (FieldSpec::Rationals, c) => {
                if self.is_zero(c) {
                    return;
                }
                for (d, s) in dst.iter_mut().zip(src) {
                    if !self.is_zero(s) {
                        *d = rat_add(d, &rat_mul(c, s));
                    }
                }
            }
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn scale(&self, v: &mut [Scalar], c: &Scalar) {
        for x in v.iter_mut() {
            if !self.is_zero(x) {
                *x = self.mul(x, c);
            }
        }
    }

    pub fn zeros(&self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    pub fn unit_vector(&self, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = self.zeros(n);
        v[i] = self.one();
        v
    }

    pub fn is_zero_vec(&self, v: &[Scalar]) -> bool {
        v.iter().all(|x| self.is_zero(x))
    }
}

fn pow_mod(mut b: u32, mut e: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut acc = 1u64;
    let mut base = b as u64 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    b = acc as u32;
    b
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q`, `Q`, `f2`, `F3`, `F_5`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rationals" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t.trim_start_matches('f').trim_start_matches('_');
        match digits.parse::<u64>() {
            Ok(p) if t.starts_with('f') => FieldSpec::prime(p),
            _ => Err(Error::Invalid(format!("unknown field `{s}`"))),
        }
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(x) => write!(f, "{x}"),
            Scalar::Rat(n, 1) => write!(f, "{n}"),
            Scalar::Rat(n, d) => write!(f, "{n}/{d}"),
            Scalar::Big(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(5).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(f.add(&a, &b), Scalar::Mod(2));
        assert_eq!(f.mul(&a, &b), Scalar::Mod(2));
        assert_eq!(f.inv(&a), Some(Scalar::Mod(2)));
        assert_eq!(f.from_i64(-1), Scalar::Mod(4));
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn rejects_composite_and_huge() {
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(MAX_PRIME + 11).is_err());
        assert!("f7".parse::<FieldSpec>().is_ok());
        assert!("f9".parse::<FieldSpec>().is_err());
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldSpec::Rationals;
        let x = q.from_fraction(&BigInt::from(4), &BigInt::from(-6)).unwrap();
        assert_eq!(x.to_string(), "-2/3");
        let y = q.mul(&x, &q.from_i64(3));
        assert_eq!(y, q.from_i64(-2));
    }

    #[test]
    fn rationals_overflow_into_bigints_and_back() {
        let q = FieldSpec::Rationals;
        let big = q.from_i64(i64::MAX);
        let sq = q.mul(&big, &big);
        assert!(matches!(sq, Scalar::Big(_)));
        assert!(q.contains(&sq));
        let back = q.mul(&sq, &q.inv(&big).unwrap());
        assert_eq!(back, big);
        assert_eq!(q.add(&sq, &q.neg(&sq)), q.zero());
        assert!(matches!(q.neg(&q.from_i64(i64::MIN + 1)), Scalar::Rat(..)));
        assert!(matches!(q.from_i64(i64::MIN), Scalar::Big(_)));
        assert!(!q.contains(&Scalar::Rat(2, 4)));
    }

    #[test]
    fn fraction_mod_p() {
        let f = FieldSpec::Prime(3);
        assert!(f.from_fraction(&BigInt::from(1), &BigInt::from(3)).is_err());
        assert_eq!(
            f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap(),
            Scalar::Mod(2)
        );
    }
}
