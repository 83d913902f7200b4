//! Polynomial expressions over generator labels.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | ident | '(' expr ')'
//! ident  := letter (letter | digit | '_' | '\'')*
//! ```
//!
//! Juxtaposition multiplies, so `2ab` is `2*a*b` only when `a` and `b` are
//! separated (`2 a b`); `ab` is a single identifier.

use num_bigint::BigInt;

use crate::error::{Error, Result};

const MAX_DEPTH: usize = 64;
const MAX_EXPONENT: u32 = 256;
const MAX_LEN: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt, BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Identifiers in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(..) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect(out),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, msg: format!("column {}: {}", pos + 1, msg.into()) }
}

pub fn parse_poly(text: &str) -> Result<Expr> {
    if text.len() > MAX_LEN {
        return Err(err(0, "expression too long"));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, depth: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(err(p.pos, format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(err(self.pos, "nesting too deep"));
        }
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { Expr::Add(Box::new(acc), Box::new(rhs)) } else { Expr::Sub(Box::new(acc), Box::new(rhs)) };
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = Expr::Mul(Box::new(acc), Box::new(rhs));
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    let rhs = self.factor()?;
                    acc = Expr::Mul(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            let k: u32 = k.try_into().ok().filter(|&k| k <= MAX_EXPONENT).ok_or_else(|| err(self.pos, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(self.pos, "expected an integer"));
        }
        if self.pos - start > 64 {
            return Err(err(start, "integer too long"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den == BigInt::from(0) {
                        return Err(err(self.pos, "zero denominator"));
                    }
                    return Ok(Expr::Num(num, den));
                }
                Ok(Expr::Num(num, BigInt::from(1)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() {
                    let c = self.src[self.pos];
                    if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                Ok(Expr::Var(String::from_utf8(self.src[start..self.pos].to_vec()).expect("ascii")))
            }
            Some(c) => Err(err(self.pos, format!("unexpected '{}'", c as char))),
            None => Err(err(self.pos, "unexpected end of expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(s: &str) -> Box<Expr> {
        Box::new(Expr::Var(s.into()))
    }

    #[test]
    fn precedence() {
        let e = parse_poly("a^2 - 3 b*c").unwrap();
        let expected = Expr::Sub(
            Box::new(Expr::Pow(var("a"), 2)),
            Box::new(Expr::Mul(Box::new(Expr::Mul(Box::new(Expr::Num(3.into(), 1.into())), var("b"))), var("c"))),
        );
        assert_eq!(e, expected);
        assert_eq!(e.variables(), vec!["a", "b", "c"]);
    }

    #[test]
    fn primes_and_fractions() {
        let e = parse_poly("-1/2 a' (b + c)").unwrap();
        assert_eq!(e.variables(), vec!["a'", "b", "c"]);
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("a +").is_err());
        assert!(parse_poly("(a").is_err());
        assert!(parse_poly("a^99999").is_err());
        assert!(parse_poly(&"(".repeat(100)).is_err());
    }
}
