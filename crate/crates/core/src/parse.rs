//! A small expression language shared by the library and the command line.
//!
//! Expressions combine integers, roots of unity `z(a/m)`, finite-field
//! elements `fq(p,n,[...])` and indexed variables such as `x1` with `+ - * / ^`
//! and parentheses. Division is only allowed by constants.

use crate::cyclotomic::{CycloNum, RootOfUnity};
use crate::error::{Error, Result};
use crate::exact::{FieldCoeff, MPoly, MonomialOrder, Rat};
use crate::finite_field::FqElem;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rat),
    Root(RootOfUnity),
    Fq(FqElem),
    Var(String, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Splits on `sep` outside any brackets.
pub fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            let e: u32 = digits.parse().map_err(|_| self.err("expected exponent"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    /// Raw text from an opening parenthesis to its match, inclusive.
    fn balanced(&mut self) -> Result<&'a str> {
        let start = self.pos;
        let mut depth = 0;
        for (i, c) in self.src[start..].char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos = start + i + 1;
                        return Ok(&self.src[start..self.pos]);
                    }
                }
                _ => {}
            }
        }
        Err(self.err("unbalanced parenthesis"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: num_bigint::BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(Expr::Num(Rat::from_bigint(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphabetic());
                if name == "z" || name == "fq" {
                    if self.src[self.pos..].starts_with('(') {
                        let inner = self.balanced()?;
                        let text = format!("{name}{inner}");
                        return if name == "z" {
                            Ok(Expr::Root(text.parse()?))
                        } else {
                            Ok(Expr::Fq(text.parse()?))
                        };
                    }
                }
                let digits = self.take_while(|c| c.is_ascii_digit());
                let idx: usize = digits.parse().map_err(|_| self.err("variables are written like x1"))?;
                if idx == 0 {
                    return Err(self.err("variable indices start at 1"));
                }
                Ok(Expr::Var(name.to_string(), idx))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { src: s, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl Expr {
    /// Largest index used with variable prefix `name`.
    pub fn max_var(&self, name: &str) -> usize {
        match self {
            Expr::Var(n, i) if n == name => *i,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.max_var(name).max(b.max_var(name)),
            Expr::Neg(a) | Expr::Pow(a, _) => a.max_var(name),
            _ => 0,
        }
    }

    /// Evaluates to a polynomial in `prefix1..prefixN`, with numeric atoms mapped by `atom`.
    pub fn to_poly<C: FieldCoeff>(
        &self,
        prefix: &str,
        nvars: usize,
        order: MonomialOrder,
        one: &C,
        atom: &dyn Fn(&Expr) -> Result<C>,
    ) -> Result<MPoly<C>> {
        let rec = |e: &Expr| e.to_poly(prefix, nvars, order, one, atom);
        Ok(match self {
            Expr::Var(n, i) => {
                if n != prefix || *i > nvars {
                    return Err(Error::Parse(format!("unexpected variable {n}{i}")));
                }
                MPoly::var(i - 1, nvars, one.clone(), order)
            }
            Expr::Num(_) | Expr::Root(_) | Expr::Fq(_) => MPoly::constant(atom(self)?, nvars, order),
            Expr::Add(a, b) => rec(a)?.add(&rec(b)?),
            Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?),
            Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?),
            Expr::Neg(a) => rec(a)?.neg(),
            Expr::Pow(a, e) => rec(a)?.pow(*e),
            Expr::Div(a, b) => {
                let d = rec(b)?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Parse("division by a non-constant or zero".into()));
                }
                let c = d.lc().expect("nonzero").inverse();
                rec(a)?.scale(&c)
            }
        })
    }
}

/// A cyclotomic number written with integers and `z(a/m)`.
pub fn parse_cyclo(s: &str) -> Result<CycloNum> {
    fn eval(e: &Expr) -> Result<CycloNum> {
        Ok(match e {
            Expr::Num(q) => CycloNum::from_rat(q.clone()),
            Expr::Root(r) => CycloNum::from_root(r),
            Expr::Add(a, b) => eval(a)?.add(&eval(b)?),
            Expr::Sub(a, b) => eval(a)?.sub(&eval(b)?),
            Expr::Mul(a, b) => eval(a)?.mul(&eval(b)?),
            Expr::Div(a, b) => eval(a)?.div(&eval(b)?)?,
            Expr::Neg(a) => eval(a)?.neg(),
            Expr::Pow(a, k) => eval(a)?.pow(*k as u64),
            Expr::Fq(_) | Expr::Var(..) => return Err(Error::Parse(format!("not a cyclotomic number: {e:?}"))),
        })
    }
    eval(&parse_expr(s)?)
}

/// A rational written as an integer expression, e.g. `-1/2`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    parse_cyclo(s)?
        .as_rat()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("{s:?} is not rational")))
}

/// Comma-separated rationals.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    split_top_level(s, ',').into_iter().filter(|t| !t.trim().is_empty()).map(parse_rat).collect()
}

/// A polynomial over `ℚ` in variables `x1..xn`; `n` is inferred when `None`.
pub fn parse_rat_poly(s: &str, nvars: Option<usize>) -> Result<MPoly<Rat>> {
    let e = parse_expr(s)?;
    let n = nvars.unwrap_or_else(|| e.max_var("x"));
    e.to_poly("x", n, MonomialOrder::default(), &Rat::one(), &|a| match a {
        Expr::Num(q) => Ok(q.clone()),
        _ => Err(Error::Parse(format!("expected a rational coefficient, got {a:?}"))),
    })
}

/// A polynomial with cyclotomic coefficients in variables `{prefix}1..{prefix}n`.
pub fn parse_cyclo_poly(s: &str, prefix: &str, nvars: Option<usize>) -> Result<MPoly<CycloNum>> {
    let e = parse_expr(s)?;
    let n = nvars.unwrap_or_else(|| e.max_var(prefix));
    e.to_poly(prefix, n, MonomialOrder::default(), &CycloNum::one(), &|a| match a {
        Expr::Num(q) => Ok(CycloNum::from_rat(q.clone())),
        Expr::Root(r) => Ok(CycloNum::from_root(r)),
        _ => Err(Error::Parse(format!("expected a cyclotomic coefficient, got {a:?}"))),
    })
}

/// A polynomial over `𝔽_p` in `x1..xn`; integers reduce mod `p`.
pub fn parse_fq_poly(s: &str, p: u64, nvars: Option<usize>) -> Result<MPoly<FqElem>> {
    let e = parse_expr(s)?;
    let n = nvars.unwrap_or_else(|| e.max_var("x"));
    e.to_poly("x", n, MonomialOrder::default(), &FqElem::one(p), &|a| fq_atom(a, p))
}

pub(crate) fn fq_atom(a: &Expr, p: u64) -> Result<FqElem> {
    match a {
        Expr::Num(q) => {
            let num = FqElem::from_int(p, (q.numer() % num_bigint::BigInt::from(p)).try_into().expect("small"));
            let den = FqElem::from_int(p, (q.denom() % num_bigint::BigInt::from(p)).try_into().expect("small"));
            num.try_div(&den)
        }
        Expr::Fq(x) if x.characteristic() == p => Ok(*x),
        Expr::Fq(x) => Err(Error::CharacteristicMismatch { expected: p, found: x.characteristic() }),
        _ => Err(Error::Parse(format!("expected an element of F_{p}, got {a:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(parse_rat("-1/2").unwrap(), Rat::new(-1, 2));
        assert_eq!(parse_rat("2^3 - (1+1)*3").unwrap(), Rat::from_int(2));
        assert!(parse_cyclo("1 + z(1/3) + z(2/3)").unwrap().is_zero());
        assert_eq!(parse_cyclo("z(1/3)*z(1/6)^-1").is_err(), true);
        assert!(parse_rat("z(1/4)").is_err());
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn polynomials() {
        let p = parse_rat_poly("x1^2 - 3*x1 + 1", None).unwrap();
        assert_eq!(p.to_string(), "x1^2-3*x1+1");
        let q = parse_rat_poly("(x1 - x2)*(x1 + x2)/2", None).unwrap();
        assert_eq!(q.nvars(), 2);
        assert_eq!(q.eval(&[Rat::from_int(3), Rat::from_int(1)]), Rat::from_int(4));
        assert!(parse_rat_poly("x1/x2", None).is_err());
        let f = parse_fq_poly("x1 + 8", 7, None).unwrap();
        assert_eq!(f.eval(&[FqElem::from_int(7, 6)]), FqElem::zero(7));
    }

    #[test]
    fn splitting() {
        assert_eq!(split_top_level("z(1/3), fq(2,2,[0,1]),2", ','), vec!["z(1/3)", " fq(2,2,[0,1])", "2"]);
    }
}
