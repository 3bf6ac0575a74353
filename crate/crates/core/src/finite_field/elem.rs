use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use super::field::{check_field, field, FieldData};
use crate::error::{Error, Result};
use crate::exact::arith::{gcd, lcm};
use crate::exact::mpoly::{Coeff, FieldCoeff};

/// An element of `𝔽_{p^n}` in the power basis of the Conway generator.
///
/// Constructors and arithmetic return elements in their minimal subfield.
/// [`FqElem::embed`] deliberately produces a representation inside a larger
/// field; equality and hashing compare values regardless of representation.
#[derive(Clone, Copy)]
pub struct FqElem {
    p: u64,
    n: u32,
    code: u64,
}

impl FqElem {
    pub fn zero(p: u64) -> FqElem {
        FqElem { p, n: 1, code: 0 }
    }

    pub fn one(p: u64) -> FqElem {
        FqElem { p, n: 1, code: 1 % p }
    }

    pub fn from_int(p: u64, k: i64) -> FqElem {
        FqElem { p, n: 1, code: k.rem_euclid(p as i64) as u64 }
    }

    /// Element with power-basis coordinates `coeffs` (padded with zeros) in `𝔽_{p^n}`.
    pub fn new(p: u64, n: u32, coeffs: &[i64]) -> Result<FqElem> {
        let f = field(p, n)?;
        if coeffs.len() > n as usize {
            return Err(Error::Invalid(format!("{} coordinates for a degree-{n} field", coeffs.len())));
        }
        let mut v: Vec<u64> = coeffs.iter().map(|c| c.rem_euclid(p as i64) as u64).collect();
        v.resize(n as usize, 0);
        FqElem { p, n, code: f.encode(&v) }.canonical_checked()
    }

    /// The Conway generator of `𝔽_{p^n}`.
    pub fn generator(p: u64, n: u32) -> Result<FqElem> {
        let f = field(p, n)?;
        FqElem { p, n, code: f.gen_pow(1) }.canonical_checked()
    }

    /// All elements of `𝔽_{p^n}`, zero first, then `g^0, g^1, …`.
    pub fn elements(p: u64, n: u32) -> Result<Vec<FqElem>> {
        let f = field(p, n)?;
        let mut out = vec![FqElem::zero(p)];
        for k in 0..f.q - 1 {
            out.push(FqElem { p, n, code: f.gen_pow(k) }.canonical_checked()?);
        }
        Ok(out)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Degree of the field this representation lives in.
    pub fn ambient_degree(&self) -> u32 {
        self.n
    }

    /// Degree of the minimal field containing the element.
    pub fn degree(&self) -> u32 {
        self.canonical().n
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn data(&self) -> Arc<FieldData> {
        field(self.p, self.n).expect("element of an instantiated field")
    }

    /// Coordinates in the power basis of the ambient field.
    pub fn coeffs(&self) -> Vec<u64> {
        self.data().decode(self.code)
    }

    pub fn canonical_checked(&self) -> Result<FqElem> {
        if self.n == 1 {
            return Ok(*self);
        }
        let (m, code) = field(self.p, self.n)?.minimal_subfield(self.code)?;
        Ok(FqElem { p: self.p, n: m, code })
    }

    /// The same value stored in its minimal subfield.
    pub fn canonical(&self) -> FqElem {
        if self.code < self.p {
            return FqElem { p: self.p, n: 1, code: self.code };
        }
        self.canonical_checked().expect("element of an instantiated field")
    }

    /// Representation inside `𝔽_{p^{n′}}`; the degree of `self` must divide `n′`.
    pub fn embed(&self, n_big: u32) -> Result<FqElem> {
        let c = self.canonical();
        if n_big == 0 || n_big % c.n != 0 {
            return Err(Error::NotSubfield { from: c.n, to: n_big });
        }
        let big = field(self.p, n_big)?;
        let small = field(self.p, c.n)?;
        Ok(FqElem { p: self.p, n: n_big, code: small.embed_into(c.code, &big)? })
    }

    /// Discrete logarithm to the Conway generator of the minimal field.
    pub fn dlog(&self) -> Result<u64> {
        let c = self.canonical_checked()?;
        field(c.p, c.n)?.dlog(c.code)
    }

    /// Discrete logarithm to the Conway generator of `𝔽_{p^n}`, for `degree | n`.
    pub fn dlog_in(&self, n: u32) -> Result<u64> {
        let e = self.embed(n)?;
        field(self.p, n)?.dlog(e.code)
    }

    fn check_char(&self, o: &FqElem) -> Result<()> {
        if self.p != o.p {
            return Err(Error::CharacteristicMismatch { expected: self.p, found: o.p });
        }
        Ok(())
    }

    fn binary(&self, o: &FqElem, op: impl Fn(&FieldData, u64, u64) -> Result<u64>) -> Result<FqElem> {
        self.check_char(o)?;
        let n = lcm(self.n as u64, o.n as u64) as u32;
        check_field(self.p, n)?;
        let (a, b) = (self.embed_raw(n)?, o.embed_raw(n)?);
        let f = field(self.p, n)?;
        FqElem { p: self.p, n, code: op(&f, a, b)? }.canonical_checked()
    }

    fn embed_raw(&self, n: u32) -> Result<u64> {
        if n == self.n {
            return Ok(self.code);
        }
        let small = field(self.p, self.n)?;
        let big = field(self.p, n)?;
        small.embed_into(self.code, &big)
    }

    pub fn try_add(&self, o: &FqElem) -> Result<FqElem> {
        self.binary(o, |f, a, b| Ok(f.add(a, b)))
    }

    pub fn try_sub(&self, o: &FqElem) -> Result<FqElem> {
        self.binary(o, |f, a, b| Ok(f.add(a, f.neg(b))))
    }

    pub fn try_mul(&self, o: &FqElem) -> Result<FqElem> {
        self.binary(o, |f, a, b| Ok(f.mul(a, b)))
    }

    pub fn try_div(&self, o: &FqElem) -> Result<FqElem> {
        self.binary(o, |f, a, b| Ok(f.mul(a, f.inv(b)?)))
    }

    pub fn try_inv(&self) -> Result<FqElem> {
        let f = field(self.p, self.n)?;
        FqElem { p: self.p, n: self.n, code: f.inv(self.code)? }.canonical_checked()
    }

    pub fn pow(&self, e: u64) -> FqElem {
        let f = self.data();
        FqElem { p: self.p, n: self.n, code: f.pow(self.code, e) }.canonical()
    }

    pub fn neg(&self) -> FqElem {
        let f = self.data();
        FqElem { p: self.p, n: self.n, code: f.neg(self.code) }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self) -> Result<u64> {
        let c = self.canonical_checked()?;
        let q1 = self.p.pow(c.n) - 1;
        let k = c.dlog()?;
        Ok(q1 / gcd(k, q1))
    }
}

impl PartialEq for FqElem {
    fn eq(&self, o: &FqElem) -> bool {
        if self.p != o.p {
            return false;
        }
        if self.n == o.n {
            return self.code == o.code;
        }
        let (a, b) = (self.canonical(), o.canonical());
        a.n == b.n && a.code == b.code
    }
}

impl Eq for FqElem {}

impl Hash for FqElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let c = self.canonical();
        (c.p, c.n, c.code).hash(state);
    }
}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for FqElem {
    /// Characteristic, then minimal degree, then code.
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        let (a, b) = (self.canonical(), o.canonical());
        (a.p, a.n, a.code).cmp(&(b.p, b.n, b.code))
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        let coeffs: Vec<String> = c.coeffs().iter().map(u64::to_string).collect();
        write!(f, "fq({},{},[{}])", c.p, c.n, coeffs.join(","))
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FqElem {
    type Err = Error;

    /// Parses `fq(p,n,[c0,c1,...])`.
    fn from_str(s: &str) -> Result<FqElem> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("expected fq(p,n,[c0,...]), got {s:?}"));
        let inner = t.strip_prefix("fq(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (head, list) = inner.split_once(",[").ok_or_else(bad)?;
        let list = list.strip_suffix(']').ok_or_else(bad)?;
        let (p, n) = head.split_once(',').ok_or_else(bad)?;
        let p: u64 = p.parse().map_err(|_| bad())?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        let coeffs: Vec<i64> = if list.is_empty() {
            Vec::new()
        } else {
            list.split(',').map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad())?
        };
        FqElem::new(p, n, &coeffs)
    }
}

impl serde::Serialize for FqElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! panicking_op {
    ($tr:ident $m:ident $try:ident) => {
        impl $tr for FqElem {
            type Output = FqElem;
            /// Panics on characteristic mismatch or an unsupported field; see the `try_` variant.
            fn $m(self, o: FqElem) -> FqElem {
                self.$try(&o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}
panicking_op!(Add add try_add);
panicking_op!(Sub sub try_sub);
panicking_op!(Mul mul try_mul);
panicking_op!(Div div try_div);

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        FqElem::neg(&self)
    }
}

impl Coeff for FqElem {
    fn is_zero(&self) -> bool {
        FqElem::is_zero(self)
    }
    fn is_one(&self) -> bool {
        FqElem::is_one(self)
    }
    fn plus(&self, o: &Self) -> Self {
        *self + *o
    }
    fn minus(&self, o: &Self) -> Self {
        *self - *o
    }
    fn times(&self, o: &Self) -> Self {
        *self * *o
    }
    fn negate(&self) -> Self {
        FqElem::neg(self)
    }
    fn one_like(&self) -> Self {
        FqElem::one(self.p)
    }
    fn zero_like(&self) -> Self {
        FqElem::zero(self.p)
    }
    fn term_parts(&self) -> (bool, String, bool) {
        let c = self.canonical();
        if c.n == 1 {
            if 2 * c.code > c.p {
                let m = c.p - c.code;
                (true, m.to_string(), m == 1)
            } else {
                (false, c.code.to_string(), c.code == 1)
            }
        } else {
            (false, c.to_string(), false)
        }
    }
}

impl FieldCoeff for FqElem {
    fn inverse(&self) -> Self {
        self.try_inv().unwrap_or_else(|e| panic!("{e}"))
    }
}
