use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::arith::gcd;

/// `exp(2πi·a/m)` stored as a reduced fraction `a/m ∈ [0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn one() -> RootOfUnity {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn minus_one() -> RootOfUnity {
        RootOfUnity { num: 1, den: 2 }
    }

    /// `ζ_m^a`. Panics if `m == 0`.
    pub fn new(a: i64, m: u64) -> RootOfUnity {
        assert!(m > 0, "root of unity with zero order");
        let a = a.rem_euclid(m as i64) as u64;
        let g = gcd(a, m);
        if a == 0 {
            return RootOfUnity::one();
        }
        RootOfUnity { num: a / g, den: m / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// The multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// Exponent of this root as a power of `ζ_l`; requires `order | l`.
    pub fn exponent_at(&self, l: u64) -> u64 {
        debug_assert_eq!(l % self.den, 0);
        self.num * (l / self.den)
    }

    pub fn mul(&self, o: &RootOfUnity) -> RootOfUnity {
        let l = crate::exact::arith::lcm(self.den, o.den);
        RootOfUnity::new((self.exponent_at(l) + o.exponent_at(l)) as i64, l)
    }

    pub fn inv(&self) -> RootOfUnity {
        RootOfUnity::new(-(self.num as i64), self.den)
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        let e = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        RootOfUnity::new(e as i64, self.den)
    }

    pub fn div(&self, o: &RootOfUnity) -> RootOfUnity {
        self.mul(&o.inv())
    }
}

impl Ord for RootOfUnity {
    /// Ordered by angle.
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num as u128 * o.den as u128)
            .cmp(&(o.num as u128 * self.den as u128))
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "z({}/{})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    /// Accepts `z(a/m)`, `1` and `-1`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "1" => return Ok(RootOfUnity::one()),
            "-1" => return Ok(RootOfUnity::minus_one()),
            _ => {}
        }
        let bad = || Error::Parse(format!("expected z(a/m), got {s:?}"));
        let inner = t
            .strip_prefix("z(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (a, m) = inner.split_once('/').ok_or_else(bad)?;
        let a: i64 = a.parse().map_err(|_| bad())?;
        let m: u64 = m.parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        Ok(RootOfUnity::new(a, m))
    }
}

impl serde::Serialize for RootOfUnity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
