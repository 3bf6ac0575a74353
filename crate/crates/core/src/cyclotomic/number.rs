use std::fmt;

use super::data::{data, CycloData};
use super::root::RootOfUnity;
use crate::error::{Error, Result};
use crate::exact::arith::{euler_phi, inv_mod, lcm, prime_divisors};
use crate::exact::mpoly::{Coeff, FieldCoeff};
use crate::exact::Rat;

/// An element of `ℚ(ζ_m)` written in the power basis `ζ_m^i, i < φ(m)`, at
/// the smallest conductor `m` (never `≡ 2 mod 4`) whose field contains it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    cond: u64,
    coeffs: Vec<Rat>,
}

impl CycloNum {
    pub fn zero() -> CycloNum {
        CycloNum { cond: 1, coeffs: vec![Rat::zero()] }
    }

    pub fn one() -> CycloNum {
        CycloNum::from_rat(Rat::one())
    }

    pub fn from_rat(q: Rat) -> CycloNum {
        CycloNum { cond: 1, coeffs: vec![q] }
    }

    pub fn from_int(n: i64) -> CycloNum {
        CycloNum::from_rat(Rat::from_int(n))
    }

    pub fn from_root(r: &RootOfUnity) -> CycloNum {
        let (m, a) = (r.order(), r.num());
        if m <= 2 {
            return CycloNum::from_int(if a == 0 { 1 } else { -1 });
        }
        // ζ_{2k}^a = −ζ_k^{(a+k)/2} for odd k and odd a.
        let (m, a, sign) = if m % 4 == 2 {
            (m / 2, (a + m / 2) / 2, -1)
        } else {
            (m, a, 1)
        };
        let d = data(m);
        let coeffs = d.root_rep(a).into_iter().map(|c| Rat::from_int(sign * c)).collect();
        CycloNum { cond: m, coeffs }
    }

    /// Canonical form of `Σ qᵢ·rootᵢ`.
    pub fn from_terms(terms: &[(Rat, RootOfUnity)]) -> CycloNum {
        let l = terms.iter().fold(1, |acc, (_, r)| lcm(acc, r.order()));
        let mut dense = vec![Rat::zero(); l as usize];
        for (q, r) in terms {
            dense[r.exponent_at(l) as usize] += q;
        }
        CycloNum::from_dense(l, dense)
    }

    /// Canonical form of `Σ vᵢ ζ_m^i` for an arbitrary-length dense vector.
    pub fn from_dense(m: u64, v: Vec<Rat>) -> CycloNum {
        let d = data(m);
        canonicalize(m, d.reduce(v))
    }

    /// Builds from power-basis coordinates at conductor `m`.
    pub fn from_coeffs(m: u64, coeffs: Vec<Rat>) -> Result<CycloNum> {
        if coeffs.len() != euler_phi(m) as usize {
            return Err(Error::Invalid(format!("conductor {m} needs {} coordinates", euler_phi(m))));
        }
        Ok(canonicalize(m, coeffs))
    }

    pub fn conductor(&self) -> u64 {
        self.cond
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.cond == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.cond == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        (self.cond == 1).then(|| &self.coeffs[0])
    }

    /// Coordinates at a multiple `l` of the conductor, as a dense vector of length `l`.
    fn lift_dense(&self, l: u64) -> Vec<Rat> {
        let step = (l / self.cond) as usize;
        let mut v = vec![Rat::zero(); l as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[i * step] = c.clone();
            }
        }
        v
    }

    /// Power-basis coordinates at a multiple `l` of the conductor.
    pub fn coords_at(&self, l: u64) -> Vec<Rat> {
        assert_eq!(l % self.cond, 0, "conductor must divide the target");
        data(l).reduce(self.lift_dense(l))
    }

    pub fn add(&self, o: &CycloNum) -> CycloNum {
        if self.cond == o.cond {
            let v = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
            return canonicalize(self.cond, v);
        }
        let l = lcm(self.cond, o.cond);
        let mut v = self.lift_dense(l);
        for (x, y) in v.iter_mut().zip(o.lift_dense(l)) {
            *x += &y;
        }
        CycloNum::from_dense(l, v)
    }

    pub fn neg(&self) -> CycloNum {
        CycloNum { cond: self.cond, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &CycloNum) -> CycloNum {
        self.add(&o.neg())
    }

    pub fn scale(&self, q: &Rat) -> CycloNum {
        if q.is_zero() {
            return CycloNum::zero();
        }
        CycloNum { cond: self.cond, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn mul(&self, o: &CycloNum) -> CycloNum {
        if let Some(q) = self.as_rat() {
            return o.scale(q);
        }
        if let Some(q) = o.as_rat() {
            return self.scale(q);
        }
        let l = lcm(self.cond, o.cond);
        let (sa, sb) = ((l / self.cond) as usize, (l / o.cond) as usize);
        let mut v = vec![Rat::zero(); l as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let idx = (i * sa + j * sb) % l as usize;
                    v[idx] += &(a * b);
                }
            }
        }
        CycloNum::from_dense(l, v)
    }

    pub fn mul_root(&self, r: &RootOfUnity) -> CycloNum {
        let l = lcm(self.cond, r.order());
        let shift = r.exponent_at(l) as usize;
        let step = (l / self.cond) as usize;
        let mut v = vec![Rat::zero(); l as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(i * step + shift) % l as usize] = c.clone();
            }
        }
        CycloNum::from_dense(l, v)
    }

    pub fn inv(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rat() {
            return Ok(CycloNum::from_rat(q.recip()));
        }
        let d = data(self.cond);
        let modulus: Vec<Rat> = d.poly.iter().map(|&c| Rat::from_int(c)).collect();
        let inv = upoly::inverse_mod(&self.coeffs, &modulus);
        Ok(canonicalize(self.cond, inv))
    }

    pub fn div(&self, o: &CycloNum) -> Result<CycloNum> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> CycloNum {
        let mut acc = CycloNum::one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// The root of unity equal to this number, if any.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        if let Some(q) = self.as_rat() {
            return if q.is_one() {
                Some(RootOfUnity::one())
            } else if *q == Rat::from_int(-1) {
                Some(RootOfUnity::minus_one())
            } else {
                None
            };
        }
        let key: Option<Vec<i64>> = self.coeffs.iter().map(Rat::to_i64).collect();
        data(self.cond).roots().get(&key?).copied()
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k` (`k` coprime to the conductor).
    pub fn galois(&self, k: u64) -> CycloNum {
        let m = self.cond;
        let mut v = vec![Rat::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(i as u64 * k % m) as usize] += c;
            }
        }
        CycloNum::from_dense(m, v)
    }
}

/// Descends a reduced vector at conductor `m` to the minimal conductor.
fn canonicalize(mut m: u64, mut c: Vec<Rat>) -> CycloNum {
    if c.iter().all(Rat::is_zero) {
        return CycloNum::zero();
    }
    'outer: loop {
        if m == 1 {
            break;
        }
        for p in prime_divisors(m) {
            if let Some(next) = descend(m, p, &c) {
                m /= p;
                c = next;
                continue 'outer;
            }
        }
        break;
    }
    CycloNum { cond: m, coeffs: c }
}

/// Coordinates at `m/p` if the element lies in `ℚ(ζ_{m/p})`.
fn descend(m: u64, p: u64, c: &[Rat]) -> Option<Vec<Rat>> {
    let mp = m / p;
    if mp % p == 0 {
        if c.iter().enumerate().any(|(i, x)| i as u64 % p != 0 && !x.is_zero()) {
            return None;
        }
        return Some(c.iter().step_by(p as usize).cloned().collect());
    }
    // ζ_m^i = ζ_{m/p}^{a·i} · ζ_p^{b·i} with a = p⁻¹ mod m/p, b = (m/p)⁻¹ mod p.
    let a = inv_mod(p % mp.max(1), mp).unwrap_or(0);
    let b = inv_mod(mp % p, p).expect("coprime");
    let mut ys = vec![vec![Rat::zero(); mp as usize]; p as usize];
    for (i, x) in c.iter().enumerate() {
        if !x.is_zero() {
            let i = i as u64;
            ys[(b * i % p) as usize][(a * i % mp) as usize] += x;
        }
    }
    let d: std::sync::Arc<CycloData> = data(mp);
    let ys: Vec<Vec<Rat>> = ys.into_iter().map(|y| d.reduce(y)).collect();
    let last = &ys[p as usize - 1];
    if ys[1..p as usize - 1].iter().any(|y| y != last) {
        return None;
    }
    Some(ys[0].iter().zip(last).map(|(x, y)| x - y).collect())
}

impl Default for CycloNum {
    fn default() -> Self {
        CycloNum::zero()
    }
}

impl From<Rat> for CycloNum {
    fn from(q: Rat) -> Self {
        CycloNum::from_rat(q)
    }
}

impl From<RootOfUnity> for CycloNum {
    fn from(r: RootOfUnity) -> Self {
        CycloNum::from_root(&r)
    }
}

fn fmt_terms(c: &CycloNum) -> Vec<(bool, String)> {
    c.coeffs
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| {
            let neg = q.is_negative();
            let a = q.abs();
            let body = if i == 0 {
                a.to_string()
            } else {
                let z = RootOfUnity::new(i as i64, c.cond);
                if a.is_one() {
                    z.to_string()
                } else {
                    format!("{a}*{z}")
                }
            };
            (neg, body)
        })
        .collect()
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = fmt_terms(self);
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for CycloNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Coeff for CycloNum {
    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }
    fn is_one(&self) -> bool {
        CycloNum::is_one(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn one_like(&self) -> Self {
        CycloNum::one()
    }
    fn zero_like(&self) -> Self {
        CycloNum::zero()
    }
    fn term_parts(&self) -> (bool, String, bool) {
        let terms = fmt_terms(self);
        match terms.as_slice() {
            [(neg, body)] => (*neg, body.clone(), body == "1"),
            _ => (false, format!("({self})").replace(' ', ""), false),
        }
    }
}

impl FieldCoeff for CycloNum {
    fn inverse(&self) -> Self {
        self.inv().expect("inverse of zero")
    }
}

/// Dense univariate polynomials over ℚ, lowest degree first.
mod upoly {
    use crate::exact::Rat;

    fn trim(mut a: Vec<Rat>) -> Vec<Rat> {
        while a.len() > 1 && a.last().is_some_and(Rat::is_zero) {
            a.pop();
        }
        if a.is_empty() {
            a.push(Rat::zero());
        }
        a
    }

    fn is_zero(a: &[Rat]) -> bool {
        a.iter().all(Rat::is_zero)
    }

    fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lc = b[db].recip();
        if r.len() - 1 < db || is_zero(&r) {
            return (vec![Rat::zero()], r);
        }
        let mut q = vec![Rat::zero(); r.len() - db];
        while !is_zero(&r) && r.len() > db {
            let dr = r.len() - 1;
            let c = &r[dr] * &lc;
            for (j, bj) in b.iter().enumerate() {
                let t = &c * bj;
                r[dr - db + j] -= &t;
            }
            q[dr - db] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        trim(out)
    }

    fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = a.len().max(b.len());
        let z = Rat::zero();
        trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
    }

    /// Inverse of `a` modulo the irreducible `m`, padded to `deg m` coordinates.
    pub fn inverse_mod(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
        let (mut r0, mut r1) = (m.to_vec(), trim(a.to_vec()));
        let (mut s0, mut s1) = (vec![Rat::zero()], vec![Rat::one()]);
        while r1.len() > 1 {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = r1[0].recip();
        let (_, s) = divrem(&s1, m);
        let mut out: Vec<Rat> = s.iter().map(|x| x * &c).collect();
        out.resize(m.len() - 1, Rat::zero());
        out
    }
}
