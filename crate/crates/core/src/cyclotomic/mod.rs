//! Roots of unity and exact arithmetic in cyclotomic fields.

mod data;
mod number;
mod root;

use std::collections::HashMap;
use std::sync::Arc;

pub use data::cyclotomic_coeffs;
pub use number::CycloNum;
pub use root::RootOfUnity;

use crate::exact::arith::lcm;
use crate::exact::{MPoly, MonomialOrder, Rat};

/// `Φ_k` as a univariate polynomial.
pub fn cyclotomic_poly(k: u64) -> MPoly<Rat> {
    let c = cyclotomic_coeffs(k);
    MPoly::from_terms(
        1,
        MonomialOrder::GRevLex,
        c.iter().enumerate().map(|(i, &x)| (vec![i as u32], Rat::from_int(x))),
    )
}

/// Value of a rational polynomial at a tuple of roots of unity.
pub fn eval_at_roots(p: &MPoly<Rat>, point: &[RootOfUnity]) -> CycloNum {
    assert_eq!(p.nvars(), point.len(), "point length");
    let l = point.iter().fold(1, |acc, r| lcm(acc, r.order()));
    let exps: Vec<u64> = point.iter().map(|r| r.exponent_at(l)).collect();
    let mut dense = vec![Rat::zero(); l as usize];
    for (m, c) in p.terms() {
        let e = m
            .iter()
            .zip(&exps)
            .fold(0u64, |acc, (&k, &x)| (acc + k as u64 % l * x) % l);
        dense[e as usize] += c;
    }
    CycloNum::from_dense(l, dense)
}

/// Integer coordinates of roots of unity in a fixed field `ℚ(ζ_m)`; used by
/// enumerations that test many candidates against one conductor.
#[derive(Clone)]
pub struct RootBasis {
    data: Arc<data::CycloData>,
}

impl RootBasis {
    /// The basis for the smallest field containing `μ_n`.
    pub fn for_order(n: u64) -> RootBasis {
        let m = if n % 4 == 2 { n / 2 } else { n };
        RootBasis { data: data::data(m) }
    }

    pub fn conductor(&self) -> u64 {
        self.data.m
    }

    pub fn dim(&self) -> usize {
        self.data.phi
    }

    /// Coordinates of `r`; its order must divide `lcm(2, m)`.
    pub fn rep(&self, r: &RootOfUnity) -> Vec<i64> {
        let m = self.data.m;
        let l = lcm(2, m);
        assert_eq!(l % r.order(), 0, "root outside the field");
        let e = r.exponent_at(l);
        if l == m {
            self.data.root_rep(e)
        } else if e % 2 == 0 {
            self.data.root_rep(e / 2)
        } else {
            self.data.root_rep((e + m) / 2).into_iter().map(|x| -x).collect()
        }
    }

    /// The root of unity with coordinates `v`, if any.
    pub fn lookup(&self, v: &[i64]) -> Option<RootOfUnity> {
        self.data.roots().get(v).copied()
    }

    /// Like [`lookup`](Self::lookup) for rational coordinates.
    pub fn lookup_rat(&self, v: &[Rat]) -> Option<RootOfUnity> {
        let key: Option<Vec<i64>> = v.iter().map(Rat::to_i64).collect();
        self.lookup(&key?)
    }

    pub fn all_roots(&self) -> &HashMap<Vec<i64>, RootOfUnity> {
        self.data.roots()
    }

    /// Canonical number with the given coordinates.
    pub fn to_number(&self, v: &[Rat]) -> CycloNum {
        CycloNum::from_coeffs(self.data.m, v.to_vec()).expect("coordinate count")
    }
}
