//! The canonical injective character `χ: 𝔽_p^alg → ℚ(μ) ∪ {0}`, sending the
//! Conway generator of `𝔽_{p^n}` to `ζ_{p^n − 1}`.

use std::collections::HashSet;

use serde::Serialize;

use crate::cyclotomic::{CycloNum, RootOfUnity};
use crate::error::{Error, Result};
use crate::exact::arith::{is_prime, mult_order};
use crate::finite_field::{check_field, FqElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharContext {
    p: u64,
}

impl CharContext {
    pub fn new(p: u64) -> Result<CharContext> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(CharContext { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn check(&self, a: &FqElem) -> Result<()> {
        if a.characteristic() != self.p {
            return Err(Error::CharacteristicMismatch { expected: self.p, found: a.characteristic() });
        }
        Ok(())
    }

    /// `χ(a)` as a root of unity; `None` for `a = 0`.
    pub fn chi_root(&self, a: &FqElem) -> Result<Option<RootOfUnity>> {
        self.check(a)?;
        if a.is_zero() {
            return Ok(None);
        }
        let c = a.canonical_checked()?;
        let q1 = self.p.pow(c.ambient_degree()) - 1;
        Ok(Some(RootOfUnity::new(c.dlog()? as i64, q1)))
    }

    /// `χ` evaluated through the Conway generator of `𝔽_{p^n}` rather than the
    /// minimal field; agrees with [`chi_root`](Self::chi_root) by tower coherence.
    pub fn chi_root_at_degree(&self, a: &FqElem, n: u32) -> Result<Option<RootOfUnity>> {
        self.check(a)?;
        if a.is_zero() {
            return Ok(None);
        }
        let q1 = self.p.pow(n) - 1;
        Ok(Some(RootOfUnity::new(a.dlog_in(n)? as i64, q1)))
    }

    pub fn chi(&self, a: &FqElem) -> Result<CycloNum> {
        Ok(match self.chi_root(a)? {
            None => CycloNum::zero(),
            Some(r) => CycloNum::from_root(&r),
        })
    }

    /// The unique `a` with `χ(a) = u`, or `None` if the order of `u` is divisible by `p`.
    pub fn chi_preimage(&self, u: &RootOfUnity) -> Result<Option<FqElem>> {
        let ord = u.order();
        if ord % self.p == 0 {
            return Ok(None);
        }
        let n = mult_order(self.p % ord.max(1), ord).expect("coprime") as u32;
        let n = n.max(1);
        check_field(self.p, n)?;
        let q1 = self.p.pow(n) - 1;
        let g = FqElem::generator(self.p, n)?;
        Ok(Some(g.pow(u.exponent_at(q1))))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterFailure {
    pub law: String,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterReport {
    pub p: u64,
    pub n_max: u32,
    pub fields_checked: Vec<u64>,
    pub pairs_checked: u64,
    pub failures: Vec<CharacterFailure>,
}

impl CharacterReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustive multiplicativity, injectivity and tower coherence over `𝔽_{p^n}`, `n ≤ n_max`.
pub fn verify_character(ctx: &CharContext, n_max: u32) -> Result<CharacterReport> {
    let p = ctx.p;
    let mut report = CharacterReport { p, n_max, fields_checked: Vec::new(), pairs_checked: 0, failures: Vec::new() };
    for n in 1..=n_max {
        check_field(p, n)?;
        let els = FqElem::elements(p, n)?;
        report.fields_checked.push(p.pow(n));
        let values: Vec<Option<RootOfUnity>> = els.iter().map(|a| ctx.chi_root(a)).collect::<Result<_>>()?;
        let mut fail = |law: &str, w: String| {
            if report.failures.len() < 20 {
                report.failures.push(CharacterFailure { law: law.into(), witness: w });
            }
        };
        if values[0].is_some() || values[1] != Some(RootOfUnity::one()) {
            fail("normalisation", "chi(0) or chi(1)".into());
        }
        let index: std::collections::HashMap<FqElem, usize> =
            els.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                let prod = *a * *b;
                let lhs = values[index[&prod]];
                let rhs = match (values[i], values[j]) {
                    (Some(x), Some(y)) => Some(x.mul(&y)),
                    _ => None,
                };
                if lhs != rhs {
                    fail("multiplicativity", format!("a={a}, b={b}"));
                }
            }
        }
        report.pairs_checked += (els.len() * els.len()) as u64;
        let distinct: HashSet<Option<RootOfUnity>> = values.iter().copied().collect();
        if distinct.len() != els.len() {
            fail("injectivity", format!("F_{}", p.pow(n)));
        }
        for (a, v) in els.iter().zip(&values) {
            let at_n = ctx.chi_root_at_degree(a, n)?;
            if at_n != *v {
                fail("tower coherence", format!("a={a} at degree {n}"));
            }
            if let Some(r) = v {
                let cyc = ctx.chi(a)?;
                if cyc.as_root_of_unity() != Some(*r) {
                    fail("cyclotomic value", format!("a={a}"));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_examples() {
        let c2 = CharContext::new(2).unwrap();
        assert!(c2.chi(&FqElem::zero(2)).unwrap().is_zero());
        assert!(c2.chi(&FqElem::one(2)).unwrap().is_one());
        let g4 = FqElem::generator(2, 2).unwrap();
        assert_eq!(c2.chi_root(&g4).unwrap(), Some(RootOfUnity::new(1, 3)));
        let c7 = CharContext::new(7).unwrap();
        assert_eq!(c7.chi_root(&FqElem::from_int(7, 3)).unwrap(), Some(RootOfUnity::new(1, 6)));
        assert_eq!(c7.chi_root(&FqElem::from_int(7, 2)).unwrap(), Some(RootOfUnity::new(1, 3)));
        assert!(c7.chi(&FqElem::one(2)).is_err());
    }

    #[test]
    fn preimage_examples() {
        let c7 = CharContext::new(7).unwrap();
        assert_eq!(c7.chi_preimage(&RootOfUnity::new(1, 6)).unwrap(), Some(FqElem::from_int(7, 3)));
        let c2 = CharContext::new(2).unwrap();
        assert_eq!(c2.chi_preimage(&RootOfUnity::minus_one()).unwrap(), None);
        assert_eq!(c2.chi_preimage(&RootOfUnity::one()).unwrap(), Some(FqElem::one(2)));
        assert!(c2.chi_preimage(&RootOfUnity::new(1, (1 << 23) - 1)).is_err());
    }

    #[test]
    fn verify_small() {
        assert!(verify_character(&CharContext::new(2).unwrap(), 4).unwrap().passed());
        assert!(verify_character(&CharContext::new(3).unwrap(), 2).unwrap().passed());
        let c7 = CharContext::new(7).unwrap();
        assert!(verify_character(&c7, 1).unwrap().passed());
        let prod = c7.chi(&FqElem::from_int(7, 2)).unwrap().mul(&c7.chi(&FqElem::from_int(7, 4)).unwrap());
        assert!(prod.is_one());
    }

    #[test]
    fn preimage_inverts_chi() {
        let c3 = CharContext::new(3).unwrap();
        for a in FqElem::elements(3, 4).unwrap().into_iter().skip(1) {
            let r = c3.chi_root(&a).unwrap().unwrap();
            assert_eq!(c3.chi_preimage(&r).unwrap(), Some(a));
        }
    }
}
