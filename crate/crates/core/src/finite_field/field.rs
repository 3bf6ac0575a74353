//! Per-field data: Conway modulus, element encoding and discrete logarithms.
//!
//! An element of `𝔽_{p^n}` is encoded as the integer `Σ c_i p^i` of its
//! power-basis coordinates with respect to the Conway generator.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use super::conway::{conway_coeffs, fp};
use crate::error::{Error, Result};
use crate::exact::arith::{divisors, is_prime};
use crate::limits::Limits;

static MAX_ORDER: AtomicU64 = AtomicU64::new(0);
static ZECH_THRESHOLD: AtomicU64 = AtomicU64::new(0);

fn limit(cell: &AtomicU64, default: impl FnOnce() -> u64) -> u64 {
    match cell.load(Ordering::Relaxed) {
        0 => {
            let v = default();
            cell.store(v, Ordering::Relaxed);
            v
        }
        v => v,
    }
}

/// Largest field order that may be instantiated (default from [`Limits::from_env`]).
pub fn max_field_order() -> u64 {
    limit(&MAX_ORDER, || Limits::from_env().max_field_order)
}

pub fn set_max_field_order(q: u64) {
    MAX_ORDER.store(q.max(2), Ordering::Relaxed);
}

fn zech_threshold() -> u64 {
    limit(&ZECH_THRESHOLD, || Limits::from_env().zech_threshold)
}

pub(crate) struct FieldData {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub modulus: Arc<Vec<u64>>,
    tables: Option<(Vec<u32>, Vec<u32>)>,
    baby: OnceLock<(u64, HashMap<u64, u64>, u64)>,
}

type Registry = RwLock<HashMap<(u64, u32), Arc<FieldData>>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(Default::default)
}

/// Checks that `𝔽_{p^n}` is within the configured bound.
pub fn check_field(p: u64, n: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let bound = max_field_order();
    match p.checked_pow(n) {
        Some(q) if n >= 1 && q <= bound => Ok(q),
        _ => Err(Error::FieldTooLarge { p, n, bound }),
    }
}

pub(crate) fn field(p: u64, n: u32) -> Result<Arc<FieldData>> {
    check_field(p, n)?;
    if let Some(f) = registry().read().expect("poisoned").get(&(p, n)) {
        return Ok(f.clone());
    }
    let f = Arc::new(FieldData::build(p, n)?);
    Ok(registry()
        .write()
        .expect("poisoned")
        .entry((p, n))
        .or_insert(f)
        .clone())
}

impl FieldData {
    fn build(p: u64, n: u32) -> Result<FieldData> {
        let q = p.pow(n);
        let modulus = conway_coeffs(p, n)?;
        let mut fd = FieldData { p, n, q, modulus, tables: None, baby: OnceLock::new() };
        if q <= zech_threshold() {
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut log = vec![0u32; q as usize];
            let x = fp::x_mod(&fd.modulus, p);
            let mut cur = fd.decode(1);
            for k in 0..q - 1 {
                let code = fd.encode(&cur);
                exp.push(code as u32);
                log[code as usize] = k as u32;
                cur = fp::mulmod(&cur, &x, &fd.modulus, p);
            }
            fd.tables = Some((exp, log));
        }
        Ok(fd)
    }

    pub fn decode(&self, mut code: u64) -> Vec<u64> {
        (0..self.n)
            .map(|_| {
                let d = code % self.p;
                code /= self.p;
                d
            })
            .collect()
    }

    pub fn encode(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (va, vb) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let v: Vec<u64> = self.decode(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.encode(&v)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some((exp, log)) = &self.tables {
            let k = (log[a as usize] as u64 + log[b as usize] as u64) % (self.q - 1);
            return exp[k as usize] as u64;
        }
        let r = fp::mulmod(&self.decode(a), &self.decode(b), &self.modulus, self.p);
        self.encode(&r)
    }

    /// `g^k` for the Conway generator `g`.
    pub fn gen_pow(&self, k: u64) -> u64 {
        let k = k % (self.q - 1);
        if let Some((exp, _)) = &self.tables {
            return exp[k as usize] as u64;
        }
        let x = fp::x_mod(&self.modulus, self.p);
        self.encode(&fp::powmod(&x, k, &self.modulus, self.p))
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let k = self.dlog(a).expect("nonzero");
        self.gen_pow((k as u128 * e as u128 % (self.q - 1) as u128) as u64)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        let k = self.dlog(a).map_err(|_| Error::DivisionByZero)?;
        Ok(self.gen_pow(self.q - 1 - k))
    }

    /// Discrete logarithm to base `g`, by table lookup or baby-step giant-step.
    pub fn dlog(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroLog);
        }
        if let Some((_, log)) = &self.tables {
            return Ok(log[a as usize] as u64);
        }
        let (m, baby, giant) = self.baby.get_or_init(|| {
            let order = self.q - 1;
            let m = (order as f64).sqrt().ceil() as u64;
            let mut table = HashMap::with_capacity(m as usize);
            let x = fp::x_mod(&self.modulus, self.p);
            let mut cur = self.decode(1);
            for j in 0..m {
                table.entry(self.encode(&cur)).or_insert(j);
                cur = fp::mulmod(&cur, &x, &self.modulus, self.p);
            }
            let giant = self.gen_pow(order - m % order);
            (m, table, giant)
        });
        let mut gamma = a;
        for i in 0..*m + 1 {
            if let Some(&j) = baby.get(&gamma) {
                return Ok((i * m + j) % (self.q - 1));
            }
            gamma = self.mul(gamma, *giant);
        }
        unreachable!("every nonzero element is a power of a primitive element")
    }

    /// Minimal subfield degree and code there of `a ∈ 𝔽_{p^n}`.
    pub fn minimal_subfield(&self, a: u64) -> Result<(u32, u64)> {
        if a < self.p {
            return Ok((1, a));
        }
        let k = self.dlog(a)?;
        for m in divisors(self.n as u64) {
            let m = m as u32;
            let r = (self.q - 1) / (self.p.pow(m) - 1);
            if k % r == 0 {
                let sub = field(self.p, m)?;
                return Ok((m, sub.gen_pow(k / r)));
            }
        }
        unreachable!("the full field always qualifies")
    }

    /// Image of `a ∈ 𝔽_{p^n}` in `𝔽_{p^N}` for `n | N`.
    pub fn embed_into(&self, a: u64, big: &FieldData) -> Result<u64> {
        debug_assert_eq!(big.n % self.n, 0);
        if a < self.p || big.n == self.n {
            return Ok(a);
        }
        let k = self.dlog(a)?;
        let r = (big.q - 1) / (self.q - 1);
        Ok(big.gen_pow(k * r))
    }
}
