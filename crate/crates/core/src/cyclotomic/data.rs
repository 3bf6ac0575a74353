//! Per-conductor tables: `Φ_m`, reductions of `x^e mod Φ_m`, and the
//! representation of every root of unity living in `ℚ(ζ_m)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::root::RootOfUnity;
use crate::exact::arith::{divisors, euler_phi};
use crate::exact::Rat;

/// Conductors up to this size get a full reduction table.
const TABLE_LIMIT: u64 = 4096;

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients `c_0..c_{φ(k)}` of the cyclotomic polynomial `Φ_k`.
pub fn cyclotomic_coeffs(k: u64) -> Arc<Vec<i64>> {
    assert!(k >= 1, "cyclotomic polynomial index must be positive");
    if let Some(c) = phi_cache().read().expect("poisoned").get(&k) {
        return c.clone();
    }
    // Φ_k = (x^k − 1) / ∏_{d | k, d < k} Φ_d, all divisions exact and monic.
    let mut num = vec![0i64; k as usize + 1];
    num[0] = -1;
    num[k as usize] = 1;
    for d in divisors(k) {
        if d == k {
            continue;
        }
        num = exact_div_monic(&num, &cyclotomic_coeffs(d));
    }
    let c = Arc::new(num);
    phi_cache().write().expect("poisoned").insert(k, c.clone());
    c
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

pub(crate) struct CycloData {
    pub m: u64,
    pub phi: usize,
    pub poly: Arc<Vec<i64>>,
    /// Row `e − φ` holds `x^e mod Φ_m` for `φ ≤ e < m`.
    table: Option<Vec<Vec<i64>>>,
    roots: OnceLock<HashMap<Vec<i64>, RootOfUnity>>,
}

fn data_cache() -> &'static RwLock<HashMap<u64, Arc<CycloData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CycloData>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub(crate) fn data(m: u64) -> Arc<CycloData> {
    if let Some(d) = data_cache().read().expect("poisoned").get(&m) {
        return d.clone();
    }
    let d = Arc::new(CycloData::build(m));
    data_cache()
        .write()
        .expect("poisoned")
        .entry(m)
        .or_insert(d)
        .clone()
}

impl CycloData {
    fn build(m: u64) -> CycloData {
        let phi = euler_phi(m) as usize;
        let poly = cyclotomic_coeffs(m);
        let table = (m <= TABLE_LIMIT).then(|| {
            let mut rows = Vec::with_capacity(m as usize - phi);
            let mut cur: Vec<i64> = poly[..phi].iter().map(|&c| -c).collect();
            for _ in phi..m as usize {
                rows.push(cur.clone());
                let top = cur[phi - 1];
                let mut next = vec![0i64; phi];
                next[1..].copy_from_slice(&cur[..phi - 1]);
                if top != 0 {
                    for j in 0..phi {
                        next[j] = next[j]
                            .checked_sub(top.checked_mul(poly[j]).expect("reduction overflow"))
                            .expect("reduction overflow");
                    }
                }
                cur = next;
            }
            rows
        });
        CycloData { m, phi, poly, table, roots: OnceLock::new() }
    }

    /// Reduces a dense vector (indices taken mod `m`) to the power basis.
    pub fn reduce(&self, v: Vec<Rat>) -> Vec<Rat> {
        let m = self.m as usize;
        let mut w = if v.len() == m {
            v
        } else {
            let mut w = vec![Rat::zero(); m];
            for (i, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    w[i % m] += &c;
                }
            }
            w
        };
        match &self.table {
            Some(rows) => {
                for e in self.phi..m {
                    if w[e].is_zero() {
                        continue;
                    }
                    let c = std::mem::take(&mut w[e]);
                    for (j, &r) in rows[e - self.phi].iter().enumerate() {
                        if r != 0 {
                            let t = c.mul_int(r);
                            w[j] += &t;
                        }
                    }
                }
            }
            None => {
                for e in (self.phi..m).rev() {
                    if w[e].is_zero() {
                        continue;
                    }
                    let c = std::mem::take(&mut w[e]);
                    for (j, &r) in self.poly[..self.phi].iter().enumerate() {
                        if r != 0 {
                            let t = c.mul_int(r);
                            w[e - self.phi + j] -= &t;
                        }
                    }
                }
            }
        }
        w.truncate(self.phi);
        w
    }

    /// Integer power-basis representation of `ζ_m^i`.
    pub fn root_rep(&self, i: u64) -> Vec<i64> {
        let i = (i % self.m) as usize;
        if i < self.phi {
            let mut v = vec![0; self.phi];
            v[i] = 1;
            return v;
        }
        if let Some(rows) = &self.table {
            return rows[i - self.phi].clone();
        }
        let mut dense = vec![Rat::zero(); self.m as usize];
        dense[i] = Rat::one();
        self.reduce(dense)
            .iter()
            .map(|c| c.to_i64().expect("roots have integral coordinates"))
            .collect()
    }

    /// All roots of unity in `ℚ(ζ_m)`, i.e. `μ_{lcm(2,m)}`, keyed by representation.
    pub fn roots(&self) -> &HashMap<Vec<i64>, RootOfUnity> {
        self.roots.get_or_init(|| {
            let mut map = HashMap::with_capacity(2 * self.m as usize);
            for i in 0..self.m {
                let rep = self.root_rep(i);
                if self.m % 2 == 1 {
                    let neg: Vec<i64> = rep.iter().map(|x| -x).collect();
                    map.insert(neg, RootOfUnity::new((2 * i + self.m) as i64, 2 * self.m));
                }
                map.insert(rep, RootOfUnity::new(i as i64, self.m));
            }
            map
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic_coeffs(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_coeffs(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_coeffs(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_coeffs(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_coeffs(105).iter().any(|&c| c == -2));
    }

    #[test]
    fn table_and_division_agree() {
        let d = data(15);
        for i in 0..15 {
            let mut dense = vec![Rat::zero(); 15];
            dense[i] = Rat::one();
            let by_div: Vec<i64> = {
                let mut w = dense.clone();
                for e in (d.phi..15).rev() {
                    let c = std::mem::take(&mut w[e]);
                    for j in 0..d.phi {
                        w[e - d.phi + j] -= &c.mul_int(d.poly[j]);
                    }
                }
                w[..d.phi].iter().map(|c| c.to_i64().unwrap()).collect()
            };
            assert_eq!(d.root_rep(i as u64), by_div);
        }
        assert_eq!(d.roots().len(), 30);
    }
}
