//! Conway polynomials: search under the Conway ordering, a bundled seed
//! table, and dense polynomial arithmetic over `ℤ/p`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::exact::arith::{is_prime, prime_divisors};

/// Dense polynomials over `ℤ/p`, lowest degree first, reduced modulo a monic `f`.
pub(crate) mod fp {
    pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let n = f.len() - 1;
        let mut prod = vec![0u64; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for e in (n..prod.len()).rev() {
            let c = prod[e];
            if c == 0 {
                continue;
            }
            prod[e] = 0;
            for (j, &fj) in f[..n].iter().enumerate() {
                prod[e - n + j] = (prod[e - n + j] + (p - fj) * c) % p;
            }
        }
        prod.truncate(n);
        prod
    }

    pub fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let n = f.len() - 1;
        let mut acc = vec![0u64; n];
        acc[0] = 1 % p;
        let mut b = base.to_vec();
        b.resize(n, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, f, p);
            }
            e >>= 1;
            if e > 0 {
                b = mulmod(&b, &b, f, p);
            }
        }
        acc
    }

    /// `x` modulo `f` (degree ≥ 1).
    pub fn x_mod(f: &[u64], p: u64) -> Vec<u64> {
        let n = f.len() - 1;
        let mut v = vec![0u64; n];
        if n == 1 {
            v[0] = (p - f[0]) % p;
        } else {
            v[1] = 1;
        }
        v
    }

    pub fn is_one(v: &[u64]) -> bool {
        v[0] == 1 && v[1..].iter().all(|&c| c == 0)
    }

    pub fn is_zero(v: &[u64]) -> bool {
        v.iter().all(|&c| c == 0)
    }

    /// `g(h) mod f` by Horner's rule, `g` given by its coefficients.
    pub fn compose(g: &[u64], h: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let n = f.len() - 1;
        let mut acc = vec![0u64; n];
        for &c in g.iter().rev() {
            acc = mulmod(&acc, h, f, p);
            acc[0] = (acc[0] + c) % p;
        }
        acc
    }
}

/// Whether `f` (monic, degree `n`) is primitive and norm-compatible with the
/// Conway polynomials of the maximal proper subfields.
fn is_conway_candidate(f: &[u64], p: u64, sub: &[(u32, Arc<Vec<u64>>)]) -> bool {
    let n = (f.len() - 1) as u32;
    if f[0] == 0 {
        return false;
    }
    let q = p.pow(n);
    let x = fp::x_mod(f, p);
    if !fp::is_one(&fp::powmod(&x, q - 1, f, p)) {
        return false;
    }
    for r in prime_divisors(q - 1) {
        if fp::is_one(&fp::powmod(&x, (q - 1) / r, f, p)) {
            return false;
        }
    }
    sub.iter().all(|(m, c)| {
        let h = fp::powmod(&x, (q - 1) / (p.pow(*m) - 1), f, p);
        fp::is_zero(&fp::compose(c, &h, f, p))
    })
}

fn maximal_subfields(p: u64, n: u32) -> Result<Vec<(u32, Arc<Vec<u64>>)>> {
    prime_divisors(n as u64)
        .into_iter()
        .map(|r| {
            let m = n / r as u32;
            Ok((m, conway_coeffs(p, m)?))
        })
        .collect()
}

/// Lexicographic search: the word `(α_{n−1}, …, α_0)` with
/// `a_i = (−1)^{n−i} α_i` is minimised.
fn search(p: u64, n: u32) -> Result<Vec<u64>> {
    let sub = maximal_subfields(p, n)?;
    let total = p.pow(n);
    for idx in 0..total {
        let mut f = vec![0u64; n as usize + 1];
        f[n as usize] = 1;
        let mut k = idx;
        for i in 0..n as usize {
            let alpha = k % p;
            k /= p;
            let sign_neg = (n as usize - i) % 2 == 1;
            f[i] = if sign_neg { (p - alpha) % p } else { alpha };
        }
        if is_conway_candidate(&f, p, &sub) {
            return Ok(f);
        }
    }
    Err(Error::Invalid(format!("no Conway polynomial found for ({p},{n})")))
}

const SEED_TABLE: &str = include_str!("conway_seed.txt");

/// Parses lines `p n : c0 c1 ... cn`; `#` starts a comment.
pub fn parse_table(text: &str) -> Result<Vec<((u64, u32), Vec<u64>)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Error::Parse(format!("conway table line {}: {line:?}", lineno + 1));
        let (head, tail) = line.split_once(':').ok_or_else(bad)?;
        let head: Vec<u64> = head.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
        let coeffs: Vec<u64> = tail.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
        let [p, n] = head[..] else { return Err(bad()) };
        if !is_prime(p) || n == 0 || coeffs.len() != n as usize + 1 || coeffs[n as usize] != 1 || coeffs.iter().any(|&c| c >= p) {
            return Err(bad());
        }
        out.push(((p, n as u32), coeffs));
    }
    Ok(out)
}

type Table = RwLock<HashMap<(u64, u32), Arc<Vec<u64>>>>;

fn memo() -> &'static Table {
    static MEMO: OnceLock<Table> = OnceLock::new();
    MEMO.get_or_init(|| {
        let seeds = parse_table(SEED_TABLE).expect("bundled table parses");
        RwLock::new(seeds.into_iter().map(|(k, v)| (k, Arc::new(v))).collect())
    })
}

/// Adds entries from a table file after checking each is primitive and compatible.
pub fn load_table(text: &str) -> Result<usize> {
    let mut entries = parse_table(text)?;
    entries.sort_by_key(|((p, n), _)| (*p, *n));
    for ((p, n), coeffs) in &entries {
        let sub = maximal_subfields(*p, *n)?;
        if !is_conway_candidate(coeffs, *p, &sub) {
            return Err(Error::Invalid(format!("table entry ({p},{n}) is not primitive and compatible")));
        }
        memo().write().expect("poisoned").insert((*p, *n), Arc::new(coeffs.clone()));
    }
    Ok(entries.len())
}

/// Largest degree searched for; beyond this the field is far outside desk scale anyway.
pub const MAX_CONWAY_DEGREE: u32 = 24;

/// Coefficients `c_0..c_n` of the Conway polynomial `C_{p,n}`.
pub fn conway_coeffs(p: u64, n: u32) -> Result<Arc<Vec<u64>>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || n > MAX_CONWAY_DEGREE || p.checked_pow(n).is_none_or(|q| q > 1 << 40) {
        return Err(Error::FieldTooLarge { p, n, bound: 1 << 40 });
    }
    if let Some(c) = memo().read().expect("poisoned").get(&(p, n)) {
        return Ok(c.clone());
    }
    let c = Arc::new(search(p, n)?);
    memo().write().expect("poisoned").insert((p, n), c.clone());
    Ok(c)
}

/// Search only, bypassing the seed table (used to cross-check it).
pub fn conway_search(p: u64, n: u32) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    search(p, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_table_matches_search() {
        for ((p, n), coeffs) in parse_table(SEED_TABLE).unwrap() {
            assert_eq!(conway_search(p, n).unwrap(), coeffs, "C({p},{n})");
        }
    }

    #[test]
    fn examples() {
        assert_eq!(*conway_coeffs(2, 1).unwrap(), vec![1, 1]);
        assert_eq!(*conway_coeffs(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(*conway_coeffs(7, 1).unwrap(), vec![4, 1]);
        assert!(conway_coeffs(4, 1).is_err());
    }

    #[test]
    fn table_validation() {
        assert!(load_table("2 2 : 1 1 1\n").is_ok());
        assert!(load_table("2 2 : 1 0 1\n").is_err());
        assert!(parse_table("2 2 : 1 1").is_err());
    }
}
