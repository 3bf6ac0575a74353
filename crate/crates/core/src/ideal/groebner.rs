//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller installation of critical pairs.

use crate::error::{Error, Result};
use crate::exact::mpoly::{mono_coprime, mono_degree, mono_div, mono_divides, mono_lcm};
use crate::exact::{FieldCoeff, MPoly, Monomial};
use crate::limits::Limits;

/// Fully reduces `p` modulo `basis` (whose members are monic).
pub fn normal_form<C: FieldCoeff>(p: &MPoly<C>, basis: &[MPoly<C>]) -> MPoly<C> {
    let mut rest = p.clone();
    let mut out = MPoly::zero(p.nvars(), p.order());
    while let Some((m, c)) = rest.leading().cloned() {
        match basis.iter().find(|g| g.lm().is_some_and(|lm| mono_divides(lm, &m))) {
            Some(g) => {
                let q = mono_div(&m, g.lm().expect("nonzero"));
                rest = rest.sub(&g.mul_term(&q, &c));
            }
            None => {
                rest.pop_leading();
                out.push_trailing(m, c);
            }
        }
    }
    out
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<C> {
    polys: Vec<MPoly<C>>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<C: FieldCoeff> State<C> {
    fn lm(&self, i: usize) -> &[u32] {
        self.polys[i].lm().expect("basis polynomials are nonzero")
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let lcm = mono_lcm(self.lm(i), self.lm(j));
        let d = mono_degree(&lcm);
        let si = self.sugar[i] + d - mono_degree(self.lm(i));
        let sj = self.sugar[j] + d - mono_degree(self.lm(j));
        Pair { i, j, lcm, sugar: si.max(sj) }
    }

    /// Gebauer–Möller update after adding polynomial `h`.
    fn install(&mut self, h: usize) {
        let lm_h = self.lm(h).to_vec();
        let mut fresh: Vec<Pair> = self.active.iter().map(|&g| self.pair(g, h)).collect();
        let coprime = |st: &Self, p: &Pair| mono_coprime(st.lm(p.i), &lm_h);
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = fresh.pop() {
            let dominated = !coprime(self, &p)
                && fresh.iter().chain(kept.iter()).any(|q| mono_divides(&q.lcm, &p.lcm));
            if !dominated {
                kept.push(p);
            }
        }
        let mut chosen: Vec<Pair> = Vec::new();
        kept.sort_by_key(|p| p.i);
        for p in kept {
            if coprime(self, &p) {
                continue;
            }
            if chosen.iter().any(|q| q.lcm == p.lcm) {
                continue;
            }
            chosen.push(p);
        }
        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let l1 = mono_lcm(self.lm(p.i), &lm_h);
            let l2 = mono_lcm(self.lm(p.j), &lm_h);
            if mono_divides(&lm_h, &p.lcm) && l1 != p.lcm && l2 != p.lcm {
                continue;
            }
            self.pairs.push(p);
        }
        self.pairs.extend(chosen);
        let polys = &self.polys;
        self.active.retain(|&g| !mono_divides(&lm_h, polys[g].lm().expect("nonzero")));
        self.active.push(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.polys.first()?.order();
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar.cmp(&q.sugar).then_with(|| order.cmp(&p.lcm, &q.lcm))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn active_polys(&self) -> Vec<MPoly<C>> {
        self.active.iter().map(|&i| self.polys[i].clone()).collect()
    }
}

fn s_poly<C: FieldCoeff>(f: &MPoly<C>, g: &MPoly<C>, lcm: &[u32]) -> MPoly<C> {
    let one = f.lc().expect("nonzero").one_like();
    let a = f.mul_term(&mono_div(lcm, f.lm().expect("nonzero")), &one);
    let b = g.mul_term(&mono_div(lcm, g.lm().expect("nonzero")), &one);
    a.sub(&b)
}

fn check_caps<C: FieldCoeff>(p: &MPoly<C>, basis_len: usize, limits: &Limits) -> Result<()> {
    if basis_len > limits.gb_max_basis {
        return Err(Error::Budget(format!("Gröbner basis exceeded {} elements", limits.gb_max_basis)));
    }
    if p.total_degree().unwrap_or(0) > limits.gb_max_degree {
        return Err(Error::Budget(format!("Gröbner basis degree exceeded {}", limits.gb_max_degree)));
    }
    Ok(())
}

/// Reduced Gröbner basis of the ideal generated by `gens` under their common order.
pub fn groebner<C: FieldCoeff>(gens: &[MPoly<C>], limits: &Limits) -> Result<Vec<MPoly<C>>> {
    let mut st = State { polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut input: Vec<MPoly<C>> = gens.iter().filter(|g| !g.is_zero()).map(MPoly::monic).collect();
    let order = match input.first() {
        Some(g) => g.order(),
        None => return Ok(Vec::new()),
    };
    input.sort_by(|a, b| order.cmp(a.lm().expect("nonzero"), b.lm().expect("nonzero")));
    for g in input {
        let r = normal_form(&g, &st.active_polys());
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![r.monic()]);
        }
        check_caps(&r, st.active.len() + 1, limits)?;
        st.sugar.push(r.total_degree().unwrap_or(0));
        st.polys.push(r.monic());
        st.install(st.polys.len() - 1);
    }
    let mut processed = 0usize;
    while let Some(pair) = st.next_pair() {
        processed += 1;
        if processed > limits.gb_max_pairs {
            return Err(Error::Budget(format!("Gröbner computation exceeded {} pairs", limits.gb_max_pairs)));
        }
        let s = s_poly(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm);
        let r = normal_form(&s, &st.active_polys());
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![r.monic()]);
        }
        check_caps(&r, st.active.len() + 1, limits)?;
        st.sugar.push(pair.sugar);
        st.polys.push(r.monic());
        st.install(st.polys.len() - 1);
    }
    Ok(interreduce(st.active_polys()))
}

/// Minimalises and tail-reduces a Gröbner basis; output sorted by increasing leading monomial.
pub fn interreduce<C: FieldCoeff>(mut basis: Vec<MPoly<C>>) -> Vec<MPoly<C>> {
    basis.retain(|g| !g.is_zero());
    let Some(order) = basis.first().map(MPoly::order) else { return basis };
    basis.sort_by(|a, b| order.cmp(a.lm().expect("nonzero"), b.lm().expect("nonzero")));
    let mut minimal: Vec<MPoly<C>> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| mono_divides(h.lm().expect("nonzero"), g.lm().expect("nonzero"))) {
            minimal.push(g.monic());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly<C>> = minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        out.push(normal_form(&minimal[i], &others).monic());
    }
    out
}
