//! Polynomial ideals: Gröbner bases, membership, radical membership,
//! dimension and saturation, plus the type ideals of a tuple of roots of unity.

mod groebner;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use groebner::{groebner, interreduce, normal_form};

use crate::cyclotomic::{cyclotomic_coeffs, cyclotomic_poly, CycloNum, RootOfUnity};
use crate::error::{Error, Result};
use crate::exact::arith::lcm;
use crate::exact::{FieldCoeff, MPoly, Monomial, MonomialOrder, Rat};
use crate::limits::Limits;
use crate::mult_lattice::{relation_lattice, Unit};

/// An ideal of `C[x₁..xₙ]` with a lazily computed reduced Gröbner basis.
pub struct Ideal<C: FieldCoeff> {
    nvars: usize,
    order: MonomialOrder,
    gens: Vec<MPoly<C>>,
    limits: Limits,
    gb: OnceLock<Result<Vec<MPoly<C>>>>,
}

impl<C: FieldCoeff> Clone for Ideal<C> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal { nvars: self.nvars, order: self.order, gens: self.gens.clone(), limits: self.limits, gb }
    }
}

impl<C: FieldCoeff> std::fmt::Debug for Ideal<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.gens).finish()
    }
}

fn shift_out_first<C: FieldCoeff>(p: &MPoly<C>, order: MonomialOrder) -> MPoly<C> {
    let n = p.nvars() - 1;
    MPoly::from_terms(n, order, p.terms().iter().map(|(m, c)| (m[1..].to_vec(), c.clone())))
}

impl<C: FieldCoeff> Ideal<C> {
    pub fn new(nvars: usize, order: MonomialOrder, gens: Vec<MPoly<C>>) -> Result<Ideal<C>> {
        if gens.iter().any(|g| g.nvars() != nvars) {
            return Err(Error::Invalid(format!("generators must live in {nvars} variables")));
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.with_order(order)).collect();
        Ok(Ideal { nvars, order, gens, limits: Limits::from_env(), gb: OnceLock::new() })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self.gb = OnceLock::new();
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn gens(&self) -> &[MPoly<C>] {
        &self.gens
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// The reduced Gröbner basis, computed once.
    pub fn groebner(&self) -> Result<&[MPoly<C>]> {
        match self.gb.get_or_init(|| groebner(&self.gens, &self.limits)) {
            Ok(b) => Ok(b),
            Err(e) => Err(e.clone()),
        }
    }

    fn prepare(&self, p: &MPoly<C>) -> Result<MPoly<C>> {
        if p.nvars() != self.nvars {
            return Err(Error::Invalid(format!("polynomial in {} variables, ideal in {}", p.nvars(), self.nvars)));
        }
        Ok(p.with_order(self.order))
    }

    pub fn normal_form(&self, p: &MPoly<C>) -> Result<MPoly<C>> {
        Ok(normal_form(&self.prepare(p)?, self.groebner()?))
    }

    pub fn contains(&self, p: &MPoly<C>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.iter().any(MPoly::is_constant))
    }

    /// `P ∈ √I`, via `1 ∈ I + (1 − yP)` with a fresh last variable `y`.
    pub fn radical_member(&self, p: &MPoly<C>) -> Result<bool> {
        let p = self.prepare(p)?;
        if p.is_zero() {
            return Ok(true);
        }
        let n = self.nvars + 1;
        let one = p.lc().expect("nonzero").one_like();
        let mut gens: Vec<MPoly<C>> = self.gens.iter().map(|g| g.extend_vars(n, 0)).collect();
        let y = MPoly::var(self.nvars, n, one.clone(), self.order);
        gens.push(MPoly::constant(one, n, self.order).sub(&y.mul(&p.extend_vars(n, 0))));
        Ideal::new(n, self.order, gens)?.with_limits(self.limits).is_unit()
    }

    /// Krull dimension of the quotient ring; `None` for the unit ideal.
    pub fn dim(&self) -> Result<Option<usize>> {
        let gb = self.groebner()?;
        if gb.iter().any(MPoly::is_constant) {
            return Ok(None);
        }
        let lms: Vec<&[u32]> = gb.iter().map(|g| g.lm().expect("nonzero")).collect();
        let n = self.nvars;
        let mut best = 0;
        for mask in 0u64..(1 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let independent = lms.iter().all(|m| (0..n).any(|i| m[i] > 0 && mask >> i & 1 == 0));
            if independent {
                best = size;
            }
        }
        Ok(Some(best))
    }

    /// `I : f^∞`, by eliminating `y` from `I + (1 − y f)`.
    pub fn saturate(&self, f: &MPoly<C>) -> Result<Ideal<C>> {
        let f = self.prepare(f)?;
        if f.is_zero() {
            return Ideal::new(self.nvars, self.order, vec![MPoly::constant(self.one()?, self.nvars, self.order)]);
        }
        let one = f.lc().expect("nonzero").one_like();
        let n = self.nvars + 1;
        let ord = MonomialOrder::Elim(1);
        let mut gens: Vec<MPoly<C>> = self.gens.iter().map(|g| g.extend_vars(n, 1).with_order(ord)).collect();
        let y = MPoly::var(0, n, one.clone(), ord);
        gens.push(MPoly::constant(one, n, ord).sub(&y.mul(&f.extend_vars(n, 1).with_order(ord))));
        let big = Ideal::new(n, ord, gens)?.with_limits(self.limits);
        let kept = big
            .groebner()?
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m[0] == 0))
            .map(|g| shift_out_first(g, self.order))
            .collect();
        Ok(Ideal::new(self.nvars, self.order, kept)?.with_limits(self.limits))
    }

    fn one(&self) -> Result<C> {
        self.gens
            .first()
            .and_then(|g| g.lc())
            .map(C::one_like)
            .ok_or_else(|| Error::Invalid("cannot infer the coefficient field of the zero ideal".into()))
    }
}

/// `∏ (M − ζN)` over primitive `k`-th roots `ζ`, i.e. `N^{φ(k)}·Φ_k(M/N)`.
pub fn special_poly(m: &Monomial, n: &Monomial, k: u64, order: MonomialOrder) -> MPoly<Rat> {
    assert_eq!(m.len(), n.len(), "monomials in the same ring");
    let nv = m.len();
    let coeffs = cyclotomic_coeffs(k);
    let phi = coeffs.len() - 1;
    let mm = MPoly::monomial(m.clone(), Rat::one(), order);
    let nn = MPoly::monomial(n.clone(), Rat::one(), order);
    let mut acc = MPoly::zero(nv, order);
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            acc = acc.add(&mm.pow(i as u32).mul(&nn.pow((phi - i) as u32)).scale(&Rat::from_int(c)));
        }
    }
    acc
}

/// The ideals attached to a tuple of roots of unity: `I_g` lives in
/// `ℚ[x₁..xₙ, t]` (with `t` a primitive `L`-th root), `J_g` in `ℚ[x₁..xₙ]`.
#[derive(Debug, Clone)]
pub struct TypeIdeals {
    pub conductor: u64,
    pub i_g: Ideal<Rat>,
    pub j_g: Ideal<Rat>,
}

impl TypeIdeals {
    /// `P ∈ I_g ∩ ℚ[x]`.
    pub fn in_i_g(&self, p: &MPoly<Rat>) -> Result<bool> {
        self.i_g.contains(&p.extend_vars(p.nvars() + 1, 0))
    }

    /// `P ∈ √J_g`.
    pub fn in_radical_j_g(&self, p: &MPoly<Rat>) -> Result<bool> {
        self.j_g.radical_member(p)
    }
}

fn split_signed(v: &[BigInt]) -> (Monomial, Monomial) {
    let pos = v.iter().map(|x| if x.is_positive() { x.to_u32_digits().1.first().copied().unwrap_or(0) } else { 0 }).collect();
    let neg = v.iter().map(|x| if x.is_negative() { x.to_u32_digits().1.first().copied().unwrap_or(0) } else { 0 }).collect();
    (pos, neg)
}

/// Builds `I_g` (torsion-coefficient binomials, saturated by `x₁⋯xₙ`) and
/// `J_g` (special polynomials from an HNF basis of the relation lattice).
pub fn type_ideals(g: &[RootOfUnity], limits: &Limits) -> Result<TypeIdeals> {
    let n = g.len();
    if n == 0 {
        return Err(Error::Invalid("type ideals need at least one coordinate".into()));
    }
    let units: Vec<Unit> = g.iter().map(|r| Unit::Root(*r)).collect();
    let lat = relation_lattice(&units, &[])?;
    let l = g.iter().fold(1, |acc, r| lcm(acc, r.order()));
    let order = MonomialOrder::GRevLex;

    let mut j = Vec::new();
    for (i, r) in g.iter().enumerate() {
        let mut e = vec![0u32; n];
        e[i] = 1;
        j.push(special_poly(&e, &vec![0; n], r.order(), order));
    }
    for row in lat.basis().to_rows() {
        let content = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let w: Vec<BigInt> = row.iter().map(|x| x / &content).collect();
        let e: i64 = w
            .iter()
            .zip(g)
            .map(|(wi, r)| {
                let wi: i64 = (wi % BigInt::from(l)).try_into().expect("reduced below l");
                wi * r.exponent_at(l) as i64 % l as i64
            })
            .sum();
        let k = RootOfUnity::new(e, l).order();
        let (pos, neg) = split_signed(&w);
        j.push(special_poly(&pos, &neg, k, order));
    }
    let j_g = Ideal::new(n, order, j)?.with_limits(*limits);

    let nt = n + 1;
    let lex = MonomialOrder::Lex;
    let t = MPoly::var(n, nt, Rat::one(), lex);
    let phi_l = cyclotomic_poly(l).remap_vars(nt, &[n]).with_order(lex);
    let mut gens = vec![phi_l];
    for (i, r) in g.iter().enumerate() {
        let xi = MPoly::var(i, nt, Rat::one(), lex);
        gens.push(xi.sub(&t.pow(r.exponent_at(l) as u32)));
    }
    for row in lat.basis().to_rows() {
        let (pos, neg) = split_signed(&row);
        let mut a = pos.clone();
        a.push(0);
        let mut b = neg.clone();
        b.push(0);
        gens.push(MPoly::monomial(a, Rat::one(), lex).sub(&MPoly::monomial(b, Rat::one(), lex)));
    }
    let raw = Ideal::new(nt, lex, gens)?.with_limits(*limits);
    let mut all_x = vec![1u32; n];
    all_x.push(0);
    let prod = MPoly::monomial(all_x, Rat::one(), lex);
    // x₁⋯xₙ·t^{L−Σaᵢ} ≡ 1 exhibits the product as a unit, so saturation is trivial.
    let shift = (l - g.iter().map(|r| r.exponent_at(l)).sum::<u64>() % l) % l;
    let inverse_witness = prod.mul(&t.pow(shift as u32)).sub(&MPoly::constant(Rat::one(), nt, lex));
    let i_g = if raw.contains(&inverse_witness)? { raw } else { raw.saturate(&prod)? };
    Ok(TypeIdeals { conductor: l, i_g, j_g })
}

/// Rewrites polynomials over `ℚ(ζ)` as polynomials over `ℚ` in one extra
/// trailing variable `t`, adding `Φ_m(t)` where `m` is the common conductor.
pub fn route_cyclotomic(gens: &[MPoly<CycloNum>], order: MonomialOrder) -> Result<(u64, Vec<MPoly<Rat>>)> {
    let n = gens.first().map(MPoly::nvars).ok_or_else(|| Error::Invalid("no generators".into()))?;
    let m = gens.iter().flat_map(|g| g.terms().iter().map(|(_, c)| c.conductor())).fold(1, lcm);
    let nt = n + 1;
    let mut out = vec![cyclotomic_poly(m).remap_vars(nt, &[n]).with_order(order)];
    for g in gens {
        let mut terms = Vec::new();
        for (mono, c) in g.terms() {
            for (k, q) in c.coords_at(m).into_iter().enumerate() {
                if !q.is_zero() {
                    let mut e = mono.clone();
                    e.push(k as u32);
                    terms.push((e, q));
                }
            }
        }
        out.push(MPoly::from_terms(nt, order, terms));
    }
    Ok((m, out))
}
