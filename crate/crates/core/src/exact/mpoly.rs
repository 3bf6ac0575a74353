//! Sparse multivariate polynomials over an exact coefficient ring.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::rat::Rat;

/// Exact coefficient ring. Method names avoid clashing with `std::ops`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    /// The multiplicative identity of the ring `self` lives in.
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    /// Rendering inside a polynomial: `(negative, body, is_unit)`.
    fn term_parts(&self) -> (bool, String, bool);
}

/// Coefficient rings that are fields.
pub trait FieldCoeff: Coeff {
    /// Panics on zero.
    fn inverse(&self) -> Self;
}

impl Coeff for Rat {
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rat::is_one(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn term_parts(&self) -> (bool, String, bool) {
        let a = self.abs();
        (self.is_negative(), a.to_string(), a.is_one())
    }
}

impl FieldCoeff for Rat {
    fn inverse(&self) -> Self {
        self.recip()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    GRevLex,
    /// Block order eliminating the first `k` variables: grevlex on the
    /// first block, ties broken by grevlex on the rest.
    Elim(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            MonomialOrder::GRevLex => grevlex(a, b),
            MonomialOrder::Elim(k) => {
                let k = k.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

pub type Monomial = Vec<u32>;

pub fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

pub fn mono_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Polynomial in `nvars` variables with terms sorted strictly descending in `order`.
#[derive(Clone, PartialEq)]
pub struct MPoly<C> {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, C)>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        MPoly { nvars, order, terms: Vec::new() }
    }

    pub fn constant(c: C, nvars: usize, order: MonomialOrder) -> Self {
        Self::monomial(vec![0; nvars], c, order)
    }

    pub fn monomial(exps: Monomial, c: C, order: MonomialOrder) -> Self {
        let nvars = exps.len();
        if c.is_zero() {
            return Self::zero(nvars, order);
        }
        MPoly { nvars, order, terms: vec![(exps, c)] }
    }

    /// The variable `x_{i+1}` (0-based `i`), with `one` supplying the coefficient ring.
    pub fn var(i: usize, nvars: usize, one: C, order: MonomialOrder) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, one, order)
    }

    /// Combines like terms and sorts; zero coefficients are dropped.
    pub fn from_terms(nvars: usize, order: MonomialOrder, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut map: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector length");
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.plus(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, C)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MPoly { nvars, order, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn lm(&self) -> Option<&[u32]> {
        self.terms.first().map(|(m, _)| m.as_slice())
    }

    pub fn lc(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Monomial, C)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Appends a term smaller than every existing one.
    pub(crate) fn push_trailing(&mut self, m: Monomial, c: C) {
        debug_assert!(self.terms.last().is_none_or(|(l, _)| self.order.cmp(l, &m) == Ordering::Greater));
        self.terms.push((m, c));
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| mono_degree(m)).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[var]).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.iter().any(|(m, _)| m[i] > 0))
            .collect()
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MPoly { nvars: self.nvars, order, terms }
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let ord = self.order;
        let rhs = if o.order == ord { None } else { Some(o.with_order(ord)) };
        let o = rhs.as_ref().unwrap_or(o);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let c = if i == self.terms.len() {
                Ordering::Less
            } else if j == o.terms.len() {
                Ordering::Greater
            } else {
                ord.cmp(&self.terms[i].0, &o.terms[j].0)
            };
            match c {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &o.terms[j];
                    out.push((m.clone(), if negate { c.negate() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &o.terms[j].1;
                    let s = if negate { a.minus(b) } else { a.plus(b) };
                    if !s.is_zero() {
                        out.push((m.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly { nvars: self.nvars, order: ord, terms: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negate())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.with_order(self.order).mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let prods = self
            .terms
            .iter()
            .flat_map(|(ma, ca)| o.terms.iter().map(move |(mb, cb)| (mono_mul(ma, mb), ca.times(cb))));
        Self::from_terms(self.nvars, self.order, prods)
    }

    /// Multiplication by `c·x^m`; order is preserved so no re-sort is needed.
    pub fn mul_term(&self, m: &[u32], c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(mm, cc)| {
                let p = cc.times(c);
                (!p.is_zero()).then(|| (mono_mul(mm, m), p))
            })
            .collect();
        MPoly { nvars: self.nvars, order: self.order, terms }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(&vec![0; self.nvars], c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let one = match self.terms.first() {
            Some((_, c)) => c.one_like(),
            None if e == 0 => panic!("0^0 needs a coefficient ring"),
            None => return self.clone(),
        };
        let mut acc = Self::constant(one, self.nvars, self.order);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> MPoly<D> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f(c)));
        MPoly::from_terms(self.nvars, self.order, terms)
    }

    pub fn try_map_coeffs<D: Coeff, E>(&self, mut f: impl FnMut(&C) -> Result<D, E>) -> Result<MPoly<D>, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), f(c)?));
        }
        Ok(MPoly::from_terms(self.nvars, self.order, terms))
    }

    /// Re-embeds into `new_n` variables, sending variable `i` to `map[i]`.
    pub fn remap_vars(&self, new_n: usize, map: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; new_n];
            for (i, &x) in m.iter().enumerate() {
                e[map[i]] += x;
            }
            (e, c.clone())
        });
        Self::from_terms(new_n, self.order, terms)
    }

    /// Embeds into `new_n ≥ nvars` variables, shifting indices by `offset`.
    pub fn extend_vars(&self, new_n: usize, offset: usize) -> Self {
        let map: Vec<usize> = (0..self.nvars).map(|i| i + offset).collect();
        let mut p = self.remap_vars(new_n, &map);
        p.order = self.order;
        p
    }

    /// Same terms with a different variable count; panics if a dropped variable occurs.
    pub fn truncate_vars(&self, new_n: usize) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            assert!(m[new_n..].iter().all(|&e| e == 0), "dropped variable occurs");
            (m[..new_n].to_vec(), c.clone())
        });
        Self::from_terms(new_n, self.order, terms)
    }

    /// Value at `point`, with `embed` mapping coefficients into the target ring.
    pub fn eval_with<T: Coeff>(&self, point: &[T], zero: T, mut embed: impl FnMut(&C) -> T) -> T {
        assert_eq!(point.len(), self.nvars, "point length");
        let mut cache: HashMap<(usize, u32), T> = HashMap::new();
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache.entry((i, e)).or_insert_with(|| pow_coeff(&point[i], e)).clone();
                t = t.times(&pw);
            }
            acc = acc.plus(&t);
        }
        acc
    }

    pub fn eval(&self, point: &[C]) -> C {
        let zero = match (self.terms.first(), point.first()) {
            (Some((_, c)), _) => c.zero_like(),
            (None, Some(x)) => x.zero_like(),
            (None, None) => panic!("cannot evaluate the zero polynomial in zero variables"),
        };
        self.eval_with(point, zero, C::clone)
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self
    where
        C: FieldCoeff,
    {
        match self.lc() {
            Some(c) if !c.is_one() => self.scale(&c.inverse()),
            _ => self.clone(),
        }
    }

    pub fn display_with(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, body, unit) = c.term_parts();
            if neg {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("{prefix}{}", i + 1)
                    } else {
                        format!("{prefix}{}^{e}", i + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&body);
            } else {
                if !unit {
                    out.push_str(&body);
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

pub(crate) fn pow_coeff<T: Coeff>(x: &T, mut e: u32) -> T {
    let mut acc = x.one_like();
    let mut b = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.times(&b);
        }
        e >>= 1;
        if e > 0 {
            b = b.times(&b);
        }
    }
    acc
}

impl<C: Coeff> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl<C: Coeff> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl<C: Coeff + Eq> Eq for MPoly<C> {}

impl<C: Coeff + std::hash::Hash> std::hash::Hash for MPoly<C> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        self.terms.hash(state);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64) -> Rat {
        Rat::from_int(a)
    }

    fn poly(terms: &[(Vec<u32>, i64)]) -> MPoly<Rat> {
        let n = terms.first().map_or(2, |t| t.0.len());
        MPoly::from_terms(n, MonomialOrder::GRevLex, terms.iter().map(|(m, c)| (m.clone(), q(*c))))
    }

    #[test]
    fn orders() {
        let o = MonomialOrder::GRevLex;
        assert_eq!(o.cmp(&[1, 0], &[0, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[2, 0, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1, 0], &[2, 0, 0]), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
        assert_eq!(MonomialOrder::Elim(1).cmp(&[1, 0], &[0, 5]), Ordering::Greater);
    }

    #[test]
    fn evaluation_examples() {
        let p = poly(&[(vec![1, 1], 1)]);
        assert_eq!(p.eval(&[q(2), q(3)]), q(6));
        let p = poly(&[(vec![2, 0], 1), (vec![1, 0], -3), (vec![0, 0], 1)]);
        assert_eq!(p.to_string(), "x1^2-3*x1+1");
        assert_eq!(p.eval(&[q(3), q(0)]), q(1));
    }

    fn arb_poly() -> impl Strategy<Value = MPoly<Rat>> {
        prop::collection::vec((prop::collection::vec(0u32..3, 2), -5i64..5), 0..5)
            .prop_map(|t| MPoly::from_terms(2, MonomialOrder::GRevLex, t.into_iter().map(|(m, c)| (m, q(c)))))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(), x in -4i64..4, y in -4i64..4) {
            let pt = [q(x), q(y)];
            let ev = |p: &MPoly<Rat>| p.eval_with(&pt, Rat::zero(), Rat::clone);
            prop_assert_eq!(ev(&a.mul(&b)), &ev(&a) * &ev(&b));
            prop_assert_eq!(ev(&a.add(&b)), &ev(&a) + &ev(&b));
        }
    }
}
