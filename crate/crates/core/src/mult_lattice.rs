//! Multiplicative relations among units: relation lattices, independence,
//! multiplicative closure and bases.
//!
//! Every supported unit kind embeds into a finitely generated abelian group
//! `ℤᶜ / R` (torsion and rationals into `ℤ/L × ℤ^P`, finite-field units into
//! `ℤ/(p^N − 1)`, formal units into `ℤʳ / Λ`), so all questions reduce to
//! integer kernels in Hermite normal form.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{CycloNum, RootOfUnity};
use crate::error::{Error, Result};
use crate::exact::arith::lcm;
use crate::exact::{kernel_in_group, Rat};
use crate::finite_field::{check_field, FqElem};

pub use crate::exact::ExponentLattice;

/// A declared group of formal symbols `ℤʳ / Λ` with transcendence flags.
#[derive(Debug, PartialEq, Eq)]
pub struct FormalGroup {
    names: Vec<String>,
    relations: ExponentLattice,
    transcendental: Vec<bool>,
}

impl FormalGroup {
    /// `relations` is the lattice of exponent vectors that multiply to 1. A
    /// symbol flagged transcendental must have infinite order modulo it.
    pub fn new(names: Vec<String>, relations: ExponentLattice, transcendental: Vec<bool>) -> Result<Arc<FormalGroup>> {
        let r = names.len();
        if relations.dim() != r || transcendental.len() != r {
            return Err(Error::Invalid("formal declaration sizes disagree".into()));
        }
        for (i, &t) in transcendental.iter().enumerate() {
            let mut gens = relations.basis().to_rows();
            gens.push((0..r).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect());
            let widened = ExponentLattice::new(r, gens)?;
            if t && widened.rank() == relations.rank() {
                return Err(Error::Invalid(format!("{} is declared transcendental but has finite order", names[i])));
            }
        }
        Ok(Arc::new(FormalGroup { names, relations, transcendental }))
    }

    pub fn unit(self: &Arc<Self>, name: &str) -> Result<Unit> {
        let index = self
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Invalid(format!("unknown formal symbol {name}")))?;
        Ok(Unit::Formal(FormalUnit { group: self.clone(), index }))
    }
}

#[derive(Debug, Clone)]
pub struct FormalUnit {
    group: Arc<FormalGroup>,
    index: usize,
}

impl FormalUnit {
    pub fn is_transcendental(&self) -> bool {
        self.group.transcendental[self.index]
    }

    pub fn name(&self) -> &str {
        &self.group.names[self.index]
    }
}

impl PartialEq for FormalUnit {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.group, &o.group) && self.index == o.index
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Unit {
    Root(RootOfUnity),
    Rat(Rat),
    Fq(FqElem),
    Formal(FormalUnit),
}

impl Unit {
    pub fn rat(q: Rat) -> Result<Unit> {
        if q.is_zero() {
            return Err(Error::Invalid("zero is not a unit".into()));
        }
        Ok(Unit::Rat(q))
    }

    pub fn fq(a: FqElem) -> Result<Unit> {
        if a.is_zero() {
            return Err(Error::Invalid("zero is not a unit".into()));
        }
        Ok(Unit::Fq(a))
    }

    /// Roots of unity and nonzero rationals; other cyclotomic numbers are unsupported.
    pub fn from_cyclo(c: &CycloNum) -> Result<Unit> {
        if let Some(r) = c.as_root_of_unity() {
            return Ok(Unit::Root(r));
        }
        match c.as_rat() {
            Some(q) => Unit::rat(q.clone()),
            None => Err(Error::Unsupported(format!("{c} is neither a root of unity nor rational"))),
        }
    }

    fn kind(&self) -> Kind {
        match self {
            Unit::Root(_) | Unit::Rat(_) => Kind::Number,
            Unit::Fq(a) => Kind::Fq(a.characteristic()),
            Unit::Formal(f) => Kind::Formal(Arc::as_ptr(&f.group) as usize),
        }
    }

    /// Whether the unit has finite order.
    pub fn is_torsion(&self) -> Result<bool> {
        Ok(relation_lattice(std::slice::from_ref(self), &[])?.rank() == 1)
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unit::Root(r) => write!(f, "{r}"),
            Unit::Rat(q) => write!(f, "{q}"),
            Unit::Fq(a) => write!(f, "{a}"),
            Unit::Formal(u) => write!(f, "{}", u.name()),
        }
    }
}

impl FromStr for Unit {
    type Err = Error;

    /// `fq(...)` elements, or cyclotomic expressions such as `z(1/3)`, `2`, `1+z(1/3)`.
    fn from_str(s: &str) -> Result<Unit> {
        let t = s.trim();
        if t.starts_with("fq(") {
            return Unit::fq(t.parse()?);
        }
        Unit::from_cyclo(&crate::parse::parse_cyclo(t)?)
    }
}

/// Parses a comma-separated unit list, respecting brackets.
pub fn parse_units(s: &str) -> Result<Vec<Unit>> {
    crate::parse::split_top_level(s, ',')
        .into_iter()
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Number,
    Fq(u64),
    Formal(usize),
}

/// Group coordinates: one value vector per unit plus the relation rows.
struct Embedding {
    values: Vec<Vec<BigInt>>,
    relations: Vec<Vec<BigInt>>,
    width: usize,
}

fn coprime_base(nums: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = nums.iter().filter(|x| **x > BigInt::one()).cloned().collect();
    base.sort();
    base.dedup();
    loop {
        let mut split = None;
        'search: for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    split = Some((i, j, g));
                    break 'search;
                }
            }
        }
        let Some((i, j, g)) = split else { break };
        let (a, b) = (&base[i] / &g, &base[j] / &g);
        base.remove(j);
        base.remove(i);
        for x in [a, b, g] {
            if x > BigInt::one() {
                base.push(x);
            }
        }
        base.sort();
        base.dedup();
    }
    base
}

fn valuation(mut x: BigInt, base: &[BigInt]) -> Vec<BigInt> {
    base.iter()
        .map(|b| {
            let mut e = 0i64;
            while (&x % b).is_zero() {
                x /= b;
                e += 1;
            }
            BigInt::from(e)
        })
        .collect()
}

fn embed(units: &[Unit]) -> Result<Embedding> {
    let Some(first) = units.first() else {
        return Ok(Embedding { values: Vec::new(), relations: Vec::new(), width: 0 });
    };
    let kind = first.kind();
    for u in units {
        if u.kind() != kind {
            return Err(Error::IncomparableUnits(first.to_string(), u.to_string()));
        }
    }
    match kind {
        Kind::Number => {
            let mut l = 1u64;
            let mut ints = Vec::new();
            for u in units {
                match u {
                    Unit::Root(r) => l = lcm(l, r.order()),
                    Unit::Rat(q) => {
                        if q.is_negative() {
                            l = lcm(l, 2);
                        }
                        ints.push(q.numer().abs());
                        ints.push(q.denom());
                    }
                    _ => unreachable!(),
                }
            }
            let base = coprime_base(&ints);
            let width = 1 + base.len();
            let values = units
                .iter()
                .map(|u| {
                    let mut v = vec![BigInt::zero(); width];
                    match u {
                        Unit::Root(r) => v[0] = BigInt::from(r.exponent_at(l)),
                        Unit::Rat(q) => {
                            if q.is_negative() {
                                v[0] = BigInt::from(l / 2);
                            }
                            let num = valuation(q.numer().abs(), &base);
                            let den = valuation(q.denom(), &base);
                            for k in 0..base.len() {
                                v[1 + k] = &num[k] - &den[k];
                            }
                        }
                        _ => unreachable!(),
                    }
                    v
                })
                .collect();
            let mut rel = vec![BigInt::zero(); width];
            rel[0] = BigInt::from(l);
            Ok(Embedding { values, relations: vec![rel], width })
        }
        Kind::Fq(p) => {
            let n = units.iter().fold(1u64, |acc, u| match u {
                Unit::Fq(a) => lcm(acc, a.degree() as u64),
                _ => unreachable!(),
            }) as u32;
            check_field(p, n)?;
            let values = units
                .iter()
                .map(|u| match u {
                    Unit::Fq(a) => Ok(vec![BigInt::from(a.dlog_in(n)?)]),
                    _ => unreachable!(),
                })
                .collect::<Result<_>>()?;
            Ok(Embedding { values, relations: vec![vec![BigInt::from(p.pow(n) - 1)]], width: 1 })
        }
        Kind::Formal(_) => {
            let Unit::Formal(f) = first else { unreachable!() };
            let r = f.group.names.len();
            let values = units
                .iter()
                .map(|u| match u {
                    Unit::Formal(g) => (0..r).map(|j| BigInt::from((j == g.index) as i64)).collect(),
                    _ => unreachable!(),
                })
                .collect();
            Ok(Embedding { values, relations: f.group.relations.basis().to_rows(), width: r })
        }
    }
}

/// `{v ∈ ℤⁿ : g^v ∈ ⟨H⟩}` in Hermite normal form.
pub fn relation_lattice(g: &[Unit], h: &[Unit]) -> Result<ExponentLattice> {
    let all: Vec<Unit> = g.iter().chain(h).cloned().collect();
    let e = embed(&all)?;
    let (gv, hv) = e.values.split_at(g.len());
    let mut rels = e.relations;
    rels.extend(hv.iter().cloned());
    Ok(kernel_in_group(gv, &rels, e.width))
}

/// `{v ∈ ℤⁿ : g^v ∈ ⟨H⟩·T}` where `T` is the torsion of the ambient group.
pub fn relation_lattice_mod_torsion(g: &[Unit], h: &[Unit]) -> Result<ExponentLattice> {
    let all: Vec<Unit> = g.iter().chain(h).cloned().collect();
    let e = embed(&all)?;
    let (gv, hv) = e.values.split_at(g.len());
    let declared = ExponentLattice::new(e.width, e.relations)?;
    let mut rels = declared.saturation().basis().to_rows();
    rels.extend(hv.iter().cloned());
    Ok(kernel_in_group(gv, &rels, e.width))
}

pub fn is_mult_independent(g: &[Unit], over: &[Unit]) -> Result<bool> {
    Ok(relation_lattice(g, over)?.is_zero())
}

/// Whether some positive power of `a` lies in `⟨A ∪ B⟩`.
pub fn mcl_member(a: &Unit, set: &[Unit], over: &[Unit]) -> Result<bool> {
    let mut g = vec![a.clone()];
    g.extend(set.iter().cloned());
    g.extend(over.iter().cloned());
    Ok(relation_lattice(&g, &[])?.has_nonzero_first())
}

/// Greedy left-to-right multiplicative basis of `A` over `B`.
pub fn mult_basis(set: &[Unit], over: &[Unit]) -> Result<Vec<Unit>> {
    let mut basis: Vec<Unit> = Vec::new();
    for a in set {
        if !mcl_member(a, &basis, over)? {
            basis.push(a.clone());
        }
    }
    Ok(basis)
}

/// Whether `a` lies in the group `⟨A⟩` itself (first pivot equal to 1).
pub fn group_member(a: &Unit, set: &[Unit]) -> Result<bool> {
    let mut g = vec![a.clone()];
    g.extend(set.iter().cloned());
    let lat = relation_lattice(&g, &[])?;
    Ok(lat.rank() > 0 && lat.basis().get(0, 0).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(a: i64, m: u64) -> Unit {
        Unit::Root(RootOfUnity::new(a, m))
    }

    fn q(a: i64) -> Unit {
        Unit::Rat(Rat::from_int(a))
    }

    fn rows(l: &ExponentLattice) -> Vec<Vec<i64>> {
        l.basis().to_i64_rows().unwrap()
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(rows(&relation_lattice(&[root(1, 3), root(1, 6)], &[]).unwrap()), vec![vec![1, 4], vec![0, 6]]);
        assert_eq!(rows(&relation_lattice(&[root(1, 5)], &[]).unwrap()), vec![vec![5]]);
        let f = |k| Unit::Fq(FqElem::from_int(7, k));
        assert_eq!(rows(&relation_lattice(&[f(2), f(4)], &[]).unwrap()), vec![vec![1, 1], vec![0, 3]]);
        assert!(relation_lattice(&[q(2), f(2)], &[]).is_err());
    }

    #[test]
    fn independence_examples() {
        assert!(!is_mult_independent(&[root(1, 3)], &[]).unwrap());
        assert!(is_mult_independent(&[q(2)], &[]).unwrap());
        assert!(!is_mult_independent(&[q(2), q(8)], &[]).unwrap());
        let l = relation_lattice(&[q(2), q(8)], &[]).unwrap();
        assert!(l.contains_i64(&[3, -1]));
        assert!(is_mult_independent(&[q(6), q(10), q(15)], &[]).unwrap());
        assert!(!is_mult_independent(&[q(6), q(10), Unit::Rat(Rat::new(3, 5))], &[]).unwrap());
        assert!(is_mult_independent(&[q(6), q(10)], &[]).unwrap());
    }

    #[test]
    fn mcl_examples() {
        assert!(mcl_member(&root(1, 6), &[root(1, 3)], &[]).unwrap());
        assert!(mcl_member(&root(1, 5), &[root(1, 3)], &[]).unwrap());
        assert!(!group_member(&root(1, 5), &[root(1, 3)]).unwrap());
        assert!(mcl_member(&q(2), &[q(2)], &[]).unwrap());
        assert!(!mcl_member(&q(3), &[q(2)], &[]).unwrap());
        assert!(mcl_member(&q(-4), &[q(2)], &[]).unwrap());
    }

    #[test]
    fn basis_examples() {
        assert!(mult_basis(&[root(1, 3), root(1, 6), root(1, 2)], &[]).unwrap().is_empty());
        assert_eq!(mult_basis(&[q(2), q(3), q(6)], &[]).unwrap(), vec![q(2), q(3)]);
        assert!(mult_basis(&[], &[]).unwrap().is_empty());
    }

    #[test]
    fn modulo_torsion() {
        let l = relation_lattice_mod_torsion(&[root(1, 3), Unit::Rat(Rat::from_int(-2)), q(4)], &[]).unwrap();
        assert!(l.contains_i64(&[1, 0, 0]));
        assert!(l.contains_i64(&[0, 2, -1]));
        assert!(!l.contains_i64(&[0, 1, 0]));
        assert_eq!(relation_lattice_mod_torsion(&[q(2)], &[q(4)]).unwrap(), ExponentLattice::from_i64(1, &[vec![2]]).unwrap());
    }

    #[test]
    fn formal_units() {
        let lat = ExponentLattice::from_i64(2, &[vec![2, -1]]).unwrap();
        let g = FormalGroup::new(vec!["a".into(), "b".into()], lat, vec![true, true]).unwrap();
        let (a, b) = (g.unit("a").unwrap(), g.unit("b").unwrap());
        assert_eq!(mult_basis(&[a.clone(), b.clone()], &[]).unwrap(), vec![a.clone()]);
        assert!(relation_lattice(&[a.clone(), q(2)], &[]).is_err());
        let torsion = ExponentLattice::from_i64(1, &[vec![3]]).unwrap();
        assert!(FormalGroup::new(vec!["t".into()], torsion, vec![true]).is_err());
    }
}
