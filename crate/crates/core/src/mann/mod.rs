//! Non-degenerate solutions of `c₁y₁ + ⋯ + cₙyₙ = 1` in roots of unity, and
//! the checks built on them: genericity of a unit group and instances of the
//! axiom scheme bounding solution orders inside the image of the character.

mod pullback;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::character::CharContext;
use crate::cyclotomic::{RootBasis, RootOfUnity};
use crate::error::{Error, Result};
use crate::exact::arith::{lcm, primes_up_to};
use crate::exact::Rat;
use crate::limits::Limits;
use crate::mult_lattice::{group_member, relation_lattice_mod_torsion, Unit};

pub use pullback::{char_pullback, ChiTerm, PulledBackSet};

/// Product of the primes `≤ n + 1`.
pub fn d_bound(n: usize) -> u64 {
    primes_up_to(n as u64 + 1).into_iter().product()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MannEquation {
    coeffs: Vec<Rat>,
}

impl MannEquation {
    pub fn new(coeffs: Vec<Rat>) -> Result<MannEquation> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("a Mann equation needs at least one term".into()));
        }
        if coeffs.iter().any(Rat::is_zero) {
            return Err(Error::Invalid("Mann coefficients must be nonzero".into()));
        }
        Ok(MannEquation { coeffs })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for MannEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().enumerate().map(|(i, c)| format!("({c})*y{}", i + 1)).collect();
        write!(f, "{} = 1", terms.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MannSolutionSet {
    pub solutions: Vec<Vec<RootOfUnity>>,
    pub bound_used: u64,
}

/// Coordinates of roots of unity in one cyclotomic field, with a lookup back.
pub(crate) struct RootTable {
    pub basis: RootBasis,
    pub roots: Vec<(RootOfUnity, Vec<Rat>)>,
}

impl RootTable {
    /// All roots whose order divides `bound` (which must be even or 1).
    pub fn new(bound: u64) -> RootTable {
        let basis = RootBasis::for_order(bound);
        let roots = (0..bound)
            .map(|a| {
                let r = RootOfUnity::new(a as i64, bound);
                let v = basis.rep(&r).into_iter().map(Rat::from_int).collect();
                (r, v)
            })
            .collect();
        RootTable { basis, roots }
    }

    pub fn rep(&self, r: &RootOfUnity) -> Vec<Rat> {
        self.basis.rep(r).into_iter().map(Rat::from_int).collect()
    }
}

fn axpy(acc: &mut [Rat], c: &Rat, v: &[Rat]) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += &(c * x);
    }
}

/// Whether no nonempty proper subsum of `Σ cᵢ vᵢ` vanishes.
pub(crate) fn non_degenerate(coeffs: &[Rat], vecs: &[&[Rat]]) -> bool {
    let n = coeffs.len();
    let dim = vecs.first().map_or(0, |v| v.len());
    for mask in 1u32..(1 << n) - 1 {
        let mut acc = vec![Rat::zero(); dim];
        for i in 0..n {
            if mask >> i & 1 == 1 {
                axpy(&mut acc, &coeffs[i], vecs[i]);
            }
        }
        if acc.iter().all(Rat::is_zero) {
            return false;
        }
    }
    true
}

/// Solutions of `Σ cᵢyᵢ = 1` with `y₁..yₙ₋₁` ranging over `domain` and `yₙ`
/// recovered exactly; `accept` filters the recovered last entry.
pub(crate) fn solve_over(
    coeffs: &[Rat],
    table: &RootTable,
    domain: &[usize],
    accept: impl Fn(&RootOfUnity) -> bool,
) -> Vec<Vec<RootOfUnity>> {
    let n = coeffs.len();
    let dim = table.basis.dim();
    let one = table.rep(&RootOfUnity::one());
    let last = coeffs[n - 1].recip();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n - 1];
    'outer: loop {
        let mut rhs = one.clone();
        for (k, &i) in idx.iter().enumerate() {
            axpy(&mut rhs, &-&coeffs[k], &table.roots[domain[i]].1);
        }
        let target: Vec<Rat> = rhs.iter().map(|x| x * &last).collect();
        if let Some(y) = table.basis.lookup_rat(&target) {
            if accept(&y) {
                let mut tuple: Vec<RootOfUnity> = idx.iter().map(|&i| table.roots[domain[i]].0).collect();
                tuple.push(y);
                let reps: Vec<Vec<Rat>> = tuple.iter().map(|r| table.rep(r)).collect();
                let refs: Vec<&[Rat]> = reps.iter().map(Vec::as_slice).collect();
                debug_assert_eq!(refs[0].len(), dim);
                if non_degenerate(coeffs, &refs) {
                    out.push(tuple);
                }
            }
        }
        for k in 0..n - 1 {
            idx[k] += 1;
            if idx[k] < domain.len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    out.sort();
    out
}

/// All non-degenerate root-of-unity solutions, enumerating orders dividing `d(n)`.
pub fn mann_solve(eq: &MannEquation, limits: &Limits) -> Result<MannSolutionSet> {
    let n = eq.len();
    if n > limits.mann_max_terms {
        return Err(Error::Budget(format!("{n} terms exceeds the Mann enumeration budget of {}", limits.mann_max_terms)));
    }
    let bound = d_bound(n);
    let table = RootTable::new(bound);
    let domain: Vec<usize> = (0..table.roots.len()).collect();
    let solutions = solve_over(&eq.coeffs, &table, &domain, |y| bound % y.order() == 0);
    Ok(MannSolutionSet { solutions, bound_used: bound })
}

#[derive(Debug, Clone, Serialize)]
pub struct GenericityResult {
    pub generic: bool,
    /// An element of `⟨G⟩` outside `⟨H⟩·U` that is algebraic.
    pub witness: Option<String>,
    /// A one-term equation solved by the witness but by nothing in `⟨H⟩·U`.
    pub certificate: Option<MannEquation>,
}

/// Decides whether every non-degenerate solution in `⟨G⟩` of every rational
/// Mann equation lies in `⟨H⟩·U`, after checking that `H` (enlarged by the
/// torsion of `G`) is multiplicatively closed in `G`.
pub fn genericity_check(g: &[Unit], h: &[Unit]) -> Result<GenericityResult> {
    for u in g.iter().chain(h) {
        if let Unit::Fq(_) = u {
            return Err(Error::Unsupported("genericity over finite-field units".into()));
        }
    }
    for x in h {
        if !group_member(x, g)? {
            return Err(Error::Precondition(format!("{x} is not in the group generated by G")));
        }
    }
    let lat = relation_lattice_mod_torsion(g, h)?;
    if !lat.is_saturated() {
        return Err(Error::Precondition(format!("mcl(H) meets G beyond H: relation lattice {lat} is not saturated")));
    }
    let n = g.len();
    for (i, u) in g.iter().enumerate() {
        let e: Vec<i64> = (0..n).map(|j| (i == j) as i64).collect();
        if lat.contains_i64(&e) {
            continue;
        }
        match u {
            Unit::Rat(q) => {
                return Ok(GenericityResult {
                    generic: false,
                    witness: Some(q.to_string()),
                    certificate: Some(MannEquation::new(vec![q.recip()])?),
                })
            }
            Unit::Formal(f) if !f.is_transcendental() => {
                return Ok(GenericityResult { generic: false, witness: Some(f.name().to_string()), certificate: None })
            }
            _ => {}
        }
    }
    Ok(GenericityResult { generic: true, witness: None, certificate: None })
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub p: u64,
    pub n: usize,
    pub n_max: u32,
    pub holds: bool,
    pub equations: usize,
    /// Non-degenerate solutions found inside `χ(𝔽_{p^m}ˣ)ⁿ`, all equations together.
    pub solutions_in_image: usize,
    pub witness: Option<String>,
}

/// Checks, for every `c` in `pool`, that the non-degenerate solutions of
/// `c·x = 1` with entries in `⋃_{m ≤ n_max} χ(𝔽_{p^m}ˣ)` satisfy `xᵢ^{d(n)} = 1`.
/// The search runs over the image directly, independently of [`mann_solve`].
pub fn axiom_instance(ctx: &CharContext, n: usize, pool: &[Vec<Rat>], n_max: u32) -> Result<AxiomReport> {
    let p = ctx.p();
    let orders: Vec<u64> = (1..=n_max)
        .map(|m| {
            crate::finite_field::check_field(p, m)?;
            Ok(p.pow(m) - 1)
        })
        .collect::<Result<_>>()?;
    let big = orders.iter().fold(2, |acc, &o| lcm(acc, o));
    let table = RootTable::new(big);
    let in_image = |r: &RootOfUnity| orders.iter().any(|o| o % r.order() == 0);
    let domain: Vec<usize> = (0..table.roots.len()).filter(|&i| in_image(&table.roots[i].0)).collect();
    let bound = d_bound(n);
    let mut report = AxiomReport { p, n, n_max, holds: true, equations: 0, solutions_in_image: 0, witness: None };
    let mut seen = BTreeSet::new();
    for c in pool {
        if c.len() != n || !seen.insert(c.clone()) {
            continue;
        }
        let eq = MannEquation::new(c.clone())?;
        report.equations += 1;
        let sols = solve_over(&eq.coeffs, &table, &domain, in_image);
        report.solutions_in_image += sols.len();
        if let Some(bad) = sols.iter().find(|s| s.iter().any(|y| bound % y.order() != 0)) {
            report.holds = false;
            let t: Vec<String> = bad.iter().map(|r| r.to_string()).collect();
            report.witness = Some(format!("{eq}: ({})", t.join(",")));
            break;
        }
    }
    Ok(report)
}

/// The coefficient pool `{±1, ±2, ±1/2, ±1/3}ⁿ`.
pub fn standard_pool(n: usize) -> Vec<Vec<Rat>> {
    let base: Vec<Rat> = [(1, 1), (2, 1), (1, 2), (1, 3)]
        .iter()
        .flat_map(|&(a, b)| [Rat::new(a, b), Rat::new(-a, b)])
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Rat>| {
                base.iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(c: &[(i64, i64)]) -> MannEquation {
        MannEquation::new(c.iter().map(|&(a, b)| Rat::new(a, b)).collect()).unwrap()
    }

    fn z(a: i64, m: u64) -> RootOfUnity {
        RootOfUnity::new(a, m)
    }

    #[test]
    fn bounds() {
        assert_eq!([d_bound(1), d_bound(2), d_bound(3), d_bound(4)], [2, 6, 6, 30]);
    }

    #[test]
    fn solve_examples() {
        let lim = Limits::default();
        let s = mann_solve(&eq(&[(1, 1), (1, 1)]), &lim).unwrap();
        assert_eq!(s.solutions, vec![vec![z(1, 6), z(5, 6)], vec![z(5, 6), z(1, 6)]]);
        assert!(mann_solve(&eq(&[(3, 1)]), &lim).unwrap().solutions.is_empty());
        assert_eq!(mann_solve(&eq(&[(2, 1), (-1, 1)]), &lim).unwrap().solutions, vec![vec![z(0, 1), z(0, 1)]]);
        assert_eq!(mann_solve(&eq(&[(-1, 1)]), &lim).unwrap().solutions, vec![vec![z(1, 2)]]);
        assert!(mann_solve(&eq(&[(1, 1); 5]), &lim).is_err());
    }

    #[test]
    fn degenerate_excluded() {
        let s = mann_solve(&eq(&[(1, 1), (1, 1), (1, 1)]), &Limits::default()).unwrap();
        for t in &s.solutions {
            assert!(!(t[0] == t[1].mul(&z(1, 2))));
        }
        assert!(s.solutions.contains(&vec![z(0, 1), z(1, 4), z(3, 4)]) == false);
        assert!(s.solutions.iter().all(|t| t.iter().all(|y| 6 % y.order() == 0)));
    }

    #[test]
    fn genericity_examples() {
        let r = genericity_check(&[Unit::Root(z(1, 12))], &[]).unwrap();
        assert!(r.generic);
        let two = Unit::Rat(Rat::from_int(2));
        let r = genericity_check(&[two.clone()], &[]).unwrap();
        assert!(!r.generic);
        assert_eq!(r.witness.as_deref(), Some("2"));
        let u: Unit = "1+z(1/3)".parse().unwrap();
        assert!(genericity_check(&[u], &[]).unwrap().generic);
        assert!(genericity_check(&[two.clone()], &[two.clone()]).unwrap().generic);
        let four = Unit::Rat(Rat::from_int(4));
        assert!(matches!(genericity_check(&[two], &[four]), Err(Error::Precondition(_))));
    }

    #[test]
    fn axiom_examples() {
        let c7 = CharContext::new(7).unwrap();
        let r = axiom_instance(&c7, 2, &[vec![Rat::one(), Rat::one()]], 1).unwrap();
        assert!(r.holds && r.solutions_in_image == 2);
        let c2 = CharContext::new(2).unwrap();
        let r = axiom_instance(&c2, 2, &[vec![Rat::one(), Rat::one()]], 3).unwrap();
        assert!(r.holds && r.solutions_in_image == 0);
        let r = axiom_instance(&c2, 1, &[vec![Rat::one()]], 2).unwrap();
        assert!(r.holds && r.solutions_in_image == 1);
    }
}
