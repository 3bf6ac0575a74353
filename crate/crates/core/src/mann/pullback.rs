//! Pulling an algebraic set in the roots-of-unity sort back along `χ`.
//!
//! Each polynomial `Σ qₜ ζₜ w^{mₜ}` vanishes at `χ(s)` exactly when its
//! nonzero terms split into minimal vanishing subsums. A singleton block
//! forces `s^{mₜ} = 0`; a larger block is a non-degenerate Mann solution,
//! which fixes every ratio `χ(s^{mₜ} / s^{m₀})` and hence `s^{mₜ} − α s^{m₀}`.

use serde::Serialize;

use super::{mann_solve, MannEquation};
use crate::character::CharContext;
use crate::cyclotomic::{CycloNum, RootOfUnity};
use crate::error::{Error, Result};
use crate::exact::{MPoly, Monomial, MonomialOrder, Rat};
use crate::finite_field::FqElem;
use crate::ideal::Ideal;
use crate::limits::Limits;

/// `coeff · root · w^mono`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiTerm {
    pub coeff: Rat,
    pub root: RootOfUnity,
    pub mono: Monomial,
}

/// Splits each coefficient over the power basis of its conductor.
pub fn chi_terms(p: &MPoly<CycloNum>) -> Vec<ChiTerm> {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let cond = c.conductor();
        for (j, q) in c.coords_at(cond).into_iter().enumerate() {
            if !q.is_zero() {
                out.push(ChiTerm { coeff: q, root: RootOfUnity::new(j as i64, cond), mono: m.clone() });
            }
        }
    }
    out
}

/// A finite union of zero sets `V(piece)` in `𝔽ᵏ`, each piece given by a reduced Gröbner basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PulledBackSet {
    pub p: u64,
    pub k: usize,
    pub pieces: Vec<Vec<MPoly<FqElem>>>,
}

type Piece = Vec<MPoly<FqElem>>;

fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == labels.len() {
            let blocks = (0..max).map(|b| (0..labels.len()).filter(|&j| labels[j] == b).collect()).collect();
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            labels[i] = b;
            rec(i + 1, max.max(b + 1), labels, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    rec(0, 0, &mut labels, &mut out);
    out
}

fn mono_poly(m: &Monomial, c: FqElem) -> MPoly<FqElem> {
    MPoly::monomial(m.clone(), c, MonomialOrder::GRevLex)
}

/// The alternatives (as conjunctions) for one block of terms to vanish.
fn block_alternatives(ctx: &CharContext, terms: &[&ChiTerm], limits: &Limits) -> Result<Vec<Piece>> {
    let p = ctx.p();
    let one = FqElem::one(p);
    if terms.len() == 1 {
        return Ok(vec![vec![mono_poly(&terms[0].mono, one)]]);
    }
    let t0 = terms[0];
    let coeffs: Vec<Rat> = terms[1..].iter().map(|t| -(&t.coeff / &t0.coeff)).collect();
    let sols = mann_solve(&MannEquation::new(coeffs)?, limits)?;
    let mut out = Vec::new();
    'sol: for y in sols.solutions {
        let mut piece = Vec::new();
        for (t, yt) in terms[1..].iter().zip(&y) {
            let ratio = yt.mul(&t0.root).div(&t.root);
            let Some(alpha) = ctx.chi_preimage(&ratio)? else { continue 'sol };
            let eq = mono_poly(&t.mono, one).sub(&mono_poly(&t0.mono, alpha));
            if !eq.is_zero() {
                piece.push(eq);
            }
        }
        out.push(piece);
    }
    Ok(out)
}

fn conjoin(a: &[Piece], b: &[Piece]) -> Vec<Piece> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let mut z = x.clone();
            z.extend(y.iter().cloned());
            out.push(z);
        }
    }
    out
}

fn equation_dnf(ctx: &CharContext, k: usize, terms: &[ChiTerm], limits: &Limits) -> Result<Vec<Piece>> {
    let mut dnf = Vec::new();
    for partition in set_partitions(terms.len()) {
        let mut acc: Vec<Piece> = vec![Vec::new()];
        for block in &partition {
            if block.len() > limits.mann_max_terms + 1 {
                return Err(Error::Budget(format!("a vanishing subsum of {} terms exceeds the Mann budget", block.len())));
            }
            let refs: Vec<&ChiTerm> = block.iter().map(|&i| &terms[i]).collect();
            acc = conjoin(&acc, &block_alternatives(ctx, &refs, limits)?);
            if acc.is_empty() {
                break;
            }
        }
        dnf.extend(acc);
    }
    debug_assert!(dnf.iter().flatten().all(|q| q.nvars() == k));
    Ok(dnf)
}

/// The pieces of `χ⁻¹(Z(P)) ⊆ 𝔽ᵏ` for a system `P` in `k` variables over `ℚ(μ)`.
pub fn char_pullback(ctx: &CharContext, system: &[MPoly<CycloNum>], k: usize, limits: &Limits) -> Result<PulledBackSet> {
    if system.iter().any(|q| q.nvars() != k) {
        return Err(Error::Invalid(format!("every polynomial must be in {k} variables")));
    }
    let mut dnf: Vec<Piece> = vec![Vec::new()];
    for poly in system {
        let terms = chi_terms(poly);
        if terms.is_empty() {
            continue;
        }
        dnf = conjoin(&dnf, &equation_dnf(ctx, k, &terms, limits)?);
    }
    PulledBackSet::simplify(ctx.p(), k, dnf, limits)
}

impl PulledBackSet {
    fn simplify(p: u64, k: usize, dnf: Vec<Piece>, limits: &Limits) -> Result<PulledBackSet> {
        let mut bases: Vec<Piece> = Vec::new();
        for piece in dnf {
            let ideal = Ideal::new(k, MonomialOrder::GRevLex, piece)?.with_limits(*limits);
            if ideal.is_unit()? {
                continue;
            }
            let mut gb = ideal.groebner()?.to_vec();
            gb.reverse();
            if !bases.contains(&gb) {
                bases.push(gb);
            }
        }
        let ideals: Vec<Ideal<FqElem>> = bases
            .iter()
            .map(|b| Ok(Ideal::new(k, MonomialOrder::GRevLex, b.clone())?.with_limits(*limits)))
            .collect::<Result<_>>()?;
        // V(A) ⊆ V(B) iff every generator of B lies in √A.
        let inside = |a: usize, b: usize| -> Result<bool> {
            for g in &bases[b] {
                if !ideals[a].radical_member(g)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let mut keep = vec![true; bases.len()];
        for a in 0..bases.len() {
            for b in 0..bases.len() {
                if a != b && keep[b] && inside(a, b)? && !(inside(b, a)? && b > a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut pieces: Vec<Piece> = bases.into_iter().zip(keep).filter(|(_, k)| *k).map(|(b, _)| b).collect();
        pieces.sort_by_key(|b| b.iter().map(|q| q.display_with("s")).collect::<Vec<_>>());
        Ok(PulledBackSet { p, k, pieces })
    }

    pub fn contains(&self, point: &[FqElem]) -> bool {
        self.pieces.iter().any(|piece| piece.iter().all(|q| q.eval(point).is_zero()))
    }

    /// One defining system: products of one generator from each piece, reduced.
    pub fn to_system(&self, limits: &Limits) -> Result<Vec<MPoly<FqElem>>> {
        let one = FqElem::one(self.p);
        let ord = MonomialOrder::GRevLex;
        let mut prods = vec![MPoly::constant(one, self.k, ord)];
        if self.pieces.is_empty() {
            return Ok(prods);
        }
        for piece in &self.pieces {
            if piece.is_empty() {
                return Ok(Vec::new());
            }
            let mut next: Vec<MPoly<FqElem>> = Vec::new();
            for a in &prods {
                for b in piece {
                    let q = a.mul(b).monic();
                    if !next.contains(&q) {
                        next.push(q);
                    }
                }
            }
            prods = next;
        }
        let mut gb = Ideal::new(self.k, ord, prods)?.with_limits(*limits).groebner()?.to_vec();
        gb.reverse();
        Ok(gb)
    }

    pub fn system_strings(&self, limits: &Limits) -> Result<Vec<String>> {
        Ok(self.to_system(limits)?.iter().map(|q| q.display_with("s")).collect())
    }
}

impl Serialize for PulledBackSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pieces: Vec<Vec<String>> = self
            .pieces
            .iter()
            .map(|piece| piece.iter().map(|q| q.display_with("s")).collect())
            .collect();
        pieces.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_cyclo_poly;

    fn system(s: &str, k: usize) -> Vec<MPoly<CycloNum>> {
        vec![parse_cyclo_poly(s, "w", Some(k)).unwrap()]
    }

    fn pull(p: u64, s: &str, k: usize) -> Vec<String> {
        let lim = Limits::default();
        let ctx = CharContext::new(p).unwrap();
        char_pullback(&ctx, &system(s, k), k, &lim).unwrap().system_strings(&lim).unwrap()
    }

    #[test]
    fn partitions_are_bell_numbers() {
        let counts: Vec<usize> = (0..6).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn examples() {
        assert_eq!(pull(7, "w1 - w2", 2), vec!["s1-s2"]);
        assert_eq!(pull(7, "w1 + w2", 2), vec!["s1+s2"]);
        assert_eq!(pull(2, "w1 + w2", 2), vec!["s1", "s2"]);
    }

    #[test]
    fn three_term_witness() {
        let lim = Limits::default();
        let ctx = CharContext::new(7).unwrap();
        let set = char_pullback(&ctx, &system("w1 + w2 + w3", 3), 3, &lim).unwrap();
        let pt = [FqElem::from_int(7, 1), FqElem::from_int(7, 2), FqElem::from_int(7, 4)];
        assert!(set.contains(&pt));
        let off = [FqElem::from_int(7, 1), FqElem::from_int(7, 2), FqElem::from_int(7, 3)];
        assert!(!set.contains(&off));
    }
}
