//! Pseudo-constructible sets `V ∖ S` over `K`, their closures, ranks and the almost-relations.

mod component;
pub mod corpus;
mod linear;
mod presentation;

use std::fmt;

use serde::Serialize;

pub use component::{Component, Irreducibility};
pub use linear::AffineSpace;
pub use presentation::{Annotation, Fiber, FinitePresentation, Label};

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::limits::Limits;
use crate::parse::{parse_rat_poly, split_top_level};

/// A finite union of closed pieces, with no piece contained in another.
#[derive(Debug, Clone)]
pub struct AlgSet {
    n: usize,
    comps: Vec<Component>,
}

impl AlgSet {
    pub fn new(n: usize, comps: Vec<Component>) -> Result<AlgSet> {
        let mut kept: Vec<Component> = Vec::new();
        for c in comps {
            if c.ambient() != n {
                return Err(Error::Invalid(format!("component {c} is not in {n} variables")));
            }
            let mut redundant = false;
            for k in &kept {
                if c.subset_of(k)? {
                    redundant = true;
                    break;
                }
            }
            if redundant {
                continue;
            }
            let mut next = Vec::with_capacity(kept.len() + 1);
            for k in kept {
                if !k.subset_of(&c)? {
                    next.push(k);
                }
            }
            next.push(c);
            kept = next;
        }
        Ok(AlgSet { n, comps: kept })
    }

    pub fn empty(n: usize) -> AlgSet {
        AlgSet { n, comps: Vec::new() }
    }

    pub fn whole(n: usize, limits: &Limits) -> Result<AlgSet> {
        Ok(AlgSet { n, comps: vec![Component::whole(n, limits)?] })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Component] {
        &self.comps
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.comps.iter().map(Component::dim).max()
    }

    pub fn top_components(&self) -> Vec<&Component> {
        let d = self.dim();
        self.comps.iter().filter(|c| Some(c.dim()) == d).collect()
    }

    /// Whether the irreducible `c` lies inside this set, i.e. inside one of its pieces.
    pub fn contains_component(&self, c: &Component) -> Result<bool> {
        for k in &self.comps {
            if c.subset_of(k)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        self.comps.iter().any(|c| c.contains_point(x))
    }

    pub fn union(&self, o: &AlgSet) -> Result<AlgSet> {
        AlgSet::new(self.n, self.comps.iter().chain(&o.comps).cloned().collect())
    }

    pub fn intersect(&self, o: &AlgSet) -> Result<AlgSet> {
        let mut out = Vec::new();
        for a in &self.comps {
            for b in &o.comps {
                if let Some(c) = a.intersect(b)? {
                    out.push(c);
                }
            }
        }
        AlgSet::new(self.n, out)
    }

    pub fn product(&self, o: &AlgSet) -> Result<AlgSet> {
        let mut out = Vec::new();
        for a in &self.comps {
            for b in &o.comps {
                out.push(a.product(b)?);
            }
        }
        AlgSet::new(self.n + o.n, out)
    }

    pub fn embed(&self, n: usize, offset: usize) -> Result<AlgSet> {
        let comps = self.comps.iter().map(|c| c.embed(n, offset)).collect::<Result<_>>()?;
        AlgSet::new(n, comps)
    }

    /// Pieces separated by `;`, generators by `,`; `K` is the whole space.
    pub fn parse(n: usize, s: &str, limits: &Limits) -> Result<AlgSet> {
        let mut comps = Vec::new();
        for piece in split_top_level(s, ';') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            if piece == "K" {
                comps.push(Component::whole(n, limits)?);
                continue;
            }
            let gens = split_top_level(piece, ',').into_iter().map(|g| parse_rat_poly(g, Some(n))).collect::<Result<_>>()?;
            comps.extend(Component::new(n, gens, false, limits)?);
        }
        AlgSet::new(n, comps)
    }
}

impl fmt::Display for AlgSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.comps.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

impl Serialize for AlgSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self
            .comps
            .iter()
            .map(|c| serde_json::json!({ "gens": c.gen_strings(), "irreducible": c.flag(), "dim": c.dim() }))
            .collect();
        v.serialize(s)
    }
}

/// `V ∖ (W₁ ∪ ⋯ ∪ W_m)`.
#[derive(Debug, Clone)]
pub struct PcSet {
    v: AlgSet,
    s: Vec<AlgSet>,
    closure_normalized: bool,
}

/// `(r_K, d_K)`; `None` is `−∞`.
pub type RankDeg = (Option<usize>, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcOp {
    Cap,
    CapDot,
    DotMinus,
    Times,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `T ⊂̃ T′` without `T′ ⊂̃ T`.
    Subset,
    Equivalent,
    Disjoint,
    Mixed,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Subset => "⊂̃",
            Relation::Equivalent => "∼",
            Relation::Disjoint => "⊥̃",
            Relation::Mixed => "mixed",
        })
    }
}

pub fn fmt_rank(r: Option<usize>) -> String {
    r.map_or_else(|| "-inf".to_string(), |r| r.to_string())
}

impl PcSet {
    pub fn new(v: AlgSet, s: Vec<AlgSet>) -> Result<PcSet> {
        if s.iter().any(|w| w.n != v.n) {
            return Err(Error::Invalid("subtracted sets must share the ambient dimension".into()));
        }
        Ok(PcSet { v, s, closure_normalized: false })
    }

    pub fn closed(v: AlgSet) -> PcSet {
        PcSet { v, s: Vec::new(), closure_normalized: false }
    }

    /// `V` as pieces separated by `;` and `S` as sets separated by `|`.
    pub fn parse(n: usize, v: &str, s: &str, limits: &Limits) -> Result<PcSet> {
        let v = AlgSet::parse(n, v, limits)?;
        let s = split_top_level(s, '|').into_iter().filter(|w| !w.trim().is_empty()).map(|w| AlgSet::parse(n, w, limits)).collect::<Result<_>>()?;
        PcSet::new(v, s)
    }

    pub fn ambient(&self) -> usize {
        self.v.n
    }

    pub fn v(&self) -> &AlgSet {
        &self.v
    }

    pub fn s(&self) -> &[AlgSet] {
        &self.s
    }

    pub fn is_normalized(&self) -> bool {
        self.closure_normalized
    }

    fn removed(&self, c: &Component) -> Result<bool> {
        for w in &self.s {
            if w.contains_component(c)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The closure of `V ∖ S`: the pieces of `V` not swallowed by any member of `S`.
    pub fn closure(&self) -> Result<AlgSet> {
        if self.closure_normalized {
            return Ok(self.v.clone());
        }
        let mut comps = Vec::new();
        for c in &self.v.comps {
            c.require_resolved()?;
            if !self.removed(c)? {
                comps.push(c.clone());
            }
        }
        Ok(AlgSet { n: self.v.n, comps })
    }

    pub fn normalize(&self) -> Result<PcSet> {
        Ok(PcSet { v: self.closure()?, s: self.s.clone(), closure_normalized: true })
    }

    pub fn rank_deg(&self) -> Result<RankDeg> {
        let c = self.closure()?;
        Ok((c.dim(), c.top_components().len()))
    }

    pub fn rank(&self) -> Result<Option<usize>> {
        Ok(self.rank_deg()?.0)
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        self.v.contains_point(x) && !self.s.iter().any(|w| w.contains_point(x))
    }

    /// Points of the set with free coordinates drawn from `grid`, on its linear pieces.
    pub fn sample(&self, grid: &[Rat]) -> Vec<Vec<Rat>> {
        let mut out = Vec::new();
        for c in &self.v.comps {
            if let Some(a) = c.as_linear() {
                out.extend(a.sample(grid).into_iter().filter(|x| self.contains_point(x)));
            }
        }
        out
    }

    pub fn intersect(&self, o: &PcSet) -> Result<PcSet> {
        let v = self.v.intersect(&o.v)?;
        PcSet::new(v, self.s.iter().chain(&o.s).cloned().collect())?.normalize()
    }

    /// `T ∩ cl(T′)`.
    pub fn cap_dot(&self, o: &PcSet) -> Result<PcSet> {
        let v = self.v.intersect(&o.closure()?)?;
        PcSet::new(v, self.s.clone())?.normalize()
    }

    /// `T ∖ cl(T′)`.
    pub fn dot_minus(&self, o: &PcSet) -> Result<PcSet> {
        let mut s = self.s.clone();
        s.push(o.closure()?);
        PcSet::new(self.v.clone(), s)?.normalize()
    }

    pub fn product(&self, o: &PcSet) -> Result<PcSet> {
        let n = self.ambient() + o.ambient();
        let v = self.v.product(&o.v)?;
        let mut s = Vec::new();
        for w in &self.s {
            s.push(w.embed(n, 0)?);
        }
        for w in &o.s {
            s.push(w.embed(n, self.ambient())?);
        }
        PcSet::new(v, s)?.normalize()
    }

    pub fn op(&self, o: &PcSet, op: PcOp) -> Result<PcSet> {
        if op != PcOp::Times && self.ambient() != o.ambient() {
            return Err(Error::Invalid("pc-sets live in different ambient spaces".into()));
        }
        match op {
            PcOp::Cap => self.intersect(o),
            PcOp::CapDot => self.cap_dot(o),
            PcOp::DotMinus => self.dot_minus(o),
            PcOp::Times => self.product(o),
        }
    }
}

impl fmt::Display for PcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)?;
        for w in &self.s {
            write!(f, " ∖ ({w})")?;
        }
        Ok(())
    }
}

fn shares_top(c: &Component, tops: &[&Component]) -> Result<bool> {
    for t in tops {
        if c.same_set(t)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The almost-relation between two pc-sets of equal rank, read off from top components.
pub fn pc_rel(t: &PcSet, u: &PcSet) -> Result<Relation> {
    let (a, b) = (t.closure()?, u.closure()?);
    if a.dim() != b.dim() {
        return Err(Error::RankMismatch(fmt_rank(a.dim()), fmt_rank(b.dim())));
    }
    let (ta, tb) = (a.top_components(), b.top_components());
    let mut shared = 0;
    for c in &ta {
        if shares_top(c, &tb)? {
            shared += 1;
        }
    }
    Ok(if shared == ta.len() && shared == tb.len() {
        Relation::Equivalent
    } else if shared == ta.len() {
        Relation::Subset
    } else if shared == 0 {
        Relation::Disjoint
    } else {
        Relation::Mixed
    })
}

/// `T ⊂̃ T′`, including the case `T ∼ T′`.
pub fn almost_subset(t: &PcSet, u: &PcSet) -> Result<bool> {
    Ok(matches!(pc_rel(t, u)?, Relation::Subset | Relation::Equivalent))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(n: usize, v: &str, s: &str) -> PcSet {
        PcSet::parse(n, v, s, &Limits::default()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let axes = pc(2, "x1; x2", "x1, x2");
        assert_eq!(axes.closure().unwrap().components().len(), 2);
        assert_eq!(axes.rank_deg().unwrap(), (Some(1), 2));
        assert_eq!(pc(2, "x1, x2", "x1").rank_deg().unwrap(), (None, 0));
        assert_eq!(pc(2, "x1 - x2", "").rank_deg().unwrap(), (Some(1), 1));
        assert_eq!(pc(2, "x1 - 1, x2", "").rank_deg().unwrap(), (Some(0), 1));
        assert_eq!(pc(2, "", "").rank_deg().unwrap(), (None, 0));
        let n = axes.normalize().unwrap();
        assert!(n.is_normalized());
        assert_eq!(n.normalize().unwrap().rank_deg().unwrap(), (Some(1), 2));
    }

    #[test]
    fn redundant_pieces_are_dropped() {
        let v = AlgSet::parse(2, "x2; x1, x2; x2", &Limits::default()).unwrap();
        assert_eq!(v.components().len(), 1);
    }

    #[test]
    fn unresolved_blocks_closure() {
        let t = pc(2, "x1*x2", "");
        assert!(matches!(t.closure(), Err(Error::Unresolved(_))));
    }

    #[test]
    fn op_examples() {
        let axes = pc(2, "x1; x2", "x1, x2");
        let x1_axis = pc(2, "x2", "");
        let r = axes.cap_dot(&x1_axis).unwrap();
        assert_eq!(r.rank_deg().unwrap(), (Some(1), 1));
        assert_eq!(r.closure().unwrap().to_string(), "V(x2)");
        assert!(!r.contains_point(&[Rat::zero(), Rat::zero()]));
        assert!(r.contains_point(&[Rat::one(), Rat::zero()]));
        assert_eq!(x1_axis.dot_minus(&x1_axis).unwrap().rank_deg().unwrap(), (None, 0));
        let p = x1_axis.product(&pc(1, "x1", "")).unwrap();
        assert_eq!((p.ambient(), p.rank_deg().unwrap()), (3, (Some(1), 1)));
        let cap = axes.intersect(&pc(2, "x1", "")).unwrap();
        assert_eq!(cap.rank_deg().unwrap(), (Some(1), 1));
        assert!(!cap.contains_point(&[Rat::zero(), Rat::zero()]));
    }

    #[test]
    fn product_keeps_holes() {
        let t = pc(1, "K", "x1").product(&pc(1, "K", "x1 - 1")).unwrap();
        assert_eq!(t.rank_deg().unwrap(), (Some(2), 1));
        assert!(!t.contains_point(&[Rat::zero(), Rat::from_int(5)]));
        assert!(!t.contains_point(&[Rat::from_int(5), Rat::one()]));
        assert!(t.contains_point(&[Rat::from_int(5), Rat::from_int(5)]));
    }

    #[test]
    fn relation_examples() {
        let l = pc(2, "x1 - x2", "");
        let l_minus = pc(2, "x1 - x2", "x1 - 1, x2 - 1");
        assert_eq!(pc_rel(&l, &l_minus).unwrap(), Relation::Equivalent);
        assert_eq!(pc_rel(&pc(2, "x2", ""), &pc(2, "x1", "")).unwrap(), Relation::Disjoint);
        let l1 = pc(2, "x2", "");
        let both = pc(2, "x2; x1", "");
        assert_eq!(pc_rel(&l1, &both).unwrap(), Relation::Subset);
        assert_eq!(pc_rel(&both, &l1).unwrap(), Relation::Mixed);
        assert!(matches!(pc_rel(&l1, &pc(2, "x1, x2", "")), Err(Error::RankMismatch(..))));
    }
}
