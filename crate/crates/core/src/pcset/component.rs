//! Irreducible closed subsets of `Kⁿ`, given by generators over `ℚ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::linear::{rref, AffineSpace};
use crate::error::{Error, Result};
use crate::exact::{MPoly, MonomialOrder, Rat};
use crate::ideal::Ideal;
use crate::limits::Limits;

const ORDER: MonomialOrder = MonomialOrder::GRevLex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Irreducibility {
    Verified,
    Asserted,
    Unresolved,
}

impl Irreducibility {
    fn meet(self, o: Irreducibility) -> Irreducibility {
        use Irreducibility::*;
        match (self, o) {
            (Unresolved, _) | (_, Unresolved) => Unresolved,
            (Verified, Verified) => Verified,
            _ => Asserted,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Component {
    n: usize,
    flag: Irreducibility,
    linear: Option<AffineSpace>,
    ideal: Ideal<Rat>,
    dim: usize,
}

/// Rank of the symmetric matrix of the homogenised quadric `q`.
fn quadric_rank(q: &MPoly<Rat>) -> usize {
    let n = q.nvars();
    let half = Rat::new(1, 2);
    let mut m = vec![vec![Rat::zero(); n + 2]; n + 1];
    for (mono, c) in q.terms() {
        let vars: Vec<usize> = mono.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect();
        let (i, j) = match vars[..] {
            [] => (n, n),
            [i] => (i, n),
            [i, j] => (i, j),
            _ => unreachable!("degree two"),
        };
        if i == j {
            m[i][i] += c;
        } else {
            let h = c * &half;
            m[i][j] += &h;
            m[j][i] += &h;
        }
    }
    rref(n + 1, m).map_or(0, |(rows, _)| rows.len())
}

impl Component {
    fn linear(a: AffineSpace, limits: &Limits) -> Result<Component> {
        let n = a.ambient();
        let ideal = Ideal::new(n, ORDER, a.to_polys(ORDER))?.with_limits(*limits);
        Ok(Component { n, flag: Irreducibility::Verified, dim: a.dim(), linear: Some(a), ideal })
    }

    /// The zero set of `gens`, or `None` when it is empty. With `asserted`, irreducibility the
    /// checks cannot confirm is taken on trust.
    pub fn new(n: usize, gens: Vec<MPoly<Rat>>, asserted: bool, limits: &Limits) -> Result<Option<Component>> {
        if let Some(a) = AffineSpace::from_polys(n, &gens) {
            return a.map(|a| Component::linear(a, limits)).transpose();
        }
        let ideal = Ideal::new(n, ORDER, gens)?.with_limits(*limits);
        let Some(dim) = ideal.dim()? else { return Ok(None) };
        let gb = ideal.groebner()?.to_vec();
        if let Some(Some(a)) = AffineSpace::from_polys(n, &gb) {
            return Component::linear(a, limits).map(Some);
        }
        let flag = if gb.len() == 1 && gb[0].total_degree() == Some(2) && quadric_rank(&gb[0]) >= 3 {
            Irreducibility::Verified
        } else if asserted {
            Irreducibility::Asserted
        } else {
            Irreducibility::Unresolved
        };
        Ok(Some(Component { n, flag, linear: None, ideal, dim }))
    }

    pub fn point(coords: &[Rat], limits: &Limits) -> Result<Component> {
        Component::linear(AffineSpace::point(coords), limits)
    }

    pub fn whole(n: usize, limits: &Limits) -> Result<Component> {
        Component::linear(AffineSpace::whole(n), limits)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn flag(&self) -> Irreducibility {
        self.flag
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[MPoly<Rat>] {
        self.ideal.gens()
    }

    pub fn as_linear(&self) -> Option<&AffineSpace> {
        self.linear.as_ref()
    }

    pub(crate) fn require_resolved(&self) -> Result<()> {
        if self.flag == Irreducibility::Unresolved {
            return Err(Error::Unresolved(format!("irreducibility of {self} is neither verified nor asserted")));
        }
        Ok(())
    }

    /// Whether `self ⊆ o` as closed sets.
    pub fn subset_of(&self, o: &Component) -> Result<bool> {
        if let (Some(a), Some(b)) = (&self.linear, &o.linear) {
            return Ok(b.contains_space(a));
        }
        if self.dim > o.dim {
            return Ok(false);
        }
        for g in o.gens() {
            if !self.ideal.radical_member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_set(&self, o: &Component) -> Result<bool> {
        Ok(self.dim == o.dim && self.subset_of(o)? && o.subset_of(self)?)
    }

    /// `self ∩ o` when it is empty or again a supported irreducible piece.
    pub fn intersect(&self, o: &Component) -> Result<Option<Component>> {
        if let (Some(a), Some(b)) = (&self.linear, &o.linear) {
            return a.intersect(b).map(|c| Component::linear(c, self.ideal.limits())).transpose();
        }
        if self.subset_of(o)? {
            return Ok(Some(self.clone()));
        }
        if o.subset_of(self)? {
            return Ok(Some(o.clone()));
        }
        let gens: Vec<MPoly<Rat>> = self.gens().iter().chain(o.gens()).cloned().collect();
        match Component::new(self.n, gens, false, self.ideal.limits())? {
            Some(c) if c.flag == Irreducibility::Verified => Ok(Some(c)),
            None => Ok(None),
            Some(_) => Err(Error::Unresolved(format!("the intersection of {self} and {o} is outside the supported universe"))),
        }
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        match &self.linear {
            Some(a) => a.contains_point(x),
            None => self.gens().iter().all(|g| g.eval(x).is_zero()),
        }
    }

    /// `self × o` with `o` in the trailing variables.
    pub fn product(&self, o: &Component) -> Result<Component> {
        let n = self.n + o.n;
        let limits = self.ideal.limits();
        if let (Some(a), Some(b)) = (&self.linear, &o.linear) {
            return Component::linear(a.product(b), limits);
        }
        let gens = self.gens().iter().map(|g| g.extend_vars(n, 0)).chain(o.gens().iter().map(|g| g.extend_vars(n, self.n))).collect();
        let ideal = Ideal::new(n, ORDER, gens)?.with_limits(*limits);
        Ok(Component { n, flag: self.flag.meet(o.flag), linear: None, ideal, dim: self.dim + o.dim })
    }

    /// `self` viewed in `n` variables with its own starting at index `offset`.
    pub fn embed(&self, n: usize, offset: usize) -> Result<Component> {
        let before = Component::whole(offset, self.ideal.limits())?;
        let after = Component::whole(n - offset - self.n, self.ideal.limits())?;
        before.product(self)?.product(&after)
    }

    pub fn gen_strings(&self) -> Vec<String> {
        self.gens().iter().map(|g| g.display_with("x")).collect()
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.gen_strings();
        if gens.is_empty() {
            write!(f, "V()")
        } else {
            write!(f, "V({})", gens.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_rat_poly;

    fn comp(n: usize, gens: &[&str], asserted: bool) -> Option<Component> {
        let gens = gens.iter().map(|g| parse_rat_poly(g, Some(n)).unwrap()).collect();
        Component::new(n, gens, asserted, &Limits::default()).unwrap()
    }

    #[test]
    fn irreducibility_flags() {
        assert_eq!(comp(2, &["x1 - 1", "x2"], false).unwrap().flag(), Irreducibility::Verified);
        let circle = comp(2, &["x1^2 + x2^2 - 1"], false).unwrap();
        assert_eq!((circle.flag(), circle.dim()), (Irreducibility::Verified, 1));
        assert_eq!(comp(2, &["x1*x2"], false).unwrap().flag(), Irreducibility::Unresolved);
        assert_eq!(comp(2, &["x1*x2"], true).unwrap().flag(), Irreducibility::Asserted);
        assert_eq!(comp(3, &["x1*x2 - x3^2"], false).unwrap().flag(), Irreducibility::Verified);
        assert_eq!(comp(1, &["x1^2 + 1"], false).unwrap().flag(), Irreducibility::Unresolved);
        assert!(comp(2, &["x1", "x1 - 1"], false).is_none());
        assert!(comp(2, &["x1^2 + x2^2 + 1", "x1", "x2"], false).is_none());
    }

    #[test]
    fn containment_and_intersection() {
        let axis = comp(2, &["x2"], false).unwrap();
        let origin = comp(2, &["x1", "x2"], false).unwrap();
        assert!(origin.subset_of(&axis).unwrap());
        assert!(!axis.subset_of(&origin).unwrap());
        let circle = comp(2, &["x1^2 + x2^2 - 1"], false).unwrap();
        let pt = comp(2, &["x1 - 1", "x2"], false).unwrap();
        assert!(pt.subset_of(&circle).unwrap());
        assert!(circle.intersect(&comp(2, &["x1 - 5"], false).unwrap()).is_err());
        assert!(circle.intersect(&comp(2, &["x1 - 1"], false).unwrap()).is_err());
        assert!(circle.intersect(&pt).unwrap().unwrap().same_set(&pt).unwrap());
        let y = comp(2, &["x1"], false).unwrap();
        assert!(axis.intersect(&y).unwrap().unwrap().same_set(&origin).unwrap());
    }

    #[test]
    fn products() {
        let axis = comp(2, &["x2"], false).unwrap();
        let zero = comp(1, &["x1"], false).unwrap();
        let p = axis.product(&zero).unwrap();
        assert_eq!((p.ambient(), p.dim()), (3, 1));
        let e = zero.embed(3, 1).unwrap();
        assert_eq!(e.gen_strings(), vec!["x2"]);
    }
}
