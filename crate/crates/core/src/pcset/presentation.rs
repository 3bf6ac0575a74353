//! Finite pc-presentations `X = ⋃ T_α` indexed by tuples over `𝔽_p`.

use serde::Deserialize;
use serde_json::{json, Value};

use super::{pc_rel, AlgSet, Component, PcSet, Relation};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::finite_field::FqElem;
use crate::limits::Limits;
use crate::parse::parse_rat_poly;
use crate::rank::{gd_eval, gr_eval, Ordinal2, Overlap, RankDescriptor};

pub type Label = Vec<FqElem>;

#[derive(Debug, Clone)]
pub struct Fiber {
    pub label: Label,
    pub set: PcSet,
}

/// Symbolic `(r_F, d_F)` of the index set; `d_F` falls back to the primary class count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Annotation {
    pub rf: u64,
    pub df: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct FinitePresentation {
    ambient: usize,
    p: u64,
    fibers: Vec<Fiber>,
    annotation: Option<Annotation>,
}

fn label_string(l: &Label) -> String {
    let parts: Vec<String> = l.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

impl FinitePresentation {
    /// Fibers are normalised and ordered by label.
    pub fn new(ambient: usize, p: u64, fibers: Vec<Fiber>, annotation: Option<Annotation>) -> Result<FinitePresentation> {
        let mut fibers: Vec<Fiber> = fibers
            .into_iter()
            .map(|f| {
                if f.set.ambient() != ambient {
                    return Err(Error::Invalid(format!("fiber {} is not in {ambient} variables", label_string(&f.label))));
                }
                if f.label.iter().any(|x| x.characteristic() != p) {
                    return Err(Error::CharacteristicMismatch { expected: p, found: f.label[0].characteristic() });
                }
                Ok(Fiber { label: f.label, set: f.set.normalize()? })
            })
            .collect::<Result<_>>()?;
        fibers.sort_by(|a, b| a.label.cmp(&b.label));
        if let Some(w) = fibers.windows(2).find(|w| w[0].label == w[1].label) {
            return Err(Error::Invalid(format!("duplicate label {}", label_string(&w[0].label))));
        }
        Ok(FinitePresentation { ambient, p, fibers, annotation })
    }

    /// Labels `(0), (1), …` over the smallest prime field keeping them distinct.
    pub fn from_sets(ambient: usize, sets: Vec<PcSet>) -> Result<FinitePresentation> {
        let p = next_prime_at_least(sets.len().max(2) as u64);
        let fibers = sets.into_iter().enumerate().map(|(i, set)| Fiber { label: vec![FqElem::from_int(p, i as i64)], set }).collect();
        FinitePresentation::new(ambient, p, fibers, None)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn annotation(&self) -> Option<Annotation> {
        self.annotation
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        self.fibers.iter().any(|f| f.set.contains_point(x))
    }

    pub fn sample(&self, grid: &[Rat]) -> Vec<Vec<Rat>> {
        self.fibers.iter().flat_map(|f| f.set.sample(grid)).collect()
    }

    /// The closure of the whole union.
    pub fn closure(&self) -> Result<AlgSet> {
        let mut acc = AlgSet::empty(self.ambient);
        for f in &self.fibers {
            acc = acc.union(&f.set.closure()?)?;
        }
        Ok(acc)
    }

    pub fn max_rank(&self) -> Result<Option<usize>> {
        let mut best = None;
        for f in &self.fibers {
            best = best.max(f.set.rank()?);
        }
        Ok(best)
    }

    /// Indices of fibers of maximal rank; empty when every fiber is empty.
    pub fn primary(&self) -> Result<Vec<usize>> {
        let Some(r) = self.max_rank()? else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        for (i, f) in self.fibers.iter().enumerate() {
            if f.set.rank()? == Some(r) {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The first pair of primary fibers that is neither `∼` nor `⊥̃`.
    fn offending_pair(&self) -> Result<Option<(usize, usize, Relation)>> {
        let prim = self.primary()?;
        for (a, &i) in prim.iter().enumerate() {
            for &j in &prim[a + 1..] {
                let rel = pc_rel(&self.fibers[i].set, &self.fibers[j].set)?;
                if matches!(rel, Relation::Subset | Relation::Mixed) {
                    return Ok(Some((i, j, rel)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_essentially_disjoint(&self) -> Result<bool> {
        Ok(self.offending_pair()?.is_none())
    }

    /// Replaces fiber `k` by its nonempty parts `T ∩̇ cut` and `T ∸ cut`.
    fn split(&self, k: usize, cut: &PcSet) -> Result<FinitePresentation> {
        let zero = FqElem::zero(self.p);
        let one = FqElem::one(self.p);
        let mut fibers = Vec::with_capacity(self.fibers.len() + 1);
        for (i, f) in self.fibers.iter().enumerate() {
            let extend = |x: FqElem| {
                let mut l = f.label.clone();
                l.push(x);
                l
            };
            if i != k {
                fibers.push(Fiber { label: extend(zero), set: f.set.clone() });
                continue;
            }
            for (x, piece) in [(zero, f.set.cap_dot(cut)?), (one, f.set.dot_minus(cut)?)] {
                if piece.rank()?.is_some() {
                    fibers.push(Fiber { label: extend(x), set: piece });
                }
            }
        }
        FinitePresentation::new(self.ambient, self.p, fibers, self.annotation)
    }

    /// Splits offending pairs until all primary fibers are pairwise `∼` or `⊥̃`.
    pub fn refine_essentially_disjoint(&self) -> Result<FinitePresentation> {
        let mut cur = self.clone();
        while let Some((i, j, rel)) = cur.offending_pair()? {
            let (k, by) = if rel == Relation::Subset { (j, i) } else { (i, j) };
            let cut = cur.fibers[by].set.clone();
            cur = cur.split(k, &cut)?;
        }
        Ok(cur)
    }

    /// `∼`-classes of the primary fibers, in label order.
    pub fn primary_quotient(&self) -> Result<Vec<Vec<Label>>> {
        if !self.is_essentially_disjoint()? {
            return Err(Error::Precondition("presentation is not essentially disjoint".into()));
        }
        let mut classes: Vec<(usize, Vec<Label>)> = Vec::new();
        'fiber: for i in self.primary()? {
            for (rep, members) in classes.iter_mut() {
                if pc_rel(&self.fibers[*rep].set, &self.fibers[i].set)? == Relation::Equivalent {
                    members.push(self.fibers[i].label.clone());
                    continue 'fiber;
                }
            }
            classes.push((i, vec![self.fibers[i].label.clone()]));
        }
        Ok(classes.into_iter().map(|(_, m)| m).collect())
    }

    pub fn is_geometric(&self) -> Result<bool> {
        if !self.is_essentially_disjoint()? {
            return Ok(false);
        }
        for i in self.primary()? {
            if self.fibers[i].set.rank_deg()?.1 != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Splits primary fibers along their own top components until each has exactly one.
    pub fn refine_geometric(&self) -> Result<FinitePresentation> {
        if !self.is_essentially_disjoint()? {
            return Err(Error::Precondition("presentation is not essentially disjoint".into()));
        }
        let mut cur = self.clone();
        loop {
            let mut target = None;
            for i in cur.primary()? {
                let cl = cur.fibers[i].set.closure()?;
                if cl.top_components().len() > 1 {
                    target = Some((i, cl.top_components()[0].clone()));
                    break;
                }
            }
            let Some((i, c)) = target else { return Ok(cur) };
            let cut = PcSet::closed(AlgSet::new(cur.ambient, vec![c])?);
            cur = cur.split(i, &cut)?;
        }
    }

    /// `(gr, gd)` of a geometric presentation.
    pub fn gr_gd(&self) -> Result<(Ordinal2, u64)> {
        if !self.is_geometric()? {
            return Err(Error::Precondition("presentation is not geometric".into()));
        }
        let ann = self.annotation.unwrap_or_default();
        let Some(r) = self.max_rank()? else { return Ok((Ordinal2::Bottom, 0)) };
        let gd = match ann.df {
            Some(d) => d,
            None => self.primary_quotient()?.len() as u64,
        };
        Ok((Ordinal2::new(r as u64, ann.rf), gd))
    }

    /// A chain of unions with one atom per fiber, each overlap measured from the actual
    /// intersection with the earlier fibers.
    pub fn to_descriptor(&self) -> Result<RankDescriptor> {
        let rf = self.annotation.unwrap_or_default().rf;
        let mut acc = RankDescriptor::Empty;
        for (i, f) in self.fibers.iter().enumerate() {
            let atom = match f.set.rank_deg()? {
                (Some(r), d) => RankDescriptor::atom(r as u64, d as u64, rf, d as u64)?,
                (None, _) => RankDescriptor::Empty,
            };
            let mut ov = AlgSet::empty(self.ambient);
            for e in &self.fibers[..i] {
                ov = ov.union(&e.set.intersect(&f.set)?.closure()?)?;
            }
            let overlap = match ov.dim() {
                Some(r) => Overlap { rk: r as u64, rf, gd: ov.top_components().len() as u64 },
                None => Overlap { rk: 0, rf, gd: 0 },
            };
            acc = RankDescriptor::union(acc, atom, Some(overlap));
        }
        Ok(acc)
    }

    /// Evaluates the descriptor, for comparison with [`Self::gr_gd`].
    pub fn descriptor_gr_gd(&self) -> Result<(Ordinal2, u64)> {
        let d = self.to_descriptor()?;
        Ok((gr_eval(&d), gd_eval(&d)?))
    }

    pub fn from_json(text: &str, limits: &Limits) -> Result<FinitePresentation> {
        let raw: RawPresentation = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.build(limits)
    }

    pub fn to_json(&self) -> Value {
        let comp = |c: &Component| json!({ "gens": c.gen_strings(), "irreducible": c.flag() });
        let fibers: Vec<Value> = self
            .fibers
            .iter()
            .map(|f| {
                let label: Vec<Value> = f
                    .label
                    .iter()
                    .map(|x| if x.ambient_degree() == 1 { json!(x.code()) } else { json!(x.to_string()) })
                    .collect();
                let v: Vec<Value> = f.set.v().components().iter().map(comp).collect();
                let s: Vec<Vec<Value>> = f.set.s().iter().map(|w| w.components().iter().map(comp).collect()).collect();
                json!({ "label": label, "V": v, "S": s })
            })
            .collect();
        let mut out = json!({ "ambient": self.ambient, "p": self.p, "fibers": fibers });
        if let Some(a) = self.annotation {
            out["annotation"] = json!({ "rF": a.rf, "dF": a.df });
        }
        out
    }
}

fn next_prime_at_least(n: u64) -> u64 {
    (n..).find(|&k| k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).expect("primes are unbounded")
}

#[derive(Deserialize)]
struct RawComponent {
    gens: Vec<String>,
    #[serde(default)]
    irreducible: Option<String>,
}

#[derive(Deserialize)]
struct RawFiber {
    #[serde(default)]
    label: Option<Vec<Value>>,
    #[serde(rename = "V")]
    v: Vec<RawComponent>,
    #[serde(rename = "S", default)]
    s: Vec<Vec<RawComponent>>,
}

#[derive(Deserialize)]
struct RawAnnotation {
    #[serde(rename = "rF", default)]
    rf: u64,
    #[serde(rename = "dF", default)]
    df: Option<u64>,
}

#[derive(Deserialize)]
struct RawPresentation {
    ambient: usize,
    #[serde(default)]
    p: Option<u64>,
    fibers: Vec<RawFiber>,
    #[serde(default)]
    annotation: Option<RawAnnotation>,
}

fn build_alg(n: usize, comps: &[RawComponent], limits: &Limits) -> Result<AlgSet> {
    let mut out = Vec::new();
    for c in comps {
        let asserted = match c.irreducible.as_deref() {
            None | Some("verified") | Some("unresolved") => false,
            Some("asserted") => true,
            Some(other) => return Err(Error::Parse(format!("unknown irreducibility flag {other:?}"))),
        };
        let gens = c.gens.iter().map(|g| parse_rat_poly(g, Some(n))).collect::<Result<_>>()?;
        out.extend(Component::new(n, gens, asserted, limits)?);
    }
    AlgSet::new(n, out)
}

impl RawPresentation {
    fn build(self, limits: &Limits) -> Result<FinitePresentation> {
        let n = self.ambient;
        let p = match self.p {
            Some(p) => p,
            None => next_prime_at_least(self.fibers.len().max(2) as u64),
        };
        let mut fibers = Vec::new();
        for (i, f) in self.fibers.iter().enumerate() {
            let label = match &f.label {
                None => vec![FqElem::from_int(p, i as i64)],
                Some(vals) => vals
                    .iter()
                    .map(|v| match v {
                        Value::Number(k) => k
                            .as_i64()
                            .map(|k| FqElem::from_int(p, k))
                            .ok_or_else(|| Error::Parse(format!("label entry {k} is not an integer"))),
                        Value::String(s) => s.parse::<FqElem>(),
                        other => Err(Error::Parse(format!("bad label entry {other}"))),
                    })
                    .collect::<Result<_>>()?,
            };
            let v = build_alg(n, &f.v, limits)?;
            let s = f.s.iter().map(|w| build_alg(n, w, limits)).collect::<Result<_>>()?;
            fibers.push(Fiber { label, set: PcSet::new(v, s)? });
        }
        let annotation = self.annotation.map(|a| Annotation { rf: a.rf, df: a.df });
        FinitePresentation::new(n, p, fibers, annotation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(n: usize, v: &str, s: &str) -> PcSet {
        PcSet::parse(n, v, s, &Limits::default()).unwrap()
    }

    fn pres(n: usize, sets: &[(&str, &str)]) -> FinitePresentation {
        FinitePresentation::from_sets(n, sets.iter().map(|(v, s)| pc(n, v, s)).collect()).unwrap()
    }

    fn grid() -> Vec<Rat> {
        (-2..=2).map(Rat::from_int).collect()
    }

    fn same_union(a: &FinitePresentation, b: &FinitePresentation) {
        for x in a.sample(&grid()).iter().chain(&b.sample(&grid())) {
            assert_eq!(a.contains_point(x), b.contains_point(x), "{x:?}");
        }
    }

    #[test]
    fn essentially_disjoint_examples() {
        let p = pres(2, &[("x2; x1", ""), ("x2", "")]);
        assert!(!p.is_essentially_disjoint().unwrap());
        let r = p.refine_essentially_disjoint().unwrap();
        assert!(r.is_essentially_disjoint().unwrap());
        let ranks: Vec<_> = r.fibers().iter().map(|f| f.set.rank_deg().unwrap()).collect();
        assert_eq!(ranks, vec![(Some(1), 1), (Some(1), 1), (Some(1), 1)]);
        assert_eq!(r.primary_quotient().unwrap().len(), 2);
        same_union(&p, &r);

        let fan = pres(2, &[("x2", ""), ("x2 - x1", ""), ("x2 - 2*x1", ""), ("x2 + x1", "")]);
        let r = fan.refine_essentially_disjoint().unwrap();
        assert_eq!(r.fibers().len(), 4);
        assert_eq!(r.fibers()[0].label.len(), 1);

        let single = pres(2, &[("x2; x1", "")]);
        assert_eq!(single.refine_essentially_disjoint().unwrap().fibers().len(), 1);
    }

    #[test]
    fn quotient_examples() {
        let p = pres(2, &[("x2", ""), ("x1", ""), ("x2", "x1 - 1, x2"), ("x1 - 3, x2 - 3", "")]);
        let q = p.primary_quotient().unwrap();
        let idx: Vec<Vec<u64>> = q.iter().map(|c| c.iter().map(|l| l[0].code()).collect()).collect();
        assert_eq!(idx, vec![vec![0, 2], vec![1]]);
        assert_eq!(pres(2, &[("x2", ""), ("x2", "")]).primary_quotient().unwrap().len(), 1);
        let bad = pres(2, &[("x2; x1", ""), ("x2", "")]);
        assert!(matches!(bad.primary_quotient(), Err(Error::Precondition(_))));
    }

    #[test]
    fn geometric_examples() {
        let two = pres(2, &[("x1; x2", "")]);
        assert!(matches!(two.gr_gd(), Err(Error::Precondition(_))));
        let g = two.refine_geometric().unwrap();
        assert!(g.is_geometric().unwrap());
        assert_eq!(g.fibers().len(), 2);
        assert_eq!(g.gr_gd().unwrap(), (Ordinal2::new(1, 0), 2));
        assert_eq!(g.descriptor_gr_gd().unwrap(), (Ordinal2::new(1, 0), 2));
        same_union(&two, &g);

        let conic = pres(2, &[("x1^2 + x2^2 - 1", "")]);
        assert_eq!(conic.refine_geometric().unwrap().fibers().len(), 1);
        assert_eq!(pres(2, &[("x1, x2", "")]).gr_gd().unwrap(), (Ordinal2::zero(), 1));
        assert_eq!(pres(2, &[("", "")]).gr_gd().unwrap(), (Ordinal2::Bottom, 0));
    }

    #[test]
    fn json_roundtrip_and_annotation() {
        let text = r#"{ "ambient": 2, "fibers": [
            { "label": [0], "V": [ {"gens": ["x2"], "irreducible": "verified"}, {"gens": ["x1"]} ], "S": [ [ {"gens": ["x1","x2"]} ] ] }
        ], "annotation": {"rF": 0, "dF": null} }"#;
        let p = FinitePresentation::from_json(text, &Limits::default()).unwrap();
        assert_eq!(p.fibers()[0].set.rank_deg().unwrap(), (Some(1), 2));
        let back = FinitePresentation::from_json(&p.to_json().to_string(), &Limits::default()).unwrap();
        assert_eq!(back.fibers()[0].set.rank_deg().unwrap(), (Some(1), 2));

        let pts = r#"{ "ambient": 1, "fibers": [ { "V": [ {"gens": ["x1"]} ] } ], "annotation": {"rF": 3, "dF": 1} }"#;
        let p = FinitePresentation::from_json(pts, &Limits::default()).unwrap();
        assert_eq!(p.gr_gd().unwrap(), (Ordinal2::new(0, 3), 1));
        assert!(FinitePresentation::from_json(r#"{"ambient": 1, "fibers": [ {"label": [1], "V": []}, {"label": [1], "V": []} ]}"#, &Limits::default()).is_err());
    }
}
