//! Ordinals below `ω²` and symbolic evaluation of geometric rank and degree.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parse::split_top_level;

/// `−∞` or `ω·k + f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ordinal2 {
    Bottom,
    Omega { k: u64, f: u64 },
}

impl Ordinal2 {
    pub fn new(k: u64, f: u64) -> Ordinal2 {
        Ordinal2::Omega { k, f }
    }

    pub fn zero() -> Ordinal2 {
        Ordinal2::new(0, 0)
    }

    /// Natural (commutative) sum; `−∞` is absorbing.
    pub fn add(self, o: Ordinal2) -> Ordinal2 {
        match (self, o) {
            (Ordinal2::Omega { k, f }, Ordinal2::Omega { k: k2, f: f2 }) => Ordinal2::new(k + k2, f + f2),
            _ => Ordinal2::Bottom,
        }
    }

    pub fn max(self, o: Ordinal2) -> Ordinal2 {
        std::cmp::max(self, o)
    }
}

impl PartialOrd for Ordinal2 {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Ordinal2 {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Ordinal2::Bottom, Ordinal2::Bottom) => Ordering::Equal,
            (Ordinal2::Bottom, _) => Ordering::Less,
            (_, Ordinal2::Bottom) => Ordering::Greater,
            (Ordinal2::Omega { k, f }, Ordinal2::Omega { k: k2, f: f2 }) => (k, f).cmp(&(k2, f2)),
        }
    }
}

impl fmt::Display for Ordinal2 {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordinal2::Bottom => write!(out, "-inf"),
            Ordinal2::Omega { k, f } => write!(out, "w*{k}+{f}"),
        }
    }
}

impl FromStr for Ordinal2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ordinal2> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "-inf" {
            return Ok(Ordinal2::Bottom);
        }
        let bad = || Error::Parse(format!("expected w*K+F or -inf, got {s:?}"));
        let rest = t.strip_prefix("w*").ok_or_else(bad)?;
        let (k, f) = rest.split_once('+').ok_or_else(bad)?;
        Ok(Ordinal2::new(k.parse().map_err(|_| bad())?, f.parse().map_err(|_| bad())?))
    }
}

impl Serialize for Ordinal2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Declared geometric rank and degree of the overlap of two union members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    pub rk: u64,
    pub rf: u64,
    pub gd: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankDescriptor {
    /// `(ρ_K, d_K, ρ_F, d_F)`.
    Atom { rk: u64, dk: u64, rf: u64, df: u64 },
    Empty,
    /// Two members with the declared overlap, when one is known.
    Union(Box<RankDescriptor>, Box<RankDescriptor>, Option<Overlap>),
    DisjointUnion(Vec<RankDescriptor>),
    Product(Box<RankDescriptor>, Box<RankDescriptor>),
}

impl RankDescriptor {
    pub fn atom(rk: u64, dk: u64, rf: u64, df: u64) -> Result<RankDescriptor> {
        if dk == 0 || df == 0 {
            return Err(Error::Invalid("atom degrees must be at least 1".into()));
        }
        Ok(RankDescriptor::Atom { rk, dk, rf, df })
    }

    pub fn product(a: RankDescriptor, b: RankDescriptor) -> RankDescriptor {
        RankDescriptor::Product(Box::new(a), Box::new(b))
    }

    pub fn union(a: RankDescriptor, b: RankDescriptor, ov: Option<Overlap>) -> RankDescriptor {
        RankDescriptor::Union(Box::new(a), Box::new(b), ov)
    }
}

pub fn gr_eval(d: &RankDescriptor) -> Ordinal2 {
    match d {
        RankDescriptor::Atom { rk, rf, .. } => Ordinal2::new(*rk, *rf),
        RankDescriptor::Empty => Ordinal2::Bottom,
        RankDescriptor::Union(a, b, _) => gr_eval(a).max(gr_eval(b)),
        RankDescriptor::DisjointUnion(cs) => cs.iter().map(gr_eval).max().unwrap_or(Ordinal2::Bottom),
        RankDescriptor::Product(a, b) => gr_eval(a).add(gr_eval(b)),
    }
}

/// Geometric degree; products are refused since no product law is available.
pub fn gd_eval(d: &RankDescriptor) -> Result<u64> {
    match d {
        RankDescriptor::Atom { df, .. } => Ok(*df),
        RankDescriptor::Empty => Ok(0),
        RankDescriptor::DisjointUnion(cs) => {
            let top = gr_eval(d);
            let mut sum = 0;
            for c in cs {
                if gr_eval(c) == top {
                    sum += gd_eval(c)?;
                }
            }
            Ok(sum)
        }
        RankDescriptor::Union(a, b, ov) => {
            let (ga, gb) = (gr_eval(a), gr_eval(b));
            match ga.cmp(&gb) {
                Ordering::Greater => gd_eval(a),
                Ordering::Less => gd_eval(b),
                Ordering::Equal => {
                    let ov = ov.as_ref().ok_or_else(|| {
                        Error::Invalid("a union of members of equal rank needs a declared overlap".into())
                    })?;
                    let total = gd_eval(a)? + gd_eval(b)?;
                    if Ordinal2::new(ov.rk, ov.rf) == ga {
                        total.checked_sub(ov.gd).ok_or_else(|| Error::Invalid("overlap degree exceeds the members".into()))
                    } else {
                        Ok(total)
                    }
                }
            }
        }
        RankDescriptor::Product(..) => Err(Error::Unsupported("geometric degree of a product".into())),
    }
}

impl fmt::Display for RankDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankDescriptor::Atom { rk, dk, rf, df } => write!(f, "atom({rk},{dk},{rf},{df})"),
            RankDescriptor::Empty => write!(f, "empty"),
            RankDescriptor::Union(a, b, None) => write!(f, "union({a},{b})"),
            RankDescriptor::Union(a, b, Some(o)) => write!(f, "union({a},{b},ov({},{},{}))", o.rk, o.rf, o.gd),
            RankDescriptor::DisjointUnion(cs) => {
                let parts: Vec<String> = cs.iter().map(ToString::to_string).collect();
                write!(f, "dunion({})", parts.join(","))
            }
            RankDescriptor::Product(a, b) => write!(f, "prod({a},{b})"),
        }
    }
}

fn parse_args(s: &str, name: &str) -> Option<Vec<String>> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(split_top_level(inner, ',').into_iter().map(|x| x.trim().to_string()).collect())
}

fn nums(args: &[String], n: usize, what: &str) -> Result<Vec<u64>> {
    if args.len() != n {
        return Err(Error::Parse(format!("{what} takes {n} arguments")));
    }
    args.iter()
        .map(|a| a.parse().map_err(|_| Error::Parse(format!("bad number {a:?} in {what}"))))
        .collect()
}

impl FromStr for RankDescriptor {
    type Err = Error;

    /// `atom(rK,dK,rF,dF)`, `empty`, `prod(a,b)`, `dunion(a,...)`, `union(a,b[,ov(rK,rF,gd)])`.
    fn from_str(s: &str) -> Result<RankDescriptor> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "empty" {
            return Ok(RankDescriptor::Empty);
        }
        if let Some(a) = parse_args(&t, "atom") {
            let v = nums(&a, 4, "atom")?;
            return RankDescriptor::atom(v[0], v[1], v[2], v[3]);
        }
        if let Some(a) = parse_args(&t, "prod") {
            if a.len() < 2 {
                return Err(Error::Parse("prod takes at least two arguments".into()));
            }
            let mut it = a.iter().map(|x| x.parse::<RankDescriptor>());
            let first = it.next().expect("nonempty")?;
            return it.try_fold(first, |acc, x| Ok(RankDescriptor::product(acc, x?)));
        }
        if let Some(a) = parse_args(&t, "dunion") {
            return Ok(RankDescriptor::DisjointUnion(a.iter().map(|x| x.parse()).collect::<Result<_>>()?));
        }
        if let Some(a) = parse_args(&t, "union") {
            let ov = match a.len() {
                2 => None,
                3 => {
                    let o = parse_args(&a[2], "ov").ok_or_else(|| Error::Parse("third union argument must be ov(...)".into()))?;
                    let v = nums(&o, 3, "ov")?;
                    Some(Overlap { rk: v[0], rf: v[1], gd: v[2] })
                }
                _ => return Err(Error::Parse("union takes two members and an optional ov(...)".into())),
            };
            return Ok(RankDescriptor::union(a[0].parse()?, a[1].parse()?, ov));
        }
        Err(Error::Parse(format!("unrecognised rank expression {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> RankDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn ordinal_examples() {
        assert!(Ordinal2::new(1, 0) > Ordinal2::new(0, 5));
        assert!(Ordinal2::Bottom < Ordinal2::zero());
        assert_eq!(Ordinal2::new(1, 2).max(Ordinal2::new(1, 2)), Ordinal2::new(1, 2));
        assert_eq!(Ordinal2::new(1, 2).to_string(), "w*1+2");
        assert_eq!("w*3+0".parse::<Ordinal2>().unwrap(), Ordinal2::new(3, 0));
        assert_eq!("-inf".parse::<Ordinal2>().unwrap(), Ordinal2::Bottom);
    }

    #[test]
    fn gr_examples() {
        assert_eq!(gr_eval(&d("prod(atom(1,1,0,1), atom(0,1,2,3))")), Ordinal2::new(1, 2));
        assert_eq!(gr_eval(&d("atom(1,1,0,1)")).to_string(), "w*1+0");
        for m in 1..=3 {
            for k in 0..=3 {
                let z = d(&format!("prod(atom(0,1,{k},1),atom({},1,0,1))", m - 1));
                assert_eq!(gr_eval(&z), Ordinal2::new(m - 1, k));
            }
        }
        assert_eq!(gr_eval(&d("union(atom(1,2,0,2),atom(1,2,0,2))")), Ordinal2::new(1, 0));
        assert_eq!(gr_eval(&d("prod(empty,atom(2,1,0,1))")), Ordinal2::Bottom);
        assert_eq!(gr_eval(&d("union(empty,atom(2,1,0,1))")), Ordinal2::new(2, 0));
    }

    #[test]
    fn gd_examples() {
        assert_eq!(gd_eval(&d("dunion(atom(1,1,0,1),atom(1,1,0,1))")).unwrap(), 2);
        assert_eq!(gd_eval(&d("union(atom(1,2,0,2),atom(1,2,0,2),ov(1,0,2))")).unwrap(), 2);
        assert_eq!(gd_eval(&d("dunion(atom(1,3,0,3),atom(0,5,0,5))")).unwrap(), 3);
        assert!(gd_eval(&d("prod(atom(1,1,0,1),atom(1,1,0,1))")).is_err());
        assert!(gd_eval(&d("union(atom(1,1,0,1),atom(1,1,0,1))")).is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["atom(1,1,0,1)", "prod(atom(1,1,0,1),empty)", "union(atom(0,1,1,1),atom(0,1,1,1),ov(0,0,1))", "dunion(atom(1,1,0,1))"] {
            assert_eq!(d(s).to_string(), s);
        }
    }

    fn arb_descriptor() -> impl Strategy<Value = RankDescriptor> {
        let leaf = prop_oneof![
            (0u64..4, 1u64..4, 0u64..4, 1u64..4).prop_map(|(a, b, c, e)| RankDescriptor::Atom { rk: a, dk: b, rf: c, df: e }),
            Just(RankDescriptor::Empty),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| RankDescriptor::product(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| RankDescriptor::union(a, b, None)),
                proptest::collection::vec(inner, 1..4).prop_map(RankDescriptor::DisjointUnion),
            ]
        })
    }

    proptest! {
        #[test]
        fn product_commutes(a in arb_descriptor(), b in arb_descriptor()) {
            prop_assert_eq!(gr_eval(&RankDescriptor::product(a.clone(), b.clone())), gr_eval(&RankDescriptor::product(b, a)));
        }

        #[test]
        fn union_is_max(a in arb_descriptor(), b in arb_descriptor()) {
            prop_assert_eq!(gr_eval(&RankDescriptor::union(a.clone(), b.clone(), None)), gr_eval(&a).max(gr_eval(&b)));
        }

        #[test]
        fn product_monotone(a in arb_descriptor(), b in arb_descriptor(), c in arb_descriptor()) {
            if gr_eval(&a) <= gr_eval(&b) {
                prop_assert!(gr_eval(&RankDescriptor::product(a, c.clone())) <= gr_eval(&RankDescriptor::product(b, c)));
            }
        }

        #[test]
        fn parse_roundtrip(a in arb_descriptor()) {
            prop_assert_eq!(a.to_string().parse::<RankDescriptor>().unwrap(), a);
        }
    }
}
