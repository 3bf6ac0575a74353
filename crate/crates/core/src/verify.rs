//! Batch property suites with per-property pass/fail lines and witnesses.

use std::f64::consts::TAU;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::character::{verify_character, CharContext};
use crate::cyclotomic::{CycloNum, RootOfUnity};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::limits::Limits;
use crate::mann::{d_bound, mann_solve, standard_pool, MannEquation};
use crate::pcset::corpus::{line_factors, linear_corpus};
use crate::pcset::{pc_rel, AlgSet, FinitePresentation, PcSet, Relation};
use crate::rank::{gd_eval, gr_eval, Ordinal2, RankDescriptor};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "PASS {} ({} cases)", c.name, c.cases)?;
            } else {
                writeln!(f, "FAIL {} ({} cases): {}", c.name, c.cases, c.witness.as_deref().unwrap_or("?"))?;
            }
        }
        write!(f, "{}: {}", self.suite, if self.passed() { "pass" } else { "fail" })
    }
}

/// Accumulates cases for one property, keeping the first counterexample.
struct Tally {
    name: String,
    cases: u64,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &str) -> Tally {
        Tally { name: name.into(), cases: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn done(self) -> Check {
        Check { passed: self.witness.is_none(), name: self.name, cases: self.cases, witness: self.witness }
    }
}

pub const SUITES: [&str; 5] = ["character", "mann", "lies", "refine", "rank"];

pub fn suite_character(p: u64, n_max: u32) -> Result<SuiteReport> {
    let report = verify_character(&CharContext::new(p)?, n_max)?;
    let check = Check {
        name: format!("character laws over F_{p}^n, n <= {n_max}"),
        passed: report.passed(),
        cases: report.pairs_checked,
        witness: report.failures.first().map(|f| format!("{}: {}", f.law, f.witness)),
    };
    Ok(SuiteReport { suite: "character".into(), checks: vec![check] })
}

fn root_to_complex(r: &RootOfUnity) -> (f64, f64) {
    let a = TAU * r.num() as f64 / r.order() as f64;
    (a.cos(), a.sin())
}

/// The root of unity of order `≤ max_order` at `(re, im)`, if any.
fn nearest_root(re: f64, im: f64, max_order: u64) -> Option<RootOfUnity> {
    if ((re * re + im * im).sqrt() - 1.0).abs() > 1e-9 {
        return None;
    }
    let t = im.atan2(re).rem_euclid(TAU) / TAU;
    (1..=max_order).find_map(|k| {
        let a = (t * k as f64).round();
        ((t * k as f64 - a).abs() < 1e-9).then(|| RootOfUnity::new(a as i64, k))
    })
}

fn all_roots(max_order: u64) -> Vec<RootOfUnity> {
    let mut out: Vec<RootOfUnity> = (1..=max_order).flat_map(|k| (0..k).map(move |a| RootOfUnity::new(a as i64, k))).collect();
    out.sort();
    out.dedup();
    out
}

fn vanishes(coeffs: &[Rat], ys: &[RootOfUnity], mask: u32) -> bool {
    let terms: Vec<(Rat, RootOfUnity)> =
        coeffs.iter().zip(ys).enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, (c, y))| (c.clone(), *y)).collect();
    CycloNum::from_terms(&terms).is_zero()
}

/// Non-degenerate solutions of `Σ cᵢyᵢ = 1` over roots of order `≤ max_order`, by a float
/// search over the first `n − 1` entries confirmed in exact arithmetic.
pub fn brute_force_mann(coeffs: &[Rat], max_order: u64) -> Vec<Vec<RootOfUnity>> {
    let n = coeffs.len();
    let roots = all_roots(max_order);
    let cf: Vec<f64> = coeffs.iter().map(Rat::to_f64).collect();
    let mut ext: Vec<Rat> = coeffs.to_vec();
    ext.push(Rat::from_int(-1));
    let mut out = Vec::new();
    let mut idx = vec![0usize; n - 1];
    loop {
        let (mut re, mut im) = (1.0, 0.0);
        for (k, &i) in idx.iter().enumerate() {
            let (a, b) = root_to_complex(&roots[i]);
            re -= cf[k] * a;
            im -= cf[k] * b;
        }
        if let Some(y) = nearest_root(re / cf[n - 1], im / cf[n - 1], max_order) {
            let mut ys: Vec<RootOfUnity> = idx.iter().map(|&i| roots[i]).collect();
            ys.push(y);
            let mut full = ys.clone();
            full.push(RootOfUnity::one());
            let all = (1u32 << (n + 1)) - 1;
            if vanishes(&ext, &full, all) && (1..all).all(|m| !vanishes(&ext, &full, m)) {
                out.push(ys);
            }
        }
        let mut k = 0;
        loop {
            if k == n - 1 {
                out.sort();
                return out;
            }
            idx[k] += 1;
            if idx[k] < roots.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn suite_mann(n_max: usize, limits: &Limits) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for n in 1..=n_max {
        let mut t = Tally::new(&format!("mann_solve = brute force, n = {n}, orders <= {}", 2 * d_bound(n)));
        for c in standard_pool(n) {
            let fast = mann_solve(&MannEquation::new(c.clone())?, limits)?.solutions;
            let slow = brute_force_mann(&c, 2 * d_bound(n));
            t.record(fast == slow, || format!("coeffs {c:?}: {} vs {} solutions", fast.len(), slow.len()));
        }
        checks.push(t.done());
    }
    Ok(SuiteReport { suite: "mann".into(), checks })
}

/// A finite union of pc-sets, the setting of the laws.
#[derive(Clone)]
struct Union(Vec<PcSet>);

impl Union {
    fn one(t: &PcSet) -> Union {
        Union(vec![t.clone()])
    }

    fn closure(&self, n: usize) -> Result<AlgSet> {
        let mut acc = AlgSet::empty(n);
        for t in &self.0 {
            acc = acc.union(&t.closure()?)?;
        }
        Ok(acc)
    }

    fn rank_deg(&self, n: usize) -> Result<(Option<usize>, usize)> {
        let c = self.closure(n)?;
        Ok((c.dim(), c.top_components().len()))
    }

    fn meet(&self, o: &Union) -> Result<Union> {
        let mut out = Vec::new();
        for a in &self.0 {
            for b in &o.0 {
                out.push(a.intersect(b)?);
            }
        }
        Ok(Union(out))
    }

    fn join(&self, o: &Union) -> Union {
        Union(self.0.iter().chain(&o.0).cloned().collect())
    }
}

/// The almost-relations straight from their definitions, via intersections.
struct Defs {
    n: usize,
}

impl Defs {
    fn rd(&self, u: &Union) -> Result<(Option<usize>, usize)> {
        u.rank_deg(self.n)
    }

    fn sub(&self, a: &Union, b: &Union) -> Result<bool> {
        let (ra, da) = self.rd(a)?;
        let (rb, _) = self.rd(b)?;
        let (rc, dc) = self.rd(&a.meet(b)?)?;
        Ok(ra == rb && ra == rc && dc == da)
    }

    fn equiv(&self, a: &Union, b: &Union) -> Result<bool> {
        Ok(self.sub(a, b)? && self.sub(b, a)?)
    }

    fn disj(&self, a: &Union, b: &Union) -> Result<bool> {
        let (ra, _) = self.rd(a)?;
        let (rb, _) = self.rd(b)?;
        let (rc, _) = self.rd(&a.meet(b)?)?;
        Ok(ra == rb && rc < ra)
    }
}

fn show(t: &PcSet) -> String {
    t.to_string()
}

fn rel_from_defs(d: &Defs, a: &PcSet, b: &PcSet) -> Result<Relation> {
    let (ua, ub) = (Union::one(a), Union::one(b));
    Ok(match (d.sub(&ua, &ub)?, d.sub(&ub, &ua)?, d.disj(&ua, &ub)?) {
        (true, true, _) => Relation::Equivalent,
        (true, false, _) => Relation::Subset,
        (false, _, true) => Relation::Disjoint,
        _ => Relation::Mixed,
    })
}

/// Laws (1)–(12) for almost-relations over the linear corpus, with `pc_rel` checked
/// against the definitions along the way.
pub fn suite_lies(limits: &Limits) -> Result<SuiteReport> {
    let mut tallies: Vec<Tally> = [
        "law 1: subsets do not grow rank or degree",
        "law 2: rank of a union is the max",
        "law 3: degree adds over almost disjoint unions",
        "law 4: almost-subset transitive, almost-equal an equivalence",
        "law 5: T1 cap T2 ~ T1 capdot T2 ~ V1 cap V2",
        "law 6: trichotomy",
        "law 7: almost disjoint pieces",
        "law 8: almost subset pieces",
        "law 9: degree splits in the third case",
        "law 10: operations respect almost equality",
        "law 11: rank adds and degree multiplies under products",
        "law 12: products respect almost equality and disjointness",
        "pc_rel agrees with the definitions",
    ]
    .iter()
    .map(|s| Tally::new(s))
    .collect();
    let corpus = linear_corpus(limits)?;
    for (n, sets) in &corpus {
        let d = Defs { n: *n };
        let m = sets.len();
        let rd: Vec<(Option<usize>, usize)> = sets.iter().map(|t| t.rank_deg()).collect::<Result<_>>()?;
        let mut rel = vec![vec![None; m]; m];
        for i in 0..m {
            for j in 0..m {
                if rd[i].0 != rd[j].0 {
                    continue;
                }
                let by_def = rel_from_defs(&d, &sets[i], &sets[j])?;
                let fast = pc_rel(&sets[i], &sets[j])?;
                tallies[12].record(by_def == fast, || format!("{} vs {}: {fast} vs {by_def}", show(&sets[i]), show(&sets[j])));
                rel[i][j] = Some(by_def);
            }
        }
        let sub = |i: usize, j: usize| matches!(rel[i][j], Some(Relation::Subset | Relation::Equivalent));
        let eqv = |i: usize, j: usize| rel[i][j] == Some(Relation::Equivalent);
        let dsj = |i: usize, j: usize| rel[i][j] == Some(Relation::Disjoint);
        for i in 0..m {
            let (t1, u1) = (&sets[i], Union::one(&sets[i]));
            for j in 0..m {
                let (t2, u2) = (&sets[j], Union::one(&sets[j]));
                let pair = || format!("T1 = {}, T2 = {}", show(t1), show(t2));
                let cap = t1.intersect(t2)?;
                let capdot = t1.cap_dot(t2)?;
                let minus = t1.dot_minus(t2)?;
                for x in [&cap, &capdot, &minus] {
                    let (rx, dx) = x.rank_deg()?;
                    tallies[0].record(rx < rd[i].0 || (rx == rd[i].0 && dx <= rd[i].1), || format!("{}: piece {}", pair(), show(x)));
                }
                let (ru, du) = d.rd(&u1.join(&u2))?;
                tallies[1].record(ru == rd[i].0.max(rd[j].0), pair);
                if dsj(i, j) {
                    tallies[2].record(du == rd[i].1 + rd[j].1, pair);
                }
                if rd[i].0 != rd[j].0 {
                    continue;
                }
                let r = rd[i].0;
                let (rcap, _) = cap.rank_deg()?;
                if r == rcap {
                    let vv = Union::one(&PcSet::closed(t1.closure()?.intersect(&t2.closure()?)?));
                    let (a, b) = (Union::one(&cap), Union::one(&capdot));
                    tallies[4].record(d.equiv(&a, &b)? && d.equiv(&b, &vv)?, pair);
                }
                let third = r.is_some() && r == capdot.rank()? && r == minus.rank()?;
                if r.is_some() {
                    let count = [dsj(i, j), sub(i, j), third].iter().filter(|&&x| x).count();
                    tallies[5].record(count == 1, || format!("{}: {count} alternatives", pair()));
                }
                if dsj(i, j) {
                    let ok = capdot.rank()? < r && d.equiv(&Union::one(&minus), &u1)?;
                    tallies[6].record(ok, pair);
                }
                if sub(i, j) {
                    let ok = d.equiv(&Union::one(&cap), &Union::one(&capdot))? && d.equiv(&Union::one(&capdot), &u1)?;
                    tallies[7].record(ok, pair);
                }
                if third {
                    tallies[8].record(capdot.rank_deg()?.1 + minus.rank_deg()?.1 == rd[i].1, pair);
                }
                for k in 0..m {
                    if rd[k].0 == r {
                        let ok = (!sub(i, j) || !sub(j, k) || sub(i, k)) && eqv(i, i) && (eqv(i, j) == eqv(j, i)) && (!eqv(i, j) || !eqv(j, k) || eqv(i, k));
                        tallies[3].record(ok, || format!("{}, T3 = {}", pair(), show(&sets[k])));
                    }
                }
                if r != rcap {
                    continue;
                }
                for a in (0..m).filter(|&a| eqv(a, i)) {
                    for b in (0..m).filter(|&b| eqv(b, j)) {
                        let (s1, s2) = (&sets[a], &sets[b]);
                        let w = || format!("{}, T1' = {}, T2' = {}", pair(), show(s1), show(s2));
                        let ok = d.equiv(&Union::one(&s1.intersect(s2)?), &Union::one(&cap))?
                            && d.equiv(&Union::one(s1).join(&Union::one(s2)), &u1.join(&u2))?
                            && d.equiv(&Union::one(&s1.cap_dot(s2)?), &Union::one(&capdot))?;
                        tallies[9].record(ok, w);
                        let m2 = s1.dot_minus(s2)?;
                        if m2.rank()? == r && minus.rank()? == r {
                            tallies[9].record(d.equiv(&Union::one(&m2), &Union::one(&minus))?, w);
                        }
                    }
                }
            }
        }
    }
    product_laws(&corpus, limits, &mut tallies)?;
    Ok(SuiteReport { suite: "lies".into(), checks: tallies.into_iter().map(Tally::done).collect() })
}

fn product_laws(corpus: &[(usize, Vec<PcSet>)], limits: &Limits, tallies: &mut [Tally]) -> Result<()> {
    let factors = line_factors(limits)?;
    let plane = &corpus[0].1;
    let mut lefts: Vec<&PcSet> = corpus.iter().flat_map(|(_, s)| s.iter()).collect();
    lefts.extend(&factors);
    let rights: Vec<&PcSet> = factors.iter().chain(plane.iter().step_by(3)).collect();
    for t in &lefts {
        for u in &rights {
            let p = t.product(u)?;
            let (rt, dt) = t.rank_deg()?;
            let (ru, du) = u.rank_deg()?;
            let want = match (rt, ru) {
                (Some(a), Some(b)) => (Some(a + b), dt * du),
                _ => (None, 0),
            };
            let got = p.rank_deg()?;
            tallies[10].record(got == want, || format!("{} x {}: {:?}", show(t), show(u), got));
        }
    }
    for (_, sets) in corpus {
        let nonempty: Vec<&PcSet> = sets.iter().filter(|t| t.rank().ok().flatten().is_some()).collect();
        let fs: Vec<&PcSet> = factors.iter().filter(|t| t.rank().ok().flatten().is_some()).collect();
        for (i, t1) in nonempty.iter().enumerate() {
            for t2 in &nonempty[i..] {
                let Ok(r12) = pc_rel(t1, t2) else { continue };
                for (a, f1) in fs.iter().enumerate() {
                    for f2 in &fs[a..] {
                        let Ok(rf) = pc_rel(f1, f2) else { continue };
                        let expect = match (r12, rf) {
                            (Relation::Equivalent, Relation::Equivalent) => Relation::Equivalent,
                            (Relation::Equivalent | Relation::Disjoint, Relation::Disjoint) | (Relation::Disjoint, Relation::Equivalent) => Relation::Disjoint,
                            _ => continue,
                        };
                        let (p1, p2) = (t1.product(f1)?, t2.product(f2)?);
                        let got = pc_rel(&p1, &p2)?;
                        tallies[11].record(got == expect, || format!("{} x {} vs {} x {}: {got}", show(t1), show(f1), show(t2), show(f2)));
                    }
                }
            }
        }
    }
    Ok(())
}

fn grid() -> Vec<Rat> {
    (-2..=2).map(Rat::from_int).collect()
}

fn same_closure(a: &AlgSet, b: &AlgSet) -> Result<bool> {
    for c in a.components() {
        if !b.contains_component(c)? {
            return Ok(false);
        }
    }
    for c in b.components() {
        if !a.contains_component(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_union(a: &FinitePresentation, b: &FinitePresentation) -> Result<Option<String>> {
    if !same_closure(&a.closure()?, &b.closure()?)? {
        return Ok(Some(format!("closures differ: {} vs {}", a.closure()?, b.closure()?)));
    }
    for x in a.sample(&grid()).iter().chain(&b.sample(&grid())) {
        if a.contains_point(x) != b.contains_point(x) {
            return Ok(Some(format!("point {x:?}")));
        }
    }
    Ok(None)
}

/// Presentations built from consecutive runs of corpus sets, plus the line fan.
pub fn refinement_corpus(limits: &Limits) -> Result<Vec<FinitePresentation>> {
    let mut out = Vec::new();
    for (n, sets) in linear_corpus(limits)? {
        for len in 1..=3 {
            for start in (0..sets.len()).step_by(len) {
                let chunk: Vec<PcSet> = sets[start..(start + len).min(sets.len())].to_vec();
                out.push(FinitePresentation::from_sets(n, chunk)?);
            }
        }
    }
    let fan = ["x2", "x2 - x1", "x2 - 2*x1", "x2 + x1"].iter().map(|v| PcSet::parse(2, v, "", limits)).collect::<Result<_>>()?;
    out.push(FinitePresentation::from_sets(2, fan)?);
    Ok(out)
}

fn describe(p: &FinitePresentation) -> String {
    let parts: Vec<String> = p.fibers().iter().map(|f| show(&f.set)).collect();
    format!("{{{}}}", parts.join("; "))
}

pub fn suite_refine(limits: &Limits) -> Result<SuiteReport> {
    let mut ed = Tally::new("essentially disjoint refinement: predicate and union");
    let mut geo = Tally::new("geometric refinement: predicate and union");
    let mut irr = Tally::new("geometric pieces admit no almost disjoint full-rank split");
    let mut two = Tally::new("two lines: gr = w*1+0, gd = 2");
    for p in refinement_corpus(limits)? {
        let e = p.refine_essentially_disjoint()?;
        let bad = same_union(&p, &e)?;
        ed.record(e.is_essentially_disjoint()? && bad.is_none(), || format!("{}: {}", describe(&p), bad.unwrap_or_default()));
        let g = e.refine_geometric()?;
        let bad = same_union(&p, &g)?;
        geo.record(g.is_geometric()? && bad.is_none(), || format!("{}: {}", describe(&p), bad.unwrap_or_default()));
        let classes = g.primary_quotient()?;
        let n = g.ambient();
        for class in &classes {
            let fibers: Vec<PcSet> = g.fibers().iter().filter(|f| class.contains(&f.label)).map(|f| f.set.clone()).collect();
            let d = Defs { n };
            let full = Union(fibers.clone()).rank_deg(n)?.0;
            for mask in 1u32..(1 << fibers.len()) - 1 {
                let (a, b): (Vec<_>, Vec<_>) = fibers.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
                let ua = Union(a.into_iter().map(|(_, t)| t.clone()).collect());
                let ub = Union(b.into_iter().map(|(_, t)| t.clone()).collect());
                let split = ua.rank_deg(n)?.0 == full && ub.rank_deg(n)?.0 == full && d.disj(&ua, &ub)?;
                irr.record(!split, || describe(&g));
            }
        }
    }
    let lines = FinitePresentation::from_sets(2, vec![PcSet::parse(2, "x1; x2", "", limits)?])?;
    let got = lines.refine_essentially_disjoint()?.refine_geometric()?.gr_gd()?;
    two.record(got == (Ordinal2::new(1, 0), 2), || format!("{} , {}", got.0, got.1));
    Ok(SuiteReport { suite: "refine".into(), checks: vec![ed.done(), geo.done(), irr.done(), two.done()] })
}

fn random_descriptor(rng: &mut ChaCha8Rng, depth: u32) -> RankDescriptor {
    if depth == 0 || rng.gen_bool(0.3) {
        if rng.gen_bool(0.1) {
            return RankDescriptor::Empty;
        }
        let (rk, rf) = (rng.gen_range(0..4), rng.gen_range(0..4));
        return RankDescriptor::Atom { rk, dk: rng.gen_range(1..4), rf, df: rng.gen_range(1..4) };
    }
    match rng.gen_range(0..3) {
        0 => RankDescriptor::product(random_descriptor(rng, depth - 1), random_descriptor(rng, depth - 1)),
        1 => RankDescriptor::union(random_descriptor(rng, depth - 1), random_descriptor(rng, depth - 1), None),
        _ => RankDescriptor::DisjointUnion((0..rng.gen_range(1..4)).map(|_| random_descriptor(rng, depth - 1)).collect()),
    }
}

fn ordinal_parts(o: Ordinal2) -> Option<(u64, u64)> {
    match o {
        Ordinal2::Bottom => None,
        Ordinal2::Omega { k, f } => Some((k, f)),
    }
}

pub fn suite_rank(limits: &Limits) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut prod = Tally::new("gr of a product adds both coordinates");
    let mut union = Tally::new("gr of a union is the max");
    for _ in 0..1000 {
        let a = random_descriptor(&mut rng, 3);
        let b = random_descriptor(&mut rng, 3);
        let (ga, gb) = (gr_eval(&a), gr_eval(&b));
        let want = match (ordinal_parts(ga), ordinal_parts(gb)) {
            (Some((k1, f1)), Some((k2, f2))) => Ordinal2::new(k1 + k2, f1 + f2),
            _ => Ordinal2::Bottom,
        };
        let got = gr_eval(&RankDescriptor::product(a.clone(), b.clone()));
        prod.record(got == want, || format!("prod({a},{b}) = {got}"));
        let got = gr_eval(&RankDescriptor::union(a.clone(), b.clone(), None));
        union.record(got == if ga >= gb { ga } else { gb }, || format!("union({a},{b}) = {got}"));
    }
    let mut cr = Tally::new("cr(Z) = w*(m-1)+k for m, k <= 3");
    for m in 1..=3u64 {
        for k in 0..=3u64 {
            let z = RankDescriptor::product(RankDescriptor::atom(0, 1, k, 1)?, RankDescriptor::atom(m - 1, 1, 0, 1)?);
            cr.record(gr_eval(&z) == Ordinal2::new(m - 1, k), || format!("m = {m}, k = {k}: {}", gr_eval(&z)));
        }
    }
    let mut agree = Tally::new("concrete and symbolic gr/gd agree on the corpus");
    let mut bound = Tally::new("ranks stay below w^2 with rK <= ambient");
    for p in refinement_corpus(limits)? {
        let g = p.refine_essentially_disjoint()?.refine_geometric()?;
        let concrete = g.gr_gd()?;
        let d = g.to_descriptor()?;
        let symbolic = (gr_eval(&d), gd_eval(&d)?);
        agree.record(concrete == symbolic, || format!("{}: {:?} vs {:?}", describe(&g), concrete, symbolic));
        let ok = ordinal_parts(concrete.0).is_none_or(|(k, _)| k <= g.ambient() as u64);
        bound.record(ok, || describe(&g));
    }
    Ok(SuiteReport { suite: "rank".into(), checks: vec![prod.done(), union.done(), cr.done(), agree.done(), bound.done()] })
}

/// Runs a suite by name with its default parameters.
pub fn run_suite(name: &str, p: u64, n_max: u32, n: usize, limits: &Limits) -> Result<SuiteReport> {
    match name {
        "character" => suite_character(p, n_max),
        "mann" => suite_mann(n, limits),
        "lies" => suite_lies(limits),
        "refine" => suite_refine(limits),
        "rank" => suite_rank(limits),
        other => Err(Error::Invalid(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_examples() {
        let sols = brute_force_mann(&[Rat::one(), Rat::one()], 12);
        let want = vec![vec![RootOfUnity::new(1, 6), RootOfUnity::new(5, 6)], vec![RootOfUnity::new(5, 6), RootOfUnity::new(1, 6)]];
        assert_eq!(sols, want);
        assert_eq!(brute_force_mann(&[Rat::from_int(2)], 4), Vec::<Vec<RootOfUnity>>::new());
        assert_eq!(brute_force_mann(&[Rat::from_int(-1)], 4), vec![vec![RootOfUnity::minus_one()]]);
    }

    #[test]
    fn small_suites_pass() {
        let lim = Limits::default();
        for r in [suite_character(2, 3).unwrap(), suite_mann(2, &lim).unwrap(), suite_rank(&lim).unwrap()] {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn lies_and_refine_pass() {
        let lim = Limits::default();
        let lies = suite_lies(&lim).unwrap();
        assert!(lies.passed(), "{lies}");
        assert!(lies.checks.iter().all(|c| c.cases > 0), "{lies}");
        let refine = suite_refine(&lim).unwrap();
        assert!(refine.passed(), "{refine}");
    }
}
