use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use mulchar_core::character::CharContext;
use mulchar_core::cyclotomic::RootOfUnity;
use mulchar_core::exact::Rat;
use mulchar_core::finite_field::FqElem;
use mulchar_core::ideal::type_ideals;
use mulchar_core::mann::{char_pullback, mann_solve, MannEquation};
use mulchar_core::mult_lattice::{parse_units, relation_lattice};
use mulchar_core::parse::{parse_cyclo_poly, parse_rat_poly};
use mulchar_core::pcset::FinitePresentation;
use mulchar_core::rank::{gr_eval, RankDescriptor};
use mulchar_core::Limits;

fn character(c: &mut Criterion) {
    let mut g = c.benchmark_group("chi");
    for (p, n) in [(2, 8), (3, 5), (7, 3)] {
        let ctx = CharContext::new(p).unwrap();
        let elems = FqElem::elements(p, n).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("{p}^{n}")), &elems, |b, elems| {
            b.iter(|| elems.iter().filter_map(|a| ctx.chi_root(a).unwrap()).count())
        });
    }
    g.finish();
}

fn mann(c: &mut Criterion) {
    let limits = Limits::default();
    let mut g = c.benchmark_group("mann_solve");
    for coeffs in [vec![(1, 1), (1, 1)], vec![(1, 1), (-1, 1), (1, 1)], vec![(1, 2), (1, 3), (-2, 1)]] {
        let eq = MannEquation::new(coeffs.iter().map(|&(a, b)| Rat::new(a, b)).collect()).unwrap();
        let id = eq.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        g.bench_with_input(BenchmarkId::from_parameter(id), &eq, |b, eq| b.iter(|| mann_solve(eq, &limits).unwrap()));
    }
    g.finish();
}

fn lattices(c: &mut Criterion) {
    let units = parse_units("z(1/12),z(5/6),z(1/4),6,10,15").unwrap();
    c.bench_function("relation_lattice/mixed", |b| b.iter(|| relation_lattice(black_box(&units), &[]).unwrap()));
}

fn ideals(c: &mut Criterion) {
    let limits = Limits::default();
    let g = [RootOfUnity::new(1, 6), RootOfUnity::new(1, 5)];
    let p = parse_rat_poly("x1^3*x2 - 2*x1 + 1", Some(2)).unwrap();
    c.bench_function("type_ideals/z6,z5", |b| b.iter(|| type_ideals(black_box(&g), &limits).unwrap()));
    let t = type_ideals(&g, &limits).unwrap();
    c.bench_function("radical_member/J_g", |b| b.iter(|| t.in_radical_j_g(black_box(&p)).unwrap()));
}

fn pullback(c: &mut Criterion) {
    let limits = Limits::default();
    let ctx = CharContext::new(7).unwrap();
    let sys = vec![parse_cyclo_poly("w1 + w2 + w3", "w", Some(3)).unwrap()];
    c.bench_function("char_pullback/w1+w2+w3", |b| b.iter(|| char_pullback(&ctx, black_box(&sys), 3, &limits).unwrap()));
}

fn presentations(c: &mut Criterion) {
    let limits = Limits::default();
    let text = r#"{ "ambient": 3, "fibers": [
        { "V": [ {"gens": ["x3"]}, {"gens": ["x1", "x2"]} ], "S": [] },
        { "V": [ {"gens": ["x3"]} ], "S": [ [ {"gens": ["x1", "x3"]} ] ] },
        { "V": [ {"gens": ["x1"]} ], "S": [] }
    ] }"#;
    let p = FinitePresentation::from_json(text, &limits).unwrap();
    c.bench_function("refine/geometric", |b| {
        b.iter(|| black_box(&p).refine_essentially_disjoint().unwrap().refine_geometric().unwrap().gr_gd().unwrap())
    });
    let expr: RankDescriptor = "union(prod(atom(2,1,0,1),atom(1,3,1,2)),dunion(atom(3,2,0,2),atom(3,1,4,1)))".parse().unwrap();
    c.bench_function("gr_eval/nested", |b| b.iter(|| gr_eval(black_box(&expr))));
}

criterion_group!(benches, character, mann, lattices, ideals, pullback, presentations);
criterion_main!(benches);
