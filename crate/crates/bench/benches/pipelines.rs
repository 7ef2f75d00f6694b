use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use salemrel_core::factor::factor;
use salemrel_core::realroots::count_roots;
use salemrel_core::relations::find_relations;
use salemrel_core::salem::{enum_deg6_trace0, lemma4_enum, salem_check, trace0_salem};
use salemrel_core::{parse_poly, Bound};

const DEG20: &str = "x^20-5x^19+11x^18-19x^17+26x^16-29x^15+27x^14-19x^13+8x^12+x^11-5x^10+x^9+8x^8-19x^7+27x^6-29x^5+26x^4-19x^3+11x^2-5x+1";

fn algebra(c: &mut Criterion) {
    let swinnerton = parse_poly("x^8-40x^6+352x^4-960x^2+576").unwrap();
    c.bench_function("factor/swinnerton-dyer-8", |b| b.iter(|| factor(black_box(&swinnerton))));
    let f = parse_poly(DEG20).unwrap();
    c.bench_function("factor/salem-20", |b| b.iter(|| factor(black_box(&f))));
    c.bench_function("count_roots/salem-20", |b| {
        b.iter(|| count_roots(black_box(&f), &Bound::NegInf, &Bound::PosInf))
    });
    c.bench_function("salem_check/salem-20", |b| b.iter(|| salem_check(black_box(&f))));
}

fn constructions(c: &mut Criterion) {
    c.bench_function("enum_deg6_trace0", |b| b.iter(enum_deg6_trace0));
    let mut g = c.benchmark_group("trace0_salem");
    for d in [10, 26, 50, 100] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| b.iter(|| trace0_salem(d)));
    }
    g.finish();
    let mut g = c.benchmark_group("lemma4_enum");
    g.sample_size(10);
    for k in [2, 3, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| b.iter(|| lemma4_enum(k)));
    }
    g.finish();
}

fn relations(c: &mut Criterion) {
    let cert = salem_check(&parse_poly("x^12-4x^10-6x^9-2x^8+4x^7+7x^6+4x^5-2x^4-6x^3-4x^2+1").unwrap()).unwrap();
    let mut g = c.benchmark_group("find_relations/salem-12");
    g.sample_size(10);
    g.bench_function("L6", |b| b.iter(|| find_relations(black_box(&cert), 6, 128)));
    g.finish();
}

criterion_group!(benches, algebra, constructions, relations);
criterion_main!(benches);
