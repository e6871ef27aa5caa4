use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nvalg::constructions::octonions;
use nvalg::identity::{holds_in_with, parse_in};
use nvalg::variety::{consequence_span, ClassTag, SpanOptions, VarietyPresentation};
use nvalg::{Exec, FieldSpec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn spans(c: &mut Criterion) {
    let mut g = c.benchmark_group("consequence_span");
    g.sample_size(10);
    for class in [ClassTag::Alternative, ClassTag::Jordan] {
        let v = VarietyPresentation::class(class, FieldSpec::Rationals).unwrap();
        for (name, exec) in MODES {
            let opts = SpanOptions::default().with_exec(exec);
            g.bench_with_input(
                BenchmarkId::new(name, format!("{class} deg 4")),
                &v,
                |b, v| b.iter(|| consequence_span(v, 4, &opts).unwrap()),
            );
        }
    }
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("holds_in");
    g.sample_size(10);
    let f = FieldSpec::PrimeField { p: 101 };
    let o = octonions(f).unwrap().into_algebra();
    // both hold in the octonions, so every basis tuple is visited
    for src in ["((x*y)*x)*z - x*(y*(x*z))", "(x,y,z) + (y,x,z)"] {
        let id = parse_in(src, f).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, src), &id, |b, id| {
                b.iter(|| holds_in_with(&o, id, 1 << 22, exec).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, spans, sweeps);
criterion_main!(benches);
