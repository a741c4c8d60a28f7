use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mincuba::composed::composed_rule;
use mincuba::oracle::{certify_with, MomentSource, SquareOracle, TestBasis};
use mincuba::{Execution, Gamma, Weight1D, WeightSpec};

const MODES: [(&str, Execution); 2] = [("Sequential", Execution::Sequential), ("Parallel", Execution::Parallel)];

fn oracle_moments(c: &mut Criterion) {
    let mut g = c.benchmark_group("square_oracle_moments");
    g.sample_size(10);
    let cases = [
        ("jacobi(0.3,-0.7) deg 32", WeightSpec::square(Weight1D::jacobi(0.3, -0.7).unwrap(), Gamma::PlusHalf), 32),
        ("composed l=3 deg 48", WeightSpec::composed(Weight1D::chebyshev(), 3).unwrap(), 48),
    ];
    for (label, spec, deg) in &cases {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, label), deg, |b, &deg| {
                b.iter(|| {
                    // a fresh oracle each time, so nothing is served from the cache
                    let o = SquareOracle::new(spec, exec).unwrap();
                    black_box(o.moments(TestBasis::Chebyshev, deg).unwrap())
                })
            });
        }
    }
    g.finish();
}

fn certification(c: &mut Criterion) {
    let mut g = c.benchmark_group("certify");
    let rule = composed_rule(&Weight1D::chebyshev(), 4, 8).unwrap();
    let spec = WeightSpec::composed(Weight1D::chebyshev(), 4).unwrap();
    let oracle = SquareOracle::new(&spec, Execution::default()).unwrap();
    oracle.moments(TestBasis::Chebyshev, 128).unwrap();
    for (mode, exec) in MODES {
        g.bench_function(BenchmarkId::new(mode, "composed l=4 m=8"), |b| {
            b.iter(|| black_box(certify_with(&rule, &oracle, 128, 1e-9, TestBasis::Chebyshev, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, oracle_moments, certification);
criterion_main!(benches);
