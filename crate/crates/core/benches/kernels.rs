//! Parallel vs sequential for the fan-out kernels: per-prime Jacobian orders
//! (torsion bound) and the character-sum zeta numerator. The sequential
//! baseline runs the same code inside a one-thread pool; without the
//! `parallel` feature only the sequential fallback is measured.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use galois_fiber::exact::{parse_poly, primes_up_to, QPoly};
use galois_fiber::ffcurves::zeta_numerator;
use galois_fiber::sieve::torsion_bound;

const SEPTIC: &str = "(x^3-4*x^2+3*x+1)*(x^4-10*x^3+27*x^2-10*x-27)";

type Kernel = Box<dyn Fn() + Sync>;

fn kernels() -> Vec<(&'static str, Kernel)> {
    let w: QPoly = parse_poly(SEPTIC).unwrap();
    let odd: Vec<u64> = primes_up_to(100).into_iter().filter(|&p| p > 2).collect();
    let w2 = w.clone();
    vec![
        ("torsion_bound_100", Box::new(move || drop(torsion_bound(&w, &odd).unwrap()))),
        ("zeta_genus3_p101", Box::new(move || drop(zeta_numerator(&w2, 101).unwrap()))),
    ]
}

#[cfg(feature = "parallel")]
fn bench(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let threads = rayon::current_num_threads();
    for (name, k) in kernels() {
        let mut g = c.benchmark_group(name);
        g.sample_size(10);
        g.bench_function(BenchmarkId::new("sequential", 1), |b| b.iter(|| single.install(&k)));
        g.bench_function(BenchmarkId::new("parallel", threads), |b| b.iter(&k));
        g.finish();
    }
}

#[cfg(not(feature = "parallel"))]
fn bench(c: &mut Criterion) {
    for (name, k) in kernels() {
        let mut g = c.benchmark_group(name);
        g.sample_size(10);
        g.bench_function(BenchmarkId::new("sequential", 1), |b| b.iter(|| k()));
        g.finish();
    }
}

criterion_group!(benches, bench);
criterion_main!(benches);
