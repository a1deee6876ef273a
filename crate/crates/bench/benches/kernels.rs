use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use num_rational::BigRational;

use qdc_core::dedekind::{etilde_int, q_dc_sum_scaled, DCSumParams};
use qdc_core::measure::{fermionic_integral, IntegralConfig, QPowerIntegrand};
use qdc_core::qgenocchi::{gbar_symbolic, qgenocchi_poly, QGenocchiParams};
use qdc_core::{PadicContext, Poly, RatFunc, Regime};

fn fermionic(c: &mut Criterion) {
    let mut g = c.benchmark_group("fermionic_integral");
    g.sample_size(10);
    for p in [3u64, 5] {
        let ctx = PadicContext::parse_q(p, 6, "1+p").unwrap();
        let f = QPowerIntegrand::new(&ctx, 1, 1, &BigRational::from_integer(BigInt::from(1)), 6).unwrap();
        for workers in [1usize, 0] {
            let cfg = IntegralConfig { workers, ..IntegralConfig::for_precision(6) };
            g.bench_with_input(BenchmarkId::new(format!("p{p}"), workers), &cfg, |b, cfg| {
                b.iter(|| fermionic_integral(black_box(&f), &ctx, cfg).unwrap())
            });
        }
    }
    g.finish();
}

fn ratfunc(c: &mut Criterion) {
    let a = RatFunc::new(Poly::from_ints(&[1, -3, 0, 2, 5]), Poly::from_ints(&[2, 1, 0, 0, 1]), 1).unwrap();
    let b = RatFunc::new(Poly::from_ints(&[-1, 4, 1]), Poly::from_ints(&[1, -1, 1, 3]), 1).unwrap();
    c.bench_function("ratfunc_mul_add", |bch| bch.iter(|| &(black_box(&a) * black_box(&b)) + &a));
    c.bench_function("ratfunc_div", |bch| bch.iter(|| black_box(&a) / black_box(&b)));
}

fn genocchi(c: &mut Criterion) {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut g = c.benchmark_group("genocchi_symbolic");
    for n in [4u32, 8, 12] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| qgenocchi_poly(&QGenocchiParams::poly(n, 2, half.clone()), Regime::Symbolic).unwrap())
        });
    }
    g.finish();
    c.bench_function("gbar_symbolic_12", |b| b.iter(|| gbar_symbolic(12, 1, black_box(&half))));
}

fn dedekind(c: &mut Criterion) {
    let ctx = PadicContext::parse_q(5, 6, "1+p").unwrap();
    let params = DCSumParams { h: 2, k: 7, m: 7, alpha: 1, l: 7 };
    let mut g = c.benchmark_group("dc_sum");
    g.sample_size(10);
    g.bench_function("q_dc_sum_scaled", |b| {
        b.iter(|| q_dc_sum_scaled(black_box(&params), &ctx, &IntegralConfig::for_precision(6)).unwrap())
    });
    g.bench_function("etilde_int", |b| b.iter(|| etilde_int(7, 3, 7, 1, &ctx).unwrap()));
    g.finish();
}

criterion_group!(benches, fermionic, ratfunc, genocchi, dedekind);
criterion_main!(benches);
