use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdvv_core::corpus::{quad, random_operator, random_prepotential};
use wdvv_core::frobenius::{check_axioms, from_prepotential};
use wdvv_core::kontsevich::{nk_recursion, solve_from_pde};
use wdvv_core::lenard::{haantjes, nijenhuis, recursion_operators, SquareOfFunctions};
use wdvv_core::wdvv::check_wdvv;

fn kontsevich(c: &mut Criterion) {
    let mut group = c.benchmark_group("kontsevich");
    for k in [4u32, 10] {
        group.bench_with_input(BenchmarkId::new("recursion", k), &k, |b, &k| {
            b.iter(|| nk_recursion(black_box(k)))
        });
        group.bench_with_input(BenchmarkId::new("pde", k), &k, |b, &k| {
            b.iter(|| solve_from_pde(black_box(k)))
        });
    }
    group.finish();
}

fn wdvv(c: &mut Criterion) {
    let q = quad();
    c.bench_function("check_wdvv_quad", |b| b.iter(|| check_wdvv(black_box(&q))));
    let p = random_prepotential(&mut ChaCha8Rng::seed_from_u64(3), 3, 4);
    c.bench_function("check_wdvv_random_n3_deg4", |b| b.iter(|| check_wdvv(black_box(&p))));
    let s = SquareOfFunctions::hessian_of(p.ctx.clone(), &p.f, p.pivot).expect("regular pivot");
    c.bench_function("recursion_operators_random_n3_deg4", |b| {
        b.iter(|| recursion_operators(black_box(&s)))
    });
}

fn torsion(c: &mut Criterion) {
    let k = random_operator(&mut ChaCha8Rng::seed_from_u64(9), 3, 2);
    c.bench_function("nijenhuis_n3_deg2", |b| b.iter(|| nijenhuis(black_box(&k))));
    c.bench_function("haantjes_n3_deg2", |b| b.iter(|| haantjes(black_box(&k))));
}

fn frobenius(c: &mut Criterion) {
    let data = from_prepotential(&quad()).expect("ordinary solution");
    c.bench_function("check_axioms_quad", |b| b.iter(|| check_axioms(black_box(&data))));
}

criterion_group!(benches, kontsevich, wdvv, torsion, frobenius);
criterion_main!(benches);
