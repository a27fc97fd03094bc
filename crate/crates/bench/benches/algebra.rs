use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use newstein_core::algebras::{build_newstein, heisenberg3};
use newstein_core::cohomology::{betti, hk_via_reduction, CoefficientModule, Method};
use newstein_core::extensions::{classify, ExtensionMatrix};
use newstein_core::group::GroupElement;
use newstein_core::oscillator::{spectrum, FockBasis, Propagator, RepParams, WaveFunction};

fn lie(c: &mut Criterion) {
    let g = build_newstein();
    c.bench_function("build_newstein", |b| b.iter(build_newstein));
    c.bench_function("jacobi_newstein", |b| b.iter(|| black_box(&g).jacobi_check()));
    c.bench_function("betti_h3_trivial_2", |b| b.iter(|| betti(&heisenberg3(), &CoefficientModule::Trivial, 2, &Method::Exact).unwrap()));
}

fn cohomology(c: &mut Criterion) {
    let g = build_newstein();
    let mut grp = c.benchmark_group("cohomology");
    grp.sample_size(10);
    grp.bench_function("trivial_h2_exact", |b| b.iter(|| betti(&g, &CoefficientModule::Trivial, 2, &Method::Exact).unwrap()));
    grp.bench_function("adjoint_h1_modular", |b| b.iter(|| betti(&g, &CoefficientModule::Adjoint, 1, &Method::modular()).unwrap()));
    grp.bench_function("adjoint_h2_reduction", |b| b.iter(|| hk_via_reduction(&g, 2).unwrap()));
    grp.finish();
}

fn groups(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (x, y) = (GroupElement::random(&mut rng, 1.0), GroupElement::random(&mut rng, 1.0));
    c.bench_function("compose", |b| b.iter(|| black_box(&x).compose(black_box(&y))));
    c.bench_function("inverse", |b| b.iter(|| black_box(&x).inverse()));
    let m = ExtensionMatrix::new(0.3, -1.2, 0.8, 0.5);
    c.bench_function("classify", |b| b.iter(|| classify(black_box(&m))));
}

fn oscillator(c: &mut Criterion) {
    let p = RepParams::new(1.3, 0.7, 1.0, -3.0, 0, 0).unwrap();
    let basis = FockBasis::new(10);
    let mut grp = c.benchmark_group("oscillator");
    grp.sample_size(10);
    grp.bench_function("spectrum_n10", |b| b.iter(|| spectrum(&p, &basis, 1e-6)));
    grp.bench_function("propagator_n10", |b| b.iter(|| Propagator::new(&p, &basis)));
    let u = Propagator::new(&p, &basis);
    let psi = WaveFunction::basis_state(&basis, [1, 2, 0]).unwrap();
    grp.bench_function("apply_n10", |b| b.iter(|| u.apply(&psi, 0.7).unwrap()));
    grp.finish();
}

criterion_group!(benches, lie, cohomology, groups, oscillator);
criterion_main!(benches);
