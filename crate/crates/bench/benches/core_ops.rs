//! Benchmarks of the dense linear-algebra core: eigensolver, channel
//! application, and the entanglement measures.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use oqsim_bench::{random_density, random_hermitian, rng};
use oqsim_core::{channels, measures, states};

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_spectrum");
    let mut r = rng(1);
    for d in [4usize, 9, 16] {
        let m = random_hermitian(&mut r, d);
        group.bench_with_input(BenchmarkId::from_parameter(d), &m, |b, m| {
            b.iter(|| m.hermitian_spectrum().expect("hermitian input"))
        });
    }
    group.finish();
}

fn channel_application(c: &mut Criterion) {
    let bell = states::bell_state(states::BellKind::PhiPlus);
    let ad = channels::amplitude_damping(0.3).expect("gamma in range");
    c.bench_function("amplitude_damping_on_bell", |b| {
        b.iter(|| channels::apply_to_subsystem(&ad, &bell, 1).expect("dims match"))
    });

    let mes = states::maximally_entangled(3).expect("two qutrits");
    let cad = channels::correlated_amplitude_damping(0.3, 0.5).expect("strengths in range");
    c.bench_function("correlated_damping_on_qutrit_pair", |b| {
        b.iter(|| channels::apply_to_subsystem(&cad, &mes, 0).expect("dims match"))
    });
}

fn entanglement_measures(c: &mut Criterion) {
    let mut r = rng(2);
    let two_qubit = random_density(&mut r, &[2, 2]);
    c.bench_function("concurrence_random_two_qubit", |b| {
        b.iter(|| measures::concurrence(&two_qubit).expect("two-qubit state"))
    });
    let two_qutrit = random_density(&mut r, &[3, 3]);
    c.bench_function("negativity_random_two_qutrit", |b| {
        b.iter(|| measures::negativity(&two_qutrit, 1).expect("bipartite state"))
    });
}

criterion_group!(
    core_ops,
    eigensolver,
    channel_application,
    entanglement_measures
);
criterion_main!(core_ops);
