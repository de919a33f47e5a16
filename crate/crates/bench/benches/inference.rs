use aerorisk_bench::crash_model;
use aerorisk_core::bn::random::random_network;
use aerorisk_core::bn::{
    joint_enumeration_posterior, sensitivity_tornado, variable_elimination_posterior, Evidence,
};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn crash_queries(c: &mut Criterion) {
    let net = crash_model();
    let prior = Evidence::new();
    let pe = Evidence::new().with("PE", "YES");
    let vh = Evidence::new().with("Crash", "very high");

    c.bench_function("ve/crash/prior", |b| {
        b.iter(|| variable_elimination_posterior(&net, black_box(&prior), "Crash").unwrap())
    });
    c.bench_function("ve/crash/pilot_error", |b| {
        b.iter(|| variable_elimination_posterior(&net, black_box(&pe), "Crash").unwrap())
    });
    c.bench_function("ve/crash/diagnostic", |b| {
        b.iter(|| variable_elimination_posterior(&net, black_box(&vh), "ExternalSources").unwrap())
    });
    c.bench_function("enumeration/crash/prior", |b| {
        b.iter(|| joint_enumeration_posterior(&net, black_box(&prior), "Crash").unwrap())
    });
    c.bench_function("tornado/crash/intermediates", |b| {
        b.iter(|| {
            sensitivity_tornado(
                &net,
                "Crash",
                "very high",
                black_box(&["ExternalSources", "InternalSources"]),
                &prior,
            )
            .unwrap()
        })
    });
}

fn random_networks(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let nets: Vec<_> = (0..16)
        .map(|_| random_network(&mut rng, 12, 4, 3, 1 << 20))
        .collect();
    c.bench_function("ve/random12/all_nodes", |b| {
        b.iter(|| {
            for net in &nets {
                for n in net.nodes() {
                    black_box(
                        variable_elimination_posterior(net, &Evidence::new(), &n.name).unwrap(),
                    );
                }
            }
        })
    });
}

criterion_group!(benches, crash_queries, random_networks);
criterion_main!(benches);
