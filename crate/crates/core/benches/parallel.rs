//! Compares the rayon-backed law scan against the forced-sequential path
//! on the same build. The associativity check in `FinCategory::from_raw`
//! is the hot loop: it scans all composable triples of morphisms.

use std::collections::BTreeMap;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fixcat_core::fincat::{FinCategory, RawCategory};
use fixcat_core::par;
use fixcat_core::stdcats;

fn raw_of(c: &FinCategory) -> RawCategory {
    let mut raw = RawCategory {
        objects: c.objects().to_vec(),
        morphisms: c.morphisms().to_vec(),
        identities: BTreeMap::new(),
        composition: vec![],
    };
    for o in 0..c.object_count() {
        raw.identities
            .insert(c.object_id(o).to_string(), c.morphism_id(c.identity(o)).to_string());
    }
    for g in 0..c.morphism_count() {
        for f in 0..c.morphism_count() {
            if let Some(h) = c.compose(g, f) {
                raw.composition.push([
                    c.morphism_id(g).to_string(),
                    c.morphism_id(f).to_string(),
                    c.morphism_id(h).to_string(),
                ]);
            }
        }
    }
    raw
}

fn bench_law_validation(crit: &mut Criterion) {
    let cases: Vec<(&str, RawCategory)> = vec![
        ("cyclic-96", raw_of(&stdcats::cyclic_group_category(96))),
        ("lattice-5", raw_of(&stdcats::subset_lattice(&["a", "b", "c", "d", "e"]))),
        ("chain-24", raw_of(&stdcats::chain_poset(24))),
    ];
    let mut group = crit.benchmark_group("law-validation");
    for (name, raw) in &cases {
        group.bench_with_input(BenchmarkId::new("parallel", name), raw, |b, raw| {
            b.iter(|| FinCategory::from_raw(raw).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", name), raw, |b, raw| {
            b.iter(|| par::with_sequential(|| FinCategory::from_raw(raw).unwrap()))
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_law_validation
}
criterion_main!(benches);
