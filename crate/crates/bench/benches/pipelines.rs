//! Benchmarks for the hot paths: classification, enumeration, the
//! brace/YBE pipeline, and the exhaustive braid check.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use cliffbraid::brace::ybe_from_brace;
use cliffbraid::post::{enumerate_post, from_brace, ybe_from_post};
use cliffbraid::rota_baxter::{circ_r, enumerate_rb, EnumBudget, Weight};
use cliffbraid::{catalog, FiniteSemigroup};

fn classification(c: &mut Criterion) {
    let s3 = catalog::find("s3").expect("catalog entry").semigroup;
    let rows = s3.rows();
    c.bench_function("classify_s3", |b| {
        b.iter_batched(
            || FiniteSemigroup::from_rows(&rows).expect("valid table"),
            |sg| sg.classify().is_clifford(),
            BatchSize::SmallInput,
        )
    });
}

fn enumeration(c: &mut Criterion) {
    let budget = EnumBudget::default();
    for key in ["z4", "z6", "z8"] {
        let ct = catalog::clifford(key).expect("catalog entry");
        c.bench_function(&format!("enumerate_rb_{key}_plus"), |b| {
            b.iter(|| enumerate_rb(&ct, Weight::Plus, false, &budget).expect("in budget").len())
        });
    }
    let z2_over_z2 = catalog::clifford("z2_over_z2").expect("catalog entry");
    c.bench_function("enumerate_rb_z2_over_z2_minus", |b| {
        b.iter(|| enumerate_rb(&z2_over_z2, Weight::Minus, false, &budget).expect("in budget").len())
    });
    let z3 = catalog::clifford("z3").expect("catalog entry");
    c.bench_function("enumerate_post_z3", |b| {
        b.iter(|| enumerate_post(&z3, false, &budget).expect("in budget").len())
    });
}

fn brace_pipeline(c: &mut Criterion) {
    let budget = EnumBudget::default();
    let ct = catalog::clifford("z8").expect("catalog entry");
    let ops = enumerate_rb(&ct, Weight::Plus, true, &budget).expect("in budget");
    c.bench_function("circ_r_to_ybe_z8", |b| {
        b.iter(|| {
            let mut checked = 0;
            for op in &ops {
                let brace = circ_r(op).expect("weight +1 operator");
                let solution = ybe_from_brace(&brace);
                checked += usize::from(solution.is_solution());
            }
            checked
        })
    });
}

fn braid_check(c: &mut Criterion) {
    let ct = catalog::clifford("z8").expect("catalog entry");
    let budget = EnumBudget::default();
    let op = enumerate_rb(&ct, Weight::Plus, true, &budget)
        .expect("in budget")
        .into_iter()
        .last()
        .expect("at least the zero operator");
    let brace = circ_r(&op).expect("weight +1 operator");
    let post = from_brace(&brace);
    let solution = ybe_from_post(&post);
    c.bench_function("braid_relation_order_8", |b| {
        b.iter(|| solution.braid_failure().is_none())
    });
}

criterion_group!(benches, classification, enumeration, brace_pipeline, braid_check);
criterion_main!(benches);
