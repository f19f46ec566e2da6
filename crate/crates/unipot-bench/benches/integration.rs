use criterion::{black_box, criterion_group, criterion_main, Criterion};

use unipot_core::{
    four_velocity, integrate, make_field, step_rk4, CatalogSpec, Event, IntegrateOptions,
    MotionModel, Particle, ParticleState, PhysicalConstants,
};

fn integration_benches(c: &mut Criterion) {
    let gm = 1e-3;
    let field = make_field(
        CatalogSpec::PointMass { mass: gm },
        PhysicalConstants::scaled(),
    )
    .unwrap();
    let particle = Particle::neutral(1.0).unwrap();
    let v = (gm / 1.0f64).sqrt();
    let init = ParticleState::new(
        Event::new(1.0, 0.0, 0.0, 0.0),
        four_velocity([0.0, v, 0.0], 1.0).unwrap(),
    );
    let dtau = 0.05;

    for model in [MotionModel::Newtonian, MotionModel::Linear, MotionModel::Full] {
        c.bench_function(&format!("rk4_step_{model:?}"), |b| {
            b.iter(|| step_rk4(black_box(&init), &field, &particle, model, dtau).unwrap())
        });
    }

    c.bench_function("orbit_1000_steps_full", |b| {
        b.iter(|| {
            integrate(
                black_box(&init),
                &field,
                &particle,
                MotionModel::Full,
                dtau,
                1000,
                IntegrateOptions::default(),
            )
            .unwrap()
        })
    });
}

criterion_group!(benches, integration_benches);
criterion_main!(benches);
