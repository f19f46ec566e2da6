//! Orbit-scale integration checks: Kepler period, agreement of the three
//! motion models in the weak-field regime, and drift behavior.

use unipot_core::{
    four_velocity, integrate, make_field, CatalogSpec, Event, IntegrateOptions, MotionModel,
    Particle, ParticleState, PhysicalConstants,
};

fn point_mass(gm: f64) -> unipot_core::PotentialField {
    make_field(CatalogSpec::PointMass { mass: gm }, PhysicalConstants::scaled()).unwrap()
}

/// Coordinate time at which the unwrapped azimuth first reaches 2 pi,
/// located by linear interpolation between samples.
fn orbital_period(traj: &unipot_core::Trajectory) -> f64 {
    let mut prev_raw: f64 = 0.0;
    let mut unwrapped = 0.0;
    let mut prev_t = 0.0;
    let mut prev_angle = 0.0;
    for s in &traj.samples {
        let raw = s.state.event.x[1].atan2(s.state.event.x[0]);
        let mut delta = raw - prev_raw;
        if delta > std::f64::consts::PI {
            delta -= 2.0 * std::f64::consts::PI;
        } else if delta < -std::f64::consts::PI {
            delta += 2.0 * std::f64::consts::PI;
        }
        unwrapped += delta;
        prev_raw = raw;
        let target = 2.0 * std::f64::consts::PI;
        if unwrapped >= target {
            let frac = (target - prev_angle) / (unwrapped - prev_angle);
            return prev_t + frac * (s.state.event.t - prev_t);
        }
        prev_t = s.state.event.t;
        prev_angle = unwrapped;
    }
    panic!("orbit did not close within the integrated span");
}

#[test]
fn circular_orbit_period_matches_kepler() {
    let gm = 1e-7;
    let r = 1.0;
    let field = point_mass(gm);
    let particle = Particle::neutral(1.0).unwrap();
    let v = (gm / r).sqrt();
    let init = ParticleState::new(
        Event::new(r, 0.0, 0.0, 0.0),
        four_velocity([0.0, v, 0.0], 1.0).unwrap(),
    );
    let t_kepler = 2.0 * std::f64::consts::PI * (r * r * r / gm).sqrt();
    let n_steps = 10_000usize;
    let dtau = 1.02 * t_kepler / n_steps as f64;
    let traj = integrate(
        &init,
        &field,
        &particle,
        MotionModel::Full,
        dtau,
        n_steps,
        IntegrateOptions::default(),
    )
    .unwrap();
    let t_measured = orbital_period(&traj);
    let rel = (t_measured - t_kepler).abs() / t_kepler;
    assert!(rel < 1e-6, "period rel error {rel:e}");
}

#[test]
fn motion_models_agree_in_the_weak_field() {
    // The three models genuinely separate at the 6 pi gm/(r c^2) precession
    // scale per orbit (that separation is measured by the perihelion
    // experiment), so pointwise 1e-6 agreement needs 6 pi gm below 1e-6.
    let gm = 3e-8;
    let r = 1.0;
    let field = point_mass(gm);
    let particle = Particle::neutral(1.0).unwrap();
    let v = (gm / r).sqrt();
    let init = ParticleState::new(
        Event::new(r, 0.0, 0.0, 0.0),
        four_velocity([0.0, v, 0.0], 1.0).unwrap(),
    );
    let period = 2.0 * std::f64::consts::PI * (r * r * r / gm).sqrt();
    let n_steps = 5000usize;
    let dtau = period / n_steps as f64;
    let run = |model: MotionModel| {
        integrate(&init, &field, &particle, model, dtau, n_steps, IntegrateOptions::default())
            .unwrap()
    };
    let full = run(MotionModel::Full);
    let linear = run(MotionModel::Linear);
    let newtonian = run(MotionModel::Newtonian);
    let mut worst = 0.0f64;
    for i in 0..full.samples.len() {
        let a = &full.samples[i].state.event;
        let b = &linear.samples[i].state.event;
        let c = &newtonian.samples[i].state.event;
        for k in 0..3 {
            worst = worst
                .max((a.x[k] - b.x[k]).abs() / r)
                .max((a.x[k] - c.x[k]).abs() / r);
        }
    }
    assert!(worst < 1e-6, "worst pointwise deviation {worst:e}");
}

#[test]
fn newtonian_norm_drift_stays_below_bound() {
    let gm = 1e-3;
    let field = point_mass(gm);
    let particle = Particle::neutral(1.0).unwrap();
    let v = (gm / 1.0f64).sqrt();
    let init = ParticleState::new(
        Event::new(1.0, 0.0, 0.0, 0.0),
        four_velocity([0.0, v, 0.0], 1.0).unwrap(),
    );
    let period = 2.0 * std::f64::consts::PI / v;
    let traj = integrate(
        &init,
        &field,
        &particle,
        MotionModel::Newtonian,
        period / 2500.0,
        10_000,
        IntegrateOptions::default(),
    )
    .unwrap();
    let worst = traj
        .samples
        .iter()
        .map(|s| s.norm_drift)
        .fold(0.0f64, f64::max);
    assert!(worst <= 1e-10, "drift {worst:e}");
}
