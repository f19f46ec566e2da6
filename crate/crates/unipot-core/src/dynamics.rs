//! Particle states, the three force laws, and fixed-step proper-time
//! integration with conservation auditing.
//!
//! The path parameter s of the theory satisfies ds = ic dtau; the
//! integrator advances real proper time tau and converts every dV/ds
//! through that factor, so the ODE state stays real-parameterized while
//! all i factors live in the components.

use num_complex::Complex64 as C64;

use crate::algebra::{FourVector, Matrix4, ONE};
use crate::error::{Error, Result};
use crate::field::PotentialField;
use crate::spacetime::{DiffMode, Event};
use crate::tensors::{
    field_tensor, kinematics_at, linear_connection, linear_connection_contracted,
    nonlinear_connection, projector, reduced_field_tensor, split_field_tensor,
};

/// Imaginary residue tolerated when reading a real 3-velocity off V.
const REALITY_TOL: f64 = 1e-6;

/// A test particle; the charge doubles as the imaginary part of the
/// complex mass M = m - i e / lambda.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Particle {
    pub mass: f64,
    pub charge: f64,
}

impl Particle {
    pub fn new(mass: f64, charge: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::param("mass", "must be positive and finite"));
        }
        if !charge.is_finite() {
            return Err(Error::param("charge", "must be finite"));
        }
        Ok(Particle { mass, charge })
    }

    pub fn neutral(mass: f64) -> Result<Self> {
        Particle::new(mass, 0.0)
    }

    pub fn complex_mass(&self, lambda: f64) -> C64 {
        C64::new(self.mass, -self.charge / lambda)
    }
}

/// Which equation of motion drives the particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotionModel {
    /// Measured-force law from the split field tensor and the complex mass.
    /// The only model that couples charge.
    Newtonian,
    /// Linear connection contracted with V.
    Linear,
    /// Nonlinear connection; parallel transport dV/ds + S V = 0.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleState {
    pub event: Event,
    pub velocity: FourVector,
}

impl ParticleState {
    pub fn new(event: Event, velocity: FourVector) -> Self {
        ParticleState { event, velocity }
    }

    /// |V·V - 1|, the audit quantity conserved by the continuous flows.
    pub fn norm_drift(&self) -> f64 {
        (self.velocity.dot(&self.velocity) - ONE).norm()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TrajectorySample {
    pub tau: f64,
    pub state: ParticleState,
    pub norm_drift: f64,
    pub audited_energy: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn last(&self) -> Option<&TrajectorySample> {
        self.samples.last()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IntegrateOptions {
    /// Rescale V to unit norm after every step instead of letting the
    /// drift accumulate as a test output.
    pub renormalize: bool,
    /// Abort when |V·V - 1| exceeds this.
    pub drift_bound: f64,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions {
            renormalize: false,
            drift_bound: 1e-6,
        }
    }
}

/// 4-velocity of a particle moving with real 3-velocity v.
pub fn four_velocity(v: [f64; 3], c: f64) -> Result<FourVector> {
    let v2 = v.iter().map(|x| x * x).sum::<f64>();
    if !(v2 < c * c) {
        return Err(Error::Superluminal {
            speed: v2.sqrt(),
            c,
        });
    }
    let g = 1.0 / (1.0 - v2 / (c * c)).sqrt();
    Ok(FourVector([
        C64::new(0.0, -g * v[0] / c),
        C64::new(0.0, -g * v[1] / c),
        C64::new(0.0, -g * v[2] / c),
        C64::new(g, 0.0),
    ]))
}

/// Real 3-velocity encoded in V: v_k = c Re(i V_k / V_4).
pub fn three_velocity(v: &FourVector, c: f64) -> Result<[f64; 3]> {
    let v4 = v[3];
    if v4.norm() == 0.0 {
        return Err(Error::Degenerate {
            context: "V4 = 0 in three_velocity",
        });
    }
    let mut out = [0.0; 3];
    for k in 0..3 {
        let ratio = C64::new(0.0, 1.0) * v[k] / v4;
        if ratio.im.abs() > REALITY_TOL {
            return Err(Error::RealityViolation {
                residue: ratio.im.abs(),
                tol: REALITY_TOL,
            });
        }
        if !(ratio.re > -1.0 && ratio.re < 1.0) {
            return Err(Error::Superluminal {
                speed: (c * ratio.re).abs(),
                c,
            });
        }
        out[k] = c * ratio.re;
    }
    Ok(out)
}

/// Measured-force tensor m*F_grav + e*Psi: the charge-sector real part of
/// the complex-mass force, keeping the ict-convention i factors intact.
pub fn force_tensor(p: &Particle, phi: &Matrix4, lambda: f64) -> Result<Matrix4> {
    let split = split_field_tensor(phi, lambda)?;
    Ok(split
        .gravity
        .scaled(C64::new(p.mass, 0.0))
        .add(&split.em.scaled(C64::new(p.charge, 0.0))))
}

/// dV/ds for the given motion model.
fn velocity_derivative_ds(
    state: &ParticleState,
    field: &PotentialField,
    particle: &Particle,
    model: MotionModel,
) -> Result<FourVector> {
    let e = &state.event;
    let v = &state.velocity;
    match model {
        MotionModel::Newtonian => {
            let phi = field_tensor(field, e, DiffMode::Analytic)?;
            let t = force_tensor(particle, &phi, field.lambda())?;
            Ok(t.apply(v).scaled(ONE / particle.mass))
        }
        MotionModel::Linear => {
            let kin = kinematics_at(field, e, DiffMode::Analytic)?;
            let conn = linear_connection(&kin, field.constants().c);
            let g = linear_connection_contracted(&conn, v);
            Ok(-g.apply(v))
        }
        MotionModel::Full => {
            let phi = field_tensor(field, e, DiffMode::Analytic)?;
            let u = field.evaluate_u(e)?;
            let reduced = reduced_field_tensor(&phi, &u)?;
            // RK4 stage vectors drift off the unit shell by O(dtau^2);
            // build P from the normalized copy, apply S to the stage value
            let vn = v.scaled(ONE / v.dot(v).sqrt());
            let p = projector(&u, &vn)?;
            let s = nonlinear_connection(&reduced, &p);
            Ok(-s.apply(v))
        }
    }
}

/// dV/dtau = ic dV/ds.
pub fn acceleration(
    state: &ParticleState,
    field: &PotentialField,
    particle: &Particle,
    model: MotionModel,
) -> Result<FourVector> {
    let dv_ds = velocity_derivative_ds(state, field, particle, model)?;
    Ok(dv_ds.scaled(C64::new(0.0, field.constants().c)))
}

/// Laboratory 3-acceleration dv/dt implied by V and dV/dtau.
pub fn coordinate_acceleration(v: &FourVector, dv_dtau: &FourVector, c: f64) -> [f64; 3] {
    let v4 = v[3];
    let mut out = [0.0; 3];
    for k in 0..3 {
        let dv = C64::new(0.0, c) * (dv_dtau[k] * v4 - v[k] * dv_dtau[3]) / (v4 * v4);
        out[k] = (dv / v4).re;
    }
    out
}

#[derive(Clone, Copy)]
struct StateDerivative {
    dx: [f64; 4],
    dv: FourVector,
}

fn state_derivative(
    state: &ParticleState,
    field: &PotentialField,
    particle: &Particle,
    model: MotionModel,
) -> Result<StateDerivative> {
    let c = field.constants().c;
    let ic = C64::new(0.0, c);
    let v = &state.velocity;
    // dx_k/dtau = Re(ic V_k), dt/dtau = Re(V_4)
    let dx = [
        (ic * v[0]).re,
        (ic * v[1]).re,
        (ic * v[2]).re,
        v[3].re,
    ];
    let dv = acceleration(state, field, particle, model)?;
    Ok(StateDerivative { dx, dv })
}

fn advanced(state: &ParticleState, d: &StateDerivative, h: f64) -> ParticleState {
    let mut e = state.event;
    for k in 0..3 {
        e.x[k] += h * d.dx[k];
    }
    e.t += h * d.dx[3];
    ParticleState {
        event: e,
        velocity: state.velocity + d.dv.scaled(C64::new(h, 0.0)),
    }
}

/// One classical fourth-order Runge-Kutta step of size dtau (which may be
/// negative for reverse integration).
pub fn step_rk4(
    state: &ParticleState,
    field: &PotentialField,
    particle: &Particle,
    model: MotionModel,
    dtau: f64,
) -> Result<ParticleState> {
    if !(dtau != 0.0 && dtau.is_finite()) {
        return Err(Error::param("dtau", "must be finite and nonzero"));
    }
    let k1 = state_derivative(state, field, particle, model)?;
    let k2 = state_derivative(&advanced(state, &k1, dtau / 2.0), field, particle, model)?;
    let k3 = state_derivative(&advanced(state, &k2, dtau / 2.0), field, particle, model)?;
    let k4 = state_derivative(&advanced(state, &k3, dtau), field, particle, model)?;
    let sixth = dtau / 6.0;
    let mut e = state.event;
    for k in 0..3 {
        e.x[k] += sixth * (k1.dx[k] + 2.0 * k2.dx[k] + 2.0 * k3.dx[k] + k4.dx[k]);
    }
    e.t += sixth * (k1.dx[3] + 2.0 * k2.dx[3] + 2.0 * k3.dx[3] + k4.dx[3]);
    let dv = k1.dv + k2.dv.scaled(C64::new(2.0, 0.0)) + k3.dv.scaled(C64::new(2.0, 0.0)) + k4.dv;
    let velocity = state.velocity + dv.scaled(C64::new(sixth, 0.0));
    Ok(ParticleState { event: e, velocity })
}

/// Fixed-step RK4 integration over proper time, recording the norm drift
/// and an energy audit per sample.
pub fn integrate(
    init: &ParticleState,
    field: &PotentialField,
    particle: &Particle,
    model: MotionModel,
    dtau: f64,
    n_steps: usize,
    opts: IntegrateOptions,
) -> Result<Trajectory> {
    if !(dtau > 0.0 && dtau.is_finite()) {
        return Err(Error::param("dtau", "must be positive and finite"));
    }
    if n_steps == 0 {
        return Err(Error::param("n_steps", "must be at least 1"));
    }
    let c = field.constants().c;
    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut state = *init;
    let energy = |s: &ParticleState| -> Result<f64> {
        let mu = field.mu(&s.event)?;
        Ok(c * c * (s.velocity[3].re - mu.ln()))
    };
    samples.push(TrajectorySample {
        tau: 0.0,
        state,
        norm_drift: state.norm_drift(),
        audited_energy: energy(&state)?,
    });
    for step in 1..=n_steps {
        state = step_rk4(&state, field, particle, model, dtau)?;
        let drift = state.norm_drift();
        if drift > opts.drift_bound {
            return Err(Error::NormDrift {
                drift,
                bound: opts.drift_bound,
                step,
            });
        }
        if opts.renormalize {
            let norm = state.velocity.dot(&state.velocity).sqrt();
            state.velocity = state.velocity.scaled(ONE / norm);
        }
        samples.push(TrajectorySample {
            tau: step as f64 * dtau,
            state,
            norm_drift: drift,
            audited_energy: energy(&state)?,
        });
    }
    Ok(Trajectory { samples })
}

/// Classical impulse of a charged particle in an EM potential:
/// Re[(m - i e/lambda)(v - i lambda A / c)] = m v - e A / c.
pub fn impulse(p: &Particle, v: [f64; 3], a_pot: [f64; 3], lambda: f64, c: f64) -> [f64; 3] {
    let m = p.complex_mass(lambda);
    let mut out = [0.0; 3];
    for k in 0..3 {
        let z = C64::new(v[k], -lambda * a_pot[k] / c);
        out[k] = (m * z).re;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PhysicalConstants;
    use crate::field::{make_field, CatalogSpec};

    fn scaled(spec: CatalogSpec) -> PotentialField {
        make_field(spec, PhysicalConstants::scaled()).unwrap()
    }

    fn flat() -> PotentialField {
        scaled(CatalogSpec::UniformMotion { velocity: [0.0; 3] })
    }

    #[test]
    fn four_velocity_at_rest_and_at_0_6c() {
        let rest = four_velocity([0.0; 3], 1.0).unwrap();
        assert_eq!(rest, FourVector::rest());
        let v = four_velocity([0.6, 0.0, 0.0], 1.0).unwrap();
        assert!((v[0] - C64::new(0.0, -0.75)).norm() < 1e-15);
        assert!((v[3] - C64::new(1.25, 0.0)).norm() < 1e-15);
        assert!((v.dot(&v) - ONE).norm() < 1e-12);
        assert!(matches!(
            four_velocity([1.0, 0.0, 0.0], 1.0),
            Err(Error::Superluminal { .. })
        ));
    }

    #[test]
    fn three_velocity_round_trips() {
        let v = [0.31, -0.52, 0.17];
        let fv = four_velocity(v, 1.0).unwrap();
        let back = three_velocity(&fv, 1.0).unwrap();
        for k in 0..3 {
            assert!((v[k] - back[k]).abs() < 1e-14);
        }
        let rest = three_velocity(&FourVector::rest(), 1.0).unwrap();
        assert_eq!(rest, [0.0; 3]);
    }

    #[test]
    fn impulse_is_mv_minus_ea_over_c() {
        let p = Particle::new(2.0, 3.0).unwrap();
        let out = impulse(&p, [1.0, 0.0, 0.0], [4.0, 0.0, 0.0], 1.0, 1.0);
        // Re[(2-3i)(1-4i)] = 2 - 12 = -10
        assert!((out[0] + 10.0).abs() < 1e-14);
        assert_eq!(out[1], 0.0);
        let neutral = Particle::neutral(1.7).unwrap();
        let out2 = impulse(&neutral, [0.3, 0.2, -0.1], [9.0, 9.0, 9.0], 2.0, 3.0);
        for k in 0..3 {
            assert!((out2[k] - 1.7 * [0.3, 0.2, -0.1][k]).abs() < 1e-15);
        }
    }

    #[test]
    fn neutral_force_tensor_is_mass_times_gravity() {
        let f = scaled(CatalogSpec::PointMass { mass: 1e-3 });
        let phi = field_tensor(&f, &Event::new(1.0, 0.0, 0.0, 0.0), DiffMode::Analytic).unwrap();
        let p = Particle::neutral(2.5).unwrap();
        let t = force_tensor(&p, &phi, 1.0).unwrap();
        let grav = split_field_tensor(&phi, 1.0).unwrap().gravity;
        assert!(t.sub(&grav.scaled(C64::new(2.5, 0.0))).max_norm() < 1e-18);
    }

    #[test]
    fn neutral_particle_feels_no_charge_field() {
        let f = scaled(CatalogSpec::PointCharge { charge: 1e-4 });
        let e = Event::new(1.0, 0.0, 0.0, 0.0);
        let phi = field_tensor(&f, &e, DiffMode::Analytic).unwrap();
        let p = Particle::neutral(1.0).unwrap();
        let t = force_tensor(&p, &phi, 1.0).unwrap();
        // only the second-order gravity sector of the charge potential
        // remains, bounded by |V| times the tensor scale
        let v_here = f.nu_im(&e).unwrap().abs();
        assert!(t.max_norm() < 2.0 * v_here * phi.max_norm());
        assert!(t.max_norm() > 0.0);
    }

    #[test]
    fn static_point_mass_attracts_at_rest() {
        let gm = 1e-3;
        let f = scaled(CatalogSpec::PointMass { mass: gm });
        let r0 = 2.0;
        let state = ParticleState::new(
            Event::new(r0, 0.0, 0.0, 0.0),
            four_velocity([0.0; 3], 1.0).unwrap(),
        );
        let p = Particle::neutral(1.0).unwrap();
        for model in [MotionModel::Newtonian, MotionModel::Linear, MotionModel::Full] {
            let dv = acceleration(&state, &f, &p, model).unwrap();
            let a = coordinate_acceleration(&state.velocity, &dv, 1.0);
            let expect = -gm / (r0 * r0) / (1.0 + gm / r0);
            assert!(
                (a[0] - expect).abs() < 1e-12,
                "{model:?}: a = {:e}, expect {:e}",
                a[0],
                expect
            );
            assert!(a[1].abs() < 1e-15 && a[2].abs() < 1e-15);
        }
    }

    #[test]
    fn flat_field_gives_zero_acceleration() {
        let f = flat();
        let state = ParticleState::new(
            Event::new(0.3, 0.2, 0.0, 0.0),
            four_velocity([0.4, 0.0, 0.1], 1.0).unwrap(),
        );
        let p = Particle::neutral(1.0).unwrap();
        for model in [MotionModel::Newtonian, MotionModel::Linear, MotionModel::Full] {
            let dv = acceleration(&state, &f, &p, model).unwrap();
            assert!(dv.max_norm() < 1e-15, "{model:?}");
        }
    }

    #[test]
    fn rotating_frame_rest_acceleration_is_centrifugal() {
        let om = 1e-5;
        let r = 1.0;
        let f = scaled(CatalogSpec::RotatingFrame { omega: om });
        let state = ParticleState::new(
            Event::new(r, 0.0, 0.0, 0.0),
            four_velocity([0.0; 3], 1.0).unwrap(),
        );
        let p = Particle::neutral(1.0).unwrap();
        let dv = acceleration(&state, &f, &p, MotionModel::Newtonian).unwrap();
        let a = coordinate_acceleration(&state.velocity, &dv, 1.0);
        // outward omega^2 r, relativistic correction O((omega r / c)^2)
        assert!((a[0] - om * om * r).abs() < 1e-8 * om * om * r);
    }

    #[test]
    fn straight_line_in_flat_field() {
        let f = flat();
        let p = Particle::neutral(1.0).unwrap();
        let v = [0.3, -0.1, 0.2];
        let init = ParticleState::new(Event::origin(), four_velocity(v, 1.0).unwrap());
        let traj = integrate(
            &init,
            &f,
            &p,
            MotionModel::Full,
            0.05,
            200,
            IntegrateOptions::default(),
        )
        .unwrap();
        let last = traj.last().unwrap();
        let g = 1.0 / (1.0 - v.iter().map(|x| x * x).sum::<f64>()).sqrt();
        let tau = last.tau;
        for k in 0..3 {
            assert!((last.state.event.x[k] - g * v[k] * tau).abs() < 1e-12);
        }
        assert!((last.state.event.t - g * tau).abs() < 1e-12);
        assert!(last.norm_drift < 1e-14);
        // audited energy is gamma c^2, constant
        assert!((last.audited_energy - g).abs() < 1e-12);
    }

    #[test]
    fn integration_rejects_bad_parameters() {
        let f = flat();
        let p = Particle::neutral(1.0).unwrap();
        let init = ParticleState::new(Event::origin(), FourVector::rest());
        assert!(integrate(&init, &f, &p, MotionModel::Full, 0.0, 5, IntegrateOptions::default()).is_err());
        assert!(integrate(&init, &f, &p, MotionModel::Full, 0.1, 0, IntegrateOptions::default()).is_err());
    }

    #[test]
    fn forward_backward_returns_to_start() {
        let gm = 1e-3;
        let f = scaled(CatalogSpec::PointMass { mass: gm });
        let p = Particle::neutral(1.0).unwrap();
        let v = (gm / 1.0f64).sqrt();
        let mut state = ParticleState::new(
            Event::new(1.0, 0.0, 0.0, 0.0),
            four_velocity([0.0, v, 0.0], 1.0).unwrap(),
        );
        let init = state;
        let dtau = 0.05;
        let n = 2000;
        for _ in 0..n {
            state = step_rk4(&state, &f, &p, MotionModel::Full, dtau).unwrap();
        }
        for _ in 0..n {
            state = step_rk4(&state, &f, &p, MotionModel::Full, -dtau).unwrap();
        }
        for k in 0..3 {
            assert!(
                (state.event.x[k] - init.event.x[k]).abs() < 1e-8,
                "x{k} moved by {:e}",
                (state.event.x[k] - init.event.x[k]).abs()
            );
        }
        assert!((state.velocity - init.velocity).max_norm() < 1e-8);
    }

    #[test]
    fn trajectories_are_gauge_invariant() {
        let gm = 1e-3;
        let spec = CatalogSpec::PointMass { mass: gm };
        let f1 = scaled(spec.clone());
        let f2 = scaled(spec).with_gauge(3.7).unwrap();
        let p = Particle::neutral(1.0).unwrap();
        let init = ParticleState::new(
            Event::new(1.0, 0.0, 0.0, 0.0),
            four_velocity([0.0, 0.9 * gm.sqrt(), 0.0], 1.0).unwrap(),
        );
        let t1 = integrate(&init, &f1, &p, MotionModel::Full, 0.1, 500, IntegrateOptions::default()).unwrap();
        let t2 = integrate(&init, &f2, &p, MotionModel::Full, 0.1, 500, IntegrateOptions::default()).unwrap();
        let a = t1.last().unwrap().state;
        let b = t2.last().unwrap().state;
        for k in 0..3 {
            assert!((a.event.x[k] - b.event.x[k]).abs() < 1e-10);
        }
        assert!((a.velocity - b.velocity).max_norm() < 1e-10);
    }

    #[test]
    fn renormalization_pins_the_norm() {
        let f = scaled(CatalogSpec::PointMass { mass: 1e-3 });
        let p = Particle::neutral(1.0).unwrap();
        let init = ParticleState::new(
            Event::new(1.0, 0.0, 0.0, 0.0),
            four_velocity([0.0, 0.03, 0.0], 1.0).unwrap(),
        );
        let opts = IntegrateOptions {
            renormalize: true,
            ..Default::default()
        };
        let traj = integrate(&init, &f, &p, MotionModel::Full, 0.1, 300, opts).unwrap();
        let v = traj.last().unwrap().state.velocity;
        assert!((v.dot(&v) - ONE).norm() < 1e-14);
    }

    #[test]
    fn drift_beyond_bound_aborts_with_diagnostic() {
        // wildly oversized steps on a plunging orbit blow up the norm
        let f = scaled(CatalogSpec::PointMass { mass: 0.5 });
        let p = Particle::neutral(1.0).unwrap();
        let init = ParticleState::new(
            Event::new(1.0, 0.0, 0.0, 0.0),
            four_velocity([-0.5, 0.0, 0.0], 1.0).unwrap(),
        );
        let err = integrate(
            &init,
            &f,
            &p,
            MotionModel::Newtonian,
            0.5,
            10_000,
            IntegrateOptions::default(),
        )
        .unwrap_err();
        assert!(
            matches!(err, Error::NormDrift { .. } | Error::Singularity { .. }),
            "unexpected error {err:?}"
        );
    }

    #[test]
    fn three_velocity_rejects_nonphysical_vectors() {
        // real spatial component with real V4 breaks the reality pattern
        let bad = FourVector::from_real([0.5, 0.0, 0.0, 1.0]);
        assert!(matches!(
            three_velocity(&bad, 1.0),
            Err(Error::RealityViolation { .. })
        ));
        let degenerate = FourVector::from_real([0.0, 0.0, 1.0, 0.0]);
        assert!(matches!(
            three_velocity(&degenerate, 1.0),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn magnetic_force_at_axis_matches_lorentz_oracle() {
        // at the axis the imaginary-rotation field is a pure uniform
        // magnetic sector: |dv/dtau| = e v |H| / (m c), H = 2 c Omega / lambda
        let om: f64 = 0.5;
        let f = scaled(CatalogSpec::ImaginaryRotation { omega: om });
        let (e_q, m, v0) = (3.0, 2.0, 1e-4);
        let p = Particle::new(m, e_q).unwrap();
        let state = ParticleState::new(
            Event::origin(),
            four_velocity([v0, 0.0, 0.0], 1.0).unwrap(),
        );
        let dv = acceleration(&state, &f, &p, MotionModel::Newtonian).unwrap();
        let a = coordinate_acceleration(&state.velocity, &dv, 1.0);
        let mag = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        let oracle = e_q * v0 * (2.0 * om) / m;
        assert!(
            (mag - oracle).abs() < 1e-6 * oracle,
            "force {mag:e} vs oracle {oracle:e}"
        );
        // the force is transverse to the motion
        assert!(a[0].abs() < 1e-12 * mag);
    }

    #[test]
    fn charged_motion_in_imaginary_rotation_bends() {
        // a charged particle curves, a neutral one does not, and flipping
        // the charge flips the chirality
        let f = scaled(CatalogSpec::ImaginaryRotation { omega: 0.5 });
        let v0 = 0.01;
        let r0 = 5e-5;
        let init = ParticleState::new(
            Event::new(r0, 0.0, 0.0, 0.0),
            four_velocity([0.0, v0, 0.0], 1.0).unwrap(),
        );
        let run = |charge: f64| {
            let p = Particle::new(1.0, charge).unwrap();
            let traj = integrate(
                &init,
                &f,
                &p,
                MotionModel::Newtonian,
                1e-5,
                400,
                IntegrateOptions::default(),
            )
            .unwrap();
            let dv = acceleration(&init, &f, &p, MotionModel::Newtonian).unwrap();
            let a = coordinate_acceleration(&init.velocity, &dv, 1.0);
            (traj, a)
        };
        let (_, a_neutral) = run(0.0);
        // neutral: only the second-order gravity sector, ~Omega^2 r
        assert!(a_neutral[0].abs() < 2.0 * 0.25 * r0);
        let (_, a_pos) = run(200.0);
        let (_, a_neg) = run(-200.0);
        assert!(a_pos[0] * a_neg[0] < 0.0, "chirality must flip with charge");
        assert!(a_pos[0].abs() > 100.0 * a_neutral[0].abs());
    }
}
