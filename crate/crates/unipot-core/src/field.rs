//! The unified 4-vector potential: catalog construction, evaluation,
//! decomposition, and the two superposition laws.
//!
//! A field bundles a real gravitational potential mu, a charge potential
//! nu = 1 + i*V stored through its imaginary part, and a source velocity
//! field u. Internally evaluation works with the combined complex
//! potential w = mu*nu; the split is recovered as mu = Re(w),
//! V = Im(w)/Re(w).

use num_complex::Complex64 as C64;

use crate::algebra::{FourVector, Matrix4, ONE, ZERO};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::spacetime::{
    partial_derivative, partial_derivative_richardson, Axis, DiffMode, Event, DEFAULT_STEP_RATIO,
};

/// Declarative description of a catalog field.
#[derive(Debug, Clone, PartialEq)]
pub enum CatalogSpec {
    /// mu = 1 + grav*M/(r c^2), static.
    PointMass { mass: f64 },
    /// nu = 1 - i*grav*e/(lambda r c^2), static.
    PointCharge { charge: f64 },
    /// mu = nu = 1, u = (x2 w, -x1 w, 0).
    RotatingFrame { omega: f64 },
    /// mu = nu = 1, u constant.
    UniformMotion { velocity: [f64; 3] },
    /// mu = 1 + a·x/c^2, static.
    UniformGravity { accel: [f64; 3] },
    /// u = i*(x2 W, -x1 W, 0): imaginary angular velocity, i.e. a uniform
    /// magnetic sector. The real velocity part is zero everywhere.
    ImaginaryRotation { omega: f64 },
    /// Pointwise product of the children's potentials; at most one child
    /// may carry a velocity field.
    Product(Vec<CatalogSpec>),
}

impl CatalogSpec {
    /// Number of constituents (recursively) with a non-vanishing velocity field.
    fn mover_count(&self) -> usize {
        match self {
            CatalogSpec::RotatingFrame { .. } | CatalogSpec::ImaginaryRotation { .. } => 1,
            CatalogSpec::UniformMotion { velocity } => {
                usize::from(velocity.iter().any(|v| *v != 0.0))
            }
            CatalogSpec::Product(children) => children.iter().map(|c| c.mover_count()).sum(),
            _ => 0,
        }
    }

    fn params_finite(&self) -> bool {
        match self {
            CatalogSpec::PointMass { mass } => mass.is_finite(),
            CatalogSpec::PointCharge { charge } => charge.is_finite(),
            CatalogSpec::RotatingFrame { omega } | CatalogSpec::ImaginaryRotation { omega } => {
                omega.is_finite()
            }
            CatalogSpec::UniformMotion { velocity } => velocity.iter().all(|v| v.is_finite()),
            CatalogSpec::UniformGravity { accel } => accel.iter().all(|a| a.is_finite()),
            CatalogSpec::Product(children) => children.iter().all(|c| c.params_finite()),
        }
    }

    pub fn validate(&self, constants: &PhysicalConstants) -> Result<()> {
        if !self.params_finite() {
            return Err(Error::param("field", "non-finite parameter"));
        }
        if self.mover_count() > 1 {
            return Err(Error::MultipleMovers);
        }
        if let CatalogSpec::UniformMotion { velocity } = self {
            let speed = (velocity.iter().map(|v| v * v).sum::<f64>()).sqrt();
            if speed >= constants.c {
                return Err(Error::Superluminal {
                    speed,
                    c: constants.c,
                });
            }
        }
        if let CatalogSpec::Product(children) = self {
            if children.len() < 2 {
                return Err(Error::param("field", "product needs at least 2 children"));
            }
            for c in children {
                c.validate(constants)?;
            }
        }
        Ok(())
    }

    /// The fields exercised by the seeded invariant suite.
    pub fn default_catalog() -> Vec<CatalogSpec> {
        vec![
            CatalogSpec::PointMass { mass: 1e-3 },
            CatalogSpec::PointCharge { charge: 1e-3 },
            CatalogSpec::RotatingFrame { omega: 0.1 },
            CatalogSpec::UniformMotion {
                velocity: [0.3, -0.1, 0.05],
            },
            CatalogSpec::UniformGravity {
                accel: [1e-3, 0.0, 5e-4],
            },
            CatalogSpec::ImaginaryRotation { omega: 0.1 },
            CatalogSpec::Product(vec![
                CatalogSpec::PointMass { mass: 1e-3 },
                CatalogSpec::PointCharge { charge: 1e-3 },
            ]),
        ]
    }
}

/// Pointwise data needed to assemble U and its derivatives.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FieldSample {
    /// Combined complex potential w = mu * nu.
    pub w: C64,
    /// (d/dx1, d/dx2, d/dx3, d/dt) of w.
    pub grad_w: [C64; 4],
    /// Source velocity; imaginary components encode the magnetic sector.
    pub u: [C64; 3],
    /// u_jac[k][q] = du_k / d(x1,x2,x3,t)[q].
    pub u_jac: [[C64; 4]; 3],
}

impl FieldSample {
    fn still(w: C64, grad_w: [C64; 4]) -> Self {
        FieldSample {
            w,
            grad_w,
            u: [ZERO; 3],
            u_jac: [[ZERO; 4]; 3],
        }
    }
}

/// An evaluable potential field with its constants and differentiation scale.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialField {
    spec: CatalogSpec,
    constants: PhysicalConstants,
    char_length: f64,
    gauge: f64,
}

/// Builds a field from its catalog description.
pub fn make_field(spec: CatalogSpec, constants: PhysicalConstants) -> Result<PotentialField> {
    spec.validate(&constants)?;
    Ok(PotentialField {
        spec,
        constants,
        char_length: 1.0,
        gauge: 1.0,
    })
}

impl PotentialField {
    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    pub fn spec(&self) -> &CatalogSpec {
        &self.spec
    }

    pub fn char_length(&self) -> f64 {
        self.char_length
    }

    pub fn lambda(&self) -> f64 {
        self.constants.lambda()
    }

    /// Default finite-difference step for this field.
    pub fn default_step(&self) -> f64 {
        DEFAULT_STEP_RATIO * self.char_length
    }

    pub fn with_char_length(mut self, length: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::param("char_length", "must be positive and finite"));
        }
        self.char_length = length;
        Ok(self)
    }

    /// Applies the gauge transformation mu -> C*mu.
    pub fn with_gauge(mut self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::param("gauge", "must be positive and finite"));
        }
        self.gauge = factor;
        Ok(self)
    }

    pub(crate) fn sample(&self, e: &Event) -> Result<FieldSample> {
        let mut s = sample_spec(&self.spec, &self.constants, e)?;
        if self.gauge != 1.0 {
            s.w *= self.gauge;
            for g in &mut s.grad_w {
                *g *= self.gauge;
            }
        }
        Ok(s)
    }

    /// Combined complex potential mu*nu at the event.
    pub(crate) fn sample_w(&self, e: &Event) -> Result<C64> {
        Ok(self.sample(e)?.w)
    }

    pub(crate) fn sample_w_u(&self, e: &Event) -> Result<(C64, [C64; 3])> {
        let s = self.sample(e)?;
        Ok((s.w, s.u))
    }

    /// Gravitational potential mu = Re(mu*nu).
    pub fn mu(&self, e: &Event) -> Result<f64> {
        Ok(self.sample(e)?.w.re)
    }

    /// Imaginary part V of the charge potential nu = 1 + iV.
    pub fn nu_im(&self, e: &Event) -> Result<f64> {
        let w = self.sample(e)?.w;
        if w.re == 0.0 {
            return Err(Error::Degenerate {
                context: "mu vanished while splitting mu*nu",
            });
        }
        Ok(w.im / w.re)
    }

    /// Source velocity at the event (complex-capable).
    pub fn velocity(&self, e: &Event) -> Result<[C64; 3]> {
        Ok(self.sample(e)?.u)
    }

    /// The 4-vector potential U = mu*nu/sqrt(1-u^2/c^2) * (u/(ic), 1).
    pub fn evaluate_u(&self, e: &Event) -> Result<FourVector> {
        let s = self.sample(e)?;
        self.assemble_u(e, &s)
    }

    fn assemble_u(&self, e: &Event, s: &FieldSample) -> Result<FourVector> {
        let c = self.constants.c;
        let real_speed = s.u.iter().map(|z| z.re * z.re).sum::<f64>().sqrt();
        if real_speed >= c {
            return Err(Error::Superluminal {
                speed: real_speed,
                c,
            });
        }
        if s.w.re <= 0.0 {
            return Err(Error::NonPositiveMu { mu: s.w.re, at: *e });
        }
        let g = lorentz_factor(&s.u, c);
        let over_ic = C64::new(0.0, -1.0 / c); // 1/(ic)
        let u4 = FourVector([
            s.w * g * s.u[0] * over_ic,
            s.w * g * s.u[1] * over_ic,
            s.w * g * s.u[2] * over_ic,
            s.w * g,
        ]);
        if !u4.is_finite() {
            return Err(Error::NonFinite {
                context: "evaluate_u",
            });
        }
        Ok(u4)
    }

    /// J[p][q] = dU_p/dx^q with the x4 = ict convention on axis 4.
    pub fn u_jacobian(&self, e: &Event, mode: DiffMode) -> Result<Matrix4> {
        match mode {
            DiffMode::Analytic => self.u_jacobian_analytic(e),
            DiffMode::Central { step } => self.u_jacobian_fd(e, step, false),
            DiffMode::Richardson { step } => self.u_jacobian_fd(e, step, true),
        }
    }

    fn u_jacobian_analytic(&self, e: &Event) -> Result<Matrix4> {
        let s = self.sample(e)?;
        let c = self.constants.c;
        let g = lorentz_factor(&s.u, c);
        let over_ic = C64::new(0.0, -1.0 / c);
        let dir = [s.u[0] * over_ic, s.u[1] * over_ic, s.u[2] * over_ic, ONE];
        let mut jac = Matrix4::zero();
        for q in 0..4 {
            // axis q=3 is x4: (1/(ic)) d/dt applied to every ingredient
            let x4 = q == 3;
            let conv = if x4 { over_ic } else { ONE };
            let dw = s.grad_w[q] * conv;
            let du = [
                s.u_jac[0][q] * conv,
                s.u_jac[1][q] * conv,
                s.u_jac[2][q] * conv,
            ];
            let u_du = s.u[0] * du[0] + s.u[1] * du[1] + s.u[2] * du[2];
            let dg = g * g * g * u_du / (c * c);
            for p in 0..4 {
                let ddir = if p < 3 { du[p] * over_ic } else { ZERO };
                jac.0[p][q] = dw * g * dir[p] + s.w * dg * dir[p] + s.w * g * ddir;
            }
        }
        if !jac.is_finite() {
            return Err(Error::NonFinite {
                context: "u_jacobian",
            });
        }
        Ok(jac)
    }

    fn u_jacobian_fd(&self, e: &Event, step: f64, richardson: bool) -> Result<Matrix4> {
        let c = self.constants.c;
        let mut jac = Matrix4::zero();
        for p in 0..4 {
            let component = |ev: &Event| Ok(self.evaluate_u(ev)?[p]);
            for q in 0..4 {
                let axis = Axis::from_index(q);
                // time displacement step/c keeps the x4 step commensurate
                // with the spatial one
                let h = if q == 3 { step / c } else { step };
                jac.0[p][q] = if richardson {
                    partial_derivative_richardson(component, e, axis, h, c)?
                } else {
                    partial_derivative(component, e, axis, h, c)?
                };
            }
        }
        Ok(jac)
    }
}

fn lorentz_factor(u: &[C64; 3], c: f64) -> C64 {
    let u2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    // principal branch; catalog fields keep the argument near the positive
    // real axis
    ONE / (ONE - u2 / (c * c)).sqrt()
}

fn sample_spec(
    spec: &CatalogSpec,
    constants: &PhysicalConstants,
    e: &Event,
) -> Result<FieldSample> {
    let c2 = constants.c * constants.c;
    match spec {
        CatalogSpec::PointMass { mass } => {
            let r = e.radius();
            if r == 0.0 {
                return Err(Error::Singularity { at: *e });
            }
            let gm = constants.grav * mass / c2;
            let w = C64::new(1.0 + gm / r, 0.0);
            let mut grad = [ZERO; 4];
            for (k, g) in grad.iter_mut().enumerate().take(3) {
                *g = C64::new(-gm * e.x[k] / (r * r * r), 0.0);
            }
            Ok(FieldSample::still(w, grad))
        }
        CatalogSpec::PointCharge { charge } => {
            let r = e.radius();
            if r == 0.0 {
                return Err(Error::Singularity { at: *e });
            }
            // nu = 1 - i*grav*q/(lambda r c^2); the grav factor makes the
            // charge potential the exact imaginary-mass image of a point
            // mass with M = q/lambda
            let k = constants.grav * charge / (constants.lambda() * c2);
            let w = C64::new(1.0, -k / r);
            let mut grad = [ZERO; 4];
            for (q, g) in grad.iter_mut().enumerate().take(3) {
                *g = C64::new(0.0, k * e.x[q] / (r * r * r));
            }
            Ok(FieldSample::still(w, grad))
        }
        CatalogSpec::RotatingFrame { omega } => {
            let mut s = FieldSample::still(ONE, [ZERO; 4]);
            s.u = [
                C64::new(e.x[1] * omega, 0.0),
                C64::new(-e.x[0] * omega, 0.0),
                ZERO,
            ];
            s.u_jac[0][1] = C64::new(*omega, 0.0);
            s.u_jac[1][0] = C64::new(-*omega, 0.0);
            Ok(s)
        }
        CatalogSpec::UniformMotion { velocity } => {
            let mut s = FieldSample::still(ONE, [ZERO; 4]);
            s.u = [
                C64::new(velocity[0], 0.0),
                C64::new(velocity[1], 0.0),
                C64::new(velocity[2], 0.0),
            ];
            Ok(s)
        }
        CatalogSpec::UniformGravity { accel } => {
            let dot = accel[0] * e.x[0] + accel[1] * e.x[1] + accel[2] * e.x[2];
            let w = C64::new(1.0 + dot / c2, 0.0);
            let grad = [
                C64::new(accel[0] / c2, 0.0),
                C64::new(accel[1] / c2, 0.0),
                C64::new(accel[2] / c2, 0.0),
                ZERO,
            ];
            Ok(FieldSample::still(w, grad))
        }
        CatalogSpec::ImaginaryRotation { omega } => {
            let mut s = FieldSample::still(ONE, [ZERO; 4]);
            s.u = [
                C64::new(0.0, e.x[1] * omega),
                C64::new(0.0, -e.x[0] * omega),
                ZERO,
            ];
            s.u_jac[0][1] = C64::new(0.0, *omega);
            s.u_jac[1][0] = C64::new(0.0, -*omega);
            Ok(s)
        }
        CatalogSpec::Product(children) => {
            let samples = children
                .iter()
                .map(|c| sample_spec(c, constants, e))
                .collect::<Result<Vec<_>>>()?;
            let mut w = ONE;
            for s in &samples {
                w *= s.w;
            }
            let mut grad = [ZERO; 4];
            for (i, s) in samples.iter().enumerate() {
                let mut rest = ONE;
                for (j, other) in samples.iter().enumerate() {
                    if i != j {
                        rest *= other.w;
                    }
                }
                for q in 0..4 {
                    grad[q] += s.grad_w[q] * rest;
                }
            }
            let mut out = FieldSample::still(w, grad);
            // construction guarantees at most one mover
            for s in &samples {
                if s.u.iter().any(|z| *z != ZERO) {
                    out.u = s.u;
                    out.u_jac = s.u_jac;
                    break;
                }
            }
            Ok(out)
        }
    }
}

/// The unique (u, mu, nu) split of a valid unified potential vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecomposedPotential {
    pub velocity: [f64; 3],
    pub mu: f64,
    pub nu_im: f64,
}

/// Inverts `evaluate_u`: recovers the real 3-velocity and the mu/nu split.
pub fn decompose_u(u: &FourVector, tol: f64, c: f64) -> Result<DecomposedPotential> {
    let u4 = u[3];
    if u4.norm() == 0.0 {
        return Err(Error::Degenerate {
            context: "U4 = 0 in decomposition",
        });
    }
    let mut velocity = [0.0; 3];
    for k in 0..3 {
        let ratio = C64::new(0.0, 1.0) * u[k] / u4;
        if ratio.im.abs() > tol {
            return Err(Error::RealityViolation {
                residue: ratio.im.abs(),
                tol,
            });
        }
        velocity[k] = c * ratio.re;
    }
    let speed2 = velocity.iter().map(|v| v * v).sum::<f64>();
    if speed2 >= c * c {
        return Err(Error::Superluminal {
            speed: speed2.sqrt(),
            c,
        });
    }
    let p = u4 * (1.0 - speed2 / (c * c)).sqrt();
    if p.re == 0.0 {
        return Err(Error::Degenerate {
            context: "mu vanished in decomposition",
        });
    }
    Ok(DecomposedPotential {
        velocity,
        mu: p.re,
        nu_im: p.im / p.re,
    })
}

/// Superposition of two gravitational potentials is their product.
pub fn superpose_mu(mu1: f64, mu2: f64) -> f64 {
    mu1 * mu2
}

/// Superposition of two charge potentials 1+iV1, 1+iV2: the combined
/// charge potential V and the induced gravitational factor 1 - V1*V2.
pub fn superpose_nu(v1: f64, v2: f64) -> Result<(f64, f64)> {
    let mu_induced = 1.0 - v1 * v2;
    if mu_induced == 0.0 {
        return Err(Error::SingularSuperposition);
    }
    Ok(((v1 + v2) / mu_induced, mu_induced))
}
