//! Tensors derived from the 4-vector potential: the antisymmetrized field
//! tensor, its gravity/charge split, the velocity projector, the reduced
//! tensor feeding the nonlinear connection, the linear connection, and
//! residual checks for the field-equation analogs.

use num_complex::Complex64 as C64;

use crate::algebra::{FourVector, Matrix4, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::field::PotentialField;
use crate::spacetime::{DiffMode, Event};

/// Relative |u|/c above which a point no longer counts as comoving.
const FRAME_TOL: f64 = 1e-9;

/// The full set of tensors at one event for one test-particle velocity.
#[derive(Debug, Clone, Copy)]
pub struct FieldTensors {
    /// Antisymmetrized, potential-normalized derivative of U.
    pub field: Matrix4,
    /// Velocity-projected tensor with half-strength rotation entries.
    pub reduced: Matrix4,
    /// Orthogonal projector built from (U, V).
    pub projector: Matrix4,
    /// Nonlinear antisymmetric connection -P^t phi P.
    pub connection: Matrix4,
}

/// Gravity-sector and charge-sector parts of the field tensor,
/// `field = gravity + i*lambda*em`.
#[derive(Debug, Clone, Copy)]
pub struct SplitTensors {
    pub gravity: Matrix4,
    pub em: Matrix4,
}

/// Physical 3-vectors read off the field tensor in a comoving frame.
///
/// `accel` and `angular` are complex-capable: their imaginary parts carry
/// the charge sector (electric field as imaginary acceleration, magnetic
/// field as imaginary angular velocity). `e_field`/`h_field` are the real
/// charge-sector vectors obtained through the split.
#[derive(Debug, Clone, Copy)]
pub struct Kinematics {
    pub accel: [C64; 3],
    pub angular: [C64; 3],
    pub e_field: [f64; 3],
    pub h_field: [f64; 3],
}

/// The four matrices of the linear connection, indexed by the direction
/// they contract with: `S ≈ Σ_s gamma[s] V_s`.
#[derive(Debug, Clone, Copy)]
pub struct LinearConnection {
    pub gamma: [Matrix4; 4],
}

#[derive(Debug, Clone, Copy)]
pub struct MaxwellResiduals {
    /// Worst cyclic-identity violation over index triples.
    pub cyclic: f64,
    /// Divergence of the weighted field tensor; the vacuum source.
    pub source: FourVector,
}

/// Field tensor Phi_pq = (dU_p/dx^q - dU_q/dx^p) / (mu*nu).
///
/// The upper triangle is computed and mirrored, so antisymmetry is exact.
pub fn field_tensor(f: &PotentialField, e: &Event, mode: DiffMode) -> Result<Matrix4> {
    let w = f.sample_w(e)?;
    if w.norm() == 0.0 {
        return Err(Error::Degenerate {
            context: "mu*nu vanished in field tensor",
        });
    }
    let jac = f.u_jacobian(e, mode)?;
    let mut phi = Matrix4::zero();
    for p in 0..4 {
        for q in (p + 1)..4 {
            let v = (jac.0[p][q] - jac.0[q][p]) / w;
            phi.0[p][q] = v;
            phi.0[q][p] = -v;
        }
    }
    if !phi.is_finite() {
        return Err(Error::NonFinite {
            context: "field_tensor",
        });
    }
    Ok(phi)
}

/// Splits the field tensor into its gravity and charge sectors along the
/// entry pattern: space-space entries are imaginary in the gravity sector
/// and real in the charge sector; space-time entries the other way around.
pub fn split_field_tensor(phi: &Matrix4, lambda: f64) -> Result<SplitTensors> {
    if !(lambda > 0.0) {
        return Err(Error::param("lambda", "must be positive"));
    }
    let mut gravity = Matrix4::zero();
    let mut em = Matrix4::zero();
    for p in 0..4 {
        for q in (p + 1)..4 {
            let z = phi.0[p][q];
            let (g, m) = if q < 3 {
                (C64::new(0.0, z.im), C64::new(0.0, -z.re / lambda))
            } else {
                (C64::new(z.re, 0.0), C64::new(z.im / lambda, 0.0))
            };
            gravity.0[p][q] = g;
            gravity.0[q][p] = -g;
            em.0[p][q] = m;
            em.0[q][p] = -m;
        }
    }
    Ok(SplitTensors { gravity, em })
}

/// Reads acceleration, angular velocity and the charge-sector E/H vectors
/// off a field tensor expressed at a comoving point (U = (0,0,0,mu*nu)).
pub fn extract_kinematics(phi: &Matrix4, lambda: f64, c: f64) -> Result<Kinematics> {
    let split = split_field_tensor(phi, lambda)?;
    let c2 = c * c;
    let half_c_over_i = C64::new(0.0, -0.5 * c); // c/(2i)
    let accel = [
        phi.0[3][0] * c2,
        phi.0[3][1] * c2,
        phi.0[3][2] * c2,
    ];
    let angular = [
        half_c_over_i * phi.0[2][1],
        half_c_over_i * phi.0[0][2],
        half_c_over_i * phi.0[1][0],
    ];
    let e_field = [
        (split.em.0[0][3] * c2).re,
        (split.em.0[1][3] * c2).re,
        (split.em.0[2][3] * c2).re,
    ];
    let mi_c2 = C64::new(0.0, -c2); // -i c^2
    let h_field = [
        (mi_c2 * split.em.0[1][2]).re,
        (mi_c2 * split.em.0[2][0]).re,
        (mi_c2 * split.em.0[0][1]).re,
    ];
    Ok(Kinematics {
        accel,
        angular,
        e_field,
        h_field,
    })
}

/// Checked variant: verifies the point is comoving (u = 0) before reading
/// the entry pattern.
pub fn kinematics_at(f: &PotentialField, e: &Event, mode: DiffMode) -> Result<Kinematics> {
    let u = f.velocity(e)?;
    let speed = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let c = f.constants().c;
    if speed > FRAME_TOL * c {
        return Err(Error::FrameError {
            speed_ratio: speed / c,
        });
    }
    let phi = field_tensor(f, e, mode)?;
    extract_kinematics(&phi, f.lambda(), c)
}

/// Orthogonal projector built from the potential U and a unit 4-velocity V.
pub fn projector(u: &FourVector, v: &FourVector) -> Result<Matrix4> {
    let vv = v.dot(v);
    let norm_defect = (vv - ONE).norm();
    if norm_defect > 1e-10 {
        return Err(Error::UnnormalizedVelocity {
            defect: norm_defect,
        });
    }
    let mu = u.dot(u).sqrt(); // principal square root
    let denom = mu + u.dot(v);
    if denom.norm() <= 1e-14 * mu.norm().max(1.0) {
        return Err(Error::SingularProjector {
            denom: denom.norm(),
        });
    }
    let mut p = Matrix4::identity();
    let core = Matrix4::outer(v, v)
        .scaled(mu)
        .add(&Matrix4::outer(v, u))
        .add(&Matrix4::outer(u, v))
        .add(&Matrix4::outer(u, u).scaled(ONE / mu));
    p = p.sub(&core.scaled(ONE / denom));
    p = p.add(&Matrix4::outer(v, u).scaled(C64::new(2.0, 0.0) / mu));
    if !p.is_finite() {
        return Err(Error::NonFinite {
            context: "projector",
        });
    }
    Ok(p)
}

/// The velocity-projected tensor
/// phi = Phi/2 - (U_i U_k Phi_jk - U_j U_k Phi_ik) / (2 mu^2),
/// which keeps acceleration entries and halves rotation entries.
pub fn reduced_field_tensor(phi: &Matrix4, u: &FourVector) -> Result<Matrix4> {
    let mu2 = u.dot(u);
    if mu2.norm() == 0.0 {
        return Err(Error::Degenerate {
            context: "dot(U,U) = 0 in reduced tensor",
        });
    }
    let z = phi.apply(u); // z_j = Phi_jk U_k
    let half = C64::new(0.5, 0.0);
    let scale = half / mu2;
    let mut out = Matrix4::zero();
    for p in 0..4 {
        for q in (p + 1)..4 {
            let v = half * phi.0[p][q] - scale * (u.0[p] * z.0[q] - u.0[q] * z.0[p]);
            out.0[p][q] = v;
            out.0[q][p] = -v;
        }
    }
    Ok(out)
}

/// Nonlinear antisymmetric connection S = -P^t phi P.
pub fn nonlinear_connection(reduced: &Matrix4, projector: &Matrix4) -> Matrix4 {
    projector
        .transpose()
        .mat_mul(reduced)
        .mat_mul(projector)
        .scaled(C64::new(-1.0, 0.0))
}

/// Convenience bundle of all four tensors at one event.
pub fn field_tensors_at(
    f: &PotentialField,
    e: &Event,
    v: &FourVector,
    mode: DiffMode,
) -> Result<FieldTensors> {
    let phi = field_tensor(f, e, mode)?;
    let u = f.evaluate_u(e)?;
    let reduced = reduced_field_tensor(&phi, &u)?;
    let p = projector(&u, v)?;
    let connection = nonlinear_connection(&reduced, &p);
    Ok(FieldTensors {
        field: phi,
        reduced,
        projector: p,
        connection,
    })
}

/// The four linear-connection matrices built from comoving kinematics.
pub fn linear_connection(kin: &Kinematics, c: f64) -> LinearConnection {
    let c2 = C64::new(c * c, 0.0);
    let a = [kin.accel[0] / c2, kin.accel[1] / c2, kin.accel[2] / c2];
    let iw = [
        I * kin.angular[0] / c,
        I * kin.angular[1] / c,
        I * kin.angular[2] / c,
    ];
    let g1 = Matrix4([
        [ZERO, a[1], a[2], ZERO],
        [-a[1], ZERO, ZERO, -iw[2]],
        [-a[2], ZERO, ZERO, iw[1]],
        [ZERO, iw[2], -iw[1], ZERO],
    ]);
    let g2 = Matrix4([
        [ZERO, -a[0], ZERO, iw[2]],
        [a[0], ZERO, a[2], ZERO],
        [ZERO, -a[2], ZERO, -iw[0]],
        [-iw[2], ZERO, iw[0], ZERO],
    ]);
    let g3 = Matrix4([
        [ZERO, ZERO, -a[0], -iw[1]],
        [ZERO, ZERO, -a[1], iw[0]],
        [a[0], a[1], ZERO, ZERO],
        [iw[1], -iw[0], ZERO, ZERO],
    ]);
    let g4 = Matrix4([
        [ZERO, iw[2], -iw[1], a[0]],
        [-iw[2], ZERO, iw[0], a[1]],
        [iw[1], -iw[0], ZERO, a[2]],
        [-a[0], -a[1], -a[2], ZERO],
    ]);
    LinearConnection {
        gamma: [g1, g2, g3, g4],
    }
}

/// Contraction Σ_s gamma[s] V_s of the linear connection with a 4-velocity.
pub fn linear_connection_contracted(conn: &LinearConnection, v: &FourVector) -> Matrix4 {
    let mut out = Matrix4::zero();
    for s in 0..4 {
        out = out.add(&conn.gamma[s].scaled(v.0[s]));
    }
    out
}

/// The electromagnetic 4-potential carried by the charge sector:
/// A_k = i u_k c mu Im(nu) / (sqrt(1-u^2/c^2) lambda),
/// A_4 = -c^2 mu Im(nu) / (sqrt(1-u^2/c^2) lambda).
pub fn em_four_potential(f: &PotentialField, e: &Event) -> Result<FourVector> {
    let (w, u) = f.sample_w_u(e)?;
    let c = f.constants().c;
    let lambda = f.lambda();
    let u2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    let g = ONE / (ONE - u2 / (c * c)).sqrt();
    // mu * Im(nu) = Im(w) exactly
    let mu_im_nu = w.im;
    let scale = g * (mu_im_nu / lambda);
    let a = FourVector([
        I * u[0] * c * scale,
        I * u[1] * c * scale,
        I * u[2] * c * scale,
        -scale * (c * c),
    ]);
    if !a.is_finite() {
        return Err(Error::NonFinite {
            context: "em_four_potential",
        });
    }
    Ok(a)
}

/// Second route to the charge-sector tensor: antisymmetrized derivative of
/// the EM 4-potential, Psi_pq = (dA_q/dx^p - dA_p/dx^q) / c^2, evaluated by
/// central differences so it stays independent of the analytic path.
pub fn em_tensor_from_potential(f: &PotentialField, e: &Event, step: f64) -> Result<Matrix4> {
    let c = f.constants().c;
    let jac = matrix_of(|ev| em_four_potential(f, ev), e, step, c)?;
    let c2 = C64::new(c * c, 0.0);
    let mut psi = Matrix4::zero();
    for p in 0..4 {
        for q in (p + 1)..4 {
            // jac[k][axis] = dA_k/dx^axis
            let v = (jac[q][p] - jac[p][q]) / c2;
            psi.0[p][q] = v;
            psi.0[q][p] = -v;
        }
    }
    Ok(psi)
}

/// Central-difference jacobian of a 4-vector field over the event axes.
fn matrix_of<F>(field: F, e: &Event, step: f64, c: f64) -> Result<[[C64; 4]; 4]>
where
    F: Fn(&Event) -> Result<FourVector>,
{
    use crate::spacetime::Axis;
    let mut jac = [[ZERO; 4]; 4];
    for q in 0..4 {
        let axis = Axis::from_index(q);
        let h = if q == 3 { step / c } else { step };
        let plus = field(&e.displaced(axis, h))?;
        let minus = field(&e.displaced(axis, -h))?;
        let conv = if q == 3 {
            // d/dx4 = (1/(ic)) d/dt
            C64::new(0.0, -1.0 / c) / (2.0 * h)
        } else {
            C64::new(1.0 / (2.0 * h), 0.0)
        };
        for k in 0..4 {
            jac[k][q] = (plus.0[k] - minus.0[k]) * conv;
        }
    }
    Ok(jac)
}

/// Residuals of the field-equation analogs in vacuum: the cyclic identity
/// and the divergence of the potential-weighted tensor, both by central
/// differences at the given step.
pub fn maxwell_residuals(f: &PotentialField, e: &Event, step: f64) -> Result<MaxwellResiduals> {
    let c = f.constants().c;
    let weighted = |ev: &Event| -> Result<Matrix4> {
        let w = f.sample_w(ev)?;
        Ok(field_tensor(f, ev, DiffMode::Analytic)?.scaled(w))
    };
    // dg[axis] = d(w*Phi)/dx^axis
    let mut dg = [Matrix4::zero(); 4];
    for q in 0..4 {
        use crate::spacetime::Axis;
        let axis = Axis::from_index(q);
        let h = if q == 3 { step / c } else { step };
        let plus = weighted(&e.displaced(axis, h))?;
        let minus = weighted(&e.displaced(axis, -h))?;
        let conv = if q == 3 {
            C64::new(0.0, -1.0 / c) / (2.0 * h)
        } else {
            C64::new(1.0 / (2.0 * h), 0.0)
        };
        dg[q] = plus.sub(&minus).scaled(conv);
    }
    let mut cyclic = 0.0f64;
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in (j + 1)..4 {
                let r = dg[k].0[i][j] + dg[i].0[j][k] + dg[j].0[k][i];
                cyclic = cyclic.max(r.norm());
            }
        }
    }
    let mut source = FourVector::zero();
    for i in 0..4 {
        let mut s = ZERO;
        for j in 0..4 {
            s += dg[j].0[i][j];
        }
        source.0[i] = s;
    }
    Ok(MaxwellResiduals { cyclic, source })
}

/// Max-norm of the trace-reversed Ricci contraction of the linear
/// connection, built numerically over a stencil. Zero through first order
/// for a vacuum weak field; what remains is quadratic in the field.
pub fn vacuum_ricci_residual(f: &PotentialField, e: &Event, step: f64) -> Result<f64> {
    use crate::spacetime::Axis;
    let c = f.constants().c;
    let gammas_at = |ev: &Event| -> Result<[Matrix4; 4]> {
        let kin = kinematics_at(f, ev, DiffMode::Analytic)?;
        Ok(linear_connection(&kin, c).gamma)
    };
    let g0 = gammas_at(e)?;
    let mut dgam = [[Matrix4::zero(); 4]; 4]; // [axis][s]
    for q in 0..4 {
        let axis = Axis::from_index(q);
        let h = if q == 3 { step / c } else { step };
        let plus = gammas_at(&e.displaced(axis, h))?;
        let minus = gammas_at(&e.displaced(axis, -h))?;
        let conv = if q == 3 {
            C64::new(0.0, -1.0 / c) / (2.0 * h)
        } else {
            C64::new(1.0 / (2.0 * h), 0.0)
        };
        for s in 0..4 {
            dgam[q][s] = plus[s].sub(&minus[s]).scaled(conv);
        }
    }
    // Gamma^a_{bc} = g0[c][a][b]; d_k Gamma^a_{bc} = dgam[k][c][a][b]
    let gam = |a: usize, b: usize, cc: usize| g0[cc].0[a][b];
    let dgm = |k: usize, a: usize, b: usize, cc: usize| dgam[k][cc].0[a][b];
    let mut ricci = Matrix4::zero();
    for j in 0..4 {
        for l in 0..4 {
            let mut t = ZERO;
            for k in 0..4 {
                t += dgm(k, k, j, l) - dgm(l, k, j, k);
                for s in 0..4 {
                    t += gam(k, s, k) * gam(s, j, l) - gam(k, s, l) * gam(s, j, k);
                }
            }
            ricci.0[j][l] = t;
        }
    }
    let mut trace = ZERO;
    for j in 0..4 {
        trace += ricci.0[j][j];
    }
    let half_trace = trace * C64::new(0.5, 0.0);
    let mut residual = 0.0f64;
    for j in 0..4 {
        for l in 0..4 {
            let mut v = ricci.0[j][l];
            if j == l {
                v -= half_trace;
            }
            residual = residual.max(v.norm());
        }
    }
    Ok(residual)
}
