//! Spacetime events and numerical differentiation along the four axes.
//!
//! Events store real coordinates (x1, x2, x3, t); the complex coordinate
//! x4 = ict is never materialized. Derivatives along axis 4 displace t and
//! carry the analytic 1/(ic) factor.

use std::fmt;

use crate::algebra::C64;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Event {
    pub x: [f64; 3],
    pub t: f64,
}

impl Event {
    pub fn new(x1: f64, x2: f64, x3: f64, t: f64) -> Self {
        Event {
            x: [x1, x2, x3],
            t,
        }
    }

    pub fn origin() -> Self {
        Event::default()
    }

    /// Spatial distance from the coordinate origin.
    pub fn radius(&self) -> f64 {
        (self.x[0] * self.x[0] + self.x[1] * self.x[1] + self.x[2] * self.x[2]).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.iter().all(|v| v.is_finite()) && self.t.is_finite()
    }

    /// Displaced along a spatial axis (0..2) or in t (axis 3).
    pub fn displaced(&self, axis: Axis, h: f64) -> Event {
        let mut e = *self;
        match axis {
            Axis::X1 => e.x[0] += h,
            Axis::X2 => e.x[1] += h,
            Axis::X3 => e.x[2] += h,
            Axis::X4 => e.t += h,
        }
        e
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(x1={:.6e}, x2={:.6e}, x3={:.6e}, t={:.6e})",
            self.x[0], self.x[1], self.x[2], self.t
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X1,
    X2,
    X3,
    X4,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::X1, Axis::X2, Axis::X3, Axis::X4];

    pub fn index(self) -> usize {
        match self {
            Axis::X1 => 0,
            Axis::X2 => 1,
            Axis::X3 => 2,
            Axis::X4 => 3,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }
}

/// How field derivatives are evaluated.
///
/// Catalog fields carry analytic gradients, which is the default; the
/// finite-difference modes exist as an independent cross-check and for
/// fields evaluated through opaque closures.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DiffMode {
    #[default]
    Analytic,
    /// Central difference with the given step.
    Central { step: f64 },
    /// Two-step Richardson extrapolation (h and h/2).
    Richardson { step: f64 },
}

/// Ratio of the default finite-difference step to a field's characteristic length.
pub const DEFAULT_STEP_RATIO: f64 = 1e-6;

/// Central-difference partial derivative of a complex-valued function of an
/// event. For spatial axes: (f(e+h) - f(e-h)) / (2h). For axis 4 the
/// displacement is in t and the result carries the analytic 1/(ic) factor,
/// realizing d/dx4 = (1/(ic)) d/dt.
pub fn partial_derivative<F>(f: F, e: &Event, axis: Axis, h: f64, c: f64) -> Result<C64>
where
    F: Fn(&Event) -> Result<C64>,
{
    if !(h > 0.0) {
        return Err(Error::param("h", "step must be positive"));
    }
    let fp = f(&e.displaced(axis, h))?;
    let fm = f(&e.displaced(axis, -h))?;
    let mut d = (fp - fm) / C64::new(2.0 * h, 0.0);
    if axis == Axis::X4 {
        d /= C64::new(0.0, c);
    }
    if !(d.re.is_finite() && d.im.is_finite()) {
        return Err(Error::NonFinite {
            context: "partial_derivative",
        });
    }
    Ok(d)
}

/// Richardson-extrapolated derivative from steps h and h/2:
/// (4 D(h/2) - D(h)) / 3, one order better than plain central differences.
pub fn partial_derivative_richardson<F>(f: F, e: &Event, axis: Axis, h: f64, c: f64) -> Result<C64>
where
    F: Fn(&Event) -> Result<C64> + Copy,
{
    let coarse = partial_derivative(f, e, axis, h, c)?;
    let fine = partial_derivative(f, e, axis, h / 2.0, c)?;
    Ok((fine * C64::new(4.0, 0.0) - coarse) / C64::new(3.0, 0.0))
}
