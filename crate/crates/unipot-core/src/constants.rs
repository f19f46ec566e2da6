//! Physical constants, in SI or in the scaled system used by experiments.

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light [m/s].
    pub c: f64,
    /// Gravitational constant [m^3 kg^-1 s^-2].
    pub grav: f64,
    /// Vacuum permittivity [C^2 N^-1 m^-2].
    pub eps0: f64,
}

impl PhysicalConstants {
    /// CODATA values.
    pub const fn si() -> Self {
        PhysicalConstants {
            c: 299_792_458.0,
            grav: 6.674_30e-11,
            eps0: 8.854_187_812_8e-12,
        }
    }

    /// c = 1, grav = 1, eps0 = 1/(4 pi), so that lambda = 1.
    pub fn scaled() -> Self {
        PhysicalConstants {
            c: 1.0,
            grav: 1.0,
            eps0: 0.25 / PI,
        }
    }

    /// The charge-mass coupling lambda = sqrt(4 pi eps0 grav).
    pub fn lambda(&self) -> f64 {
        (4.0 * PI * self.eps0 * self.grav).sqrt()
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants::scaled()
    }
}
