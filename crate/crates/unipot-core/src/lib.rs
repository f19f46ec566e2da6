// index-style loops and comparisons below mirror tensor index algebra;
// negated comparisons double as NaN guards
#![allow(clippy::needless_range_loop)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Numerical laboratory for a scalar-potential theory of gravitation and
//! its complex-valued extension to electromagnetism.
//!
//! Everything is built from one object: the complex 4-vector potential U
//! under the x4 = ict convention. The crate derives the field tensors and
//! connections from U, integrates particle motion at three fidelity
//! levels, and ships experiments that check the classical limits
//! (light deflection, perihelion advance, rotating-frame accelerations,
//! the Coulomb/Newton coupling, and cyclotron orbits).

pub mod algebra;
pub mod constants;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod field;
pub mod io;
pub mod spacetime;
pub mod tensors;

pub use algebra::{FourVector, Matrix4, C64};
pub use constants::PhysicalConstants;
pub use dynamics::{
    acceleration, coordinate_acceleration, four_velocity, impulse, integrate, step_rk4,
    three_velocity, IntegrateOptions, MotionModel, Particle, ParticleState, Trajectory,
    TrajectorySample,
};
pub use error::{Error, Result};
pub use experiments::{
    coulomb_newton_lambda, cyclotron_check, invariant_suite, light_deflection,
    perihelion_precession, rotating_frame_check, Corruption, InvariantSuite, Report, ReportEntry,
};
pub use field::{
    decompose_u, make_field, superpose_mu, superpose_nu, CatalogSpec, DecomposedPotential,
    PotentialField,
};
pub use spacetime::{partial_derivative, partial_derivative_richardson, Axis, DiffMode, Event};
pub use tensors::{
    em_four_potential, em_tensor_from_potential, extract_kinematics, field_tensor,
    field_tensors_at, kinematics_at, linear_connection, linear_connection_contracted,
    maxwell_residuals, nonlinear_connection, projector, reduced_field_tensor, split_field_tensor,
    vacuum_ricci_residual, FieldTensors, Kinematics, LinearConnection, MaxwellResiduals,
    SplitTensors,
};

#[cfg(test)]
mod concurrency {
    // values are immutable after construction and safe to share across
    // threads; keep that statically checked
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::FourVector>();
        assert_send_sync::<crate::Matrix4>();
        assert_send_sync::<crate::Event>();
        assert_send_sync::<crate::PotentialField>();
        assert_send_sync::<crate::ParticleState>();
        assert_send_sync::<crate::Trajectory>();
        assert_send_sync::<crate::Report>();
        assert_send_sync::<crate::FieldTensors>();
    }
}
