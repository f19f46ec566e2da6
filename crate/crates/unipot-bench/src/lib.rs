//! Shared fixtures for the benchmark targets.

use unipot_core::{
    four_velocity, make_field, CatalogSpec, Event, FourVector, PhysicalConstants, PotentialField,
};

pub fn bench_field() -> PotentialField {
    make_field(
        CatalogSpec::Product(vec![
            CatalogSpec::PointMass { mass: 1e-3 },
            CatalogSpec::PointCharge { charge: 1e-3 },
        ]),
        PhysicalConstants::scaled(),
    )
    .unwrap()
}

pub fn bench_event() -> Event {
    Event::new(0.9, 0.4, -0.3, 0.1)
}

pub fn bench_velocity() -> FourVector {
    four_velocity([0.02, -0.01, 0.005], 1.0).unwrap()
}
