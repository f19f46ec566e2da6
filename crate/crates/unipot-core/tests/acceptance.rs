//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).

use std::sync::OnceLock;
use std::time::Instant;

use unipot_core::{
    coulomb_newton_lambda, cyclotron_check, four_velocity, integrate, invariant_suite,
    io::trajectory_csv_string, light_deflection, make_field, perihelion_precession,
    rotating_frame_check, CatalogSpec, Event, IntegrateOptions, MotionModel, Particle,
    ParticleState, PhysicalConstants, Report,
};

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

/// The seeded algebraic/numerical suite at 100 samples, shared by the
/// criteria that read individual properties off it.
fn suite() -> &'static Report {
    static SUITE: OnceLock<Report> = OnceLock::new();
    SUITE.get_or_init(|| {
        invariant_suite(&CatalogSpec::default_catalog(), 100, 7).expect("invariant suite runs")
    })
}

fn entry(report: &Report, name: &str) -> (f64, f64, bool) {
    let e = report
        .entry(name)
        .unwrap_or_else(|| panic!("missing report entry {name}"));
    (e.measured, e.reference, e.pass)
}

#[test]
fn criterion_01_light_deflection() {
    let start = Instant::now();
    let report = light_deflection(1e-3, 1.0, &[0.99, 0.999, 0.9999]).expect("deflection runs");
    let elapsed = start.elapsed().as_secs_f64();
    let e = report.entry("deflection_extrapolated").unwrap();
    let in_budget = elapsed <= 60.0;
    verdict(
        "1 (light deflection)",
        e.pass && in_budget,
        &format!(
            "extrapolated {:.6e} vs 4e-3, rel {:.2e} (tol 2e-2), runtime {elapsed:.1}s (limit 60s)",
            e.measured, e.rel_error
        ),
    );
}

#[test]
fn criterion_02_perihelion_precession() {
    let start = Instant::now();
    let report = perihelion_precession(1e-3, 0.2, 20).expect("perihelion runs");
    let elapsed = start.elapsed().as_secs_f64();
    let full = report.entry("full_advance_per_orbit").unwrap();
    let newt = report.entry("newtonian_advance_fraction").unwrap();
    let in_budget = elapsed <= 120.0;
    verdict(
        "2 (perihelion)",
        full.pass && newt.pass && in_budget,
        &format!(
            "advance {:.6e} vs {:.6e} rad/orbit, rel {:.2e} (tol 1e-1); newtonian fraction {:.2e} (limit 5e-2); runtime {elapsed:.1}s (limit 120s)",
            full.measured, full.reference, full.rel_error, newt.measured
        ),
    );
}

#[test]
fn criterion_03_rotating_frame() {
    let centrifugal = rotating_frame_check(1e-5, 1.0, [0.0; 3]).unwrap();
    let coriolis = rotating_frame_check(1e-5, 1.0, [0.0, 1e-5, 0.0]).unwrap();
    let e1 = centrifugal.entry("acceleration").unwrap();
    let e2 = coriolis.entry("acceleration").unwrap();
    verdict(
        "3 (rotating frame)",
        e1.pass && e2.pass,
        &format!(
            "centrifugal rel {:.2e}, coriolis rel {:.2e} (tol 1e-8)",
            e1.rel_error, e2.rel_error
        ),
    );
}

#[test]
fn criterion_04_coulomb_newton_lambda() {
    let report = coulomb_newton_lambda(PhysicalConstants::si()).unwrap();
    let lambda = report.entry("lambda").unwrap();
    let newton = report.entry("newton_force").unwrap();
    let coulomb = report.entry("coulomb_force").unwrap();
    // the SI coupling evaluates to the documented 8.617e-11
    let close = (lambda.measured - 8.617e-11).abs() / 8.617e-11 <= 1e-3;
    verdict(
        "4 (coulomb-newton)",
        lambda.pass && newton.pass && coulomb.pass && close,
        &format!(
            "lambda {:.4e} (vs 8.617e-11), newton rel {:.2e}, coulomb rel {:.2e} (tol 1e-6)",
            lambda.measured, newton.rel_error, coulomb.rel_error
        ),
    );
}

#[test]
fn criterion_05_cyclotron() {
    // charge-dominated particle so the field's quadratic gravity sector
    // stays far below the tolerance; H = 1 in scaled units
    let report = cyclotron_check(2000.0, 1.0, 0.5, 0.01).unwrap();
    let freq = report.entry("frequency").unwrap();
    let radius = report.entry("radius").unwrap();
    let flip = report.entry("chirality_flip").unwrap();
    verdict(
        "5 (cyclotron)",
        freq.pass && radius.pass && flip.pass,
        &format!(
            "frequency rel {:.2e}, radius rel {:.2e} (tol 1e-4), chirality flips",
            freq.rel_error, radius.rel_error
        ),
    );
}

#[test]
fn criterion_06_algebraic_suite() {
    let report = suite();
    let names = [
        ("antisymmetry_field_tensor", 1e-12),
        ("antisymmetry_reduced_tensor", 1e-12),
        ("antisymmetry_connection", 1e-12),
        ("projector_orthogonality", 1e-12),
        ("gauge_invariance", 1e-12),
        ("impulse_identity", 1e-13),
        ("four_velocity_norm", 1e-12),
    ];
    let mut pass = true;
    let mut detail = String::new();
    for (name, tol) in names {
        let (measured, _, ok) = entry(report, name);
        pass &= ok;
        detail.push_str(&format!("{name} {measured:.2e} (tol {tol:.0e}); "));
    }
    verdict("6 (algebraic suite, 100 samples)", pass, &detail);
}

#[test]
fn criterion_07_linearization_scaling() {
    let (ratio, bound, pass) = entry(suite(), "linearization_ratio");
    verdict(
        "7 (linearization)",
        pass,
        &format!("worst residual shrink ratio {ratio:.3} (must be >= {bound})"),
    );
}

#[test]
fn criterion_08_maxwell_vacuum_residuals() {
    let (cyclic, cyclic_bound, p1) = entry(suite(), "maxwell_cyclic");
    let (source, source_bound, p2) = entry(suite(), "maxwell_source");
    verdict(
        "8 (maxwell residuals)",
        p1 && p2,
        &format!(
            "cyclic {cyclic:.2e} (FD bound {cyclic_bound:.0e}), source {source:.2e} (bound {source_bound:.1e})"
        ),
    );
}

#[test]
fn criterion_09_ricci_scaling() {
    let (ratio, bound, pass) = entry(suite(), "ricci_scaling");
    verdict(
        "9 (vacuum ricci scaling)",
        pass,
        &format!("residual shrink ratio {ratio:.3} on halving M (must be >= {bound})"),
    );
}

#[test]
fn criterion_10_norm_conservation_and_determinism() {
    let (drift, bound, p1) = entry(suite(), "norm_conservation");

    // byte-exact determinism of trajectory CSV and report output
    let constants = PhysicalConstants::scaled();
    let field = make_field(CatalogSpec::PointMass { mass: 1e-3 }, constants).unwrap();
    let particle = Particle::neutral(1.0).unwrap();
    let init = ParticleState::new(
        Event::new(1.0, 0.0, 0.0, 0.0),
        four_velocity([0.0, 1e-3f64.sqrt(), 0.0], 1.0).unwrap(),
    );
    let run = || {
        let traj = integrate(
            &init,
            &field,
            &particle,
            MotionModel::Full,
            0.05,
            400,
            IntegrateOptions::default(),
        )
        .unwrap();
        trajectory_csv_string(&traj, 1.0).unwrap()
    };
    let csv_same = run() == run();
    let report_same = {
        let fields = CatalogSpec::default_catalog();
        let a = invariant_suite(&fields, 5, 123).unwrap().to_csv_string();
        let b = invariant_suite(&fields, 5, 123).unwrap().to_csv_string();
        a == b
    };
    verdict(
        "10 (norm conservation + determinism)",
        p1 && csv_same && report_same,
        &format!(
            "drift {drift:.2e} over 1e4 steps (bound {bound:.0e}); CSV byte-identical: {csv_same}; report byte-identical: {report_same}"
        ),
    );
}
