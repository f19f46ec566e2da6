//! Command-line runner: scenario-driven field dumps and trajectory
//! integration, named experiments, and the invariant suite.
//!
//! Exit codes: 0 success / all checks pass, 1 usage or configuration
//! error, 2 numerical failure or failed property.

mod scenario;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use scenario::{parse_doc, validate, Scenario};
use unipot_core::{
    coulomb_newton_lambda, cyclotron_check, field_tensors_at, four_velocity, integrate,
    invariant_suite, io, kinematics_at, light_deflection, linear_connection, make_field,
    perihelion_precession, rotating_frame_check, split_field_tensor, C64, CatalogSpec, DiffMode,
    Event, IntegrateOptions, Matrix4, Particle, ParticleState, PhysicalConstants, Report,
};

#[derive(Parser)]
#[command(
    name = "unipot",
    version,
    about = "Numerical laboratory for the complex 4-potential field theory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the potential and all derived tensors at one event
    Field(FieldArgs),
    /// Integrate a particle trajectory and write the CSV
    Integrate(IntegrateArgs),
    /// Run a named experiment and report measured vs reference values
    Experiment(ExperimentArgs),
    /// Run the seeded invariant suite over the field catalog
    Check(CheckArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Scenario config (TOML)
    #[arg(long)]
    config: PathBuf,
    /// Event "x1,x2,x3,t"; defaults to the scenario's initial state
    #[arg(long)]
    at: Option<String>,
    /// Output path (default: field.txt)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Override the scenario's unit system (si|scaled)
    #[arg(long)]
    units: Option<String>,
}

#[derive(Args)]
struct IntegrateArgs {
    /// Scenario config (TOML)
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path (default: scenario `output`, then trajectory.csv)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Override the scenario's unit system (si|scaled)
    #[arg(long)]
    units: Option<String>,
    /// Override the scenario seed
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(subcommand)]
    which: ExperimentCmd,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Light deflection by a point mass, extrapolated to v -> c
    Deflection {
        /// Field strength gm = grav M / (R c^2)
        #[arg(long, default_value_t = 1e-3)]
        gm: f64,
        /// Impact radius R
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Comma-separated speeds as fractions of c
        #[arg(long, default_value = "0.99,0.999,0.9999")]
        speeds: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Apsidal advance of a bound orbit vs the closed-form reference
    Perihelion {
        /// Field strength gm = grav M / (a c^2)
        #[arg(long, default_value_t = 1e-3)]
        gm: f64,
        /// Orbit eccentricity
        #[arg(long, default_value_t = 0.2)]
        ecc: f64,
        /// Number of orbits to integrate
        #[arg(long, default_value_t = 20)]
        orbits: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Centrifugal/Coriolis accelerations vs the classical oracle
    RotatingFrame {
        #[arg(long, default_value_t = 1e-5)]
        omega: f64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// In-frame velocity "v1,v2,v3"
        #[arg(long, default_value = "0,0,0")]
        velocity: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The charge-mass coupling and both inverse-square force laws
    CoulombNewton {
        /// Unit system (si|scaled)
        #[arg(long, default_value = "si")]
        units: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Charged-particle orbit in the imaginary-rotation field
    Cyclotron {
        #[arg(long, default_value_t = 2000.0)]
        charge: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        /// Imaginary angular velocity of the field
        #[arg(long, default_value_t = 0.5)]
        omega: f64,
        /// Launch speed as a fraction of c (nonrelativistic)
        #[arg(long, default_value_t = 0.01)]
        v0: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<scenario::ConfigError> for Failure {
    fn from(e: scenario::ConfigError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<unipot_core::Error> for Failure {
    fn from(e: unipot_core::Error) -> Self {
        match e {
            unipot_core::Error::Param { .. } => Failure::Usage(e.to_string()),
            other => Failure::Numeric(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let line = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .to_string();
            eprintln!("{line}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Field(args) => cmd_field(args),
        Command::Integrate(args) => cmd_integrate(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Check(args) => cmd_check(args),
    }
}

fn load_scenario(path: &Path, units: Option<&str>, seed: Option<u64>) -> Result<Scenario, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mut doc = parse_doc(&text)?;
    if let Some(u) = units {
        doc.units = u.to_string();
    }
    if let Some(s) = seed {
        doc.seed = s;
    }
    Ok(validate(&doc)?)
}

fn parse_triplet(text: &str, name: &'static str) -> Result<[f64; 3], Failure> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
    if parts.len() != 3 {
        return Err(Failure::Usage(format!("{name}: expected 3 components")));
    }
    Ok([parts[0], parts[1], parts[2]])
}

fn parse_event(text: &str) -> Result<Event, Failure> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("--at: {e}")))?;
    if parts.len() != 4 {
        return Err(Failure::Usage("--at: expected \"x1,x2,x3,t\"".to_string()));
    }
    Ok(Event::new(parts[0], parts[1], parts[2], parts[3]))
}

fn format_c(z: C64) -> String {
    format!("{:+.16e}{:+.16e}i", z.re, z.im)
}

fn push_matrix(out: &mut String, name: &str, m: &Matrix4) {
    out.push_str(name);
    out.push('\n');
    for row in &m.0 {
        out.push_str("  ");
        let cells: Vec<String> = row.iter().map(|z| format_c(*z)).collect();
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
}

fn cmd_field(args: FieldArgs) -> Result<(), Failure> {
    let sc = load_scenario(&args.config, args.units.as_deref(), None)?;
    let event = match &args.at {
        Some(text) => parse_event(text)?,
        None => sc.initial_event,
    };
    let field = make_field(sc.field.clone(), sc.constants)?;
    let c = sc.constants.c;
    let v = four_velocity(sc.initial_velocity, c)?;
    let u = field.evaluate_u(&event)?;
    let tensors = field_tensors_at(&field, &event, &v, DiffMode::Analytic)?;
    let em = split_field_tensor(&tensors.field, field.lambda())?.em;

    let mut out = String::new();
    out.push_str(&format!(
        "event: x1={:.16e} x2={:.16e} x3={:.16e} t={:.16e}\n",
        event.x[0], event.x[1], event.x[2], event.t
    ));
    out.push_str(&format!(
        "four_velocity: {}  {}  {}  {}\n",
        format_c(v[0]),
        format_c(v[1]),
        format_c(v[2]),
        format_c(v[3])
    ));
    out.push_str(&format!(
        "U: {}  {}  {}  {}\n",
        format_c(u[0]),
        format_c(u[1]),
        format_c(u[2]),
        format_c(u[3])
    ));
    push_matrix(&mut out, "field_tensor:", &tensors.field);
    push_matrix(&mut out, "reduced_tensor:", &tensors.reduced);
    push_matrix(&mut out, "projector:", &tensors.projector);
    push_matrix(&mut out, "connection:", &tensors.connection);
    push_matrix(&mut out, "em_tensor:", &em);
    match kinematics_at(&field, &event, DiffMode::Analytic) {
        Ok(kin) => {
            let conn = linear_connection(&kin, c);
            for (i, g) in conn.gamma.iter().enumerate() {
                push_matrix(&mut out, &format!("linear_connection_{}:", i + 1), g);
            }
            out.push_str(&format!(
                "accel: {}  {}  {}\n",
                format_c(kin.accel[0]),
                format_c(kin.accel[1]),
                format_c(kin.accel[2])
            ));
            out.push_str(&format!(
                "angular: {}  {}  {}\n",
                format_c(kin.angular[0]),
                format_c(kin.angular[1]),
                format_c(kin.angular[2])
            ));
            out.push_str(&format!(
                "e_field: {:.16e} {:.16e} {:.16e}\n",
                kin.e_field[0], kin.e_field[1], kin.e_field[2]
            ));
            out.push_str(&format!(
                "h_field: {:.16e} {:.16e} {:.16e}\n",
                kin.h_field[0], kin.h_field[1], kin.h_field[2]
            ));
        }
        Err(unipot_core::Error::FrameError { speed_ratio }) => {
            out.push_str(&format!(
                "linear_connection: unavailable (source velocity |u|/c = {speed_ratio:.3e} at this event; kinematics need a comoving point)\n"
            ));
        }
        Err(e) => return Err(e.into()),
    }
    let path = args.output.unwrap_or_else(|| PathBuf::from("field.txt"));
    io::atomic_write(&path, out.as_bytes())
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(())
}

fn cmd_integrate(args: IntegrateArgs) -> Result<(), Failure> {
    let sc = load_scenario(&args.config, args.units.as_deref(), args.seed)?;
    let field = make_field(sc.field.clone(), sc.constants)?;
    let particle = Particle::new(sc.particle_mass, sc.particle_charge)?;
    let c = sc.constants.c;
    let init = ParticleState::new(sc.initial_event, four_velocity(sc.initial_velocity, c)?);
    let traj = integrate(
        &init,
        &field,
        &particle,
        sc.model,
        sc.dtau,
        sc.n_steps,
        IntegrateOptions::default(),
    )?;
    let path = args
        .output
        .or_else(|| sc.output.clone().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("trajectory.csv"));
    io::write_trajectory_csv(&traj, c, &path)?;
    Ok(())
}

fn emit_report(report: &Report, output: Option<&Path>) -> Result<(), Failure> {
    let csv = report.to_csv_string();
    print!("{csv}");
    if let Some(path) = output {
        io::atomic_write(path, csv.as_bytes())
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    if report.all_pass() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .entries
            .iter()
            .filter(|e| !e.pass)
            .map(|e| e.name.as_str())
            .collect();
        Err(Failure::Numeric(format!(
            "{} check(s) failed: {}",
            failed.len(),
            failed.join(", ")
        )))
    }
}

fn cmd_experiment(args: ExperimentArgs) -> Result<(), Failure> {
    let (report, output) = match args.which {
        ExperimentCmd::Deflection {
            gm,
            radius,
            speeds,
            output,
        } => {
            let speeds: Vec<f64> = speeds
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| Failure::Usage(format!("--speeds: {e}")))?;
            (light_deflection(gm, radius, &speeds)?, output)
        }
        ExperimentCmd::Perihelion {
            gm,
            ecc,
            orbits,
            output,
        } => (perihelion_precession(gm, ecc, orbits)?, output),
        ExperimentCmd::RotatingFrame {
            omega,
            radius,
            velocity,
            output,
        } => {
            let v = parse_triplet(&velocity, "--velocity")?;
            (rotating_frame_check(omega, radius, v)?, output)
        }
        ExperimentCmd::CoulombNewton { units, output } => {
            let constants = match units.as_str() {
                "si" => PhysicalConstants::si(),
                "scaled" => PhysicalConstants::scaled(),
                other => {
                    return Err(Failure::Usage(format!(
                        "--units: unknown unit system '{other}' (expected si|scaled)"
                    )))
                }
            };
            (coulomb_newton_lambda(constants)?, output)
        }
        ExperimentCmd::Cyclotron {
            charge,
            mass,
            omega,
            v0,
            output,
        } => (cyclotron_check(charge, mass, omega, v0)?, output),
    };
    emit_report(&report, output.as_deref())
}

fn cmd_check(args: CheckArgs) -> Result<(), Failure> {
    let report = invariant_suite(&CatalogSpec::default_catalog(), args.samples, args.seed)?;
    emit_report(&report, args.output.as_deref())
}
