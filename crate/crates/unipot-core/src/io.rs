//! Deterministic file output: trajectory CSV and report files, written
//! atomically (temp file + rename).

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::dynamics::{three_velocity, Trajectory};
use crate::experiments::Report;

/// Writes bytes through a sibling temp file and renames into place.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

/// Renders the trajectory as CSV with the fixed schema
/// `tau,x1,x2,x3,t,v1,v2,v3,normDrift`, rows in tau order, every value
/// printed with 17 significant digits so doubles round-trip bit-exactly.
pub fn trajectory_csv_string(t: &Trajectory, c: f64) -> crate::error::Result<String> {
    let mut out = String::from("tau,x1,x2,x3,t,v1,v2,v3,normDrift\n");
    for s in &t.samples {
        let v = three_velocity(&s.state.velocity, c)?;
        let e = &s.state.event;
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            s.tau, e.x[0], e.x[1], e.x[2], e.t, v[0], v[1], v[2], s.norm_drift
        ));
    }
    Ok(out)
}

pub fn write_trajectory_csv(t: &Trajectory, c: f64, path: &Path) -> crate::error::Result<()> {
    let body = trajectory_csv_string(t, c)?;
    atomic_write(path, body.as_bytes()).map_err(|e| crate::error::Error::Param {
        name: "path",
        reason: format!("{}: {e}", path.display()),
    })
}

pub fn write_report_csv(r: &Report, path: &Path) -> crate::error::Result<()> {
    atomic_write(path, r.to_csv_string().as_bytes()).map_err(|e| crate::error::Error::Param {
        name: "path",
        reason: format!("{}: {e}", path.display()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FourVector;
    use crate::dynamics::{ParticleState, TrajectorySample};
    use crate::spacetime::Event;

    #[test]
    fn empty_trajectory_is_header_only() {
        let t = Trajectory::default();
        let s = trajectory_csv_string(&t, 1.0).unwrap();
        assert_eq!(s, "tau,x1,x2,x3,t,v1,v2,v3,normDrift\n");
    }

    #[test]
    fn at_rest_sample_row() {
        let t = Trajectory {
            samples: vec![TrajectorySample {
                tau: 0.0,
                state: ParticleState::new(Event::origin(), FourVector::rest()),
                norm_drift: 0.0,
                audited_energy: 1.0,
            }],
        };
        let s = trajectory_csv_string(&t, 1.0).unwrap();
        let mut lines = s.lines();
        lines.next();
        let row = lines.next().unwrap();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 9);
        for f in &fields[5..9] {
            assert_eq!(f.parse::<f64>().unwrap(), 0.0);
        }
    }

    #[test]
    fn csv_round_trips_to_the_last_bit() {
        let v = [0.12345678901234567, -0.5, 0.25];
        let fv = crate::dynamics::four_velocity(v, 1.0).unwrap();
        let t = Trajectory {
            samples: vec![TrajectorySample {
                tau: 1.0 / 3.0,
                state: ParticleState::new(Event::new(0.1, 0.2, 0.3, 0.7), fv),
                norm_drift: 3.7e-15,
                audited_energy: 0.0,
            }],
        };
        let s = trajectory_csv_string(&t, 1.0).unwrap();
        let row: Vec<f64> = s
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|x| x.parse().unwrap())
            .collect();
        assert_eq!(row[0], 1.0 / 3.0);
        let back = crate::dynamics::three_velocity(&fv, 1.0).unwrap();
        assert_eq!(row[5], back[0]);
        assert_eq!(row[8], 3.7e-15);
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        atomic_write(&path, b"one").unwrap();
        atomic_write(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
        assert!(!path.with_extension("tmp").exists());
    }
}
