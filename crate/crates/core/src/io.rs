//! CSV output. Floats are written with 17 significant digits so that every
//! value round-trips exactly.

use std::io::Write;

use crate::error::{Error, Result};
use crate::iss::VerificationReport;
use crate::modal::Trajectory;
use crate::spectrum::{mode_pair, StringParams};
use crate::state::{mode_indices, StateVector};

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

pub const SPECTRUM_HEADER: [&str; 8] =
    ["k", "eps", "re_lambda", "im_lambda", "phi_norm", "pairing_abs", "gamma", "complex_branch"];

/// One row per mode `k <= k_max`, `ε = −1` before `ε = +1`.
pub fn write_spectrum_csv<W: Write>(w: W, params: &StringParams, k_max: usize) -> Result<()> {
    let mut out = writer(w);
    out.write_record(SPECTRUM_HEADER)?;
    for k in 0..=k_max {
        let (minus, plus) = mode_pair(params, k);
        for m in [minus, plus] {
            out.write_record([
                k.to_string(),
                m.index.eps.as_i32().to_string(),
                fmt_f64(m.lambda.re),
                fmt_f64(m.lambda.im),
                fmt_f64(m.phi_norm),
                fmt_f64(m.pairing.norm()),
                fmt_f64(m.gamma),
                u8::from(k < params.k0).to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub const TRAJECTORY_HEADER: [&str; 6] = ["t", "norm_H", "d_sup", "u_sup", "d_l2", "u_l2"];

/// Trajectory table preceded by a `# solver=...` line. Coefficient columns
/// `c_{k}_{eps}_re/im` follow when the trajectory stores them.
pub fn write_trajectory_csv<W: Write>(mut w: W, traj: &Trajectory) -> Result<()> {
    writeln!(w, "# solver={}", traj.solver.as_str())?;
    let mut out = writer(w);
    let mut header: Vec<String> = TRAJECTORY_HEADER.iter().map(|s| s.to_string()).collect();
    if let Some(first) = traj.coefficients.as_ref().and_then(|c| c.first()) {
        for idx in mode_indices(first.truncation()) {
            let eps = idx.eps.as_i32();
            header.push(format!("c_{}_{eps}_re", idx.k));
            header.push(format!("c_{}_{eps}_im", idx.k));
        }
    }
    out.write_record(&header)?;
    for i in 0..traj.len() {
        let mut row = vec![
            fmt_f64(traj.times[i]),
            fmt_f64(traj.h_norms[i]),
            fmt_f64(traj.d_sup[i]),
            fmt_f64(traj.u_sup[i]),
            fmt_f64(traj.d_l2[i]),
            fmt_f64(traj.u_l2[i]),
        ];
        if let Some(coeffs) = &traj.coefficients {
            for c in coeffs[i].values() {
                row.push(fmt_f64(c.re));
                row.push(fmt_f64(c.im));
            }
        }
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

pub const STATE_HEADER: [&str; 6] = ["x", "x1", "x1_prime_re", "x1_prime_im", "x2_re", "x2_im"];

/// Sampled state; the `x1` column is the real part of the integrated first component.
pub fn write_state_csv<W: Write>(w: W, state: &StateVector) -> Result<()> {
    let mut out = writer(w);
    out.write_record(STATE_HEADER)?;
    let x1 = state.x1();
    let grid = state.grid();
    for (j, ((a, da), b)) in x1.iter().zip(state.x1_prime()).zip(state.x2()).enumerate() {
        out.write_record([
            fmt_f64(grid.x(j)),
            fmt_f64(a.re),
            fmt_f64(da.re),
            fmt_f64(da.im),
            fmt_f64(b.re),
            fmt_f64(b.im),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub const DISCREPANCY_HEADER: [&str; 4] = ["t", "norm_spectral", "norm_fd", "rel_diff"];

/// `rel_diff = |n_fd − n_spectral| / n_spectral` (0 when both vanish).
pub fn write_discrepancy_csv<W: Write>(w: W, spectral: &Trajectory, fd: &Trajectory) -> Result<()> {
    if spectral.times != fd.times {
        return Err(Error::InvalidConfig("trajectories have different output times".into()));
    }
    let mut out = writer(w);
    out.write_record(DISCREPANCY_HEADER)?;
    for i in 0..spectral.len() {
        let (a, b) = (spectral.h_norms[i], fd.h_norms[i]);
        out.write_record([fmt_f64(spectral.times[i]), fmt_f64(a), fmt_f64(b), fmt_f64(relative_diff(a, b))])?;
    }
    out.flush()?;
    Ok(())
}

pub fn relative_diff(reference: f64, other: f64) -> f64 {
    let diff = (other - reference).abs();
    if diff == 0.0 {
        0.0
    } else {
        diff / reference.abs()
    }
}

pub const MARGINS_HEADER: [&str; 6] = ["t", "norm_H", "uniform_bound", "l2_bound", "uniform_margin", "l2_margin"];

pub fn write_margins_csv<W: Write>(w: W, report: &VerificationReport) -> Result<()> {
    let mut out = writer(w);
    out.write_record(MARGINS_HEADER)?;
    for m in &report.margins {
        out.write_record([
            fmt_f64(m.t),
            fmt_f64(m.norm),
            fmt_f64(m.uniform_bound),
            fmt_f64(m.l2_bound),
            fmt_f64(m.uniform_bound - m.norm),
            fmt_f64(m.l2_bound - m.norm),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::{simulate_spectral, SimulationConfig};
    use crate::state::Grid;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -4.37020615843064, 6.02214076e23, 5e-324] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn spectrum_rows_and_branch_marker() {
        let p = StringParams::new(4.0, 1.0).unwrap();
        let mut buf = Vec::new();
        write_spectrum_csv(&mut buf, &p, 3).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], SPECTRUM_HEADER.join(","));
        assert_eq!(lines.len(), 1 + 8);
        let marker: Vec<&str> = lines[1..].iter().map(|l| l.rsplit(',').next().unwrap()).collect();
        assert_eq!(marker, ["1", "1", "0", "0", "0", "0", "0", "0"]);
    }

    #[test]
    fn trajectory_csv_layout() {
        let p = StringParams::new(1.0, 2.0).unwrap();
        let mut cfg = SimulationConfig::new(p, StateVector::zero(Grid::new(64).unwrap()), 0.2, 0.1);
        cfg.truncation = 1;
        cfg.store_coefficients = true;
        let traj = simulate_spectral(&cfg).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &traj).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# solver=spectral");
        assert_eq!(
            lines[1],
            "t,norm_H,d_sup,u_sup,d_l2,u_l2,c_0_-1_re,c_0_-1_im,c_0_1_re,c_0_1_im,c_1_-1_re,c_1_-1_im,c_1_1_re,c_1_1_im"
        );
        assert_eq!(lines.len(), 2 + 3);
    }

    #[test]
    fn state_csv_layout() {
        let s = StateVector::zero(Grid::new(4).unwrap());
        let mut buf = Vec::new();
        write_state_csv(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), STATE_HEADER.join(","));
        assert_eq!(text.lines().count(), 6);
    }
}
