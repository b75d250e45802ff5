use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use kvstring::io::{
    write_discrepancy_csv, write_margins_csv, write_spectrum_csv, write_state_csv, write_trajectory_csv,
};
use kvstring::iss::{asymptotic_check, AsymptoticCheck};
use kvstring::scenario::RandomSuite;
use kvstring::{certificate as build_certificate, simulate_fd, simulate_spectral, verify_trajectory, IssCertificate};
use kvstring::{ModalBasis, VerificationReport};

use crate::config::ExperimentConfig;
use crate::{CliError, SolverChoice};

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>, CliError> {
    let path = dir.join(name);
    File::create(&path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", path.display())))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<(), CliError> {
    let mut w = create(dir, name)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::Config(e.to_string()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(kvstring::Error::from)?;
    Ok(())
}

pub fn spectrum(cfg: &ExperimentConfig, out: &Path, k_max: usize) -> Result<(), CliError> {
    let params = cfg.string_params()?;
    write_spectrum_csv(create(out, "spectrum.csv")?, &params, k_max)?;
    Ok(())
}

pub fn certificate(cfg: &ExperimentConfig, out: &Path) -> Result<(), CliError> {
    let params = cfg.string_params()?;
    let cert = build_certificate(&params, cfg.verify.gamma_rel_tol)?;
    write_json(out, "certificate.json", &cert)
}

pub fn simulate(cfg: &ExperimentConfig, out: &Path, solver: SolverChoice) -> Result<(), CliError> {
    let sim = cfg.simulation_config()?;
    let spectral = match solver {
        SolverChoice::Spectral | SolverChoice::Both => Some(simulate_spectral(&sim)?),
        SolverChoice::Fd => None,
    };
    let fd = match solver {
        SolverChoice::Fd | SolverChoice::Both => Some(simulate_fd(&sim, &cfg.fd_config())?),
        SolverChoice::Spectral => None,
    };
    if let Some(traj) = &spectral {
        let mut shown = traj.clone();
        if !cfg.outputs.coefficients {
            shown.coefficients = None;
        }
        write_trajectory_csv(create(out, "trajectory_spectral.csv")?, &shown)?;
        if cfg.outputs.final_state {
            let basis = ModalBasis::new(sim.params, sim.truncation)?;
            let last = traj.coefficients.as_ref().and_then(|c| c.last()).expect("coefficients are stored");
            write_state_csv(create(out, "state_spectral_final.csv")?, &basis.reconstruct(last, sim.initial.grid()))?;
        }
    }
    if let Some(traj) = &fd {
        write_trajectory_csv(create(out, "trajectory_fd.csv")?, traj)?;
    }
    if let (Some(a), Some(b)) = (&spectral, &fd) {
        write_discrepancy_csv(create(out, "discrepancy.csv")?, a, b)?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct AsymptoticSummary {
    window_fraction: f64,
    #[serde(flatten)]
    check: AsymptoticCheck,
}

#[derive(Debug, Serialize)]
struct VerifyOutput {
    seed: u64,
    total_violations: usize,
    /// Late-window check of the configured scenario; absent when the horizon
    /// is shorter than `3/κ0`.
    asymptotic: Option<AsymptoticSummary>,
    reports: Vec<VerificationReport>,
}

fn scaled(mut cert: IssCertificate, c1_scale: f64) -> IssCertificate {
    cert.c1 *= c1_scale;
    cert
}

pub fn verify(cfg: &ExperimentConfig, out: &Path, seed: Option<u64>, c1_scale: f64) -> Result<(), CliError> {
    let vcfg = &cfg.verify;
    let seed = seed.unwrap_or(vcfg.seed);
    let mut reports = Vec::new();
    let mut asymptotic = None;

    if vcfg.include_config {
        let sim = cfg.simulation_config()?;
        let cert = scaled(build_certificate(&sim.params, vcfg.gamma_rel_tol)?, c1_scale);
        let traj = simulate_spectral(&sim)?;
        let report = verify_trajectory(&traj, &cert, "config");
        if cfg.outputs.margins {
            write_margins_csv(create(out, "margins.csv")?, &report)?;
        }
        asymptotic = match asymptotic_check(&traj, vcfg.window_fraction, cert.kappa0) {
            Ok(check) => Some(AsymptoticSummary { window_fraction: vcfg.window_fraction, check }),
            Err(kvstring::Error::HorizonTooShort { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        reports.push(report);
    }

    let suite = RandomSuite { seed, ..RandomSuite::default() };
    let random: Vec<VerificationReport> = (0..vcfg.scenarios)
        .into_par_iter()
        .map(|i| -> Result<VerificationReport, CliError> {
            let sc = suite.scenario(i)?;
            let cert = scaled(build_certificate(&sc.config.params, vcfg.gamma_rel_tol)?, c1_scale);
            let traj = simulate_spectral(&sc.config)?;
            Ok(verify_trajectory(&traj, &cert, &sc.name))
        })
        .collect::<Result<_, _>>()?;
    reports.extend(random);

    let total_violations = reports.iter().map(|r| r.violations.len()).sum();
    write_json(out, "verification.json", &VerifyOutput { seed, total_violations, asymptotic, reports })?;
    if total_violations > 0 {
        return Err(CliError::Violations(total_violations));
    }
    Ok(())
}
