//! Subcommand implementations, writing to any output stream.

use std::io::Write;
use std::path::Path;

use chsh_core::nonlocality::{brute_force_nonlocality, nonlocality};
use chsh_core::qmat::Tolerances;
use chsh_core::shared::shared_conditions;
use chsh_core::states::{gamma_state, lambda_state, omega_state, phi_state, vw_state, StateSampler};
use rayon::prelude::*;

use crate::error::CliError;
use crate::format::{read_state, StateInput};
use crate::params::Family;
use crate::record::{fixed6, AnalysisRecord, CSV_HEADER};

/// Outcome of a command that completed; maps to exit codes 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Affirmative,
    Negative,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Affirmative
        } else {
            Self::Negative
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Self::Affirmative => 0,
            Self::Negative => 1,
        }
    }
}

/// Slack below this in a scan counts as a violation of the bound.
pub const SLACK_FLOOR: f64 = -1e-8;
/// Largest tolerated gap between the formula and the search oracle.
pub const ORACLE_TOL: f64 = 1e-3;

pub fn analyze(path: &Path, tol: &Tolerances, json: bool, out: &mut dyn Write) -> Result<Verdict, CliError> {
    let rho = read_state(path, tol)?.density();
    let record = AnalysisRecord::compute(path.display().to_string(), &rho, tol)
        .map_err(|e| CliError::invalid(path.display().to_string(), e))?;
    if json {
        writeln!(out, "{}", record.json())?;
    } else {
        write!(out, "{}", record.human())?;
    }
    Ok(Verdict::Affirmative)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub count: usize,
    pub seed: u64,
    /// Fixed rank, or ranks cycling through 1..=4 when `None`.
    pub rank: Option<usize>,
}

/// Random states, one independent stream per id, analyzed in parallel and
/// returned in id order.
pub fn scan_records(opts: &ScanOptions, tol: &Tolerances) -> Result<Vec<AnalysisRecord>, CliError> {
    if let Some(r) = opts.rank {
        if !(1..=4).contains(&r) {
            return Err(CliError::Usage(format!("--rank must be in 1..=4, got {r}")));
        }
    }
    (0..opts.count)
        .into_par_iter()
        .map(|id| {
            let rank = opts.rank.unwrap_or(1 + id % 4);
            let mut sampler = StateSampler::for_stream(opts.seed, id as u64);
            let rho = sampler.density(rank).map_err(|e| CliError::invalid(format!("state {id}"), e))?;
            AnalysisRecord::compute(id.to_string(), &rho, tol).map_err(|e| CliError::invalid(format!("state {id}"), e))
        })
        .collect()
}

pub fn write_csv(records: &[AnalysisRecord], out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

/// Write the CSV to `out` and a summary to `summary`; negative if any row
/// violates the bound.
pub fn scan(
    opts: &ScanOptions,
    tol: &Tolerances,
    out: &mut dyn Write,
    summary: &mut dyn Write,
) -> Result<Verdict, CliError> {
    let records = scan_records(opts, tol)?;
    write_csv(&records, out)?;
    let min_slack = records.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
    let violations = records.iter().filter(|r| r.slack < SLACK_FLOOR).count();
    let members = records.iter().filter(|r| r.member).count();
    writeln!(
        summary,
        "rows={} members={} violations={} min_slack={:.3e}",
        records.len(),
        members,
        violations,
        min_slack
    )?;
    Ok(Verdict::from_bool(violations == 0))
}

pub fn pair_check(first: &Path, second: &Path, tol: &Tolerances, out: &mut dyn Write) -> Result<Verdict, CliError> {
    let a = read_state(first, tol)?.density();
    let b = read_state(second, tol)?.density();
    let v = shared_conditions(&a, &b, tol).map_err(|e| CliError::invalid("pair-check", e))?;
    let d = v.details;
    writeln!(out, "same_frames={} residual={:.3e}", v.cond_same_frames, d.frame_residual)?;
    writeln!(out, "same_order={}", v.cond_same_order)?;
    writeln!(out, "ratio={} residual={:.3e}", v.cond_ratio, d.ratio_residual)?;
    writeln!(out, "certificate={} gap={:.3e}", v.certificate, d.certificate_gap)?;
    writeln!(out, "degenerate={}", v.degenerate_path)?;
    writeln!(out, "shared={}", v.shared())?;
    if let Some(w) = v.witness {
        let rows: Vec<String> = w
            .coefficients()
            .0
            .iter()
            .map(|r| format!("[{}, {}, {}]", fixed6(r[0]), fixed6(r[1]), fixed6(r[2])))
            .collect();
        writeln!(out, "W=[{}]", rows.join(", "))?;
    }
    Ok(Verdict::from_bool(v.shared()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub count: usize,
    pub seed: u64,
    pub grid: usize,
    pub refine: usize,
}

/// Compare the closed-form maximal CHSH value with the search oracle on
/// random states, or on one state file.
pub fn oracle_compare(
    opts: &OracleOptions,
    state: Option<&Path>,
    tol: &Tolerances,
    out: &mut dyn Write,
) -> Result<Verdict, CliError> {
    let states: Vec<(String, _)> = match state {
        Some(path) => vec![(path.display().to_string(), read_state(path, tol)?.density())],
        None => (0..opts.count)
            .map(|i| {
                let mut s = StateSampler::for_stream(opts.seed, i as u64);
                s.density(1 + i % 4).map(|rho| (i.to_string(), rho))
            })
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::invalid("oracle-compare", e))?,
    };
    let rows: Vec<(String, f64, f64)> = states
        .par_iter()
        .enumerate()
        .map(|(i, (id, rho))| {
            let analytic = nonlocality(rho, tol).value;
            brute_force_nonlocality(rho, opts.grid, opts.refine, opts.seed.wrapping_add(i as u64))
                .map(|brute| (id.clone(), analytic, brute))
        })
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::invalid("oracle-compare", e))?;

    writeln!(out, "id,analytic,oracle,diff")?;
    for (id, analytic, brute) in &rows {
        writeln!(out, "{id},{},{},{:.3e}", fixed6(*analytic), fixed6(*brute), (analytic - brute).abs())?;
    }
    let diffs: Vec<f64> = rows.iter().map(|(_, a, b)| (a - b).abs()).collect();
    let max = diffs.iter().copied().fold(0.0, f64::max);
    let mean = diffs.iter().sum::<f64>() / diffs.len().max(1) as f64;
    writeln!(out, "max_diff={max:.3e} mean_diff={mean:.3e}")?;
    Ok(Verdict::from_bool(max <= ORACLE_TOL))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MakeOptions {
    pub family: Family,
    pub theta: f64,
    pub delta: f64,
    pub p: Option<f64>,
}

pub fn make_state(opts: &MakeOptions) -> Result<StateInput, CliError> {
    let ctx = |e| CliError::invalid(format!("family {}", opts.family), e);
    Ok(match opts.family {
        Family::Gamma => StateInput::Pure(gamma_state(opts.theta)),
        Family::Omega => StateInput::Pure(omega_state(opts.theta)),
        Family::Lambda => StateInput::Pure(lambda_state(opts.theta, opts.delta).map_err(ctx)?),
        Family::Phi => StateInput::Pure(phi_state(opts.theta, opts.delta).map_err(ctx)?),
        Family::Vw => {
            let p = opts.p.ok_or_else(|| CliError::Usage("family vw needs --p".to_string()))?;
            StateInput::Mixed(vw_state(p, opts.theta).map_err(ctx)?)
        }
    })
}
