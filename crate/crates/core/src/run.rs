//! Batch driver: configuration in, CSV fields and a summary JSON out.

use crate::analysis::{
    channel_norms, extract_flux_split, junction_occupancy, l2_distance, stationary_average,
    ComparisonReport,
};
use crate::config::{ExperimentConfig, Mode};
use crate::error::{Error, Result};
use crate::kernel::{psi1_total, psi2};
use crate::oracle::evolve_snapshots;
use crate::output;
use crate::phys::{initial_packet, packet_energy, WaveField};
use crate::series::{
    psi1_series_high_e_with, psi1_series_low_e, psi2_series_low_e_with, Regime, SeriesParams,
    SeriesResult,
};
use crate::stationary::{flux_balance, ChannelMomenta};
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Serialize)]
pub struct NormLedger {
    pub t: f64,
    pub n1: f64,
    pub n2: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesSummary {
    pub regime: Regime,
    pub x: f64,
    pub t: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub truncation_index: usize,
    pub n_terms: usize,
    pub warning: Option<String>,
}

/// Machine-readable result of one run; also echoed to `summary.json`.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub mode: Mode,
    pub code_version: String,
    pub times: Vec<f64>,
    pub files: Vec<String>,
    pub norms: Vec<NormLedger>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flux_analytic: Option<(f64, f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesSummary>,
    pub config_echo: ExperimentConfig,
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

fn analytic_field(cfg: &ExperimentConfig, t: f64) -> Result<WaveField> {
    let mut field = WaveField::zeros(cfg.grid, t);
    for (i, x) in cfg.grid.points().into_iter().enumerate() {
        field.psi1[i] = psi1_total(&cfg.phys, &cfg.packet, x, t, &cfg.quad)?;
        field.psi2[i] = psi2(&cfg.phys, &cfg.packet, x, t, &cfg.quad)?;
    }
    Ok(field)
}

fn ledger_of(fields: &[WaveField]) -> Vec<NormLedger> {
    fields
        .iter()
        .map(|f| {
            let (n1, n2) = channel_norms(f);
            NormLedger { t: f.t, n1, n2, total: n1 + n2 }
        })
        .collect()
}

/// Execute one experiment; returns the summary that was written to
/// `summary.json` in the output directory.
pub fn run(cfg: &ExperimentConfig, mode: Mode, output_dir: &Path) -> Result<RunSummary> {
    let violations = cfg.violations(mode);
    if !violations.is_empty() {
        return Err(Error::Config(violations.join("; ")));
    }
    ensure_dir(output_dir)?;
    let mut files = Vec::new();
    let mut norms = Vec::new();
    let mut flux_analytic = None;
    let mut comparison = None;
    let mut series = None;
    let mut times = cfg.times.clone();

    match mode {
        Mode::Stationary => {
            let scan = cfg.scan.unwrap_or_default();
            let dk = (scan.k_max - scan.k_min) / (scan.n_points - 1) as f64;
            let mut rows = Vec::with_capacity(scan.n_points);
            for i in 0..scan.n_points {
                let k = scan.k_min + i as f64 * dk;
                let cm = ChannelMomenta::from_k(&cfg.phys, k)?;
                let (r, t1, t2) = flux_balance(&cfg.phys, &cm)?;
                rows.push((k, r, t1, t2));
            }
            let path = output_dir.join("stationary.csv");
            output::write_scan_csv(&path, &rows)?;
            files.push("stationary.csv".into());
            flux_analytic = Some(stationary_average(&cfg.phys, &cfg.packet, 2000)?);
            times = Vec::new();
        }
        Mode::Propagate => {
            for (idx, &t) in cfg.times.iter().enumerate() {
                let field = analytic_field(cfg, t)?;
                let name = format!("t_{idx:03}.csv");
                output::write_field_csv(&output_dir.join(&name), &field)?;
                files.push(name);
                let (n1, n2) = channel_norms(&field);
                norms.push(NormLedger { t, n1, n2, total: n1 + n2 });
            }
            flux_analytic = Some(stationary_average(&cfg.phys, &cfg.packet, 2000)?);
        }
        Mode::Oracle => {
            let section = cfg.oracle.as_ref().expect("validated");
            let t_max = cfg.times.last().copied().unwrap_or(0.0);
            let ocfg = cfg.oracle_config(section, t_max);
            let init = initial_packet(&cfg.packet, &cfg.grid)?;
            let steps: Vec<usize> =
                cfg.times.iter().map(|&t| (t / ocfg.dt).round() as usize).collect();
            let snaps = evolve_snapshots(&init, &ocfg, &cfg.phys, &steps)?;
            times = snaps[1..].iter().map(|s| s.t).collect();
            for (idx, snap) in snaps[1..].iter().enumerate() {
                let name = format!("t_{idx:03}.csv");
                output::write_field_csv(&output_dir.join(&name), snap)?;
                files.push(name);
            }
            norms = ledger_of(&snaps[1..]);
        }
        Mode::Series => {
            let s = cfg.series.as_ref().expect("validated");
            let t = s.t.or(cfg.times.last().copied()).unwrap_or(0.0);
            let sp = SeriesParams {
                regime: s.regime,
                n_terms: s.n_terms,
                kappa_variant: s.kappa_variant,
                envelope: s.envelope,
            };
            let result: SeriesResult = match s.regime {
                Regime::HighEnergy => {
                    psi1_series_high_e_with(&cfg.phys, &cfg.packet, s.x, t, &sp)?
                }
                Regime::LowEnergy => {
                    // channel 1 series at the point plus the channel-2 table
                    let _ = psi1_series_low_e(&cfg.phys, &cfg.packet, s.x, t, s.n_terms)?;
                    psi2_series_low_e_with(&cfg.phys, &cfg.packet, s.x, t, &sp)?
                }
            };
            let path = output_dir.join("series.csv");
            output::write_series_csv(&path, &result.terms)?;
            files.push("series.csv".into());
            series = Some(SeriesSummary {
                regime: s.regime,
                x: s.x,
                t,
                value_re: result.value.re,
                value_im: result.value.im,
                truncation_index: result.truncation_index,
                n_terms: result.terms.len(),
                warning: result.warning.clone(),
            });
            times = vec![t];
        }
        Mode::Compare => {
            let section = cfg.oracle.as_ref().expect("validated");
            let t_max = cfg.times.last().copied().unwrap_or(0.0);
            let ocfg = cfg.oracle_config(section, t_max);
            let init = initial_packet(&cfg.packet, &cfg.grid)?;
            let initial_peak =
                init.psi1.iter().map(|c| c.norm_sqr()).fold(0.0, f64::max);
            let steps: Vec<usize> =
                cfg.times.iter().map(|&t| (t / ocfg.dt).round() as usize).collect();
            let snaps = evolve_snapshots(&init, &ocfg, &cfg.phys, &steps)?;
            let oracle_fields = &snaps[1..];
            times = oracle_fields.iter().map(|s| s.t).collect();

            let mut l2_1 = Vec::new();
            let mut l2_2 = Vec::new();
            let mut n1a = Vec::new();
            let mut n2a = Vec::new();
            let mut n1o = Vec::new();
            let mut n2o = Vec::new();
            for (idx, snap) in oracle_fields.iter().enumerate() {
                let ana = analytic_field(cfg, snap.t)?;
                let (d1, d2) = l2_distance(&ana, snap)?;
                l2_1.push(d1);
                l2_2.push(d2);
                let (a1, a2) = channel_norms(&ana);
                let (o1, o2) = channel_norms(snap);
                n1a.push(a1);
                n2a.push(a2);
                n1o.push(o1);
                n2o.push(o2);
                let name_a = format!("t_{idx:03}_analytic.csv");
                let name_o = format!("t_{idx:03}_oracle.csv");
                output::write_field_csv(&output_dir.join(&name_a), &ana)?;
                output::write_field_csv(&output_dir.join(&name_o), snap)?;
                files.push(name_a);
                files.push(name_o);
                norms.push(NormLedger { t: snap.t, n1: o1, n2: o2, total: o1 + o2 });
            }
            let last = oracle_fields.last().expect("at least one time");
            let cleared = junction_occupancy(last, initial_peak) < 1e-8;
            let flux_an = stationary_average(&cfg.phys, &cfg.packet, 2000)?;
            let flux_or = if cleared { Some(extract_flux_split(last)) } else { None };
            let e_ratio = if cfg.phys.v0 > 0.0 {
                Some(packet_energy(&cfg.phys, &cfg.packet) / cfg.phys.v0)
            } else {
                None
            };
            comparison = Some(ComparisonReport {
                times: times.clone(),
                l2_channel1: l2_1,
                l2_channel2: l2_2,
                norm1_analytic: n1a,
                norm2_analytic: n2a,
                norm1_oracle: n1o,
                norm2_oracle: n2o,
                flux_analytic: flux_an,
                flux_oracle: flux_or,
                energy_ratio_e_over_v0: e_ratio,
                work_analytic_points: cfg.grid.n_points * times.len(),
                work_oracle_steps: ocfg.n_steps,
            });
            flux_analytic = Some(flux_an);
        }
    }

    let summary = RunSummary {
        mode,
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        times,
        files,
        norms,
        flux_analytic,
        comparison,
        series,
        config_echo: cfg.clone(),
    };
    output::write_json(&output_dir.join("summary.json"), &summary)?;
    Ok(summary)
}

/// Resolve the output directory: CLI flag, then config, then `./out`.
pub fn resolve_output_dir(cfg: &ExperimentConfig, flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| cfg.output_dir.clone()).unwrap_or_else(|| PathBuf::from("out"))
}
