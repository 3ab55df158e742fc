use hybridlattice::lattice::{brillouin_scan, brillouin_scan_allow_unstable, critical_field, DispersionResult, LatticeParams};
use serde::Serialize;
use serde_json::json;

use super::{lattice_params, Context};
use crate::error::CliResult;
use crate::output::{cell, companion_path, csv_string, emit, to_json, Artifact};
use crate::Format;

#[derive(Serialize)]
#[allow(non_snake_case)]
struct Summary {
    params: LatticeParams,
    points: usize,
    gap_GHz: Option<f64>,
    E_g_GHz: Option<f64>,
    E_g_per_site_GHz: Option<f64>,
    stable: bool,
    gapless: bool,
    margin_GHz: f64,
    unstable_k: Option<(f64, f64)>,
    /// Field below which ensemble 0 stays on the stable side, if one exists.
    B_crit_T: Option<f64>,
}

#[derive(Serialize)]
struct FullReport<'a> {
    summary: &'a Summary,
    dispersion: &'a DispersionResult,
}

pub fn run(ctx: &Context, sites: Option<usize>, points: usize, allow_unstable: bool, tight_binding: bool) -> CliResult<()> {
    let config = ctx.load()?;
    let params = lattice_params(&config, sites)?;
    let result = if allow_unstable {
        brillouin_scan_allow_unstable(&params, points)?
    } else {
        brillouin_scan(&params, points)?
    };
    if let Some((lo, hi)) = result.unstable_k {
        eprintln!("warning: band unstable for k in [{lo}, {hi}]; those rows are left empty");
    }
    let summary = Summary {
        params,
        points,
        gap_GHz: result.gap,
        E_g_GHz: result.ground_energy,
        E_g_per_site_GHz: result.ground_energy_density,
        stable: result.stable,
        gapless: result.gapless,
        margin_GHz: result.margin,
        unstable_k: result.unstable_k,
        B_crit_T: critical_field(&config.chain.ensembles[0], params.g, &config.chain.constants).ok(),
    };

    let artifacts = match ctx.format_or_csv() {
        Format::Json => vec![Artifact { path: ctx.out.clone(), contents: to_json(&FullReport { summary: &summary, dispersion: &result }) }],
        Format::Csv => {
            let mut header = vec!["k", "E_full_GHz"];
            if tight_binding {
                header.push("E_tb_GHz");
            }
            header.extend(["mu", "nu"]);
            let rows = (0..result.k_values.len()).map(|m| {
                let mut row = vec![result.k_values[m].to_string(), cell(result.e_full[m])];
                if tight_binding {
                    row.push(result.e_tb[m].to_string());
                }
                row.extend([cell(result.mu[m]), cell(result.nu[m])]);
                row
            });
            let mut artifacts = vec![Artifact { path: ctx.out.clone(), contents: csv_string(&header, rows) }];
            if let Some(out) = &ctx.out {
                artifacts.push(Artifact { path: Some(companion_path(out, "json")), contents: to_json(&summary) });
            }
            artifacts
        }
    };
    let arguments = json!({
        "sites": sites, "points": points, "allow_unstable": allow_unstable, "tight_binding": tight_binding,
    });
    emit(&artifacts, &ctx.manifest("dispersion", Some(&config), Some(&params), arguments))
}
