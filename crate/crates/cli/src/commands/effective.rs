use hybridlattice::dispersive::{dispersive_coefficients, effective_params, DispersiveCoeffs, EffectiveParams};
use hybridlattice::lattice::qubit_frequency_for_ratio;
use serde::Serialize;
use serde_json::json;

use super::Context;
use crate::error::CliResult;
use crate::output::{emit, to_json, Artifact};

#[derive(Serialize)]
#[allow(non_snake_case)]
struct RatioSolution {
    target_g_over_nu_s: f64,
    coupling_GHz: f64,
    nu_s_GHz: f64,
    nu_q_GHz: f64,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct Report {
    qubit_frequencies_GHz: Vec<f64>,
    ensemble_frequencies_GHz: Vec<f64>,
    couplings_GHz: Vec<Vec<f64>>,
    coefficients: DispersiveCoeffs,
    effective: EffectiveParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu_q_for_ratio: Option<RatioSolution>,
}

pub fn run(ctx: &Context, solve_nu_q: Option<f64>) -> CliResult<()> {
    ctx.require_json("effective-params")?;
    let config = ctx.load()?;
    let chain = &config.chain;
    let coefficients = dispersive_coefficients(chain)?;
    for w in &coefficients.warnings {
        eprintln!("warning: {w}");
    }
    let nu_s = chain.ensemble_frequencies()?;
    let nu_q_for_ratio = solve_nu_q
        .map(|ratio| -> CliResult<RatioSolution> {
            let coupling = chain.coupling(0, 0);
            Ok(RatioSolution {
                target_g_over_nu_s: ratio,
                coupling_GHz: coupling,
                nu_s_GHz: nu_s[0],
                nu_q_GHz: qubit_frequency_for_ratio(coupling, nu_s[0], ratio)?,
            })
        })
        .transpose()?;
    let report = Report {
        qubit_frequencies_GHz: chain.qubit_frequencies(),
        ensemble_frequencies_GHz: nu_s,
        couplings_GHz: chain.couplings.clone(),
        effective: effective_params(chain)?,
        coefficients,
        nu_q_for_ratio,
    };
    let manifest = ctx.manifest("effective-params", Some(&config), None, json!({ "solve_nu_q": solve_nu_q }));
    emit(&[Artifact { path: ctx.out.clone(), contents: to_json(&report) }], &manifest)
}
