use hybridlattice::magnetics::{coupling_profile, interior_grid, ProfilePoint};
use serde::Serialize;
use serde_json::json;

use super::Context;
use crate::error::{CliError, CliResult};
use crate::output::{csv_string, emit, to_json, Artifact};
use crate::Format;

#[derive(Serialize)]
#[allow(non_snake_case)]
struct Series {
    qubit: usize,
    persistent_current_uA: f64,
    loop_a_um: f64,
    loop_b_um: f64,
    crystal_width_L_um: f64,
    points: Vec<ProfilePoint>,
}

/// Qubit i is profiled across ensemble i, the crystal whose length follows its loop.
pub fn run(ctx: &Context, points: usize) -> CliResult<()> {
    if points == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    let config = ctx.load()?;
    let chain = &config.chain;
    let grid = interior_grid(points);
    let series = chain
        .qubits
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let width = chain.ensembles[i].crystal_width;
            Ok(Series {
                qubit: i,
                persistent_current_uA: q.persistent_current,
                loop_a_um: q.loop_a,
                loop_b_um: q.loop_b,
                crystal_width_L_um: width,
                points: coupling_profile(q, width, &grid, &chain.constants)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let contents = match ctx.format_or_csv() {
        Format::Json => to_json(&series),
        Format::Csv => csv_string(
            &["qubit", "z_over_L", "J_m_GHz"],
            series.iter().flat_map(|s| {
                s.points.iter().map(move |p| {
                    vec![s.qubit.to_string(), p.z_over_l.to_string(), p.single_spin_coupling.to_string()]
                })
            }),
        ),
    };
    let manifest = ctx.manifest("coupling-profile", Some(&config), None, json!({ "points": points }));
    emit(&[Artifact { path: ctx.out.clone(), contents }], &manifest)
}
