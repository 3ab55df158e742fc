use std::str::FromStr;

use hybridlattice::lattice::{critical_field, dispersion_full, lattice_g, stability_check, LatticeParams};
use hybridlattice::{PhysicalConstants, SpinEnsembleSpec};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{lattice_params, Context};
use crate::error::{CliError, CliResult};
use crate::output::{cell, csv_string, emit, to_json, Artifact};
use crate::Format;

/// `min:max:count`, evenly spaced and inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl FromStr for GridRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts[..] else {
            return Err(format!("expected min:max:count, got {s:?}"));
        };
        let number = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
        let range = GridRange {
            min: number(min)?,
            max: number(max)?,
            count: count.trim().parse().map_err(|e| format!("{count:?}: {e}"))?,
        };
        range.check().map(|()| range)
    }
}

impl GridRange {
    fn check(&self) -> Result<(), String> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err("range ends must be finite".into());
        }
        match self.count {
            0 => Err("range count must be at least 1".into()),
            1 if self.min != self.max => Err("a single-point range needs min == max".into()),
            1 => Ok(()),
            _ if self.min >= self.max => Err(format!("degenerate range {}:{}", self.min, self.max)),
            _ => Ok(()),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|m| if m + 1 == self.count { self.max } else { self.min + step * m as f64 }).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
#[allow(non_snake_case)]
struct Row {
    nu_s_GHz: f64,
    g_GHz: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    J_GHz: Option<f64>,
    stable: bool,
    margin_GHz: f64,
    gap_GHz: Option<f64>,
    B_crit_T: Option<f64>,
}

pub fn run(
    ctx: &Context,
    g_range: Option<GridRange>,
    nus_range: Option<GridRange>,
    j_range: Option<GridRange>,
) -> CliResult<()> {
    let config = ctx.load_optional()?;
    let (constants, ensemble) = match &config {
        Some(c) => (c.chain.constants, c.chain.ensembles[0]),
        None => {
            let constants = PhysicalConstants::default();
            (constants, SpinEnsembleSpec::with_splitting(1.0, &constants))
        }
    };
    let nu_s_values = match (nus_range, &config) {
        (Some(r), _) => r.values(),
        (None, Some(c)) => vec![lattice_params(c, None)?.nu_s],
        (None, None) => return Err(CliError::Usage("--nus-range is required without --config".into())),
    };
    if nu_s_values.iter().any(|&nu| !(nu > 0.0)) {
        return Err(CliError::Usage("nu_s values must be positive".into()));
    }

    let couplings: Vec<(f64, Option<f64>)> = match (g_range, j_range) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give --g-range or --j-range, not both".into())),
        (None, None) => return Err(CliError::Usage("one of --g-range or --j-range is required".into())),
        (Some(r), None) => {
            if r.min < 0.0 {
                return Err(CliError::Usage("g values must be non-negative".into()));
            }
            r.values().into_iter().map(|g| (g, None)).collect()
        }
        (None, Some(r)) => {
            if r.min < 0.0 {
                return Err(CliError::Usage("J values must be non-negative".into()));
            }
            r.values().into_iter().map(|j| (f64::NAN, Some(j))).collect()
        }
    };
    let nu_q = match (&config, j_range) {
        (Some(c), _) => c.chain.qubit_frequencies()[0],
        (None, Some(_)) => return Err(CliError::Usage("--j-range needs --config for the qubit frequency".into())),
        (None, None) => f64::NAN,
    };

    let grid: Vec<(f64, f64, Option<f64>)> =
        nu_s_values.iter().flat_map(|&nu_s| couplings.iter().map(move |&(g, j)| (nu_s, g, j))).collect();
    let rows = grid
        .par_iter()
        .map(|&(nu_s, g, j)| -> CliResult<Row> {
            let g = match j {
                Some(j) => lattice_g(j, nu_q, nu_s)?,
                None => g,
            };
            let p = LatticeParams::new(nu_s, g, 2)?;
            let stability = stability_check(&p);
            Ok(Row {
                nu_s_GHz: nu_s,
                g_GHz: g,
                J_GHz: j,
                stable: stability.stable,
                margin_GHz: stability.margin,
                gap_GHz: dispersion_full(&p, 0.0).ok(),
                B_crit_T: critical_field(&ensemble, g, &constants).ok(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let contents = match ctx.format_or_csv() {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut header = vec!["nu_s_GHz", "g_GHz"];
            if j_range.is_some() {
                header.push("J_GHz");
            }
            header.extend(["stable", "margin_GHz", "gap_GHz", "B_crit_T"]);
            csv_string(
                &header,
                rows.iter().map(|r| {
                    let mut row = vec![r.nu_s_GHz.to_string(), r.g_GHz.to_string()];
                    row.extend(r.J_GHz.map(|j| j.to_string()));
                    row.extend([r.stable.to_string(), r.margin_GHz.to_string(), cell(r.gap_GHz), cell(r.B_crit_T)]);
                    row
                }),
            )
        }
    };
    let arguments = json!({ "g_range": g_range, "nus_range": nus_range, "j_range": j_range });
    emit(&[Artifact { path: ctx.out.clone(), contents }], &ctx.manifest("stability-scan", config.as_ref(), None, arguments))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_spans_ends() {
        let r: GridRange = "0.5:1.5:5".parse().unwrap();
        assert_eq!(r.values(), vec![0.5, 0.75, 1.0, 1.25, 1.5]);
        assert_eq!("2:2:1".parse::<GridRange>().unwrap().values(), vec![2.0]);
    }

    #[test]
    fn rejects_degenerate_ranges() {
        for bad in ["1:1:3", "2:1:4", "0:1:0", "0:1", "a:1:2", "0:inf:3", "0:1:1"] {
            assert!(bad.parse::<GridRange>().is_err(), "{bad}");
        }
    }
}
