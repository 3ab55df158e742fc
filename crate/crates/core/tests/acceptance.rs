//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use hybridlattice::dispersive::{
    build_rwa_hamiltonian, effective_params, generator_residual, total_number_operator, validate_dispersive,
};
use hybridlattice::hilbert::{bosonization_deviation, collective_spin_operator, eigensolve_with_vectors, spin_vacuum};
use hybridlattice::lattice::{
    brillouin_scan, dispersion_full, finite_chain_spectrum, ground_energy_density, ground_state_energy, lattice_g,
    stability_check, tight_binding_deviation, LatticeParams,
};
use hybridlattice::magnetics::collective_coupling;
use hybridlattice::{ChainSpec, Error, FluxQubitSpec, PhysicalConstants, SpinEnsembleSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_260_214;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fig3_g() -> f64 {
    0.0625 * (1.0 / 5.0 + 1.0 / 7.0)
}

fn coupling_estimates() -> Outcome {
    let c = PhysicalConstants::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for (current, a, b, quoted) in [(0.5, 1.0, 1.0, 0.013), (0.5, 2.0, 10.0, 0.060), (0.9, 2.0, 50.0, 0.250)] {
        let qubit = FluxQubitSpec::at_degeneracy(current, a, b, 6.0);
        let mut ens = SpinEnsembleSpec::with_splitting(1.0, &c);
        ens.crystal_width = 0.5;
        ens.crystal_length = b;
        let j = collective_coupling(&qubit, &ens, &c).map_err(|e| e.to_string())?.collective_coupling;
        ok &= (j / quoted - 1.0).abs() <= 0.3;
        lines.push(format!("{:.1} MHz (quoted {:.0})", j * 1e3, quoted * 1e3));
    }
    check(ok, lines.join(", "))
}

fn fig3_reproduction() -> Outcome {
    let g = lattice_g(0.25, 6.0, 1.0).map_err(|e| e.to_string())?;
    let p = LatticeParams::new(1.0, g, 64).map_err(|e| e.to_string())?;
    let scan = brillouin_scan(&p, 1000).map_err(|e| e.to_string())?;
    let gap = scan.gap.ok_or("no gap")?;
    let top = dispersion_full(&p, PI).map_err(|e| e.to_string())?;
    let energies: Vec<f64> = scan.e_full.iter().map(|e| e.unwrap_or(f64::NAN)).collect();
    let monotone = energies.windows(2).all(|w| w[1] > w[0]);
    let ok = (g - fig3_g()).abs() < 1e-9
        && (gap - (1.0 - 8.0 * fig3_g()).sqrt()).abs() < 1e-9
        && (top - 1.0).abs() < 1e-9
        && monotone;
    check(ok, format!("g = {:.4} MHz, gap = {gap:.6} GHz, E(pi) = {top}, monotone = {monotone}", g * 1e3))
}

fn generator_identity(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let nu_q = [rng.random_range(4.0..8.0), rng.random_range(4.0..8.0)];
        let nu_s = [rng.random_range(0.5..2.0), rng.random_range(0.5..2.0), rng.random_range(0.5..2.0)];
        let j = [0; 4].map(|_| rng.random_range(0.05..0.3));
        let chain = ChainSpec::three_ensemble(nu_q, nu_s, j);
        worst = worst.max(generator_residual(&chain, 5).map_err(|e| e.to_string())?);
    }
    check(worst < 1e-10, format!("max relative residual over 20 sets = {worst:.2e}"))
}

fn second_order_accuracy() -> Outcome {
    let r = validate_dispersive(&ChainSpec::uniform(2, 6.0, 1.0, 0.25), 5).map_err(|e| e.to_string())?;
    let ratio = r.scaling_ratio.unwrap_or(0.0);
    check(
        r.deviation < 2e-3 && ratio >= 6.0,
        format!("deviation = {:.3e} GHz, at J/2 = {:.3e} GHz, ratio = {ratio:.2}", r.deviation, r.deviation_half_j),
    )
}

fn oracle_equivalence(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let nu_s = rng.random_range(0.2..5.0);
        let g = rng.random_range(0.0..0.12) * nu_s;
        for n in [2, 4, 8, 16] {
            let p = LatticeParams::new(nu_s, g, n).map_err(|e| e.to_string())?;
            let oracle = finite_chain_spectrum(&p).map_err(|e| e.to_string())?;
            let mut analytic: Vec<f64> =
                (0..n).map(|m| dispersion_full(&p, 2.0 * PI * m as f64 / n as f64).unwrap()).collect();
            analytic.sort_by(f64::total_cmp);
            for (x, y) in oracle.iter().zip(&analytic) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    check(worst < 1e-10, format!("max |E_oracle - E_k| = {worst:.2e} GHz"))
}

fn stability_boundary() -> Outcome {
    let mut ok = true;
    let mut worst_gap = 0.0f64;
    for g in [0.01, fig3_g(), 0.05, 0.3] {
        let edge = LatticeParams::new(8.0 * g, g, 8).map_err(|e| e.to_string())?;
        let below = LatticeParams { nu_s: 8.0 * g - 1e-6, ..edge };
        ok &= stability_check(&edge).stable && !stability_check(&below).stable;
        ok &= matches!(dispersion_full(&below, 0.0), Err(Error::UnstableMode { k, .. }) if k == 0.0);
        ok &= matches!(brillouin_scan(&below, 64), Err(Error::UnstableBand { k_min, .. }) if k_min == 0.0);
        worst_gap = worst_gap.max(dispersion_full(&edge, 0.0).map_err(|e| e.to_string())?);
    }
    check(ok && worst_gap < 1e-6, format!("flip at nu_s = 8g for 4 couplings, boundary gap = {worst_gap:.1e} GHz"))
}

fn tight_binding_limit() -> Outcome {
    let g = 0.02;
    let mut previous = f64::INFINITY;
    let mut ok = true;
    let mut lines = Vec::new();
    for ratio in [16.0, 50.0, 100.0] {
        let p = LatticeParams::new(ratio * g, g, 2).map_err(|e| e.to_string())?;
        let dev = tight_binding_deviation(&p, 4001).map_err(|e| e.to_string())?;
        let bound = 32.0 * g * g / p.nu_s;
        ok &= dev <= bound && dev < previous;
        previous = dev;
        lines.push(format!("{ratio}: {dev:.2e} <= {bound:.2e}"));
    }
    check(ok, lines.join(", "))
}

fn ground_energy(rng: &mut ChaCha8Rng) -> Outcome {
    let mut max_eg = f64::NEG_INFINITY;
    let mut iff = true;
    for _ in 0..100 {
        let nu_s = rng.random_range(0.1..10.0);
        let g = rng.random_range(0.001..0.125) * nu_s;
        let eg = ground_state_energy(&LatticeParams::new(nu_s, g, 64).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        max_eg = max_eg.max(eg);
        iff &= eg.abs() > 1e-12;
    }
    let zero = ground_state_energy(&LatticeParams::new(1.0, 0.0, 64).unwrap()).map_err(|e| e.to_string())?;
    iff &= zero.abs() <= 1e-12;
    let density = |n| ground_energy_density(&LatticeParams::new(1.0, fig3_g(), n).unwrap());
    let drift = (density(64).map_err(|e| e.to_string())? - density(256).map_err(|e| e.to_string())?).abs();
    check(
        max_eg <= 0.0 && iff && drift < 1e-6,
        format!("max E_g = {max_eg:.3e} GHz, E_g(g=0) = {zero}, |E_g/N(64) - E_g/N(256)| = {drift:.1e} GHz"),
    )
}

fn bosonization() -> Outcome {
    let n = 6;
    let s_dag = collective_spin_operator(n, &vec![1.0; n]).map_err(|e| e.to_string())?;
    let s = s_dag.adjoint();
    let vac = spin_vacuum(n);
    let vacuum = vac.dotc(&(s.apply(&s_dag.apply(&vac)) - s_dag.apply(&s.apply(&vac)))).re;
    let mut ok = (vacuum - 1.0).abs() < 1e-14;
    let mut lines = vec![format!("<[s,s+]>_vac = {vacuum}")];
    for k in [1, 2] {
        let devs: Vec<f64> = [4, 6, 8]
            .iter()
            .map(|&n| bosonization_deviation(n, &vec![1.0; n], k))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ok &= devs.windows(2).all(|w| w[1] < w[0]);
        lines.push(format!("k={k}: {devs:.4?}"));
    }
    check(ok, lines.join(", "))
}

fn rwa_consistency() -> Outcome {
    let params = effective_params(&ChainSpec::uniform(2, 6.0, 1.0, 0.25)).map_err(|e| e.to_string())?;
    let cutoff = 4;
    let h = build_rwa_hamiltonian(&params, cutoff).map_err(|e| e.to_string())?;
    let number = total_number_operator(params.n_modes(), cutoff).map_err(|e| e.to_string())?;
    let commutator = h.commutator(&number).max_abs();

    let sys = eigensolve_with_vectors(&h).map_err(|e| e.to_string())?;
    let mut dense: Vec<f64> = (0..sys.spectrum.eigenvalues.len())
        .filter(|&c| {
            let v = sys.vectors.column(c).into_owned();
            (v.dotc(&number.apply(&v)).re - 1.0).abs() < 1e-8
        })
        .map(|c| sys.spectrum.eigenvalues[c])
        .collect();
    dense.sort_by(f64::total_cmp);
    let mut tridiagonal: Vec<f64> = params.single_excitation_matrix().symmetric_eigenvalues().iter().copied().collect();
    tridiagonal.sort_by(f64::total_cmp);
    let worst = if dense.len() == tridiagonal.len() {
        dense.iter().zip(&tridiagonal).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    check(
        worst < 1e-10 && commutator < 1e-12,
        format!("single-excitation mismatch = {worst:.1e} GHz, max|[H,N]| = {commutator:.1e}"),
    )
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = 0;
    let mut run = |id: usize, name: &str, outcome: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let result = outcome();
        let elapsed = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {id:>2}. {name}: {detail} [{elapsed:.2}s]"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {id:>2}. {name}: {detail} [{elapsed:.2}s]");
            }
        }
    };
    run(1, "coupling estimates", &mut coupling_estimates);
    run(2, "Fig. 3 dispersion", &mut fig3_reproduction);
    run(3, "generator identity", &mut || generator_identity(&mut rng));
    run(4, "second-order accuracy", &mut second_order_accuracy);
    run(5, "Bogoliubov oracle equivalence", &mut || oracle_equivalence(&mut rng));
    run(6, "stability boundary", &mut stability_boundary);
    run(7, "tight-binding limit", &mut tight_binding_limit);
    run(8, "ground-state energy", &mut || ground_energy(&mut rng));
    run(9, "collective bosonization", &mut bosonization);
    run(10, "RWA consistency", &mut rwa_consistency);
    if failures == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
