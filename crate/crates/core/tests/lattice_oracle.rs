use std::f64::consts::PI;

use hybridlattice::lattice::{dispersion_full, finite_chain_spectrum, LatticeParams};
use proptest::prelude::*;

fn momentum_spectrum(p: &LatticeParams) -> Vec<f64> {
    let n = p.sites;
    let mut e: Vec<f64> = (0..n).map(|m| dispersion_full(p, 2.0 * PI * m as f64 / n as f64).unwrap()).collect();
    e.sort_by(f64::total_cmp);
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn real_space_matches_momentum_space(nu_s in 0.2f64..5.0, ratio in 0.0f64..0.12, exp in 1u32..5) {
        let p = LatticeParams::new(nu_s, ratio * nu_s, 1 << exp).unwrap();
        let got = finite_chain_spectrum(&p).unwrap();
        for (x, y) in got.iter().zip(momentum_spectrum(&p)) {
            prop_assert!((x - y).abs() < 1e-10, "{} vs {}", x, y);
        }
    }
}

#[test]
fn odd_chain_matches() {
    let p = LatticeParams::new(1.0, 0.05, 7).unwrap();
    let got = finite_chain_spectrum(&p).unwrap();
    for (x, y) in got.iter().zip(momentum_spectrum(&p)) {
        assert!((x - y).abs() < 1e-10);
    }
}
