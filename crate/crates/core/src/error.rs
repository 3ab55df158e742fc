use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// ν_s = D − g_e µ_B B_ext came out non-positive: the m_s = 0 / −1 levels cross.
    #[error("spin splitting {nu_s} GHz is not positive (level crossing; two-level reduction invalid)")]
    NonPositiveSplitting { nu_s: f64 },

    #[error("field evaluation at z = {z_um} um is singular (need z > 0)")]
    SingularPosition { z_um: f64 },

    #[error("{what} = {value} outside the open interval ({lo}, {hi})")]
    Range { what: &'static str, value: f64, lo: f64, hi: f64 },

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian: max |H - H^dagger| = {deviation:e} (scale {scale:e})")]
    Hermiticity { deviation: f64, scale: f64 },

    /// Qubit `qubit` and ensemble `ensemble` (zero-based) are at or past resonance.
    #[error("qubit {qubit} / ensemble {ensemble} detuning {detuning} GHz is not positive (dispersive elimination needs nu_q > nu_s)")]
    Resonance { qubit: usize, ensemble: usize, detuning: f64 },

    #[error("mode at k = {k} is unstable: nu_s^2 - 4 nu_s g (1 + cos k) = {radicand:e} < 0")]
    UnstableMode { k: f64, radicand: f64 },

    #[error("band is unstable for k in [{k_min}, {k_max}]")]
    UnstableBand { k_min: f64, k_max: f64 },

    #[error("finite-chain dynamical matrix has complex eigenvalues (max |Im| = {max_imaginary:e})")]
    UnstableSpectrum { max_imaginary: f64 },

    #[error("Bogoliubov coefficients diverge at k = {k} (gapless mode, E_k = 0)")]
    DivergentCoefficients { k: f64 },

    #[error("no stable field: 8g = {eight_g} GHz >= D = {zero_field_splitting} GHz")]
    NoStableField { eight_g: f64, zero_field_splitting: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}
