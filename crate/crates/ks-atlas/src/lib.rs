//! Sharp sub-Gaussian bounds and a unimodality region atlas for sums of two
//! centered Bernoulli variables.
//!
//! The crate evaluates the log-MGF machinery of centered Bernoulli and
//! two-term sums (module [`eval`]), analyses the inflection structure of the
//! associated cubic-weighted derivative (module [`inflections`]), classifies
//! parameter pairs into the nested regions A, B, C, D (modules [`regions`]
//! and [`gamma`]), traces all region boundaries as data, and cross-checks
//! every closed form against independent numeric oracles (module [`verify`]).

pub mod config;
pub mod error;
pub mod eval;
pub mod gamma;
pub mod inflections;
pub mod regions;
pub mod report;
mod roots;
pub mod verify;

pub use config::{SeriesPolicy, SolverConfig};
pub use error::{Error, Result};
pub use eval::{Abscissa, ParamPair, ProbParam};
pub use regions::{CanonicalPair, Membership, RegionReport};

/// Full region classification of a pair: membership in A, B, C and D
/// evaluated at the canonical representative, plus the gamma solution when
/// one was needed to settle C.
pub fn classify(pair: ParamPair, cfg: &SolverConfig) -> Result<RegionReport> {
    let canonical = regions::canonicalize(pair);
    let in_a = regions::in_a(pair, cfg);
    let in_b = regions::in_b(canonical.pair(), cfg);
    let in_d = regions::in_d(pair, cfg);
    let (in_c, gamma_used) = gamma::in_c_with_solution(pair, cfg)?;
    Ok(RegionReport {
        in_a,
        in_b,
        in_c,
        in_d,
        canonical,
        gamma_used,
    })
}

/// Boundary-curve tracing entry point with the standard parameter domains:
/// alpha, beta and gamma on p1 in [0.01, p+ - 1e-4], the two d branches on
/// p1 in [0.01, 2 - sqrt(2) - 1e-4].
pub fn trace(
    label: regions::CurveLabel,
    n: usize,
    cfg: &SolverConfig,
) -> Result<regions::BoundaryCurve> {
    use regions::CurveLabel;
    if n < 2 {
        return Err(Error::Domain {
            what: format!("trace needs at least 2 points, got {n}"),
        });
    }
    let (lo, hi) = match label {
        CurveLabel::DLower | CurveLabel::DUpper => (0.01, 2.0 - std::f64::consts::SQRT_2 - 1e-4),
        _ => (0.01, inflections::P_PLUS - 1e-4),
    };
    let grid: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect();
    Ok(match label {
        CurveLabel::Alpha => regions::trace_alpha(&grid),
        CurveLabel::Beta => regions::trace_beta(&grid, cfg),
        CurveLabel::DLower => regions::trace_d(&grid, false),
        CurveLabel::DUpper => regions::trace_d(&grid, true),
        CurveLabel::Gamma => gamma::gamma_trace(&grid, cfg),
    })
}
