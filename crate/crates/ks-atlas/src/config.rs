//! Solver configuration: every tolerance, bracket and grid size used by the
//! numeric routines lives here and can be overridden per call site.

use crate::error::{Error, Result};

/// Policy for the removable singularity at t = 0: below `seam` the scalar and
/// pair functions are evaluated from their cumulant series truncated at
/// cumulant index `order`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPolicy {
    /// Threshold on |t| below which the series evaluation is used.
    pub seam: f64,
    /// Highest cumulant index kept in the series. Even, in 6..=10.
    pub order: u32,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            seam: 1e-2,
            order: 8,
        }
    }
}

impl SeriesPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.seam > 0.0 && self.seam.is_finite()) {
            return Err(Error::InvalidConfig {
                reason: format!("series seam must be positive and finite, got {}", self.seam),
            });
        }
        if self.order < 6 || self.order > 10 || self.order % 2 != 0 {
            return Err(Error::InvalidConfig {
                reason: format!("series order must be even and in 6..=10, got {}", self.order),
            });
        }
        Ok(())
    }
}

/// Tolerances, bracket shrink factors and grid sizes for all numeric routines.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub series: SeriesPolicy,
    /// Residual tolerance for solved roots (h = 0, the gamma system, ...).
    pub root_tol: f64,
    /// Abscissa tolerance for one-dimensional minimization.
    pub t_tol: f64,
    /// Boundary band for three-valued region membership, in the natural units
    /// of each defining expression.
    pub band: f64,
    /// Boundary band around the gamma curve, in p2 units.
    pub band_p: f64,
    /// Relative bracket shrink at interval endpoints for bisection solvers.
    pub bracket_eps: f64,
    /// Dense-scan points for the mid-interval minimization.
    pub mid_scan: usize,
    /// Pre-scan points used to detect multiple sign crossings.
    pub pre_scan: usize,
    /// Iteration cap for bracketing solvers.
    pub max_iter: usize,
    /// Base point count of the sign-pattern oracle grid.
    pub oracle_points: usize,
    /// Truncation of oracle grids at |t| = tail_limit; beyond it the sign of
    /// g' is fixed by the dominant atom.
    pub tail_limit: f64,
    /// Values with |v| <= zero_tol * scale are classified as zero by the
    /// sign-pattern oracle.
    pub zero_tol: f64,
    /// Width to which detected sign changes are refined.
    pub refine_width: f64,
    /// Base step for finite-difference validation.
    pub fd_step: f64,
    /// Seed for randomized sampling in verification sweeps.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            series: SeriesPolicy::default(),
            root_tol: 1e-11,
            t_tol: 1e-11,
            band: 1e-9,
            band_p: 1e-7,
            bracket_eps: 1e-9,
            mid_scan: 512,
            pre_scan: 64,
            max_iter: 200,
            oracle_points: 2048,
            tail_limit: 60.0,
            zero_tol: 1e-12,
            refine_width: 1e-10,
            fd_step: 1e-5,
            seed: 0x4b5a_7431,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        self.series.validate()?;
        let positive = [
            ("root_tol", self.root_tol),
            ("t_tol", self.t_tol),
            ("band", self.band),
            ("band_p", self.band_p),
            ("bracket_eps", self.bracket_eps),
            ("tail_limit", self.tail_limit),
            ("zero_tol", self.zero_tol),
            ("refine_width", self.refine_width),
            ("fd_step", self.fd_step),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig {
                    reason: format!("{name} must be positive and finite, got {v}"),
                });
            }
        }
        for (name, v) in [
            ("mid_scan", self.mid_scan),
            ("pre_scan", self.pre_scan),
            ("max_iter", self.max_iter),
            ("oracle_points", self.oracle_points),
        ] {
            if v < 8 {
                return Err(Error::InvalidConfig {
                    reason: format!("{name} must be at least 8, got {v}"),
                });
            }
        }
        Ok(())
    }
}
