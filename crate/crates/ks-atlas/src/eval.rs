//! Evaluation of the scalar and pair log-MGF machinery.
//!
//! A centered Bernoulli variable with parameter p takes the value 1-p with
//! probability p and -p with probability 1-p. Its log-MGF is
//!
//!     L_p(t) = -p t + log(1 + p (e^t - 1)),
//!
//! and everything in this crate is built from L and its first four t
//! derivatives:
//!
//!     g_p(t) = L_p(t) / t^2          (removable singularity at t = 0)
//!     f_p(t) = t^3 g_p'(t) = t L_p'(t) - 2 L_p(t)
//!
//! The pair versions are sums of two scalar terms. Direct evaluation uses a
//! form factored through e^{-t} for t >= 0, which neither overflows nor
//! cancels for large t; negative t is handled by the exact reflection
//! L_p(-t) = L_{1-p}(t). Inside the configurable seam |t| < seam the
//! cumulant series takes over.

use crate::config::{SeriesPolicy, SolverConfig};
use crate::error::{Error, Result};

/// Tolerance for accepting probabilities slightly outside [0, 1] and for the
/// atom-distribution construction invariants.
const PROB_SLACK: f64 = 1e-15;

/// Below this |t*| the sharp-constant ratio is evaluated through the series
/// for g instead of the 0/0-prone quotient.
const KS_LIMIT_SWITCH: f64 = 1e-4;

/// A probability parameter, validated into [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ProbParam(f64);

impl ProbParam {
    /// Accepts values within 1e-15 of [0, 1] and clamps them; rejects
    /// anything further out or non-finite.
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || p < -PROB_SLACK || p > 1.0 + PROB_SLACK {
            return Err(Error::InvalidProbability { value: p });
        }
        Ok(ProbParam(p.clamp(0.0, 1.0)))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// True for the degenerate endpoints p = 0 and p = 1, where the variable
    /// is a constant zero.
    pub fn is_endpoint(self) -> bool {
        self.0 == 0.0 || self.0 == 1.0
    }
}

/// An ordered parameter pair in the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPair {
    p1: ProbParam,
    p2: ProbParam,
}

impl ParamPair {
    pub fn new(p1: f64, p2: f64) -> Result<Self> {
        Ok(ParamPair {
            p1: ProbParam::new(p1)?,
            p2: ProbParam::new(p2)?,
        })
    }

    pub fn from_params(p1: ProbParam, p2: ProbParam) -> Self {
        ParamPair { p1, p2 }
    }

    #[inline]
    pub fn p1(self) -> f64 {
        self.p1.get()
    }

    #[inline]
    pub fn p2(self) -> f64 {
        self.p2.get()
    }

    pub fn swapped(self) -> Self {
        ParamPair {
            p1: self.p2,
            p2: self.p1,
        }
    }

    /// True if either coordinate sits at an endpoint of [0, 1].
    pub fn degenerate(self) -> bool {
        self.p1.is_endpoint() || self.p2.is_endpoint()
    }
}

/// A Laplace-transform abscissa. Finite except for the critical point of a
/// degenerate parameter, which is flagged as an explicit infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa(f64);

impl Abscissa {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::NonFiniteInput {
                name: "t",
                value: t,
            });
        }
        Ok(Abscissa(t))
    }

    pub(crate) fn from_raw(t: f64) -> Self {
        Abscissa(t)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

/// One atom of a discrete distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: f64,
    pub probability: f64,
}

/// A centered discrete distribution given by its atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomDistribution {
    atoms: Vec<Atom>,
}

impl AtomDistribution {
    /// Builds a distribution, checking non-negativity, total mass one within
    /// 1e-15 and zero mean within 1e-14.
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        let mut mass = 0.0;
        let mut mean = 0.0;
        for a in &atoms {
            if a.probability < -PROB_SLACK {
                return Err(Error::Domain {
                    what: format!("negative atom probability {}", a.probability),
                });
            }
            mass += a.probability;
            mean += a.probability * a.location;
        }
        if (mass - 1.0).abs() > 1e-15 * atoms.len() as f64 {
            return Err(Error::Domain {
                what: format!("atom probabilities sum to {mass}, not 1"),
            });
        }
        if mean.abs() > 1e-14 {
            return Err(Error::Domain {
                what: format!("atom distribution has mean {mean}, not 0"),
            });
        }
        Ok(AtomDistribution { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Exact MGF: the finite sum over atoms of prob * exp(t * location).
    pub fn mgf(&self, t: f64) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.probability * (t * a.location).exp())
            .sum()
    }
}

// ---------------------------------------------------------------------------
// Scalar kernel
// ---------------------------------------------------------------------------

/// L and its first four derivatives at one (p, t).
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogMgfDerivs {
    pub l: f64,
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
}

/// Kernel for t >= 0, factored through E = e^{-t} so that nothing overflows
/// and div-by-zero cannot occur for p in (0, 1):
///
///     L   = q t + log1p(q expm1(-t))
///     L'  = p q (1 - E) / (p + q E)
///     L'' = p q E / (p + q E)^2
///     L''' = p q E (q E - p) / (p + q E)^3
///     L'''' = p q E (q^2 E^2 - 4 p q E + p^2) / (p + q E)^4
fn log_mgf_derivs_nonneg(p: f64, t: f64) -> LogMgfDerivs {
    debug_assert!(t >= 0.0);
    if p == 0.0 || p == 1.0 {
        return LogMgfDerivs {
            l: 0.0,
            l1: 0.0,
            l2: 0.0,
            l3: 0.0,
            l4: 0.0,
        };
    }
    let q = 1.0 - p;
    let e = (-t).exp();
    let em = (-t).exp_m1(); // E - 1, in [-1, 0]
    let den = p + q * e;
    let pq = p * q;
    let qe = q * e;
    let den2 = den * den;
    LogMgfDerivs {
        l: q * t + (q * em).ln_1p(),
        l1: -pq * em / den,
        l2: pq * e / den2,
        l3: pq * e * (qe - p) / (den2 * den),
        l4: pq * e * (qe * qe - 4.0 * pq * e + p * p) / (den2 * den2),
    }
}

/// Kernel for any finite t via the reflection L_p(-t) = L_{1-p}(t); odd
/// derivative orders change sign.
pub(crate) fn log_mgf_derivs(p: f64, t: f64) -> LogMgfDerivs {
    if t >= 0.0 {
        log_mgf_derivs_nonneg(p, t)
    } else {
        let d = log_mgf_derivs_nonneg(1.0 - p, -t);
        LogMgfDerivs {
            l: d.l,
            l1: -d.l1,
            l2: d.l2,
            l3: -d.l3,
            l4: d.l4,
        }
    }
}

// ---------------------------------------------------------------------------
// Cumulant series around t = 0
// ---------------------------------------------------------------------------

const INV_FACT: [f64; 11] = [
    1.0,
    1.0,
    1.0 / 2.0,
    1.0 / 6.0,
    1.0 / 24.0,
    1.0 / 120.0,
    1.0 / 720.0,
    1.0 / 5040.0,
    1.0 / 40320.0,
    1.0 / 362880.0,
    1.0 / 3628800.0,
];

/// Cumulants kappa_2 .. kappa_10 of the centered Bernoulli(p), generated by
/// the recursion kappa_{n+1} = p(1-p) d kappa_n / dp from kappa_2 = p(1-p).
/// With u = p(1-p) and s = 1-2p they are polynomials in u (odd orders carry
/// one factor s).
pub(crate) fn cumulants(p: f64) -> [f64; 11] {
    let u = p * (1.0 - p);
    let s = 1.0 - 2.0 * p;
    let mut k = [0.0; 11];
    k[2] = u;
    k[3] = u * s;
    k[4] = u * (1.0 - 6.0 * u);
    k[5] = u * s * (1.0 - 12.0 * u);
    k[6] = u * (1.0 - u * (30.0 - 120.0 * u));
    k[7] = u * s * (1.0 - u * (60.0 - 360.0 * u));
    k[8] = u * (1.0 - u * (126.0 - u * (1680.0 - 5040.0 * u)));
    k[9] = u * s * (1.0 - u * (252.0 - u * (5040.0 - 20160.0 * u)));
    k[10] = u * (1.0 - u * (510.0 - u * (17640.0 - u * (151200.0 - 362880.0 * u))));
    k
}

/// Series for g (deriv = 0) and g' (deriv = 1):
///     g(t)  = sum_{k=2..order} kappa_k t^{k-2} / k!
///     g'(t) = sum_{k=3..order} (k-2) kappa_k t^{k-3} / k!
fn g_series_from_cumulants(k: &[f64; 11], t: f64, deriv: u8, order: u32) -> f64 {
    let order = order as usize;
    let mut sum = 0.0;
    let mut pw = 1.0;
    match deriv {
        0 => {
            for n in 2..=order {
                sum += k[n] * INV_FACT[n] * pw;
                pw *= t;
            }
        }
        1 => {
            for n in 3..=order {
                sum += (n as f64 - 2.0) * k[n] * INV_FACT[n] * pw;
                pw *= t;
            }
        }
        _ => unreachable!("g series supports derivative orders 0 and 1"),
    }
    sum
}

/// Series for f and its first three derivatives, from
///     f(t) = sum_{k=3..order} (k-2) kappa_k t^k / k!.
fn f_series_from_cumulants(k: &[f64; 11], t: f64, deriv: u8, order: u32) -> f64 {
    let order = order as usize;
    let mut sum = 0.0;
    let mut pw = match deriv {
        0 => t * t * t,
        1 => t * t,
        2 => t,
        3 => 1.0,
        _ => unreachable!("f series supports derivative orders 0..=3"),
    };
    for n in 3..=order {
        let nf = n as f64;
        let factor = match deriv {
            0 => nf - 2.0,
            1 => (nf - 2.0) * nf,
            2 => (nf - 2.0) * nf * (nf - 1.0),
            3 => (nf - 2.0) * nf * (nf - 1.0) * (nf - 2.0),
            _ => unreachable!(),
        };
        sum += factor * k[n] * INV_FACT[n] * pw;
        pw *= t;
    }
    sum
}

// ---------------------------------------------------------------------------
// Raw (f64) evaluators used by the solvers
// ---------------------------------------------------------------------------

pub(crate) fn g_scalar_raw(p: f64, t: f64, deriv: u8, series: &SeriesPolicy) -> f64 {
    if t.abs() < series.seam {
        let k = cumulants(p);
        return g_series_from_cumulants(&k, t, deriv, series.order);
    }
    let d = log_mgf_derivs(p, t);
    match deriv {
        0 => d.l / (t * t),
        1 => (t * d.l1 - 2.0 * d.l) / (t * t * t),
        _ => unreachable!(),
    }
}

pub(crate) fn f_scalar_raw(p: f64, t: f64, deriv: u8, series: &SeriesPolicy) -> f64 {
    // Orders 0 and 1 subtract nearly equal terms near t = 0; the series
    // removes the cancellation. Orders 2 and 3 have no such subtraction.
    if t.abs() < series.seam && deriv <= 1 {
        let k = cumulants(p);
        return f_series_from_cumulants(&k, t, deriv, series.order);
    }
    let d = log_mgf_derivs(p, t);
    match deriv {
        0 => t * d.l1 - 2.0 * d.l,
        1 => t * d.l2 - d.l1,
        2 => t * d.l3,
        3 => d.l3 + t * d.l4,
        _ => unreachable!(),
    }
}

/// Series evaluation of f regardless of the seam; used by high-order
/// differencing at the origin, where only the series is exact in relative
/// terms.
pub(crate) fn f_scalar_series(p: f64, t: f64, deriv: u8, series: &SeriesPolicy) -> f64 {
    let k = cumulants(p);
    f_series_from_cumulants(&k, t, deriv, series.order)
}

pub(crate) fn g_pair_raw(p1: f64, p2: f64, t: f64, deriv: u8, series: &SeriesPolicy) -> f64 {
    g_scalar_raw(p1, t, deriv, series) + g_scalar_raw(p2, t, deriv, series)
}

/// Coefficients (c0, c1, c2) of the degree-two polynomial P with
/// f''_{p1,p2}(t) = prefactor(t) * P(e^t).
pub(crate) fn pair_quad_coeffs(p1: f64, p2: f64) -> (f64, f64, f64) {
    let q1 = 1.0 - p1;
    let q2 = 1.0 - p2;
    let pp = p1 * p2;
    let c0 = q1 * q2 * (2.0 * pp - p1 - p2);
    let c1 = 4.0 * pp * (p1 + p2 - pp) - 6.0 * pp + p1 * p1 + p2 * p2;
    let c2 = pp * (2.0 * pp - p1 - p2);
    (c0, c1, c2)
}

/// Second derivative of the pair f through the factorization
///     f''(t) = t e^t [p1 + p2 - 1 + p1 p2 (e^{2t} - 1)]
///              / (D1^3 D2^3) * P(e^t),
/// whose non-t prefactor zero sits exactly at t*/2. Falls back to the sum of
/// the overflow-safe scalar forms once e^{5t} would leave the double range.
pub(crate) fn f_pair_d2_raw(p1: f64, p2: f64, t: f64) -> f64 {
    if t.abs() > 40.0 {
        let d1 = log_mgf_derivs(p1, t);
        let d2 = log_mgf_derivs(p2, t);
        return t * (d1.l3 + d2.l3);
    }
    let x = t.exp();
    let xm1 = t.exp_m1();
    let d1 = 1.0 + p1 * xm1;
    let d2 = 1.0 + p2 * xm1;
    let bracket = (p1 + p2 - 1.0) + p1 * p2 * (2.0 * t).exp_m1();
    let (c0, c1, c2) = pair_quad_coeffs(p1, p2);
    let quad = c0 + x * (c1 + x * c2);
    t * x * bracket / (d1 * d1 * d1 * d2 * d2 * d2) * quad
}

pub(crate) fn f_pair_raw(p1: f64, p2: f64, t: f64, deriv: u8, series: &SeriesPolicy) -> f64 {
    match deriv {
        2 => f_pair_d2_raw(p1, p2, t),
        _ => f_scalar_raw(p1, t, deriv, series) + f_scalar_raw(p2, t, deriv, series),
    }
}

pub(crate) fn t_star_pair_raw(p1: f64, p2: f64) -> f64 {
    ((1.0 - p1) / p1 * ((1.0 - p2) / p2)).ln()
}

/// Parameter derivative of the scalar f with respect to p, for t >= 0:
///     df/dp = t [W (1-2p) - p q W^2 + 2] - 2 W,  W = (1 - E)/(p + q E).
pub(crate) fn f_scalar_dp(p: f64, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    let q = 1.0 - p;
    let e = (-t).exp();
    let em = (-t).exp_m1();
    let w = -em / (p + q * e);
    t * (w * (1.0 - 2.0 * p) - p * q * w * w + 2.0) - 2.0 * w
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

fn check_finite(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::NonFiniteInput {
            name: "t",
            value: t,
        });
    }
    Ok(t)
}

fn check_order(order: u8, max: u8) -> Result<()> {
    if order > max {
        return Err(Error::InvalidOrder {
            order,
            supported: if max == 1 { "0|1" } else { "0|1|2|3" },
        });
    }
    Ok(())
}

/// log E e^{tX} for X centered Bernoulli(p). Zero at t = 0 and identically
/// zero for the degenerate endpoints p = 0, 1.
pub fn log_mgf_scalar(p: ProbParam, t: f64) -> Result<f64> {
    check_finite(t)?;
    Ok(log_mgf_derivs(p.get(), t).l)
}

/// g_p(t) = log-MGF / t^2 (order 0) or its derivative (order 1), with the
/// removable singularity at t = 0 filled by the cumulant series.
pub fn g_scalar(p: ProbParam, t: f64, order: u8, cfg: &SolverConfig) -> Result<f64> {
    check_finite(t)?;
    check_order(order, 1)?;
    Ok(g_scalar_raw(p.get(), t, order, &cfg.series))
}

/// f_p(t) = t^3 g_p'(t) and its first three derivatives.
pub fn f_scalar(p: ProbParam, t: f64, order: u8, cfg: &SolverConfig) -> Result<f64> {
    check_finite(t)?;
    check_order(order, 3)?;
    Ok(f_scalar_raw(p.get(), t, order, &cfg.series))
}

/// The critical abscissa t*_p = 2 log((1-p)/p); infinite at the endpoints.
pub fn t_star_scalar(p: ProbParam) -> Abscissa {
    let p = p.get();
    Abscissa::from_raw(2.0 * ((1.0 - p) / p).ln())
}

/// The sharp sub-Gaussian constant (1-2p) / (4 log((1-p)/p)), evaluated
/// through the series for g near the removable singularity at p = 1/2.
/// Returns the degenerate constant 0 at the endpoints.
pub fn ks_const_scalar(p: ProbParam) -> f64 {
    if p.is_endpoint() {
        return 0.0;
    }
    let ts = t_star_scalar(p).value();
    if ts.abs() < KS_LIMIT_SWITCH {
        g_scalar_raw(p.get(), ts, 0, &SeriesPolicy::default())
    } else {
        (1.0 - 2.0 * p.get()) / (2.0 * ts)
    }
}

/// Slope of f_p at the critical point: 2p - 1 + 2(1-p)p log((1-p)/p).
/// Negative for p < 1/2, zero at p = 1/2.
pub fn f_prime_at_t_star(p: ProbParam) -> f64 {
    let p = p.get();
    if p == 0.0 {
        return -1.0;
    }
    if p == 1.0 {
        return 1.0;
    }
    2.0 * p - 1.0 + 2.0 * (1.0 - p) * p * ((1.0 - p) / p).ln()
}

/// g for the pair: g_{p1}(t) + g_{p2}(t), orders 0 and 1.
pub fn g_pair(pair: ParamPair, t: f64, order: u8, cfg: &SolverConfig) -> Result<f64> {
    check_finite(t)?;
    check_order(order, 1)?;
    Ok(g_pair_raw(pair.p1(), pair.p2(), t, order, &cfg.series))
}

/// f for the pair: t^3 g'(t) and derivatives up to order 3. Order 2 is the
/// factored closed form with zeros pinned at t = 0 and t = t*/2.
pub fn f_pair(pair: ParamPair, t: f64, order: u8, cfg: &SolverConfig) -> Result<f64> {
    check_finite(t)?;
    check_order(order, 3)?;
    Ok(f_pair_raw(pair.p1(), pair.p2(), t, order, &cfg.series))
}

/// The pair critical abscissa t* = log[(1-p1)/p1 * (1-p2)/p2]; infinite when
/// either parameter is an endpoint.
pub fn t_star_pair(pair: ParamPair) -> Abscissa {
    Abscissa::from_raw(t_star_pair_raw(pair.p1(), pair.p2()))
}

/// The sharp sub-Gaussian constant (1 - p1 - p2) / t* of the pair, with the
/// p1 + p2 = 1 limit (variance/2) evaluated through the series for g.
/// Returns 0 for degenerate pairs.
pub fn ks_const_pair(pair: ParamPair) -> f64 {
    if pair.degenerate() {
        return 0.0;
    }
    let ts = t_star_pair_raw(pair.p1(), pair.p2());
    if ts.abs() < KS_LIMIT_SWITCH {
        g_pair_raw(pair.p1(), pair.p2(), ts, 0, &SeriesPolicy::default())
    } else {
        (1.0 - pair.p1() - pair.p2()) / ts
    }
}

/// The three atoms of the centered two-term sum: locations -p1-p2, 1-p1-p2,
/// 2-p1-p2 with probabilities (1-p1)(1-p2), p1+p2-2p1p2, p1p2.
pub fn atoms_pair(pair: ParamPair) -> AtomDistribution {
    let (p1, p2) = (pair.p1(), pair.p2());
    let shift = p1 + p2;
    let atoms = vec![
        Atom {
            location: -shift,
            probability: (1.0 - p1) * (1.0 - p2),
        },
        Atom {
            location: 1.0 - shift,
            probability: p1 + p2 - 2.0 * p1 * p2,
        },
        Atom {
            location: 2.0 - shift,
            probability: p1 * p2,
        },
    ];
    AtomDistribution::new(atoms).expect("pair atoms always form a centered distribution")
}

/// Exact MGF of the pair from its three atoms.
pub fn mgf_pair(pair: ParamPair, t: f64) -> Result<f64> {
    check_finite(t)?;
    Ok(atoms_pair(pair).mgf(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn p(v: f64) -> ProbParam {
        ProbParam::new(v).unwrap()
    }

    fn pair(a: f64, b: f64) -> ParamPair {
        ParamPair::new(a, b).unwrap()
    }

    const TWO_LN3: f64 = 2.1972245773362196;
    const LN6: f64 = 1.791759469228055;

    #[test]
    fn prob_param_validation() {
        assert!(ProbParam::new(0.5).is_ok());
        assert_eq!(ProbParam::new(-1e-16).unwrap().get(), 0.0);
        assert_eq!(ProbParam::new(1.0 + 1e-16).unwrap().get(), 1.0);
        assert!(ProbParam::new(-1e-14).is_err());
        assert!(ProbParam::new(1.1).is_err());
        assert!(ProbParam::new(f64::NAN).is_err());
    }

    #[test]
    fn log_mgf_at_zero_and_endpoints() {
        assert_eq!(log_mgf_scalar(p(0.5), 0.0).unwrap(), 0.0);
        assert_eq!(log_mgf_scalar(p(0.0), 7.3).unwrap(), 0.0);
        assert_eq!(log_mgf_scalar(p(1.0), -4.1).unwrap(), 0.0);
        assert!(log_mgf_scalar(p(0.5), f64::INFINITY).is_err());
    }

    #[test]
    fn log_mgf_at_critical_point() {
        // L(0.25, 2 ln 3) = (2 ln 3)^2 * (1/(8 ln 3)) = ln(3)/2
        let v = log_mgf_scalar(p(0.25), TWO_LN3).unwrap();
        assert_abs_diff_eq!(v, 0.5493061443340548, epsilon = 1e-15);
    }

    #[test]
    fn g_at_removable_singularity() {
        assert_eq!(g_scalar(p(0.5), 0.0, 0, &cfg()).unwrap(), 0.125);
        assert_eq!(g_scalar(p(0.25), 0.0, 0, &cfg()).unwrap(), 0.09375);
        // g'(0) = p(1-p)(1-2p)/6
        assert_abs_diff_eq!(
            g_scalar(p(0.25), 0.0, 1, &cfg()).unwrap(),
            0.015625,
            epsilon = 1e-17
        );
    }

    #[test]
    fn g_prime_vanishes_at_t_star() {
        let v = g_scalar(p(0.25), TWO_LN3, 1, &cfg()).unwrap();
        assert!(v.abs() < 1e-13, "g'(t*) = {v}");
    }

    #[test]
    fn f_third_derivative_at_zero() {
        // f'''(0) = p(1-p)(1-2p)
        assert_abs_diff_eq!(
            f_scalar(p(0.25), 0.0, 3, &cfg()).unwrap(),
            0.09375,
            epsilon = 1e-16
        );
    }

    #[test]
    fn f_second_derivative_vanishes_at_half_t_star() {
        let v = f_scalar(p(0.25), 3.0f64.ln(), 2, &cfg()).unwrap();
        assert!(v.abs() < 1e-16, "f''(t*/2) = {v}");
    }

    #[test]
    fn f_vanishes_at_origin() {
        for q in [0.1, 0.25, 0.5, 0.9] {
            assert_eq!(f_scalar(p(q), 0.0, 0, &cfg()).unwrap(), 0.0);
        }
    }

    #[test]
    fn t_star_values() {
        assert_eq!(t_star_scalar(p(0.5)).value(), 0.0);
        assert_abs_diff_eq!(t_star_scalar(p(0.25)).value(), TWO_LN3, epsilon = 1e-15);
        assert_abs_diff_eq!(
            t_star_scalar(p(0.75)).value(),
            -TWO_LN3,
            epsilon = 1e-15
        );
        assert!(!t_star_scalar(p(0.0)).is_finite());
        assert!(t_star_scalar(p(0.0)).value() > 0.0);
        assert!(t_star_scalar(p(1.0)).value() < 0.0);
    }

    #[test]
    fn ks_const_scalar_values() {
        assert_eq!(ks_const_scalar(p(0.5)), 0.125);
        // 1/(8 ln 3)
        assert_abs_diff_eq!(
            ks_const_scalar(p(0.25)),
            0.11377990332835467,
            epsilon = 1e-16
        );
        // invariant under p <-> 1-p
        for v in [0.1, 0.3, 0.42] {
            assert_abs_diff_eq!(
                ks_const_scalar(p(v)),
                ks_const_scalar(p(1.0 - v)),
                epsilon = 1e-15
            );
        }
        assert_eq!(ks_const_scalar(p(0.0)), 0.0);
        assert_eq!(ks_const_scalar(p(1.0)), 0.0);
    }

    #[test]
    fn ks_const_scalar_continuous_at_half() {
        // the removable singularity: values just off 1/2 converge to 1/8
        for d in [1e-8, 1e-6] {
            assert_abs_diff_eq!(ks_const_scalar(p(0.5 + d)), 0.125, epsilon = 1e-8);
            assert_abs_diff_eq!(ks_const_scalar(p(0.5 - d)), 0.125, epsilon = 1e-8);
        }
    }

    #[test]
    fn f_prime_at_t_star_values() {
        assert_eq!(f_prime_at_t_star(p(0.5)), 0.0);
        assert_abs_diff_eq!(
            f_prime_at_t_star(p(0.25)),
            -0.08802039174945887,
            epsilon = 1e-16
        );
        assert!(f_prime_at_t_star(p(0.4)) < 0.0);
        // must match the analytic derivative of f at t*
        for v in [0.25, 0.4, 0.37] {
            let ts = t_star_scalar(p(v)).value();
            let direct = f_scalar(p(v), ts, 1, &cfg()).unwrap();
            assert_abs_diff_eq!(f_prime_at_t_star(p(v)), direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn pair_g_is_duplicated_scalar_on_diagonal() {
        let c = cfg();
        for t in [-3.0, -0.004, 0.8, 11.0] {
            let single = g_scalar(p(0.3), t, 0, &c).unwrap();
            let dup = g_pair(pair(0.3, 0.3), t, 0, &c).unwrap();
            assert_eq!(dup, 2.0 * single);
        }
    }

    #[test]
    fn pair_t_star_and_const() {
        assert_abs_diff_eq!(t_star_pair(pair(0.4, 0.2)).value(), LN6, epsilon = 1e-15);
        assert!(t_star_pair(pair(0.3, 0.7)).value().abs() < 1e-15);
        assert_eq!(t_star_pair(pair(0.5, 0.5)).value(), 0.0);
        assert_abs_diff_eq!(
            ks_const_pair(pair(0.4, 0.2)),
            0.22324425062049890,
            epsilon = 1e-16
        );
        // anti-diagonal limit: variance/2 = p1 (1 - p1)
        assert_abs_diff_eq!(ks_const_pair(pair(0.6, 0.4)), 0.24, epsilon = 1e-13);
        // swap symmetry
        assert_eq!(
            ks_const_pair(pair(0.4, 0.2)),
            ks_const_pair(pair(0.2, 0.4))
        );
    }

    #[test]
    fn pair_g_matches_const_at_t_star() {
        let c = cfg();
        let v = g_pair(pair(0.4, 0.2), LN6, 0, &c).unwrap();
        assert_abs_diff_eq!(v, 0.22324425062049890, epsilon = 1e-15);
        let at_zero = g_pair(pair(0.4, 0.2), 0.0, 0, &c).unwrap();
        assert_abs_diff_eq!(at_zero, 0.2, epsilon = 1e-15);
    }

    #[test]
    fn pair_f_values() {
        let c = cfg();
        // f'''(0) = (1 - p1 - p2) * A(p1, p2) = 0.4 * 0.36
        assert_abs_diff_eq!(
            f_pair(pair(0.4, 0.2), 0.0, 3, &c).unwrap(),
            0.144,
            epsilon = 1e-15
        );
        // f(t*) = 0
        let v = f_pair(pair(0.4, 0.2), LN6, 0, &c).unwrap();
        assert!(v.abs() < 1e-13, "f(t*) = {v}");
        // f''(t*/2) = 0 through the factored form
        let v2 = f_pair(pair(0.4, 0.2), LN6 / 2.0, 2, &c).unwrap();
        assert!(v2.abs() < 1e-15, "f''(t*/2) = {v2}");
    }

    #[test]
    fn pair_f_d2_matches_scalar_sum() {
        let c = cfg();
        for (a, b, t) in [
            (0.4, 0.2, 0.7),
            (0.45, 0.05, 1.3),
            (0.7, 0.1, -0.9),
            (0.85, 0.15, 2.0),
            (0.3, 0.1, 25.0),
            (0.3, 0.1, 45.0),
        ] {
            let factored = f_pair(pair(a, b), t, 2, &c).unwrap();
            let summed =
                f_scalar(p(a), t, 2, &c).unwrap() + f_scalar(p(b), t, 2, &c).unwrap();
            let scale = factored.abs().max(summed.abs()).max(1e-30);
            assert!(
                ((factored - summed) / scale).abs() < 1e-10,
                "mismatch at ({a},{b},{t}): {factored} vs {summed}"
            );
        }
    }

    #[test]
    fn atoms_of_reference_pair() {
        let d = atoms_pair(pair(0.4, 0.2));
        let a = d.atoms();
        assert_abs_diff_eq!(a[0].location, -0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(a[0].probability, 0.48, epsilon = 1e-15);
        assert_abs_diff_eq!(a[1].location, 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(a[1].probability, 0.44, epsilon = 1e-15);
        assert_abs_diff_eq!(a[2].location, 1.4, epsilon = 1e-15);
        assert_abs_diff_eq!(a[2].probability, 0.08, epsilon = 1e-15);
    }

    #[test]
    fn mgf_identity() {
        let c = cfg();
        let pr = pair(0.4, 0.2);
        assert_abs_diff_eq!(mgf_pair(pr, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        for t in [-20.0, -3.0, -0.5, 0.003, 1.0, 7.0, 28.0] {
            let mgf = mgf_pair(pr, t).unwrap();
            let via_g = (t * t * g_pair(pr, t, 0, &c).unwrap()).exp();
            assert!(
                ((mgf - via_g) / mgf).abs() < 1e-12,
                "identity fails at t = {t}"
            );
        }
    }

    #[test]
    fn seam_continuity() {
        // Evaluate the same t once through the series and once directly by
        // moving the seam around it.
        let mut wide = cfg();
        wide.series.seam = 2e-2;
        let mut narrow = cfg();
        narrow.series.seam = 5e-3;
        for pv in [0.05, 0.25, 0.5, 0.62, 0.9] {
            for sign in [-1.0, 1.0] {
                for mag in [0.009, 0.01, 0.011] {
                    let t = sign * mag;
                    for deriv in 0..=1 {
                        let s = g_scalar(p(pv), t, deriv, &wide).unwrap();
                        let d = g_scalar(p(pv), t, deriv, &narrow).unwrap();
                        assert!(
                            (s - d).abs() < 1e-11,
                            "seam mismatch g^{deriv} p={pv} t={t}: {s} vs {d}"
                        );
                    }
                    for deriv in 0..=1u8 {
                        let s = f_scalar(p(pv), t, deriv, &wide).unwrap();
                        let d = f_scalar(p(pv), t, deriv, &narrow).unwrap();
                        assert!(
                            (s - d).abs() < 1e-11,
                            "seam mismatch f^{deriv} p={pv} t={t}: {s} vs {d}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_endpoints_are_zero_variables() {
        let c = cfg();
        for t in [-9.0, 0.0, 0.002, 17.0] {
            assert_eq!(g_scalar(p(0.0), t, 0, &c).unwrap(), 0.0);
            assert_eq!(g_scalar(p(1.0), t, 0, &c).unwrap(), 0.0);
            assert_eq!(f_scalar(p(0.0), t, 0, &c).unwrap(), 0.0);
        }
    }

    #[test]
    fn large_t_is_finite_and_stable() {
        let c = cfg();
        // far tails: no overflow, correct signs
        let v = g_scalar(p(0.3), 600.0, 0, &c).unwrap();
        assert!(v.is_finite() && v > 0.0);
        let w = g_scalar(p(0.3), -600.0, 0, &c).unwrap();
        assert!(w.is_finite() && w > 0.0);
        let f = f_scalar(p(0.3), 600.0, 0, &c).unwrap();
        assert!(f < 0.0);
    }

    #[test]
    fn rejects_bad_orders() {
        let c = cfg();
        assert!(g_scalar(p(0.3), 1.0, 2, &c).is_err());
        assert!(f_scalar(p(0.3), 1.0, 4, &c).is_err());
    }
}
