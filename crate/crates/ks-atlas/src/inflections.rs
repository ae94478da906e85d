//! Inflection structure of the pair function f: the degree-two polynomial
//! behind its second derivative, the classification quantities, and the
//! anti-diagonal boundary case.

use crate::config::SolverConfig;
use crate::error::{Error, Result};
use crate::eval::{f_pair_raw, f_scalar_raw, pair_quad_coeffs, t_star_pair_raw, ParamPair};
use crate::roots;

/// (3 + sqrt(3)) / 6: the parameter where all region boundaries meet the
/// anti-diagonal.
pub const P_PLUS: f64 = 0.7886751345948129;
/// (3 - sqrt(3)) / 6.
pub const P_MINUS: f64 = 0.21132486540518713;

/// The pair of constants (p+, p-).
pub fn p_plus_minus() -> (f64, f64) {
    (P_PLUS, P_MINUS)
}

/// Coefficients of c0 + c1 x + c2 x^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadCoeffs {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl QuadCoeffs {
    pub fn eval(&self, x: f64) -> f64 {
        self.c0 + x * (self.c1 + x * self.c2)
    }

    pub fn discriminant(&self) -> f64 {
        self.c1 * self.c1 - 4.0 * self.c0 * self.c2
    }

    /// Real roots in ascending order, via the cancellation-free form
    /// q = -(c1 + sign(c1) sqrt(disc))/2, roots q/c2 and c0/q.
    pub fn roots(&self) -> Option<(f64, f64)> {
        let disc = self.discriminant();
        if disc < 0.0 {
            return None;
        }
        if self.c2 == 0.0 {
            if self.c1 == 0.0 {
                return None;
            }
            let r = -self.c0 / self.c1;
            return Some((r, r));
        }
        if disc == 0.0 {
            let r = -0.5 * self.c1 / self.c2;
            return Some((r, r));
        }
        let q = -0.5 * (self.c1 + disc.sqrt().copysign(self.c1));
        let (r0, r1) = (q / self.c2, self.c0 / q);
        Some((r0.min(r1), r0.max(r1)))
    }
}

/// The quantity 2 p1 p2 - p1 (2 p1 - 1) - p2 (2 p2 - 1), whose sign decides
/// membership in region A (it carries the sign of f'''(0) inside the
/// canonical triangle).
pub fn cond_a(pair: ParamPair) -> f64 {
    let (p1, p2) = (pair.p1(), pair.p2());
    2.0 * p1 * p2 - p1 * (2.0 * p1 - 1.0) - p2 * (2.0 * p2 - 1.0)
}

/// The quantity 12 p1 p2 (p1 p2 + p1 + p2) - 14 p1 p2 + p1^2 + p2^2, whose
/// non-positivity defines region D.
pub fn disc_d(pair: ParamPair) -> f64 {
    let (p1, p2) = (pair.p1(), pair.p2());
    let pp = p1 * p2;
    12.0 * pp * (pp + p1 + p2) - 14.0 * pp + p1 * p1 + p2 * p2
}

/// The degree-two polynomial P with f''_{p1,p2}(t) = prefactor(t) P(e^t).
pub fn pair_poly(pair: ParamPair) -> QuadCoeffs {
    let (c0, c1, c2) = pair_quad_coeffs(pair.p1(), pair.p2());
    QuadCoeffs { c0, c1, c2 }
}

/// Shape taxonomy of f by its inflection count and placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeClass {
    /// Only the two inflections at 0 and t*/2.
    TwoInflections,
    /// Degenerate third inflection at t* (the A boundary).
    DegenerateThree,
    /// Four inflections with t^- < 0 and t^+ > t*.
    FourNegA,
    /// Four inflections with 0 < t^- < t*/2 < t^+ < t*.
    FourPosA,
    /// On the diagonal p1 = p2: the polynomial has a negative double root,
    /// so no extra inflection for any p.
    Diagonal,
    /// On the anti-diagonal p2 = 1 - p1: f is symmetric; see
    /// [`boundary_inflections`].
    AntiDiagonalSym,
}

/// Concavity transition across an inflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transition {
    ConcaveToConvex,
    ConvexToConcave,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inflection {
    pub t: f64,
    /// None marks a degenerate contact where the third derivative also
    /// vanishes.
    pub transition: Option<Transition>,
}

/// Ordered inflection abscissas of f.
#[derive(Debug, Clone, PartialEq)]
pub struct InflectionSet {
    pub inflections: Vec<Inflection>,
}

fn transition_at(pair: ParamPair, t: f64, cfg: &SolverConfig) -> Option<Transition> {
    let d3 = f_pair_raw(pair.p1(), pair.p2(), t, 3, &cfg.series);
    if d3 > cfg.band {
        Some(Transition::ConcaveToConvex)
    } else if d3 < -cfg.band {
        Some(Transition::ConvexToConcave)
    } else {
        None
    }
}

/// True when the pair lies strictly inside the canonical triangle
/// 0 < p2 < min(p1, 1 - p1).
fn strictly_inside_triangle(pair: ParamPair) -> bool {
    let (p1, p2) = (pair.p1(), pair.p2());
    p2 > 0.0 && p2 < p1.min(1.0 - p1)
}

/// Inflection abscissas of f for a pair strictly inside the canonical
/// triangle: always 0 and t*/2, plus log of any positive real roots of the
/// quadratic behind f''.
pub fn inflection_set(pair: ParamPair, cfg: &SolverConfig) -> Result<InflectionSet> {
    if !strictly_inside_triangle(pair) {
        return Err(Error::BoundaryCase {
            p1: pair.p1(),
            p2: pair.p2(),
        });
    }
    let ts = t_star_pair_raw(pair.p1(), pair.p2());
    let mut abscissas = vec![0.0, 0.5 * ts];
    let quad = pair_poly(pair);
    if quad.discriminant() > 0.0 {
        if let Some((x_lo, x_hi)) = quad.roots() {
            for x in [x_lo, x_hi] {
                if x > 0.0 {
                    abscissas.push(x.ln());
                }
            }
        }
    }
    abscissas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    abscissas.dedup_by(|a, b| (*a - *b).abs() <= cfg.band);
    let inflections = abscissas
        .into_iter()
        .map(|t| Inflection {
            t,
            transition: transition_at(pair, t, cfg),
        })
        .collect();
    Ok(InflectionSet { inflections })
}

/// Shape classification. The four-case split follows the sign of the
/// polynomial's true discriminant (see [`disc_sign_mismatch`] for how that
/// relates to the sign of [`disc_d`]), with the A-quantity deciding the
/// placement of the extra roots.
pub fn shape_class(pair: ParamPair, cfg: &SolverConfig) -> ShapeClass {
    let (p1, p2) = (pair.p1(), pair.p2());
    if (p1 - p2).abs() <= cfg.band {
        return ShapeClass::Diagonal;
    }
    if (p1 + p2 - 1.0).abs() <= cfg.band {
        return ShapeClass::AntiDiagonalSym;
    }
    let disc = pair_poly(pair).discriminant();
    if disc <= cfg.band {
        return ShapeClass::TwoInflections;
    }
    let a = cond_a(pair);
    if a.abs() <= cfg.band {
        ShapeClass::DegenerateThree
    } else if a < 0.0 {
        ShapeClass::FourNegA
    } else {
        ShapeClass::FourPosA
    }
}

/// True where sign(disc_d) disagrees with the sign of the true discriminant
/// of the quadratic behind f''. The two differ by
///     c1^2 - 4 c0 c2 = (p1 - p2)^2 (disc_d - 24 p1^2 p2^2),
/// so a band around the diagonal reports disc_d > 0 while no extra real
/// roots exist; the classification above always follows the true
/// discriminant, and the mismatch is catalogued by the consistency report.
pub fn disc_sign_mismatch(pair: ParamPair, tol: f64) -> bool {
    let d = disc_d(pair);
    let true_disc = pair_poly(pair).discriminant();
    if d.abs() <= tol || true_disc.abs() <= tol {
        return false;
    }
    (d > 0.0) != (true_disc > 0.0)
}

/// Anti-diagonal analysis result for the pair (p1, 1 - p1).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryShape {
    pub p1: f64,
    /// Inflection abscissas (symmetric pair, empty for p1 <= p+ where the
    /// origin is a degenerate flat contact and there are no others).
    pub inflections: Vec<f64>,
    /// Positive zero of f for p1 > p+; None otherwise.
    pub t_dagger: Option<f64>,
}

/// The boundary polynomial with f''_{p1,1-p1}(t) = prefactor(t) P(e^t):
/// P(x) = -p1 q1 (1 - 2 p1 q1)(1 + x^2) + [1 - 4 p1 (1 - 2 p1^2 + p1^3)] x.
pub fn boundary_poly(p1: f64) -> QuadCoeffs {
    let q1 = 1.0 - p1;
    let u = p1 * q1;
    let a = u * (1.0 - 2.0 * u);
    let b = 1.0 - 4.0 * p1 * (1.0 - 2.0 * p1 * p1 + p1 * p1 * p1);
    QuadCoeffs {
        c0: -a,
        c1: b,
        c2: -a,
    }
}

/// Inflection and sign structure of f on the anti-diagonal. For
/// 1/2 <= p1 <= p+ the function is non-positive with a flat contact at the
/// origin; beyond p+ it develops a symmetric pair of inflections and a
/// positive zero t_dagger, located by bisection after geometric bracket
/// expansion up to t = 60.
pub fn boundary_inflections(p1: f64, cfg: &SolverConfig) -> Result<BoundaryShape> {
    if !(0.5..=1.0).contains(&p1) {
        return Err(Error::Domain {
            what: format!("boundary analysis expects p1 in [1/2, 1], got {p1}; reflect p -> 1-p first"),
        });
    }
    let p2 = 1.0 - p1;
    if p1 <= P_PLUS {
        return Ok(BoundaryShape {
            p1,
            inflections: Vec::new(),
            t_dagger: None,
        });
    }
    let mut inflections = Vec::new();
    if let Some((x_lo, x_hi)) = boundary_poly(p1).roots() {
        for x in [x_lo, x_hi] {
            if x > 0.0 {
                inflections.push(x.ln());
            }
        }
        inflections.sort_by(|a, b| a.partial_cmp(b).unwrap());
    }
    // f > 0 just right of the origin (fourth derivative 4 p1 q1 (1 - 6 p1 q1)
    // is positive past p+), and f -> -infinity; expand until the sign flips.
    const T_MAX: f64 = 60.0;
    let f = |t: f64| f_pair_raw(p1, p2, t, 0, &cfg.series);
    let mut lo = 0.5;
    while f(lo) <= 0.0 {
        lo *= 0.5;
        if lo < 1e-8 {
            return Err(Error::NoBracket {
                what: format!("no positive start for the t-dagger bracket at p1 = {p1}"),
            });
        }
    }
    let mut hi = lo.max(1.0);
    while f(hi) > 0.0 {
        hi *= 2.0;
        if hi > T_MAX {
            return Err(Error::NoBracket {
                what: format!("f stays positive up to t = {T_MAX} at p1 = {p1}"),
            });
        }
    }
    let t_dagger = roots::bisect(f, lo, hi, cfg.max_iter)?;
    Ok(BoundaryShape {
        p1,
        inflections,
        t_dagger: Some(t_dagger),
    })
}

/// Scalar inflection abscissas (0 and t*/2 = log((1-p)/p)) of the
/// single-parameter f, for cross-checks against the pair machinery on the
/// diagonal.
pub fn scalar_inflections(p: f64, cfg: &SolverConfig) -> Vec<f64> {
    let half_t_star = ((1.0 - p) / p).ln();
    let mut v = vec![0.0, half_t_star];
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let _ = cfg;
    v
}

/// f'' for the scalar case in closed form (used directly by tests).
pub fn f_scalar_d2(p: f64, t: f64, cfg: &SolverConfig) -> f64 {
    f_scalar_raw(p, t, 2, &cfg.series)
}
