//! The planar outer billiard map on strictly convex closed curves.
//!
//! For a point `A` outside the curve, the map reflects `A` through the
//! tangency point of the right tangent ray. Tangencies are bracketed by
//! coarse sampling of `cross(position(s) - A, position'(s))` and refined by
//! safeguarded Newton steps. With a counterclockwise parametrization the
//! right tangency is the one where that cross product changes sign from
//! negative to positive.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::BivariatePolynomial;

pub const DEFAULT_TANGENCY_TOL: f64 = 1e-12;
const COARSE_SAMPLES: usize = 720;
const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Parametric strictly convex closed curve, `s` in `[0, 2*pi)`.
pub trait ConvexCurve {
    fn position(&self, s: f64) -> (f64, f64);
    fn velocity(&self, s: f64) -> (f64, f64);
    fn acceleration(&self, s: f64) -> (f64, f64);
    fn descriptor(&self) -> String;
}

/// Axis-aligned ellipse `x^2/a^2 + y^2/b^2 = 1`, counterclockwise.
#[derive(Clone, Copy, Debug)]
pub struct Ellipse {
    pub a: f64,
    pub b: f64,
}

impl Ellipse {
    pub fn new(a: f64, b: f64) -> Self {
        assert!(a > 0.0 && b > 0.0, "semi-axes must be positive");
        Ellipse { a, b }
    }

    pub fn circle(r: f64) -> Self {
        Ellipse::new(r, r)
    }

    /// The invariant quadratic form `x^2/a^2 + y^2/b^2`.
    pub fn quadratic_form(&self, x: f64, y: f64) -> f64 {
        (x / self.a).powi(2) + (y / self.b).powi(2)
    }
}

impl ConvexCurve for Ellipse {
    fn position(&self, s: f64) -> (f64, f64) {
        (self.a * s.cos(), self.b * s.sin())
    }
    fn velocity(&self, s: f64) -> (f64, f64) {
        (-self.a * s.sin(), self.b * s.cos())
    }
    fn acceleration(&self, s: f64) -> (f64, f64) {
        (-self.a * s.cos(), -self.b * s.sin())
    }
    fn descriptor(&self) -> String {
        format!("ellipse a={} b={}", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    pub points: Vec<(f64, f64)>,
    pub tangency_params: Vec<f64>,
    pub residuals: Vec<f64>,
}

fn cross(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn tangency_fn(curve: &dyn ConvexCurve, a: (f64, f64), s: f64) -> f64 {
    let p = curve.position(s);
    let v = curve.velocity(s);
    cross((p.0 - a.0, p.1 - a.1), v)
}

fn tangency_fn_deriv(curve: &dyn ConvexCurve, a: (f64, f64), s: f64) -> f64 {
    let p = curve.position(s);
    let acc = curve.acceleration(s);
    cross((p.0 - a.0, p.1 - a.1), acc)
}

/// Winding number of the sampled curve around `a`; `+1` inside a
/// counterclockwise curve, `0` outside.
pub fn winding_number(curve: &dyn ConvexCurve, a: (f64, f64)) -> i32 {
    let mut total = 0.0;
    let mut prev = {
        let p = curve.position(0.0);
        (p.1 - a.1).atan2(p.0 - a.0)
    };
    for k in 1..=COARSE_SAMPLES {
        let s = TAU * k as f64 / COARSE_SAMPLES as f64;
        let p = curve.position(s);
        let ang = (p.1 - a.1).atan2(p.0 - a.0);
        let mut d = ang - prev;
        while d > std::f64::consts::PI {
            d -= TAU;
        }
        while d < -std::f64::consts::PI {
            d += TAU;
        }
        total += d;
        prev = ang;
    }
    (total / TAU).round() as i32
}

fn assert_outside(curve: &dyn ConvexCurve, a: (f64, f64)) -> Result<()> {
    let min_dist = (0..COARSE_SAMPLES)
        .map(|k| {
            let s = TAU * k as f64 / COARSE_SAMPLES as f64;
            let p = curve.position(s);
            ((p.0 - a.0).powi(2) + (p.1 - a.1).powi(2)).sqrt()
        })
        .fold(f64::INFINITY, f64::min);
    if min_dist < 1e-9 || winding_number(curve, a) != 0 {
        return Err(Error::PointNotOutside);
    }
    Ok(())
}

/// Both tangency parameters, each refined to `tol` in `s`.
fn tangencies(curve: &dyn ConvexCurve, a: (f64, f64), tol: f64) -> Result<Vec<f64>> {
    assert_outside(curve, a)?;
    let mut brackets = Vec::new();
    let mut prev_s = 0.0;
    let mut prev_g = tangency_fn(curve, a, 0.0);
    for k in 1..=COARSE_SAMPLES {
        let s = TAU * k as f64 / COARSE_SAMPLES as f64;
        let g = tangency_fn(curve, a, s);
        if prev_g == 0.0 {
            brackets.push((prev_s, prev_s));
        } else if prev_g * g < 0.0 {
            brackets.push((prev_s, s));
        }
        prev_s = s;
        prev_g = g;
    }
    let mut roots = Vec::new();
    for (mut lo, mut hi) in brackets {
        let mut s = 0.5 * (lo + hi);
        let mut converged = false;
        for _ in 0..100 {
            let g = tangency_fn(curve, a, s);
            if g.abs() < tol * (1.0 + a.0.abs() + a.1.abs()) {
                converged = true;
                break;
            }
            let dg = tangency_fn_deriv(curve, a, s);
            let mut next = if dg.abs() > 1e-300 { s - g / dg } else { lo - 1.0 };
            if next <= lo.min(hi) || next >= lo.max(hi) {
                // bisection fallback
                let glo = tangency_fn(curve, a, lo);
                if glo * g < 0.0 {
                    hi = s;
                } else {
                    lo = s;
                }
                next = 0.5 * (lo + hi);
            }
            if (next - s).abs() < tol {
                s = next;
                converged = true;
                break;
            }
            s = next;
        }
        if !converged && tangency_fn(curve, a, s).abs() > 1e-6 {
            return Err(Error::TangencyNonConvergence);
        }
        roots.push(s.rem_euclid(TAU));
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-9);
    if roots.len() < 2 {
        return Err(Error::TangencyNonConvergence);
    }
    Ok(roots)
}

/// The tangency parameter of the right tangent ray from `a`.
pub fn right_tangency(curve: &dyn ConvexCurve, a: (f64, f64), tol: f64) -> Result<f64> {
    tangency_for_side(curve, a, tol, Side::Right)
}

pub fn tangency_for_side(
    curve: &dyn ConvexCurve,
    a: (f64, f64),
    tol: f64,
    side: Side,
) -> Result<f64> {
    let roots = tangencies(curve, a, tol)?;
    let want_positive = side == Side::Right;
    roots
        .into_iter()
        .find(|&s| {
            let d = tangency_fn_deriv(curve, a, s);
            (d > 0.0) == want_positive
        })
        .ok_or(Error::TangencyNonConvergence)
}

/// One application of the outer billiard map: `T(A) = 2 P - A`.
pub fn step(curve: &dyn ConvexCurve, a: (f64, f64), tol: f64) -> Result<(f64, f64)> {
    step_with(curve, a, tol, Side::Right).map(|(p, _)| p)
}

pub fn step_with(
    curve: &dyn ConvexCurve,
    a: (f64, f64),
    tol: f64,
    side: Side,
) -> Result<((f64, f64), f64)> {
    let s = tangency_for_side(curve, a, tol, side)?;
    let p = curve.position(s);
    Ok(((2.0 * p.0 - a.0, 2.0 * p.1 - a.1), s))
}

/// Iterate the map `n` times, recording each image. When `integral` is
/// given, the residual column holds `|f(x_k) - f(A)|`; otherwise it holds
/// the tangency residual.
pub fn orbit(
    curve: &dyn ConvexCurve,
    a: (f64, f64),
    n: usize,
    tol: f64,
    integral: Option<&BivariatePolynomial>,
) -> Result<OrbitRecord> {
    use num_complex::Complex64;
    let f0 = integral.map(|f| f.eval(Complex64::new(a.0, 0.0), Complex64::new(a.1, 0.0)).re);
    let mut rec = OrbitRecord {
        points: vec![a],
        tangency_params: vec![f64::NAN],
        residuals: vec![0.0],
    };
    let mut cur = a;
    for k in 0..n {
        let (next, s) = match step_with(curve, cur, tol, Side::Right) {
            Ok(v) => v,
            Err(Error::PointNotOutside) => {
                return Err(Error::OrbitEnteredCurve { step: k + 1});
            }
            Err(e) => return Err(e),
        };
        let residual = match (integral, f0) {
            (Some(f), Some(v0)) => {
                let v = f
                    .eval(Complex64::new(next.0, 0.0), Complex64::new(next.1, 0.0))
                    .re;
                (v - v0).abs()
            }
            _ => tangency_fn(curve, next, s).abs(),
        };
        rec.points.push(next);
        rec.tangency_params.push(s);
        rec.residuals.push(residual);
        cur = next;
    }
    Ok(rec)
}

/// `|f(T(A)) - f(A)|` for a candidate polynomial integral.
pub fn invariance_residual(
    curve: &dyn ConvexCurve,
    f: &BivariatePolynomial,
    a: (f64, f64),
    tol: f64,
) -> Result<f64> {
    use num_complex::Complex64;
    let t = step(curve, a, tol)?;
    let va = f.eval(Complex64::new(a.0, 0.0), Complex64::new(a.1, 0.0)).re;
    let vt = f.eval(Complex64::new(t.0, 0.0), Complex64::new(t.1, 0.0)).re;
    Ok((vt - va).abs())
}

/// Central finite-difference Jacobian determinant of the map at `a`;
/// area preservation predicts 1.
pub fn jacobian_determinant(curve: &dyn ConvexCurve, a: (f64, f64), h: f64) -> Result<f64> {
    let eval = |p: (f64, f64)| -> Result<((f64, f64), f64)> { step_with(curve, p, DEFAULT_TANGENCY_TOL, Side::Right) };
    let (xp, sxp) = eval((a.0 + h, a.1))?;
    let (xm, sxm) = eval((a.0 - h, a.1))?;
    let (yp, syp) = eval((a.0, a.1 + h))?;
    let (ym, sym) = eval((a.0, a.1 - h))?;
    // the map is discontinuous where the tangency jumps between arcs
    let max_jump = [(sxp, sxm), (syp, sym)]
        .iter()
        .map(|(u, v)| {
            let mut d = (u - v).abs() % TAU;
            if d > std::f64::consts::PI {
                d = TAU - d;
            }
            d
        })
        .fold(0.0f64, f64::max);
    if max_jump > 0.5 {
        return Err(Error::JacobianStencilDiscontinuity);
    }
    let j00 = (xp.0 - xm.0) / (2.0 * h);
    let j10 = (xp.1 - xm.1) / (2.0 * h);
    let j01 = (yp.0 - ym.0) / (2.0 * h);
    let j11 = (yp.1 - ym.1) / (2.0 * h);
    Ok(j00 * j11 - j01 * j10)
}
