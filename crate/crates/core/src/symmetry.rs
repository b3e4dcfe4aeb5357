//! Relative symmetry, epsilon-evenness and skew-Hessian constancy checks.
//!
//! The integral enters as a supplied factorization `f = g * Psi^m`, so the
//! leaf `F = f^{1/m} = g^{1/m} Psi` is explicit once an m-th root branch of
//! `g` is fixed. All tests here are sampled verifications: the tangent-line
//! intersection multiset, the evenness of `U(x,y,eps) = F(x + eps F_y,
//! y - eps F_x)` in `eps`, the constancy of `H(F) = g^{3/m} H(Psi)` along
//! the curve, and the proportionality of the `eps^3` coefficient to
//! `dH(F)/dV` with `V = F_y d/dx - F_x d/dy`.

use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::{rat, BivariatePolynomial, CPoly, Rat, RootMultiset};

type C = Complex64;

pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-7;

/// Verdict on the central symmetry of a tangent-line intersection multiset.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    /// Curve point whose tangent line was intersected, when known.
    pub base_point: Option<(C, C)>,
    /// Intersection parameters on the affine tangent line.
    pub roots: RootMultiset,
    /// Line parameter of the base point (0 for tangent lines through it).
    pub center: C,
    /// Pairs `(u, u')` matched by the symmetry `u -> 2 center - u`.
    pub matched_pairs: Vec<(C, C)>,
    /// Max over pairs of `|(u + u')/2 - center|`.
    pub defect: f64,
    pub unmatched: usize,
    pub symmetric: bool,
}

/// A supplied integral factorization `f = g * Psi^m` with a chosen leaf of
/// `F = f^{1/m}`.
#[derive(Clone, Debug)]
pub struct LeafContext {
    pub psi: BivariatePolynomial,
    pub g: BivariatePolynomial,
    pub m: u32,
    /// Index of the m-th root branch of `g` fixed at the base sample.
    pub leaf: u32,
}

impl LeafContext {
    pub fn new(psi: BivariatePolynomial, g: BivariatePolynomial, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Other("multiplicity m must be positive".to_string()));
        }
        if psi.is_zero() || g.is_zero() {
            return Err(Error::DegeneratePolynomial);
        }
        Ok(LeafContext {
            psi,
            g,
            m,
            leaf: 0,
        })
    }

    pub fn with_leaf(mut self, leaf: u32) -> Self {
        self.leaf = leaf % self.m;
        self
    }

    /// The integral `f = g * Psi^m`, reconstructed exactly.
    pub fn integral(&self) -> BivariatePolynomial {
        &self.g * &self.psi.pow(self.m)
    }

    /// Chosen branch of `g^{1/m}` at a point.
    fn g_root(&self, p: (C, C)) -> Result<C> {
        let gv = self.g.eval(p.0, p.1);
        if gv.norm() < 1e-13 {
            return Err(Error::BranchingLocus);
        }
        let (r, th) = gv.to_polar();
        let m = self.m as f64;
        Ok(C::from_polar(
            r.powf(1.0 / m),
            (th + 2.0 * std::f64::consts::PI * self.leaf as f64) / m,
        ))
    }

    /// `F` value and gradient at `p` on the chosen leaf:
    /// `F = h Psi`, `h = g^{1/m}`, `grad h = h grad g / (m g)`.
    pub fn leaf_value_grad(&self, p: (C, C)) -> Result<(C, (C, C))> {
        let h = self.g_root(p)?;
        let gv = self.g.eval(p.0, p.1);
        let psi_v = self.psi.eval(p.0, p.1);
        let (gx, gy) = self.g.gradient(p.0, p.1);
        let (px, py) = self.psi.gradient(p.0, p.1);
        let m = C::new(self.m as f64, 0.0);
        let hx = h * gx / (m * gv);
        let hy = h * gy / (m * gv);
        Ok((h * psi_v, (hx * psi_v + h * px, hy * psi_v + h * py)))
    }

    /// `H(F) = g^{3/m} H(Psi)` on the curve, on the chosen leaf.
    pub fn hf_on_curve(&self, p: (C, C)) -> Result<C> {
        let h = self.g_root(p)?;
        let hpsi = self.psi.skew_hessian();
        Ok(h.powu(3) * hpsi.eval(p.0, p.1))
    }
}

fn assert_on_curve(psi: &BivariatePolynomial, t: (C, C), tol: f64) -> Result<()> {
    let scale: f64 = psi
        .terms()
        .map(|(_, c)| crate::polycore::rat_to_f64(c).abs())
        .fold(1.0, f64::max);
    let v = psi.eval(t.0, t.1).norm();
    if v > tol.max(1e-9) * scale {
        return Err(Error::PointNotOnCurve { value: v });
    }
    Ok(())
}

/// Unit tangent direction of `{Psi = 0}` at a smooth point.
pub fn tangent_direction(psi: &BivariatePolynomial, t: (C, C)) -> Result<(C, C)> {
    let (px, py) = psi.gradient(t.0, t.1);
    let v = (py, -px);
    let n = (v.0.norm_sqr() + v.1.norm_sqr()).sqrt();
    if n < 1e-12 {
        return Err(Error::SingularPoint);
    }
    Ok((v.0 / n, v.1 / n))
}

/// Intersection parameters of the tangent line `T_t{Psi=0}` with `{Gamma=0}`.
pub fn tangent_line_intersections(
    psi: &BivariatePolynomial,
    gamma: &BivariatePolynomial,
    t: (C, C),
    tol: f64,
) -> Result<RootMultiset> {
    assert_on_curve(psi, t, tol)?;
    let v = tangent_direction(psi, t)?;
    let restricted = CPoly::from_exact(gamma).restrict_to_line(t, v);
    if restricted.is_zero() {
        return Err(Error::DegeneratePolynomial);
    }
    restricted.roots(1e-12)
}

/// Greedy pairing of the multiset against its reflection about `center`.
pub fn check_central_symmetry(ms: &RootMultiset, center: C, tol: f64) -> SymmetryReport {
    let pts = ms.expanded();
    // scale-normalize the tolerance by the multiset diameter
    let diameter = pts
        .iter()
        .flat_map(|a| pts.iter().map(move |b| (a - b).norm()))
        .fold(0.0f64, f64::max);
    let eff_tol = tol * diameter.max(1.0);
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        (pts[a].re, pts[a].im)
            .partial_cmp(&(pts[b].re, pts[b].im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut used = vec![false; pts.len()];
    let mut matched_pairs = Vec::new();
    let mut defect = 0.0f64;
    let mut unmatched = 0usize;
    for &i in &order {
        if used[i] {
            continue;
        }
        used[i] = true;
        let target = 2.0 * center - pts[i];
        // nearest unused partner; the point itself may self-pair when it
        // sits at the center
        let mut best: Option<(usize, f64)> = None;
        if (pts[i] - target).norm() <= 2.0 * eff_tol {
            best = Some((i, (pts[i] - target).norm()));
        }
        for (j, pj) in pts.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (pj - target).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, d)) if d <= 2.0 * eff_tol => {
                if j != i {
                    used[j] = true;
                }
                let pair_defect = ((pts[i] + pts[j]) / 2.0 - center).norm();
                defect = defect.max(pair_defect);
                matched_pairs.push((pts[i], pts[j]));
            }
            _ => unmatched += 1,
        }
    }
    SymmetryReport {
        base_point: None,
        roots: ms.clone(),
        center,
        matched_pairs,
        defect,
        unmatched,
        symmetric: unmatched == 0 && defect <= eff_tol,
    }
}

/// Full Definition-1 check at one curve point: tangent-line intersection
/// multiset paired about the tangency parameter.
pub fn relative_symmetry_report(
    psi: &BivariatePolynomial,
    gamma: &BivariatePolynomial,
    t: (C, C),
    tol: f64,
) -> Result<SymmetryReport> {
    let ms = tangent_line_intersections(psi, gamma, t, tol)?;
    let mut report = check_central_symmetry(&ms, C::new(0.0, 0.0), tol);
    report.base_point = Some(t);
    Ok(report)
}

/// Exact Taylor coefficients in `eps` of `U = F(x + eps F_y, y - eps F_x)`
/// as polynomials in `(x, y)`, for a polynomial `F` (the m = 1 case):
/// `u_k = sum_{i+j=k} F^{(i,j)} F_y^i (-F_x)^j / (i! j!)`.
pub fn u_coefficients(f: &BivariatePolynomial, order: usize) -> Vec<BivariatePolynomial> {
    let fx = f.diff_x();
    let fy = f.diff_y();
    let neg_fx = -&fx;
    // cached powers of the displacement fields
    let mut fy_pow = vec![BivariatePolynomial::constant(Rat::one())];
    let mut nfx_pow = vec![BivariatePolynomial::constant(Rat::one())];
    for k in 1..=order {
        let a = &fy_pow[k - 1] * &fy;
        fy_pow.push(a);
        let b = &nfx_pow[k - 1] * &neg_fx;
        nfx_pow.push(b);
    }
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut uk = BivariatePolynomial::zero();
        for i in 0..=k {
            let j = k - i;
            let mut deriv = f.clone();
            for _ in 0..i {
                deriv = deriv.diff_x();
            }
            for _ in 0..j {
                deriv = deriv.diff_y();
            }
            if deriv.is_zero() {
                continue;
            }
            let fact = factorial(i) * factorial(j);
            let term = &(&deriv * &fy_pow[i]) * &nfx_pow[j];
            uk = &uk + &term.scale(&(Rat::one() / fact));
        }
        out.push(uk);
    }
    out
}

fn factorial(n: usize) -> Rat {
    let mut acc = Rat::one();
    for k in 2..=n {
        acc *= rat(k as i64, 1);
    }
    acc
}

/// Magnitudes of the odd `eps`-coefficients of `U` at `P`, through `order`.
pub fn epsilon_even_test(
    ctx: &LeafContext,
    p: (C, C),
    order: usize,
    tol: f64,
) -> Result<Vec<f64>> {
    let coeffs = epsilon_coefficients(ctx, p, order, tol)?;
    Ok(coeffs
        .iter()
        .enumerate()
        .filter(|(k, _)| k % 2 == 1)
        .map(|(_, c)| c.norm())
        .collect())
}

/// Taylor coefficients of `eps -> U(P, eps)` through `order`.
pub fn epsilon_coefficients(
    ctx: &LeafContext,
    p: (C, C),
    order: usize,
    tol: f64,
) -> Result<Vec<C>> {
    assert_on_curve(&ctx.psi, p, tol)?;
    tangent_direction(&ctx.psi, p)?; // smoothness gate
    if ctx.m == 1 {
        let f = ctx.integral();
        let uk = u_coefficients(&f, order);
        return Ok(uk.iter().map(|u| u.eval(p.0, p.1)).collect());
    }
    // m > 1: evaluate the chosen leaf along the line through P with
    // direction (F_y(P), -F_x(P)) on an eps-circle and take a discrete
    // Fourier transform; the root branch is continued from eps = 0
    let (_, (fx, fy)) = ctx.leaf_value_grad(p)?;
    if fx.norm() + fy.norm() < 1e-13 {
        return Err(Error::SingularPoint);
    }
    let dir = (fy, -fx);
    let speed = (dir.0.norm_sqr() + dir.1.norm_sqr()).sqrt();
    let rho = 0.1 / speed.max(1.0);
    let f = ctx.integral();
    let samples = (2 * (order + 1)).max(16);
    let mut values = Vec::with_capacity(samples);
    // walk the radius first, then the circle, tracking a continuous m-th
    // root of f
    let mut prev_root: Option<C> = None;
    let leaf_shift = 2.0 * std::f64::consts::PI * ctx.leaf as f64 / ctx.m as f64;
    let continued_root = |eps: C, prev: Option<C>| -> C {
        let q = (p.0 + eps * dir.0, p.1 + eps * dir.1);
        let fv = f.eval(q.0, q.1);
        let (r, th) = fv.to_polar();
        let base = r.powf(1.0 / ctx.m as f64);
        let candidates: Vec<C> = (0..ctx.m)
            .map(|k| {
                C::from_polar(
                    base,
                    th / ctx.m as f64
                        + 2.0 * std::f64::consts::PI * k as f64 / ctx.m as f64
                        + leaf_shift,
                )
            })
            .collect();
        match prev {
            None => candidates[0],
            Some(pr) => candidates
                .into_iter()
                .min_by(|a, b| {
                    (a - pr)
                        .norm()
                        .partial_cmp(&(b - pr).norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap(),
        }
    };
    for step in 1..=8 {
        let eps = C::new(rho * step as f64 / 8.0, 0.0);
        let r = continued_root(eps, prev_root);
        prev_root = Some(r);
    }
    for s in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * s as f64 / samples as f64;
        let eps = C::from_polar(rho, theta);
        let r = continued_root(eps, prev_root);
        prev_root = Some(r);
        values.push(r);
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = C::new(0.0, 0.0);
        for (s, v) in values.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * s as f64 / samples as f64;
            acc += v * C::from_polar(1.0, -(k as f64) * theta);
        }
        coeffs.push(acc / samples as f64 / rho.powi(k as i32));
    }
    Ok(coeffs)
}

/// Dispersion of `H(F)` over curve samples on one leaf.
pub fn hf_constancy(
    ctx: &LeafContext,
    samples: &[(C, C)],
    tol: f64,
) -> Result<(C, f64)> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut values = Vec::with_capacity(samples.len());
    for &s in samples {
        assert_on_curve(&ctx.psi, s, tol)?;
        values.push(ctx.hf_on_curve(s)?);
    }
    let mean = values.iter().sum::<C>() / values.len() as f64;
    let max_dev = values
        .iter()
        .map(|v| (v - mean).norm())
        .fold(0.0f64, f64::max);
    Ok((mean, max_dev))
}

/// The `eps^3` coefficient of `U` versus the directional derivative of
/// `H(F)` along `V = F_y d/dx - F_x d/dy`.
#[derive(Clone, Debug, Serialize)]
pub struct Epsilon3Report {
    pub eps3: C,
    pub dhdv: C,
    /// `eps3 / dhdv` where both are away from zero.
    pub ratio: Option<C>,
}

pub fn epsilon3_vs_dhdv(ctx: &LeafContext, p: (C, C), tol: f64) -> Result<Epsilon3Report> {
    let coeffs = epsilon_coefficients(ctx, p, 3, tol)?;
    let eps3 = coeffs[3];
    let dhdv = if ctx.m == 1 {
        let f = ctx.integral();
        let hf = f.skew_hessian();
        let (fx, fy) = f.gradient(p.0, p.1);
        let (hx, hy) = hf.gradient(p.0, p.1);
        hx * fy - hy * fx
    } else {
        // numeric directional derivative of g^{3/m} H(Psi) along V
        let (_, (fx, fy)) = ctx.leaf_value_grad(p)?;
        let dir = (fy, -fx);
        let h = 1e-6;
        let plus = ctx.hf_on_curve((p.0 + h * dir.0, p.1 + h * dir.1))?;
        let minus = ctx.hf_on_curve((p.0 - h * dir.0, p.1 - h * dir.1))?;
        (plus - minus) / (2.0 * h)
    };
    let cut = tol.max(1e-10);
    let ratio = if eps3.norm() > cut && dhdv.norm() > cut {
        Some(eps3 / dhdv)
    } else {
        None
    };
    Ok(Epsilon3Report { eps3, dhdv, ratio })
}

/// Newton projection of a point onto `{Psi = 0}` along the gradient.
pub fn project_to_curve(psi: &BivariatePolynomial, start: (C, C), tol: f64) -> Result<(C, C)> {
    let mut z = start;
    for _ in 0..60 {
        let v = psi.eval(z.0, z.1);
        if v.norm() <= tol {
            return Ok(z);
        }
        let (px, py) = psi.gradient(z.0, z.1);
        let g2 = px * px + py * py;
        if g2.norm() < 1e-14 {
            return Err(Error::SingularPoint);
        }
        z = (z.0 - v * px / g2, z.1 - v * py / g2);
    }
    Err(Error::PointNotOnCurve {
        value: psi.eval(z.0, z.1).norm(),
    })
}

/// Sample `n` points along `{Psi = 0}` by tangent steps of size `step`
/// followed by Newton projection, starting near `start`. Complex step
/// directions give genuinely complex sample paths.
pub fn sample_curve_points(
    psi: &BivariatePolynomial,
    start: (C, C),
    n: usize,
    step: C,
    tol: f64,
) -> Result<Vec<(C, C)>> {
    let mut out = Vec::with_capacity(n);
    let mut z = project_to_curve(psi, start, tol.max(1e-12))?;
    for _ in 0..n {
        out.push(z);
        let v = tangent_direction(psi, z)?;
        let pred = (z.0 + step * v.0, z.1 + step * v.1);
        z = project_to_curve(psi, pred, tol.max(1e-12))?;
    }
    Ok(out)
}
