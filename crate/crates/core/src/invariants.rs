//! Per-point singularity invariants s, s*, kappa, delta, h and the global
//! genus / Pluecker identities.
//!
//! kappa is the intersection number of the curve with its polar
//! `{df/dy = 0}` after a generic shear that keeps every branch tangent off
//! the y-axis; delta comes from `kappa = 2 delta + sum (s - 1)` with
//! integrality enforced; h is the Hessian intersection order along the
//! branches, cross-checked against `h = 3 kappa + sum (s* - s)`. Globally,
//! `(d-1)(d-2)/2 = g + sum delta` and `3d(d-2) = sum h`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::{
    homogenize, rat, rat_to_f64, resultant_y, BivariatePolynomial, CPoly, HomogeneousPolynomial,
};
use crate::puiseux::{puiseux_branches, PuiseuxBranch};

type C = Complex64;

const BRANCH_TERMS: usize = 10;

/// Vanishing order of a function along a branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Multiplicity {
    Finite(u32),
    /// All computed series terms vanish: the function contains the branch
    /// to truncation order.
    Infinite,
}

/// Invariants attached to one point of the curve.
#[derive(Clone, Debug, Serialize)]
pub struct PointInvariantRecord {
    /// Point in the chart where it was analyzed.
    pub point: (C, C),
    /// `None` for the standard affine chart, `Some(k)` for infinity points.
    pub chart: Option<usize>,
    /// Per branch `(s, s*) = (q, p - q)`.
    pub branches: Vec<(u32, u32)>,
    pub kappa: u64,
    pub delta: u64,
    pub hessian_h: u64,
    /// Shear parameter used for the kappa computation.
    pub shear: i64,
}

/// Whole-curve invariant summary.
#[derive(Clone, Debug, Serialize)]
pub struct CurveInvariantReport {
    pub degree: u32,
    pub records: Vec<PointInvariantRecord>,
    pub genus: i64,
    /// `3d(d-2) - sum h`; zero for reduced irreducible curves.
    pub pluecker_residual: i64,
}

impl CurveInvariantReport {
    pub fn delta_sum(&self) -> u64 {
        self.records.iter().map(|r| r.delta).sum()
    }

    pub fn hessian_sum(&self) -> u64 {
        self.records.iter().map(|r| r.hessian_h).sum()
    }
}

/// `(s, s*) = (q, p - q)`, certified against a transversal line.
pub fn branch_multiplicities(b: &PuiseuxBranch) -> Result<(u32, u32)> {
    let p = b.p.ok_or(Error::LineGerm)?;
    // a transversal line through the base point meets the branch with
    // multiplicity s = q: check with a direction avoiding the tangent
    let line = |a: C, bb: C| -> Vec<(u32, C)> {
        let mut terms = std::collections::BTreeMap::new();
        for &(m, c) in &b.param_x {
            *terms.entry(m).or_insert(C::new(0.0, 0.0)) += a * c;
        }
        for &(m, c) in &b.param_y {
            *terms.entry(m).or_insert(C::new(0.0, 0.0)) += bb * c;
        }
        terms.into_iter().collect()
    };
    // coefficients (a, b) with a*tangent_x + b*tangent_y well away from 0
    let (a, bb) = if (b.tangent.0 + 2.0 * b.tangent.1).norm() > 0.5 {
        (C::new(1.0, 0.0), C::new(2.0, 0.0))
    } else {
        (C::new(2.0, 0.0), C::new(-1.0, 0.0))
    };
    let combined = line(a, bb);
    // per-order cancellation scale: series tails may grow geometrically
    let mut reference_abs = std::collections::BTreeMap::new();
    for &(m, c) in &b.param_x {
        *reference_abs.entry(m).or_insert(0.0f64) += a.norm() * c.norm();
    }
    for &(m, c) in &b.param_y {
        *reference_abs.entry(m).or_insert(0.0f64) += bb.norm() * c.norm();
    }
    let order = combined
        .iter()
        .find(|&&(m, c)| c.norm() > 1e-8 * reference_abs.get(&m).copied().unwrap_or(0.0).max(1e-300))
        .map(|&(m, _)| m);
    if order != Some(b.q) {
        return Err(Error::Inconsistency(format!(
            "transversal-line order {order:?} disagrees with q = {}",
            b.q
        )));
    }
    Ok((b.q, p - b.q))
}

/// Vanishing order in `t` of `g(x(t), y(t))` along the branch.
pub fn intersection_multiplicity(g: &BivariatePolynomial, b: &PuiseuxBranch) -> Result<Multiplicity> {
    let local = CPoly::from_exact(g).translate(b.base_point.0, b.base_point.1);
    let max_exp_x = b.param_x.iter().map(|&(m, _)| m).max().unwrap_or(0) as usize;
    let max_exp_y = b.param_y.iter().map(|&(m, _)| m).max().unwrap_or(0) as usize;
    let exact_degree =
        g.degree_in_x() as usize * max_exp_x + g.degree_in_y() as usize * max_exp_y;
    let cap = match b.trunc {
        None => exact_degree,
        Some(tr) => (tr as usize).min(exact_degree.max(tr as usize)),
    };
    let composed = compose_along(&local, b, cap);
    // judge cancellation per order against the composition of the
    // untranslated |g| with |base point| + |series|: series tails may grow
    // geometrically, so a global scale would drown genuine low-order
    // coefficients, and the translated constant term already hides the
    // cancellation at t = 0
    let reference = compose_along(&abs_cpoly(&CPoly::from_exact(g)), &abs_branch(b), cap);
    for (m, c) in composed.iter().enumerate() {
        if c.norm() > 1e-7 * reference[m].norm().max(1e-300) {
            if let Some(tr) = b.trunc {
                if m as u32 > tr {
                    return Err(Error::OrderNotDetermined);
                }
            }
            return Ok(Multiplicity::Finite(m as u32));
        }
    }
    Ok(Multiplicity::Infinite)
}

fn abs_cpoly(g: &CPoly) -> CPoly {
    let mut out = CPoly::zero();
    for (&(i, j), c) in g.terms() {
        out.add_term(i, j, C::new(c.norm(), 0.0));
    }
    out
}

fn abs_branch(b: &PuiseuxBranch) -> PuiseuxBranch {
    let abs = |base: C, s: &[(u32, C)]| {
        let mut out: Vec<(u32, C)> = vec![(0, C::new(base.norm(), 0.0))];
        out.extend(s.iter().map(|&(m, c)| (m, C::new(c.norm(), 0.0))));
        out
    };
    let mut out = b.clone();
    out.param_x = abs(b.base_point.0, &b.param_x);
    out.param_y = abs(b.base_point.1, &b.param_y);
    out
}

/// Dense series of `g_local(x(t), y(t))` through `t^cap`, with `g_local`
/// already translated so the branch base point is the origin.
fn compose_along(g: &CPoly, b: &PuiseuxBranch, cap: usize) -> Vec<C> {
    let dense = |s: &[(u32, C)]| -> Vec<C> {
        let mut v = vec![C::new(0.0, 0.0); cap + 1];
        for &(m, c) in s {
            if (m as usize) <= cap {
                v[m as usize] += c;
            }
        }
        v
    };
    let xs = dense(&b.param_x);
    let ys = dense(&b.param_y);
    let mul = |a: &[C], b: &[C]| -> Vec<C> {
        let mut out = vec![C::new(0.0, 0.0); cap + 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.norm() == 0.0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(cap + 1 - i) {
                out[i + j] += ai * bj;
            }
        }
        out
    };
    let dx = g.terms().map(|(&(i, _), _)| i).max().unwrap_or(0) as usize;
    let dy = g.degree_in_y() as usize;
    let mut one = vec![C::new(0.0, 0.0); cap + 1];
    one[0] = C::new(1.0, 0.0);
    let mut xpow = vec![one.clone()];
    for k in 1..=dx {
        let next = mul(&xpow[k - 1], &xs);
        xpow.push(next);
    }
    let mut ypow = vec![one];
    for k in 1..=dy {
        let next = mul(&ypow[k - 1], &ys);
        ypow.push(next);
    }
    let mut out = vec![C::new(0.0, 0.0); cap + 1];
    for (&(i, j), c) in g.terms() {
        let prod = mul(&xpow[i as usize], &ypow[j as usize]);
        for (m, v) in prod.iter().enumerate() {
            out[m] += c * v;
        }
    }
    out
}

/// `kappa = (alpha . alpha')_A` with `alpha' = {df/dy = 0}`, computed after
/// a generic shear `x -> x + lambda y`. Returns the invariant and the shear
/// used.
pub fn kappa_with_shear(
    f: &BivariatePolynomial,
    a: (C, C),
    tol: f64,
) -> Result<(u64, i64)> {
    for lambda in 1..=7i64 {
        let fs = f.shear_x(&rat(lambda, 1));
        let a_s = (a.0 - C::new(lambda as f64, 0.0) * a.1, a.1);
        let branches = puiseux_branches(&fs, a_s, BRANCH_TERMS, tol)?;
        // the paper's precondition: the y-axis tangent to no branch
        if branches.iter().any(|b| b.tangent.0.norm() < 1e-6) {
            continue;
        }
        let fy = fs.diff_y();
        let mut total = 0u64;
        let mut ok = true;
        for b in &branches {
            match intersection_multiplicity(&fy, b)? {
                Multiplicity::Finite(m) => total += m as u64,
                Multiplicity::Infinite => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok((total, lambda));
        }
    }
    Err(Error::ShearFailed(7))
}

pub fn kappa(f: &BivariatePolynomial, a: (C, C), tol: f64) -> Result<u64> {
    kappa_with_shear(f, a, tol).map(|(k, _)| k)
}

/// `delta = (kappa - sum (s - 1)) / 2` with integrality enforced.
pub fn delta(kappa: u64, s: &[u32]) -> Result<u64> {
    let correction: u64 = s.iter().map(|&si| (si - 1) as u64).sum();
    if kappa < correction || (kappa - correction) % 2 != 0 {
        return Err(Error::NonIntegerInvariant {
            name: "delta",
            value: (kappa as f64 - correction as f64) / 2.0,
            tol: 0.0,
        });
    }
    Ok((kappa - correction) / 2)
}

/// Hessian intersection order `h = (alpha . H_alpha)_A` summed over the
/// branches at the point.
pub fn hessian_invariant(
    hessian_affine: &BivariatePolynomial,
    branches: &[PuiseuxBranch],
) -> Result<u64> {
    let mut total = 0u64;
    for b in branches {
        match intersection_multiplicity(hessian_affine, b)? {
            Multiplicity::Finite(m) => total += m as u64,
            Multiplicity::Infinite => {
                return Err(Error::Inconsistency(
                    "Hessian contains a curve branch".to_string(),
                ))
            }
        }
    }
    Ok(total)
}

/// Full per-point record with the (ed6) cross-check
/// `h = 3 kappa + sum (s* - s)`.
pub fn analyze_point(
    f_chart: &BivariatePolynomial,
    hessian_chart: &BivariatePolynomial,
    point: (C, C),
    chart: Option<usize>,
    tol: f64,
) -> Result<PointInvariantRecord> {
    let branches = puiseux_branches(f_chart, point, BRANCH_TERMS, tol)?;
    let mut ss: Vec<(u32, u32)> = Vec::with_capacity(branches.len());
    for b in &branches {
        ss.push(branch_multiplicities(b)?);
    }
    let (kap, shear) = kappa_with_shear(f_chart, point, tol)?;
    let s_list: Vec<u32> = ss.iter().map(|&(s, _)| s).collect();
    let del = delta(kap, &s_list)?;
    let h_direct = hessian_invariant(hessian_chart, &branches)?;
    let h_expect = 3 * kap as i64 + ss.iter().map(|&(s, st)| st as i64 - s as i64).sum::<i64>();
    if h_direct as i64 != h_expect {
        return Err(Error::Inconsistency(format!(
            "Hessian order {h_direct} disagrees with 3k + sum(s*-s) = {h_expect} at {point:?}"
        )));
    }
    Ok(PointInvariantRecord {
        point,
        chart,
        branches: ss,
        kappa: kap,
        delta: del,
        hessian_h: h_direct,
        shear,
    })
}

/// Conservative magnitude scale of `p` near `(x, y)`.
fn scale_near(p: &BivariatePolynomial, x: C, y: C) -> f64 {
    let rx = x.norm().max(1.0);
    let ry = y.norm().max(1.0);
    p.terms()
        .map(|(&(i, j), c)| rat_to_f64(c).abs() * rx.powi(i as i32) * ry.powi(j as i32))
        .sum::<f64>()
        .max(1e-300)
}

fn vanishes_at(p: &BivariatePolynomial, x: C, y: C, rel: f64) -> bool {
    p.eval(x, y).norm() <= rel * scale_near(p, x, y)
}

fn dedup_points(points: Vec<(C, C)>, radius: f64) -> Vec<(C, C)> {
    let mut out: Vec<(C, C)> = Vec::new();
    for p in points {
        if !out
            .iter()
            .any(|q| (p.0 - q.0).norm() + (p.1 - q.1).norm() <= radius)
        {
            out.push(p);
        }
    }
    out
}

/// Newton refinement of a common zero of `p` and `q`; reverts if the
/// iteration wanders instead of converging.
fn polish_pair(p: &BivariatePolynomial, q: &BivariatePolynomial, start: (C, C)) -> (C, C) {
    let (mut x, mut y) = start;
    for _ in 0..40 {
        let pv = p.eval(x, y);
        let qv = q.eval(x, y);
        let (px, py) = p.gradient(x, y);
        let (qx, qy) = q.gradient(x, y);
        let det = px * qy - py * qx;
        if det.norm() < 1e-250 {
            break;
        }
        let dx = (pv * qy - py * qv) / det;
        let dy = (px * qv - pv * qx) / det;
        x -= dx;
        y -= dy;
        if dx.norm() + dy.norm() < 1e-15 * (1.0 + x.norm() + y.norm()) {
            break;
        }
    }
    if (x - start.0).norm() + (y - start.1).norm() < 1e-3 * (1.0 + start.0.norm() + start.1.norm())
    {
        (x, y)
    } else {
        start
    }
}

/// Curve points satisfying extra vanishing conditions, located via the
/// x-resultant of `f` with `aux` and a vertical-line root sweep.
fn curve_points_where(
    f: &BivariatePolynomial,
    aux: &BivariatePolynomial,
    conditions: &[&BivariatePolynomial],
    newton_pair: (&BivariatePolynomial, &BivariatePolynomial),
    rel: f64,
    post_rel: f64,
) -> Result<Vec<(C, C)>> {
    let r = resultant_y(f, aux);
    if r.is_zero() {
        return Err(Error::NonReduced);
    }
    let rc = r.to_complex();
    if rc.degree() == 0 {
        return Ok(vec![]);
    }
    let xs = rc.roots(1e-12)?;
    let fc = CPoly::from_exact(f);
    let mut out = Vec::new();
    for (x, _) in xs.roots {
        let vertical = fc.restrict_to_line((x, C::new(0.0, 0.0)), (C::new(0.0, 0.0), C::new(1.0, 0.0)));
        if vertical.degree() == 0 {
            continue;
        }
        let ys = vertical.roots(1e-11)?;
        for (y, _) in ys.roots {
            if !conditions.iter().all(|c| vanishes_at(c, x, y, rel)) {
                continue;
            }
            let polished = polish_pair(newton_pair.0, newton_pair.1, (x, y));
            // a multiple resultant root is located only to eps^(1/m), which
            // can spray candidates around a nearby singular point; demand
            // that the refined point actually satisfies the conditions
            let (a, b) = polished;
            if conditions.iter().all(|c| vanishes_at(c, a, b, post_rel)) {
                out.push(polished);
            }
        }
    }
    Ok(dedup_points(out, 1e-6))
}

/// Singular points of the affine curve: `f = f_x = f_y = 0`.
pub fn singular_points(f: &BivariatePolynomial, rel: f64) -> Result<Vec<(C, C)>> {
    let fx = f.diff_x();
    let fy = f.diff_y();
    curve_points_where(f, &fy, &[&fx, &fy], (&fx, &fy), rel, rel)
}

/// Affine curve points on the Hessian (inflections and singular points).
pub fn hessian_points(
    f: &BivariatePolynomial,
    hessian_affine: &BivariatePolynomial,
    rel: f64,
) -> Result<Vec<(C, C)>> {
    if hessian_affine.is_constant() {
        return Ok(vec![]);
    }
    curve_points_where(f, hessian_affine, &[hessian_affine], (f, hessian_affine), rel, 1e-12)
}

/// Points of `{F = 0}` on the infinity line as `(chart, local point)`.
pub fn infinity_points(big_f: &HomogeneousPolynomial) -> Result<Vec<(usize, (C, C))>> {
    let form = big_f.restrict_to_infinity();
    if form.is_empty() {
        return Err(Error::Other("curve contains the infinity line".to_string()));
    }
    let d = big_f.degree() as usize;
    let mut coeffs = vec![C::new(0.0, 0.0); d + 1];
    for (&(j, _), c) in &form {
        coeffs[j as usize] += C::new(rat_to_f64(c), 0.0);
    }
    let mut out = Vec::new();
    let unipoly = crate::polycore::UnivariateComplexPolynomial::new(coeffs.clone());
    if unipoly.degree() >= 1 {
        // a root of multiplicity m is only located to O(eps^(1/m)); cluster
        // coarsely so multiple infinity points collapse to their centroid
        for (u, _) in unipoly.roots_clustered(1e-12, 1e-3)?.roots {
            out.push((2usize, (C::new(0.0, 0.0), u)));
        }
    }
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if coeffs[d].norm() <= 1e-12 * scale.max(1.0) {
        out.push((1usize, (C::new(0.0, 0.0), C::new(0.0, 0.0))));
    }
    Ok(out)
}

/// Full invariant sweep: all affine singular points, affine inflections,
/// and infinity points, with genus and Pluecker bookkeeping.
pub fn curve_invariants(f: &BivariatePolynomial, tol: f64) -> Result<CurveInvariantReport> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::DegeneratePolynomial);
    }
    let big_f = homogenize(f, d)?;
    let hess3 = big_f.projective_hessian();
    if hess3.is_zero() {
        return Err(Error::DegeneratePolynomial);
    }
    let hess0 = hess3.dehomogenize(0).with_vars("x", "y");

    let rel = 1e-6;
    let singulars = singular_points(f, rel)?;
    let flex_candidates = hessian_points(f, &hess0, rel)?;
    let mut affine: Vec<(C, C)> = singulars.clone();
    for p in flex_candidates {
        if !singulars
            .iter()
            .any(|s| (p.0 - s.0).norm() + (p.1 - s.1).norm() < 1e-4)
        {
            affine.push(p);
        }
    }

    let mut records = Vec::new();
    for p in affine {
        records.push(analyze_point(f, &hess0, p, None, tol)?);
    }
    for (chart, local) in infinity_points(&big_f)? {
        let f_chart = big_f.dehomogenize(chart).with_vars("x", "y");
        let hess_chart = hess3.dehomogenize(chart).with_vars("x", "y");
        records.push(analyze_point(&f_chart, &hess_chart, local, Some(chart), tol)?);
    }

    let delta_sum: u64 = records.iter().map(|r| r.delta).sum();
    let d = d as i64;
    let genus = (d - 1) * (d - 2) / 2 - delta_sum as i64;
    if genus < 0 {
        return Err(Error::Inconsistency(format!(
            "negative genus {genus}: missed reducibility or singular point"
        )));
    }
    let h_sum: u64 = records.iter().map(|r| r.hessian_h).sum();
    let pluecker_residual = 3 * d * (d - 2) - h_sum as i64;
    Ok(CurveInvariantReport {
        degree: d as u32,
        records,
        genus,
        pluecker_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_polynomial;

    fn parse(s: &str) -> BivariatePolynomial {
        parse_polynomial(s, ("x", "y")).unwrap()
    }

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn origin() -> (C, C) {
        (c(0.0, 0.0), c(0.0, 0.0))
    }

    fn branches_at_origin(s: &str) -> Vec<PuiseuxBranch> {
        puiseux_branches(&parse(s), origin(), 10, 1e-9).unwrap()
    }

    #[test]
    fn multiplicities_read_off() {
        let cusp = branches_at_origin("y^2 - x^3");
        assert_eq!(branch_multiplicities(&cusp[0]).unwrap(), (2, 1));
        let smooth = branches_at_origin("y - x^2");
        assert_eq!(branch_multiplicities(&smooth[0]).unwrap(), (1, 1));
        let flex = branches_at_origin("y - x^3");
        assert_eq!(branch_multiplicities(&flex[0]).unwrap(), (1, 2));
    }

    #[test]
    fn intersection_orders_on_cusp_branch() {
        let b = &branches_at_origin("y^2 - x^3")[0];
        assert_eq!(
            intersection_multiplicity(&parse("y"), b).unwrap(),
            Multiplicity::Finite(3)
        );
        assert_eq!(
            intersection_multiplicity(&parse("x"), b).unwrap(),
            Multiplicity::Finite(2)
        );
    }

    #[test]
    fn intersection_order_with_tail_term() {
        // branch (t, t^2 + t^5) against g = y - x^2 leaves exactly t^5
        let b = PuiseuxBranch {
            base_point: origin(),
            chart: None,
            q: 1,
            p: Some(2),
            c: c(1.0, 0.0),
            tangent: (c(1.0, 0.0), c(0.0, 0.0)),
            param_x: vec![(1, c(1.0, 0.0))],
            param_y: vec![(2, c(1.0, 0.0)), (5, c(1.0, 0.0))],
            series: vec![],
            transverse_to_linf: None,
            trunc: None,
        };
        assert_eq!(
            intersection_multiplicity(&parse("y - x^2"), &b).unwrap(),
            Multiplicity::Finite(5)
        );
    }

    #[test]
    fn branch_containment_is_infinite() {
        let b = &branches_at_origin("y - x^2")[0];
        assert_eq!(
            intersection_multiplicity(&parse("y - x^2"), b).unwrap(),
            Multiplicity::Infinite
        );
    }

    #[test]
    fn kappa_on_classical_germs() {
        assert_eq!(kappa(&parse("y^2 - x^2 - x^3"), origin(), 1e-9).unwrap(), 2);
        assert_eq!(kappa(&parse("y^2 - x^3"), origin(), 1e-9).unwrap(), 3);
        assert_eq!(kappa(&parse("y^2 - x^4"), origin(), 1e-9).unwrap(), 4);
    }

    #[test]
    fn delta_from_ed3() {
        assert_eq!(delta(2, &[1, 1]).unwrap(), 1); // node
        assert_eq!(delta(3, &[2]).unwrap(), 1); // cusp
        assert_eq!(delta(4, &[1, 1]).unwrap(), 2); // tacnode
        assert!(matches!(
            delta(3, &[1, 1]),
            Err(Error::NonIntegerInvariant { .. })
        ));
    }

    #[test]
    fn kappa_and_delta_shear_invariant() {
        for lambda in [-3i64, -1, 2, 3] {
            let sheared = parse("y^2 - x^3").shear_x(&rat(lambda, 1));
            let k = kappa(&sheared, origin(), 1e-9).unwrap();
            assert_eq!(k, 3, "kappa changed under shear {lambda}");
            let branches = puiseux_branches(&sheared, origin(), 10, 1e-9).unwrap();
            let s: Vec<u32> = branches.iter().map(|b| b.q).collect();
            assert_eq!(delta(k, &s).unwrap(), 1);
        }
    }

    #[test]
    fn singular_point_location() {
        let pts = singular_points(&parse("y^2 - x^2 - x^3"), 1e-6).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].0.norm() < 1e-7 && pts[0].1.norm() < 1e-7);

        // smooth curves have none; points with merely vertical tangents do
        // not qualify
        assert!(singular_points(&parse("x^2 + y^2 - 1"), 1e-6).unwrap().is_empty());
        assert!(singular_points(&parse("x^4 + y^4 - 1"), 1e-6).unwrap().is_empty());
    }

    #[test]
    fn conic_report() {
        let rep = curve_invariants(&parse("x^2 + y^2 - 1"), 1e-9).unwrap();
        assert_eq!(rep.degree, 2);
        assert_eq!(rep.genus, 0);
        assert_eq!(rep.pluecker_residual, 0);
        assert_eq!(rep.delta_sum(), 0);
        assert_eq!(rep.hessian_sum(), 0);
    }

    #[test]
    fn nodal_cubic_report() {
        let rep = curve_invariants(&parse("y^2 - x^2 - x^3"), 1e-9).unwrap();
        assert_eq!(rep.genus, 0);
        assert_eq!(rep.pluecker_residual, 0);
        let node = rep
            .records
            .iter()
            .find(|r| r.kappa > 0)
            .expect("node record");
        assert_eq!((node.kappa, node.delta, node.hessian_h), (2, 1, 6));
        assert_eq!(node.branches, vec![(1, 1), (1, 1)]);
        // 9 = 6 (node) + three simple inflections
        let flex_sum: u64 = rep
            .records
            .iter()
            .filter(|r| r.kappa == 0)
            .map(|r| r.hessian_h)
            .sum();
        assert_eq!(flex_sum, 3);
    }

    #[test]
    fn cuspidal_cubic_report() {
        let rep = curve_invariants(&parse("y^2 - x^3"), 1e-9).unwrap();
        assert_eq!(rep.genus, 0);
        assert_eq!(rep.pluecker_residual, 0);
        let cusp = rep
            .records
            .iter()
            .find(|r| r.kappa > 0)
            .expect("cusp record");
        assert_eq!((cusp.kappa, cusp.delta, cusp.hessian_h), (3, 1, 8));
        assert_eq!(cusp.branches, vec![(2, 1)]);
        // the remaining Hessian mass is one inflection at infinity
        assert_eq!(rep.hessian_sum(), 9);
    }

    #[test]
    fn fermat_quartic_report() {
        let rep = curve_invariants(&parse("x^4 + y^4 - 1"), 1e-9).unwrap();
        assert_eq!(rep.genus, 3);
        assert_eq!(rep.delta_sum(), 0);
        assert_eq!(rep.pluecker_residual, 0);
        // 24 = 16 affine simple inflections + 4 infinity points with h = 2
        let infinity_h: u64 = rep
            .records
            .iter()
            .filter(|r| r.chart.is_some())
            .map(|r| r.hessian_h)
            .sum();
        assert_eq!(infinity_h, 8);
        assert_eq!(rep.hessian_sum(), 24);
    }

    #[test]
    fn tacnodal_quintic_report() {
        // y^2 = x^4 - x^5: tacnode at the origin, a deep singularity at
        // infinity, genus 0
        let rep = curve_invariants(&parse("y^2 - x^4 + x^5"), 1e-9).unwrap();
        assert_eq!(rep.genus, 0);
        assert_eq!(rep.pluecker_residual, 0);
        let tac = rep
            .records
            .iter()
            .find(|r| r.chart.is_none() && r.kappa > 0)
            .expect("tacnode record");
        assert_eq!((tac.kappa, tac.delta, tac.hessian_h), (4, 2, 12));
        let inf = rep
            .records
            .iter()
            .find(|r| r.chart.is_some())
            .expect("infinity record");
        assert_eq!(inf.branches, vec![(3, 2)]);
        assert_eq!((inf.kappa, inf.delta), (10, 4));
    }

    #[test]
    fn smooth_cubic_has_nine_inflections() {
        let rep = curve_invariants(&parse("y^2 - x^3 + x"), 1e-9).unwrap();
        assert_eq!(rep.genus, 1);
        assert_eq!(rep.delta_sum(), 0);
        assert_eq!(rep.pluecker_residual, 0);
        assert!(rep.records.iter().all(|r| r.kappa == 0));
        assert_eq!(rep.hessian_sum(), 9);
    }

    #[test]
    fn line_input_rejected() {
        assert!(matches!(
            curve_invariants(&parse("x + y - 1"), 1e-9),
            Err(Error::DegeneratePolynomial)
        ));
    }
}
