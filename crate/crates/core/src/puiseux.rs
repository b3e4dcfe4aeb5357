//! Newton polygons and Newton-Puiseux branch expansion.
//!
//! Branch exponents come from exact lattice combinatorics of the polygon;
//! coefficients are numeric roots of edge characteristic polynomials,
//! continued by truncated-series Newton iteration in the regular case and
//! by recursive edge substitution at multiple roots. Each geometric branch
//! is emitted once, in a representative parametrization
//! `t -> (t^q, c t^p (1 + o(1)))` read in tangent-aligned coordinates.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::{BivariatePolynomial, CPoly, HomogeneousPolynomial, UnivariateComplexPolynomial};

type C = Complex64;

pub const DEFAULT_MAX_TERMS: usize = 8;

/// One edge of the lower Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygonEdge {
    /// Endpoints as lattice points `(i, j)`, ordered by decreasing `i`.
    pub endpoints: ((u32, u32), (u32, u32)),
    /// Primitive ascent `mu = p/q` of the edge: a branch on this edge
    /// behaves like `y ~ c x^{p/q}`.
    pub mu: (u32, u32),
    /// Support monomials lying exactly on the edge.
    pub supporting: Vec<(u32, u32)>,
}

/// A local branch of a plane curve.
#[derive(Clone, Debug, Serialize)]
pub struct PuiseuxBranch {
    /// Base point in the chart where the branch was computed.
    pub base_point: (C, C),
    /// Chart index when the branch comes from an infinity analysis.
    pub chart: Option<usize>,
    /// Multiplicity exponent: first coordinate of the aligned
    /// parametrization is exactly `t^q`.
    pub q: u32,
    /// Tangency exponent; `None` encodes a line germ (`p` infinite).
    pub p: Option<u32>,
    /// Leading coefficient of the transverse coordinate.
    pub c: C,
    /// Unit tangent direction in chart coordinates.
    pub tangent: (C, C),
    /// Parametrization of the first chart coordinate relative to the base
    /// point: list of `(exponent in t, coefficient)`.
    pub param_x: Vec<(u32, C)>,
    /// Parametrization of the second chart coordinate.
    pub param_y: Vec<(u32, C)>,
    /// Aligned series tail `w = sum c_k z^{e_k}` with exponents whose
    /// denominators divide `q`.
    pub series: Vec<(Rational64, C)>,
    /// Set by the infinity analysis; `None` for affine branches.
    pub transverse_to_linf: Option<bool>,
    /// Order in `t` up to which the parametrization is certified;
    /// `None` when the parametrization terminates exactly.
    pub trunc: Option<u32>,
}

impl PuiseuxBranch {
    pub fn is_line_germ(&self) -> bool {
        self.p.is_none()
    }

    /// Projective Puiseux exponent `r = p/q`; `None` for a line germ.
    pub fn r(&self) -> Option<Rational64> {
        self.p.map(|p| Rational64::new(p as i64, self.q as i64))
    }

    /// Evaluate the local parametrization at `t`.
    pub fn at(&self, t: C) -> (C, C) {
        let ev = |s: &[(u32, C)]| -> C {
            s.iter().map(|&(m, c)| c * t.powu(m)).sum()
        };
        (
            self.base_point.0 + ev(&self.param_x),
            self.base_point.1 + ev(&self.param_y),
        )
    }

    /// Derivative of the parametrization at `t`.
    pub fn deriv_at(&self, t: C) -> (C, C) {
        let ev = |s: &[(u32, C)]| -> C {
            s.iter()
                .filter(|&&(m, _)| m >= 1)
                .map(|&(m, c)| c * m as f64 * t.powu(m - 1))
                .sum()
        };
        (ev(&self.param_x), ev(&self.param_y))
    }

    /// A line germ through `base` with the given direction.
    pub fn line_germ(base: (C, C), dir: (C, C)) -> Self {
        let n = (dir.0.norm_sqr() + dir.1.norm_sqr()).sqrt();
        let dir = (dir.0 / n, dir.1 / n);
        PuiseuxBranch {
            base_point: base,
            chart: None,
            q: 1,
            p: None,
            c: C::new(0.0, 0.0),
            tangent: dir,
            param_x: vec![(1, dir.0)],
            param_y: vec![(1, dir.1)],
            series: vec![],
            transverse_to_linf: None,
            trunc: None,
        }
    }
}

/// Quadratic / subquadratic classification of a nonlinear branch.
pub fn classify_subquadratic(b: &PuiseuxBranch) -> Result<(bool, bool)> {
    let p = b.p.ok_or(Error::LineGerm)?;
    Ok((p == 2 * b.q, p <= 2 * b.q))
}

/// Lower Newton polygon of `f` localized at the origin.
pub fn newton_polygon(f: &BivariatePolynomial) -> Result<Vec<NewtonPolygonEdge>> {
    if f.is_zero() {
        return Err(Error::DegeneratePolynomial);
    }
    if !f.coeff(0, 0).is_zero() {
        return Err(Error::PointNotOnCurve { value: 1.0 });
    }
    let support: Vec<(u32, u32)> = f.terms().map(|(&e, _)| e).collect();
    Ok(lower_hull_edges(&support))
}

fn lower_hull_edges(support: &[(u32, u32)]) -> Vec<NewtonPolygonEdge> {
    // start: minimal j, then minimal i; end: minimal i, then minimal j
    let start = *support
        .iter()
        .min_by_key(|&&(i, j)| (j, i))
        .expect("nonempty support");
    let end = *support
        .iter()
        .min_by_key(|&&(i, j)| (i, j))
        .expect("nonempty support");
    if start == end {
        return vec![];
    }
    // gift wrapping along the lower-left boundary from start to end
    let mut edges = Vec::new();
    let mut cur = start;
    while cur != end {
        // choose the next hull vertex: the point making the shallowest
        // turn, i.e. all other support points lie on or above the segment
        let mut best: Option<(u32, u32)> = None;
        for &cand in support {
            if cand == cur || cand.0 >= cur.0 {
                continue;
            }
            match best {
                None => best = Some(cand),
                Some(b) => {
                    // compare ascent (j - cur.j) / (cur.i - i); pick the
                    // smallest ascent, tie broken by the farther point
                    let lhs = (cand.1 as i64 - cur.1 as i64) * (cur.0 as i64 - b.0 as i64);
                    let rhs = (b.1 as i64 - cur.1 as i64) * (cur.0 as i64 - cand.0 as i64);
                    if lhs < rhs || (lhs == rhs && cand.0 < b.0) {
                        best = Some(cand);
                    }
                }
            }
        }
        let next = best.expect("hull walk cannot dead-end before reaching the end vertex");
        let di = cur.0 - next.0;
        let dj = next.1 - cur.1;
        let g = gcd(di as u64, dj as u64) as u32;
        let supporting: Vec<(u32, u32)> = support
            .iter()
            .copied()
            .filter(|&(i, j)| {
                i <= cur.0
                    && i >= next.0
                    && (cur.1 as i64 - j as i64) * (di as i64)
                        == (i as i64 - cur.0 as i64) * (dj as i64)
            })
            .collect();
        edges.push(NewtonPolygonEdge {
            endpoints: (cur, next),
            mu: (di / g.max(1), dj / g.max(1)),
            supporting,
        });
        cur = next;
    }
    edges
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

// ---------------------------------------------------------------------------
// truncated power series over Complex64
// ---------------------------------------------------------------------------

fn series_mul(a: &[C], b: &[C], k: usize) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); k + 1];
    for (i, ai) in a.iter().enumerate().take(k + 1) {
        if ai.norm() == 0.0 {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(k + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn series_inverse(a: &[C], k: usize) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); k + 1];
    let a0 = a[0];
    out[0] = 1.0 / a0;
    for n in 1..=k {
        let mut acc = C::new(0.0, 0.0);
        for i in 1..=n {
            let ai = if i < a.len() { a[i] } else { C::new(0.0, 0.0) };
            acc += ai * out[n - i];
        }
        out[n] = -acc / a0;
    }
    out
}

/// Evaluate `g(x, y(x))` as a truncated series when `y` is a truncated
/// series with `y(0) = 0` allowed to be nonzero too.
fn eval_on_series(g: &CPoly, y: &[C], k: usize) -> Vec<C> {
    let dy = g.degree_in_y() as usize;
    let mut ypow: Vec<Vec<C>> = Vec::with_capacity(dy + 1);
    let mut one = vec![C::new(0.0, 0.0); k + 1];
    one[0] = C::new(1.0, 0.0);
    ypow.push(one);
    for j in 1..=dy {
        let next = series_mul(&ypow[j - 1], y, k);
        ypow.push(next);
    }
    let mut out = vec![C::new(0.0, 0.0); k + 1];
    for (&(i, j), c) in g.terms() {
        let i = i as usize;
        if i > k {
            continue;
        }
        for (m, v) in ypow[j as usize].iter().enumerate() {
            if i + m <= k {
                out[i + m] += c * v;
            }
        }
    }
    out
}

/// Regular continuation: solve `g(x, y(x)) = 0` for a series `y` with
/// `y(0) = 0`, assuming `g_y(0,0) != 0`.
fn implicit_series(g: &CPoly, k: usize) -> Vec<C> {
    let gy = g.diff_y();
    let mut y = vec![C::new(0.0, 0.0); k + 1];
    // Newton iteration doubles correct order each pass
    let mut correct = 0usize;
    while correct < k {
        let f = eval_on_series(g, &y, k);
        let fp = eval_on_series(&gy, &y, k);
        let inv = series_inverse(&fp, k);
        let step = series_mul(&f, &inv, k);
        for i in 0..=k {
            y[i] -= step[i];
        }
        correct = (2 * correct + 1).min(k);
    }
    y
}

// ---------------------------------------------------------------------------
// Newton-Puiseux recursion
// ---------------------------------------------------------------------------

/// Branch under construction: `y(x) = sum c_k x^{e_k}`, together with the
/// exponent (in x units) up to which the series is certified; `None` means
/// the branch terminated exactly.
type FractionalSeries = (Vec<(Rational64, C)>, Option<Rational64>);

fn float_support(g: &CPoly, cut: f64) -> Vec<(u32, u32)> {
    let max = g.max_coeff();
    g.terms()
        .filter(|(_, c)| c.norm() > max * cut)
        .map(|(&e, _)| e)
        .collect()
}

const COEFF_CUT: f64 = 1e-11;

/// All Puiseux branches `y(x)` of `g` at the origin whose leading exponent
/// `mu` satisfies the `min_mu` filter (as a fraction `num/den`).
fn expand(
    g: &CPoly,
    min_mu_num: u32,
    min_mu_den: u32,
    strict: bool,
    depth: usize,
    k_budget: usize,
) -> Result<Vec<FractionalSeries>> {
    if depth == 0 {
        return Err(Error::TruncationExhausted);
    }
    let mut g = g.clone();
    g.prune(COEFF_CUT);
    let mut branches: Vec<FractionalSeries> = Vec::new();

    // terminating branch y = 0 when y divides g
    let support = float_support(&g, COEFF_CUT);
    if support.is_empty() {
        return Err(Error::DegeneratePolynomial);
    }
    let jmin = support.iter().map(|&(_, j)| j).min().unwrap();
    if jmin >= 1 {
        if jmin > 1 {
            return Err(Error::NonReduced);
        }
        branches.push((vec![], None));
        // divide by y
        let mut q = CPoly::zero();
        for (&(i, j), c) in g.terms() {
            if j >= 1 {
                q.add_term(i, j - 1, *c);
            }
        }
        g = q;
        g.prune(COEFF_CUT);
    }
    if g.degree_in_y() == 0 {
        return Ok(branches);
    }
    let support = float_support(&g, COEFF_CUT);
    for edge in lower_hull_edges(&support) {
        let (pp, qq) = edge.mu;
        // filter by the requested minimal leading exponent
        let cmp = (pp as u64) * (min_mu_den as u64);
        let bound = (min_mu_num as u64) * (qq as u64);
        if strict && cmp <= bound {
            continue;
        }
        if !strict && cmp < bound {
            continue;
        }
        // characteristic polynomial in v = u^qq
        let ((_, j0), _) = edge.endpoints;
        let mut cheby: Vec<C> = Vec::new();
        for &(i, j) in &edge.supporting {
            let kidx = ((j - j0) / qq) as usize;
            if cheby.len() <= kidx {
                cheby.resize(kidx + 1, C::new(0.0, 0.0));
            }
            cheby[kidx] += g.coeff(i, j);
        }
        let charpoly = UnivariateComplexPolynomial::new(cheby);
        if charpoly.degree() == 0 {
            continue;
        }
        // a root of multiplicity m is only located to O(eps^(1/m)), so the
        // multiplicity structure needs a coarser cluster radius than the
        // default
        let roots = charpoly.roots_clustered(1e-12, 1e-3)?;
        for (v, mult) in &roots.roots {
            if v.norm() < 1e-12 {
                continue;
            }
            let u = v.powf(1.0 / qq as f64);
            // substitute x -> x^qq, y -> x^pp (u + y), divide by lowest power
            let sub = edge_substitute(&g, qq, pp, u);
            if *mult == 1 {
                let tail = implicit_series(&sub, k_budget);
                let mut series = vec![(Rational64::new(pp as i64, qq as i64), u)];
                // the tail of a convergent series may still grow
                // geometrically, so judge noise against the running maximum
                // rather than the global one
                let mut scale = 1.0f64;
                for (m, c) in tail.iter().enumerate().skip(1) {
                    scale = scale.max(c.norm());
                    if c.norm() > scale * COEFF_CUT {
                        series.push((Rational64::new(pp as i64 + m as i64, qq as i64), *c));
                    }
                }
                let valid = Rational64::new(pp as i64 + k_budget as i64, qq as i64);
                branches.push((series, Some(valid)));
            } else {
                let sub_branches = expand(&sub, 0, 1, true, depth - 1, k_budget)?;
                if sub_branches.is_empty() {
                    // the multiple root did not split and no terminating
                    // branch was found: non-reduced to working precision
                    return Err(Error::NonReduced);
                }
                for (tail, sub_valid) in sub_branches {
                    let mut series = vec![(Rational64::new(pp as i64, qq as i64), u)];
                    for (e, c) in tail {
                        series.push((Rational64::new(pp as i64, qq as i64) + e / qq as i64, c));
                    }
                    let valid = sub_valid
                        .map(|v| Rational64::new(pp as i64, qq as i64) + v / qq as i64);
                    branches.push((series, valid));
                }
            }
        }
    }
    Ok(branches)
}

/// `g(x^qq, x^pp (u + y)) / x^N` with `N` the minimal power of `x`.
fn edge_substitute(g: &CPoly, qq: u32, pp: u32, u: C) -> CPoly {
    // (u + y)^j expansion by binomials
    let dy = g.degree_in_y() as usize;
    let mut upow: Vec<Vec<C>> = vec![vec![C::new(1.0, 0.0)]];
    for j in 1..=dy {
        let prev = &upow[j - 1];
        let mut next = vec![C::new(0.0, 0.0); j + 1];
        for (m, c) in prev.iter().enumerate() {
            next[m + 1] += c;
            next[m] += c * u;
        }
        upow.push(next);
    }
    let mut raw: Vec<((u32, u32), C)> = Vec::new();
    let mut min_pow = u32::MAX;
    for (&(i, j), c) in g.terms() {
        let base = qq * i + pp * j;
        for (m, b) in upow[j as usize].iter().enumerate() {
            let coeff = c * b;
            if coeff.norm() == 0.0 {
                continue;
            }
            raw.push(((base, m as u32), coeff));
            min_pow = min_pow.min(base);
        }
    }
    let mut out = CPoly::zero();
    for ((xp, yp), c) in raw {
        out.add_term(xp - min_pow, yp, c);
    }
    out.prune(COEFF_CUT);
    out
}

// ---------------------------------------------------------------------------
// public branch computation
// ---------------------------------------------------------------------------

/// All local branches of `{f = 0}` at `point`.
pub fn puiseux_branches(
    f: &BivariatePolynomial,
    point: (C, C),
    max_terms: usize,
    tol: f64,
) -> Result<Vec<PuiseuxBranch>> {
    let g = CPoly::from_exact(f);
    branches_of_cpoly(&g, point, max_terms, tol)
}

pub fn branches_of_cpoly(
    g: &CPoly,
    point: (C, C),
    max_terms: usize,
    tol: f64,
) -> Result<Vec<PuiseuxBranch>> {
    let local = g.translate(point.0, point.1);
    let scale = local.max_coeff();
    if local.eval(C::new(0.0, 0.0), C::new(0.0, 0.0)).norm() > tol.max(1e-9) * scale.max(1.0) {
        return Err(Error::PointNotOnCurve {
            value: local.eval(C::new(0.0, 0.0), C::new(0.0, 0.0)).norm(),
        });
    }
    let mut local = local;
    // force the constant term to exact zero before reading the polygon
    local = {
        let mut t = CPoly::zero();
        for (&(i, j), c) in local.terms() {
            if i == 0 && j == 0 {
                continue;
            }
            t.add_term(i, j, *c);
        }
        t
    };
    local.prune(COEFF_CUT);
    let mut out = Vec::new();
    let k_budget = (4 * (local.degree_in_y() as usize + 4)).max(4 * max_terms);

    // pure axis components x = 0 / y = 0 show up as monomial factors
    let support = float_support(&local, COEFF_CUT);
    let imin = support.iter().map(|&(i, _)| i).min().unwrap_or(0);
    if imin >= 1 {
        if imin > 1 {
            return Err(Error::NonReduced);
        }
        out.push(PuiseuxBranch::line_germ(
            point,
            (C::new(0.0, 0.0), C::new(1.0, 0.0)),
        ));
        let mut q = CPoly::zero();
        for (&(i, j), c) in local.terms() {
            q.add_term(i - 1, j, *c);
        }
        local = q;
    }

    // run A: branches with horizontal or slanted tangents (mu >= 1)
    for (series, valid) in expand(&local, 1, 1, false, 16, k_budget)? {
        out.push(branch_from_series(point, &series, valid, false, max_terms)?);
    }
    // run B: vertical tangents (mu > 1 on the swapped polynomial)
    let swapped = local.swap_vars();
    for (series, valid) in expand(&swapped, 1, 1, true, 16, k_budget)? {
        out.push(branch_from_series(point, &series, valid, true, max_terms)?);
    }
    Ok(out)
}

/// Convert a fractional series `y = sum c_k x^{e_k}` into branch data.
/// `swapped` marks a series produced with the roles of x and y exchanged.
fn branch_from_series(
    base: (C, C),
    series: &[(Rational64, C)],
    valid: Option<Rational64>,
    swapped: bool,
    max_terms: usize,
) -> Result<PuiseuxBranch> {
    if series.is_empty() {
        // terminating branch y = 0: a line germ along the x-axis
        let dir = if swapped {
            (C::new(0.0, 0.0), C::new(1.0, 0.0))
        } else {
            (C::new(1.0, 0.0), C::new(0.0, 0.0))
        };
        return Ok(PuiseuxBranch::line_germ(base, dir));
    }
    // common denominator q of all exponents
    let q = series
        .iter()
        .fold(1i64, |acc, (e, _)| lcm(acc, *e.denom()));
    // parametrization exponents in t
    let mut terms: Vec<(u32, C)> = series
        .iter()
        .map(|(e, c)| (((e.numer() * (q / e.denom())) as u32), *c))
        .collect();
    terms.sort_by_key(|&(m, _)| m);
    terms.truncate(max_terms.max(2) * 2);
    let q = q as u32;
    let (param_x, param_y): (Vec<(u32, C)>, Vec<(u32, C)>) = if swapped {
        (terms.clone(), vec![(q, C::new(1.0, 0.0))])
    } else {
        (vec![(q, C::new(1.0, 0.0))], terms.clone())
    };
    // orders of the two coordinates
    let m1 = terms[0].0;
    let c1 = terms[0].1;
    // aligned data: run A with m1 > q is tangent to the x-axis; m1 == q is
    // a slanted tangent handled by shearing off the linear part; run B is
    // tangent to the y-axis by construction
    let (qa, pa, ca, tangent, aligned): (u32, Option<u32>, C, (C, C), Vec<(Rational64, C)>) =
        if swapped {
            debug_assert!(m1 > q);
            let tangent = (C::new(0.0, 0.0), C::new(1.0, 0.0));
            let aligned = terms
                .iter()
                .map(|&(m, c)| (Rational64::new(m as i64, q as i64), c))
                .collect();
            (q, Some(m1), c1, tangent, aligned)
        } else if m1 > q {
            let tangent = (C::new(1.0, 0.0), C::new(0.0, 0.0));
            let aligned = terms
                .iter()
                .map(|&(m, c)| (Rational64::new(m as i64, q as i64), c))
                .collect();
            (q, Some(m1), c1, tangent, aligned)
        } else {
            // slanted tangent y = c1 x (m1 == q): shear w = y - c1 x
            let norm = (1.0 + c1.norm_sqr()).sqrt();
            let tangent = (C::new(1.0, 0.0) / norm, c1 / norm);
            let rest: Vec<(Rational64, C)> = terms
                .iter()
                .skip(1)
                .map(|&(m, c)| (Rational64::new(m as i64, q as i64), c))
                .collect();
            match rest.first() {
                None => (q, None, C::new(0.0, 0.0), tangent, vec![]),
                Some(&(e, c2)) => {
                    let p = (*e.numer() * (q as i64 / *e.denom())) as u32;
                    (q, Some(p), c2, tangent, rest)
                }
            }
        };
    // normalize the representative: among conjugates t -> w t the leading
    // coefficient picks up p-th roots of unity; choose the smallest
    // nonnegative argument
    let (ca, param_x, param_y, aligned) = normalize_conjugate(qa, pa, ca, param_x, param_y, aligned);
    let trunc = valid.map(|v| (v * Rational64::from_integer(q as i64)).to_integer() as u32);
    Ok(PuiseuxBranch {
        base_point: base,
        chart: None,
        q: qa,
        p: pa,
        c: ca,
        tangent,
        param_x,
        param_y,
        series: aligned,
        transverse_to_linf: None,
        trunc,
    })
}

fn normalize_conjugate(
    q: u32,
    p: Option<u32>,
    c: C,
    param_x: Vec<(u32, C)>,
    param_y: Vec<(u32, C)>,
    aligned: Vec<(Rational64, C)>,
) -> (C, Vec<(u32, C)>, Vec<(u32, C)>, Vec<(Rational64, C)>) {
    let Some(p) = p else {
        return (c, param_x, param_y, aligned);
    };
    if q <= 1 {
        return (c, param_x, param_y, aligned);
    }
    // candidate rotations t -> e^{2 pi i k / q} t
    let mut best_k = 0usize;
    let mut best_arg = f64::INFINITY;
    for k in 0..q as usize {
        let w = C::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / q as f64);
        let cand = c * w.powu(p);
        let mut arg = cand.arg();
        if arg < -1e-12 {
            arg += 2.0 * std::f64::consts::PI;
        }
        if arg < best_arg {
            best_arg = arg;
            best_k = k;
        }
    }
    if best_k == 0 {
        return (c, param_x, param_y, aligned);
    }
    let w = C::from_polar(
        1.0,
        2.0 * std::f64::consts::PI * best_k as f64 / q as f64,
    );
    let rot = |s: Vec<(u32, C)>| -> Vec<(u32, C)> {
        s.into_iter().map(|(m, cc)| (m, cc * w.powu(m))).collect()
    };
    let rot_aligned = |s: Vec<(Rational64, C)>| -> Vec<(Rational64, C)> {
        s.into_iter()
            .map(|(e, cc)| {
                let m = (*e.numer() * (q as i64 / *e.denom())) as u32;
                (e, cc * w.powu(m))
            })
            .collect()
    };
    let c_new = c * w.powu(p);
    (c_new, rot(param_x), rot(param_y), rot_aligned(aligned))
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a.unsigned_abs(), b.unsigned_abs()) as i64 * b
}

// ---------------------------------------------------------------------------
// branches at infinity
// ---------------------------------------------------------------------------

/// All local branches of `{F = 0}` at its intersection with the infinity
/// line, with transversality flags.
pub fn branches_at_infinity(
    big_f: &HomogeneousPolynomial,
    max_terms: usize,
    tol: f64,
) -> Result<Vec<PuiseuxBranch>> {
    let form = big_f.restrict_to_infinity();
    if form.is_empty() {
        return Err(Error::Other(
            "curve contains the infinity line".to_string(),
        ));
    }
    let d = big_f.degree();
    // roots of the binary form F(0, x1, x2) in u = x1/x2, plus (0:1:0)
    // when x2 divides the form
    let mut coeffs = vec![C::new(0.0, 0.0); d as usize + 1];
    for (&(j, _k), c) in &form {
        coeffs[j as usize] += C::new(crate::polycore::rat_to_f64(c), 0.0);
    }
    let mut points: Vec<(usize, (C, C))> = Vec::new(); // (chart, local point)
    let unipoly = UnivariateComplexPolynomial::new(coeffs.clone());
    if unipoly.degree() >= 1 {
        // a root of multiplicity m is only located to O(eps^(1/m)); cluster
        // coarsely so multiple infinity points collapse to their centroid
        let roots = unipoly.roots_clustered(1e-12, 1e-3)?;
        for (u, _m) in roots.roots {
            // point (0 : u : 1), chart 2 local coords (x0/x2, x1/x2)
            points.push((2, (C::new(0.0, 0.0), u)));
        }
    }
    // (0:1:0) lies on the curve when the x1^d coefficient vanishes
    let top = coeffs[d as usize];
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if top.norm() <= 1e-12 * scale.max(1.0) {
        points.push((1, (C::new(0.0, 0.0), C::new(0.0, 0.0))));
    }
    let mut out = Vec::new();
    for (chart, local_pt) in points {
        let affine = big_f.dehomogenize(chart);
        let g = CPoly::from_exact(&affine);
        let mut branches = branches_of_cpoly(&g, local_pt, max_terms, tol)?;
        for b in &mut branches {
            b.chart = Some(chart);
            // L-infinity is the axis {first chart coordinate = 0}, with
            // direction (0, 1)
            let tangent_vertical = b.tangent.0.norm() < 1e-8;
            b.transverse_to_linf = Some(!tangent_vertical);
        }
        out.append(&mut branches);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{homogenize, parse_polynomial};

    fn parse(s: &str) -> BivariatePolynomial {
        parse_polynomial(s, ("x", "y")).unwrap()
    }

    fn origin() -> (C, C) {
        (C::new(0.0, 0.0), C::new(0.0, 0.0))
    }

    #[test]
    fn polygon_of_cusp() {
        let edges = newton_polygon(&parse("y^2 - x^3")).unwrap();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].endpoints, ((3, 0), (0, 2)));
        assert_eq!(edges[0].mu, (3, 2));
    }

    #[test]
    fn polygon_of_node_with_interior_point() {
        let edges = newton_polygon(&parse("y^2 - x^2*(1 + x)")).unwrap();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].endpoints, ((2, 0), (0, 2)));
        assert_eq!(edges[0].mu, (1, 1));
        assert!(!edges[0].supporting.contains(&(3, 0)));
    }

    #[test]
    fn polygon_with_two_edges() {
        // support {(3,0), (1,2), (0,4)}: the asymptotic Newton diagram of a
        // tangency equation with (q_b, p_b) = (2, 3), (q_a, p_a) = (2, 4)
        let f = parse("x^3 + x*y^2 + y^4");
        let edges = newton_polygon(&f).unwrap();
        assert_eq!(edges.len(), 2);
        assert_eq!(edges[0].endpoints, ((3, 0), (1, 2)));
        assert_eq!(edges[0].mu, (1, 1));
        assert_eq!(edges[1].endpoints, ((1, 2), (0, 4)));
        assert_eq!(edges[1].mu, (1, 2));
    }

    #[test]
    fn cusp_branch() {
        let bs = puiseux_branches(&parse("y^2 - x^3"), origin(), 8, 1e-9).unwrap();
        assert_eq!(bs.len(), 1);
        let b = &bs[0];
        assert_eq!((b.q, b.p), (2, Some(3)));
        assert!((b.c - C::new(1.0, 0.0)).norm() < 1e-8);
        assert_eq!(b.r(), Some(Rational64::new(3, 2)));
    }

    #[test]
    fn node_has_two_smooth_branches() {
        let bs = puiseux_branches(&parse("y^2 - x^2*(1 + x)"), origin(), 8, 1e-9).unwrap();
        assert_eq!(bs.len(), 2);
        for b in &bs {
            assert_eq!((b.q, b.p), (1, Some(2)));
            assert_eq!(b.r(), Some(Rational64::new(2, 1)));
        }
        // tangents are y = x and y = -x
        let mut slopes: Vec<f64> = bs
            .iter()
            .map(|b| (b.tangent.1 / b.tangent.0).re)
            .collect();
        slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((slopes[0] + 1.0).abs() < 1e-8);
        assert!((slopes[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn smooth_graph_branch() {
        let bs = puiseux_branches(&parse("y - x^2"), origin(), 8, 1e-9).unwrap();
        assert_eq!(bs.len(), 1);
        let b = &bs[0];
        assert_eq!((b.q, b.p), (1, Some(2)));
        assert!((b.c - C::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn vertical_tangent_branch() {
        // x = y^2: tangent to the y-axis, aligned exponents (1, 2)
        let bs = puiseux_branches(&parse("x - y^2"), origin(), 8, 1e-9).unwrap();
        assert_eq!(bs.len(), 1);
        let b = &bs[0];
        assert_eq!((b.q, b.p), (1, Some(2)));
        assert!(b.tangent.0.norm() < 1e-10);
    }

    #[test]
    fn tacnode_branches() {
        let bs = puiseux_branches(&parse("y^2 - x^4*(1 - x)"), origin(), 8, 1e-9).unwrap();
        assert_eq!(bs.len(), 2);
        for b in &bs {
            assert_eq!((b.q, b.p), (1, Some(2)));
        }
    }

    #[test]
    fn substitution_vanishes_along_branch() {
        let f = parse("y^3 - x^5 + x^7");
        let bs = puiseux_branches(&f, origin(), 10, 1e-9).unwrap();
        let g = CPoly::from_exact(&f);
        for b in &bs {
            for &tv in &[1e-2, 1e-3] {
                let t = C::new(tv, 0.0);
                let (x, y) = b.at(t);
                let v = g.eval(x, y).norm();
                // vanishing to high order in t
                assert!(v < tv.powi(4), "residual {v} at t={tv}");
            }
        }
    }

    #[test]
    fn branch_multiplicities_sum_to_local_multiplicity() {
        // ordinary triple point: y^3 - x^3 + x^4 has three smooth branches
        let bs = puiseux_branches(&parse("y^3 - x^3 + x^4"), origin(), 8, 1e-9).unwrap();
        let total: u32 = bs.iter().map(|b| b.q).sum();
        assert_eq!(total, 3);
        assert_eq!(bs.len(), 3);
    }

    #[test]
    fn hyperbola_at_infinity() {
        // x1 x2 - x0^2: two transverse quadratic branches
        let f = parse("x*y - 1");
        let hf = homogenize(&f, 2).unwrap();
        let bs = branches_at_infinity(&hf, 8, 1e-9).unwrap();
        assert_eq!(bs.len(), 2);
        for b in &bs {
            assert_eq!((b.q, b.p), (1, Some(2)));
            assert_eq!(b.transverse_to_linf, Some(true));
            let (quad, sub) = classify_subquadratic(b).unwrap();
            assert!(quad && sub);
        }
    }

    #[test]
    fn parabola_tangent_at_infinity() {
        let f = parse("y - x^2");
        let hf = homogenize(&f, 2).unwrap();
        let bs = branches_at_infinity(&hf, 8, 1e-9).unwrap();
        assert_eq!(bs.len(), 1);
        let b = &bs[0];
        assert_eq!((b.q, b.p), (1, Some(2)));
        assert_eq!(b.transverse_to_linf, Some(false));
    }

    #[test]
    fn cubic_graph_at_infinity() {
        let f = parse("y - x^3");
        let hf = homogenize(&f, 3).unwrap();
        let bs = branches_at_infinity(&hf, 8, 1e-9).unwrap();
        assert_eq!(bs.len(), 1);
        let b = &bs[0];
        assert_eq!((b.q, b.p), (2, Some(3)));
        assert_eq!(b.transverse_to_linf, Some(false));
        let (quad, sub) = classify_subquadratic(b).unwrap();
        assert!(!quad && sub);
    }

    #[test]
    fn chart_independence_of_exponents() {
        // (0:1:0) and (0:0:1) both lie on x1 x2 = x0^2; exponent data from
        // chart 1 and chart 2 agree
        let f = parse("x*y - 1");
        let hf = homogenize(&f, 2).unwrap();
        let bs = branches_at_infinity(&hf, 8, 1e-9).unwrap();
        let data: Vec<(u32, Option<u32>)> = bs.iter().map(|b| (b.q, b.p)).collect();
        assert!(data.iter().all(|&(q, p)| q == 1 && p == Some(2)));
        let charts: Vec<usize> = bs.iter().filter_map(|b| b.chart).collect();
        assert!(charts.contains(&1) && charts.contains(&2));
    }

    #[test]
    fn classify_line_germ_errors() {
        let b = PuiseuxBranch::line_germ(origin(), (C::new(1.0, 0.0), C::new(0.0, 0.0)));
        assert!(matches!(classify_subquadratic(&b), Err(Error::LineGerm)));
    }

    #[test]
    fn classification_table() {
        let mk = |q: u32, p: u32| PuiseuxBranch {
            p: Some(p),
            q,
            ..PuiseuxBranch::line_germ(origin(), (C::new(1.0, 0.0), C::new(0.0, 0.0)))
        };
        assert_eq!(classify_subquadratic(&mk(1, 2)).unwrap(), (true, true));
        assert_eq!(classify_subquadratic(&mk(2, 3)).unwrap(), (false, true));
        assert_eq!(classify_subquadratic(&mk(1, 3)).unwrap(), (false, false));
    }

    #[test]
    fn point_off_curve_rejected() {
        let r = puiseux_branches(&parse("y^2 - x^3"), (C::new(1.0, 0.0), C::new(5.0, 0.0)), 8, 1e-9);
        assert!(matches!(r, Err(Error::PointNotOnCurve { .. })));
    }
}
