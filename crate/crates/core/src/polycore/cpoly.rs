//! Bivariate polynomials with complex floating coefficients.
//!
//! Working representation for the analytic modules: curve germs get
//! translated to numeric base points, restricted to lines, and fed to the
//! Newton-Puiseux recursion, none of which stays rational.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::poly::{rat_to_f64, BivariatePolynomial};
use super::roots::UnivariateComplexPolynomial;

#[derive(Clone, Debug, Default)]
pub struct CPoly {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl CPoly {
    pub fn zero() -> Self {
        CPoly::default()
    }

    pub fn from_exact(p: &BivariatePolynomial) -> Self {
        let mut out = CPoly::zero();
        for (&(i, j), c) in p.terms() {
            out.add_term(i, j, Complex64::new(rat_to_f64(c), 0.0));
        }
        out
    }

    pub fn monomial(c: Complex64, i: u32, j: u32) -> Self {
        let mut out = CPoly::zero();
        out.add_term(i, j, c);
        out
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Complex64) {
        if c.norm() == 0.0 {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if e.norm() == 0.0 {
            self.terms.remove(&(i, j));
        }
    }

    /// Drop terms whose magnitude is below `cut` times the largest
    /// coefficient magnitude.
    pub fn prune(&mut self, cut: f64) {
        let max = self.max_coeff();
        if max == 0.0 {
            return;
        }
        self.terms.retain(|_, c| c.norm() > max * cut);
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Complex64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Complex64 {
        self.terms
            .get(&(i, j))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn degree_in_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j), c) in &self.terms {
            acc += c * x.powu(i) * y.powu(j);
        }
        acc
    }

    pub fn diff_x(&self) -> Self {
        let mut out = CPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * i as f64);
            }
        }
        out
    }

    pub fn diff_y(&self) -> Self {
        let mut out = CPoly::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * j as f64);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = CPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, *c);
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = CPoly::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v * c);
        }
        out
    }

    /// Translate the origin to `(x0, y0)`: returns `p(x + x0, y + y0)`.
    pub fn translate(&self, x0: Complex64, y0: Complex64) -> Self {
        let dx = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0) as usize;
        let dy = self.degree_in_y() as usize;
        // binomial tables for (x + x0)^i and (y + y0)^j
        let xb = shifted_powers(x0, dx);
        let yb = shifted_powers(y0, dy);
        let mut out = CPoly::zero();
        for (&(i, j), c) in &self.terms {
            for (a, ca) in xb[i as usize].iter().enumerate() {
                for (b, cb) in yb[j as usize].iter().enumerate() {
                    out.add_term(a as u32, b as u32, c * ca * cb);
                }
            }
        }
        out
    }

    pub fn swap_vars(&self) -> Self {
        let mut out = CPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(j, i, *c);
        }
        out
    }

    /// Restrict to the parametrized line `(x, y) = p + u v`.
    pub fn restrict_to_line(
        &self,
        p: (Complex64, Complex64),
        v: (Complex64, Complex64),
    ) -> UnivariateComplexPolynomial {
        let dx = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0) as usize;
        let dy = self.degree_in_y() as usize;
        // (p.0 + v.0 u)^i as univariate coefficient vectors
        let xu = linear_powers(p.0, v.0, dx);
        let yu = linear_powers(p.1, v.1, dy);
        let deg = dx + dy;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (&(i, j), c) in &self.terms {
            let a = &xu[i as usize];
            let b = &yu[j as usize];
            for (k1, ca) in a.iter().enumerate() {
                for (k2, cb) in b.iter().enumerate() {
                    coeffs[k1 + k2] += c * ca * cb;
                }
            }
        }
        UnivariateComplexPolynomial::new(coeffs)
    }
}

/// Coefficient vectors of `(t + c)^k` for k = 0..=n, ascending in `t`.
fn shifted_powers(c: Complex64, n: usize) -> Vec<Vec<Complex64>> {
    let mut out = vec![vec![Complex64::new(1.0, 0.0)]];
    for k in 1..=n {
        let prev = &out[k - 1];
        let mut next = vec![Complex64::new(0.0, 0.0); k + 1];
        for (i, p) in prev.iter().enumerate() {
            next[i + 1] += p;
            next[i] += p * c;
        }
        out.push(next);
    }
    out
}

/// Coefficient vectors of `(a + b u)^k` for k = 0..=n, ascending in `u`.
fn linear_powers(a: Complex64, b: Complex64, n: usize) -> Vec<Vec<Complex64>> {
    let mut out = vec![vec![Complex64::new(1.0, 0.0)]];
    for k in 1..=n {
        let prev = &out[k - 1];
        let mut next = vec![Complex64::new(0.0, 0.0); k + 1];
        for (i, p) in prev.iter().enumerate() {
            next[i + 1] += p * b;
            next[i] += p * a;
        }
        out.push(next);
    }
    out
}
