//! Exact univariate polynomials over the rationals and resultants.
//!
//! Used to eliminate `y` from pairs of exact bivariate polynomials when
//! locating singular points and inflections. The resultant is the
//! determinant of the Sylvester matrix, computed fraction-free (Bareiss)
//! over the polynomial ring.

use num_traits::Zero;

use super::poly::{BivariatePolynomial, Rat};
use super::roots::UnivariateComplexPolynomial;
use num_complex::Complex64;

use super::poly::rat_to_f64;

/// Dense univariate polynomial with exact rational coefficients,
/// ascending by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniRat {
    coeffs: Vec<Rat>,
}

impl UniRat {
    pub fn zero() -> Self {
        UniRat { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniRat {
            coeffs: vec![Rat::from_integer(1.into())],
        }
    }

    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniRat { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in rhs.coeffs.iter().enumerate() {
            out[i] -= b;
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    /// Exact division; panics if the division leaves a remainder, which
    /// cannot happen for Bareiss pivots.
    pub fn div_exact(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let mut rem = self.coeffs.clone();
        let dr = rhs.degree();
        let lead = rhs.coeffs.last().unwrap().clone();
        if rem.len() < rhs.coeffs.len() {
            panic!("inexact polynomial division");
        }
        let mut q = vec![Rat::zero(); rem.len() - rhs.coeffs.len() + 1];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dr] / &lead;
            q[k] = c.clone();
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let sub = &c * b;
                rem[k + j] -= sub;
            }
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "inexact polynomial division"
        );
        Self::new(q)
    }

    pub fn to_complex(&self) -> UnivariateComplexPolynomial {
        UnivariateComplexPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| Complex64::new(rat_to_f64(c), 0.0))
                .collect(),
        )
    }
}

/// Coefficients of `p` viewed as a polynomial in `y` over `Q[x]`.
fn y_coefficients(p: &BivariatePolynomial) -> Vec<UniRat> {
    let dy = p.degree_in_y() as usize;
    let dx = p.degree_in_x() as usize;
    let mut rows = vec![vec![Rat::zero(); dx + 1]; dy + 1];
    for (&(i, j), c) in p.terms() {
        rows[j as usize][i as usize] = c.clone();
    }
    rows.into_iter().map(UniRat::new).collect()
}

/// Resultant of `f` and `g` with respect to `y`: a polynomial in `x` that
/// vanishes exactly at the `x`-coordinates of common roots.
pub fn resultant_y(f: &BivariatePolynomial, g: &BivariatePolynomial) -> UniRat {
    let fa = y_coefficients(f);
    let ga = y_coefficients(g);
    let m = fa.len() - 1;
    let n = ga.len() - 1;
    if m == 0 && n == 0 {
        return UniRat::one();
    }
    let size = m + n;
    let mut mat = vec![vec![UniRat::zero(); size]; size];
    for row in 0..n {
        for (k, c) in fa.iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in ga.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut m: Vec<Vec<UniRat>>) -> UniRat {
    let n = m.len();
    if n == 0 {
        return UniRat::one();
    }
    let mut sign = false;
    let mut prev = UniRat::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return UniRat::zero(),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = pivot.mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = UniRat::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}
