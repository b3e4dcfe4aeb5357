//! Homogeneous ternary polynomials and chart changes on the projective plane.
//!
//! Chart conventions: chart 0 has affine coordinates `(x1/x0, x2/x0)`,
//! chart 1 has `(x0/x1, x2/x1)`, chart 2 has `(x0/x2, x1/x2)`. Chart 0 is
//! the standard affine plane and its complement `{x0 = 0}` is the infinity
//! line.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::poly::{rat_to_f64, BivariatePolynomial, Rat};

/// Homogeneous polynomial in `(x0, x1, x2)`; every exponent triple sums to
/// the stated degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPolynomial {
    terms: BTreeMap<(u32, u32, u32), Rat>,
    degree: u32,
}

impl HomogeneousPolynomial {
    pub fn zero(degree: u32) -> Self {
        HomogeneousPolynomial {
            terms: BTreeMap::new(),
            degree,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: (u32, u32, u32), c: Rat) {
        debug_assert_eq!(e.0 + e.1 + e.2, self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn eval(&self, x0: Complex64, x1: Complex64, x2: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j, k), c) in &self.terms {
            acc += rat_to_f64(c) * x0.powu(i) * x1.powu(j) * x2.powu(k);
        }
        acc
    }

    /// Partial derivative in coordinate `idx` (0, 1, or 2).
    pub fn diff(&self, idx: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (&(i, j, k), c) in &self.terms {
            let (e, fresh) = match idx {
                0 if i > 0 => ((i - 1, j, k), i),
                1 if j > 0 => ((i, j - 1, k), j),
                2 if k > 0 => ((i, j, k - 1), k),
                _ => continue,
            };
            out.add_term(e, c * Rat::from(num_bigint::BigInt::from(fresh)));
        }
        out
    }

    /// Determinant of the 3x3 matrix of second partials. Degree `3(d-2)`,
    /// possibly identically zero.
    pub fn projective_hessian(&self) -> Self {
        let d2: Vec<Vec<Self>> = (0..3)
            .map(|i| (0..3).map(|j| self.diff(i).diff(j)).collect())
            .collect();
        let deg = 3 * self.degree.saturating_sub(2);
        let mut out = Self::zero(deg);
        // cofactor expansion along the first row
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            sub(
                &mul_raw(&d2[r0][c0], &d2[r1][c1]),
                &mul_raw(&d2[r0][c1], &d2[r1][c0]),
            )
        };
        let m00 = minor(1, 2, 1, 2);
        let m01 = minor(1, 2, 0, 2);
        let m02 = minor(1, 2, 0, 1);
        let t0 = mul_raw(&d2[0][0], &m00);
        let t1 = mul_raw(&d2[0][1], &m01);
        let t2 = mul_raw(&d2[0][2], &m02);
        for (e, c) in t0.terms {
            out.add_term(e, c);
        }
        for (e, c) in t1.terms {
            out.add_term(e, -c);
        }
        for (e, c) in t2.terms {
            out.add_term(e, c);
        }
        out
    }

    /// Restrict to an affine chart: divide out the chart coordinate and
    /// rename the two remaining ratios `(z, w)`.
    pub fn dehomogenize(&self, chart: usize) -> BivariatePolynomial {
        let mut p = BivariatePolynomial::zero_in("z", "w");
        for (&(i, j, k), c) in &self.terms {
            let (a, b) = match chart {
                0 => (j, k),
                1 => (i, k),
                2 => (i, j),
                _ => panic!("chart index must be 0, 1, or 2"),
            };
            p.add_term(a, b, c.clone());
        }
        p
    }

    /// Pull back along the linear change of frame `x_i -> sum_j m[i][j] x_j`.
    pub fn transform(&self, m: &[[Rat; 3]; 3]) -> Self {
        let linear = |row: &[Rat; 3]| {
            let mut l = Self::zero(1);
            l.add_term((1, 0, 0), row[0].clone());
            l.add_term((0, 1, 0), row[1].clone());
            l.add_term((0, 0, 1), row[2].clone());
            l
        };
        let forms: Vec<Self> = m.iter().map(linear).collect();
        let mut out = Self::zero(self.degree);
        for (&(i, j, k), c) in &self.terms {
            let mut acc = Self::zero(0);
            acc.add_term((0, 0, 0), c.clone());
            for _ in 0..i {
                acc = mul_raw(&acc, &forms[0]);
            }
            for _ in 0..j {
                acc = mul_raw(&acc, &forms[1]);
            }
            for _ in 0..k {
                acc = mul_raw(&acc, &forms[2]);
            }
            for (e, cc) in acc.terms {
                out.add_term(e, cc);
            }
        }
        out
    }

    /// The binary form `F(0, x1, x2)` cut out by the infinity line.
    pub fn restrict_to_infinity(&self) -> BTreeMap<(u32, u32), Rat> {
        let mut out = BTreeMap::new();
        for (&(i, j, k), c) in &self.terms {
            if i == 0 {
                out.insert((j, k), c.clone());
            }
        }
        out
    }
}

fn mul_raw(a: &HomogeneousPolynomial, b: &HomogeneousPolynomial) -> HomogeneousPolynomial {
    let mut out = HomogeneousPolynomial::zero(a.degree + b.degree);
    for (&(i1, j1, k1), c1) in &a.terms {
        for (&(i2, j2, k2), c2) in &b.terms {
            out.add_term((i1 + i2, j1 + j2, k1 + k2), c1 * c2);
        }
    }
    out
}

fn sub(a: &HomogeneousPolynomial, b: &HomogeneousPolynomial) -> HomogeneousPolynomial {
    let mut out = a.clone();
    for (&e, c) in &b.terms {
        out.add_term(e, -c.clone());
    }
    out
}

/// Homogenize an affine polynomial `p(x, y)` to the given degree with
/// `x = x1/x0`, `y = x2/x0`.
pub fn homogenize(p: &BivariatePolynomial, degree: u32) -> Result<HomogeneousPolynomial> {
    let d = p.degree();
    if degree < d {
        return Err(Error::DegreeTooSmall {
            requested: degree,
            actual: d,
        });
    }
    let mut out = HomogeneousPolynomial::zero(degree);
    for (&(i, j), c) in p.terms() {
        out.add_term((degree - i - j, i, j), c.clone());
    }
    Ok(out)
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j, k), c) in &self.terms {
            let mono: Vec<String> = [(i, "x0"), (j, "x1"), (k, "x2")]
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|(e, v)| {
                    if *e == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if !mono.is_empty() {
                write!(f, "*{}", mono.join("*"))?;
            }
            first = false;
        }
        Ok(())
    }
}
