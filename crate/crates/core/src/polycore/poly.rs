//! Sparse exact-rational bivariate polynomials.
//!
//! Terms are kept in a map from exponent pairs to nonzero `BigRational`
//! coefficients. The canonical term order used for printing and hashing is
//! graded lexicographic (total degree first, then power of the first
//! variable).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back to a quotient of rounded parts for huge integers
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Sparse bivariate polynomial with exact rational coefficients.
///
/// Invariant: no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rat>,
    vars: (String, String),
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::zero_in("x", "y")
    }

    pub fn zero_in(x: &str, y: &str) -> Self {
        BivariatePolynomial {
            terms: BTreeMap::new(),
            vars: (x.to_string(), y.to_string()),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn constant_i64(c: i64) -> Self {
        Self::constant(rat(c, 1))
    }

    /// The monomial `c * x^i * y^j`.
    pub fn monomial(c: Rat, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    pub fn from_terms(terms: &[((u32, u32), Rat)]) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(*i, *j, c.clone());
        }
        p
    }

    pub fn vars(&self) -> (&str, &str) {
        (&self.vars.0, &self.vars.1)
    }

    pub fn with_vars(mut self, x: &str, y: &str) -> Self {
        self.vars = (x.to_string(), y.to_string());
        self
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn degree_in_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn degree_in_x(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero_in(&self.vars.0, &self.vars.1);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(Rat::one()).with_vars(&self.vars.0, &self.vars.1);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn diff_x(&self) -> Self {
        let mut out = Self::zero_in(&self.vars.0, &self.vars.1);
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * Rat::from(BigInt::from(i)));
            }
        }
        out
    }

    pub fn diff_y(&self) -> Self {
        let mut out = Self::zero_in(&self.vars.0, &self.vars.1);
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * Rat::from(BigInt::from(j)));
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rat(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * x.pow(i as i32) * y.pow(j as i32);
        }
        acc
    }

    /// Floating evaluation at a complex point.
    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j), c) in &self.terms {
            acc += rat_to_f64(c) * x.powu(i) * y.powu(j);
        }
        acc
    }

    pub fn gradient(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (self.diff_x().eval(x, y), self.diff_y().eval(x, y))
    }

    /// Substitute `x -> a*x + b*y + e`, `y -> c*x + d*y + f` exactly.
    pub fn substitute_affine(&self, m: [[Rat; 2]; 2], t: [Rat; 2]) -> Self {
        let new_x = Self::from_terms(&[
            ((1, 0), m[0][0].clone()),
            ((0, 1), m[0][1].clone()),
            ((0, 0), t[0].clone()),
        ]);
        let new_y = Self::from_terms(&[
            ((1, 0), m[1][0].clone()),
            ((0, 1), m[1][1].clone()),
            ((0, 0), t[1].clone()),
        ]);
        self.compose(&new_x, &new_y)
    }

    /// Substitute polynomials for both variables.
    pub fn compose(&self, px: &Self, py: &Self) -> Self {
        // cache powers to avoid repeated multiplication
        let dx = self.degree_in_x() as usize;
        let dy = self.degree_in_y() as usize;
        let mut xp: Vec<Self> = Vec::with_capacity(dx + 1);
        let mut yp: Vec<Self> = Vec::with_capacity(dy + 1);
        xp.push(Self::constant(Rat::one()));
        yp.push(Self::constant(Rat::one()));
        for k in 1..=dx {
            let next = &xp[k - 1] * px;
            xp.push(next);
        }
        for k in 1..=dy {
            let next = &yp[k - 1] * py;
            yp.push(next);
        }
        let mut out = Self::zero_in(&self.vars.0, &self.vars.1);
        for (&(i, j), c) in &self.terms {
            let prod = &xp[i as usize] * &yp[j as usize];
            out = &out + &prod.scale(c);
        }
        out
    }

    /// Shear `x -> x + lambda*y`.
    pub fn shear_x(&self, lambda: &Rat) -> Self {
        self.substitute_affine(
            [
                [Rat::one(), lambda.clone()],
                [Rat::zero(), Rat::one()],
            ],
            [Rat::zero(), Rat::zero()],
        )
    }

    /// `F_xx F_y^2 - 2 F_xy F_x F_y + F_yy F_x^2`, the skew Hessian.
    pub fn skew_hessian(&self) -> Self {
        let fx = self.diff_x();
        let fy = self.diff_y();
        let fxx = fx.diff_x();
        let fxy = fx.diff_y();
        let fyy = fy.diff_y();
        let a = &fxx * &(&fy * &fy);
        let b = &(&fxy * &fx) * &fy;
        let c = &fyy * &(&fx * &fx);
        &(&a - &b.scale(&rat(2, 1))) + &c
    }

    /// Graded-lex ordered term list, highest first.
    pub fn sorted_terms(&self) -> Vec<((u32, u32), Rat)> {
        let mut ts: Vec<_> = self.terms.iter().map(|(k, v)| (*k, v.clone())).collect();
        ts.sort_by(|a, b| {
            let da = a.0 .0 + a.0 .1;
            let db = b.0 .0 + b.0 .1;
            db.cmp(&da).then(b.0 .0.cmp(&a.0 .0))
        });
        ts
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: Self) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: Self) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: Self) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero_in(&self.vars.0, &self.vars.1);
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }
}

fn fmt_coeff(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(vars: (&str, &str), i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push(vars.0.to_string()),
        _ => parts.push(format!("{}^{}", vars.0, i)),
    }
    match j {
        0 => {}
        1 => parts.push(vars.1.to_string()),
        _ => parts.push(format!("{}^{}", vars.1, j)),
    }
    parts.join("*")
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.sorted_terms() {
            let mono = fmt_monomial(self.vars(), i, j);
            let abs = c.abs();
            let coeff_part = if mono.is_empty() || !abs.is_one() {
                if mono.is_empty() {
                    fmt_coeff(&abs)
                } else {
                    format!("{}*", fmt_coeff(&abs))
                }
            } else {
                String::new()
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{coeff_part}{mono}")?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {coeff_part}{mono}")?;
            } else {
                write!(f, " + {coeff_part}{mono}")?;
            }
        }
        Ok(())
    }
}
