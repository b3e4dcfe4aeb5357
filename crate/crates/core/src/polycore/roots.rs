//! Univariate complex polynomials and simultaneous root extraction.
//!
//! Roots are found by Aberth-Ehrlich iteration started from a perturbed
//! circle, then clustered into multiplicities and polished by Newton steps
//! on the appropriate derivative.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_CLUSTER_RADIUS: f64 = 1e-6;

/// Dense univariate polynomial, coefficients ascending by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct UnivariateComplexPolynomial {
    coeffs: Vec<Complex64>,
}

/// Roots of a polynomial grouped into clusters with multiplicities.
#[derive(Clone, Debug, Serialize)]
pub struct RootMultiset {
    pub roots: Vec<(Complex64, usize)>,
    pub cluster_radius: f64,
}

impl RootMultiset {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// Flatten to a list with each root repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for (z, m) in &self.roots {
            for _ in 0..*m {
                out.push(*z);
            }
        }
        out
    }
}

impl UnivariateComplexPolynomial {
    /// Build from ascending coefficients, trimming a (numerically) zero
    /// leading part.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = UnivariateComplexPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    fn trim(&mut self) {
        let max = self
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        let cut = max * 1e-14;
        while let Some(last) = self.coeffs.last() {
            if last.norm() <= cut {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        UnivariateComplexPolynomial { coeffs }
    }

    /// Scale-aware residual bound `sum |c_k| |z|^k`.
    fn scale_at(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let mut acc = 0.0;
        let mut p = 1.0;
        for c in &self.coeffs {
            acc += c.norm() * p;
            p *= r;
        }
        acc.max(1e-300)
    }

    /// All roots with multiplicities.
    pub fn roots(&self, tol: f64) -> Result<RootMultiset> {
        self.roots_clustered(tol, DEFAULT_CLUSTER_RADIUS)
    }

    pub fn roots_clustered(&self, tol: f64, cluster_radius: f64) -> Result<RootMultiset> {
        let n = self.degree();
        if self.is_zero() || n == 0 {
            return Err(Error::DegeneratePolynomial);
        }
        let raw = self.aberth(tol)?;
        let mut ms = cluster(&raw, cluster_radius);
        // polish, re-cluster, polish: Aberth leaves the approximations of a
        // multiple root spread wider than the cluster radius; Newton pulls
        // them together so the second clustering pass can merge them
        for _ in 0..2 {
            self.polish_clusters(&mut ms);
            let expanded: Vec<Complex64> = ms
                .iter()
                .flat_map(|&(z, m)| std::iter::repeat(z).take(m))
                .collect();
            ms = cluster(&expanded, cluster_radius);
        }
        self.polish_clusters(&mut ms);
        Ok(RootMultiset {
            roots: ms,
            cluster_radius,
        })
    }

    /// Newton-polish cluster centers: a root of multiplicity m is a simple
    /// root of the (m-1)-th derivative.
    fn polish_clusters(&self, ms: &mut [(Complex64, usize)]) {
        for (z, m) in ms.iter_mut() {
            let mut d = self.clone();
            for _ in 0..m.saturating_sub(1) {
                d = d.derivative();
            }
            let dp = d.derivative();
            for _ in 0..50 {
                let f = d.eval(*z);
                let fp = dp.eval(*z);
                if fp.norm() < 1e-300 {
                    break;
                }
                let step = f / fp;
                *z -= step;
                if step.norm() < 1e-15 * (1.0 + z.norm()) {
                    break;
                }
            }
        }
    }

    fn aberth(&self, tol: f64) -> Result<Vec<Complex64>> {
        let n = self.degree();
        let lead = self.coeffs[n];
        // Cauchy bound on root magnitudes
        let bound = 1.0
            + self.coeffs[..n]
                .iter()
                .map(|c| (c / lead).norm())
                .fold(0.0f64, f64::max);
        let radius = bound.max(1e-3);
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
                Complex64::from_polar(radius * 0.8, theta)
            })
            .collect();
        let deriv = self.derivative();
        let mut best_residual = f64::INFINITY;
        for _ in 0..400 {
            let mut moved = 0.0f64;
            for i in 0..n {
                let p = self.eval(z[i]);
                let dp = deriv.eval(z[i]);
                let newton = if dp.norm() > 1e-300 {
                    p / dp
                } else {
                    Complex64::new(1e-8, 1e-8)
                };
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    if j != i {
                        let diff = z[i] - z[j];
                        if diff.norm() > 1e-300 {
                            s += 1.0 / diff;
                        }
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - newton * s;
                let step = if denom.norm() > 1e-300 {
                    newton / denom
                } else {
                    newton
                };
                z[i] -= step;
                moved = moved.max(step.norm());
            }
            let residual = z
                .iter()
                .map(|&zi| self.eval(zi).norm() / self.scale_at(zi))
                .fold(0.0f64, f64::max);
            best_residual = best_residual.min(residual);
            if residual <= tol || moved < 1e-16 * radius {
                return Ok(z);
            }
        }
        let residual = z
            .iter()
            .map(|&zi| self.eval(zi).norm() / self.scale_at(zi))
            .fold(0.0f64, f64::max);
        // multiple roots converge linearly; accept if the clustered residual
        // is still small relative to scale
        if residual <= tol.max(1e-8) {
            return Ok(z);
        }
        Err(Error::RootsNonConvergence {
            residual: residual.min(best_residual),
        })
    }
}

fn cluster(raw: &[Complex64], radius: f64) -> Vec<(Complex64, usize)> {
    let mut used = vec![false; raw.len()];
    let mut out = Vec::new();
    for i in 0..raw.len() {
        if used[i] {
            continue;
        }
        // grow the cluster transitively
        let mut members = vec![i];
        used[i] = true;
        let mut frontier = vec![i];
        while let Some(k) = frontier.pop() {
            for j in 0..raw.len() {
                if !used[j] && (raw[j] - raw[k]).norm() <= radius {
                    used[j] = true;
                    members.push(j);
                    frontier.push(j);
                }
            }
        }
        let center = members.iter().map(|&j| raw[j]).sum::<Complex64>() / members.len() as f64;
        out.push((center, members.len()));
    }
    out.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn perfect_square() {
        // theta^2 - 2 theta + 1 = (theta - 1)^2
        let p = UnivariateComplexPolynomial::from_real(&[1.0, -2.0, 1.0]);
        let ms = p.roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(ms.roots.len(), 1);
        assert_eq!(ms.roots[0].1, 2);
        assert!((ms.roots[0].0 - c(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn quadratic_with_two_roots() {
        // theta^2 - 2 theta + 3/4 = (theta - 1/2)(theta - 3/2)
        let p = UnivariateComplexPolynomial::from_real(&[0.75, -2.0, 1.0]);
        let ms = p.roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(ms.roots.len(), 2);
        assert!((ms.roots[0].0 - c(0.5, 0.0)).norm() < 1e-10);
        assert!((ms.roots[1].0 - c(1.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn cubic_with_double_root() {
        // theta^3 - 3 theta + 2 = (theta - 1)^2 (theta + 2)
        let p = UnivariateComplexPolynomial::from_real(&[2.0, -3.0, 0.0, 1.0]);
        let ms = p.roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(ms.roots.len(), 2);
        let (neg2, _) = ms.roots[0];
        let (one, m) = ms.roots[1];
        assert!((neg2 - c(-2.0, 0.0)).norm() < 1e-10);
        assert!((one - c(1.0, 0.0)).norm() < 1e-8);
        assert_eq!(m, 2);
        assert_eq!(ms.total_multiplicity(), 3);
    }

    #[test]
    fn random_products_recover_roots() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let k = rng.gen_range(2..6);
            let roots: Vec<Complex64> = (0..k)
                .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            let mut coeffs = vec![c(1.0, 0.0)];
            for r in &roots {
                let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
                for (i, cf) in coeffs.iter().enumerate() {
                    next[i + 1] += cf;
                    next[i] -= cf * r;
                }
                coeffs = next;
            }
            let p = UnivariateComplexPolynomial::new(coeffs);
            let ms = p.roots(DEFAULT_ROOT_TOL).unwrap();
            for r in &roots {
                let found = ms
                    .expanded()
                    .iter()
                    .map(|z| (z - r).norm())
                    .fold(f64::INFINITY, f64::min);
                assert!(found < 1e-8, "root {r} missed by {found}");
            }
        }
    }
}
