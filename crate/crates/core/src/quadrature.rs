//! Gauss-Jacobi rules for `∫_{-1}^{1} (1-x)^a (1+x)^b f(x) dx`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::gamma::ln_gamma;

/// Nodes and weights of an `n`-point Gauss-Jacobi rule, computed with the
/// Golub-Welsch eigenvalue method. Nodes are sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussJacobi {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    a: f64,
    b: f64,
}

impl GaussJacobi {
    pub fn new(n: usize, a: f64, b: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("Gauss-Jacobi needs at least 2 nodes, got {n}")));
        }
        if !(a > -1.0 && b > -1.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::domain(format!("Gauss-Jacobi needs a, b > -1, got ({a}, {b})")));
        }

        let ab = a + b;
        let mut jacobi = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            let kf = k as f64;
            let diag = if k == 0 {
                (b - a) / (ab + 2.0)
            } else {
                (b * b - a * a) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
            };
            jacobi[(k, k)] = diag;
            if k + 1 < n {
                // off-diagonal between rows k and k+1
                let m = kf + 1.0;
                let s = 2.0 * m + ab;
                let off = if k == 0 {
                    (4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0).powi(2) * (ab + 3.0))).sqrt()
                } else {
                    (4.0 * m * (m + a) * (m + b) * (m + ab) / (s * s * (s + 1.0) * (s - 1.0))).sqrt()
                };
                jacobi[(k, k + 1)] = off;
                jacobi[(k + 1, k)] = off;
            }
        }

        // ∫ (1-x)^a (1+x)^b dx over [-1, 1]
        let ln_mu0 = (ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0).0 + ln_gamma(b + 1.0).0
            - ln_gamma(ab + 2.0).0;
        let mu0 = ln_mu0.exp();

        let eig = SymmetricEigen::new(jacobi);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let v0 = eig.eigenvectors[(0, i)];
                (eig.eigenvalues[i], mu0 * v0 * v0)
            })
            .collect();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(GaussJacobi { nodes, weights, a, b })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn exponents(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// `Σ w_i f(x_i)`.
    pub fn apply<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}
