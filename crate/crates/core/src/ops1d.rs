//! Gauss-Lobatto collocation machinery on the reference interval [-1, 1]:
//! nodes, quadrature weights, Lagrange interpolation and the difference
//! matrix `D[k][l] = l_l'(xi_k)`.
//!
//! With the diagonal weight matrix, `D` satisfies the summation-by-parts
//! identity `w_k D[k][l] + w_l D[l][k] = delta_kp delta_lp - delta_k0 delta_l0`,
//! which the element solver relies on for conservation and entropy balances.

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 10;

/// Nodes, weights and difference matrix for one polynomial degree.
#[derive(Clone, Debug)]
pub struct LobattoOperator {
    degree: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// Row-major difference matrix, (p+1) x (p+1); row = evaluation node.
    diff: Vec<f64>,
    /// Barycentric weights of the node set, for interpolation.
    bary: Vec<f64>,
}

/// Legendre polynomial L_p and its derivative at x, by the three-term
/// recurrence (derivative via the standard companion recurrence).
fn legendre_and_deriv(p: usize, x: f64) -> (f64, f64) {
    if p == 0 {
        return (1.0, 0.0);
    }
    let mut lm = 1.0; // L_0
    let mut l = x; // L_1
    let mut dm = 0.0; // L_0'
    let mut d = 1.0; // L_1'
    for n in 1..p {
        let nf = n as f64;
        let lp = ((2.0 * nf + 1.0) * x * l - nf * lm) / (nf + 1.0);
        let dp = dm + (2.0 * nf + 1.0) * l;
        lm = l;
        l = lp;
        dm = d;
        d = dp;
    }
    (l, d)
}

/// Interior Gauss-Lobatto nodes are the roots of L_p'. Newton iteration on
/// L_p' with L_p'' from the Legendre ODE, Chebyshev-Lobatto initial guess.
fn interior_node(p: usize, k: usize) -> f64 {
    let mut x = -(std::f64::consts::PI * k as f64 / p as f64).cos();
    for _ in 0..100 {
        let (l, d) = legendre_and_deriv(p, x);
        let pf = p as f64;
        // (1 - x^2) L'' = 2 x L' - p (p+1) L
        let dd = (2.0 * x * d - pf * (pf + 1.0) * l) / (1.0 - x * x);
        let step = d / dd;
        x -= step;
        if step.abs() <= 1e-15 {
            break;
        }
    }
    x
}

impl LobattoOperator {
    pub fn new(degree: usize) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(Error::Config(format!(
                "polynomial degree must lie in 1..={MAX_DEGREE}, got {degree}"
            )));
        }
        let p = degree;
        let mut nodes = vec![0.0; p + 1];
        nodes[0] = -1.0;
        nodes[p] = 1.0;
        for k in 1..p {
            nodes[k] = interior_node(p, k);
        }
        // Symmetrize to remove iteration asymmetry.
        for k in 0..=p {
            let s = 0.5 * (nodes[k] - nodes[p - k]);
            nodes[k] = s;
        }

        let pf = p as f64;
        let mut weights = vec![0.0; p + 1];
        for k in 0..=p {
            let (l, _) = legendre_and_deriv(p, nodes[k]);
            weights[k] = 2.0 / (pf * (pf + 1.0) * l * l);
        }

        let mut bary = vec![0.0; p + 1];
        for j in 0..=p {
            let mut w = 1.0;
            for m in 0..=p {
                if m != j {
                    w *= nodes[j] - nodes[m];
                }
            }
            bary[j] = 1.0 / w;
        }

        // D[k][j] = (bary_j / bary_k) / (x_k - x_j), diagonal from zero row sums.
        let n = p + 1;
        let mut diff = vec![0.0; n * n];
        for k in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                if j != k {
                    let v = (bary[j] / bary[k]) / (nodes[k] - nodes[j]);
                    diff[k * n + j] = v;
                    acc += v;
                }
            }
            diff[k * n + k] = -acc;
        }

        Ok(Self { degree, nodes, weights, diff, bary })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn n_nodes(&self) -> usize {
        self.degree + 1
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn d(&self, k: usize, l: usize) -> f64 {
        self.diff[k * (self.degree + 1) + l]
    }

    /// Derivative of the interpolant of `values` at every node.
    pub fn apply_diff(&self, values: &[f64]) -> Vec<f64> {
        let n = self.n_nodes();
        assert_eq!(values.len(), n);
        let mut out = vec![0.0; n];
        for k in 0..n {
            let mut acc = 0.0;
            for l in 0..n {
                acc += self.d(k, l) * values[l];
            }
            out[k] = acc;
        }
        out
    }

    /// Lagrange interpolation of nodal `values` at `xi` in [-1, 1].
    /// Exact cardinality at the nodes.
    pub fn interpolate(&self, values: &[f64], xi: f64) -> f64 {
        let n = self.n_nodes();
        assert_eq!(values.len(), n);
        for k in 0..n {
            if xi == self.nodes[k] {
                return values[k];
            }
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for k in 0..n {
            let t = self.bary[k] / (xi - self.nodes[k]);
            num += t * values[k];
            den += t;
        }
        num / den
    }

    /// Quadrature of nodal samples: sum w_k f_k.
    pub fn quad(&self, values: &[f64]) -> f64 {
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }
}
