//! Nystrom discretisation of the Birman-Schwinger kernel
//! `K(r, r') = sqrt(v(r)) G_l(r, r') sqrt(v(r'))`, whose largest eigenvalue is
//! `1 / g_c`.
//!
//! Nodes are equispaced in a mapped variable `t ∈ (0, 1)`. The map clusters
//! nodes at the ends of a compact support, or stretches `t` over the half line
//! for decaying tails, so the trapezoid rule sees a smooth integrand except
//! for the kink of `G` on the diagonal. That kink is removed by the
//! Euler-Maclaurin term `h²/12 v(r_i) r'(t_i)²` on each diagonal entry.

use super::greens_function;
use crate::error::{Error, Result};
use crate::potential::{AngularMomentum, Potential};
use crate::quad::QuadratureConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct KernelDiscretization {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Symmetric `n × n` matrix `sqrt(w_i v_i) G(r_i, r_j) sqrt(w_j v_j)`, row major.
    pub matrix: Vec<f64>,
    /// Subtracted from the diagonal of `matrix` before the eigen-solve.
    pub diagonal_correction: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
enum NodeMap {
    /// `r = lo + (hi - lo) t³ / (t³ + (1 - t)³)`.
    Interval { lo: f64, hi: f64 },
    /// `r = c (t / (1 - t))²`.
    HalfLine { c: f64 },
}

impl NodeMap {
    fn for_potential(pot: &Potential) -> Self {
        let s = pot.support();
        match s.outer {
            Some(hi) => NodeMap::Interval { lo: s.inner, hi },
            None => NodeMap::HalfLine { c: 4.0 * pot.scale() },
        }
    }

    /// `(r(t), r'(t))`.
    fn apply(self, t: f64) -> (f64, f64) {
        let u = 1.0 - t;
        match self {
            NodeMap::Interval { lo, hi } => {
                let (a, b) = (t * t * t, u * u * u);
                let d = a + b;
                (lo + (hi - lo) * a / d, (hi - lo) * 3.0 * t * t * u * u / (d * d))
            }
            NodeMap::HalfLine { c } => {
                let q = t / u;
                (c * q * q, 2.0 * c * q / (u * u))
            }
        }
    }
}

impl KernelDiscretization {
    pub fn build(pot: &Potential, ell: AngularMomentum, n: usize, cfg: &QuadratureConfig) -> Result<Self> {
        if n < 8 {
            return Err(Error::Domain(format!("Nystrom discretisation needs at least 8 nodes, got {n}")));
        }
        let map = NodeMap::for_potential(pot);
        let h = 1.0 / (n + 1) as f64;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let mut diagonal_correction = Vec::with_capacity(n);
        let mut root = Vec::with_capacity(n);
        for i in 1..=n {
            let (r, dr) = map.apply(i as f64 * h);
            let v = pot.value(r);
            nodes.push(r);
            weights.push(h * dr);
            diagonal_correction.push(h * h / 12.0 * v * dr * dr);
            root.push((h * dr * v).sqrt());
        }
        let mut matrix = vec![0.0; n * n];
        cfg.execution.for_each_chunk(&mut matrix, n, |i, row| {
            for (j, m) in row.iter_mut().enumerate() {
                *m = root[i] * greens_function(ell, nodes[i], nodes[j]) * root[j];
            }
        });
        Ok(KernelDiscretization { nodes, weights, matrix, diagonal_correction })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Largest eigenvalue of the corrected matrix by power iteration.
    pub fn largest_eigenvalue(&self, cfg: &QuadratureConfig) -> Result<f64> {
        let n = self.len();
        let mut x = vec![1.0 / (n as f64).sqrt(); n];
        let mut y = vec![0.0; n];
        let mut lambda = 0.0;
        for _ in 0..20_000 {
            cfg.execution.for_each_chunk(&mut y, 64, |c, out| {
                for (k, yi) in out.iter_mut().enumerate() {
                    let i = c * 64 + k;
                    let row = &self.matrix[i * n..(i + 1) * n];
                    let dot: f64 = row.iter().zip(&x).map(|(a, b)| a * b).sum();
                    *yi = dot - self.diagonal_correction[i] * x[i];
                }
            });
            let rayleigh: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
            let norm = y.iter().map(|a| a * a).sum::<f64>().sqrt();
            if !(norm > 0.0) || !rayleigh.is_finite() {
                return Err(Error::Degenerate("kernel matrix annihilates the start vector".into()));
            }
            for (xi, yi) in x.iter_mut().zip(&y) {
                *xi = yi / norm;
            }
            if (rayleigh - lambda).abs() <= 1e-12 * rayleigh.abs() {
                return Ok(rayleigh);
            }
            lambda = rayleigh;
        }
        Err(Error::Accuracy {
            what: "power iteration did not converge".into(),
            best: lambda,
            error: f64::NAN,
        })
    }
}

/// `g_c = 1 / λ_max` of the `n`-node discretised kernel.
pub fn critical_coupling_nystrom(
    pot: &Potential,
    ell: AngularMomentum,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    let k = KernelDiscretization::build(pot, ell, n, cfg)?;
    let lambda = k.largest_eigenvalue(cfg)?;
    if !(lambda > 0.0) {
        return Err(Error::Degenerate(format!("largest kernel eigenvalue is {lambda}")));
    }
    Ok(1.0 / lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn matrix_is_symmetric_with_nonnegative_diagonal() {
        let pot = Potential::yukawa(1.0).unwrap();
        let k = KernelDiscretization::build(&pot, 2.into(), 40, &cfg()).unwrap();
        let n = k.len();
        for i in 0..n {
            assert!(k.matrix[i * n + i] >= 0.0);
            for j in 0..n {
                let (a, b) = (k.matrix[i * n + j], k.matrix[j * n + i]);
                assert!((a - b).abs() <= 1e-14 * a.abs().max(b.abs()));
            }
        }
        assert!(k.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(k.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn square_well_and_exponential_converge() {
        let sq = Potential::square_well(1.0).unwrap();
        for ell in [0u32, 5] {
            let g = critical_coupling_nystrom(&sq, ell.into(), 400, &cfg()).unwrap();
            assert_relative_eq!(g, exact::square_well_exact(ell.into()).unwrap(), max_relative = 1e-6);
        }
        let e = Potential::exponential(1.0).unwrap();
        let g = critical_coupling_nystrom(&e, 0.into(), 400, &cfg()).unwrap();
        assert_relative_eq!(g, exact::exponential_exact_swave(), max_relative = 1e-6);
    }

    #[test]
    fn too_few_nodes_is_rejected() {
        let sq = Potential::square_well(1.0).unwrap();
        assert!(matches!(critical_coupling_nystrom(&sq, 0.into(), 4, &cfg()), Err(Error::Domain(_))));
    }
}
