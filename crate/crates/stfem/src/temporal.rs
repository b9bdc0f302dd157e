//! Time mesh, shifted Legendre bases on time slabs, and Gauss quadrature
//! (Gauss-Legendre and left-sided Gauss-Radau) on the reference interval
//! `[-1, 1]`.
//!
//! Shifted Legendre polynomials on a slab `I_n = (t_{n-1}, t_n)` are defined
//! through the affine map `t = (1 - s)/2 * t_{n-1} + (1 + s)/2 * t_n`, so that
//! `L_i(t_n) = 1` and `L_i(t_{n-1}) = (-1)^i`, and
//! `int_{I_n} L_i L_j dt = tau_n / (2i+1) delta_ij`.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TemporalError {
    #[error("invalid time mesh: {0}")]
    InvalidMesh(String),
    #[error("time {t} outside slab [{left}, {right}]")]
    OutOfSlab { t: f64, left: f64, right: f64 },
}

/// Evaluates `P_n(x)` by the three-term recurrence
/// `(n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}`.
pub fn legendre(n: usize, x: f64) -> f64 {
    legendre_with_derivs(n, x)[0]
}

/// First derivative `P_n'(x)` via the recurrence `P'_{n+1} = (2n+1) P_n + P'_{n-1}`,
/// which is stable at the endpoints.
pub fn legendre_deriv(n: usize, x: f64) -> f64 {
    legendre_with_derivs(n, x)[1]
}

/// `[P_n(x), P_n'(x), P_n''(x)]` in one pass.
pub fn legendre_with_derivs(n: usize, x: f64) -> [f64; 3] {
    let table = legendre_table(n, x);
    table[n]
}

/// Values and first two derivatives of `P_0 ... P_max_degree` at `x`.
pub fn legendre_table(max_degree: usize, x: f64) -> Vec<[f64; 3]> {
    let mut out = vec![[0.0; 3]; max_degree + 1];
    out[0] = [1.0, 0.0, 0.0];
    if max_degree == 0 {
        return out;
    }
    out[1] = [x, 1.0, 0.0];
    for k in 1..max_degree {
        let kf = k as f64;
        let [p_k, dp_k, _] = out[k];
        let [p_km1, dp_km1, ddp_km1] = out[k - 1];
        let p = ((2.0 * kf + 1.0) * x * p_k - kf * p_km1) / (kf + 1.0);
        let dp = (2.0 * kf + 1.0) * p_k + dp_km1;
        let ddp = (2.0 * kf + 1.0) * dp_k + ddp_km1;
        out[k + 1] = [p, dp, ddp];
    }
    out
}

/// Partition `0 = t_0 < t_1 < ... < t_N = T` of the time interval.
///
/// No local or global quasi-uniformity is assumed; slabs are indexed `0..N`
/// with `slab n = (nodes[n], nodes[n+1])`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeMesh {
    nodes: Vec<f64>,
}

impl TimeMesh {
    pub fn new(nodes: Vec<f64>) -> Result<Self, TemporalError> {
        if nodes.len() < 2 {
            return Err(TemporalError::InvalidMesh(
                "a time mesh needs at least two nodes".into(),
            ));
        }
        if nodes[0] != 0.0 {
            return Err(TemporalError::InvalidMesh(format!(
                "first node must be 0, got {}",
                nodes[0]
            )));
        }
        if !nodes.iter().all(|t| t.is_finite()) {
            return Err(TemporalError::InvalidMesh("non-finite node".into()));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(TemporalError::InvalidMesh(
                "nodes must be strictly increasing".into(),
            ));
        }
        Ok(Self { nodes })
    }

    /// Uniform partition of `(0, t_end)` into `slabs` slabs.
    pub fn uniform(t_end: f64, slabs: usize) -> Result<Self, TemporalError> {
        if !(t_end > 0.0) || slabs == 0 {
            return Err(TemporalError::InvalidMesh(format!(
                "need t_end > 0 and at least one slab, got t_end={t_end}, slabs={slabs}"
            )));
        }
        let nodes = (0..=slabs)
            .map(|k| t_end * k as f64 / slabs as f64)
            .collect();
        Self::new(nodes)
    }

    pub fn num_slabs(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn t_end(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// `(t_{n-1}, t_n)` bounds of slab `n` (0-based).
    pub fn slab_bounds(&self, n: usize) -> (f64, f64) {
        (self.nodes[n], self.nodes[n + 1])
    }

    pub fn width(&self, n: usize) -> f64 {
        self.nodes[n + 1] - self.nodes[n]
    }

    pub fn max_width(&self) -> f64 {
        (0..self.num_slabs()).map(|n| self.width(n)).fold(0.0, f64::max)
    }

    /// Reference coordinate of `t` in slab `n`, rejecting points outside the
    /// closed slab by more than `1e-12 * tau_n`.
    pub fn reference_coord(&self, n: usize, t: f64) -> Result<f64, TemporalError> {
        let (left, right) = self.slab_bounds(n);
        let tau = right - left;
        if t < left - 1e-12 * tau || t > right + 1e-12 * tau {
            return Err(TemporalError::OutOfSlab { t, left, right });
        }
        Ok(((2.0 * t - left - right) / tau).clamp(-1.0, 1.0))
    }

    /// Slab index containing `t`; boundary nodes resolve to the slab on their left
    /// (except `t = 0`).
    pub fn slab_containing(&self, t: f64) -> Result<usize, TemporalError> {
        let t_end = self.t_end();
        if t < -1e-12 * t_end || t > t_end * (1.0 + 1e-12) {
            return Err(TemporalError::OutOfSlab {
                t,
                left: 0.0,
                right: t_end,
            });
        }
        let n = self.nodes.partition_point(|&s| s < t);
        Ok(n.saturating_sub(1).min(self.num_slabs() - 1))
    }
}

/// Shifted Legendre value `L_i^{(n)}(t)` on slab `n` of `mesh`.
pub fn legendre_shifted_eval(
    i: usize,
    mesh: &TimeMesh,
    n: usize,
    t: f64,
) -> Result<f64, TemporalError> {
    let x = mesh.reference_coord(n, t)?;
    Ok(legendre(i, x))
}

/// Quadrature rule on the reference interval `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    exactness: usize,
}

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITERS: usize = 100;

impl QuadratureRule {
    /// Gauss-Legendre rule with `m >= 1` points, exact for degree `2m - 1`.
    ///
    /// Nodes are the roots of `P_m`, found by Newton iteration seeded with the
    /// Chebyshev estimates `cos(pi (i + 3/4) / (m + 1/2))`; weights are
    /// `2 / ((1 - x^2) P_m'(x)^2)`.
    pub fn gauss_legendre(m: usize) -> Self {
        assert!(m >= 1, "need at least one quadrature point");
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            for _ in 0..NEWTON_MAX_ITERS {
                let [p, dp, _] = legendre_with_derivs(m, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < NEWTON_TOL {
                    break;
                }
            }
            let dp = legendre_deriv(m, x);
            // Seeds run from +1 side down; store ascending.
            nodes[m - 1 - i] = x;
            weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        Self {
            nodes,
            weights,
            exactness: 2 * m - 1,
        }
    }

    /// Gauss-Legendre rule with exactness at least `degree`.
    pub fn gauss_legendre_for_degree(degree: usize) -> Self {
        Self::gauss_legendre(degree / 2 + 1)
    }

    /// Left-sided Gauss-Radau rule with `q + 1` points, the first of which is
    /// `-1`; exact for degree `2q`.
    ///
    /// The interior nodes are the roots of `(P_q + P_{q+1}) / (1 + x)`,
    /// bracketed on a Chebyshev-distributed scan grid and polished by
    /// safeguarded Newton iteration. The endpoint weight is `2 / (q+1)^2` and
    /// the interior weights are `(1 - x_i) / ((q+1)^2 P_q(x_i)^2)`.
    pub fn gauss_radau_left(q: usize) -> Self {
        if q == 0 {
            return Self {
                nodes: vec![-1.0],
                weights: vec![2.0],
                exactness: 0,
            };
        }
        // r(x) = (P_q + P_{q+1})(x) has a root at -1; divide it out.
        let r = |x: f64| {
            let t = legendre_table(q + 1, x);
            (t[q][0] + t[q + 1][0]) / (1.0 + x)
        };
        let r_prime = |x: f64| {
            let t = legendre_table(q + 1, x);
            let f = t[q][0] + t[q + 1][0];
            let df = t[q][1] + t[q + 1][1];
            (df * (1.0 + x) - f) / ((1.0 + x) * (1.0 + x))
        };

        // Bracket the q simple interior roots on a Chebyshev-distributed grid.
        let scan = 50 * (q + 1);
        let grid: Vec<f64> = (0..=scan)
            .map(|k| {
                let theta = std::f64::consts::PI * (1.0 - k as f64 / scan as f64);
                // Pull slightly inside (-1, 1) to avoid the removed singularity.
                0.99999 * theta.cos()
            })
            .collect();
        let mut brackets = Vec::with_capacity(q);
        let mut prev = (grid[0], r(grid[0]));
        for &x in &grid[1..] {
            let fx = r(x);
            if prev.1 == 0.0 {
                brackets.push((prev.0, prev.0));
            } else if prev.1 * fx < 0.0 {
                brackets.push((prev.0, x));
            }
            prev = (x, fx);
        }
        assert_eq!(
            brackets.len(),
            q,
            "Radau node bracketing failed for q = {q}"
        );

        let mut nodes = Vec::with_capacity(q + 1);
        let mut weights = Vec::with_capacity(q + 1);
        nodes.push(-1.0);
        let np = (q + 1) as f64;
        weights.push(2.0 / (np * np));
        for &(mut lo, mut hi) in &brackets {
            let mut x = 0.5 * (lo + hi);
            for _ in 0..NEWTON_MAX_ITERS {
                let fx = r(x);
                if fx == 0.0 {
                    break;
                }
                if fx * r(lo) < 0.0 {
                    hi = x;
                } else {
                    lo = x;
                }
                let step = fx / r_prime(x);
                let mut next = x - step;
                if !(lo..=hi).contains(&next) {
                    next = 0.5 * (lo + hi);
                }
                if (next - x).abs() < NEWTON_TOL {
                    x = next;
                    break;
                }
                x = next;
            }
            let pq = legendre(q, x);
            nodes.push(x);
            weights.push((1.0 - x) / (np * np * pq * pq));
        }
        Self {
            nodes,
            weights,
            exactness: 2 * q,
        }
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

    pub fn exactness_degree(&self) -> usize {
        self.exactness
    }

    /// Integrates `f` over the reference interval `[-1, 1]`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integrates `f` over `(a, b)` through the affine map.
    pub fn integrate_on(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let scale = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        scale * self.integrate(|x| f(mid + scale * x))
    }

    /// Quadrature nodes mapped to `(a, b)`.
    pub fn mapped_nodes(&self, a: f64, b: f64) -> Vec<f64> {
        let scale = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().map(|&x| mid + scale * x).collect()
    }
}
