//! Broken-in-time polynomial fields with vector coefficients, the time
//! projections (L2-orthogonal, Thomee, Aziz-Monk, Walkington), the Radau
//! interpolant, the time reconstruction, slab weight functions, and
//! trace/jump extraction.
//!
//! Fields are stored as Legendre coefficients per slab, which makes
//! truncation, endpoint traces, and orthogonality relations exact in
//! floating-point arithmetic.

use crate::linalg::{DenseMatrix, LuFactors};
use crate::temporal::{legendre_table, QuadratureRule, TemporalError, TimeMesh};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TimeOpsError {
    #[error("invalid degree for {operator}: q = {got} (requires {requirement})")]
    InvalidDegree {
        operator: &'static str,
        got: usize,
        requirement: &'static str,
    },
    #[error("quadrature underresolved: supplied exactness {supplied} < required {required}")]
    QuadratureUnderresolved { supplied: usize, required: usize },
    #[error("node index {index} out of range for {context}")]
    IndexOutOfRange { index: usize, context: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// The local reconstruction system failed to factor. The system is
    /// nonsingular for every admissible degree, so this indicates a bug.
    #[error("singular reconstruction system (q = {q})")]
    SingularReconstruction { q: usize },
    #[error(transparent)]
    Temporal(#[from] TemporalError),
}

/// Inter-slab continuity of a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Continuity {
    Broken,
    Continuous,
}

/// Which endpoint a one-sided projection interpolates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointSide {
    Left,
    Right,
}

/// One-sided trace at a time node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceSide {
    Minus,
    Plus,
}

/// Quadrature selection for projecting general (non-polynomial) inputs.
#[derive(Debug, Clone, Copy)]
pub enum QuadPolicy {
    /// Gauss-Legendre with this many points.
    Points(usize),
    /// The input is a polynomial of this degree; an exact rule is chosen.
    PolyDegree(usize),
    /// Gauss-Legendre with `2q + 10` points.
    Default,
}

impl QuadPolicy {
    fn resolve(self, q: usize) -> Result<QuadratureRule, TimeOpsError> {
        match self {
            QuadPolicy::Points(m) => {
                let supplied = 2 * m - 1;
                if supplied < 2 * q {
                    return Err(TimeOpsError::QuadratureUnderresolved {
                        supplied,
                        required: 2 * q,
                    });
                }
                Ok(QuadratureRule::gauss_legendre(m))
            }
            QuadPolicy::PolyDegree(d) => Ok(QuadratureRule::gauss_legendre_for_degree(d + q)),
            QuadPolicy::Default => Ok(QuadratureRule::gauss_legendre(2 * q + 10)),
        }
    }
}

// ---------------------------------------------------------------------------
// Coefficient-slice helpers (one slab, Legendre basis)
// ---------------------------------------------------------------------------

/// Evaluates a slab polynomial at reference coordinate `x`.
pub fn eval_slab(coeffs: &[f64], q: usize, dim: usize, x: f64, out: &mut [f64]) {
    let table = legendre_table(q, x);
    out.fill(0.0);
    for i in 0..=q {
        let p = table[i][0];
        let block = &coeffs[i * dim..(i + 1) * dim];
        for (o, c) in out.iter_mut().zip(block) {
            *o += p * c;
        }
    }
}

/// Trace of a slab polynomial at one of its endpoints, using
/// `L_i(right) = 1` and `L_i(left) = (-1)^i`.
pub fn trace_slab(coeffs: &[f64], q: usize, dim: usize, side: EndpointSide) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for i in 0..=q {
        let sign = match side {
            EndpointSide::Right => 1.0,
            EndpointSide::Left => {
                if i % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        let block = &coeffs[i * dim..(i + 1) * dim];
        for (o, c) in out.iter_mut().zip(block) {
            *o += sign * c;
        }
    }
    out
}

/// Legendre coefficients of the time derivative on a slab of width `tau`.
/// The result has degree `q - 1` (degree 0 and identically zero when `q = 0`).
pub fn derivative_slab(coeffs: &[f64], q: usize, dim: usize, tau: f64) -> Vec<f64> {
    if q == 0 {
        return vec![0.0; dim];
    }
    let mut out = vec![0.0; q * dim];
    // Using P_j' = sum_{i < j, i+j odd} (2i+1) P_i, scaled by dt/dx = 2/tau.
    for i in 0..q {
        let factor = (2.0 * i as f64 + 1.0) * 2.0 / tau;
        let mut j = i + 1;
        while j <= q {
            let block = &coeffs[j * dim..(j + 1) * dim];
            let target = &mut out[i * dim..(i + 1) * dim];
            for (o, c) in target.iter_mut().zip(block) {
                *o += factor * c;
            }
            j += 2;
        }
    }
    out
}

/// Legendre coefficients of `t |-> int_{t_left}^t w`, a degree `q + 1`
/// polynomial vanishing at the left endpoint.
pub fn antiderivative_slab(coeffs: &[f64], q: usize, dim: usize, tau: f64) -> Vec<f64> {
    let mut out = vec![0.0; (q + 2) * dim];
    let half_tau = 0.5 * tau;
    for i in 0..=q {
        let block = &coeffs[i * dim..(i + 1) * dim];
        if i == 0 {
            // int_{-1}^x P_0 = P_1 + P_0.
            for c in 0..dim {
                out[c] += half_tau * block[c];
                out[dim + c] += half_tau * block[c];
            }
        } else {
            // int_{-1}^x P_i = (P_{i+1} - P_{i-1}) / (2i+1).
            let factor = half_tau / (2.0 * i as f64 + 1.0);
            for c in 0..dim {
                out[(i + 1) * dim + c] += factor * block[c];
                out[(i - 1) * dim + c] -= factor * block[c];
            }
        }
    }
    out
}

/// Coefficients of `(a0 + a1 * x) * w` where `x` is the reference coordinate;
/// the result has degree `q + 1`.
pub fn affine_multiply_slab(coeffs: &[f64], q: usize, dim: usize, a0: f64, a1: f64) -> Vec<f64> {
    let mut out = vec![0.0; (q + 2) * dim];
    for i in 0..=q {
        let block = &coeffs[i * dim..(i + 1) * dim];
        let fi = i as f64;
        // x P_i = ((i+1) P_{i+1} + i P_{i-1}) / (2i+1)
        let up = a1 * (fi + 1.0) / (2.0 * fi + 1.0);
        let down = a1 * fi / (2.0 * fi + 1.0);
        for c in 0..dim {
            out[i * dim + c] += a0 * block[c];
            out[(i + 1) * dim + c] += up * block[c];
            if i >= 1 {
                out[(i - 1) * dim + c] += down * block[c];
            }
        }
    }
    out
}

/// `int_{I_n} (u, v) dt` for two slab polynomials via Legendre orthogonality.
pub fn l2_inner_slab(
    u: &[f64],
    qu: usize,
    v: &[f64],
    qv: usize,
    dim: usize,
    tau: f64,
) -> f64 {
    let qmin = qu.min(qv);
    let mut acc = 0.0;
    for i in 0..=qmin {
        let wu = &u[i * dim..(i + 1) * dim];
        let wv = &v[i * dim..(i + 1) * dim];
        let dot: f64 = wu.iter().zip(wv).map(|(a, b)| a * b).sum();
        acc += tau / (2.0 * i as f64 + 1.0) * dot;
    }
    acc
}

// ---------------------------------------------------------------------------
// TimePolyField
// ---------------------------------------------------------------------------

/// Per-slab Legendre-coefficient representation of a function in
/// `P_q(T_tau) (x) R^dim`, with a continuity flag.
#[derive(Debug, Clone)]
pub struct TimePolyField {
    mesh: TimeMesh,
    degree: usize,
    dim: usize,
    /// Layout: `coeffs[(n * (q+1) + i) * dim + c]` for slab `n`, mode `i`, component `c`.
    coeffs: Vec<f64>,
    continuity: Continuity,
}

impl TimePolyField {
    pub fn zeros(mesh: TimeMesh, degree: usize, dim: usize, continuity: Continuity) -> Self {
        let n = mesh.num_slabs();
        Self {
            mesh,
            degree,
            dim,
            coeffs: vec![0.0; n * (degree + 1) * dim],
            continuity,
        }
    }

    pub fn from_coeffs(
        mesh: TimeMesh,
        degree: usize,
        dim: usize,
        coeffs: Vec<f64>,
        continuity: Continuity,
    ) -> Result<Self, TimeOpsError> {
        let expected = mesh.num_slabs() * (degree + 1) * dim;
        if coeffs.len() != expected {
            return Err(TimeOpsError::DimensionMismatch(format!(
                "coefficient buffer has length {}, expected {}",
                coeffs.len(),
                expected
            )));
        }
        Ok(Self {
            mesh,
            degree,
            dim,
            coeffs,
            continuity,
        })
    }

    pub fn mesh(&self) -> &TimeMesh {
        &self.mesh
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn continuity(&self) -> Continuity {
        self.continuity
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    fn slab_len(&self) -> usize {
        (self.degree + 1) * self.dim
    }

    pub fn slab_coeffs(&self, n: usize) -> &[f64] {
        let len = self.slab_len();
        &self.coeffs[n * len..(n + 1) * len]
    }

    pub fn slab_coeffs_mut(&mut self, n: usize) -> &mut [f64] {
        let len = self.slab_len();
        &mut self.coeffs[n * len..(n + 1) * len]
    }

    /// Coefficient vector of Legendre mode `i` on slab `n`.
    pub fn mode(&self, n: usize, i: usize) -> &[f64] {
        let base = (n * (self.degree + 1) + i) * self.dim;
        &self.coeffs[base..base + self.dim]
    }

    pub fn mode_mut(&mut self, n: usize, i: usize) -> &mut [f64] {
        let base = (n * (self.degree + 1) + i) * self.dim;
        &mut self.coeffs[base..base + self.dim]
    }

    /// Evaluates the field within slab `n` at physical time `t`.
    pub fn eval_in_slab(&self, n: usize, t: f64) -> Result<Vec<f64>, TimeOpsError> {
        let x = self.mesh.reference_coord(n, t)?;
        let mut out = vec![0.0; self.dim];
        eval_slab(self.slab_coeffs(n), self.degree, self.dim, x, &mut out);
        Ok(out)
    }

    /// Right endpoint trace `v(t_{n+1}^-)` of slab `n`.
    pub fn trace_right(&self, n: usize) -> Vec<f64> {
        trace_slab(self.slab_coeffs(n), self.degree, self.dim, EndpointSide::Right)
    }

    /// Left endpoint trace `v(t_n^+)` of slab `n`.
    pub fn trace_left(&self, n: usize) -> Vec<f64> {
        trace_slab(self.slab_coeffs(n), self.degree, self.dim, EndpointSide::Left)
    }

    /// Broken time derivative, one degree lower.
    pub fn derivative(&self) -> TimePolyField {
        let new_q = self.degree.saturating_sub(1);
        let mut out = TimePolyField::zeros(self.mesh.clone(), new_q, self.dim, Continuity::Broken);
        for n in 0..self.mesh.num_slabs() {
            let d = derivative_slab(self.slab_coeffs(n), self.degree, self.dim, self.mesh.width(n));
            out.slab_coeffs_mut(n).copy_from_slice(&d);
        }
        out
    }

    /// Legendre truncation to degree `new_q`; this is exactly the slab-wise
    /// L2-orthogonal projection for polynomial fields.
    pub fn truncated(&self, new_q: usize) -> TimePolyField {
        let keep = new_q.min(self.degree);
        let mut out = TimePolyField::zeros(self.mesh.clone(), new_q, self.dim, Continuity::Broken);
        for n in 0..self.mesh.num_slabs() {
            for i in 0..=keep {
                let src = self.mode(n, i).to_vec();
                out.mode_mut(n, i).copy_from_slice(&src);
            }
        }
        out
    }

    pub fn scaled(&self, alpha: f64) -> TimePolyField {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= alpha;
        }
        out
    }

    /// `int_0^{t_cut} (self, other) dt` over the first `slabs` slabs.
    pub fn l2_inner_upto(&self, other: &TimePolyField, slabs: usize) -> f64 {
        let mut acc = 0.0;
        for n in 0..slabs {
            acc += l2_inner_slab(
                self.slab_coeffs(n),
                self.degree,
                other.slab_coeffs(n),
                other.degree,
                self.dim,
                self.mesh.width(n),
            );
        }
        acc
    }

    pub fn l2_inner(&self, other: &TimePolyField) -> f64 {
        self.l2_inner_upto(other, self.mesh.num_slabs())
    }

    /// Largest relative trace mismatch at interior nodes.
    pub fn continuity_defect(&self) -> f64 {
        let scale = self.coeffs.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
        let mut worst = 0.0f64;
        for k in 1..self.mesh.num_slabs() {
            let minus = self.trace_right(k - 1);
            let plus = self.trace_left(k);
            for (a, b) in minus.iter().zip(&plus) {
                worst = worst.max((a - b).abs() / scale);
            }
        }
        worst
    }
}

/// One-sided trace at node `index` (0-based node numbering `0..=N`).
pub fn slab_trace(
    v: &TimePolyField,
    index: usize,
    side: TraceSide,
) -> Result<Vec<f64>, TimeOpsError> {
    let slabs = v.mesh().num_slabs();
    match side {
        TraceSide::Minus => {
            if index == 0 || index > slabs {
                return Err(TimeOpsError::IndexOutOfRange {
                    index,
                    context: format!("minus trace with {slabs} slabs"),
                });
            }
            Ok(v.trace_right(index - 1))
        }
        TraceSide::Plus => {
            if index >= slabs {
                return Err(TimeOpsError::IndexOutOfRange {
                    index,
                    context: format!("plus trace with {slabs} slabs"),
                });
            }
            Ok(v.trace_left(index))
        }
    }
}

/// Time jump `[v]_n = v(t_n^+) - v(t_n^-)` at interior node `n` (1-based,
/// `1 <= n <= N-1`).
pub fn jump(v: &TimePolyField, index: usize) -> Result<Vec<f64>, TimeOpsError> {
    let slabs = v.mesh().num_slabs();
    if index == 0 || index >= slabs {
        return Err(TimeOpsError::IndexOutOfRange {
            index,
            context: format!("interior jump with {slabs} slabs"),
        });
    }
    let plus = v.trace_left(index);
    let minus = v.trace_right(index - 1);
    Ok(plus.iter().zip(&minus).map(|(p, m)| p - m).collect())
}

// ---------------------------------------------------------------------------
// Weight functions
// ---------------------------------------------------------------------------

/// `xi_q = 1 / (4 (2q + 1))`, the endpoint drop of the Walkington weight.
pub fn xi(q: usize) -> f64 {
    1.0 / (4.0 * (2.0 * q as f64 + 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightVariant {
    /// `phi_n(t) = 1 - (t - t_{n-1}) / (2 tau_n)`.
    Standard,
    /// `phi_n(t) = 1 - xi_q (t - t_{n-1}) / tau_n`.
    Walkington { q: usize },
}

/// Affine slab weight used as a multiplier in special test functions.
#[derive(Debug, Clone, Copy)]
pub struct WeightFunction {
    slab: usize,
    t_left: f64,
    tau: f64,
    lambda: f64,
    variant: WeightVariant,
}

impl WeightFunction {
    pub fn standard(mesh: &TimeMesh, slab: usize) -> Self {
        let (t_left, t_right) = mesh.slab_bounds(slab);
        let tau = t_right - t_left;
        Self {
            slab,
            t_left,
            tau,
            lambda: 1.0 / (2.0 * tau),
            variant: WeightVariant::Standard,
        }
    }

    pub fn walkington(mesh: &TimeMesh, slab: usize, q: usize) -> Self {
        let (t_left, t_right) = mesh.slab_bounds(slab);
        let tau = t_right - t_left;
        Self {
            slab,
            t_left,
            tau,
            lambda: xi(q) / tau,
            variant: WeightVariant::Walkington { q },
        }
    }

    pub fn slab(&self) -> usize {
        self.slab
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn variant(&self) -> WeightVariant {
        self.variant
    }

    /// Weight value at time `t` within the slab.
    pub fn eval(&self, t: f64) -> Result<f64, TemporalError> {
        let right = self.t_left + self.tau;
        if t < self.t_left - 1e-12 * self.tau || t > right + 1e-12 * self.tau {
            return Err(TemporalError::OutOfSlab {
                t,
                left: self.t_left,
                right,
            });
        }
        Ok(1.0 - self.lambda * (t - self.t_left))
    }

    /// Representation `a0 + a1 * x` in the slab's reference coordinate.
    pub fn reference_affine(&self) -> (f64, f64) {
        // t - t_left = tau (x + 1) / 2.
        let a1 = -self.lambda * self.tau * 0.5;
        (1.0 + a1, a1)
    }

    /// Coefficients of `weight * w` for slab coefficients `w` of degree `q`.
    pub fn multiply_slab(&self, coeffs: &[f64], q: usize, dim: usize) -> Vec<f64> {
        let (a0, a1) = self.reference_affine();
        affine_multiply_slab(coeffs, q, dim, a0, a1)
    }
}

pub fn weight_eval(w: &WeightFunction, t: f64) -> Result<f64, TemporalError> {
    w.eval(t)
}

// ---------------------------------------------------------------------------
// Projections
// ---------------------------------------------------------------------------

/// Slab-wise L2-orthogonal projection onto degree-`q` time polynomials,
/// computed from the Legendre expansion
/// `c_i = (2i+1)/tau int_{I_n} v L_i dt`.
///
/// Input callables here and in the other projections receive the slab index
/// along with the time, so broken inputs stay unambiguous at slab boundaries.
pub fn project_l2_time(
    mesh: &TimeMesh,
    q: usize,
    dim: usize,
    v: &mut dyn FnMut(usize, f64, &mut [f64]),
    quad: QuadPolicy,
) -> Result<TimePolyField, TimeOpsError> {
    let rule = quad.resolve(q)?;
    let mut out = TimePolyField::zeros(mesh.clone(), q, dim, Continuity::Broken);
    let mut buf = vec![0.0; dim];
    for n in 0..mesh.num_slabs() {
        let (left, right) = mesh.slab_bounds(n);
        let mid = 0.5 * (left + right);
        let half = 0.5 * (right - left);
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            let t = mid + half * x;
            v(n, t, &mut buf);
            let table = legendre_table(q, x);
            for i in 0..=q {
                // tau cancels: c_i = (2i+1)/2 sum_g w_g P_i(x_g) v(t_g).
                let factor = (2.0 * i as f64 + 1.0) * 0.5 * w * table[i][0];
                let target = out.mode_mut(n, i);
                for (o, b) in target.iter_mut().zip(&buf) {
                    *o += factor * b;
                }
            }
        }
    }
    Ok(out)
}

/// Degree-`q` projection that interpolates `v` at one slab endpoint and is
/// L2-orthogonal to degree `q - 1` on each slab. For `q = 0` the
/// orthogonality condition is empty and the result is the endpoint value.
pub fn project_thomee(
    mesh: &TimeMesh,
    q: usize,
    dim: usize,
    v: &mut dyn FnMut(usize, f64, &mut [f64]),
    side: EndpointSide,
    quad: QuadPolicy,
) -> Result<TimePolyField, TimeOpsError> {
    let base = if q == 0 {
        None
    } else {
        Some(project_l2_time(mesh, q - 1, dim, v, quad)?)
    };
    let mut out = TimePolyField::zeros(mesh.clone(), q, dim, Continuity::Broken);
    let mut endpoint_val = vec![0.0; dim];
    for n in 0..mesh.num_slabs() {
        let (left, right) = mesh.slab_bounds(n);
        let t_match = match side {
            EndpointSide::Left => left,
            EndpointSide::Right => right,
        };
        v(n, t_match, &mut endpoint_val);
        let base_trace = match &base {
            Some(b) => {
                for i in 0..q {
                    let src = b.mode(n, i).to_vec();
                    out.mode_mut(n, i).copy_from_slice(&src);
                }
                trace_slab(b.slab_coeffs(n), q - 1, dim, side)
            }
            None => vec![0.0; dim],
        };
        let sign = match side {
            EndpointSide::Right => 1.0,
            EndpointSide::Left => {
                if q % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        let top = out.mode_mut(n, q);
        for ((t, val), b) in top.iter_mut().zip(&endpoint_val).zip(&base_trace) {
            *t = sign * (val - b);
        }
    }
    Ok(out)
}

/// Thomee projection of a polynomial field, exact in coefficient arithmetic:
/// modes `0..q` are the Legendre truncation, the top mode matches the trace
/// at the chosen endpoint.
pub fn project_thomee_field(
    v: &TimePolyField,
    q: usize,
    side: EndpointSide,
) -> TimePolyField {
    let dim = v.dim();
    let endpoint_sign = |i: usize| match side {
        EndpointSide::Right => 1.0,
        EndpointSide::Left => {
            if i % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        }
    };
    let mut out = TimePolyField::zeros(v.mesh().clone(), q, dim, Continuity::Broken);
    for n in 0..v.mesh().num_slabs() {
        let copy_upto = q.min(v.degree() + 1);
        let mut base_trace = vec![0.0; dim];
        for i in 0..copy_upto {
            let src = v.mode(n, i).to_vec();
            out.mode_mut(n, i).copy_from_slice(&src);
            for (t, c) in base_trace.iter_mut().zip(&src) {
                *t += endpoint_sign(i) * c;
            }
        }
        let full_trace = trace_slab(v.slab_coeffs(n), v.degree(), dim, side);
        let sign = endpoint_sign(q);
        let top = out.mode_mut(n, q);
        for ((t, f), b) in top.iter_mut().zip(&full_trace).zip(&base_trace) {
            *t = sign * (f - b);
        }
    }
    out
}

/// Continuous degree-`q` projection matching the nodal values and
/// L2-orthogonal to degree `q - 2` on each slab; for `q = 1` it reduces to
/// the piecewise-linear nodal interpolant.
pub fn project_aziz_monk(
    mesh: &TimeMesh,
    q: usize,
    dim: usize,
    v: &mut dyn FnMut(usize, f64, &mut [f64]),
    node_values: &[Vec<f64>],
    quad: QuadPolicy,
) -> Result<TimePolyField, TimeOpsError> {
    if q < 1 {
        return Err(TimeOpsError::InvalidDegree {
            operator: "aziz-monk projection",
            got: q,
            requirement: "q >= 1",
        });
    }
    if node_values.len() != mesh.num_slabs() + 1 {
        return Err(TimeOpsError::DimensionMismatch(format!(
            "need {} node values, got {}",
            mesh.num_slabs() + 1,
            node_values.len()
        )));
    }
    let base = if q >= 2 {
        Some(project_l2_time(mesh, q - 2, dim, v, quad)?)
    } else {
        None
    };
    let mut out = TimePolyField::zeros(mesh.clone(), q, dim, Continuity::Continuous);
    for n in 0..mesh.num_slabs() {
        let (mu_left, mu_right) = match &base {
            Some(b) => {
                for i in 0..=q - 2 {
                    let src = b.mode(n, i).to_vec();
                    out.mode_mut(n, i).copy_from_slice(&src);
                }
                let bl = trace_slab(b.slab_coeffs(n), q - 2, dim, EndpointSide::Left);
                let br = trace_slab(b.slab_coeffs(n), q - 2, dim, EndpointSide::Right);
                let ml: Vec<f64> = node_values[n].iter().zip(&bl).map(|(v, b)| v - b).collect();
                let mr: Vec<f64> = node_values[n + 1]
                    .iter()
                    .zip(&br)
                    .map(|(v, b)| v - b)
                    .collect();
                (ml, mr)
            }
            None => (node_values[n].clone(), node_values[n + 1].clone()),
        };
        let parity = if q % 2 == 0 { 1.0 } else { -1.0 };
        for c in 0..dim {
            let alpha = 0.5 * (mu_right[c] - parity * mu_left[c]);
            let beta = 0.5 * (mu_right[c] + parity * mu_left[c]);
            out.mode_mut(n, q - 1)[c] += alpha;
            out.mode_mut(n, q)[c] += beta;
        }
    }
    Ok(out)
}

/// Continuous degree-`q` projection whose time derivative is the right-sided
/// Thomee projection of degree `q - 1` applied to the derivative:
/// `P v(t) = v(t_{n-1}) + int_{t_{n-1}}^t P_Th^{q-1} dv`.
pub fn project_walkington(
    mesh: &TimeMesh,
    q: usize,
    dim: usize,
    dv: &mut dyn FnMut(usize, f64, &mut [f64]),
    node_values: &[Vec<f64>],
    quad: QuadPolicy,
) -> Result<TimePolyField, TimeOpsError> {
    if q < 2 {
        return Err(TimeOpsError::InvalidDegree {
            operator: "walkington projection",
            got: q,
            requirement: "q >= 2",
        });
    }
    if node_values.len() != mesh.num_slabs() + 1 {
        return Err(TimeOpsError::DimensionMismatch(format!(
            "need {} node values, got {}",
            mesh.num_slabs() + 1,
            node_values.len()
        )));
    }
    let w = project_thomee(mesh, q - 1, dim, dv, EndpointSide::Right, quad)?;
    let mut out = TimePolyField::zeros(mesh.clone(), q, dim, Continuity::Continuous);
    for n in 0..mesh.num_slabs() {
        let anti = antiderivative_slab(w.slab_coeffs(n), q - 1, dim, mesh.width(n));
        out.slab_coeffs_mut(n).copy_from_slice(&anti);
        for c in 0..dim {
            out.mode_mut(n, 0)[c] += node_values[n][c];
        }
    }
    Ok(out)
}

/// Broken Lagrange interpolant at the left-sided Gauss-Radau nodes of each
/// slab, returned in Legendre coefficients. The coefficients are recovered
/// through the Radau rule itself, which is exact for the required degree.
pub fn interpolate_radau(
    mesh: &TimeMesh,
    q: usize,
    dim: usize,
    v: &mut dyn FnMut(usize, f64, &mut [f64]),
) -> TimePolyField {
    let rule = QuadratureRule::gauss_radau_left(q);
    let mut out = TimePolyField::zeros(mesh.clone(), q, dim, Continuity::Broken);
    let mut buf = vec![0.0; dim];
    for n in 0..mesh.num_slabs() {
        let (left, right) = mesh.slab_bounds(n);
        let mid = 0.5 * (left + right);
        let half = 0.5 * (right - left);
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            v(n, mid + half * x, &mut buf);
            let table = legendre_table(q, x);
            for i in 0..=q {
                let factor = (2.0 * i as f64 + 1.0) * 0.5 * w * table[i][0];
                let target = out.mode_mut(n, i);
                for (o, b) in target.iter_mut().zip(&buf) {
                    *o += factor * b;
                }
            }
        }
    }
    out
}

/// Lifts a broken degree-`q` field to a continuous degree-`q+1` field.
///
/// On each slab the reconstruction `R` satisfies `R(t_{n-1}) = v(t_{n-1}^-)`
/// (with `v(t_0^-) := v_init`) and
/// `int_{I_n} dR/dt L_j = int_{I_n} dv/dt L_j + [v]_{n-1} L_j(t_{n-1})` for
/// `j = 0..=q`, which pins `R(t_n) = v(t_n^-)` and makes the global field
/// continuous.
pub fn reconstruct(v: &TimePolyField, v_init: &[f64]) -> Result<TimePolyField, TimeOpsError> {
    let q = v.degree();
    let dim = v.dim();
    if v_init.len() != dim {
        return Err(TimeOpsError::DimensionMismatch(format!(
            "v_init has length {}, field dimension is {}",
            v_init.len(),
            dim
        )));
    }
    let mesh = v.mesh().clone();

    // Local system in reference coordinates: unknown degree q+1 coefficients.
    // Row 0: left endpoint value. Rows 1..=q+1: d/dt moments against L_0..L_q.
    // The system is tau-independent because dt cancels in the moment rows.
    let size = q + 2;
    let rule = QuadratureRule::gauss_legendre_for_degree(2 * q + 2);
    let mut a = DenseMatrix::zeros(size, size);
    for m in 0..size {
        a.set(0, m, if m % 2 == 0 { 1.0 } else { -1.0 });
    }
    for j in 0..=q {
        for m in 0..size {
            let val = rule.integrate(|x| {
                let t = legendre_table(size - 1, x);
                t[m][1] * legendre_table(j, x)[j][0]
            });
            a.set(j + 1, m, val);
        }
    }
    let lu = LuFactors::factor(&a).map_err(|_| TimeOpsError::SingularReconstruction { q })?;

    let mut out = TimePolyField::zeros(mesh.clone(), q + 1, dim, Continuity::Continuous);
    let mut prev_right = v_init.to_vec();
    let mut rhs = vec![0.0; size];
    for n in 0..mesh.num_slabs() {
        let tau = mesh.width(n);
        let left_plus = v.trace_left(n);
        let jump_prev: Vec<f64> = left_plus
            .iter()
            .zip(&prev_right)
            .map(|(p, m)| p - m)
            .collect();
        let dv = derivative_slab(v.slab_coeffs(n), q, dim, tau);
        let dq = q.saturating_sub(1);
        for c in 0..dim {
            rhs[0] = prev_right[c];
            for j in 0..=q {
                // int dv L_j dt = tau/(2j+1) * dv_j for j <= q-1, zero at j = q.
                let moment = if q >= 1 && j <= dq {
                    tau / (2.0 * j as f64 + 1.0) * dv[j * dim + c]
                } else {
                    0.0
                };
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                rhs[j + 1] = moment + jump_prev[c] * sign;
            }
            let sol = lu
                .solve(&rhs)
                .map_err(|_| TimeOpsError::SingularReconstruction { q })?;
            for (m, s) in sol.iter().enumerate() {
                out.mode_mut(n, m)[c] = *s;
            }
        }
        prev_right = v.trace_right(n);
    }
    Ok(out)
}
