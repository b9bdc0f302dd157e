//! Conforming P_p finite elements on a uniform 1D interval mesh with
//! homogeneous Dirichlet conditions enforced by eliminating the two boundary
//! degrees of freedom.
//!
//! The Lagrange basis uses Gauss-Lobatto nodes within each element. Mass and
//! stiffness matrices are assembled exactly with Gauss-Legendre quadrature
//! and stored dense on the interior degrees of freedom (desk scale:
//! `M <= 2048`, `p <= 6`).

use crate::linalg::{DenseMatrix, LinalgError, LuFactors};
use crate::temporal::{legendre_table, QuadratureRule};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpatialError {
    #[error("invalid polynomial degree {0} (supported: 1..=6)")]
    InvalidDegree(usize),
    #[error("invalid element count {0} (need at least 2)")]
    InvalidCount(usize),
    #[error("invalid interval ({0}, {1})")]
    InvalidInterval(f64, f64),
    #[error("point {x} outside domain [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Gauss-Lobatto nodes on `[-1, 1]` for degree `p` (that is, `p + 1` points).
/// The interior points are the roots of `P_p'`, found by Newton iteration
/// seeded with Chebyshev-Lobatto estimates.
fn gauss_lobatto_nodes(p: usize) -> Vec<f64> {
    let mut nodes = vec![0.0; p + 1];
    nodes[0] = -1.0;
    nodes[p] = 1.0;
    for k in 1..p {
        let mut x = -(std::f64::consts::PI * k as f64 / p as f64).cos();
        for _ in 0..100 {
            let t = legendre_table(p, x);
            let dx = t[p][1] / t[p][2];
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[k] = x;
    }
    nodes
}

/// Conforming P_p space on a uniform mesh of `(a, b)` with `M` elements;
/// interior DOF count is `M * p - 1`.
#[derive(Debug, Clone)]
pub struct FeSpace {
    a: f64,
    b: f64,
    elements: usize,
    degree: usize,
    ref_nodes: Vec<f64>,
}

/// Interior mass and stiffness matrices with cached LU factorizations.
pub struct SpatialOperators {
    pub mass: DenseMatrix,
    pub stiffness: DenseMatrix,
    mass_lu: LuFactors,
    stiffness_lu: LuFactors,
}

impl SpatialOperators {
    pub fn solve_mass(&self, rhs: &[f64]) -> Result<Vec<f64>, LinalgError> {
        self.mass_lu.solve(rhs)
    }

    pub fn solve_stiffness(&self, rhs: &[f64]) -> Result<Vec<f64>, LinalgError> {
        self.stiffness_lu.solve(rhs)
    }
}

pub fn build_space(a: f64, b: f64, elements: usize, degree: usize) -> Result<FeSpace, SpatialError> {
    FeSpace::new(a, b, elements, degree)
}

impl FeSpace {
    pub fn new(a: f64, b: f64, elements: usize, degree: usize) -> Result<Self, SpatialError> {
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(SpatialError::InvalidInterval(a, b));
        }
        if elements < 2 {
            return Err(SpatialError::InvalidCount(elements));
        }
        if degree < 1 || degree > 6 {
            return Err(SpatialError::InvalidDegree(degree));
        }
        Ok(Self {
            a,
            b,
            elements,
            degree,
            ref_nodes: gauss_lobatto_nodes(degree),
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn elements(&self) -> usize {
        self.elements
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn meshsize(&self) -> f64 {
        (self.b - self.a) / self.elements as f64
    }

    pub fn num_interior_dofs(&self) -> usize {
        self.elements * self.degree - 1
    }

    pub fn element_bounds(&self, e: usize) -> (f64, f64) {
        let h = self.meshsize();
        (self.a + e as f64 * h, self.a + (e + 1) as f64 * h)
    }

    /// Global node coordinates (including the two boundary nodes).
    pub fn node_coords(&self) -> Vec<f64> {
        let h = self.meshsize();
        let p = self.degree;
        let mut out = Vec::with_capacity(self.elements * p + 1);
        for e in 0..self.elements {
            let left = self.a + e as f64 * h;
            let upto = if e + 1 == self.elements { p } else { p - 1 };
            for k in 0..=upto {
                out.push(left + 0.5 * (self.ref_nodes[k] + 1.0) * h);
            }
        }
        out
    }

    /// Maps element-local node `k` of element `e` to its interior DOF index;
    /// `None` for the two boundary nodes.
    pub fn local_to_interior(&self, e: usize, k: usize) -> Option<usize> {
        let global = e * self.degree + k;
        if global == 0 || global == self.elements * self.degree {
            None
        } else {
            Some(global - 1)
        }
    }

    /// Values of the `p + 1` local Lagrange basis functions at reference
    /// coordinate `xi`, by the direct product formula.
    pub fn basis_values(&self, xi: f64) -> Vec<f64> {
        let nodes = &self.ref_nodes;
        let p = self.degree;
        let mut out = vec![1.0; p + 1];
        for k in 0..=p {
            for j in 0..=p {
                if j != k {
                    out[k] *= (xi - nodes[j]) / (nodes[k] - nodes[j]);
                }
            }
        }
        out
    }

    /// Reference-coordinate derivatives of the local basis at `xi`.
    pub fn basis_derivs(&self, xi: f64) -> Vec<f64> {
        let nodes = &self.ref_nodes;
        let p = self.degree;
        let mut out = vec![0.0; p + 1];
        for k in 0..=p {
            let mut acc = 0.0;
            for m in 0..=p {
                if m == k {
                    continue;
                }
                let mut term = 1.0 / (nodes[k] - nodes[m]);
                for j in 0..=p {
                    if j != k && j != m {
                        term *= (xi - nodes[j]) / (nodes[k] - nodes[j]);
                    }
                }
                acc += term;
            }
            out[k] = acc;
        }
        out
    }

    fn locate(&self, x: f64) -> Result<(usize, f64), SpatialError> {
        let tol = 1e-12 * (self.b - self.a);
        if x < self.a - tol || x > self.b + tol {
            return Err(SpatialError::OutOfDomain {
                x,
                a: self.a,
                b: self.b,
            });
        }
        let h = self.meshsize();
        let e = (((x - self.a) / h).floor() as isize)
            .clamp(0, self.elements as isize - 1) as usize;
        let (left, right) = self.element_bounds(e);
        let xi = ((2.0 * x - left - right) / h).clamp(-1.0, 1.0);
        Ok((e, xi))
    }

    /// Evaluates the FE function given by interior DOFs at point `x`.
    pub fn evaluate(&self, dofs: &[f64], x: f64) -> Result<f64, SpatialError> {
        let (e, xi) = self.locate(x)?;
        let basis = self.basis_values(xi);
        let mut acc = 0.0;
        for (k, phi) in basis.iter().enumerate() {
            if let Some(d) = self.local_to_interior(e, k) {
                acc += dofs[d] * phi;
            }
        }
        Ok(acc)
    }

    /// Spatial derivative of the FE function at `x`.
    pub fn evaluate_deriv(&self, dofs: &[f64], x: f64) -> Result<f64, SpatialError> {
        let (e, xi) = self.locate(x)?;
        let derivs = self.basis_derivs(xi);
        let scale = 2.0 / self.meshsize();
        let mut acc = 0.0;
        for (k, dphi) in derivs.iter().enumerate() {
            if let Some(d) = self.local_to_interior(e, k) {
                acc += dofs[d] * dphi * scale;
            }
        }
        Ok(acc)
    }

    /// Assembles interior mass and stiffness matrices with quadrature exact
    /// for the element integrands.
    pub fn assemble(&self) -> Result<SpatialOperators, SpatialError> {
        let p = self.degree;
        let n = self.num_interior_dofs();
        let h = self.meshsize();
        let rule = QuadratureRule::gauss_legendre(p + 2);
        let nq = rule.len();
        let mut vals = Vec::with_capacity(nq);
        let mut ders = Vec::with_capacity(nq);
        for &x in rule.nodes() {
            vals.push(self.basis_values(x));
            ders.push(self.basis_derivs(x));
        }
        let mut me = DenseMatrix::zeros(p + 1, p + 1);
        let mut ke = DenseMatrix::zeros(p + 1, p + 1);
        for g in 0..nq {
            let w = rule.weights()[g];
            for k in 0..=p {
                for l in 0..=p {
                    me.add_to(k, l, w * vals[g][k] * vals[g][l] * 0.5 * h);
                    ke.add_to(k, l, w * ders[g][k] * ders[g][l] * 2.0 / h);
                }
            }
        }
        let mut mass = DenseMatrix::zeros(n, n);
        let mut stiffness = DenseMatrix::zeros(n, n);
        for e in 0..self.elements {
            for k in 0..=p {
                let Some(i) = self.local_to_interior(e, k) else {
                    continue;
                };
                for l in 0..=p {
                    let Some(j) = self.local_to_interior(e, l) else {
                        continue;
                    };
                    mass.add_to(i, j, me.get(k, l));
                    stiffness.add_to(i, j, ke.get(k, l));
                }
            }
        }
        let mass_lu = LuFactors::factor(&mass)?;
        let stiffness_lu = LuFactors::factor(&stiffness)?;
        Ok(SpatialOperators {
            mass,
            stiffness,
            mass_lu,
            stiffness_lu,
        })
    }

    /// Load vector `int f phi_i dx` on interior DOFs, with `extra` quadrature
    /// points beyond the `p + 2` used for exact element matrices.
    pub fn load_vector(&self, f: &mut dyn FnMut(f64) -> f64, extra: usize) -> Vec<f64> {
        let p = self.degree;
        let h = self.meshsize();
        let rule = QuadratureRule::gauss_legendre(p + 2 + extra);
        let mut vals = Vec::with_capacity(rule.len());
        for &x in rule.nodes() {
            vals.push(self.basis_values(x));
        }
        let mut out = vec![0.0; self.num_interior_dofs()];
        for e in 0..self.elements {
            let (left, right) = self.element_bounds(e);
            let mid = 0.5 * (left + right);
            for (g, &x) in rule.nodes().iter().enumerate() {
                let fx = f(mid + 0.5 * h * x) * rule.weights()[g] * 0.5 * h;
                for k in 0..=p {
                    if let Some(i) = self.local_to_interior(e, k) {
                        out[i] += fx * vals[g][k];
                    }
                }
            }
        }
        out
    }

    /// Stiffness load `int u' phi_i' dx` for a given derivative `du`.
    pub fn stiffness_load(&self, du: &mut dyn FnMut(f64) -> f64, extra: usize) -> Vec<f64> {
        let p = self.degree;
        let h = self.meshsize();
        let rule = QuadratureRule::gauss_legendre(p + 2 + extra);
        let mut ders = Vec::with_capacity(rule.len());
        for &x in rule.nodes() {
            ders.push(self.basis_derivs(x));
        }
        let mut out = vec![0.0; self.num_interior_dofs()];
        for e in 0..self.elements {
            let (left, right) = self.element_bounds(e);
            let mid = 0.5 * (left + right);
            for (g, &x) in rule.nodes().iter().enumerate() {
                // dphi/dx = (2/h) dphi/dxi and dx = (h/2) dxi cancel.
                let fx = du(mid + 0.5 * h * x) * rule.weights()[g];
                for k in 0..=p {
                    if let Some(i) = self.local_to_interior(e, k) {
                        out[i] += fx * ders[g][k];
                    }
                }
            }
        }
        out
    }

    /// L2-orthogonal projection onto the space: solves `M x = (f, phi)`.
    pub fn l2_project(
        &self,
        ops: &SpatialOperators,
        f: &mut dyn FnMut(f64) -> f64,
        extra: usize,
    ) -> Result<Vec<f64>, SpatialError> {
        let load = self.load_vector(f, extra);
        Ok(ops.solve_mass(&load)?)
    }

    /// Ritz (elliptic) projection: solves `K x = (u', phi')` from the
    /// derivative of the projected function.
    pub fn ritz_project(
        &self,
        ops: &SpatialOperators,
        du: &mut dyn FnMut(f64) -> f64,
        extra: usize,
    ) -> Result<Vec<f64>, SpatialError> {
        let load = self.stiffness_load(du, extra);
        Ok(ops.solve_stiffness(&load)?)
    }

    /// `sqrt(int (g - u_h)^2 dx)` against a reference function, by element
    /// quadrature with `extra` added points.
    pub fn l2_error(&self, dofs: &[f64], g: &mut dyn FnMut(f64) -> f64, extra: usize) -> f64 {
        let h = self.meshsize();
        let rule = QuadratureRule::gauss_legendre(self.degree + 2 + extra);
        let mut acc = 0.0;
        for e in 0..self.elements {
            let (left, right) = self.element_bounds(e);
            let mid = 0.5 * (left + right);
            for (g_idx, &x) in rule.nodes().iter().enumerate() {
                let t = mid + 0.5 * h * x;
                let diff = g(t) - self.evaluate(dofs, t).unwrap();
                acc += rule.weights()[g_idx] * 0.5 * h * diff * diff;
            }
        }
        acc.sqrt()
    }

    /// `sqrt(int (g' - u_h')^2 dx)`.
    pub fn h1_semi_error(
        &self,
        dofs: &[f64],
        dg: &mut dyn FnMut(f64) -> f64,
        extra: usize,
    ) -> f64 {
        let h = self.meshsize();
        let rule = QuadratureRule::gauss_legendre(self.degree + 2 + extra);
        let mut acc = 0.0;
        for e in 0..self.elements {
            let (left, right) = self.element_bounds(e);
            let mid = 0.5 * (left + right);
            for (g_idx, &x) in rule.nodes().iter().enumerate() {
                let t = mid + 0.5 * h * x;
                let diff = dg(t) - self.evaluate_deriv(dofs, t).unwrap();
                acc += rule.weights()[g_idx] * 0.5 * h * diff * diff;
            }
        }
        acc.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn interior_dof_counts_and_meshsize() {
        let s = FeSpace::new(0.0, 1.0, 4, 1).unwrap();
        assert_eq!(s.num_interior_dofs(), 3);
        let s = FeSpace::new(0.0, 1.0, 3, 2).unwrap();
        assert_eq!(s.num_interior_dofs(), 5);
        let s = FeSpace::new(0.0, 2.0, 5, 1).unwrap();
        assert!((s.meshsize() - 0.4).abs() < 1e-15);

        assert!(FeSpace::new(0.0, 1.0, 1, 1).is_err());
        assert!(FeSpace::new(0.0, 1.0, 4, 0).is_err());
        assert!(FeSpace::new(0.0, 1.0, 4, 7).is_err());
        assert!(FeSpace::new(1.0, 0.0, 4, 1).is_err());
    }

    #[test]
    fn p1_mass_and_stiffness_rows() {
        let s = FeSpace::new(0.0, 1.0, 4, 1).unwrap();
        let ops = s.assemble().unwrap();
        let h = s.meshsize();
        // Middle interior row of the hat-function mass matrix: (h/6, 2h/3, h/6).
        assert!((ops.mass.get(1, 0) - h / 6.0).abs() < 1e-14);
        assert!((ops.mass.get(1, 1) - 2.0 * h / 3.0).abs() < 1e-14);
        assert!((ops.mass.get(1, 2) - h / 6.0).abs() < 1e-14);
        // Stiffness row: (-1/h, 2/h, -1/h).
        assert!((ops.stiffness.get(1, 0) + 1.0 / h).abs() < 1e-12);
        assert!((ops.stiffness.get(1, 1) - 2.0 / h).abs() < 1e-12);
        assert!((ops.stiffness.get(1, 2) + 1.0 / h).abs() < 1e-12);
    }

    #[test]
    fn mass_total_matches_partition_of_unity_integral() {
        // sum_ij M[i,j] = int (sum of interior basis functions)^2 dx,
        // cross-checked by direct quadrature.
        for p in [1usize, 2, 3] {
            let s = FeSpace::new(0.0, 1.0, 5, p).unwrap();
            let ops = s.assemble().unwrap();
            let mut total = 0.0;
            for i in 0..s.num_interior_dofs() {
                for j in 0..s.num_interior_dofs() {
                    total += ops.mass.get(i, j);
                }
            }
            let ones = vec![1.0; s.num_interior_dofs()];
            let direct = {
                let rule = QuadratureRule::gauss_legendre(p + 3);
                let mut acc = 0.0;
                for e in 0..s.elements() {
                    let (l, r) = s.element_bounds(e);
                    acc += rule.integrate_on(l, r, |x| {
                        let v = s.evaluate(&ones, x).unwrap();
                        v * v
                    });
                }
                acc
            };
            assert!((total - direct).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn operators_are_symmetric_positive_definite() {
        // Cholesky must succeed on both interior matrices.
        fn cholesky_ok(m: &DenseMatrix) -> bool {
            let n = m.rows();
            let mut l = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..=i {
                    let mut sum = m.get(i, j);
                    for k in 0..j {
                        sum -= l[i * n + k] * l[j * n + k];
                    }
                    if i == j {
                        if sum <= 0.0 {
                            return false;
                        }
                        l[i * n + i] = sum.sqrt();
                    } else {
                        l[i * n + j] = sum / l[j * n + j];
                    }
                }
            }
            true
        }
        for p in 1..=4usize {
            let s = FeSpace::new(0.0, 1.0, 6, p).unwrap();
            let ops = s.assemble().unwrap();
            for m in [&ops.mass, &ops.stiffness] {
                let scale = m.max_abs();
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        assert!((m.get(i, j) - m.get(j, i)).abs() < 1e-13 * scale);
                    }
                }
                assert!(cholesky_ok(m), "p={p}");
            }
        }
    }

    #[test]
    fn l2_projection_idempotent_and_zero() {
        let s = FeSpace::new(0.0, 1.0, 4, 2).unwrap();
        let ops = s.assemble().unwrap();
        let n = s.num_interior_dofs();
        for k in 0..n {
            let mut e_k = vec![0.0; n];
            e_k[k] = 1.0;
            let sc = s.clone();
            let ek = e_k.clone();
            let proj = s
                .l2_project(&ops, &mut |x| sc.evaluate(&ek, x).unwrap(), 2)
                .unwrap();
            for i in 0..n {
                assert!((proj[i] - e_k[i]).abs() < 1e-11, "k={k} i={i}");
            }
        }
        let zero = s.l2_project(&ops, &mut |_| 0.0, 0).unwrap();
        assert!(zero.iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn l2_projection_orthogonality() {
        // (u - Pi_h u, phi_i) = 0 for every interior basis function.
        let s = FeSpace::new(0.0, 1.0, 8, 2).unwrap();
        let ops = s.assemble().unwrap();
        let proj = s.l2_project(&ops, &mut |x| (PI * x).sin(), 6).unwrap();
        let load = s.load_vector(&mut |x| (PI * x).sin(), 6);
        let m_proj = ops.mass.matvec(&proj);
        for i in 0..s.num_interior_dofs() {
            assert!((load[i] - m_proj[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn l2_projection_convergence_order() {
        // || sin(pi x) - Pi_h sin(pi x) ||_{L2} = O(h^2) for p = 1.
        let mut errors = Vec::new();
        for m in [16usize, 32, 64] {
            let s = FeSpace::new(0.0, 1.0, m, 1).unwrap();
            let ops = s.assemble().unwrap();
            let proj = s.l2_project(&ops, &mut |x| (PI * x).sin(), 6).unwrap();
            errors.push(s.l2_error(&proj, &mut |x| (PI * x).sin(), 6));
        }
        for w in errors.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((order - 2.0).abs() < 0.1, "order={order}");
        }
    }

    #[test]
    fn ritz_projection_idempotence_and_exact_quadratic() {
        let s = FeSpace::new(0.0, 1.0, 5, 2).unwrap();
        let ops = s.assemble().unwrap();
        // u = x(1-x) lies in the p = 2 space: the projection is exact.
        let proj = s.ritz_project(&ops, &mut |x| 1.0 - 2.0 * x, 4).unwrap();
        let err = s.l2_error(&proj, &mut |x| x * (1.0 - x), 4);
        assert!(err < 1e-12);

        // FE functions are reproduced.
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let dofs: Vec<f64> = (0..s.num_interior_dofs())
            .map(|_| rng.random_range(-1.0..1.0))
            .collect();
        let sc = s.clone();
        let dc = dofs.clone();
        let rp = s
            .ritz_project(&ops, &mut |x| sc.evaluate_deriv(&dc, x).unwrap(), 4)
            .unwrap();
        for (a, b) in rp.iter().zip(&dofs) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn ritz_projection_galerkin_orthogonality() {
        let s = FeSpace::new(0.0, 1.0, 8, 1).unwrap();
        let ops = s.assemble().unwrap();
        let proj = s.ritz_project(&ops, &mut |x| PI * (PI * x).cos(), 8).unwrap();
        let load = s.stiffness_load(&mut |x| PI * (PI * x).cos(), 8);
        let k_proj = ops.stiffness.matvec(&proj);
        for i in 0..s.num_interior_dofs() {
            assert!((load[i] - k_proj[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn ritz_projection_convergence_orders() {
        // p = 1: gradient error O(h), L2 error O(h^2).
        let mut grad_err = Vec::new();
        let mut l2_err = Vec::new();
        for m in [16usize, 32, 64] {
            let s = FeSpace::new(0.0, 1.0, m, 1).unwrap();
            let ops = s.assemble().unwrap();
            let proj = s.ritz_project(&ops, &mut |x| PI * (PI * x).cos(), 8).unwrap();
            grad_err.push(s.h1_semi_error(&proj, &mut |x| PI * (PI * x).cos(), 8));
            l2_err.push(s.l2_error(&proj, &mut |x| (PI * x).sin(), 8));
        }
        for w in grad_err.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((order - 1.0).abs() < 0.1, "gradient order={order}");
        }
        for w in l2_err.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((order - 2.0).abs() < 0.1, "L2 order={order}");
        }
    }

    #[test]
    fn point_evaluation() {
        let s = FeSpace::new(0.0, 1.0, 4, 1).unwrap();
        let n = s.num_interior_dofs();
        // Hat at its own node evaluates to one; Dirichlet endpoints vanish.
        let mut dofs = vec![0.0; n];
        dofs[1] = 1.0;
        assert!((s.evaluate(&dofs, 0.5).unwrap() - 1.0).abs() < 1e-14);
        assert!(s.evaluate(&dofs, 0.0).unwrap().abs() < 1e-14);
        assert!(s.evaluate(&dofs, 1.0).unwrap().abs() < 1e-14);
        assert!(s.evaluate(&dofs, 1.5).is_err());

        // Random DOFs at an element midpoint agree with the direct Lagrange
        // product formula.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let s2 = FeSpace::new(0.0, 1.0, 3, 3).unwrap();
        let dofs2: Vec<f64> = (0..s2.num_interior_dofs())
            .map(|_| rng.random_range(-1.0..1.0))
            .collect();
        let (l, r) = s2.element_bounds(1);
        let xm = 0.5 * (l + r);
        let nodes = gauss_lobatto_nodes(3);
        let mut direct = 0.0;
        for k in 0..=3 {
            let mut lk = 1.0;
            for j in 0..=3 {
                if j != k {
                    lk *= (0.0 - nodes[j]) / (nodes[k] - nodes[j]);
                }
            }
            if let Some(i) = s2.local_to_interior(1, k) {
                direct += dofs2[i] * lk;
            }
        }
        assert!((s2.evaluate(&dofs2, xm).unwrap() - direct).abs() < 1e-13);
    }
}
