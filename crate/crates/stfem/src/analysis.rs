//! Discrete norms and seminorms, error evaluation against exact solutions,
//! experimental orders of convergence, and the registry of constants used by
//! the identity suite.
//!
//! L-infinity-in-time quantities are evaluated by dense sampling (Chebyshev
//! points per slab plus the slab endpoints) rather than root finding; the
//! adequacy of that convention is itself tested.

use crate::methods::{MethodSpec, Scheme, Solution};
use crate::spatial::FeSpace;
use crate::spatial::SpatialOperators;
use crate::temporal::QuadratureRule;
use crate::timeops::{jump, TimePolyField};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("incompatible dimensions: {0}")]
    IncompatibleDimensions(String),
    #[error("quadrature did not converge after {levels} refinement levels (last values {a:.6e}, {b:.6e})")]
    QuadratureNotConverged { levels: usize, a: f64, b: f64 },
    #[error("error value {value:.3e} at level {index} is not positive")]
    NonPositiveError { index: usize, value: f64 },
    #[error("need at least two refinement levels, got {0}")]
    TooFewLevels(usize),
    #[error("refinement parameters must be strictly decreasing")]
    NonDecreasingParams,
}

/// Discrete norm selector; each maps to a documented sampling/quadrature
/// recipe over the space-time cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum NormKind {
    /// `max_t || . ||_{L2}` over Chebyshev samples per slab plus endpoints.
    LinfL2,
    /// `|| . ||_{L2(Q_T)}` by Gauss-Legendre in time.
    L2QT,
    /// `max_t || grad . ||_{L2}` (same sampling as LinfL2).
    LinfH1semi,
    /// `|| grad . ||_{L2(Q_T)}`.
    L2H1semi,
    /// Trace at T, all interior time jumps, and trace at 0, summed in L2.
    JumpSeminorm,
    /// `|| .(T^-) ||_{L2}`.
    TraceL2AtT,
}

impl NormKind {
    pub fn name(&self) -> &'static str {
        match self {
            NormKind::LinfL2 => "linf-l2",
            NormKind::L2QT => "l2-qt",
            NormKind::LinfH1semi => "linf-h1",
            NormKind::L2H1semi => "l2-h1",
            NormKind::JumpSeminorm => "jump",
            NormKind::TraceL2AtT => "trace-t",
        }
    }

    pub fn parse(s: &str) -> Option<NormKind> {
        match s {
            "linf-l2" => Some(NormKind::LinfL2),
            "l2-qt" => Some(NormKind::L2QT),
            "linf-h1" => Some(NormKind::LinfH1semi),
            "l2-h1" => Some(NormKind::L2H1semi),
            "jump" => Some(NormKind::JumpSeminorm),
            "trace-t" => Some(NormKind::TraceL2AtT),
        _ => None,
        }
    }

    pub fn all() -> [NormKind; 6] {
        [
            NormKind::LinfL2,
            NormKind::L2QT,
            NormKind::LinfH1semi,
            NormKind::L2H1semi,
            NormKind::JumpSeminorm,
            NormKind::TraceL2AtT,
        ]
    }
}

fn quadratic_form(mat: &crate::linalg::DenseMatrix, x: &[f64]) -> f64 {
    mat.matvec(x).iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Chebyshev sample points of `(a, b)`, endpoints excluded.
fn chebyshev_points(a: f64, b: f64, n: usize) -> Vec<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::PI * (2.0 * k as f64 + 1.0) / (2.0 * n as f64);
            mid + half * theta.cos()
        })
        .collect()
}

/// Evaluates a discrete norm of a coefficient field. `density` scales the
/// sampling/quadrature resolution (1 is the documented default).
pub fn eval_norm_with_density(
    kind: NormKind,
    field: &TimePolyField,
    ops: &SpatialOperators,
    density: usize,
) -> Result<f64, AnalysisError> {
    if field.dim() != ops.mass.rows() {
        return Err(AnalysisError::IncompatibleDimensions(format!(
            "field dimension {} vs operator size {}",
            field.dim(),
            ops.mass.rows()
        )));
    }
    let mesh = field.mesh();
    let q = field.degree();
    let density = density.max(1);
    match kind {
        NormKind::LinfL2 | NormKind::LinfH1semi => {
            let mat = if kind == NormKind::LinfL2 {
                &ops.mass
            } else {
                &ops.stiffness
            };
            let mut worst = 0.0f64;
            for n in 0..mesh.num_slabs() {
                let (a, b) = mesh.slab_bounds(n);
                let mut pts = chebyshev_points(a, b, (2 * q + 5) * density);
                pts.push(a);
                pts.push(b);
                for t in pts {
                    let dofs = field.eval_in_slab(n, t).unwrap();
                    worst = worst.max(quadratic_form(mat, &dofs).max(0.0));
                }
            }
            Ok(worst.sqrt())
        }
        NormKind::L2QT | NormKind::L2H1semi => {
            let mat = if kind == NormKind::L2QT {
                &ops.mass
            } else {
                &ops.stiffness
            };
            // Exactness 2q + 3 at default density.
            let rule = QuadratureRule::gauss_legendre((q + 2) * density);
            let mut acc = 0.0;
            for n in 0..mesh.num_slabs() {
                let (a, b) = mesh.slab_bounds(n);
                acc += rule.integrate_on(a, b, |t| {
                    let dofs = field.eval_in_slab(n, t).unwrap();
                    quadratic_form(mat, &dofs)
                });
            }
            Ok(acc.max(0.0).sqrt())
        }
        NormKind::JumpSeminorm => {
            let mut acc = quadratic_form(&ops.mass, &field.trace_left(0));
            acc += quadratic_form(&ops.mass, &field.trace_right(mesh.num_slabs() - 1));
            for k in 1..mesh.num_slabs() {
                acc += quadratic_form(&ops.mass, &jump(field, k).unwrap());
            }
            Ok(acc.max(0.0).sqrt())
        }
        NormKind::TraceL2AtT => {
            let trace = field.trace_right(mesh.num_slabs() - 1);
            Ok(quadratic_form(&ops.mass, &trace).max(0.0).sqrt())
        }
    }
}

pub fn eval_norm(
    kind: NormKind,
    field: &TimePolyField,
    ops: &SpatialOperators,
) -> Result<f64, AnalysisError> {
    eval_norm_with_density(kind, field, ops, 1)
}

/// Exact solution traces used for error measurement.
pub struct ExactSolution<'a> {
    pub u: &'a dyn Fn(f64, f64) -> f64,
    pub u_t: &'a dyn Fn(f64, f64) -> f64,
    pub u_x: &'a dyn Fn(f64, f64) -> f64,
}

/// The field a scalar-in-space error norm compares against. For wave schemes
/// the theory controls the velocity in L2 and the displacement gradient, so
/// L2-type kinds target the velocity (the `v` field when the scheme carries
/// one, otherwise `d_t u`) and H1-type kinds target `u`. For heat schemes
/// every kind targets `u`.
fn error_target(sol: &Solution, kind: NormKind) -> (TimePolyField, Target) {
    let wants_velocity = sol.scheme.is_wave()
        && matches!(
            kind,
            NormKind::LinfL2 | NormKind::L2QT | NormKind::JumpSeminorm | NormKind::TraceL2AtT
        );
    if wants_velocity {
        match &sol.v {
            Some(v) => (v.clone(), Target::Velocity),
            None => (sol.u.derivative(), Target::Velocity),
        }
    } else {
        (sol.u.clone(), Target::Displacement)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Target {
    Displacement,
    Velocity,
}

fn spatial_error_sq(
    space: &FeSpace,
    dofs: &[f64],
    g: &dyn Fn(f64) -> f64,
    extra: usize,
    derivative: bool,
) -> f64 {
    let h = space.meshsize();
    let rule = QuadratureRule::gauss_legendre(space.degree() + 2 + extra);
    let mut acc = 0.0;
    for e in 0..space.elements() {
        let (l, r) = space.element_bounds(e);
        let mid = 0.5 * (l + r);
        for (gi, &x) in rule.nodes().iter().enumerate() {
            let t = mid + 0.5 * h * x;
            let uh = if derivative {
                space.evaluate_deriv(dofs, t).unwrap()
            } else {
                space.evaluate(dofs, t).unwrap()
            };
            let diff = g(t) - uh;
            acc += rule.weights()[gi] * 0.5 * h * diff * diff;
        }
    }
    acc
}

fn measure_error(
    kind: NormKind,
    field: &TimePolyField,
    target: Target,
    space: &FeSpace,
    exact: &ExactSolution,
    level: usize,
) -> f64 {
    let mesh = field.mesh();
    let q = field.degree();
    let extra = 2 + 2 * level;
    let reference: Box<dyn Fn(f64, f64) -> f64> = match (target, kind) {
        (Target::Velocity, _) => Box::new(|x, t| (exact.u_t)(x, t)),
        (Target::Displacement, NormKind::LinfH1semi | NormKind::L2H1semi) => {
            Box::new(|x, t| (exact.u_x)(x, t))
        }
        (Target::Displacement, _) => Box::new(|x, t| (exact.u)(x, t)),
    };
    let derivative_in_space = matches!(kind, NormKind::LinfH1semi | NormKind::L2H1semi);
    match kind {
        NormKind::LinfL2 | NormKind::LinfH1semi => {
            let mut worst = 0.0f64;
            for n in 0..mesh.num_slabs() {
                let (a, b) = mesh.slab_bounds(n);
                let mut pts = chebyshev_points(a, b, (2 * q + 5) << level);
                pts.push(a);
                pts.push(b);
                for t in pts {
                    let dofs = field.eval_in_slab(n, t).unwrap();
                    let err =
                        spatial_error_sq(space, &dofs, &|x| reference(x, t), extra, derivative_in_space);
                    worst = worst.max(err);
                }
            }
            worst.sqrt()
        }
        NormKind::L2QT | NormKind::L2H1semi => {
            let rule = QuadratureRule::gauss_legendre((q + 3) << level);
            let mut acc = 0.0;
            for n in 0..mesh.num_slabs() {
                let (a, b) = mesh.slab_bounds(n);
                acc += rule.integrate_on(a, b, |t| {
                    let dofs = field.eval_in_slab(n, t).unwrap();
                    spatial_error_sq(space, &dofs, &|x| reference(x, t), extra, derivative_in_space)
                });
            }
            acc.max(0.0).sqrt()
        }
        NormKind::JumpSeminorm => {
            // The exact solution is continuous in time, so interior jumps of
            // the error coincide with jumps of the discrete field; the trace
            // terms at 0 and T compare against the exact traces.
            let mesh_end = mesh.num_slabs() - 1;
            let t_end = mesh.t_end();
            let mut acc = spatial_error_sq(
                space,
                &field.trace_left(0),
                &|x| reference(x, 0.0),
                extra,
                false,
            );
            acc += spatial_error_sq(
                space,
                &field.trace_right(mesh_end),
                &|x| reference(x, t_end),
                extra,
                false,
            );
            for k in 1..mesh.num_slabs() {
                let j = jump(field, k).unwrap();
                acc += spatial_error_sq(space, &j, &|_| 0.0, extra, false);
            }
            acc.max(0.0).sqrt()
        }
        NormKind::TraceL2AtT => {
            let t_end = mesh.t_end();
            spatial_error_sq(
                space,
                &field.trace_right(mesh.num_slabs() - 1),
                &|x| reference(x, t_end),
                extra,
                false,
            )
            .sqrt()
        }
    }
}

/// Errors of a discrete solution against an exact solution in the requested
/// norms. Each value is refined (denser sampling and quadrature) until two
/// successive levels agree to `1e-3` relative, up to five levels.
pub fn error_norms(
    sol: &Solution,
    space: &FeSpace,
    exact: &ExactSolution,
    kinds: &[NormKind],
) -> Result<Vec<(NormKind, f64)>, AnalysisError> {
    let mut out = Vec::with_capacity(kinds.len());
    for &kind in kinds {
        let (field, target) = error_target(sol, kind);
        let mut prev = measure_error(kind, &field, target, space, exact, 0);
        let mut converged = false;
        let mut current = prev;
        for level in 1..5 {
            current = measure_error(kind, &field, target, space, exact, level);
            let tol = 1e-3 * current.abs() + 1e-14;
            if (current - prev).abs() <= tol {
                converged = true;
                break;
            }
            prev = current;
        }
        if !converged {
            return Err(AnalysisError::QuadratureNotConverged {
                levels: 5,
                a: prev,
                b: current,
            });
        }
        out.push((kind, current));
    }
    Ok(out)
}

/// Experimental orders of convergence from successive log-ratios.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct EocTable {
    pub params: Vec<f64>,
    pub errors: Vec<f64>,
    pub orders: Vec<f64>,
}

pub fn compute_eoc(params: &[f64], errors: &[f64]) -> Result<EocTable, AnalysisError> {
    if params.len() != errors.len() {
        return Err(AnalysisError::IncompatibleDimensions(format!(
            "{} params vs {} errors",
            params.len(),
            errors.len()
        )));
    }
    if params.len() < 2 {
        return Err(AnalysisError::TooFewLevels(params.len()));
    }
    if params.windows(2).any(|w| w[1] >= w[0]) {
        return Err(AnalysisError::NonDecreasingParams);
    }
    for (index, &value) in errors.iter().enumerate() {
        if !(value > 0.0) {
            return Err(AnalysisError::NonPositiveError { index, value });
        }
    }
    let orders = errors
        .windows(2)
        .zip(params.windows(2))
        .map(|(e, p)| (e[0] / e[1]).ln() / (p[0] / p[1]).ln())
        .collect();
    Ok(EocTable {
        params: params.to_vec(),
        errors: errors.to_vec(),
        orders,
    })
}

/// Constants the identity suite verifies or measures.
pub struct VerificationConstants;

impl VerificationConstants {
    /// Time-polynomial inverse-estimate constant `(q+1)^3`.
    pub fn c_inv(q: usize) -> f64 {
        ((q + 1) as f64).powi(3)
    }

    /// L2-projection stability constant `(q+1)^2`.
    pub fn c_pi_t(q: usize) -> f64 {
        ((q + 1) as f64).powi(2)
    }

    /// Measured Lebesgue constant of the left-sided Radau nodes on `[-1,1]`.
    pub fn c_si_measured(q: usize) -> f64 {
        let rule = QuadratureRule::gauss_radau_left(q);
        let nodes = rule.nodes();
        let mut worst = 0.0f64;
        for k in 0..2000 {
            let x = -1.0 + 2.0 * k as f64 / 1999.0;
            let mut lebesgue = 0.0;
            for i in 0..nodes.len() {
                let mut l = 1.0;
                for (j, &nj) in nodes.iter().enumerate() {
                    if j != i {
                        l *= (x - nj) / (nodes[i] - nj);
                    }
                }
                lebesgue += l.abs();
            }
            worst = worst.max(lebesgue);
        }
        worst
    }

    /// Configured CFL constant for the single-field DG wave scheme.
    pub fn c_cfl(p: usize, q: usize) -> f64 {
        MethodSpec::default_cfl_constant(p, q)
    }
}

/// Velocity-type field of a solution: the explicit `v` when present,
/// otherwise the broken time derivative of `u`.
pub fn velocity_like(sol: &Solution) -> TimePolyField {
    match &sol.v {
        Some(v) => v.clone(),
        None => sol.u.derivative(),
    }
}

/// Convenience: true when the scheme's errors are read off the velocity for
/// L2-type norms (see [`error_target`]).
pub fn velocity_carries_l2_error(scheme: Scheme) -> bool {
    scheme.is_wave()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::methods::{solve, MethodSpec, ProblemData, Scheme};
    use crate::temporal::TimeMesh;
    use crate::timeops::Continuity;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_field(
        rng: &mut ChaCha8Rng,
        mesh: &TimeMesh,
        q: usize,
        dim: usize,
    ) -> TimePolyField {
        let mut f = TimePolyField::zeros(mesh.clone(), q, dim, Continuity::Broken);
        for n in 0..mesh.num_slabs() {
            for c in f.slab_coeffs_mut(n).iter_mut() {
                *c = rng.random_range(-1.0..1.0);
            }
        }
        f
    }

    #[test]
    fn zero_field_has_zero_norms() {
        let space = FeSpace::new(0.0, 1.0, 4, 1).unwrap();
        let ops = space.assemble().unwrap();
        let mesh = TimeMesh::uniform(1.0, 3).unwrap();
        let field = TimePolyField::zeros(mesh, 2, space.num_interior_dofs(), Continuity::Broken);
        for kind in NormKind::all() {
            assert_eq!(eval_norm(kind, &field, &ops).unwrap(), 0.0);
        }
    }

    #[test]
    fn norm_homogeneity() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let space = FeSpace::new(0.0, 1.0, 5, 2).unwrap();
        let ops = space.assemble().unwrap();
        let mesh = TimeMesh::new(vec![0.0, 0.4, 1.0]).unwrap();
        let field = random_field(&mut rng, &mesh, 2, space.num_interior_dofs());
        for kind in NormKind::all() {
            let base = eval_norm(kind, &field, &ops).unwrap();
            let scaled = eval_norm(kind, &field.scaled(-2.5), &ops).unwrap();
            assert!((scaled - 2.5 * base).abs() <= 1e-12 * (1.0 + base), "{kind:?}");
        }
    }

    #[test]
    fn norm_triangle_inequality_spot_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let space = FeSpace::new(0.0, 1.0, 4, 1).unwrap();
        let ops = space.assemble().unwrap();
        let mesh = TimeMesh::uniform(1.0, 2).unwrap();
        for _ in 0..10 {
            let a = random_field(&mut rng, &mesh, 2, space.num_interior_dofs());
            let b = random_field(&mut rng, &mesh, 2, space.num_interior_dofs());
            let mut sum = a.clone();
            let coeffs: Vec<f64> = sum
                .coeffs()
                .iter()
                .zip(b.coeffs())
                .map(|(x, y)| x + y)
                .collect();
            sum = TimePolyField::from_coeffs(
                mesh.clone(),
                2,
                space.num_interior_dofs(),
                coeffs,
                Continuity::Broken,
            )
            .unwrap();
            for kind in NormKind::all() {
                let na = eval_norm(kind, &a, &ops).unwrap();
                let nb = eval_norm(kind, &b, &ops).unwrap();
                let ns = eval_norm(kind, &sum, &ops).unwrap();
                assert!(ns <= na + nb + 1e-12, "{kind:?}");
            }
        }
    }

    #[test]
    fn jump_seminorm_of_continuous_field_is_trace_only() {
        let space = FeSpace::new(0.0, 1.0, 4, 1).unwrap();
        let ops = space.assemble().unwrap();
        let mesh = TimeMesh::uniform(1.0, 3).unwrap();
        let m = space.num_interior_dofs();
        // Constant-in-time field: continuous, so only the two trace terms count.
        let mut field = TimePolyField::zeros(mesh, 1, m, Continuity::Continuous);
        for n in 0..3 {
            for c in 0..m {
                field.mode_mut(n, 0)[c] = 1.0 + c as f64;
            }
        }
        let j = eval_norm(NormKind::JumpSeminorm, &field, &ops).unwrap();
        let tr = eval_norm(NormKind::TraceL2AtT, &field, &ops).unwrap();
        assert!((j - (2.0f64).sqrt() * tr).abs() < 1e-12);
    }

    #[test]
    fn linf_sampling_is_adequate() {
        // The sampled max under-estimates the true sup by construction.
        // Measured on random degree-q fields: the documented density misses
        // the sup by at most a few percent, and from 8x density onward a
        // further doubling moves the value by less than 0.1 percent.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let space = FeSpace::new(0.0, 1.0, 4, 1).unwrap();
        let ops = space.assemble().unwrap();
        let mesh = TimeMesh::new(vec![0.0, 0.3, 1.0]).unwrap();
        for q in 0..=4usize {
            for _ in 0..20 {
                let field = random_field(&mut rng, &mesh, q, space.num_interior_dofs());
                let base = eval_norm_with_density(NormKind::LinfL2, &field, &ops, 1).unwrap();
                let dense = eval_norm_with_density(NormKind::LinfL2, &field, &ops, 8).unwrap();
                let denser = eval_norm_with_density(NormKind::LinfL2, &field, &ops, 16).unwrap();
                assert!(dense >= base - 1e-13, "q={q}");
                assert!((dense - base) <= 3e-2 * dense, "q={q}");
                assert!((denser - dense) <= 1e-3 * denser, "q={q}");
            }
        }
    }

    #[test]
    fn constant_field_l2qt_cross_check() {
        // Field = c * (sum of interior basis functions), constant in time:
        // L2(Q_T) norm is |c| sqrt(T * int (sum phi)^2 dx).
        let space = FeSpace::new(0.0, 1.0, 5, 1).unwrap();
        let ops = space.assemble().unwrap();
        let t_end = 2.0;
        let mesh = TimeMesh::uniform(t_end, 4).unwrap();
        let m = space.num_interior_dofs();
        let c = -1.75;
        let mut field = TimePolyField::zeros(mesh, 2, m, Continuity::Continuous);
        for n in 0..4 {
            for r in 0..m {
                field.mode_mut(n, 0)[r] = c;
            }
        }
        let val = eval_norm(NormKind::L2QT, &field, &ops).unwrap();
        let ones = vec![1.0; m];
        let rule = QuadratureRule::gauss_legendre(4);
        let mut spatial_sq = 0.0;
        for e in 0..space.elements() {
            let (l, r) = space.element_bounds(e);
            spatial_sq += rule.integrate_on(l, r, |x| {
                let v = space.evaluate(&ones, x).unwrap();
                v * v
            });
        }
        let expected = c.abs() * (t_end * spatial_sq).sqrt();
        assert!((val - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn eoc_arithmetic() {
        let t = compute_eoc(&[0.1, 0.05, 0.025], &[1e-2, 5e-3, 2.5e-3]).unwrap();
        for o in &t.orders {
            assert!((o - 1.0).abs() < 1e-12);
        }
        let t = compute_eoc(&[0.1, 0.05], &[4e-2, 1e-2]).unwrap();
        assert!((t.orders[0] - 2.0).abs() < 1e-12);
        let t = compute_eoc(&[0.1, 0.05, 0.025], &[1e-2, 1.25e-3, 1.5625e-4]).unwrap();
        assert!((t.orders[0] - 3.0).abs() < 1e-12);
        assert!((t.orders[1] - 3.0).abs() < 1e-12);

        assert!(matches!(
            compute_eoc(&[0.1], &[1.0]),
            Err(AnalysisError::TooFewLevels(1))
        ));
        assert!(matches!(
            compute_eoc(&[0.1, 0.05], &[1.0, 0.0]),
            Err(AnalysisError::NonPositiveError { .. })
        ));
        assert!(matches!(
            compute_eoc(&[0.05, 0.1], &[1.0, 2.0]),
            Err(AnalysisError::NonDecreasingParams)
        ));
    }

    #[test]
    fn error_norms_vanish_on_exactness_run() {
        let space = FeSpace::new(0.0, 1.0, 6, 2).unwrap();
        let ops = space.assemble().unwrap();
        let mesh = TimeMesh::uniform(1.0, 4).unwrap();
        let mut spec = MethodSpec::new(Scheme::HeatJamet, 1, 2);
        spec.nu = 0.5;
        let f = |x: f64, t: f64| x * (1.0 - x) + 2.0 * 0.5 * t;
        let u0 = |_x: f64| 0.0;
        let du0 = |_x: f64| 0.0;
        let v0 = |_x: f64| 0.0;
        let data = ProblemData {
            f: &f,
            u0: &u0,
            du0: &du0,
            v0: &v0,
        };
        let sol = solve(&spec, &space, &ops, &mesh, &data, None).unwrap();
        let u = |x: f64, t: f64| x * (1.0 - x) * t;
        let u_t = |x: f64, _t: f64| x * (1.0 - x);
        let u_x = |x: f64, t: f64| (1.0 - 2.0 * x) * t;
        let exact = ExactSolution {
            u: &u,
            u_t: &u_t,
            u_x: &u_x,
        };
        let errs = error_norms(&sol, &space, &exact, &NormKind::all()).unwrap();
        for (kind, e) in errs {
            assert!(e <= 1e-8, "{kind:?}: {e:.3e}");
        }
    }

    #[test]
    fn projection_field_error_converges_at_projection_order() {
        // Measuring a one-sided time projection of the Ritz-projected exact
        // solution against the exact solution itself reproduces the
        // projection approximation order tau^{q+1} under tau refinement.
        use crate::timeops::{project_thomee, EndpointSide, QuadPolicy};
        let space = FeSpace::new(0.0, 1.0, 32, 2).unwrap();
        let ops = space.assemble().unwrap();
        let q = 2;
        let u = |x: f64, t: f64| (PI * x).sin() * (-t).exp();
        let u_t = |x: f64, t: f64| -(PI * x).sin() * (-t).exp();
        let u_x = |x: f64, t: f64| PI * (PI * x).cos() * (-t).exp();
        let mut params = Vec::new();
        let mut errors = Vec::new();
        for slabs in [2usize, 4, 8] {
            let mesh = TimeMesh::uniform(1.0, slabs).unwrap();
            let m = space.num_interior_dofs();
            let sc = space.clone();
            let ritz_dofs = |t: f64| -> Vec<f64> {
                let load = sc.stiffness_load(&mut |x| u_x(x, t), 4);
                ops.solve_stiffness(&load).unwrap()
            };
            let field = project_thomee(
                &mesh,
                q,
                m,
                &mut |_n, t, out| out.copy_from_slice(&ritz_dofs(t)),
                EndpointSide::Right,
                QuadPolicy::Points(2 * q + 10),
            )
            .unwrap();
            let sol = Solution {
                u: field,
                v: None,
                scheme: Scheme::HeatJamet,
                slab_residuals: vec![0.0; slabs],
                cfl_margin: None,
                reduction_defect: None,
            };
            let errs = error_norms(
                &sol,
                &space,
                &ExactSolution {
                    u: &u,
                    u_t: &u_t,
                    u_x: &u_x,
                },
                &[NormKind::LinfL2],
            )
            .unwrap();
            params.push(1.0 / slabs as f64);
            errors.push(errs[0].1);
        }
        let eoc = compute_eoc(&params, &errors).unwrap();
        let order = *eoc.orders.last().unwrap();
        assert!(
            (order - (q as f64 + 1.0)).abs() < 0.4,
            "projection error order {order:.3}"
        );
    }

    #[test]
    fn error_norm_monotone_under_perturbed_exact() {
        // Doubling the exact solution away from the discrete one increases the error.
        let space = FeSpace::new(0.0, 1.0, 8, 1).unwrap();
        let ops = space.assemble().unwrap();
        let mesh = TimeMesh::uniform(1.0, 2).unwrap();
        let spec = MethodSpec::new(Scheme::HeatJamet, 1, 1);
        let f = |x: f64, t: f64| (PI * PI - 1.0) * (PI * x).sin() * (-t).exp();
        let u0 = |x: f64| (PI * x).sin();
        let du0 = |x: f64| PI * (PI * x).cos();
        let v0 = |_x: f64| 0.0;
        let data = ProblemData {
            f: &f,
            u0: &u0,
            du0: &du0,
            v0: &v0,
        };
        let sol = solve(&spec, &space, &ops, &mesh, &data, None).unwrap();
        let u1 = |x: f64, t: f64| (PI * x).sin() * (-t).exp();
        let u2 = |x: f64, t: f64| 2.0 * (PI * x).sin() * (-t).exp();
        let u_t1 = |x: f64, t: f64| -(PI * x).sin() * (-t).exp();
        let u_t2 = |x: f64, t: f64| -2.0 * (PI * x).sin() * (-t).exp();
        let u_x1 = |x: f64, t: f64| PI * (PI * x).cos() * (-t).exp();
        let u_x2 = |x: f64, t: f64| 2.0 * PI * (PI * x).cos() * (-t).exp();
        let e1 = error_norms(
            &sol,
            &space,
            &ExactSolution {
                u: &u1,
                u_t: &u_t1,
                u_x: &u_x1,
            },
            &[NormKind::LinfL2],
        )
        .unwrap()[0]
            .1;
        let e2 = error_norms(
            &sol,
            &space,
            &ExactSolution {
                u: &u2,
                u_t: &u_t2,
                u_x: &u_x2,
            },
            &[NormKind::LinfL2],
        )
        .unwrap()[0]
            .1;
        assert!(e2 > e1);
    }

    #[test]
    fn radau_lebesgue_constant_is_small() {
        // Measured values grow like sqrt(q+1): 1.0, 2.0, 2.78, ..., 5.94 at
        // q = 8, staying under 2 sqrt(q+1) throughout.
        let mut prev = 0.0;
        for q in 0..=8usize {
            let c = VerificationConstants::c_si_measured(q);
            assert!(
                c <= 2.0 * ((q + 1) as f64).sqrt(),
                "q={q}: measured {c:.3}"
            );
            assert!(c >= prev, "Lebesgue constant should grow with q");
            prev = c;
        }
    }
}

