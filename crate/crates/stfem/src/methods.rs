//! The six space-time schemes: per-slab system assembly (time operator
//! tensor spatial operator), sequential slab solves, discrete initial
//! conditions, and the CFL guard of the single-field DG wave scheme.
//!
//! Each scheme advances slab by slab. On a slab the unknown Legendre modes
//! of the trial field(s) couple through Kronecker blocks
//! `time_matrix (x) spatial_matrix`; continuous-in-time trial spaces carry
//! their left trace as an explicit constraint row, discontinuous ones pick
//! the upwind trace up through jump terms in the bilinear form.

use crate::linalg::{kron, DenseMatrix, LinalgError, LuFactors};
use crate::spatial::{FeSpace, SpatialOperators};
use crate::temporal::{legendre_table, QuadratureRule, TimeMesh};
use crate::timeops::{Continuity, TimePolyField};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MethodError {
    #[error("invalid method specification: {0}")]
    InvalidSpec(String),
    #[error("CFL violation: max slab width {tau:.6e} exceeds limit {limit:.6e} (C_cfl h_min / c)")]
    CflViolation { tau: f64, limit: f64 },
    #[error("singular slab system at slab {slab}: {source}")]
    SingularSlabSystem {
        slab: usize,
        #[source]
        source: LinalgError,
    },
    #[error("initial-condition projection failed: {0}")]
    InitialData(#[from] LinalgError),
}

/// Scheme selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Scheme {
    /// DG in time for the heat equation; broken trial/test of degree q.
    HeatJamet,
    /// CG in time for the heat equation; continuous trial of degree q,
    /// broken tests of degree q - 1 (q >= 1).
    HeatAzizMonk,
    /// Single-field DG for the second-order wave equation (q >= 2),
    /// optionally damped; requires a CFL condition.
    WaveVanilla,
    /// CG for the Hamiltonian wave system (q >= 1); two continuous fields.
    WaveFrenchPeterson,
    /// DG for the Hamiltonian wave system (q >= 1); two broken fields.
    WaveJohnson,
    /// DG-CG for the second-order wave equation (q >= 2); continuous trial,
    /// broken tests of degree q - 1.
    WaveWalkington,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::HeatJamet => "heat-jamet",
            Scheme::HeatAzizMonk => "heat-aziz-monk",
            Scheme::WaveVanilla => "wave-vanilla",
            Scheme::WaveFrenchPeterson => "wave-french-peterson",
            Scheme::WaveJohnson => "wave-johnson",
            Scheme::WaveWalkington => "wave-walkington",
        }
    }

    pub fn parse(s: &str) -> Option<Scheme> {
        match s {
            "heat-jamet" => Some(Scheme::HeatJamet),
            "heat-aziz-monk" => Some(Scheme::HeatAzizMonk),
            "wave-vanilla" => Some(Scheme::WaveVanilla),
            "wave-french-peterson" => Some(Scheme::WaveFrenchPeterson),
            "wave-johnson" => Some(Scheme::WaveJohnson),
            "wave-walkington" => Some(Scheme::WaveWalkington),
            _ => None,
        }
    }

    pub fn all() -> [Scheme; 6] {
        [
            Scheme::HeatJamet,
            Scheme::HeatAzizMonk,
            Scheme::WaveVanilla,
            Scheme::WaveFrenchPeterson,
            Scheme::WaveJohnson,
            Scheme::WaveWalkington,
        ]
    }

    pub fn is_heat(&self) -> bool {
        matches!(self, Scheme::HeatJamet | Scheme::HeatAzizMonk)
    }

    pub fn is_wave(&self) -> bool {
        !self.is_heat()
    }

    /// Minimal admissible time degree.
    pub fn min_degree(&self) -> usize {
        match self {
            Scheme::HeatJamet => 0,
            Scheme::HeatAzizMonk | Scheme::WaveFrenchPeterson | Scheme::WaveJohnson => 1,
            Scheme::WaveVanilla | Scheme::WaveWalkington => 2,
        }
    }

    /// Whether the primary field is continuous across slabs.
    pub fn continuous_trial(&self) -> bool {
        matches!(
            self,
            Scheme::HeatAzizMonk | Scheme::WaveFrenchPeterson | Scheme::WaveWalkington
        )
    }

    pub fn has_velocity_field(&self) -> bool {
        matches!(self, Scheme::WaveFrenchPeterson | Scheme::WaveJohnson)
    }
}

/// Scheme plus physical and discretization parameters.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct MethodSpec {
    pub scheme: Scheme,
    /// Diffusivity (heat schemes).
    pub nu: f64,
    /// Wave speed (wave schemes).
    pub c: f64,
    /// Damping coefficient (single-field DG wave only).
    pub delta: f64,
    /// Time polynomial degree.
    pub q: usize,
    /// Space polynomial degree.
    pub p: usize,
    /// Overrides the default CFL constant when set.
    pub cfl_constant: Option<f64>,
    /// Proceed despite a CFL violation (diagnostics are still reported).
    pub cfl_override: bool,
}

impl MethodSpec {
    pub fn new(scheme: Scheme, q: usize, p: usize) -> Self {
        Self {
            scheme,
            nu: 1.0,
            c: 1.0,
            delta: 0.0,
            q,
            p,
            cfl_constant: None,
            cfl_override: false,
        }
    }

    /// Conservative default CFL constant, `0.25 / ((q+1)^{3/2} (p+1))`.
    pub fn default_cfl_constant(p: usize, q: usize) -> f64 {
        0.25 / ((q as f64 + 1.0).powf(1.5) * (p as f64 + 1.0))
    }

    pub fn cfl_constant(&self) -> f64 {
        self.cfl_constant
            .unwrap_or_else(|| Self::default_cfl_constant(self.p, self.q))
    }

    pub fn validate(&self) -> Result<(), MethodError> {
        if self.q < self.scheme.min_degree() {
            return Err(MethodError::InvalidSpec(format!(
                "{} requires q >= {}, got q = {}",
                self.scheme.name(),
                self.scheme.min_degree(),
                self.q
            )));
        }
        if self.scheme.is_heat() && !(self.nu > 0.0) {
            return Err(MethodError::InvalidSpec(format!(
                "heat schemes need nu > 0, got {}",
                self.nu
            )));
        }
        if self.scheme.is_wave() && !(self.c > 0.0) {
            return Err(MethodError::InvalidSpec(format!(
                "wave schemes need c > 0, got {}",
                self.c
            )));
        }
        if self.delta < 0.0 {
            return Err(MethodError::InvalidSpec(format!(
                "damping must be nonnegative, got {}",
                self.delta
            )));
        }
        if self.delta > 0.0 && self.scheme != Scheme::WaveVanilla {
            return Err(MethodError::InvalidSpec(format!(
                "damping is only supported by wave-vanilla, got delta = {} for {}",
                self.delta,
                self.scheme.name()
            )));
        }
        Ok(())
    }
}

/// Problem data: source, initial position (with spatial derivative), and
/// initial velocity.
pub struct ProblemData<'a> {
    pub f: &'a dyn Fn(f64, f64) -> f64,
    pub u0: &'a dyn Fn(f64) -> f64,
    pub du0: &'a dyn Fn(f64) -> f64,
    pub v0: &'a dyn Fn(f64) -> f64,
}

/// Discrete solution: the primary field over interior FE DOF vectors, an
/// optional velocity field, and per-slab diagnostics.
pub struct Solution {
    pub u: TimePolyField,
    pub v: Option<TimePolyField>,
    pub scheme: Scheme,
    /// `||A x - b||_inf / (1 + ||b||_inf)` of each solved slab system.
    pub slab_residuals: Vec<f64>,
    /// `(C_cfl h_min / c) / tau_max` when the scheme carries a CFL condition.
    pub cfl_margin: Option<f64>,
    /// Post-hoc defect of the velocity reduction identity (French-Peterson).
    pub reduction_defect: Option<f64>,
}

/// Gauss-Legendre point count used for source-term time integrals unless the
/// caller overrides it.
pub fn default_rhs_points(q: usize) -> usize {
    2 * q + 10
}

// ---------------------------------------------------------------------------
// Reference time matrices and slab assembly helpers
// ---------------------------------------------------------------------------

/// `int_{-1}^{1} d^a P_j / dx^a * d^b P_i / dx^b dx` for `i <= q_test`,
/// `j <= q_trial`. On a slab of width tau, the physical integral
/// `int_{I_n} d^a L_j/dt^a d^b L_i/dt^b dt` equals `(2/tau)^{a+b-1}` times
/// this matrix entry.
fn ref_time_matrix(q_test: usize, q_trial: usize, b: usize, a: usize) -> DenseMatrix {
    let rule = QuadratureRule::gauss_legendre(q_test + q_trial + 2);
    let mut m = DenseMatrix::zeros(q_test + 1, q_trial + 1);
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let table = legendre_table(q_test.max(q_trial), x);
        for i in 0..=q_test {
            for j in 0..=q_trial {
                m.add_to(i, j, w * table[j][a] * table[i][b]);
            }
        }
    }
    m
}

fn endpoint_sign(i: usize) -> f64 {
    if i % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Adds `coeff * spatial` into block `(row_block, col_block)` of `a`.
fn add_kron_block(
    a: &mut DenseMatrix,
    m: usize,
    row_block: usize,
    col_block: usize,
    coeff: f64,
    spatial: &DenseMatrix,
) {
    if coeff == 0.0 {
        return;
    }
    for r in 0..m {
        let row = row_block * m + r;
        for c in 0..m {
            a.add_to(row, col_block * m + c, coeff * spatial.get(r, c));
        }
    }
}

fn add_identity_block(a: &mut DenseMatrix, m: usize, row_block: usize, col_block: usize, coeff: f64) {
    for r in 0..m {
        a.add_to(row_block * m + r, col_block * m + r, coeff);
    }
}

/// Load vectors `(f(., t_g), phi)` at the mapped quadrature times of a slab.
fn time_loads(
    space: &FeSpace,
    f: &dyn Fn(f64, f64) -> f64,
    bounds: (f64, f64),
    rule: &QuadratureRule,
    extra: usize,
) -> Vec<Vec<f64>> {
    rule.mapped_nodes(bounds.0, bounds.1)
        .into_iter()
        .map(|t| space.load_vector(&mut |x| f(x, t), extra))
        .collect()
}

/// Accumulates `sum_g w_g * (tau/2)^{1-deriv} * P_i^{(deriv)}(x_g) * load_g`
/// into the RHS block `i`; `deriv = 0` tests against `L_i`, `deriv = 1`
/// against `dL_i/dt` (the tau powers from the chain rule and `dt` cancel as
/// appropriate).
fn accumulate_source(
    rhs: &mut [f64],
    m: usize,
    q_test: usize,
    rule: &QuadratureRule,
    loads: &[Vec<f64>],
    tau: f64,
    deriv: usize,
) {
    for (g, load) in loads.iter().enumerate() {
        let w = rule.weights()[g];
        let table = legendre_table(q_test, rule.nodes()[g]);
        for i in 0..=q_test {
            let factor = match deriv {
                0 => w * 0.5 * tau * table[i][0],
                1 => w * table[i][1],
                _ => unreachable!(),
            };
            let block = &mut rhs[i * m..(i + 1) * m];
            for (o, l) in block.iter_mut().zip(load) {
                *o += factor * l;
            }
        }
    }
}

fn residual_inf(a: &DenseMatrix, x: &[f64], b: &[f64]) -> f64 {
    let ax = a.matvec(x);
    let b_inf = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let r_inf = ax
        .iter()
        .zip(b)
        .map(|(p, q)| (p - q).abs())
        .fold(0.0f64, f64::max);
    r_inf / (1.0 + b_inf)
}

/// Caches the factored slab matrix between slabs of (nearly) equal width.
struct SlabCache {
    tau: f64,
    matrix: DenseMatrix,
    lu: LuFactors,
}

impl SlabCache {
    fn reusable(&self, tau: f64) -> bool {
        (self.tau - tau).abs() <= 1e-12 * self.tau.abs()
    }
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// Solves the space-time problem selected by `spec`, slab by slab.
///
/// `rhs_points` controls the Gauss-Legendre point count for time integrals of
/// the source term; `None` uses [`default_rhs_points`].
pub fn solve(
    spec: &MethodSpec,
    space: &FeSpace,
    ops: &SpatialOperators,
    mesh: &TimeMesh,
    data: &ProblemData,
    rhs_points: Option<usize>,
) -> Result<Solution, MethodError> {
    spec.validate()?;
    match spec.scheme {
        Scheme::HeatJamet => solve_heat_jamet(spec, space, ops, mesh, data, rhs_points),
        Scheme::HeatAzizMonk => solve_heat_aziz_monk(spec, space, ops, mesh, data, rhs_points),
        Scheme::WaveVanilla => solve_wave_vanilla(spec, space, ops, mesh, data, rhs_points),
        Scheme::WaveFrenchPeterson => {
            solve_wave_french_peterson(spec, space, ops, mesh, data, rhs_points)
        }
        Scheme::WaveJohnson => solve_wave_johnson(spec, space, ops, mesh, data, rhs_points),
        Scheme::WaveWalkington => solve_wave_walkington(spec, space, ops, mesh, data, rhs_points),
    }
}

fn expect_scheme(spec: &MethodSpec, scheme: Scheme) -> Result<(), MethodError> {
    if spec.scheme != scheme {
        return Err(MethodError::InvalidSpec(format!(
            "solver for {} invoked with spec for {}",
            scheme.name(),
            spec.scheme.name()
        )));
    }
    spec.validate()
}

// ---------------------------------------------------------------------------
// Heat: DG in time (upwind traces, weak initial condition)
// ---------------------------------------------------------------------------

/// Per slab: `kron(C_t, M) + nu kron(G_t, K)` with
/// `C_t[i,j] = int L_j' L_i dt + L_j(t-) L_i(t-)` and `G_t[i,j] = int L_j L_i dt`;
/// the right-hand side carries the source moments plus the upwind trace
/// (the raw load of `u0` on the first slab).
pub fn solve_heat_jamet(
    spec: &MethodSpec,
    space: &FeSpace,
    ops: &SpatialOperators,
    mesh: &TimeMesh,
    data: &ProblemData,
    rhs_points: Option<usize>,
) -> Result<Solution, MethodError> {
    expect_scheme(spec, Scheme::HeatJamet)?;
    let q = spec.q;
    let m = space.num_interior_dofs();
    let rule = QuadratureRule::gauss_legendre(rhs_points.unwrap_or(default_rhs_points(q)));
    let g00 = ref_time_matrix(q, q, 0, 0);
    let d10 = ref_time_matrix(q, q, 0, 1);

    let mut u = TimePolyField::zeros(mesh.clone(), q, m, Continuity::Broken);
    let mut residuals = Vec::with_capacity(mesh.num_slabs());
    let mut cache: Option<SlabCache> = None;
    let mut prev_load = space.load_vector(&mut |x| (data.u0)(x), 4);

    for n in 0..mesh.num_slabs() {
        let tau = mesh.width(n);
        if cache.as_ref().map(|c| !c.reusable(tau)).unwrap_or(true) {
            let mut ct = d10.clone();
            for i in 0..=q {
                for j in 0..=q {
                    ct.add_to(i, j, endpoint_sign(i) * endpoint_sign(j));
                }
            }
            let mut gt = g00.clone();
            gt.scale(0.5 * tau);
            let mut a = kron(&ct, &ops.mass);
            a.add_scaled(spec.nu, &kron(&gt, &ops.stiffness));
            let lu = LuFactors::factor(&a)
                .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
            cache = Some(SlabCache { tau, matrix: a, lu });
        }
        let cache_ref = cache.as_ref().unwrap();

        let mut rhs = vec![0.0; (q + 1) * m];
        let loads = time_loads(space, data.f, mesh.slab_bounds(n), &rule, 4);
        accumulate_source(&mut rhs, m, q, &rule, &loads, tau, 0);
        for i in 0..=q {
            let sign = endpoint_sign(i);
            let block = &mut rhs[i * m..(i + 1) * m];
            for (o, w) in block.iter_mut().zip(&prev_load) {
                *o += sign * w;
            }
        }

        let x = cache_ref
            .lu
            .solve(&rhs)
            .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
        residuals.push(residual_inf(&cache_ref.matrix, &x, &rhs));
        u.slab_coeffs_mut(n).copy_from_slice(&x);
        prev_load = ops.mass.matvec(&u.trace_right(n));
    }

    Ok(Solution {
        u,
        v: None,
        scheme: spec.scheme,
        slab_residuals: residuals,
        cfl_margin: None,
        reduction_defect: None,
    })
}

// ---------------------------------------------------------------------------
// Heat: CG in time (strong initial condition via L2 projection)
// ---------------------------------------------------------------------------

/// Continuous degree-q trial field with broken degree-(q-1) tests; the left
/// nodal value is carried as an explicit constraint row, seeded on the first
/// slab with the L2 projection of `u0`.
pub fn solve_heat_aziz_monk(
    spec: &MethodSpec,
    space: &FeSpace,
    ops: &SpatialOperators,
    mesh: &TimeMesh,
    data: &ProblemData,
    rhs_points: Option<usize>,
) -> Result<Solution, MethodError> {
    expect_scheme(spec, Scheme::HeatAzizMonk)?;
    let q = spec.q;
    let m = space.num_interior_dofs();
    let rule = QuadratureRule::gauss_legendre(rhs_points.unwrap_or(default_rhs_points(q)));
    let g00 = ref_time_matrix(q - 1, q, 0, 0);
    let d10 = ref_time_matrix(q - 1, q, 0, 1);

    let mut u = TimePolyField::zeros(mesh.clone(), q, m, Continuity::Continuous);
    let mut residuals = Vec::with_capacity(mesh.num_slabs());
    let mut cache: Option<SlabCache> = None;
    let mut prev_value = ops.solve_mass(&space.load_vector(&mut |x| (data.u0)(x), 4))?;

    for n in 0..mesh.num_slabs() {
        let tau = mesh.width(n);
        if cache.as_ref().map(|c| !c.reusable(tau)).unwrap_or(true) {
            let mut a = DenseMatrix::zeros((q + 1) * m, (q + 1) * m);
            for i in 0..q {
                for j in 0..=q {
                    add_kron_block(&mut a, m, i, j, d10.get(i, j), &ops.mass);
                    add_kron_block(
                        &mut a,
                        m,
                        i,
                        j,
                        spec.nu * 0.5 * tau * g00.get(i, j),
                        &ops.stiffness,
                    );
                }
            }
            for j in 0..=q {
                add_identity_block(&mut a, m, q, j, endpoint_sign(j));
            }
            let lu = LuFactors::factor(&a)
                .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
            cache = Some(SlabCache { tau, matrix: a, lu });
        }
        let cache_ref = cache.as_ref().unwrap();

        let mut rhs = vec![0.0; (q + 1) * m];
        let loads = time_loads(space, data.f, mesh.slab_bounds(n), &rule, 4);
        accumulate_source(&mut rhs[..q * m], m, q - 1, &rule, &loads, tau, 0);
        rhs[q * m..].copy_from_slice(&prev_value);

        let x = cache_ref
            .lu
            .solve(&rhs)
            .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
        residuals.push(residual_inf(&cache_ref.matrix, &x, &rhs));
        u.slab_coeffs_mut(n).copy_from_slice(&x);
        prev_value = u.trace_right(n);
    }

    Ok(Solution {
        u,
        v: None,
        scheme: spec.scheme,
        slab_residuals: residuals,
        cfl_margin: None,
        reduction_defect: None,
    })
}

// ---------------------------------------------------------------------------
// Wave: single-field DG (CFL-guarded, optional damping)
// ---------------------------------------------------------------------------

/// Broken degree-q field (q >= 2) tested against d/dt of broken degree-q
/// functions, with upwind jumps in both the velocity and the gradient.
/// Damping `delta >= 0` adds `delta * kron(int L_j' L_i' dt, M)`.
pub fn solve_wave_vanilla(
    spec: &MethodSpec,
    space: &FeSpace,
    ops: &SpatialOperators,
    mesh: &TimeMesh,
    data: &ProblemData,
    rhs_points: Option<usize>,
) -> Result<Solution, MethodError> {
    expect_scheme(spec, Scheme::WaveVanilla)?;
    let q = spec.q;
    let m = space.num_interior_dofs();
    let c2 = spec.c * spec.c;

    let limit = spec.cfl_constant() * space.meshsize() / spec.c;
    let tau_max = mesh.max_width();
    let cfl_margin = limit / tau_max;
    if tau_max > limit && !spec.cfl_override {
        return Err(MethodError::CflViolation {
            tau: tau_max,
            limit,
        });
    }

    let rule = QuadratureRule::gauss_legendre(rhs_points.unwrap_or(default_rhs_points(q)));
    let g21 = ref_time_matrix(q, q, 1, 2);
    let g01 = ref_time_matrix(q, q, 1, 0);
    let g11 = ref_time_matrix(q, q, 1, 1);
    let left = legendre_table(q, -1.0);
    let right = legendre_table(q, 1.0);

    let mut u = TimePolyField::zeros(mesh.clone(), q, m, Continuity::Broken);
    let mut residuals = Vec::with_capacity(mesh.num_slabs());
    let mut cache: Option<SlabCache> = None;
    // a_prev = ((du/dt)(t-), .) mass-weighted; b_prev = (grad u(t-), grad .)
    let mut a_prev = space.load_vector(&mut |x| (data.v0)(x), 4);
    let mut b_prev = space.stiffness_load(&mut |x| (data.du0)(x), 4);

    for n in 0..mesh.num_slabs() {
        let tau = mesh.width(n);
        let s = 2.0 / tau;
        if cache.as_ref().map(|c| !c.reusable(tau)).unwrap_or(true) {
            let mut tm = DenseMatrix::zeros(q + 1, q + 1);
            let mut tk = DenseMatrix::zeros(q + 1, q + 1);
            for i in 0..=q {
                for j in 0..=q {
                    // (d_tt u, d_t w) + jump/initial term (d_t u(t-), d_t w(t-)).
                    let mut mass_term = s * s * g21.get(i, j);
                    mass_term += s * left[j][1] * s * left[i][1];
                    // Damping (d_t u, d_t w).
                    mass_term += spec.delta * s * g11.get(i, j);
                    tm.set(i, j, mass_term);
                    // c^2 [(grad u, grad d_t w) + (grad u(t-), grad w(t-))].
                    tk.set(i, j, g01.get(i, j) + endpoint_sign(i) * endpoint_sign(j));
                }
            }
            let mut a = kron(&tm, &ops.mass);
            a.add_scaled(c2, &kron(&tk, &ops.stiffness));
            let lu = LuFactors::factor(&a)
                .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
            cache = Some(SlabCache { tau, matrix: a, lu });
        }
        let cache_ref = cache.as_ref().unwrap();

        let mut rhs = vec![0.0; (q + 1) * m];
        let loads = time_loads(space, data.f, mesh.slab_bounds(n), &rule, 4);
        accumulate_source(&mut rhs, m, q, &rule, &loads, tau, 1);
        for i in 0..=q {
            let w_dt = s * left[i][1];
            let w_val = c2 * endpoint_sign(i);
            let block = &mut rhs[i * m..(i + 1) * m];
            for r in 0..m {
                block[r] += w_dt * a_prev[r] + w_val * b_prev[r];
            }
        }

        let x = cache_ref
            .lu
            .solve(&rhs)
            .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
        residuals.push(residual_inf(&cache_ref.matrix, &x, &rhs));
        u.slab_coeffs_mut(n).copy_from_slice(&x);

        // Right traces feeding the next slab.
        let mut du_trace = vec![0.0; m];
        for j in 0..=q {
            let w = s * right[j][1];
            for (o, c) in du_trace.iter_mut().zip(u.mode(n, j)) {
                *o += w * c;
            }
        }
        a_prev = ops.mass.matvec(&du_trace);
        b_prev = ops.stiffness.matvec(&u.trace_right(n));
    }

    Ok(Solution {
        u,
        v: None,
        scheme: spec.scheme,
        slab_residuals: residuals,
        cfl_margin: Some(cfl_margin),
        reduction_defect: None,
    })
}

// ---------------------------------------------------------------------------
// Wave: CG Hamiltonian system (French-Peterson)
// ---------------------------------------------------------------------------

/// Two continuous degree-q fields coupled monolithically per slab, tested
/// against broken degree q-1; initial data `u(0) = Ritz(u0)`,
/// `v(0) = L2-projection(v0)`. The velocity reduction identity
/// `Pi_{q-1} v = d_t u` is not exploited by the solver; its defect is
/// reported as a diagnostic.
pub fn solve_wave_french_peterson(
    spec: &MethodSpec,
    space: &FeSpace,
    ops: &SpatialOperators,
    mesh: &TimeMesh,
    data: &ProblemData,
    rhs_points: Option<usize>,
) -> Result<Solution, MethodError> {
    expect_scheme(spec, Scheme::WaveFrenchPeterson)?;
    let q = spec.q;
    let m = space.num_interior_dofs();
    let c2 = spec.c * spec.c;
    let rule = QuadratureRule::gauss_legendre(rhs_points.unwrap_or(default_rhs_points(q)));
    let g00 = ref_time_matrix(q - 1, q, 0, 0);
    let d10 = ref_time_matrix(q - 1, q, 0, 1);
    // Block layout: u modes 0..=q, v modes q+1..=2q+1.
    let vb = q + 1;

    let mut u = TimePolyField::zeros(mesh.clone(), q, m, Continuity::Continuous);
    let mut v = TimePolyField::zeros(mesh.clone(), q, m, Continuity::Continuous);
    let mut residuals = Vec::with_capacity(mesh.num_slabs());
    let mut cache: Option<SlabCache> = None;
    let mut u_prev = ops.solve_stiffness(&space.stiffness_load(&mut |x| (data.du0)(x), 4))?;
    let mut v_prev = ops.solve_mass(&space.load_vector(&mut |x| (data.v0)(x), 4))?;

    for n in 0..mesh.num_slabs() {
        let tau = mesh.width(n);
        if cache.as_ref().map(|c| !c.reusable(tau)).unwrap_or(true) {
            let mut a = DenseMatrix::zeros(2 * (q + 1) * m, 2 * (q + 1) * m);
            for i in 0..q {
                for j in 0..=q {
                    // c^2 (grad v, grad z) - c^2 (grad d_t u, grad z) = 0.
                    add_kron_block(
                        &mut a,
                        m,
                        i,
                        vb + j,
                        c2 * 0.5 * tau * g00.get(i, j),
                        &ops.stiffness,
                    );
                    add_kron_block(&mut a, m, i, j, -c2 * d10.get(i, j), &ops.stiffness);
                    // (d_t v, w) + c^2 (grad u, grad w) = (f, w).
                    add_kron_block(&mut a, m, vb + i, vb + j, d10.get(i, j), &ops.mass);
                    add_kron_block(
                        &mut a,
                        m,
                        vb + i,
                        j,
                        c2 * 0.5 * tau * g00.get(i, j),
                        &ops.stiffness,
                    );
                }
            }
            for j in 0..=q {
                add_identity_block(&mut a, m, q, j, endpoint_sign(j));
                add_identity_block(&mut a, m, vb + q, vb + j, endpoint_sign(j));
            }
            let lu = LuFactors::factor(&a)
                .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
            cache = Some(SlabCache { tau, matrix: a, lu });
        }
        let cache_ref = cache.as_ref().unwrap();

        let mut rhs = vec![0.0; 2 * (q + 1) * m];
        let loads = time_loads(space, data.f, mesh.slab_bounds(n), &rule, 4);
        accumulate_source(
            &mut rhs[vb * m..(vb + q) * m],
            m,
            q - 1,
            &rule,
            &loads,
            tau,
            0,
        );
        rhs[q * m..(q + 1) * m].copy_from_slice(&u_prev);
        rhs[(vb + q) * m..(vb + q + 1) * m].copy_from_slice(&v_prev);

        let x = cache_ref
            .lu
            .solve(&rhs)
            .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
        residuals.push(residual_inf(&cache_ref.matrix, &x, &rhs));
        u.slab_coeffs_mut(n).copy_from_slice(&x[..(q + 1) * m]);
        v.slab_coeffs_mut(n).copy_from_slice(&x[(q + 1) * m..]);
        u_prev = u.trace_right(n);
        v_prev = v.trace_right(n);
    }

    // Post-hoc reduction check: Pi_{q-1} v = d_t u coefficientwise.
    let vt = v.truncated(q.saturating_sub(1));
    let du = u.derivative();
    let scale = v
        .coeffs()
        .iter()
        .fold(0.0f64, |mx, c| mx.max(c.abs()))
        .max(1.0);
    let defect = vt
        .coeffs()
        .iter()
        .zip(du.coeffs())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max)
        / scale;

    Ok(Solution {
        u,
        v: Some(v),
        scheme: spec.scheme,
        slab_residuals: residuals,
        cfl_margin: None,
        reduction_defect: Some(defect),
    })
}

// ---------------------------------------------------------------------------
// Wave: DG Hamiltonian system (Johnson)
// ---------------------------------------------------------------------------

/// Two broken degree-q fields with upwind jumps in the velocity and in the
/// gradient; initial data enter weakly through the bottom-surface terms.
pub fn solve_wave_johnson(
    spec: &MethodSpec,
    space: &FeSpace,
    ops: &SpatialOperators,
    mesh: &TimeMesh,
    data: &ProblemData,
    rhs_points: Option<usize>,
) -> Result<Solution, MethodError> {
    expect_scheme(spec, Scheme::WaveJohnson)?;
    let q = spec.q;
    let m = space.num_interior_dofs();
    let c2 = spec.c * spec.c;
    let rule = QuadratureRule::gauss_legendre(rhs_points.unwrap_or(default_rhs_points(q)));
    let g00 = ref_time_matrix(q, q, 0, 0);
    let d10 = ref_time_matrix(q, q, 0, 1);
    let vb = q + 1;

    let mut u = TimePolyField::zeros(mesh.clone(), q, m, Continuity::Broken);
    let mut v = TimePolyField::zeros(mesh.clone(), q, m, Continuity::Broken);
    let mut residuals = Vec::with_capacity(mesh.num_slabs());
    let mut cache: Option<SlabCache> = None;
    // Gradient load of the previous u trace and mass load of the previous v trace.
    let mut b_prev = space.stiffness_load(&mut |x| (data.du0)(x), 4);
    let mut a_prev = space.load_vector(&mut |x| (data.v0)(x), 4);

    for n in 0..mesh.num_slabs() {
        let tau = mesh.width(n);
        if cache.as_ref().map(|c| !c.reusable(tau)).unwrap_or(true) {
            let mut a = DenseMatrix::zeros(2 * (q + 1) * m, 2 * (q + 1) * m);
            for i in 0..=q {
                for j in 0..=q {
                    let upwind = d10.get(i, j) + endpoint_sign(i) * endpoint_sign(j);
                    // c^2 (grad v, grad z) = c^2 [(d_t grad u, grad z) + upwind traces].
                    add_kron_block(
                        &mut a,
                        m,
                        i,
                        vb + j,
                        c2 * 0.5 * tau * g00.get(i, j),
                        &ops.stiffness,
                    );
                    add_kron_block(&mut a, m, i, j, -c2 * upwind, &ops.stiffness);
                    // (d_t v, w) + upwind + c^2 (grad u, grad w) = (f, w) + data.
                    add_kron_block(&mut a, m, vb + i, vb + j, upwind, &ops.mass);
                    add_kron_block(
                        &mut a,
                        m,
                        vb + i,
                        j,
                        c2 * 0.5 * tau * g00.get(i, j),
                        &ops.stiffness,
                    );
                }
            }
            let lu = LuFactors::factor(&a)
                .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
            cache = Some(SlabCache { tau, matrix: a, lu });
        }
        let cache_ref = cache.as_ref().unwrap();

        let mut rhs = vec![0.0; 2 * (q + 1) * m];
        let loads = time_loads(space, data.f, mesh.slab_bounds(n), &rule, 4);
        accumulate_source(&mut rhs[vb * m..], m, q, &rule, &loads, tau, 0);
        for i in 0..=q {
            let sign = endpoint_sign(i);
            for r in 0..m {
                rhs[i * m + r] -= c2 * sign * b_prev[r];
                rhs[(vb + i) * m + r] += sign * a_prev[r];
            }
        }

        let x = cache_ref
            .lu
            .solve(&rhs)
            .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
        residuals.push(residual_inf(&cache_ref.matrix, &x, &rhs));
        u.slab_coeffs_mut(n).copy_from_slice(&x[..(q + 1) * m]);
        v.slab_coeffs_mut(n).copy_from_slice(&x[(q + 1) * m..]);
        b_prev = ops.stiffness.matvec(&u.trace_right(n));
        a_prev = ops.mass.matvec(&v.trace_right(n));
    }

    Ok(Solution {
        u,
        v: Some(v),
        scheme: spec.scheme,
        slab_residuals: residuals,
        cfl_margin: None,
        reduction_defect: None,
    })
}

// ---------------------------------------------------------------------------
// Wave: DG-CG (Walkington)
// ---------------------------------------------------------------------------

/// Continuous degree-q trial field (q >= 2) with broken degree-(q-1) tests;
/// the velocity jump couples to the previous slab's d/dt trace and the left
/// nodal value is constrained, seeded with the Ritz projection of `u0`.
pub fn solve_wave_walkington(
    spec: &MethodSpec,
    space: &FeSpace,
    ops: &SpatialOperators,
    mesh: &TimeMesh,
    data: &ProblemData,
    rhs_points: Option<usize>,
) -> Result<Solution, MethodError> {
    expect_scheme(spec, Scheme::WaveWalkington)?;
    let q = spec.q;
    let m = space.num_interior_dofs();
    let c2 = spec.c * spec.c;
    let rule = QuadratureRule::gauss_legendre(rhs_points.unwrap_or(default_rhs_points(q)));
    let g20 = ref_time_matrix(q - 1, q, 0, 2);
    let g00 = ref_time_matrix(q - 1, q, 0, 0);
    let left = legendre_table(q, -1.0);
    let right = legendre_table(q, 1.0);

    let mut u = TimePolyField::zeros(mesh.clone(), q, m, Continuity::Continuous);
    let mut residuals = Vec::with_capacity(mesh.num_slabs());
    let mut cache: Option<SlabCache> = None;
    let mut u_prev = ops.solve_stiffness(&space.stiffness_load(&mut |x| (data.du0)(x), 4))?;
    let mut a_prev = space.load_vector(&mut |x| (data.v0)(x), 4);

    for n in 0..mesh.num_slabs() {
        let tau = mesh.width(n);
        let s = 2.0 / tau;
        if cache.as_ref().map(|c| !c.reusable(tau)).unwrap_or(true) {
            let mut a = DenseMatrix::zeros((q + 1) * m, (q + 1) * m);
            for i in 0..q {
                for j in 0..=q {
                    // (d_tt u, w) + (d_t u(t-), w(t-)) + c^2 (grad u, grad w).
                    let mass_term = s * g20.get(i, j) + s * left[j][1] * endpoint_sign(i);
                    add_kron_block(&mut a, m, i, j, mass_term, &ops.mass);
                    add_kron_block(
                        &mut a,
                        m,
                        i,
                        j,
                        c2 * 0.5 * tau * g00.get(i, j),
                        &ops.stiffness,
                    );
                }
            }
            for j in 0..=q {
                add_identity_block(&mut a, m, q, j, endpoint_sign(j));
            }
            let lu = LuFactors::factor(&a)
                .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
            cache = Some(SlabCache { tau, matrix: a, lu });
        }
        let cache_ref = cache.as_ref().unwrap();

        let mut rhs = vec![0.0; (q + 1) * m];
        let loads = time_loads(space, data.f, mesh.slab_bounds(n), &rule, 4);
        accumulate_source(&mut rhs[..q * m], m, q - 1, &rule, &loads, tau, 0);
        for i in 0..q {
            let sign = endpoint_sign(i);
            let block = &mut rhs[i * m..(i + 1) * m];
            for (o, w) in block.iter_mut().zip(&a_prev) {
                *o += sign * w;
            }
        }
        rhs[q * m..].copy_from_slice(&u_prev);

        let x = cache_ref
            .lu
            .solve(&rhs)
            .map_err(|source| MethodError::SingularSlabSystem { slab: n, source })?;
        residuals.push(residual_inf(&cache_ref.matrix, &x, &rhs));
        u.slab_coeffs_mut(n).copy_from_slice(&x);

        let mut du_trace = vec![0.0; m];
        for j in 0..=q {
            let w = s * right[j][1];
            for (o, c) in du_trace.iter_mut().zip(u.mode(n, j)) {
                *o += w * c;
            }
        }
        a_prev = ops.mass.matvec(&du_trace);
        u_prev = u.trace_right(n);
    }

    Ok(Solution {
        u,
        v: None,
        scheme: spec.scheme,
        slab_residuals: residuals,
        cfl_margin: None,
        reduction_defect: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(m: usize, p: usize, slabs: usize, t_end: f64) -> (FeSpace, SpatialOperators, TimeMesh) {
        let space = FeSpace::new(0.0, 1.0, m, p).unwrap();
        let ops = space.assemble().unwrap();
        let mesh = TimeMesh::uniform(t_end, slabs).unwrap();
        (space, ops, mesh)
    }

    fn zero_data() -> ProblemData<'static> {
        ProblemData {
            f: &|_, _| 0.0,
            u0: &|_| 0.0,
            du0: &|_| 0.0,
            v0: &|_| 0.0,
        }
    }

    /// Manufactured solution u = x(1-x) (t^q + shift) lying in the discrete
    /// space for p >= 2; evaluates the discrete error at sample points.
    fn poly_exactness_error(
        spec: &MethodSpec,
        shift: f64,
        space: &FeSpace,
        ops: &SpatialOperators,
        mesh: &TimeMesh,
    ) -> f64 {
        let q = spec.q;
        let qf = q as f64;
        let heat = spec.scheme.is_heat();
        let nu = spec.nu;
        let c2 = spec.c * spec.c;
        let tpow = move |t: f64, k: i32| -> f64 {
            let e = q as i32 + k;
            if e < 0 {
                0.0
            } else if e == 0 {
                1.0
            } else {
                t.powi(e)
            }
        };
        let u_exact = move |x: f64, t: f64| x * (1.0 - x) * (tpow(t, 0) + shift);
        let f_heat = move |x: f64, t: f64| {
            x * (1.0 - x) * qf * tpow(t, -1) + 2.0 * nu * (tpow(t, 0) + shift)
        };
        let f_wave = move |x: f64, t: f64| {
            x * (1.0 - x) * qf * (qf - 1.0) * tpow(t, -2) + 2.0 * c2 * (tpow(t, 0) + shift)
        };
        let f: &dyn Fn(f64, f64) -> f64 = if heat { &f_heat } else { &f_wave };
        let u0 = move |x: f64| u_exact(x, 0.0);
        let du0 = move |x: f64| (1.0 - 2.0 * x) * (tpow(0.0, 0) + shift);
        let v0 = move |x: f64| {
            if q == 1 {
                x * (1.0 - x)
            } else {
                0.0
            }
        };
        let data = ProblemData {
            f,
            u0: &u0,
            du0: &du0,
            v0: &v0,
        };
        let sol = solve(spec, space, ops, mesh, &data, None).unwrap();
        let mut worst = 0.0f64;
        for n in 0..mesh.num_slabs() {
            let (l, r) = mesh.slab_bounds(n);
            for kt in 0..=4 {
                let t = l + (r - l) * (0.1 + 0.8 * kt as f64 / 4.0);
                let dofs = sol.u.eval_in_slab(n, t).unwrap();
                for kx in 0..=6 {
                    let x = 0.05 + 0.9 * kx as f64 / 6.0;
                    let uh = space.evaluate(&dofs, x).unwrap();
                    worst = worst.max((uh - u_exact(x, t)).abs());
                }
            }
        }
        worst
    }

    #[test]
    fn zero_data_gives_zero_solutions() {
        let (space, ops, mesh) = setup(4, 1, 3, 1.0);
        let data = zero_data();
        for scheme in Scheme::all() {
            let mut spec = MethodSpec::new(scheme, scheme.min_degree().max(1), 1);
            if scheme == Scheme::WaveVanilla || scheme == Scheme::WaveWalkington {
                spec.q = 2;
            }
            spec.cfl_override = true;
            let sol = solve(&spec, &space, &ops, &mesh, &data, None).unwrap();
            assert!(
                sol.u.coeffs().iter().all(|c| c.abs() < 1e-12),
                "{}",
                scheme.name()
            );
            if let Some(v) = &sol.v {
                assert!(v.coeffs().iter().all(|c| c.abs() < 1e-12));
            }
        }
    }

    #[test]
    fn heat_jamet_polynomial_exactness() {
        let (space, ops, mesh) = setup(6, 2, 4, 1.0);
        for q in 0..=2usize {
            let mut spec = MethodSpec::new(Scheme::HeatJamet, q, 2);
            spec.nu = 0.7;
            let err = poly_exactness_error(&spec, 0.0, &space, &ops, &mesh);
            assert!(err < 1e-9, "q={q}: err={err:.3e}");
        }
    }

    #[test]
    fn heat_aziz_monk_polynomial_exactness() {
        let (space, ops, mesh) = setup(6, 2, 4, 1.0);
        for q in 1..=3usize {
            let mut spec = MethodSpec::new(Scheme::HeatAzizMonk, q, 2);
            spec.nu = 1.3;
            let err = poly_exactness_error(&spec, 0.0, &space, &ops, &mesh);
            assert!(err < 1e-9, "q={q}: err={err:.3e}");
        }
    }

    #[test]
    fn wave_vanilla_polynomial_exactness() {
        let (space, ops, mesh) = setup(6, 2, 4, 1.0);
        for q in 2..=3usize {
            let mut spec = MethodSpec::new(Scheme::WaveVanilla, q, 2);
            spec.c = 1.5;
            spec.cfl_override = true;
            let err = poly_exactness_error(&spec, 1.0, &space, &ops, &mesh);
            assert!(err < 1e-9, "q={q}: err={err:.3e}");
        }
    }

    #[test]
    fn wave_french_peterson_polynomial_exactness_and_reduction() {
        let (space, ops, mesh) = setup(6, 2, 4, 1.0);
        for q in 1..=2usize {
            let mut spec = MethodSpec::new(Scheme::WaveFrenchPeterson, q, 2);
            spec.c = 0.8;
            let err = poly_exactness_error(&spec, 1.0, &space, &ops, &mesh);
            assert!(err < 1e-9, "q={q}: err={err:.3e}");
        }
    }

    #[test]
    fn wave_johnson_polynomial_exactness() {
        let (space, ops, mesh) = setup(6, 2, 4, 1.0);
        for q in 1..=2usize {
            let mut spec = MethodSpec::new(Scheme::WaveJohnson, q, 2);
            spec.c = 1.2;
            let err = poly_exactness_error(&spec, 1.0, &space, &ops, &mesh);
            assert!(err < 1e-9, "q={q}: err={err:.3e}");
        }
    }

    #[test]
    fn wave_walkington_polynomial_exactness() {
        let (space, ops, mesh) = setup(6, 2, 4, 1.0);
        for q in 2..=3usize {
            let mut spec = MethodSpec::new(Scheme::WaveWalkington, q, 2);
            spec.c = 0.9;
            let err = poly_exactness_error(&spec, 1.0, &space, &ops, &mesh);
            assert!(err < 1e-9, "q={q}: err={err:.3e}");
        }
    }

    #[test]
    fn cfl_guard_fires_and_override_proceeds() {
        let (space, ops, mesh) = setup(16, 1, 2, 1.0);
        let mut spec = MethodSpec::new(Scheme::WaveVanilla, 2, 1);
        let data = zero_data();
        match solve(&spec, &space, &ops, &mesh, &data, None) {
            Err(MethodError::CflViolation { .. }) => {}
            other => panic!("expected CflViolation, got {:?}", other.map(|_| ())),
        }
        spec.cfl_override = true;
        let sol = solve(&spec, &space, &ops, &mesh, &data, None).unwrap();
        assert!(sol.cfl_margin.unwrap() < 1.0);
        assert_eq!(sol.slab_residuals.len(), 2);
        assert!(sol.slab_residuals.iter().all(|r| r.is_finite()));
    }

    #[test]
    fn slab_systems_nonsingular_across_parameter_grid() {
        let data = zero_data();
        for scheme in Scheme::all() {
            if scheme == Scheme::WaveVanilla {
                continue; // CFL-conditioned; covered separately
            }
            for &(q, p) in &[(1usize, 1usize), (2, 2), (3, 1)] {
                let q = q.max(scheme.min_degree());
                let (space, ops, mesh) = setup(5, p, 3, 0.8);
                let mut spec = MethodSpec::new(scheme, q, p);
                spec.nu = 0.01;
                spec.c = 3.0;
                let sol = solve(&spec, &space, &ops, &mesh, &data, None).unwrap();
                assert!(sol.slab_residuals.iter().all(|r| *r < 1e-9));
            }
        }
    }

    #[test]
    fn slab_prefix_reproduces_bitwise() {
        // The slab loop depends on earlier slabs only through traces, so
        // solving a prefix of the mesh reproduces the same coefficients
        // bit for bit; a full re-run is identical as well.
        let (space, ops, mesh) = setup(5, 2, 4, 1.0);
        let u_exact = |x: f64, t: f64| (std::f64::consts::PI * x).sin() * (-t).exp();
        let f = move |x: f64, t: f64| {
            (std::f64::consts::PI.powi(2) - 1.0) * u_exact(x, t)
        };
        let u0 = |x: f64| (std::f64::consts::PI * x).sin();
        let du0 = |x: f64| std::f64::consts::PI * (std::f64::consts::PI * x).cos();
        let v0 = |_x: f64| 0.0;
        let data = ProblemData {
            f: &f,
            u0: &u0,
            du0: &du0,
            v0: &v0,
        };
        let spec = MethodSpec::new(Scheme::HeatJamet, 1, 2);
        let full = solve(&spec, &space, &ops, &mesh, &data, None).unwrap();
        let again = solve(&spec, &space, &ops, &mesh, &data, None).unwrap();
        assert_eq!(full.u.coeffs(), again.u.coeffs());

        let prefix_mesh = TimeMesh::new(mesh.nodes()[..3].to_vec()).unwrap();
        let prefix = solve(&spec, &space, &ops, &prefix_mesh, &data, None).unwrap();
        let take = prefix.u.coeffs().len();
        assert_eq!(prefix.u.coeffs(), &full.u.coeffs()[..take]);
    }

    #[test]
    fn nonuniform_time_mesh_keeps_polynomial_exactness() {
        // Slab widths differ, so the cached factorization is rebuilt per
        // slab; exactness must be unaffected.
        let space = FeSpace::new(0.0, 1.0, 6, 2).unwrap();
        let ops = space.assemble().unwrap();
        let mesh = TimeMesh::new(vec![0.0, 0.13, 0.4, 0.45, 1.0]).unwrap();
        for (scheme, q) in [
            (Scheme::HeatJamet, 1),
            (Scheme::HeatAzizMonk, 2),
            (Scheme::WaveJohnson, 1),
            (Scheme::WaveWalkington, 2),
        ] {
            let mut spec = MethodSpec::new(scheme, q, 2);
            spec.nu = 0.6;
            spec.c = 1.4;
            let err = poly_exactness_error(&spec, 1.0, &space, &ops, &mesh);
            assert!(err < 1e-9, "{}: err={err:.3e}", scheme.name());
        }
    }

    #[test]
    fn spec_validation() {
        assert!(MethodSpec::new(Scheme::HeatAzizMonk, 0, 1).validate().is_err());
        assert!(MethodSpec::new(Scheme::WaveVanilla, 1, 1).validate().is_err());
        assert!(MethodSpec::new(Scheme::WaveWalkington, 1, 1).validate().is_err());
        let mut bad_nu = MethodSpec::new(Scheme::HeatJamet, 1, 1);
        bad_nu.nu = 0.0;
        assert!(bad_nu.validate().is_err());
        let mut bad_delta = MethodSpec::new(Scheme::WaveJohnson, 1, 1);
        bad_delta.delta = 0.5;
        assert!(bad_delta.validate().is_err());
    }
}
