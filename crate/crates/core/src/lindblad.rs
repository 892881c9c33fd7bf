//! Dissipative master-equation engine.
//!
//! The equation of motion is
//!
//! ```text
//! dρ/dt = (1/i)[H, ρ] - κ L[c]ρ - γ L[σ_-]ρ - (n_th + 1) μ L[b]ρ - n_th μ L[b†]ρ
//! L[o]ρ = o†oρ/2 - oρo† + ρo†o/2
//! ```
//!
//! with both heat baths on the optical/atomic side at zero occupation and a
//! thermal mechanical bath of occupation `n_th`. Integration is classic
//! fixed-step fourth-order Runge-Kutta with per-step re-Hermitization and
//! per-sample health diagnostics; [`oracle_evolve`] provides an independent
//! exact-exponential reference for validating the integrator.

use thiserror::Error;

use crate::hilbert::{
    annihilation, build_hamiltonian, embed, initial_state, sigma_minus, DensityMatrix,
    HilbertError, Slot, SystemParams,
};
use crate::linalg::{matrix_exp, ComplexMatrix, LinalgError, C64};
use crate::observables::ObservableSet;

/// Default integration step, in `1/omega_m`.
pub const DEFAULT_DT: f64 = 0.005;
/// Largest accepted integration step.
pub const MAX_DT: f64 = 0.02;
/// Default sampling stride (record every k-th step).
pub const DEFAULT_SAMPLE_STRIDE: usize = 10;
/// Largest composite dimension accepted by [`oracle_evolve`].
pub const ORACLE_MAX_DIM: usize = 64;

/// Trace-error bound beyond which a run is aborted.
pub const TRACE_ABORT_TOL: f64 = 1e-6;
/// Eigenvalue floor beyond which a run is aborted.
pub const MIN_EIG_ABORT: f64 = -1e-5;

#[derive(Debug, Clone, Error)]
pub enum EngineError {
    #[error("dimension mismatch: {context} is {got}, expected {expected}")]
    DimensionMismatch { context: &'static str, expected: usize, got: usize },
    #[error("dimension {dim} exceeds the oracle cap {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("invalid evolution spec: {0}")]
    InvalidSpec(String),
    #[error("unstable integration at t = {t}: trace error {trace_error:.3e}, min eigenvalue {min_eig:.3e}")]
    UnstableIntegration { t: f64, trace_error: f64, min_eig: f64, partial: TimeSeries },
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Observable(#[from] crate::observables::ObservableError),
}

/// How long, how finely, and how often to record.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionSpec {
    pub params: SystemParams,
    /// End time, in `1/omega_m`.
    pub t_end: f64,
    /// Integration step, in `1/omega_m`.
    pub dt: f64,
    /// Record every `sample_stride`-th step.
    pub sample_stride: usize,
}

impl EvolutionSpec {
    /// Defaults: two modulation periods (`t_end = 4π/g_cm`), `dt = 0.005`,
    /// stride 10.
    pub fn new(params: SystemParams) -> Self {
        let t_end = default_t_end(&params);
        Self { params, t_end, dt: DEFAULT_DT, sample_stride: DEFAULT_SAMPLE_STRIDE }
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        self.params.validate()?;
        if self.dt.is_nan() || self.t_end.is_nan() || self.dt <= 0.0 || self.dt > self.t_end {
            return Err(EngineError::InvalidSpec(format!(
                "dt must satisfy 0 < dt <= t_end, got dt = {}, t_end = {}",
                self.dt, self.t_end
            )));
        }
        if self.dt > MAX_DT {
            return Err(EngineError::InvalidSpec(format!(
                "dt = {} exceeds the step guard {MAX_DT}",
                self.dt
            )));
        }
        if self.sample_stride == 0 {
            return Err(EngineError::InvalidSpec("sample_stride must be at least 1".into()));
        }
        Ok(())
    }
}

/// Two modulation periods of the slow envelope, or a fixed window when the
/// optomechanical coupling vanishes.
pub fn default_t_end(params: &SystemParams) -> f64 {
    if params.g_cm > 0.0 {
        4.0 * std::f64::consts::PI / params.g_cm
    } else {
        100.0
    }
}

/// One recorded sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRow {
    /// Sample time, in `1/omega_m`.
    pub t: f64,
    /// Population inversion `Tr[ρ σ_z]`.
    pub delta_p: f64,
    /// Phonon number `Tr[ρ b†b]`.
    pub n_b: f64,
    /// Photon number `Tr[ρ c†c]`.
    pub n_c: f64,
    /// `Tr ρ - 1`.
    pub trace_error: f64,
    /// Max-entry `|ρ - ρ†|`.
    pub herm_error: f64,
    /// Smallest eigenvalue of ρ.
    pub min_eig: f64,
}

/// Sampled observables and diagnostics over a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TimeSeries {
    pub rows: Vec<SampleRow>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// The dissipator `L[o]ρ = o†oρ/2 - oρo† + ρo†o/2`.
///
/// Note the overall minus signs it carries in the equation of motion; its
/// output is traceless.
pub fn dissipator(op: &ComplexMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix, EngineError> {
    if op.dim() != rho.dim() {
        return Err(EngineError::DimensionMismatch {
            context: "dissipator operator dimension",
            expected: rho.dim(),
            got: op.dim(),
        });
    }
    let op_dag = op.dagger();
    let dd = op_dag.mul(op);
    let mut out = dd.mul(rho);
    out.add_scaled(C64::new(1.0, 0.0), &rho.mul_rhs_sparse(&dd));
    out = &out * C64::new(0.5, 0.0);
    out.add_scaled(C64::new(-1.0, 0.0), &op.mul(rho).mul_rhs_sparse(&op_dag));
    Ok(out)
}

/// Right-hand side of the master equation for fixed parameters.
///
/// The commutator and the anticommutator halves of every dissipation channel
/// are folded into a single effective operator `K = H - (i/2) Σ r o†o`, so
/// one evaluation costs two products with `K` plus two per jump term.
pub struct Liouvillian {
    dim: usize,
    k_op: ComplexMatrix,
    k_dag: ComplexMatrix,
    /// (rate, o, o†) per decay channel with a nonzero rate.
    channels: Vec<(f64, ComplexMatrix, ComplexMatrix)>,
}

impl Liouvillian {
    pub fn new(p: &SystemParams, hamiltonian: &ComplexMatrix) -> Result<Self, EngineError> {
        let dim = p.dims();
        if hamiltonian.dim() != dim {
            return Err(EngineError::DimensionMismatch {
                context: "Hamiltonian dimension",
                expected: dim,
                got: hamiltonian.dim(),
            });
        }
        let c = embed(&annihilation(p.d_c)?, Slot::Cavity, p)?;
        let sm = embed(&sigma_minus(), Slot::Atom, p)?;
        let b = embed(&annihilation(p.d_m)?, Slot::Mech, p)?;
        let b_dag = b.dagger();

        let mut channels = Vec::new();
        for (rate, op) in [
            (p.kappa, c),
            (p.gamma, sm),
            ((p.n_th + 1.0) * p.mu, b),
            (p.n_th * p.mu, b_dag),
        ] {
            if rate > 0.0 {
                let op_dag = op.dagger();
                channels.push((rate, op, op_dag));
            }
        }

        let mut k_op = hamiltonian.clone();
        for (rate, op, op_dag) in &channels {
            let dd = op_dag.mul(op);
            k_op.add_scaled(C64::new(0.0, -rate / 2.0), &dd);
        }
        let k_dag = k_op.dagger();
        Ok(Self { dim, k_op, k_dag, channels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluate `dρ/dt` for the stored parameters.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        // -i (K ρ - ρ K†) reproduces the commutator and every
        // anticommutator term for arbitrary (not necessarily Hermitian) ρ.
        let mut out = &self.k_op.mul(rho) * C64::new(0.0, -1.0);
        out.add_scaled(C64::new(0.0, 1.0), &rho.mul_rhs_sparse(&self.k_dag));
        for (rate, op, op_dag) in &self.channels {
            let jump = op.mul(rho).mul_rhs_sparse(op_dag);
            out.add_scaled(C64::new(*rate, 0.0), &jump);
        }
        out
    }
}

/// Full right-hand side of the master equation at the given state.
pub fn liouvillian_apply(
    rho: &ComplexMatrix,
    p: &SystemParams,
    hamiltonian: &ComplexMatrix,
) -> Result<ComplexMatrix, EngineError> {
    if rho.dim() != p.dims() {
        return Err(EngineError::DimensionMismatch {
            context: "density matrix dimension",
            expected: p.dims(),
            got: rho.dim(),
        });
    }
    Ok(Liouvillian::new(p, hamiltonian)?.apply(rho))
}

/// Classic fixed-step fourth-order integration of the master equation.
///
/// The step count is chosen so the grid lands exactly on `t_end`. The state
/// is replaced by `(ρ + ρ†)/2` after every step; diagnostics are taken on
/// the raw step output. Aborts with the partial series if the trace error
/// exceeds [`TRACE_ABORT_TOL`] or an eigenvalue falls below
/// [`MIN_EIG_ABORT`] at any sample.
pub fn integrate(rho0: &DensityMatrix, spec: &EvolutionSpec) -> Result<TimeSeries, EngineError> {
    rk4_run(rho0, spec).map(|(series, _)| series)
}

/// Same as [`integrate`], also returning the state at `t_end`.
pub fn integrate_final(
    rho0: &DensityMatrix,
    spec: &EvolutionSpec,
) -> Result<(TimeSeries, ComplexMatrix), EngineError> {
    rk4_run(rho0, spec)
}

fn rk4_run(
    rho0: &DensityMatrix,
    spec: &EvolutionSpec,
) -> Result<(TimeSeries, ComplexMatrix), EngineError> {
    spec.validate()?;
    let p = &spec.params;
    if rho0.dim() != p.dims() {
        return Err(EngineError::DimensionMismatch {
            context: "initial state dimension",
            expected: p.dims(),
            got: rho0.dim(),
        });
    }
    let hamiltonian = build_hamiltonian(p);
    let liou = Liouvillian::new(p, &hamiltonian)?;

    let n_steps = ((spec.t_end / spec.dt).round() as usize).max(1);
    let h = spec.t_end / n_steps as f64;
    let half = C64::new(h / 2.0, 0.0);
    let sixth = C64::new(h / 6.0, 0.0);
    let third = C64::new(h / 3.0, 0.0);

    let mut rho = rho0.matrix().clone();
    let mut series = TimeSeries { rows: Vec::with_capacity(n_steps / spec.sample_stride + 2) };
    record_sample(0.0, &rho, p, &mut series)?;

    let mut stage = rho.clone();
    for step in 1..=n_steps {
        let k1 = liou.apply(&rho);
        stage.clone_from(&rho);
        stage.add_scaled(half, &k1);
        let k2 = liou.apply(&stage);
        stage.clone_from(&rho);
        stage.add_scaled(half, &k2);
        let k3 = liou.apply(&stage);
        stage.clone_from(&rho);
        stage.add_scaled(C64::new(h, 0.0), &k3);
        let k4 = liou.apply(&stage);

        rho.add_scaled(sixth, &k1);
        rho.add_scaled(third, &k2);
        rho.add_scaled(third, &k3);
        rho.add_scaled(sixth, &k4);

        if step % spec.sample_stride == 0 || step == n_steps {
            let t = if step == n_steps { spec.t_end } else { step as f64 * h };
            record_sample(t, &rho, p, &mut series)?;
        }
        rho.hermitize();
    }
    Ok((series, rho))
}

fn record_sample(
    t: f64,
    rho: &ComplexMatrix,
    p: &SystemParams,
    series: &mut TimeSeries,
) -> Result<(), EngineError> {
    let obs = ObservableSet::measure(rho, p)?;
    let row = SampleRow {
        t,
        delta_p: obs.delta_p,
        n_b: obs.n_b,
        n_c: obs.n_c,
        trace_error: obs.trace_error,
        herm_error: obs.herm_error,
        min_eig: obs.min_eig,
    };
    series.rows.push(row);
    if row.trace_error.abs() > TRACE_ABORT_TOL || row.min_eig < MIN_EIG_ABORT {
        return Err(EngineError::UnstableIntegration {
            t,
            trace_error: row.trace_error,
            min_eig: row.min_eig,
            partial: std::mem::take(series),
        });
    }
    Ok(())
}

/// Evolve by exponentiating the vectorized generator: ρ is stacked
/// column-wise, the superoperator matrix is assembled by applying the
/// equation of motion to every basis matrix, and `exp(L t)` is applied to
/// the vectorized state.
pub fn oracle_evolve(
    rho0: &DensityMatrix,
    p: &SystemParams,
    t: f64,
) -> Result<DensityMatrix, EngineError> {
    let dim = p.dims();
    if dim > ORACLE_MAX_DIM {
        return Err(EngineError::DimensionTooLarge { dim, max: ORACLE_MAX_DIM });
    }
    if rho0.dim() != dim {
        return Err(EngineError::DimensionMismatch {
            context: "initial state dimension",
            expected: dim,
            got: rho0.dim(),
        });
    }
    let hamiltonian = build_hamiltonian(p);
    let liou = Liouvillian::new(p, &hamiltonian)?;

    let n2 = dim * dim;
    let mut superop = ComplexMatrix::zeros(n2);
    for col in 0..dim {
        for row in 0..dim {
            let k = col * dim + row;
            let image = liou.apply(&ComplexMatrix::basis_matrix(dim, row, col));
            for c2 in 0..dim {
                for r2 in 0..dim {
                    superop.set(c2 * dim + r2, k, image.get(r2, c2));
                }
            }
        }
    }
    let propagator = matrix_exp(&(&superop * C64::new(t, 0.0)))?;

    let mut vec_rho = vec![C64::new(0.0, 0.0); n2];
    for col in 0..dim {
        for row in 0..dim {
            vec_rho[col * dim + row] = rho0.matrix().get(row, col);
        }
    }
    let evolved = propagator.mul_vec(&vec_rho);
    let mut out = ComplexMatrix::zeros(dim);
    for col in 0..dim {
        for row in 0..dim {
            out.set(row, col, evolved[col * dim + row]);
        }
    }
    Ok(DensityMatrix::new(out)?)
}

/// Truncation sensitivity of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    pub d_m_low: usize,
    pub d_m_high: usize,
    /// Sup-norm difference of the inversion over the common time grid.
    pub max_delta_p_dev: f64,
    /// Sup-norm difference of the phonon number over the common time grid.
    pub max_n_b_dev: f64,
}

/// Integrate at `d_m` and `d_m + d_m_step` and report the sup-norm
/// differences of the shared observables.
pub fn convergence_check(spec: &EvolutionSpec, d_m_step: usize) -> Result<ConvergenceReport, EngineError> {
    if d_m_step == 0 {
        return Err(EngineError::InvalidSpec("d_m_step must be at least 1".into()));
    }
    let low = run_at(spec, spec.params.d_m)?;
    let high = run_at(spec, spec.params.d_m + d_m_step)?;
    if low.len() != high.len() {
        return Err(EngineError::InvalidSpec("sample grids of the two runs differ".into()));
    }
    let mut max_dp = 0.0f64;
    let mut max_nb = 0.0f64;
    for (a, b) in low.rows.iter().zip(&high.rows) {
        max_dp = max_dp.max((a.delta_p - b.delta_p).abs());
        max_nb = max_nb.max((a.n_b - b.n_b).abs());
    }
    Ok(ConvergenceReport {
        d_m_low: spec.params.d_m,
        d_m_high: spec.params.d_m + d_m_step,
        max_delta_p_dev: max_dp,
        max_n_b_dev: max_nb,
    })
}

fn run_at(spec: &EvolutionSpec, d_m: usize) -> Result<TimeSeries, EngineError> {
    let params = SystemParams { d_m, ..spec.params.clone() };
    let rho0 = initial_state(&params)?;
    integrate(&rho0, &EvolutionSpec { params, ..spec.clone() })
}
