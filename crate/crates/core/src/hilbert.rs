//! Truncated composite Hilbert space: cavity ⊗ atom ⊗ mechanics.
//!
//! The tensor-factor order is fixed as cavity ⊗ atom ⊗ mechanics with the
//! atomic basis ordered (|e⟩, |g⟩), so a composite basis index decomposes as
//! `i = (n_c * 2 + s) * d_m + n_m` with `s = 0 ↔ |e⟩` and `s = 1 ↔ |g⟩`.

use thiserror::Error;

use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, C64};

/// Reference frame for the Hamiltonian.
///
/// In the frame rotating at the cavity frequency the optical and atomic
/// bare terms reduce to the detuning `omega_a - omega_c`; populations and
/// the phonon number are unaffected by the frame choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Lab,
    RotatingAtCavity,
}

/// Tensor slot of the composite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Cavity,
    Atom,
    Mech,
}

/// Physical rates and frequencies, in units of the mechanical frequency
/// `omega_m = 1`, plus truncation dimensions and frame choice.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    /// Cavity frequency.
    pub omega_c: f64,
    /// Atomic transition frequency.
    pub omega_a: f64,
    /// Mechanical frequency; fixes the unit system and must equal 1.
    pub omega_m: f64,
    /// Atom-cavity coupling.
    pub g_ca: f64,
    /// Cavity-mechanics (radiation-pressure) coupling.
    pub g_cm: f64,
    /// Optical cavity decay rate.
    pub kappa: f64,
    /// Atomic decay rate.
    pub gamma: f64,
    /// Mechanical decay rate.
    pub mu: f64,
    /// Thermal occupation of the mechanical bath.
    pub n_th: f64,
    /// Initial thermal occupation of the mechanical resonator.
    pub n_th0: f64,
    /// Cavity truncation dimension.
    pub d_c: usize,
    /// Mechanical truncation dimension.
    pub d_m: usize,
    pub frame: Frame,
}

impl Default for SystemParams {
    /// Resonant closed-system parameter set: `g_ca = 0.5`, `g_cm = 0.1`,
    /// `omega_a = omega_c`, no dissipation.
    fn default() -> Self {
        Self {
            omega_c: 0.0,
            omega_a: 0.0,
            omega_m: 1.0,
            g_ca: 0.5,
            g_cm: 0.1,
            kappa: 0.0,
            gamma: 0.0,
            mu: 0.0,
            n_th: 0.0,
            n_th0: 0.0,
            d_c: 2,
            d_m: 6,
            frame: Frame::RotatingAtCavity,
        }
    }
}

impl SystemParams {
    /// Full composite dimension `d_c * 2 * d_m`.
    pub fn dims(&self) -> usize {
        self.d_c * 2 * self.d_m
    }

    /// Composite index of the basis state `|n_c, s, n_m⟩`.
    pub fn index(&self, n_c: usize, s: usize, n_m: usize) -> usize {
        (n_c * 2 + s) * self.d_m + n_m
    }

    /// Decode a composite index into `(n_c, s, n_m)`.
    pub fn decode(&self, i: usize) -> (usize, usize, usize) {
        let n_m = i % self.d_m;
        let rest = i / self.d_m;
        (rest / 2, rest % 2, n_m)
    }

    pub fn validate(&self) -> Result<(), HilbertError> {
        let nonneg: [(&str, f64); 7] = [
            ("g_ca", self.g_ca),
            ("g_cm", self.g_cm),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
            ("mu", self.mu),
            ("n_th", self.n_th),
            ("n_th0", self.n_th0),
        ];
        for (name, value) in nonneg {
            if value.is_nan() || value < 0.0 {
                return Err(HilbertError::InvalidParameter {
                    name,
                    message: format!("must be nonnegative, got {value}"),
                });
            }
        }
        if self.omega_m != 1.0 {
            return Err(HilbertError::InvalidParameter {
                name: "omega_m",
                message: format!("fixes the unit system and must equal 1, got {}", self.omega_m),
            });
        }
        if !self.omega_c.is_finite() || !self.omega_a.is_finite() {
            return Err(HilbertError::InvalidParameter {
                name: "omega_c/omega_a",
                message: "must be finite".into(),
            });
        }
        if self.d_c < 2 {
            return Err(HilbertError::BadDimension { dim: self.d_c });
        }
        if self.d_m < 2 {
            return Err(HilbertError::BadDimension { dim: self.d_m });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum HilbertError {
    #[error("bad dimension {dim}: truncation dimensions must be at least 2")]
    BadDimension { dim: usize },
    #[error("dimension mismatch: operator is {got}x{got} but the {slot:?} slot needs {expected}x{expected}")]
    DimensionMismatch { slot: Slot, expected: usize, got: usize },
    #[error("bad occupation {nbar}: thermal occupation must be nonnegative")]
    BadOccupation { nbar: f64 },
    #[error("invalid parameter {name}: {message}")]
    InvalidParameter { name: &'static str, message: String },
    #[error("density matrix violates {what}: {value:.3e} (limit {limit:.3e})")]
    InvalidState { what: &'static str, value: f64, limit: f64 },
}

/// Bosonic annihilation operator on a `d`-dimensional Fock space:
/// `a[n, n+1] = sqrt(n + 1)`.
pub fn annihilation(d: usize) -> Result<ComplexMatrix, HilbertError> {
    if d < 2 {
        return Err(HilbertError::BadDimension { dim: d });
    }
    let mut a = ComplexMatrix::zeros(d);
    for n in 0..d - 1 {
        a.set(n, n + 1, C64::new(((n + 1) as f64).sqrt(), 0.0));
    }
    Ok(a)
}

/// `σ_z = |e⟩⟨e| - |g⟩⟨g|` in the (|e⟩, |g⟩) basis.
pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_diag(&[1.0, -1.0])
}

/// `σ_+ = |e⟩⟨g|`.
pub fn sigma_plus() -> ComplexMatrix {
    ComplexMatrix::basis_matrix(2, 0, 1)
}

/// `σ_- = |g⟩⟨e|`.
pub fn sigma_minus() -> ComplexMatrix {
    ComplexMatrix::basis_matrix(2, 1, 0)
}

/// `|e⟩⟨e|`.
pub fn projector_excited() -> ComplexMatrix {
    ComplexMatrix::basis_matrix(2, 0, 0)
}

/// Embed a single-subsystem operator into the composite space.
pub fn embed(op: &ComplexMatrix, slot: Slot, p: &SystemParams) -> Result<ComplexMatrix, HilbertError> {
    let expected = match slot {
        Slot::Cavity => p.d_c,
        Slot::Atom => 2,
        Slot::Mech => p.d_m,
    };
    if op.dim() != expected {
        return Err(HilbertError::DimensionMismatch { slot, expected, got: op.dim() });
    }
    let ic = ComplexMatrix::identity(p.d_c);
    let ia = ComplexMatrix::identity(2);
    let im = ComplexMatrix::identity(p.d_m);
    Ok(match slot {
        Slot::Cavity => op.kron(&ia).kron(&im),
        Slot::Atom => ic.kron(op).kron(&im),
        Slot::Mech => ic.kron(&ia).kron(op),
    })
}

/// Full Hamiltonian of the hybrid system:
///
/// `H = w_c c†c + (w_a/2) σ_z + g_ca (σ_+ c + σ_- c†) + omega_m b†b
///      - g_cm c†c (b + b†)`
///
/// with `w_c = 0`, `w_a = omega_a - omega_c` in the rotating frame, and the
/// bare frequencies in the lab frame.
pub fn build_hamiltonian(p: &SystemParams) -> ComplexMatrix {
    let (w_c, w_a) = match p.frame {
        Frame::Lab => (p.omega_c, p.omega_a),
        Frame::RotatingAtCavity => (0.0, p.omega_a - p.omega_c),
    };
    hamiltonian_with_frequencies(p, w_c, w_a)
}

/// Atom-cavity part only (lab-frame frequencies), extended by the identity on
/// the mechanical factor. Its restriction to the single-excitation subspace
/// is diagonalized by the dressed states.
pub fn atom_cavity_hamiltonian(p: &SystemParams) -> ComplexMatrix {
    let c = embed(&annihilation(p.d_c).expect("d_c >= 2"), Slot::Cavity, p).expect("cavity op");
    let c_dag = c.dagger();
    let num_c = c_dag.mul(&c);
    let sz = embed(&sigma_z(), Slot::Atom, p).expect("atom op");
    let sp = embed(&sigma_plus(), Slot::Atom, p).expect("atom op");
    let sm = embed(&sigma_minus(), Slot::Atom, p).expect("atom op");

    let mut h = &num_c * C64::new(p.omega_c, 0.0);
    h.add_scaled(C64::new(p.omega_a / 2.0, 0.0), &sz);
    h.add_scaled(C64::new(p.g_ca, 0.0), &sp.mul(&c));
    h.add_scaled(C64::new(p.g_ca, 0.0), &sm.mul(&c_dag));
    h
}

fn hamiltonian_with_frequencies(p: &SystemParams, w_c: f64, w_a: f64) -> ComplexMatrix {
    let c = embed(&annihilation(p.d_c).expect("d_c >= 2"), Slot::Cavity, p).expect("cavity op");
    let c_dag = c.dagger();
    let num_c = c_dag.mul(&c);
    let sz = embed(&sigma_z(), Slot::Atom, p).expect("atom op");
    let sp = embed(&sigma_plus(), Slot::Atom, p).expect("atom op");
    let sm = embed(&sigma_minus(), Slot::Atom, p).expect("atom op");
    let b = embed(&annihilation(p.d_m).expect("d_m >= 2"), Slot::Mech, p).expect("mech op");
    let b_dag = b.dagger();
    let num_b = b_dag.mul(&b);

    let mut h = &num_c * C64::new(w_c, 0.0);
    h.add_scaled(C64::new(w_a / 2.0, 0.0), &sz);
    h.add_scaled(C64::new(p.g_ca, 0.0), &sp.mul(&c));
    h.add_scaled(C64::new(p.g_ca, 0.0), &sm.mul(&c_dag));
    h.add_scaled(C64::new(p.omega_m, 0.0), &num_b);
    h.add_scaled(C64::new(-p.g_cm, 0.0), &num_c.mul(&(&b + &b_dag)));
    h
}

/// Conserved excitation number `N = c†c + |e⟩⟨e|`.
pub fn excitation_number(p: &SystemParams) -> ComplexMatrix {
    let c = embed(&annihilation(p.d_c).expect("d_c >= 2"), Slot::Cavity, p).expect("cavity op");
    let num_c = c.dagger().mul(&c);
    let pe = embed(&projector_excited(), Slot::Atom, p).expect("atom op");
    &num_c + &pe
}

/// Thermal state of a truncated bosonic mode: diagonal weights proportional
/// to `(nbar / (1 + nbar))^n`, renormalized to unit trace after truncation.
pub fn thermal_state(d: usize, nbar: f64) -> Result<ComplexMatrix, HilbertError> {
    if d < 2 {
        return Err(HilbertError::BadDimension { dim: d });
    }
    if nbar.is_nan() || nbar < 0.0 {
        return Err(HilbertError::BadOccupation { nbar });
    }
    let x = nbar / (1.0 + nbar);
    let mut weights = Vec::with_capacity(d);
    let mut w = 1.0f64;
    for _ in 0..d {
        weights.push(w);
        w *= x;
    }
    let norm: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= norm;
    }
    Ok(ComplexMatrix::from_diag(&weights))
}

/// Initial state `|0⟩⟨0|_c ⊗ |e⟩⟨e|_a ⊗ thermal(d_m, n_th0)`.
///
/// For `n_th0 = 0` this is the pure state `|0, e, 0⟩`.
pub fn initial_state(p: &SystemParams) -> Result<DensityMatrix, HilbertError> {
    p.validate()?;
    let rho_c = ComplexMatrix::basis_matrix(p.d_c, 0, 0);
    let rho_a = projector_excited();
    let rho_m = thermal_state(p.d_m, p.n_th0)?;
    DensityMatrix::new(rho_c.kron(&rho_a).kron(&rho_m))
}

/// Trace tolerance accepted by [`DensityMatrix::new`].
pub const DENSITY_TRACE_TOL: f64 = 1e-9;
/// Hermiticity tolerance accepted by [`DensityMatrix::new`].
pub const DENSITY_HERM_TOL: f64 = 1e-9;
/// Eigenvalue floor accepted by [`DensityMatrix::new`] (truncation and
/// integration slack).
pub const DENSITY_MIN_EIG: f64 = -1e-7;

/// A density matrix: unit trace, Hermitian, positive semidefinite within the
/// slacks above.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self, HilbertError> {
        if !mat.is_finite() {
            return Err(HilbertError::InvalidState { what: "finiteness", value: f64::NAN, limit: 0.0 });
        }
        let trace_err = (mat.trace().re - 1.0).abs().max(mat.trace().im.abs());
        if trace_err > DENSITY_TRACE_TOL {
            return Err(HilbertError::InvalidState {
                what: "unit trace",
                value: trace_err,
                limit: DENSITY_TRACE_TOL,
            });
        }
        let defect = mat.herm_defect();
        if defect > DENSITY_HERM_TOL {
            return Err(HilbertError::InvalidState {
                what: "Hermiticity",
                value: defect,
                limit: DENSITY_HERM_TOL,
            });
        }
        let eigs = hermitian_eigenvalues(&mat, DENSITY_HERM_TOL)
            .expect("Hermiticity already checked");
        let min_eig = eigs.first().copied().unwrap_or(0.0);
        if min_eig < DENSITY_MIN_EIG {
            return Err(HilbertError::InvalidState {
                what: "positivity",
                value: min_eig,
                limit: DENSITY_MIN_EIG,
            });
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn one() -> C64 {
        C64::new(1.0, 0.0)
    }

    #[test]
    fn annihilation_qubit_size() {
        let a = annihilation(2).unwrap();
        assert_eq!(a.get(0, 1), one());
        assert_eq!(a.get(0, 0), C64::new(0.0, 0.0));
        assert_eq!(a.get(1, 0), C64::new(0.0, 0.0));
        assert_eq!(a.get(1, 1), C64::new(0.0, 0.0));
    }

    #[test]
    fn annihilation_matrix_elements() {
        let a = annihilation(3).unwrap();
        assert_eq!(a.get(0, 1), one());
        assert_eq!(a.get(1, 2), C64::new(2f64.sqrt(), 0.0));
    }

    #[test]
    fn number_operator_from_ladder() {
        let d = 5;
        let a = annihilation(d).unwrap();
        let n = a.dagger().mul(&a);
        let expected = ComplexMatrix::from_diag(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        assert!((&n - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn annihilation_rejects_small_dimension() {
        assert!(matches!(annihilation(1), Err(HilbertError::BadDimension { dim: 1 })));
    }

    #[test]
    fn embed_identity_is_identity() {
        let p = SystemParams::default();
        for (slot, d) in [(Slot::Cavity, p.d_c), (Slot::Atom, 2), (Slot::Mech, p.d_m)] {
            let full = embed(&ComplexMatrix::identity(d), slot, &p).unwrap();
            assert_eq!(full, ComplexMatrix::identity(p.dims()));
        }
    }

    #[test]
    fn embed_sigma_z_ordering() {
        let p = SystemParams { d_c: 2, d_m: 2, ..SystemParams::default() };
        let sz = embed(&sigma_z(), Slot::Atom, &p).unwrap();
        let expected = ComplexMatrix::from_diag(&[1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0]);
        assert!((&sz - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn embed_product_matches_kron_identity() {
        let mut rng = StdRng::seed_from_u64(41);
        let p = SystemParams { d_c: 3, d_m: 2, ..SystemParams::default() };
        let a = ComplexMatrix::from_fn(3, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let b = ComplexMatrix::from_fn(2, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let lhs = embed(&a, Slot::Cavity, &p).unwrap().mul(&embed(&b, Slot::Mech, &p).unwrap());
        let rhs = a.kron(&ComplexMatrix::identity(2)).kron(&b);
        assert!((&lhs - &rhs).max_abs() < 1e-13);
    }

    #[test]
    fn embed_rejects_mismatched_operator() {
        let p = SystemParams::default();
        let op = ComplexMatrix::identity(3);
        assert!(matches!(
            embed(&op, Slot::Atom, &p),
            Err(HilbertError::DimensionMismatch { expected: 2, got: 3, .. })
        ));
    }

    #[test]
    fn hamiltonian_jaynes_cummings_element() {
        let p = SystemParams::default();
        let h = build_hamiltonian(&p);
        let row = p.index(1, 1, 0); // |1, g, 0⟩
        let col = p.index(0, 0, 0); // |0, e, 0⟩
        assert!((h.get(row, col) - C64::new(p.g_ca, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hamiltonian_radiation_pressure_element() {
        let p = SystemParams::default();
        let h = build_hamiltonian(&p);
        let row = p.index(1, 1, 1); // |1, g, 1⟩
        let col = p.index(1, 1, 0); // |1, g, 0⟩
        assert!((h.get(row, col) - C64::new(-p.g_cm, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hamiltonian_decoupled_diagonal_case() {
        let p = SystemParams { g_ca: 0.0, g_cm: 0.0, ..SystemParams::default() };
        let h = build_hamiltonian(&p);
        // Rotating frame on resonance: only omega_m b†b remains, so the
        // spectrum is n_m repeated across every cavity/atom branch.
        for i in 0..p.dims() {
            for j in 0..p.dims() {
                if i != j {
                    assert_eq!(h.get(i, j), C64::new(0.0, 0.0));
                }
            }
            let (_, _, n_m) = p.decode(i);
            assert!((h.get(i, i).re - n_m as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        for frame in [Frame::Lab, Frame::RotatingAtCavity] {
            let p = SystemParams {
                omega_c: 0.7,
                omega_a: 0.63,
                g_ca: 0.48,
                g_cm: 0.17,
                frame,
                ..SystemParams::default()
            };
            assert!(build_hamiltonian(&p).herm_defect() <= 1e-12);
        }
    }

    #[test]
    fn excitation_number_is_conserved() {
        for frame in [Frame::Lab, Frame::RotatingAtCavity] {
            let p = SystemParams {
                omega_c: 0.9,
                omega_a: 0.83,
                g_ca: 0.44,
                g_cm: 0.12,
                d_m: 4,
                frame,
                ..SystemParams::default()
            };
            let h = build_hamiltonian(&p);
            let n = excitation_number(&p);
            let comm = &h.mul(&n) - &n.mul(&h);
            assert!(comm.max_abs() <= 1e-12);
        }
    }

    #[test]
    fn excitation_number_expectations() {
        let p = SystemParams::default();
        let n = excitation_number(&p);
        let e1 = p.index(0, 0, 0); // |0, e, 0⟩
        let e2 = p.index(1, 1, 0); // |1, g, 0⟩
        assert!((n.get(e1, e1).re - 1.0).abs() < 1e-15);
        assert!((n.get(e2, e2).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn frame_difference_is_excitation_number_plus_identity() {
        let p_lab = SystemParams {
            omega_c: 0.8,
            omega_a: 0.8,
            frame: Frame::Lab,
            ..SystemParams::default()
        };
        let p_rot = SystemParams { frame: Frame::RotatingAtCavity, ..p_lab.clone() };
        let diff = &build_hamiltonian(&p_lab) - &build_hamiltonian(&p_rot);
        let mut expected = excitation_number(&p_lab);
        expected = &expected * C64::new(p_lab.omega_c, 0.0);
        expected.add_scaled(C64::new(-p_lab.omega_c / 2.0, 0.0), &ComplexMatrix::identity(p_lab.dims()));
        assert!((&diff - &expected).max_abs() <= 1e-12);
    }

    #[test]
    fn thermal_state_ground() {
        let rho = thermal_state(4, 0.0).unwrap();
        assert_eq!(rho.get(0, 0), one());
        for i in 1..4 {
            assert_eq!(rho.get(i, i), C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn thermal_state_normalized_and_positive() {
        for (d, nbar) in [(2, 0.3), (10, 1.5), (30, 10.0)] {
            let rho = thermal_state(d, nbar).unwrap();
            assert!((rho.trace().re - 1.0).abs() < 1e-14);
            for i in 0..d {
                assert!(rho.get(i, i).re > 0.0);
                for j in 0..d {
                    if i != j {
                        assert_eq!(rho.get(i, j), C64::new(0.0, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn thermal_state_mean_occupation() {
        let d = 30;
        let nbar = 0.5;
        let rho = thermal_state(d, nbar).unwrap();
        let mean: f64 = (0..d).map(|n| n as f64 * rho.get(n, n).re).sum();
        // truncated geometric series oracle
        let x: f64 = nbar / (1.0 + nbar);
        let num: f64 = (0..d).map(|n| n as f64 * x.powi(n as i32)).sum();
        let den: f64 = (0..d).map(|n| x.powi(n as i32)).sum();
        assert!((mean - num / den).abs() < 1e-14);
        assert!((mean - nbar).abs() < 1e-8);
    }

    #[test]
    fn thermal_state_rejects_negative_occupation() {
        assert!(matches!(thermal_state(4, -0.1), Err(HilbertError::BadOccupation { .. })));
    }

    #[test]
    fn initial_state_is_pure_for_ground_mechanics() {
        let p = SystemParams::default();
        let rho = initial_state(&p).unwrap();
        let purity = rho.matrix().mul(rho.matrix()).trace().re;
        assert!((purity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn initial_state_observable_values() {
        let p = SystemParams::default();
        let rho = initial_state(&p).unwrap();
        let sz = embed(&sigma_z(), Slot::Atom, &p).unwrap();
        let delta_p = rho.matrix().mul(&sz).trace().re;
        assert!((delta_p - 1.0).abs() < 1e-14);
        let c = embed(&annihilation(p.d_c).unwrap(), Slot::Cavity, &p).unwrap();
        let n_c = rho.matrix().mul(&c.dagger().mul(&c)).trace().re;
        assert!(n_c.abs() < 1e-14);
    }

    #[test]
    fn density_matrix_rejects_bad_trace() {
        let mat = &ComplexMatrix::identity(4) * C64::new(0.5, 0.0);
        assert!(matches!(
            DensityMatrix::new(mat),
            Err(HilbertError::InvalidState { what: "unit trace", .. })
        ));
    }

    #[test]
    fn density_matrix_rejects_negative_eigenvalue() {
        let mat = ComplexMatrix::from_diag(&[1.5, -0.5]);
        assert!(matches!(
            DensityMatrix::new(mat),
            Err(HilbertError::InvalidState { what: "positivity", .. })
        ));
    }

    #[test]
    fn params_validation_catches_bad_values() {
        let p = SystemParams { kappa: -0.1, ..SystemParams::default() };
        assert!(matches!(p.validate(), Err(HilbertError::InvalidParameter { name: "kappa", .. })));
        let p = SystemParams { d_m: 1, ..SystemParams::default() };
        assert!(matches!(p.validate(), Err(HilbertError::BadDimension { dim: 1 })));
        let p = SystemParams { omega_m: 2.0, ..SystemParams::default() };
        assert!(matches!(p.validate(), Err(HilbertError::InvalidParameter { name: "omega_m", .. })));
    }
}
