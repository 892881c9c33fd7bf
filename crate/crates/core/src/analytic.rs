//! Closed-form track: dressed atom-cavity basis, effective polariton-phonon
//! Hamiltonian in its three-dimensional invariant subspace, and the resulting
//! population-inversion formulas.
//!
//! Starting from `|0, e, 0⟩` with the atom and cavity on resonance, the
//! coherent dynamics stay inside the span of `|-, 0⟩`, `|+, 0⟩`, `|-, 1⟩`
//! (dressed states ⊗ displaced-mode Fock states). Diagonalizing there gives
//!
//! ```text
//! ΔP(t) = cos(Ω_ca t) cos(Ω_g t / 2) + ξ sin(Ω_ca t) sin(Ω_g t / 2)
//! ```
//!
//! which on resonance (`omega_m = 2 g_ca`) collapses to the sinusoidally
//! modulated Rabi oscillation `cos(2 g_ca t) cos(g_cm t / 2)`.

use thiserror::Error;

use crate::hilbert::SystemParams;
use crate::linalg::{ComplexMatrix, C64};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum AnalyticError {
    #[error("degenerate coupling: g_cm must be positive for the three-level closed forms")]
    DegenerateCoupling,
    #[error("off resonance: the dressed basis requires omega_a = omega_c (got omega_a = {omega_a}, omega_c = {omega_c})")]
    OffResonance { omega_a: f64, omega_c: f64 },
}

/// Scalars of the three-level model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Generalized coupling `Ω_g = sqrt((omega_m - 2 g_ca)^2 + g_cm^2)`.
    pub omega_g: f64,
    /// Mixing ratio `η = [Ω_g - (omega_m - 2 g_ca)] / g_cm`.
    pub eta: f64,
    /// Normalization `N = (1 + η^2)^(-1/2)`.
    pub nnorm: f64,
    /// Asymmetry `ξ = (1 - η^2) / (1 + η^2)`; zero on resonance.
    pub xi: f64,
    /// Upper dressed-pair frequency `Ω_+ = (omega_m + Ω_g) / 2`.
    pub omega_plus: f64,
    /// Lower dressed-pair frequency `Ω_- = (omega_m - Ω_g) / 2`.
    pub omega_minus: f64,
    /// Fast oscillation frequency `Ω_ca = omega_m / 2 + g_ca`.
    pub omega_ca: f64,
}

/// Evaluate the closed-form scalars for the given parameters.
pub fn derived_params(p: &SystemParams) -> Result<DerivedParams, AnalyticError> {
    if p.g_cm.is_nan() || p.g_cm <= 0.0 {
        return Err(AnalyticError::DegenerateCoupling);
    }
    let detune = p.omega_m - 2.0 * p.g_ca;
    let omega_g = (detune * detune + p.g_cm * p.g_cm).sqrt();
    let eta = (omega_g - detune) / p.g_cm;
    let nnorm = 1.0 / (1.0 + eta * eta).sqrt();
    let xi = (1.0 - eta * eta) / (1.0 + eta * eta);
    Ok(DerivedParams {
        omega_g,
        eta,
        nnorm,
        xi,
        omega_plus: (p.omega_m + omega_g) / 2.0,
        omega_minus: (p.omega_m - omega_g) / 2.0,
        omega_ca: p.omega_m / 2.0 + p.g_ca,
    })
}

/// Dressed states `|±⟩ = (|1, g⟩ ± |0, e⟩)/√2` at mechanical vacuum,
/// returned as `(plus, minus)` state vectors in the composite space.
///
/// They are eigenvectors of the atom-cavity Hamiltonian with eigenvalues
/// `omega_a / 2 ± g_ca`; the construction assumes resonance.
pub fn dressed_basis_vectors(p: &SystemParams) -> Result<(Vec<C64>, Vec<C64>), AnalyticError> {
    if p.omega_a != p.omega_c {
        return Err(AnalyticError::OffResonance { omega_a: p.omega_a, omega_c: p.omega_c });
    }
    let dim = p.dims();
    let i_1g0 = p.index(1, 1, 0);
    let i_0e0 = p.index(0, 0, 0);
    let amp = C64::new(1.0 / 2f64.sqrt(), 0.0);
    let mut plus = vec![C64::new(0.0, 0.0); dim];
    let mut minus = vec![C64::new(0.0, 0.0); dim];
    plus[i_1g0] = amp;
    plus[i_0e0] = amp;
    minus[i_1g0] = amp;
    minus[i_0e0] = -amp;
    Ok((plus, minus))
}

/// Effective Hamiltonian `g_ca σ_z' + omega_m b'†b' - (g_cm/2)(σ_+'b' + σ_-'b'†)`
/// restricted to the ordered basis `(|-, 0⟩, |+, 0⟩, |-, 1⟩)`.
pub fn build_h_eff_3d(p: &SystemParams) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(3);
    h.set(0, 0, C64::new(-p.g_ca, 0.0));
    h.set(1, 1, C64::new(p.g_ca, 0.0));
    h.set(2, 2, C64::new(-p.g_ca + p.omega_m, 0.0));
    let coupling = C64::new(-p.g_cm / 2.0, 0.0);
    h.set(1, 2, coupling);
    h.set(2, 1, coupling);
    h
}

/// Probability amplitudes `(A_0e0, A_0e1)` on the excited-atom states
/// `|0, e, 0⟩` and `|0, e, 1⟩` (displaced-mode Fock labels) at time `t`.
pub fn amplitudes(t: f64, p: &SystemParams) -> Result<(C64, C64), AnalyticError> {
    let d = derived_params(p)?;
    let n2 = d.nnorm * d.nnorm;
    let half_g = d.omega_g * t / 2.0;
    let phase_m = C64::new(0.0, -p.omega_m * t / 2.0).exp();
    let a_0e1 = C64::new(0.0, -1.0) * n2 * d.eta * phase_m * half_g.sin();
    let inner = C64::new(0.0, -half_g).exp() * (d.eta * d.eta) + C64::new(0.0, half_g).exp();
    let a_0e0 = (phase_m * inner * n2 + C64::new(0.0, p.g_ca * t).exp()) * 0.5;
    Ok((a_0e0, a_0e1))
}

/// Population inversion from the general closed form:
/// `ΔP = cos(Ω_ca t) cos(Ω_g t/2) + ξ sin(Ω_ca t) sin(Ω_g t/2)`.
pub fn delta_p_general(t: f64, p: &SystemParams) -> Result<f64, AnalyticError> {
    let d = derived_params(p)?;
    let fast = d.omega_ca * t;
    let slow = d.omega_g * t / 2.0;
    Ok(fast.cos() * slow.cos() + d.xi * fast.sin() * slow.sin())
}

/// Population inversion from the resonant closed form:
/// `ΔP = cos(2 g_ca t) cos(g_cm t / 2)`.
///
/// Intended for `omega_m = 2 g_ca`; the formula is applied to any parameters.
pub fn delta_p_resonant(t: f64, p: &SystemParams) -> f64 {
    (2.0 * p.g_ca * t).cos() * (p.g_cm * t / 2.0).cos()
}
