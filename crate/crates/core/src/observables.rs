//! Physical observables and state-health diagnostics.
//!
//! The principal observable is the atomic population inversion
//! `ΔP = Tr[ρ σ_z]`; the phonon number `n_b = Tr[ρ b†b]` is taken with the
//! original (undisplaced) mechanical mode.

use thiserror::Error;

use crate::hilbert::{DensityMatrix, SystemParams};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ObservableError {
    #[error("dimension mismatch: state is {got}, parameters imply {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state is not Hermitian enough for an eigenvalue diagnostic: defect {defect:.3e}")]
    NotHermitian { defect: f64 },
}

/// All per-state quantities recorded by the engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableSet {
    pub delta_p: f64,
    pub n_b: f64,
    pub n_c: f64,
    pub purity: f64,
    pub trace_error: f64,
    pub herm_error: f64,
    pub min_eig: f64,
}

impl ObservableSet {
    /// Measure a (nominal) density matrix in the composite space of `p`.
    pub fn measure(rho: &ComplexMatrix, p: &SystemParams) -> Result<Self, ObservableError> {
        if rho.dim() != p.dims() {
            return Err(ObservableError::DimensionMismatch { expected: p.dims(), got: rho.dim() });
        }
        let mut delta_p = 0.0;
        let mut n_b = 0.0;
        let mut n_c = 0.0;
        for i in 0..rho.dim() {
            let (cav, s, mech) = p.decode(i);
            let pop = rho.get(i, i).re;
            delta_p += if s == 0 { pop } else { -pop };
            n_b += mech as f64 * pop;
            n_c += cav as f64 * pop;
        }
        let diag = diagnostics(rho)?;
        Ok(Self {
            delta_p,
            n_b,
            n_c,
            purity: diag.purity,
            trace_error: diag.trace_error,
            herm_error: diag.herm_error,
            min_eig: diag.min_eig,
        })
    }
}

/// Population inversion `Tr[ρ σ_z] = P_e - P_g`.
pub fn population_inversion(rho: &DensityMatrix, p: &SystemParams) -> Result<f64, ObservableError> {
    Ok(ObservableSet::measure(rho.matrix(), p)?.delta_p)
}

/// Mean phonon number `Tr[ρ b†b]` of the original mechanical mode.
pub fn phonon_number(rho: &DensityMatrix, p: &SystemParams) -> Result<f64, ObservableError> {
    Ok(ObservableSet::measure(rho.matrix(), p)?.n_b)
}

/// Mean photon number `Tr[ρ c†c]`.
pub fn photon_number(rho: &DensityMatrix, p: &SystemParams) -> Result<f64, ObservableError> {
    Ok(ObservableSet::measure(rho.matrix(), p)?.n_c)
}

/// State-health figures of a nominal density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    /// `Tr ρ - 1`.
    pub trace_error: f64,
    /// Max-entry `|ρ - ρ†|`.
    pub herm_error: f64,
    /// Smallest eigenvalue.
    pub min_eig: f64,
    /// `Tr[ρ²]`.
    pub purity: f64,
}

/// Compute trace error, Hermiticity defect, smallest eigenvalue, and purity.
pub fn diagnostics(rho: &ComplexMatrix) -> Result<Diagnostics, ObservableError> {
    let trace_error = rho.trace().re - 1.0;
    let herm_error = rho.herm_defect();
    // Tr[ρ²] without forming the product
    let n = rho.dim();
    let mut purity = 0.0;
    for i in 0..n {
        for k in 0..n {
            purity += (rho.get(i, k) * rho.get(k, i)).re;
        }
    }
    let eigs = hermitian_eigenvalues(rho, 1e-6)
        .map_err(|_| ObservableError::NotHermitian { defect: herm_error })?;
    let min_eig = eigs.first().copied().unwrap_or(0.0);
    Ok(Diagnostics { trace_error, herm_error, min_eig, purity })
}
