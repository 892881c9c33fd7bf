//! Simulation library for a two-level atom coupled to a single optical cavity
//! mode that is itself coupled to a mechanical resonator by radiation
//! pressure.
//!
//! Two independent tracks compute the atomic population inversion:
//!
//! * [`analytic`] — closed forms obtained by diagonalizing the effective
//!   polariton-phonon Hamiltonian in its three-dimensional invariant
//!   subspace, valid near the Rabi-splitting/mechanical resonance
//!   `omega_m ≈ 2 g_ca`;
//! * [`lindblad`] — direct fixed-step integration of the dissipative
//!   density-matrix master equation in the truncated product space, with a
//!   vectorized matrix-exponential oracle for validation.
//!
//! All frequencies and rates are expressed in units of the mechanical
//! frequency `omega_m = 1`; times are in `1/omega_m`.

pub mod analytic;
pub mod hilbert;
pub mod linalg;
pub mod lindblad;
pub mod observables;

pub use linalg::{ComplexMatrix, C64};
pub use hilbert::{DensityMatrix, Frame, Slot, SystemParams};
pub use lindblad::{EvolutionSpec, SampleRow, TimeSeries};
