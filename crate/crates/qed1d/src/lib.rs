//! Numerical library for the 1D hydrogen-like Dirac atom with a
//! delta-potential nucleus-electron interaction.
//!
//! The crate covers both sides of the problem:
//!
//! * the exact (infinite-dimensional) model: bound state, momentum-space
//!   Green functions, vacuum-polarization densities with their
//!   delta-plus-regular structure, charge renormalization, and first-order
//!   QED (Lamb-type) corrections to the bound-state energy;
//! * the finite plane-wave approximation: Hamiltonian assembly and
//!   diagonalization, basis-set vacuum-polarization densities, their
//!   momentum-space regularization, and the same QED corrections computed
//!   from basis-set sources.
//!
//! Every exact quantity doubles as an oracle for the finite-basis pipeline;
//! the test suites lean on that heavily.
//!
//! Atomic units (`hbar = e = 1`) are used throughout; the electron mass `m`,
//! the speed of light `c`, and the nuclear charge `Z` stay explicit.

pub mod appendix;
pub mod density;
pub mod distribution;
pub mod exact;
pub mod matrix;
pub mod params;
pub mod planewave;
pub mod quadrature;
pub mod shift;

pub use distribution::DeltaPlusRegular;
pub use matrix::Mat2;
pub use params::{Cutoff, PhysicalParams};
pub use quadrature::QuadSpec;
