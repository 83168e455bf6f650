//! Entanglement structure of a spin-1/2 Kondo impurity in the Yosida
//! variational ground state.
//!
//! The crate computes the screening-cloud kernels of the model by adaptive
//! quadrature, assembles the reduced density matrices of the impurity spin
//! and of conduction electron pairs, and evaluates two-qubit entanglement
//! measures on them. Everything is dimensionless: lengths are measured in
//! units of `1/k_F`, energies in units of the Fermi energy `E_F`, so a
//! physical system is described by the two ratios `E_B/E_F` and `D/E_F`
//! alone (see [`model::ModelParams`]).
//!
//! Module map:
//!
//! - [`model`] — physical parameters and derived scales,
//! - [`quadrature`] — adaptive Gauss–Kronrod integration, with a
//!   half-period pre-partitioning entry point for oscillatory integrands,
//! - [`kernels`] — the scalar kernels `f_N`, `y`, `f/n`, `g`, the Werner
//!   weight and the entanglement-condition left-hand side,
//! - [`densmat`] — the reduced two-spin density matrices,
//! - [`entanglement`] — entropy, negativity, concurrence, Werner fits,
//! - [`oracle`] — brute-force momentum-lattice sums validating the
//!   continuum kernels,
//! - [`sweep`] — radial profiles, parameter scans, and comparison tables
//!   backing the command-line tool.
//!
//! Grid evaluation and lattice sums are data parallel. The default
//! `parallel` feature runs them on a rayon pool; disabling it falls back to
//! sequential loops with bit-identical results.

pub mod densmat;
pub mod entanglement;
mod exec;
pub mod kernels;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod sweep;
