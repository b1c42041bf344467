//! Crystal formulation of the box-ball system.
//!
//! The crate is layered bottom-up:
//!
//! * [`crystal`]: the crystals `B_l` of symmetric tableaux with Kashiwara
//!   operators `e_i`, `f_i` for `i = 0..n-1`.
//! * [`tensor`]: tensor products and the signature rule.
//! * [`rmatrix`]: the combinatorial R-matrix (isomorphism plus energy
//!   function), affinization and the Yang-Baxter check.
//! * [`oracle`]: an independent breadth-first reconstruction of the
//!   isomorphism and energy from the crystal graph.
//! * [`state`] and [`evolution`]: box-ball states, carrier time evolutions
//!   `T_l`, their inverses and the conserved energies `E_l`.
//! * [`solitons`] and [`tableau`]: soliton labels, two-body and factorized
//!   scattering, and the row-bumping invariant.
//! * [`verify`]: data-parallel batch checks built on [`par`].

pub mod crystal;
pub mod ensemble;
mod error;
pub mod evolution;
pub mod oracle;
pub mod par;
pub mod rmatrix;
pub mod solitons;
pub mod state;
pub mod tableau;
pub mod tensor;
pub mod verify;

pub use crystal::{CrystalParams, Element, Letter};
pub use error::{Error, Result};
pub use evolution::{Capacity, CarrierTrace, EnergySpectrum};
pub use par::Parallelism;
pub use rmatrix::{AffineElement, IsoImage, Pairing};
pub use solitons::{ScatteringReport, Soliton, SolitonLabel};
pub use state::State;
pub use tableau::Tableau;
pub use tensor::{Sign, Signature, TensorElement};
