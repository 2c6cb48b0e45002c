//! Noisy two-qubit teleportation.
//!
//! Builds amplitude-damped four-qubit resources, the Pauli-mixture channels
//! they induce, and the figures of merit used to compare them: generalized
//! singlet fraction, teleportation fidelity, negativity and quantum discord.
//!
//! Qubits are indexed from 0 with qubit 0 the most significant bit of a
//! basis index.

pub mod analysis;
pub mod channels;
pub mod closed_form;
pub mod config;
pub mod error;
pub mod measures;
pub mod optimize;
pub mod qmat;
pub mod repro;
pub mod states;
pub mod teleport;

pub use config::{SearchSettings, Tolerances};
pub use error::{Error, Result};
pub use qmat::{ComplexMatrix, DensityMatrix, StateVector};
pub use states::AnglePair;
