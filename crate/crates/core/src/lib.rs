//! Rotational qubit encodings of ¹Σ molecules.
//!
//! The crate dresses rigid-rotor states with a dc electric field, evaluates
//! dipole and quadrupole matrix elements between the two qubit states,
//! turns them into effective XXZ couplings and sorts the encoding into one
//! of four classes: interactionless (0/0), spin-exchange (0/1), Ising (1/0)
//! or XXZ (1/1).
//!
//! Everything is in reduced units: energies in B_e, the field as
//! `eta = dE/B_e`, moments in units of the permanent dipole `d` or
//! quadrupole `q`.
//!
//! ```
//! use molqubit::{classify_encoding, EncodingClass, EncodingSpec, InteractionKind, DEFAULT_TOL};
//!
//! let spec: EncodingSpec = "0,0:2,2".parse().unwrap();
//! let result = classify_encoding(&spec, InteractionKind::Dipole, 2.0, DEFAULT_TOL, None).unwrap();
//! assert_eq!(result.class, EncodingClass::ISING);
//! ```

pub mod angmom;
pub mod classifier;
pub mod couplings;
mod error;
pub mod multipole;
pub mod rotor;
pub mod spinmodel;
pub mod units;

pub use angmom::{wigner_3j, ThreeJArgs};
pub use classifier::{
    classify, classify_encoding, classify_scan, crossover_scan, diagram_class, ClassInterval,
    Classification, EncodingClass, EncodingSpec, QubitEncoding, StateSpec, DEFAULT_TOL,
};
pub use couplings::{geometric_prefactor, xxz, xxz_dipole, xxz_quadrupole, XxzCouplings};
pub use error::{Error, Result};
pub use multipole::{
    dipole_element_bare, dressed_element, encoding_elements, quadrupole_element_bare,
    InteractionKind, MultipoleElements,
};
pub use rotor::{
    build_stark_block, default_n_max, dressed_scan, dressed_state, dressed_states, stark_map,
    track_block, DressedKet, RotationalKet, SpinTag, StarkLevel,
};
pub use spinmodel::{
    couplings_from_projection, lattice_hamiltonian, oracle_project_dipole,
    oracle_project_quadrupole, pair_hamiltonian, xxz_pair_matrix, Geometry, SpinHamiltonian,
};
pub use units::convert_field;
