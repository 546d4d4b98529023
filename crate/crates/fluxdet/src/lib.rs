//! Simulation library for a flux-qubit microwave-photon detector.
//!
//! The device is an rf-SQUID-style superconducting loop whose phase particle
//! lives in a tunable double-well potential. Everything here works in the
//! dimensionless coordinates of that circuit:
//!
//! * position `x` — magnetic flux threading the loop, in units of the flux
//!   quantum;
//! * energy — kelvin (energies are reported as `E / k_B`);
//! * time — nanoseconds.
//!
//! The crate is organised as a pipeline:
//!
//! 1. [`circuit`] — the double-well potential, its well geometry, and the
//!    mapping from physical circuit parameters (inductance, capacitance,
//!    critical current) to dimensionless ones.
//! 2. [`grid`] / [`spectral`] — a sine discrete-variable-representation
//!    eigensolver for the phase particle, plus parameter sweeps and the
//!    location of avoided level crossings.
//! 3. [`dynamics`] — density-matrix evolution for the two driven processes:
//!    photon capture in the shallow well and the flux-ramp reset cascade.
//! 4. [`lzsm`] — closed-form Landau–Zener–Stückelberg–Majorana tools: sweep
//!    transition probabilities, ramp-speed design, and an analytic
//!    crossing-chain model that approximates the full reset integration.
//!
//! All numerics are `f64`; tolerances throughout are chosen against that
//! precision and documented where they are defined.

pub mod circuit;
pub mod dynamics;
pub mod error;
pub mod grid;
pub mod linalg;
pub mod lzsm;
pub mod spectral;
pub mod trajectory;
pub mod units;

pub use error::FluxdetError;
