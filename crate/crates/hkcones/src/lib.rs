//! Exact-arithmetic toolkit for cones, chambers and base loci on projective
//! hyper-Kahler models described by lattice data.
//!
//! A model is a Neron-Severi lattice with its Beauville-Bogomolov-Fujiki
//! form, together with declared prime exceptional divisors and wall data.
//! On top of that the crate computes divisorial Zariski decompositions,
//! cone memberships and rank-2 dualities, stability / Mori / Boucksom-Zariski
//! chambers, asymptotic base loci and destabilizing numbers, all with exact
//! rational or real-quadratic arithmetic.
//!
//! Start from [`model::builtin`] to load one of the bundled fixtures, or
//! parse your own fixture JSON with [`model::HKModel::from_json`].

pub mod chambers;
pub mod cli;
pub mod cones;
pub mod lattice;
pub mod model;
pub mod scalar;
pub mod walk;
pub mod zariski;
