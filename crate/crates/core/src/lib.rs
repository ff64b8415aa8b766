//! Exact weight-lattice combinatorics for F4 in characteristic 2 and the
//! verdict engine built on top of it.
//!
//! The crate is organised bottom-up:
//! - [`lattice`]: the F4 root datum, pairings, the invariant form, Weyl
//!   orbits and alcove reduction, all in exact integer arithmetic.
//! - [`isogeny`]: the special isogeny tau on the weight lattice, restricted
//!   weight boxes, tau-adic digits and the Steinberg splitting.

pub mod characters;
pub mod engine;
pub mod isogeny;
pub mod lattice;
pub mod selftest;

pub use engine::{
    AuditCheck, AuditReport, AuditRow, CertStatus, Certificate, Engine, EngineError, Outcome,
    Summand, SummandReport, TraceStep, Verdict,
};

pub use characters::{
    filtration_sections, gamma_prime, gamma_set, tensor, tensor_multiplicity, weyl_character,
    weyl_dim, Character, CharacterError, LazyCharacter, SectionLabel, GAMMA_COUNT, GAMMA_CUTOFF,
};
pub use isogeny::{restricted_count, Isogeny, IsogenyError, TauDigits};
pub use lattice::{CorootLabel, LatticeError, Root, RootDatum, Weight, WeightParseError, RANK};
