//! Active automata learning of Mealy machines with small conformance test
//! suites.
//!
//! The crate provides the machine layer ([`automata`]), subalphabet experts
//! and community detection ([`experts`]), W-method and expert test suites
//! with their randomized sampler ([`suite`]), the EXP3 mixture-of-experts
//! equivalence oracle ([`bandit`]) and an observation-table learner driven by
//! a simulated teacher ([`learn`]).

pub mod automata;
pub mod bandit;
pub mod error;
pub mod experts;
pub mod learn;
pub mod suite;

pub use error::{Error, Result};
