//! Mealy machines and the operations the test-suite layer is built on:
//! execution, minimization, equivalence, state covers, characterization sets
//! and the active-machine transformation.

mod active;
mod alphabet;
mod cover;
mod equiv;
pub(crate) mod machine;
mod minimize;
mod test_suite;
mod word;

pub use active::{active, is_active, ActiveMachine};
pub(crate) use active::active_unchecked;
pub use alphabet::Alphabet;
pub use cover::{access_words, char_set, separating_words, state_cover};
pub use equiv::{agree_on, equivalence, input_map, isomorphic};
pub use machine::{MealyBuilder, MealyMachine, PartialMealyMachine};
pub use minimize::{is_minimal, minimize, state_partition};
pub use test_suite::{Provenance, TestSuite};
pub use word::{words_up_to, Word};
