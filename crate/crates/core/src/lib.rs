//! Extremal synchronizing automata: constructions and exact analyses.
//!
//! * [`automaton`]: complete DFAs over bit-mask subsets, image and preimage
//!   algebra, compressibility, strong connectivity, synchronizability.
//! * [`families`]: the `A`, `B`, conservative, `M`, `M'` and Černý series.
//! * [`reset`]: shortest reset words by forward search and by inverse layers.
//! * [`extension`]: extending, image-extending and avoiding words; profiles.
//! * [`replication`]: pass/fail checks for every numeric claim.

pub mod automaton;
pub mod error;
pub mod extension;
pub mod families;
pub mod replication;
pub mod reset;
pub mod scc;
mod search;

pub use automaton::{letter_name, Dfa, StateSet, Word, MAX_LETTERS, MAX_STATES};
pub use error::{Error, Result};
pub use extension::{
    extension_profile, image_extension_bound, is_irreducibly_synchronizing, reachable_images,
    shortest_avoiding_word, shortest_extending_word, ExtensionReport, ImageExtensionReport,
};
pub use families::{Family, FamilySpec, NamedSubset};
pub use replication::{ClaimResult, Expected, Status, SuiteConfig};
pub use reset::{inverse_layers, reset_length, shortest_reset_word, LayerTrace};
