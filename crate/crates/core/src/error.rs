use thiserror::Error;

use crate::automaton::StateSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an automaton needs at least one state")]
    NoStates,
    #[error("the alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("{n} states exceeds the supported maximum of {max}")]
    TooManyStates { n: usize, max: usize },
    #[error("{k} letters exceeds the supported maximum of {max}")]
    TooManyLetters { k: usize, max: usize },
    #[error("transition table has {found} rows, expected one per letter ({expected})")]
    RowCount { expected: usize, found: usize },
    #[error("row for letter {letter} has {found} entries, expected {expected}")]
    RowLength {
        letter: char,
        expected: usize,
        found: usize,
    },
    #[error("letter {letter}: q{state} maps to {target}, which is outside 1..={n}")]
    TransitionOutOfRange {
        letter: char,
        state: usize,
        target: usize,
        n: usize,
    },
    #[error("letter index {letter} is out of range for an alphabet of size {k}")]
    LetterOutOfRange { letter: usize, k: usize },
    #[error("state {state} is out of range 1..={n}")]
    StateOutOfRange { state: usize, n: usize },
    #[error("{set} is not a subset of the {n} states")]
    SetOutOfRange { set: StateSet, n: usize },
    #[error("{family} requires a parameter >= {min}, got {param}")]
    InvalidParameter {
        family: &'static str,
        param: usize,
        min: usize,
    },
    #[error("named subset {name} is not defined for family {family}")]
    UnsupportedSubset {
        family: &'static str,
        name: &'static str,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{n} states exceeds the bound of {bound} for {operation}; query subsets individually")]
    Capacity {
        operation: &'static str,
        n: usize,
        bound: usize,
    },
    #[error("{0} cannot be extended by any word")]
    NotExtendable(StateSet),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("internal consistency fault: {0}")]
    ConsistencyFault(String),
}
