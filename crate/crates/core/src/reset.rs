//! Shortest reset words, by forward search over images of `Q` and by the
//! inverse-BFS layer families `L_i`.

use serde::Serialize;

use crate::automaton::{Dfa, StateSet, Word};
use crate::error::{Error, Result};
use crate::search;

/// A shortest word `w` with `|Q·w| = 1`, or `None` if the automaton is not
/// synchronizing. Ties are broken by letter order.
pub fn shortest_reset_word(dfa: &Dfa) -> Option<Word> {
    search::shortest_path(
        dfa.full_set(),
        dfa.k(),
        |s, a| dfa.image_letter(s, a),
        |s| s.len() == 1,
    )
    .map(Word::from_letters)
}

/// The state `w` synchronizes to, if `w` has rank 1 (0-based).
pub fn check_sync_word(dfa: &Dfa, word: &Word) -> Result<Option<usize>> {
    dfa.check_word(word)?;
    Ok(dfa.image(dfa.full_set(), word).only())
}

/// Iteration bound used when none is given: `⌊n³/6⌋ + n`, above the best
/// known general upper bound on reset lengths.
pub fn default_layer_limit(n: usize) -> usize {
    n * n * n / 6 + n
}

/// The layer families `L_0, L_1, ...` of the inverse BFS.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerTrace {
    /// `layers[i]` is `L_i`, each family sorted by mask.
    pub layers: Vec<Vec<StateSet>>,
    /// Smallest `i` with `Q ∈ L_i`.
    pub found_at: Option<usize>,
    /// The iteration limit was reached before `Q` appeared or the layers
    /// died out.
    pub truncated: bool,
}

impl LayerTrace {
    /// Re-checks the subsumption invariant with a quadratic scan: no member of
    /// `L_i` lies inside a member of an earlier layer or strictly inside
    /// another member of `L_i`. Returns the first offending `(i, set)`.
    pub fn subsumption_violation(&self) -> Option<(usize, StateSet)> {
        for (i, layer) in self.layers.iter().enumerate() {
            for &s in layer {
                let earlier = self.layers[..i].iter().flatten().any(|&t| s.is_subset(t));
                let sibling = layer.iter().any(|&t| s.is_proper_subset(t));
                if earlier || sibling {
                    return Some((i, s));
                }
            }
        }
        None
    }
}

/// Computes `L_0..L_limit`.
///
/// `L_0` holds the singletons `{p}` that are the common target of two
/// transitions with the same letter. `L_i` keeps those sets `S·a⁻¹`,
/// `S ∈ L_{i-1}`, that are not visited: not a singleton, not contained in a
/// member of an earlier layer, not strictly contained in another candidate of
/// the same step. The search stops once `Q` appears, once a layer is empty,
/// or at `limit`.
pub fn inverse_layers(dfa: &Dfa, limit: usize) -> LayerTrace {
    let full = dfa.full_set();
    if dfa.n() == 1 {
        return LayerTrace {
            layers: vec![vec![full]],
            found_at: Some(0),
            truncated: false,
        };
    }

    let mut first: Vec<StateSet> = (0..dfa.n())
        .filter(|&p| (0..dfa.k()).any(|a| dfa.inverse(p, a).len() >= 2))
        .map(StateSet::singleton)
        .collect();
    first.sort_unstable();
    // Maximal members of all layers so far; containment in any earlier member
    // implies containment in one of these.
    let mut history = first.clone();
    let mut layers = vec![first];

    for i in 1..=limit {
        let previous = &layers[i - 1];
        if previous.is_empty() {
            return LayerTrace {
                layers,
                found_at: None,
                truncated: false,
            };
        }
        let mut candidates: Vec<StateSet> = previous
            .iter()
            .flat_map(|&s| (0..dfa.k()).map(move |a| (s, a)))
            .map(|(s, a)| dfa.preimage(s, a))
            .filter(|s| s.len() >= 2)
            .collect();
        candidates.sort_unstable();
        candidates.dedup();

        let layer: Vec<StateSet> = candidates
            .iter()
            .copied()
            .filter(|&s| !history.iter().any(|&t| s.is_subset(t)))
            .filter(|&s| !candidates.iter().any(|&t| s.is_proper_subset(t)))
            .collect();

        history.retain(|&t| !layer.iter().any(|&s| t.is_subset(s)));
        history.extend_from_slice(&layer);
        let found = layer.contains(&full);
        layers.push(layer);
        if found {
            return LayerTrace {
                layers,
                found_at: Some(i),
                truncated: false,
            };
        }
    }
    let truncated = layers.last().is_some_and(|l| !l.is_empty());
    LayerTrace {
        layers,
        found_at: None,
        truncated,
    }
}

/// The reset length computed by both methods, `None` for non-synchronizing
/// automata. The two methods never disagree on a correct implementation; a
/// disagreement is reported as [`Error::ConsistencyFault`].
pub fn reset_length(dfa: &Dfa) -> Result<Option<usize>> {
    reset_length_with_limit(dfa, default_layer_limit(dfa.n()))
}

pub fn reset_length_with_limit(dfa: &Dfa, limit: usize) -> Result<Option<usize>> {
    let forward = shortest_reset_word(dfa).map(|w| w.len());
    let trace = inverse_layers(dfa, limit);
    if forward == trace.found_at {
        return Ok(forward);
    }
    if trace.truncated && forward.is_some_and(|len| len > limit) {
        return Err(Error::Precondition(format!(
            "reset length {} exceeds the layer limit {limit}",
            forward.unwrap_or_default()
        )));
    }
    Err(Error::ConsistencyFault(format!(
        "forward search gives {forward:?}, inverse layers give {:?} (truncated: {})",
        trace.found_at, trace.truncated
    )))
}
