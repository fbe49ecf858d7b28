//! Extension analyses: shortest words `w` with `|S·w⁻¹| > |S|`, profiles over
//! all subsets, the image-restricted variant, and avoiding words.
//!
//! Every search here walks the full preimage lattice. Shortest extending
//! paths may pass through sets smaller than the source (in `A_{2m-1}` the
//! path from `Q_U` goes through `{q_m}`), so nothing is pruned by size.

use std::collections::HashSet;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::automaton::{Dfa, StateSet, Word};
use crate::error::{Error, Result};
use crate::search;

/// Largest automaton accepted by whole-automaton analyses.
pub const PROFILE_BOUND: usize = 20;
/// Largest automaton accepted by single-subset extension queries.
pub const SUBSET_QUERY_BOUND: usize = 24;

fn check_capacity(dfa: &Dfa, operation: &'static str, bound: usize) -> Result<()> {
    if dfa.n() > bound {
        return Err(Error::Capacity {
            operation,
            n: dfa.n(),
            bound,
        });
    }
    Ok(())
}

fn check_proper(dfa: &Dfa, set: StateSet) -> Result<()> {
    dfa.check_set(set)?;
    if set.is_empty() || set == dfa.full_set() {
        return Err(Error::Precondition(format!(
            "extension needs a non-empty proper subset, got {set}"
        )));
    }
    Ok(())
}

/// A shortest `w` with `|S·w⁻¹| > |S|`, or `None` if `S` is not extendable.
///
/// Each search step prepends a letter: from `P = S·u⁻¹` the letter `a` leads
/// to `P·a⁻¹ = S·(au)⁻¹`.
pub fn shortest_extending_word(dfa: &Dfa, set: StateSet) -> Result<Option<Word>> {
    check_proper(dfa, set)?;
    check_capacity(dfa, "subset extension", SUBSET_QUERY_BOUND)?;
    let size = set.len();
    Ok(search::shortest_path(
        set,
        dfa.k(),
        |s, a| dfa.preimage(s, a),
        |s| s.len() > size,
    )
    .map(|path| Word::from_letters(path.into_iter().rev())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    /// Longest shortest-extending word over all non-empty proper subsets.
    pub max_length: usize,
    pub witness_set: StateSet,
    pub witness_word: Word,
    /// Entry `c - 1` is the maximum over subsets of cardinality `c`, for
    /// `c = 1..n-1`.
    pub per_cardinality_max: Vec<usize>,
}

/// Single-letter preimages of every subset, `succ[mask * k + a]`.
struct PreimageGraph {
    k: usize,
    succ: Vec<u32>,
}

impl PreimageGraph {
    fn new(dfa: &Dfa) -> Self {
        let k = dfa.k();
        let size = 1usize << dfa.n();
        let mut succ = vec![0u32; size * k];
        succ.par_chunks_mut(k).enumerate().for_each(|(mask, row)| {
            let set = StateSet::from_mask(mask as u32);
            for (a, slot) in row.iter_mut().enumerate() {
                *slot = dfa.preimage(set, a).mask();
            }
        });
        PreimageGraph { k, succ }
    }

    fn size(&self) -> usize {
        self.succ.len() / self.k
    }
}

/// Per-worker BFS storage. `seen[mask] == epoch` marks a visit in the current
/// search, so nothing is cleared between sources.
struct Scratch {
    seen: Vec<u32>,
    epoch: u32,
    queue: Vec<u32>,
}

impl Scratch {
    fn new(size: usize) -> Self {
        Scratch {
            seen: vec![0; size],
            epoch: 0,
            queue: Vec::new(),
        }
    }

    fn extension_length(&mut self, graph: &PreimageGraph, source: u32) -> Option<u32> {
        self.epoch += 1;
        let epoch = self.epoch;
        let k = graph.k;
        let size = source.count_ones();
        self.queue.clear();
        self.queue.push(source);
        self.seen[source as usize] = epoch;
        let mut head = 0;
        let mut depth = 0;
        while head < self.queue.len() {
            depth += 1;
            let level_end = self.queue.len();
            while head < level_end {
                let s = self.queue[head] as usize;
                head += 1;
                for &t in &graph.succ[s * k..s * k + k] {
                    if self.seen[t as usize] == epoch {
                        continue;
                    }
                    if t.count_ones() > size {
                        return Some(depth);
                    }
                    self.seen[t as usize] = epoch;
                    self.queue.push(t);
                }
            }
        }
        None
    }
}

/// Shortest extending length of every subset, indexed by mask. The empty set
/// and `Q` map to `None`, as do unextendable subsets.
pub fn extension_lengths(dfa: &Dfa, bound: usize) -> Result<Vec<Option<u32>>> {
    check_capacity(dfa, "extension profile", bound)?;
    let graph = PreimageGraph::new(dfa);
    let size = graph.size();
    let full = dfa.full_set().mask() as usize;
    Ok((0..size)
        .into_par_iter()
        .map_init(
            || Scratch::new(size),
            |scratch, mask| {
                if mask == 0 || mask == full {
                    None
                } else {
                    scratch.extension_length(&graph, mask as u32)
                }
            },
        )
        .collect())
}

/// The exact extension profile with the default bound of
/// [`PROFILE_BOUND`] states.
pub fn extension_profile(dfa: &Dfa) -> Result<ExtensionReport> {
    extension_profile_with_bound(dfa, PROFILE_BOUND)
}

/// Maximum of the shortest extending length over all `2ⁿ - 2` non-empty
/// proper subsets. Fails with [`Error::NotExtendable`] naming the smallest
/// unextendable subset, if there is one. Among subsets attaining the
/// maximum, the witness is the one with the smallest mask.
pub fn extension_profile_with_bound(dfa: &Dfa, bound: usize) -> Result<ExtensionReport> {
    let n = dfa.n();
    if n < 2 {
        return Err(Error::Precondition(
            "an extension profile needs at least two states".into(),
        ));
    }
    let lengths = extension_lengths(dfa, bound)?;
    let full = dfa.full_set().mask() as usize;
    let mut per_cardinality_max = vec![0usize; n - 1];
    let mut best: Option<(usize, StateSet)> = None;
    for (mask, length) in lengths.iter().enumerate().take(full).skip(1) {
        let set = StateSet::from_mask(mask as u32);
        let Some(length) = length.map(|l| l as usize) else {
            return Err(Error::NotExtendable(set));
        };
        let slot = &mut per_cardinality_max[set.len() - 1];
        *slot = (*slot).max(length);
        if best.is_none_or(|(l, _)| length > l) {
            best = Some((length, set));
        }
    }
    let (max_length, witness_set) = best.expect("n >= 2 leaves at least one proper subset");
    let witness_word = shortest_extending_word(dfa, witness_set)?
        .ok_or_else(|| Error::ConsistencyFault(format!("{witness_set} lost its extension")))?;
    if witness_word.len() != max_length {
        return Err(Error::ConsistencyFault(format!(
            "profile length {max_length} for {witness_set}, direct search {}",
            witness_word.len()
        )));
    }
    Ok(ExtensionReport {
        max_length,
        witness_set,
        witness_word,
        per_cardinality_max,
    })
}

/// All sets `Q·w`, in BFS order from `Q` (which comes first).
pub fn reachable_images(dfa: &Dfa) -> Vec<StateSet> {
    search::reachable(dfa.full_set(), dfa.k(), |s, a| dfa.image_letter(s, a))
}

/// Reachable images grouped by cardinality for containment queries.
struct ImageIndex {
    by_size: Vec<Vec<StateSet>>,
    members: HashSet<StateSet>,
}

impl ImageIndex {
    fn new(n: usize, images: &[StateSet]) -> Self {
        let mut by_size = vec![Vec::new(); n + 1];
        for &s in images {
            by_size[s.len()].push(s);
        }
        for bucket in &mut by_size {
            bucket.sort_unstable();
        }
        ImageIndex {
            by_size,
            members: images.iter().copied().collect(),
        }
    }

    /// A reachable image `T ⊆ P` with `|T| > floor`, largest first.
    fn larger_inside(&self, p: StateSet, floor: usize) -> Option<StateSet> {
        (floor + 1..=p.len())
            .rev()
            .flat_map(|c| self.by_size[c].iter())
            .find(|t| t.is_subset(p))
            .copied()
    }
}

/// Shortest image-extension of one reachable image `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageExtension {
    pub set: StateSet,
    pub word: Word,
    /// `S·u⁻¹` for the witness word `u`.
    pub preimage: StateSet,
    /// A reachable image inside `preimage`, larger than `set`.
    pub target: StateSet,
}

impl ImageExtension {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageExtensionReport {
    pub reachable_image_count: usize,
    #[serde(rename = "worst_S")]
    pub worst_s: StateSet,
    pub worst_length: usize,
    /// `worst_length / n`.
    pub constant_witness: Ratio<usize>,
    pub worst_word: Word,
    pub worst_preimage: StateSet,
    pub worst_target: StateSet,
    /// Whether `S·u⁻¹` for the worst case is itself a reachable image rather
    /// than merely containing one.
    pub worst_preimage_is_image: bool,
}

fn check_image_preconditions(dfa: &Dfa, bound: usize) -> Result<()> {
    check_capacity(dfa, "image extension", bound)?;
    if !dfa.is_synchronizing() {
        return Err(Error::Precondition(
            "image extension is defined for synchronizing automata".into(),
        ));
    }
    Ok(())
}

/// For every reachable image `S ⊊ Q`, a shortest `u` such that `S·u⁻¹`
/// contains a reachable image `T` with `|T| > |S|`. Sorted by set mask.
pub fn image_extensions(dfa: &Dfa, bound: usize) -> Result<Vec<ImageExtension>> {
    check_image_preconditions(dfa, bound)?;
    let images = reachable_images(dfa);
    let index = ImageIndex::new(dfa.n(), &images);
    image_extensions_indexed(dfa, &index)
}

fn image_extensions_indexed(dfa: &Dfa, index: &ImageIndex) -> Result<Vec<ImageExtension>> {
    let full = dfa.full_set();
    let mut sources: Vec<StateSet> = index.members.iter().copied().filter(|&s| s != full).collect();
    sources.sort_unstable();
    sources
        .into_par_iter()
        .map(|s| {
            let floor = s.len();
            let path = search::shortest_path(
                s,
                dfa.k(),
                |p, a| dfa.preimage(p, a),
                |p| index.larger_inside(p, floor).is_some(),
            )
            .ok_or_else(|| {
                Error::ConsistencyFault(format!(
                    "reachable image {s} has no image-extension in a synchronizing automaton"
                ))
            })?;
            let word = Word::from_letters(path.into_iter().rev());
            let preimage = dfa.preimage_word(s, &word);
            let target = index
                .larger_inside(preimage, floor)
                .expect("search goal holds at the end of the path");
            Ok(ImageExtension {
                set: s,
                word,
                preimage,
                target,
            })
        })
        .collect()
}

/// The worst case of [`image_extensions`]: the reachable image needing the
/// longest word. Ties go to the smallest set mask.
pub fn image_extension_bound(dfa: &Dfa) -> Result<ImageExtensionReport> {
    image_extension_bound_with_bound(dfa, PROFILE_BOUND)
}

pub fn image_extension_bound_with_bound(dfa: &Dfa, bound: usize) -> Result<ImageExtensionReport> {
    check_image_preconditions(dfa, bound)?;
    let images = reachable_images(dfa);
    let index = ImageIndex::new(dfa.n(), &images);
    let table = image_extensions_indexed(dfa, &index)?;
    let worst = table
        .iter()
        .fold(None::<&ImageExtension>, |best, e| match best {
            Some(b) if b.length() >= e.length() => Some(b),
            _ => Some(e),
        });
    let Some(worst) = worst else {
        // n = 1: Q is the only image and nothing needs extending.
        return Ok(ImageExtensionReport {
            reachable_image_count: images.len(),
            worst_s: dfa.full_set(),
            worst_length: 0,
            constant_witness: Ratio::from_integer(0),
            worst_word: Word::new(),
            worst_preimage: dfa.full_set(),
            worst_target: dfa.full_set(),
            worst_preimage_is_image: true,
        });
    };
    Ok(ImageExtensionReport {
        reachable_image_count: images.len(),
        worst_s: worst.set,
        worst_length: worst.length(),
        constant_witness: Ratio::new(worst.length(), dfa.n()),
        worst_word: worst.word.clone(),
        worst_preimage: worst.preimage,
        worst_target: worst.target,
        worst_preimage_is_image: index.members.contains(&worst.preimage),
    })
}

/// Whether `set` is `Q·w` for some word.
pub fn is_reachable_image(dfa: &Dfa, set: StateSet) -> bool {
    reachable_images(dfa).contains(&set)
}

/// A shortest `w` with `q ∉ Q·w` (`q` 0-based), or `None` if every image of
/// `Q` contains `q`.
pub fn shortest_avoiding_word(dfa: &Dfa, q: usize) -> Result<Option<Word>> {
    dfa.check_state(q)?;
    Ok(search::shortest_path(
        dfa.full_set(),
        dfa.k(),
        |s, a| dfa.image_letter(s, a),
        |s| !s.contains(q),
    )
    .map(Word::from_letters))
}

/// Synchronizing, and removing any single letter leaves a non-synchronizing
/// automaton.
pub fn is_irreducibly_synchronizing(dfa: &Dfa) -> Result<bool> {
    if !dfa.is_synchronizing() {
        return Err(Error::Precondition(
            "irreducibility is defined for synchronizing automata".into(),
        ));
    }
    if dfa.k() == 1 {
        // Without letters only the empty word remains, which resets iff n = 1.
        return Ok(dfa.n() > 1);
    }
    for a in 0..dfa.k() {
        if dfa.remove_letter(a)?.is_synchronizing() {
            return Ok(false);
        }
    }
    Ok(true)
}
