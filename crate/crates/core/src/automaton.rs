//! Complete deterministic automata and the image/preimage algebra on subsets.
//!
//! States are indexed `0..n` internally and rendered `q1..qn`. Letters are
//! indexed `0..k` and rendered `a`, `b`, `c`, ... Words act left to right: the
//! first letter of a word is applied first, so `Q·(uv) = (Q·u)·v` and the
//! preimage of a word folds over its letters from the last one backwards.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scc;
use crate::search;

/// Width of the subset mask. Automata are limited to this many states.
pub const MAX_STATES: usize = 32;
/// Letters are named `a..z`.
pub const MAX_LETTERS: usize = 26;

const CHUNK_BITS: usize = 8;
const CHUNK_SIZE: usize = 1 << CHUNK_BITS;

/// Name of the letter with the given index (`0 -> 'a'`).
pub fn letter_name(letter: usize) -> char {
    debug_assert!(letter < MAX_LETTERS);
    (b'a' + letter as u8) as char
}

/// A subset of states stored as a bit mask; bit `i` is state `q_{i+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StateSet(u32);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub const fn from_mask(mask: u32) -> Self {
        StateSet(mask)
    }

    /// The set `{q_1, ..., q_n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_STATES);
        if n >= 32 {
            StateSet(u32::MAX)
        } else {
            StateSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(state: usize) -> Self {
        StateSet(1 << state)
    }

    /// Builds a set from 1-based state numbers, as used in all I/O.
    pub fn from_one_based<I: IntoIterator<Item = usize>>(states: I) -> Self {
        states.into_iter().map(|q| q - 1).collect()
    }

    /// The 1-based interval `{q_lo, ..., q_hi}`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        (lo..=hi).map(|q| q - 1).collect()
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, state: usize) -> bool {
        state < MAX_STATES && self.0 & (1 << state) != 0
    }

    pub fn insert(&mut self, state: usize) {
        self.0 |= 1 << state;
    }

    pub fn remove(&mut self, state: usize) {
        self.0 &= !(1 << state);
    }

    pub const fn union(self, other: StateSet) -> StateSet {
        StateSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: StateSet) -> StateSet {
        StateSet(self.0 & other.0)
    }

    pub const fn difference(self, other: StateSet) -> StateSet {
        StateSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_proper_subset(self, other: StateSet) -> bool {
        self.is_subset(other) && self.0 != other.0
    }

    /// The single member, if the set is a singleton.
    pub fn only(self) -> Option<usize> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order, 0-based.
    pub fn iter(self) -> StateIter {
        StateIter(self.0)
    }

    /// Members in increasing order, 1-based.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|q| q + 1).collect()
    }
}

pub struct StateIter(u32);

impl Iterator for StateIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let q = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(q)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let len = self.0.count_ones() as usize;
        (len, Some(len))
    }
}

impl ExactSizeIterator for StateIter {}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = StateSet::EMPTY;
        for q in iter {
            set.insert(q);
        }
        set
    }
}

impl IntoIterator for StateSet {
    type Item = usize;
    type IntoIter = StateIter;

    fn into_iter(self) -> StateIter {
        self.iter()
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "q{}", q + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for StateSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|q| q + 1))
    }
}

impl<'de> Deserialize<'de> for StateSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let states = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = states.iter().find(|&&q| q == 0 || q > MAX_STATES) {
            return Err(serde::de::Error::custom(format!(
                "state {bad} is out of range 1..={MAX_STATES}"
            )));
        }
        Ok(StateSet::from_one_based(states))
    }
}

/// A finite sequence of letter indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = usize>>(letters: I) -> Self {
        Word(letters.into_iter().map(|a| a as u8).collect())
    }

    /// A single letter repeated `times` times.
    pub fn power(letter: usize, times: usize) -> Self {
        Word(vec![letter as u8; times])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().map(|&a| a as usize)
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter as u8);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Largest letter index used, if any.
    pub fn max_letter(&self) -> Option<usize> {
        self.0.iter().max().map(|&a| a as usize)
    }

    /// Renders the word with custom letter names.
    pub fn render(&self, names: &[char]) -> String {
        self.letters().map(|a| names[a]).collect()
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses a string of letters `a..z`; whitespace is ignored and `ε` or an
    /// empty string is the empty word.
    fn from_str(s: &str) -> Result<Word> {
        let mut word = Word::new();
        for ch in s.chars().filter(|c| !c.is_whitespace() && *c != 'ε') {
            if !ch.is_ascii_lowercase() {
                return Err(Error::Precondition(format!(
                    "'{ch}' is not a letter in a..z"
                )));
            }
            word.push((ch as u8 - b'a') as usize);
        }
        Ok(word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for a in self.letters() {
            write!(f, "{}", letter_name(a))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let text: String = self.letters().map(letter_name).collect();
        serializer.serialize_str(&text)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A complete deterministic automaton with `n` states over `k` letters.
///
/// Immutable once built. Besides the transition table it caches, per letter,
/// the preimage of every single state and byte-chunked lookup tables so that
/// both the image and the preimage of a subset cost `ceil(n/8)` table reads.
#[derive(Clone)]
pub struct Dfa {
    n: usize,
    k: usize,
    /// `delta[a * n + q]` is the successor of `q` under letter `a`.
    delta: Vec<u8>,
    /// `inverse[a * n + p]` is `{q : delta(q, a) = p}`.
    inverse: Vec<StateSet>,
    chunks: usize,
    image_tab: Vec<u32>,
    preimage_tab: Vec<u32>,
}

impl Dfa {
    /// Builds an automaton from 0-based rows, one per letter: `rows[a][q]` is
    /// the successor of `q` under `a`.
    pub fn new(n: usize, rows: &[Vec<usize>]) -> Result<Dfa> {
        Self::build(n, rows, 0)
    }

    /// Same as [`Dfa::new`] with 1-based targets, the convention of every
    /// external format.
    pub fn from_one_based(n: usize, rows: &[Vec<usize>]) -> Result<Dfa> {
        Self::build(n, rows, 1)
    }

    fn build(n: usize, rows: &[Vec<usize>], base: usize) -> Result<Dfa> {
        if n == 0 {
            return Err(Error::NoStates);
        }
        if n > MAX_STATES {
            return Err(Error::TooManyStates { n, max: MAX_STATES });
        }
        let k = rows.len();
        if k == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if k > MAX_LETTERS {
            return Err(Error::TooManyLetters { k, max: MAX_LETTERS });
        }
        let mut delta = Vec::with_capacity(n * k);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RowLength {
                    letter: letter_name(a),
                    expected: n,
                    found: row.len(),
                });
            }
            for (q, &target) in row.iter().enumerate() {
                if target < base || target - base >= n {
                    return Err(Error::TransitionOutOfRange {
                        letter: letter_name(a),
                        state: q + 1,
                        target,
                        n,
                    });
                }
                delta.push((target - base) as u8);
            }
        }
        Ok(Self::from_delta(n, k, delta))
    }

    fn from_delta(n: usize, k: usize, delta: Vec<u8>) -> Dfa {
        let mut inverse = vec![StateSet::EMPTY; n * k];
        for a in 0..k {
            for q in 0..n {
                let p = delta[a * n + q] as usize;
                inverse[a * n + p].insert(q);
            }
        }
        let chunks = n.div_ceil(CHUNK_BITS);
        let mut image_tab = vec![0u32; k * chunks * CHUNK_SIZE];
        let mut preimage_tab = vec![0u32; k * chunks * CHUNK_SIZE];
        for a in 0..k {
            for c in 0..chunks {
                let base = (a * chunks + c) * CHUNK_SIZE;
                for v in 1..CHUNK_SIZE {
                    let low = v.trailing_zeros() as usize;
                    let q = c * CHUNK_BITS + low;
                    let rest = v & (v - 1);
                    let (img, pre) = if q < n {
                        (
                            1u32 << delta[a * n + q],
                            inverse[a * n + q].mask(),
                        )
                    } else {
                        (0, 0)
                    };
                    image_tab[base + v] = image_tab[base + rest] | img;
                    preimage_tab[base + v] = preimage_tab[base + rest] | pre;
                }
            }
        }
        Dfa {
            n,
            k,
            delta,
            inverse,
            chunks,
            image_tab,
            preimage_tab,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.n)
    }

    /// Successor of state `q` under letter `a` (both 0-based).
    pub fn target(&self, q: usize, a: usize) -> usize {
        self.delta[a * self.n + q] as usize
    }

    /// Successors of all states under `a`, indexed by 0-based state.
    pub fn row(&self, a: usize) -> &[u8] {
        &self.delta[a * self.n..(a + 1) * self.n]
    }

    /// Rows of 0-based targets, one per letter.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.k)
            .map(|a| self.row(a).iter().map(|&p| p as usize).collect())
            .collect()
    }

    /// `{q : delta(q, a) = p}`.
    pub fn inverse(&self, p: usize, a: usize) -> StateSet {
        self.inverse[a * self.n + p]
    }

    pub fn check_letter(&self, a: usize) -> Result<()> {
        if a < self.k {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange { letter: a, k: self.k })
        }
    }

    pub fn check_state(&self, q: usize) -> Result<()> {
        if q < self.n {
            Ok(())
        } else {
            Err(Error::StateOutOfRange { state: q + 1, n: self.n })
        }
    }

    pub fn check_set(&self, set: StateSet) -> Result<()> {
        if set.is_subset(self.full_set()) {
            Ok(())
        } else {
            Err(Error::SetOutOfRange { set, n: self.n })
        }
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        match word.max_letter() {
            Some(a) if a >= self.k => Err(Error::LetterOutOfRange { letter: a, k: self.k }),
            _ => Ok(()),
        }
    }

    #[inline]
    fn lookup(&self, table: &[u32], set: StateSet, a: usize) -> StateSet {
        debug_assert!(set.is_subset(self.full_set()), "{set} outside {} states", self.n);
        let base = a * self.chunks * CHUNK_SIZE;
        let mut mask = set.mask();
        let mut out = 0;
        let mut offset = base;
        while mask != 0 {
            out |= table[offset + (mask as usize & (CHUNK_SIZE - 1))];
            mask >>= CHUNK_BITS;
            offset += CHUNK_SIZE;
        }
        StateSet(out)
    }

    /// `S·a`.
    #[inline]
    pub fn image_letter(&self, set: StateSet, a: usize) -> StateSet {
        self.lookup(&self.image_tab, set, a)
    }

    /// `S·w`, letters applied first to last.
    pub fn image(&self, set: StateSet, word: &Word) -> StateSet {
        word.letters().fold(set, |s, a| self.image_letter(s, a))
    }

    /// `S·a⁻¹ = {q : q·a ∈ S}`.
    #[inline]
    pub fn preimage(&self, set: StateSet, a: usize) -> StateSet {
        self.lookup(&self.preimage_tab, set, a)
    }

    /// `S·w⁻¹ = {q : q·w ∈ S}`, folding from the last letter of `w`.
    pub fn preimage_word(&self, set: StateSet, word: &Word) -> StateSet {
        word.letters().rev().fold(set, |s, a| self.preimage(s, a))
    }

    /// `|Q·w|`.
    pub fn rank(&self, word: &Word) -> usize {
        self.image(self.full_set(), word).len()
    }

    pub fn is_permutation(&self, a: usize) -> bool {
        self.image_letter(self.full_set(), a) == self.full_set()
    }

    /// A shortest word `w` with `|S·w| < |S|`, or `None` if `S` is
    /// incompressible.
    pub fn compressing_word(&self, set: StateSet) -> Result<Option<Word>> {
        self.check_set(set)?;
        if set.len() < 2 {
            return Err(Error::Precondition(format!(
                "compressibility needs at least two states, got {set}"
            )));
        }
        let target = set.len();
        Ok(search::shortest_path(
            set,
            self.k,
            |s, a| self.image_letter(s, a),
            |s| s.len() < target,
        )
        .map(Word::from_letters))
    }

    pub fn is_compressible(&self, set: StateSet) -> Result<bool> {
        Ok(self.compressing_word(set)?.is_some())
    }

    /// True iff the underlying digraph over all letters is strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        scc::strongly_connected_components(self).len() == 1
    }

    /// Decides synchronizability on the pair graph: every pair must reach the
    /// diagonal. Runs a backward search from the diagonal, so the cost is
    /// `O(k·n²)`.
    pub fn is_synchronizing(&self) -> bool {
        let n = self.n;
        if n == 1 {
            return true;
        }
        let pair = |p: usize, q: usize| if p < q { p * n + q } else { q * n + p };
        let mut good = vec![false; n * n];
        let mut queue = VecDeque::new();
        for r in 0..n {
            good[r * n + r] = true;
            queue.push_back((r, r));
        }
        let mut remaining = n * (n - 1) / 2;
        while let Some((r, s)) = queue.pop_front() {
            for a in 0..self.k {
                let pre_r = self.inverse(r, a);
                let pre_s = self.inverse(s, a);
                for p in pre_r {
                    for q in pre_s {
                        if p == q {
                            continue;
                        }
                        let idx = pair(p, q);
                        if !good[idx] {
                            good[idx] = true;
                            remaining -= 1;
                            if remaining == 0 {
                                return true;
                            }
                            queue.push_back((p.min(q), p.max(q)));
                        }
                    }
                }
            }
        }
        false
    }

    /// The automaton without letter `a`; later letters shift down by one.
    pub fn remove_letter(&self, a: usize) -> Result<Dfa> {
        self.check_letter(a)?;
        if self.k == 1 {
            return Err(Error::EmptyAlphabet);
        }
        let n = self.n;
        let delta = (0..self.k)
            .filter(|&b| b != a)
            .flat_map(|b| self.delta[b * n..(b + 1) * n].iter().copied())
            .collect();
        Ok(Self::from_delta(n, self.k - 1, delta))
    }
}

impl PartialEq for Dfa {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.delta == other.delta
    }
}

impl Eq for Dfa {}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Dfa");
        s.field("n", &self.n);
        for a in 0..self.k {
            let row: Vec<usize> = self.row(a).iter().map(|&p| p as usize + 1).collect();
            s.field(&letter_name(a).to_string(), &row);
        }
        s.finish()
    }
}
