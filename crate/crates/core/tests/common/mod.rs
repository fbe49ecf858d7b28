//! Random automata and naive oracles that work on the raw transition table,
//! independent of the cached lookups inside `Dfa`.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resetlab::Dfa;

/// 0-based rows, `rows[a][q]`.
pub type Rows = Vec<Vec<usize>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rows(rng: &mut impl Rng, n: usize, k: usize) -> Rows {
    (0..k)
        .map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect())
        .collect()
}

pub fn build(n: usize, rows: &Rows) -> Dfa {
    Dfa::new(n, rows).expect("generated rows are valid")
}

pub fn naive_image(rows: &Rows, mask: u32, a: usize) -> u32 {
    (0..rows[a].len())
        .filter(|&q| mask >> q & 1 == 1)
        .fold(0, |acc, q| acc | 1 << rows[a][q])
}

pub fn naive_preimage(rows: &Rows, mask: u32, a: usize) -> u32 {
    (0..rows[a].len())
        .filter(|&q| mask >> rows[a][q] & 1 == 1)
        .fold(0, |acc, q| acc | 1 << q)
}

/// Breadth-first search from `start`; returns the depth of the first set
/// meeting `goal`.
fn naive_bfs(start: u32, k: usize, step: impl Fn(u32, usize) -> u32, goal: impl Fn(u32) -> bool) -> Option<usize> {
    if goal(start) {
        return Some(0);
    }
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some((s, d)) = queue.pop_front() {
        for a in 0..k {
            let t = step(s, a);
            if goal(t) {
                return Some(d + 1);
            }
            if seen.insert(t) {
                queue.push_back((t, d + 1));
            }
        }
    }
    None
}

pub fn naive_reset_length(n: usize, rows: &Rows) -> Option<usize> {
    let full = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    naive_bfs(full, rows.len(), |s, a| naive_image(rows, s, a), |s| s.count_ones() == 1)
}

pub fn naive_extension_length(rows: &Rows, mask: u32) -> Option<usize> {
    let size = mask.count_ones();
    naive_bfs(mask, rows.len(), |s, a| naive_preimage(rows, s, a), |s| s.count_ones() > size)
        .filter(|&d| d > 0)
}

/// A random synchronizing automaton with `2 ≤ n ≤ max_n` and
/// `1 ≤ k ≤ max_k`, by rejection sampling.
pub fn random_synchronizing(rng: &mut impl Rng, max_n: usize, max_k: usize) -> (usize, Rows) {
    loop {
        let n = rng.gen_range(2..=max_n);
        let k = rng.gen_range(1..=max_k);
        let rows = random_rows(rng, n, k);
        if naive_reset_length(n, &rows).is_some() {
            return (n, rows);
        }
    }
}

/// Every word over `k` letters of length exactly `len`, first letter most
/// significant.
pub fn words_of_length(k: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = k.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut word = vec![0; len];
        for slot in word.iter_mut().rev() {
            *slot = code % k;
            code /= k;
        }
        word
    })
}
