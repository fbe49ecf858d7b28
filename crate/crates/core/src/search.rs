//! Breadth-first search over the subset lattice.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::automaton::StateSet;

/// Shortest sequence of step letters leading from `start` to a set accepted
/// by `is_goal`, in the order the steps were taken. Letters are tried in
/// index order, so ties go to the lexicographically smallest path. `start`
/// itself is tested first and yields an empty path.
pub(crate) fn shortest_path(
    start: StateSet,
    letters: usize,
    step: impl Fn(StateSet, usize) -> StateSet,
    is_goal: impl Fn(StateSet) -> bool,
) -> Option<Vec<usize>> {
    if is_goal(start) {
        return Some(Vec::new());
    }
    // set -> (predecessor, letter)
    let mut parent: HashMap<StateSet, (StateSet, u8)> = HashMap::new();
    parent.insert(start, (start, u8::MAX));
    let mut queue = VecDeque::from([start]);
    while let Some(set) = queue.pop_front() {
        for a in 0..letters {
            let next = step(set, a);
            if let Entry::Vacant(slot) = parent.entry(next) {
                slot.insert((set, a as u8));
                if is_goal(next) {
                    return Some(trace(&parent, start, next));
                }
                queue.push_back(next);
            }
        }
    }
    None
}

/// Every set reachable from `start`, in BFS order (start first).
pub(crate) fn reachable(
    start: StateSet,
    letters: usize,
    step: impl Fn(StateSet, usize) -> StateSet,
) -> Vec<StateSet> {
    let mut seen = std::collections::HashSet::from([start]);
    let mut order = vec![start];
    let mut head = 0;
    while head < order.len() {
        let set = order[head];
        head += 1;
        for a in 0..letters {
            let next = step(set, a);
            if seen.insert(next) {
                order.push(next);
            }
        }
    }
    order
}

fn trace(
    parent: &HashMap<StateSet, (StateSet, u8)>,
    start: StateSet,
    mut at: StateSet,
) -> Vec<usize> {
    let mut path = Vec::new();
    while at != start {
        let (prev, letter) = parent[&at];
        path.push(letter as usize);
        at = prev;
    }
    path.reverse();
    path
}
