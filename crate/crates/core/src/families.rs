//! Parametric automaton series with extremal synchronization behaviour, and
//! the explicit words and subsets attached to them.
//!
//! All transition rules below are written with 1-based states, `q_1..q_n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automaton::{Dfa, StateSet, Word};
use crate::error::{Error, Result};

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `A_{2m-1}`: two `a`-cycles of lengths `m` and `m-1`.
    AOdd,
    /// `A_{2m}`: the even-size counterpart of `A_{2m-1}`.
    AEven,
    /// `A_{2m-1}` with an extra state whose `a`-preimage step is free but
    /// whose next extension is quadratically long.
    Conservative,
    /// `B_{2m}`, whose image-extension constant is at least 3/2.
    BSeries,
    /// Ternary series `M_n` with reset length `n²-3n+3`.
    MSeries,
    /// Ternary series `M'_n` with reset length `n²-3n+2`.
    MPrime,
    /// The Černý series `C_n` with reset length `(n-1)²`.
    Cerny,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::AOdd,
        Family::AEven,
        Family::Conservative,
        Family::BSeries,
        Family::MSeries,
        Family::MPrime,
        Family::Cerny,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::AOdd => "a-odd",
            Family::AEven => "a-even",
            Family::Conservative => "conservative",
            Family::BSeries => "b-series",
            Family::MSeries => "m-series",
            Family::MPrime => "m-prime",
            Family::Cerny => "cerny",
        }
    }

    /// Smallest admissible parameter.
    pub fn min_param(self) -> usize {
        match self {
            Family::AOdd | Family::AEven | Family::Conservative => 3,
            Family::BSeries => 4,
            Family::MSeries | Family::MPrime => 3,
            Family::Cerny => 2,
        }
    }

    /// Whether the parameter is `m` of a `2m`- or `(2m-1)`-state automaton
    /// rather than the state count itself.
    pub fn param_is_half(self) -> bool {
        matches!(
            self,
            Family::AOdd | Family::AEven | Family::Conservative | Family::BSeries
        )
    }

    /// Number of states of the member with the given parameter.
    pub fn states(self, param: usize) -> usize {
        match self {
            Family::AOdd => 2 * param - 1,
            Family::AEven | Family::Conservative | Family::BSeries => 2 * param,
            Family::MSeries | Family::MPrime | Family::Cerny => param,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Ok(match s {
            "a-odd" => Family::AOdd,
            "a-even" => Family::AEven,
            "conservative" => Family::Conservative,
            "b-series" | "b" => Family::BSeries,
            "m-series" | "m" => Family::MSeries,
            "m-prime" => Family::MPrime,
            "cerny" => Family::Cerny,
            other => {
                return Err(Error::Precondition(format!(
                    "unknown family '{other}' (expected one of a-odd, a-even, conservative, \
                     b-series, m-series, m-prime, cerny)"
                )))
            }
        })
    }
}

/// A family together with its parameter: `m` for the `A`, conservative and
/// `B` series, `n` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub param: usize,
}

impl FamilySpec {
    pub fn new(family: Family, param: usize) -> Result<FamilySpec> {
        check_param(family, param)?;
        Ok(FamilySpec { family, param })
    }

    pub fn build(&self) -> Result<Dfa> {
        let p = self.param;
        match self.family {
            Family::AOdd => a_odd(p),
            Family::AEven => a_even(p),
            Family::Conservative => conservative(p),
            Family::BSeries => b_series(p),
            Family::MSeries => m_series(p),
            Family::MPrime => m_prime_series(p),
            Family::Cerny => cerny(p),
        }
    }
}

fn check_param(family: Family, param: usize) -> Result<()> {
    let min = family.min_param();
    if param < min {
        return Err(Error::InvalidParameter {
            family: family.name(),
            param,
            min,
        });
    }
    let n = family.states(param);
    if n > crate::MAX_STATES {
        return Err(Error::TooManyStates {
            n,
            max: crate::MAX_STATES,
        });
    }
    Ok(())
}

/// Builds an automaton from one 1-based rule per letter.
fn from_rules(n: usize, rules: &[&dyn Fn(usize) -> usize]) -> Result<Dfa> {
    let rows: Vec<Vec<usize>> = rules
        .iter()
        .map(|rule| (1..=n).map(rule).collect())
        .collect();
    Dfa::from_one_based(n, &rows)
}

/// `A_{2m-1}`.
pub fn a_odd(m: usize) -> Result<Dfa> {
    check_param(Family::AOdd, m)?;
    let n = 2 * m - 1;
    let a = |i: usize| match i {
        _ if i == m => 1,
        _ if i == n => m + 1,
        _ => i + 1,
    };
    let b = |i: usize| match i {
        _ if i < m => i,
        _ if i == m => n,
        _ if i == n => m,
        _ => i - m,
    };
    from_rules(n, &[&a, &b])
}

/// `A_{2m}`.
pub fn a_even(m: usize) -> Result<Dfa> {
    check_param(Family::AEven, m)?;
    let n = 2 * m;
    let a = |i: usize| match i {
        _ if i == m => 1,
        _ if i == n => m + 1,
        _ => i + 1,
    };
    let b = |i: usize| match i {
        _ if i < m => i,
        _ if i == m => n,
        _ if i == n => m,
        _ if i == n - 1 => m,
        _ => i - m,
    };
    from_rules(n, &[&a, &b])
}

/// The conservative-extension counterexample on `2m` states.
pub fn conservative(m: usize) -> Result<Dfa> {
    check_param(Family::Conservative, m)?;
    let n = 2 * m;
    let a = |i: usize| match i {
        _ if i == m => 1,
        _ if i == n - 1 => m + 1,
        _ if i == n => m + 1,
        _ => i + 1,
    };
    let b = |i: usize| match i {
        _ if i < m => i,
        _ if i == m => n,
        _ if i == n => m,
        _ if i == n - 1 => m - 1,
        _ => i - m,
    };
    from_rules(n, &[&a, &b])
}

/// `B_{2m}`.
pub fn b_series(m: usize) -> Result<Dfa> {
    check_param(Family::BSeries, m)?;
    let n = 2 * m;
    let a = |i: usize| match i {
        _ if i == m => 1,
        _ if i == n - 1 => m + 1,
        _ if i == n => n,
        _ => i + 1,
    };
    let b = |i: usize| match i {
        _ if i == m - 1 => n - 2,
        _ if i == n - 2 => m - 1,
        _ if i == n - 1 => n,
        _ if i == n => n - 1,
        _ if i == m => n,
        _ => i,
    };
    from_rules(n, &[&a, &b])
}

fn m_common(n: usize) -> (impl Fn(usize) -> usize, impl Fn(usize) -> usize) {
    let a = move |i: usize| if i < n { i + 1 } else { 2 };
    let b = |i: usize| if i == 1 { 2 } else { i };
    (a, b)
}

/// `M_n`.
pub fn m_series(n: usize) -> Result<Dfa> {
    check_param(Family::MSeries, n)?;
    let (a, b) = m_common(n);
    let c = |i: usize| match i {
        1 => n,
        _ if i == n => 1,
        _ => i,
    };
    from_rules(n, &[&a, &b, &c])
}

/// `M'_n`.
pub fn m_prime_series(n: usize) -> Result<Dfa> {
    check_param(Family::MPrime, n)?;
    let (a, b) = m_common(n);
    let c = |i: usize| if i == n { 1 } else { i };
    from_rules(n, &[&a, &b, &c])
}

/// The Černý automaton `C_n`: `a` is the cyclic shift, `b` merges `q_1` into
/// `q_2`.
pub fn cerny(n: usize) -> Result<Dfa> {
    check_param(Family::Cerny, n)?;
    let a = |i: usize| i % n + 1;
    let b = |i: usize| if i == 1 { 2 } else { i };
    from_rules(n, &[&a, &b])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedSubset {
    /// `Q_U`, the upper cycle.
    Upper,
    /// `Q_D = {q_1, ..., q_m}`, the lower cycle.
    Lower,
}

impl NamedSubset {
    pub fn name(self) -> &'static str {
        match self {
            NamedSubset::Upper => "Q_U",
            NamedSubset::Lower => "Q_D",
        }
    }
}

/// `Q_U` or `Q_D` of an `A`-series automaton.
pub fn named_subset(spec: FamilySpec, name: NamedSubset) -> Result<StateSet> {
    let m = spec.param;
    let n = match spec.family {
        Family::AOdd | Family::AEven => spec.family.states(m),
        other => {
            return Err(Error::UnsupportedSubset {
                family: other.name(),
                name: name.name(),
            })
        }
    };
    Ok(match name {
        NamedSubset::Upper => StateSet::interval(m + 1, n),
        NamedSubset::Lower => StateSet::interval(1, m),
    })
}

/// Whether `q ∈ S ∩ Q_U` is covered in `S`, i.e. `q·b ∈ S`. `dfa` must be
/// `A_{2m-1}`; `q` is 0-based.
pub fn is_covered(dfa: &Dfa, set: StateSet, q: usize) -> Result<bool> {
    let n = dfa.n();
    if n.is_multiple_of(2) || n < 5 || dfa.k() != 2 {
        return Err(Error::Precondition(format!(
            "coverage is defined on A_(2m-1); got {n} states over {} letters",
            dfa.k()
        )));
    }
    dfa.check_set(set)?;
    let m = n.div_ceil(2);
    let upper = StateSet::interval(m + 1, n);
    if !set.intersection(upper).contains(q) {
        return Err(Error::Precondition(format!(
            "q{} is not in S ∩ Q_U for S = {set}",
            q + 1
        )));
    }
    Ok(set.contains(dfa.target(q, B)))
}

fn letters(parts: &[(usize, usize)]) -> Word {
    let mut word = Word::new();
    for &(letter, times) in parts {
        word.extend_from(&Word::power(letter, times));
    }
    word
}

/// `b a b a^m b (a^{m-1} b a^m b)^{m-2}`, synchronizing `A_{2m-1}` to `q_1`.
pub fn prop1_word(m: usize) -> Result<Word> {
    check_param(Family::AOdd, m)?;
    let head = letters(&[(B, 1), (A, 1), (B, 1), (A, m), (B, 1)]);
    let block = letters(&[(A, m - 1), (B, 1), (A, m), (B, 1)]);
    Ok(head.concat(&block.repeat(m - 2)))
}

/// `a c b (a^{n-2} c b)^{n-3}`, synchronizing `M_n`.
pub fn thm5_word(n: usize) -> Result<Word> {
    check_param(Family::MSeries, n)?;
    let head = letters(&[(A, 1), (C, 1), (B, 1)]);
    Ok(head.concat(&m_block(n).repeat(n - 3)))
}

/// `c b (a^{n-2} c b)^{n-3}`, synchronizing `M'_n`.
pub fn thm5_prime_word(n: usize) -> Result<Word> {
    check_param(Family::MPrime, n)?;
    let head = letters(&[(C, 1), (B, 1)]);
    Ok(head.concat(&m_block(n).repeat(n - 3)))
}

fn m_block(n: usize) -> Word {
    letters(&[(A, n - 2), (C, 1), (B, 1)])
}

/// Member `u(d, t) = b a^t (b a^{2m-1})^{d-2} (b a^{2m-3} b a²) b` of the
/// greedy candidate family for extending `Q_U` in `A_{2m-1}`.
///
/// Read backwards, the final `b` maps `Q_U` onto `{q_m}`, the block
/// `b a^{2m-3} b a²` grows it to `{q_1, q_m}`, each `b a^{2m-1}` adds one more
/// state of `Q_D`, `a^t` rotates the lower part and the leading `b` doubles it.
pub fn greedy_candidate(m: usize, d: usize, t: usize) -> Word {
    debug_assert!(d >= 2);
    let mut word = letters(&[(B, 1), (A, t)]);
    word.extend_from(&letters(&[(B, 1), (A, 2 * m - 1)]).repeat(d - 2));
    word.extend_from(&letters(&[(B, 1), (A, 2 * m - 3), (B, 1), (A, 2), (B, 1)]));
    word
}

/// The shortest greedy word extending `Q_U` in `A_{2m-1}`.
///
/// Searches `d >= 2` and rotations `0 <= t <= 2m-1`; candidate length
/// `3 + t + 2m(d-1)` is increasing in `(d, t)` lexicographically, so the first
/// hit is the shortest.
pub fn greedy_qu_word(m: usize) -> Result<Word> {
    if m < 4 {
        return Err(Error::InvalidParameter {
            family: "greedy Q_U word",
            param: m,
            min: 4,
        });
    }
    let dfa = a_odd(m)?;
    let upper = StateSet::interval(m + 1, 2 * m - 1);
    for d in 2..=m + 2 {
        for t in 0..2 * m {
            let word = greedy_candidate(m, d, t);
            if dfa.preimage_word(upper, &word).len() > upper.len() {
                return Ok(word);
            }
        }
    }
    Err(Error::Construction(format!(
        "no greedy candidate extends Q_U in A_{}",
        2 * m - 1
    )))
}

/// Length of the greedy `Q_U` extension: `m² - 3m/2 + 4` for even `m`,
/// `m² - m + 2` for odd `m`.
pub fn greedy_qu_length(m: usize) -> usize {
    if m.is_multiple_of(2) {
        m * m - 3 * m / 2 + 4
    } else {
        m * m - m + 2
    }
}

/// Lower bound `2 + m⌈(m-3)/2⌉` on the shortest extension of `Q_U`.
pub fn ext_easy_lower_bound(m: usize) -> usize {
    2 + m * (m.saturating_sub(3)).div_ceil(2)
}
