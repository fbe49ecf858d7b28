//! End-to-end acceptance: ten criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p resetlab --test acceptance -- --nocapture` to see
//! the report when every criterion passes.

mod common;

use num_rational::Ratio;
use rand::Rng;
use resetlab::extension::{extension_profile, image_extension_bound, is_irreducibly_synchronizing};
use resetlab::families::{
    a_odd, b_series, cerny, conservative, ext_easy_lower_bound, greedy_qu_length, greedy_qu_word,
    m_prime_series, m_series, prop1_word, thm5_prime_word, thm5_word,
};
use resetlab::replication::{check_conservative_growth, check_ext_hard_growth, FINITE_EVIDENCE};
use resetlab::reset::{check_sync_word, default_layer_limit, inverse_layers};
use resetlab::{
    reset_length, shortest_avoiding_word, shortest_extending_word, shortest_reset_word, Dfa,
    Error, StateSet, Word,
};

use common::{naive_extension_length, naive_reset_length, random_rows, random_synchronizing, rng};

/// Each check returns the problems it found; empty means the criterion holds.
type Outcome = Result<Vec<String>, Error>;
type Criterion = (&'static str, fn() -> Outcome);

fn ext_len(dfa: &Dfa, set: StateSet) -> Result<Option<usize>, Error> {
    Ok(shortest_extending_word(dfa, set)?.map(|w| w.len()))
}

fn upper(m: usize) -> StateSet {
    StateSet::interval(m + 1, 2 * m - 1)
}

fn prop1() -> Outcome {
    let mut bad = Vec::new();
    for m in 3..=8 {
        let w = prop1_word(m)?;
        let target = check_sync_word(&a_odd(m)?, &w)?;
        if target != Some(0) || w.len() != 2 * m * m - 2 * m + 2 {
            bad.push(format!("m={m}: length {}, target {target:?}", w.len()));
        }
    }
    Ok(bad)
}

fn ext_easy_bracket() -> Outcome {
    let mut bad = Vec::new();
    for m in 4..=7 {
        let dfa = a_odd(m)?;
        let len = ext_len(&dfa, upper(m))?;
        let (lo, hi) = (ext_easy_lower_bound(m), greedy_qu_length(m));
        let closed = if m % 2 == 0 { m * m - 3 * m / 2 + 4 } else { m * m - m + 2 };
        if hi != closed || !len.is_some_and(|l| (lo..=hi).contains(&l)) {
            bad.push(format!("m={m}: L={len:?} outside [{lo}, {closed}]"));
        }
        let g = greedy_qu_word(m)?;
        if g.len() != closed || dfa.preimage_word(upper(m), &g).len() <= upper(m).len() {
            bad.push(format!("m={m}: greedy word of length {} is not a valid extension", g.len()));
        }
    }
    Ok(bad)
}

fn quadratic_growth() -> Outcome {
    let mut bad = Vec::new();
    let mut previous = 0;
    for m in 5..=7 {
        let len = ext_len(&a_odd(m)?, upper(m))?.unwrap_or(0);
        let ratio = len as f64 / (m * m) as f64;
        if !(0.4..=1.1).contains(&ratio) || len <= previous {
            bad.push(format!("m={m}: L={len}, L/m²={ratio:.3}"));
        }
        previous = len;
    }
    Ok(bad)
}

fn conservative_counterexample() -> Outcome {
    let mut bad = Vec::new();
    let mut previous = 0;
    for m in 4..=6 {
        let dfa = conservative(m)?;
        let n = 2 * m;
        let s = StateSet::interval(m + 1, 2 * m - 1);
        let t = s.union(StateSet::from_one_based([n]));
        if dfa.preimage(s, 0) != t {
            bad.push(format!("m={m}: S·a⁻¹ = {}", dfa.preimage(s, 0)));
        }
        if dfa.preimage(t, 1) != StateSet::from_one_based([m]) {
            bad.push(format!("m={m}: T·b⁻¹ = {}", dfa.preimage(t, 1)));
        }
        let len = ext_len(&dfa, t)?.unwrap_or(0);
        if len <= previous {
            bad.push(format!("m={m}: length {len} does not increase"));
        }
        if len <= 2 * n {
            bad.push(format!("m={m}: length {len} does not exceed 2n = {}", 2 * n));
        }
        previous = len;
    }
    Ok(bad)
}

fn b_series_lengths() -> Outcome {
    let mut bad = Vec::new();
    for m in 4..=8 {
        let dfa = b_series(m)?;
        let pair = StateSet::from_one_based([m - 3, m - 2]);
        let ext = ext_len(&dfa, pair)?;
        let avoid = shortest_avoiding_word(&dfa, 2 * m - 1)?.map(|w| w.len());
        if ext != Some(3 * m - 1) {
            bad.push(format!("m={m}: extension {ext:?}"));
        }
        if avoid != Some(2 * m + 2) {
            bad.push(format!("m={m}: avoidance {avoid:?}"));
        }
        if !dfa.is_strongly_connected() || !dfa.is_synchronizing() {
            bad.push(format!("m={m}: not strongly connected and synchronizing"));
        }
    }
    Ok(bad)
}

fn image_extension_constant() -> Outcome {
    let report = image_extension_bound(&b_series(4)?)?;
    let mut bad = Vec::new();
    if report.worst_length < 11 || report.constant_witness < Ratio::new(11, 8) {
        bad.push(format!(
            "worst length {} at {}, constant {}",
            report.worst_length, report.worst_s, report.constant_witness
        ));
    }
    Ok(bad)
}

fn ternary_series() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=10 {
        let cases: [(&str, Dfa, Word, usize); 2] = [
            ("M", m_series(n)?, thm5_word(n)?, n * n - 3 * n + 3),
            ("M'", m_prime_series(n)?, thm5_prime_word(n)?, n * n - 3 * n + 2),
        ];
        for (name, dfa, word, expected) in cases {
            // Runs both methods and reports any disagreement as an error.
            let len = reset_length(&dfa)?;
            if len != Some(expected) {
                bad.push(format!("{name}_{n}: reset length {len:?}, expected {expected}"));
            }
            if !is_irreducibly_synchronizing(&dfa)? {
                bad.push(format!("{name}_{n}: not irreducibly synchronizing"));
            }
            if word.len() != expected || check_sync_word(&dfa, &word)?.is_none() {
                bad.push(format!("{name}_{n}: explicit word {word} fails"));
            }
        }
    }
    for n in [6, 7] {
        let trace = inverse_layers(&m_series(n)?, default_layer_limit(n));
        for i in 0..=n - 3 {
            let want = vec![StateSet::interval(2, 2 + i)];
            if trace.layers.get(i * n) != Some(&want) {
                bad.push(format!("M_{n}: layer {} differs", i * n));
            }
        }
    }
    Ok(bad)
}

fn cerny_baseline() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=7 {
        let len = reset_length(&cerny(n)?)?;
        if len != Some((n - 1) * (n - 1)) {
            bad.push(format!("C_{n}: {len:?}"));
        }
    }
    Ok(bad)
}

fn oracle_equivalence() -> Outcome {
    let mut bad = Vec::new();
    let mut r = rng(0x5eed);
    for i in 0..1000 {
        let (n, rows) = random_synchronizing(&mut r, 8, 3);
        let dfa = common::build(n, &rows);
        let forward = shortest_reset_word(&dfa).map(|w| w.len());
        let layers = inverse_layers(&dfa, default_layer_limit(n)).found_at;
        let naive = naive_reset_length(n, &rows);
        if forward != layers || forward != naive {
            bad.push(format!("reset #{i}: forward {forward:?}, layers {layers:?}, naive {naive:?}"));
        }
    }
    for i in 0..200 {
        let n = r.gen_range(2..=8);
        let k = r.gen_range(1..=3);
        let rows = random_rows(&mut r, n, k);
        let dfa = common::build(n, &rows);
        let full = (1u32 << n) - 1;
        let naive: Vec<Option<usize>> =
            (1..full).map(|mask| naive_extension_length(&rows, mask)).collect();
        let first_stuck = naive.iter().position(Option::is_none).map(|j| j as u32 + 1);
        match (extension_profile(&dfa), first_stuck) {
            (Err(Error::NotExtendable(s)), Some(mask)) if s.mask() == mask => {}
            (Ok(report), None) => {
                let mut per_size = vec![0; n - 1];
                for (j, len) in naive.iter().enumerate() {
                    let size = (j as u32 + 1).count_ones() as usize;
                    per_size[size - 1] = per_size[size - 1].max(len.unwrap());
                }
                let max = per_size.iter().copied().max().unwrap();
                if report.max_length != max || report.per_cardinality_max != per_size {
                    bad.push(format!("profile #{i}: {} vs naive {max}", report.max_length));
                }
            }
            (got, want) => bad.push(format!("profile #{i}: {got:?} vs first unextendable {want:?}")),
        }
    }
    Ok(bad)
}

fn asymptotics_acknowledged() -> Outcome {
    let mut bad = Vec::new();
    for claim in [check_ext_hard_growth(&[5, 6, 7]), check_conservative_growth(&[4, 5, 6])] {
        if !claim.note.as_deref().is_some_and(|n| n.contains(FINITE_EVIDENCE)) {
            bad.push(format!("{} is not labelled as finite evidence", claim.claim_id));
        }
    }
    Ok(bad)
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("explicit synchronizing word of A_{2m-1}", prop1),
        ("Q_U extension bracket and greedy word", ext_easy_bracket),
        ("quadratic growth of Q_U extension", quadratic_growth),
        ("conservative counterexample", conservative_counterexample),
        ("B-series extension and avoidance", b_series_lengths),
        ("image-extension constant of B_8", image_extension_constant),
        ("M_n and M'_n reset lengths", ternary_series),
        ("Černý baseline", cerny_baseline),
        ("oracle equivalence on random automata", oracle_equivalence),
        ("asymptotic claims labelled finite", asymptotics_acknowledged),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let problems = check().unwrap_or_else(|e| vec![format!("error: {e}")]);
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}: {name}", i + 1);
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
