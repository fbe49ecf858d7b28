//! Automaton file formats: a JSON document, a plain-text table, and DOT
//! export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use resetlab::{letter_name, Dfa, Word};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// JSON form of an automaton. States are 1-based; `delta[a][q - 1]` is the
/// target of `q_q` under the `a`-th letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaDocument {
    pub n: usize,
    pub alphabet: Vec<char>,
    pub delta: Vec<Vec<usize>>,
}

/// An automaton together with the names of its letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    pub dfa: Dfa,
    pub alphabet: Vec<char>,
}

impl Automaton {
    /// Letters named `a, b, c, ...`.
    pub fn with_default_names(dfa: Dfa) -> Automaton {
        let alphabet = (0..dfa.k()).map(letter_name).collect();
        Automaton { dfa, alphabet }
    }

    pub fn from_document(doc: DfaDocument) -> Result<Automaton, CliError> {
        if doc.alphabet.len() != doc.delta.len() {
            return Err(CliError::Input(format!(
                "alphabet has {} letters but delta has {} rows",
                doc.alphabet.len(),
                doc.delta.len()
            )));
        }
        for (i, c) in doc.alphabet.iter().enumerate() {
            if doc.alphabet[..i].contains(c) {
                return Err(CliError::Input(format!("letter '{c}' appears twice")));
            }
        }
        let dfa = Dfa::from_one_based(doc.n, &doc.delta)?;
        Ok(Automaton {
            dfa,
            alphabet: doc.alphabet,
        })
    }

    pub fn to_document(&self) -> DfaDocument {
        let delta = self
            .dfa
            .rows()
            .into_iter()
            .map(|row| row.into_iter().map(|q| q + 1).collect())
            .collect();
        DfaDocument {
            n: self.dfa.n(),
            alphabet: self.alphabet.clone(),
            delta,
        }
    }

    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            "ε".to_string()
        } else {
            word.render(&self.alphabet)
        }
    }

    pub fn letter_index(&self, name: char) -> Option<usize> {
        self.alphabet.iter().position(|&c| c == name)
    }

    /// Parses either format, picking JSON when the text starts with `{`.
    pub fn parse(text: &str) -> Result<Automaton, CliError> {
        if text.trim_start().starts_with('{') {
            Automaton::parse_json(text)
        } else {
            Automaton::parse_text(text)
        }
    }

    pub fn parse_json(text: &str) -> Result<Automaton, CliError> {
        let doc: DfaDocument = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("malformed automaton JSON: {e}")))?;
        Automaton::from_document(doc)
    }

    /// The plain-text table: a header line `n k`, then one line of `n`
    /// targets per letter. Blank lines and lines starting with `#` are
    /// skipped. Letters are named `a, b, c, ...`.
    pub fn parse_text(text: &str) -> Result<Automaton, CliError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| CliError::Input("empty automaton file".into()))?;
        let header = numbers(header)?;
        let [n, k] = header[..] else {
            return Err(CliError::Input(format!(
                "header must be `n k`, found {} numbers",
                header.len()
            )));
        };
        let rows = lines.map(numbers).collect::<Result<Vec<_>, _>>()?;
        if rows.len() != k {
            return Err(CliError::Input(format!(
                "header announces {k} letters but {} rows follow",
                rows.len()
            )));
        }
        let dfa = Dfa::from_one_based(n, &rows)?;
        Ok(Automaton::with_default_names(dfa))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("documents always serialize")
    }

    /// The plain-text table. Custom letter names are not representable and
    /// are listed in a leading comment.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let defaults: Vec<char> = (0..self.dfa.k()).map(letter_name).collect();
        if self.alphabet != defaults {
            let names: String = self.alphabet.iter().collect();
            let _ = writeln!(out, "# letters: {names}");
        }
        let _ = writeln!(out, "{} {}", self.dfa.n(), self.dfa.k());
        for row in self.to_document().delta {
            let row: Vec<String> = row.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// Graphviz digraph with states `q1..qn`. Transitions between the same
    /// pair of states share one edge labelled with all their letters.
    pub fn to_dot(&self) -> String {
        let mut edges: BTreeMap<(usize, usize), Vec<char>> = BTreeMap::new();
        for (a, &name) in self.alphabet.iter().enumerate() {
            for q in 0..self.dfa.n() {
                edges
                    .entry((q, self.dfa.target(q, a)))
                    .or_default()
                    .push(name);
            }
        }
        let mut out = String::from("digraph automaton {\n    rankdir=LR;\n    node [shape=circle];\n");
        for q in 1..=self.dfa.n() {
            let _ = writeln!(out, "    q{q};");
        }
        for ((p, q), letters) in edges {
            let label: Vec<String> = letters.iter().map(char::to_string).collect();
            let _ = writeln!(out, "    q{} -> q{} [label=\"{}\"];", p + 1, q + 1, label.join(","));
        }
        out.push_str("}\n");
        out
    }
}

fn numbers(line: &str) -> Result<Vec<usize>, CliError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| CliError::Input(format!("expected a number, found '{tok}'")))
        })
        .collect()
}
