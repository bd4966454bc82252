//! Reference single-site decompositions and the comparison against them.
//!
//! A fixture holds one term per line, `delta_index | coefficient | pauli_spec`.
//! The coefficient is a signed monomial such as `t/2`, `-J/16` or `3U/4`.
//! The Pauli spec is a space separated list of `P[r,c]` tokens (`P` one of
//! `X`, `Y`, `Z`) acting on spinless row `i + r` and column `(2j-1) + c` of the
//! site `(i, j)`, the token `JW` for the vertical hop string
//! `prod_{beta > 2j} Z[i, beta] * prod_{beta < 2j-1} Z[i+1, beta]`, or `I`.
//! Lines starting with `#` are comments.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lattice::{Boundary, LatticeSpec, Model};
use crate::models::build;
use crate::pauli::{Pauli, PauliString};
use crate::poly::{Polynomial, Var};
use crate::Coefficient;

pub const TABLE1_HUBBARD: &str = include_str!("../data/table1_hubbard.txt");
pub const TABLE2_TJ: &str = include_str!("../data/table2_tj.txt");

pub fn fixture_file_name(model: Model) -> &'static str {
    match model {
        Model::Hubbard => "table1_hubbard.txt",
        Model::TJ => "table2_tj.txt",
    }
}

pub fn fixture_text(model: Model) -> &'static str {
    match model {
        Model::Hubbard => TABLE1_HUBBARD,
        Model::TJ => TABLE2_TJ,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpecToken {
    Op { row: usize, col: usize, pauli: Pauli },
    String,
    Identity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenEntry {
    pub delta: usize,
    pub coefficient: Coefficient,
    pub spec: Vec<SpecToken>,
    pub line: usize,
}

fn fixture_err(line: usize, message: impl Into<String>) -> Error {
    Error::Fixture {
        line,
        message: message.into(),
    }
}

fn parse_coefficient(s: &str, line: usize) -> Result<Coefficient> {
    let s = s.trim();
    let (negative, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r.trim()),
        None => (false, s),
    };
    let (num_part, den) = match rest.split_once('/') {
        Some((n, d)) => (
            n.trim(),
            d.trim()
                .parse::<i64>()
                .map_err(|_| fixture_err(line, format!("bad denominator in `{s}`")))?,
        ),
        None => (rest, 1),
    };
    let var_char = num_part
        .chars()
        .last()
        .ok_or_else(|| fixture_err(line, "empty coefficient"))?;
    let var = match var_char {
        't' => Var::T,
        'U' => Var::U,
        'J' => Var::J,
        c => return Err(fixture_err(line, format!("unknown parameter `{c}`"))),
    };
    let digits = &num_part[..num_part.len() - 1];
    let num = if digits.is_empty() {
        1
    } else {
        digits
            .parse::<i64>()
            .map_err(|_| fixture_err(line, format!("bad numerator in `{s}`")))?
    };
    if den == 0 {
        return Err(fixture_err(line, "zero denominator"));
    }
    Ok(Polynomial::var(var, if negative { -num } else { num }, den))
}

fn parse_token(tok: &str, line: usize) -> Result<SpecToken> {
    match tok {
        "JW" => return Ok(SpecToken::String),
        "I" => return Ok(SpecToken::Identity),
        _ => {}
    }
    let bad = || fixture_err(line, format!("bad Pauli token `{tok}`"));
    let mut chars = tok.chars();
    let pauli = chars.next().and_then(Pauli::from_char).ok_or_else(bad)?;
    let inner = chars
        .as_str()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(bad)?;
    let (r, c) = inner.split_once(',').ok_or_else(bad)?;
    let row: usize = r.trim().parse().map_err(|_| bad())?;
    let col: usize = c.trim().parse().map_err(|_| bad())?;
    if row > 1 || col > 3 || pauli == Pauli::I {
        return Err(bad());
    }
    Ok(SpecToken::Op { row, col, pauli })
}

pub fn parse_fixture(text: &str) -> Result<Vec<GoldenEntry>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split('|').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(fixture_err(line, "expected three `|` separated fields"));
        }
        let delta = fields[0]
            .parse()
            .map_err(|_| fixture_err(line, format!("bad delta index `{}`", fields[0])))?;
        let coefficient = parse_coefficient(fields[1], line)?;
        let spec = fields[2]
            .split_whitespace()
            .map(|t| parse_token(t, line))
            .collect::<Result<Vec<_>>>()?;
        if spec.is_empty() {
            return Err(fixture_err(line, "empty Pauli spec"));
        }
        out.push(GoldenEntry {
            delta,
            coefficient,
            spec,
            line,
        });
    }
    Ok(out)
}

/// Lattice and site at which the fixtures are resolved: an interior site whose
/// vertical string touches both rows.
pub fn reference_site() -> (LatticeSpec, (usize, usize)) {
    (
        LatticeSpec::square(4, Boundary::Open).expect("valid lattice"),
        (1, 1),
    )
}

fn resolve(entry: &GoldenEntry, lattice: &LatticeSpec, site: (usize, usize)) -> Result<PauliString> {
    let cols = lattice.spinless_cols();
    let (i, j) = site;
    let base = 2 * j;
    let n = lattice.n_qubits();
    let mut ops = Vec::new();
    for tok in &entry.spec {
        match tok {
            SpecToken::Identity => {}
            SpecToken::Op { row, col, pauli } => {
                ops.push(((i + row) * cols + base + col, *pauli));
            }
            SpecToken::String => {
                ops.extend((base + 2..cols).map(|c| (i * cols + c, Pauli::Z)));
                ops.extend((0..base).map(|c| ((i + 1) * cols + c, Pauli::Z)));
            }
        }
    }
    PauliString::from_ops(n, ops).map_err(|e| fixture_err(entry.line, e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenMatch {
    pub model: Model,
    pub matched: usize,
    pub expected: usize,
}

/// Compare the generated group of the reference site with the built-in table.
pub fn table_golden_check(model: Model) -> Result<GoldenMatch> {
    golden_check_text(model, fixture_text(model))
}

/// Same as [`table_golden_check`] with the fixture read from `dir`.
pub fn golden_check_dir(model: Model, dir: &Path) -> Result<GoldenMatch> {
    let path = dir.join(fixture_file_name(model));
    let text = std::fs::read_to_string(&path)
        .map_err(|e| fixture_err(0, format!("{}: {e}", path.display())))?;
    golden_check_text(model, &text)
}

/// Multiset comparison of `(PauliString, |coefficient|)` pairs.
pub fn golden_check_text(model: Model, text: &str) -> Result<GoldenMatch> {
    let entries = parse_fixture(text)?;
    let (lattice, site) = reference_site();
    let groups = build(model, &lattice)?;
    let group = groups
        .iter()
        .find(|g| g.site == site)
        .expect("reference site present");

    let mut generated: Vec<Option<(PauliString, Coefficient)>> = group
        .terms
        .iter()
        .map(|t| Some((t.pauli.clone(), t.coefficient.abs())))
        .collect();
    let mut matched = 0usize;
    let mut unmatched: Vec<(&GoldenEntry, PauliString, Coefficient)> = Vec::new();
    for entry in &entries {
        let pauli = resolve(entry, &lattice, site)?;
        let weight = entry.coefficient.abs();
        let hit = generated
            .iter_mut()
            .find(|g| matches!(g, Some((p, c)) if *p == pauli && *c == weight));
        match hit {
            Some(slot) => {
                *slot = None;
                matched += 1;
            }
            None => unmatched.push((entry, pauli, weight)),
        }
    }

    let mut diff = String::new();
    for (entry, pauli, weight) in &unmatched {
        let same_string = generated
            .iter_mut()
            .find(|g| matches!(g, Some((p, _)) if p == pauli));
        match same_string {
            Some(slot) => {
                let (_, got) = slot.take().expect("present");
                let _ = writeln!(
                    diff,
                    "mis-weighted: delta {} ({}) expected |c| = {}, generated {}",
                    entry.delta,
                    pauli.sparse_label(),
                    weight,
                    got
                );
            }
            None => {
                let _ = writeln!(
                    diff,
                    "missing: delta {} ({}) |c| = {}",
                    entry.delta,
                    pauli.sparse_label(),
                    weight
                );
            }
        }
    }
    for (pauli, c) in generated.into_iter().flatten() {
        let _ = writeln!(diff, "extra: ({}) |c| = {}", pauli.sparse_label(), c);
    }
    if diff.is_empty() {
        Ok(GoldenMatch {
            model,
            matched,
            expected: entries.len(),
        })
    } else {
        Err(Error::GoldenMismatch {
            model: model.to_string(),
            diff,
        })
    }
}

/// Total magnitude `sum |c|` listed in a fixture, for diagnostics.
pub fn fixture_weight(entries: &[GoldenEntry]) -> Coefficient {
    entries.iter().fold(Polynomial::zero(), |acc, e| &acc + &e.coefficient.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_coefficients() {
        assert_eq!(parse_coefficient("-t/8", 1).unwrap().to_string(), "-1/8 t");
        assert_eq!(parse_coefficient("3U/4", 1).unwrap().to_string(), "3/4 U");
        assert_eq!(parse_coefficient("J", 1).unwrap().to_string(), "J");
        assert!(parse_coefficient("x/2", 1).is_err());
        assert!(parse_coefficient("t/0", 1).is_err());
    }

    #[test]
    fn parses_tokens() {
        assert_eq!(
            parse_token("Y[1,3]", 1).unwrap(),
            SpecToken::Op {
                row: 1,
                col: 3,
                pauli: Pauli::Y
            }
        );
        assert!(parse_token("Y[2,0]", 1).is_err());
        assert!(parse_token("Q[0,0]", 1).is_err());
    }

    #[test]
    fn builtin_fixtures_parse() {
        assert_eq!(parse_fixture(TABLE1_HUBBARD).unwrap().len(), 12);
        assert_eq!(parse_fixture(TABLE2_TJ).unwrap().len(), 64);
        let w = fixture_weight(&parse_fixture(TABLE1_HUBBARD).unwrap());
        assert_eq!(w.to_string(), "4 t + U");
    }

    #[test]
    fn tables_match_generated_groups() {
        let h = table_golden_check(Model::Hubbard).unwrap();
        assert_eq!((h.matched, h.expected), (12, 12));
        let t = table_golden_check(Model::TJ).unwrap();
        assert_eq!((t.matched, t.expected), (64, 64));
    }

    #[test]
    fn corrupted_entry_is_named() {
        let corrupted = TABLE2_TJ.replace("33 | J/16 |", "33 | J/8 |");
        match golden_check_text(Model::TJ, &corrupted) {
            Err(Error::GoldenMismatch { diff, .. }) => {
                assert!(diff.contains("delta 33"), "{diff}");
                assert!(diff.contains("mis-weighted"), "{diff}");
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
        let dropped: String = TABLE1_HUBBARD
            .lines()
            .filter(|l| !l.starts_with("12 |"))
            .map(|l| format!("{l}\n"))
            .collect();
        match golden_check_text(Model::Hubbard, &dropped) {
            Err(Error::GoldenMismatch { diff, .. }) => assert!(diff.contains("extra"), "{diff}"),
            other => panic!("expected mismatch, got {other:?}"),
        }
    }
}
