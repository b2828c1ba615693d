//! The on-disk automaton format.
//!
//! Line-oriented UTF-8; `#` starts a comment. Header lines in any order:
//!
//! ```text
//! kind: <1dfa|1nfa|2dfa|2nfa>
//! alphabet: <tokens>
//! states: <tokens>
//! initial: <token>
//! accepting: <tokens>
//! accept-mode: <anywhere|right-end|left-end>   (two-way only)
//! start-cell: <0|1>                            (two-way only)
//! ```
//!
//! followed by transition lines. Two-way machines use
//! `t: <state> <symbol|'|-'|'-|'> -> <state> <L|R|S|W>` (`W` wraps, legal
//! only on `-|`); one-way machines omit the move letter. Nondeterminism is
//! written as repeated `t:` lines. Serialization is deterministic, so equal
//! machines print identically.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::FormatError;
use crate::machine::{
    AcceptMode, Alphabet, Machine, Move, OneWayBuilder, OneWayMachine, StartCell, StateId,
    TapeSymbol, TwoWayBuilder, TwoWayMachine,
};

/// Renders a machine in the textual format.
pub fn serialize(machine: &Machine) -> String {
    match machine {
        Machine::OneWay(m) => serialize_one_way(m),
        Machine::TwoWay(m) => serialize_two_way(m),
    }
}

fn serialize_one_way(m: &OneWayMachine) -> String {
    let mut out = String::new();
    let kind = if m.is_deterministic() { "1dfa" } else { "1nfa" };
    writeln!(out, "kind: {kind}").unwrap();
    writeln!(out, "alphabet: {}", m.alphabet().names().join(" ")).unwrap();
    writeln!(out, "states: {}", m.state_names().join(" ")).unwrap();
    writeln!(out, "initial: {}", m.state_name(m.initial())).unwrap();
    let accepting: Vec<&str> = m.accepting().iter().map(|&q| m.state_name(q)).collect();
    writeln!(out, "accepting: {}", accepting.join(" ")).unwrap();
    for q in 0..m.num_states() {
        for s in m.alphabet().symbols() {
            for &to in m.successors(StateId(q), s) {
                writeln!(
                    out,
                    "t: {} {} -> {}",
                    m.state_name(StateId(q)),
                    m.alphabet().name(s),
                    m.state_name(to)
                )
                .unwrap();
            }
        }
    }
    out
}

fn serialize_two_way(m: &TwoWayMachine) -> String {
    let mut out = String::new();
    let kind = if m.is_deterministic() { "2dfa" } else { "2nfa" };
    writeln!(out, "kind: {kind}").unwrap();
    writeln!(out, "alphabet: {}", m.alphabet().names().join(" ")).unwrap();
    writeln!(out, "states: {}", m.state_names().join(" ")).unwrap();
    writeln!(out, "initial: {}", m.state_name(m.initial())).unwrap();
    let accepting: Vec<&str> = m.accepting().iter().map(|&q| m.state_name(q)).collect();
    writeln!(out, "accepting: {}", accepting.join(" ")).unwrap();
    writeln!(out, "accept-mode: {}", m.accept_mode().as_str()).unwrap();
    writeln!(
        out,
        "start-cell: {}",
        match m.start_cell() {
            StartCell::Cell0 => 0,
            StartCell::Cell1 => 1,
        }
    )
    .unwrap();
    let k = m.alphabet().len();
    for q in 0..m.num_states() {
        for idx in 0..k + 2 {
            let on = TapeSymbol::from_index(idx, k);
            let token = match on {
                TapeSymbol::Real(s) => m.alphabet().name(s).to_string(),
                TapeSymbol::LeftEnd => "|-".to_string(),
                TapeSymbol::RightEnd => "-|".to_string(),
            };
            for &(to, mv) in m.transitions(StateId(q), on) {
                writeln!(
                    out,
                    "t: {} {} -> {} {}",
                    m.state_name(StateId(q)),
                    token,
                    m.state_name(to),
                    mv.letter()
                )
                .unwrap();
            }
        }
    }
    out
}

struct RawTransition {
    line: usize,
    from: String,
    on: String,
    to: String,
    mv: Option<String>,
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses the textual format into a machine.
pub fn parse(text: &str) -> Result<Machine, FormatError> {
    let mut headers: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut transitions: Vec<RawTransition> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected '<key>: <value>'"))?;
        let key = key.trim();
        let rest = rest.trim();
        if key == "t" {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            let arrow = tokens
                .iter()
                .position(|&t| t == "->")
                .ok_or_else(|| syntax(line, "transition needs '->'"))?;
            if arrow != 2 || !(tokens.len() == 4 || tokens.len() == 5) {
                return Err(syntax(
                    line,
                    "expected 't: <state> <symbol> -> <state> [move]'",
                ));
            }
            transitions.push(RawTransition {
                line,
                from: tokens[0].to_string(),
                on: tokens[1].to_string(),
                to: tokens[3].to_string(),
                mv: tokens.get(4).map(|t| t.to_string()),
            });
        } else {
            if headers.contains_key(key) {
                return Err(syntax(line, format!("duplicate header {key:?}")));
            }
            headers.insert(key.to_string(), (line, rest.to_string()));
        }
    }

    let mut take = |key: &str| -> Result<(usize, String), FormatError> {
        headers.remove(key).ok_or(FormatError::Missing {
            key: key.to_string(),
        })
    };
    let (kind_line, kind) = take("kind")?;
    let (alpha_line, alphabet_text) = take("alphabet")?;
    let (_, states_text) = take("states")?;
    let (initial_line, initial_text) = take("initial")?;
    let (accepting_line, accepting_text) = take("accepting")?;
    let two_way = match kind.as_str() {
        "1dfa" | "1nfa" => false,
        "2dfa" | "2nfa" => true,
        other => return Err(syntax(kind_line, format!("unknown kind {other:?}"))),
    };

    let alphabet = Alphabet::new(alphabet_text.split_whitespace().map(str::to_string))
        .map_err(|e| syntax(alpha_line, e.to_string()))?;
    let state_names: Vec<String> = states_text.split_whitespace().map(str::to_string).collect();
    if state_names.is_empty() {
        return Err(FormatError::Invalid("machine needs at least one state".to_string()));
    }
    let state_index = |name: &str, line: usize| -> Result<StateId, FormatError> {
        state_names
            .iter()
            .position(|n| n == name)
            .map(StateId)
            .ok_or_else(|| syntax(line, format!("unknown state {name:?}")))
    };
    let initial = state_index(&initial_text, initial_line)?;
    let accepting: Vec<StateId> = accepting_text
        .split_whitespace()
        .map(|name| state_index(name, accepting_line))
        .collect::<Result<_, _>>()?;

    let machine = if two_way {
        let accept_mode = match headers.remove("accept-mode") {
            None => AcceptMode::Anywhere,
            Some((line, text)) => AcceptMode::parse(&text)
                .ok_or_else(|| syntax(line, format!("unknown accept-mode {text:?}")))?,
        };
        let start_cell = match headers.remove("start-cell") {
            None => StartCell::Cell1,
            Some((line, text)) => match text.as_str() {
                "0" => StartCell::Cell0,
                "1" => StartCell::Cell1,
                other => return Err(syntax(line, format!("start-cell must be 0 or 1, got {other:?}"))),
            },
        };
        let mut b = TwoWayBuilder::new(alphabet.clone());
        for name in &state_names {
            b.state(name.clone());
        }
        for t in &transitions {
            let from = state_index(&t.from, t.line)?;
            let to = state_index(&t.to, t.line)?;
            let on = match t.on.as_str() {
                "|-" => TapeSymbol::LeftEnd,
                "-|" => TapeSymbol::RightEnd,
                sym => TapeSymbol::Real(
                    alphabet
                        .symbol(sym)
                        .ok_or_else(|| syntax(t.line, format!("unknown symbol {sym:?}")))?,
                ),
            };
            let mv = match &t.mv {
                Some(letter) => Move::from_letter(letter)
                    .ok_or_else(|| syntax(t.line, format!("unknown move {letter:?}")))?,
                None => return Err(syntax(t.line, "two-way transitions need a move letter")),
            };
            b.transition(from, on, to, mv);
        }
        b.initial(initial);
        for a in accepting {
            b.accept(a);
        }
        b.accept_mode(accept_mode);
        b.start_cell(start_cell);
        let m = b.build();
        if kind == "2dfa" && !m.is_deterministic() {
            return Err(FormatError::Invalid(
                "kind 2dfa but the transition relation is nondeterministic".to_string(),
            ));
        }
        Machine::TwoWay(m)
    } else {
        for key in ["accept-mode", "start-cell"] {
            if let Some((line, _)) = headers.remove(key) {
                return Err(syntax(line, format!("{key} applies to two-way machines only")));
            }
        }
        let mut b = OneWayBuilder::new(alphabet.clone());
        for name in &state_names {
            b.state(name.clone());
        }
        for t in &transitions {
            if t.mv.is_some() {
                return Err(syntax(t.line, "one-way transitions take no move letter"));
            }
            let from = state_index(&t.from, t.line)?;
            let to = state_index(&t.to, t.line)?;
            let sym = alphabet
                .symbol(&t.on)
                .ok_or_else(|| syntax(t.line, format!("unknown symbol {:?}", t.on)))?;
            b.transition(from, sym, to);
        }
        b.initial(initial);
        for a in accepting {
            b.accept(a);
        }
        let m = b.build();
        if kind == "1dfa" && !m.is_deterministic() {
            return Err(FormatError::Invalid(
                "kind 1dfa needs a total deterministic transition function".to_string(),
            ));
        }
        Machine::OneWay(m)
    };

    if let Some((key, (line, _))) = headers.into_iter().next() {
        return Err(syntax(line, format!("unknown header {key:?}")));
    }
    Ok(machine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, Family, FamilySpec, Variant};

    #[test]
    fn parse_serialize_roundtrip_for_generated_machines() {
        for family in [Family::I, Family::L] {
            for variant in Variant::ALL {
                let spec = FamilySpec::new(family, 3, variant);
                if spec.check().is_err() {
                    continue;
                }
                let machine = generate(&spec).unwrap();
                let text = serialize(&machine);
                let parsed = parse(&text).unwrap();
                assert_eq!(machine, parsed, "roundtrip failed for {spec}");
            }
        }
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(
            parse("kind: 1dfa\nstates: q\ninitial: q\naccepting:\n"),
            Err(FormatError::Missing { .. })
        ));
        let bad_kind = "kind: 3dfa\nalphabet: a\nstates: q\ninitial: q\naccepting:\n";
        assert!(parse(bad_kind).is_err());
        let bad_state =
            "kind: 1nfa\nalphabet: a\nstates: q\ninitial: p\naccepting:\n";
        assert!(parse(bad_state).is_err());
        let undeclared_dfa =
            "kind: 1dfa\nalphabet: a b\nstates: q\ninitial: q\naccepting:\nt: q a -> q\n";
        assert!(matches!(parse(undeclared_dfa), Err(FormatError::Invalid(_))));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "\n# header comment\nkind: 1nfa\nalphabet: a b # trailing\nstates: q0 q1\ninitial: q0\naccepting: q1\n\nt: q0 a -> q1\n";
        let m = parse(text).unwrap();
        assert_eq!(m.num_states(), 2);
    }
}
