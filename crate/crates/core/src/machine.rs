//! Automaton data types: alphabets, one-way and two-way machines, validation.
//!
//! States are dense indices; printable names are carried for serialization
//! only. All machines are immutable after construction and every operation on
//! them is a pure function.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::MachineError;

/// Index of a symbol within an [`Alphabet`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Symbol(pub usize);

/// Index of a state within a machine.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StateId(pub usize);

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Tokens that may not be used as state or symbol names because the textual
/// format gives them a fixed meaning.
pub const RESERVED_TOKENS: [&str; 3] = ["|-", "-|", "->"];

fn check_token(name: &str) -> Result<(), MachineError> {
    let reason = if name.is_empty() {
        Some("empty".to_string())
    } else if name.chars().any(char::is_whitespace) {
        Some("contains whitespace".to_string())
    } else if name.contains('#') {
        Some("contains the comment character '#'".to_string())
    } else if RESERVED_TOKENS.contains(&name) {
        Some("reserved token".to_string())
    } else {
        None
    };
    match reason {
        Some(reason) => Err(MachineError::InvalidName {
            name: name.to_string(),
            reason,
        }),
        None => Ok(()),
    }
}

/// A finite input alphabet. Symbol identity is the index; names are unique
/// printable tokens.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, MachineError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(MachineError::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            check_token(n)?;
            if !seen.insert(n.clone()) {
                return Err(MachineError::DuplicateName(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// The binary alphabet `{a, b}` used by the built-in language families.
    pub fn ab() -> Self {
        Self::new(["a", "b"]).unwrap()
    }

    /// The unary alphabet `{a}`.
    pub fn unary() -> Self {
        Self::new(["a"]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.names.len()).map(Symbol)
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == name).map(Symbol)
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word. For single-character alphabets each character is one
    /// symbol; otherwise the text is split on whitespace.
    pub fn word(&self, text: &str) -> Option<Vec<Symbol>> {
        if text.is_empty() {
            return Some(Vec::new());
        }
        if self.single_char() && !text.contains(char::is_whitespace) {
            text.chars().map(|c| self.symbol(&c.to_string())).collect()
        } else {
            text.split_whitespace().map(|t| self.symbol(t)).collect()
        }
    }

    /// Renders a word back to text. The empty word prints as `ε`.
    pub fn render(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let parts: Vec<&str> = word.iter().map(|&s| self.name(s)).collect();
        if self.single_char() {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }
}

/// Content of a tape cell: a real input symbol or one of the two endmarkers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TapeSymbol {
    Real(Symbol),
    LeftEnd,
    RightEnd,
}

impl TapeSymbol {
    pub(crate) fn index(self, alphabet_len: usize) -> usize {
        match self {
            TapeSymbol::Real(s) => s.0,
            TapeSymbol::LeftEnd => alphabet_len,
            TapeSymbol::RightEnd => alphabet_len + 1,
        }
    }

    pub(crate) fn from_index(idx: usize, alphabet_len: usize) -> Self {
        if idx == alphabet_len {
            TapeSymbol::LeftEnd
        } else if idx == alphabet_len + 1 {
            TapeSymbol::RightEnd
        } else {
            TapeSymbol::Real(Symbol(idx))
        }
    }
}

/// Head movement of a two-way transition.
///
/// `Wrap` is a pseudo-move legal only on the right endmarker: the simulator
/// interprets it as a teleport to cell 1, which is how rotating machines see
/// the tape as circular.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Move {
    Left,
    Right,
    Stay,
    Wrap,
}

impl Move {
    pub fn letter(self) -> char {
        match self {
            Move::Left => 'L',
            Move::Right => 'R',
            Move::Stay => 'S',
            Move::Wrap => 'W',
        }
    }

    pub fn from_letter(c: &str) -> Option<Self> {
        match c {
            "L" => Some(Move::Left),
            "R" => Some(Move::Right),
            "S" => Some(Move::Stay),
            "W" => Some(Move::Wrap),
            _ => None,
        }
    }
}

/// When a two-way machine accepts: on reaching a final state anywhere, or
/// only with the head on one of the endmarkers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AcceptMode {
    Anywhere,
    OnRightEnd,
    OnLeftEnd,
}

impl AcceptMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AcceptMode::Anywhere => "anywhere",
            AcceptMode::OnRightEnd => "right-end",
            AcceptMode::OnLeftEnd => "left-end",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "anywhere" => Some(AcceptMode::Anywhere),
            "right-end" => Some(AcceptMode::OnRightEnd),
            "left-end" => Some(AcceptMode::OnLeftEnd),
            _ => None,
        }
    }
}

/// Initial head position: cell 0 (the left endmarker) or cell 1 (the first
/// real input symbol).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum StartCell {
    Cell0,
    Cell1,
}

impl StartCell {
    pub fn position(self) -> usize {
        match self {
            StartCell::Cell0 => 0,
            StartCell::Cell1 => 1,
        }
    }
}

/// A structural problem found by [`TwoWayMachine::validate`] or
/// [`OneWayMachine::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BadStateName { index: usize, reason: String },
    DuplicateStateName { name: String },
    InitialOutOfRange { index: usize },
    AcceptingOutOfRange { index: usize },
    TargetOutOfRange { from: String, index: usize },
    MovesOffLeftEnd { state: String },
    MovesOffRightEnd { state: String },
    WrapNotOnRightEnd { state: String, on: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadStateName { index, reason } => {
                write!(f, "state #{index} has an invalid name: {reason}")
            }
            Violation::DuplicateStateName { name } => {
                write!(f, "duplicate state name {name:?}")
            }
            Violation::InitialOutOfRange { index } => {
                write!(f, "initial state index {index} references an unknown state")
            }
            Violation::AcceptingOutOfRange { index } => {
                write!(f, "accepting set references unknown state index {index}")
            }
            Violation::TargetOutOfRange { from, index } => {
                write!(f, "transition from {from} targets unknown state index {index}")
            }
            Violation::MovesOffLeftEnd { state } => {
                write!(f, "transition from {state} moves off the left endmarker")
            }
            Violation::MovesOffRightEnd { state } => {
                write!(f, "transition from {state} moves off the right endmarker")
            }
            Violation::WrapNotOnRightEnd { state, on } => {
                write!(f, "transition from {state} wraps on {on}; wrap is legal only on the right endmarker")
            }
        }
    }
}

fn validate_names(names: &[String], out: &mut Vec<Violation>) {
    let mut seen = BTreeSet::new();
    for (i, n) in names.iter().enumerate() {
        if let Err(MachineError::InvalidName { reason, .. }) = check_token(n) {
            out.push(Violation::BadStateName { index: i, reason });
        }
        if !seen.insert(n.clone()) {
            out.push(Violation::DuplicateStateName { name: n.clone() });
        }
    }
}

/// A two-way finite automaton over an endmarked tape.
///
/// Represents deterministic and nondeterministic machines uniformly: the
/// machine is deterministic iff every transition image has at most one entry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoWayMachine {
    names: Vec<String>,
    alphabet: Alphabet,
    initial: StateId,
    accepting: BTreeSet<StateId>,
    // delta[state][tape index] -> sorted successor list
    delta: Vec<Vec<Vec<(StateId, Move)>>>,
    accept_mode: AcceptMode,
    start_cell: StartCell,
}

/// Incremental constructor for [`TwoWayMachine`].
pub struct TwoWayBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    delta: Vec<Vec<Vec<(StateId, Move)>>>,
    accepting: BTreeSet<StateId>,
    initial: Option<StateId>,
    accept_mode: AcceptMode,
    start_cell: StartCell,
}

impl TwoWayBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        TwoWayBuilder {
            alphabet,
            names: Vec::new(),
            delta: Vec::new(),
            accepting: BTreeSet::new(),
            initial: None,
            accept_mode: AcceptMode::Anywhere,
            start_cell: StartCell::Cell1,
        }
    }

    pub fn state(&mut self, name: impl Into<String>) -> StateId {
        let id = StateId(self.names.len());
        self.names.push(name.into());
        self.delta.push(vec![Vec::new(); self.alphabet.len() + 2]);
        id
    }

    pub fn transition(&mut self, from: StateId, on: TapeSymbol, to: StateId, mv: Move) {
        let idx = on.index(self.alphabet.len());
        let row = &mut self.delta[from.0][idx];
        if !row.contains(&(to, mv)) {
            row.push((to, mv));
        }
    }

    pub fn initial(&mut self, s: StateId) {
        self.initial = Some(s);
    }

    pub fn accept(&mut self, s: StateId) {
        self.accepting.insert(s);
    }

    pub fn accept_mode(&mut self, m: AcceptMode) {
        self.accept_mode = m;
    }

    pub fn start_cell(&mut self, c: StartCell) {
        self.start_cell = c;
    }

    pub fn build(mut self) -> TwoWayMachine {
        for row in &mut self.delta {
            for image in row.iter_mut() {
                image.sort_unstable();
            }
        }
        TwoWayMachine {
            initial: self.initial.expect("builder needs an initial state"),
            names: self.names,
            alphabet: self.alphabet,
            accepting: self.accepting,
            delta: self.delta,
            accept_mode: self.accept_mode,
            start_cell: self.start_cell,
        }
    }
}

impl TwoWayMachine {
    pub fn builder(alphabet: Alphabet) -> TwoWayBuilder {
        TwoWayBuilder::new(alphabet)
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.names[s.0]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting.contains(&s)
    }

    pub fn accept_mode(&self) -> AcceptMode {
        self.accept_mode
    }

    pub fn start_cell(&self) -> StartCell {
        self.start_cell
    }

    pub fn transitions(&self, from: StateId, on: TapeSymbol) -> &[(StateId, Move)] {
        &self.delta[from.0][on.index(self.alphabet.len())]
    }

    /// Iterates over every transition as `(from, on, to, move)`.
    pub fn transition_entries(
        &self,
    ) -> impl Iterator<Item = (StateId, TapeSymbol, StateId, Move)> + '_ {
        let k = self.alphabet.len();
        self.delta.iter().enumerate().flat_map(move |(q, row)| {
            row.iter().enumerate().flat_map(move |(idx, image)| {
                image
                    .iter()
                    .map(move |&(to, mv)| (StateId(q), TapeSymbol::from_index(idx, k), to, mv))
            })
        })
    }

    /// A machine is deterministic iff every transition image has size at
    /// most one. Missing transitions cause an immediate reject.
    pub fn is_deterministic(&self) -> bool {
        self.delta
            .iter()
            .all(|row| row.iter().all(|image| image.len() <= 1))
    }

    pub fn has_wrap(&self) -> bool {
        self.transition_entries().any(|(_, _, _, mv)| mv == Move::Wrap)
    }

    /// Checks every structural invariant; an empty list means the machine is
    /// well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        validate_names(&self.names, &mut out);
        let n = self.num_states();
        if self.initial.0 >= n {
            out.push(Violation::InitialOutOfRange {
                index: self.initial.0,
            });
        }
        for &a in &self.accepting {
            if a.0 >= n {
                out.push(Violation::AcceptingOutOfRange { index: a.0 });
            }
        }
        for (from, on, to, mv) in self.transition_entries() {
            let name = self.names[from.0].clone();
            if to.0 >= n {
                out.push(Violation::TargetOutOfRange {
                    from: name.clone(),
                    index: to.0,
                });
            }
            match (on, mv) {
                (TapeSymbol::LeftEnd, Move::Left) => {
                    out.push(Violation::MovesOffLeftEnd { state: name })
                }
                (TapeSymbol::RightEnd, Move::Right) => {
                    out.push(Violation::MovesOffRightEnd { state: name })
                }
                (TapeSymbol::RightEnd, Move::Wrap) => {}
                (on, Move::Wrap) => out.push(Violation::WrapNotOnRightEnd {
                    state: name,
                    on: match on {
                        TapeSymbol::Real(s) => self.alphabet.name(s).to_string(),
                        TapeSymbol::LeftEnd => "|-".to_string(),
                        TapeSymbol::RightEnd => unreachable!(),
                    },
                }),
                _ => {}
            }
        }
        out
    }

    fn fresh_name(&self, base: &str) -> String {
        if !self.names.iter().any(|n| n == base) {
            return base.to_string();
        }
        let mut i = 0usize;
        loop {
            let candidate = format!("{base}{i}");
            if !self.names.iter().any(|n| n == &candidate) {
                return candidate;
            }
            i += 1;
        }
    }

    /// Converts the acceptance condition, preserving the accepted language.
    ///
    /// Adds at most one helper state: outgoing transitions of accepting
    /// states are redirected, at exactly the tape symbols where the source
    /// condition fires, into a helper that realises the target condition.
    /// Determinism is preserved.
    pub fn with_accept_mode(&self, target: AcceptMode) -> TwoWayMachine {
        if self.accept_mode == target {
            return self.clone();
        }
        let k = self.alphabet.len();
        let mut out = self.clone();
        let trigger_idxs: Vec<usize> = match self.accept_mode {
            AcceptMode::Anywhere => (0..k + 2).collect(),
            AcceptMode::OnRightEnd => vec![k + 1],
            AcceptMode::OnLeftEnd => vec![k],
        };
        let helper = StateId(out.names.len());
        out.names.push(self.fresh_name("halt"));
        out.delta.push(vec![Vec::new(); k + 2]);
        for &q in &self.accepting {
            for &idx in &trigger_idxs {
                out.delta[q.0][idx] = vec![(helper, Move::Stay)];
            }
        }
        match target {
            AcceptMode::Anywhere => {} // helper is an accepting sink
            AcceptMode::OnRightEnd => {
                for idx in 0..k {
                    out.delta[helper.0][idx] = vec![(helper, Move::Right)];
                }
                out.delta[helper.0][k] = vec![(helper, Move::Right)];
            }
            AcceptMode::OnLeftEnd => {
                for idx in 0..k {
                    out.delta[helper.0][idx] = vec![(helper, Move::Left)];
                }
                out.delta[helper.0][k + 1] = vec![(helper, Move::Left)];
            }
        }
        out.accepting = BTreeSet::from([helper]);
        out.accept_mode = target;
        out
    }
}

/// A classical one-way finite automaton (DFA or NFA, no ε-transitions).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneWayMachine {
    names: Vec<String>,
    alphabet: Alphabet,
    initial: StateId,
    accepting: BTreeSet<StateId>,
    // delta[state][symbol] -> sorted successor list
    delta: Vec<Vec<Vec<StateId>>>,
}

/// Incremental constructor for [`OneWayMachine`].
pub struct OneWayBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    delta: Vec<Vec<Vec<StateId>>>,
    accepting: BTreeSet<StateId>,
    initial: Option<StateId>,
}

impl OneWayBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        OneWayBuilder {
            alphabet,
            names: Vec::new(),
            delta: Vec::new(),
            accepting: BTreeSet::new(),
            initial: None,
        }
    }

    pub fn state(&mut self, name: impl Into<String>) -> StateId {
        let id = StateId(self.names.len());
        self.names.push(name.into());
        self.delta.push(vec![Vec::new(); self.alphabet.len()]);
        id
    }

    pub fn transition(&mut self, from: StateId, on: Symbol, to: StateId) {
        let row = &mut self.delta[from.0][on.0];
        if !row.contains(&to) {
            row.push(to);
        }
    }

    pub fn initial(&mut self, s: StateId) {
        self.initial = Some(s);
    }

    pub fn accept(&mut self, s: StateId) {
        self.accepting.insert(s);
    }

    pub fn build(mut self) -> OneWayMachine {
        for row in &mut self.delta {
            for image in row.iter_mut() {
                image.sort_unstable();
            }
        }
        OneWayMachine {
            initial: self.initial.expect("builder needs an initial state"),
            names: self.names,
            alphabet: self.alphabet,
            accepting: self.accepting,
            delta: self.delta,
        }
    }
}

impl OneWayMachine {
    pub fn builder(alphabet: Alphabet) -> OneWayBuilder {
        OneWayBuilder::new(alphabet)
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.names[s.0]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting.contains(&s)
    }

    pub fn successors(&self, from: StateId, on: Symbol) -> &[StateId] {
        &self.delta[from.0][on.0]
    }

    pub fn transition_entries(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter().enumerate().flat_map(move |(s, image)| {
                image.iter().map(move |&to| (StateId(q), Symbol(s), to))
            })
        })
    }

    /// Deterministic means every image has exactly one entry: total and
    /// single-valued.
    pub fn is_deterministic(&self) -> bool {
        self.delta
            .iter()
            .all(|row| row.iter().all(|image| image.len() == 1))
    }

    /// True when no image has more than one entry (the transition function
    /// may still be partial).
    pub fn has_single_images(&self) -> bool {
        self.delta
            .iter()
            .all(|row| row.iter().all(|image| image.len() <= 1))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        validate_names(&self.names, &mut out);
        let n = self.num_states();
        if self.initial.0 >= n {
            out.push(Violation::InitialOutOfRange {
                index: self.initial.0,
            });
        }
        for &a in &self.accepting {
            if a.0 >= n {
                out.push(Violation::AcceptingOutOfRange { index: a.0 });
            }
        }
        for (from, _, to) in self.transition_entries() {
            if to.0 >= n {
                out.push(Violation::TargetOutOfRange {
                    from: self.names[from.0].clone(),
                    index: to.0,
                });
            }
        }
        out
    }

    /// Embeds the machine as a two-way automaton: every transition moves
    /// right and acceptance happens on the right endmarker.
    pub fn to_two_way(&self) -> TwoWayMachine {
        let mut b = TwoWayMachine::builder(self.alphabet.clone());
        for name in &self.names {
            b.state(name.clone());
        }
        for (from, sym, to) in self.transition_entries() {
            b.transition(from, TapeSymbol::Real(sym), to, Move::Right);
        }
        b.initial(self.initial);
        for &a in &self.accepting {
            b.accept(a);
        }
        b.accept_mode(AcceptMode::OnRightEnd);
        b.start_cell(StartCell::Cell1);
        b.build()
    }
}

/// Either flavour of machine; the common currency of the CLI and the
/// equivalence checks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Machine {
    OneWay(OneWayMachine),
    TwoWay(TwoWayMachine),
}

impl Machine {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Machine::OneWay(m) => m.alphabet(),
            Machine::TwoWay(m) => m.alphabet(),
        }
    }

    pub fn num_states(&self) -> usize {
        match self {
            Machine::OneWay(m) => m.num_states(),
            Machine::TwoWay(m) => m.num_states(),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        match self {
            Machine::OneWay(m) => m.validate(),
            Machine::TwoWay(m) => m.validate(),
        }
    }

    pub fn as_one_way(&self) -> Option<&OneWayMachine> {
        match self {
            Machine::OneWay(m) => Some(m),
            Machine::TwoWay(_) => None,
        }
    }

    pub fn as_two_way(&self) -> Option<&TwoWayMachine> {
        match self {
            Machine::TwoWay(m) => Some(m),
            Machine::OneWay(_) => None,
        }
    }
}
