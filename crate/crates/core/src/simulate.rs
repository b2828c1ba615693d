//! Exact simulation semantics.
//!
//! Deterministic two-way runs halt on acceptance, reject on a missing
//! transition, and report `Loop` once the step count exceeds the pigeonhole
//! bound `|Q|·(|w|+2)`. Nondeterministic acceptance is reachability in the
//! configuration graph over `Q × [0, |w|+1]`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::SimulateError;
use crate::machine::{
    AcceptMode, Machine, Move, OneWayMachine, StateId, Symbol, TapeSymbol, TwoWayMachine,
};

/// One instant of a two-way run: control state plus head position.
///
/// Position 0 holds the left endmarker and position `|w|+1` the right one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Configuration {
    pub state: StateId,
    pub position: usize,
}

/// Outcome of a deterministic run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Accept,
    Reject,
    Loop,
}

/// A time-indexed record of one deterministic run.
///
/// For wrap-free machines consecutive positions differ by at most one; a
/// wrap step jumps from the right endmarker to cell 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trajectory {
    pub steps: Vec<Configuration>,
    pub verdict: Verdict,
}

impl Trajectory {
    pub fn positions(&self) -> Vec<usize> {
        self.steps.iter().map(|c| c.position).collect()
    }

    pub fn last(&self) -> &Configuration {
        self.steps.last().expect("trajectory has at least one step")
    }
}

impl TwoWayMachine {
    pub(crate) fn tape_at(&self, word: &[Symbol], pos: usize) -> TapeSymbol {
        if pos == 0 {
            TapeSymbol::LeftEnd
        } else if pos == word.len() + 1 {
            TapeSymbol::RightEnd
        } else {
            TapeSymbol::Real(word[pos - 1])
        }
    }

    pub(crate) fn accepting_config(&self, state: StateId, pos: usize, len: usize) -> bool {
        if !self.is_accepting(state) {
            return false;
        }
        match self.accept_mode() {
            AcceptMode::Anywhere => true,
            AcceptMode::OnRightEnd => pos == len + 1,
            AcceptMode::OnLeftEnd => pos == 0,
        }
    }

    /// Pigeonhole step bound: a deterministic run longer than this has
    /// repeated a configuration and therefore loops.
    pub fn step_bound(&self, word_len: usize) -> usize {
        self.num_states() * (word_len + 2)
    }

    /// Simulates a deterministic machine on `word`.
    ///
    /// The machine must be valid; determinism is checked and reported as an
    /// error. The trajectory never holds more than `|Q|·(|w|+2)+1`
    /// configurations.
    pub fn run_deterministic(&self, word: &[Symbol]) -> Result<Trajectory, SimulateError> {
        let k = self.alphabet().len();
        for q in 0..self.num_states() {
            for idx in 0..k + 2 {
                let on = TapeSymbol::from_index(idx, k);
                let image = self.transitions(StateId(q), on);
                if image.len() > 1 {
                    return Err(SimulateError::NonDeterministic {
                        state: self.state_name(StateId(q)).to_string(),
                        symbol: match on {
                            TapeSymbol::Real(s) => self.alphabet().name(s).to_string(),
                            TapeSymbol::LeftEnd => "|-".to_string(),
                            TapeSymbol::RightEnd => "-|".to_string(),
                        },
                        count: image.len(),
                    });
                }
            }
        }

        let len = word.len();
        let bound = self.step_bound(len);
        let mut steps = Vec::new();
        let mut state = self.initial();
        let mut pos = self.start_cell().position().min(len + 1);
        loop {
            steps.push(Configuration {
                state,
                position: pos,
            });
            if self.accepting_config(state, pos, len) {
                return Ok(Trajectory {
                    steps,
                    verdict: Verdict::Accept,
                });
            }
            if steps.len() > bound {
                return Ok(Trajectory {
                    steps,
                    verdict: Verdict::Loop,
                });
            }
            match self.transitions(state, self.tape_at(word, pos)).first() {
                None => {
                    return Ok(Trajectory {
                        steps,
                        verdict: Verdict::Reject,
                    })
                }
                Some(&(to, mv)) => {
                    state = to;
                    pos = match mv {
                        Move::Left => {
                            debug_assert!(pos > 0, "invalid machine: left move off the tape");
                            pos - 1
                        }
                        Move::Right => {
                            debug_assert!(pos <= len, "invalid machine: right move off the tape");
                            pos + 1
                        }
                        Move::Stay => pos,
                        Move::Wrap => 1.min(len + 1),
                    };
                }
            }
        }
    }

    /// Nondeterministic acceptance: true iff an accepting configuration is
    /// reachable from the start configuration.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let len = word.len();
        let width = len + 2;
        let mut visited = vec![false; self.num_states() * width];
        let mut queue = VecDeque::new();
        let start = Configuration {
            state: self.initial(),
            position: self.start_cell().position().min(len + 1),
        };
        visited[start.state.0 * width + start.position] = true;
        queue.push_back(start);
        while let Some(c) = queue.pop_front() {
            if self.accepting_config(c.state, c.position, len) {
                return true;
            }
            for &(to, mv) in self.transitions(c.state, self.tape_at(word, c.position)) {
                let pos = match mv {
                    Move::Left => c.position.checked_sub(1),
                    Move::Right => {
                        if c.position <= len {
                            Some(c.position + 1)
                        } else {
                            None
                        }
                    }
                    Move::Stay => Some(c.position),
                    Move::Wrap => Some(1.min(len + 1)),
                };
                if let Some(pos) = pos {
                    let slot = to.0 * width + pos;
                    if !visited[slot] {
                        visited[slot] = true;
                        queue.push_back(Configuration {
                            state: to,
                            position: pos,
                        });
                    }
                }
            }
        }
        false
    }
}

impl OneWayMachine {
    /// Runs the machine to the end of the word and reports the reachable end
    /// states together with the acceptance verdict.
    pub fn run(&self, word: &[Symbol]) -> (BTreeSet<StateId>, bool) {
        let mut current = BTreeSet::from([self.initial()]);
        for &sym in word {
            let mut next = BTreeSet::new();
            for &q in &current {
                next.extend(self.successors(q, sym).iter().copied());
            }
            current = next;
            if current.is_empty() {
                break;
            }
        }
        let accepted = current.iter().any(|q| self.is_accepting(*q));
        (current, accepted)
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.run(word).1
    }
}

impl Machine {
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        match self {
            Machine::OneWay(m) => m.accepts(word),
            Machine::TwoWay(m) => m.accepts(word),
        }
    }
}
