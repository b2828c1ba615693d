//! Behavioural and structural classifiers: head reversals, sweeping,
//! rotating, oblivious, outer-nondeterministic, and run ambiguity.
//!
//! Sweeping and obliviousness are behavioural properties; the verdicts here
//! decide them only up to a length bound and say so via
//! [`CheckMethod::Behavioral`].

use std::collections::VecDeque;

use crate::error::AnalysisError;
use crate::machine::{Move, StateId, Symbol, TapeSymbol, TwoWayMachine};
use crate::simulate::Trajectory;
use crate::words::words_up_to;

/// Cap on `|Σ|^max_len`, the words of the longest length a behavioural
/// classifier is willing to enumerate.
pub const WORD_BUDGET: u128 = 1 << 20;

/// How a classifier reached its verdict.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckMethod {
    Structural,
    /// Exhaustive over all words of length at most the bound.
    Behavioral(usize),
}

/// A witness refuting a behavioural property.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    /// The offending word, rendered with the machine's alphabet.
    pub word: String,
    pub evidence: String,
}

/// Outcome of a classifier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassifierVerdict {
    pub holds: bool,
    /// Present iff the property fails and the method is behavioural.
    pub counterexample: Option<Counterexample>,
    pub method: CheckMethod,
}

impl ClassifierVerdict {
    fn structural(holds: bool) -> Self {
        ClassifierVerdict {
            holds,
            counterexample: None,
            method: CheckMethod::Structural,
        }
    }

    fn behavioral(bound: usize, counterexample: Option<Counterexample>) -> Self {
        ClassifierVerdict {
            holds: counterexample.is_none(),
            counterexample,
            method: CheckMethod::Behavioral(bound),
        }
    }
}

/// Maximum head reversals observed over all words up to a length bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReversalReport {
    pub max_reversals: usize,
    /// A word achieving the maximum.
    pub witness: Option<String>,
    pub bound_checked: usize,
}

/// Number of accepting computations on one input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RunCount {
    Finite(u64),
    AtLeast(u64),
    /// A configuration cycle lies on some start-to-accept path.
    Infinite,
}

fn budget_check(k: usize, max_len: usize) -> Result<(), AnalysisError> {
    let required = (k as u128).saturating_pow(max_len.min(u32::MAX as usize) as u32);
    if required > WORD_BUDGET {
        return Err(AnalysisError::ExponentialBudgetExceeded {
            required,
            cap: WORD_BUDGET,
            max_len,
        });
    }
    Ok(())
}

/// Counts head reversals in a trajectory: direction changes between left and
/// right moves, ignoring stationary steps. A wrap jump continues rightward
/// and is not a reversal.
pub fn count_reversals(t: &Trajectory) -> usize {
    let mut reversals = 0usize;
    let mut dir: Option<bool> = None; // true = rightward
    for pair in t.steps.windows(2) {
        let (from, to) = (pair[0].position as isize, pair[1].position as isize);
        let step = match to - from {
            0 => continue,
            1 => true,
            -1 => false,
            _ => true, // wrap: the tape is circular, motion keeps flowing right
        };
        if let Some(d) = dir {
            if d != step {
                reversals += 1;
            }
        }
        dir = Some(step);
    }
    reversals
}

/// Maximum of [`count_reversals`] over every word of length at most
/// `max_len`; exhaustive over the alphabet.
pub fn max_reversals(
    machine: &TwoWayMachine,
    max_len: usize,
) -> Result<ReversalReport, AnalysisError> {
    let k = machine.alphabet().len();
    budget_check(k, max_len)?;
    let mut best = 0usize;
    let mut witness: Option<String> = None;
    for word in words_up_to(k, max_len) {
        let t = machine.run_deterministic(&word)?;
        let r = count_reversals(&t);
        if r > best || witness.is_none() {
            best = r;
            witness = Some(machine.alphabet().render(&word));
        }
    }
    Ok(ReversalReport {
        max_reversals: best,
        witness,
        bound_checked: max_len,
    })
}

/// Oblivious: the head trajectory depends only on the input length. Checks
/// every length up to `max_len` exhaustively.
pub fn is_oblivious(
    machine: &TwoWayMachine,
    max_len: usize,
) -> Result<ClassifierVerdict, AnalysisError> {
    let k = machine.alphabet().len();
    budget_check(k, max_len)?;
    for len in 0..=max_len {
        let mut reference: Option<(String, Vec<usize>)> = None;
        for word in words_up_to(k, len).filter(|w| w.len() == len) {
            let t = machine.run_deterministic(&word)?;
            let positions = t.positions();
            match &reference {
                None => reference = Some((machine.alphabet().render(&word), positions)),
                Some((ref_word, ref_positions)) => {
                    if *ref_positions != positions {
                        let step = ref_positions
                            .iter()
                            .zip(&positions)
                            .position(|(a, b)| a != b)
                            .unwrap_or_else(|| ref_positions.len().min(positions.len()));
                        let word_text = machine.alphabet().render(&word);
                        return Ok(ClassifierVerdict::behavioral(
                            max_len,
                            Some(Counterexample {
                                word: word_text.clone(),
                                evidence: format!(
                                    "trajectories of {ref_word} and {word_text} diverge at step {step}"
                                ),
                            }),
                        ));
                    }
                }
            }
        }
    }
    Ok(ClassifierVerdict::behavioral(max_len, None))
}

/// Walks every reachable (state, position, direction) triple of every word up
/// to the bound and reports the first mid-tape reversal. Works for
/// deterministic and nondeterministic machines alike.
fn find_mid_tape_reversal(
    machine: &TwoWayMachine,
    max_len: usize,
) -> Result<Option<Counterexample>, AnalysisError> {
    let k = machine.alphabet().len();
    budget_check(k, max_len)?;
    for word in words_up_to(k, max_len) {
        let len = word.len();
        let width = len + 2;
        // direction: 0 = none yet, 1 = rightward, 2 = leftward
        let mut visited = vec![false; machine.num_states() * width * 3];
        let start = (
            machine.initial(),
            machine.start_cell().position().min(len + 1),
            0usize,
        );
        let mut queue = VecDeque::from([start]);
        visited[(start.0).0 * width * 3 + start.1 * 3] = true;
        while let Some((state, pos, dir)) = queue.pop_front() {
            for &(to, mv) in machine.transitions(state, machine.tape_at(&word, pos)) {
                let (next_pos, next_dir) = match mv {
                    Move::Left => (pos.checked_sub(1), 2),
                    Move::Right => (if pos <= len { Some(pos + 1) } else { None }, 1),
                    Move::Stay => (Some(pos), dir),
                    Move::Wrap => (Some(1.min(len + 1)), 1),
                };
                let reversal = matches!(mv, Move::Left | Move::Right)
                    && dir != 0
                    && dir != next_dir;
                if reversal && pos != 0 && pos != len + 1 {
                    return Ok(Some(Counterexample {
                        word: machine.alphabet().render(&word),
                        evidence: format!("reversal at position {pos}"),
                    }));
                }
                if let Some(np) = next_pos {
                    let slot = to.0 * width * 3 + np * 3 + next_dir;
                    if !visited[slot] {
                        visited[slot] = true;
                        queue.push_back((to, np, next_dir));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Sweeping: head reversals happen only with the head on an endmarker.
/// Behavioural, exhaustive over all words of length at most `max_len`.
pub fn is_sweeping(
    machine: &TwoWayMachine,
    max_len: usize,
) -> Result<ClassifierVerdict, AnalysisError> {
    Ok(ClassifierVerdict::behavioral(
        max_len,
        find_mid_tape_reversal(machine, max_len)?,
    ))
}

/// Rotating: structurally no left moves anywhere; re-entry at the left end is
/// expressed with the wrap pseudo-move on the right endmarker.
pub fn is_rotating(machine: &TwoWayMachine) -> ClassifierVerdict {
    let ok = !machine
        .transition_entries()
        .any(|(_, _, _, mv)| mv == Move::Left);
    ClassifierVerdict::structural(ok)
}

/// Outer-nondeterministic: transitions on real input symbols are
/// deterministic; endmarker transitions are unrestricted.
pub fn is_outer_nondeterministic(machine: &TwoWayMachine) -> ClassifierVerdict {
    for q in 0..machine.num_states() {
        for s in machine.alphabet().symbols() {
            if machine.transitions(StateId(q), TapeSymbol::Real(s)).len() > 1 {
                return ClassifierVerdict::structural(false);
            }
        }
    }
    ClassifierVerdict::structural(true)
}

/// Quasi-sweeping: outer-nondeterministic (structural) and sweeping
/// (behavioural up to the bound).
pub fn is_quasi_sweeping(
    machine: &TwoWayMachine,
    max_len: usize,
) -> Result<ClassifierVerdict, AnalysisError> {
    if !is_outer_nondeterministic(machine).holds {
        return Ok(ClassifierVerdict::structural(false));
    }
    is_sweeping(machine, max_len)
}

/// Counts distinct accepting computations on `word`.
///
/// A computation halts at its first accepting configuration, so accepting
/// configurations are sinks of the path count. If a configuration cycle lies
/// on some start-to-accept path the count is reported as `Infinite`; finite
/// counts saturate at `cap`.
pub fn count_accepting_runs(machine: &TwoWayMachine, word: &[Symbol], cap: u64) -> RunCount {
    let len = word.len();
    let width = len + 2;
    let n = machine.num_states() * width;
    let id = |state: StateId, pos: usize| state.0 * width + pos;
    let accepting =
        |node: usize| machine.accepting_config(StateId(node / width), node % width, len);

    let successors = |node: usize| -> Vec<usize> {
        let state = StateId(node / width);
        let pos = node % width;
        let mut out = Vec::new();
        for &(to, mv) in machine.transitions(state, machine.tape_at(word, pos)) {
            let next = match mv {
                Move::Left => pos.checked_sub(1),
                Move::Right => {
                    if pos <= len {
                        Some(pos + 1)
                    } else {
                        None
                    }
                }
                Move::Stay => Some(pos),
                Move::Wrap => Some(1.min(len + 1)),
            };
            if let Some(p) = next {
                out.push(id(to, p));
            }
        }
        out
    };

    // Forward reachability; accepting configurations halt the machine and
    // are not expanded.
    let start = id(
        machine.initial(),
        machine.start_cell().position().min(len + 1),
    );
    let mut reach = vec![false; n];
    reach[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    while let Some(u) = queue.pop_front() {
        if accepting(u) {
            continue;
        }
        for v in successors(u) {
            edges.push((u, v));
            if !reach[v] {
                reach[v] = true;
                queue.push_back(v);
            }
        }
    }

    // Co-reachability towards accepting configurations.
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &edges {
        rev[v].push(u);
    }
    let mut corr = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&u| reach[u] && accepting(u)).collect();
    for &u in &queue {
        corr[u] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &u in &rev[v] {
            if !corr[u] {
                corr[u] = true;
                queue.push_back(u);
            }
        }
    }
    if !corr[start] {
        return RunCount::Finite(0);
    }

    // Cycle detection on the relevant non-accepting subgraph (Kahn).
    let relevant: Vec<bool> = (0..n).map(|u| reach[u] && corr[u]).collect();
    let mut indeg = vec![0usize; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &edges {
        if relevant[u] && relevant[v] {
            adj[u].push(v);
            if !accepting(v) {
                indeg[v] += 1;
            }
        }
    }
    let mut order: Vec<usize> = Vec::new();
    let mut queue: VecDeque<usize> = (0..n)
        .filter(|&u| relevant[u] && !accepting(u) && indeg[u] == 0)
        .collect();
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in &adj[u] {
            if !accepting(v) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
    }
    let non_accepting_relevant = (0..n)
        .filter(|&u| relevant[u] && !accepting(u))
        .count();
    if order.len() < non_accepting_relevant {
        return RunCount::Infinite;
    }

    // Path count over the DAG in reverse topological order.
    let mut count = vec![0u64; n];
    let mut saturated = vec![false; n];
    for &u in order.iter().rev() {
        let mut total: u64 = 0;
        let mut sat = false;
        for &v in &adj[u] {
            let c = if accepting(v) { 1 } else { count[v] };
            sat |= saturated[v];
            total = total.saturating_add(c);
            if total >= cap {
                sat = true;
                total = cap;
            }
        }
        count[u] = total;
        saturated[u] = sat;
    }
    if accepting(start) {
        return RunCount::Finite(1);
    }
    if saturated[start] || count[start] >= cap {
        RunCount::AtLeast(cap)
    } else {
        RunCount::Finite(count[start])
    }
}
