//! Conversions between machine classes and equivalence oracles.
//!
//! Output machines are renumbered in breadth-first order from the initial
//! state so serialization is reproducible.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::TransformError;
use crate::machine::{
    AcceptMode, Machine, Move, OneWayMachine, StateId, Symbol, TapeSymbol, TwoWayMachine,
};
use crate::words::{word_count, words_up_to};

/// Cap on the number of words [`bounded_equiv`] may enumerate.
pub const WORD_BUDGET: u128 = 1 << 20;

/// Default cap on the number of states the crossing-table construction may
/// create.
pub const STATE_BUDGET: usize = 1_000_000;

/// How an equivalence verdict was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EquivMethod {
    Bounded(usize),
    ExactViaMinimization,
    ExactViaShepherdson,
}

/// Result of an equivalence check. The counterexample, when present, is
/// accepted by exactly one of the two machines.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub counterexample: Option<Vec<Symbol>>,
    pub method: EquivMethod,
}

/// Subset construction restricted to reachable subsets. The result is a
/// complete DFA; the empty subset appears as a sink only when reachable.
pub fn determinize(nfa: &OneWayMachine) -> OneWayMachine {
    let k = nfa.alphabet().len();
    let mut index: HashMap<BTreeSet<StateId>, usize> = HashMap::new();
    let mut subsets: Vec<BTreeSet<StateId>> = Vec::new();
    let mut delta: Vec<Vec<usize>> = Vec::new();

    let start: BTreeSet<StateId> = BTreeSet::from([nfa.initial()]);
    index.insert(start.clone(), 0);
    subsets.push(start);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for s in 0..k {
            let mut next = BTreeSet::new();
            for &q in &subsets[i] {
                next.extend(nfa.successors(q, Symbol(s)).iter().copied());
            }
            let j = *index.entry(next.clone()).or_insert_with(|| {
                subsets.push(next);
                queue.push_back(subsets.len() - 1);
                subsets.len() - 1
            });
            row.push(j);
        }
        delta.push(row);
    }

    let mut b = OneWayMachine::builder(nfa.alphabet().clone());
    let ids: Vec<StateId> = (0..subsets.len()).map(|i| b.state(format!("s{i}"))).collect();
    for (i, row) in delta.iter().enumerate() {
        for (s, &j) in row.iter().enumerate() {
            b.transition(ids[i], Symbol(s), ids[j]);
        }
    }
    b.initial(ids[0]);
    for (i, subset) in subsets.iter().enumerate() {
        if subset.iter().any(|q| nfa.is_accepting(*q)) {
            b.accept(ids[i]);
        }
    }
    b.build()
}

/// Completes a partial single-valued machine with a rejecting sink.
fn complete(dfa: &OneWayMachine) -> OneWayMachine {
    let k = dfa.alphabet().len();
    let needs_sink = (0..dfa.num_states())
        .any(|q| (0..k).any(|s| dfa.successors(StateId(q), Symbol(s)).is_empty()));
    if !needs_sink {
        return dfa.clone();
    }
    let mut b = OneWayMachine::builder(dfa.alphabet().clone());
    for name in dfa.state_names() {
        b.state(name.clone());
    }
    let mut sink_name = "sink".to_string();
    while dfa.state_names().iter().any(|n| n == &sink_name) {
        sink_name.push('_');
    }
    let sink = b.state(sink_name);
    for q in 0..dfa.num_states() {
        for s in 0..k {
            let image = dfa.successors(StateId(q), Symbol(s));
            let target = image.first().copied().unwrap_or(sink);
            b.transition(StateId(q), Symbol(s), target);
        }
    }
    for s in 0..k {
        b.transition(sink, Symbol(s), sink);
    }
    b.initial(dfa.initial());
    for &a in dfa.accepting() {
        b.accept(a);
    }
    b.build()
}

/// Minimizes a DFA by partition refinement.
///
/// The input may be partial (it is completed with a sink first) but every
/// image must be single-valued. The result is the unique minimal complete
/// DFA, states in breadth-first order.
pub fn minimize(dfa: &OneWayMachine) -> Result<OneWayMachine, TransformError> {
    if !dfa.has_single_images() {
        return Err(TransformError::NotDeterministic(
            "minimization needs a single-valued transition function".to_string(),
        ));
    }
    let m = complete(dfa);
    let k = m.alphabet().len();
    let n = m.num_states();

    // reachable restriction
    let mut reach = vec![false; n];
    let mut queue = VecDeque::from([m.initial()]);
    reach[m.initial().0] = true;
    while let Some(q) = queue.pop_front() {
        for s in 0..k {
            let to = m.successors(q, Symbol(s))[0];
            if !reach[to.0] {
                reach[to.0] = true;
                queue.push_back(to);
            }
        }
    }

    // partition refinement on the reachable part
    let mut class: Vec<usize> = (0..n)
        .map(|q| usize::from(m.is_accepting(StateId(q))))
        .collect();
    let mut class_count = 2;
    loop {
        let mut signature_index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut next_class = vec![0usize; n];
        for q in 0..n {
            if !reach[q] {
                continue;
            }
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            for s in 0..k {
                sig.push(class[m.successors(StateId(q), Symbol(s))[0].0]);
            }
            let fresh = signature_index.len();
            let c = *signature_index.entry(sig).or_insert(fresh);
            next_class[q] = c;
        }
        let new_count = signature_index.len();
        class = next_class;
        if new_count == class_count {
            break;
        }
        class_count = new_count;
    }

    // renumber classes in BFS order from the initial class
    let rep_of_class: HashMap<usize, usize> = (0..n)
        .filter(|&q| reach[q])
        .map(|q| (class[q], q))
        .collect();
    let mut order: Vec<usize> = Vec::new(); // class ids in BFS order
    let mut bfs_index: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::from([class[m.initial().0]]);
    bfs_index.insert(class[m.initial().0], 0);
    order.push(class[m.initial().0]);
    while let Some(c) = queue.pop_front() {
        let rep = rep_of_class[&c];
        for s in 0..k {
            let target = class[m.successors(StateId(rep), Symbol(s))[0].0];
            if let std::collections::hash_map::Entry::Vacant(slot) = bfs_index.entry(target) {
                slot.insert(order.len());
                order.push(target);
                queue.push_back(target);
            }
        }
    }

    let mut b = OneWayMachine::builder(m.alphabet().clone());
    let ids: Vec<StateId> = (0..order.len()).map(|i| b.state(format!("s{i}"))).collect();
    for (i, &c) in order.iter().enumerate() {
        let rep = rep_of_class[&c];
        for s in 0..k {
            let target = class[m.successors(StateId(rep), Symbol(s))[0].0];
            b.transition(ids[i], Symbol(s), ids[bfs_index[&target]]);
        }
        if m.is_accepting(StateId(rep)) {
            b.accept(ids[i]);
        }
    }
    b.initial(ids[0]);
    Ok(b.build())
}

/// Structural isomorphism of two complete DFAs by parallel traversal.
pub fn isomorphic(a: &OneWayMachine, b: &OneWayMachine) -> bool {
    if a.num_states() != b.num_states()
        || a.alphabet().names() != b.alphabet().names()
        || !a.is_deterministic()
        || !b.is_deterministic()
    {
        return false;
    }
    let k = a.alphabet().len();
    let mut map: Vec<Option<StateId>> = vec![None; a.num_states()];
    let mut seen_b = vec![false; b.num_states()];
    map[a.initial().0] = Some(b.initial());
    seen_b[b.initial().0] = true;
    let mut queue = VecDeque::from([a.initial()]);
    while let Some(qa) = queue.pop_front() {
        let qb = map[qa.0].unwrap();
        if a.is_accepting(qa) != b.is_accepting(qb) {
            return false;
        }
        for s in 0..k {
            let ta = a.successors(qa, Symbol(s))[0];
            let tb = b.successors(qb, Symbol(s))[0];
            match map[ta.0] {
                None => {
                    if seen_b[tb.0] {
                        return false; // not injective
                    }
                    map[ta.0] = Some(tb);
                    seen_b[tb.0] = true;
                    queue.push_back(ta);
                }
                Some(expected) => {
                    if expected != tb {
                        return false;
                    }
                }
            }
        }
    }
    // unreachable states would make the sizes differ after minimization; for
    // the minimal machines this is used on, everything is reachable
    map.iter().filter(|m| m.is_some()).count() == a.num_states()
}

fn remap_alphabet(
    machine: &OneWayMachine,
    target: &crate::machine::Alphabet,
) -> Result<OneWayMachine, TransformError> {
    if machine.alphabet().names() == target.names() {
        return Ok(machine.clone());
    }
    let mut left: Vec<String> = machine.alphabet().names().to_vec();
    let mut right: Vec<String> = target.names().to_vec();
    left.sort();
    right.sort();
    if left != right {
        return Err(TransformError::AlphabetMismatch {
            left: machine.alphabet().names().to_vec(),
            right: target.names().to_vec(),
        });
    }
    let mut b = OneWayMachine::builder(target.clone());
    for name in machine.state_names() {
        b.state(name.clone());
    }
    for (from, sym, to) in machine.transition_entries() {
        let new_sym = target.symbol(machine.alphabet().name(sym)).unwrap();
        b.transition(from, new_sym, to);
    }
    b.initial(machine.initial());
    for &acc in machine.accepting() {
        b.accept(acc);
    }
    Ok(b.build())
}

/// Shortest word on which two complete DFAs disagree, starting from the
/// given state pair; `None` when the states are equivalent.
fn shortest_difference_from(
    a: &OneWayMachine,
    b: &OneWayMachine,
    start_a: StateId,
    start_b: StateId,
) -> Option<Vec<Symbol>> {
    let k = a.alphabet().len();
    let nb = b.num_states();
    let idx = |p: StateId, q: StateId| p.0 * nb + q.0;
    let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; a.num_states() * nb];
    let mut visited = vec![false; a.num_states() * nb];
    let start = idx(start_a, start_b);
    visited[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(node) = queue.pop_front() {
        let (p, q) = (StateId(node / nb), StateId(node % nb));
        if a.is_accepting(p) != b.is_accepting(q) {
            // rebuild the word backwards
            let mut word = Vec::new();
            let mut cur = node;
            while cur != start {
                let (prev, sym) = parent[cur].unwrap();
                word.push(sym);
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for s in 0..k {
            let pa = a.successors(p, Symbol(s))[0];
            let qb = b.successors(q, Symbol(s))[0];
            let next = idx(pa, qb);
            if !visited[next] {
                visited[next] = true;
                parent[next] = Some((node, Symbol(s)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Exact equivalence of one-way machines: determinize and minimize both,
/// then test isomorphism; an inequivalence witness comes from the product
/// automaton.
pub fn exact_equiv_oneway(
    a: &OneWayMachine,
    b: &OneWayMachine,
) -> Result<EquivalenceVerdict, TransformError> {
    let b = remap_alphabet(b, a.alphabet())?;
    let ma = minimize(&determinize(a))?;
    let mb = minimize(&determinize(&b))?;
    if isomorphic(&ma, &mb) {
        Ok(EquivalenceVerdict {
            equivalent: true,
            counterexample: None,
            method: EquivMethod::ExactViaMinimization,
        })
    } else {
        let counterexample = shortest_difference_from(&ma, &mb, ma.initial(), mb.initial());
        debug_assert!(counterexample.is_some());
        Ok(EquivalenceVerdict {
            equivalent: false,
            counterexample,
            method: EquivMethod::ExactViaMinimization,
        })
    }
}

/// Exact equivalence of deterministic wrap-free two-way machines through the
/// crossing-table construction.
pub fn exact_equiv_twoway(
    a: &TwoWayMachine,
    b: &TwoWayMachine,
) -> Result<EquivalenceVerdict, TransformError> {
    let oa = shepherdson(a)?;
    let ob = shepherdson(b)?;
    let mut verdict = exact_equiv_oneway(&oa, &ob)?;
    verdict.method = EquivMethod::ExactViaShepherdson;
    Ok(verdict)
}

/// Drives a DFA from its initial state over `word`; `None` when a transition
/// is missing.
fn drive(dfa: &OneWayMachine, word: &[Symbol]) -> Option<StateId> {
    let mut q = dfa.initial();
    for &s in word {
        q = dfa.successors(q, s).first().copied()?;
    }
    Some(q)
}

fn accepts_from(dfa: &OneWayMachine, start: StateId, word: &[Symbol]) -> bool {
    let mut q = start;
    for &s in word {
        match dfa.successors(q, s).first() {
            Some(&to) => q = to,
            None => return false,
        }
    }
    dfa.is_accepting(q)
}

/// Finds a word `z` such that exactly one of `xz`, `yz` is accepted, or
/// `None` when the states reached by `x` and `y` are equivalent.
///
/// For equal-length binary inputs the candidate `b^(i-1) a`, built from the
/// leftmost position where `x` and `y` differ, is tried first; otherwise the
/// shortest separating word from the product automaton is returned.
pub fn distinguishing_extension(
    dfa: &OneWayMachine,
    x: &[Symbol],
    y: &[Symbol],
) -> Result<Option<Vec<Symbol>>, TransformError> {
    if !dfa.has_single_images() {
        return Err(TransformError::NotDeterministic(
            "distinguishing extensions are defined for DFAs".to_string(),
        ));
    }
    let p = drive(dfa, x).ok_or(TransformError::UndefinedOnInput)?;
    let q = drive(dfa, y).ok_or(TransformError::UndefinedOnInput)?;
    if p == q {
        return Ok(None);
    }
    if x.len() == y.len() && dfa.alphabet().len() == 2 {
        if let Some(i) = x.iter().zip(y).position(|(a, b)| a != b) {
            let mut z = vec![Symbol(1); i];
            z.push(Symbol(0));
            if accepts_from(dfa, p, &z) != accepts_from(dfa, q, &z) {
                return Ok(Some(z));
            }
        }
    }
    let completed = complete(dfa);
    Ok(shortest_difference_from(&completed, &completed, p, q))
}

// ---------------------------------------------------------------------------
// Crossing-table construction (two-way DFA to one-way DFA)

/// Outcome of running the machine inside a tape prefix until it either exits
/// to the right, halts accepting, or never comes back out.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Behavior {
    Exit(StateId),
    /// Hangs or loops inside the prefix; the computation rejects.
    Dead,
    /// Reaches an accepting configuration inside the prefix.
    Accepted,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct CrossTable {
    /// Behaviour of the initial configuration.
    init: Behavior,
    /// Behaviour when entering the prefix from the right in a given state.
    reentry: Vec<Behavior>,
}

/// Deterministic lookup of the unique transition, if any.
fn det_step(m: &TwoWayMachine, q: StateId, on: TapeSymbol) -> Option<(StateId, Move)> {
    m.transitions(q, on).first().copied()
}

/// Closure at the left endmarker cell: resolves stays and acceptance there.
fn closure_at_left_end(m: &TwoWayMachine, start: StateId) -> Behavior {
    let mut cur = start;
    let mut seen = BTreeSet::new();
    loop {
        if !seen.insert(cur) {
            return Behavior::Dead;
        }
        if m.is_accepting(cur)
            && matches!(m.accept_mode(), AcceptMode::Anywhere | AcceptMode::OnLeftEnd)
        {
            return Behavior::Accepted;
        }
        match det_step(m, cur, TapeSymbol::LeftEnd) {
            None => return Behavior::Dead,
            Some((to, Move::Right)) => return Behavior::Exit(to),
            Some((to, Move::Stay)) => cur = to,
            Some(_) => return Behavior::Dead, // invalid machine
        }
    }
}

/// Closure at a fresh rightmost cell holding `sym`, consulting the previous
/// table for excursions back into the prefix.
fn closure_at_cell(
    m: &TwoWayMachine,
    prev: &CrossTable,
    start: StateId,
    sym: Symbol,
) -> Behavior {
    let mut cur = start;
    let mut seen = BTreeSet::new();
    loop {
        if !seen.insert(cur) {
            return Behavior::Dead;
        }
        if m.is_accepting(cur) && m.accept_mode() == AcceptMode::Anywhere {
            return Behavior::Accepted;
        }
        match det_step(m, cur, TapeSymbol::Real(sym)) {
            None => return Behavior::Dead,
            Some((to, Move::Right)) => return Behavior::Exit(to),
            Some((to, Move::Stay)) => cur = to,
            Some((to, Move::Left)) => match prev.reentry[to.0] {
                Behavior::Exit(back) => cur = back,
                other => return other,
            },
            Some((_, Move::Wrap)) => return Behavior::Dead, // excluded upstream
        }
    }
}

/// Acceptance of a whole word summarised by its table: finish the run on the
/// right endmarker.
fn table_accepts(m: &TwoWayMachine, table: &CrossTable) -> bool {
    let mut cur = match table.init {
        Behavior::Accepted => return true,
        Behavior::Dead => return false,
        Behavior::Exit(q) => q,
    };
    let mut seen = BTreeSet::new();
    loop {
        if !seen.insert(cur) {
            return false;
        }
        if m.is_accepting(cur)
            && matches!(m.accept_mode(), AcceptMode::Anywhere | AcceptMode::OnRightEnd)
        {
            return true;
        }
        match det_step(m, cur, TapeSymbol::RightEnd) {
            None => return false,
            Some((to, Move::Stay)) => cur = to,
            Some((to, Move::Left)) => match table.reentry[to.0] {
                Behavior::Exit(back) => cur = back,
                Behavior::Dead => return false,
                Behavior::Accepted => return true,
            },
            Some(_) => return false, // invalid machine
        }
    }
}

/// Classical two-way-to-one-way conversion via right-boundary behaviour
/// tables. Exact: the resulting complete DFA accepts the same language.
pub fn shepherdson(m: &TwoWayMachine) -> Result<OneWayMachine, TransformError> {
    shepherdson_with_cap(m, STATE_BUDGET)
}

pub fn shepherdson_with_cap(
    m: &TwoWayMachine,
    cap: usize,
) -> Result<OneWayMachine, TransformError> {
    if !m.is_deterministic() {
        return Err(TransformError::NotDeterministic(
            "the crossing-table construction needs a deterministic machine".to_string(),
        ));
    }
    if m.has_wrap() {
        return Err(TransformError::HasWrapMoves);
    }
    let n = m.num_states();
    let k = m.alphabet().len();

    let base = CrossTable {
        init: match m.start_cell() {
            crate::machine::StartCell::Cell1 => Behavior::Exit(m.initial()),
            crate::machine::StartCell::Cell0 => closure_at_left_end(m, m.initial()),
        },
        reentry: (0..n)
            .map(|q| closure_at_left_end(m, StateId(q)))
            .collect(),
    };
    // once the machine has accepted, the rest of the input is irrelevant
    let accept_sink = CrossTable {
        init: Behavior::Accepted,
        reentry: vec![Behavior::Dead; n],
    };

    let mut index: HashMap<CrossTable, usize> = HashMap::new();
    let mut tables: Vec<CrossTable> = Vec::new();
    let mut delta: Vec<Vec<usize>> = Vec::new();
    index.insert(base.clone(), 0);
    tables.push(base);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for s in 0..k {
            let next = if tables[i].init == Behavior::Accepted {
                accept_sink.clone()
            } else {
                let prev = &tables[i];
                let init = match prev.init {
                    Behavior::Exit(q) => closure_at_cell(m, prev, q, Symbol(s)),
                    other => other,
                };
                if init == Behavior::Accepted {
                    accept_sink.clone()
                } else {
                    CrossTable {
                        init,
                        reentry: (0..n)
                            .map(|q| closure_at_cell(m, prev, StateId(q), Symbol(s)))
                            .collect(),
                    }
                }
            };
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    if tables.len() >= cap {
                        return Err(TransformError::StateBudgetExceeded { cap });
                    }
                    let j = tables.len();
                    index.insert(next.clone(), j);
                    tables.push(next);
                    queue.push_back(j);
                    j
                }
            };
            row.push(j);
        }
        delta.push(row);
    }

    let mut b = OneWayMachine::builder(m.alphabet().clone());
    let ids: Vec<StateId> = (0..tables.len()).map(|i| b.state(format!("s{i}"))).collect();
    for (i, row) in delta.iter().enumerate() {
        for (s, &j) in row.iter().enumerate() {
            b.transition(ids[i], Symbol(s), ids[j]);
        }
    }
    b.initial(ids[0]);
    for (i, t) in tables.iter().enumerate() {
        if table_accepts(m, t) {
            b.accept(ids[i]);
        }
    }
    Ok(b.build())
}

/// Replaces wrap moves by a mirrored return sweep: each state gets a twin
/// that carries the head back to the left endmarker. Doubles the state
/// count; determinism is preserved.
pub fn rotating_to_sweeping(m: &TwoWayMachine) -> Result<TwoWayMachine, TransformError> {
    if let Some((from, _, _, _)) = m
        .transition_entries()
        .find(|&(_, _, _, mv)| mv == Move::Left)
    {
        return Err(TransformError::NotRotating(format!(
            "state {} moves left",
            m.state_name(from)
        )));
    }
    let n = m.num_states();
    let k = m.alphabet().len();
    let mut b = TwoWayMachine::builder(m.alphabet().clone());
    for name in m.state_names() {
        b.state(name.clone());
    }
    let mirrors: Vec<StateId> = m
        .state_names()
        .iter()
        .map(|name| b.state(format!("{name}~")))
        .collect();
    for (from, on, to, mv) in m.transition_entries() {
        if mv == Move::Wrap {
            b.transition(from, on, mirrors[to.0], Move::Left);
        } else {
            b.transition(from, on, to, mv);
        }
    }
    for q in 0..n {
        for s in 0..k {
            b.transition(mirrors[q], TapeSymbol::Real(Symbol(s)), mirrors[q], Move::Left);
        }
        b.transition(mirrors[q], TapeSymbol::LeftEnd, StateId(q), Move::Right);
    }
    b.initial(m.initial());
    for &a in m.accepting() {
        b.accept(a);
    }
    b.accept_mode(m.accept_mode());
    b.start_cell(m.start_cell());
    Ok(b.build())
}

/// Exhaustively compares acceptance on every word of length at most
/// `max_len`. For unary machines this is a scan over lengths `0..=max_len`.
pub fn bounded_equiv(
    a: &Machine,
    b: &Machine,
    max_len: usize,
) -> Result<EquivalenceVerdict, TransformError> {
    let alpha = a.alphabet();
    let mut left: Vec<String> = alpha.names().to_vec();
    let mut right: Vec<String> = b.alphabet().names().to_vec();
    left.sort();
    right.sort();
    if left != right {
        return Err(TransformError::AlphabetMismatch {
            left: alpha.names().to_vec(),
            right: b.alphabet().names().to_vec(),
        });
    }
    let required = word_count(alpha.len(), max_len);
    if required > WORD_BUDGET {
        return Err(TransformError::WordBudgetExceeded {
            required,
            cap: WORD_BUDGET,
        });
    }
    let remap: Vec<Symbol> = alpha
        .names()
        .iter()
        .map(|n| b.alphabet().symbol(n).unwrap())
        .collect();
    for word in words_up_to(alpha.len(), max_len) {
        let word_b: Vec<Symbol> = word.iter().map(|s| remap[s.0]).collect();
        if a.accepts(&word) != b.accepts(&word_b) {
            return Ok(EquivalenceVerdict {
                equivalent: false,
                counterexample: Some(word),
                method: EquivMethod::Bounded(max_len),
            });
        }
    }
    Ok(EquivalenceVerdict {
        equivalent: true,
        counterexample: None,
        method: EquivMethod::Bounded(max_len),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::Alphabet;

    /// Hand-built 4-state DFA tracking the last two symbols; accepts words
    /// whose second-to-last symbol is `a`.
    fn last_two_dfa() -> OneWayMachine {
        let mut b = OneWayMachine::builder(Alphabet::ab());
        let bb = b.state("bb");
        let ba = b.state("ba");
        let ab_ = b.state("ab");
        let aa = b.state("aa");
        let a = Symbol(0);
        let bsym = Symbol(1);
        b.transition(bb, a, ba);
        b.transition(bb, bsym, bb);
        b.transition(ba, a, aa);
        b.transition(ba, bsym, ab_);
        b.transition(ab_, a, ba);
        b.transition(ab_, bsym, bb);
        b.transition(aa, a, aa);
        b.transition(aa, bsym, ab_);
        b.initial(bb);
        b.accept(aa);
        b.accept(ab_);
        b.build()
    }

    #[test]
    fn determinize_keeps_deterministic_input_isomorphic() {
        let dfa = last_two_dfa();
        let det = determinize(&dfa);
        let a = minimize(&det).unwrap();
        let b = minimize(&dfa).unwrap();
        assert!(isomorphic(&a, &b));
    }

    #[test]
    fn minimize_merges_duplicate_sinks() {
        let mut b = OneWayMachine::builder(Alphabet::ab());
        let q0 = b.state("q0");
        let s1 = b.state("sink1");
        let s2 = b.state("sink2");
        for s in [Symbol(0), Symbol(1)] {
            b.transition(s1, s, s1);
            b.transition(s2, s, s2);
        }
        b.transition(q0, Symbol(0), s1);
        b.transition(q0, Symbol(1), s2);
        b.initial(q0);
        let m = b.build();
        let min = minimize(&m).unwrap();
        assert_eq!(min.num_states(), 1); // everything rejects
    }

    #[test]
    fn minimize_is_idempotent() {
        let dfa = last_two_dfa();
        let once = minimize(&dfa).unwrap();
        let twice = minimize(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn bounded_equiv_is_reflexive() {
        let m = Machine::OneWay(last_two_dfa());
        let v = bounded_equiv(&m, &m, 6).unwrap();
        assert!(v.equivalent);
        assert_eq!(v.method, EquivMethod::Bounded(6));
    }

    #[test]
    fn exact_equiv_detects_self_equivalence() {
        let a = last_two_dfa();
        let v = exact_equiv_oneway(&a, &a).unwrap();
        assert!(v.equivalent);
    }

    #[test]
    fn shepherdson_of_embedded_dfa_preserves_language() {
        let dfa = last_two_dfa();
        let two_way = dfa.to_two_way();
        let back = shepherdson(&two_way).unwrap();
        let v = exact_equiv_oneway(&dfa, &back).unwrap();
        assert!(v.equivalent);
    }
}
