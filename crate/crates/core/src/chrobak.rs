//! Normal form for unary NFAs: a deterministic tail from the initial state
//! to a single branch state, feeding pairwise disjoint deterministic cycles.
//!
//! The construction analyses the reachable-subset sequence of the input NFA.
//! Its acceptance sequence is eventually periodic; the periodic part is
//! decomposed into full residue classes of small moduli, one cycle per
//! modulus, and the aperiodic prefix becomes the tail.

use std::collections::HashMap;

use num_integer::Integer;

use crate::error::TransformError;
use crate::machine::{Alphabet, OneWayMachine, StateId, Symbol};

/// Cap on the length of the subset orbit the analysis is willing to walk.
const ORBIT_BUDGET: usize = 1 << 20;
/// Cap on the agreement window used while searching cycle decompositions.
const WINDOW_BUDGET: usize = 1 << 22;

/// A unary NFA in normal form.
///
/// `tail[i]` is the acceptance mark of the i-th tail state (the state
/// reached by `a^i`); the last tail state is the branch state. Each cycle is
/// entered at index 0 by one edge out of the branch state, so the form has
/// exactly one nondeterministic decision point. With an empty tail the form
/// degenerates to a single deterministic cycle (or to the empty language).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChrobakForm {
    tail: Vec<bool>,
    cycles: Vec<Vec<bool>>,
}

impl ChrobakForm {
    pub fn tail_len(&self) -> usize {
        self.tail.len()
    }

    pub fn tail_marks(&self) -> &[bool] {
        &self.tail
    }

    pub fn cycles(&self) -> &[Vec<bool>] {
        &self.cycles
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }

    pub fn total_cycle_states(&self) -> usize {
        self.cycles.iter().map(|c| c.len()).sum()
    }

    pub fn state_count(&self) -> usize {
        self.tail.len() + self.total_cycle_states()
    }

    /// Membership of `a^m` read straight off the form.
    pub fn accepts(&self, m: usize) -> bool {
        let t = self.tail.len();
        if m < t {
            return self.tail[m];
        }
        self.cycles.iter().any(|cycle| cycle[(m - t) % cycle.len()])
    }

    /// Length up to which a bounded equivalence check against the source NFA
    /// is conclusive for the eventually periodic behaviour: the tail budget
    /// plus twice the product of the distinct cycle lengths.
    pub fn verification_bound(&self, source_states: usize) -> usize {
        let mut lens = self.cycle_lengths();
        lens.sort_unstable();
        lens.dedup();
        let product: usize = lens.iter().product::<usize>().max(1);
        source_states * source_states + 2 * product
    }

    /// Materialises the form as a unary [`OneWayMachine`].
    pub fn to_machine(&self) -> OneWayMachine {
        let a = Symbol(0);
        let mut b = OneWayMachine::builder(Alphabet::unary());
        if self.tail.is_empty() && self.cycles.is_empty() {
            let dead = b.state("t0");
            b.initial(dead);
            return b.build();
        }
        if self.tail.is_empty() {
            debug_assert_eq!(self.cycles.len(), 1);
            let cycle = &self.cycles[0];
            let ids: Vec<StateId> = (0..cycle.len())
                .map(|r| b.state(format!("c0_{r}")))
                .collect();
            for r in 0..cycle.len() {
                b.transition(ids[r], a, ids[(r + 1) % cycle.len()]);
                if cycle[r] {
                    b.accept(ids[r]);
                }
            }
            b.initial(ids[0]);
            return b.build();
        }
        let tail_ids: Vec<StateId> = (0..self.tail.len())
            .map(|i| b.state(format!("t{i}")))
            .collect();
        for (i, &mark) in self.tail.iter().enumerate() {
            if mark {
                b.accept(tail_ids[i]);
            }
            if i + 1 < self.tail.len() {
                b.transition(tail_ids[i], a, tail_ids[i + 1]);
            }
        }
        let branch = *tail_ids.last().unwrap();
        for (ci, cycle) in self.cycles.iter().enumerate() {
            let ids: Vec<StateId> = (0..cycle.len())
                .map(|r| b.state(format!("c{ci}_{r}")))
                .collect();
            for r in 0..cycle.len() {
                b.transition(ids[r], a, ids[(r + 1) % cycle.len()]);
                if cycle[r] {
                    b.accept(ids[r]);
                }
            }
            b.transition(branch, a, ids[0]);
        }
        b.initial(tail_ids[0]);
        b.build()
    }
}

/// Exact eventually-periodic description of a unary NFA's acceptance
/// sequence, from the reachable-subset orbit.
struct AcceptanceSequence {
    bits: Vec<bool>,
    preperiod: usize,
    period: usize,
}

impl AcceptanceSequence {
    fn at(&self, m: usize) -> bool {
        if m < self.bits.len() {
            self.bits[m]
        } else {
            self.bits[self.preperiod + (m - self.preperiod) % self.period]
        }
    }
}

fn acceptance_sequence(nfa: &OneWayMachine) -> Result<AcceptanceSequence, TransformError> {
    let a = Symbol(0);
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut bits: Vec<bool> = Vec::new();
    let mut subset: Vec<usize> = vec![nfa.initial().0];
    loop {
        if let Some(&first) = seen.get(&subset) {
            let preperiod = first;
            let period = bits.len() - first;
            return Ok(AcceptanceSequence {
                bits,
                preperiod,
                period,
            });
        }
        if bits.len() >= ORBIT_BUDGET {
            return Err(TransformError::StateBudgetExceeded { cap: ORBIT_BUDGET });
        }
        seen.insert(subset.clone(), bits.len());
        bits.push(subset.iter().any(|&q| nfa.is_accepting(StateId(q))));
        let mut next: Vec<usize> = Vec::new();
        for &q in &subset {
            for &to in nfa.successors(StateId(q), a) {
                if !next.contains(&to.0) {
                    next.push(to.0);
                }
            }
        }
        next.sort_unstable();
        subset = next;
    }
}

/// Smallest divisor of `period` that is still a period beyond `preperiod`.
fn minimal_period(seq: &AcceptanceSequence) -> usize {
    let mut best = seq.period;
    for d in 1..=seq.period {
        if seq.period % d != 0 {
            continue;
        }
        let ok = (seq.preperiod..seq.preperiod + seq.period).all(|m| seq.at(m) == seq.at(m + d));
        if ok {
            best = d;
            break;
        }
    }
    best
}

/// Converts a unary NFA into normal form.
///
/// The output keeps the tail within `n²` states and the cycles within `n`
/// states total (n = input states) whenever a covering decomposition with
/// those bounds exists, which the subset analysis finds by searching moduli
/// sets in order of total size. Language equality should be checked up to
/// [`ChrobakForm::verification_bound`].
pub fn chrobak_normal_form(nfa: &OneWayMachine) -> Result<ChrobakForm, TransformError> {
    if nfa.alphabet().len() != 1 {
        return Err(TransformError::NotUnary);
    }
    let n = nfa.num_states();
    let seq = acceptance_sequence(nfa)?;
    let p0 = minimal_period(&seq);
    // minimal preperiod once the period is fixed
    let mut t0 = seq.preperiod;
    while t0 > 0 && seq.at(t0 - 1) == seq.at(t0 - 1 + p0) {
        t0 -= 1;
    }

    // residues of each candidate modulus whose whole class is eventually
    // accepted
    let max_modulus = n.max(p0);
    let mut valid: Vec<Vec<bool>> = vec![Vec::new(); max_modulus + 1];
    for c in 1..=max_modulus {
        let window = c.lcm(&p0);
        valid[c] = (0..c)
            .map(|r| {
                (t0..t0 + window)
                    .filter(|m| m % c == r)
                    .all(|m| seq.at(m))
            })
            .collect();
    }

    let covers = |moduli: &[usize]| -> bool {
        let mut window = p0;
        for &c in moduli {
            window = window.lcm(&c);
            if window > WINDOW_BUDGET {
                return false;
            }
        }
        (t0..t0 + window).all(|m| {
            let accepted = seq.at(m);
            let covered = moduli.iter().any(|&c| valid[c][m % c]);
            accepted == covered
        })
    };

    // useful moduli, then subsets by total size
    let useful: Vec<usize> = (1..=n).filter(|&c| valid[c].iter().any(|&v| v)).collect();
    let mut chosen: Option<Vec<usize>> = None;
    if useful.len() <= 20 {
        let mut candidates: Vec<(usize, Vec<usize>)> = Vec::new();
        for mask in 0u32..(1u32 << useful.len()) {
            let set: Vec<usize> = useful
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &c)| c)
                .collect();
            let total: usize = set.iter().sum();
            if total <= n {
                candidates.push((total, set));
            }
        }
        candidates.sort();
        for (_, set) in candidates {
            if covers(&set) {
                chosen = Some(set);
                break;
            }
        }
    }
    // a single cycle of the exact period always covers
    let moduli = chosen.unwrap_or_else(|| {
        if (t0..t0 + p0).any(|m| seq.at(m)) {
            vec![p0]
        } else {
            Vec::new()
        }
    });
    let class_accept = |m: usize| moduli.iter().any(|&c| valid[c][m % c]);

    // shrink the tail: the classes may agree with the sequence even before t0
    let mut tail_len = t0;
    while tail_len > 0 && seq.at(tail_len - 1) == class_accept(tail_len - 1) {
        tail_len -= 1;
    }
    if moduli.len() >= 2 {
        tail_len = tail_len.max(1); // a branch state is needed to split
    }

    let tail: Vec<bool> = (0..tail_len).map(|m| seq.at(m)).collect();
    let cycles: Vec<Vec<bool>> = moduli
        .iter()
        .map(|&c| (0..c).map(|j| valid[c][(tail_len + j) % c]).collect())
        .collect();
    Ok(ChrobakForm { tail, cycles })
}
