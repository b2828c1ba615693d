#![allow(dead_code)]

use regex::Regex;
use zigzag::families::{generate, Family, FamilySpec, Variant};
use zigzag::machine::{Alphabet, Machine, OneWayMachine, Symbol, TwoWayMachine};
use zigzag::words::words_up_to;

pub fn ab() -> Alphabet {
    Alphabet::ab()
}

pub fn w(text: &str) -> Vec<Symbol> {
    ab().word(text).expect("word over {a,b}")
}

pub fn render(word: &[Symbol]) -> String {
    ab().render(word)
}

/// Independent membership oracle for the I family: words whose n-th symbol
/// from the right is an `a`.
pub fn i_oracle(n: usize) -> Regex {
    Regex::new(&format!("^[ab]*a[ab]{{{}}}$", n - 1)).unwrap()
}

/// Independent membership oracle for the L family: two `a`s exactly n apart.
pub fn l_oracle(n: usize) -> Regex {
    Regex::new(&format!("^[ab]*a[ab]{{{}}}a[ab]*$", n - 1)).unwrap()
}

pub fn oracle(family: Family, n: usize) -> Regex {
    match family {
        Family::I => i_oracle(n),
        Family::L => l_oracle(n),
    }
}

pub fn gen(family: Family, n: usize, variant: Variant) -> Machine {
    generate(&FamilySpec::new(family, n, variant)).expect("valid family spec")
}

pub fn gen_two_way(family: Family, n: usize, variant: Variant) -> TwoWayMachine {
    match gen(family, n, variant) {
        Machine::TwoWay(m) => m,
        Machine::OneWay(_) => panic!("expected a two-way machine"),
    }
}

pub fn gen_one_way(family: Family, n: usize, variant: Variant) -> OneWayMachine {
    match gen(family, n, variant) {
        Machine::OneWay(m) => m,
        Machine::TwoWay(_) => panic!("expected a one-way machine"),
    }
}

/// All binary words of length at most `max_len`, as symbol vectors.
pub fn all_words(max_len: usize) -> Vec<Vec<Symbol>> {
    words_up_to(2, max_len).collect()
}

/// A unary DFA that is a single cycle with the given accepting residues.
pub fn unary_cycle_dfa(len: usize, accepting_residues: &[usize]) -> OneWayMachine {
    let mut b = OneWayMachine::builder(Alphabet::unary());
    let ids: Vec<_> = (0..len).map(|i| b.state(format!("q{i}"))).collect();
    for i in 0..len {
        b.transition(ids[i], Symbol(0), ids[(i + 1) % len]);
    }
    b.initial(ids[0]);
    for &r in accepting_residues {
        b.accept(ids[r]);
    }
    b.build()
}

/// Union of a 2-cycle (even lengths) and a 3-cycle (multiples of three)
/// behind one initial branch state: 6 states, accepts `a^m` iff 2|m or 3|m.
pub fn even_or_triple_nfa() -> OneWayMachine {
    let a = Symbol(0);
    let mut b = OneWayMachine::builder(Alphabet::unary());
    let start = b.state("s");
    let e0 = b.state("e0");
    let e1 = b.state("e1");
    let t0 = b.state("t0");
    let t1 = b.state("t1");
    let t2 = b.state("t2");
    b.transition(start, a, e1); // after one symbol: odd
    b.transition(e1, a, e0);
    b.transition(e0, a, e1);
    b.transition(start, a, t1);
    b.transition(t1, a, t2);
    b.transition(t2, a, t0);
    b.transition(t0, a, t1);
    b.initial(start);
    b.accept(start); // the empty word is even (and a triple)
    b.accept(e0);
    b.accept(t0);
    b.build()
}

/// Union of `a(aa)*` (odd lengths) and `(aaa)*`: 6 states, disjoint cycles
/// of length 2 and 3 behind an initial branch.
pub fn odd_or_triple_nfa() -> OneWayMachine {
    let a = Symbol(0);
    let mut b = OneWayMachine::builder(Alphabet::unary());
    let start = b.state("s");
    let o1 = b.state("o1");
    let o0 = b.state("o0");
    let t0 = b.state("t0");
    let t1 = b.state("t1");
    let t2 = b.state("t2");
    b.transition(start, a, o1);
    b.transition(o1, a, o0);
    b.transition(o0, a, o1);
    b.transition(start, a, t1);
    b.transition(t1, a, t2);
    b.transition(t2, a, t0);
    b.transition(t0, a, t1);
    b.initial(start);
    b.accept(start);
    b.accept(o1);
    b.accept(t0);
    b.build()
}

/// Brute-force membership for a unary NFA at one length, by stepping the
/// reachable state set.
pub fn unary_accepts(nfa: &OneWayMachine, m: usize) -> bool {
    nfa.accepts(&vec![Symbol(0); m])
}

/// A random unary NFA: every state gets zero to two successors on `a`.
pub fn random_unary_nfa(rng: &mut impl rand::Rng, max_states: usize) -> OneWayMachine {
    let n = rng.gen_range(1..=max_states);
    let mut b = OneWayMachine::builder(Alphabet::unary());
    let ids: Vec<_> = (0..n).map(|i| b.state(format!("q{i}"))).collect();
    for &q in &ids {
        for _ in 0..rng.gen_range(0..=2) {
            let to = ids[rng.gen_range(0..n)];
            b.transition(q, Symbol(0), to);
        }
    }
    b.initial(ids[0]);
    for &q in &ids {
        if rng.gen_bool(0.4) {
            b.accept(q);
        }
    }
    b.build()
}

/// A random quasi-sweeping unary machine in the vertex-walking shape: a few
/// abstract vertices, a counting loop of random modulus per enabled ordered
/// pair, nondeterministic choice and reversals only on the endmarkers.
pub fn random_quasi_sweeping(rng: &mut impl rand::Rng) -> TwoWayMachine {
    use zigzag::machine::{AcceptMode, Move, StartCell, TapeSymbol};
    let a = Symbol(0);
    let vertices = rng.gen_range(2..=3usize);
    let mut moduli = vec![vec![0usize; vertices]; vertices];
    for row in moduli.iter_mut() {
        for slot in row.iter_mut() {
            if rng.gen_bool(0.7) {
                *slot = rng.gen_range(1..=6);
            }
        }
    }
    let mut b = zigzag::machine::TwoWayMachine::builder(Alphabet::unary());
    let init = b.state("init");
    let acc = b.state("acc");
    let mut loops = vec![vec![(Vec::new(), Vec::new()); vertices]; vertices];
    for i in 0..vertices {
        for j in 0..vertices {
            let p = moduli[i][j];
            let right: Vec<_> = (0..p).map(|r| b.state(format!("R{i}_{j}_{r}"))).collect();
            let left: Vec<_> = (0..p).map(|r| b.state(format!("L{i}_{j}_{r}"))).collect();
            for r in 0..p {
                b.transition(right[r], TapeSymbol::Real(a), right[(r + 1) % p], Move::Right);
                b.transition(left[r], TapeSymbol::Real(a), left[(r + 1) % p], Move::Left);
            }
            loops[i][j] = (right, left);
        }
    }
    for i in 0..vertices {
        for j in 0..vertices {
            if moduli[i][j] == 0 {
                continue;
            }
            let arrived_right = loops[i][j].0[0];
            let arrived_left = loops[i][j].1[0];
            if j == vertices - 1 {
                b.transition(arrived_right, TapeSymbol::RightEnd, acc, Move::Stay);
                b.transition(arrived_left, TapeSymbol::LeftEnd, acc, Move::Stay);
            } else {
                for k in 0..vertices {
                    if moduli[j][k] == 0 {
                        continue;
                    }
                    let launch_left = loops[j][k].1[0];
                    let launch_right = loops[j][k].0[0];
                    b.transition(arrived_right, TapeSymbol::RightEnd, launch_left, Move::Left);
                    b.transition(arrived_left, TapeSymbol::LeftEnd, launch_right, Move::Right);
                }
            }
        }
    }
    for k in 0..vertices {
        if moduli[0][k] != 0 {
            b.transition(init, TapeSymbol::LeftEnd, loops[0][k].0[0], Move::Right);
        }
    }
    b.initial(init);
    b.accept(acc);
    b.accept_mode(AcceptMode::Anywhere);
    b.start_cell(StartCell::Cell0);
    b.build()
}
