//! Generators for the witness language families.
//!
//! `I(n)` is the set of words over `{a,b}` whose n-th symbol from the right
//! is an `a`; `L(n)` the set of words containing two `a`s exactly `n`
//! positions apart. Every classical recognition strategy for them is
//! generated here, parameterised by `n`: the small NFAs, the minimal DFAs,
//! and the two-way machines with one reversal, zig-zag scans, sweeps, a
//! circular tape, or endmarker-only nondeterminism.

use std::fmt;

use crate::error::FamilyError;
use crate::machine::{
    AcceptMode, Alphabet, Machine, Move, OneWayMachine, StartCell, StateId, Symbol, TapeSymbol,
    TwoWayMachine,
};

const A: Symbol = Symbol(0);
const B: Symbol = Symbol(1);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    I,
    L,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::I => write!(f, "I"),
            Family::L => write!(f, "L"),
        }
    }
}

impl Family {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "I" | "i" => Some(Family::I),
            "L" | "l" => Some(Family::L),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Variant {
    OneWayNfa,
    OneWayDfaMinimal,
    TwoWayOneReversal,
    TwoWayNaive,
    TwoWayImproved,
    TwoWaySweepingQuadratic,
    TwoWaySweepingLinear,
    Rotating,
    OuterNondet,
}

impl Variant {
    pub const ALL: [Variant; 9] = [
        Variant::OneWayNfa,
        Variant::OneWayDfaMinimal,
        Variant::TwoWayOneReversal,
        Variant::TwoWayNaive,
        Variant::TwoWayImproved,
        Variant::TwoWaySweepingQuadratic,
        Variant::TwoWaySweepingLinear,
        Variant::Rotating,
        Variant::OuterNondet,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::OneWayNfa => "nfa",
            Variant::OneWayDfaMinimal => "dfa-minimal",
            Variant::TwoWayOneReversal => "one-reversal",
            Variant::TwoWayNaive => "naive",
            Variant::TwoWayImproved => "improved",
            Variant::TwoWaySweepingQuadratic => "sweeping-quadratic",
            Variant::TwoWaySweepingLinear => "sweeping-linear",
            Variant::Rotating => "rotating",
            Variant::OuterNondet => "outer-nondet",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Variant::ALL.iter().copied().find(|v| v.as_str() == s)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// A fully specified generator request.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub variant: Variant,
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.family, self.n, self.variant)
    }
}

impl FamilySpec {
    pub fn new(family: Family, n: usize, variant: Variant) -> Self {
        FamilySpec { family, n, variant }
    }

    /// The one-reversal strategy only fits `I`; the zig-zag, sweeping and
    /// guessing strategies look for a pair of `a`s and only fit `L`.
    pub fn check(&self) -> Result<(), FamilyError> {
        if self.n == 0 {
            return Err(FamilyError::InvalidParameter);
        }
        let ok = match self.variant {
            Variant::TwoWayOneReversal => self.family == Family::I,
            Variant::TwoWayNaive
            | Variant::TwoWayImproved
            | Variant::TwoWaySweepingQuadratic
            | Variant::TwoWaySweepingLinear
            | Variant::OuterNondet => self.family == Family::L,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(FamilyError::UnsupportedCombination {
                family: self.family.to_string(),
                variant: self.variant.to_string(),
            })
        }
    }

    /// Upper bound on the state count of the generated machine, with the
    /// concrete constants this crate achieves.
    pub fn state_bound(&self) -> usize {
        let n = self.n;
        match (self.family, self.variant) {
            (Family::I, Variant::OneWayNfa) => n + 1,
            (Family::L, Variant::OneWayNfa) => n + 2,
            (Family::I, Variant::OneWayDfaMinimal) => 1 << n,
            (Family::L, Variant::OneWayDfaMinimal) => (1 << n) + 1,
            (_, Variant::TwoWayOneReversal) => n + 2,
            (_, Variant::TwoWayNaive) => 6 * n,
            (_, Variant::TwoWayImproved) => 2 * n + 1,
            (_, Variant::TwoWaySweepingQuadratic) => 2 * n * n + n,
            (_, Variant::TwoWaySweepingLinear) => 3 * n + 1,
            (_, Variant::Rotating) => 3 * n + 1,
            (_, Variant::OuterNondet) => 2 * n + 2,
        }
    }
}

/// Membership by direct positional check, independent of any automaton.
///
/// Words are over the binary alphabet with symbol 0 = `a`, symbol 1 = `b`.
pub fn membership_oracle(family: Family, n: usize, word: &[Symbol]) -> bool {
    match family {
        Family::I => word.len() >= n && word[word.len() - n] == A,
        Family::L => (0..word.len().saturating_sub(n)).any(|i| word[i] == A && word[i + n] == A),
    }
}

/// Builds the machine described by `spec`.
pub fn generate(spec: &FamilySpec) -> Result<Machine, FamilyError> {
    spec.check()?;
    let n = spec.n;
    Ok(match (spec.family, spec.variant) {
        (Family::I, Variant::OneWayNfa) => Machine::OneWay(i_nfa(n)),
        (Family::L, Variant::OneWayNfa) => Machine::OneWay(l_nfa(n)),
        (family, Variant::OneWayDfaMinimal) => Machine::OneWay(window_dfa(family, n)),
        (_, Variant::TwoWayOneReversal) => Machine::TwoWay(i_one_reversal(n)),
        (_, Variant::TwoWayNaive) => Machine::TwoWay(l_naive(n)),
        (_, Variant::TwoWayImproved) => Machine::TwoWay(l_improved(n)),
        (_, Variant::TwoWaySweepingQuadratic) => Machine::TwoWay(l_sweeping_quadratic(n)),
        (_, Variant::TwoWaySweepingLinear) => Machine::TwoWay(l_sweeping_linear(n)),
        (Family::I, Variant::Rotating) => Machine::TwoWay(i_rotating(n)),
        (Family::L, Variant::Rotating) => Machine::TwoWay(l_rotating(n)),
        (_, Variant::OuterNondet) => Machine::TwoWay(l_outer_nondet(n)),
    })
}

/// n+1 states: guess the `a` at distance n from the right end and count it
/// down.
fn i_nfa(n: usize) -> OneWayMachine {
    let mut b = OneWayMachine::builder(Alphabet::ab());
    let states: Vec<StateId> = (0..=n).map(|i| b.state(format!("q{i}"))).collect();
    b.transition(states[0], A, states[0]);
    b.transition(states[0], B, states[0]);
    b.transition(states[0], A, states[1]);
    for i in 1..n {
        b.transition(states[i], A, states[i + 1]);
        b.transition(states[i], B, states[i + 1]);
    }
    b.initial(states[0]);
    b.accept(states[n]);
    b.build()
}

/// n+2 states: guess the left `a`, skip n-1 symbols, demand another `a`.
fn l_nfa(n: usize) -> OneWayMachine {
    let mut b = OneWayMachine::builder(Alphabet::ab());
    let states: Vec<StateId> = (0..=n).map(|i| b.state(format!("q{i}"))).collect();
    let qf = b.state("qf");
    b.transition(states[0], A, states[0]);
    b.transition(states[0], B, states[0]);
    b.transition(states[0], A, states[1]);
    for i in 1..n {
        b.transition(states[i], A, states[i + 1]);
        b.transition(states[i], B, states[i + 1]);
    }
    b.transition(states[n], A, qf);
    b.transition(qf, A, qf);
    b.transition(qf, B, qf);
    b.initial(states[0]);
    b.accept(qf);
    b.build()
}

fn window_name(bits: usize, n: usize) -> String {
    (0..n)
        .map(|j| {
            if bits >> (n - 1 - j) & 1 == 0 {
                'a'
            } else {
                'b'
            }
        })
        .collect()
}

/// Minimal DFA remembering the last n symbols in its control.
///
/// For `I` the 2^n window states suffice; for `L` a detected pair jumps to a
/// single accepting sink, giving 2^n + 1 states.
fn window_dfa(family: Family, n: usize) -> OneWayMachine {
    let mut b = OneWayMachine::builder(Alphabet::ab());
    let count = 1usize << n;
    let windows: Vec<StateId> = (0..count).map(|w| b.state(window_name(w, n))).collect();
    let acc = match family {
        Family::L => Some(b.state("acc")),
        Family::I => None,
    };
    let shift = |w: usize, bit: usize| ((w << 1) & (count - 1)) | bit;
    for w in 0..count {
        let oldest_is_a = w >> (n - 1) & 1 == 0;
        for (sym, bit) in [(A, 0usize), (B, 1usize)] {
            if family == Family::L && oldest_is_a && sym == A {
                b.transition(windows[w], sym, acc.unwrap());
            } else {
                b.transition(windows[w], sym, windows[shift(w, bit)]);
            }
        }
    }
    b.initial(windows[count - 1]); // the all-b window
    match family {
        Family::I => {
            for w in 0..count {
                if w >> (n - 1) & 1 == 0 {
                    b.accept(windows[w]);
                }
            }
        }
        Family::L => {
            let acc = acc.unwrap();
            b.transition(acc, A, acc);
            b.transition(acc, B, acc);
            b.accept(acc);
        }
    }
    b.build()
}

/// Scan to the right endmarker, walk n cells back, test for `a`. One
/// reversal, n+2 states.
fn i_one_reversal(n: usize) -> TwoWayMachine {
    let mut b = TwoWayMachine::builder(Alphabet::ab());
    let scan = b.state("scan");
    let back: Vec<StateId> = (1..=n).map(|k| b.state(format!("back{k}"))).collect();
    let acc = b.state("acc");
    for s in [A, B] {
        b.transition(scan, TapeSymbol::Real(s), scan, Move::Right);
    }
    b.transition(scan, TapeSymbol::RightEnd, back[0], Move::Left);
    for k in 0..n - 1 {
        for s in [A, B] {
            b.transition(back[k], TapeSymbol::Real(s), back[k + 1], Move::Left);
        }
    }
    b.transition(back[n - 1], TapeSymbol::Real(A), acc, Move::Stay);
    b.initial(scan);
    b.accept(acc);
    b.accept_mode(AcceptMode::Anywhere);
    b.start_cell(StartCell::Cell1);
    b.build()
}

/// Zig-zag scan with no early exit: for every position the machine counts n
/// cells forward, records whether the pair matched in a carried flag, counts
/// n-1 cells back, and only announces the flag at the right endmarker. The
/// head trajectory depends on the input length alone.
fn l_naive(n: usize) -> TwoWayMachine {
    let mut b = TwoWayMachine::builder(Alphabet::ab());
    // f0[found]; f[k][mem][found] for k = 1..=n; back[k][found] for k = 1..n
    let f0: Vec<StateId> = (0..2).map(|fd| b.state(format!("f0_{fd}"))).collect();
    let mut fwd = vec![[[StateId(0); 2]; 2]; n + 1];
    for k in 1..=n {
        for mem in 0..2 {
            for fd in 0..2 {
                let tag = if mem == 1 { 'a' } else { 'x' };
                fwd[k][mem][fd] = b.state(format!("f{k}{tag}{fd}"));
            }
        }
    }
    let mut back = vec![[StateId(0); 2]; n.max(1)];
    for k in 1..n {
        for fd in 0..2 {
            back[k][fd] = b.state(format!("b{k}_{fd}"));
        }
    }
    for fd in 0..2 {
        for (sym, mem) in [(A, 1usize), (B, 0usize)] {
            b.transition(f0[fd], TapeSymbol::Real(sym), fwd[1][mem][fd], Move::Right);
        }
        for k in 1..n {
            for mem in 0..2 {
                for s in [A, B] {
                    b.transition(
                        fwd[k][mem][fd],
                        TapeSymbol::Real(s),
                        fwd[k + 1][mem][fd],
                        Move::Right,
                    );
                }
            }
        }
        for mem in 0..2 {
            for (sym, hit) in [(A, mem == 1), (B, false)] {
                let fd2 = usize::from(fd == 1 || hit);
                let (target, mv) = if n >= 2 {
                    (back[1][fd2], Move::Left)
                } else {
                    (f0[fd2], Move::Stay)
                };
                b.transition(fwd[n][mem][fd], TapeSymbol::Real(sym), target, mv);
            }
        }
        for k in 1..n {
            let (target, mv) = if k + 1 < n {
                (back[k + 1][fd], Move::Left)
            } else {
                (f0[fd], Move::Stay)
            };
            for s in [A, B] {
                b.transition(back[k][fd], TapeSymbol::Real(s), target, mv);
            }
        }
    }
    // acceptance is the carried flag, announced when the head reaches -|
    b.accept(f0[1]);
    for k in 1..=n {
        for mem in 0..2 {
            b.accept(fwd[k][mem][1]);
        }
    }
    for k in 1..n {
        b.accept(back[k][1]);
    }
    b.initial(f0[0]);
    b.accept_mode(AcceptMode::OnRightEnd);
    b.start_cell(StartCell::Cell1);
    b.build()
}

/// The zig-zag scan with both shortcuts: skip positions holding `b`, accept
/// as soon as a pair is found. 2n+1 states.
fn l_improved(n: usize) -> TwoWayMachine {
    let mut b = TwoWayMachine::builder(Alphabet::ab());
    let scan = b.state("scan");
    let g: Vec<StateId> = (1..=n).map(|k| b.state(format!("g{k}"))).collect();
    let h: Vec<StateId> = (1..n).map(|k| b.state(format!("h{k}"))).collect();
    let acc = b.state("acc");
    b.transition(scan, TapeSymbol::Real(B), scan, Move::Right);
    b.transition(scan, TapeSymbol::Real(A), g[0], Move::Right);
    for k in 0..n - 1 {
        for s in [A, B] {
            b.transition(g[k], TapeSymbol::Real(s), g[k + 1], Move::Right);
        }
    }
    b.transition(g[n - 1], TapeSymbol::Real(A), acc, Move::Stay);
    let after_miss = if n >= 2 { (h[0], Move::Left) } else { (scan, Move::Stay) };
    b.transition(g[n - 1], TapeSymbol::Real(B), after_miss.0, after_miss.1);
    for k in 0..n.saturating_sub(1) {
        let (target, mv) = if k + 1 < n - 1 {
            (h[k + 1], Move::Left)
        } else {
            (scan, Move::Stay)
        };
        for s in [A, B] {
            b.transition(h[k], TapeSymbol::Real(s), target, mv);
        }
    }
    b.initial(scan);
    b.accept(acc);
    b.accept_mode(AcceptMode::Anywhere);
    b.start_cell(StartCell::Cell1);
    b.build()
}

/// Sweeping recogniser with the sweep index kept in the control: sweep i
/// inspects cells i, i+n, i+2n, … and accepts when two consecutive inspected
/// cells hold `a`. 2n² + n states.
fn l_sweeping_quadratic(n: usize) -> TwoWayMachine {
    let mut b = TwoWayMachine::builder(Alphabet::ab());
    // s[i][c][mem]: sweep i, cell index ≡ c (mod n)
    let mut s = vec![vec![[StateId(0); 2]; n]; n + 1];
    for i in 1..=n {
        for c in 0..n {
            for mem in 0..2 {
                let tag = if mem == 1 { 'a' } else { 'x' };
                s[i][c][mem] = b.state(format!("s{i}c{c}{tag}"));
            }
        }
    }
    let mut ret = vec![StateId(0); n + 1];
    for j in 2..=n {
        ret[j] = b.state(format!("r{j}"));
    }
    let acc = b.state("acc");
    for i in 1..=n {
        for c in 0..n {
            for mem in 0..2 {
                let st = s[i][c][mem];
                b.transition(st, TapeSymbol::LeftEnd, s[i][1 % n][mem], Move::Right);
                let inspect = c == i % n;
                for (sym, is_a) in [(A, true), (B, false)] {
                    if inspect && mem == 1 && is_a {
                        b.transition(st, TapeSymbol::Real(sym), acc, Move::Stay);
                    } else {
                        let mem2 = if inspect { usize::from(is_a) } else { mem };
                        b.transition(
                            st,
                            TapeSymbol::Real(sym),
                            s[i][(c + 1) % n][mem2],
                            Move::Right,
                        );
                    }
                }
                if i < n {
                    b.transition(st, TapeSymbol::RightEnd, ret[i + 1], Move::Left);
                }
            }
        }
    }
    for j in 2..=n {
        for sym in [A, B] {
            b.transition(ret[j], TapeSymbol::Real(sym), ret[j], Move::Left);
        }
        b.transition(ret[j], TapeSymbol::LeftEnd, s[j][1 % n][0], Move::Right);
    }
    b.initial(s[1][0][0]);
    b.accept(acc);
    b.accept_mode(AcceptMode::Anywhere);
    b.start_cell(StartCell::Cell0);
    b.build()
}

/// Sweeping recogniser with 3n+1 states: the sweep index lives in the phase
/// of a position counter. The right-to-left counter starts from the
/// left-to-right one at the right endmarker, and its value at the left
/// endmarker recovers the sweep index for the next round.
fn l_sweeping_linear(n: usize) -> TwoWayMachine {
    let mut b = TwoWayMachine::builder(Alphabet::ab());
    let mut fwd = vec![[StateId(0); 2]; n];
    for c in 0..n {
        for mem in 0..2 {
            let tag = if mem == 1 { 'a' } else { 'x' };
            fwd[c][mem] = b.state(format!("f{c}{tag}"));
        }
    }
    let ret: Vec<StateId> = (0..n).map(|c| b.state(format!("r{c}"))).collect();
    let acc = b.state("acc");
    for c in 0..n {
        for mem in 0..2 {
            let st = fwd[c][mem];
            b.transition(st, TapeSymbol::LeftEnd, fwd[(c + 1) % n][mem], Move::Right);
            for (sym, is_a) in [(A, true), (B, false)] {
                if c == 0 && mem == 1 && is_a {
                    b.transition(st, TapeSymbol::Real(sym), acc, Move::Stay);
                } else {
                    let mem2 = if c == 0 { usize::from(is_a) } else { mem };
                    b.transition(st, TapeSymbol::Real(sym), fwd[(c + 1) % n][mem2], Move::Right);
                }
            }
            b.transition(st, TapeSymbol::RightEnd, ret[(c + n - 1) % n], Move::Left);
        }
        for sym in [A, B] {
            b.transition(ret[c], TapeSymbol::Real(sym), ret[(c + n - 1) % n], Move::Left);
        }
        if c != 0 {
            // counter value -i identifies the sweep index i; i = n rejects
            b.transition(ret[c], TapeSymbol::LeftEnd, fwd[c][0], Move::Right);
        }
    }
    b.initial(fwd[n - 1][0]);
    b.accept(acc);
    b.accept_mode(AcceptMode::Anywhere);
    b.start_cell(StartCell::Cell0);
    b.build()
}

/// Rotating recogniser for `I(n)`: the first pass measures the input length
/// modulo n, the second tracks the most recent cell in the target residue
/// class, which at the right endmarker is exactly the cell n from the end.
fn i_rotating(n: usize) -> TwoWayMachine {
    let mut b = TwoWayMachine::builder(Alphabet::ab());
    let count: Vec<StateId> = (0..n).map(|c| b.state(format!("c{c}"))).collect();
    let mut probe = vec![[StateId(0); 2]; n];
    for d in 0..n {
        for mem in 0..2 {
            let tag = if mem == 1 { 'a' } else { 'x' };
            probe[d][mem] = b.state(format!("p{d}{tag}"));
        }
    }
    let acc = b.state("acc");
    for c in 0..n {
        for s in [A, B] {
            b.transition(count[c], TapeSymbol::Real(s), count[(c + 1) % n], Move::Right);
        }
        b.transition(count[c], TapeSymbol::RightEnd, probe[(n + 1 - c) % n][0], Move::Wrap);
    }
    for d in 0..n {
        for mem in 0..2 {
            let st = probe[d][mem];
            for (sym, is_a) in [(A, true), (B, false)] {
                let mem2 = if d == 0 { usize::from(is_a) } else { mem };
                b.transition(st, TapeSymbol::Real(sym), probe[(d + 1) % n][mem2], Move::Right);
            }
        }
        b.transition(probe[d][1], TapeSymbol::RightEnd, acc, Move::Stay);
    }
    b.initial(count[1 % n]);
    b.accept(acc);
    b.accept_mode(AcceptMode::Anywhere);
    b.start_cell(StartCell::Cell1);
    b.build()
}

/// Rotating recogniser for `L(n)`: rounds alternate an inspecting up-counting
/// pass with a down-counting pass that cancels the length added by the
/// rotation, so the round index survives in the counter phase.
fn l_rotating(n: usize) -> TwoWayMachine {
    let mut b = TwoWayMachine::builder(Alphabet::ab());
    let mut up = vec![[StateId(0); 2]; n];
    for u in 0..n {
        for mem in 0..2 {
            let tag = if mem == 1 { 'a' } else { 'x' };
            up[u][mem] = b.state(format!("u{u}{tag}"));
        }
    }
    let down: Vec<StateId> = (0..n).map(|v| b.state(format!("d{v}"))).collect();
    let acc = b.state("acc");
    for u in 0..n {
        for mem in 0..2 {
            let st = up[u][mem];
            for (sym, is_a) in [(A, true), (B, false)] {
                if u == 0 && mem == 1 && is_a {
                    b.transition(st, TapeSymbol::Real(sym), acc, Move::Stay);
                } else {
                    let mem2 = if u == 0 { usize::from(is_a) } else { mem };
                    b.transition(st, TapeSymbol::Real(sym), up[(u + 1) % n][mem2], Move::Right);
                }
            }
            b.transition(st, TapeSymbol::RightEnd, down[u], Move::Wrap);
        }
        for s in [A, B] {
            b.transition(down[u], TapeSymbol::Real(s), down[(u + n - 1) % n], Move::Right);
        }
        if u != n - 1 {
            // the down pass ends holding the round index; round n-1 is last
            b.transition(down[u], TapeSymbol::RightEnd, up[(u + 1) % n][0], Move::Wrap);
        }
    }
    b.initial(up[0][0]);
    b.accept(acc);
    b.accept_mode(AcceptMode::Anywhere);
    b.start_cell(StartCell::Cell1);
    b.build()
}

/// One left-to-right pass per guess: the machine chooses the counter phase
/// nondeterministically on the left endmarker and then runs deterministically.
fn l_outer_nondet(n: usize) -> TwoWayMachine {
    let mut b = TwoWayMachine::builder(Alphabet::ab());
    let init = b.state("init");
    let mut run = vec![[StateId(0); 2]; n];
    for v in 0..n {
        for mem in 0..2 {
            let tag = if mem == 1 { 'a' } else { 'x' };
            run[v][mem] = b.state(format!("s{v}{tag}"));
        }
    }
    let acc = b.state("acc");
    for v in 0..n {
        b.transition(init, TapeSymbol::LeftEnd, run[v][0], Move::Right);
        for mem in 0..2 {
            let st = run[v][mem];
            for (sym, is_a) in [(A, true), (B, false)] {
                if v == 0 && mem == 1 && is_a {
                    b.transition(st, TapeSymbol::Real(sym), acc, Move::Stay);
                } else {
                    let mem2 = if v == 0 { usize::from(is_a) } else { mem };
                    b.transition(st, TapeSymbol::Real(sym), run[(v + 1) % n][mem2], Move::Right);
                }
            }
        }
    }
    b.initial(init);
    b.accept(acc);
    b.accept_mode(AcceptMode::Anywhere);
    b.start_cell(StartCell::Cell0);
    b.build()
}
