//! Prime-encoded graph accessibility over a unary tape.
//!
//! Directed graphs on `n` vertices are encoded as the product of one prime
//! per present edge. A sweeping, outer-nondeterministic unary machine walks
//! the graph by counting the input length modulo edge primes, so that
//! `a^m` is accepted exactly when the decoded graph has a path from vertex 0
//! to vertex n-1. Simulation of such machines is length-only: a full sweep
//! over `a^m` is resolved with tail/cycle analysis and one modular reduction,
//! never by materialising the tape.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::rc::Rc;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::GapError;
use crate::machine::{
    AcceptMode, Alphabet, Move, StartCell, StateId, Symbol, TapeSymbol, TwoWayMachine,
};

/// Largest vertex count the machine builder supports with the default prime
/// budget (the first `n²` primes).
pub const MAX_GAP_VERTICES: usize = 10;

// ---------------------------------------------------------------------------
// Graphs

/// A directed graph on vertices `0..n`; self-loops allowed. Vertex 0 and
/// vertex n-1 are the implicit source and target of every accessibility
/// query.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a graph needs at least one vertex");
        Digraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn with_edges<I>(n: usize, edges: I) -> Result<Self, GapError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Digraph::new(n);
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<(), GapError> {
        if i >= self.n || j >= self.n {
            return Err(GapError::EdgeOutOfRange { i, j, n: self.n });
        }
        self.edges.insert((i, j));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Parses the on-disk format: a `n <count>` line followed by
    /// `edge <i> <j>` lines in any order. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, GapError> {
        let mut graph: Option<Digraph> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            match tokens.next() {
                Some("n") => {
                    if graph.is_some() {
                        return Err(GapError::Parse {
                            line,
                            message: "duplicate 'n' line".to_string(),
                        });
                    }
                    let count: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .filter(|&c| c >= 1)
                        .ok_or_else(|| GapError::Parse {
                            line,
                            message: "expected 'n <positive count>'".to_string(),
                        })?;
                    graph = Some(Digraph::new(count));
                }
                Some("edge") => {
                    let g = graph.as_mut().ok_or_else(|| GapError::Parse {
                        line,
                        message: "'edge' before 'n'".to_string(),
                    })?;
                    let i: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| GapError::Parse {
                            line,
                            message: "expected 'edge <i> <j>'".to_string(),
                        })?;
                    let j: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| GapError::Parse {
                            line,
                            message: "expected 'edge <i> <j>'".to_string(),
                        })?;
                    g.add_edge(i, j).map_err(|e| GapError::Parse {
                        line,
                        message: e.to_string(),
                    })?;
                }
                Some(other) => {
                    return Err(GapError::Parse {
                        line,
                        message: format!("unknown directive {other:?}"),
                    })
                }
                None => unreachable!(),
            }
            if let Some(extra) = tokens.next() {
                return Err(GapError::Parse {
                    line,
                    message: format!("unexpected trailing token {extra:?}"),
                });
            }
        }
        graph.ok_or(GapError::Parse {
            line: 0,
            message: "missing 'n <count>' line".to_string(),
        })
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (i, j) in &self.edges {
            writeln!(f, "edge {i} {j}")?;
        }
        Ok(())
    }
}

/// Plain breadth-first accessibility from vertex 0 to vertex n-1. This is
/// the ground-truth oracle every unary pipeline is checked against. A
/// one-vertex graph is accessible by the empty path.
pub fn bfs_gap(g: &Digraph) -> bool {
    let target = g.n - 1;
    let mut seen = vec![false; g.n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if v == target {
            return true;
        }
        for (i, j) in g.edges() {
            if i == v && !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Primes and encodings

static PRIMES: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();

/// The k-th prime, 1-indexed: `nth_prime(1) = 2`.
pub fn nth_prime(k: usize) -> u64 {
    assert!(k >= 1, "primes are 1-indexed");
    let mut primes = PRIMES
        .get_or_init(|| Mutex::new(vec![2, 3, 5, 7, 11, 13]))
        .lock()
        .expect("prime sieve poisoned");
    while primes.len() < k {
        let mut candidate = primes.last().unwrap() + 2;
        loop {
            let is_prime = primes
                .iter()
                .take_while(|&&p| p * p <= candidate)
                .all(|&p| candidate % p != 0);
            if is_prime {
                break;
            }
            candidate += 2;
        }
        primes.push(candidate);
    }
    primes[k - 1]
}

/// The prime associated with edge `(i, j)` of the complete graph on `n`
/// vertices: the `(i·n + j + 1)`-th prime.
pub fn edge_prime(i: usize, j: usize, n: usize) -> u64 {
    assert!(i < n && j < n, "edge out of range");
    nth_prime(i * n + j + 1)
}

/// Product of the primes of all present edges; the edgeless graph encodes
/// as 1.
pub fn encode_graph(g: &Digraph) -> BigUint {
    let mut m = BigUint::one();
    for (i, j) in g.edges() {
        m *= BigUint::from(edge_prime(i, j, g.n));
    }
    m
}

/// The graph whose edge `(i, j)` is present iff its prime divides `m`.
/// Decoding inverts [`encode_graph`]; `m = 0` decodes to the complete graph.
pub fn decode_graph(m: &BigUint, n: usize) -> Digraph {
    let mut g = Digraph::new(n);
    for i in 0..n {
        for j in 0..n {
            let p = BigUint::from(edge_prime(i, j, n));
            if (m % &p).is_zero() {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

// ---------------------------------------------------------------------------
// The unary accessibility machine

/// Builds the sweeping, outer-nondeterministic unary machine that accepts
/// `a^m` exactly when the decoded graph on `n` vertices has a path from
/// vertex 0 to vertex n-1.
///
/// Each traversal counts the input length modulo one edge prime: from a
/// state representing vertex `i` on an endmarker the machine guesses a
/// successor `j` and crosses the tape in the `(i,j)` counting loop. Arriving
/// with remainder 0 means the edge is present and the machine now represents
/// vertex `j`; every other remainder has no outgoing transitions and hangs.
pub fn build_unary_gap_2nfa(n: usize) -> Result<TwoWayMachine, GapError> {
    if !(2..=MAX_GAP_VERTICES).contains(&n) {
        return Err(GapError::VertexCountOutOfRange {
            n,
            min: 2,
            max: MAX_GAP_VERTICES,
        });
    }
    let a = Symbol(0);
    let mut b = TwoWayMachine::builder(Alphabet::unary());
    let init = b.state("init");
    let acc = b.state("acc");
    // loops[i][j][dir][r]: counting loop for edge (i, j), dir 0 = rightward
    let mut loops: Vec<Vec<[Vec<StateId>; 2]>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let p = edge_prime(i, j, n) as usize;
            let right: Vec<StateId> = (0..p).map(|r| b.state(format!("R{i}_{j}_{r}"))).collect();
            let left: Vec<StateId> = (0..p).map(|r| b.state(format!("L{i}_{j}_{r}"))).collect();
            row.push([right, left]);
        }
        loops.push(row);
    }
    for i in 0..n {
        for j in 0..n {
            let p = loops[i][j][0].len();
            for r in 0..p {
                let next = (r + 1) % p;
                b.transition(
                    loops[i][j][0][r],
                    TapeSymbol::Real(a),
                    loops[i][j][0][next],
                    Move::Right,
                );
                b.transition(
                    loops[i][j][1][r],
                    TapeSymbol::Real(a),
                    loops[i][j][1][next],
                    Move::Left,
                );
            }
            // remainder 0 on an endmarker represents vertex j
            if j == n - 1 {
                b.transition(loops[i][j][0][0], TapeSymbol::RightEnd, acc, Move::Stay);
                b.transition(loops[i][j][1][0], TapeSymbol::LeftEnd, acc, Move::Stay);
            } else {
                for k in 0..n {
                    b.transition(
                        loops[i][j][0][0],
                        TapeSymbol::RightEnd,
                        loops[j][k][1][0],
                        Move::Left,
                    );
                    b.transition(
                        loops[i][j][1][0],
                        TapeSymbol::LeftEnd,
                        loops[j][k][0][0],
                        Move::Right,
                    );
                }
            }
        }
    }
    // the computation starts on the left endmarker representing vertex 0
    for k in 0..n {
        b.transition(init, TapeSymbol::LeftEnd, loops[0][k][0][0], Move::Right);
    }
    b.initial(init);
    b.accept(acc);
    b.accept_mode(AcceptMode::Anywhere);
    b.start_cell(StartCell::Cell0);
    Ok(b.build())
}

// ---------------------------------------------------------------------------
// Length-only simulation

/// Which endmarker a sweep departs from.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EndSide {
    Left,
    Right,
}

impl EndSide {
    pub fn other(self) -> EndSide {
        match self {
            EndSide::Left => EndSide::Right,
            EndSide::Right => EndSide::Left,
        }
    }
}

/// Result of a full traversal: the state arriving at the opposite endmarker,
/// or a hang (missing transition or a stationary loop mid-tape).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Landing {
    State(StateId),
    Hang,
}

/// Per-launch orbit of the one-cell step function: a prefix of states and,
/// unless the run dies, the index where it starts cycling.
struct Orbit {
    seq: Vec<StateId>,
    cycle_start: Option<usize>,
}

impl Orbit {
    fn landing(&self, m: &BigUint) -> Landing {
        if let Some(idx) = m.to_usize() {
            if idx < self.seq.len() {
                return Landing::State(self.seq[idx]);
            }
        }
        match self.cycle_start {
            None => Landing::Hang,
            Some(start) => {
                let len = self.seq.len() - start;
                let offset = ((m - BigUint::from(start)) % BigUint::from(len))
                    .to_usize()
                    .expect("cycle offset fits in usize");
                Landing::State(self.seq[start + offset])
            }
        }
    }
}

/// Length-only simulator for quasi-sweeping unary machines.
///
/// Construction checks the structural prerequisites (unary alphabet, no wrap
/// moves, start on the left endmarker); violations of quasi-sweeping on the
/// tape itself (nondeterminism or reversals on the input symbol) surface
/// lazily from the sweeps that encounter them. Orbit analyses are cached per
/// launch state, so repeated queries with different lengths cost one modular
/// reduction each. Not `Sync`; build one simulator per thread.
pub struct SweepSimulator<'m> {
    machine: &'m TwoWayMachine,
    sym: Symbol,
    orbits: RefCell<HashMap<(StateId, EndSide), Rc<Orbit>>>,
}

impl<'m> SweepSimulator<'m> {
    pub fn new(machine: &'m TwoWayMachine) -> Result<Self, GapError> {
        if machine.alphabet().len() != 1 {
            return Err(GapError::NotQuasiSweeping(
                "length-only simulation needs a unary alphabet".to_string(),
            ));
        }
        if machine.has_wrap() {
            return Err(GapError::NotQuasiSweeping(
                "wrap moves are not quasi-sweeping".to_string(),
            ));
        }
        if machine.start_cell() != StartCell::Cell0 {
            return Err(GapError::NotQuasiSweeping(
                "the computation must start on the left endmarker".to_string(),
            ));
        }
        Ok(SweepSimulator {
            machine,
            sym: Symbol(0),
            orbits: RefCell::new(HashMap::new()),
        })
    }

    pub fn machine(&self) -> &TwoWayMachine {
        self.machine
    }

    /// One tape cell in the given direction: resolves stationary steps, then
    /// the move. `None` means the run dies mid-tape.
    fn cell_step(&self, state: StateId, side: EndSide) -> Result<Option<StateId>, GapError> {
        let mut cur = state;
        let mut seen = BTreeSet::new();
        loop {
            if !seen.insert(cur) {
                return Ok(None); // stationary loop mid-tape
            }
            // acceptance away from the endmarkers would never show up in the
            // endmarker configuration graph
            if self.machine.accept_mode() == AcceptMode::Anywhere && self.machine.is_accepting(cur)
            {
                return Err(GapError::NotQuasiSweeping(format!(
                    "state {} can accept in the middle of the tape; anchor acceptance on an endmarker first",
                    self.machine.state_name(cur)
                )));
            }
            let image = self.machine.transitions(cur, TapeSymbol::Real(self.sym));
            if image.len() > 1 {
                return Err(GapError::NotQuasiSweeping(format!(
                    "state {} is nondeterministic on the input symbol",
                    self.machine.state_name(cur)
                )));
            }
            match image.first() {
                None => return Ok(None),
                Some(&(to, mv)) => match (mv, side) {
                    (Move::Stay, _) => cur = to,
                    (Move::Right, EndSide::Left) | (Move::Left, EndSide::Right) => {
                        return Ok(Some(to))
                    }
                    (Move::Wrap, _) => {
                        return Err(GapError::NotQuasiSweeping(
                            "wrap moves are not quasi-sweeping".to_string(),
                        ))
                    }
                    _ => {
                        return Err(GapError::NotQuasiSweeping(format!(
                            "state {} reverses in the middle of the tape",
                            self.machine.state_name(cur)
                        )))
                    }
                },
            }
        }
    }

    fn orbit(&self, launch: StateId, side: EndSide) -> Result<Rc<Orbit>, GapError> {
        if let Some(orbit) = self.orbits.borrow().get(&(launch, side)) {
            return Ok(Rc::clone(orbit));
        }
        let mut seq = vec![launch];
        let mut index: HashMap<StateId, usize> = HashMap::from([(launch, 0)]);
        let mut cycle_start = None;
        loop {
            match self.cell_step(*seq.last().unwrap(), side)? {
                None => break,
                Some(next) => {
                    if let Some(&at) = index.get(&next) {
                        cycle_start = Some(at);
                        break;
                    }
                    index.insert(next, seq.len());
                    seq.push(next);
                }
            }
        }
        let orbit = Rc::new(Orbit { seq, cycle_start });
        self.orbits
            .borrow_mut()
            .insert((launch, side), Rc::clone(&orbit));
        Ok(orbit)
    }

    /// State reached at the opposite endmarker after a full traversal of
    /// `a^m`, starting in `from_state` as the head moves off `from_side`.
    /// Costs O(|Q|) once per launch state plus one modular reduction.
    pub fn landing(
        &self,
        from_state: StateId,
        from_side: EndSide,
        m: &BigUint,
    ) -> Result<Landing, GapError> {
        Ok(self.orbit(from_state, from_side)?.landing(m))
    }

    /// Stationary closure at an endmarker: every state reachable from
    /// `start` without leaving the endmarker cell, including `start`.
    fn endmarker_closure(&self, start: StateId, side: EndSide) -> Vec<StateId> {
        let tape = match side {
            EndSide::Left => TapeSymbol::LeftEnd,
            EndSide::Right => TapeSymbol::RightEnd,
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(q) = queue.pop_front() {
            for &(to, mv) in self.machine.transitions(q, tape) {
                if mv == Move::Stay && seen.insert(to) {
                    queue.push_back(to);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The endmarker configuration graph of the machine on `a^m`.
    pub fn config_graph(&self, m: &BigUint) -> Result<EndmarkerConfigGraph, GapError> {
        let machine = self.machine;
        let mut edges = Vec::new();
        for (side, tape) in [
            (EndSide::Left, TapeSymbol::LeftEnd),
            (EndSide::Right, TapeSymbol::RightEnd),
        ] {
            for q in 0..machine.num_states() {
                let from = (side, StateId(q));
                for &(to, mv) in machine.transitions(StateId(q), tape) {
                    match (mv, side) {
                        (Move::Stay, _) => edges.push(ConfigEdge {
                            from,
                            to: (side, to),
                            kind: EdgeKind::Stationary,
                        }),
                        (Move::Right, EndSide::Left) | (Move::Left, EndSide::Right) => {
                            if let Landing::State(landed) = self.landing(to, side, m)? {
                                edges.push(ConfigEdge {
                                    from,
                                    to: (side.other(), landed),
                                    kind: EdgeKind::Traversal,
                                });
                            }
                        }
                        (Move::Wrap, _) => {
                            return Err(GapError::NotQuasiSweeping(
                                "wrap moves are not quasi-sweeping".to_string(),
                            ))
                        }
                        _ => {
                            return Err(GapError::NotQuasiSweeping(format!(
                                "state {} moves off the endmarker",
                                machine.state_name(StateId(q))
                            )))
                        }
                    }
                }
            }
        }
        let mut sinks = BTreeSet::new();
        for &f in machine.accepting() {
            match machine.accept_mode() {
                AcceptMode::Anywhere => {
                    sinks.insert((EndSide::Left, f));
                    sinks.insert((EndSide::Right, f));
                }
                AcceptMode::OnRightEnd => {
                    sinks.insert((EndSide::Right, f));
                }
                AcceptMode::OnLeftEnd => {
                    sinks.insert((EndSide::Left, f));
                }
            }
        }
        Ok(EndmarkerConfigGraph {
            edges,
            source: (EndSide::Left, machine.initial()),
            sinks,
        })
    }

    /// Acceptance of `a^m` via reachability in the configuration graph.
    pub fn accepts(&self, m: &BigUint) -> Result<bool, GapError> {
        Ok(self.config_graph(m)?.accepts())
    }
}

/// Standalone form of [`SweepSimulator::landing`].
pub fn sweep_landing(
    machine: &TwoWayMachine,
    from_state: StateId,
    from_side: EndSide,
    m: &BigUint,
) -> Result<Landing, GapError> {
    SweepSimulator::new(machine)?.landing(from_state, from_side, m)
}

/// Builds the endmarker configuration graph of a quasi-sweeping unary
/// machine on `a^m`.
pub fn endmarker_config_graph(
    machine: &TwoWayMachine,
    m: &BigUint,
) -> Result<EndmarkerConfigGraph, GapError> {
    SweepSimulator::new(machine)?.config_graph(m)
}

/// A vertex of the endmarker configuration graph.
pub type ConfigVertex = (EndSide, StateId);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeKind {
    /// A full traversal: always connects opposite sides.
    Traversal,
    /// A stationary step on one endmarker.
    Stationary,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConfigEdge {
    pub from: ConfigVertex,
    pub to: ConfigVertex,
    pub kind: EdgeKind,
}

/// The machine's behaviour on a fixed input length, collapsed to endmarker
/// visits: acceptance is reachability from the source to any sink.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EndmarkerConfigGraph {
    pub edges: Vec<ConfigEdge>,
    pub source: ConfigVertex,
    pub sinks: BTreeSet<ConfigVertex>,
}

impl EndmarkerConfigGraph {
    pub fn accepts(&self) -> bool {
        let mut adjacency: BTreeMap<ConfigVertex, Vec<ConfigVertex>> = BTreeMap::new();
        for e in &self.edges {
            adjacency.entry(e.from).or_default().push(e.to);
        }
        let mut seen = BTreeSet::from([self.source]);
        let mut queue = VecDeque::from([self.source]);
        while let Some(v) = queue.pop_front() {
            if self.sinks.contains(&v) {
                return true;
            }
            if let Some(nexts) = adjacency.get(&v) {
                for &n in nexts {
                    if seen.insert(n) {
                        queue.push_back(n);
                    }
                }
            }
        }
        false
    }
}

// ---------------------------------------------------------------------------
// Divide-and-conquer reachability

/// Outcome of the divide-and-conquer decision together with the size of its
/// memo table (a proxy for the cost of the recursion).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DncReport {
    pub accepted: bool,
    pub memo_entries: usize,
}

/// Savitch-style recursive reachability between left-endmarker
/// configurations of a quasi-sweeping unary machine.
pub struct DncSolver<'m> {
    sim: SweepSimulator<'m>,
}

impl<'m> DncSolver<'m> {
    pub fn new(machine: &'m TwoWayMachine) -> Result<Self, GapError> {
        Ok(DncSolver {
            sim: SweepSimulator::new(machine)?,
        })
    }

    /// Single hops between left-endmarker states: a stationary step at the
    /// left endmarker, or one round trip to the right endmarker and back.
    fn hop_graph(&self, m: &BigUint) -> Result<Vec<BTreeSet<usize>>, GapError> {
        let machine = self.sim.machine;
        let n = machine.num_states();
        let mut hops: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for q in 0..n {
            for &(to, mv) in machine.transitions(StateId(q), TapeSymbol::LeftEnd) {
                match mv {
                    Move::Stay => {
                        hops[q].insert(to.0);
                    }
                    Move::Right => {
                        if let Landing::State(at_right) = self.sim.landing(to, EndSide::Left, m)? {
                            for mid in self.sim.endmarker_closure(at_right, EndSide::Right) {
                                for &(back, mv2) in
                                    machine.transitions(mid, TapeSymbol::RightEnd)
                                {
                                    if mv2 == Move::Left {
                                        if let Landing::State(home) =
                                            self.sim.landing(back, EndSide::Right, m)?
                                        {
                                            hops[q].insert(home.0);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    _ => {
                        return Err(GapError::NotQuasiSweeping(format!(
                            "state {} moves off the left endmarker",
                            machine.state_name(StateId(q))
                        )))
                    }
                }
            }
        }
        Ok(hops)
    }

    /// True when a computation can go from `p` to `q`, both on the left
    /// endmarker, visiting the left endmarker at most `k` times (each
    /// configuration there counts as a visit, endpoints included).
    ///
    /// Budgets `k <= 3` are decided directly from the hop graph; larger
    /// budgets split at a midpoint state with child budgets `ceil(k/2)+1`
    /// and `floor(k/2)+1`, memoised per call.
    pub fn reachable(
        &self,
        p: StateId,
        q: StateId,
        k: usize,
        m: &BigUint,
    ) -> Result<bool, GapError> {
        let hops = self.hop_graph(m)?;
        let mut memo = HashMap::new();
        Ok(Self::recurse(&hops, &mut memo, p.0, q.0, k))
    }

    fn recurse(
        hops: &[BTreeSet<usize>],
        memo: &mut HashMap<(usize, usize, usize), bool>,
        p: usize,
        q: usize,
        k: usize,
    ) -> bool {
        if p == q {
            return true; // the empty path makes one visit
        }
        if k <= 1 {
            return false;
        }
        if k == 2 {
            return hops[p].contains(&q);
        }
        if k == 3 {
            return hops[p].contains(&q)
                || hops[p].iter().any(|&r| hops[r].contains(&q));
        }
        if let Some(&hit) = memo.get(&(p, q, k)) {
            return hit;
        }
        let k1 = k.div_ceil(2) + 1;
        let k2 = k / 2 + 1;
        let mut result = false;
        for r in hops
            .iter()
            .enumerate()
            .filter(|(_, out)| !out.is_empty())
            .map(|(r, _)| r)
            .chain(std::iter::once(q))
        {
            if Self::recurse(hops, memo, p, r, k1) && Self::recurse(hops, memo, r, q, k2) {
                result = true;
                break;
            }
        }
        memo.insert((p, q, k), result);
        result
    }

    /// Membership of `a^m` for machines accepting on the left endmarker:
    /// some accepting state is reachable within `|Q|` visits.
    pub fn decide(&self, m: &BigUint) -> Result<bool, GapError> {
        Ok(self.decide_with_stats(m)?.accepted)
    }

    pub fn decide_with_stats(&self, m: &BigUint) -> Result<DncReport, GapError> {
        let machine = self.sim.machine;
        if machine.accept_mode() != AcceptMode::OnLeftEnd {
            return Err(GapError::NotQuasiSweeping(
                "acceptance must be anchored on the left endmarker".to_string(),
            ));
        }
        let hops = self.hop_graph(m)?;
        let mut memo = HashMap::new();
        let budget = machine.num_states();
        let initial = machine.initial().0;
        let mut accepted = false;
        for &f in machine.accepting() {
            if Self::recurse(&hops, &mut memo, initial, f.0, budget) {
                accepted = true;
                break;
            }
        }
        Ok(DncReport {
            accepted,
            memo_entries: memo.len(),
        })
    }
}

/// Standalone form of [`DncSolver::reachable`].
pub fn reachable_divide_conquer(
    machine: &TwoWayMachine,
    p: StateId,
    q: StateId,
    k: usize,
    m: &BigUint,
) -> Result<bool, GapError> {
    DncSolver::new(machine)?.reachable(p, q, k, m)
}

/// Membership of `a^m` by the divide-and-conquer recursion. Machines not
/// already accepting on the left endmarker are wrapped by the acceptance
/// converter first (one extra state).
pub fn decide_membership_dnc(machine: &TwoWayMachine, m: &BigUint) -> Result<bool, GapError> {
    if machine.accept_mode() == AcceptMode::OnLeftEnd {
        DncSolver::new(machine)?.decide(m)
    } else {
        let anchored = machine.with_accept_mode(AcceptMode::OnLeftEnd);
        DncSolver::new(&anchored)?.decide(m)
    }
}

/// The full pipeline: encode the graph, decide the unary language with the
/// accessibility machine through its configuration graph. The tape is never
/// materialised. One-vertex graphs are accessible by convention.
pub fn solve_gap_via_unary(g: &Digraph) -> Result<bool, GapError> {
    let n = g.vertex_count();
    if n == 1 {
        return Ok(true);
    }
    let machine = build_unary_gap_2nfa(n)?;
    let m = encode_graph(g);
    SweepSimulator::new(&machine)?.accepts(&m)
}

// ---------------------------------------------------------------------------
// Prime encodings of unary lengths

/// A unary length factored into powers of distinct primes, order-free.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeEncoding {
    factors: Vec<BigUint>,
}

impl PrimeEncoding {
    /// Normalises the factor order; any order denotes the same length.
    pub fn new(mut factors: Vec<BigUint>) -> Self {
        factors.sort();
        PrimeEncoding { factors }
    }

    pub fn factors(&self) -> &[BigUint] {
        &self.factors
    }

    /// Parses `z1#z2#...#zk` with decimal factors; the empty string denotes
    /// the factorization of 1.
    pub fn parse(text: &str) -> Result<Self, GapError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(PrimeEncoding::new(Vec::new()));
        }
        let mut factors = Vec::new();
        for part in trimmed.split('#') {
            let factor: BigUint = part.trim().parse().map_err(|_| GapError::Parse {
                line: 0,
                message: format!("invalid factor {part:?}"),
            })?;
            if factor < BigUint::from(2u32) {
                return Err(GapError::Parse {
                    line: 0,
                    message: format!("factor {factor} is not a prime power"),
                });
            }
            factors.push(factor);
        }
        Ok(PrimeEncoding::new(factors))
    }
}

impl fmt::Display for PrimeEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|z| z.to_string()).collect();
        write!(f, "{}", parts.join("#"))
    }
}

/// Factors `m ≥ 1` into maximal prime powers by trial division.
pub fn prime_encode(m: &BigUint) -> Result<PrimeEncoding, GapError> {
    if m.is_zero() {
        return Err(GapError::InvalidUnaryLength);
    }
    let mut residual = m.clone();
    let mut factors = Vec::new();
    let mut k = 1usize;
    while residual > BigUint::one() {
        let p = BigUint::from(nth_prime(k));
        if &p * &p > residual {
            break;
        }
        if (&residual % &p).is_zero() {
            let mut power = BigUint::one();
            while (&residual % &p).is_zero() {
                residual /= &p;
                power *= &p;
            }
            factors.push(power);
        }
        k += 1;
    }
    if residual > BigUint::one() {
        factors.push(residual); // leftover is prime
    }
    Ok(PrimeEncoding::new(factors))
}

/// Product of the factors; inverse of [`prime_encode`].
pub fn prime_decode(e: &PrimeEncoding) -> BigUint {
    e.factors
        .iter()
        .fold(BigUint::one(), |acc, z| acc * z)
}

// ---------------------------------------------------------------------------
// Finite exception patching

/// A finite override table consulted for short unary inputs; recognisers
/// that are almost equivalent to a reference become fully equivalent once
/// their finitely many disagreements are tabulated here.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExceptionTable {
    overrides: Vec<Option<bool>>,
}

impl ExceptionTable {
    pub fn new(cutoff: usize) -> Self {
        ExceptionTable {
            overrides: vec![None; cutoff + 1],
        }
    }

    /// Records the disagreements of `approx` against `reference` for all
    /// lengths up to `cutoff`.
    pub fn fixing<R, A>(reference: R, approx: A, cutoff: usize) -> Self
    where
        R: Fn(usize) -> bool,
        A: Fn(usize) -> bool,
    {
        let mut table = ExceptionTable::new(cutoff);
        for m in 0..=cutoff {
            let want = reference(m);
            if approx(m) != want {
                table.set(m, want);
            }
        }
        table
    }

    pub fn cutoff(&self) -> usize {
        self.overrides.len() - 1
    }

    pub fn set(&mut self, m: usize, accept: bool) {
        self.overrides[m] = Some(accept);
    }

    pub fn overridden_count(&self) -> usize {
        self.overrides.iter().filter(|o| o.is_some()).count()
    }

    /// The patched verdict: the override when `m` is short and tabulated,
    /// otherwise the base verdict.
    pub fn apply(&self, m: &BigUint, base: bool) -> bool {
        match m.to_usize() {
            Some(small) if small < self.overrides.len() => self.overrides[small].unwrap_or(base),
            _ => base,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(nth_prime(1), 2);
        assert_eq!(nth_prime(7), 17);
        assert_eq!(nth_prime(14), 43);
        assert_eq!(nth_prime(25), 97);
    }

    #[test]
    fn four_vertex_edge_primes() {
        assert_eq!(edge_prime(0, 1, 4), 3);
        assert_eq!(edge_prime(2, 3, 4), 37);
        assert_eq!(edge_prime(0, 0, 4), 2);
        assert_eq!(edge_prime(1, 0, 4), 11);
        assert_eq!(edge_prime(1, 2, 4), 17);
        assert_eq!(edge_prime(3, 1, 4), 43);
    }

    #[test]
    fn encode_decode_roundtrip_small() {
        let g = Digraph::with_edges(2, [(0, 0), (0, 1)]).unwrap();
        let m = encode_graph(&g);
        assert_eq!(m, BigUint::from(6u32));
        assert_eq!(decode_graph(&m, 2), g);
    }

    #[test]
    fn bfs_gap_conventions() {
        assert!(bfs_gap(&Digraph::new(1)));
        assert!(!bfs_gap(&Digraph::new(2)));
        let g = Digraph::with_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(bfs_gap(&g));
    }

    #[test]
    fn graph_parse_and_display() {
        let text = "n 3\nedge 0 1 # main hop\nedge 1 2\n";
        let g = Digraph::parse(text).unwrap();
        assert_eq!(g.edge_count(), 2);
        let round = Digraph::parse(&g.to_string()).unwrap();
        assert_eq!(g, round);
        assert!(Digraph::parse("edge 0 1").is_err());
        assert!(Digraph::parse("n 2\nedge 0 5").is_err());
    }

    #[test]
    fn prime_encoding_examples() {
        let m = BigUint::from(360u32);
        let e = prime_encode(&m).unwrap();
        let mut factors: Vec<u64> = e
            .factors()
            .iter()
            .map(|f| f.to_u64().unwrap())
            .collect();
        factors.sort_unstable();
        assert_eq!(factors, vec![5, 8, 9]);
        assert_eq!(prime_decode(&e), m);
        assert!(prime_encode(&BigUint::one()).unwrap().factors().is_empty());
        assert!(prime_encode(&BigUint::zero()).is_err());
    }

    #[test]
    fn prime_encoding_is_order_insensitive() {
        let a = PrimeEncoding::parse("8#9#5").unwrap();
        let b = PrimeEncoding::parse("5#8#9").unwrap();
        assert_eq!(a, b);
        assert_eq!(prime_decode(&a), BigUint::from(360u32));
        assert_eq!(PrimeEncoding::parse("").unwrap().factors().len(), 0);
    }

    #[test]
    fn exception_table_patches_short_lengths() {
        // reference: multiples of 3; approx: always false
        let table = ExceptionTable::fixing(|m| m % 3 == 0, |_| false, 12);
        assert_eq!(table.overridden_count(), 5);
        assert!(table.apply(&BigUint::from(9u32), false));
        assert!(!table.apply(&BigUint::from(10u32), false));
        // beyond the cutoff the base verdict stands
        assert!(!table.apply(&BigUint::from(15u32), false));
        assert!(table.apply(&BigUint::from(15u32), true));
    }
}
