//! Simulation semantics against independent oracles, plus generated-machine
//! properties of the runs themselves.

mod common;

use common::*;
use proptest::prelude::*;
use zigzag::families::{Family, Variant};
use zigzag::machine::{
    AcceptMode, Alphabet, Machine, Move, StartCell, Symbol, TapeSymbol, TwoWayMachine,
};
use zigzag::simulate::Verdict;
use zigzag::transform::bounded_equiv;
use zigzag::words::words_up_to;

#[test]
fn one_reversal_recogniser_matches_regex_oracle() {
    let oracle = i_oracle(2);
    let machine = gen_two_way(Family::I, 2, Variant::TwoWayOneReversal);
    assert_eq!(
        machine.run_deterministic(&w("ab")).unwrap().verdict,
        Verdict::Accept
    );
    assert_eq!(
        machine.run_deterministic(&w("bb")).unwrap().verdict,
        Verdict::Reject
    );
    for word in all_words(8) {
        let got = machine.run_deterministic(&word).unwrap().verdict == Verdict::Accept;
        assert_eq!(got, oracle.is_match(&render(word.as_slice())), "{}", render(&word));
    }
}

#[test]
fn embedded_nfa_acceptance_matches_regex_oracle() {
    let oracle = l_oracle(3);
    let nfa = gen_one_way(Family::L, 3, Variant::OneWayNfa);
    let machine = nfa.to_two_way();
    assert!(machine.accepts(&w("abba")));
    assert!(!machine.accepts(&w("aab")));
    for word in all_words(8) {
        assert_eq!(
            machine.accepts(&word),
            oracle.is_match(&render(&word)),
            "{}",
            render(&word)
        );
    }
}

#[test]
fn one_way_runs_match_their_machines() {
    // three-symbols-from-the-right guesser
    let nfa = gen_one_way(Family::I, 3, Variant::OneWayNfa);
    let (_, accepted) = nfa.run(&w("abb"));
    assert!(accepted);
    // the nine-state minimal recogniser
    let dfa = gen_one_way(Family::L, 3, Variant::OneWayDfaMinimal);
    assert_eq!(dfa.num_states(), 9);
    let (_, accepted) = dfa.run(&w("aabaa"));
    assert!(accepted);
    let (_, empty) = dfa.run(&[]);
    assert!(!empty);
}

/// Every acceptance condition can be converted to every other one with at
/// most two extra states, preserving the language on short words.
#[test]
fn accept_mode_conversions_preserve_the_language() {
    let two_way_variants = [
        (Family::I, Variant::TwoWayOneReversal),
        (Family::L, Variant::TwoWayNaive),
        (Family::L, Variant::TwoWayImproved),
        (Family::L, Variant::TwoWaySweepingQuadratic),
        (Family::L, Variant::TwoWaySweepingLinear),
        (Family::L, Variant::OuterNondet),
    ];
    for (family, variant) in two_way_variants {
        let machine = gen_two_way(family, 2, variant);
        for target in [
            AcceptMode::Anywhere,
            AcceptMode::OnRightEnd,
            AcceptMode::OnLeftEnd,
        ] {
            let converted = machine.with_accept_mode(target);
            assert!(converted.validate().is_empty());
            assert!(
                converted.num_states() <= machine.num_states() + 2,
                "{family}:{variant} to {target:?} added too many states"
            );
            let verdict = bounded_equiv(
                &Machine::TwoWay(machine.clone()),
                &Machine::TwoWay(converted),
                10,
            )
            .unwrap();
            assert!(
                verdict.equivalent,
                "{family}:{variant} to {target:?} changed the language on {:?}",
                verdict.counterexample.map(|c| render(&c))
            );
        }
    }
}

fn arb_machine() -> impl Strategy<Value = TwoWayMachine> {
    let states = 1..=4usize;
    states.prop_flat_map(|n| {
        let slot = prop::option::of((0..n, 0..3usize));
        let slots = prop::collection::vec(slot, n * 4);
        let accepting = prop::collection::vec(prop::bool::ANY, n);
        let mode = 0..3usize;
        let start = prop::bool::ANY;
        (Just(n), slots, accepting, mode, start).prop_map(|(n, slots, accepting, mode, start)| {
            let mut b = TwoWayMachine::builder(Alphabet::ab());
            let ids: Vec<_> = (0..n).map(|i| b.state(format!("q{i}"))).collect();
            for (slot_idx, entry) in slots.iter().enumerate() {
                let q = slot_idx / 4;
                let tape_idx = slot_idx % 4;
                let on = match tape_idx {
                    0 => TapeSymbol::Real(Symbol(0)),
                    1 => TapeSymbol::Real(Symbol(1)),
                    2 => TapeSymbol::LeftEnd,
                    _ => TapeSymbol::RightEnd,
                };
                if let Some((target, mv_pick)) = entry {
                    let mv = match (tape_idx, mv_pick) {
                        (2, 0) => Move::Right, // no left moves on |-
                        (2, _) => Move::Stay,
                        (3, 0) => Move::Left, // no right moves on -|
                        (3, _) => Move::Stay,
                        (_, 0) => Move::Left,
                        (_, 1) => Move::Right,
                        _ => Move::Stay,
                    };
                    b.transition(ids[q], on, ids[*target], mv);
                }
            }
            for (i, &acc) in accepting.iter().enumerate() {
                if acc {
                    b.accept(ids[i]);
                }
            }
            b.accept_mode(match mode {
                0 => AcceptMode::Anywhere,
                1 => AcceptMode::OnRightEnd,
                _ => AcceptMode::OnLeftEnd,
            });
            b.start_cell(if start { StartCell::Cell1 } else { StartCell::Cell0 });
            b.initial(ids[0]);
            b.build()
        })
    })
}

proptest! {
    /// Parsing back a serialized machine reproduces it exactly.
    #[test]
    fn serialization_roundtrip(machine in arb_machine()) {
        let wrapped = Machine::TwoWay(machine);
        let text = zigzag::format::serialize(&wrapped);
        let parsed = zigzag::format::parse(&text).unwrap();
        prop_assert_eq!(wrapped, parsed);
    }

    /// On deterministic machines the two acceptance semantics coincide, the
    /// trajectory respects the pigeonhole bound, and the head stays on the
    /// tape.
    #[test]
    fn deterministic_run_agrees_with_reachability(machine in arb_machine(), word in prop::collection::vec(0..2usize, 0..7)) {
        let word: Vec<Symbol> = word.into_iter().map(Symbol).collect();
        prop_assert!(machine.validate().is_empty());
        let t = machine.run_deterministic(&word).unwrap();
        prop_assert_eq!(t.verdict == Verdict::Accept, machine.accepts(&word));
        prop_assert!(t.steps.len() <= machine.step_bound(word.len()) + 1);
        let start = machine.start_cell().position().min(word.len() + 1);
        prop_assert_eq!(t.steps[0].position, start);
        for c in &t.steps {
            prop_assert!(c.position <= word.len() + 1);
        }
        for pair in t.steps.windows(2) {
            let diff = pair[1].position as isize - pair[0].position as isize;
            prop_assert!(diff.abs() <= 1, "wrap-free trajectories move one cell at a time");
        }
    }
}

/// The builders and the enumeration cover the full word set: sanity check
/// the counts used throughout the behavioural tests.
#[test]
fn word_enumeration_counts() {
    assert_eq!(words_up_to(2, 10).count(), 2047);
    assert_eq!(words_up_to(1, 5000).count(), 5001);
}
