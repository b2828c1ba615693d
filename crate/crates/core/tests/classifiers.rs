//! Behavioural classifier checks on the generated machines.

mod common;

use common::*;
use zigzag::analysis::{
    count_accepting_runs, count_reversals, is_oblivious, is_outer_nondeterministic, is_rotating,
    is_sweeping, max_reversals, CheckMethod, RunCount,
};
use zigzag::families::{Family, Variant};
use zigzag::gap::build_unary_gap_2nfa;
use zigzag::machine::{Alphabet, Move, StateId, Symbol, TapeSymbol, TwoWayMachine};

#[test]
fn one_reversal_machine_reverses_once_on_long_inputs() {
    let machine = gen_two_way(Family::I, 5, Variant::TwoWayOneReversal);
    let t = machine.run_deterministic(&w("ababab")).unwrap();
    assert_eq!(count_reversals(&t), 1);
    let report = max_reversals(&machine, 9).unwrap();
    assert_eq!(report.max_reversals, 1);
    assert_eq!(report.bound_checked, 9);
}

#[test]
fn sweeping_machines_have_constant_reversals() {
    for variant in [Variant::TwoWaySweepingQuadratic, Variant::TwoWaySweepingLinear] {
        let machine = gen_two_way(Family::L, 2, variant);
        let report = max_reversals(&machine, 12).unwrap();
        assert!(
            report.max_reversals <= 3,
            "{variant}: {} reversals",
            report.max_reversals
        );
    }
}

#[test]
fn naive_machine_reversals_grow_linearly() {
    let machine = gen_two_way(Family::L, 2, Variant::TwoWayNaive);
    let mut counts = Vec::new();
    for k in 1..=3 {
        let word = w(&"aabb".repeat(k));
        let t = machine.run_deterministic(&word).unwrap();
        counts.push(count_reversals(&t));
    }
    assert!(counts[0] < counts[1] && counts[1] < counts[2]);
    // the increments are equal: the count is linear in the input length
    assert_eq!(counts[1] - counts[0], counts[2] - counts[1]);
}

#[test]
fn embedded_one_way_machine_never_reverses() {
    let machine = gen_one_way(Family::I, 2, Variant::OneWayNfa);
    let dfa = zigzag::transform::determinize(&machine);
    let report = max_reversals(&dfa.to_two_way(), 8).unwrap();
    assert_eq!(report.max_reversals, 0);
}

#[test]
fn naive_machine_is_oblivious_but_improved_is_not() {
    for n in 1..=3 {
        let naive = gen_two_way(Family::L, n, Variant::TwoWayNaive);
        let verdict = is_oblivious(&naive, 8).unwrap();
        assert!(verdict.holds, "naive n={n} should be oblivious");
        assert_eq!(verdict.method, CheckMethod::Behavioral(8));
    }
    let improved = gen_two_way(Family::L, 2, Variant::TwoWayImproved);
    let verdict = is_oblivious(&improved, 8).unwrap();
    assert!(!verdict.holds);
    let witness = verdict.counterexample.expect("behavioural failure carries a witness");
    assert!(!witness.word.is_empty());
}

#[test]
fn obliviousness_is_monotone_in_the_bound() {
    let improved = gen_two_way(Family::L, 2, Variant::TwoWayImproved);
    let verdicts: Vec<bool> = (0..=8)
        .map(|bound| is_oblivious(&improved, bound).unwrap().holds)
        .collect();
    // once it fails at some bound it fails for every larger bound
    let first_failure = verdicts.iter().position(|v| !v).expect("fails by bound 8");
    for (bound, &holds) in verdicts.iter().enumerate() {
        assert_eq!(holds, bound < first_failure, "bound {bound}");
    }
}

#[test]
fn one_way_machines_are_trivially_oblivious() {
    let dfa = gen_one_way(Family::L, 2, Variant::OneWayDfaMinimal);
    assert!(is_oblivious(&dfa.to_two_way(), 7).unwrap().holds);
}

#[test]
fn behavioural_checks_refuse_exponential_budgets() {
    use zigzag::error::AnalysisError;
    let machine = gen_two_way(Family::L, 2, Variant::TwoWayNaive);
    let result = is_oblivious(&machine, 40);
    assert!(matches!(
        result,
        Err(AnalysisError::ExponentialBudgetExceeded { max_len: 40, .. })
    ));
}

#[test]
fn sweeping_classifier_separates_sweeping_from_zigzag() {
    let sweeping = gen_two_way(Family::L, 3, Variant::TwoWaySweepingQuadratic);
    assert!(is_sweeping(&sweeping, 9).unwrap().holds);

    let naive = gen_two_way(Family::L, 3, Variant::TwoWayNaive);
    let verdict = is_sweeping(&naive, 9).unwrap();
    assert!(!verdict.holds);
    let witness = verdict.counterexample.unwrap();
    assert!(witness.evidence.contains("reversal at position"));

    // a machine with zero reversals is vacuously sweeping
    let one_reversal_free = gen_one_way(Family::I, 2, Variant::OneWayNfa).to_two_way();
    assert!(is_sweeping(&one_reversal_free, 8).unwrap().holds);
}

/// Dual route for the sweeping verdict: when it holds, every reversal in
/// every deterministic trajectory sits on an endmarker, read straight off
/// the position sequences.
#[test]
fn sweeping_verdict_matches_raw_trajectories() {
    let machine = gen_two_way(Family::L, 2, Variant::TwoWaySweepingLinear);
    assert!(is_sweeping(&machine, 8).unwrap().holds);
    for word in all_words(8) {
        let t = machine.run_deterministic(&word).unwrap();
        let positions: Vec<usize> = t.steps.iter().map(|c| c.position).collect();
        let mut dir: Option<bool> = None;
        for i in 1..positions.len() {
            let step = match positions[i] as isize - positions[i - 1] as isize {
                0 => continue,
                1 => true,
                -1 => false,
                _ => unreachable!("wrap-free machine"),
            };
            if let Some(d) = dir {
                if d != step {
                    let turn = positions[i - 1];
                    assert!(
                        turn == 0 || turn == word.len() + 1,
                        "reversal at {turn} on {}",
                        render(&word)
                    );
                }
            }
            dir = Some(step);
        }
    }
}

#[test]
fn rotating_classifier_is_structural() {
    let rotating = gen_two_way(Family::L, 2, Variant::Rotating);
    let verdict = is_rotating(&rotating);
    assert!(verdict.holds);
    assert_eq!(verdict.method, CheckMethod::Structural);

    let naive = gen_two_way(Family::L, 2, Variant::TwoWayNaive);
    assert!(!is_rotating(&naive).holds);

    let one_way = gen_one_way(Family::I, 2, Variant::OneWayNfa).to_two_way();
    assert!(is_rotating(&one_way).holds);
}

/// Circular motion never reverses: wrap jumps continue rightward.
#[test]
fn rotating_machines_measure_zero_reversals() {
    for family in [Family::I, Family::L] {
        let machine = gen_two_way(family, 2, Variant::Rotating);
        for word in all_words(6).into_iter().filter(|w| w.len() >= 2) {
            let t = machine.run_deterministic(&word).unwrap();
            assert_eq!(count_reversals(&t), 0, "{family} on {}", render(&word));
        }
    }
}

#[test]
fn outer_nondeterminism_on_generated_machines() {
    let gap_machine = build_unary_gap_2nfa(3).unwrap();
    assert!(is_outer_nondeterministic(&gap_machine).holds);

    let l_nfa = gen_one_way(Family::L, 2, Variant::OneWayNfa).to_two_way();
    assert!(!is_outer_nondeterministic(&l_nfa).holds);

    let deterministic = gen_two_way(Family::L, 2, Variant::TwoWayImproved);
    assert!(is_outer_nondeterministic(&deterministic).holds);
}

/// Endmarker-only nondeterminism means the successor configuration is unique
/// while the head is in the middle of the tape.
#[test]
fn outer_nondeterministic_machines_are_deterministic_mid_tape() {
    let machine = gen_two_way(Family::L, 3, Variant::OuterNondet);
    for q in 0..machine.num_states() {
        for s in machine.alphabet().symbols() {
            assert!(machine.transitions(StateId(q), TapeSymbol::Real(s)).len() <= 1);
        }
    }
    // and the guess happens on the left endmarker
    let branches = machine.transitions(machine.initial(), TapeSymbol::LeftEnd);
    assert_eq!(branches.len(), 3);
}

#[test]
fn guessing_recogniser_is_sweeping_behaviorally() {
    for n in 1..=4 {
        let machine = gen_two_way(Family::L, n, Variant::OuterNondet);
        assert!(is_outer_nondeterministic(&machine).holds);
        assert!(is_sweeping(&machine, 2 * n + 2).unwrap().holds);
    }
}

#[test]
fn unambiguous_guesser_has_single_accepting_runs() {
    for n in 1..=3 {
        let machine = gen_one_way(Family::I, n, Variant::OneWayNfa).to_two_way();
        let oracle = i_oracle(n);
        for word in all_words(2 * n + 2) {
            if oracle.is_match(&render(&word)) {
                assert_eq!(
                    count_accepting_runs(&machine, &word, 64),
                    RunCount::Finite(1),
                    "word {}",
                    render(&word)
                );
            }
        }
    }
}

#[test]
fn pair_guesser_is_ambiguous() {
    let machine = gen_one_way(Family::L, 1, Variant::OneWayNfa).to_two_way();
    // two pair positions witness the same word
    assert_eq!(count_accepting_runs(&machine, &w("aaa"), 64), RunCount::Finite(2));
    assert_eq!(count_accepting_runs(&machine, &w("bbb"), 64), RunCount::Finite(0));
}

#[test]
fn deterministic_machines_have_at_most_one_run() {
    let machine = gen_two_way(Family::L, 2, Variant::TwoWayImproved);
    for word in all_words(6) {
        match count_accepting_runs(&machine, &word, 16) {
            RunCount::Finite(c) => assert!(c <= 1),
            other => panic!("unexpected count {other:?}"),
        }
    }
}

#[test]
fn accepting_cycle_reports_infinite() {
    // an accepting sink reachable through a stationary loop that can also
    // be pumped before reaching it
    let mut b = TwoWayMachine::builder(Alphabet::ab());
    let q0 = b.state("q0");
    let q1 = b.state("q1");
    let acc = b.state("acc");
    b.transition(q0, TapeSymbol::Real(Symbol(0)), q0, Move::Stay);
    b.transition(q0, TapeSymbol::Real(Symbol(0)), q1, Move::Stay);
    b.transition(q1, TapeSymbol::Real(Symbol(0)), acc, Move::Right);
    b.initial(q0);
    b.accept(acc);
    let m = b.build();
    assert_eq!(count_accepting_runs(&m, &w("a"), 64), RunCount::Infinite);
}

#[test]
fn run_count_saturates_at_the_cap() {
    // each symbol doubles the number of parallel runs
    let mut b = TwoWayMachine::builder(Alphabet::ab());
    let q0 = b.state("q0");
    let q1 = b.state("q1");
    let q2 = b.state("q2");
    for q in [q1, q2] {
        b.transition(q0, TapeSymbol::Real(Symbol(0)), q, Move::Right);
        b.transition(q, TapeSymbol::Real(Symbol(0)), q1, Move::Right);
        b.transition(q, TapeSymbol::Real(Symbol(0)), q2, Move::Right);
    }
    for q in [q1, q2] {
        b.transition(q, TapeSymbol::RightEnd, q, Move::Stay);
    }
    b.initial(q0);
    b.accept(q1);
    b.accept(q2);
    b.accept_mode(zigzag::machine::AcceptMode::OnRightEnd);
    let m = b.build();
    let word = w(&"a".repeat(12));
    assert_eq!(count_accepting_runs(&m, &word, 100), RunCount::AtLeast(100));
}
