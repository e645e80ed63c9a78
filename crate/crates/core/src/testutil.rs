//! Reference oracles, random generators, and shared fixtures for the test
//! suites.
//!
//! The oracle here is deliberately independent of the production evaluation
//! path: it walks trace positions one at a time and decides the temporal
//! operators by explicit search with a step bound that covers one full pass
//! around the loop, instead of computing position sets.

use crate::ltl::{Alphabet, BinaryOp, Formula, UnaryOp};
use crate::objectives::Specification;
use crate::operators::RandomSource;
use crate::semantics::{LassoTrace, State};

/// Truth of `f` at position 0 of `trace`, by recursive positional search.
pub fn naive_eval(f: &Formula, trace: &LassoTrace, alphabet: &Alphabet) -> bool {
    eval_at(f, trace, alphabet, 0)
}

fn next_pos(trace: &LassoTrace, i: usize) -> usize {
    if i + 1 < trace.len() {
        i + 1
    } else {
        trace.loop_start()
    }
}

fn eval_at(f: &Formula, t: &LassoTrace, al: &Alphabet, i: usize) -> bool {
    match f {
        Formula::Const(b) => *b,
        Formula::Atom(a) => {
            let idx = al.index_of(a).expect("atom in alphabet");
            t.base()[i].contains_index(idx)
        }
        Formula::Unary(UnaryOp::Not, c) => !eval_at(c, t, al, i),
        Formula::Unary(UnaryOp::Next, c) => eval_at(c, t, al, next_pos(t, i)),
        Formula::Unary(UnaryOp::Eventually, c) => {
            let mut pos = i;
            // t.len() + 1 steps visit every position reachable from i
            for _ in 0..=t.len() {
                if eval_at(c, t, al, pos) {
                    return true;
                }
                pos = next_pos(t, pos);
            }
            false
        }
        Formula::Unary(UnaryOp::Always, c) => {
            let mut pos = i;
            for _ in 0..=t.len() {
                if !eval_at(c, t, al, pos) {
                    return false;
                }
                pos = next_pos(t, pos);
            }
            true
        }
        Formula::Binary(BinaryOp::And, l, r) => eval_at(l, t, al, i) && eval_at(r, t, al, i),
        Formula::Binary(BinaryOp::Or, l, r) => eval_at(l, t, al, i) || eval_at(r, t, al, i),
        Formula::Binary(BinaryOp::Implies, l, r) => !eval_at(l, t, al, i) || eval_at(r, t, al, i),
        Formula::Binary(BinaryOp::Iff, l, r) => eval_at(l, t, al, i) == eval_at(r, t, al, i),
        Formula::Binary(BinaryOp::Until, l, r) => {
            let mut pos = i;
            for _ in 0..=t.len() {
                if eval_at(r, t, al, pos) {
                    return true;
                }
                if !eval_at(l, t, al, pos) {
                    return false;
                }
                pos = next_pos(t, pos);
            }
            false
        }
        Formula::Binary(BinaryOp::WeakUntil, l, r) => {
            let mut pos = i;
            for _ in 0..=t.len() {
                if eval_at(r, t, al, pos) {
                    return true;
                }
                if !eval_at(l, t, al, pos) {
                    return false;
                }
                pos = next_pos(t, pos);
            }
            // the left operand held around the whole loop
            true
        }
        Formula::Binary(BinaryOp::Release, l, r) => {
            let mut pos = i;
            for _ in 0..=t.len() {
                if !eval_at(r, t, al, pos) {
                    return false;
                }
                if eval_at(l, t, al, pos) {
                    return true;
                }
                pos = next_pos(t, pos);
            }
            true
        }
    }
}

/// Direct-definition bounded satisfiability: tries every base length up to
/// `k`, every base, every loop start, judging each lasso with [`naive_eval`].
pub fn direct_sat(f: &Formula, k: usize, alphabet: &Alphabet) -> Option<LassoTrace> {
    let num_atoms = alphabet.len();
    for len in 1..=k {
        let total = 1u64 << (num_atoms * len);
        for id in 0..total {
            let base: Vec<State> = (0..len)
                .map(|j| State::from_bits((id >> (j * num_atoms)) as u32 & ((1 << num_atoms) - 1)))
                .collect();
            for ls in 0..len {
                let trace = LassoTrace::new(base.clone(), ls).unwrap();
                if naive_eval(f, &trace, alphabet) {
                    return Some(trace);
                }
            }
        }
    }
    None
}

/// Direct-definition base count: bases of length exactly `k` admitting a
/// satisfying loop start, judged with [`naive_eval`].
pub fn direct_count(f: &Formula, k: usize, alphabet: &Alphabet) -> u64 {
    let num_atoms = alphabet.len();
    let total = 1u64 << (num_atoms * k);
    let mut count = 0;
    for id in 0..total {
        let base: Vec<State> = (0..k)
            .map(|j| State::from_bits((id >> (j * num_atoms)) as u32 & ((1 << num_atoms) - 1)))
            .collect();
        for ls in 0..k {
            let trace = LassoTrace::new(base.clone(), ls).unwrap();
            if naive_eval(f, &trace, alphabet) {
                count += 1;
                break;
            }
        }
    }
    count
}

/// Random formula over `alphabet` with depth at most `max_depth`.
pub fn random_formula(rng: &mut RandomSource, alphabet: &Alphabet, max_depth: usize) -> Formula {
    if max_depth == 0 || rng.below(4) == 0 {
        return if alphabet.is_empty() || rng.below(5) == 0 {
            Formula::Const(rng.below(2) == 0)
        } else {
            Formula::Atom(rng.pick(alphabet.names()).clone())
        };
    }
    if rng.below(5) < 2 {
        let op = *rng.pick(&UnaryOp::ALL);
        Formula::Unary(op, Box::new(random_formula(rng, alphabet, max_depth - 1)))
    } else {
        let ops = [
            BinaryOp::And,
            BinaryOp::Or,
            BinaryOp::Implies,
            BinaryOp::Iff,
            BinaryOp::Until,
            BinaryOp::WeakUntil,
            BinaryOp::Release,
        ];
        let op = *rng.pick(&ops);
        Formula::Binary(
            op,
            Box::new(random_formula(rng, alphabet, max_depth - 1)),
            Box::new(random_formula(rng, alphabet, max_depth - 1)),
        )
    }
}

/// Random lasso trace over `alphabet` with base length in `[1, max_len]`.
pub fn random_trace(rng: &mut RandomSource, alphabet: &Alphabet, max_len: usize) -> LassoTrace {
    let len = 1 + rng.below(max_len);
    let mask = if alphabet.len() == 32 {
        !0u32
    } else {
        (1u32 << alphabet.len()) - 1
    };
    let base = (0..len)
        .map(|_| State::from_bits(rng.next_u64() as u32 & mask))
        .collect();
    let loop_start = rng.below(len);
    LassoTrace::new(base, loop_start).unwrap()
}

/// The mine pump controller: pump `p`, methane `m`, high water `h`. The
/// domain says two pump ticks drain the water; one goal switches the pump off
/// under methane, the other switches it on under high water. The returned
/// boundary condition is the divergence where both magnitudes are high at
/// once.
pub fn minepump() -> (Specification, Vec<Formula>) {
    let alphabet = Alphabet::new(["p", "m", "h"]).unwrap();
    let dom = crate::ltl::parse("G((p && X(p)) -> X(X(!h)))").unwrap();
    let g1 = crate::ltl::parse("G(m -> X(!p))").unwrap();
    let g2 = crate::ltl::parse("G(h -> X(p))").unwrap();
    let spec = Specification::new(alphabet, vec![dom], vec![g1, g2]).unwrap();
    let bc = crate::ltl::parse("F(h && m)").unwrap();
    (spec, vec![bc])
}

/// The two hand-written repairs of the mine pump conflict: `1` weakens the
/// high-water goal, `2` weakens the methane goal.
pub fn minepump_resolution(which: usize) -> Specification {
    let (spec, _) = minepump();
    match which {
        1 => spec.with_goal(1, crate::ltl::parse("G((h && !m) -> X(p))").unwrap()),
        2 => spec.with_goal(0, crate::ltl::parse("G((m && !h) -> X(!p))").unwrap()),
        other => panic!("no resolution {other}"),
    }
}
