//! Evolutionary operators: inductive mutation of formulas and crossover by
//! subformula combination, lifted to whole specifications.
//!
//! Mutation picks one node of the tree uniformly, then applies one uniformly
//! chosen rule from the set applicable at that node. The recursion rules
//! re-enter `mutate_formula` on the addressed operand, so nested edits stay
//! possible without biasing the walk toward deep nodes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ltl::{Alphabet, BinaryOp, Formula, UnaryOp};
use crate::objectives::Specification;

/// Seeded deterministic random generator; the same seed yields the same
/// decision sequence on every platform.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn from_seed(seed: u64) -> Self {
        RandomSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }

    /// Uniform in `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n as u64) as usize
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.rng.gen()
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }

    /// Splits off an independent generator, for per-worker streams.
    pub fn fork(&mut self) -> RandomSource {
        RandomSource::from_seed(self.next_u64())
    }
}

/// Label of the rule a mutation applied at the chosen node.
///
/// Base rules flip constants and swap atoms; inductive rules edit unary and
/// binary nodes in place or recurse into an operand; the general rules wrap
/// the node in a unary operator or collapse it to a leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutationRule {
    /// base: `true` <-> `false`
    ConstFlip,
    /// base: replace an atom by a different atom
    AtomSwap,
    /// inductive: change the unary operator
    UnaryOpSwap,
    /// inductive: drop the unary operator
    UnaryDrop,
    /// inductive: mutate the operand of a unary node
    UnaryRecurse,
    /// inductive: prepend an atom through a binary operator
    UnaryAugment,
    /// inductive: change the binary operator
    BinaryOpSwap,
    /// inductive: keep one operand, drop the other
    BinaryDropSide,
    /// inductive: mutate the left operand
    BinaryRecurseLeft,
    /// inductive: mutate the right operand
    BinaryRecurseRight,
    /// general: wrap the node in a unary operator
    Wrap,
    /// general: replace the node by a constant or atom
    LeafReplace,
}

impl MutationRule {
    pub const ALL: [MutationRule; 12] = [
        MutationRule::ConstFlip,
        MutationRule::AtomSwap,
        MutationRule::UnaryOpSwap,
        MutationRule::UnaryDrop,
        MutationRule::UnaryRecurse,
        MutationRule::UnaryAugment,
        MutationRule::BinaryOpSwap,
        MutationRule::BinaryDropSide,
        MutationRule::BinaryRecurseLeft,
        MutationRule::BinaryRecurseRight,
        MutationRule::Wrap,
        MutationRule::LeafReplace,
    ];
}

/// Operators a binary node can be changed to, and the connective set used
/// when combining subtrees in crossover.
const BINARY_POOL: [BinaryOp; 5] = [
    BinaryOp::Or,
    BinaryOp::And,
    BinaryOp::Until,
    BinaryOp::Release,
    BinaryOp::WeakUntil,
];

/// Connectives available when augmenting a unary node with an atom.
const AUGMENT_POOL: [BinaryOp; 4] = [
    BinaryOp::Until,
    BinaryOp::WeakUntil,
    BinaryOp::And,
    BinaryOp::Or,
];

fn applicable_rules(node: &Formula, alphabet: &Alphabet) -> Vec<MutationRule> {
    let mut rules = Vec::with_capacity(6);
    match node {
        Formula::Const(_) => rules.push(MutationRule::ConstFlip),
        Formula::Atom(_) => {
            if alphabet.len() >= 2 {
                rules.push(MutationRule::AtomSwap);
            }
        }
        Formula::Unary(..) => {
            rules.push(MutationRule::UnaryOpSwap);
            rules.push(MutationRule::UnaryDrop);
            rules.push(MutationRule::UnaryRecurse);
            if !alphabet.is_empty() {
                rules.push(MutationRule::UnaryAugment);
            }
        }
        Formula::Binary(..) => {
            rules.push(MutationRule::BinaryOpSwap);
            rules.push(MutationRule::BinaryDropSide);
            rules.push(MutationRule::BinaryRecurseLeft);
            rules.push(MutationRule::BinaryRecurseRight);
        }
    }
    rules.push(MutationRule::Wrap);
    rules.push(MutationRule::LeafReplace);
    rules
}

fn apply_rule(
    node: &Formula,
    rule: MutationRule,
    alphabet: &Alphabet,
    rng: &mut RandomSource,
) -> Formula {
    match rule {
        MutationRule::ConstFlip => match node {
            Formula::Const(b) => Formula::Const(!b),
            _ => unreachable!("constant rule on a non-constant node"),
        },
        MutationRule::AtomSwap => match node {
            Formula::Atom(p) => {
                let others: Vec<&String> =
                    alphabet.names().iter().filter(|n| *n != p).collect();
                Formula::Atom((*rng.pick(&others)).clone())
            }
            _ => unreachable!("atom rule on a non-atom node"),
        },
        MutationRule::UnaryOpSwap => match node {
            Formula::Unary(op, c) => {
                let others: Vec<UnaryOp> =
                    UnaryOp::ALL.iter().copied().filter(|o| o != op).collect();
                Formula::Unary(*rng.pick(&others), c.clone())
            }
            _ => unreachable!(),
        },
        MutationRule::UnaryDrop => match node {
            Formula::Unary(_, c) => (**c).clone(),
            _ => unreachable!(),
        },
        MutationRule::UnaryRecurse => match node {
            Formula::Unary(op, c) => {
                let (mutated, _) = mutate_formula(c, alphabet, rng);
                Formula::Unary(*op, Box::new(mutated))
            }
            _ => unreachable!(),
        },
        MutationRule::UnaryAugment => {
            let atom = Formula::Atom(rng.pick(alphabet.names()).clone());
            let op = *rng.pick(&AUGMENT_POOL);
            Formula::Binary(op, Box::new(atom), Box::new(node.clone()))
        }
        MutationRule::BinaryOpSwap => match node {
            Formula::Binary(op, l, r) => {
                let others: Vec<BinaryOp> =
                    BINARY_POOL.iter().copied().filter(|o| o != op).collect();
                Formula::Binary(*rng.pick(&others), l.clone(), r.clone())
            }
            _ => unreachable!(),
        },
        MutationRule::BinaryDropSide => match node {
            Formula::Binary(_, l, r) => {
                if rng.below(2) == 0 {
                    (**l).clone()
                } else {
                    (**r).clone()
                }
            }
            _ => unreachable!(),
        },
        MutationRule::BinaryRecurseLeft => match node {
            Formula::Binary(op, l, r) => {
                let (mutated, _) = mutate_formula(l, alphabet, rng);
                Formula::Binary(*op, Box::new(mutated), r.clone())
            }
            _ => unreachable!(),
        },
        MutationRule::BinaryRecurseRight => match node {
            Formula::Binary(op, l, r) => {
                let (mutated, _) = mutate_formula(r, alphabet, rng);
                Formula::Binary(*op, l.clone(), Box::new(mutated))
            }
            _ => unreachable!(),
        },
        MutationRule::Wrap => {
            Formula::Unary(*rng.pick(&UnaryOp::ALL), Box::new(node.clone()))
        }
        MutationRule::LeafReplace => {
            let mut choices = vec![Formula::tt(), Formula::ff()];
            choices.extend(alphabet.names().iter().map(Formula::atom));
            // a leaf never replaces itself
            choices.retain(|c| c != node);
            rng.pick(&choices).clone()
        }
    }
}

/// Mutates `f` by one syntactic rule and reports which rule fired at the
/// selected node. The result ranges over the same alphabet and is always
/// structurally different from `f`.
pub fn mutate_formula(
    f: &Formula,
    alphabet: &Alphabet,
    rng: &mut RandomSource,
) -> (Formula, MutationRule) {
    let subs = f.subformulas();
    let (path, node) = &subs[rng.below(subs.len())];
    let rules = applicable_rules(node, alphabet);
    let rule = *rng.pick(&rules);
    let replacement = apply_rule(node, rule, alphabet, rng);
    let mutated = f
        .replace_at(path, replacement)
        .expect("paths from subformulas are valid");
    (mutated, rule)
}

/// Combines two formulas: picks a subformula `α` of `f` and `β` of `g`, then
/// either replaces `α` by `β` or joins them as `α op β` with a binary
/// connective, each with probability one half.
pub fn combine_formulas(f: &Formula, g: &Formula, rng: &mut RandomSource) -> Formula {
    let f_subs = f.subformulas();
    let g_subs = g.subformulas();
    let (alpha_path, alpha) = &f_subs[rng.below(f_subs.len())];
    let (_, beta) = &g_subs[rng.below(g_subs.len())];
    let replacement = if rng.below(2) == 0 {
        (*beta).clone()
    } else {
        let op = *rng.pick(&BINARY_POOL);
        Formula::Binary(op, Box::new((*alpha).clone()), Box::new((*beta).clone()))
    };
    f.replace_at(alpha_path, replacement)
        .expect("paths from subformulas are valid")
}

/// Replaces one uniformly chosen goal by its mutation; domain properties and
/// all other goals are untouched.
pub fn mutate_spec(cand: &Specification, rng: &mut RandomSource) -> Specification {
    let index = rng.below(cand.goals().len());
    let (mutated, _) = mutate_formula(&cand.goals()[index], cand.alphabet(), rng);
    cand.with_goal(index, mutated)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("specifications range over different alphabets")]
    AlphabetMismatch,
    #[error("specifications declare different numbers of goals")]
    GoalCountMismatch,
}

/// Crossover of two specifications: one goal of `a`, chosen uniformly, is
/// combined with a uniformly chosen goal of `b`; everything else comes from
/// `a`.
pub fn crossover_specs(
    a: &Specification,
    b: &Specification,
    rng: &mut RandomSource,
) -> Result<Specification, OperatorError> {
    if a.alphabet() != b.alphabet() {
        return Err(OperatorError::AlphabetMismatch);
    }
    if a.goals().len() != b.goals().len() {
        return Err(OperatorError::GoalCountMismatch);
    }
    let i = rng.below(a.goals().len());
    let j = rng.below(b.goals().len());
    let combined = combine_formulas(&a.goals()[i], &b.goals()[j], rng);
    Ok(a.with_goal(i, combined))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse;
    use std::collections::{BTreeSet, HashMap};

    fn alphabet(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().copied()).unwrap()
    }

    fn fig_formula() -> Formula {
        parse("F(p -> G r)").unwrap()
    }

    #[test]
    fn mutants_of_fig_formula_are_all_reachable() {
        // the five documented one-step mutants of F(p -> G r)
        let al = alphabet(&["p", "q", "r"]);
        let f = fig_formula();
        let wanted: Vec<Formula> = [
            "G(p -> G r)",     // swap the outer operator
            "F(p && G r)",     // swap the implication connective
            "F(p -> !r)",      // swap the inner operator
            "F(true -> G r)",  // replace the antecedent atom by a constant
            "F(p -> G q)",     // swap the inner atom
        ]
        .iter()
        .map(|s| parse(s).unwrap())
        .collect();
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut rng = RandomSource::from_seed(7);
        for _ in 0..20_000 {
            let (m, _) = mutate_formula(&f, &al, &mut rng);
            if let Some(idx) = wanted.iter().position(|w| *w == m) {
                seen.insert(idx);
            }
            if seen.len() == wanted.len() {
                break;
            }
        }
        assert_eq!(seen.len(), wanted.len(), "missing mutants: {seen:?}");
    }

    #[test]
    fn every_rule_fires_on_a_mixed_formula() {
        let al = alphabet(&["p", "q", "r"]);
        let f = parse("(true && X p) U (q || !r)").unwrap();
        let mut counts: HashMap<MutationRule, usize> = HashMap::new();
        let mut rng = RandomSource::from_seed(11);
        for _ in 0..10_000 {
            let (_, rule) = mutate_formula(&f, &al, &mut rng);
            *counts.entry(rule).or_default() += 1;
        }
        for rule in MutationRule::ALL {
            assert!(counts.get(&rule).copied().unwrap_or(0) > 0, "{rule:?} never fired");
        }
    }

    #[test]
    fn atom_level_replacements_stay_in_range() {
        // at an atom over {p,q}, the non-wrapping rules can only produce
        // true, false, or the other atom
        let al = alphabet(&["p", "q"]);
        let f = Formula::atom("p");
        let allowed: BTreeSet<Formula> = [
            Formula::tt(),
            Formula::ff(),
            Formula::atom("q"),
        ]
        .into_iter()
        .collect();
        let mut seen = BTreeSet::new();
        let mut rng = RandomSource::from_seed(3);
        for _ in 0..2_000 {
            let (m, rule) = mutate_formula(&f, &al, &mut rng);
            if rule != MutationRule::Wrap {
                assert!(allowed.contains(&m), "unexpected replacement {m}");
                seen.insert(m);
            }
        }
        assert_eq!(seen, allowed);
    }

    #[test]
    fn base_and_inductive_rules_never_return_the_input() {
        let al = alphabet(&["p", "q", "r"]);
        let mut rng = RandomSource::from_seed(5);
        let f = parse("(p U q) -> X(!r && true)").unwrap();
        for _ in 0..5_000 {
            let (m, rule) = mutate_formula(&f, &al, &mut rng);
            if !matches!(rule, MutationRule::Wrap | MutationRule::LeafReplace) {
                assert_ne!(m, f, "rule {rule:?} returned the input unchanged");
            }
        }
    }

    #[test]
    fn single_atom_alphabet_still_mutates() {
        let al = alphabet(&["p"]);
        let f = Formula::atom("p");
        let mut rng = RandomSource::from_seed(9);
        for _ in 0..500 {
            let (m, _) = mutate_formula(&f, &al, &mut rng);
            assert_ne!(m, f);
            for a in m.atoms() {
                assert!(al.contains(a));
            }
        }
    }

    #[test]
    fn combine_reaches_the_documented_replacement() {
        // with α = p and β = !p in replace mode, F(p -> G r) becomes
        // F(!p -> G r); with α the root, the result is β itself; in augment
        // mode p and q can join as p && q
        let f = fig_formula();
        let g = parse("!p && q").unwrap();
        let want = parse("F(!p -> G r)").unwrap();
        let mut found = false;
        for seed in 0..5_000 {
            let mut rng = RandomSource::from_seed(seed);
            if combine_formulas(&f, &g, &mut rng) == want {
                found = true;
                break;
            }
        }
        assert!(found, "replacement crossover output never produced");

        let mut found_root = false;
        for seed in 0..5_000 {
            let mut rng = RandomSource::from_seed(seed);
            if combine_formulas(&f, &g, &mut rng) == g {
                found_root = true;
                break;
            }
        }
        assert!(found_root, "root replacement never produced");

        let p = Formula::atom("p");
        let q = Formula::atom("q");
        let want_aug = Formula::and(p.clone(), q.clone());
        let mut found_aug = false;
        for seed in 0..5_000 {
            let mut rng = RandomSource::from_seed(seed);
            if combine_formulas(&p, &q, &mut rng) == want_aug {
                found_aug = true;
                break;
            }
        }
        assert!(found_aug, "augment crossover output never produced");
    }

    #[test]
    fn identical_seeds_give_identical_sequences() {
        let al = alphabet(&["p", "q", "r"]);
        let f = parse("G(p -> q U r)").unwrap();
        let run = |seed: u64| {
            let mut rng = RandomSource::from_seed(seed);
            (0..100)
                .map(|_| mutate_formula(&f, &al, &mut rng).0.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(run(42), run(42));
        assert_ne!(run(42), run(43));
    }
}
