//! Closure and distribution properties of the evolutionary operators, at the
//! formula and the specification level.

use goalfix_core::ltl::{parse, Alphabet, Formula};
use goalfix_core::objectives::Specification;
use goalfix_core::operators::{
    combine_formulas, crossover_specs, mutate_formula, mutate_spec, OperatorError, RandomSource,
};
use goalfix_core::testutil::{minepump, random_formula};

fn alphabet(names: &[&str]) -> Alphabet {
    Alphabet::new(names.iter().copied()).unwrap()
}

#[test]
fn operator_outputs_are_closed_and_reparseable() {
    let al = alphabet(&["p", "q", "r"]);
    let mut rng = RandomSource::from_seed(2023);
    for round in 0..10_000 {
        let f = random_formula(&mut rng, &al, 4);
        let out = if round % 2 == 0 {
            mutate_formula(&f, &al, &mut rng).0
        } else {
            let g = random_formula(&mut rng, &al, 4);
            combine_formulas(&f, &g, &mut rng)
        };
        for atom in out.atoms() {
            assert!(al.contains(atom), "atom {atom} escaped the alphabet");
        }
        let text = out.render().join();
        assert_eq!(parse(&text).unwrap(), out, "round trip of {text}");
    }
}

#[test]
fn spec_mutation_changes_exactly_one_goal() {
    let (spec, _) = minepump();
    let mut rng = RandomSource::from_seed(10);
    for _ in 0..500 {
        let mutated = mutate_spec(&spec, &mut rng);
        assert_eq!(mutated.dom(), spec.dom());
        assert_eq!(mutated.alphabet(), spec.alphabet());
        assert_eq!(mutated.goals().len(), spec.goals().len());
        let changed = spec
            .goals()
            .iter()
            .zip(mutated.goals())
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(changed, 1, "exactly one goal must change");
    }
}

#[test]
fn single_goal_spec_always_mutates_that_goal() {
    let al = alphabet(&["p", "q"]);
    let spec = Specification::new(al, vec![], vec![parse("G(p)").unwrap()]).unwrap();
    let mut rng = RandomSource::from_seed(4);
    for _ in 0..100 {
        let mutated = mutate_spec(&spec, &mut rng);
        assert_ne!(mutated.goals()[0], spec.goals()[0]);
    }
}

#[test]
fn goal_selection_is_close_to_uniform() {
    let (spec, _) = minepump();
    let mut rng = RandomSource::from_seed(6);
    let mut first = 0usize;
    let rounds = 10_000;
    for _ in 0..rounds {
        let mutated = mutate_spec(&spec, &mut rng);
        if mutated.goals()[0] != spec.goals()[0] {
            first += 1;
        }
    }
    let share = first as f64 / rounds as f64;
    assert!((share - 0.5).abs() < 0.03, "goal 0 selected {share}");
}

#[test]
fn crossover_preserves_goal_count_and_borrows_structure() {
    let (spec, _) = minepump();
    let mut rng = RandomSource::from_seed(12);
    let mut partner = spec.clone();
    for _ in 0..5 {
        partner = mutate_spec(&partner, &mut rng);
    }
    let partner_subs: Vec<Formula> = partner
        .goals()
        .iter()
        .flat_map(|g| g.subformulas().into_iter().map(|(_, n)| n.clone()))
        .collect();
    for _ in 0..300 {
        let child = crossover_specs(&spec, &partner, &mut rng).unwrap();
        assert_eq!(child.goals().len(), spec.goals().len());
        assert_eq!(child.dom(), spec.dom());
        // the grafted subtree comes from the partner and survives intact
        let changed: Vec<usize> = (0..spec.goals().len())
            .filter(|&i| child.goals()[i] != spec.goals()[i])
            .collect();
        if let [index] = changed.as_slice() {
            let child_subs: Vec<Formula> = child.goals()[*index]
                .subformulas()
                .into_iter()
                .map(|(_, n)| n.clone())
                .collect();
            assert!(
                child_subs.iter().any(|s| partner_subs.contains(s)),
                "child goal shares no subtree with the partner"
            );
        } else {
            assert!(changed.is_empty(), "at most one goal may change");
        }
    }
}

#[test]
fn self_crossover_can_reproduce_the_parent() {
    let (spec, _) = minepump();
    let mut found = false;
    for seed in 0..2_000 {
        let mut rng = RandomSource::from_seed(seed);
        if crossover_specs(&spec, &spec, &mut rng).unwrap() == spec {
            found = true;
            break;
        }
    }
    assert!(found, "replace mode with alpha = beta never reproduced the parent");
}

#[test]
fn crossover_rejects_mismatched_inputs() {
    let (spec, _) = minepump();
    let other_alphabet = Specification::new(
        alphabet(&["p", "m"]),
        vec![],
        vec![parse("G(p)").unwrap(), parse("F(m)").unwrap()],
    )
    .unwrap();
    let mut rng = RandomSource::from_seed(0);
    assert_eq!(
        crossover_specs(&spec, &other_alphabet, &mut rng).unwrap_err(),
        OperatorError::AlphabetMismatch
    );
    let fewer_goals =
        Specification::new(spec.alphabet().clone(), spec.dom().to_vec(), vec![parse("G(p)").unwrap()])
            .unwrap();
    assert_eq!(
        crossover_specs(&spec, &fewer_goals, &mut rng).unwrap_err(),
        OperatorError::GoalCountMismatch
    );
}

#[test]
fn operator_streams_are_reproducible() {
    let (spec, _) = minepump();
    let run = |seed: u64| {
        let mut rng = RandomSource::from_seed(seed);
        let mut cur = spec.clone();
        let mut log = Vec::new();
        for _ in 0..200 {
            cur = mutate_spec(&cur, &mut rng);
            log.push(cur.goal_key());
        }
        log
    };
    assert_eq!(run(7), run(7));
}
