//! Boundary-condition checking and the four search objectives.
//!
//! A candidate resolution is scored on four maximizing objectives:
//! consistency with the domain, the ratio of boundary conditions it resolves,
//! and syntactic and semantic similarity to the original specification.
//! Resource-limited satisfiability checks degrade pessimistically (the
//! affected check counts as unsatisfiable / unresolved) and are logged, so a
//! fitness vector is always produced.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::ltl::{Alphabet, Formula, Token, TokenStream};
use crate::semantics::{
    base_table, bounded_equivalent, count_bases, counts_with_table, sat_bounded, BaseTable,
    Limits, SemanticsError,
};

/// Immutable domain properties plus a mutable goal list; the genome of the
/// search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specification {
    alphabet: Alphabet,
    dom: Vec<Formula>,
    goals: Vec<Formula>,
}

impl Specification {
    pub fn new(
        alphabet: Alphabet,
        dom: Vec<Formula>,
        goals: Vec<Formula>,
    ) -> Result<Self, SpecificationError> {
        if goals.is_empty() {
            return Err(SpecificationError::NoGoals);
        }
        for f in dom.iter().chain(goals.iter()) {
            for atom in f.atoms() {
                if !alphabet.contains(atom) {
                    return Err(SpecificationError::UndeclaredAtom(atom.to_owned()));
                }
            }
        }
        Ok(Specification { alphabet, dom, goals })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dom(&self) -> &[Formula] {
        &self.dom
    }

    pub fn goals(&self) -> &[Formula] {
        &self.goals
    }

    /// Copy of `self` with goal `index` replaced; the domain is shared
    /// untouched. This is the only way to derive a variant, which keeps the
    /// domain immutable across the search.
    pub fn with_goal(&self, index: usize, goal: Formula) -> Specification {
        debug_assert!(goal.atoms().iter().all(|a| self.alphabet.contains(a)));
        let mut goals = self.goals.clone();
        goals[index] = goal;
        Specification {
            alphabet: self.alphabet.clone(),
            dom: self.dom.clone(),
            goals,
        }
    }

    pub fn dom_conjunction(&self) -> Formula {
        Formula::conjoin(self.dom.iter().cloned())
    }

    pub fn goal_conjunction(&self) -> Formula {
        Formula::conjoin(self.goals.iter().cloned())
    }

    /// The whole specification as one formula: domain and goals conjoined.
    pub fn conjunction(&self) -> Formula {
        Formula::conjoin(self.dom.iter().chain(self.goals.iter()).cloned())
    }

    /// Concatenated canonical token streams of the goals (the domain is
    /// immutable and excluded); input to the syntactic similarity metric.
    pub fn goal_tokens(&self) -> TokenStream {
        let mut out = TokenStream::default();
        for g in &self.goals {
            out.extend(g.render());
        }
        out
    }

    /// Canonical text key identifying the goal list, for memoization.
    pub fn goal_key(&self) -> String {
        self.goals
            .iter()
            .map(|g| g.render().join())
            .collect::<Vec<_>>()
            .join(" ; ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecificationError {
    #[error("a specification needs at least one goal")]
    NoGoals,
    #[error("atom `{0}` is not in the declared alphabet")]
    UndeclaredAtom(String),
}

/// Outcome of checking the three boundary-condition conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryConditionReport {
    /// the goals become jointly unsatisfiable under the condition
    pub inconsistency: bool,
    /// dropping any single goal restores satisfiability (one flag per goal)
    pub minimality: Vec<bool>,
    /// the condition is not just the negated goal conjunction
    pub non_triviality: bool,
    /// conjunction of the three conditions
    pub holds: bool,
}

impl BoundaryConditionReport {
    pub fn new(inconsistency: bool, minimality: Vec<bool>, non_triviality: bool) -> Self {
        let holds = inconsistency && minimality.iter().all(|&b| b) && non_triviality;
        BoundaryConditionReport {
            inconsistency,
            minimality,
            non_triviality,
            holds,
        }
    }
}

/// Checks whether `bc` is a boundary condition for `spec` at bound `k`:
/// `dom && bc && all goals` must be unsatisfiable, every goal-dropped variant
/// satisfiable, and `bc` must not be bounded-equivalent to the negated goal
/// conjunction.
pub fn check_bc(
    spec: &Specification,
    bc: &Formula,
    k: usize,
    limits: &Limits,
) -> Result<BoundaryConditionReport, SemanticsError> {
    let dom = spec.dom_conjunction();
    let goals = spec.goal_conjunction();
    let full = Formula::conjoin([dom.clone(), bc.clone(), goals.clone()]);
    let inconsistency = !sat_bounded(&full, k, spec.alphabet(), limits)?.is_sat();
    let mut minimality = Vec::with_capacity(spec.goals().len());
    for skip in 0..spec.goals().len() {
        let others = Formula::conjoin(
            spec.goals()
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != skip)
                .map(|(_, g)| g.clone()),
        );
        let sub = Formula::conjoin([dom.clone(), bc.clone(), others]);
        minimality.push(sat_bounded(&sub, k, spec.alphabet(), limits)?.is_sat());
    }
    let non_triviality =
        !bounded_equivalent(bc, &Formula::not(goals), k, spec.alphabet(), limits)?;
    Ok(BoundaryConditionReport::new(
        inconsistency,
        minimality,
        non_triviality,
    ))
}

fn sat_or_pessimistic(
    f: &Formula,
    k: usize,
    alphabet: &Alphabet,
    limits: &Limits,
    what: &str,
) -> bool {
    match sat_bounded(f, k, alphabet, limits) {
        Ok(v) => v.is_sat(),
        Err(e) => {
            log::warn!("{what}: treating as unsatisfiable after {e}");
            false
        }
    }
}

/// Three-valued consistency of the candidate goals: 1 when they are
/// satisfiable together with the domain, 0.5 when only the goals alone are
/// satisfiable, 0 otherwise.
pub fn consistency(spec: &Specification, k: usize, limits: &Limits) -> f64 {
    let goals = spec.goal_conjunction();
    let with_dom = Formula::conjoin([spec.dom_conjunction(), goals.clone()]);
    if sat_or_pessimistic(&with_dom, k, spec.alphabet(), limits, "consistency with domain") {
        1.0
    } else if sat_or_pessimistic(&goals, k, spec.alphabet(), limits, "goal consistency") {
        0.5
    } else {
        0.0
    }
}

/// Fraction of boundary conditions the candidate resolves: a condition is
/// resolved when it is satisfiable together with the domain and the candidate
/// goals.
pub fn resolved_ratio(
    spec: &Specification,
    bcs: &[Formula],
    k: usize,
    limits: &Limits,
) -> f64 {
    assert!(!bcs.is_empty(), "at least one boundary condition is required");
    let base = Formula::conjoin([spec.dom_conjunction(), spec.goal_conjunction()]);
    let resolved = bcs
        .iter()
        .filter(|bc| {
            sat_or_pessimistic(
                &Formula::and((*bc).clone(), base.clone()),
                k,
                spec.alphabet(),
                limits,
                "resolution",
            )
        })
        .count();
    resolved as f64 / bcs.len() as f64
}

/// Token-level Levenshtein distance, two-row dynamic programming.
fn levenshtein(a: &[Token], b: &[Token]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for (i, ta) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, tb) in b.iter().enumerate() {
            let cost = usize::from(ta != tb);
            cur[j + 1] = (cur[j] + 1).min(prev[j + 1] + 1).min(prev[j] + cost);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Normalized token-level similarity of the goal lists:
/// `(maxLength - distance) / maxLength` over the concatenated canonical
/// streams, 1 for identical streams.
pub fn syntactic_similarity(orig: &Specification, cand: &Specification) -> f64 {
    let a = orig.goal_tokens();
    let b = cand.goal_tokens();
    let max_len = a.len().max(b.len());
    if max_len == 0 {
        return 1.0;
    }
    let dist = levenshtein(a.tokens(), b.tokens());
    (max_len - dist) as f64 / max_len as f64
}

fn similarity_ratio(both: u64, either: u64) -> f64 {
    if both == 0 || either == 0 {
        // contradictory candidates score 0; so do two bounded-unsatisfiable
        // specifications, which must never be rewarded
        0.0
    } else {
        both as f64 / either as f64
    }
}

/// Behavioural similarity: the ratio of bases (length exactly `k`) satisfying
/// both specifications to bases satisfying at least one, each specification
/// taken as its domain-and-goals conjunction.
pub fn semantic_similarity(
    orig: &Specification,
    cand: &Specification,
    k: usize,
    limits: &Limits,
) -> Result<f64, SemanticsError> {
    let s = orig.conjunction();
    let c = cand.conjunction();
    let both = count_bases(
        &Formula::and(s.clone(), c.clone()),
        k,
        orig.alphabet(),
        limits,
    )?;
    if both == 0 {
        return Ok(0.0);
    }
    let either = count_bases(&Formula::or(s, c), k, orig.alphabet(), limits)?;
    Ok(similarity_ratio(both, either))
}

/// A candidate is a valid resolution when it is fully consistent with the
/// domain and resolves every boundary condition. Similarity is an objective,
/// not a validity constraint.
pub fn is_valid_resolution(
    cand: &Specification,
    bcs: &[Formula],
    k: usize,
    limits: &Limits,
) -> bool {
    consistency(cand, k, limits) == 1.0 && resolved_ratio(cand, bcs, k, limits) == 1.0
}

/// The four objective values of a candidate; all maximizing, all in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitnessVector {
    pub consistency: f64,
    pub resolved_bcs: f64,
    pub syntactic: f64,
    pub semantic: f64,
}

impl FitnessVector {
    pub fn as_array(&self) -> [f64; 4] {
        [self.consistency, self.resolved_bcs, self.syntactic, self.semantic]
    }

    /// Validity of the resolution this vector scores.
    pub fn is_valid(&self) -> bool {
        self.consistency == 1.0 && self.resolved_bcs == 1.0
    }
}

/// Memoizing fitness evaluator for one search problem.
///
/// Distinct goal lists are evaluated exactly once. When the bound and
/// alphabet are small enough, the original specification's per-base verdicts
/// are tabulated up front so the semantic objective needs only one
/// enumeration pass per candidate.
pub struct FitnessEvaluator {
    orig: Specification,
    bcs: Vec<Formula>,
    k: usize,
    limits: Limits,
    table: Option<BaseTable>,
    cache: HashMap<String, FitnessVector>,
    evaluations: u64,
}

impl FitnessEvaluator {
    pub fn new(orig: Specification, bcs: Vec<Formula>, k: usize, limits: Limits) -> Self {
        let table = match base_table(&orig.conjunction(), k, orig.alphabet(), &limits) {
            Ok(t) => t,
            Err(e) => {
                log::warn!("skipping the semantic base table: {e}");
                None
            }
        };
        FitnessEvaluator {
            orig,
            bcs,
            k,
            limits,
            table,
            cache: HashMap::new(),
            evaluations: 0,
        }
    }

    pub fn original(&self) -> &Specification {
        &self.orig
    }

    pub fn bcs(&self) -> &[Formula] {
        &self.bcs
    }

    pub fn bound(&self) -> usize {
        self.k
    }

    /// Number of distinct goal lists evaluated so far.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn evaluate(&mut self, cand: &Specification) -> FitnessVector {
        let key = cand.goal_key();
        if let Some(v) = self.cache.get(&key) {
            return *v;
        }
        let v = FitnessVector {
            consistency: consistency(cand, self.k, &self.limits),
            resolved_bcs: resolved_ratio(cand, &self.bcs, self.k, &self.limits),
            syntactic: syntactic_similarity(&self.orig, cand),
            semantic: self.semantic(cand),
        };
        self.evaluations += 1;
        self.cache.insert(key, v);
        v
    }

    fn semantic(&self, cand: &Specification) -> f64 {
        let result = match &self.table {
            Some(table) => {
                counts_with_table(&cand.conjunction(), table, self.orig.alphabet(), &self.limits)
                    .map(|(both, either)| similarity_ratio(both, either))
            }
            None => semantic_similarity(&self.orig, cand, self.k, &self.limits),
        };
        match result {
            Ok(v) => v,
            Err(e) => {
                log::warn!("semantic similarity: scoring 0 after {e}");
                0.0
            }
        }
    }
}
