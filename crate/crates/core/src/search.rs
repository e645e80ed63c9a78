//! Multi-objective search for conflict resolutions: Pareto machinery, the
//! weighted scalarization, and the four search algorithms.
//!
//! All algorithms share the same accounting: the budget caps the number of
//! individuals created, each individual is scored through the memoizing
//! evaluator, and every valid resolution discovered anywhere in the run is
//! collected. The returned archive is that collection reduced to its
//! non-dominated subset over the full four-objective vector.
//!
//! Everything is deterministic for a fixed seed: selection, operators and
//! tie-breaking draw from one sequential random source, and ties fall back to
//! creation order.

use std::collections::HashSet;

use crate::objectives::{FitnessEvaluator, FitnessVector, Specification};
use crate::operators::{crossover_specs, mutate_spec, RandomSource};
use crate::semantics::{Limits, MAX_BOUND};
use crate::ltl::Formula;

use serde::Serialize;
use thiserror::Error;

/// One scored individual. The fitness is computed once when the candidate is
/// created and frozen; `birth_index` is the value of the creation counter,
/// which together with the seed identifies the candidate's provenance.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub spec: Specification,
    pub fitness: FitnessVector,
    pub birth_index: u64,
}

/// Objective weights of the scalarized fitness; they must sum to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Weights {
    pub consistency: f64,
    pub resolved: f64,
    pub syntactic: f64,
    pub semantic: f64,
}

impl Default for Weights {
    fn default() -> Self {
        Weights {
            consistency: 0.1,
            resolved: 0.7,
            syntactic: 0.1,
            semantic: 0.1,
        }
    }
}

impl Weights {
    pub fn as_array(&self) -> [f64; 4] {
        [self.consistency, self.resolved, self.syntactic, self.semantic]
    }
}

/// `a` dominates `b`: not worse in any objective and strictly better in at
/// least one. All four objectives are maximizing.
pub fn dominates(a: &FitnessVector, b: &FitnessVector) -> bool {
    let (a, b) = (a.as_array(), b.as_array());
    let mut strict = false;
    for i in 0..4 {
        if a[i] < b[i] {
            return false;
        }
        if a[i] > b[i] {
            strict = true;
        }
    }
    strict
}

/// Weighted sum of the four objectives.
pub fn weighted_fitness(v: &FitnessVector, w: &Weights) -> f64 {
    let v = v.as_array();
    let w = w.as_array();
    v.iter().zip(w.iter()).map(|(x, c)| x * c).sum()
}

/// A set of candidates closed under non-domination: inserting a candidate
/// drops it if it is dominated, otherwise evicts the members it dominates.
/// Structurally identical specifications are kept once.
#[derive(Debug, Clone, Default)]
pub struct ParetoArchive {
    members: Vec<Candidate>,
}

impl ParetoArchive {
    pub fn new() -> Self {
        ParetoArchive::default()
    }

    pub fn members(&self) -> &[Candidate] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn into_members(self) -> Vec<Candidate> {
        self.members
    }

    /// Returns whether the candidate was kept.
    pub fn insert(&mut self, cand: Candidate) -> bool {
        let key = cand.spec.goal_key();
        if self.members.iter().any(|m| m.spec.goal_key() == key) {
            return false;
        }
        if self
            .members
            .iter()
            .any(|m| dominates(&m.fitness, &cand.fitness))
        {
            return false;
        }
        self.members
            .retain(|m| !dominates(&cand.fitness, &m.fitness));
        self.members.push(cand);
        true
    }

    fn sort_by_birth(&mut self) {
        self.members.sort_by_key(|c| c.birth_index);
    }
}

/// Exact maximal subset of `cands` under [`dominates`]; the input order does
/// not affect the result, which is sorted by creation order.
pub fn pareto_front(cands: &[Candidate]) -> ParetoArchive {
    let mut archive = ParetoArchive::new();
    for c in cands {
        archive.insert(c.clone());
    }
    archive.sort_by_birth();
    archive
}

/// Partition of `cands` into non-domination levels: level 0 holds the
/// non-dominated candidates, level 1 those dominated only by level 0, and so
/// on. Indices into `cands`.
pub(crate) fn non_dominated_levels(cands: &[Candidate]) -> Vec<Vec<usize>> {
    let n = cands.len();
    let mut beats: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut beaten_by = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && dominates(&cands[i].fitness, &cands[j].fitness) {
                beats[i].push(j);
                beaten_by[j] += 1;
            }
        }
    }
    let mut levels = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| beaten_by[i] == 0).collect();
    let mut assigned = 0;
    while !current.is_empty() {
        assigned += current.len();
        let mut next = Vec::new();
        for &i in &current {
            for &j in &beats[i] {
                beaten_by[j] -= 1;
                if beaten_by[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        levels.push(std::mem::replace(&mut current, next));
    }
    debug_assert_eq!(assigned, n);
    levels
}

/// Crowding distance per candidate over the four objectives; boundary points
/// get infinity.
pub(crate) fn crowding_distances(cands: &[Candidate]) -> Vec<f64> {
    let n = cands.len();
    let mut dist = vec![0.0f64; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    for m in 0..4 {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            cands[a].fitness.as_array()[m]
                .partial_cmp(&cands[b].fitness.as_array()[m])
                .unwrap()
        });
        let lo = cands[order[0]].fitness.as_array()[m];
        let hi = cands[order[n - 1]].fitness.as_array()[m];
        if hi == lo {
            continue;
        }
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        for w in 1..n - 1 {
            let below = cands[order[w - 1]].fitness.as_array()[m];
            let above = cands[order[w + 1]].fitness.as_array()[m];
            dist[order[w]] += (above - below) / (hi - lo);
        }
    }
    dist
}

/// Search algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Nsga3,
    Wbga,
    Amosa,
    Unguided,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Nsga3,
        Algorithm::Wbga,
        Algorithm::Amosa,
        Algorithm::Unguided,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Nsga3 => "nsga3",
            Algorithm::Wbga => "wbga",
            Algorithm::Amosa => "amosa",
            Algorithm::Unguided => "unguided",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.to_ascii_lowercase().as_str() {
            "nsga3" | "nsga-iii" | "nsgaiii" => Ok(Algorithm::Nsga3),
            "wbga" => Ok(Algorithm::Wbga),
            "amosa" => Ok(Algorithm::Amosa),
            "unguided" => Ok(Algorithm::Unguided),
            other => Err(ConfigError::UnknownAlgorithm(other.to_owned())),
        }
    }
}

/// Temperature schedule and archive cap for the annealing-flavoured
/// selection (Boltzmann selection in the weighted GA, acceptance and archive
/// pruning in the annealer).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnealParams {
    pub initial_temp: f64,
    pub cooling_rate: f64,
    pub archive_cap: usize,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            initial_temp: 1.0,
            cooling_rate: 5.0,
            archive_cap: 100,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub algorithm: Algorithm,
    pub population_size: usize,
    pub evaluation_budget: u64,
    pub crossover_probability: f64,
    pub weights: Weights,
    pub bound: usize,
    pub seed: u64,
    pub anneal: AnnealParams,
    pub limits: Limits,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            algorithm: Algorithm::Nsga3,
            population_size: 100,
            evaluation_budget: 1000,
            crossover_probability: 0.1,
            weights: Weights::default(),
            bound: 5,
            seed: 0,
            anneal: AnnealParams::default(),
            limits: Limits::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.population_size == 0 {
            return Err(ConfigError::ZeroPopulation);
        }
        if self.bound == 0 || self.bound > MAX_BOUND {
            return Err(ConfigError::BadBound(self.bound));
        }
        if !(0.0..=1.0).contains(&self.crossover_probability) {
            return Err(ConfigError::BadProbability(self.crossover_probability));
        }
        let sum: f64 = self.weights.as_array().iter().sum();
        if self.weights.as_array().iter().any(|w| *w < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(ConfigError::BadWeights(sum));
        }
        if self.anneal.initial_temp <= 0.0
            || self.anneal.cooling_rate < 0.0
            || self.anneal.archive_cap == 0
        {
            return Err(ConfigError::BadAnneal);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("unknown algorithm `{0}` (expected nsga3, wbga, amosa, or unguided)")]
    UnknownAlgorithm(String),
    #[error("population size must be at least 1")]
    ZeroPopulation,
    #[error("bound {0} is outside 1..={MAX_BOUND}")]
    BadBound(usize),
    #[error("crossover probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("objective weights must be nonnegative and sum to 1 (got {0})")]
    BadWeights(f64),
    #[error("annealing parameters must have positive temperature and a nonzero archive cap")]
    BadAnneal,
}

/// A resolve problem: the original specification plus the identified
/// boundary conditions it should be cured of.
#[derive(Debug, Clone)]
pub struct Problem {
    pub spec: Specification,
    pub bcs: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("at least one boundary condition is required")]
    NoBoundaryConditions,
    #[error("boundary condition uses atom `{0}` outside the declared alphabet")]
    UndeclaredAtom(String),
}

impl Problem {
    pub fn new(spec: Specification, bcs: Vec<Formula>) -> Result<Self, ProblemError> {
        if bcs.is_empty() {
            return Err(ProblemError::NoBoundaryConditions);
        }
        for bc in &bcs {
            for atom in bc.atoms() {
                if !spec.alphabet().contains(atom) {
                    return Err(ProblemError::UndeclaredAtom(atom.to_owned()));
                }
            }
        }
        Ok(Problem { spec, bcs })
    }
}

/// Budgeted candidate factory shared by the algorithms; records every
/// individual created and collects the valid resolutions.
struct Engine {
    eval: FitnessEvaluator,
    budget: u64,
    created: u64,
    history: Vec<Candidate>,
    valid: Vec<Candidate>,
    valid_keys: HashSet<String>,
}

impl Engine {
    fn new(problem: &Problem, cfg: &SearchConfig) -> Engine {
        Engine {
            eval: FitnessEvaluator::new(
                problem.spec.clone(),
                problem.bcs.clone(),
                cfg.bound,
                cfg.limits.clone(),
            ),
            budget: cfg.evaluation_budget,
            created: 0,
            history: Vec::new(),
            valid: Vec::new(),
            valid_keys: HashSet::new(),
        }
    }

    fn spawn(&mut self, spec: Specification) -> Candidate {
        debug_assert!(self.created < self.budget, "budget exceeded");
        let fitness = self.eval.evaluate(&spec);
        let cand = Candidate {
            spec,
            fitness,
            birth_index: self.created,
        };
        self.created += 1;
        self.history.push(cand.clone());
        if fitness.is_valid() && self.valid_keys.insert(cand.spec.goal_key()) {
            self.valid.push(cand.clone());
        }
        cand
    }
}

fn initial_population(
    engine: &mut Engine,
    problem: &Problem,
    rng: &mut RandomSource,
    size: usize,
) -> Vec<Candidate> {
    let n = (size as u64).min(engine.budget - engine.created) as usize;
    (0..n)
        .map(|_| {
            let spec = mutate_spec(&problem.spec, rng);
            engine.spawn(spec)
        })
        .collect()
}

/// Four-way tournament on non-domination rank, older candidate on ties.
fn tournament(pool: &[Candidate], ranks: &[usize], rng: &mut RandomSource) -> usize {
    let mut best = rng.below(pool.len());
    for _ in 0..3 {
        let contender = rng.below(pool.len());
        let better = (ranks[contender], pool[contender].birth_index)
            < (ranks[best], pool[best].birth_index);
        if better {
            best = contender;
        }
    }
    best
}

fn ranks_of(pool: &[Candidate]) -> Vec<usize> {
    let mut ranks = vec![0usize; pool.len()];
    for (level, members) in non_dominated_levels(pool).iter().enumerate() {
        for &i in members {
            ranks[i] = level;
        }
    }
    ranks
}

fn temperature(cfg: &SearchConfig, created: u64) -> f64 {
    let progress = if cfg.evaluation_budget == 0 {
        0.0
    } else {
        created as f64 / cfg.evaluation_budget as f64
    };
    // floor keeps the Boltzmann weights and acceptance odds well-defined
    // under extreme cooling rates
    (cfg.anneal.initial_temp * (-cfg.anneal.cooling_rate * progress).exp()).max(1e-12)
}

/// Fitness-proportional pick with temperature-controlled exponential
/// weighting.
fn boltzmann_pick(
    pool: &[Candidate],
    weights: &Weights,
    temperature: f64,
    rng: &mut RandomSource,
) -> usize {
    let fs: Vec<f64> = pool
        .iter()
        .map(|c| weighted_fitness(&c.fitness, weights))
        .collect();
    let max = fs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ws: Vec<f64> = fs.iter().map(|f| ((f - max) / temperature).exp()).collect();
    let total: f64 = ws.iter().sum();
    let mut r = rng.unit() * total;
    for (i, w) in ws.iter().enumerate() {
        if r < *w {
            return i;
        }
        r -= w;
    }
    pool.len() - 1
}

/// Annealing acceptance: a dominating offspring is always accepted, a
/// dominated one with probability `exp(-Δ/T)` for the weighted-fitness gap
/// `Δ ≥ 0`, and incomparable offspring are always accepted.
fn accept_offspring(
    new: &FitnessVector,
    current: &FitnessVector,
    weights: &Weights,
    temperature: f64,
    rng: &mut RandomSource,
) -> bool {
    if dominates(new, current) {
        true
    } else if dominates(current, new) {
        let delta = weighted_fitness(current, weights) - weighted_fitness(new, weights);
        rng.unit() < (-delta / temperature).exp()
    } else {
        true
    }
}

fn offspring_spec(
    pool: &[Candidate],
    cfg: &SearchConfig,
    rng: &mut RandomSource,
    mut select: impl FnMut(&mut RandomSource) -> usize,
) -> Specification {
    if rng.chance(cfg.crossover_probability) {
        let a = select(rng);
        let b = select(rng);
        let crossed = crossover_specs(&pool[a].spec, &pool[b].spec, rng)
            .expect("pool members share alphabet and goal count");
        mutate_spec(&crossed, rng)
    } else {
        let a = select(rng);
        mutate_spec(&pool[a].spec, rng)
    }
}

fn nsga3_inner(
    problem: &Problem,
    cfg: &SearchConfig,
    rng: &mut RandomSource,
) -> (ParetoArchive, Engine) {
    let mut engine = Engine::new(problem, cfg);
    let pop = cfg.population_size;
    let mut pool = initial_population(&mut engine, problem, rng, pop);
    while !pool.is_empty() && engine.created + pop as u64 <= engine.budget {
        let ranks = ranks_of(&pool);
        let mut offspring = Vec::with_capacity(pop);
        for _ in 0..pop {
            let spec = offspring_spec(&pool, cfg, rng, |rng| tournament(&pool, &ranks, rng));
            offspring.push(engine.spawn(spec));
        }
        pool.extend(offspring);
        // survivor selection: one individual per non-domination level keeps
        // the next parent pool small and spread across ranks
        let levels = non_dominated_levels(&pool);
        pool = levels
            .iter()
            .map(|level| pool[level[rng.below(level.len())]].clone())
            .collect();
    }
    (pareto_front(&engine.valid), engine)
}

fn wbga_inner(
    problem: &Problem,
    cfg: &SearchConfig,
    rng: &mut RandomSource,
) -> (ParetoArchive, Engine) {
    let mut engine = Engine::new(problem, cfg);
    let pop = cfg.population_size;
    let mut pool = initial_population(&mut engine, problem, rng, pop);
    while !pool.is_empty() && engine.created + pop as u64 <= engine.budget {
        let t = temperature(cfg, engine.created);
        let mut offspring = Vec::with_capacity(pop);
        for _ in 0..pop {
            let spec =
                offspring_spec(&pool, cfg, rng, |rng| boltzmann_pick(&pool, &cfg.weights, t, rng));
            offspring.push(engine.spawn(spec));
        }
        pool.extend(offspring);
        // best `pop` by scalarized fitness survive, older first on ties
        pool.sort_by(|a, b| {
            weighted_fitness(&b.fitness, &cfg.weights)
                .partial_cmp(&weighted_fitness(&a.fitness, &cfg.weights))
                .unwrap()
                .then(a.birth_index.cmp(&b.birth_index))
        });
        pool.truncate(pop);
    }
    (pareto_front(&engine.valid), engine)
}

fn amosa_archive_insert(archive: &mut ParetoArchive, cand: &Candidate, cap: usize) {
    if !cand.fitness.is_valid() || !archive.insert(cand.clone()) {
        return;
    }
    while archive.len() > cap {
        let dists = crowding_distances(&archive.members);
        // drop the most crowded member, the newest on ties
        let victim = (0..archive.members.len())
            .min_by(|&a, &b| {
                dists[a]
                    .partial_cmp(&dists[b])
                    .unwrap()
                    .then(archive.members[b].birth_index.cmp(&archive.members[a].birth_index))
            })
            .expect("archive is nonempty");
        archive.members.remove(victim);
    }
}

fn amosa_inner(
    problem: &Problem,
    cfg: &SearchConfig,
    rng: &mut RandomSource,
) -> (ParetoArchive, Engine) {
    let mut engine = Engine::new(problem, cfg);
    let mut archive = ParetoArchive::new();
    if engine.budget == 0 {
        return (archive, engine);
    }
    let mut current = engine.spawn(mutate_spec(&problem.spec, rng));
    amosa_archive_insert(&mut archive, &current, cfg.anneal.archive_cap);
    while engine.created < engine.budget {
        let t = temperature(cfg, engine.created);
        let new = engine.spawn(mutate_spec(&current.spec, rng));
        amosa_archive_insert(&mut archive, &new, cfg.anneal.archive_cap);
        if accept_offspring(&new.fitness, &current.fitness, &cfg.weights, t, rng) {
            current = new;
        }
    }
    archive.sort_by_birth();
    (archive, engine)
}

fn unguided_inner(
    problem: &Problem,
    cfg: &SearchConfig,
    rng: &mut RandomSource,
) -> (ParetoArchive, Engine) {
    let mut engine = Engine::new(problem, cfg);
    let mut pool = initial_population(&mut engine, problem, rng, cfg.population_size);
    if pool.is_empty() {
        return (ParetoArchive::new(), engine);
    }
    while engine.created < engine.budget {
        // fitness plays no part in selection
        let parent = rng.below(pool.len());
        let spec = mutate_spec(&pool[parent].spec, rng);
        pool.push(engine.spawn(spec));
    }
    (pareto_front(&engine.valid), engine)
}

/// NSGA-III-style genetic search: rank-based tournaments, crossover plus
/// mandatory mutation, survivors chosen one per non-domination level.
pub fn run_nsga3(problem: &Problem, cfg: &SearchConfig, rng: &mut RandomSource) -> ParetoArchive {
    nsga3_inner(problem, cfg, rng).0
}

/// Weight-based genetic search: Boltzmann selection over the scalarized
/// fitness under an exponentially decaying temperature, truncation survival.
pub fn run_wbga(problem: &Problem, cfg: &SearchConfig, rng: &mut RandomSource) -> ParetoArchive {
    wbga_inner(problem, cfg, rng).0
}

/// Archived multi-objective simulated annealing: a single point mutated each
/// step (no crossover); the archive of valid resolutions is capped by
/// crowding-distance pruning.
pub fn run_amosa(problem: &Problem, cfg: &SearchConfig, rng: &mut RandomSource) -> ParetoArchive {
    amosa_inner(problem, cfg, rng).0
}

/// Baseline: uniform-random pool growth with no fitness guidance; the pool is
/// scored and filtered only at the end.
pub fn run_unguided(problem: &Problem, cfg: &SearchConfig, rng: &mut RandomSource) -> ParetoArchive {
    unguided_inner(problem, cfg, rng).0
}

/// Everything a run produced: the archive of valid resolutions plus the full
/// creation history for reporting and replay.
#[derive(Debug)]
pub struct RunOutcome {
    pub archive: ParetoArchive,
    pub history: Vec<Candidate>,
    /// distinct goal lists evaluated (memoized re-encounters excluded)
    pub evaluations: u64,
    /// individuals created, bounded by the budget
    pub individuals: u64,
}

/// Runs the configured algorithm with a generator seeded from the config.
pub fn run(problem: &Problem, cfg: &SearchConfig) -> RunOutcome {
    let mut rng = RandomSource::from_seed(cfg.seed);
    let (archive, engine) = match cfg.algorithm {
        Algorithm::Nsga3 => nsga3_inner(problem, cfg, &mut rng),
        Algorithm::Wbga => wbga_inner(problem, cfg, &mut rng),
        Algorithm::Amosa => amosa_inner(problem, cfg, &mut rng),
        Algorithm::Unguided => unguided_inner(problem, cfg, &mut rng),
    };
    RunOutcome {
        archive,
        history: engine.history,
        evaluations: engine.eval.evaluations(),
        individuals: engine.created,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::minepump;

    fn fv(c: f64, r: f64, sy: f64, se: f64) -> FitnessVector {
        FitnessVector {
            consistency: c,
            resolved_bcs: r,
            syntactic: sy,
            semantic: se,
        }
    }

    fn cand(v: FitnessVector, birth: u64) -> Candidate {
        // distinct goal list per candidate, so archive set-semantics keeps
        // them apart
        let (spec, _) = minepump();
        let mut goal = Formula::atom("p");
        for _ in 0..birth {
            goal = Formula::next(goal);
        }
        Candidate {
            spec: spec.with_goal(0, goal),
            fitness: v,
            birth_index: birth,
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&fv(1.0, 1.0, 1.0, 1.0), &fv(1.0, 1.0, 1.0, 0.5)));
        let a = fv(0.5, 0.5, 0.5, 0.5);
        assert!(!dominates(&a, &a));
        let b = fv(1.0, 0.0, 1.0, 0.0);
        let c = fv(0.0, 1.0, 0.0, 1.0);
        assert!(!dominates(&b, &c));
        assert!(!dominates(&c, &b));
    }

    #[test]
    fn weighted_fitness_examples() {
        let w = Weights::default();
        assert!((weighted_fitness(&fv(1.0, 1.0, 1.0, 1.0), &w) - 1.0).abs() < 1e-12);
        assert!((weighted_fitness(&fv(1.0, 0.0, 0.0, 0.0), &w) - 0.1).abs() < 1e-12);
        assert!((weighted_fitness(&fv(0.5, 1.0, 0.75, 0.2), &w) - 0.845).abs() < 1e-12);
    }

    #[test]
    fn pareto_front_examples() {
        let single = vec![cand(fv(0.3, 0.2, 0.1, 0.4), 0)];
        assert_eq!(pareto_front(&single).len(), 1);

        let chain = vec![
            cand(fv(1.0, 1.0, 1.0, 1.0), 0),
            cand(fv(0.5, 0.5, 0.5, 0.5), 1),
            cand(fv(0.1, 0.1, 0.1, 0.1), 2),
        ];
        let front = pareto_front(&chain);
        assert_eq!(front.len(), 1);
        assert_eq!(front.members()[0].birth_index, 0);
    }

    #[test]
    fn pareto_front_matches_pairwise_filter() {
        use crate::operators::RandomSource;
        let mut rng = RandomSource::from_seed(99);
        let cands: Vec<Candidate> = (0..100)
            .map(|i| {
                cand(
                    fv(
                        (rng.below(5) as f64) / 4.0,
                        (rng.below(5) as f64) / 4.0,
                        (rng.below(5) as f64) / 4.0,
                        (rng.below(5) as f64) / 4.0,
                    ),
                    i,
                )
            })
            .collect();
        let want: Vec<u64> = cands
            .iter()
            .filter(|c| {
                !cands
                    .iter()
                    .any(|o| o.birth_index != c.birth_index && dominates(&o.fitness, &c.fitness))
            })
            .map(|c| c.birth_index)
            .collect();
        let got: Vec<u64> = pareto_front(&cands)
            .members()
            .iter()
            .map(|c| c.birth_index)
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn archive_insert_keeps_non_dominated_only() {
        let mut archive = ParetoArchive::new();
        assert!(archive.insert(cand(fv(0.5, 0.5, 0.5, 0.5), 0)));
        // dominated incoming is rejected
        assert!(!archive.insert(cand(fv(0.4, 0.5, 0.5, 0.5), 1)));
        // dominating incoming evicts
        assert!(archive.insert(cand(fv(1.0, 1.0, 1.0, 1.0), 2)));
        assert_eq!(archive.len(), 1);
        assert_eq!(archive.members()[0].birth_index, 2);
    }

    #[test]
    fn config_validation_rejects_bad_knobs() {
        assert!(SearchConfig::default().validate().is_ok());
        let bad_weights = SearchConfig {
            weights: Weights {
                consistency: 0.5,
                resolved: 0.5,
                syntactic: 0.5,
                semantic: 0.5,
            },
            ..SearchConfig::default()
        };
        assert!(matches!(
            bad_weights.validate(),
            Err(ConfigError::BadWeights(_))
        ));
        let bad_bound = SearchConfig {
            bound: 0,
            ..SearchConfig::default()
        };
        assert!(matches!(bad_bound.validate(), Err(ConfigError::BadBound(0))));
        let bad_prob = SearchConfig {
            crossover_probability: 1.5,
            ..SearchConfig::default()
        };
        assert!(matches!(
            bad_prob.validate(),
            Err(ConfigError::BadProbability(_))
        ));
        assert_eq!("nsga3".parse::<Algorithm>().unwrap(), Algorithm::Nsga3);
        assert!("hillclimb".parse::<Algorithm>().is_err());
    }

    #[test]
    fn dominating_offspring_is_always_accepted() {
        let mut rng = RandomSource::from_seed(0);
        let better = fv(1.0, 1.0, 1.0, 1.0);
        let worse = fv(0.9, 1.0, 1.0, 1.0);
        let w = Weights::default();
        for _ in 0..100 {
            assert!(accept_offspring(&better, &worse, &w, 1e-9, &mut rng));
        }
        // incomparable is accepted too
        let left = fv(1.0, 0.0, 1.0, 0.0);
        let right = fv(0.0, 1.0, 0.0, 1.0);
        assert!(accept_offspring(&left, &right, &w, 1e-9, &mut rng));
    }

    #[test]
    fn dominated_offspring_acceptance_depends_on_temperature() {
        let w = Weights::default();
        let current = fv(1.0, 1.0, 1.0, 1.0);
        let new = fv(1.0, 1.0, 1.0, 0.0);
        let trials = 2000;
        let acceptance_rate = |temp: f64| {
            let mut rng = RandomSource::from_seed(5);
            (0..trials)
                .filter(|_| accept_offspring(&new, &current, &w, temp, &mut rng))
                .count() as f64
                / trials as f64
        };
        let hot = acceptance_rate(10.0);
        let cold = acceptance_rate(0.01);
        assert!(hot > 0.9, "hot acceptance {hot}");
        assert!(cold < 0.01, "cold acceptance {cold}");
    }
}
