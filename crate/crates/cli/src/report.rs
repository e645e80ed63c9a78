//! Machine-readable run reports and the human-readable Pareto table.
//!
//! Field order is fixed by the struct definitions so equal runs serialize to
//! byte-identical JSON; the wall-clock field is the one value reruns may
//! legitimately differ in.

use serde::Serialize;

use goalfix_core::objectives::FitnessVector;
use goalfix_core::search::{Candidate, RunOutcome, SearchConfig};

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub name: Option<String>,
    pub algorithm: String,
    pub seed: u64,
    pub config: ConfigEcho,
    pub individuals: u64,
    pub evaluations: u64,
    pub front: Vec<CandidateRecord>,
    pub candidates: Vec<CandidateRecord>,
    pub wall_ms: u64,
}

#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub population: usize,
    pub budget: u64,
    pub crossover_prob: f64,
    pub weights: [f64; 4],
    pub bound: usize,
    pub timeout_secs: Option<u64>,
    pub min_similarity: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct CandidateRecord {
    pub birth_index: u64,
    pub goals: Vec<String>,
    pub fitness: FitnessVector,
    pub valid: bool,
}

impl CandidateRecord {
    fn of(c: &Candidate) -> CandidateRecord {
        CandidateRecord {
            birth_index: c.birth_index,
            goals: c.spec.goals().iter().map(|g| g.to_string()).collect(),
            fitness: c.fitness,
            valid: c.fitness.is_valid(),
        }
    }
}

impl RunReport {
    pub fn new(
        name: Option<String>,
        cfg: &SearchConfig,
        min_similarity: Option<f64>,
        outcome: &RunOutcome,
        wall_ms: u64,
    ) -> RunReport {
        let front = outcome
            .archive
            .members()
            .iter()
            .filter(|c| match min_similarity {
                None => true,
                Some(threshold) => {
                    c.fitness.syntactic >= threshold || c.fitness.semantic >= threshold
                }
            })
            .map(CandidateRecord::of)
            .collect();
        RunReport {
            name,
            algorithm: cfg.algorithm.to_string(),
            seed: cfg.seed,
            config: ConfigEcho {
                population: cfg.population_size,
                budget: cfg.evaluation_budget,
                crossover_prob: cfg.crossover_probability,
                weights: cfg.weights.as_array(),
                bound: cfg.bound,
                timeout_secs: cfg.limits.timeout.map(|t| t.as_secs()),
                min_similarity,
            },
            individuals: outcome.individuals,
            evaluations: outcome.evaluations,
            front,
            candidates: outcome.history.iter().map(CandidateRecord::of).collect(),
            wall_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Plain-text summary: header plus one row per front member.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let name = self.name.as_deref().unwrap_or("specification");
        out.push_str(&format!(
            "{name}: {} (seed {}), {} individuals, {} evaluated, {} ms\n",
            self.algorithm, self.seed, self.individuals, self.evaluations, self.wall_ms
        ));
        if self.front.is_empty() {
            out.push_str("no valid resolutions found\n");
            return out;
        }
        out.push_str(&format!("Pareto front: {} resolutions\n", self.front.len()));
        out.push_str("  consistency  resolved  syntactic  semantic  goals\n");
        for rec in &self.front {
            out.push_str(&format!(
                "  {:<11.3}  {:<8.3}  {:<9.3}  {:<8.3}  {}\n",
                rec.fitness.consistency,
                rec.fitness.resolved_bcs,
                rec.fitness.syntactic,
                rec.fitness.semantic,
                rec.goals.join("  ;  ")
            ));
        }
        out
    }
}
