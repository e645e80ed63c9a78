//! Bounded LTL semantics over lasso traces.
//!
//! A lasso trace is a finite base of states whose suffix from `loop_start`
//! repeats forever, so every formula has a decidable truth value on it.
//! Satisfiability and model counting are relative to lassos with a bounded
//! base length and are decided by exhaustive enumeration of all bases; the
//! answers are exact for that model class, not for full LTL.
//!
//! Evaluation computes, per subformula, the set of base positions where it
//! holds, encoded as a bitmask. Successor position `i + 1` wraps from the end
//! of the base to `loop_start`, and the temporal operators are fixpoints over
//! that finite successor structure: least fixpoints for `U` and `F`, greatest
//! fixpoints for `R`, `W` and `G`. For small bases the engine additionally
//! packs the position sets of *all* loop starts of one base into a single
//! word, which is what makes exhaustive enumeration affordable inside the
//! search loop.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ltl::{Alphabet, BinaryOp, Formula, UnaryOp};

/// Longest supported base length; position sets are single 64-bit masks.
pub const MAX_BOUND: usize = 63;

/// One propositional valuation: a bitset over the alphabet, bit `i` set iff
/// atom `i` holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct State(u32);

impl State {
    pub const fn empty() -> Self {
        State(0)
    }

    pub const fn from_bits(bits: u32) -> Self {
        State(bits)
    }

    pub fn from_atoms<'a, I>(alphabet: &Alphabet, atoms: I) -> Result<Self, SemanticsError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut bits = 0u32;
        for name in atoms {
            match alphabet.index_of(name) {
                Some(i) => bits |= 1 << i,
                None => return Err(SemanticsError::UnknownAtom(name.to_owned())),
            }
        }
        Ok(State(bits))
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn contains_index(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn atom_names(self, alphabet: &Alphabet) -> Vec<&str> {
        alphabet
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.contains_index(*i))
            .map(|(_, n)| n.as_str())
            .collect()
    }
}

/// A finite base of states plus the index its infinite repetition starts at:
/// the trace `s_0 … s_{loop_start-1} (s_{loop_start} … s_{k-1})^ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoTrace {
    base: Vec<State>,
    loop_start: usize,
}

impl LassoTrace {
    pub fn new(base: Vec<State>, loop_start: usize) -> Result<Self, SemanticsError> {
        if base.is_empty() || loop_start >= base.len() || base.len() > MAX_BOUND {
            return Err(SemanticsError::MalformedTrace);
        }
        Ok(LassoTrace { base, loop_start })
    }

    pub fn base(&self) -> &[State] {
        &self.base
    }

    pub fn loop_start(&self) -> usize {
        self.loop_start
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// JSON form `{"base": [["p","q"], …], "loop": i}`.
    pub fn to_json(&self, alphabet: &Alphabet) -> String {
        let repr = TraceJson {
            base: self
                .base
                .iter()
                .map(|s| s.atom_names(alphabet).iter().map(|n| n.to_string()).collect())
                .collect(),
            loop_start: self.loop_start,
        };
        serde_json::to_string(&repr).expect("trace serialization cannot fail")
    }

    pub fn from_json(text: &str, alphabet: &Alphabet) -> Result<Self, SemanticsError> {
        let repr: TraceJson =
            serde_json::from_str(text).map_err(|e| SemanticsError::TraceJson(e.to_string()))?;
        let base = repr
            .base
            .iter()
            .map(|atoms| State::from_atoms(alphabet, atoms.iter().map(|s| s.as_str())))
            .collect::<Result<Vec<_>, _>>()?;
        LassoTrace::new(base, repr.loop_start)
    }
}

#[derive(Serialize, Deserialize)]
struct TraceJson {
    base: Vec<Vec<String>>,
    #[serde(rename = "loop")]
    loop_start: usize,
}

/// Outcome of a bounded satisfiability query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedVerdict {
    /// A lasso with base length within the bound satisfies the formula.
    SatWitness(LassoTrace),
    /// No lasso with base length up to the bound satisfies it.
    NoLassoWithinBound(usize),
}

impl BoundedVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, BoundedVerdict::SatWitness(_))
    }

    pub fn witness(&self) -> Option<&LassoTrace> {
        match self {
            BoundedVerdict::SatWitness(t) => Some(t),
            BoundedVerdict::NoLassoWithinBound(_) => None,
        }
    }
}

/// Resource limits for one enumeration query.
#[derive(Debug, Clone)]
pub struct Limits {
    pub timeout: Option<Duration>,
    pub max_evals: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            timeout: Some(Duration::from_secs(300)),
            max_evals: None,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            timeout: None,
            max_evals: None,
        }
    }

    pub fn with_timeout_secs(secs: u64) -> Self {
        Limits {
            timeout: Some(Duration::from_secs(secs)),
            max_evals: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("atom `{0}` is not in the declared alphabet")]
    UnknownAtom(String),
    #[error("a lasso base must be nonempty, at most {MAX_BOUND} states, with loop start inside it")]
    MalformedTrace,
    #[error("the bound must be at least 1")]
    ZeroBound,
    #[error("bound {0} exceeds the supported maximum of {MAX_BOUND}")]
    BoundTooLarge(usize),
    #[error("enumeration exceeded the configured resource limits after {evals} trace evaluations")]
    ResourceLimit { evals: u64 },
    #[error("malformed trace JSON: {0}")]
    TraceJson(String),
}

struct Budget {
    deadline: Option<Instant>,
    max_evals: Option<u64>,
    evals: u64,
    next_clock_check: u64,
}

impl Budget {
    fn new(limits: &Limits) -> Self {
        Budget {
            deadline: limits.timeout.map(|t| Instant::now() + t),
            max_evals: limits.max_evals,
            evals: 0,
            next_clock_check: 0,
        }
    }

    #[inline]
    fn charge(&mut self, n: u64) -> Result<(), SemanticsError> {
        self.evals += n;
        if let Some(max) = self.max_evals {
            if self.evals > max {
                return Err(SemanticsError::ResourceLimit { evals: self.evals });
            }
        }
        if self.evals >= self.next_clock_check {
            self.next_clock_check = self.evals + 8192;
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(SemanticsError::ResourceLimit { evals: self.evals });
                }
            }
        }
        Ok(())
    }
}

/// Post-order instruction form of a formula; evaluation is a stack machine
/// over position-set bitmasks.
#[derive(Debug, Clone, Copy)]
enum Instr {
    Const(bool),
    Atom(u32),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Until,
    Release,
    WeakUntil,
    Eventually,
    Always,
}

#[derive(Debug, Clone)]
struct Program {
    instrs: Vec<Instr>,
}

fn compile(f: &Formula, alphabet: &Alphabet) -> Result<Program, SemanticsError> {
    fn walk(f: &Formula, alphabet: &Alphabet, out: &mut Vec<Instr>) -> Result<(), SemanticsError> {
        match f {
            Formula::Const(b) => out.push(Instr::Const(*b)),
            Formula::Atom(a) => match alphabet.index_of(a) {
                Some(i) => out.push(Instr::Atom(i as u32)),
                None => return Err(SemanticsError::UnknownAtom(a.clone())),
            },
            Formula::Unary(op, c) => {
                walk(c, alphabet, out)?;
                out.push(match op {
                    UnaryOp::Not => Instr::Not,
                    UnaryOp::Next => Instr::Next,
                    UnaryOp::Eventually => Instr::Eventually,
                    UnaryOp::Always => Instr::Always,
                });
            }
            Formula::Binary(op, l, r) => {
                walk(l, alphabet, out)?;
                walk(r, alphabet, out)?;
                out.push(match op {
                    BinaryOp::And => Instr::And,
                    BinaryOp::Or => Instr::Or,
                    BinaryOp::Implies => Instr::Implies,
                    BinaryOp::Iff => Instr::Iff,
                    BinaryOp::Until => Instr::Until,
                    BinaryOp::Release => Instr::Release,
                    BinaryOp::WeakUntil => Instr::WeakUntil,
                });
            }
        }
        Ok(())
    }
    let mut instrs = Vec::with_capacity(f.node_count());
    walk(f, alphabet, &mut instrs)?;
    Ok(Program { instrs })
}

/// Evaluator for one fixed loop start: bit `j` of a mask is the verdict at
/// base position `j`.
#[derive(Clone, Copy)]
struct SingleEval {
    k: u32,
    loop_start: u32,
    full: u64,
}

impl SingleEval {
    fn new(k: usize, loop_start: usize) -> Self {
        debug_assert!((1..=MAX_BOUND).contains(&k) && loop_start < k);
        SingleEval {
            k: k as u32,
            loop_start: loop_start as u32,
            full: (1u64 << k) - 1,
        }
    }

    /// Mask of positions whose successor is in `x`; the successor of the last
    /// position is `loop_start`.
    #[inline]
    fn pre(self, x: u64) -> u64 {
        (x >> 1) | ((x >> self.loop_start & 1) << (self.k - 1))
    }

    fn run(self, prog: &Program, atom_masks: &[u64], stack: &mut Vec<u64>) -> u64 {
        stack.clear();
        for instr in &prog.instrs {
            match *instr {
                Instr::Const(true) => stack.push(self.full),
                Instr::Const(false) => stack.push(0),
                Instr::Atom(i) => stack.push(atom_masks[i as usize]),
                Instr::Not => {
                    let top = stack.last_mut().unwrap();
                    *top = !*top & self.full;
                }
                Instr::And => {
                    let r = stack.pop().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top &= r;
                }
                Instr::Or => {
                    let r = stack.pop().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top |= r;
                }
                Instr::Implies => {
                    let r = stack.pop().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = (!*top & self.full) | r;
                }
                Instr::Iff => {
                    let r = stack.pop().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = !(*top ^ r) & self.full;
                }
                Instr::Next => {
                    let top = stack.last_mut().unwrap();
                    *top = self.pre(*top);
                }
                Instr::Eventually => {
                    let m = *stack.last().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = self.lfp(|x| m | x);
                }
                Instr::Always => {
                    let m = *stack.last().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = self.gfp(|x| m & x);
                }
                Instr::Until => {
                    let psi = stack.pop().unwrap();
                    let phi = *stack.last().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = self.lfp(|x| psi | (phi & x));
                }
                Instr::Release => {
                    let psi = stack.pop().unwrap();
                    let phi = *stack.last().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = self.gfp(|x| psi & (phi | x));
                }
                Instr::WeakUntil => {
                    let psi = stack.pop().unwrap();
                    let phi = *stack.last().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = self.gfp(|x| psi | (phi & x));
                }
            }
        }
        stack.pop().unwrap()
    }

    #[inline]
    fn lfp(self, step: impl Fn(u64) -> u64) -> u64 {
        let mut x = 0u64;
        loop {
            let next = step(self.pre(x));
            if next == x {
                return x;
            }
            x = next;
        }
    }

    #[inline]
    fn gfp(self, step: impl Fn(u64) -> u64) -> u64 {
        let mut x = self.full;
        loop {
            let next = step(self.pre(x));
            if next == x {
                return x;
            }
            x = next;
        }
    }
}

/// Evaluator for all loop starts of one base at once (bases of length at most
/// 8). Bit `i*k + j` is the verdict at position `j` under loop start `i`.
#[derive(Clone, Copy)]
struct PackedEval {
    k: u32,
    full: u64,
    /// ones at bit `i*k` for every block `i`; replicates a k-bit mask
    rep: u64,
    /// `full` with the last position of every block cleared
    shift_keep: u64,
}

/// Largest base length the packed evaluator handles (`k*k` bits in a word).
const PACKED_MAX: usize = 8;

impl PackedEval {
    fn new(k: usize) -> Self {
        debug_assert!((1..=PACKED_MAX).contains(&k));
        let k32 = k as u32;
        let bits = k32 * k32;
        let full = if bits == 64 { !0u64 } else { (1u64 << bits) - 1 };
        let mut rep = 0u64;
        let mut last = 0u64;
        for i in 0..k32 {
            rep |= 1 << (i * k32);
            last |= 1 << (i * k32 + k32 - 1);
        }
        PackedEval {
            k: k32,
            full,
            rep,
            shift_keep: full & !last,
        }
    }

    /// Per-block predecessor transform: within block `i`, position `j` takes
    /// the value of position `j+1`, the last position takes the value of
    /// position `i` (the loop target of that block).
    #[inline]
    fn pre(self, x: u64) -> u64 {
        let mut out = (x >> 1) & self.shift_keep;
        let k = self.k;
        for i in 0..k {
            out |= (x >> (i * k + i) & 1) << (i * k + k - 1);
        }
        out
    }

    /// Replicates a k-bit position mask into every block.
    #[inline]
    fn splat(self, mask: u64) -> u64 {
        mask.wrapping_mul(self.rep)
    }

    /// Bit `i` of the result is the verdict at position 0 under loop start `i`.
    #[inline]
    fn verdicts(self, x: u64) -> u64 {
        let k = self.k;
        let mut out = 0u64;
        for i in 0..k {
            out |= (x >> (i * k) & 1) << i;
        }
        out
    }

    fn run(self, prog: &Program, atom_masks: &[u64], stack: &mut Vec<u64>) -> u64 {
        stack.clear();
        for instr in &prog.instrs {
            match *instr {
                Instr::Const(true) => stack.push(self.full),
                Instr::Const(false) => stack.push(0),
                Instr::Atom(i) => stack.push(self.splat(atom_masks[i as usize])),
                Instr::Not => {
                    let top = stack.last_mut().unwrap();
                    *top = !*top & self.full;
                }
                Instr::And => {
                    let r = stack.pop().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top &= r;
                }
                Instr::Or => {
                    let r = stack.pop().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top |= r;
                }
                Instr::Implies => {
                    let r = stack.pop().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = (!*top & self.full) | r;
                }
                Instr::Iff => {
                    let r = stack.pop().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = !(*top ^ r) & self.full;
                }
                Instr::Next => {
                    let top = stack.last_mut().unwrap();
                    *top = self.pre(*top);
                }
                Instr::Eventually => {
                    let m = *stack.last().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = self.lfp(|x| m | x);
                }
                Instr::Always => {
                    let m = *stack.last().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = self.gfp(|x| m & x);
                }
                Instr::Until => {
                    let psi = stack.pop().unwrap();
                    let phi = *stack.last().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = self.lfp(|x| psi | (phi & x));
                }
                Instr::Release => {
                    let psi = stack.pop().unwrap();
                    let phi = *stack.last().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = self.gfp(|x| psi & (phi | x));
                }
                Instr::WeakUntil => {
                    let psi = stack.pop().unwrap();
                    let phi = *stack.last().unwrap();
                    let top = stack.last_mut().unwrap();
                    *top = self.gfp(|x| psi | (phi & x));
                }
            }
        }
        stack.pop().unwrap()
    }

    #[inline]
    fn lfp(self, step: impl Fn(u64) -> u64) -> u64 {
        let mut x = 0u64;
        loop {
            let next = step(self.pre(x));
            if next == x {
                return x;
            }
            x = next;
        }
    }

    #[inline]
    fn gfp(self, step: impl Fn(u64) -> u64) -> u64 {
        let mut x = self.full;
        loop {
            let next = step(self.pre(x));
            if next == x {
                return x;
            }
            x = next;
        }
    }
}

fn check_trace_in_alphabet(trace: &LassoTrace, alphabet: &Alphabet) -> Result<(), SemanticsError> {
    let allowed = if alphabet.len() == 32 {
        !0u32
    } else {
        (1u32 << alphabet.len()) - 1
    };
    if trace.base().iter().any(|s| s.bits() & !allowed != 0) {
        return Err(SemanticsError::MalformedTrace);
    }
    Ok(())
}

fn atom_masks_of_states(states: &[u32], num_atoms: usize, out: &mut [u64]) {
    for (a, slot) in out.iter_mut().enumerate().take(num_atoms) {
        let mut m = 0u64;
        for (j, &s) in states.iter().enumerate() {
            m |= ((s >> a & 1) as u64) << j;
        }
        *slot = m;
    }
}

/// Truth of `f` at the initial position of `trace`.
pub fn eval_lasso(
    f: &Formula,
    trace: &LassoTrace,
    alphabet: &Alphabet,
) -> Result<bool, SemanticsError> {
    let prog = compile(f, alphabet)?;
    check_trace_in_alphabet(trace, alphabet)?;
    let states: Vec<u32> = trace.base().iter().map(|s| s.bits()).collect();
    let mut masks = vec![0u64; alphabet.len()];
    atom_masks_of_states(&states, alphabet.len(), &mut masks);
    let eval = SingleEval::new(trace.len(), trace.loop_start());
    let mut stack = Vec::with_capacity(prog.instrs.len());
    Ok(eval.run(&prog, &masks, &mut stack) & 1 == 1)
}

/// Shared driver for the enumeration queries: visits every base of each
/// requested length in ascending numeric order and reports the satisfying
/// loop starts as a bitmask. Returning `true` from the visitor stops early.
fn enumerate_bases(
    prog: &Program,
    alphabet: &Alphabet,
    lengths: std::ops::RangeInclusive<usize>,
    budget: &mut Budget,
    mut visit: impl FnMut(&[u32], u64) -> bool,
) -> Result<bool, SemanticsError> {
    let num_atoms = alphabet.len();
    let mut stack: Vec<u64> = Vec::with_capacity(prog.instrs.len().max(1));
    let mut masks = vec![0u64; num_atoms];
    for len in lengths {
        let id_bits = num_atoms * len;
        if id_bits >= 64 {
            // the id space alone overflows a word; no budget could cover it
            return Err(SemanticsError::ResourceLimit { evals: budget.evals });
        }
        let total: u64 = 1u64 << id_bits;
        let state_mask = if num_atoms == 32 {
            !0u32
        } else {
            (1u32 << num_atoms) - 1
        };
        let mut states = vec![0u32; len];
        let packed = (len <= PACKED_MAX).then(|| PackedEval::new(len));
        for id in 0..total {
            for (j, slot) in states.iter_mut().enumerate() {
                *slot = (id >> (j * num_atoms)) as u32 & state_mask;
            }
            atom_masks_of_states(&states, num_atoms, &mut masks);
            budget.charge(len as u64)?;
            let verdicts = match packed {
                Some(p) => p.verdicts(p.run(prog, &masks, &mut stack)),
                None => {
                    let mut v = 0u64;
                    for ls in 0..len {
                        let eval = SingleEval::new(len, ls);
                        v |= (eval.run(prog, &masks, &mut stack) & 1) << ls;
                    }
                    v
                }
            };
            if visit(&states, verdicts) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn check_bound(k: usize) -> Result<(), SemanticsError> {
    if k == 0 {
        Err(SemanticsError::ZeroBound)
    } else if k > MAX_BOUND {
        Err(SemanticsError::BoundTooLarge(k))
    } else {
        Ok(())
    }
}

/// Searches for a lasso with base length at most `k` satisfying `f`.
///
/// Base lengths are tried in ascending order, so a verdict at bound `k` is
/// monotone in `k`: a witness found at `k` is also found at every larger
/// bound.
pub fn sat_bounded(
    f: &Formula,
    k: usize,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<BoundedVerdict, SemanticsError> {
    check_bound(k)?;
    let prog = compile(f, alphabet)?;
    let mut budget = Budget::new(limits);
    let mut witness: Option<LassoTrace> = None;
    enumerate_bases(&prog, alphabet, 1..=k, &mut budget, |states, verdicts| {
        if verdicts != 0 {
            let loop_start = verdicts.trailing_zeros() as usize;
            let base = states.iter().map(|&b| State::from_bits(b)).collect();
            witness = Some(LassoTrace::new(base, loop_start).expect("enumerated trace is valid"));
            true
        } else {
            false
        }
    })?;
    Ok(match witness {
        Some(t) => BoundedVerdict::SatWitness(t),
        None => BoundedVerdict::NoLassoWithinBound(k),
    })
}

/// Exact number of bases of length exactly `k` that admit a satisfying loop
/// start for `f`. Ranges over `[0, (2^|AP|)^k]`.
pub fn count_bases(
    f: &Formula,
    k: usize,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<u64, SemanticsError> {
    check_bound(k)?;
    let prog = compile(f, alphabet)?;
    let mut budget = Budget::new(limits);
    let mut count = 0u64;
    enumerate_bases(&prog, alphabet, k..=k, &mut budget, |_, verdicts| {
        count += (verdicts != 0) as u64;
        false
    })?;
    Ok(count)
}

/// Whether `f` and `g` agree on every lasso with base length at most `k`.
pub fn bounded_equivalent(
    f: &Formula,
    g: &Formula,
    k: usize,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<bool, SemanticsError> {
    let differs = Formula::or(
        Formula::and(f.clone(), Formula::not(g.clone())),
        Formula::and(Formula::not(f.clone()), g.clone()),
    );
    Ok(!sat_bounded(&differs, k, alphabet, limits)?.is_sat())
}

/// Per-base verdict masks of a fixed formula, for fusing repeated joint
/// counts against it. Only available when both the packed evaluator applies
/// and the table fits comfortably in memory.
#[derive(Debug, Clone)]
pub(crate) struct BaseTable {
    k: usize,
    masks: Vec<u8>,
}

pub(crate) const TABLE_MAX_ID_BITS: usize = 22;

pub(crate) fn base_table(
    f: &Formula,
    k: usize,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<Option<BaseTable>, SemanticsError> {
    check_bound(k)?;
    if k > PACKED_MAX || alphabet.len() * k > TABLE_MAX_ID_BITS {
        return Ok(None);
    }
    let prog = compile(f, alphabet)?;
    let mut budget = Budget::new(limits);
    let mut masks = Vec::with_capacity(1usize << (alphabet.len() * k));
    enumerate_bases(&prog, alphabet, k..=k, &mut budget, |_, verdicts| {
        masks.push(verdicts as u8);
        false
    })?;
    Ok(Some(BaseTable { k, masks }))
}

/// Counts, against a precomputed table for `s`, the bases where some loop
/// start satisfies both `s` and `c` and the bases where some loop start
/// satisfies at least one of them. Equal to
/// `(count_bases(s && c, k), count_bases(s || c, k))`.
pub(crate) fn counts_with_table(
    c: &Formula,
    table: &BaseTable,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<(u64, u64), SemanticsError> {
    let prog = compile(c, alphabet)?;
    let mut budget = Budget::new(limits);
    let mut both = 0u64;
    let mut either = 0u64;
    let mut index = 0usize;
    enumerate_bases(&prog, alphabet, table.k..=table.k, &mut budget, |_, verdicts| {
        let s_mask = table.masks[index] as u64;
        index += 1;
        both += (s_mask & verdicts != 0) as u64;
        either += (s_mask | verdicts != 0) as u64;
        false
    })?;
    Ok((both, either))
}
