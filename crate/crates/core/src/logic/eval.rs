//! Memoized satisfaction checking.
//!
//! Satisfaction is the textbook recursion: an existential tries all `2^n`
//! subsets, a conjunction is satisfied when both conjuncts are, and so on.
//! Three cost controls sit on top, each individually defeasible through
//! [`EvalOptions`] so tests can check they never change a verdict:
//!
//! - **memoization** — results are cached per (sub-formula, restriction of
//!   the environment to its free variables), bounding the work per
//!   sub-formula by `(2^n)^{free}` instead of exponential in quantifier
//!   depth. Definition bodies are shared across call sites.
//! - **singleton guards** — a quantifier whose body conjoins `Sing[X]`
//!   (or `Empty[X]`) on the quantified variable ranges over the `n`
//!   singletons (the empty set) only.
//! - **intrinsics** — calls to the basic set predicates (`Union`,
//!   `Disjoint`, ...) are computed by bit arithmetic.
//!
//! Every evaluation carries a step budget; exceeding it aborts with a
//! distinct error, never a wrong answer.

use super::{Formula, Interpretation, Intrinsic, Logic, NodeId, VarId};
use crate::bits::full_mask;
use crate::setsystem::{ElementSet, SetSystem};
use smallvec::SmallVec;
use std::collections::HashMap;
use thiserror::Error;

/// Default step budget (one step per evaluator entry).
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("evaluation budget exceeded after {0} steps")]
    BudgetExceeded(u64),
    #[error("interpretation domain mismatch: {0}")]
    InterpretationMismatch(String),
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub budget: u64,
    pub memo: bool,
    pub intrinsics: bool,
    pub singleton_guard: bool,
    pub cheap_first: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            budget: DEFAULT_BUDGET,
            memo: true,
            intrinsics: true,
            singleton_guard: true,
            cheap_first: true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EvalStats {
    pub steps: u64,
    pub memo_entries: u64,
    pub memo_hits: u64,
}

type Env = SmallVec<[(VarId, u64); 8]>;
type MemoKey = (NodeId, SmallVec<[u64; 4]>);

#[derive(Clone, Copy, PartialEq, Eq)]
enum Guard {
    Singleton,
    EmptySet,
}

pub struct Evaluator<'l, 's> {
    lg: &'l Logic,
    st: &'s SetSystem,
    pub opts: EvalOptions,
    pub stats: EvalStats,
    memo: HashMap<MemoKey, bool>,
    guards: HashMap<NodeId, Option<Guard>>,
    matroid: Option<bool>,
}

impl<'l, 's> Evaluator<'l, 's> {
    pub fn new(lg: &'l Logic, st: &'s SetSystem, opts: EvalOptions) -> Self {
        Evaluator {
            lg,
            st,
            opts,
            stats: EvalStats::default(),
            memo: HashMap::new(),
            guards: HashMap::new(),
            matroid: None,
        }
    }

    pub fn with_defaults(lg: &'l Logic, st: &'s SetSystem) -> Self {
        Self::new(lg, st, EvalOptions::default())
    }

    /// Checks that the interpretation domain is exactly the free variables,
    /// then evaluates.
    pub fn satisfies(&mut self, theta: &Interpretation, f: NodeId) -> Result<bool, EvalError> {
        let free = self.lg.free_vars(f);
        let dom: Vec<VarId> = theta.domain().collect();
        if dom.len() != free.len() || free.iter().any(|v| theta.get(*v).is_none()) {
            let names = |vs: &[VarId]| {
                vs.iter()
                    .map(|v| self.lg.var_name(*v).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            return Err(EvalError::InterpretationMismatch(format!(
                "free variables {{{}}}, assignment covers {{{}}}",
                names(free),
                names(&dom)
            )));
        }
        let full = full_mask(self.st.ground_size());
        for (_, s) in theta.iter() {
            if s.mask() & !full != 0 {
                return Err(EvalError::InterpretationMismatch(format!(
                    "set {} is not contained in the ground set",
                    s
                )));
            }
        }
        let mut env: Env = theta.iter().map(|(v, s)| (v, s.mask())).collect();
        self.eval(f, &mut env)
    }

    fn charge(&mut self) -> Result<(), EvalError> {
        self.stats.steps += 1;
        if self.stats.steps > self.opts.budget {
            Err(EvalError::BudgetExceeded(self.stats.steps))
        } else {
            Ok(())
        }
    }

    fn lookup(env: &Env, v: VarId) -> u64 {
        for &(u, val) in env.iter().rev() {
            if u == v {
                return val;
            }
        }
        unreachable!("unbound variable during evaluation")
    }

    fn memo_key(&self, f: NodeId, env: &Env) -> MemoKey {
        let vals = self
            .lg
            .free_vars(f)
            .iter()
            .map(|&v| Self::lookup(env, v))
            .collect();
        (f, vals)
    }

    fn eval(&mut self, f: NodeId, env: &mut Env) -> Result<bool, EvalError> {
        self.charge()?;
        let key = if self.opts.memo {
            let key = self.memo_key(f, env);
            if let Some(&v) = self.memo.get(&key) {
                self.stats.memo_hits += 1;
                return Ok(v);
            }
            Some(key)
        } else {
            None
        };
        let lg = self.lg;
        let out = match lg.node(f) {
            Formula::Indep(v) => {
                let s = ElementSet::from_mask(Self::lookup(env, *v));
                self.st.is_independent(s)
            }
            Formula::Sub(a, b) => {
                let (a, b) = (Self::lookup(env, *a), Self::lookup(env, *b));
                a & !b == 0
            }
            Formula::Card(v, p, q) => {
                let c = Self::lookup(env, *v).count_ones();
                c % q == p % q
            }
            Formula::MatroidAtom => match self.matroid {
                Some(v) => v,
                None => {
                    let v = self.st.is_matroid();
                    self.matroid = Some(v);
                    v
                }
            },
            Formula::Not(x) => !self.eval(*x, env)?,
            Formula::And(a, b) => {
                let (a, b) = (*a, *b);
                let (first, second) = if self.opts.cheap_first && lg.cost(b) < lg.cost(a) {
                    (b, a)
                } else {
                    (a, b)
                };
                self.eval(first, env)? && self.eval(second, env)?
            }
            Formula::Exists(v, body) => {
                let (v, body) = (*v, *body);
                let mut found = false;
                match self.exists_guard(f, v, body) {
                    Some(Guard::EmptySet) => {
                        env.push((v, 0));
                        found = self.eval(body, env)?;
                        env.pop();
                    }
                    Some(Guard::Singleton) => {
                        for i in 0..self.st.ground_size() {
                            env.push((v, 1u64 << i));
                            let hit = self.eval(body, env)?;
                            env.pop();
                            if hit {
                                found = true;
                                break;
                            }
                        }
                    }
                    None => {
                        let limit = 1u64 << self.st.ground_size();
                        for mask in 0..limit {
                            env.push((v, mask));
                            let hit = self.eval(body, env)?;
                            env.pop();
                            if hit {
                                found = true;
                                break;
                            }
                        }
                    }
                }
                found
            }
            Formula::Call(d, args) => {
                let def = lg.def(*d);
                if self.opts.intrinsics {
                    if let Some(intr) = def.intrinsic {
                        let val = self.eval_intrinsic(intr, args, env);
                        if let Some(key) = key {
                            self.stats.memo_entries += 1;
                            self.memo.insert(key, val);
                        }
                        return Ok(val);
                    }
                }
                let mut inner: Env = def
                    .params
                    .iter()
                    .zip(args.iter())
                    .map(|(p, a)| (*p, Self::lookup(env, *a)))
                    .collect();
                let body = def.body;
                self.eval(body, &mut inner)?
            }
        };
        if let Some(key) = key {
            self.stats.memo_entries += 1;
            self.memo.insert(key, out);
        }
        Ok(out)
    }

    fn eval_intrinsic(&self, intr: Intrinsic, args: &[VarId], env: &Env) -> bool {
        let full = full_mask(self.st.ground_size());
        let val = |i: usize| Self::lookup(env, args[i]);
        match intr {
            Intrinsic::True => true,
            Intrinsic::False => false,
            Intrinsic::Empty => val(0) == 0,
            Intrinsic::Sing => val(0).count_ones() == 1,
            Intrinsic::Union => val(2) == val(0) | val(1),
            Intrinsic::Intersection => val(2) == val(0) & val(1),
            Intrinsic::Disjoint => val(0) & val(1) == 0,
            Intrinsic::Bipartition => val(0) & val(1) == 0 && val(0) | val(1) == full,
        }
    }

    /// Detects `∃X (Sing[X] ∧ …)` and `∃X (Empty[X] ∧ …)` shapes, looking
    /// through double negations and the and-spine.
    fn exists_guard(&mut self, node: NodeId, v: VarId, body: NodeId) -> Option<Guard> {
        if !self.opts.singleton_guard {
            return None;
        }
        if let Some(&g) = self.guards.get(&node) {
            return g;
        }
        let mut found = None;
        for c in self.lg.conjuncts(body) {
            if let Formula::Call(d, args) = self.lg.node(c) {
                if args.len() == 1 && args[0] == v {
                    match self.lg.def(*d).intrinsic {
                        Some(Intrinsic::Sing) => {
                            found = Some(Guard::Singleton);
                            break;
                        }
                        Some(Intrinsic::Empty) => {
                            found = Some(Guard::EmptySet);
                            break;
                        }
                        _ => {}
                    }
                }
            }
        }
        self.guards.insert(node, found);
        found
    }
}

/// One-shot satisfaction check with default options.
pub fn satisfies(
    lg: &Logic,
    st: &SetSystem,
    theta: &Interpretation,
    f: NodeId,
) -> Result<bool, EvalError> {
    Evaluator::with_defaults(lg, st).satisfies(theta, f)
}

/// All tuples of subsets for `vars` (which must be exactly the free
/// variables of `f`) making the formula true. Brute force over
/// `(2^n)^|vars|` with a shared memo table.
pub fn satisfying_assignments(
    lg: &Logic,
    st: &SetSystem,
    f: NodeId,
    vars: &[VarId],
) -> Result<Vec<Vec<ElementSet>>, EvalError> {
    satisfying_assignments_opts(lg, st, f, vars, EvalOptions::default())
}

pub fn satisfying_assignments_opts(
    lg: &Logic,
    st: &SetSystem,
    f: NodeId,
    vars: &[VarId],
    opts: EvalOptions,
) -> Result<Vec<Vec<ElementSet>>, EvalError> {
    let free = lg.free_vars(f);
    let mut sorted: Vec<VarId> = vars.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != vars.len() || sorted != free {
        let names = |vs: &[VarId]| {
            vs.iter()
                .map(|v| lg.var_name(*v).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        return Err(EvalError::InterpretationMismatch(format!(
            "requested variables {{{}}} do not match free variables {{{}}}",
            names(vars),
            names(free)
        )));
    }
    let mut ev = Evaluator::new(lg, st, opts);
    let n = st.ground_size();
    let count = 1u64 << n;
    let k = vars.len();
    let mut out = Vec::new();
    let mut masks = vec![0u64; k];
    loop {
        let mut env: Env = vars.iter().copied().zip(masks.iter().copied()).collect();
        if ev.eval(f, &mut env)? {
            out.push(masks.iter().map(|&m| ElementSet::from_mask(m)).collect());
        }
        // odometer
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            masks[i] += 1;
            if masks[i] < count {
                break;
            }
            masks[i] = 0;
            i += 1;
        }
    }
}
