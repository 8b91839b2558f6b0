//! The CMS₀ formula language.
//!
//! Formulas are built from the atoms `indep X`, `X ⊆ Y`, `|X|_{p,q}` (the
//! cardinality-congruence atom, requiring `p < q`), and the built-in
//! `matroid` atom, closed under negation, binary conjunction, and
//! existential set quantification. Everything else — disjunction,
//! implication, universal quantification, equality — is shorthand and is
//! expanded at construction time. A formula with no `card` atoms is MS₀.
//!
//! Two side conditions from the grammar are enforced by the constructors:
//! `∃X φ` requires `X` free in `φ`, and in `φ₁ ∧ φ₂` no variable may be
//! free in one conjunct and bound in the other (bound variables are
//! renamed automatically when this would be violated). Consequently no
//! variable is ever both free and bound in the same formula.
//!
//! Formulas live in a [`Logic`] arena and are hash-consed: equal formulas
//! get equal [`NodeId`]s, which the evaluator uses as memo keys. Named
//! definitions (`(def Name (params) body)`) are kept in the same arena;
//! `call` nodes are evaluated by rebinding the parameters, so a
//! definition's memo entries are shared across call sites.

mod eval;
mod naive;
mod parse;
mod print;

pub use eval::{
    satisfies, satisfying_assignments, EvalError, EvalOptions, EvalStats, Evaluator,
    DEFAULT_BUDGET,
};
pub use naive::naive_satisfies;
pub use parse::{parse_defs, parse_formula, ParseError};

use smallvec::SmallVec;
use std::collections::{BTreeMap, HashMap, HashSet};
use thiserror::Error;

use crate::setsystem::ElementSet;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VarId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DefId(pub u32);

type VarList = SmallVec<[VarId; 4]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Indep(VarId),
    Sub(VarId, VarId),
    Card(VarId, u32, u32),
    MatroidAtom,
    Not(NodeId),
    And(NodeId, NodeId),
    Exists(VarId, NodeId),
    Call(DefId, Vec<VarId>),
}

/// Built-in evaluation shortcuts for a handful of prelude definitions.
/// Equivalence with the quantified bodies is a standing test obligation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Intrinsic {
    True,
    False,
    Empty,
    Sing,
    Union,
    Intersection,
    Disjoint,
    Bipartition,
}

#[derive(Clone, Debug)]
pub struct Definition {
    pub name: String,
    pub params: Vec<VarId>,
    pub body: NodeId,
    pub intrinsic: Option<Intrinsic>,
}

#[derive(Debug, Error)]
pub enum LogicError {
    #[error("cardinality atom requires p < q, got p={p}, q={q}")]
    CardModulus { p: u32, q: u32 },
    #[error("cannot bind {0}: not a free variable of the body")]
    BindNonFree(String),
    #[error("unknown definition {0}")]
    UnknownDef(String),
    #[error("definition {0} already exists")]
    DuplicateDef(String),
    #[error("{name} expects {expected} arguments, got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("definition {def}: body has free variable {var} not among the parameters")]
    ParamNotCovering { def: String, var: String },
    #[error("definition {def}: parameter {var} is bound in the body")]
    ParamBound { def: String, var: String },
    #[error("cannot rename {0}: not free in the formula")]
    RenameNotFree(String),
}

/// Arena holding variables, formulas, and definitions.
pub struct Logic {
    var_names: Vec<String>,
    var_index: HashMap<String, VarId>,
    nodes: Vec<Formula>,
    intern: HashMap<Formula, NodeId>,
    free: Vec<VarList>,
    bound: Vec<VarList>,
    uses_card: Vec<bool>,
    cost: Vec<u64>,
    defs: Vec<Definition>,
    def_index: HashMap<String, DefId>,
    fresh_counter: u64,
}

impl Default for Logic {
    fn default() -> Self {
        Self::new()
    }
}

impl Logic {
    /// An arena with only the built-in `True` and `False` definitions.
    pub fn new() -> Logic {
        let mut lg = Logic {
            var_names: Vec::new(),
            var_index: HashMap::new(),
            nodes: Vec::new(),
            intern: HashMap::new(),
            free: Vec::new(),
            bound: Vec::new(),
            uses_card: Vec::new(),
            cost: Vec::new(),
            defs: Vec::new(),
            def_index: HashMap::new(),
            fresh_counter: 0,
        };
        // True := ∀Z (Z ⊆ Z); False := ¬True
        let z = lg.var("_TZ");
        let triv = lg.sub(z, z);
        let t_body = lg.forall(z, triv).unwrap();
        let t = lg
            .define_with_intrinsic("True", vec![], t_body, Some(Intrinsic::True))
            .unwrap();
        let t_call = lg.call(t, vec![]).unwrap();
        let f_body = lg.not(t_call);
        lg.define_with_intrinsic("False", vec![], f_body, Some(Intrinsic::False))
            .unwrap();
        lg
    }

    // -- variables ---------------------------------------------------------

    pub fn var(&mut self, name: &str) -> VarId {
        if let Some(&v) = self.var_index.get(name) {
            return v;
        }
        let v = VarId(self.var_names.len() as u32);
        self.var_names.push(name.to_string());
        self.var_index.insert(name.to_string(), v);
        v
    }

    pub fn var_name(&self, v: VarId) -> &str {
        &self.var_names[v.0 as usize]
    }

    pub fn fresh_var(&mut self, base: &str) -> VarId {
        // strip an existing freshness suffix so names do not snowball
        let stem = match base.rfind("_f") {
            Some(i) if i > 0 && base[i + 2..].chars().all(|c| c.is_ascii_digit()) => &base[..i],
            _ => base,
        };
        loop {
            self.fresh_counter += 1;
            let name = format!("{}_f{}", stem, self.fresh_counter);
            if !self.var_index.contains_key(&name) {
                return self.var(&name);
            }
        }
    }

    // -- node access -------------------------------------------------------

    pub fn node(&self, id: NodeId) -> &Formula {
        &self.nodes[id.0 as usize]
    }

    pub fn free_vars(&self, id: NodeId) -> &[VarId] {
        &self.free[id.0 as usize]
    }

    pub fn bound_vars(&self, id: NodeId) -> &[VarId] {
        &self.bound[id.0 as usize]
    }

    pub fn uses_card(&self, id: NodeId) -> bool {
        self.uses_card[id.0 as usize]
    }

    pub fn cost(&self, id: NodeId) -> u64 {
        self.cost[id.0 as usize]
    }

    pub fn def(&self, d: DefId) -> &Definition {
        &self.defs[d.0 as usize]
    }

    pub fn lookup_def(&self, name: &str) -> Option<DefId> {
        self.def_index.get(name).copied()
    }

    pub fn def_count(&self) -> usize {
        self.defs.len()
    }

    pub fn defs(&self) -> impl Iterator<Item = (DefId, &Definition)> {
        self.defs
            .iter()
            .enumerate()
            .map(|(i, d)| (DefId(i as u32), d))
    }

    fn intern(&mut self, f: Formula) -> NodeId {
        if let Some(&id) = self.intern.get(&f) {
            return id;
        }
        let (free, bound, card, cost) = self.analyze(&f);
        debug_assert!(
            free.iter().all(|v| !bound.contains(v)),
            "variable both free and bound"
        );
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(f.clone());
        self.intern.insert(f, id);
        self.free.push(free);
        self.bound.push(bound);
        self.uses_card.push(card);
        self.cost.push(cost);
        id
    }

    fn analyze(&self, f: &Formula) -> (VarList, VarList, bool, u64) {
        fn merge(a: &[VarId], b: &[VarId]) -> VarList {
            let mut out: VarList = a.iter().copied().collect();
            for v in b {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            out.sort_unstable();
            out
        }
        match f {
            Formula::Indep(v) => (SmallVec::from_slice(&[*v]), SmallVec::new(), false, 1),
            Formula::Sub(a, b) => (merge(&[*a], &[*b]), SmallVec::new(), false, 1),
            Formula::Card(v, _, _) => (SmallVec::from_slice(&[*v]), SmallVec::new(), true, 1),
            Formula::MatroidAtom => (SmallVec::new(), SmallVec::new(), false, 2),
            Formula::Not(x) => (
                self.free[x.0 as usize].clone(),
                self.bound[x.0 as usize].clone(),
                self.uses_card[x.0 as usize],
                self.cost[x.0 as usize].saturating_add(1),
            ),
            Formula::And(a, b) => (
                merge(&self.free[a.0 as usize], &self.free[b.0 as usize]),
                merge(&self.bound[a.0 as usize], &self.bound[b.0 as usize]),
                self.uses_card[a.0 as usize] || self.uses_card[b.0 as usize],
                self.cost[a.0 as usize]
                    .saturating_add(self.cost[b.0 as usize])
                    .saturating_add(1),
            ),
            Formula::Exists(v, x) => {
                let mut free = self.free[x.0 as usize].clone();
                free.retain(|u| u != v);
                let bound = merge(&self.bound[x.0 as usize], &[*v]);
                (
                    free,
                    bound,
                    self.uses_card[x.0 as usize],
                    self.cost[x.0 as usize].saturating_mul(8).saturating_add(1),
                )
            }
            Formula::Call(d, args) => {
                let def = &self.defs[d.0 as usize];
                let mut free: VarList = SmallVec::new();
                for a in args {
                    if !free.contains(a) {
                        free.push(*a);
                    }
                }
                free.sort_unstable();
                (
                    free,
                    SmallVec::new(),
                    self.uses_card[def.body.0 as usize],
                    self.cost[def.body.0 as usize].saturating_add(1),
                )
            }
        }
    }

    // -- constructors ------------------------------------------------------

    pub fn indep(&mut self, v: VarId) -> NodeId {
        self.intern(Formula::Indep(v))
    }

    pub fn sub(&mut self, a: VarId, b: VarId) -> NodeId {
        self.intern(Formula::Sub(a, b))
    }

    pub fn card(&mut self, v: VarId, p: u32, q: u32) -> Result<NodeId, LogicError> {
        if p >= q {
            return Err(LogicError::CardModulus { p, q });
        }
        Ok(self.intern(Formula::Card(v, p, q)))
    }

    pub fn matroid_atom(&mut self) -> NodeId {
        self.intern(Formula::MatroidAtom)
    }

    pub fn not(&mut self, x: NodeId) -> NodeId {
        self.intern(Formula::Not(x))
    }

    /// Conjunction. If a variable is free in one side and bound in the
    /// other, the bound occurrences are renamed first.
    pub fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let clash_b: Vec<VarId> = self
            .free_vars(a)
            .iter()
            .copied()
            .filter(|v| self.bound_vars(b).contains(v))
            .collect();
        let b = if clash_b.is_empty() {
            b
        } else {
            self.freshen_bound(b, &clash_b)
        };
        let clash_a: Vec<VarId> = self
            .free_vars(b)
            .iter()
            .copied()
            .filter(|v| self.bound_vars(a).contains(v))
            .collect();
        let a = if clash_a.is_empty() {
            a
        } else {
            self.freshen_bound(a, &clash_a)
        };
        self.intern(Formula::And(a, b))
    }

    pub fn exists(&mut self, v: VarId, body: NodeId) -> Result<NodeId, LogicError> {
        if !self.free_vars(body).contains(&v) {
            return Err(LogicError::BindNonFree(self.var_name(v).to_string()));
        }
        Ok(self.intern(Formula::Exists(v, body)))
    }

    pub fn call(&mut self, d: DefId, args: Vec<VarId>) -> Result<NodeId, LogicError> {
        let def = &self.defs[d.0 as usize];
        if def.params.len() != args.len() {
            return Err(LogicError::ArityMismatch {
                name: def.name.clone(),
                expected: def.params.len(),
                got: args.len(),
            });
        }
        Ok(self.intern(Formula::Call(d, args)))
    }

    pub fn call_named(&mut self, name: &str, args: Vec<VarId>) -> Result<NodeId, LogicError> {
        let d = self
            .lookup_def(name)
            .ok_or_else(|| LogicError::UnknownDef(name.to_string()))?;
        self.call(d, args)
    }

    pub fn define(
        &mut self,
        name: &str,
        params: Vec<VarId>,
        body: NodeId,
    ) -> Result<DefId, LogicError> {
        self.define_with_intrinsic(name, params, body, None)
    }

    pub fn define_with_intrinsic(
        &mut self,
        name: &str,
        params: Vec<VarId>,
        body: NodeId,
        intrinsic: Option<Intrinsic>,
    ) -> Result<DefId, LogicError> {
        if self.def_index.contains_key(name) {
            return Err(LogicError::DuplicateDef(name.to_string()));
        }
        for v in self.free_vars(body) {
            if !params.contains(v) {
                return Err(LogicError::ParamNotCovering {
                    def: name.to_string(),
                    var: self.var_name(*v).to_string(),
                });
            }
        }
        for p in &params {
            if self.bound_vars(body).contains(p) {
                return Err(LogicError::ParamBound {
                    def: name.to_string(),
                    var: self.var_name(*p).to_string(),
                });
            }
        }
        let d = DefId(self.defs.len() as u32);
        self.defs.push(Definition {
            name: name.to_string(),
            params,
            body,
            intrinsic,
        });
        self.def_index.insert(name.to_string(), d);
        Ok(d)
    }

    /// Registers a definition under a unique name derived from `base`.
    pub fn define_fresh(
        &mut self,
        base: &str,
        params: Vec<VarId>,
        body: NodeId,
    ) -> Result<DefId, LogicError> {
        if !self.def_index.contains_key(base) {
            return self.define(base, params, body);
        }
        let mut k = 2u64;
        loop {
            let name = format!("{}_{}", base, k);
            if !self.def_index.contains_key(&name) {
                return self.define(&name, params, body);
            }
            k += 1;
        }
    }

    // -- shorthand ---------------------------------------------------------

    pub fn tru(&mut self) -> NodeId {
        let d = self.lookup_def("True").unwrap();
        self.call(d, vec![]).unwrap()
    }

    pub fn fls(&mut self) -> NodeId {
        let d = self.lookup_def("False").unwrap();
        self.call(d, vec![]).unwrap()
    }

    pub fn or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let na = self.not(a);
        let nb = self.not(b);
        let conj = self.and(na, nb);
        self.not(conj)
    }

    pub fn imp(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let na = self.not(a);
        self.or(na, b)
    }

    pub fn iff(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let ab = self.imp(a, b);
        let ba = self.imp(b, a);
        self.and(ab, ba)
    }

    pub fn forall(&mut self, v: VarId, body: NodeId) -> Result<NodeId, LogicError> {
        let nb = self.not(body);
        let ex = self.exists(v, nb)?;
        Ok(self.not(ex))
    }

    pub fn eq(&mut self, a: VarId, b: VarId) -> NodeId {
        let ab = self.sub(a, b);
        let ba = self.sub(b, a);
        self.and(ab, ba)
    }

    pub fn neq(&mut self, a: VarId, b: VarId) -> NodeId {
        let e = self.eq(a, b);
        self.not(e)
    }

    pub fn nsub(&mut self, a: VarId, b: VarId) -> NodeId {
        let s = self.sub(a, b);
        self.not(s)
    }

    /// Left-associated conjunction; the empty conjunction is `True`.
    pub fn and_all<I: IntoIterator<Item = NodeId>>(&mut self, items: I) -> NodeId {
        let mut it = items.into_iter();
        match it.next() {
            None => self.tru(),
            Some(first) => it.fold(first, |acc, x| self.and(acc, x)),
        }
    }

    /// Left-associated disjunction; the empty disjunction is `False`.
    pub fn or_all<I: IntoIterator<Item = NodeId>>(&mut self, items: I) -> NodeId {
        let mut it = items.into_iter();
        match it.next() {
            None => self.fls(),
            Some(first) => it.fold(first, |acc, x| self.or(acc, x)),
        }
    }

    pub fn exists_all(&mut self, vars: &[VarId], body: NodeId) -> Result<NodeId, LogicError> {
        let mut out = body;
        for v in vars.iter().rev() {
            out = self.exists(*v, out)?;
        }
        Ok(out)
    }

    pub fn forall_all(&mut self, vars: &[VarId], body: NodeId) -> Result<NodeId, LogicError> {
        let mut out = body;
        for v in vars.iter().rev() {
            out = self.forall(*v, out)?;
        }
        Ok(out)
    }

    // -- renaming and substitution ------------------------------------------

    /// Renames bound occurrences of the listed variables to fresh ones.
    pub fn freshen_bound(&mut self, node: NodeId, targets: &[VarId]) -> NodeId {
        let targets: HashSet<VarId> = targets.iter().copied().collect();
        let mut subst: HashMap<VarId, VarId> = HashMap::new();
        self.rewrite_binders(node, &targets, &mut subst)
    }

    fn rewrite_binders(
        &mut self,
        node: NodeId,
        targets: &HashSet<VarId>,
        subst: &mut HashMap<VarId, VarId>,
    ) -> NodeId {
        if self.bound_vars(node).iter().all(|v| !targets.contains(v))
            && self.free_vars(node).iter().all(|v| !subst.contains_key(v))
        {
            return node;
        }
        let f = self.node(node).clone();
        match f {
            Formula::Indep(v) => {
                let v = *subst.get(&v).unwrap_or(&v);
                self.indep(v)
            }
            Formula::Sub(a, b) => {
                let a = *subst.get(&a).unwrap_or(&a);
                let b = *subst.get(&b).unwrap_or(&b);
                self.sub(a, b)
            }
            Formula::Card(v, p, q) => {
                let v = *subst.get(&v).unwrap_or(&v);
                self.intern(Formula::Card(v, p, q))
            }
            Formula::MatroidAtom => node,
            Formula::Not(x) => {
                let x = self.rewrite_binders(x, targets, subst);
                self.not(x)
            }
            Formula::And(a, b) => {
                let a = self.rewrite_binders(a, targets, subst);
                let b = self.rewrite_binders(b, targets, subst);
                self.intern(Formula::And(a, b))
            }
            Formula::Exists(v, x) => {
                debug_assert!(!subst.contains_key(&v), "shadowed binder");
                if targets.contains(&v) {
                    let name = self.var_name(v).to_string();
                    let fresh = self.fresh_var(&name);
                    subst.insert(v, fresh);
                    let x = self.rewrite_binders(x, targets, subst);
                    subst.remove(&v);
                    self.intern(Formula::Exists(fresh, x))
                } else {
                    let x = self.rewrite_binders(x, targets, subst);
                    self.intern(Formula::Exists(v, x))
                }
            }
            Formula::Call(d, args) => {
                let args = args.iter().map(|a| *subst.get(a).unwrap_or(a)).collect();
                self.intern(Formula::Call(d, args))
            }
        }
    }

    /// Simultaneous substitution of free variables. The caller must ensure
    /// no substitution target is bound in the formula (freshen first).
    fn substitute_free(&mut self, node: NodeId, map: &HashMap<VarId, VarId>) -> NodeId {
        if self.free_vars(node).iter().all(|v| !map.contains_key(v)) {
            return node;
        }
        let f = self.node(node).clone();
        match f {
            Formula::Indep(v) => {
                let v = *map.get(&v).unwrap_or(&v);
                self.indep(v)
            }
            Formula::Sub(a, b) => {
                let a = *map.get(&a).unwrap_or(&a);
                let b = *map.get(&b).unwrap_or(&b);
                self.sub(a, b)
            }
            Formula::Card(v, p, q) => {
                let v = *map.get(&v).unwrap_or(&v);
                self.intern(Formula::Card(v, p, q))
            }
            Formula::MatroidAtom => node,
            Formula::Not(x) => {
                let x = self.substitute_free(x, map);
                self.not(x)
            }
            Formula::And(a, b) => {
                let a = self.substitute_free(a, map);
                let b = self.substitute_free(b, map);
                self.intern(Formula::And(a, b))
            }
            Formula::Exists(v, x) => {
                debug_assert!(!map.contains_key(&v), "substitution target is bound");
                let x = self.substitute_free(x, map);
                self.intern(Formula::Exists(v, x))
            }
            Formula::Call(d, args) => {
                let args = args.iter().map(|a| *map.get(a).unwrap_or(a)).collect();
                self.intern(Formula::Call(d, args))
            }
        }
    }

    /// `φ[X ⇀ Z]`: replaces every free occurrence of `from` with `to`,
    /// freshening any binder that would capture `to`.
    pub fn rename(&mut self, node: NodeId, from: VarId, to: VarId) -> Result<NodeId, LogicError> {
        if !self.free_vars(node).contains(&from) {
            return Err(LogicError::RenameNotFree(self.var_name(from).to_string()));
        }
        Ok(self.rename_unchecked(node, from, to))
    }

    pub fn rename_unchecked(&mut self, node: NodeId, from: VarId, to: VarId) -> NodeId {
        if from == to {
            return node;
        }
        let node = if self.bound_vars(node).contains(&to) {
            self.freshen_bound(node, &[to])
        } else {
            node
        };
        let mut map = HashMap::new();
        map.insert(from, to);
        self.substitute_free(node, &map)
    }

    /// Simultaneous renaming of several free variables.
    pub fn rename_many(&mut self, node: NodeId, pairs: &[(VarId, VarId)]) -> NodeId {
        let targets: Vec<VarId> = pairs
            .iter()
            .map(|(_, to)| *to)
            .filter(|to| self.bound_vars(node).contains(to))
            .collect();
        let node = if targets.is_empty() {
            node
        } else {
            self.freshen_bound(node, &targets)
        };
        let map: HashMap<VarId, VarId> = pairs.iter().copied().collect();
        self.substitute_free(node, &map)
    }

    /// Replaces a `call` node by the definition body with arguments
    /// substituted (bound variables freshened as needed).
    pub fn inline_call(&mut self, node: NodeId) -> NodeId {
        let Formula::Call(d, args) = self.node(node).clone() else {
            return node;
        };
        let def = self.def(d).clone();
        let clash: Vec<VarId> = self
            .bound_vars(def.body)
            .iter()
            .copied()
            .filter(|v| args.contains(v))
            .collect();
        let body = if clash.is_empty() {
            def.body
        } else {
            self.freshen_bound(def.body, &clash)
        };
        let map: HashMap<VarId, VarId> = def.params.iter().copied().zip(args).collect();
        self.substitute_free(body, &map)
    }

    /// Fully expands every `call` in the formula.
    pub fn inline_all(&mut self, node: NodeId) -> NodeId {
        let f = self.node(node).clone();
        match f {
            Formula::Call(..) => {
                let inlined = self.inline_call(node);
                self.inline_all(inlined)
            }
            Formula::Not(x) => {
                let x = self.inline_all(x);
                self.not(x)
            }
            Formula::And(a, b) => {
                let a = self.inline_all(a);
                let b = self.inline_all(b);
                self.intern(Formula::And(a, b))
            }
            Formula::Exists(v, x) => {
                let x = self.inline_all(x);
                self.intern(Formula::Exists(v, x))
            }
            _ => node,
        }
    }

    /// Conjuncts of the and-spine after stripping double negations.
    pub fn conjuncts(&self, node: NodeId) -> Vec<NodeId> {
        fn strip(lg: &Logic, mut n: NodeId) -> NodeId {
            while let Formula::Not(inner) = lg.node(n) {
                if let Formula::Not(x) = lg.node(*inner) {
                    n = *x;
                } else {
                    break;
                }
            }
            n
        }
        let mut out = Vec::new();
        let mut stack = vec![strip(self, node)];
        while let Some(n) = stack.pop() {
            match self.node(n) {
                Formula::And(a, b) => {
                    stack.push(strip(self, *b));
                    stack.push(strip(self, *a));
                }
                _ => out.push(n),
            }
        }
        out
    }
}

/// A finite assignment of ground-set subsets to variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation {
    map: BTreeMap<VarId, ElementSet>,
}

impl Interpretation {
    pub fn new() -> Self {
        Interpretation {
            map: BTreeMap::new(),
        }
    }

    pub fn bind(mut self, v: VarId, s: ElementSet) -> Self {
        self.map.insert(v, s);
        self
    }

    pub fn insert(&mut self, v: VarId, s: ElementSet) {
        self.map.insert(v, s);
    }

    pub fn get(&self, v: VarId) -> Option<ElementSet> {
        self.map.get(&v).copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = VarId> + '_ {
        self.map.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, ElementSet)> + '_ {
        self.map.iter().map(|(v, s)| (*v, *s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::Matroid;

    #[test]
    fn free_vars_follow_the_recursion() {
        let mut lg = Logic::new();
        let x = lg.var("X");
        let y = lg.var("Y");
        let sub = lg.sub(x, y);
        assert_eq!(lg.free_vars(sub), &[x, y]);

        let ix = lg.indep(x);
        let ex = lg.exists(x, ix).unwrap();
        assert!(lg.free_vars(ex).is_empty());

        let sub_xy = lg.sub(x, y);
        let inner = lg.exists(y, sub_xy).unwrap();
        let conj = lg.and(ix, inner);
        assert_eq!(lg.free_vars(conj), &[x]);
    }

    #[test]
    fn card_requires_p_less_than_q() {
        let mut lg = Logic::new();
        let x = lg.var("X");
        assert!(lg.card(x, 1, 2).is_ok());
        assert!(lg.card(x, 2, 2).is_err());
    }

    #[test]
    fn exists_requires_free_variable() {
        let mut lg = Logic::new();
        let x = lg.var("X");
        let y = lg.var("Y");
        let ix = lg.indep(x);
        let _ = x;
        assert!(lg.exists(y, ix).is_err());
    }

    #[test]
    fn and_renames_clashing_bound_variables() {
        let mut lg = Logic::new();
        let x = lg.var("X");
        let y = lg.var("Y");
        // a = Indep(Y); b = ∃Y (X ⊆ Y): Y free in a, bound in b
        let a = lg.indep(y);
        let sub = lg.sub(x, y);
        let b = lg.exists(y, sub).unwrap();
        let conj = lg.and(a, b);
        assert!(lg.free_vars(conj).contains(&y));
        assert!(!lg.bound_vars(conj).contains(&y));
    }

    #[test]
    fn rename_simple_cases() {
        let mut lg = Logic::new();
        let x = lg.var("X");
        let y = lg.var("Y");
        let w = lg.var("W");
        let z = lg.var("Z");

        let ix = lg.indep(x);
        let iz = lg.indep(z);
        assert_eq!(lg.rename(ix, x, z).unwrap(), iz);

        let sxy = lg.sub(x, y);
        let sxw = lg.sub(x, w);
        assert_eq!(lg.rename(sxy, y, w).unwrap(), sxw);

        assert!(lg.rename(ix, y, w).is_err());
    }

    #[test]
    fn rename_avoids_capture() {
        // (∃Z X ⊆ Z)[X ⇀ Z] must introduce a fresh binder; checked
        // semantically over every interpretation at n = 2.
        let mut lg = Logic::new();
        let x = lg.var("X");
        let z = lg.var("Z");
        let sub = lg.sub(x, z);
        let f = lg.exists(z, sub).unwrap();
        let renamed = lg.rename(f, x, z).unwrap();
        assert!(!lg.free_vars(renamed).is_empty());

        let m = Matroid::uniform(1, 2);
        for mask in 0..4u64 {
            let th_old = Interpretation::new().bind(x, ElementSet::from_mask(mask));
            let th_new = Interpretation::new().bind(z, ElementSet::from_mask(mask));
            let a = satisfies(&lg, m.as_set_system(), &th_old, f).unwrap();
            let b = satisfies(&lg, m.as_set_system(), &th_new, renamed).unwrap();
            assert_eq!(a, b, "capture-avoidance broken at X={:04b}", mask);
        }
    }

    #[test]
    fn call_inlining_is_semantically_neutral() {
        let mut lg = Logic::new();
        let x = lg.var("X");
        let w = lg.var("W");
        // NotIn(X, W) := ¬(X ⊆ W), called with swapped arguments
        let sub = lg.sub(x, w);
        let body = lg.not(sub);
        let d = lg.define("NotIn", vec![x, w], body).unwrap();
        let call = lg.call(d, vec![w, x]).unwrap();
        let inlined = lg.inline_call(call);
        let m = Matroid::uniform(2, 3);
        for a in 0..8u64 {
            for b in 0..8u64 {
                let th = Interpretation::new()
                    .bind(x, ElementSet::from_mask(a))
                    .bind(w, ElementSet::from_mask(b));
                let lhs = satisfies(&lg, m.as_set_system(), &th, call).unwrap();
                let rhs = satisfies(&lg, m.as_set_system(), &th, inlined).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
