//! Cache-free reference evaluator.
//!
//! Plain recursion with no memo table, no intrinsic shortcuts, and no
//! quantifier guards; an existential always tries all `2^n` subsets. Kept
//! deliberately separate from [`super::eval`] so the two can be compared
//! on sweeps.

use super::{Formula, Interpretation, Logic, NodeId, VarId};
use crate::setsystem::{ElementSet, SetSystem};

pub fn naive_satisfies(lg: &Logic, st: &SetSystem, theta: &Interpretation, f: NodeId) -> bool {
    let mut env: Vec<(VarId, u64)> = theta.iter().map(|(v, s)| (v, s.mask())).collect();
    go(lg, st, f, &mut env)
}

fn lookup(env: &[(VarId, u64)], v: VarId) -> u64 {
    for &(u, val) in env.iter().rev() {
        if u == v {
            return val;
        }
    }
    unreachable!("unbound variable")
}

fn go(lg: &Logic, st: &SetSystem, f: NodeId, env: &mut Vec<(VarId, u64)>) -> bool {
    match lg.node(f) {
        Formula::Indep(v) => st.is_independent(ElementSet::from_mask(lookup(env, *v))),
        Formula::Sub(a, b) => lookup(env, *a) & !lookup(env, *b) == 0,
        Formula::Card(v, p, q) => lookup(env, *v).count_ones() % q == p % q,
        Formula::MatroidAtom => st.is_matroid(),
        Formula::Not(x) => !go(lg, st, *x, env),
        Formula::And(a, b) => go(lg, st, *a, env) && go(lg, st, *b, env),
        Formula::Exists(v, body) => {
            let limit = 1u64 << st.ground_size();
            for mask in 0..limit {
                env.push((*v, mask));
                let hit = go(lg, st, *body, env);
                env.pop();
                if hit {
                    return true;
                }
            }
            false
        }
        Formula::Call(d, args) => {
            let def = lg.def(*d);
            let mut inner: Vec<(VarId, u64)> = def
                .params
                .iter()
                .zip(args.iter())
                .map(|(p, a)| (*p, lookup(env, *a)))
                .collect();
            go(lg, st, def.body, &mut inner)
        }
    }
}
