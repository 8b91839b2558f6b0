//! Printing formulas back to the DSL.
//!
//! Output uses core forms only (`not`/`and`/`ex`/`call`/atoms), so
//! `parse(print(f))` reconstructs the identical tree.

use super::{Formula, Logic, NodeId};
use std::fmt::Write;

impl Logic {
    pub fn to_dsl(&self, f: NodeId) -> String {
        let mut out = String::new();
        self.write_dsl(&mut out, f);
        out
    }

    fn write_dsl(&self, out: &mut String, f: NodeId) {
        match self.node(f) {
            Formula::Indep(v) => {
                let _ = write!(out, "(indep {})", self.var_name(*v));
            }
            Formula::Sub(a, b) => {
                let _ = write!(out, "(sub {} {})", self.var_name(*a), self.var_name(*b));
            }
            Formula::Card(v, p, q) => {
                let _ = write!(out, "(card {} {} {})", self.var_name(*v), p, q);
            }
            Formula::MatroidAtom => out.push_str("(matroid)"),
            Formula::Not(x) => {
                out.push_str("(not ");
                self.write_dsl(out, *x);
                out.push(')');
            }
            Formula::And(a, b) => {
                out.push_str("(and ");
                self.write_dsl(out, *a);
                out.push(' ');
                self.write_dsl(out, *b);
                out.push(')');
            }
            Formula::Exists(v, x) => {
                let _ = write!(out, "(ex {} ", self.var_name(*v));
                self.write_dsl(out, *x);
                out.push(')');
            }
            Formula::Call(d, args) => {
                let _ = write!(out, "(call {}", self.def(*d).name);
                for a in args {
                    let _ = write!(out, " {}", self.var_name(*a));
                }
                out.push(')');
            }
        }
    }

    pub fn def_to_dsl(&self, d: super::DefId) -> String {
        let def = self.def(d);
        let params = def
            .params
            .iter()
            .map(|p| self.var_name(*p))
            .collect::<Vec<_>>()
            .join(" ");
        format!("(def {} ({}) {})", def.name, params, self.to_dsl(def.body))
    }

    /// The formula plus every definition it (transitively) calls, in
    /// definition order, as parseable DSL text.
    pub fn to_dsl_with_defs(&self, f: NodeId) -> String {
        let mut needed = vec![false; self.def_count()];
        let mut stack = vec![f];
        let mut seen_nodes = std::collections::HashSet::new();
        while let Some(n) = stack.pop() {
            if !seen_nodes.insert(n) {
                continue;
            }
            match self.node(n) {
                Formula::Not(x) | Formula::Exists(_, x) => stack.push(*x),
                Formula::And(a, b) => {
                    stack.push(*a);
                    stack.push(*b);
                }
                Formula::Call(d, _) => {
                    if !needed[d.0 as usize] {
                        needed[d.0 as usize] = true;
                        stack.push(self.def(*d).body);
                    }
                }
                _ => {}
            }
        }
        let mut out = String::new();
        for (d, _) in self.defs() {
            if needed[d.0 as usize] {
                out.push_str(&self.def_to_dsl(d));
                out.push('\n');
            }
        }
        out.push_str(&self.to_dsl(f));
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_formula, Logic};

    #[test]
    fn print_parse_round_trip() {
        let mut lg = Logic::new();
        let texts = [
            "(and (indep X) (not (sub X Y)))",
            "(ex X (and (indep X) (card X 0 2)))",
            "(all W (imp (sub W X) (indep W)))",
            "(matroid)",
        ];
        for t in texts {
            let f = parse_formula(&mut lg, t).unwrap();
            let printed = lg.to_dsl(f);
            let back = parse_formula(&mut lg, &printed).unwrap();
            assert_eq!(f, back, "round trip failed for {}", t);
        }
    }

    #[test]
    fn defs_emitted_in_dependency_order() {
        let mut lg = Logic::new();
        super::super::parse_defs(
            &mut lg,
            "(def A (X) (indep X)) (def B (X) (and (call A X) (not (call A X))))",
        )
        .unwrap();
        let f = parse_formula(&mut lg, "(ex X (call B X))").unwrap();
        let text = lg.to_dsl_with_defs(f);
        let mut fresh = Logic::new();
        let back = parse_formula(&mut fresh, &text).unwrap();
        assert_eq!(fresh.to_dsl(back), lg.to_dsl(f));
    }
}
