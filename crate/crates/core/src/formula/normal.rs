//! Negation normal form, the SUBF closure, and ∇ expansion.

use std::collections::HashMap;

use super::{dag_nodes, Formula, Node};
use crate::error::{Error, Result};

/// Push negations down to letters. Constants flip under negation and
/// double negations cancel; no other simplification is performed.
pub fn nnf(f: Formula) -> Result<Formula> {
    if !f.is_nabla_free() {
        return Err(Error::Precondition("nnf requires a nabla-free formula".into()));
    }
    let mut memo = HashMap::new();
    Ok(nnf_rec(f, true, &mut memo))
}

fn nnf_rec(f: Formula, pos: bool, memo: &mut HashMap<(Formula, bool), Formula>) -> Formula {
    if let Some(&g) = memo.get(&(f, pos)) {
        return g;
    }
    let g = match (f.node(), pos) {
        (Node::Prop(_), true) => f,
        (Node::Prop(_), false) => Formula::not(f),
        (Node::Top, true) | (Node::Bot, false) => Formula::top(),
        (Node::Top, false) | (Node::Bot, true) => Formula::bot(),
        (Node::Neg(a), _) => nnf_rec(a, !pos, memo),
        (Node::And(a, b), true) => Formula::and(nnf_rec(a, true, memo), nnf_rec(b, true, memo)),
        (Node::And(a, b), false) => Formula::or(nnf_rec(a, false, memo), nnf_rec(b, false, memo)),
        (Node::Or(a, b), true) => Formula::or(nnf_rec(a, true, memo), nnf_rec(b, true, memo)),
        (Node::Or(a, b), false) => Formula::and(nnf_rec(a, false, memo), nnf_rec(b, false, memo)),
        (Node::Diamond(a), true) => Formula::diamond(nnf_rec(a, true, memo)),
        (Node::Diamond(a), false) => Formula::boxed(nnf_rec(a, false, memo)),
        (Node::Box(a), true) => Formula::boxed(nnf_rec(a, true, memo)),
        (Node::Box(a), false) => Formula::diamond(nnf_rec(a, false, memo)),
        (Node::Nabla(_), _) => unreachable!("checked by caller"),
    };
    memo.insert((f, pos), g);
    g
}

/// True when negation occurs only directly on letters and there is no ∇.
pub fn is_nnf(f: Formula) -> bool {
    dag_nodes(&[f]).into_iter().all(|g| match g.node() {
        Node::Neg(a) => matches!(a.node(), Node::Prop(_)),
        Node::Nabla(_) => false,
        _ => true,
    })
}

/// The SUBF closure of an NNF formula, children before parents.
/// A negated letter contributes itself but not the letter.
pub fn subf(f: Formula) -> Result<Vec<Formula>> {
    if !is_nnf(f) {
        return Err(Error::Precondition(format!("subf requires NNF input, got {f}")));
    }
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    collect_subf(f, &mut out, &mut seen);
    Ok(out)
}

fn collect_subf(f: Formula, out: &mut Vec<Formula>, seen: &mut std::collections::HashSet<Formula>) {
    if seen.contains(&f) {
        return;
    }
    match f.node() {
        Node::Neg(_) | Node::Prop(_) | Node::Top | Node::Bot => {}
        Node::And(a, b) | Node::Or(a, b) => {
            collect_subf(a, out, seen);
            collect_subf(b, out, seen);
        }
        Node::Diamond(a) | Node::Box(a) => collect_subf(a, out, seen),
        Node::Nabla(_) => unreachable!("checked by caller"),
    }
    seen.insert(f);
    out.push(f);
}

/// Members of `subf(f)` of the form `p` or `~p`.
pub fn literals(f: Formula) -> Result<Vec<Formula>> {
    Ok(subf(f)?.into_iter().filter(|g| g.as_literal().is_some()).collect())
}

/// Replace every `nabla{..}` by `<>a & <>b & .. & [](a | b | ..)`; the empty
/// cover becomes `[]false`.
pub fn expand_nabla(f: Formula) -> Formula {
    let mut memo: HashMap<Formula, Formula> = HashMap::new();
    for g in dag_nodes(&[f]) {
        let m = |x: Formula| memo[&x];
        let h = match g.node() {
            Node::Prop(_) | Node::Top | Node::Bot => g,
            Node::Neg(a) => Formula::not(m(a)),
            Node::And(a, b) => Formula::and(m(a), m(b)),
            Node::Or(a, b) => Formula::or(m(a), m(b)),
            Node::Diamond(a) => Formula::diamond(m(a)),
            Node::Box(a) => Formula::boxed(m(a)),
            Node::Nabla(kids) => {
                let kids: Vec<Formula> = kids.iter().map(|&k| m(k)).collect();
                let body = Formula::boxed(kids.iter().copied().reduce(Formula::or).unwrap_or_else(Formula::bot));
                kids.iter()
                    .map(|&k| Formula::diamond(k))
                    .chain(std::iter::once(body))
                    .reduce(Formula::and)
                    .expect("nonempty")
            }
        };
        memo.insert(g, h);
    }
    memo[&f]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn nnf_examples() {
        assert_eq!(nnf(p("~<>p")).unwrap(), p("[]~p"));
        assert_eq!(nnf(p("~(p & q)")).unwrap(), p("~p | ~q"));
        assert_eq!(nnf(p("~false")).unwrap(), p("true"));
        assert_eq!(nnf(p("~~[]~~p")).unwrap(), p("[]p"));
        assert_eq!(nnf(p("p -> q")).unwrap(), p("~p | q"));
        assert!(nnf(p("nabla{p}")).is_err());
    }

    #[test]
    fn subf_examples() {
        let f = p("[]p & <>~q");
        let got: std::collections::HashSet<_> = subf(f).unwrap().into_iter().collect();
        let want: std::collections::HashSet<_> =
            ["p", "[]p", "~q", "<>~q", "[]p & <>~q"].iter().map(|s| p(s)).collect();
        assert_eq!(got, want);
        assert_eq!(subf(p("~p")).unwrap(), vec![p("~p")]);
        let lits: std::collections::HashSet<_> = literals(f).unwrap().into_iter().collect();
        assert_eq!(lits, [p("p"), p("~q")].into_iter().collect());
        assert!(subf(p("~[]p")).is_err());
    }

    #[test]
    fn expand_nabla_examples() {
        assert_eq!(expand_nabla(p("nabla{p}")), p("<>p & []p"));
        assert_eq!(expand_nabla(p("nabla{}")), p("[]false"));
        // fresh letters so that interning order, and hence child order, is fixed
        assert_eq!(
            expand_nabla(p("nabla{xen_a, xen_b}")),
            p("<>xen_a & <>xen_b & [](xen_a | xen_b)")
        );
        assert_eq!(expand_nabla(p("r | nabla{nabla{}}")), p("r | <>[]false & [][]false"));
    }
}
