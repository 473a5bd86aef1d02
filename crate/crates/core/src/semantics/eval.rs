use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::KripkeModel;
use crate::error::{Error, Result};
use crate::formula::{dag_nodes, Formula, Node};

/// Truth sets of every node of `f`, computed bottom-up once per node.
pub fn truth_sets(m: &KripkeModel, roots: &[Formula]) -> HashMap<Formula, FixedBitSet> {
    let n = m.len();
    let mut memo: HashMap<Formula, FixedBitSet> = HashMap::new();
    for g in dag_nodes(roots) {
        let mut set = FixedBitSet::with_capacity(n);
        match g.node() {
            Node::Prop(name) => {
                if let Some(ws) = m.valuation().get(&*name) {
                    for &w in ws {
                        set.insert(w);
                    }
                }
            }
            Node::Top => set.insert_range(..),
            Node::Bot => {}
            Node::Neg(a) => {
                set.insert_range(..);
                set.difference_with(&memo[&a]);
            }
            Node::And(a, b) => {
                set.union_with(&memo[&a]);
                set.intersect_with(&memo[&b]);
            }
            Node::Or(a, b) => {
                set.union_with(&memo[&a]);
                set.union_with(&memo[&b]);
            }
            Node::Diamond(a) => {
                let inner = &memo[&a];
                for w in 0..n {
                    set.set(w, m.successors(w).iter().any(|&v| inner.contains(v)));
                }
            }
            Node::Box(a) => {
                let inner = &memo[&a];
                for w in 0..n {
                    set.set(w, m.successors(w).iter().all(|&v| inner.contains(v)));
                }
            }
            Node::Nabla(kids) => {
                let sets: Vec<&FixedBitSet> = kids.iter().map(|k| &memo[k]).collect();
                for w in 0..n {
                    let succ = m.successors(w);
                    let covered = sets.iter().all(|s| succ.iter().any(|&v| s.contains(v)));
                    let each = succ.iter().all(|&v| sets.iter().any(|s| s.contains(v)));
                    set.set(w, covered && each);
                }
            }
        }
        memo.insert(g, set);
    }
    memo
}

/// Worlds of `m` where `f` holds.
pub fn eval_all(m: &KripkeModel, f: Formula) -> FixedBitSet {
    truth_sets(m, &[f]).remove(&f).expect("root evaluated")
}

pub fn eval(m: &KripkeModel, w: usize, f: Formula) -> Result<bool> {
    if w >= m.len() {
        return Err(Error::Model(format!("unknown world index {w}")));
    }
    Ok(eval_all(m, f).contains(w))
}

/// Evaluate at a world named by its id.
pub fn eval_at(m: &KripkeModel, world: &str, f: Formula) -> Result<bool> {
    let w = m
        .world(world)
        .ok_or_else(|| Error::Model(format!("unknown world `{world}`")))?;
    eval(m, w, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::semantics::tests::looping_pair;

    #[test]
    fn table_one_clauses() {
        let (m, _) = looping_pair();
        let w0 = m.world("w0").unwrap();
        assert!(eval(&m, w0, parse("<>p").unwrap()).unwrap());
        assert!(eval(&m, w0, parse("true").unwrap()).unwrap());
        assert!(!eval(&m, w0, parse("p").unwrap()).unwrap());
        assert!(eval(&m, w0, parse("[]<>p & ~[]false").unwrap()).unwrap());
        assert!(!eval(&m, w0, parse("<>q").unwrap()).unwrap());
        assert!(eval(&m, 9, parse("p").unwrap()).is_err());
    }

    #[test]
    fn leaf_satisfies_box_false() {
        let mut m = KripkeModel::new();
        let a = m.add_world("a");
        assert!(eval(&m, a, parse("[]false").unwrap()).unwrap());
        assert!(!eval(&m, a, parse("<>true").unwrap()).unwrap());
        assert!(eval(&m, a, parse("nabla{}").unwrap()).unwrap());
    }

    #[test]
    fn nabla_cover_semantics() {
        let mut m = KripkeModel::new();
        let r = m.add_world("r");
        let a = m.add_world("a");
        let b = m.add_world("b");
        m.add_edge(r, a);
        m.add_edge(r, b);
        m.set_true("p", a);
        m.set_true("q", b);
        assert!(eval(&m, r, parse("nabla{p, q}").unwrap()).unwrap());
        assert!(!eval(&m, r, parse("nabla{p}").unwrap()).unwrap());
        assert!(eval(&m, r, parse("nabla{p, q, p | q}").unwrap()).unwrap());
        assert!(!eval(&m, r, parse("nabla{p, q, p & q}").unwrap()).unwrap());
    }
}
