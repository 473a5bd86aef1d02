//! Exhaustive satisfiability search over bounded tree models.
//!
//! Kept deliberately separate from the deciders it checks: it builds trees
//! bottom-up, level by level, and evaluates every subformula directly.
//! Two trees with the same truth vector are interchangeable as children, and
//! a parent only sees its children through the bodies of its modal nodes, so
//! child sets are drawn from the distinct projections of the previous level.

use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::formula::{dag_nodes, sig, Formula, Node};
use crate::semantics::{eval, KripkeModel, PointedModel};

/// Upper bound on candidate child sets examined per level.
pub const ORACLE_BUDGET: usize = 2_000_000;

struct Tree {
    label: Vec<bool>,
    children: Vec<Rc<Tree>>,
}

type Vector = Vec<bool>;

/// Search trees of depth at most `max_depth` and branching at most
/// `max_branch` for a model of `f`, returning an evaluator-checked witness.
pub fn oracle_sat(f: Formula, max_depth: usize, max_branch: usize) -> Result<Option<PointedModel>> {
    if max_branch == 0 && max_depth > 0 {
        return Err(Error::Precondition("oracle bounds must be positive".into()));
    }
    let letters: Vec<String> = sig(f).iter().cloned().collect();
    if letters.len() > 12 {
        return Err(Error::Resource("oracle supports at most 12 letters".into()));
    }
    let nodes = dag_nodes(&[f]);
    let pos: HashMap<Formula, usize> = nodes.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let root = pos[&f];

    // coordinates a parent can observe in its children
    let mut observed: Vec<usize> = nodes
        .iter()
        .flat_map(|g| match g.node() {
            Node::Diamond(a) | Node::Box(a) => vec![pos[&a]],
            Node::Nabla(kids) => kids.iter().map(|k| pos[k]).collect(),
            _ => vec![],
        })
        .collect();
    observed.sort_unstable();
    observed.dedup();

    let vector = |label: &[bool], kids: &[&Vector]| -> Vector {
        let mut v = vec![false; nodes.len()];
        for (i, g) in nodes.iter().enumerate() {
            v[i] = match g.node() {
                Node::Prop(name) => {
                    let k = letters.iter().position(|l| **l == *name).expect("letter");
                    label[k]
                }
                Node::Top => true,
                Node::Bot => false,
                Node::Neg(a) => !v[pos[&a]],
                Node::And(a, b) => v[pos[&a]] && v[pos[&b]],
                Node::Or(a, b) => v[pos[&a]] || v[pos[&b]],
                Node::Diamond(a) => kids.iter().any(|c| c[pos[&a]]),
                Node::Box(a) => kids.iter().all(|c| c[pos[&a]]),
                Node::Nabla(ks) => {
                    ks.iter().all(|k| kids.iter().any(|c| c[pos[k]]))
                        && kids.iter().all(|c| ks.iter().any(|k| c[pos[k]]))
                }
            };
        }
        v
    };

    let labels: Vec<Vec<bool>> = (0..1u32 << letters.len())
        .map(|m| (0..letters.len()).map(|i| m & (1 << i) != 0).collect())
        .collect();

    let mut level: HashMap<Vector, Rc<Tree>> = HashMap::new();
    for label in &labels {
        let v = vector(label, &[]);
        level.entry(v).or_insert_with(|| {
            Rc::new(Tree {
                label: label.clone(),
                children: vec![],
            })
        });
    }
    for _ in 0..max_depth {
        if let Some(t) = found(&level, root) {
            return Ok(Some(witness(&t, &letters, f)));
        }
        // one representative per observable projection
        let mut classes: HashMap<Vec<bool>, (Vector, Rc<Tree>)> = HashMap::new();
        let mut entries: Vec<(&Vector, &Rc<Tree>)> = level.iter().collect();
        entries.sort_by(|a, b| a.0.cmp(b.0));
        for (v, t) in entries {
            let key: Vec<bool> = observed.iter().map(|&i| v[i]).collect();
            classes.entry(key).or_insert_with(|| (v.clone(), t.clone()));
        }
        let mut reps: Vec<(Vector, Rc<Tree>)> = classes.into_values().collect();
        reps.sort_by(|a, b| a.0.cmp(&b.0));
        let k = reps.len();
        let total: usize = (0..=max_branch.min(k)).map(|i| binomial(k, i)).sum();
        if total.saturating_mul(labels.len()) > ORACLE_BUDGET {
            return Err(Error::Resource(format!(
                "oracle search space too large: {total} child sets of {k} classes"
            )));
        }
        let mut next = level.clone();
        for subset in subsets_upto(k, max_branch) {
            let kids: Vec<&Vector> = subset.iter().map(|&i| &reps[i].0).collect();
            for label in &labels {
                let v = vector(label, &kids);
                next.entry(v).or_insert_with(|| {
                    Rc::new(Tree {
                        label: label.clone(),
                        children: subset.iter().map(|&i| reps[i].1.clone()).collect(),
                    })
                });
            }
        }
        level = next;
    }
    Ok(found(&level, root).map(|t| witness(&t, &letters, f)))
}

fn found(level: &HashMap<Vector, Rc<Tree>>, root: usize) -> Option<Rc<Tree>> {
    let mut hits: Vec<(&Vector, &Rc<Tree>)> = level.iter().filter(|(v, _)| v[root]).collect();
    hits.sort_by(|a, b| a.0.cmp(b.0));
    hits.first().map(|(_, t)| Rc::clone(t))
}

fn witness(t: &Tree, letters: &[String], f: Formula) -> PointedModel {
    let mut m = KripkeModel::new();
    for l in letters {
        m.declare_letter(l.clone());
    }
    let mut stack: Vec<(&Tree, Option<usize>)> = vec![(t, None)];
    while let Some((node, parent)) = stack.pop() {
        let w = m.add_world(format!("o{}", m.len()));
        if let Some(p) = parent {
            m.add_edge(p, w);
        }
        for (i, &b) in node.label.iter().enumerate() {
            if b {
                m.set_true(letters[i].clone(), w);
            }
        }
        for c in &node.children {
            stack.push((c, Some(w)));
        }
    }
    let pm = PointedModel::new(m, 0);
    assert!(
        eval(&pm.model, pm.point, f).expect("root world"),
        "oracle witness fails {f}"
    );
    pm
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn subsets_upto(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max.min(n) {
        let mut grown = Vec::new();
        for s in &layer {
            let start = s.last().map_or(0, |&x| x + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                grown.push(t);
            }
        }
        out.extend(grown.iter().cloned());
        layer = grown;
    }
    out
}

/// Bounds under which the search is complete for `f`: modal depth, and the
/// number of modal subformulas (at least one).
pub fn complete_bounds(f: Formula) -> (usize, usize) {
    let modal = dag_nodes(&[f])
        .into_iter()
        .filter(|g| matches!(g.node(), Node::Diamond(_) | Node::Box(_) | Node::Nabla(_)))
        .count();
    (crate::formula::modal_depth(f), modal.max(1))
}
