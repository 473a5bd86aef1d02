//! Satisfiability for K by SAT-based modal decomposition.
//!
//! At a single world the formula set is treated propositionally: letters,
//! `<>a` and `[]a` nodes become variables and Boolean structure is encoded
//! with one-sided definitional clauses. A SAT model fixes which modal atoms
//! the world needs; every needed `<>c` is then checked recursively against
//! the needed box bodies. A failed successor yields a clause forbidding that
//! combination and the SAT search resumes.

use std::collections::HashMap;
use std::rc::Rc;

use varisat::{ExtendFormula, Lit, Solver, Var};

use crate::error::{Error, Result};
use crate::formula::{dag_nodes, expand_nabla, nnf, Formula, Node};
use crate::semantics::{eval, KripkeModel, PointedModel};

#[derive(Debug)]
struct Tree {
    letters: Vec<String>,
    children: Vec<Rc<Tree>>,
}

/// Memoising decider. Results are cached by the sorted formula set.
#[derive(Default)]
pub struct KSat {
    memo: HashMap<Vec<Formula>, Option<Rc<Tree>>>,
    calls: usize,
}

impl KSat {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of world-level SAT problems solved so far.
    pub fn calls(&self) -> usize {
        self.calls
    }

    /// A tree model of every formula in `fs` at its root, or `None`.
    /// Inputs may contain ∇ and arbitrary negations.
    pub fn model_of(&mut self, fs: &[Formula]) -> Option<PointedModel> {
        let prepared: Vec<Formula> = fs
            .iter()
            .map(|&f| nnf(expand_nabla(f)).expect("nabla expanded"))
            .collect();
        let tree = self.solve_world(prepared)?;
        Some(materialise(&tree))
    }

    pub fn satisfiable(&mut self, f: Formula) -> bool {
        self.model_of(&[f]).is_some()
    }

    fn solve_world(&mut self, mut fs: Vec<Formula>) -> Option<Rc<Tree>> {
        fs.sort_unstable();
        fs.dedup();
        if let Some(hit) = self.memo.get(&fs) {
            return hit.clone();
        }
        let result = self.solve_uncached(&fs);
        self.memo.insert(fs, result.clone());
        result
    }

    fn solve_uncached(&mut self, fs: &[Formula]) -> Option<Rc<Tree>> {
        self.calls += 1;
        let nodes = dag_nodes(fs);
        let mut var_of: HashMap<Formula, Var> = HashMap::new();
        for (i, &g) in nodes.iter().enumerate() {
            var_of.insert(g, Var::from_index(i));
        }
        let lit = |g: Formula| -> Lit {
            match g.node() {
                Node::Neg(a) => var_of[&a].negative(),
                _ => var_of[&g].positive(),
            }
        };
        let mut solver = Solver::new();
        for &g in &nodes {
            let x = var_of[&g].positive();
            match g.node() {
                Node::Bot => solver.add_clause(&[!x]),
                Node::And(a, b) => {
                    solver.add_clause(&[!x, lit(a)]);
                    solver.add_clause(&[!x, lit(b)]);
                }
                Node::Or(a, b) => solver.add_clause(&[!x, lit(a), lit(b)]),
                _ => {}
            }
        }
        for &f in fs {
            solver.add_clause(&[lit(f)]);
        }
        loop {
            if !solver.solve().expect("sat solver") {
                return None;
            }
            let model = solver.model().expect("model after sat");
            let truth = |g: Formula| model[var_of[&g].index()].is_positive();
            let lit_true = |g: Formula| match g.node() {
                Node::Neg(a) => !truth(a),
                _ => truth(g),
            };
            // Walk from the roots, following only what the model needs.
            let mut needed_dia = Vec::new();
            let mut needed_box = Vec::new();
            let mut letters = Vec::new();
            let mut stack: Vec<Formula> = fs.to_vec();
            let mut seen = std::collections::HashSet::new();
            while let Some(g) = stack.pop() {
                if !seen.insert(g) {
                    continue;
                }
                match g.node() {
                    Node::And(a, b) => {
                        stack.push(a);
                        stack.push(b);
                    }
                    Node::Or(a, b) => stack.push(if lit_true(a) { a } else { b }),
                    Node::Diamond(_) => needed_dia.push(g),
                    Node::Box(_) => needed_box.push(g),
                    _ => {}
                }
            }
            for &g in &nodes {
                if let Node::Prop(name) = g.node() {
                    if truth(g) {
                        letters.push(name.to_string());
                    }
                }
            }
            let bodies: Vec<Formula> = needed_box
                .iter()
                .map(|b| match b.node() {
                    Node::Box(c) => c,
                    _ => unreachable!(),
                })
                .collect();
            let mut children = Vec::new();
            let mut blocked = false;
            for &d in &needed_dia {
                let Node::Diamond(c) = d.node() else { unreachable!() };
                let mut succ = bodies.clone();
                succ.push(c);
                match self.solve_world(succ) {
                    Some(t) => children.push(t),
                    None => {
                        let core = self.shrink_boxes(c, &needed_box);
                        let mut clause = vec![var_of[&d].negative()];
                        clause.extend(core.iter().map(|b| var_of[b].negative()));
                        solver.add_clause(&clause);
                        blocked = true;
                        break;
                    }
                }
            }
            if !blocked {
                return Some(Rc::new(Tree { letters, children }));
            }
        }
    }

    /// Drop boxes whose bodies are not needed for `c` to be unsatisfiable
    /// alongside the rest.
    fn shrink_boxes(&mut self, c: Formula, boxes: &[Formula]) -> Vec<Formula> {
        let mut keep: Vec<Formula> = boxes.to_vec();
        let body = |b: &Formula| match b.node() {
            Node::Box(x) => x,
            _ => unreachable!(),
        };
        let mut i = 0;
        while i < keep.len() && keep.len() <= 8 {
            let mut trial: Vec<Formula> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, b)| body(b))
                .collect();
            trial.push(c);
            if self.solve_world(trial).is_none() {
                keep.remove(i);
            } else {
                i += 1;
            }
        }
        keep
    }
}

fn materialise(tree: &Tree) -> PointedModel {
    let mut m = KripkeModel::new();
    let mut stack: Vec<(&Tree, Option<usize>)> = vec![(tree, None)];
    while let Some((t, parent)) = stack.pop() {
        let w = m.add_world(format!("u{}", m.len()));
        if let Some(p) = parent {
            m.add_edge(p, w);
        }
        for p in &t.letters {
            m.set_true(p.clone(), w);
        }
        for c in t.children.iter().rev() {
            stack.push((c, Some(w)));
        }
    }
    PointedModel::new(m, 0)
}

/// A model of `f`, checked with the evaluator before it is returned.
pub fn find_model(f: Formula) -> Option<PointedModel> {
    let pm = KSat::new().model_of(&[f])?;
    assert!(
        eval(&pm.model, pm.point, f).unwrap_or(false),
        "decider produced a non-model for {f}"
    );
    Some(pm)
}

pub fn is_satisfiable(f: Formula) -> bool {
    KSat::new().satisfiable(f)
}

pub fn is_valid(f: Formula) -> bool {
    !is_satisfiable(Formula::not(f))
}

/// `Ok(())` when `phi -> psi` is valid, otherwise a model of `phi & ~psi`.
pub fn check_implication(phi: Formula, psi: Formula) -> std::result::Result<(), Box<PointedModel>> {
    match find_model(Formula::and(phi, Formula::not(psi))) {
        None => Ok(()),
        Some(pm) => Err(Box::new(pm)),
    }
}

pub fn valid_implication(phi: Formula, psi: Formula) -> bool {
    check_implication(phi, psi).is_ok()
}

/// Reject when `phi -> psi` is not valid.
pub fn require_valid(phi: Formula, psi: Formula) -> Result<()> {
    if valid_implication(phi, psi) {
        Ok(())
    } else {
        Err(Error::Rejected(format!("{phi} -> {psi} is not valid")))
    }
}
