//! Lyndon interpolants read off an elimination trace.

use std::collections::HashMap;

use super::eliminate::{EliminationTrace, Key, Reason, Side, TypeId};
use crate::formula::Formula;

pub(crate) struct Extractor<'a> {
    trace: &'a EliminationTrace,
    step_of: HashMap<TypeId, usize>,
    theta: HashMap<TypeId, Formula>,
    groups: HashMap<Key, Formula>,
    rows: HashMap<(usize, u32), Formula>,
}

impl<'a> Extractor<'a> {
    pub(crate) fn new(trace: &'a EliminationTrace) -> Self {
        let step_of = trace.steps.iter().enumerate().map(|(i, s)| (s.ty, i)).collect();
        Extractor {
            trace,
            step_of,
            theta: HashMap::new(),
            groups: HashMap::new(),
            rows: HashMap::new(),
        }
    }

    /// `theta` for an eliminated type; panics if the type survived.
    pub(crate) fn theta(&mut self, t: TypeId) -> Formula {
        if let Some(&f) = self.theta.get(&t) {
            return f;
        }
        let Some(&pos) = self.step_of.get(&t) else {
            panic!("interpolant needs type {t:?}, which was never eliminated");
        };
        let step = &self.trace.steps[pos];
        let f = match (&step.reason, step.key) {
            (Reason::OverlapClash { letter, side }, _) => {
                let p = Formula::prop(letter);
                match side {
                    Side::L => p,
                    Side::R => Formula::not(p),
                }
            }
            (Reason::DiamondUnwitnessed { side, .. }, Some(key)) => {
                let inner = self.group(key, pos);
                match side {
                    Side::L => modal(inner, true),
                    Side::R => modal(inner, false),
                }
            }
            (Reason::DiamondUnwitnessed { .. }, None) => unreachable!("diamond step without key"),
        };
        self.theta.insert(t, f);
        f
    }

    /// `OR_{X in left} AND_{Y in right} theta(X, Y)`; every pair must have
    /// been eliminated before step `before`.
    fn group(&mut self, key: Key, before: usize) -> Formula {
        if let Some(&f) = self.groups.get(&key) {
            return f;
        }
        let space = self.trace.space.clone();
        let (ls, _) = space.key_members(key);
        let ls = ls.to_vec();
        let f = Formula::disjunction(ls.into_iter().map(|a| self.row(a, key.1, before)));
        self.groups.insert(key, f);
        f
    }

    fn row(&mut self, a: usize, rlist: u32, before: usize) -> Formula {
        if let Some(&f) = self.rows.get(&(a, rlist)) {
            return f;
        }
        let space = self.trace.space.clone();
        let rs = space.lists[1][rlist as usize].clone();
        let parts: Vec<Formula> = rs
            .into_iter()
            .map(|b| {
                let t = TypeId { left: a, right: b };
                match self.step_of.get(&t) {
                    Some(&p) if p < before => {}
                    _ => panic!("type {t:?} is needed before step {before} but was not eliminated earlier"),
                }
                self.theta(t)
            })
            .collect();
        let f = Formula::conjunction(parts);
        self.rows.insert((a, rlist), f);
        f
    }

    /// `OR_{X has phi} AND_{Y has ~psi} theta(X, Y)`.
    pub(crate) fn interpolant(&mut self) -> Formula {
        let space = self.trace.space.clone();
        let xs: Vec<usize> = (0..space.left_count())
            .filter(|&a| space.left[a].contains(space.left_root))
            .collect();
        let ys: Vec<usize> = (0..space.right_count())
            .filter(|&b| space.right[b].contains(space.right_root))
            .collect();
        Formula::disjunction(xs.into_iter().map(|a| {
            let parts: Vec<Formula> = ys.iter().map(|&b| self.theta(TypeId { left: a, right: b })).collect();
            Formula::conjunction(parts)
        }))
    }
}

/// Diamond or box with the trivial cases folded.
fn modal(inner: Formula, diamond: bool) -> Formula {
    match (diamond, inner.node()) {
        (true, crate::formula::Node::Bot) => Formula::bot(),
        (false, crate::formula::Node::Top) => Formula::top(),
        (true, _) => Formula::diamond(inner),
        (false, _) => Formula::boxed(inner),
    }
}
