//! Nabla normal form, letter removal and uniform interpolation.

use std::collections::{BTreeSet, HashMap};

use crate::error::Result;
use crate::formula::{nnf, sig, Formula, Node, SignatureSet};
use crate::verify::ksat::require_valid;

/// Converts NNF formulas to nabla normal form, memoising on conjunct sets.
#[derive(Default)]
pub struct Normalizer {
    memo: HashMap<Vec<Formula>, Formula>,
}

impl Normalizer {
    pub fn new() -> Self {
        Self::default()
    }

    /// `nf` of a nabla-free formula; the input is brought into NNF first.
    pub fn normalize(&mut self, f: Formula) -> Result<Formula> {
        let g = nnf(f)?;
        Ok(self.nf(g))
    }

    fn nf(&mut self, f: Formula) -> Formula {
        match f.node() {
            Node::Prop(_) | Node::Neg(_) | Node::Top | Node::Bot => f,
            Node::Diamond(a) => {
                let inner = self.nf(a);
                Formula::nabla([inner, Formula::top()])
            }
            Node::Box(a) => {
                let inner = self.nf(a);
                Formula::or(Formula::nabla([inner]), Formula::nabla([]))
            }
            Node::Or(a, b) => {
                let (x, y) = (self.nf(a), self.nf(b));
                Formula::disjunction([x, y])
            }
            Node::And(a, b) => self.nf_conj([a, b].into_iter().collect()),
            Node::Nabla(_) => unreachable!("nnf rejects nabla"),
        }
    }

    fn nf_conj(&mut self, set: BTreeSet<Formula>) -> Formula {
        let key: Vec<Formula> = set.iter().copied().collect();
        if let Some(&f) = self.memo.get(&key) {
            return f;
        }
        let f = self.nf_conj_uncached(set);
        self.memo.insert(key, f);
        f
    }

    fn nf_conj_uncached(&mut self, mut set: BTreeSet<Formula>) -> Formula {
        if set.contains(&Formula::bot()) {
            return Formula::bot();
        }
        set.remove(&Formula::top());
        let nested = set.iter().find_map(|g| match g.node() {
            Node::And(a, b) => Some((*g, a, b)),
            _ => None,
        });
        if let Some((g, a, b)) = nested {
            set.remove(&g);
            set.insert(a);
            set.insert(b);
            return self.nf_conj(set);
        }
        let split = set.iter().find_map(|g| match g.node() {
            Node::Or(a, b) => Some((*g, a, b)),
            _ => None,
        });
        if let Some((g, a, b)) = split {
            set.remove(&g);
            let mut left = set.clone();
            left.insert(a);
            set.insert(b);
            let (x, y) = (self.nf_conj(left), self.nf_conj(set));
            return Formula::disjunction([x, y]);
        }
        match set.len() {
            0 => return Formula::top(),
            1 => return self.nf(*set.iter().next().expect("one element")),
            _ => {}
        }
        let mut lits = Vec::new();
        let mut dias = Vec::new();
        let mut boxes = BTreeSet::new();
        for g in set {
            match g.node() {
                Node::Diamond(a) => dias.push(a),
                Node::Box(a) => {
                    boxes.insert(a);
                }
                _ => lits.push(g),
            }
        }
        let mut seen: HashMap<std::sync::Arc<str>, bool> = HashMap::new();
        for l in &lits {
            let (p, positive) = l.as_literal().expect("literal");
            if seen.insert(p, positive).is_some_and(|old| old != positive) {
                return Formula::bot();
            }
        }
        let boxed_nf = self.nf_conj(boxes.clone());
        let naps: Vec<Formula> = if dias.is_empty() {
            vec![Formula::nabla([boxed_nf]), Formula::nabla([])]
        } else {
            let mut children: Vec<Formula> = dias
                .into_iter()
                .map(|d| {
                    let mut s = boxes.clone();
                    s.insert(d);
                    self.nf_conj(s)
                })
                .collect();
            children.push(boxed_nf);
            vec![Formula::nabla(children)]
        };
        let pi = literal_conjunction(lits);
        Formula::disjunction(naps.into_iter().map(|n| match pi {
            Some(pi) => Formula::and(pi, n),
            None => n,
        }))
    }
}

/// Left-folded conjunction of literals sorted by letter; `None` when empty.
fn literal_conjunction(mut lits: Vec<Formula>) -> Option<Formula> {
    lits.sort_by_key(|l| l.as_literal().map(|(p, pos)| (p.to_string(), !pos)));
    lits.dedup();
    lits.into_iter().reduce(Formula::and)
}

pub fn to_nabla_nf(f: Formula) -> Result<Formula> {
    Normalizer::new().normalize(f)
}

/// `f` is a consistent conjunction of literals over distinct letters.
pub fn is_literal_conjunction(f: Formula) -> bool {
    let mut seen = BTreeSet::new();
    fn walk(f: Formula, seen: &mut BTreeSet<String>) -> bool {
        match f.node() {
            Node::And(a, b) => walk(a, seen) && walk(b, seen),
            _ => f.as_literal().is_some_and(|(p, _)| seen.insert(p.to_string())),
        }
    }
    walk(f, &mut seen)
}

/// The nabla normal form grammar.
pub fn is_nabla_form(f: Formula) -> bool {
    match f.node() {
        Node::Top | Node::Bot => true,
        Node::Or(a, b) => is_nabla_form(a) && is_nabla_form(b),
        Node::Nabla(cs) => cs.iter().all(|&c| is_nabla_form(c)),
        Node::And(a, b) if matches!(b.node(), Node::Nabla(_)) => is_literal_conjunction(a) && is_nabla_form(b),
        _ => is_literal_conjunction(f),
    }
}

/// Drop every occurrence of the letters in `drop` from a nabla normal form.
pub fn remove_props(f: Formula, drop: &SignatureSet) -> Formula {
    let mut memo = HashMap::new();
    remove(f, drop, &mut memo)
}

fn remove(f: Formula, drop: &SignatureSet, memo: &mut HashMap<Formula, Formula>) -> Formula {
    if drop.is_empty() {
        return f;
    }
    if let Some(&g) = memo.get(&f) {
        return g;
    }
    let g = match f.node() {
        Node::Top | Node::Bot => f,
        Node::Or(a, b) => Formula::or(remove(a, drop, memo), remove(b, drop, memo)),
        Node::Nabla(cs) => Formula::nabla(cs.iter().map(|&c| remove(c, drop, memo))),
        Node::And(a, b) if matches!(b.node(), Node::Nabla(_)) => {
            let n = remove(b, drop, memo);
            match strip(a, drop) {
                Some(pi) => Formula::and(pi, n),
                None => n,
            }
        }
        _ => strip(f, drop).unwrap_or_else(Formula::top),
    };
    memo.insert(f, g);
    g
}

/// The literal conjunction without letters in `drop`; `None` when empty.
fn strip(pi: Formula, drop: &SignatureSet) -> Option<Formula> {
    fn walk(f: Formula, drop: &SignatureSet, out: &mut Vec<Formula>) {
        match f.node() {
            Node::And(a, b) => {
                walk(a, drop, out);
                walk(b, drop, out);
            }
            _ => {
                let (p, _) = f.as_literal().expect("literal conjunction");
                if !drop.contains(&p) {
                    out.push(f);
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(pi, drop, &mut out);
    out.into_iter().reduce(Formula::and)
}

/// The strongest consequence of `f` over `keep`.
pub fn uniform_interpolant(f: Formula, keep: &SignatureSet) -> Result<Formula> {
    let drop = sig(f).difference(keep);
    Ok(remove_props(to_nabla_nf(f)?, &drop))
}

pub fn craig_via_nabla(phi: Formula, psi: Formula) -> Result<Formula> {
    require_valid(phi, psi)?;
    uniform_interpolant(phi, &sig(psi))
}
