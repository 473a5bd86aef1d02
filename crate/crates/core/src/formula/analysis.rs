//! Signature, polarity, depth and size measures.

use std::collections::{HashMap, HashSet};

use super::{dag_nodes, Formula, Node, PolarityReport, SignatureSet};

pub fn sig(f: Formula) -> SignatureSet {
    sig_all(&[f])
}

pub fn sig_all(fs: &[Formula]) -> SignatureSet {
    dag_nodes(fs)
        .into_iter()
        .filter_map(|g| g.as_prop())
        .map(|s| s.to_string())
        .collect()
}

/// Letters occurring under an even (positive) or odd (negative) number of
/// negations. ∇ is monotone in its arguments, so it keeps polarity.
pub fn polarity(f: Formula) -> PolarityReport {
    let mut report = PolarityReport::default();
    let mut seen: HashSet<(Formula, bool)> = HashSet::new();
    let mut stack = vec![(f, true)];
    while let Some((g, pos)) = stack.pop() {
        if !seen.insert((g, pos)) {
            continue;
        }
        match g.node() {
            Node::Prop(name) => {
                let set = if pos {
                    &mut report.positive
                } else {
                    &mut report.negative
                };
                set.insert(name.to_string());
            }
            Node::Neg(a) => stack.push((a, !pos)),
            _ => stack.extend(g.children().into_iter().map(|c| (c, pos))),
        }
    }
    report
}

/// Number of symbols when written as a string with every binary application
/// parenthesised. `nabla{a, b}` counts the ∇, both braces and the commas.
pub fn size_string(f: Formula) -> u64 {
    let mut memo: HashMap<Formula, u64> = HashMap::new();
    for g in dag_nodes(&[f]) {
        let m = |x: &Formula| memo[x];
        let s = match g.node() {
            Node::Prop(_) | Node::Top | Node::Bot => 1,
            Node::Neg(a) | Node::Diamond(a) | Node::Box(a) => 1u64.saturating_add(m(&a)),
            Node::And(a, b) | Node::Or(a, b) => 3u64.saturating_add(m(&a)).saturating_add(m(&b)),
            Node::Nabla(kids) => {
                let commas = kids.len().saturating_sub(1) as u64;
                kids.iter()
                    .fold(3u64.saturating_add(commas), |acc, k| acc.saturating_add(m(k)))
            }
        };
        memo.insert(g, s);
    }
    memo[&f]
}

/// Number of distinct nodes in the shared representation.
pub fn size_dag(f: Formula) -> usize {
    dag_nodes(&[f]).len()
}

/// Maximum nesting of modal operators; ∇ counts as one level.
pub fn modal_depth(f: Formula) -> usize {
    let mut memo: HashMap<Formula, usize> = HashMap::new();
    for g in dag_nodes(&[f]) {
        let d = match g.node() {
            Node::Prop(_) | Node::Top | Node::Bot => 0,
            Node::Neg(a) => memo[&a],
            Node::And(a, b) | Node::Or(a, b) => memo[&a].max(memo[&b]),
            Node::Diamond(a) | Node::Box(a) => memo[&a] + 1,
            Node::Nabla(kids) => 1 + kids.iter().map(|k| memo[k]).max().unwrap_or(0),
        };
        memo.insert(g, d);
    }
    memo[&f]
}
