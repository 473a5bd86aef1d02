use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::KripkeModel;
use crate::formula::SignatureSet;

/// A relation between the worlds of two models, by world id, relative to a
/// signature.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisimRelation {
    pub pairs: BTreeSet<(String, String)>,
    pub signature: SignatureSet,
}

impl BisimRelation {
    pub fn new(signature: SignatureSet) -> Self {
        BisimRelation {
            pairs: BTreeSet::new(),
            signature,
        }
    }

    pub fn with_pairs<'a>(signature: SignatureSet, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        BisimRelation {
            pairs: pairs.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            signature,
        }
    }

    pub fn contains(&self, left: &str, right: &str) -> bool {
        self.pairs.contains(&(left.to_string(), right.to_string()))
    }

    /// Resolve ids to indices; `None` if some id is undeclared.
    pub(crate) fn indices(&self, m: &KripkeModel, n: &KripkeModel) -> Option<Vec<(usize, usize)>> {
        self.pairs
            .iter()
            .map(|(a, b)| Some((m.world(a)?, n.world(b)?)))
            .collect()
    }
}

fn harmony(m: &KripkeModel, w: usize, n: &KripkeModel, v: usize, sig: &SignatureSet) -> bool {
    sig.iter().all(|p| m.holds(p, w) == n.holds(p, v))
}

struct Rel {
    rows: Vec<fixedbitset::FixedBitSet>,
}

impl Rel {
    fn has(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }
}

fn forth_back(m: &KripkeModel, n: &KripkeModel, rel: &Rel, w: usize, v: usize) -> bool {
    let forth = m
        .successors(w)
        .iter()
        .all(|&w2| n.successors(v).iter().any(|&v2| rel.has(w2, v2)));
    let back = n
        .successors(v)
        .iter()
        .all(|&v2| m.successors(w).iter().any(|&w2| rel.has(w2, v2)));
    forth && back
}

/// Atomic harmony, forth and back for every pair of `z`.
pub fn check_bisimulation(m: &KripkeModel, n: &KripkeModel, z: &BisimRelation) -> bool {
    let Some(pairs) = z.indices(m, n) else {
        return false;
    };
    let mut rows = vec![fixedbitset::FixedBitSet::with_capacity(n.len()); m.len()];
    for &(a, b) in &pairs {
        rows[a].insert(b);
    }
    let rel = Rel { rows };
    pairs
        .iter()
        .all(|&(w, v)| harmony(m, w, n, v, &z.signature) && forth_back(m, n, &rel, w, v))
}

/// The union of all `sig`-bisimulations between `m` and `n`, by repeatedly
/// discarding pairs that violate forth or back.
pub fn largest_bisimulation(m: &KripkeModel, n: &KripkeModel, sig: &SignatureSet) -> BisimRelation {
    let mut rows = vec![fixedbitset::FixedBitSet::with_capacity(n.len()); m.len()];
    for (w, row) in rows.iter_mut().enumerate() {
        for v in 0..n.len() {
            if harmony(m, w, n, v, sig) {
                row.insert(v);
            }
        }
    }
    let mut rel = Rel { rows };
    loop {
        let mut doomed = Vec::new();
        for w in 0..m.len() {
            for v in rel.rows[w].ones() {
                if !forth_back(m, n, &rel, w, v) {
                    doomed.push((w, v));
                }
            }
        }
        if doomed.is_empty() {
            break;
        }
        for (w, v) in doomed {
            rel.rows[w].set(v, false);
        }
    }
    let mut z = BisimRelation::new(sig.clone());
    for w in 0..m.len() {
        for v in rel.rows[w].ones() {
            z.pairs.insert((m.id(w).to_string(), n.id(v).to_string()));
        }
    }
    z
}

/// Whether the two pointed models are `sig`-bisimilar.
pub fn bisimilar(m: &KripkeModel, w: usize, n: &KripkeModel, v: usize, sig: &SignatureSet) -> bool {
    largest_bisimulation(m, n, sig).contains(m.id(w), n.id(v))
}
