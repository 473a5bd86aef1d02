//! Subformula tables and the two ways of building the type universe.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::formula::{nnf, subf, Formula, Node};

/// One entry of the shared subformula table, with children as table indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Entry {
    Lit { letter: String, positive: bool },
    Top,
    Bot,
    And(usize, usize),
    Or(usize, usize),
    Dia(usize),
    Box(usize),
}

/// Shared table of the subformulas of `nnf(phi)` and `nnf(~psi)`.
#[derive(Clone, Debug)]
pub struct Table {
    pub(crate) formulas: Vec<Formula>,
    pub(crate) entries: Vec<Entry>,
    index: HashMap<Formula, usize>,
    /// Table indices belonging to each side's SUBF closure.
    pub(crate) side_members: [Vec<usize>; 2],
}

impl Table {
    pub(crate) fn build(left_root: Formula, right_root: Formula) -> Result<Table> {
        Table::from_roots(&[left_root, right_root])
    }

    /// Table over the closure of a single NNF formula.
    pub(crate) fn single(root: Formula) -> Result<Table> {
        Table::from_roots(&[root])
    }

    fn from_roots(roots: &[Formula]) -> Result<Table> {
        let mut t = Table {
            formulas: Vec::new(),
            entries: Vec::new(),
            index: HashMap::new(),
            side_members: [Vec::new(), Vec::new()],
        };
        for (side, &root) in roots.iter().enumerate() {
            for g in subf(root)? {
                let i = t.intern(g);
                t.side_members[side].push(i);
            }
        }
        Ok(t)
    }

    fn intern(&mut self, g: Formula) -> usize {
        if let Some(&i) = self.index.get(&g) {
            return i;
        }
        let entry = match g.node() {
            Node::Prop(name) => Entry::Lit {
                letter: name.to_string(),
                positive: true,
            },
            Node::Neg(a) => Entry::Lit {
                letter: a.as_prop().expect("nnf").to_string(),
                positive: false,
            },
            Node::Top => Entry::Top,
            Node::Bot => Entry::Bot,
            Node::And(a, b) => Entry::And(self.index[&a], self.index[&b]),
            Node::Or(a, b) => Entry::Or(self.index[&a], self.index[&b]),
            Node::Diamond(a) => Entry::Dia(self.index[&a]),
            Node::Box(a) => Entry::Box(self.index[&a]),
            Node::Nabla(_) => unreachable!("nnf input"),
        };
        let i = self.formulas.len();
        self.formulas.push(g);
        self.entries.push(entry);
        self.index.insert(g, i);
        i
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn formula(&self, i: usize) -> Formula {
        self.formulas[i]
    }

    pub fn index_of(&self, f: Formula) -> Option<usize> {
        self.index.get(&f).copied()
    }

    /// The members of `set` as formulas, in table order.
    pub fn members(&self, set: &FixedBitSet) -> Vec<Formula> {
        set.ones().map(|i| self.formulas[i]).collect()
    }

    /// Bodies of the boxes in `set`.
    pub(crate) fn bodies(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for i in set.ones() {
            if let Entry::Box(c) = self.entries[i] {
                out.insert(c);
            }
        }
        out
    }

    /// Bodies of the diamonds in `set`, paired with the diamond's index.
    pub(crate) fn diamonds(&self, set: &FixedBitSet) -> Vec<(usize, usize)> {
        set.ones()
            .filter_map(|i| match self.entries[i] {
                Entry::Dia(c) => Some((i, c)),
                _ => None,
            })
            .collect()
    }

    /// Clauses (i) to (iv) of local consistency.
    pub(crate) fn locally_consistent(&self, set: &FixedBitSet) -> bool {
        let mut pos = HashSet::new();
        let mut neg = HashSet::new();
        for i in set.ones() {
            match &self.entries[i] {
                Entry::Bot => return false,
                Entry::And(a, b) if !(set.contains(*a) && set.contains(*b)) => return false,
                Entry::Or(a, b) if !(set.contains(*a) || set.contains(*b)) => return false,
                Entry::Lit { letter, positive } => {
                    if *positive {
                        pos.insert(letter.as_str());
                    } else {
                        neg.insert(letter.as_str());
                    }
                }
                _ => {}
            }
        }
        pos.is_disjoint(&neg)
    }

    /// All locally consistent sets that extend `seed` by closing under
    /// conjunction and choosing a disjunct for every unwitnessed disjunction.
    /// Every world satisfying `seed` satisfies one of them.
    pub(crate) fn expansions(&self, seed: &FixedBitSet) -> Vec<FixedBitSet> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut stack = vec![seed.clone()];
        while let Some(mut set) = stack.pop() {
            // close under conjunction
            loop {
                let missing: Vec<usize> = set
                    .ones()
                    .filter_map(|i| match self.entries[i] {
                        Entry::And(a, b) => Some([a, b]),
                        _ => None,
                    })
                    .flatten()
                    .filter(|&c| !set.contains(c))
                    .collect();
                if missing.is_empty() {
                    break;
                }
                for c in missing {
                    set.insert(c);
                }
            }
            if !self.clash_free(&set) {
                continue;
            }
            let open = set.ones().find_map(|i| match self.entries[i] {
                Entry::Or(a, b) if !set.contains(a) && !set.contains(b) => Some((a, b)),
                _ => None,
            });
            match open {
                Some((a, b)) => {
                    for d in [b, a] {
                        let mut next = set.clone();
                        next.insert(d);
                        stack.push(next);
                    }
                }
                None => {
                    if seen.insert(set.clone()) {
                        out.push(set);
                    }
                }
            }
        }
        out.sort_by(|x, y| x.ones().cmp(y.ones()));
        out
    }

    fn clash_free(&self, set: &FixedBitSet) -> bool {
        let mut pos = HashSet::new();
        let mut neg = HashSet::new();
        for i in set.ones() {
            match &self.entries[i] {
                Entry::Bot => return false,
                Entry::Lit { letter, positive: true } => {
                    pos.insert(letter.as_str());
                }
                Entry::Lit {
                    letter,
                    positive: false,
                } => {
                    neg.insert(letter.as_str());
                }
                _ => {}
            }
        }
        pos.is_disjoint(&neg)
    }

    pub(crate) fn singleton(&self, i: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert(i);
        s
    }
}

/// How the candidate types are generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Universe {
    /// Expansions of the root formula, of box bodies and of witnesses for
    /// diamonds, closed under these seeds.
    #[default]
    Demand,
    /// Every locally consistent subset of each side's closure.
    Full,
}

/// Build the types of one side (0 = left, 1 = right).
pub(crate) fn side_types(
    table: &Table,
    side: usize,
    root: usize,
    universe: Universe,
    max_subformulas: usize,
    max_types: usize,
) -> Result<Vec<FixedBitSet>> {
    match universe {
        Universe::Full => full_types(table, side, max_subformulas, max_types),
        Universe::Demand => demand_types(table, root, max_types),
    }
}

fn full_types(table: &Table, side: usize, max_subformulas: usize, max_types: usize) -> Result<Vec<FixedBitSet>> {
    let members = &table.side_members[side];
    if members.len() > max_subformulas || members.len() >= 31 {
        return Err(Error::Resource(format!(
            "{} subformulas on one side exceed the limit of {max_subformulas}",
            members.len()
        )));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << members.len()) {
        let mut set = FixedBitSet::with_capacity(table.len());
        for (bit, &i) in members.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                set.insert(i);
            }
        }
        if table.locally_consistent(&set) {
            out.push(set);
            if out.len() > max_types {
                return Err(Error::Resource(format!("more than {max_types} types on one side")));
            }
        }
    }
    out.sort_by(|x, y| x.ones().cmp(y.ones()));
    Ok(out)
}

fn demand_types(table: &Table, root: usize, max_types: usize) -> Result<Vec<FixedBitSet>> {
    let mut types: Vec<FixedBitSet> = Vec::new();
    let mut known: HashSet<FixedBitSet> = HashSet::new();
    let mut seeds_done: HashSet<FixedBitSet> = HashSet::new();
    let mut seeds = vec![table.singleton(root)];
    while let Some(seed) = seeds.pop() {
        if !seeds_done.insert(seed.clone()) {
            continue;
        }
        for t in table.expansions(&seed) {
            if known.insert(t.clone()) {
                let bodies = table.bodies(&t);
                for (_, c) in table.diamonds(&t) {
                    let mut s = bodies.clone();
                    s.insert(c);
                    seeds.push(s);
                }
                seeds.push(bodies);
                types.push(t);
                if types.len() > max_types {
                    return Err(Error::Resource(format!("more than {max_types} types on one side")));
                }
            }
        }
    }
    types.sort_by(|x, y| x.ones().cmp(y.ones()));
    Ok(types)
}

/// `nnf(phi)` and `nnf(~psi)`.
pub(crate) fn roots(phi: Formula, psi: Formula) -> Result<(Formula, Formula)> {
    Ok((nnf(phi)?, nnf(Formula::not(psi))?))
}
