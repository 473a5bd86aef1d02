//! From formulas to automata.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use super::{Letter, ModalAutomaton, Transition};
use crate::error::{Error, Result};
use crate::formula::{modal_depth, nnf, sig, Formula, SignatureSet};
use crate::quasimodel::types::{Entry, Table};

/// Which subformula sets become states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StateSpace {
    /// Sets reachable from the initial state.
    #[default]
    Reachable,
    /// Every subset of the closure; small formulas only.
    Full,
}

const MAX_FULL_CLOSURE: usize = 12;
const MAX_DIAMONDS: usize = 8;

pub fn formula_to_automaton(chi: Formula, sigma: &SignatureSet) -> Result<ModalAutomaton> {
    formula_to_automaton_with(chi, sigma, StateSpace::Reachable)
}

/// States are subformula sets; a set moves by picking a minimal decisive
/// refinement, a letter satisfying its literals, and a partition of its
/// diamond bodies, each block joined with the box bodies. The box bodies
/// alone may be added as a further target.
pub fn formula_to_automaton_with(chi: Formula, sigma: &SignatureSet, space: StateSpace) -> Result<ModalAutomaton> {
    if !sig(chi).is_subset(sigma) {
        return Err(Error::Precondition(
            "formula letters must be in the automaton signature".into(),
        ));
    }
    let root = nnf(chi)?;
    let table = Table::single(root)?;
    let letters: Vec<String> = sigma.iter().cloned().collect();
    if letters.len() > 20 {
        return Err(Error::Resource("automaton alphabet above 2^20 letters".into()));
    }
    let depth: Vec<usize> = table.formulas.iter().map(|&f| modal_depth(f)).collect();
    let rank = |s: &FixedBitSet| s.ones().map(|i| depth[i] + 1).max().unwrap_or(0);

    let mut states: Vec<FixedBitSet> = Vec::new();
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut intern = |s: FixedBitSet, states: &mut Vec<FixedBitSet>| -> usize {
        *index.entry(s.clone()).or_insert_with(|| {
            states.push(s);
            states.len() - 1
        })
    };
    let initial = intern(table.singleton(table.index_of(root).expect("root")), &mut states);
    let empty = intern(FixedBitSet::with_capacity(table.len()), &mut states);
    if space == StateSpace::Full {
        if table.len() > MAX_FULL_CLOSURE {
            return Err(Error::Resource(format!(
                "full state space needs at most {MAX_FULL_CLOSURE} subformulas, got {}",
                table.len()
            )));
        }
        for mask in 0u32..(1 << table.len()) {
            let mut s = FixedBitSet::with_capacity(table.len());
            s.extend((0..table.len()).filter(|i| mask & (1 << i) != 0));
            intern(s, &mut states);
        }
    }

    let all_letters = (0..1u64 << letters.len()).collect::<Vec<Letter>>();
    let mut transitions = BTreeSet::new();
    let mut next = 0;
    while next < states.len() {
        let psi = states[next].clone();
        let q = next;
        next += 1;
        if psi.is_clear() {
            for &a in &all_letters {
                transitions.insert(Transition {
                    from: q,
                    letter: a,
                    to: vec![],
                });
            }
            continue;
        }
        let own_rank = rank(&psi);
        for e in table.expansions(&psi) {
            let (mut pos, mut neg): (Letter, Letter) = (0, 0);
            let mut dias = BTreeSet::new();
            let mut boxes = FixedBitSet::with_capacity(table.len());
            for i in e.ones() {
                match &table.entries[i] {
                    Entry::Lit { letter, positive } => {
                        let bit = 1 << letters.binary_search(letter).expect("letter in signature");
                        if *positive {
                            pos |= bit;
                        } else {
                            neg |= bit;
                        }
                    }
                    Entry::Dia(c) => {
                        dias.insert(*c);
                    }
                    Entry::Box(c) => boxes.insert(*c),
                    _ => {}
                }
            }
            let dias: Vec<usize> = dias.into_iter().collect();
            if dias.len() > MAX_DIAMONDS {
                return Err(Error::Resource(format!("{} diamonds in one state", dias.len())));
            }
            let matching: Vec<Letter> = all_letters
                .iter()
                .copied()
                .filter(|a| a & pos == pos && a & neg == 0)
                .collect();
            let box_state = intern(boxes.clone(), &mut states);
            let box_rank = rank(&boxes);
            for blocks in partitions(&dias) {
                let mut targets: Vec<usize> = blocks
                    .iter()
                    .map(|block| {
                        let mut s = boxes.clone();
                        s.extend(block.iter().copied());
                        debug_assert!(rank(&s) < own_rank);
                        intern(s, &mut states)
                    })
                    .collect();
                targets.sort_unstable();
                targets.dedup();
                let mut options = vec![targets.clone()];
                if box_rank < own_rank {
                    let mut with_box = targets;
                    with_box.push(box_state);
                    with_box.sort_unstable();
                    with_box.dedup();
                    options.push(with_box);
                }
                for to in options {
                    for &a in &matching {
                        transitions.insert(Transition {
                            from: q,
                            letter: a,
                            to: to.clone(),
                        });
                    }
                }
            }
        }
    }
    let names = states
        .iter()
        .map(|s| {
            let parts: Vec<String> = table.members(s).iter().map(ToString::to_string).collect();
            format!("{{{}}}", parts.join(", "))
        })
        .collect();
    ModalAutomaton::new(sigma, names, transitions, initial, [empty])
}

/// All set partitions of `items`, blocks in first-element order.
fn partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for p in partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        let mut q = p;
        q.insert(0, vec![first]);
        out.push(q);
    }
    out
}
