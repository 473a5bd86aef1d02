//! Acyclic modal automata on finite trees: construction from formulas,
//! acceptance, projection and translation back to formulas.

mod build;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{expand_nabla, sig, Formula, SignatureSet};
use crate::semantics::{KripkeModel, PointedModel};
use crate::verify::ksat::require_valid;

pub use build::{formula_to_automaton, formula_to_automaton_with, StateSpace};

/// A letter is a bit mask over the automaton signature.
pub type Letter = u64;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: usize,
    pub letter: Letter,
    /// Sorted, duplicate-free target states.
    pub to: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModalAutomaton {
    signature: Vec<String>,
    states: Vec<String>,
    transitions: Vec<Transition>,
    initial: usize,
    accepting: BTreeSet<usize>,
}

/// Ranks strictly decreasing along every transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityWitness {
    pub rank: Vec<usize>,
}

impl ModalAutomaton {
    pub fn new(
        signature: &SignatureSet,
        states: Vec<String>,
        transitions: impl IntoIterator<Item = Transition>,
        initial: usize,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<ModalAutomaton> {
        let signature: Vec<String> = signature.iter().cloned().collect();
        if signature.len() > 63 {
            return Err(Error::Resource("automaton signature above 63 letters".into()));
        }
        let n = states.len();
        if initial >= n {
            return Err(Error::Model("initial state out of range".into()));
        }
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        if accepting.iter().any(|&q| q >= n) {
            return Err(Error::Model("accepting state out of range".into()));
        }
        let mut set = BTreeSet::new();
        for mut t in transitions {
            t.to.sort_unstable();
            t.to.dedup();
            if t.from >= n || t.to.iter().any(|&q| q >= n) {
                return Err(Error::Model("transition references an unknown state".into()));
            }
            if t.letter >> signature.len() != 0 {
                return Err(Error::Model("letter outside the alphabet".into()));
            }
            set.insert(t);
        }
        Ok(ModalAutomaton {
            signature,
            states,
            transitions: set.into_iter().collect(),
            initial,
            accepting,
        })
    }

    pub fn signature(&self) -> SignatureSet {
        self.signature.iter().cloned().collect()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    /// The letters of `letter`, in signature order.
    pub fn letter_names(&self, letter: Letter) -> Vec<String> {
        (0..self.signature.len())
            .filter(|&i| letter & (1 << i) != 0)
            .map(|i| self.signature[i].clone())
            .collect()
    }

    fn label(&self, m: &KripkeModel, w: usize) -> Letter {
        (0..self.signature.len())
            .filter(|&i| m.holds(&self.signature[i], w))
            .fold(0, |acc, i| acc | (1 << i))
    }

    fn by_source(&self) -> Vec<Vec<&Transition>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            out[t.from].push(t);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("automaton serialises")
    }

    pub fn to_file(&self) -> AutomatonFile {
        AutomatonFile {
            signature: self.signature.clone(),
            states: self.states.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|t| {
                    (
                        self.states[t.from].clone(),
                        self.letter_names(t.letter),
                        t.to.iter().map(|&q| self.states[q].clone()).collect(),
                    )
                })
                .collect(),
            initial: self.states[self.initial].clone(),
            accepting: self.accepting.iter().map(|&q| self.states[q].clone()).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<ModalAutomaton> {
        let file: AutomatonFile = serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))?;
        let index: HashMap<&str, usize> = file.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let state = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::Model(format!("unknown state `{s}`")))
        };
        let sigma: SignatureSet = file.signature.iter().map(String::as_str).collect();
        let order: Vec<String> = sigma.iter().cloned().collect();
        let mut transitions = Vec::new();
        for (from, letters, to) in &file.transitions {
            let mut letter = 0;
            for l in letters {
                let i = order
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| Error::Model(format!("letter `{l}` not in signature")))?;
                letter |= 1 << i;
            }
            transitions.push(Transition {
                from: state(from)?,
                letter,
                to: to.iter().map(|s| state(s)).collect::<Result<_>>()?,
            });
        }
        let accepting = file.accepting.iter().map(|s| state(s)).collect::<Result<Vec<_>>>()?;
        ModalAutomaton::new(
            &sigma,
            file.states.clone(),
            transitions,
            state(&file.initial)?,
            accepting,
        )
    }
}

/// On-disk automaton format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub signature: Vec<String>,
    pub states: Vec<String>,
    pub transitions: Vec<(String, Vec<String>, Vec<String>)>,
    pub initial: String,
    pub accepting: Vec<String>,
}

/// Longest-path ranks over the state graph, or `None` on a cycle.
pub fn is_acyclic(a: &ModalAutomaton) -> Option<AcyclicityWitness> {
    let n = a.states.len();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for t in &a.transitions {
        succ[t.from].extend(t.to.iter().copied());
    }
    // 0 unvisited, 1 on stack, 2 done
    let mut mark = vec![0u8; n];
    let mut rank = vec![0usize; n];
    for start in 0..n {
        if mark[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, succ[start].iter().copied().collect())];
        mark[start] = 1;
        while let Some((q, pending)) = stack.last_mut() {
            let q = *q;
            match pending.pop() {
                Some(r) => match mark[r] {
                    1 => return None,
                    0 => {
                        mark[r] = 1;
                        stack.push((r, succ[r].iter().copied().collect()));
                    }
                    _ => {}
                },
                None => {
                    rank[q] = succ[q].iter().map(|&r| rank[r] + 1).max().unwrap_or(0);
                    mark[q] = 2;
                    stack.pop();
                }
            }
        }
    }
    Some(AcyclicityWitness { rank })
}

/// Admissible states per world, computed bottom-up on a finite tree.
fn admissible(
    a: &ModalAutomaton,
    t: &PointedModel,
    exact: fn(&[usize], &[Vec<bool>]) -> bool,
) -> Result<Vec<Vec<bool>>> {
    if !t.is_tree() {
        return Err(Error::Precondition("automata run on finite trees only".into()));
    }
    let m = &t.model;
    let mut order = vec![t.point];
    let mut i = 0;
    while i < order.len() {
        order.extend_from_slice(m.successors(order[i]));
        i += 1;
    }
    let by_source = a.by_source();
    let mut adm = vec![Vec::new(); m.len()];
    for &w in order.iter().rev() {
        let label = a.label(m, w);
        let children: Vec<Vec<bool>> = m.successors(w).iter().map(|&c| adm[c].clone()).collect();
        adm[w] = (0..a.states.len())
            .map(|q| {
                a.accepting.contains(&q)
                    || by_source[q]
                        .iter()
                        .any(|tr| tr.letter == label && exact(&tr.to, &children))
            })
            .collect();
    }
    Ok(adm)
}

/// Every child gets some state of `targets` and every target is used.
fn exact_image(targets: &[usize], children: &[Vec<bool>]) -> bool {
    if targets.len() > children.len() {
        return false;
    }
    if !children.iter().all(|c| targets.iter().any(|&q| c[q])) {
        return false;
    }
    // Kuhn's matching of targets into distinct children
    fn augment(
        s: usize,
        targets: &[usize],
        children: &[Vec<bool>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for (c, adm) in children.iter().enumerate() {
            if adm[targets[s]] && !seen[c] {
                seen[c] = true;
                if owner[c].is_none_or(|o| augment(o, targets, children, seen, owner)) {
                    owner[c] = Some(s);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; children.len()];
    (0..targets.len()).all(|s| {
        let mut seen = vec![false; children.len()];
        augment(s, targets, children, &mut seen, &mut owner)
    })
}

/// Enumerates every assignment of children to targets.
fn exact_image_brute(targets: &[usize], children: &[Vec<bool>]) -> bool {
    let k = targets.len();
    if k == 0 {
        return children.is_empty();
    }
    let total = k.checked_pow(children.len() as u32).expect("small fanout");
    (0..total).any(|mut code| {
        let mut used = vec![false; k];
        for c in children {
            let s = code % k;
            code /= k;
            if !c[targets[s]] {
                return false;
            }
            used[s] = true;
        }
        used.into_iter().all(|u| u)
    })
}

pub fn accepts(a: &ModalAutomaton, t: &PointedModel) -> Result<bool> {
    Ok(admissible(a, t, exact_image)?[t.point][a.initial])
}

/// Acceptance with exhaustive child assignments; for cross-checking only.
pub fn accepts_brute(a: &ModalAutomaton, t: &PointedModel) -> Result<bool> {
    if (0..t.model.len()).any(|w| t.model.successors(w).len() > 4) {
        return Err(Error::Resource("brute-force acceptance limited to fanout 4".into()));
    }
    Ok(admissible(a, t, exact_image_brute)?[t.point][a.initial])
}

/// Restrict every transition letter to `keep`.
pub fn project(a: &ModalAutomaton, keep: &SignatureSet) -> Result<ModalAutomaton> {
    let sigma = a.signature();
    if !keep.is_subset(&sigma) {
        return Err(Error::Precondition("projection signature must be a subset".into()));
    }
    let remap: Vec<Option<usize>> = a.signature.iter().map(|p| keep.iter().position(|k| k == p)).collect();
    let transitions = a.transitions.iter().map(|t| Transition {
        from: t.from,
        letter: remap
            .iter()
            .enumerate()
            .filter(|(i, _)| t.letter & (1 << i) != 0)
            .filter_map(|(_, j)| *j)
            .fold(0, |acc, j| acc | (1 << j)),
        to: t.to.clone(),
    });
    ModalAutomaton::new(
        keep,
        a.states.clone(),
        transitions,
        a.initial,
        a.accepting.iter().copied(),
    )
}

/// `chi` of the initial state: accepting states give true, the others the
/// disjunction over their transitions of the letter description and a
/// nabla over the target formulas.
pub fn automaton_to_formula(a: &ModalAutomaton) -> Result<Formula> {
    let witness = is_acyclic(a).ok_or_else(|| Error::Rejected("automaton is not acyclic".into()))?;
    let mut order: Vec<usize> = (0..a.states.len()).collect();
    order.sort_by_key(|&q| witness.rank[q]);
    let by_source = a.by_source();
    let mut letters: HashMap<Letter, Formula> = HashMap::new();
    let mut chi: Vec<Option<Formula>> = vec![None; a.states.len()];
    for q in order {
        let f = if a.accepting.contains(&q) {
            Formula::top()
        } else {
            Formula::disjunction(by_source[q].iter().map(|t| {
                let desc = *letters.entry(t.letter).or_insert_with(|| {
                    Formula::conjunction((0..a.signature.len()).map(|i| {
                        let p = Formula::prop(&a.signature[i]);
                        if t.letter & (1 << i) != 0 {
                            p
                        } else {
                            Formula::not(p)
                        }
                    }))
                });
                let nabla = Formula::nabla(t.to.iter().map(|&r| chi[r].expect("lower rank first")));
                Formula::conjunction([desc, nabla])
            }))
        };
        chi[q] = Some(f);
    }
    Ok(chi[a.initial].expect("initial state"))
}

pub fn craig_via_automata(phi: Formula, psi: Formula) -> Result<Formula> {
    require_valid(phi, psi)?;
    let sigma = sig(phi);
    let a = formula_to_automaton(phi, &sigma)?;
    let p = project(&a, &sigma.intersection(&sig(psi)))?;
    Ok(expand_nabla(automaton_to_formula(&p)?))
}

/// The automaton of the acceptance example: on `{p}`, states `q0` and
/// accepting `q1`, transitions `(q0, {}, {q0})`, `(q0, {p}, {})` and
/// `(q0, {p}, {q1})`; with the six-world tree it accepts.
pub fn looping_automaton() -> (ModalAutomaton, PointedModel) {
    let sigma: SignatureSet = ["p"].into_iter().collect();
    let a = ModalAutomaton::new(
        &sigma,
        vec!["q0".into(), "q1".into()],
        [
            Transition {
                from: 0,
                letter: 0,
                to: vec![0],
            },
            Transition {
                from: 0,
                letter: 1,
                to: vec![],
            },
            Transition {
                from: 0,
                letter: 1,
                to: vec![1],
            },
        ],
        0,
        [1],
    )
    .expect("well formed");
    let mut m = KripkeModel::new();
    let w: Vec<usize> = (0..6).map(|i| m.add_world(format!("w{i}"))).collect();
    for (x, y) in [(0, 1), (1, 2), (1, 3), (2, 4), (3, 5)] {
        m.add_edge(w[x], w[y]);
    }
    m.set_true("p", w[3]);
    m.set_true("p", w[4]);
    (a, PointedModel::new(m, w[0]))
}

/// Ranks keyed by state name.
pub fn state_ranks(a: &ModalAutomaton) -> Option<BTreeMap<String, usize>> {
    is_acyclic(a).map(|w| a.states.iter().cloned().zip(w.rank).collect())
}
