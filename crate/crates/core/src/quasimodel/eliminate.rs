//! Combined types and the elimination procedure.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use serde_json::json;

use super::types::{roots, side_types, Entry, Table, Universe};
use crate::error::{Error, Result};
use crate::formula::Formula;

/// Which component of a combined type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    L,
    R,
}

/// Order in which failing types are removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Order {
    /// Each round removes every failing type, lowest index first.
    #[default]
    Deterministic,
    /// Each round removes a random nonempty subset of the failing types in
    /// random order.
    Random(u64),
}

#[derive(Clone, Copy, Debug)]
pub struct QuasiConfig {
    pub universe: Universe,
    /// Per-side subformula limit for the full universe.
    pub max_subformulas: usize,
    /// Limit on the number of combined types.
    pub max_types: usize,
    pub order: Order,
}

impl Default for QuasiConfig {
    fn default() -> Self {
        QuasiConfig {
            universe: Universe::Demand,
            max_subformulas: 20,
            max_types: 400_000,
            order: Order::Deterministic,
        }
    }
}

/// A pair of locally consistent sets over the shared subformula table.
#[derive(Clone, Debug)]
pub struct CombinedType {
    pub left: FixedBitSet,
    pub right: FixedBitSet,
    table: Arc<Table>,
}

impl CombinedType {
    pub fn left_formulas(&self) -> Vec<Formula> {
        self.table.members(&self.left)
    }

    pub fn right_formulas(&self) -> Vec<Formula> {
        self.table.members(&self.right)
    }

    pub fn contains(&self, side: Side, f: Formula) -> bool {
        let set = match side {
            Side::L => &self.left,
            Side::R => &self.right,
        };
        self.table.index_of(f).is_some_and(|i| set.contains(i))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let show = |fs: Vec<Formula>| fs.iter().map(ToString::to_string).collect::<Vec<_>>();
        json!({"L": show(self.left_formulas()), "R": show(self.right_formulas())})
    }
}

impl PartialEq for CombinedType {
    fn eq(&self, other: &Self) -> bool {
        self.left_formulas() == other.left_formulas() && self.right_formulas() == other.right_formulas()
    }
}

/// Index of a combined type inside its [`TypeSpace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeId {
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    /// `side` L means the letter is in the left component and its negation in
    /// the right one.
    OverlapClash {
        letter: String,
        side: Side,
    },
    DiamondUnwitnessed {
        side: Side,
        diamond: Formula,
    },
}

impl Serialize for Reason {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Reason::OverlapClash { letter, side } => {
                json!({"OverlapClash": {"letter": letter, "side": side}}).serialize(s)
            }
            Reason::DiamondUnwitnessed { side, diamond } => {
                json!({"DiamondUnwitnessed": {"side": side, "formula": diamond.to_string()}}).serialize(s)
            }
        }
    }
}

/// A group of candidate successors: left indices times right indices.
pub(crate) type Key = (u32, u32);

#[derive(Clone, Debug)]
pub struct Step {
    pub ty: TypeId,
    pub reason: Reason,
    pub(crate) key: Option<Key>,
}

/// All combined types of a problem plus the successor structure.
#[derive(Debug)]
pub struct TypeSpace {
    pub(crate) table: Arc<Table>,
    pub(crate) left: Vec<FixedBitSet>,
    pub(crate) right: Vec<FixedBitSet>,
    pub(crate) left_root: usize,
    pub(crate) right_root: usize,
    /// Interned lists of type indices, per side.
    pub(crate) lists: [Vec<Vec<usize>>; 2],
    /// Per type: the list of its possible successors.
    succ: [Vec<u32>; 2],
    /// Per type: its diamonds with the list of witnessing successors.
    demands: [Vec<Vec<(usize, u32)>>; 2],
    letters: Vec<String>,
    /// Per type: positive and negative letter ids.
    lits: [Vec<(FixedBitSet, FixedBitSet)>; 2],
}

impl TypeSpace {
    pub fn build(phi: Formula, psi: Formula, config: &QuasiConfig) -> Result<TypeSpace> {
        let (l, r) = roots(phi, psi)?;
        let table = Table::build(l, r)?;
        let (left_root, right_root) = (table.index_of(l).expect("root"), table.index_of(r).expect("root"));
        let left = side_types(
            &table,
            0,
            left_root,
            config.universe,
            config.max_subformulas,
            config.max_types,
        )?;
        let right = side_types(
            &table,
            1,
            right_root,
            config.universe,
            config.max_subformulas,
            config.max_types,
        )?;
        if left.len().saturating_mul(right.len()) > config.max_types {
            return Err(Error::Resource(format!(
                "{} x {} combined types exceed the limit of {}",
                left.len(),
                right.len(),
                config.max_types
            )));
        }
        let letters: Vec<String> = table
            .entries
            .iter()
            .filter_map(|e| match e {
                Entry::Lit { letter, .. } => Some(letter.clone()),
                _ => None,
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut space = TypeSpace {
            table: Arc::new(table),
            left,
            right,
            left_root,
            right_root,
            lists: [Vec::new(), Vec::new()],
            succ: [Vec::new(), Vec::new()],
            demands: [Vec::new(), Vec::new()],
            letters,
            lits: [Vec::new(), Vec::new()],
        };
        for side in 0..2 {
            space.index_side(side);
        }
        Ok(space)
    }

    fn index_side(&mut self, side: usize) {
        let table = self.table.clone();
        let types = if side == 0 { &self.left } else { &self.right };
        let mut interned: HashMap<Vec<usize>, u32> = HashMap::new();
        let mut lists = Vec::new();
        let mut intern = |list: Vec<usize>| -> u32 {
            *interned.entry(list.clone()).or_insert_with(|| {
                lists.push(list);
                (lists.len() - 1) as u32
            })
        };
        let mut by_bodies: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
        let mut succ = Vec::with_capacity(types.len());
        let mut demands = Vec::with_capacity(types.len());
        let mut lits = Vec::with_capacity(types.len());
        for t in types {
            let bodies = table.bodies(t);
            let candidates = by_bodies
                .entry(bodies.clone())
                .or_insert_with(|| (0..types.len()).filter(|&j| bodies.is_subset(&types[j])).collect())
                .clone();
            let own: Vec<(usize, u32)> = table
                .diamonds(t)
                .into_iter()
                .map(|(d, c)| {
                    let list = candidates.iter().copied().filter(|&j| types[j].contains(c)).collect();
                    (d, intern(list))
                })
                .collect();
            succ.push(intern(candidates));
            demands.push(own);
            let mut pos = FixedBitSet::with_capacity(self.letters.len());
            let mut neg = pos.clone();
            for i in t.ones() {
                if let Entry::Lit { letter, positive } = &table.entries[i] {
                    let id = self.letters.binary_search(letter).expect("letter");
                    if *positive {
                        pos.insert(id);
                    } else {
                        neg.insert(id);
                    }
                }
            }
            lits.push((pos, neg));
        }
        self.lists[side] = lists;
        self.succ[side] = succ;
        self.demands[side] = demands;
        self.lits[side] = lits;
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.left.len() * self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn left_count(&self) -> usize {
        self.left.len()
    }

    pub fn right_count(&self) -> usize {
        self.right.len()
    }

    pub fn index(&self, t: TypeId) -> usize {
        t.left * self.right.len() + t.right
    }

    pub(crate) fn id(&self, index: usize) -> TypeId {
        TypeId {
            left: index / self.right.len(),
            right: index % self.right.len(),
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = TypeId> + '_ {
        (0..self.len()).map(|i| self.id(i))
    }

    pub fn combined(&self, t: TypeId) -> CombinedType {
        CombinedType {
            left: self.left[t.left].clone(),
            right: self.right[t.right].clone(),
            table: self.table.clone(),
        }
    }

    /// `nnf(phi)` is in the left component.
    pub fn has_left_root(&self, t: TypeId) -> bool {
        self.left[t.left].contains(self.left_root)
    }

    /// `nnf(~psi)` is in the right component.
    pub fn has_right_root(&self, t: TypeId) -> bool {
        self.right[t.right].contains(self.right_root)
    }

    /// `t => u`: every box body of `t` is in `u`, componentwise.
    pub fn viable(&self, t: TypeId, u: TypeId) -> bool {
        self.table.bodies(&self.left[t.left]).is_subset(&self.left[u.left])
            && self.table.bodies(&self.right[t.right]).is_subset(&self.right[u.right])
    }

    fn clash(&self, t: TypeId) -> Option<Reason> {
        let (lp, ln) = &self.lits[0][t.left];
        let (rp, rn) = &self.lits[1][t.right];
        let a = lp.intersection(rn).next();
        let b = ln.intersection(rp).next();
        let (id, side) = match (a, b) {
            (Some(x), Some(y)) if y < x => (y, Side::R),
            (Some(x), _) => (x, Side::L),
            (None, Some(y)) => (y, Side::R),
            (None, None) => return None,
        };
        Some(Reason::OverlapClash {
            letter: self.letters[id].clone(),
            side,
        })
    }

    /// Diamond demands of `t` as (side, diamond index, key).
    fn demand_keys(&self, t: TypeId) -> impl Iterator<Item = (Side, usize, Key)> + '_ {
        let left = self.demands[0][t.left]
            .iter()
            .map(move |&(d, list)| (Side::L, d, (list, self.succ[1][t.right])));
        let right = self.demands[1][t.right]
            .iter()
            .map(move |&(d, list)| (Side::R, d, (self.succ[0][t.left], list)));
        left.chain(right)
    }

    pub(crate) fn key_members(&self, key: Key) -> (&[usize], &[usize]) {
        (&self.lists[0][key.0 as usize], &self.lists[1][key.1 as usize])
    }
}

#[derive(Clone, Copy)]
enum KeyState {
    Witness(usize),
    Dead,
}

/// Elimination state over a type space.
struct Eliminator<'a> {
    space: &'a TypeSpace,
    alive: FixedBitSet,
    keys: HashMap<Key, KeyState>,
}

impl<'a> Eliminator<'a> {
    fn key_alive(&mut self, key: Key) -> bool {
        match self.keys.get(&key) {
            Some(KeyState::Dead) => return false,
            Some(KeyState::Witness(w)) if self.alive.contains(*w) => return true,
            _ => {}
        }
        let (ls, rs) = self.space.key_members(key);
        let nr = self.space.right.len();
        let found = ls
            .iter()
            .flat_map(|&a| rs.iter().map(move |&b| a * nr + b))
            .find(|&i| self.alive.contains(i));
        let state = found.map_or(KeyState::Dead, KeyState::Witness);
        self.keys.insert(key, state);
        found.is_some()
    }

    fn failure(&mut self, t: TypeId) -> Option<(Reason, Option<Key>)> {
        if let Some(r) = self.space.clash(t) {
            return Some((r, None));
        }
        let demands: Vec<_> = self.space.demand_keys(t).collect();
        for (side, d, key) in demands {
            if !self.key_alive(key) {
                let diamond = self.space.table.formula(d);
                return Some((Reason::DiamondUnwitnessed { side, diamond }, Some(key)));
            }
        }
        None
    }
}

/// Run type elimination to its fixpoint.
pub fn run(space: Arc<TypeSpace>, order: Order) -> EliminationTrace {
    let n = space.len();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut el = Eliminator {
        space: &space,
        alive,
        keys: HashMap::new(),
    };
    let mut rng = match order {
        Order::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Order::Deterministic => None,
    };
    let mut steps = Vec::new();
    loop {
        let current: Vec<usize> = el.alive.ones().collect();
        let mut failing: Vec<(usize, Reason, Option<Key>)> = current
            .into_iter()
            .filter_map(|i| el.failure(space.id(i)).map(|(r, k)| (i, r, k)))
            .collect();
        if failing.is_empty() {
            break;
        }
        if let Some(rng) = rng.as_mut() {
            failing.shuffle(rng);
            let take = rng.gen_range(1..=failing.len());
            failing.truncate(take);
        }
        for (i, reason, key) in failing {
            el.alive.set(i, false);
            steps.push(Step {
                ty: space.id(i),
                reason,
                key,
            });
        }
    }
    let alive = el.alive;
    EliminationTrace { space, steps, alive }
}

/// The sequence of eliminated types and the surviving set.
#[derive(Clone, Debug)]
pub struct EliminationTrace {
    pub space: Arc<TypeSpace>,
    pub steps: Vec<Step>,
    alive: FixedBitSet,
}

impl EliminationTrace {
    /// The starting set: every type of the space.
    pub fn initial(&self) -> impl Iterator<Item = TypeId> + '_ {
        self.space.ids()
    }

    pub fn survivors(&self) -> impl Iterator<Item = TypeId> + '_ {
        self.alive.ones().map(|i| self.space.id(i))
    }

    pub fn survives(&self, t: TypeId) -> bool {
        self.alive.contains(self.space.index(t))
    }

    pub fn final_set(&self) -> Vec<CombinedType> {
        self.survivors().map(|t| self.space.combined(t)).collect()
    }

    pub fn final_indices(&self) -> Vec<usize> {
        self.alive.ones().collect()
    }

    /// A type with `nnf(phi)` on the left and `nnf(~psi)` on the right survived.
    pub fn root_survives(&self) -> bool {
        self.survivors()
            .any(|t| self.space.has_left_root(t) && self.space.has_right_root(t))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let steps: Vec<_> = self
            .steps
            .iter()
            .map(|s| json!({"type": self.space.combined(s.ty).to_json(), "reason": s.reason}))
            .collect();
        let survivors: Vec<_> = self.survivors().map(|t| self.space.combined(t).to_json()).collect();
        json!({
            "initial_count": self.space.len(),
            "steps": steps,
            "final": survivors,
        })
    }

    /// The quasi-model conditions on an arbitrary set of type indices.
    pub fn is_quasimodel(space: &TypeSpace, set: &FixedBitSet) -> bool {
        let mut el = Eliminator {
            space,
            alive: set.clone(),
            keys: HashMap::new(),
        };
        set.ones().all(|i| el.failure(space.id(i)).is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn trace(phi: &str, psi: &str, order: Order) -> EliminationTrace {
        let space = TypeSpace::build(parse(phi).unwrap(), parse(psi).unwrap(), &QuasiConfig::default()).unwrap();
        run(Arc::new(space), order)
    }

    #[test]
    fn atom_clash() {
        let t = trace("p", "p", Order::Deterministic);
        assert_eq!(t.space.len(), 4);
        assert_eq!(t.steps.len(), 1);
        let step = &t.steps[0];
        let ty = t.space.combined(step.ty);
        assert_eq!(ty.left_formulas(), vec![parse("p").unwrap()]);
        assert_eq!(ty.right_formulas(), vec![parse("~p").unwrap()]);
        assert_eq!(
            step.reason,
            Reason::OverlapClash {
                letter: "p".into(),
                side: Side::L
            }
        );
        assert!(!t.root_survives());
    }

    #[test]
    fn diamond_gets_witness() {
        let t = trace("<>p", "false", Order::Deterministic);
        let (dp, p) = (parse("<>p").unwrap(), parse("p").unwrap());
        let found = t.survivors().any(|a| {
            t.space.combined(a).contains(Side::L, dp)
                && t.survivors()
                    .any(|b| t.space.viable(a, b) && t.space.combined(b).contains(Side::L, p))
        });
        assert!(found);
    }

    #[test]
    fn unwitnessed_diamond() {
        let t = trace("<>p & []~p", "false", Order::Deterministic);
        let root = parse("<>p & []~p").unwrap();
        assert!(t.survivors().all(|a| !t.space.combined(a).contains(Side::L, root)));
        let reasons: Vec<_> = t
            .steps
            .iter()
            .filter(|s| t.space.combined(s.ty).contains(Side::L, root))
            .map(|s| s.reason.clone())
            .collect();
        assert!(!reasons.is_empty());
        assert!(reasons
            .iter()
            .all(|r| matches!(r, Reason::DiamondUnwitnessed { side: Side::L, .. })));
    }

    #[test]
    fn final_set_is_a_quasimodel_and_orders_agree() {
        let base = trace("<>(p & q) & [](~p | r)", "<>(r & q) | []p", Order::Deterministic);
        let mut set = FixedBitSet::with_capacity(base.space.len());
        set.extend(base.final_indices());
        assert!(EliminationTrace::is_quasimodel(&base.space, &set));
        for seed in 0..10 {
            let other = trace("<>(p & q) & [](~p | r)", "<>(r & q) | []p", Order::Random(seed));
            assert_eq!(other.final_indices(), base.final_indices());
        }
    }

    #[test]
    fn trace_json_shape() {
        let t = trace("p", "p", Order::Deterministic);
        let v = t.to_json();
        assert_eq!(v["steps"][0]["type"]["L"][0], "p");
        assert_eq!(v["steps"][0]["reason"]["OverlapClash"]["letter"], "p");
        assert_eq!(v["final"].as_array().unwrap().len(), 3);
    }
}
