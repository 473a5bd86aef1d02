//! Type elimination: satisfiability, validity of implications and Lyndon
//! interpolants.
//!
//! By default the candidate types are generated on demand from the formulas
//! that a world can be required to satisfy. [`Universe::Full`] enumerates
//! every locally consistent set instead and is only usable on small inputs.

mod eliminate;
mod interpolant;
pub(crate) mod types;

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{Formula, Node};
use crate::semantics::{truth_sets, KripkeModel, PointedModel};

pub use eliminate::{CombinedType, EliminationTrace, Order, QuasiConfig, Reason, Side, Step, TypeId, TypeSpace};
pub use types::{Table, Universe};

#[derive(Clone, Debug)]
pub struct SatResult {
    pub satisfiable: bool,
    pub witness: Option<PointedModel>,
    pub trace: EliminationTrace,
}

/// Every pair of locally consistent subsets of the two closures.
pub fn all_types(phi: Formula, psi: Formula) -> Result<Vec<CombinedType>> {
    let config = QuasiConfig {
        universe: Universe::Full,
        ..QuasiConfig::default()
    };
    let space = TypeSpace::build(phi, psi, &config)?;
    Ok(space.ids().map(|t| space.combined(t)).collect())
}

pub fn eliminate(phi: Formula, psi: Formula) -> Result<EliminationTrace> {
    eliminate_with(phi, psi, &QuasiConfig::default())
}

pub fn eliminate_with(phi: Formula, psi: Formula, config: &QuasiConfig) -> Result<EliminationTrace> {
    let space = TypeSpace::build(phi, psi, config)?;
    Ok(eliminate::run(Arc::new(space), config.order))
}

pub fn satisfiable(f: Formula) -> Result<SatResult> {
    satisfiable_with(f, &QuasiConfig::default())
}

pub fn satisfiable_with(f: Formula, config: &QuasiConfig) -> Result<SatResult> {
    let trace = eliminate_with(f, Formula::bot(), config)?;
    let root = trace.survivors().find(|&t| trace.space.has_left_root(t));
    let witness = root.map(|t| witness(&trace, t));
    Ok(SatResult {
        satisfiable: witness.is_some(),
        witness,
        trace,
    })
}

/// The model on surviving types reachable from `root`, keeping one viable
/// successor per diamond. The truth lemma is checked for every member of every
/// type.
fn witness(trace: &EliminationTrace, root: TypeId) -> PointedModel {
    let space = &trace.space;
    let survivors: Vec<TypeId> = trace.survivors().collect();
    let mut world: HashMap<TypeId, usize> = HashMap::new();
    let mut m = KripkeModel::new();
    let mut queue = VecDeque::from([root]);
    world.insert(root, m.add_world(format!("t{}", space.index(root))));
    let mut order = vec![root];
    while let Some(t) = queue.pop_front() {
        let ty = space.combined(t);
        let demands: Vec<(Side, Formula)> = ty
            .left_formulas()
            .into_iter()
            .map(|g| (Side::L, g))
            .chain(ty.right_formulas().into_iter().map(|g| (Side::R, g)))
            .filter_map(|(side, g)| match g.node() {
                Node::Diamond(c) => Some((side, c)),
                _ => None,
            })
            .collect();
        for (side, c) in demands {
            let u = *survivors
                .iter()
                .find(|&&u| space.viable(t, u) && space.combined(u).contains(side, c))
                .expect("surviving types have witnesses");
            let w = *world.entry(u).or_insert_with(|| {
                queue.push_back(u);
                order.push(u);
                m.add_world(format!("t{}", space.index(u)))
            });
            m.add_edge(world[&t], w);
        }
    }
    for t in &order {
        let ty = space.combined(*t);
        for g in ty.left_formulas().into_iter().chain(ty.right_formulas()) {
            if let Some((p, true)) = g.as_literal() {
                m.set_true(p.to_string(), world[t]);
            }
        }
    }
    let members: Vec<Formula> = space.table().formulas.clone();
    let truth = truth_sets(&m, &members);
    for t in &order {
        let ty = space.combined(*t);
        for g in ty.left_formulas().into_iter().chain(ty.right_formulas()) {
            assert!(truth[&g].contains(world[t]), "truth lemma fails for {g} at {t:?}");
        }
    }
    PointedModel::new(m, world[&root])
}

pub fn is_valid_implication(phi: Formula, psi: Formula) -> Result<bool> {
    Ok(!eliminate(phi, psi)?.root_survives())
}

pub fn lyndon_interpolant(phi: Formula, psi: Formula) -> Result<Formula> {
    lyndon_interpolant_with(phi, psi, &QuasiConfig::default()).map(|(f, _)| f)
}

/// The interpolant together with the trace it was read from.
pub fn lyndon_interpolant_with(
    phi: Formula,
    psi: Formula,
    config: &QuasiConfig,
) -> Result<(Formula, EliminationTrace)> {
    let trace = eliminate_with(phi, psi, config)?;
    if trace.root_survives() {
        return Err(Error::Rejected(format!("{phi} -> {psi} is not valid")));
    }
    let f = interpolant::Extractor::new(&trace).interpolant();
    Ok((f, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::lower_bound_family;
    use crate::formula::{parse, sig};
    use crate::semantics::eval;
    use crate::verify::{check_lyndon, equivalent};

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn all_types_atom() {
        let types = all_types(p("p"), p("p")).unwrap();
        assert_eq!(types.len(), 4);
        assert!(all_types(p("p & ~p"), p("q"))
            .unwrap()
            .iter()
            .all(|t| !t.contains(Side::L, p("p & ~p"))));
    }

    #[test]
    fn sat_examples() {
        assert!(!satisfiable(p("false")).unwrap().satisfiable);
        assert!(!satisfiable(p("<>p & []~p")).unwrap().satisfiable);
        let r = satisfiable(p("<>(p & q)")).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.model.len(), 2);
        assert!(eval(&w.model, w.point, p("<>(p & q)")).unwrap());
    }

    #[test]
    fn validity_examples() {
        assert!(is_valid_implication(p("[]p & []q"), p("[](p & q)")).unwrap());
        assert!(!is_valid_implication(p("<>p"), p("[]p")).unwrap());
        assert!(is_valid_implication(p("<>p & [](p -> q)"), p("<>p & <>q")).unwrap());
    }

    #[test]
    fn interpolant_examples() {
        let theta = lyndon_interpolant(p("p"), p("p | q")).unwrap();
        assert!(equivalent(theta, p("p")));
        let (phi, psi) = (p("<>(p & q)"), p("<>(p | r)"));
        let theta = lyndon_interpolant(phi, psi).unwrap();
        assert!(equivalent(theta, p("<>p")));
        assert!(sig(theta).iter().all(|l| l == "p"));
        assert!(check_lyndon(theta, phi, psi).all_ok());
        assert!(matches!(
            lyndon_interpolant(p("<>p"), p("[]p")),
            Err(Error::Rejected(_))
        ));
    }

    #[test]
    fn lower_bound_first_member() {
        let (phi, psi, chi) = lower_bound_family(1).unwrap();
        let theta = lyndon_interpolant(phi, psi).unwrap();
        assert!(equivalent(theta, chi));
        assert!(check_lyndon(theta, phi, psi).all_ok());
    }

    #[test]
    fn full_universe_agrees() {
        let full = QuasiConfig {
            universe: Universe::Full,
            ..QuasiConfig::default()
        };
        for (a, b) in [("[]p & <>q", "<>(p & q)"), ("<>p", "[]p"), ("[](p | q) & []~p", "[]q")] {
            let (phi, psi) = (p(a), p(b));
            let x = eliminate_with(phi, psi, &full).unwrap().root_survives();
            let y = eliminate(phi, psi).unwrap().root_survives();
            assert_eq!(x, y, "{a} -> {b}");
            if !x {
                let (theta, _) = lyndon_interpolant_with(phi, psi, &full).unwrap();
                assert!(check_lyndon(theta, phi, psi).all_ok());
            }
        }
    }
}
