use super::{check_bisimulation, BisimRelation, KripkeModel, PointedModel};
use crate::error::{Error, Result};

/// World id of a product pair.
pub fn pair_id(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Subdirect product of `m` and `n` with domain `z`. Pairs are listed in the
/// order of the left world, then the right world. Letters of `z.signature`
/// hold at a pair iff they hold at both components.
pub fn bisimulation_product(m: &KripkeModel, n: &KripkeModel, z: &BisimRelation) -> Result<KripkeModel> {
    if !check_bisimulation(m, n, z) {
        return Err(Error::Rejected("relation is not a bisimulation".into()));
    }
    let mut pairs = z.indices(m, n).expect("checked above");
    pairs.sort_unstable();
    let mut out = KripkeModel::new();
    for &(a, b) in &pairs {
        out.add_world(pair_id(m.id(a), n.id(b)));
    }
    for p in z.signature.iter() {
        out.declare_letter(p.clone());
    }
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate() {
            if m.successors(a).binary_search(&c).is_ok() && n.successors(b).binary_search(&d).is_ok() {
                out.add_edge(i, j);
            }
        }
        for p in z.signature.iter() {
            if m.holds(p, a) && n.holds(p, b) {
                out.set_true(p.clone(), i);
            }
        }
    }
    Ok(out)
}

/// The relations linking each product pair to its left and right component.
pub fn projections(m: &KripkeModel, n: &KripkeModel, z: &BisimRelation) -> (BisimRelation, BisimRelation) {
    let mut left = BisimRelation::new(m.signature());
    let mut right = BisimRelation::new(n.signature());
    for (a, b) in &z.pairs {
        left.pairs.insert((pair_id(a, b), a.clone()));
        right.pairs.insert((pair_id(a, b), b.clone()));
    }
    (left, right)
}

/// Amalgamate two pointed models over a bisimulation on their common
/// letters: the product over the common signature, with the left-only
/// letters read off the left component and the right-only letters off the
/// right component.
pub fn amalgamate(m1: &PointedModel, m2: &PointedModel, z: &BisimRelation) -> Result<PointedModel> {
    let sigma = m1.model.signature();
    let tau = m2.model.signature();
    let common = sigma.intersection(&tau);
    let (a, b) = (m1.model.id(m1.point), m2.model.id(m2.point));
    if !z.contains(a, b) {
        return Err(Error::Rejected(format!("point pair ({a},{b}) is not in the relation")));
    }
    let zc = BisimRelation {
        pairs: z.pairs.clone(),
        signature: common,
    };
    let mut out = bisimulation_product(&m1.model, &m2.model, &zc)?;
    for p in sigma.difference(&tau).iter() {
        out.declare_letter(p.clone());
    }
    for p in tau.difference(&sigma).iter() {
        out.declare_letter(p.clone());
    }
    let mut pairs = zc.indices(&m1.model, &m2.model).expect("checked by product");
    pairs.sort_unstable();
    for (i, &(u, v)) in pairs.iter().enumerate() {
        for p in sigma.difference(&tau).iter() {
            if m1.model.holds(p, u) {
                out.set_true(p.clone(), i);
            }
        }
        for p in tau.difference(&sigma).iter() {
            if m2.model.holds(p, v) {
                out.set_true(p.clone(), i);
            }
        }
    }
    let point = out.world(&pair_id(a, b)).expect("point pair is a world");
    Ok(PointedModel::new(out, point))
}
