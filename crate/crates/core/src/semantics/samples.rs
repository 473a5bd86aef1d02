//! Small models used in the documentation examples and the test suites.

use super::{BisimRelation, KripkeModel, PointedModel};
use crate::formula::SignatureSet;

fn build(worlds: &[&str], edges: &[(&str, &str)], val: &[(&str, &[&str])]) -> KripkeModel {
    let mut m = KripkeModel::new();
    for w in worlds {
        m.add_world(*w);
    }
    for (a, b) in edges {
        let (a, b) = (m.world(a).unwrap(), m.world(b).unwrap());
        m.add_edge(a, b);
    }
    for (p, ws) in val {
        m.declare_letter(*p);
        for w in *ws {
            let w = m.world(w).unwrap();
            m.set_true(*p, w);
        }
    }
    m
}

/// `w0 -> w1(p)` with a loop at `w1`, and `v0 -> v1(p) -> v2(p)` with a loop at `v2`.
pub fn looping_pair() -> (KripkeModel, KripkeModel) {
    let m = build(&["w0", "w1"], &[("w0", "w1"), ("w1", "w1")], &[("p", &["w1"])]);
    let n = build(
        &["v0", "v1", "v2"],
        &[("v0", "v1"), ("v1", "v2"), ("v2", "v2")],
        &[("p", &["v1", "v2"])],
    );
    (m, n)
}

fn example3_frames(left_val: &[(&str, &[&str])], right_val: &[(&str, &[&str])]) -> (KripkeModel, KripkeModel) {
    let m = build(
        &["w1", "w2", "w3_1", "w3_2"],
        &[("w1", "w2"), ("w2", "w3_1"), ("w2", "w3_2")],
        left_val,
    );
    let n = build(
        &["v1", "v2_1", "v2_2", "v3"],
        &[("v1", "v2_1"), ("v1", "v2_2"), ("v2_1", "v3"), ("v2_2", "v3")],
        right_val,
    );
    (m, n)
}

fn example3_relation() -> BisimRelation {
    BisimRelation::with_pairs(
        ["q"].into_iter().collect::<SignatureSet>(),
        [
            ("w1", "v1"),
            ("w2", "v2_1"),
            ("w2", "v2_2"),
            ("w3_1", "v3"),
            ("w3_2", "v3"),
        ],
    )
}

/// Two models over `{q}` and a bisimulation of five pairs between them.
pub fn branching_pair() -> (KripkeModel, KripkeModel, BisimRelation) {
    let (m, n) = example3_frames(&[("q", &["w1", "w3_1", "w3_2"])], &[("q", &["v1", "v3"])]);
    (m, n, example3_relation())
}

/// The models of [`branching_pair`] expanded with `p` on the left and `r` on the
/// right, pointed at their roots.
pub fn branching_pair_expanded() -> (PointedModel, PointedModel, BisimRelation) {
    let (m, n) = example3_frames(
        &[("q", &["w1", "w3_1", "w3_2"]), ("p", &["w3_1"])],
        &[("q", &["v1", "v3"]), ("r", &["v2_2"])],
    );
    (PointedModel::new(m, 0), PointedModel::new(n, 0), example3_relation())
}

/// A diamond-shaped frame `w0 -> w1, w2 -> w3` with `p` at `w3`.
pub fn diamond_frame() -> PointedModel {
    let m = build(
        &["w0", "w1", "w2", "w3"],
        &[("w0", "w1"), ("w0", "w2"), ("w1", "w3"), ("w2", "w3")],
        &[("p", &["w3"])],
    );
    PointedModel::new(m, 0)
}
