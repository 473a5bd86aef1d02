use super::{KripkeModel, PointedModel};
use crate::formula::SignatureSet;

/// Tree unravelling truncated at `depth`, with every child duplicated
/// `fatness` times. World ids spell out the path, e.g. `<w0,1,w2>`.
pub fn unravel(pm: &PointedModel, depth: usize, fatness: usize) -> PointedModel {
    let fatness = fatness.max(1);
    let src = &pm.model;
    let mut out = KripkeModel::new();
    for p in src.signature().iter() {
        out.declare_letter(p.clone());
    }
    let root_id = format!("<{}>", src.id(pm.point));
    let root = out.add_world(root_id.clone());
    let mut origin = vec![pm.point];
    let mut frontier = vec![(root, root_id, pm.point)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (node, id, w) in frontier {
            for &v in src.successors(w) {
                for k in 0..fatness {
                    let child_id = format!("{},{},{}>", &id[..id.len() - 1], k, src.id(v));
                    let child = out.add_world(child_id.clone());
                    origin.push(v);
                    out.add_edge(node, child);
                    next.push((child, child_id, v));
                }
            }
        }
        frontier = next;
    }
    for (w, &orig) in origin.iter().enumerate() {
        for p in src.true_at(orig).iter() {
            out.set_true(p.clone(), w);
        }
    }
    PointedModel::new(out, root)
}

#[derive(Clone)]
struct Shape {
    label: u32,
    children: Vec<usize>,
}

/// Every tree of depth at most `depth` whose nodes have at most `branching`
/// children, labelled over `letters`. Siblings are generated as multisets, so
/// trees that differ only in child order appear once.
pub fn enumerate_trees(letters: &SignatureSet, depth: usize, branching: usize) -> Vec<PointedModel> {
    let names: Vec<&String> = letters.iter().collect();
    let labels = 1u32 << names.len();
    let mut pool: Vec<Shape> = (0..labels)
        .map(|label| Shape {
            label,
            children: Vec::new(),
        })
        .collect();
    // ids of trees with depth <= d, for the current d
    let mut upto: Vec<usize> = (0..pool.len()).collect();
    for _ in 0..depth {
        let mut fresh = Vec::new();
        let mut multisets: Vec<Vec<usize>> = vec![Vec::new()];
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..branching {
            let mut grown = Vec::new();
            for ms in &layer {
                let start = ms.last().copied().unwrap_or(0);
                for (i, _) in upto.iter().enumerate().skip(start) {
                    let mut m = ms.clone();
                    m.push(i);
                    grown.push(m);
                }
            }
            multisets.extend(grown.iter().cloned());
            layer = grown;
        }
        for label in 0..labels {
            for ms in &multisets {
                fresh.push(pool.len());
                pool.push(Shape {
                    label,
                    children: ms.iter().map(|&i| upto[i]).collect(),
                });
            }
        }
        upto = fresh;
    }
    upto.into_iter().map(|root| materialise(&pool, root, &names)).collect()
}

fn materialise(pool: &[Shape], root: usize, names: &[&String]) -> PointedModel {
    let mut m = KripkeModel::new();
    for p in names {
        m.declare_letter((*p).clone());
    }
    let mut stack = vec![(root, None::<usize>)];
    while let Some((shape, parent)) = stack.pop() {
        let w = m.add_world(format!("t{}", m.len()));
        if let Some(p) = parent {
            m.add_edge(p, w);
        }
        for (bit, p) in names.iter().enumerate() {
            if pool[shape].label & (1 << bit) != 0 {
                m.set_true((*p).clone(), w);
            }
        }
        for &c in pool[shape].children.iter().rev() {
            stack.push((c, Some(w)));
        }
    }
    PointedModel::new(m, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{nnf, parse, subf};
    use crate::semantics::{eval, samples};

    #[test]
    fn diamond_frame_unravelling() {
        let m1 = samples::diamond_frame();
        let t = unravel(&m1, 2, 1);
        assert!(t.is_tree());
        assert_eq!(t.model.len(), 5);
        assert_eq!(t.model.edge_count(), 4);
        assert_eq!(t.model.valuation()["p"].len(), 2);
        for leaf in t.model.valuation()["p"].iter() {
            assert!(t.model.successors(*leaf).is_empty());
        }
    }

    #[test]
    fn zero_depth_keeps_point_label() {
        let m1 = samples::diamond_frame();
        let w3 = m1.model.world("w3").unwrap();
        let t = unravel(&PointedModel::new(m1.model.clone(), w3), 0, 3);
        assert_eq!(t.model.len(), 1);
        assert!(t.model.holds("p", 0));
    }

    #[test]
    fn unravelling_preserves_bounded_truth() {
        let (m, _) = samples::looping_pair();
        let pm = PointedModel::new(m.clone(), m.world("w0").unwrap());
        let f = nnf(parse("<>(p & []<>p) & [](~p | <>[]p)").unwrap()).unwrap();
        let t = unravel(&pm, crate::formula::modal_depth(f), 2);
        for g in subf(f).unwrap() {
            let d = crate::formula::modal_depth(g);
            let t = unravel(&pm, d, 2);
            assert_eq!(
                eval(&m, pm.point, g).unwrap(),
                eval(&t.model, t.point, g).unwrap(),
                "{g}"
            );
        }
        assert!(eval(&t.model, t.point, f).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let two: SignatureSet = ["p", "q"].into_iter().collect();
        assert_eq!(enumerate_trees(&two, 0, 2).len(), 4);
        // 4 labels x (1 + 4 + 10) child multisets
        assert_eq!(enumerate_trees(&two, 1, 2).len(), 60);
        // 4 labels x (1 + 60 + 60*61/2)
        let all = enumerate_trees(&two, 2, 2);
        assert_eq!(all.len(), 4 * (1 + 60 + 1830));
        assert!(all.iter().all(|t| t.is_tree()));
        assert_eq!(enumerate_trees(&SignatureSet::new(), 1, 1).len(), 2);
    }
}
