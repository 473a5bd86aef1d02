use fixedbitset::FixedBitSet;
use proptest::prelude::*;

use modal_interp::automata::{accepts, accepts_brute, automaton_to_formula, formula_to_automaton, project};
use modal_interp::formula::{expand_nabla, modal_depth, nnf, polarity, sig, Formula};
use modal_interp::nabla::{is_nabla_form, remove_props, to_nabla_nf, uniform_interpolant};
use modal_interp::quasimodel::{
    eliminate_with, is_valid_implication, lyndon_interpolant, satisfiable, EliminationTrace, Order, QuasiConfig,
};
use modal_interp::semantics::{
    bisimulation_product, check_bisimulation, enumerate_trees, eval, largest_bisimulation, projections, KripkeModel,
    PointedModel,
};
use modal_interp::sequent::{maehara, prove, Part, Sequent, SplitSequent};
use modal_interp::verify::{check_lyndon, complete_bounds, equivalent, oracle_sat, valid_implication};
use modal_interp::{parse, SignatureSet};

fn letters(n: usize) -> Vec<Formula> {
    ["p", "q", "r"][..n].iter().map(|l| Formula::prop(l)).collect()
}

/// Formulas over the first `n` letters with at most `size` levels of
/// connectives and modal depth at most `modal`.
fn arb_formula(n: usize, size: u32, modal: u32) -> BoxedStrategy<Formula> {
    let mut leaves: Vec<Formula> = letters(n);
    leaves.extend([Formula::top(), Formula::bot()]);
    let leaf = prop::sample::select(leaves).boxed();
    if size == 0 {
        return leaf;
    }
    let sub = arb_formula(n, size - 1, modal);
    let mut options = vec![
        leaf.clone(),
        leaf,
        sub.clone().prop_map(Formula::not).boxed(),
        (sub.clone(), sub.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed(),
        (sub.clone(), sub).prop_map(|(a, b)| Formula::or(a, b)).boxed(),
    ];
    if modal > 0 {
        let inner = arb_formula(n, size - 1, modal - 1);
        options.push(inner.clone().prop_map(Formula::boxed).boxed());
        options.push(inner.prop_map(Formula::diamond).boxed());
    }
    prop::strategy::Union::new(options).boxed()
}

fn small() -> BoxedStrategy<Formula> {
    arb_formula(3, 3, 2)
}

/// Valid implications from a few schemas over random parts.
fn arb_valid() -> BoxedStrategy<(Formula, Formula)> {
    let f = || arb_formula(3, 2, 1);
    prop_oneof![
        (f(), f(), f()).prop_map(|(a, x, y)| (Formula::and(a, x), Formula::or(a, y))),
        (f(), f()).prop_map(|(a, b)| (
            Formula::and(Formula::boxed(Formula::implies(a, b)), Formula::boxed(a)),
            Formula::boxed(b)
        )),
        (f(), f(), f()).prop_map(|(a, x, y)| (
            Formula::and(Formula::boxed(a), Formula::diamond(x)),
            Formula::or(Formula::diamond(Formula::and(a, x)), y)
        )),
        (f(), f()).prop_map(|(a, x)| (Formula::diamond(Formula::and(a, x)), Formula::diamond(a))),
    ]
    .boxed()
}

fn arb_model(letters: &'static [&'static str]) -> impl Strategy<Value = KripkeModel> {
    (1usize..=4).prop_flat_map(move |n| {
        (
            prop::collection::vec(any::<bool>(), n * n),
            prop::collection::vec(any::<bool>(), n * letters.len()),
        )
            .prop_map(move |(edges, val)| {
                let mut m = KripkeModel::new();
                for i in 0..n {
                    m.add_world(format!("w{i}"));
                }
                for l in letters {
                    m.declare_letter(*l);
                }
                for a in 0..n {
                    for b in 0..n {
                        if edges[a * n + b] {
                            m.add_edge(a, b);
                        }
                    }
                }
                for (k, l) in letters.iter().enumerate() {
                    for w in 0..n {
                        if val[k * n + w] {
                            m.set_true(*l, w);
                        }
                    }
                }
                m
            })
    })
}

fn sigma(ls: &[&str]) -> SignatureSet {
    ls.iter().copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn print_parse_round_trip(f in arb_formula(3, 4, 3)) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn nnf_idempotent_equivalent_polarity(f in arb_formula(3, 3, 3)) {
        let g = nnf(f).unwrap();
        prop_assert_eq!(nnf(g).unwrap(), g);
        prop_assert!(equivalent(f, g));
        prop_assert_eq!(polarity(g), polarity(f));
    }

    #[test]
    fn nabla_nf_expands_back(f in small()) {
        let nf = to_nabla_nf(f).unwrap();
        prop_assert!(is_nabla_form(nf));
        prop_assert!(equivalent(expand_nabla(nf), f));
        prop_assert!(polarity(nf).within(&polarity(f)));
    }

    #[test]
    fn letter_removal_keeps_grammar(f in small(), drop_q in any::<bool>(), drop_r in any::<bool>()) {
        let mut drop = SignatureSet::new();
        if drop_q { drop.insert("q"); }
        if drop_r { drop.insert("r"); }
        let nf = to_nabla_nf(f).unwrap();
        let removed = remove_props(nf, &drop);
        prop_assert!(is_nabla_form(removed));
        prop_assert!(sig(removed).difference(&drop) == sig(removed));
        prop_assert!(valid_implication(f, removed));
    }

    #[test]
    fn bisimulation_invariance(m in arb_model(&["p", "q"]), n in arb_model(&["p", "q"]), f in arb_formula(2, 3, 2)) {
        let sig_pq = sigma(&["p", "q"]);
        let z = largest_bisimulation(&m, &n, &sig_pq);
        prop_assert!(check_bisimulation(&m, &n, &z));
        for (a, b) in &z.pairs {
            let (w, v) = (m.world(a).unwrap(), n.world(b).unwrap());
            prop_assert_eq!(eval(&m, w, f).unwrap(), eval(&n, v, f).unwrap());
        }
    }

    #[test]
    fn product_projections_are_bisimulations(m in arb_model(&["p", "q"]), n in arb_model(&["p", "r"])) {
        let z = largest_bisimulation(&m, &n, &sigma(&["p"]));
        let prod = bisimulation_product(&m, &n, &z).unwrap();
        let (left, right) = projections(&m, &n, &z);
        let strip = |r: modal_interp::semantics::BisimRelation| modal_interp::semantics::BisimRelation {
            pairs: r.pairs,
            signature: sigma(&["p"]),
        };
        prop_assert!(check_bisimulation(&prod, &m, &strip(left)));
        prop_assert!(check_bisimulation(&prod, &n, &strip(right)));
    }

    #[test]
    fn elimination_is_confluent((phi, psi) in arb_valid(), a in any::<u64>(), b in any::<u64>()) {
        let run = |order| {
            let config = QuasiConfig { order, ..QuasiConfig::default() };
            eliminate_with(phi, psi, &config).unwrap().final_indices()
        };
        let det = run(Order::Deterministic);
        prop_assert_eq!(&run(Order::Random(a)), &det);
        prop_assert_eq!(&run(Order::Random(b)), &det);
    }

    #[test]
    fn final_set_is_greatest(phi in small(), psi in small(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..6)) {
        let trace = eliminate_with(phi, psi, &QuasiConfig::default()).unwrap();
        let alive = trace.final_indices();
        let total = trace.space.len();
        let mut set = FixedBitSet::with_capacity(total);
        if total > 0 {
            set.extend(picks.iter().map(|i| i.index(total)));
        }
        if EliminationTrace::is_quasimodel(&trace.space, &set) {
            prop_assert!(set.ones().all(|i| alive.contains(&i)));
        }
        let mut fin = FixedBitSet::with_capacity(total);
        fin.extend(alive.iter().copied());
        prop_assert!(EliminationTrace::is_quasimodel(&trace.space, &fin));
        for step in trace.steps.iter().take(5) {
            let mut bigger = fin.clone();
            bigger.insert(trace.space.index(step.ty));
            prop_assert!(!EliminationTrace::is_quasimodel(&trace.space, &bigger));
        }
    }

    #[test]
    fn witness_satisfies_and_oracle_agrees(f in arb_formula(3, 3, 2)) {
        let r = satisfiable(f).unwrap();
        if let Some(w) = &r.witness {
            prop_assert!(eval(&w.model, w.point, f).unwrap());
        }
        let (d, b) = complete_bounds(f);
        if let Ok(found) = oracle_sat(f, d, b) {
            prop_assert_eq!(found.is_some(), r.satisfiable);
        }
    }

    #[test]
    fn quasimodel_interpolant_contract((phi, psi) in arb_valid()) {
        let theta = lyndon_interpolant(phi, psi).unwrap();
        prop_assert!(check_lyndon(theta, phi, psi).all_ok());
    }

    #[test]
    fn uniform_interpolant_is_strongest_consequence(f in small(), g in arb_formula(1, 3, 2)) {
        let keep = sigma(&["p"]);
        let u = uniform_interpolant(f, &keep).unwrap();
        prop_assert!(sig(u).is_subset(&keep));
        prop_assert!(valid_implication(f, u));
        // g is over {p}; f -> g valid forces u -> g valid
        if valid_implication(f, g) {
            prop_assert!(valid_implication(u, g));
        }
    }

    #[test]
    fn automaton_matches_eval(f in arb_formula(2, 3, 2), pick in any::<prop::sample::Index>()) {
        let s = sigma(&["p", "q"]);
        let a = formula_to_automaton(f, &s).unwrap();
        let trees = enumerate_trees(&s, 2, 2);
        let t = &trees[pick.index(trees.len())];
        prop_assert_eq!(accepts(&a, t).unwrap(), eval(&t.model, t.point, f).unwrap());
        prop_assert_eq!(accepts(&a, t).unwrap(), accepts_brute(&a, t).unwrap());
    }

    #[test]
    fn automaton_round_trip(f in arb_formula(2, 3, 2)) {
        let a = formula_to_automaton(f, &sig(f)).unwrap();
        prop_assert!(equivalent(automaton_to_formula(&a).unwrap(), f));
    }

    #[test]
    fn projection_is_reduct_closure(f in arb_formula(2, 3, 2), pick in any::<prop::sample::Index>()) {
        let a = formula_to_automaton(f, &sigma(&["p", "q"])).unwrap();
        let keep = sigma(&["p"]);
        let pa = project(&a, &keep).unwrap();
        let trees = enumerate_trees(&keep, 2, 2);
        let t = &trees[pick.index(trees.len())];
        prop_assert_eq!(accepts(&pa, t).unwrap(), some_expansion_accepted(&a, t, "q"));
    }

    #[test]
    fn prover_matches_decider(phi in small(), psi in small()) {
        let provable = prove(&Sequent::new([phi], [psi])).is_some();
        prop_assert_eq!(provable, valid_implication(phi, psi));
        prop_assert_eq!(provable, is_valid_implication(phi, psi).unwrap());
    }

    #[test]
    fn rules_interpolate(
        ant in prop::collection::vec(arb_formula(3, 2, 2), 0..3),
        suc in prop::collection::vec(arb_formula(3, 2, 2), 0..3),
        echo in any::<bool>(),
        labels in prop::collection::vec(any::<bool>(), 8),
    ) {
        let mut suc = suc;
        if echo {
            if let Some(&a) = ant.first() {
                suc.push(a);
            }
        }
        let s = Sequent::new(ant, suc);
        if let Some(pt) = prove(&s) {
            prop_assert!(pt.check());
            let part = |b: bool| if b { Part::L } else { Part::R };
            let la: Vec<Part> = labels.iter().take(s.antecedent.len()).map(|&b| part(b)).collect();
            let ls: Vec<Part> = labels.iter().skip(4).take(s.succedent.len()).map(|&b| part(b)).collect();
            let split = SplitSequent::from_labels(&s, &la, &ls);
            let chi = maehara(&pt, &split).unwrap();
            let (o1, o2) = split.obligations(chi);
            prop_assert!(prove(&o1).is_some(), "{} / {}", split, chi);
            prop_assert!(prove(&o2).is_some(), "{} / {}", split, chi);
            prop_assert!(sig(chi).is_subset(&split.common_language()));
        }
    }

    #[test]
    fn sequent_interpolant_is_lyndon((phi, psi) in arb_valid()) {
        let theta = modal_interp::sequent::craig_via_sequent(phi, psi).unwrap();
        prop_assert!(check_lyndon(theta, phi, psi).all_ok());
    }
}

/// Whether `a` accepts some tree obtained from `t` by choosing a valuation of
/// `extra` on its worlds.
fn some_expansion_accepted(a: &modal_interp::automata::ModalAutomaton, t: &PointedModel, extra: &str) -> bool {
    let n = t.model.len();
    (0u32..1 << n).any(|mask| {
        let mut m = t.model.clone();
        m.declare_letter(extra);
        for w in 0..n {
            if mask & (1 << w) != 0 {
                m.set_true(extra, w);
            }
        }
        accepts(a, &PointedModel::new(m, t.point)).unwrap()
    })
}

#[test]
fn modal_depth_bound_respected() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..50 {
        let f = small().new_tree(&mut runner).unwrap().current();
        assert!(modal_depth(f) <= 2);
    }
}

/// Truth of the uniform interpolant at a tree equals existence of a
/// `{p}`-bisimilar tree satisfying the formula, on one-step trees.
#[test]
fn letter_removal_is_bisimulation_quantifier() {
    use modal_interp::semantics::bisimilar;
    use modal_interp::verify::corpus::{random_formula, Shape};
    use rand::SeedableRng;

    let keep = sigma(&["p"]);
    let full = sigma(&["p", "q"]);
    let small_trees = enumerate_trees(&keep, 1, 3);
    let big_trees = enumerate_trees(&full, 1, 4);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let shape = Shape {
        letters: 2,
        depth: 1,
        nodes: 8,
    };
    let mut checked = 0;
    while checked < 25 {
        let f = random_formula(&mut rng, shape);
        let modal = modal_interp::formula::subf(nnf(f).unwrap())
            .unwrap()
            .into_iter()
            .filter(|g| matches!(g.node(), modal_interp::Node::Box(_) | modal_interp::Node::Diamond(_)))
            .count();
        if modal > 2 {
            continue;
        }
        checked += 1;
        let u = uniform_interpolant(f, &keep).unwrap();
        let models: Vec<&PointedModel> = big_trees
            .iter()
            .filter(|t| eval(&t.model, t.point, f).unwrap())
            .collect();
        for t in &small_trees {
            let expected = models
                .iter()
                .any(|s| bisimilar(&s.model, s.point, &t.model, t.point, &keep));
            assert_eq!(eval(&t.model, t.point, u).unwrap(), expected, "{f} at {}", t.to_json());
        }
    }
}

/// Every rule occurring in the proofs of the example corpus interpolates
/// under every split of its conclusion.
#[test]
fn every_rule_interpolates_under_all_splits() {
    use modal_interp::sequent::{ProofTree, Rule};
    use modal_interp::verify::corpus::example_implications;
    use std::collections::BTreeMap;

    fn nodes<'a>(pt: &'a ProofTree, out: &mut Vec<&'a ProofTree>) {
        out.push(pt);
        for p in &pt.premises {
            nodes(p, out);
        }
    }

    let mut seen: BTreeMap<&'static str, usize> = BTreeMap::new();
    let extra = [("p & q", "q & p"), ("<>p | <>q", "<>(p | q)"), ("[]~p", "~<>p")];
    let mut pairs: Vec<(Formula, Formula)> = example_implications().iter().map(|i| (i.phi, i.psi)).collect();
    pairs.extend(extra.iter().map(|(a, b)| (parse(a).unwrap(), parse(b).unwrap())));
    for (phi, psi) in pairs {
        let pt = prove(&Sequent::new([phi], [psi])).expect("valid example");
        assert!(pt.check());
        let mut all = Vec::new();
        nodes(&pt, &mut all);
        for node in all {
            let s = &node.conclusion;
            let (na, ns) = (s.antecedent.len(), s.succedent.len());
            if na + ns > 8 {
                continue;
            }
            *seen.entry(node.rule.label()).or_default() += 1;
            for mask in 0u32..1 << (na + ns) {
                let part = |i: usize| if mask & (1 << i) != 0 { Part::L } else { Part::R };
                let la: Vec<Part> = (0..na).map(part).collect();
                let ls: Vec<Part> = (na..na + ns).map(part).collect();
                let split = SplitSequent::from_labels(s, &la, &ls);
                let chi = maehara(node, &split).unwrap();
                let (o1, o2) = split.obligations(chi);
                assert!(
                    prove(&o1).is_some() && prove(&o2).is_some(),
                    "{:?} {split} / {chi}",
                    node.rule
                );
                assert!(sig(chi).is_subset(&split.common_language()));
            }
        }
    }
    let labels: Vec<&str> = Rule::ALL.iter().map(|r| r.label()).collect();
    for l in labels {
        assert!(seen.contains_key(l), "rule {l} never exercised: {seen:?}");
    }
}
