//! Deterministic formula and implication corpora for cross-checking.
//!
//! Random formulas use at most three letters, modal depth at most two and at
//! most twelve nodes. Valid implications come from the worked examples plus
//! seeded instances of a few valid schemas and validity-filtered random pairs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::valid_implication;
use crate::formula::{modal_depth, parse, size_dag, Formula};

pub const LETTERS: [&str; 3] = ["p", "q", "r"];

/// Limits for random formulas.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub letters: usize,
    pub depth: usize,
    pub nodes: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            letters: 3,
            depth: 2,
            nodes: 12,
        }
    }
}

/// A random formula within `shape`, counting nodes as a tree.
pub fn random_formula(rng: &mut ChaCha8Rng, shape: Shape) -> Formula {
    let budget = rng.gen_range(1..=shape.nodes);
    gen(rng, shape, budget, shape.depth)
}

fn gen(rng: &mut ChaCha8Rng, shape: Shape, budget: usize, depth: usize) -> Formula {
    let letter = |rng: &mut ChaCha8Rng| Formula::prop(LETTERS[rng.gen_range(0..shape.letters)]);
    if budget <= 1 {
        return match rng.gen_range(0..12) {
            0 => Formula::top(),
            1 => Formula::bot(),
            _ => letter(rng),
        };
    }
    let mut kinds = vec![0, 2, 2, 3, 3];
    if depth > 0 {
        kinds.extend([4, 4, 5, 5]);
    }
    match *kinds.choose(rng).expect("nonempty") {
        0 => Formula::not(gen(rng, shape, budget - 1, depth)),
        k @ (2 | 3) => {
            if budget == 2 {
                return Formula::not(letter(rng));
            }
            let left = rng.gen_range(1..budget - 1);
            let a = gen(rng, shape, left, depth);
            let b = gen(rng, shape, budget - 1 - left, depth);
            if k == 2 {
                Formula::and(a, b)
            } else {
                Formula::or(a, b)
            }
        }
        4 => Formula::diamond(gen(rng, shape, budget - 1, depth - 1)),
        _ => Formula::boxed(gen(rng, shape, budget - 1, depth - 1)),
    }
}

/// `count` seeded random formulas within the default shape.
pub fn random_formulas(seed: u64, count: usize) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_formula(&mut rng, Shape::default())).collect()
}

/// Formulas from the worked examples, for satisfiability cross-checks.
pub fn example_formulas() -> Vec<Formula> {
    [
        "<>p & [](p | q)",
        "<>p & []~p",
        "<>(p & q)",
        "p & ~p",
        "[]p & []q & ~[](p & q)",
        "<>p & ~[]p",
        "[]false",
        "<>true & []false",
        "[]([]p | []~p) | []~([]p | []~p)",
        "<>s & (p1 -> [](s -> p1)) & (~p1 -> [](s -> ~p1))",
    ]
    .iter()
    .map(|s| parse(s).expect("example parses"))
    .collect()
}

/// The formula corpus: worked examples followed by seeded random formulas.
pub fn formula_corpus(seed: u64, random: usize) -> Vec<Formula> {
    let mut out = example_formulas();
    out.extend(random_formulas(seed, random));
    out
}

/// A valid implication with a short provenance label.
#[derive(Clone, Debug)]
pub struct Implication {
    pub label: String,
    pub phi: Formula,
    pub psi: Formula,
}

/// Valid implications from the worked examples.
pub fn example_implications() -> Vec<Implication> {
    let mut out: Vec<Implication> = [
        ("atom-weakening", "p", "p | q"),
        ("diamond-transfer", "<>(p & q)", "<>(p | r)"),
        ("box-merge", "[]p & []q", "[](p & q)"),
        ("box-merge-weak", "[]p & []q", "[](p & q | r)"),
        ("box-weakening", "[]p", "[](p | q)"),
        ("self-atom", "p", "p"),
        ("self-diamond", "<>p", "<>p"),
        ("witnessed-box", "<>p & []q", "<>(p & q)"),
        ("bottom", "false", "p"),
        ("top", "q", "true"),
        ("k-axiom", "[](p -> q) & []p", "[]q"),
        ("nested", "[]<>(p & q) & <>true", "<><>p"),
    ]
    .iter()
    .map(|(l, a, b)| Implication {
        label: (*l).to_string(),
        phi: parse(a).expect("parses"),
        psi: parse(b).expect("parses"),
    })
    .collect();
    let (phi, psi, _) = crate::bench::lower_bound_family(1).expect("n = 1");
    out.push(Implication {
        label: "lower-bound-1".into(),
        phi,
        psi,
    });
    out
}

fn small(rng: &mut ChaCha8Rng, letters: usize, depth: usize, nodes: usize) -> Formula {
    let shape = Shape { letters, depth, nodes };
    random_formula(rng, shape)
}

/// At least `count` valid implications: the worked examples, then seeded
/// schema instances and filtered random pairs, in a fixed order.
pub fn implication_corpus(seed: u64, count: usize) -> Vec<Implication> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = example_implications();
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 100 * count + 1000, "corpus generation stalled");
        let schema = rng.gen_range(0..8);
        let (label, phi, psi) = match schema {
            0 => {
                let (a, x, y) = (
                    small(&mut rng, 3, 2, 5),
                    small(&mut rng, 3, 2, 4),
                    small(&mut rng, 3, 2, 4),
                );
                ("and-or", Formula::and(a, x), Formula::or(a, y))
            }
            1 => {
                let (a, b) = (small(&mut rng, 3, 1, 4), small(&mut rng, 3, 1, 4));
                (
                    "k-instance",
                    Formula::and(Formula::boxed(Formula::implies(a, b)), Formula::boxed(a)),
                    Formula::boxed(b),
                )
            }
            2 => {
                let (a, x) = (small(&mut rng, 3, 1, 4), small(&mut rng, 3, 1, 3));
                (
                    "diamond-mono",
                    Formula::diamond(Formula::and(a, x)),
                    Formula::diamond(a),
                )
            }
            3 => {
                let (a, x) = (small(&mut rng, 3, 1, 4), small(&mut rng, 3, 1, 4));
                (
                    "box-diamond",
                    Formula::and(Formula::boxed(a), Formula::diamond(x)),
                    Formula::diamond(Formula::and(a, x)),
                )
            }
            4 => {
                let (a, x, y) = (
                    small(&mut rng, 3, 1, 3),
                    small(&mut rng, 3, 1, 3),
                    small(&mut rng, 3, 1, 3),
                );
                (
                    "box-or",
                    Formula::and(Formula::boxed(a), Formula::boxed(x)),
                    Formula::or(Formula::boxed(Formula::and(a, x)), Formula::diamond(y)),
                )
            }
            _ => {
                let (a, b) = (small(&mut rng, 3, 2, 7), small(&mut rng, 3, 2, 7));
                if !valid_implication(a, b) {
                    continue;
                }
                ("random-valid", a, b)
            }
        };
        if modal_depth(phi) > 2 || modal_depth(psi) > 2 || size_dag(phi) > 16 || size_dag(psi) > 16 {
            continue;
        }
        debug_assert!(valid_implication(phi, psi), "{phi} -> {psi}");
        let label = format!("{label}-{}", out.len());
        out.push(Implication { label, phi, psi });
    }
    out
}
