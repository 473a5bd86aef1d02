//! Proof search in G3K and split interpolation by the Maehara method.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{expand_nabla, sig_all, Formula, Node, SignatureSet};

/// Replace diamonds by `~[]~` and expand nablas.
pub fn desugar(f: Formula) -> Formula {
    fn go(f: Formula, memo: &mut HashMap<Formula, Formula>) -> Formula {
        if let Some(&g) = memo.get(&f) {
            return g;
        }
        let g = match f.node() {
            Node::Prop(_) | Node::Top | Node::Bot => f,
            Node::Neg(a) => Formula::not(go(a, memo)),
            Node::And(a, b) => Formula::and(go(a, memo), go(b, memo)),
            Node::Or(a, b) => Formula::or(go(a, memo), go(b, memo)),
            Node::Box(a) => Formula::boxed(go(a, memo)),
            Node::Diamond(a) => Formula::not(Formula::boxed(Formula::not(go(a, memo)))),
            Node::Nabla(_) => go(expand_nabla(f), memo),
        };
        memo.insert(f, g);
        g
    }
    go(f, &mut HashMap::new())
}

/// Turn every `~[]~x` back into `<>x`.
pub fn resugar(f: Formula) -> Formula {
    fn go(f: Formula, memo: &mut HashMap<Formula, Formula>) -> Formula {
        if let Some(&g) = memo.get(&f) {
            return g;
        }
        let g = match f.node() {
            Node::Neg(a) => match a.node() {
                Node::Box(b) => match b.node() {
                    Node::Neg(c) => Formula::diamond(go(c, memo)),
                    _ => Formula::not(go(a, memo)),
                },
                _ => Formula::not(go(a, memo)),
            },
            Node::And(a, b) => Formula::and(go(a, memo), go(b, memo)),
            Node::Or(a, b) => Formula::or(go(a, memo), go(b, memo)),
            Node::Box(a) => Formula::boxed(go(a, memo)),
            Node::Diamond(a) => Formula::diamond(go(a, memo)),
            Node::Nabla(cs) => Formula::nabla(cs.iter().map(|&c| go(c, memo))),
            _ => f,
        };
        memo.insert(f, g);
        g
    }
    go(f, &mut HashMap::new())
}

fn is_desugared(f: Formula) -> bool {
    match f.node() {
        Node::Diamond(_) | Node::Nabla(_) => false,
        _ => f.children().into_iter().all(is_desugared),
    }
}

/// `antecedent => succedent`, both multisets in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl Sequent {
    /// Desugars every formula.
    pub fn new(antecedent: impl IntoIterator<Item = Formula>, succedent: impl IntoIterator<Item = Formula>) -> Sequent {
        Sequent {
            antecedent: antecedent.into_iter().map(desugar).collect(),
            succedent: succedent.into_iter().map(desugar).collect(),
        }
    }

    fn key(&self) -> (Vec<Formula>, Vec<Formula>) {
        let mut a = self.antecedent.clone();
        let mut s = self.succedent.clone();
        a.sort_unstable();
        s.sort_unstable();
        (a, s)
    }

    pub fn signature(&self) -> SignatureSet {
        let all: Vec<Formula> = self.antecedent.iter().chain(&self.succedent).copied().collect();
        sig_all(&all)
    }

    /// The multiset of all formulas, for comparison up to order.
    pub fn same_multisets(&self, other: &Sequent) -> bool {
        self.key() == other.key()
    }

    /// Weight of the sequent: total formula size.
    fn without(v: &[Formula], i: usize) -> Vec<Formula> {
        let mut out = v.to_vec();
        out.remove(i);
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Formula]| v.iter().map(|g| resugar(*g).to_string()).collect::<Vec<_>>().join(", ");
        let (a, s) = (show(&self.antecedent), show(&self.succedent));
        match (a.is_empty(), s.is_empty()) {
            (true, true) => write!(f, "=>"),
            (true, false) => write!(f, "=> {s}"),
            (false, true) => write!(f, "{a} =>"),
            (false, false) => write!(f, "{a} => {s}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    AxId,
    AxBot,
    AxTop,
    NegL,
    NegR,
    AndL,
    AndR,
    OrL,
    OrR,
    BoxR,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::AxId => "Ax_id",
            Rule::AxBot => "Ax_⊥",
            Rule::AxTop => "Ax_⊤",
            Rule::NegL => "¬l",
            Rule::NegR => "¬r",
            Rule::AndL => "∧l",
            Rule::AndR => "∧r",
            Rule::OrL => "∨l",
            Rule::OrR => "∨r",
            Rule::BoxR => "R□",
        }
    }

    pub const ALL: [Rule; 10] = [
        Rule::AxId,
        Rule::AxBot,
        Rule::AxTop,
        Rule::NegL,
        Rule::NegR,
        Rule::AndL,
        Rule::AndR,
        Rule::OrL,
        Rule::OrR,
        Rule::BoxR,
    ];
}

/// Position of a formula occurrence in a sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pos {
    Ant(usize),
    Suc(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTree {
    pub conclusion: Sequent,
    pub rule: Rule,
    /// Principal occurrences; two for the identity axiom.
    pub principal: Vec<Pos>,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::depth).max().unwrap_or(0)
    }

    pub fn rules_used(&self) -> HashSet<Rule> {
        let mut out = HashSet::from([self.rule]);
        for p in &self.premises {
            out.extend(p.rules_used());
        }
        out
    }

    /// Indented rendering, conclusion first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, indent: usize, out: &mut String) {
        out.push_str(&format!(
            "{}{}  [{}]\n",
            "  ".repeat(indent),
            self.conclusion,
            self.rule.label()
        ));
        for p in &self.premises {
            p.render_into(indent + 1, out);
        }
    }

    /// Each node is an instance of its rule with exactly these premises.
    pub fn check(&self) -> bool {
        let expected = premises_of(&self.conclusion, self.rule, &self.principal);
        match expected {
            Some(ps) => {
                ps.len() == self.premises.len()
                    && ps
                        .iter()
                        .zip(&self.premises)
                        .all(|(s, p)| *s == p.conclusion && p.check())
            }
            None => false,
        }
    }
}

/// Premises of a rule application, or `None` if it does not apply.
/// Premises keep the conclusion's order, drop the principal and append the
/// active formulas.
fn premises_of(s: &Sequent, rule: Rule, principal: &[Pos]) -> Option<Vec<Sequent>> {
    let (ant, suc) = (&s.antecedent, &s.succedent);
    let get = |p: Pos| match p {
        Pos::Ant(i) => ant.get(i).copied(),
        Pos::Suc(i) => suc.get(i).copied(),
    };
    let one = |a: Vec<Formula>, b: Vec<Formula>| Sequent {
        antecedent: a,
        succedent: b,
    };
    match (rule, principal) {
        (Rule::AxId, [Pos::Ant(i), Pos::Suc(j)]) => {
            let (x, y) = (get(Pos::Ant(*i))?, get(Pos::Suc(*j))?);
            (x == y && x.as_prop().is_some()).then(Vec::new)
        }
        (Rule::AxBot, [p @ Pos::Ant(_)]) => (get(*p)? == Formula::bot()).then(Vec::new),
        (Rule::AxTop, [p @ Pos::Suc(_)]) => (get(*p)? == Formula::top()).then(Vec::new),
        (Rule::NegL, [Pos::Ant(i)]) => match get(Pos::Ant(*i))?.node() {
            Node::Neg(a) => {
                let mut b = suc.clone();
                b.push(a);
                Some(vec![one(Sequent::without(ant, *i), b)])
            }
            _ => None,
        },
        (Rule::NegR, [Pos::Suc(j)]) => match get(Pos::Suc(*j))?.node() {
            Node::Neg(a) => {
                let mut x = ant.clone();
                x.push(a);
                Some(vec![one(x, Sequent::without(suc, *j))])
            }
            _ => None,
        },
        (Rule::AndL, [Pos::Ant(i)]) => match get(Pos::Ant(*i))?.node() {
            Node::And(a, b) => {
                let mut x = Sequent::without(ant, *i);
                x.extend([a, b]);
                Some(vec![one(x, suc.clone())])
            }
            _ => None,
        },
        (Rule::OrR, [Pos::Suc(j)]) => match get(Pos::Suc(*j))?.node() {
            Node::Or(a, b) => {
                let mut y = Sequent::without(suc, *j);
                y.extend([a, b]);
                Some(vec![one(ant.clone(), y)])
            }
            _ => None,
        },
        (Rule::OrL, [Pos::Ant(i)]) => match get(Pos::Ant(*i))?.node() {
            Node::Or(a, b) => {
                let rest = Sequent::without(ant, *i);
                let (mut x, mut y) = (rest.clone(), rest);
                x.push(a);
                y.push(b);
                Some(vec![one(x, suc.clone()), one(y, suc.clone())])
            }
            _ => None,
        },
        (Rule::AndR, [Pos::Suc(j)]) => match get(Pos::Suc(*j))?.node() {
            Node::And(a, b) => {
                let rest = Sequent::without(suc, *j);
                let (mut x, mut y) = (rest.clone(), rest);
                x.push(a);
                y.push(b);
                Some(vec![one(ant.clone(), x), one(ant.clone(), y)])
            }
            _ => None,
        },
        (Rule::BoxR, [Pos::Suc(j)]) => match get(Pos::Suc(*j))?.node() {
            Node::Box(a) => {
                let bodies = ant
                    .iter()
                    .filter_map(|g| match g.node() {
                        Node::Box(b) => Some(b),
                        _ => None,
                    })
                    .collect();
                Some(vec![one(bodies, vec![a])])
            }
            _ => None,
        },
        _ => None,
    }
}

/// Backward proof search with a memo of unprovable sequents.
#[derive(Default)]
pub struct Prover {
    failed: HashSet<(Vec<Formula>, Vec<Formula>)>,
    nodes: usize,
}

impl Prover {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of sequents visited so far.
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn prove(&mut self, s: &Sequent) -> Option<ProofTree> {
        assert!(
            s.antecedent.iter().chain(&s.succedent).all(|&f| is_desugared(f)),
            "sequents hold box-only formulas"
        );
        self.search(s)
    }

    fn search(&mut self, s: &Sequent) -> Option<ProofTree> {
        self.nodes += 1;
        let key = s.key();
        if self.failed.contains(&key) {
            return None;
        }
        let (ant, suc) = (&s.antecedent, &s.succedent);
        let leaf = |rule, principal| ProofTree {
            conclusion: s.clone(),
            rule,
            principal,
            premises: vec![],
        };
        if let Some(i) = ant.iter().position(|&f| f == Formula::bot()) {
            return Some(leaf(Rule::AxBot, vec![Pos::Ant(i)]));
        }
        if let Some(j) = suc.iter().position(|&f| f == Formula::top()) {
            return Some(leaf(Rule::AxTop, vec![Pos::Suc(j)]));
        }
        for (i, &a) in ant.iter().enumerate() {
            if a.as_prop().is_some() {
                if let Some(j) = suc.iter().position(|&b| b == a) {
                    return Some(leaf(Rule::AxId, vec![Pos::Ant(i), Pos::Suc(j)]));
                }
            }
        }
        let step = ant
            .iter()
            .enumerate()
            .find_map(|(i, f)| match f.node() {
                Node::Neg(_) => Some((Rule::NegL, Pos::Ant(i))),
                Node::And(..) => Some((Rule::AndL, Pos::Ant(i))),
                _ => None,
            })
            .or_else(|| {
                suc.iter().enumerate().find_map(|(j, f)| match f.node() {
                    Node::Neg(_) => Some((Rule::NegR, Pos::Suc(j))),
                    Node::Or(..) => Some((Rule::OrR, Pos::Suc(j))),
                    _ => None,
                })
            })
            .or_else(|| {
                ant.iter()
                    .position(|f| matches!(f.node(), Node::Or(..)))
                    .map(|i| (Rule::OrL, Pos::Ant(i)))
            })
            .or_else(|| {
                suc.iter()
                    .position(|f| matches!(f.node(), Node::And(..)))
                    .map(|j| (Rule::AndR, Pos::Suc(j)))
            });
        if let Some((rule, pos)) = step {
            // propositional rules are invertible, so no other choice is needed
            let premises = premises_of(s, rule, &[pos]).expect("rule applies");
            let mut proofs = Vec::with_capacity(premises.len());
            for p in &premises {
                match self.search(p) {
                    Some(t) => proofs.push(t),
                    None => {
                        self.failed.insert(key);
                        return None;
                    }
                }
            }
            return Some(ProofTree {
                conclusion: s.clone(),
                rule,
                principal: vec![pos],
                premises: proofs,
            });
        }
        for (j, f) in suc.iter().enumerate() {
            if let Node::Box(_) = f.node() {
                let premise = premises_of(s, Rule::BoxR, &[Pos::Suc(j)]).expect("box").remove(0);
                if let Some(t) = self.search(&premise) {
                    return Some(ProofTree {
                        conclusion: s.clone(),
                        rule: Rule::BoxR,
                        principal: vec![Pos::Suc(j)],
                        premises: vec![t],
                    });
                }
            }
        }
        self.failed.insert(key);
        None
    }
}

pub fn prove(s: &Sequent) -> Option<ProofTree> {
    Prover::new().prove(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    L,
    R,
}

/// `left_ant ; right_ant => left_suc ; right_suc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSequent {
    pub left_ant: Vec<Formula>,
    pub right_ant: Vec<Formula>,
    pub left_suc: Vec<Formula>,
    pub right_suc: Vec<Formula>,
}

impl SplitSequent {
    pub fn new(
        left_ant: impl IntoIterator<Item = Formula>,
        right_ant: impl IntoIterator<Item = Formula>,
        left_suc: impl IntoIterator<Item = Formula>,
        right_suc: impl IntoIterator<Item = Formula>,
    ) -> SplitSequent {
        SplitSequent {
            left_ant: left_ant.into_iter().map(desugar).collect(),
            right_ant: right_ant.into_iter().map(desugar).collect(),
            left_suc: left_suc.into_iter().map(desugar).collect(),
            right_suc: right_suc.into_iter().map(desugar).collect(),
        }
    }

    /// Split a sequent by labelling each occurrence.
    pub fn from_labels(s: &Sequent, ant: &[Part], suc: &[Part]) -> SplitSequent {
        let pick = |v: &[Formula], ls: &[Part], want: Part| {
            v.iter().zip(ls).filter(|(_, &l)| l == want).map(|(&f, _)| f).collect()
        };
        SplitSequent {
            left_ant: pick(&s.antecedent, ant, Part::L),
            right_ant: pick(&s.antecedent, ant, Part::R),
            left_suc: pick(&s.succedent, suc, Part::L),
            right_suc: pick(&s.succedent, suc, Part::R),
        }
    }

    pub fn merge(&self) -> Sequent {
        Sequent {
            antecedent: self.left_ant.iter().chain(&self.right_ant).copied().collect(),
            succedent: self.left_suc.iter().chain(&self.right_suc).copied().collect(),
        }
    }

    /// `Gamma1 => chi, Delta1` and `Gamma2, chi => Delta2`.
    pub fn obligations(&self, chi: Formula) -> (Sequent, Sequent) {
        let chi = desugar(chi);
        let mut s1 = self.left_suc.clone();
        s1.insert(0, chi);
        let mut a2 = self.right_ant.clone();
        a2.insert(0, chi);
        (
            Sequent {
                antecedent: self.left_ant.clone(),
                succedent: s1,
            },
            Sequent {
                antecedent: a2,
                succedent: self.right_suc.clone(),
            },
        )
    }

    /// Letters shared by the two halves.
    pub fn common_language(&self) -> SignatureSet {
        let l: Vec<Formula> = self.left_ant.iter().chain(&self.left_suc).copied().collect();
        let r: Vec<Formula> = self.right_ant.iter().chain(&self.right_suc).copied().collect();
        sig_all(&l).intersection(&sig_all(&r))
    }

    /// Labels for the occurrences of `s` matching this split.
    fn labels(&self, s: &Sequent) -> Option<(Vec<Part>, Vec<Part>)> {
        fn assign(v: &[Formula], left: &[Formula], right: &[Formula]) -> Option<Vec<Part>> {
            let mut count: HashMap<Formula, (usize, usize)> = HashMap::new();
            for &f in left {
                count.entry(f).or_default().0 += 1;
            }
            for &f in right {
                count.entry(f).or_default().1 += 1;
            }
            let mut out = Vec::with_capacity(v.len());
            for f in v {
                let c = count.get_mut(f)?;
                if c.0 > 0 {
                    c.0 -= 1;
                    out.push(Part::L);
                } else if c.1 > 0 {
                    c.1 -= 1;
                    out.push(Part::R);
                } else {
                    return None;
                }
            }
            count.values().all(|&(a, b)| a == 0 && b == 0).then_some(out)
        }
        Some((
            assign(&s.antecedent, &self.left_ant, &self.right_ant)?,
            assign(&s.succedent, &self.left_suc, &self.right_suc)?,
        ))
    }
}

impl fmt::Display for SplitSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Formula]| v.iter().map(|g| resugar(*g).to_string()).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "{} ; {} => {} ; {}",
            show(&self.left_ant),
            show(&self.right_ant),
            show(&self.left_suc),
            show(&self.right_suc)
        )
    }
}

/// A split interpolant read off the proof, in box-only form.
pub fn maehara(pt: &ProofTree, split: &SplitSequent) -> Result<Formula> {
    let (ant, suc) = split
        .labels(&pt.conclusion)
        .ok_or_else(|| Error::Precondition("split does not match the proof's conclusion".into()))?;
    Ok(delta(pt, &ant, &suc))
}

fn side(p: Pos, ant: &[Part], suc: &[Part]) -> Part {
    match p {
        Pos::Ant(i) => ant[i],
        Pos::Suc(j) => suc[j],
    }
}

/// Premise labels: the conclusion's without the principal, then the active
/// formulas on the principal's side.
fn premise_labels(pt: &ProofTree, ant: &[Part], suc: &[Part], premise: &Sequent) -> (Vec<Part>, Vec<Part>) {
    let pos = pt.principal[0];
    let part = side(pos, ant, suc);
    if pt.rule == Rule::BoxR {
        let boxed: Vec<Part> = pt
            .conclusion
            .antecedent
            .iter()
            .zip(ant)
            .filter(|(g, _)| matches!(g.node(), Node::Box(_)))
            .map(|(_, &l)| l)
            .collect();
        return (boxed, vec![part]);
    }
    let (mut a, mut s) = (ant.to_vec(), suc.to_vec());
    match pos {
        Pos::Ant(i) => {
            a.remove(i);
        }
        Pos::Suc(j) => {
            s.remove(j);
        }
    }
    a.resize(premise.antecedent.len(), part);
    s.resize(premise.succedent.len(), part);
    (a, s)
}

fn delta(pt: &ProofTree, ant: &[Part], suc: &[Part]) -> Formula {
    let part = side(pt.principal[0], ant, suc);
    match pt.rule {
        Rule::AxId => {
            let p = pt.conclusion.antecedent[match pt.principal[0] {
                Pos::Ant(i) => i,
                Pos::Suc(_) => unreachable!(),
            }];
            match (part, side(pt.principal[1], ant, suc)) {
                (Part::L, Part::L) => Formula::bot(),
                (Part::L, Part::R) => p,
                (Part::R, Part::L) => Formula::not(p),
                (Part::R, Part::R) => Formula::top(),
            }
        }
        Rule::AxBot | Rule::AxTop => match part {
            Part::L => Formula::bot(),
            Part::R => Formula::top(),
        },
        _ => {
            let chis: Vec<Formula> = pt
                .premises
                .iter()
                .map(|p| {
                    let (a, s) = premise_labels(pt, ant, suc, &p.conclusion);
                    delta(p, &a, &s)
                })
                .collect();
            match (pt.rule, part) {
                (Rule::OrL | Rule::AndR, Part::L) => Formula::disjunction(chis),
                (Rule::OrL | Rule::AndR, Part::R) => Formula::conjunction(chis),
                (Rule::BoxR, Part::L) => {
                    let chi = chis[0];
                    if chi == Formula::bot() {
                        chi
                    } else {
                        Formula::not(Formula::boxed(Formula::not(chi)))
                    }
                }
                (Rule::BoxR, Part::R) => {
                    let chi = chis[0];
                    if chi == Formula::top() {
                        chi
                    } else {
                        Formula::boxed(chi)
                    }
                }
                _ => chis[0],
            }
        }
    }
}

pub fn craig_via_sequent(phi: Formula, psi: Formula) -> Result<Formula> {
    let s = Sequent::new([phi], [psi]);
    let pt = prove(&s).ok_or_else(|| Error::Rejected(format!("no proof of {phi} => {psi}")))?;
    let split = SplitSequent::from_labels(&s, &[Part::L], &[Part::R]);
    Ok(resugar(maehara(&pt, &split)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::lower_bound_family;
    use crate::formula::{parse, sig};
    use crate::verify::{check_craig, check_lyndon, equivalent};

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn seq(a: &[&str], s: &[&str]) -> Sequent {
        Sequent::new(a.iter().map(|x| p(x)), s.iter().map(|x| p(x)))
    }

    #[test]
    fn search_examples() {
        let pt = prove(&seq(&["[]p", "[]q"], &["[](p & q)"])).unwrap();
        assert!(pt.check());
        assert!(prove(&seq(&["p"], &["q"])).is_none());
        let pt = prove(&seq(&[], &["[](p -> p)"])).unwrap();
        assert_eq!(pt.rule, Rule::BoxR);
        assert!(pt.check());
        assert!(prove(&seq(&["<>p"], &["[]p"])).is_none());
        assert!(prove(&seq(&["<>p", "[]q"], &["<>(p & q)"])).is_some());
    }

    #[test]
    fn desugar_round_trip() {
        let f = p("<>(p & []<>q) | nabla{r}");
        let d = desugar(f);
        assert!(is_desugared(d));
        assert!(equivalent(d, f));
        assert_eq!(resugar(desugar(p("<>[]<>p"))), p("<>[]<>p"));
    }

    #[test]
    fn axiom_interpolants() {
        let s = seq(&["p"], &["p"]);
        let pt = prove(&s).unwrap();
        let cases = [
            ([Part::L], [Part::L], "false"),
            ([Part::L], [Part::R], "p"),
            ([Part::R], [Part::L], "~p"),
            ([Part::R], [Part::R], "true"),
        ];
        for (a, b, want) in cases {
            let split = SplitSequent::from_labels(&s, &a, &b);
            assert_eq!(maehara(&pt, &split).unwrap(), p(want));
        }
    }

    #[test]
    fn split_examples() {
        let s = seq(&["p"], &["p | q"]);
        let pt = prove(&s).unwrap();
        let split = SplitSequent::new([p("p")], [], [], [p("p | q")]);
        assert_eq!(maehara(&pt, &split).unwrap(), p("p"));
        let s = seq(&["[]p"], &["[](p | q)"]);
        let pt = prove(&s).unwrap();
        let split = SplitSequent::new([p("[]p")], [], [], [p("[](p | q)")]);
        let chi = maehara(&pt, &split).unwrap();
        assert_eq!(chi, p("[]p"));
        assert!(check_craig(chi, p("[]p"), p("[](p | q)")).craig_ok());
        let wrong = SplitSequent::new([p("q")], [], [], [p("[](p | q)")]);
        assert!(maehara(&pt, &wrong).is_err());
    }

    #[test]
    fn craig_examples() {
        let (phi, psi) = (p("[]p & []q"), p("[](p & q | r)"));
        let theta = craig_via_sequent(phi, psi).unwrap();
        assert!(sig(theta).is_subset(&["p", "q"].into_iter().collect()));
        assert!(check_lyndon(theta, phi, psi).all_ok());
        let theta = craig_via_sequent(p("p"), p("p")).unwrap();
        assert!(check_lyndon(theta, p("p"), p("p")).all_ok());
        let (phi, psi, chi) = lower_bound_family(1).unwrap();
        let theta = craig_via_sequent(phi, psi).unwrap();
        assert!(equivalent(theta, chi));
        assert!(craig_via_sequent(p("<>p"), p("[]p")).is_err());
    }

    #[test]
    fn render_names_rules() {
        let pt = prove(&seq(&["[]p"], &["[](p | q)"])).unwrap();
        let text = pt.render();
        assert!(text.starts_with("[]p => [](p | q)  [R□]"));
        assert!(text.contains("[∨r]") && text.contains("[Ax_id]"));
    }
}
