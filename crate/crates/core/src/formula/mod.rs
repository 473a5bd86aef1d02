//! Modal formulas over letters, constants, Boolean connectives, ◇, □ and ∇.
//!
//! Formulas are hash-consed: every node lives once in a process-wide table
//! and [`Formula`] is a cheap `Copy` handle to it.

mod analysis;
mod display;
mod intern;
mod normal;
mod parse;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use analysis::{modal_depth, polarity, sig, sig_all, size_dag, size_string};
pub use display::render_shared;
pub use intern::{dag_nodes, table_len, Formula, Node};
pub use normal::{expand_nabla, is_nnf, literals, nnf, subf};
pub use parse::parse;

/// Ordered, duplicate-free set of letter names.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignatureSet(pub BTreeSet<String>);

impl SignatureSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, letter: &str) -> bool {
        self.0.contains(letter)
    }

    pub fn insert(&mut self, letter: impl Into<String>) -> bool {
        self.0.insert(letter.into())
    }

    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &SignatureSet) -> SignatureSet {
        self.0.union(&other.0).cloned().collect()
    }

    pub fn intersection(&self, other: &SignatureSet) -> SignatureSet {
        self.0.intersection(&other.0).cloned().collect()
    }

    pub fn difference(&self, other: &SignatureSet) -> SignatureSet {
        self.0.difference(&other.0).cloned().collect()
    }

    pub fn is_subset(&self, other: &SignatureSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Parse a comma-separated list such as `p,q`.
    pub fn from_csv(text: &str) -> SignatureSet {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect()
    }
}

impl FromIterator<String> for SignatureSet {
    fn from_iter<I: IntoIterator<Item = String>>(iter: I) -> Self {
        SignatureSet(iter.into_iter().collect())
    }
}

impl<'a> FromIterator<&'a str> for SignatureSet {
    fn from_iter<I: IntoIterator<Item = &'a str>>(iter: I) -> Self {
        SignatureSet(iter.into_iter().map(str::to_string).collect())
    }
}

impl std::fmt::Display for SignatureSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}}", self.0.iter().cloned().collect::<Vec<_>>().join(", "))
    }
}

/// Letters with a positive and with a negative occurrence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarityReport {
    pub positive: SignatureSet,
    pub negative: SignatureSet,
}

impl PolarityReport {
    /// Componentwise inclusion.
    pub fn within(&self, other: &PolarityReport) -> bool {
        self.positive.is_subset(&other.positive) && self.negative.is_subset(&other.negative)
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_consing_shares_handles() {
        let a = parse("<>(p & q) | []r").unwrap();
        let b = parse("(<>(p&q)) | ([] r)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.id(), b.id());
        let n1 = Formula::nabla([Formula::prop("p"), Formula::prop("q"), Formula::prop("p")]);
        let n2 = Formula::nabla([Formula::prop("q"), Formula::prop("p")]);
        assert_eq!(n1, n2);
    }

    #[test]
    fn folding_constructors() {
        let p = Formula::prop("p");
        assert_eq!(Formula::conjunction([]), Formula::top());
        assert_eq!(Formula::disjunction([]), Formula::bot());
        assert_eq!(Formula::conjunction([p, Formula::top(), p]), p);
        assert_eq!(Formula::conjunction([p, Formula::bot()]), Formula::bot());
        assert_eq!(Formula::disjunction([p, Formula::top()]), Formula::top());
        assert_eq!(Formula::negate(Formula::not(p)), p);
    }

    #[test]
    fn signature_set_csv() {
        let s = SignatureSet::from_csv("q, p,,q");
        assert_eq!(s.iter().cloned().collect::<Vec<_>>(), vec!["p", "q"]);
        assert_eq!(s.to_string(), "{p, q}");
    }

    #[test]
    fn formula_serde_round_trip() {
        let f = parse("<>p & ~[]q").unwrap();
        let json = serde_json::to_string(&f).unwrap();
        let g: Formula = serde_json::from_str(&json).unwrap();
        assert_eq!(f, g);
    }
}
