use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::SignatureSet;

/// Finite Kripke model. Worlds keep their insertion order; successor lists
/// are sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<String>,
    index: HashMap<String, usize>,
    succ: Vec<Vec<usize>>,
    valuation: BTreeMap<String, BTreeSet<usize>>,
}

/// A model together with a distinguished world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedModel {
    pub model: KripkeModel,
    pub point: usize,
}

impl KripkeModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a world, or return the existing index if the id is taken.
    pub fn add_world(&mut self, id: impl Into<String>) -> usize {
        let id = id.into();
        if let Some(&i) = self.index.get(&id) {
            return i;
        }
        let i = self.worlds.len();
        self.index.insert(id.clone(), i);
        self.worlds.push(id);
        self.succ.push(Vec::new());
        i
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        assert!(
            from < self.worlds.len() && to < self.worlds.len(),
            "edge to unknown world"
        );
        let list = &mut self.succ[from];
        if let Err(pos) = list.binary_search(&to) {
            list.insert(pos, to);
        }
    }

    /// Declare a letter as part of the signature without making it true anywhere.
    pub fn declare_letter(&mut self, letter: impl Into<String>) {
        self.valuation.entry(letter.into()).or_default();
    }

    pub fn set_true(&mut self, letter: impl Into<String>, world: usize) {
        assert!(world < self.worlds.len(), "valuation on unknown world");
        self.valuation.entry(letter.into()).or_default().insert(world);
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn world_ids(&self) -> &[String] {
        &self.worlds
    }

    pub fn id(&self, world: usize) -> &str {
        &self.worlds[world]
    }

    pub fn world(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn successors(&self, world: usize) -> &[usize] {
        &self.succ[world]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn signature(&self) -> SignatureSet {
        self.valuation.keys().cloned().collect()
    }

    /// Letters absent from the valuation are false everywhere.
    pub fn holds(&self, letter: &str, world: usize) -> bool {
        self.valuation.get(letter).is_some_and(|ws| ws.contains(&world))
    }

    pub fn true_at(&self, world: usize) -> SignatureSet {
        self.valuation
            .iter()
            .filter(|(_, ws)| ws.contains(&world))
            .map(|(p, _)| p.clone())
            .collect()
    }

    pub fn valuation(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.valuation
    }

    /// The same frame with the valuation restricted to `keep`.
    pub fn reduct(&self, keep: &SignatureSet) -> KripkeModel {
        let mut m = self.clone();
        m.valuation.retain(|p, _| keep.contains(p));
        for p in keep.iter() {
            m.declare_letter(p.clone());
        }
        m
    }

    pub fn predecessors_count(&self) -> Vec<usize> {
        let mut count = vec![0; self.len()];
        for (_, b) in self.edges() {
            count[b] += 1;
        }
        count
    }

    pub fn to_file(&self, point: Option<usize>) -> ModelFile {
        ModelFile {
            worlds: self.worlds.clone(),
            edges: self
                .edges()
                .map(|(a, b)| (self.worlds[a].clone(), self.worlds[b].clone()))
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(p, ws)| (p.clone(), ws.iter().map(|&w| self.worlds[w].clone()).collect()))
                .collect(),
            point: point.map(|w| self.worlds[w].clone()),
        }
    }

    pub fn from_file(file: &ModelFile) -> Result<(KripkeModel, Option<usize>)> {
        let mut m = KripkeModel::new();
        for w in &file.worlds {
            if m.world(w).is_some() {
                return Err(Error::Model(format!("duplicate world `{w}`")));
            }
            m.add_world(w.clone());
        }
        let lookup = |m: &KripkeModel, w: &str| m.world(w).ok_or_else(|| Error::Model(format!("unknown world `{w}`")));
        for (a, b) in &file.edges {
            let (a, b) = (lookup(&m, a)?, lookup(&m, b)?);
            m.add_edge(a, b);
        }
        for (p, ws) in &file.valuation {
            m.declare_letter(p.clone());
            for w in ws {
                let w = lookup(&m, w)?;
                m.set_true(p.clone(), w);
            }
        }
        let point = file.point.as_deref().map(|w| lookup(&m, w)).transpose()?;
        Ok((m, point))
    }

    pub fn from_json(text: &str) -> Result<(KripkeModel, Option<usize>)> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))?;
        KripkeModel::from_file(&file)
    }

    pub fn to_json(&self, point: Option<usize>) -> String {
        serde_json::to_string(&self.to_file(point)).expect("model serialises")
    }
}

impl PointedModel {
    pub fn new(model: KripkeModel, point: usize) -> Self {
        assert!(point < model.len(), "point must be a world of the model");
        PointedModel { model, point }
    }

    pub fn from_json(text: &str) -> Result<PointedModel> {
        let (model, point) = KripkeModel::from_json(text)?;
        let point = match point {
            Some(p) => p,
            None if !model.is_empty() => 0,
            None => return Err(Error::Model("empty model has no point".into())),
        };
        Ok(PointedModel { model, point })
    }

    pub fn to_json(&self) -> String {
        self.model.to_json(Some(self.point))
    }

    /// True when every world is reachable from the point along a unique path.
    pub fn is_tree(&self) -> bool {
        let preds = self.model.predecessors_count();
        if preds[self.point] != 0 {
            return false;
        }
        if preds.iter().enumerate().any(|(w, &c)| w != self.point && c != 1) {
            return false;
        }
        let mut seen = vec![false; self.model.len()];
        let mut stack = vec![self.point];
        seen[self.point] = true;
        while let Some(w) = stack.pop() {
            for &v in self.model.successors(w) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl Serialize for PointedModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.model.to_file(Some(self.point)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointedModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = ModelFile::deserialize(d)?;
        let (model, point) = KripkeModel::from_file(&file).map_err(serde::de::Error::custom)?;
        let point = point.ok_or_else(|| serde::de::Error::custom("missing point"))?;
        Ok(PointedModel { model, point })
    }
}

/// On-disk model format.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"worlds":["w0","w1"],"edges":[["w0","w1"]],"valuation":{"p":["w1"]},"point":"w0"}"#;
        let pm = PointedModel::from_json(text).unwrap();
        assert_eq!(pm.model.len(), 2);
        assert!(pm.model.holds("p", 1));
        assert!(!pm.model.holds("q", 1));
        assert_eq!(pm.to_json(), text);
        assert!(pm.is_tree());
    }

    #[test]
    fn rejects_dangling_references() {
        assert!(KripkeModel::from_json(r#"{"worlds":["a"],"edges":[["a","b"]]}"#).is_err());
        assert!(KripkeModel::from_json(r#"{"worlds":["a"],"valuation":{"p":["z"]}}"#).is_err());
        assert!(KripkeModel::from_json(r#"{"worlds":["a","a"]}"#).is_err());
        assert!(KripkeModel::from_json(r#"{"worlds":["a"],"point":"b"}"#).is_err());
    }

    #[test]
    fn tree_check() {
        let mut m = KripkeModel::new();
        let a = m.add_world("a");
        let b = m.add_world("b");
        m.add_edge(a, b);
        assert!(PointedModel::new(m.clone(), a).is_tree());
        assert!(!PointedModel::new(m.clone(), b).is_tree());
        m.add_edge(b, b);
        assert!(!PointedModel::new(m, a).is_tree());
    }
}
