use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite set with a self-map. Every function on a finite discrete space
/// is a local homeomorphism, so every input is a valid model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSystem {
    labels: Vec<String>,
    sigma: Vec<usize>,
}

impl FiniteSystem {
    pub fn new(labels: Vec<String>, sigma: Vec<usize>) -> Result<Self> {
        if labels.len() != sigma.len() {
            return Err(Error::shape(format!(
                "{} points but σ has {} values",
                labels.len(),
                sigma.len()
            )));
        }
        if let Some(&bad) = sigma.iter().find(|&&y| y >= labels.len()) {
            return Err(Error::invalid(format!(
                "σ takes the value {} outside the point set",
                bad
            )));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::invalid(format!("point {:?} listed twice", l)));
            }
        }
        Ok(FiniteSystem { labels, sigma })
    }

    /// Points labelled `0 .. n-1`.
    pub fn from_map(sigma: Vec<usize>) -> Result<Self> {
        let labels = (0..sigma.len()).map(|i| i.to_string()).collect();
        FiniteSystem::new(labels, sigma)
    }

    pub fn from_labels(points: &[&str], sigma: &[(&str, &str)]) -> Result<Self> {
        let labels: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        let map: BTreeMap<String, String> = sigma.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        Self::from_label_map(labels, &map)
    }

    fn from_label_map(labels: Vec<String>, map: &BTreeMap<String, String>) -> Result<Self> {
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut sigma = Vec::with_capacity(labels.len());
        for l in &labels {
            let target = map
                .get(l)
                .ok_or_else(|| Error::invalid(format!("σ is not defined at {:?}", l)))?;
            let t = *index
                .get(target.as_str())
                .ok_or_else(|| Error::invalid(format!("σ({:?}) = {:?} is not a point", l, target)))?;
            sigma.push(t);
        }
        if map.len() != labels.len() {
            return Err(Error::invalid("σ is defined at labels that are not points"));
        }
        FiniteSystem::new(labels, sigma)
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn sigma(&self, x: usize) -> usize {
        self.sigma[x]
    }

    pub fn sigma_map(&self) -> &[usize] {
        &self.sigma
    }

    /// `σ^k(x)`.
    pub fn iterate(&self, mut x: usize, k: usize) -> usize {
        for _ in 0..k {
            x = self.sigma[x];
        }
        x
    }

    /// `x, σ(x), ..., σ^{k-1}(x)`.
    pub fn orbit(&self, mut x: usize, k: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            out.push(x);
            x = self.sigma[x];
        }
        out
    }

    pub fn preimages(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.points().filter(move |&y| self.sigma[y] == x)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.len()];
        for &y in &self.sigma {
            if std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        true
    }

    /// The minimal `(k, l)` with `k - l = m` and `σ^k(x) = σ^l(y)`, if any.
    ///
    /// Both orbits are periodic after at most `|X| - 1` steps, after which
    /// their offset is frozen, so `|X|` further steps decide membership.
    pub fn find_witness(&self, x: usize, m: i64, y: usize) -> Option<(usize, usize)> {
        let k0 = m.max(0) as usize;
        let l0 = (k0 as i64 - m) as usize;
        let mut a = self.iterate(x, k0);
        let mut b = self.iterate(y, l0);
        for j in 0..=self.len() {
            if a == b {
                return Some((k0 + j, l0 + j));
            }
            a = self.sigma[a];
            b = self.sigma[b];
        }
        None
    }

    /// The element `(x, m, y)` when it lies in `Γ(X, σ)`.
    pub fn element(&self, x: usize, m: i64, y: usize) -> Option<GroupoidElement> {
        let (k, l) = self.find_witness(x, m, y)?;
        Some(GroupoidElement { x, m, y, k, l })
    }

    pub fn unit(&self, x: usize) -> GroupoidElement {
        GroupoidElement {
            x,
            m: 0,
            y: x,
            k: 0,
            l: 0,
        }
    }

    /// `j(x) = (x, 1, σ(x))`.
    pub fn j(&self, x: usize) -> GroupoidElement {
        GroupoidElement {
            x,
            m: 1,
            y: self.sigma[x],
            k: 1,
            l: 0,
        }
    }

    /// `(x, m, y)(y, n, z) = (x, m + n, z)` with a fresh minimal witness.
    pub fn compose(&self, g: &GroupoidElement, h: &GroupoidElement) -> Result<GroupoidElement> {
        if g.y != h.x {
            return Err(Error::NotComposable {
                source_point: self.labels[g.y].clone(),
                range_point: self.labels[h.x].clone(),
            });
        }
        self.element(g.x, g.m + h.m, h.y).ok_or_else(|| {
            Error::internal(format!(
                "product of {} and {} left the groupoid",
                self.show(g),
                self.show(h)
            ))
        })
    }

    /// `(x, m, y)^{-1} = (y, -m, x)`.
    pub fn inverse(&self, g: &GroupoidElement) -> GroupoidElement {
        GroupoidElement {
            x: g.y,
            m: -g.m,
            y: g.x,
            k: g.l,
            l: g.k,
        }
    }

    /// All `(k, l)` with `k - l = m`, `σ^k x = σ^l y` and `k, l <= bound`.
    pub fn witnesses(&self, g: &GroupoidElement, bound: usize) -> Vec<(usize, usize)> {
        (0..)
            .map(|j| (g.k + j, g.l + j))
            .take_while(|&(k, l)| k <= bound && l <= bound)
            .collect()
    }

    pub fn show(&self, g: &GroupoidElement) -> String {
        format!("({}, {}, {})", self.labels[g.x], g.m, self.labels[g.y])
    }
}

/// `(x, m, y)` with its minimal witness `(k, l)`. Equality, ordering and
/// hashing look at `(x, m, y)` only.
#[derive(Clone, Copy, Debug)]
pub struct GroupoidElement {
    pub x: usize,
    pub m: i64,
    pub y: usize,
    pub k: usize,
    pub l: usize,
}

impl GroupoidElement {
    pub fn range(&self) -> usize {
        self.x
    }

    pub fn source(&self) -> usize {
        self.y
    }

    pub fn witness(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn key(&self) -> (usize, i64, usize) {
        (self.x, self.m, self.y)
    }

    pub fn is_unit(&self) -> bool {
        self.m == 0 && self.x == self.y
    }
}

impl PartialEq for GroupoidElement {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for GroupoidElement {}

impl Hash for GroupoidElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for GroupoidElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupoidElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for GroupoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.m, self.y)
    }
}

/// The elements with `|m| <= max_abs_m` whose minimal witness has
/// `k, l <= max_witness`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub max_abs_m: usize,
    pub max_witness: usize,
    elements: Vec<GroupoidElement>,
    by_range: Vec<Vec<usize>>,
}

impl Truncation {
    pub fn elements(&self) -> &[GroupoidElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GroupoidElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Elements with range `x`.
    pub fn starting_at(&self, x: usize) -> impl Iterator<Item = &GroupoidElement> {
        self.by_range[x].iter().map(move |&i| &self.elements[i])
    }

    /// All pairs `(g, h)` with `s(g) = r(h)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (&GroupoidElement, &GroupoidElement)> {
        self.elements
            .iter()
            .flat_map(move |g| self.starting_at(g.y).map(move |h| (g, h)))
    }

    /// All triples `(g, h, k)` with `s(g) = r(h)` and `s(h) = r(k)`.
    pub fn composable_triples(&self) -> impl Iterator<Item = (&GroupoidElement, &GroupoidElement, &GroupoidElement)> {
        self.composable_pairs()
            .flat_map(move |(g, h)| self.starting_at(h.y).map(move |k| (g, h, k)))
    }
}

pub fn enumerate(sys: &FiniteSystem, max_abs_m: usize, max_witness: usize) -> Truncation {
    let bound = max_abs_m as i64;
    let mut elements = Vec::new();
    for x in sys.points() {
        for m in -bound..=bound {
            for y in sys.points() {
                if let Some(g) = sys.element(x, m, y) {
                    if g.k <= max_witness && g.l <= max_witness {
                        elements.push(g);
                    }
                }
            }
        }
    }
    elements.sort();
    let mut by_range = vec![Vec::new(); sys.len()];
    for (i, g) in elements.iter().enumerate() {
        by_range[g.x].push(i);
    }
    Truncation {
        max_abs_m,
        max_witness,
        elements,
        by_range,
    }
}

/// Point labels may be JSON strings or integers.
#[derive(Deserialize)]
#[serde(untagged)]
enum Label {
    Text(String),
    Int(i64),
}

impl From<Label> for String {
    fn from(l: Label) -> String {
        match l {
            Label::Text(s) => s,
            Label::Int(i) => i.to_string(),
        }
    }
}

#[derive(Deserialize)]
struct SystemIn {
    points: Vec<Label>,
    sigma: SigmaIn,
}

/// `σ` as an object `{x: y}` or as a list of targets in point order.
#[derive(Deserialize)]
#[serde(untagged)]
enum SigmaIn {
    Map(BTreeMap<String, Label>),
    List(Vec<Label>),
}

#[derive(Serialize)]
struct SystemOut<'a> {
    points: &'a [String],
    sigma: BTreeMap<&'a str, &'a str>,
}

impl Serialize for FiniteSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SystemOut {
            points: &self.labels,
            sigma: self
                .points()
                .map(|x| (self.labels[x].as_str(), self.labels[self.sigma[x]].as_str()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SystemIn::deserialize(d)?;
        let labels: Vec<String> = raw.points.into_iter().map(String::from).collect();
        let map: BTreeMap<String, String> = match raw.sigma {
            SigmaIn::Map(m) => m.into_iter().map(|(k, v)| (k, String::from(v))).collect(),
            SigmaIn::List(v) => {
                if v.len() != labels.len() {
                    return Err(de::Error::custom(format!(
                        "σ lists {} values for {} points",
                        v.len(),
                        labels.len()
                    )));
                }
                labels.iter().cloned().zip(v.into_iter().map(String::from)).collect()
            }
        };
        FiniteSystem::from_label_map(labels, &map).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> FiniteSystem {
        FiniteSystem::from_labels(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap()
    }

    fn merge() -> FiniteSystem {
        FiniteSystem::from_labels(&["a", "b", "c"], &[("a", "c"), ("b", "c"), ("c", "c")]).unwrap()
    }

    #[test]
    fn swap_truncation() {
        let s = swap();
        let t = enumerate(&s, 1, 2);
        let shown: Vec<String> = t.elements().iter().map(|g| s.show(g)).collect();
        assert_eq!(
            shown,
            vec![
                "(a, -1, b)",
                "(a, 0, a)",
                "(a, 1, b)",
                "(b, -1, a)",
                "(b, 0, b)",
                "(b, 1, a)"
            ]
        );
    }

    #[test]
    fn one_point_is_z() {
        let s = FiniteSystem::from_map(vec![0]).unwrap();
        let t = enumerate(&s, 4, 4);
        assert_eq!(t.len(), 9);
        let g = s.element(0, 2, 0).unwrap();
        let h = s.element(0, 3, 0).unwrap();
        assert_eq!(s.compose(&g, &h).unwrap().m, 5);
    }

    #[test]
    fn merging_points() {
        let s = merge();
        let t = enumerate(&s, 0, 1);
        let shown: Vec<String> = t.elements().iter().map(|g| s.show(g)).collect();
        // a, b, c all merge after one step
        assert_eq!(t.len(), 9, "{:?}", shown);
        let ab = s.element(0, 0, 1).unwrap();
        assert_eq!(ab.witness(), (1, 1));
        assert!(enumerate(&s, 0, 0).len() == 3);
    }

    #[test]
    fn compose_and_inverse() {
        let s = swap();
        let g = s.element(0, 1, 1).unwrap();
        let gi = s.inverse(&g);
        assert_eq!(s.compose(&g, &gi).unwrap(), s.unit(0));
        let h = s.element(1, 1, 0).unwrap();
        let gh = s.compose(&g, &h).unwrap();
        assert_eq!(gh.key(), (0, 2, 0));
        assert_eq!(gh.witness(), (2, 0));
        assert!(matches!(s.compose(&g, &g), Err(Error::NotComposable { .. })));
    }

    #[test]
    fn witnesses_beyond_minimal() {
        let s = swap();
        let g = s.element(0, 2, 0).unwrap();
        assert_eq!(s.witnesses(&g, 3), vec![(2, 0), (3, 1)]);
    }

    #[test]
    fn non_members() {
        // two disjoint fixed points never meet
        let s = FiniteSystem::from_map(vec![0, 1]).unwrap();
        assert!(s.element(0, 0, 1).is_none());
        // a 3-cycle: (0, m, 1) needs m = 2 mod 3
        let c = FiniteSystem::from_map(vec![1, 2, 0]).unwrap();
        assert!(c.element(0, 0, 1).is_none());
        assert_eq!(c.element(0, 1, 1).unwrap().witness(), (1, 0));
        assert_eq!(c.element(0, -2, 1).unwrap().witness(), (0, 2));
    }

    #[test]
    fn json_forms() {
        let s: FiniteSystem = serde_json::from_str(r#"{"points":["a","b"],"sigma":{"a":"b","b":"a"}}"#).unwrap();
        assert_eq!(s, swap());
        let l: FiniteSystem = serde_json::from_str(r#"{"points":[0,1,2],"sigma":[2,2,2]}"#).unwrap();
        assert_eq!(l.sigma_map(), &[2, 2, 2]);
        let back: FiniteSystem = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<FiniteSystem>(r#"{"points":["a"],"sigma":{"a":"z"}}"#).is_err());
        assert!(serde_json::from_str::<FiniteSystem>(r#"{"points":["a","b"],"sigma":{"a":"a"}}"#).is_err());
    }
}
