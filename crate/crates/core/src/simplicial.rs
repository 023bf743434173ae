//! Finite simplicial complexes, simplicial maps, and their integral cochains.
//!
//! Vertices keep the order in which they were given; every simplex is stored
//! as the increasing list of vertex indices, and all orientation signs come
//! from that order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::abelian::{AbHom, IntMatrix};
use crate::cochain::{groupoid_cohomology, CochainComplex, CochainMap, GammaCohomology};
use crate::error::{Error, Result};

/// A downward-closed family of vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// `simplices[n]` holds the n-simplices in lexicographic order.
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `simplices`: every face of a listed
    /// simplex is added, and every vertex becomes a 0-simplex.
    pub fn from_simplices<S: AsRef<str>>(vertices: &[S], simplices: &[Vec<S>]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut lookup = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if lookup.insert(v.clone(), i).is_some() {
                return Err(Error::invalid(format!("vertex {:?} listed twice", v)));
            }
        }
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![(0..vertices.len()).map(|i| vec![i]).collect()];
        for s in simplices {
            let mut idx = Vec::with_capacity(s.len());
            for v in s {
                let i = *lookup
                    .get(v.as_ref())
                    .ok_or_else(|| Error::invalid(format!("simplex uses unknown vertex {:?}", v.as_ref())))?;
                idx.push(i);
            }
            idx.sort_unstable();
            if idx.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid("simplex repeats a vertex"));
            }
            if idx.is_empty() {
                continue;
            }
            add_faces(&idx, &mut by_dim);
        }
        Ok(Self::from_graded(vertices, by_dim))
    }

    fn from_graded(vertices: Vec<String>, by_dim: Vec<BTreeSet<Vec<usize>>>) -> Self {
        let mut simplices: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        while simplices.len() > 1 && simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex {
            vertices,
            simplices,
            index,
        }
    }

    /// Highest simplex dimension; 0 for a complex without edges.
    pub fn dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn simplices(&self, n: usize) -> &[Vec<usize>] {
        self.simplices.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, n: usize) -> usize {
        self.simplices(n).len()
    }

    pub fn simplex_index(&self, simplex: &[usize]) -> Option<usize> {
        let n = simplex.len().checked_sub(1)?;
        self.index.get(n)?.get(simplex).copied()
    }

    /// Simplices not contained in a larger one.
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for n in 0..=self.dimension() {
            for s in self.simplices(n) {
                let covered = self.simplices(n + 1).iter().any(|t| s.iter().all(|v| t.contains(v)));
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Number of connected components (union-find over edges).
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            parent[a] = b;
        }
        (0..self.vertices.len()).filter(|&v| find(&mut parent, v) == v).count()
    }

    pub fn cochain_complex(&self) -> CochainComplex {
        self.cochain_complex_to(self.dimension())
    }

    /// Cochains padded with zero groups up to degree `top`.
    pub fn cochain_complex_to(&self, top: usize) -> CochainComplex {
        let top = top.max(self.dimension());
        let ranks: Vec<usize> = (0..=top).map(|n| self.count(n)).collect();
        let mut differentials = Vec::with_capacity(top);
        for n in 0..top {
            let mut d = IntMatrix::zeros(ranks[n + 1], ranks[n]);
            for (row, s) in self.simplices(n + 1).iter().enumerate() {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let col = self.simplex_index(&face).expect("complex is closed under faces");
                    d[(row, col)] = if i % 2 == 0 { 1.into() } else { (-1).into() };
                }
            }
            differentials.push(d);
        }
        CochainComplex::new(ranks, differentials).expect("simplicial coboundary squares to zero")
    }
}

fn add_faces(simplex: &[usize], by_dim: &mut Vec<BTreeSet<Vec<usize>>>) {
    let n = simplex.len() - 1;
    while by_dim.len() <= n {
        by_dim.push(BTreeSet::new());
    }
    if !by_dim[n].insert(simplex.to_vec()) || n == 0 {
        return;
    }
    for i in 0..simplex.len() {
        let mut face = simplex.to_vec();
        face.remove(i);
        add_faces(&face, by_dim);
    }
}

/// Vertex labels may be written as JSON strings or integers.
#[derive(Deserialize)]
#[serde(untagged)]
enum Label {
    Text(String),
    Int(i64),
}

impl Label {
    fn into_string(self) -> String {
        match self {
            Label::Text(s) => s,
            Label::Int(i) => i.to_string(),
        }
    }
}

#[derive(Serialize)]
struct ComplexOut<'a> {
    vertices: &'a [String],
    simplices: Vec<Vec<&'a str>>,
}

#[derive(Deserialize)]
struct ComplexIn {
    #[serde(default)]
    vertices: Option<Vec<Label>>,
    simplices: Vec<Vec<Label>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let simplices = self
            .maximal_simplices()
            .into_iter()
            .map(|s| s.into_iter().map(|v| self.vertices[v].as_str()).collect())
            .collect();
        ComplexOut {
            vertices: &self.vertices,
            simplices,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    /// Without a `vertices` list the vertices are taken in order of first
    /// appearance.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ComplexIn::deserialize(deserializer)?;
        let simplices: Vec<Vec<String>> = raw
            .simplices
            .into_iter()
            .map(|s| s.into_iter().map(Label::into_string).collect())
            .collect();
        let vertices: Vec<String> = match raw.vertices {
            Some(v) => v.into_iter().map(Label::into_string).collect(),
            None => {
                let mut seen = Vec::new();
                for v in simplices.iter().flatten() {
                    if !seen.contains(v) {
                        seen.push(v.clone());
                    }
                }
                seen
            }
        };
        SimplicialComplex::from_simplices(&vertices, &simplices).map_err(de::Error::custom)
    }
}

/// A vertex map between complexes that sends simplices onto simplices,
/// possibly collapsing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: Vec<usize>,
}

/// Self-map JSON: `{"vertexMap": {v: w, ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMapJson {
    #[serde(rename = "vertexMap")]
    pub vertex_map: BTreeMap<String, String>,
}

impl SimplicialMap {
    pub fn new(source: SimplicialComplex, target: SimplicialComplex, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != source.vertices.len() {
            return Err(Error::shape(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                source.vertices.len()
            )));
        }
        if let Some(&bad) = vertex_map.iter().find(|&&w| w >= target.vertices.len()) {
            return Err(Error::invalid(format!("vertex map hits unknown vertex index {}", bad)));
        }
        for n in 1..=source.dimension() {
            for s in source.simplices(n) {
                let mut image: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
                image.sort_unstable();
                image.dedup();
                if target.simplex_index(&image).is_none() {
                    let names: Vec<&str> = s.iter().map(|&v| source.vertices[v].as_str()).collect();
                    return Err(Error::invalid(format!("image of simplex {:?} is not a simplex", names)));
                }
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            vertex_map,
        })
    }

    /// A self-map given by labels; every vertex must be mapped.
    pub fn self_map(complex: &SimplicialComplex, labels: &BTreeMap<String, String>) -> Result<Self> {
        let mut map = Vec::with_capacity(complex.vertices.len());
        for v in &complex.vertices {
            let w = labels
                .get(v)
                .ok_or_else(|| Error::invalid(format!("vertex map does not cover {:?}", v)))?;
            let wi = complex
                .vertex_index(w)
                .ok_or_else(|| Error::invalid(format!("vertex map sends {:?} to unknown vertex {:?}", v, w)))?;
            map.push(wi);
        }
        if labels.len() != complex.vertices.len() {
            return Err(Error::invalid("vertex map names vertices outside the complex"));
        }
        SimplicialMap::new(complex.clone(), complex.clone(), map)
    }

    pub fn identity(complex: &SimplicialComplex) -> Self {
        SimplicialMap {
            source: complex.clone(),
            target: complex.clone(),
            vertex_map: (0..complex.vertices.len()).collect(),
        }
    }

    pub fn constant(complex: &SimplicialComplex, vertex: usize) -> Result<Self> {
        SimplicialMap::new(complex.clone(), complex.clone(), vec![vertex; complex.vertices.len()])
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn is_self_map(&self) -> bool {
        self.source == self.target
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if first.target != self.source {
            return Err(Error::shape("simplicial maps are not composable"));
        }
        let vertex_map = first.vertex_map.iter().map(|&v| self.vertex_map[v]).collect();
        Ok(SimplicialMap {
            source: first.source.clone(),
            target: self.target.clone(),
            vertex_map,
        })
    }

    /// Chain map in dimension `n` as a `count_target(n) x count_source(n)`
    /// matrix: a simplex goes to its image with the sign of the sorting
    /// permutation, or to 0 when collapsed.
    pub fn chain_matrix(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.target.count(n), self.source.count(n));
        for (col, s) in self.source.simplices(n).iter().enumerate() {
            let image: Vec<usize> = s.iter().map(|&v| self.vertex_map[v]).collect();
            let Some((sorted, sign)) = sort_with_sign(&image) else {
                continue;
            };
            let row = self.target.simplex_index(&sorted).expect("checked at construction");
            m[(row, col)] = sign.into();
        }
        m
    }

    /// The induced map on cochains, from the target's cochains to the
    /// source's, padded to a common top degree.
    pub fn induced_cochain_map(&self) -> CochainMap {
        let top = self.source.dimension().max(self.target.dimension());
        let components = (0..=top).map(|n| self.chain_matrix(n).transpose()).collect();
        CochainMap::new(
            self.target.cochain_complex_to(top),
            self.source.cochain_complex_to(top),
            components,
        )
        .expect("simplicial maps commute with coboundaries")
    }

    /// `σ*` on `H^n` for every degree of a self-map.
    pub fn sigma_star(&self) -> Result<Vec<AbHom>> {
        if !self.is_self_map() {
            return Err(Error::shape("σ* needs a self-map"));
        }
        self.induced_cochain_map().induced_maps()
    }

    pub fn is_identity(&self) -> bool {
        self.is_self_map() && self.vertex_map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `H^n(Γ)` for a self-map, `n = 0 ..= dim + 1`.
    ///
    /// For the identity `Γ = X × Z`, and the projection onto the unit space
    /// retracts the inclusion of `X`, so `H^n(Γ) = H^n(X) ⊕ H^{n-1}(X)` even
    /// when the kernel part has torsion.
    pub fn groupoid_cohomology(&self) -> Result<Vec<GammaCohomology>> {
        let sigma = self.sigma_star()?;
        (0..=sigma.len())
            .map(|n| {
                let row = groupoid_cohomology(&sigma, n)?;
                Ok(if self.is_identity() {
                    row.with_known_split()
                } else {
                    row
                })
            })
            .collect()
    }
}

/// Sorts distinct entries, returning the parity sign; `None` on repeats.
fn sort_with_sign(v: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut s = v.to_vec();
    let mut sign = 1;
    for i in 1..s.len() {
        let mut j = i;
        while j > 0 && s[j - 1] > s[j] {
            s.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((s, sign))
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{}{}", prefix, i)).collect()
}

/// The cycle graph on `n >= 3` vertices `prefix0 .. prefix{n-1}`.
pub fn cycle(prefix: &str, n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::invalid("a simplicial circle needs at least 3 vertices"));
    }
    let v = labels(prefix, n);
    let edges: Vec<Vec<String>> = (0..n).map(|i| vec![v[i].clone(), v[(i + 1) % n].clone()]).collect();
    SimplicialComplex::from_simplices(&v, &edges)
}

/// Boundary of a triangle.
pub fn triangle_boundary() -> SimplicialComplex {
    cycle("v", 3).expect("3 vertices")
}

/// A filled triangle.
pub fn solid_triangle() -> SimplicialComplex {
    SimplicialComplex::from_simplices(&["v0", "v1", "v2"], &[vec!["v0", "v1", "v2"]]).expect("valid")
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn minimal_torus() -> SimplicialComplex {
    let v = labels("v", 7);
    let mut tris = Vec::new();
    for i in 0..7 {
        for (a, b) in [(1, 3), (2, 3)] {
            tris.push(vec![v[i].clone(), v[(i + a) % 7].clone(), v[(i + b) % 7].clone()]);
        }
    }
    SimplicialComplex::from_simplices(&v, &tris).expect("valid")
}

/// Simplicial model of `z ↦ z^d` on the circle.
///
/// `z^d` is not simplicial on a fixed triangulation, so it is realized on the
/// subdivision `C_{|d|N}` of the base circle `C_N`:
///
/// * `power` sends vertex `j` of `C_{|d|N}` to `sign(d)·j mod N`, the exact
///   degree-`d` map from the subdivision onto the base;
/// * `approx` sends `j` to `floor(j / |d|)`, the simplicial approximation of
///   the identity, which is a homotopy equivalence.
///
/// The self-map on cohomology is `σ* = (approx*)^{-1} ∘ power*`. For `d = 0`
/// both maps live on `C_N` and `power` is constant.
#[derive(Clone, Debug)]
pub struct CircleDegreeModel {
    pub degree: i64,
    pub base: SimplicialComplex,
    pub cover: SimplicialComplex,
    pub power: SimplicialMap,
    pub approx: SimplicialMap,
}

impl CircleDegreeModel {
    pub fn new(degree: i64, base_vertices: usize) -> Result<Self> {
        let n = base_vertices;
        let base = cycle("v", n)?;
        let m = degree.unsigned_abs() as usize;
        if m == 0 {
            let power = SimplicialMap::constant(&base, 0)?;
            return Ok(CircleDegreeModel {
                degree,
                cover: base.clone(),
                approx: SimplicialMap::identity(&base),
                base,
                power,
            });
        }
        let cover = cycle("w", m * n)?;
        let power_map = (0..m * n)
            .map(|j| if degree > 0 { j % n } else { (n - j % n) % n })
            .collect();
        let approx_map = (0..m * n).map(|j| j / m).collect();
        Ok(CircleDegreeModel {
            degree,
            power: SimplicialMap::new(cover.clone(), base.clone(), power_map)?,
            approx: SimplicialMap::new(cover.clone(), base.clone(), approx_map)?,
            cover,
            base,
        })
    }

    /// `σ*` on `H^0` and `H^1` of the base circle.
    pub fn sigma_star(&self) -> Result<Vec<AbHom>> {
        let phi = self.power.induced_cochain_map();
        let psi = self.approx.induced_cochain_map();
        (0..=1)
            .map(|n| {
                let psi_n = psi.induced_map(n)?.inverse().map_err(|e| {
                    Error::internal(format!(
                        "identity approximation is not an isomorphism on H^{}: {}",
                        n, e
                    ))
                })?;
                psi_n.compose(&phi.induced_map(n)?)
            })
            .collect()
    }
}
