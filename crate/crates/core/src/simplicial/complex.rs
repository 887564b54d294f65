use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{CdglError, Result};

/// Input document: `{"vertices":[int…], "facets":[[int…]…]}`, optionally
/// with `"loops":[int…]` listing vertices that carry a degenerate edge.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub vertices: Vec<u32>,
    pub facets: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub loops: Vec<u32>,
}

/// A finite simplicial complex, closed under faces. Simplices are sorted
/// vertex lists, ordered by dimension and then lexicographically.
///
/// A loop at `v` is the edge `[v, v]` with both endpoints at `v`; it is how
/// the one-vertex circle is written. Loops are edges only and never faces of
/// higher simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<u32>,
    facets: Vec<Vec<u32>>,
    loops: Vec<u32>,
    simplices: Vec<Vec<u32>>,
}

fn all_faces(s: &[u32], out: &mut BTreeSet<Vec<u32>>) {
    let n = s.len();
    for mask in 1u64..(1u64 << n) {
        let f: Vec<u32> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
        out.insert(f);
    }
}

impl SimplicialComplex {
    pub fn new(vertices: Vec<u32>, facets: Vec<Vec<u32>>) -> Result<Self> {
        let vset: BTreeSet<u32> = vertices.iter().copied().collect();
        if vset.len() != vertices.len() {
            return Err(CdglError::InvalidComplex("duplicate vertex".into()));
        }
        let mut closed: BTreeSet<Vec<u32>> = vset.iter().map(|&v| vec![v]).collect();
        let mut norm_facets = Vec::new();
        for f in &facets {
            if f.is_empty() {
                return Err(CdglError::InvalidComplex("empty facet".into()));
            }
            if f.len() > 20 {
                return Err(CdglError::InvalidComplex(format!("facet {f:?} too large")));
            }
            let mut s = f.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(CdglError::InvalidComplex(format!("facet {f:?} repeats a vertex")));
            }
            if let Some(v) = s.iter().find(|v| !vset.contains(v)) {
                return Err(CdglError::InvalidComplex(format!("facet {f:?} references unknown vertex {v}")));
            }
            all_faces(&s, &mut closed);
            norm_facets.push(s);
        }
        let mut simplices: Vec<Vec<u32>> = closed.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(SimplicialComplex { vertices: vset.into_iter().collect(), facets: norm_facets, loops: Vec::new(), simplices })
    }

    /// Adds a loop edge at each listed vertex.
    pub fn with_loops(mut self, loops: &[u32]) -> Result<Self> {
        let set: BTreeSet<u32> = loops.iter().copied().collect();
        if set.len() != loops.len() {
            return Err(CdglError::InvalidComplex("duplicate loop".into()));
        }
        if let Some(v) = set.iter().find(|v| self.vertices.binary_search(v).is_err()) {
            return Err(CdglError::InvalidComplex(format!("loop at unknown vertex {v}")));
        }
        self.simplices.retain(|s| !(s.len() == 2 && s[0] == s[1]));
        self.simplices.extend(set.iter().map(|&v| vec![v, v]));
        self.simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        self.loops = set.into_iter().collect();
        Ok(self)
    }

    pub fn from_document(doc: &ComplexDocument) -> Result<Self> {
        Self::new(doc.vertices.clone(), doc.facets.clone())?.with_loops(&doc.loops)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ComplexDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument { vertices: self.vertices.clone(), facets: self.facets.clone(), loops: self.loops.clone() }
    }

    /// The full simplex on `0..=n`.
    pub fn simplex(n: usize) -> Self {
        let v: Vec<u32> = (0..=n as u32).collect();
        Self::new(v.clone(), vec![v]).unwrap()
    }

    /// Boundary of the `n`-simplex.
    pub fn simplex_boundary(n: usize) -> Self {
        let v: Vec<u32> = (0..=n as u32).collect();
        let facets = (0..=n).map(|i| v.iter().copied().filter(|&x| x != i as u32).collect()).collect();
        Self::new(v, facets).unwrap()
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    pub fn simplices(&self) -> &[Vec<u32>] {
        &self.simplices
    }

    pub fn edges(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.simplices.iter().filter(|s| s.len() == 2)
    }

    /// −1 for the empty complex.
    pub fn dimension(&self) -> i32 {
        self.simplices.last().map_or(-1, |s| s.len() as i32 - 1)
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.simplices.binary_search_by(|t| t.len().cmp(&s.len()).then_with(|| t.as_slice().cmp(s))).is_ok()
    }

    /// Sorted neighbor lists on the 1-skeleton.
    pub fn adjacency(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut adj: BTreeMap<u32, Vec<u32>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in self.edges().filter(|e| e[0] != e[1]) {
            adj.get_mut(&e[0]).unwrap().push(e[1]);
            adj.get_mut(&e[1]).unwrap().push(e[0]);
        }
        for n in adj.values_mut() {
            n.sort_unstable();
        }
        adj
    }

    /// Connected components (via edges), each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &v in &self.vertices {
            if !seen.insert(v) {
                continue;
            }
            let mut comp = vec![v];
            let mut q = VecDeque::from([v]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[&x] {
                    if seen.insert(y) {
                        comp.push(y);
                        q.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Index into [`Self::components`] of the component holding `v`.
    pub fn component_of(&self, v: u32) -> Option<usize> {
        self.components().iter().position(|c| c.binary_search(&v).is_ok())
    }

    /// Subcomplex spanned by the given vertices.
    pub fn induced(&self, verts: &[u32]) -> Self {
        let vs: BTreeSet<u32> = verts.iter().copied().collect();
        let facets = self.facets.iter().filter(|f| f.iter().all(|v| vs.contains(v))).cloned().collect();
        let loops: Vec<u32> = self.loops.iter().copied().filter(|v| vs.contains(v)).collect();
        Self::new(vs.into_iter().collect(), facets).and_then(|c| c.with_loops(&loops)).unwrap()
    }
}
