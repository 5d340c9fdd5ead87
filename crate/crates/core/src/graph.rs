//! Looped simple graphs `G = (V, E, L)`.
//!
//! Vertices and loops carry opaque string ids; internally vertices are dense
//! indices in declaration order, edges are stored as sorted index pairs and
//! loops as `(id, vertex)` pairs. Elements of `E ∪ L` are indexed with all
//! edges first, then all loops.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// External name of an element of `E ∪ L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementId {
    Edge(String, String),
    Loop(String),
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementId::Edge(u, v) => write!(f, "edge {u}-{v}"),
            ElementId::Loop(id) => write!(f, "loop {id}"),
        }
    }
}

/// Index-level view of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Edge(usize, usize),
    Loop(usize),
}

impl Element {
    pub fn is_loop(&self) -> bool {
        matches!(self, Element::Loop(_))
    }

    pub fn touches(&self, v: usize) -> bool {
        match *self {
            Element::Edge(a, b) => a == v || b == v,
            Element::Loop(a) => a == v,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeProfile {
    /// Incident edges plus incident loops, each loop counted once.
    pub d_dagger: usize,
    /// `d_dagger` plus the number of incident loops.
    pub degree: usize,
    pub is_node: bool,
}

#[derive(Clone, Debug, Default)]
pub struct LoopedSimpleGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    loops: Vec<(String, usize)>,
}

impl PartialEq for LoopedSimpleGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.loops == other.loops
    }
}

impl Eq for LoopedSimpleGraph {}

impl LoopedSimpleGraph {
    /// Builds a graph from vertex ids, edges as id pairs and loops as
    /// `(loop id, vertex id)` pairs.
    pub fn build<V, A, B, I, J>(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (A, B)>,
        loops: impl IntoIterator<Item = (I, J)>,
    ) -> Result<Self>
    where
        V: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
        I: Into<String>,
        J: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let lookup = |id: &str| -> Result<usize> {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(id.to_string()))
        };
        let mut edge_list = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            if a == b {
                return Err(Error::SelfLoopAsEdge(a.to_string()));
            }
            edge_list.push((lookup(a)?, lookup(b)?));
        }
        let mut loop_list = Vec::new();
        for (id, at) in loops {
            loop_list.push((id.into(), lookup(at.as_ref())?));
        }
        Self::from_parts(vertices, edge_list, loop_list)
    }

    /// Normalizes index-level parts into a graph, checking the invariants.
    pub(crate) fn from_parts(
        vertices: Vec<String>,
        edges: Vec<(usize, usize)>,
        loops: Vec<(String, usize)>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut index = HashMap::with_capacity(n);
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut norm = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVertex(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::SelfLoopAsEdge(vertices[a].clone()));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(
                    vertices[w[0].0].clone(),
                    vertices[w[0].1].clone(),
                ));
            }
        }
        let mut seen = HashSet::new();
        for (id, at) in &loops {
            if *at >= n {
                return Err(Error::UnknownVertex(format!("#{at}")));
            }
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateLoop(id.clone()));
            }
        }
        let mut loops = loops;
        loops.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.cmp(&y.0)));
        Ok(Self {
            vertices,
            index,
            edges: norm,
            loops,
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// One vertex carrying three loops.
    pub fn k1_3(vertex: &str, loop_ids: [&str; 3]) -> Self {
        Self::build([vertex], Vec::<(&str, &str)>::new(), loop_ids.map(|l| (l, vertex)))
            .expect("K_1^[3] is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn element_count(&self) -> usize {
        self.edges.len() + self.loops.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn contains_vertex(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn loops(&self) -> &[(String, usize)] {
        &self.loops
    }

    pub fn element(&self, i: usize) -> Element {
        if i < self.edges.len() {
            let (a, b) = self.edges[i];
            Element::Edge(a, b)
        } else {
            Element::Loop(self.loops[i - self.edges.len()].1)
        }
    }

    pub fn element_id(&self, i: usize) -> ElementId {
        if i < self.edges.len() {
            let (a, b) = self.edges[i];
            ElementId::Edge(self.vertices[a].clone(), self.vertices[b].clone())
        } else {
            ElementId::Loop(self.loops[i - self.edges.len()].0.clone())
        }
    }

    pub fn element_index(&self, id: &ElementId) -> Result<usize> {
        let missing = || Error::UnknownElement(id.to_string());
        match id {
            ElementId::Edge(a, b) => {
                let a = self.vertex_index(a).map_err(|_| missing())?;
                let b = self.vertex_index(b).map_err(|_| missing())?;
                self.edge_index(a, b).ok_or_else(missing)
            }
            ElementId::Loop(l) => self
                .loops
                .iter()
                .position(|(id, _)| id == l)
                .map(|p| p + self.edges.len())
                .ok_or_else(missing),
        }
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.loops.iter().filter(|(_, at)| *at == v).count()
    }

    pub fn loop_ids_at(&self, v: usize) -> Vec<&str> {
        self.loops
            .iter()
            .filter(|(_, at)| *at == v)
            .map(|(id, _)| id.as_str())
            .collect()
    }

    /// Neighbours of `v` in vertex order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn incident_elements(&self, v: usize) -> Vec<usize> {
        (0..self.element_count())
            .filter(|&i| self.element(i).touches(v))
            .collect()
    }

    pub fn d_dagger(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count() + self.loops_at(v)
    }

    pub fn degree_profile(&self, id: &str) -> Result<DegreeProfile> {
        let v = self.vertex_index(id)?;
        let d_dagger = self.d_dagger(v);
        Ok(DegreeProfile {
            d_dagger,
            degree: d_dagger + self.loops_at(v),
            is_node: d_dagger == 3,
        })
    }

    /// Vertices with `d†(v) = 3`.
    pub fn nodes(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.d_dagger(v) == 3)
            .collect()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.d_dagger(v) == 0)
    }

    /// `G - X` for a set of vertex ids.
    pub fn remove_vertices<S: AsRef<str>>(&self, ids: &[S]) -> Result<Self> {
        let mut removed = vec![false; self.vertex_count()];
        for id in ids {
            removed[self.vertex_index(id.as_ref())?] = true;
        }
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&v| !removed[v]).collect();
        Ok(self.induced(&keep))
    }

    /// Subgraph induced by the given vertex indices (loops included).
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut map = vec![usize::MAX; self.vertex_count()];
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| map[a] != usize::MAX && map[b] != usize::MAX)
            .map(|&(a, b)| (map[a], map[b]))
            .collect();
        let loops = self
            .loops
            .iter()
            .filter(|(_, at)| map[*at] != usize::MAX)
            .map(|(id, at)| (id.clone(), map[*at]))
            .collect();
        Self::from_parts(vertices, edges, loops).expect("induced subgraph is well formed")
    }

    /// Subgraph on all vertices keeping only the listed elements.
    pub fn restrict_elements(&self, elements: &[usize]) -> Self {
        let mut edges = Vec::new();
        let mut loops = Vec::new();
        for &i in elements {
            if i < self.edges.len() {
                edges.push(self.edges[i]);
            } else {
                loops.push(self.loops[i - self.edges.len()].clone());
            }
        }
        Self::from_parts(self.vertices.clone(), edges, loops).expect("element subset is well formed")
    }

    /// Drops vertices with no incident edge or loop.
    pub fn without_isolated(&self) -> Self {
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| self.d_dagger(v) > 0)
            .collect();
        self.induced(&keep)
    }

    pub fn without_element(&self, i: usize) -> Self {
        let keep: Vec<usize> = (0..self.element_count()).filter(|&j| j != i).collect();
        self.restrict_elements(&keep)
    }

    pub fn with_edge(&self, a: usize, b: usize) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push((a, b));
        Self::from_parts(self.vertices.clone(), edges, self.loops.clone())
    }

    pub fn with_loop(&self, id: &str, at: usize) -> Result<Self> {
        let mut loops = self.loops.clone();
        loops.push((id.to_string(), at));
        Self::from_parts(self.vertices.clone(), self.edges.clone(), loops)
    }

    pub fn with_vertex(&self, id: &str) -> Result<Self> {
        let mut vertices = self.vertices.clone();
        vertices.push(id.to_string());
        Self::from_parts(vertices, self.edges.clone(), self.loops.clone())
    }

    pub(crate) fn parts(&self) -> (Vec<String>, Vec<(usize, usize)>, Vec<(String, usize)>) {
        (self.vertices.clone(), self.edges.clone(), self.loops.clone())
    }

    /// Renames vertices and loops; ids must stay distinct.
    pub fn relabel(
        &self,
        vertex: impl Fn(&str) -> String,
        loop_id: impl Fn(&str) -> String,
    ) -> Result<Self> {
        Self::from_parts(
            self.vertices.iter().map(|v| vertex(v)).collect(),
            self.edges.clone(),
            self.loops.iter().map(|(l, at)| (loop_id(l), *at)).collect(),
        )
    }

    /// A vertex id not yet used, of the form `{prefix}{k}`.
    pub fn fresh_vertex_id(&self, prefix: &str) -> String {
        (0..)
            .map(|k| format!("{prefix}{k}"))
            .find(|id| !self.contains_vertex(id))
            .expect("unbounded id space")
    }

    pub fn fresh_loop_id(&self, prefix: &str) -> String {
        (0..)
            .map(|k| format!("{prefix}{k}"))
            .find(|id| !self.loops.iter().any(|(l, _)| l == id))
            .expect("unbounded id space")
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Edge-connected components of the vertices not flagged in `removed`.
    pub(crate) fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let n = self.vertex_count();
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub(crate) fn component_indices(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&vec![false; self.vertex_count()])
    }

    /// Partition of `V` by edge connectivity; loops do not connect anything.
    pub fn connected_components(&self) -> Vec<Vec<String>> {
        self.component_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|v| self.vertices[v].clone()).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_indices().len() <= 1
    }

    fn loop_flags(&self) -> Vec<bool> {
        let mut has = vec![false; self.vertex_count()];
        for (_, at) in &self.loops {
            has[*at] = true;
        }
        has
    }

    /// Loopless components of `G - X` where `X` is given by indices.
    pub(crate) fn loopless_components_after_indices(&self, x: &[usize]) -> Vec<Vec<usize>> {
        let mut removed = vec![false; self.vertex_count()];
        for &v in x {
            removed[v] = true;
        }
        let has_loop = self.loop_flags();
        self.components_avoiding(&removed)
            .into_iter()
            .filter(|c| c.iter().all(|&v| !has_loop[v]))
            .collect()
    }

    /// Number of components of `G - X` carrying no loop.
    pub fn loopless_components_after<S: AsRef<str>>(&self, x: &[S]) -> Result<usize> {
        let idx = x
            .iter()
            .map(|id| self.vertex_index(id.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.loopless_components_after_indices(&idx).len())
    }

    /// First `d`-subset `X` (in lexicographic index order) such that `G - X`
    /// has a loopless component, if any.
    pub(crate) fn unbalanced_witness(&self, d: usize) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        if d > n {
            return None;
        }
        let mut found = None;
        for_each_subset(n, d, &mut |x| {
            if !self.loopless_components_after_indices(x).is_empty() {
                found = Some(x.to_vec());
                true
            } else {
                false
            }
        });
        found
    }

    /// `d`-balanced: every component of `G - X` has a loop for all `|X| = d`.
    pub fn is_balanced(&self, d: usize) -> bool {
        self.unbalanced_witness(d).is_none()
    }

    /// Label-invariant form; equal forms mean isomorphic graphs.
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form(self.vertex_count(), &self.adjacency(), &self.loop_counts())
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edge_count() == other.edge_count()
            && self.loop_count() == other.loop_count()
            && self.canonical_form() == other.canonical_form()
    }

    fn loop_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.vertex_count()];
        for (_, at) in &self.loops {
            c[*at] += 1;
        }
        c
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `true`.
pub(crate) fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<usize>);

mod canonical {
    use super::CanonicalForm;

    fn refine(adj: &[Vec<usize>], mut colors: Vec<usize>) -> Vec<usize> {
        let n = colors.len();
        loop {
            let mut sigs: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<usize> = adj[v].iter().map(|&w| colors[w]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut distinct = sigs.clone();
            distinct.sort();
            distinct.dedup();
            let next: Vec<usize> = sigs
                .drain(..)
                .map(|s| distinct.binary_search(&s).unwrap())
                .collect();
            let before = {
                let mut c = colors.clone();
                c.sort_unstable();
                c.dedup();
                c.len()
            };
            colors = next;
            if distinct.len() == before {
                return colors;
            }
        }
    }

    fn encode(adj: &[Vec<usize>], loops: &[usize], colors: &[usize]) -> Vec<usize> {
        // colors are a permutation here: position = color
        let n = colors.len();
        let mut out = Vec::with_capacity(2 * n + 1);
        out.push(n);
        let mut inv = vec![0; n];
        for v in 0..n {
            inv[colors[v]] = v;
        }
        for pos in 0..n {
            out.push(loops[inv[pos]]);
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for v in 0..n {
            for &w in &adj[v] {
                if v < w {
                    let (a, b) = (colors[v], colors[w]);
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        edges.sort_unstable();
        for (a, b) in edges {
            out.push(a);
            out.push(b);
        }
        out
    }

    fn search(adj: &[Vec<usize>], loops: &[usize], colors: Vec<usize>, best: &mut Option<Vec<usize>>) {
        let colors = refine(adj, colors);
        let n = colors.len();
        let mut counts = vec![0usize; n];
        for &c in &colors {
            counts[c] += 1;
        }
        let target = (0..n).find(|&c| counts[c] > 1);
        match target {
            None => {
                let code = encode(adj, loops, &colors);
                if best.as_ref().map_or(true, |b| code < *b) {
                    *best = Some(code);
                }
            }
            Some(c) => {
                for v in 0..n {
                    if colors[v] != c {
                        continue;
                    }
                    let split: Vec<usize> = (0..n)
                        .map(|w| {
                            if w == v {
                                2 * colors[w]
                            } else {
                                2 * colors[w] + 1
                            }
                        })
                        .collect();
                    search(adj, loops, split, best);
                }
            }
        }
    }

    pub(super) fn canonical_form(n: usize, adj: &[Vec<usize>], loops: &[usize]) -> CanonicalForm {
        if n == 0 {
            return CanonicalForm(vec![0]);
        }
        let initial: Vec<usize> = (0..n).map(|v| loops[v] * (n + 1) + adj[v].len()).collect();
        let mut best = None;
        search(adj, loops, initial, &mut best);
        CanonicalForm(best.expect("at least one leaf"))
    }
}
