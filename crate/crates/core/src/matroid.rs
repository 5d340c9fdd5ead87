//! The linearly constrained rigidity matroid `M_lc(G)` in the plane.
//!
//! A set `F ⊆ E ∪ L` is independent when `|F'| ≤ 2|V(F')|` for every
//! `F' ⊆ F` and `|F'| ≤ 2|V(F')| - 3` for every nonempty edge-only
//! `F' ⊆ F`. The oracle runs two pebble games side by side: a (2,3) game on
//! the edges and a (2,0) game on edges and loops. An element is accepted
//! only when both games accept it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Element, ElementId, LoopedSimpleGraph};

#[derive(Clone, Debug)]
struct PebbleGame {
    l: usize,
    pebbles: Vec<usize>,
    tail: Vec<Option<usize>>,
    out: Vec<Vec<usize>>,
}

impl PebbleGame {
    fn new(n: usize, m: usize, l: usize) -> Self {
        Self {
            l,
            pebbles: vec![2; n],
            tail: vec![None; m],
            out: vec![Vec::new(); n],
        }
    }

    fn head(ends: (usize, usize), tail: usize) -> usize {
        if ends.0 == tail {
            ends.1
        } else {
            ends.0
        }
    }

    /// Moves one free pebble to `start` along a reversed directed path,
    /// never taking it from a vertex in `blocked`.
    fn fetch(&mut self, start: usize, blocked: &[usize], ends: &dyn Fn(usize) -> (usize, usize)) -> bool {
        let n = self.pebbles.len();
        let mut seen = vec![false; n];
        let mut via = vec![usize::MAX; n];
        for &b in blocked {
            seen[b] = true;
        }
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &e in &self.out[x] {
                let y = Self::head(ends(e), x);
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                via[y] = e;
                if self.pebbles[y] > 0 {
                    self.pebbles[y] -= 1;
                    self.pebbles[start] += 1;
                    let mut cur = y;
                    while cur != start {
                        let e = via[cur];
                        let prev = Self::head(ends(e), cur);
                        self.out[prev].retain(|&f| f != e);
                        self.out[cur].push(e);
                        self.tail[e] = Some(cur);
                        cur = prev;
                    }
                    return true;
                }
                stack.push(y);
            }
        }
        false
    }

    /// Collects `l + 1` free pebbles on `verts`, reorienting as needed.
    fn gather(&mut self, verts: &[usize], ends: &dyn Fn(usize) -> (usize, usize)) -> bool {
        loop {
            let have: usize = verts.iter().map(|&v| self.pebbles[v]).sum();
            if have > self.l {
                return true;
            }
            if !verts.iter().any(|&v| self.fetch(v, verts, ends)) {
                return false;
            }
        }
    }

    fn place(&mut self, e: usize, verts: &[usize]) {
        let t = *verts
            .iter()
            .find(|&&v| self.pebbles[v] > 0)
            .expect("gather left a free pebble");
        self.pebbles[t] -= 1;
        self.tail[e] = Some(t);
        self.out[t].push(e);
    }

    fn remove(&mut self, e: usize) {
        if let Some(t) = self.tail[e].take() {
            self.out[t].retain(|&f| f != e);
            self.pebbles[t] += 1;
        }
    }
}

/// Incremental independence oracle bound to one graph.
#[derive(Clone, Debug)]
pub struct MatroidOracle<'g> {
    graph: &'g LoopedSimpleGraph,
    edge_game: PebbleGame,
    total_game: PebbleGame,
    accepted: Vec<bool>,
    size: usize,
}

impl<'g> MatroidOracle<'g> {
    pub fn new(graph: &'g LoopedSimpleGraph) -> Self {
        let (n, m) = (graph.vertex_count(), graph.element_count());
        Self {
            graph,
            edge_game: PebbleGame::new(n, m, 3),
            total_game: PebbleGame::new(n, m, 0),
            accepted: vec![false; m],
            size: 0,
        }
    }

    /// Accepts `e` if the accepted set stays independent.
    pub fn insert(&mut self, e: usize) -> bool {
        if self.accepted[e] {
            return false;
        }
        let graph = self.graph;
        let ends = move |x: usize| match graph.element(x) {
            Element::Edge(a, b) => (a, b),
            Element::Loop(a) => (a, a),
        };
        let ok = match graph.element(e) {
            Element::Edge(a, b) => {
                let vs = [a, b];
                if self.edge_game.gather(&vs, &ends) && self.total_game.gather(&vs, &ends) {
                    self.edge_game.place(e, &vs);
                    self.total_game.place(e, &vs);
                    true
                } else {
                    false
                }
            }
            Element::Loop(a) => {
                let vs = [a];
                if self.total_game.gather(&vs, &ends) {
                    self.total_game.place(e, &vs);
                    true
                } else {
                    false
                }
            }
        };
        if ok {
            self.accepted[e] = true;
            self.size += 1;
        }
        ok
    }

    pub fn remove(&mut self, e: usize) {
        if self.accepted[e] {
            self.edge_game.remove(e);
            self.total_game.remove(e);
            self.accepted[e] = false;
            self.size -= 1;
        }
    }

    pub fn accepts(&self, e: usize) -> bool {
        self.accepted[e]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Would `e` be accepted, without changing the accepted set.
    pub fn would_accept(&self, e: usize) -> bool {
        let mut probe = self.clone();
        probe.insert(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CircuitKind {
    Rigid,
    Flexible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitReport {
    pub elements: Vec<ElementId>,
    pub kind: CircuitKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarDecomposition {
    /// Element indices of `C_1, ..., C_m`.
    pub circuits: Vec<Vec<usize>>,
    /// `C_i` minus all earlier circuits.
    pub tildes: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatroidVerdict {
    pub rank: usize,
    pub rigid: bool,
    pub independent: bool,
    pub components: Vec<Vec<ElementId>>,
}

pub fn all_elements(g: &LoopedSimpleGraph) -> Vec<usize> {
    (0..g.element_count()).collect()
}

/// Maps external element ids to indices.
pub fn element_indices(g: &LoopedSimpleGraph, ids: &[ElementId]) -> Result<Vec<usize>> {
    ids.iter().map(|id| g.element_index(id)).collect()
}

pub fn is_independent(g: &LoopedSimpleGraph, f: &[usize]) -> bool {
    let mut f = f.to_vec();
    f.sort_unstable();
    f.dedup();
    let mut oracle = MatroidOracle::new(g);
    f.iter().all(|&e| oracle.insert(e))
}

/// Greedy maximal independent subset of `f`, scanned in the given order.
pub fn greedy_base(g: &LoopedSimpleGraph, f: &[usize]) -> Vec<usize> {
    let mut oracle = MatroidOracle::new(g);
    f.iter().copied().filter(|&e| oracle.insert(e)).collect()
}

pub fn rank(g: &LoopedSimpleGraph, f: &[usize]) -> usize {
    let mut oracle = MatroidOracle::new(g);
    f.iter().filter(|&&e| oracle.insert(e)).count()
}

pub fn full_rank(g: &LoopedSimpleGraph) -> usize {
    rank(g, &all_elements(g))
}

/// `rank(E ∪ L) = 2|V|`; the empty graph counts as rigid.
pub fn is_rigid(g: &LoopedSimpleGraph) -> bool {
    full_rank(g) == 2 * g.vertex_count()
}

fn circuit_in(oracle: &MatroidOracle<'_>, base: &[usize], e: usize) -> Vec<usize> {
    let mut out: Vec<usize> = base
        .iter()
        .copied()
        .filter(|&f| {
            let mut probe = oracle.clone();
            probe.remove(f);
            probe.insert(e)
        })
        .collect();
    out.push(e);
    out.sort_unstable();
    out
}

/// The unique circuit in `B + e`.
pub fn fundamental_circuit(g: &LoopedSimpleGraph, b: &[usize], e: usize) -> Result<Vec<usize>> {
    if e >= g.element_count() || b.iter().any(|&x| x >= g.element_count()) {
        return Err(Error::UnknownElement(format!("#{e}")));
    }
    let mut oracle = MatroidOracle::new(g);
    for &x in b {
        if !oracle.insert(x) {
            return Err(Error::NotIndependent);
        }
    }
    if oracle.would_accept(e) || oracle.accepts(e) {
        return Err(Error::NotDependent);
    }
    Ok(circuit_in(&oracle, b, e))
}

/// Classifies the whole graph as a rigid or flexible circuit, if it is one.
pub fn classify_circuit(g: &LoopedSimpleGraph) -> Option<CircuitReport> {
    let m = g.element_count();
    if m == 0 || g.has_isolated_vertex() {
        return None;
    }
    let all = all_elements(g);
    if is_independent(g, &all) {
        return None;
    }
    for e in 0..m {
        let rest: Vec<usize> = all.iter().copied().filter(|&x| x != e).collect();
        if !is_independent(g, &rest) {
            return None;
        }
    }
    let n = g.vertex_count();
    let kind = if m == 2 * n + 1 {
        CircuitKind::Rigid
    } else if g.loop_count() == 0 && g.edge_count() + 2 == 2 * n {
        CircuitKind::Flexible
    } else {
        return None;
    };
    Some(CircuitReport {
        elements: all.iter().map(|&e| g.element_id(e)).collect(),
        kind,
    })
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Connected components of the restriction of `M_lc(G)` to `ground`.
pub fn components_of(g: &LoopedSimpleGraph, ground: &[usize]) -> Vec<Vec<usize>> {
    let mut oracle = MatroidOracle::new(g);
    let mut base = Vec::new();
    let mut rest = Vec::new();
    for &e in ground {
        if oracle.insert(e) {
            base.push(e);
        } else {
            rest.push(e);
        }
    }
    let mut dsu = Dsu::new(g.element_count());
    for &e in &rest {
        for f in circuit_in(&oracle, &base, e) {
            dsu.union(e, f);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; g.element_count()];
    let mut sorted = ground.to_vec();
    sorted.sort_unstable();
    for e in sorted {
        let r = dsu.find(e);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(e);
    }
    classes
}

/// Equivalence classes of the common-circuit relation on `E ∪ L`.
pub fn mlc_components(g: &LoopedSimpleGraph) -> Vec<Vec<usize>> {
    components_of(g, &all_elements(g))
}

pub fn is_mlc_connected(g: &LoopedSimpleGraph) -> Result<bool> {
    if g.element_count() == 0 {
        return Err(Error::EmptyGroundSet);
    }
    Ok(mlc_components(g).len() == 1)
}

/// `is_mlc_connected` with the empty ground set treated as not connected.
pub(crate) fn connected_nonempty(g: &LoopedSimpleGraph) -> bool {
    is_mlc_connected(g).unwrap_or(false)
}

pub fn verdict(g: &LoopedSimpleGraph) -> MatroidVerdict {
    let all = all_elements(g);
    let r = rank(g, &all);
    MatroidVerdict {
        rank: r,
        rigid: r == 2 * g.vertex_count(),
        independent: r == all.len(),
        components: mlc_components(g)
            .into_iter()
            .map(|c| c.into_iter().map(|e| g.element_id(e)).collect())
            .collect(),
    }
}

fn same_component(g: &LoopedSimpleGraph, ground: &[usize], a: usize, b: usize) -> bool {
    components_of(g, ground)
        .iter()
        .any(|c| c.contains(&a) && c.contains(&b))
}

/// A circuit inside `ground` through both `a` and `b`, by deletion-greedy in
/// index order. `a` and `b` must share a component of the restriction.
fn circuit_through(g: &LoopedSimpleGraph, ground: &[usize], a: usize, b: usize) -> Vec<usize> {
    let mut s: Vec<usize> = ground.to_vec();
    s.sort_unstable();
    let candidates = s.clone();
    for x in candidates {
        if x == a || x == b {
            continue;
        }
        let trial: Vec<usize> = s.iter().copied().filter(|&y| y != x).collect();
        if same_component(g, &trial, a, b) {
            s = trial;
        }
    }
    s
}

/// Ear decomposition into rigid circuits, all passing through the first loop.
pub fn ear_decomposition(g: &LoopedSimpleGraph) -> Result<EarDecomposition> {
    if !is_mlc_connected(g)? {
        return Err(Error::NotConnectedMatroid);
    }
    if g.loop_count() == 0 {
        return Err(Error::NoLoop);
    }
    let m = g.element_count();
    let ell = g.edge_count();
    let all = all_elements(g);
    let mut circuits = Vec::new();
    let mut tildes = Vec::new();
    if m == 1 {
        return Ok(EarDecomposition { circuits, tildes });
    }
    let mut in_d = vec![false; m];

    // first ear: a circuit through the loop and the first other element
    let f = (0..m).find(|&e| e != ell).expect("m >= 2");
    let c1 = circuit_through(g, &all, ell, f);
    for &e in &c1 {
        in_d[e] = true;
    }
    tildes.push(c1.clone());
    circuits.push(c1);

    while in_d.iter().any(|&x| !x) {
        let d: Vec<usize> = (0..m).filter(|&e| in_d[e]).collect();
        let rank_d = rank(g, &d);
        let f = (0..m).find(|&e| !in_d[e]).unwrap();
        // a circuit meeting D and the complement
        let c_prime = circuit_through(g, &all, ell, f);
        // shrink its part outside D to a circuit of M / D
        let mut t: Vec<usize> = c_prime.iter().copied().filter(|&e| !in_d[e]).collect();
        let dependent_mod_d = |set: &[usize]| -> bool {
            let mut u = d.clone();
            u.extend_from_slice(set);
            rank(g, &u) - rank_d < set.len()
        };
        for x in t.clone() {
            let trial: Vec<usize> = t.iter().copied().filter(|&y| y != x).collect();
            if dependent_mod_d(&trial) {
                t = trial;
            }
        }
        let mut ground = d.clone();
        ground.extend_from_slice(&t);
        let c = circuit_through(g, &ground, ell, t[0]);
        let tilde: Vec<usize> = c.iter().copied().filter(|&e| !in_d[e]).collect();
        debug_assert_eq!(tilde, {
            let mut s = t.clone();
            s.sort_unstable();
            s
        });
        for &e in &tilde {
            in_d[e] = true;
        }
        tildes.push(tilde);
        circuits.push(c);
    }
    Ok(EarDecomposition { circuits, tildes })
}
