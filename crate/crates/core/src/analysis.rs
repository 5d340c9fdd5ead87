//! Redundant and global rigidity, unbalanced 2-separations, 2-sums and
//! realization counts.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ElementId, LoopedSimpleGraph};
use crate::matroid;

pub fn is_redundantly_rigid(g: &LoopedSimpleGraph) -> bool {
    redundancy_witness(g) == Ok(())
}

/// `Err(None)` if `g` is not rigid, `Err(Some(e))` if `g - e` is not rigid.
fn redundancy_witness(g: &LoopedSimpleGraph) -> std::result::Result<(), Option<usize>> {
    if !matroid::is_rigid(g) {
        return Err(None);
    }
    match (0..g.element_count()).find(|&e| !matroid::is_rigid(&g.without_element(e))) {
        Some(e) => Err(Some(e)),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentStatus {
    SingleVertexWithTwoLoops,
    RedundantlyRigid,
    NotRigid,
    NotRedundantlyRigid,
}

impl ComponentStatus {
    pub fn passes(self) -> bool {
        matches!(
            self,
            ComponentStatus::SingleVertexWithTwoLoops | ComponentStatus::RedundantlyRigid
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentVerdict {
    pub vertices: Vec<String>,
    pub status: ComponentStatus,
    /// An element whose deletion destroys rigidity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_element: Option<ElementId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GlobalRigidityVerdict {
    pub globally_rigid: bool,
    pub balanced: bool,
    /// A pair whose removal leaves a loopless component.
    pub witness: Option<[String; 2]>,
    pub components: Vec<ComponentVerdict>,
}

fn component_verdict(g: &LoopedSimpleGraph, comp: &[usize]) -> ComponentVerdict {
    let h = g.induced(comp);
    let vertices = h.vertices().to_vec();
    let (status, failing_element) = if h.vertex_count() == 1 && h.loop_count() == 2 {
        (ComponentStatus::SingleVertexWithTwoLoops, None)
    } else {
        match redundancy_witness(&h) {
            Ok(()) => (ComponentStatus::RedundantlyRigid, None),
            Err(None) => (ComponentStatus::NotRigid, None),
            Err(Some(e)) => (ComponentStatus::NotRedundantlyRigid, Some(h.element_id(e))),
        }
    };
    ComponentVerdict {
        vertices,
        status,
        failing_element,
    }
}

/// Global rigidity in the plane: balanced, and every component is a single
/// vertex with two loops or redundantly rigid.
pub fn decide_global_rigidity(g: &LoopedSimpleGraph) -> GlobalRigidityVerdict {
    let witness = g
        .unbalanced_witness(2)
        .map(|x| [g.vertex_id(x[0]).to_string(), g.vertex_id(x[1]).to_string()]);
    let components: Vec<ComponentVerdict> = g
        .component_indices()
        .iter()
        .map(|c| component_verdict(g, c))
        .collect();
    let balanced = witness.is_none();
    GlobalRigidityVerdict {
        globally_rigid: balanced && components.iter().all(|c| c.status.passes()),
        balanced,
        witness,
        components,
    }
}

fn unbalanced_pair_indices(g: &LoopedSimpleGraph) -> Vec<(usize, usize, usize)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let k = g.loopless_components_after_indices(&[u, v]).len();
            if k > 0 {
                out.push((u, v, k));
            }
        }
    }
    out
}

fn pair_ids(g: &LoopedSimpleGraph, u: usize, v: usize) -> (String, String) {
    (g.vertex_id(u).to_string(), g.vertex_id(v).to_string())
}

/// Pairs `{u, v}` such that `G - {u, v}` has a component without loops.
pub fn unbalanced_two_separators(g: &LoopedSimpleGraph) -> Vec<(String, String)> {
    unbalanced_pair_indices(g)
        .into_iter()
        .map(|(u, v, _)| pair_ids(g, u, v))
        .collect()
}

/// `b(G)`: loopless components of `G - {u, v}` summed over all pairs.
pub fn b_count(g: &LoopedSimpleGraph) -> usize {
    unbalanced_pair_indices(g).iter().map(|p| p.2).sum()
}

fn require_rigid_connected(g: &LoopedSimpleGraph) -> Result<()> {
    if !matroid::is_rigid(g) {
        return Err(Error::PreconditionFailed("graph is not rigid".into()));
    }
    if !matroid::connected_nonempty(g) {
        return Err(Error::PreconditionFailed("graph is not M_lc-connected".into()));
    }
    Ok(())
}

/// `2^b(G)` equivalent generic realizations, for rigid `M_lc`-connected `G`.
pub fn count_equivalent_realizations(g: &LoopedSimpleGraph) -> Result<BigUint> {
    require_rigid_connected(g)?;
    Ok(BigUint::from(1u8) << b_count(g))
}

/// Separator pairs, which are globally linked in every generic realization.
/// Other globally linked pairs (adjacent ones, for instance) are not listed.
pub fn globally_linked_pairs(g: &LoopedSimpleGraph) -> Result<Vec<(String, String)>> {
    require_rigid_connected(g)?;
    Ok(unbalanced_two_separators(g))
}

/// `G*`: a loopless graph with two loops added at each end of `uv`.
pub fn bar_joint_gadget(g: &LoopedSimpleGraph, u: &str, v: &str) -> Result<LoopedSimpleGraph> {
    if g.loop_count() > 0 {
        return Err(Error::PreconditionFailed("input graph must be loopless".into()));
    }
    let (ui, vi) = (g.vertex_index(u)?, g.vertex_index(v)?);
    if !g.has_edge(ui, vi) {
        return Err(Error::MissingEdge(u.into(), v.into()));
    }
    let mut out = g.clone();
    for at in [ui, ui, vi, vi] {
        let id = out.fresh_loop_id("g");
        out = out.with_loop(&id, at)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoSumSplit {
    /// All loops, everything outside the loopless side, plus `uv`.
    pub part1: LoopedSimpleGraph,
    /// The loopless side with `u`, `v` and the edge `uv`, no loops.
    pub part2: LoopedSimpleGraph,
    pub hinge: (String, String),
}

/// The split along `{u, v}` cutting off the vertex set `side`.
pub(crate) fn split_at(g: &LoopedSimpleGraph, u: usize, v: usize, side: &[usize]) -> TwoSumSplit {
    let mut in_side = vec![false; g.vertex_count()];
    for &x in side {
        in_side[x] = true;
    }
    let rest: Vec<usize> = (0..g.vertex_count()).filter(|&x| !in_side[x]).collect();
    let mut p1 = g.induced(&rest);
    let (a, b) = (
        p1.vertex_index(g.vertex_id(u)).unwrap(),
        p1.vertex_index(g.vertex_id(v)).unwrap(),
    );
    p1 = p1.with_edge(a, b).expect("hinge is not an edge");
    let mut keep = side.to_vec();
    keep.push(u);
    keep.push(v);
    let mut p2 = g.induced(&keep);
    let loopless: Vec<usize> = (0..p2.edge_count()).collect();
    p2 = p2.restrict_elements(&loopless);
    let (a, b) = (
        p2.vertex_index(g.vertex_id(u)).unwrap(),
        p2.vertex_index(g.vertex_id(v)).unwrap(),
    );
    p2 = p2.with_edge(a, b).expect("hinge is not an edge");
    TwoSumSplit {
        part1: p1,
        part2: p2,
        hinge: pair_ids(g, u, v),
    }
}

/// Splits along every minimal unbalanced 2-separation `{u, v}` with
/// `uv ∉ E`; a loopless side is minimal when it contains no other one.
/// Splits are ordered by the size of the loopless side.
pub fn two_sum_decompose(g: &LoopedSimpleGraph) -> Result<Vec<TwoSumSplit>> {
    if !matroid::connected_nonempty(g) {
        return Err(Error::NotMlcConnected);
    }
    if g.loop_count() == 0 {
        return Err(Error::PreconditionFailed("graph has no loop".into()));
    }
    let n = g.vertex_count();
    let mut sides: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            for c in g.loopless_components_after_indices(&[u, v]) {
                sides.push((u, v, c));
            }
        }
    }
    if sides.is_empty() {
        return Err(Error::NoUnbalancedSeparation);
    }
    let minimal: Vec<&(usize, usize, Vec<usize>)> = sides
        .iter()
        .filter(|(_, _, c)| {
            !sides
                .iter()
                .any(|(_, _, o)| o.len() < c.len() && o.iter().all(|x| c.contains(x)))
        })
        .collect();
    let mut out: Vec<(usize, TwoSumSplit)> = minimal
        .into_iter()
        .map(|(u, v, c)| (c.len(), split_at(g, *u, *v, c)))
        .collect();
    out.sort_by_key(|(k, _)| *k);
    Ok(out.into_iter().map(|(_, s)| s).collect())
}

/// 2-sum of `g1` and `g2` along the edge `uv` present in both: glue on
/// `u`, `v` and delete the shared edge. All other ids must be disjoint.
pub fn two_sum(
    g1: &LoopedSimpleGraph,
    g2: &LoopedSimpleGraph,
    u: &str,
    v: &str,
) -> Result<LoopedSimpleGraph> {
    for g in [g1, g2] {
        let (a, b) = (g.vertex_index(u)?, g.vertex_index(v)?);
        if !g.has_edge(a, b) {
            return Err(Error::MissingEdge(u.into(), v.into()));
        }
    }
    let mut vertices = g1.vertices().to_vec();
    for w in g2.vertices() {
        if w != u && w != v {
            if g1.contains_vertex(w) {
                return Err(Error::DuplicateVertex(w.clone()));
            }
            vertices.push(w.clone());
        }
    }
    let pos = |id: &str| vertices.iter().position(|x| x == id).unwrap();
    let hinge = {
        let (a, b) = (pos(u), pos(v));
        (a.min(b), a.max(b))
    };
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for g in [g1, g2] {
        for &(a, b) in g.edges() {
            let (x, y) = (pos(g.vertex_id(a)), pos(g.vertex_id(b)));
            if (x.min(y), x.max(y)) != hinge {
                edges.push((x, y));
            }
        }
        for (id, at) in g.loops() {
            loops.push((id.clone(), pos(g.vertex_id(*at))));
        }
    }
    LoopedSimpleGraph::from_parts(vertices, edges, loops)
}
