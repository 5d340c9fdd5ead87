//! Extensions, reductions and construction sequences rooted at `K_1^[3]`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ElementId, LoopedSimpleGraph};
use crate::matroid;

/// A new incidence at the vertex created by a 1-extension: an edge to an
/// existing vertex or a loop with the given id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attachment {
    Edge(String),
    Loop(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all_fields = "camelCase")]
pub enum Move {
    OneExtensionOnEdge {
        edge: [String; 2],
        new_vertex: String,
        attachments: Vec<Attachment>,
    },
    OneExtensionOnLoop {
        #[serde(rename = "loop")]
        loop_id: String,
        new_vertex: String,
        attachments: Vec<Attachment>,
    },
    K4Extension {
        edge: [String; 2],
        new_vertices: [String; 2],
    },
    AddEdge {
        edge: [String; 2],
    },
    AddLoop {
        id: String,
        at: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    OneExtensionOnEdge,
    OneExtensionOnLoop,
    K4Extension,
    AddEdge,
    AddLoop,
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::OneExtensionOnEdge { .. } => MoveKind::OneExtensionOnEdge,
            Move::OneExtensionOnLoop { .. } => MoveKind::OneExtensionOnLoop,
            Move::K4Extension { .. } => MoveKind::K4Extension,
            Move::AddEdge { .. } => MoveKind::AddEdge,
            Move::AddLoop { .. } => MoveKind::AddLoop,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Balanced,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructionSequence {
    pub base_vertex: String,
    pub base_loops: [String; 3],
    pub moves: Vec<Move>,
}

impl Default for ConstructionSequence {
    fn default() -> Self {
        Self {
            base_vertex: "v0".into(),
            base_loops: ["l0".into(), "l1".into(), "l2".into()],
            moves: Vec::new(),
        }
    }
}

impl ConstructionSequence {
    pub fn base(&self) -> Result<LoopedSimpleGraph> {
        let [a, b, c] = &self.base_loops;
        LoopedSimpleGraph::build(
            [self.base_vertex.as_str()],
            Vec::<(&str, &str)>::new(),
            [(a.as_str(), self.base_vertex.as_str()), (b, &self.base_vertex), (c, &self.base_vertex)],
        )
        .map_err(|e| Error::InvalidMove(format!("base graph: {e}")))
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidMove(msg.into())
}

fn known_vertex(g: &LoopedSimpleGraph, id: &str) -> Result<usize> {
    g.vertex_index(id)
        .map_err(|_| invalid(format!("unknown vertex `{id}`")))
}

fn has_loop_id(g: &LoopedSimpleGraph, id: &str) -> bool {
    g.loops().iter().any(|(l, _)| l == id)
}

fn fresh_vertex(g: &LoopedSimpleGraph, id: &str) -> Result<()> {
    if g.contains_vertex(id) {
        return Err(invalid(format!("vertex `{id}` already exists")));
    }
    Ok(())
}

fn fresh_loops(g: &LoopedSimpleGraph, ids: &[&String]) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if has_loop_id(g, id) || !seen.insert(*id) {
            return Err(invalid(format!("loop id `{id}` is not fresh")));
        }
    }
    Ok(())
}

/// Deletes element `del`, adds vertex `v` with the listed neighbours and loops.
fn extend(
    g: &LoopedSimpleGraph,
    del: usize,
    v: &str,
    neighbours: &[usize],
    loops: &[&String],
) -> Result<LoopedSimpleGraph> {
    let h = g.without_element(del);
    let (mut vertices, mut edges, mut loop_list) = h.parts();
    let vi = vertices.len();
    vertices.push(v.to_string());
    edges.extend(neighbours.iter().map(|&x| (x, vi)));
    loop_list.extend(loops.iter().map(|l| ((*l).clone(), vi)));
    LoopedSimpleGraph::from_parts(vertices, edges, loop_list).map_err(|e| invalid(e.to_string()))
}

fn split_attachments(att: &[Attachment]) -> (Vec<&String>, Vec<&String>) {
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for a in att {
        match a {
            Attachment::Edge(x) => edges.push(x),
            Attachment::Loop(l) => loops.push(l),
        }
    }
    (edges, loops)
}

pub fn apply_move(g: &LoopedSimpleGraph, m: &Move) -> Result<LoopedSimpleGraph> {
    match m {
        Move::OneExtensionOnEdge {
            edge: [u, w],
            new_vertex,
            attachments,
        } => {
            let (ui, wi) = (known_vertex(g, u)?, known_vertex(g, w)?);
            let del = g
                .edge_index(ui, wi)
                .ok_or_else(|| invalid(format!("missing edge `{u}`-`{w}`")))?;
            fresh_vertex(g, new_vertex)?;
            if attachments.len() != 3 {
                return Err(invalid(format!("expected 3 attachments, got {}", attachments.len())));
            }
            let (targets, loops) = split_attachments(attachments);
            let mut idx = Vec::new();
            for t in &targets {
                idx.push(known_vertex(g, t)?);
            }
            let to_u = idx.iter().filter(|&&x| x == ui).count();
            let to_w = idx.iter().filter(|&&x| x == wi).count();
            if to_u != 1 || to_w != 1 {
                return Err(invalid("each end of the deleted edge needs exactly one new edge"));
            }
            if idx.len() == 3 && (idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2]) {
                return Err(invalid("attachments create a parallel edge"));
            }
            fresh_loops(g, &loops)?;
            extend(g, del, new_vertex, &idx, &loops)
        }
        Move::OneExtensionOnLoop {
            loop_id,
            new_vertex,
            attachments,
        } => {
            let pos = g
                .loops()
                .iter()
                .position(|(l, _)| l == loop_id)
                .ok_or_else(|| invalid(format!("missing loop `{loop_id}`")))?;
            let ui = g.loops()[pos].1;
            let del = g.edge_count() + pos;
            fresh_vertex(g, new_vertex)?;
            if attachments.len() != 3 {
                return Err(invalid(format!("expected 3 attachments, got {}", attachments.len())));
            }
            let (targets, loops) = split_attachments(attachments);
            let mut idx = Vec::new();
            for t in &targets {
                idx.push(known_vertex(g, t)?);
            }
            if idx.iter().filter(|&&x| x == ui).count() != 1 {
                return Err(invalid("the loop's vertex needs exactly one new edge"));
            }
            if loops.is_empty() {
                return Err(invalid("a 1-extension on a loop adds at least one new loop"));
            }
            if idx.len() == 2 && idx[0] == idx[1] {
                return Err(invalid("attachments create a parallel edge"));
            }
            fresh_loops(g, &loops)?;
            extend(g, del, new_vertex, &idx, &loops)
        }
        Move::K4Extension {
            edge: [u, v],
            new_vertices: [a, b],
        } => {
            let (ui, vi) = (known_vertex(g, u)?, known_vertex(g, v)?);
            let del = g
                .edge_index(ui, vi)
                .ok_or_else(|| invalid(format!("missing edge `{u}`-`{v}`")))?;
            fresh_vertex(g, a)?;
            fresh_vertex(g, b)?;
            if a == b {
                return Err(invalid("K4-extension needs two distinct new vertices"));
            }
            let h = g.without_element(del);
            let (mut vertices, mut edges, loops) = h.parts();
            let (ai, bi) = (vertices.len(), vertices.len() + 1);
            vertices.push(a.clone());
            vertices.push(b.clone());
            edges.extend([(ui, ai), (ui, bi), (vi, ai), (vi, bi), (ai, bi)]);
            LoopedSimpleGraph::from_parts(vertices, edges, loops).map_err(|e| invalid(e.to_string()))
        }
        Move::AddEdge { edge: [u, v] } => {
            let (ui, vi) = (known_vertex(g, u)?, known_vertex(g, v)?);
            if ui == vi {
                return Err(invalid("an edge needs two distinct ends"));
            }
            if g.has_edge(ui, vi) {
                return Err(invalid(format!("edge `{u}`-`{v}` already exists")));
            }
            g.with_edge(ui, vi).map_err(|e| invalid(e.to_string()))
        }
        Move::AddLoop { id, at } => {
            let ai = known_vertex(g, at)?;
            fresh_loops(g, &[id])?;
            g.with_loop(id, ai).map_err(|e| invalid(e.to_string()))
        }
    }
}

/// Every intermediate graph, starting with the base.
pub fn replay_prefixes(seq: &ConstructionSequence) -> Result<Vec<LoopedSimpleGraph>> {
    let mut out = vec![seq.base()?];
    for (index, m) in seq.moves.iter().enumerate() {
        let next = apply_move(out.last().unwrap(), m).map_err(|e| Error::InvalidMoveAt {
            index,
            reason: match e {
                Error::InvalidMove(r) => r,
                other => other.to_string(),
            },
        })?;
        out.push(next);
    }
    Ok(out)
}

pub fn replay(seq: &ConstructionSequence) -> Result<LoopedSimpleGraph> {
    Ok(replay_prefixes(seq)?.pop().unwrap())
}

/// The element added by a 1-reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ReductionChoice {
    AddEdge(String, String),
    AddLoop(String),
}

fn node_index(g: &LoopedSimpleGraph, v: &str) -> Result<usize> {
    let vi = g.vertex_index(v)?;
    if g.d_dagger(vi) != 3 {
        return Err(Error::NotANode(v.into()));
    }
    Ok(vi)
}

/// Choices inverting a legal 1-extension at node `v`, in id order.
pub fn reduction_choices(g: &LoopedSimpleGraph, v: &str) -> Result<Vec<ReductionChoice>> {
    let vi = node_index(g, v)?;
    let nb = g.neighbors(vi);
    let id = |x: usize| g.vertex_id(x).to_string();
    let mut out = Vec::new();
    match nb.len() {
        3 => {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                if !g.has_edge(nb[i], nb[j]) {
                    out.push(ReductionChoice::AddEdge(id(nb[i]), id(nb[j])));
                }
            }
        }
        2 => {
            if !g.has_edge(nb[0], nb[1]) {
                out.push(ReductionChoice::AddEdge(id(nb[0]), id(nb[1])));
            }
            out.push(ReductionChoice::AddLoop(id(nb[0])));
            out.push(ReductionChoice::AddLoop(id(nb[1])));
        }
        1 => out.push(ReductionChoice::AddLoop(id(nb[0]))),
        _ => {}
    }
    Ok(out)
}

/// 1-reduction at `v`; an added loop gets the id `loop_id`.
pub fn one_reduction_with_id(
    g: &LoopedSimpleGraph,
    v: &str,
    choice: &ReductionChoice,
    loop_id: &str,
) -> Result<LoopedSimpleGraph> {
    if !reduction_choices(g, v)?.contains(choice) {
        return Err(Error::IllegalChoice(format!("{choice:?} at `{v}`")));
    }
    let h = g.remove_vertices(&[v])?;
    match choice {
        ReductionChoice::AddEdge(a, b) => h.with_edge(h.vertex_index(a)?, h.vertex_index(b)?),
        ReductionChoice::AddLoop(a) => {
            if has_loop_id(&h, loop_id) {
                return Err(Error::DuplicateLoop(loop_id.into()));
            }
            h.with_loop(loop_id, h.vertex_index(a)?)
        }
    }
}

/// 1-reduction at `v`; an added loop gets a fresh id.
pub fn one_reduction(g: &LoopedSimpleGraph, v: &str, choice: &ReductionChoice) -> Result<LoopedSimpleGraph> {
    one_reduction_with_id(g, v, choice, &g.fresh_loop_id("r"))
}

/// The 1-extension that undoes a reduction at `v`.
fn extension_for(g: &LoopedSimpleGraph, v: &str, choice: &ReductionChoice, loop_id: &str) -> Move {
    let vi = g.vertex_index(v).unwrap();
    let nb: Vec<String> = g.neighbors(vi).into_iter().map(|x| g.vertex_id(x).to_string()).collect();
    let own: Vec<String> = g.loop_ids_at(vi).into_iter().map(String::from).collect();
    match choice {
        ReductionChoice::AddEdge(a, b) => {
            let third = match nb.iter().find(|x| *x != a && *x != b) {
                Some(x) => Attachment::Edge(x.clone()),
                None => Attachment::Loop(own[0].clone()),
            };
            Move::OneExtensionOnEdge {
                edge: [a.clone(), b.clone()],
                new_vertex: v.into(),
                attachments: vec![Attachment::Edge(a.clone()), Attachment::Edge(b.clone()), third],
            }
        }
        ReductionChoice::AddLoop(a) => {
            let third = match nb.iter().find(|x| *x != a) {
                Some(x) => Attachment::Edge(x.clone()),
                None => Attachment::Loop(own[1].clone()),
            };
            Move::OneExtensionOnLoop {
                loop_id: loop_id.into(),
                new_vertex: v.into(),
                attachments: vec![Attachment::Edge(a.clone()), Attachment::Loop(own[0].clone()), third],
            }
        }
    }
}

/// What an admissibility or feasibility test is about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Target {
    Vertex(String),
    Element(ElementId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionVerdict {
    pub holds: bool,
    /// First reduction choice that works, for node targets.
    pub witness: Option<ReductionChoice>,
}

fn no_isolated_connected(h: &LoopedSimpleGraph) -> bool {
    !h.has_isolated_vertex() && matroid::connected_nonempty(h)
}

fn balanced_connected(h: &LoopedSimpleGraph) -> bool {
    !h.has_isolated_vertex() && h.is_balanced(2) && matroid::connected_nonempty(h)
}

fn rigid_connected(h: &LoopedSimpleGraph) -> bool {
    matroid::is_rigid(h) && matroid::connected_nonempty(h)
}

fn test_target(
    g: &LoopedSimpleGraph,
    target: &Target,
    accept: &dyn Fn(&LoopedSimpleGraph) -> bool,
) -> Result<ReductionVerdict> {
    match target {
        Target::Element(e) => {
            let i = g.element_index(e)?;
            Ok(ReductionVerdict {
                holds: accept(&g.without_element(i)),
                witness: None,
            })
        }
        Target::Vertex(v) => {
            let loop_id = g.fresh_loop_id("r");
            for c in reduction_choices(g, v)? {
                if accept(&one_reduction_with_id(g, v, &c, &loop_id)?) {
                    return Ok(ReductionVerdict {
                        holds: true,
                        witness: Some(c),
                    });
                }
            }
            Ok(ReductionVerdict {
                holds: false,
                witness: None,
            })
        }
    }
}

/// Element `f`: `G - f` is `M_lc`-connected. Node: some 1-reduction is.
pub fn is_admissible(g: &LoopedSimpleGraph, target: &Target) -> Result<ReductionVerdict> {
    if !matroid::connected_nonempty(g) {
        return Err(Error::NotMlcConnected);
    }
    test_target(g, target, &no_isolated_connected)
}

/// Admissible, with the reduced graph also balanced.
pub fn is_feasible(g: &LoopedSimpleGraph, target: &Target) -> Result<ReductionVerdict> {
    if !g.is_balanced(2) || !matroid::connected_nonempty(g) {
        return Err(Error::PreconditionFailed(
            "graph must be balanced and M_lc-connected".into(),
        ));
    }
    test_target(g, target, &balanced_connected)
}

/// One inverse step of a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Reduction {
    Delete(ElementId),
    Node { vertex: String, choice: ReductionChoice },
    K4 { hinge: [String; 2], removed: [String; 2] },
}

pub fn is_k13(g: &LoopedSimpleGraph) -> bool {
    g.vertex_count() == 1 && g.edge_count() == 0 && g.loop_count() == 3
}

fn scan_deletions(g: &LoopedSimpleGraph, accept: &dyn Fn(&LoopedSimpleGraph) -> bool) -> Option<Reduction> {
    (0..g.element_count())
        .find(|&e| accept(&g.without_element(e)))
        .map(|e| Reduction::Delete(g.element_id(e)))
}

fn scan_nodes(
    g: &LoopedSimpleGraph,
    loop_id: &str,
    accept: &dyn Fn(&LoopedSimpleGraph) -> bool,
) -> Option<Reduction> {
    for v in g.nodes() {
        let vid = g.vertex_id(v);
        for c in reduction_choices(g, vid).ok()? {
            let h = one_reduction_with_id(g, vid, &c, loop_id).ok()?;
            if accept(&h) {
                return Some(Reduction::Node {
                    vertex: vid.to_string(),
                    choice: c,
                });
            }
        }
    }
    None
}

/// Loopless sides `{a, b}` of a non-adjacent pair `{u, v}` spanning a K4
/// minus `uv`.
fn k4_sides(g: &LoopedSimpleGraph) -> Vec<(usize, usize, usize, usize)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            for c in g.loopless_components_after_indices(&[u, v]) {
                if let [a, b] = c[..] {
                    let full = [(a, b), (a, u), (a, v), (b, u), (b, v)]
                        .iter()
                        .all(|&(x, y)| g.has_edge(x, y));
                    if full {
                        out.push((u, v, a, b));
                    }
                }
            }
        }
    }
    out
}

fn k4_reduce(g: &LoopedSimpleGraph, u: usize, v: usize, a: usize, b: usize) -> LoopedSimpleGraph {
    let h = g
        .remove_vertices(&[g.vertex_id(a), g.vertex_id(b)])
        .expect("vertices exist");
    let (x, y) = (
        h.vertex_index(g.vertex_id(u)).unwrap(),
        h.vertex_index(g.vertex_id(v)).unwrap(),
    );
    h.with_edge(x, y).expect("hinge was not an edge")
}

fn scan_k4(g: &LoopedSimpleGraph, accept: &dyn Fn(&LoopedSimpleGraph) -> bool) -> Option<Reduction> {
    k4_sides(g).into_iter().find_map(|(u, v, a, b)| {
        accept(&k4_reduce(g, u, v, a, b)).then(|| {
            let id = |x: usize| g.vertex_id(x).to_string();
            Reduction::K4 {
                hinge: [id(u), id(v)],
                removed: [id(a), id(b)],
            }
        })
    })
}

fn find_reduction(g: &LoopedSimpleGraph, mode: Mode, loop_id: &str) -> Option<Reduction> {
    match mode {
        Mode::Balanced => {
            scan_deletions(g, &balanced_connected).or_else(|| scan_nodes(g, loop_id, &balanced_connected))
        }
        Mode::General => scan_deletions(g, &rigid_connected)
            .or_else(|| scan_k4(g, &rigid_connected))
            .or_else(|| scan_nodes(g, loop_id, &rigid_connected)),
    }
}

/// A feasible element deletion or node reduction: elements first (edges,
/// then loops), then nodes, each in id order.
pub fn find_feasible_move(g: &LoopedSimpleGraph) -> Result<Reduction> {
    if is_k13(g) {
        return Err(Error::PreconditionFailed("graph is K_1^[3]".into()));
    }
    if !balanced_connected(g) {
        return Err(Error::PreconditionFailed(
            "graph must be balanced and M_lc-connected".into(),
        ));
    }
    find_reduction(g, Mode::Balanced, &g.fresh_loop_id("r"))
        .ok_or_else(|| Error::ExhaustionBug("no feasible edge, loop or node".into()))
}

/// Applies a reduction; an added loop gets the id `loop_id`.
pub fn apply_reduction(g: &LoopedSimpleGraph, r: &Reduction, loop_id: &str) -> Result<LoopedSimpleGraph> {
    match r {
        Reduction::Delete(e) => Ok(g.without_element(g.element_index(e)?)),
        Reduction::Node { vertex, choice } => one_reduction_with_id(g, vertex, choice, loop_id),
        Reduction::K4 { hinge, removed } => {
            let ix = |s: &str| g.vertex_index(s);
            let (u, v, a, b) = (ix(&hinge[0])?, ix(&hinge[1])?, ix(&removed[0])?, ix(&removed[1])?);
            let same = |x: usize, y: usize, p: usize, q: usize| (x, y) == (p, q) || (x, y) == (q, p);
            let found = k4_sides(g)
                .iter()
                .any(|&(x, y, p, q)| same(x, y, u, v) && same(p, q, a, b));
            if !found {
                return Err(Error::IllegalChoice("not a K4 side".into()));
            }
            Ok(k4_reduce(g, u, v, a, b))
        }
    }
}

fn forward_move(g: &LoopedSimpleGraph, r: &Reduction, loop_id: &str) -> Move {
    match r {
        Reduction::Delete(ElementId::Edge(a, b)) => Move::AddEdge {
            edge: [a.clone(), b.clone()],
        },
        Reduction::Delete(ElementId::Loop(id)) => {
            let at = g.loops().iter().find(|(l, _)| l == id).unwrap().1;
            Move::AddLoop {
                id: id.clone(),
                at: g.vertex_id(at).into(),
            }
        }
        Reduction::Node { vertex, choice } => extension_for(g, vertex, choice, loop_id),
        Reduction::K4 { hinge, removed } => Move::K4Extension {
            edge: hinge.clone(),
            new_vertices: removed.clone(),
        },
    }
}

/// A construction sequence from `K_1^[3]` whose replay gives `g` with the
/// same ids. Balanced mode uses 1-extensions and additions only.
pub fn deconstruct(g: &LoopedSimpleGraph, mode: Mode) -> Result<ConstructionSequence> {
    let ok = match mode {
        Mode::Balanced => balanced_connected(g) && g.loop_count() > 0,
        Mode::General => rigid_connected(g),
    };
    if !ok {
        return Err(Error::PreconditionFailed(match mode {
            Mode::Balanced => "graph must be balanced, connected and redundantly rigid".into(),
            Mode::General => "graph must be rigid and M_lc-connected".into(),
        }));
    }
    let mut used: HashSet<String> = g.loops().iter().map(|(l, _)| l.clone()).collect();
    let mut counter = 0usize;
    let mut cur = g.clone();
    let mut moves = Vec::new();
    while !is_k13(&cur) {
        let loop_id = loop {
            let id = format!("r{counter}");
            counter += 1;
            if !used.contains(&id) {
                break id;
            }
        };
        let red = find_reduction(&cur, mode, &loop_id)
            .ok_or_else(|| Error::ExhaustionBug(format!("no reduction at {} elements", cur.element_count())))?;
        moves.push(forward_move(&cur, &red, &loop_id));
        cur = apply_reduction(&cur, &red, &loop_id)?;
        used.insert(loop_id);
    }
    moves.reverse();
    let loops: Vec<String> = cur.loops().iter().map(|(l, _)| l.clone()).collect();
    Ok(ConstructionSequence {
        base_vertex: cur.vertex_id(0).into(),
        base_loops: [loops[0].clone(), loops[1].clone(), loops[2].clone()],
        moves,
    })
}

fn candidates(
    g: &LoopedSimpleGraph,
    kind: MoveKind,
    [v_new, v_second]: [&str; 2],
    [l1, l2]: [&str; 2],
) -> Vec<Move> {
    let n = g.vertex_count();
    let id = |x: usize| g.vertex_id(x).to_string();
    let mut out = Vec::new();
    match kind {
        MoveKind::AddEdge => {
            for a in 0..n {
                for b in a + 1..n {
                    if !g.has_edge(a, b) {
                        out.push(Move::AddEdge { edge: [id(a), id(b)] });
                    }
                }
            }
        }
        MoveKind::AddLoop => {
            for a in 0..n {
                out.push(Move::AddLoop {
                    id: l1.into(),
                    at: id(a),
                });
            }
        }
        MoveKind::OneExtensionOnEdge => {
            for &(a, b) in g.edges() {
                let mut thirds: Vec<Attachment> = (0..n)
                    .filter(|&x| x != a && x != b)
                    .map(|x| Attachment::Edge(id(x)))
                    .collect();
                thirds.push(Attachment::Loop(l1.into()));
                for t in thirds {
                    out.push(Move::OneExtensionOnEdge {
                        edge: [id(a), id(b)],
                        new_vertex: v_new.into(),
                        attachments: vec![Attachment::Edge(id(a)), Attachment::Edge(id(b)), t],
                    });
                }
            }
        }
        MoveKind::OneExtensionOnLoop => {
            for (l, at) in g.loops() {
                let mut thirds: Vec<Attachment> = (0..n)
                    .filter(|&x| x != *at)
                    .map(|x| Attachment::Edge(id(x)))
                    .collect();
                thirds.push(Attachment::Loop(l2.into()));
                for t in thirds {
                    out.push(Move::OneExtensionOnLoop {
                        loop_id: l.clone(),
                        new_vertex: v_new.into(),
                        attachments: vec![Attachment::Edge(id(*at)), Attachment::Loop(l1.into()), t],
                    });
                }
            }
        }
        MoveKind::K4Extension => {
            for &(a, b) in g.edges() {
                out.push(Move::K4Extension {
                    edge: [id(a), id(b)],
                    new_vertices: [v_new.into(), v_second.into()],
                });
            }
        }
    }
    out
}

/// Random sequence of `n_moves` moves of the given kinds from the default
/// base. Each step picks a kind uniformly among those with a legal move,
/// then a legal move of that kind uniformly.
pub fn random_sequence(n_moves: usize, kinds: &[MoveKind], seed: u64) -> ConstructionSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seq = ConstructionSequence::default();
    let mut g = seq.base().expect("default base is valid");
    let (mut next_v, mut next_l) = (1usize, 3usize);
    for _ in 0..n_moves {
        let (v1, v2) = (format!("v{next_v}"), format!("v{}", next_v + 1));
        let (l1, l2) = (format!("l{next_l}"), format!("l{}", next_l + 1));
        let mut pools: Vec<Vec<Move>> = kinds
            .iter()
            .map(|&k| candidates(&g, k, [&v1, &v2], [&l1, &l2]))
            .filter(|c| !c.is_empty())
            .collect();
        if pools.is_empty() {
            break;
        }
        let pool = pools.swap_remove(rng.gen_range(0..pools.len()));
        let m = pool[rng.gen_range(0..pool.len())].clone();
        g = apply_move(&g, &m).expect("candidate moves are legal");
        next_v += match m.kind() {
            MoveKind::K4Extension => 2,
            MoveKind::OneExtensionOnEdge | MoveKind::OneExtensionOnLoop => 1,
            _ => 0,
        };
        next_l = (next_l..).find(|k| !has_loop_id(&g, &format!("l{k}"))).unwrap();
        seq.moves.push(m);
    }
    seq
}

/// Random construction; Balanced mode never uses K4-extensions.
pub fn random_construct(n_moves: usize, mode: Mode, seed: u64) -> ConstructionSequence {
    let kinds: &[MoveKind] = match mode {
        Mode::Balanced => &[
            MoveKind::OneExtensionOnEdge,
            MoveKind::OneExtensionOnLoop,
            MoveKind::AddEdge,
            MoveKind::AddLoop,
        ],
        Mode::General => &[
            MoveKind::OneExtensionOnEdge,
            MoveKind::OneExtensionOnLoop,
            MoveKind::K4Extension,
            MoveKind::AddEdge,
            MoveKind::AddLoop,
        ],
    };
    random_sequence(n_moves, kinds, seed)
}
