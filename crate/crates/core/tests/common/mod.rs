//! Brute-force oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use lcrigid::LoopedSimpleGraph;
use rand::Rng;

/// Endpoint pair of each element; loops repeat their vertex.
pub fn element_ends(g: &LoopedSimpleGraph) -> Vec<(usize, usize, bool)> {
    (0..g.element_count())
        .map(|i| match g.element(i) {
            lcrigid::Element::Edge(a, b) => (a, b, false),
            lcrigid::Element::Loop(a) => (a, a, true),
        })
        .collect()
}

/// Count conditions on one set, ignoring its subsets.
fn counts_ok(ends: &[(usize, usize, bool)], mask: u32) -> bool {
    if mask == 0 {
        return true;
    }
    let mut verts = 0u64;
    let mut size = 0;
    let mut edge_only = true;
    for (i, &(a, b, is_loop)) in ends.iter().enumerate() {
        if mask >> i & 1 == 1 {
            verts |= 1 << a | 1 << b;
            size += 1;
            edge_only &= !is_loop;
        }
    }
    let nv = verts.count_ones() as i64;
    let bound = if edge_only { 2 * nv - 3 } else { 2 * nv };
    size as i64 <= bound
}

/// Independence of every subset of `E ∪ L`, by exhaustive count checking.
pub fn independence_table(g: &LoopedSimpleGraph) -> Vec<bool> {
    let ends = element_ends(g);
    let m = ends.len();
    assert!(m <= 20);
    let mut table = vec![false; 1 << m];
    for mask in 0u32..(1 << m) {
        let mut ok = counts_ok(&ends, mask);
        let mut bits = mask;
        while ok && bits != 0 {
            let low = bits & bits.wrapping_neg();
            ok = table[(mask ^ low) as usize];
            bits ^= low;
        }
        table[mask as usize] = ok;
    }
    table
}

pub fn mask_of(items: &[usize]) -> u32 {
    items.iter().fold(0, |m, &i| m | 1 << i)
}

pub fn items_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn brute_rank(table: &[bool], mask: u32) -> usize {
    let mut best = 0;
    let mut sub = mask;
    loop {
        if table[sub as usize] {
            best = best.max(sub.count_ones() as usize);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    best
}

/// All minimal dependent sets.
pub fn brute_circuits(table: &[bool]) -> Vec<u32> {
    let mut out = Vec::new();
    for mask in 1..table.len() as u32 {
        if table[mask as usize] {
            continue;
        }
        let mut bits = mask;
        let mut minimal = true;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            if !table[(mask ^ low) as usize] {
                minimal = false;
                break;
            }
            bits ^= low;
        }
        if minimal {
            out.push(mask);
        }
    }
    out
}

/// Components as the transitive closure of "share a circuit".
pub fn brute_components(m: usize, circuits: &[u32]) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..m).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for &c in circuits {
            let items = items_of(c);
            let low = items.iter().map(|&i| label[i]).min().unwrap();
            for &i in &items {
                if label[i] != low {
                    label[i] = low;
                    changed = true;
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        match classes.iter_mut().find(|c| label[c[0]] == label[i]) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

/// Random looped simple graph with at most `max_elements` elements.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_elements: usize) -> LoopedSimpleGraph {
    let n = rng.gen_range(1..=max_vertices);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    let target = rng.gen_range(0..=max_elements);
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    while edges.len() + loops.len() < target {
        if !pairs.is_empty() && rng.gen_bool(0.6) {
            let k = rng.gen_range(0..pairs.len());
            let (a, b) = pairs.swap_remove(k);
            edges.push((vertices[a].clone(), vertices[b].clone()));
        } else {
            let v = rng.gen_range(0..n);
            loops.push((format!("l{}", loops.len()), vertices[v].clone()));
        }
    }
    LoopedSimpleGraph::build(vertices, edges, loops).unwrap()
}

pub fn graph(vertices: &[&str], edges: &[(&str, &str)], loops: &[(&str, &str)]) -> LoopedSimpleGraph {
    LoopedSimpleGraph::build(
        vertices.iter().copied(),
        edges.iter().copied(),
        loops.iter().copied(),
    )
    .unwrap()
}

pub fn fig1_h() -> LoopedSimpleGraph {
    graph(&["v1", "v2"], &[], &[("a1", "v1"), ("a2", "v1"), ("b1", "v2"), ("b2", "v2")])
}

pub fn fig1_g() -> LoopedSimpleGraph {
    graph(&["v1", "v2"], &[("v1", "v2")], &[("a1", "v1"), ("a2", "v1"), ("b1", "v2")])
}

pub fn fig2() -> LoopedSimpleGraph {
    graph(
        &["v1", "v2", "v3"],
        &[("v1", "v2"), ("v1", "v3"), ("v2", "v3")],
        &[("l1", "v1"), ("l2", "v1"), ("l3", "v2"), ("l4", "v3")],
    )
}

pub fn fig2_realization() -> lcrigid::certificates::Realization {
    lcrigid::certificates::Realization::from_integers(
        2,
        &[("v1", &[1, 0]), ("v2", &[-1, 0]), ("v3", &[0, 1])],
        &[("l1", &[1, -1]), ("l2", &[1, 0]), ("l3", &[1, 1]), ("l4", &[0, 1])],
    )
}

const K4_EDGES: [(&str, &str); 6] = [
    ("v1", "v2"),
    ("v1", "v3"),
    ("v1", "v4"),
    ("v2", "v3"),
    ("v2", "v4"),
    ("v3", "v4"),
];

pub fn k4() -> LoopedSimpleGraph {
    graph(&["v1", "v2", "v3", "v4"], &K4_EDGES, &[])
}

pub fn fig3_left() -> LoopedSimpleGraph {
    graph(
        &["v1", "v2", "v3", "v4"],
        &K4_EDGES,
        &[("l1", "v1"), ("l2", "v2"), ("l3", "v3"), ("l4", "v4")],
    )
}

pub fn fig3_right() -> LoopedSimpleGraph {
    graph(
        &["v1", "v2", "v3", "v4"],
        &[("v1", "v2"), ("v1", "v3"), ("v2", "v3"), ("v1", "v4"), ("v3", "v4")],
        &[("l1", "v1"), ("l2", "v2"), ("l3", "v3"), ("l4", "v4")],
    )
}

pub fn fig4() -> LoopedSimpleGraph {
    let loops: Vec<(String, String)> = ["v1", "v2", "v3", "v4"]
        .iter()
        .flat_map(|v| [(format!("{v}a"), v.to_string()), (format!("{v}b"), v.to_string())])
        .collect();
    LoopedSimpleGraph::build(["v1", "v2", "v3", "v4"], K4_EDGES, loops).unwrap()
}

/// Unbalanced rigid circuit: a looped part 2-summed with K4 along `uv`.
pub fn fig6() -> LoopedSimpleGraph {
    graph(
        &["v", "u", "x1", "x2", "x3", "a", "b"],
        &[
            ("v", "a"),
            ("v", "b"),
            ("a", "b"),
            ("u", "a"),
            ("u", "b"),
            ("x1", "v"),
            ("x2", "v"),
            ("x2", "u"),
            ("x3", "x1"),
            ("x3", "x2"),
        ],
        &[("lv", "v"), ("lu", "u"), ("l1", "x1"), ("l2", "x2"), ("l3", "x3")],
    )
}

/// K4 with two loops at v1 and v4 and one at v3.
pub fn fig8_final() -> LoopedSimpleGraph {
    graph(
        &["v1", "v4", "v2", "v3"],
        &K4_EDGES,
        &[("l0", "v1"), ("l1", "v1"), ("l2", "v4"), ("l3", "v4"), ("l4", "v3")],
    )
}

pub fn fig9_h() -> LoopedSimpleGraph {
    graph(
        &["v1", "v2", "v3", "v4", "x"],
        &[
            ("v1", "v2"),
            ("v1", "v3"),
            ("v2", "v3"),
            ("v1", "v4"),
            ("v2", "v4"),
            ("x", "v3"),
            ("x", "v4"),
        ],
        &[("a", "v1"), ("b1", "v2"), ("b2", "v2"), ("c", "x")],
    )
}

pub fn fig9_g() -> LoopedSimpleGraph {
    graph(
        &["v", "u", "y1", "y2", "y"],
        &[
            ("y1", "v"),
            ("y1", "u"),
            ("y2", "v"),
            ("y2", "u"),
            ("y", "y1"),
            ("y", "y2"),
        ],
        &[("v1", "v"), ("v2", "v"), ("u1", "u"), ("u2", "u"), ("yl", "y")],
    )
}

/// Rigid circuit from `K_1^[3]` by random 1-extensions (balanced).
pub fn random_rigid_circuit(steps: usize, seed: u64) -> LoopedSimpleGraph {
    use lcrigid::construct::{random_sequence, replay, MoveKind};
    let kinds = [MoveKind::OneExtensionOnEdge, MoveKind::OneExtensionOnLoop];
    replay(&random_sequence(steps, &kinds, seed)).unwrap()
}

/// Flexible circuit from `K_4` by random loopless edge 1-extensions.
pub fn random_flexible_circuit<R: Rng>(rng: &mut R, steps: usize) -> LoopedSimpleGraph {
    use lcrigid::construct::{apply_move, Attachment, Move};
    let mut g = graph(&["f1", "f2", "f3", "f4"], &FLEX_K4, &[]);
    for k in 0..steps {
        let (a, b) = g.edges()[rng.gen_range(0..g.edge_count())];
        let others: Vec<usize> = (0..g.vertex_count()).filter(|&x| x != a && x != b).collect();
        let x = others[rng.gen_range(0..others.len())];
        let id = |i: usize| g.vertex_id(i).to_string();
        let m = Move::OneExtensionOnEdge {
            edge: [id(a), id(b)],
            new_vertex: format!("f{}", k + 5),
            attachments: vec![Attachment::Edge(id(a)), Attachment::Edge(id(b)), Attachment::Edge(id(x))],
        };
        g = apply_move(&g, &m).unwrap();
    }
    g
}

const FLEX_K4: [(&str, &str); 6] = [
    ("f1", "f2"),
    ("f1", "f3"),
    ("f1", "f4"),
    ("f2", "f3"),
    ("f2", "f4"),
    ("f3", "f4"),
];

/// 2-sum of `h1` and `h2` along random edges; `h2` is relabelled so its
/// chosen edge becomes the chosen edge `uv` of `h1`. Returns `(G, u, v, h2')`.
pub fn random_two_sum<R: Rng>(
    rng: &mut R,
    h1: &LoopedSimpleGraph,
    h2: &LoopedSimpleGraph,
) -> (LoopedSimpleGraph, String, String, LoopedSimpleGraph) {
    let (u, v) = h1.edges()[rng.gen_range(0..h1.edge_count())];
    let (a, b) = h2.edges()[rng.gen_range(0..h2.edge_count())];
    let (u, v) = (h1.vertex_id(u).to_string(), h1.vertex_id(v).to_string());
    let (a, b) = (h2.vertex_id(a).to_string(), h2.vertex_id(b).to_string());
    let h2 = h2
        .relabel(
            |x| {
                if x == a {
                    u.clone()
                } else if x == b {
                    v.clone()
                } else {
                    format!("w_{x}")
                }
            },
            |l| format!("w_{l}"),
        )
        .unwrap();
    let g = lcrigid::analysis::two_sum(h1, &h2, &u, &v).unwrap();
    (g, u, v, h2)
}

/// A rigid circuit with two nested K4-extensions, so `b = 2`.
pub fn nested_b2() -> LoopedSimpleGraph {
    use lcrigid::construct::{apply_move, Move};
    let k4 = |u: &str, v: &str, a: &str, b: &str| Move::K4Extension {
        edge: [u.into(), v.into()],
        new_vertices: [a.into(), b.into()],
    };
    let g = apply_move(&fig2(), &k4("v1", "v2", "a", "b")).unwrap();
    apply_move(&g, &k4("a", "b", "c", "d")).unwrap()
}
