mod common;

use common::*;
use lcrigid::construct::*;
use lcrigid::graph::{ElementId, LoopedSimpleGraph};
use lcrigid::matroid::{self, CircuitKind};
use lcrigid::Error;
use proptest::prelude::*;

fn s(x: &str) -> String {
    x.to_string()
}

fn edge(a: &str) -> Attachment {
    Attachment::Edge(s(a))
}

fn lp(id: &str) -> Attachment {
    Attachment::Loop(s(id))
}

fn pair(a: &str, b: &str) -> [String; 2] {
    [s(a), s(b)]
}

fn base(loops: [&str; 3]) -> ConstructionSequence {
    ConstructionSequence {
        base_vertex: s("v1"),
        base_loops: loops.map(s),
        moves: vec![],
    }
}

fn fig8_sequence() -> ConstructionSequence {
    let mut seq = base(["l0", "l1", "t"]);
    seq.moves = vec![
        Move::OneExtensionOnLoop {
            loop_id: s("t"),
            new_vertex: s("v4"),
            attachments: vec![edge("v1"), lp("l2"), lp("l3")],
        },
        Move::K4Extension {
            edge: pair("v1", "v4"),
            new_vertices: pair("v2", "v3"),
        },
        Move::AddLoop { id: s("l4"), at: s("v3") },
        Move::AddEdge { edge: pair("v1", "v4") },
    ];
    seq
}

fn fig10_sequence() -> ConstructionSequence {
    let mut seq = base(["l0", "l1", "t"]);
    seq.moves = vec![
        Move::OneExtensionOnLoop {
            loop_id: s("t"),
            new_vertex: s("v4"),
            attachments: vec![edge("v1"), lp("l2"), lp("l3")],
        },
        Move::OneExtensionOnEdge {
            edge: pair("v1", "v4"),
            new_vertex: s("v3"),
            attachments: vec![edge("v1"), edge("v4"), lp("l4")],
        },
        Move::OneExtensionOnEdge {
            edge: pair("v4", "v3"),
            new_vertex: s("v2"),
            attachments: vec![edge("v4"), edge("v3"), edge("v1")],
        },
        Move::AddEdge { edge: pair("v1", "v4") },
        Move::AddEdge { edge: pair("v3", "v4") },
    ];
    seq
}

fn same_labelled(a: &LoopedSimpleGraph, b: &LoopedSimpleGraph) -> bool {
    let mut va = a.vertices().to_vec();
    let mut vb = b.vertices().to_vec();
    va.sort();
    vb.sort();
    let edges = |g: &LoopedSimpleGraph| {
        let mut e: Vec<[String; 2]> = g
            .edges()
            .iter()
            .map(|&(x, y)| {
                let (p, q) = (s(g.vertex_id(x)), s(g.vertex_id(y)));
                if p < q { [p, q] } else { [q, p] }
            })
            .collect();
        e.sort();
        e
    };
    let loops = |g: &LoopedSimpleGraph| {
        let mut l: Vec<(String, String)> = g
            .loops()
            .iter()
            .map(|(id, at)| (id.clone(), g.vertex_id(*at).to_string()))
            .collect();
        l.sort();
        l
    };
    va == vb && edges(a) == edges(b) && loops(a) == loops(b)
}

fn balanced_connected(g: &LoopedSimpleGraph) -> bool {
    g.is_balanced(2) && matroid::is_mlc_connected(g).unwrap_or(false)
}

fn rigid_connected(g: &LoopedSimpleGraph) -> bool {
    matroid::is_rigid(g) && matroid::is_mlc_connected(g).unwrap_or(false)
}

#[test]
fn fig8_steps() {
    let prefixes = replay_prefixes(&fig8_sequence()).unwrap();
    let a = &prefixes[1];
    assert_eq!((a.vertex_count(), a.edge_count(), a.loop_count()), (2, 1, 4));
    let b = &prefixes[2];
    assert_eq!((b.vertex_count(), b.edge_count(), b.loop_count()), (4, 5, 4));
    assert!(!b.is_balanced(2));
    assert!(rigid_connected(b));
    assert!(same_labelled(&prefixes[4], &fig8_final()));
    for g in &prefixes {
        assert!(rigid_connected(g));
    }
}

#[test]
fn fig10_steps_stay_balanced() {
    let prefixes = replay_prefixes(&fig10_sequence()).unwrap();
    assert_eq!(prefixes.len(), 6);
    for g in &prefixes {
        assert!(balanced_connected(g));
    }
    assert!(same_labelled(prefixes.last().unwrap(), &fig8_final()));
}

#[test]
fn balanced_deconstruction_of_fig10_target() {
    let g = fig8_final();
    let seq = deconstruct(&g, Mode::Balanced).unwrap();
    // three vertices to add and two surplus elements
    assert_eq!(seq.moves.len(), 5);
    assert!(seq.moves.iter().all(|m| m.kind() != MoveKind::K4Extension));
    for h in replay_prefixes(&seq).unwrap() {
        assert!(balanced_connected(&h));
    }
    assert!(same_labelled(&replay(&seq).unwrap(), &g));
}

#[test]
fn general_deconstruction_of_fig8_target() {
    let g = fig8_final();
    let seq = deconstruct(&g, Mode::General).unwrap();
    assert!(same_labelled(&replay(&seq).unwrap(), &g));
    for h in replay_prefixes(&seq).unwrap() {
        assert!(rigid_connected(&h));
    }
}

#[test]
fn general_deconstruction_needs_k4_on_unbalanced_intermediate() {
    let b = replay_prefixes(&fig8_sequence()).unwrap().swap_remove(2);
    let seq = deconstruct(&b, Mode::General).unwrap();
    assert!(seq.moves.iter().any(|m| m.kind() == MoveKind::K4Extension));
    assert!(same_labelled(&replay(&seq).unwrap(), &b));
    assert!(matches!(deconstruct(&b, Mode::Balanced), Err(Error::PreconditionFailed(_))));
}

#[test]
fn fig9_classifications() {
    let h = fig9_h();
    let x = Target::Vertex(s("x"));
    assert!(!is_admissible(&h, &x).unwrap().holds);

    let g = fig9_g();
    let y = is_admissible(&g, &Target::Vertex(s("y"))).unwrap();
    assert!(y.holds);
    assert_eq!(y.witness, Some(ReductionChoice::AddEdge(s("y1"), s("y2"))));
    assert!(!is_feasible(&g, &Target::Vertex(s("y"))).unwrap().holds);
    let y1 = is_feasible(&g, &Target::Vertex(s("y1"))).unwrap();
    assert!(y1.holds);
    assert_eq!(y1.witness, Some(ReductionChoice::AddEdge(s("v"), s("y"))));
}

#[test]
fn fig9_drawn_reductions() {
    let g = fig9_g();
    let a = one_reduction(&g, "y", &ReductionChoice::AddEdge(s("y1"), s("y2"))).unwrap();
    let drawn_a = graph(
        &["v", "u", "y1", "y2"],
        &[("y1", "v"), ("y1", "u"), ("y2", "v"), ("y2", "u"), ("y1", "y2")],
        &[("v1", "v"), ("v2", "v"), ("u1", "u"), ("u2", "u")],
    );
    assert!(same_labelled(&a, &drawn_a));
    assert!(!a.is_balanced(2));

    let b = one_reduction(&g, "y1", &ReductionChoice::AddEdge(s("v"), s("y"))).unwrap();
    let drawn_b = graph(
        &["v", "u", "y2", "y"],
        &[("y2", "v"), ("y2", "u"), ("y", "y2"), ("v", "y")],
        &[("v1", "v"), ("v2", "v"), ("u1", "u"), ("u2", "u"), ("yl", "y")],
    );
    assert!(same_labelled(&b, &drawn_b));
    assert!(balanced_connected(&b));
}

#[test]
fn reduction_errors() {
    let g = fig9_g();
    assert_eq!(
        one_reduction(&g, "y1", &ReductionChoice::AddLoop(s("v"))),
        Err(Error::IllegalChoice(format!("{:?} at `y1`", ReductionChoice::AddLoop(s("v")))))
    );
    assert!(matches!(
        one_reduction(&g, "y1", &ReductionChoice::AddEdge(s("y"), s("y"))),
        Err(Error::IllegalChoice(_))
    ));
    assert_eq!(
        is_admissible(&g, &Target::Vertex(s("v"))),
        Err(Error::NotANode(s("v")))
    );
    let independent = graph(&["a", "b"], &[("a", "b")], &[("x", "a"), ("y", "a"), ("z", "b")]);
    assert_eq!(
        is_admissible(&independent, &Target::Element(ElementId::Loop(s("x")))),
        Err(Error::NotMlcConnected)
    );
}

#[test]
fn k13_loops_are_not_feasible() {
    let g = LoopedSimpleGraph::k1_3("v", ["a", "b", "c"]);
    for id in ["a", "b", "c"] {
        let t = Target::Element(ElementId::Loop(s(id)));
        assert!(!is_feasible(&g, &t).unwrap().holds);
        assert!(!is_admissible(&g, &t).unwrap().holds);
    }
}

#[test]
fn extension_of_k13_reduces_back() {
    let seq = random_sequence(1, &[MoveKind::OneExtensionOnLoop], 3);
    let g = replay(&seq).unwrap();
    let node = g.vertex_id(1).to_string();
    assert!(is_admissible(&g, &Target::Vertex(node)).unwrap().holds);
}

#[test]
fn fig8_final_has_a_feasible_move() {
    let r = find_feasible_move(&fig8_final()).unwrap();
    let h = apply_reduction(&fig8_final(), &r, "fresh").unwrap();
    assert!(balanced_connected(&h));
}

#[test]
fn invalid_moves_report_index() {
    let mut seq = fig8_sequence();
    seq.moves.push(Move::AddEdge { edge: pair("v1", "v4") });
    match replay(&seq) {
        Err(Error::InvalidMoveAt { index, .. }) => assert_eq!(index, 4),
        other => panic!("unexpected {other:?}"),
    }
    let g = fig8_final();
    let bad = [
        Move::AddLoop { id: s("l0"), at: s("v2") },
        Move::AddEdge { edge: pair("v1", "zz") },
        Move::K4Extension { edge: pair("v1", "v4"), new_vertices: pair("n", "n") },
        Move::OneExtensionOnEdge {
            edge: pair("v1", "v2"),
            new_vertex: s("n"),
            attachments: vec![edge("v1"), edge("v1"), edge("v2")],
        },
        Move::OneExtensionOnLoop {
            loop_id: s("l0"),
            new_vertex: s("n"),
            attachments: vec![edge("v1"), edge("v2"), edge("v3")],
        },
    ];
    for m in &bad {
        assert!(matches!(apply_move(&g, m), Err(Error::InvalidMove(_))), "{m:?}");
    }
}

#[test]
fn sequences_serialize() {
    let seq = fig8_sequence();
    let text = serde_json::to_string(&seq).unwrap();
    assert!(text.contains("\"baseVertex\":\"v1\""));
    assert!(text.contains("\"kind\":\"K4Extension\""));
    assert!(text.contains("\"newVertices\":[\"v2\",\"v3\"]"));
    let back: ConstructionSequence = serde_json::from_str(&text).unwrap();
    assert_eq!(back, seq);
}

#[test]
fn random_construction_modes() {
    assert!(is_k13(&replay(&random_construct(0, Mode::Balanced, 7)).unwrap()));
    for seed in 0..30 {
        let b = random_construct(5, Mode::Balanced, seed);
        assert!(b.moves.iter().all(|m| m.kind() != MoveKind::K4Extension));
        assert!(balanced_connected(&replay(&b).unwrap()));
        let g = random_construct(5, Mode::General, seed);
        assert!(rigid_connected(&replay(&g).unwrap()));
        assert_eq!(random_construct(5, Mode::General, seed), g);
    }
}

#[test]
fn balanced_random_graphs_always_have_feasible_moves() {
    for seed in 0..200 {
        let g = replay(&random_construct(6, Mode::Balanced, seed)).unwrap();
        if is_k13(&g) {
            continue;
        }
        let r = find_feasible_move(&g).unwrap();
        assert!(balanced_connected(&apply_reduction(&g, &r, "fresh").unwrap()));
    }
}

#[test]
fn circuit_constructions_use_no_additions() {
    for seed in 0..40 {
        let seq = random_sequence(
            4,
            &[MoveKind::OneExtensionOnEdge, MoveKind::OneExtensionOnLoop, MoveKind::K4Extension],
            seed,
        );
        let g = replay(&seq).unwrap();
        let report = matroid::classify_circuit(&g).expect("rigid circuit");
        assert_eq!(report.kind, CircuitKind::Rigid);
        let back = deconstruct(&g, Mode::General).unwrap();
        assert!(back
            .moves
            .iter()
            .all(|m| !matches!(m.kind(), MoveKind::AddEdge | MoveKind::AddLoop)));
        assert!(replay(&back).unwrap().is_isomorphic(&g));
    }
}

#[test]
fn deconstruct_rejects_bad_inputs() {
    assert!(matches!(deconstruct(&k4(), Mode::General), Err(Error::PreconditionFailed(_))));
    assert!(matches!(deconstruct(&fig6(), Mode::Balanced), Err(Error::PreconditionFailed(_))));
}

fn all_legal_moves(g: &LoopedSimpleGraph) -> Vec<Move> {
    let mut out = Vec::new();
    let n = g.vertex_count();
    let id = |x: usize| g.vertex_id(x).to_string();
    for a in 0..n {
        out.push(Move::AddLoop { id: s("new_loop"), at: id(a) });
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                out.push(Move::AddEdge { edge: [id(a), id(b)] });
            }
        }
    }
    for &(a, b) in g.edges() {
        out.push(Move::OneExtensionOnEdge {
            edge: [id(a), id(b)],
            new_vertex: s("new"),
            attachments: vec![Attachment::Edge(id(a)), Attachment::Edge(id(b)), lp("new_loop")],
        });
        for x in (0..n).filter(|&x| x != a && x != b) {
            out.push(Move::OneExtensionOnEdge {
                edge: [id(a), id(b)],
                new_vertex: s("new"),
                attachments: vec![Attachment::Edge(id(a)), Attachment::Edge(id(b)), Attachment::Edge(id(x))],
            });
        }
    }
    for (l, at) in g.loops() {
        out.push(Move::OneExtensionOnLoop {
            loop_id: l.clone(),
            new_vertex: s("new"),
            attachments: vec![Attachment::Edge(id(*at)), lp("new_loop"), lp("new_loop2")],
        });
        for w in (0..n).filter(|w| w != at) {
            out.push(Move::OneExtensionOnLoop {
                loop_id: l.clone(),
                new_vertex: s("new"),
                attachments: vec![Attachment::Edge(id(*at)), lp("new_loop"), Attachment::Edge(id(w))],
            });
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn extensions_preserve_connectivity(seed in 0u64..10_000, steps in 0usize..6, pick in 0usize..1000) {
        let g = replay(&random_construct(steps, Mode::General, seed)).unwrap();
        let moves = all_legal_moves(&g);
        let m = &moves[pick % moves.len()];
        let h = apply_move(&g, m).unwrap();
        prop_assert!(matroid::is_mlc_connected(&h).unwrap());
        if m.kind() != MoveKind::K4Extension && g.is_balanced(2) {
            prop_assert!(h.is_balanced(2));
        }
    }

    #[test]
    fn one_extension_preserves_rigid_circuits(seed in 0u64..10_000, steps in 0usize..5, pick in 0usize..1000) {
        let seq = random_sequence(steps, &[MoveKind::OneExtensionOnEdge, MoveKind::OneExtensionOnLoop], seed);
        let g = replay(&seq).unwrap();
        let moves: Vec<Move> = all_legal_moves(&g)
            .into_iter()
            .filter(|m| matches!(m.kind(), MoveKind::OneExtensionOnEdge | MoveKind::OneExtensionOnLoop))
            .collect();
        let h = apply_move(&g, &moves[pick % moves.len()]).unwrap();
        let report = matroid::classify_circuit(&h);
        prop_assert_eq!(report.map(|r| r.kind), Some(CircuitKind::Rigid));
    }

    #[test]
    fn deconstruct_is_bounded_and_replays(seed in 0u64..10_000, steps in 0usize..7) {
        let g = replay(&random_construct(steps, Mode::Balanced, seed)).unwrap();
        let seq = deconstruct(&g, Mode::Balanced).unwrap();
        prop_assert!(seq.moves.len() <= g.element_count());
        prop_assert!(same_labelled(&replay(&seq).unwrap(), &g));
    }
}
