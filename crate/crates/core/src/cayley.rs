//! Cayley graphs of small shuffle groups, exported as Graphviz DOT.
//!
//! Each vertex is a deck arrangement: the group element applied to the sorted
//! deck `0, 1, .., N-1`. Each generator contributes one outgoing edge per
//! vertex, `g -> g * s`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::group::{bfs_enumerate, Generator};
use crate::perm::Perm;

pub const DEFAULT_VERTEX_CAP: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub element: Perm,
    pub arrangement: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// Index into [`CayleyGraph::generator_labels`].
    pub generator: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    /// In breadth-first discovery order, identity first.
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub generator_labels: Vec<String>,
}

pub fn build(degree: usize, generators: &[Generator], cap: usize) -> Result<CayleyGraph> {
    let enumeration = bfs_enumerate(degree, generators, cap)?;
    if !enumeration.complete {
        return Err(Error::CapExceeded { cap });
    }
    let sorted: Vec<u32> = (0..degree as u32).collect();
    let mut vertices = Vec::with_capacity(enumeration.len());
    let mut edges = Vec::with_capacity(enumeration.len() * generators.len());
    for (from, element) in enumeration.elements.iter().enumerate() {
        for (gi, g) in generators.iter().enumerate() {
            let to = enumeration
                .elements
                .get_index_of(&element.compose(&g.perm)?)
                .expect("enumeration is closed under the generators");
            edges.push(Edge {
                from,
                to,
                generator: gi,
            });
        }
        vertices.push(Vertex {
            element: element.clone(),
            arrangement: element.apply_to_deck(&sorted)?,
        });
    }
    Ok(CayleyGraph {
        vertices,
        edges,
        generator_labels: generators.iter().map(|g| g.label.clone()).collect(),
    })
}

fn edge_color(label: &str) -> &'static str {
    if label.starts_with('O') {
        "red"
    } else if label.starts_with('I') {
        "blue"
    } else {
        "black"
    }
}

fn node_name(v: &Vertex) -> String {
    let cards: Vec<String> = v.arrangement.iter().map(|c| c.to_string()).collect();
    cards.join(",")
}

/// Renders the graph as a DOT digraph. Out-shuffle edges (labels starting
/// with `O`) are red, in-shuffle edges (`I`) blue, anything else black.
pub fn to_dot(g: &CayleyGraph) -> String {
    let names: Vec<String> = g.vertices.iter().map(node_name).collect();
    let mut out = String::from("digraph cayley {\n");
    for name in &names {
        writeln!(out, "  \"{name}\";").unwrap();
    }
    for e in &g.edges {
        let label = &g.generator_labels[e.generator];
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\", color={}];",
            names[e.from],
            names[e.to],
            label,
            edge_color(label)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffles::{in_shuffle, out_shuffle, DeckParams};
    use std::collections::BTreeSet;

    fn shuffle_generators(m: usize, n: usize) -> Vec<Generator> {
        let p = DeckParams::new(m, n).unwrap();
        vec![
            Generator::new("O", out_shuffle(&p)),
            Generator::new("I", in_shuffle(&p)),
        ]
    }

    #[test]
    fn four_card_cube() {
        let g = build(4, &shuffle_generators(2, 2), DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.vertices.len(), 8);
        assert_eq!(g.edges.len(), 16);
        assert_eq!(g.vertices[0].arrangement, vec![0, 1, 2, 3]);

        let skeleton: BTreeSet<(usize, usize)> = g
            .edges
            .iter()
            .filter(|e| e.from != e.to)
            .map(|e| (e.from.min(e.to), e.from.max(e.to)))
            .collect();
        assert_eq!(skeleton.len(), 12);
        for v in 0..8 {
            assert_eq!(
                skeleton.iter().filter(|(a, b)| *a == v || *b == v).count(),
                3
            );
        }
    }

    #[test]
    fn each_label_is_a_bijection_on_vertices() {
        let g = build(6, &shuffle_generators(3, 2), DEFAULT_VERTEX_CAP).unwrap();
        for label in 0..2 {
            let mut ins = vec![0; g.vertices.len()];
            let mut outs = vec![0; g.vertices.len()];
            for e in g.edges.iter().filter(|e| e.generator == label) {
                outs[e.from] += 1;
                ins[e.to] += 1;
            }
            assert!(ins.iter().chain(&outs).all(|&d| d == 1));
        }
    }

    #[test]
    fn single_generator_cycle() {
        let out = out_shuffle(&DeckParams::new(2, 26).unwrap());
        let g = build(52, &[Generator::new("O", out)], 100).unwrap();
        assert_eq!(g.vertices.len(), 8);
        for (i, e) in g.edges.iter().enumerate() {
            assert_eq!((e.from, e.to), (i, (i + 1) % 8));
        }
    }

    #[test]
    fn degenerate_graphs() {
        let empty = build(3, &[], 10).unwrap();
        let dot = to_dot(&empty);
        assert_eq!(dot, "digraph cayley {\n  \"0,1,2\";\n}\n");

        let id = Generator::new("e", Perm::identity(3).unwrap());
        let dot = to_dot(&build(3, &[id], 10).unwrap());
        assert_eq!(
            dot,
            "digraph cayley {\n  \"0,1,2\";\n  \"0,1,2\" -> \"0,1,2\" [label=\"e\", color=black];\n}\n"
        );
    }

    #[test]
    fn cap_is_enforced() {
        let err = build(10, &shuffle_generators(2, 5), 100).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 100 });
    }

    #[test]
    fn dot_lines_and_colors() {
        let g = build(4, &shuffle_generators(2, 2), DEFAULT_VERTEX_CAP).unwrap();
        let dot = to_dot(&g);
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 16);
        assert_eq!(dot.lines().filter(|l| l.ends_with("\";")).count(), 8);
        assert!(dot.contains("\"0,1,2,3\" -> \"0,2,1,3\" [label=\"O\", color=red];"));
        assert!(dot.contains("\"0,1,2,3\" -> \"2,0,3,1\" [label=\"I\", color=blue];"));
        assert_eq!(
            dot,
            to_dot(&build(4, &shuffle_generators(2, 2), 100).unwrap())
        );
    }
}
