use std::fmt::Write;

use genus2_pencils::fibres::DualGraph;

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render_text(title: &str, graph: &DualGraph) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{title}: {} nodes, {} edges",
        graph.nodes.len(),
        graph.edges.len()
    )
    .unwrap();
    for n in &graph.nodes {
        writeln!(
            out,
            "node {} mult={} self={} genus={}",
            n.name, n.mult, n.self_int, n.genus
        )
        .unwrap();
    }
    for &(i, j, w) in &graph.edges {
        writeln!(
            out,
            "edge {} {} {w}",
            graph.nodes[i].name, graph.nodes[j].name
        )
        .unwrap();
    }
    for comp in graph.root_components() {
        let names: Vec<&str> = comp
            .nodes
            .iter()
            .map(|&i| graph.nodes[i].name.as_str())
            .collect();
        writeln!(out, "roots {}: {}", comp.label, names.join(" ")).unwrap();
    }
    let elliptic: Vec<&str> = graph
        .nodes
        .iter()
        .filter(|n| n.genus == 1)
        .map(|n| n.name.as_str())
        .collect();
    if !elliptic.is_empty() {
        writeln!(out, "elliptic {}", elliptic.join(" ")).unwrap();
    }
    out
}

/// Undirected DOT. Node labels carry the multiplicity when it is not 1,
/// elliptic components get a doubled border, and edges of weight above 1
/// are labelled with the intersection number.
pub fn render_dot(title: &str, graph: &DualGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", quoted(title)).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for n in &graph.nodes {
        let label = if n.mult == 1 {
            n.name.clone()
        } else {
            format!("{} ({})", n.name, n.mult)
        };
        let mut attrs = format!("label={}", quoted(&label));
        if n.genus == 1 {
            attrs.push_str(", peripheries=2");
        }
        writeln!(out, "  {} [{attrs}];", quoted(&n.name)).unwrap();
    }
    for &(i, j, w) in &graph.edges {
        let (a, b) = (quoted(&graph.nodes[i].name), quoted(&graph.nodes[j].name));
        if w == 1 {
            writeln!(out, "  {a} -- {b};").unwrap();
        } else {
            writeln!(out, "  {a} -- {b} [label=\"{w}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use genus2_pencils::fibres::GraphNode;

    fn node(name: &str, genus: i64, mult: i64) -> GraphNode {
        GraphNode {
            name: name.into(),
            self_int: if genus == 1 { -1 } else { -2 },
            genus,
            mult,
        }
    }

    #[test]
    fn dot_marks_elliptic_nodes_and_heavy_edges() {
        let g = DualGraph {
            nodes: vec![node("a", 0, 1), node("b", 1, 2)],
            edges: vec![(0, 1, 2)],
        };
        let dot = render_dot("F_0", &g);
        assert!(dot.starts_with("graph \"F_0\" {\n"));
        assert!(dot.contains("\"b\" [label=\"b (2)\", peripheries=2];"));
        assert!(dot.contains("\"a\" [label=\"a\"];"));
        assert!(dot.contains("\"a\" -- \"b\" [label=\"2\"];"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn quotes_are_escaped() {
        assert_eq!(quoted("x\"y"), "\"x\\\"y\"");
    }
}
