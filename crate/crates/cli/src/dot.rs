//! DOT emission: color 0 renders black, color 1 white, undefined gray;
//! uncolored graphs get plain nodes. Vertex order is ascending, so output
//! is deterministic.

use std::fmt::Write;

use coarsedist::graph::Graph;

pub fn render(g: &Graph, coloring: Option<&[Option<u8>]>) -> String {
    let mut out = String::new();
    out.push_str("graph coarsedist {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        match coloring.map(|c| c[v]) {
            None => {
                let _ = writeln!(out, "  {v} [label=\"{v}\"];");
            }
            Some(Some(0)) => {
                let _ = writeln!(
                    out,
                    "  {v} [label=\"{v}\", style=filled, fillcolor=black, fontcolor=white];"
                );
            }
            Some(Some(_)) => {
                let _ = writeln!(out, "  {v} [label=\"{v}\", style=filled, fillcolor=white];");
            }
            Some(None) => {
                let _ = writeln!(out, "  {v} [label=\"{v}\", style=filled, fillcolor=gray];");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_three_fill_colors() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let coloring = vec![Some(0), Some(1), None];
        let text = render(&g, Some(&coloring));
        assert!(text.contains("0 [label=\"0\", style=filled, fillcolor=black, fontcolor=white];"));
        assert!(text.contains("1 [label=\"1\", style=filled, fillcolor=white];"));
        assert!(text.contains("2 [label=\"2\", style=filled, fillcolor=gray];"));
        assert!(text.contains("  0 -- 1;\n  1 -- 2;\n"));
    }

    #[test]
    fn uncolored_nodes_are_unfilled() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let text = render(&g, None);
        assert!(!text.contains("fillcolor"));
    }
}
