use std::fmt::Write as _;

use super::{Graph, GraphError};

/// Writes the line-oriented text form:
///
/// ```text
/// vertices 2
/// dart 0 beg 0 inv 1
/// dart 1 beg 1 inv 0
/// ```
pub fn to_text(graph: &Graph) -> String {
    let mut out = format!("vertices {}\n", graph.vertex_count());
    for x in graph.darts() {
        let _ = writeln!(out, "dart {x} beg {} inv {}", graph.beg(x), graph.inv(x));
    }
    out
}

/// Parses the format written by [`to_text`]. Blank lines and `#` comments are
/// skipped; darts may appear in any order but must cover `0..n` exactly once.
pub fn parse_text(text: &str) -> Result<Graph, GraphError> {
    let mut vertex_count: Option<usize> = None;
    let mut rows: Vec<Option<(usize, usize)>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| GraphError::Parse {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("expected a non-negative integer, found {s:?}")))
        };
        match toks.as_slice() {
            ["vertices", n] => {
                if vertex_count.is_some() {
                    return Err(err("duplicate vertices header".into()));
                }
                vertex_count = Some(num(n)?);
            }
            ["dart", id, "beg", v, "inv", y] => {
                if vertex_count.is_none() {
                    return Err(err("dart line before the vertices header".into()));
                }
                let (id, v, y) = (num(id)?, num(v)?, num(y)?);
                if id >= rows.len() {
                    rows.resize(id + 1, None);
                }
                if rows[id].replace((v, y)).is_some() {
                    return Err(err(format!("dart {id} listed twice")));
                }
            }
            _ => return Err(err(format!("unrecognised line {line:?}"))),
        }
    }
    let n = vertex_count.ok_or(GraphError::Parse {
        line: 0,
        message: "missing vertices header".into(),
    })?;
    let mut beg = Vec::with_capacity(rows.len());
    let mut inv = Vec::with_capacity(rows.len());
    for (x, row) in rows.into_iter().enumerate() {
        let (v, y) = row.ok_or(GraphError::Parse {
            line: 0,
            message: format!("dart {x} missing"),
        })?;
        beg.push(v);
        inv.push(y);
    }
    Graph::new(n, beg, inv)
}

/// DOT export with numeric vertex names.
pub fn to_dot(graph: &Graph) -> String {
    to_dot_labelled(graph, |v| v.to_string())
}

/// DOT export, one `--` edge per edge of the graph. Parallel edges and loops
/// appear as repeated edges; each semi-edge is an edge to its own point node.
pub fn to_dot_labelled<F>(graph: &Graph, label: F) -> String
where
    F: Fn(usize) -> String,
{
    let mut out = String::from("graph G {\n");
    for v in graph.vertices() {
        let _ = writeln!(out, "  v{v} [label=\"{}\"];", escape(&label(v)));
    }
    for x in graph.darts() {
        let y = graph.inv(x);
        if y < x {
            continue;
        }
        if x == y {
            let _ = writeln!(out, "  s{x} [shape=point];");
            let _ = writeln!(out, "  v{} -- s{x} [label=\"d{x}\"];", graph.beg(x));
        } else {
            let _ = writeln!(
                out,
                "  v{} -- v{} [label=\"d{x}/d{y}\"];",
                graph.beg(x),
                graph.beg(y)
            );
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dartgraph::GraphBuilder;

    fn mixed() -> Graph {
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1);
        b.add_edge(0, 1);
        b.add_edge(1, 1);
        b.add_semi_edge(0);
        b.build().unwrap()
    }

    #[test]
    fn text_round_trip() {
        let g = mixed();
        let text = to_text(&g);
        assert!(text.starts_with("vertices 2\ndart 0 beg 0 inv 1\n"));
        assert_eq!(parse_text(&text).unwrap(), g);
    }

    #[test]
    fn parse_accepts_comments_and_any_order() {
        let g = parse_text("# K2\nvertices 2\n\ndart 1 beg 1 inv 0\ndart 0 beg 0 inv 1 # first\n")
            .unwrap();
        assert_eq!(g.dart_count(), 2);
        assert_eq!(g.term(0), 1);
    }

    #[test]
    fn parse_errors_carry_lines() {
        match parse_text("vertices 2\ndart 0 beg 0 inv x\n") {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_text("dart 0 beg 0 inv 0\n").is_err());
        assert!(parse_text("vertices 1\ndart 1 beg 0 inv 1\n").is_err());
        assert!(matches!(
            parse_text("vertices 1\ndart 0 beg 0 inv 1\ndart 1 beg 0 inv 2\ndart 2 beg 0 inv 0\n"),
            Err(GraphError::InvNotInvolution { .. })
        ));
    }

    #[test]
    fn dot_draws_semi_edges_to_points() {
        let dot = to_dot(&mixed());
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert!(dot.contains("s6 [shape=point]"));
        assert!(dot.contains("v0 -- s6"));
        assert_eq!(dot.matches("v0 -- v1").count(), 2);
    }
}
