use super::{Graph, GraphError};

/// A walk `(x_1, ..., x_n)` with `term x_i = beg x_{i+1}`.
///
/// The start vertex is stored explicitly so the empty walk at `v` is a
/// `vv`-walk.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    start: usize,
    darts: Vec<usize>,
}

impl Walk {
    pub fn empty(vertex: usize) -> Self {
        Walk {
            start: vertex,
            darts: Vec::new(),
        }
    }

    pub fn new(graph: &Graph, start: usize, darts: Vec<usize>) -> Result<Self, GraphError> {
        if start >= graph.vertex_count() {
            return Err(GraphError::VertexOutOfRange { vertex: start });
        }
        let mut at = start;
        for (i, &x) in darts.iter().enumerate() {
            if x >= graph.dart_count() {
                return Err(GraphError::BadWalk(format!("no dart {x}")));
            }
            if graph.beg(x) != at {
                return Err(GraphError::BadWalk(format!(
                    "dart {x} at position {i} does not begin at vertex {at}"
                )));
            }
            at = graph.term(x);
        }
        Ok(Walk { start, darts })
    }

    /// A nonempty walk given by its darts alone.
    pub fn from_darts(graph: &Graph, darts: Vec<usize>) -> Result<Self, GraphError> {
        let Some(&first) = darts.first() else {
            return Err(GraphError::BadWalk("empty dart sequence without a base vertex".into()));
        };
        if first >= graph.dart_count() {
            return Err(GraphError::BadWalk(format!("no dart {first}")));
        }
        Walk::new(graph, graph.beg(first), darts)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self, graph: &Graph) -> usize {
        self.darts.last().map_or(self.start, |&x| graph.term(x))
    }

    pub fn darts(&self) -> &[usize] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn is_closed(&self, graph: &Graph) -> bool {
        self.end(graph) == self.start
    }

    /// `(x_n^-1, ..., x_1^-1)`.
    pub fn inverse(&self, graph: &Graph) -> Walk {
        Walk {
            start: self.end(graph),
            darts: self.darts.iter().rev().map(|&x| graph.inv(x)).collect(),
        }
    }

    /// `self` followed by `other`; requires `other` to start where `self` ends.
    pub fn concat(&self, other: &Walk, graph: &Graph) -> Result<Walk, GraphError> {
        if self.end(graph) != other.start {
            return Err(GraphError::BadWalk(format!(
                "cannot join a walk ending at {} to one starting at {}",
                self.end(graph),
                other.start
            )));
        }
        let mut darts = self.darts.clone();
        darts.extend_from_slice(&other.darts);
        Ok(Walk {
            start: self.start,
            darts,
        })
    }

    /// Vertices visited, `v_0, ..., v_n`.
    pub fn vertices(&self, graph: &Graph) -> Vec<usize> {
        let mut out = vec![self.start];
        out.extend(self.darts.iter().map(|&x| graph.term(x)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dartgraph::GraphBuilder;

    fn path3() -> Graph {
        let mut b = GraphBuilder::new(3);
        b.add_edge(0, 1);
        b.add_edge(1, 2);
        b.build().unwrap()
    }

    #[test]
    fn walk_validation() {
        let g = path3();
        assert!(Walk::new(&g, 0, vec![0, 2]).is_ok());
        assert!(Walk::new(&g, 0, vec![2]).is_err());
        assert!(Walk::from_darts(&g, vec![]).is_err());
        let w = Walk::empty(1);
        assert_eq!(w.end(&g), 1);
        assert!(w.is_closed(&g));
    }

    #[test]
    fn inverse_swaps_endpoints() {
        let g = path3();
        let w = Walk::new(&g, 0, vec![0, 2]).unwrap();
        let wi = w.inverse(&g);
        assert_eq!((wi.start(), wi.end(&g)), (w.end(&g), w.start()));
        assert_eq!(wi.darts(), &[3, 1]);
        let closed = w.concat(&wi, &g).unwrap();
        assert!(closed.is_closed(&g));
        assert_eq!(closed.vertices(&g), vec![0, 1, 2, 1, 0]);
        assert!(w.concat(&w, &g).is_err());
    }
}
