//! Dart-based graphs `(V, D, beg, inv)`.
//!
//! A graph is a vertex count, a dart set, the initial vertex `beg` of every
//! dart, and an involution `inv` on darts. Semi-edges (`inv x = x`), loops and
//! parallel edges are all first class. Vertices and darts are numbered from 0.

mod format;
mod iso;
mod walk;

pub use format::{parse_text, to_dot, to_dot_labelled, to_text};
pub use iso::{find_isomorphism, find_isomorphism_with_cap, GraphMorphism, DEFAULT_ISO_VERTEX_CAP};
pub use walk::Walk;

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("inv is not an involution at dart {dart}")]
    InvNotInvolution { dart: usize },
    #[error("dart {dart} points outside the graph")]
    DanglingDart { dart: usize },
    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("not a spanning tree: {0}")]
    NotASpanningTree(String),
    #[error("not a walk: {0}")]
    BadWalk(String),
    #[error("not a graph morphism: {0}")]
    NotAMorphism(String),
    #[error("graph with {size} vertices exceeds the isomorphism search cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A graph in the dart formalism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    beg: Vec<usize>,
    inv: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates and builds a graph from its `beg` and `inv` tables.
    pub fn new(vertex_count: usize, beg: Vec<usize>, inv: Vec<usize>) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        if beg.len() != inv.len() {
            return Err(GraphError::DanglingDart {
                dart: beg.len().min(inv.len()),
            });
        }
        for x in 0..beg.len() {
            if beg[x] >= vertex_count || inv[x] >= inv.len() {
                return Err(GraphError::DanglingDart { dart: x });
            }
        }
        for x in 0..inv.len() {
            if inv[inv[x]] != x {
                return Err(GraphError::InvNotInvolution { dart: x });
            }
        }
        let mut out = vec![Vec::new(); vertex_count];
        for (x, &v) in beg.iter().enumerate() {
            out[v].push(x);
        }
        Ok(Graph {
            vertex_count,
            beg,
            inv,
            out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dart_count(&self) -> usize {
        self.beg.len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count
    }

    pub fn darts(&self) -> std::ops::Range<usize> {
        0..self.beg.len()
    }

    #[inline]
    pub fn beg(&self, x: usize) -> usize {
        self.beg[x]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// End vertex, `beg(inv x)`.
    #[inline]
    pub fn term(&self, x: usize) -> usize {
        self.beg[self.inv[x]]
    }

    /// Darts emanating from `v`, in ascending order.
    pub fn darts_at(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn is_semi_edge(&self, x: usize) -> bool {
        self.inv[x] == x
    }

    pub fn is_loop(&self, x: usize) -> bool {
        self.inv[x] != x && self.beg(x) == self.term(x)
    }

    pub fn classify_edges(&self) -> EdgeClassification {
        let mut edges = Vec::new();
        let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for x in self.darts() {
            let y = self.inv[x];
            if y < x {
                continue;
            }
            let (a, b) = (self.beg(x), self.beg(y));
            let kind = if x == y {
                EdgeKind::SemiEdge
            } else if a == b {
                EdgeKind::Loop
            } else {
                EdgeKind::Link
            };
            if kind == EdgeKind::Link {
                classes.entry((a.min(b), a.max(b))).or_default().push(edges.len());
            }
            edges.push(Edge {
                dart: x,
                inverse: y,
                ends: (a, b),
                kind,
            });
        }
        EdgeClassification {
            edges,
            parallel_classes: classes.into_values().collect(),
        }
    }

    /// No semi-edges, no loops and no two distinct parallel edges.
    pub fn is_simple(&self) -> bool {
        let c = self.classify_edges();
        c.edges.iter().all(|e| e.kind == EdgeKind::Link)
            && c.parallel_classes.iter().all(|p| p.len() == 1)
    }

    /// Connected components by breadth-first search, lowest index first.
    pub fn components(&self) -> Components {
        let mut component_of = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for s in self.vertices() {
            if component_of[s] != usize::MAX {
                continue;
            }
            component_of[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &x in &self.out[v] {
                    let w = self.term(x);
                    if component_of[w] == usize::MAX {
                        component_of[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        Components {
            component_of,
            count,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components().count == 1
    }

    /// Breadth-first spanning tree from `root`, scanning darts by index.
    pub fn spanning_tree(&self, root: usize) -> Result<SpanningTree, GraphError> {
        if root >= self.vertex_count {
            return Err(GraphError::VertexOutOfRange { vertex: root });
        }
        let mut parent_dart = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        let mut order = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &x in &self.out[v] {
                let w = self.term(x);
                if !seen[w] {
                    seen[w] = true;
                    parent_dart[w] = Some(x);
                    order.push(w);
                }
            }
        }
        if order.len() != self.vertex_count {
            return Err(GraphError::NotConnected);
        }
        Ok(SpanningTree::assemble(self, root, parent_dart, order))
    }

    /// Sum of valences; always equals the dart count.
    pub fn valence_sum(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }
}

/// Incrementally assembles a [`Graph`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertex_count: usize,
    beg: Vec<usize>,
    inv: Vec<usize>,
}

impl GraphBuilder {
    pub fn new(vertex_count: usize) -> Self {
        GraphBuilder {
            vertex_count,
            ..Default::default()
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    /// Adds an edge from `u` to `v` and returns its two darts `(u->v, v->u)`.
    /// With `u == v` this is a loop.
    pub fn add_edge(&mut self, u: usize, v: usize) -> (usize, usize) {
        let x = self.beg.len();
        self.beg.extend([u, v]);
        self.inv.extend([x + 1, x]);
        (x, x + 1)
    }

    pub fn add_semi_edge(&mut self, u: usize) -> usize {
        let x = self.beg.len();
        self.beg.push(u);
        self.inv.push(x);
        x
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        Graph::new(self.vertex_count, self.beg, self.inv)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    SemiEdge,
    Loop,
    Link,
}

/// An edge `{dart, inverse}` with `dart <= inverse`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub dart: usize,
    pub inverse: usize,
    pub ends: (usize, usize),
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClassification {
    pub edges: Vec<Edge>,
    /// Links grouped by unordered endpoint pair, as indices into `edges`.
    pub parallel_classes: Vec<Vec<usize>>,
}

impl EdgeClassification {
    pub fn count(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    pub fn has_parallel_links(&self) -> bool {
        self.parallel_classes.iter().any(|c| c.len() > 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub component_of: Vec<usize>,
    pub count: usize,
}

impl Components {
    /// Vertex sets of each component.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.count];
        for (v, &c) in self.component_of.iter().enumerate() {
            parts[c].push(v);
        }
        parts
    }
}

/// A spanning tree, stored as the dart from each non-root vertex's parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    root: usize,
    parent_dart: Vec<Option<usize>>,
    order: Vec<usize>,
    in_tree: Vec<bool>,
}

impl SpanningTree {
    fn assemble(
        graph: &Graph,
        root: usize,
        parent_dart: Vec<Option<usize>>,
        order: Vec<usize>,
    ) -> Self {
        let mut in_tree = vec![false; graph.dart_count()];
        for x in parent_dart.iter().flatten() {
            in_tree[*x] = true;
            in_tree[graph.inv(*x)] = true;
        }
        SpanningTree {
            root,
            parent_dart,
            order,
            in_tree,
        }
    }

    /// Builds a tree from an explicit dart list. Either dart of an edge
    /// selects the edge; the root is the least vertex.
    pub fn from_darts(graph: &Graph, darts: &[usize]) -> Result<Self, GraphError> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); graph.vertex_count()];
        let mut chosen = vec![false; graph.dart_count()];
        for &x in darts {
            if x >= graph.dart_count() {
                return Err(GraphError::NotASpanningTree(format!("no dart {x}")));
            }
            if graph.is_semi_edge(x) || graph.is_loop(x) {
                return Err(GraphError::NotASpanningTree(format!(
                    "dart {x} is a loop or semi-edge"
                )));
            }
            let y = graph.inv(x);
            if chosen[x] || chosen[y] {
                continue;
            }
            chosen[x] = true;
            chosen[y] = true;
            adj[graph.beg(x)].push(x);
            adj[graph.beg(y)].push(y);
        }
        let edge_count = chosen.iter().filter(|&&c| c).count() / 2;
        if edge_count + 1 != graph.vertex_count() {
            return Err(GraphError::NotASpanningTree(format!(
                "{edge_count} edges for {} vertices",
                graph.vertex_count()
            )));
        }
        let root = 0;
        let mut parent_dart = vec![None; graph.vertex_count()];
        let mut seen = vec![false; graph.vertex_count()];
        seen[root] = true;
        let mut order = vec![root];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            adj[v].sort_unstable();
            for &x in &adj[v] {
                let w = graph.term(x);
                if !seen[w] {
                    seen[w] = true;
                    parent_dart[w] = Some(x);
                    order.push(w);
                }
            }
        }
        if order.len() != graph.vertex_count() {
            return Err(GraphError::NotASpanningTree(
                "selected edges do not connect all vertices".into(),
            ));
        }
        Ok(Self::assemble(graph, root, parent_dart, order))
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// The tree dart `parent -> v`, or `None` for the root.
    pub fn parent_dart(&self, v: usize) -> Option<usize> {
        self.parent_dart[v]
    }

    /// Vertices in breadth-first order from the root.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn contains_dart(&self, x: usize) -> bool {
        self.in_tree[x]
    }

    /// All tree darts (both orientations), ascending.
    pub fn darts(&self) -> Vec<usize> {
        (0..self.in_tree.len()).filter(|&x| self.in_tree[x]).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.parent_dart.iter().flatten().count()
    }

    /// Whether this tree is a spanning tree of `graph`.
    pub fn is_spanning_tree_of(&self, graph: &Graph) -> bool {
        if self.parent_dart.len() != graph.vertex_count()
            || self.in_tree.len() != graph.dart_count()
        {
            return false;
        }
        let mut adj_ok = true;
        for (v, pd) in self.parent_dart.iter().enumerate() {
            if let Some(x) = pd {
                adj_ok &= *x < graph.dart_count() && graph.term(*x) == v && graph.beg(*x) != v;
            } else {
                adj_ok &= v == self.root;
            }
        }
        adj_ok && self.edge_count() + 1 == graph.vertex_count() && {
            // every vertex reaches the root through parent darts
            (0..graph.vertex_count()).all(|v| {
                let mut cur = v;
                for _ in 0..graph.vertex_count() {
                    match self.parent_dart[cur] {
                        Some(x) => cur = graph.beg(x),
                        None => break,
                    }
                }
                cur == self.root
            })
        }
    }
}
