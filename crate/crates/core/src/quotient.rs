//! Graphs with a group of automorphisms: quotients, transversals, and the
//! reconstruction of a graph as the cover of a voltage graph on its quotient.
//!
//! An [`ActionGroup`] acts on one point set holding the vertices `0..n`
//! followed by the darts (`n + d` for dart `d`).

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::cover::Cover;
use crate::dartgraph::{Graph, GraphError, GraphMorphism};
use crate::permgrp::{Group, GroupError, GroupPart, Perm};
use crate::voltage::{GenVoltageGraph, VoltageError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("not an action by automorphisms: {0}")]
    NotAnAction(String),
    #[error("group does not act faithfully on darts")]
    NotFaithfulOnDarts,
    #[error("quotient graph is not connected")]
    QuotientNotConnected,
    #[error("bad transversal: {0}")]
    BadTransversal(String),
    #[error("graph must be simple to derive dart images from vertex images")]
    NotSimple,
    #[error("action file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Voltage(#[from] VoltageError),
}

/// A group of automorphisms of a graph, acting on vertices and darts at once.
#[derive(Clone, Debug)]
pub struct ActionGroup {
    graph: Graph,
    group: Group,
}

impl ActionGroup {
    /// Checks every generator maps vertices to vertices, darts to darts, and
    /// commutes with `beg` and `inv`, then closes the generators.
    pub fn new(graph: Graph, generators: Vec<Perm>) -> Result<Self, QuotientError> {
        let n = graph.vertex_count();
        let degree = n + graph.dart_count();
        for (i, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                }
                .into());
            }
            if (0..n).any(|v| g.apply(v) >= n) {
                return Err(QuotientError::NotAnAction(format!(
                    "generator {i} sends a vertex to a dart"
                )));
            }
            for d in graph.darts() {
                let image = g.apply(n + d) - n;
                if g.apply(graph.beg(d)) != graph.beg(image) {
                    return Err(QuotientError::NotAnAction(format!(
                        "generator {i} does not commute with beg at dart {d}"
                    )));
                }
                if g.apply(n + graph.inv(d)) != n + graph.inv(image) {
                    return Err(QuotientError::NotAnAction(format!(
                        "generator {i} does not commute with inv at dart {d}"
                    )));
                }
            }
        }
        let group = Group::generate(degree, generators)?;
        Ok(ActionGroup { graph, group })
    }

    /// Lifts vertex permutations of a simple graph to its darts.
    pub fn from_vertex_permutations(graph: Graph, vertex_perms: &[Perm]) -> Result<Self, QuotientError> {
        if !graph.is_simple() {
            return Err(QuotientError::NotSimple);
        }
        let n = graph.vertex_count();
        let mut dart_between = std::collections::HashMap::new();
        for d in graph.darts() {
            dart_between.insert((graph.beg(d), graph.term(d)), d);
        }
        let mut gens = Vec::with_capacity(vertex_perms.len());
        for (i, p) in vertex_perms.iter().enumerate() {
            if p.degree() != n {
                return Err(GroupError::DegreeMismatch {
                    expected: n,
                    found: p.degree(),
                }
                .into());
            }
            let mut images: Vec<usize> = p.images().to_vec();
            for d in graph.darts() {
                let key = (p.apply(graph.beg(d)), p.apply(graph.term(d)));
                let e = dart_between.get(&key).ok_or_else(|| {
                    QuotientError::NotAnAction(format!(
                        "vertex permutation {i} does not preserve adjacency"
                    ))
                })?;
                images.push(n + e);
            }
            gens.push(Perm::from_images(images)?);
        }
        Self::new(graph, gens)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn vertex_point(&self, v: usize) -> usize {
        v
    }

    pub fn dart_point(&self, d: usize) -> usize {
        self.graph.vertex_count() + d
    }

    /// Elements fixing a point.
    pub fn stabiliser(&self, point: usize) -> Group {
        let fixing: Vec<Perm> = self
            .group
            .elements()
            .iter()
            .filter(|g| g.apply(point) == point)
            .cloned()
            .collect();
        self.group
            .generated_by(&fixing.iter().map(GroupPart::Element).collect::<Vec<_>>())
            .expect("stabiliser elements lie in the group")
    }

    pub fn is_faithful_on_darts(&self) -> bool {
        let n = self.graph.vertex_count();
        self.group.elements().iter().all(|g| {
            g.is_identity() || self.graph.darts().any(|d| g.apply(n + d) != n + d)
        })
    }

    /// Orbits of all points, each sorted, numbered by least point.
    fn orbit_ids(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let degree = self.group.degree();
        let mut id = vec![usize::MAX; degree];
        let mut orbits = Vec::new();
        for p in 0..degree {
            if id[p] != usize::MAX {
                continue;
            }
            let k = orbits.len();
            id[p] = k;
            let mut orbit = vec![p];
            let mut queue = VecDeque::from([p]);
            while let Some(q) = queue.pop_front() {
                for g in self.group.generators() {
                    let r = g.apply(q);
                    if id[r] == usize::MAX {
                        id[r] = k;
                        orbit.push(r);
                        queue.push_back(r);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        (id, orbits)
    }

    /// Parses generators, one per line, in cycle notation over points named
    /// `v<i>` and `d<i>` with the graph file's 0-based ids, e.g.
    /// `(v0 v1 v2)(d0 d2 d4)(d1 d3 d5)`. Blank lines and `#` comments are skipped.
    pub fn parse(graph: Graph, text: &str) -> Result<Self, QuotientError> {
        let n = graph.vertex_count();
        let m = graph.dart_count();
        let resolve = |tok: &str| -> Option<usize> {
            let (kind, rest) = tok.split_at(1);
            let i: usize = rest.parse().ok()?;
            match kind {
                "v" if i < n => Some(i),
                "d" if i < m => Some(n + i),
                _ => None,
            }
        };
        let mut gens = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let g = Perm::parse_with(line, n + m, resolve).map_err(|e| QuotientError::Parse {
                line: idx + 1,
                message: e.to_string(),
            })?;
            gens.push(g);
        }
        Self::new(graph, gens)
    }

    /// Prints a point as `v<i>` or `d<i>`.
    pub fn point_name(&self, p: usize) -> String {
        let n = self.graph.vertex_count();
        if p < n {
            format!("v{p}")
        } else {
            format!("d{}", p - n)
        }
    }

    pub fn format_generators(&self) -> String {
        let mut out = String::new();
        for g in self.group.generators() {
            out.push_str(&g.format_with(|p| self.point_name(p)));
            out.push('\n');
        }
        out
    }
}

/// The quotient graph and the projection onto it.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub graph: Graph,
    /// Graph epimorphism from the acted-on graph to the quotient.
    pub map: GraphMorphism,
    /// Vertex orbits, numbered by least vertex.
    pub vertex_orbits: Vec<Vec<usize>>,
    /// Dart orbits, numbered by least dart.
    pub dart_orbits: Vec<Vec<usize>>,
}

/// Orbits become vertices and darts; `beg` and `inv` are induced.
pub fn quotient_graph(action: &ActionGroup) -> Result<Quotient, QuotientError> {
    let g = &action.graph;
    let n = g.vertex_count();
    let (id, orbits) = action.orbit_ids();
    let mut vertex_orbits = Vec::new();
    let mut dart_orbits = Vec::new();
    let mut index = vec![usize::MAX; orbits.len()];
    // orbits are numbered by least point; vertices precede darts
    for (k, orbit) in orbits.into_iter().enumerate() {
        if orbit[0] < n {
            index[k] = vertex_orbits.len();
            vertex_orbits.push(orbit);
        } else {
            index[k] = dart_orbits.len();
            dart_orbits.push(orbit.into_iter().map(|p| p - n).collect::<Vec<_>>());
        }
    }
    let vertex_map: Vec<usize> = (0..n).map(|v| index[id[v]]).collect();
    let dart_map: Vec<usize> = g.darts().map(|d| index[id[n + d]]).collect();
    let beg = dart_orbits.iter().map(|o| vertex_map[g.beg(o[0])]).collect();
    let inv = dart_orbits.iter().map(|o| dart_map[g.inv(o[0])]).collect();
    let graph = Graph::new(vertex_orbits.len(), beg, inv)?;
    let map = GraphMorphism {
        vertex_map,
        dart_map,
    };
    map.verify(g, &graph)?;
    Ok(Quotient {
        graph,
        map,
        vertex_orbits,
        dart_orbits,
    })
}

/// Orbit representatives with `beg` of each dart representative among the
/// vertex representatives, plus the partner and voltage choice per dart orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalData {
    /// Representative per vertex orbit.
    pub vertices: Vec<usize>,
    /// Representative per dart orbit.
    pub darts: Vec<usize>,
    /// Per dart orbit: the orbit whose representative lies in the orbit of
    /// the inverse of this representative.
    pub partner: Vec<usize>,
    /// Per dart orbit: an element sending the partner representative to the
    /// inverse of this representative; the identity when that inverse is
    /// itself a representative, otherwise the least such element.
    pub zeta: Vec<Perm>,
}

impl TransversalData {
    /// Validates representatives and derives partners and voltages.
    pub fn from_representatives(
        action: &ActionGroup,
        quotient: &Quotient,
        vertices: Vec<usize>,
        darts: Vec<usize>,
    ) -> Result<Self, QuotientError> {
        let g = &action.graph;
        let n = g.vertex_count();
        let bad = |m: String| QuotientError::BadTransversal(m);
        if vertices.len() != quotient.vertex_orbits.len() || darts.len() != quotient.dart_orbits.len() {
            return Err(bad("one representative per orbit required".into()));
        }
        for (k, &v) in vertices.iter().enumerate() {
            if v >= n || quotient.map.vertex_map[v] != k {
                return Err(bad(format!("vertex {v} does not represent vertex orbit {k}")));
            }
        }
        for (k, &d) in darts.iter().enumerate() {
            if d >= g.dart_count() || quotient.map.dart_map[d] != k {
                return Err(bad(format!("dart {d} does not represent dart orbit {k}")));
            }
            if vertices[quotient.map.vertex_map[g.beg(d)]] != g.beg(d) {
                return Err(bad(format!("dart {d} does not begin at a vertex representative")));
            }
        }
        let is_rep: BTreeSet<usize> = darts.iter().copied().collect();
        let mut partner = Vec::with_capacity(darts.len());
        let mut zeta = Vec::with_capacity(darts.len());
        for &d in &darts {
            let di = g.inv(d);
            let k = quotient.map.dart_map[di];
            partner.push(k);
            if is_rep.contains(&di) {
                zeta.push(action.group.identity());
            } else {
                let from = n + darts[k];
                let to = n + di;
                let z = action
                    .group
                    .elements()
                    .iter()
                    .find(|h| h.apply(from) == to)
                    .expect("partner lies in the orbit of the inverse");
                zeta.push(z.clone());
            }
        }
        Ok(TransversalData {
            vertices,
            darts,
            partner,
            zeta,
        })
    }

    /// Dart orbits whose representative's inverse is also a representative.
    pub fn closed_darts(&self, graph: &Graph) -> Vec<usize> {
        let reps: BTreeSet<usize> = self.darts.iter().copied().collect();
        self.darts
            .iter()
            .copied()
            .filter(|&d| reps.contains(&graph.inv(d)))
            .collect()
    }

    /// Whether the vertex representatives together with the closed darts
    /// form a connected graph.
    pub fn is_connected(&self, graph: &Graph) -> bool {
        let index: std::collections::HashMap<usize, usize> =
            self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let closed = self.closed_darts(graph);
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for d in closed {
            let (a, b) = (index[&graph.beg(d)], index[&graph.term(d)]);
            adj[a].push(b);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Grows a connected transversal breadth-first from vertex 0. Darts at each
/// vertex representative are scanned by index; an unrepresented dart orbit
/// takes the dart, and when its end lies in an unrepresented vertex orbit,
/// that end and the inverse dart become representatives too.
pub fn choose_transversal(action: &ActionGroup, quotient: &Quotient) -> Result<TransversalData, QuotientError> {
    if !quotient.graph.is_connected() {
        return Err(QuotientError::QuotientNotConnected);
    }
    let g = &action.graph;
    let mut vertex_rep = vec![None; quotient.vertex_orbits.len()];
    let mut dart_rep = vec![None; quotient.dart_orbits.len()];
    vertex_rep[quotient.map.vertex_map[0]] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &d in g.darts_at(v) {
            let k = quotient.map.dart_map[d];
            if dart_rep[k].is_some() {
                continue;
            }
            dart_rep[k] = Some(d);
            let w = g.term(d);
            let wk = quotient.map.vertex_map[w];
            if vertex_rep[wk].is_none() {
                vertex_rep[wk] = Some(w);
                queue.push_back(w);
                let ik = quotient.map.dart_map[g.inv(d)];
                if dart_rep[ik].is_none() {
                    dart_rep[ik] = Some(g.inv(d));
                }
            }
        }
    }
    let vertices = vertex_rep
        .into_iter()
        .map(|r| r.expect("connected quotient reaches every vertex orbit"))
        .collect();
    let darts = dart_rep
        .into_iter()
        .map(|r| r.expect("every dart orbit begins at a reached vertex orbit"))
        .collect();
    TransversalData::from_representatives(action, quotient, vertices, darts)
}

/// A voltage graph on the quotient whose cover is isomorphic to the graph.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub gvg: GenVoltageGraph,
    pub quotient: Quotient,
    pub transversal: TransversalData,
    /// Per point: an element taking the representative of its orbit to it.
    transporter: Vec<Perm>,
}

impl Reconstruction {
    /// The isomorphism from the acted-on graph onto `cover` (built from
    /// `self.gvg`) sending each orbit onto a fibre.
    pub fn isomorphism(&self, cover: &Cover<'_>) -> GraphMorphism {
        let n = self.quotient.map.vertex_map.len();
        let vertex_map = (0..n)
            .map(|v| cover.vertex_of(self.quotient.map.vertex_map[v], &self.transporter[v]))
            .collect();
        let dart_map = (0..self.quotient.map.dart_map.len())
            .map(|d| cover.dart_of(self.quotient.map.dart_map[d], &self.transporter[n + d]))
            .collect();
        GraphMorphism {
            vertex_map,
            dart_map,
        }
    }
}

/// Weights are stabilisers of the transversal, voltages the transversal's
/// choice per dart orbit.
pub fn reconstruct(action: &ActionGroup) -> Result<Reconstruction, QuotientError> {
    if !action.is_faithful_on_darts() {
        return Err(QuotientError::NotFaithfulOnDarts);
    }
    let quotient = quotient_graph(action)?;
    let transversal = choose_transversal(action, &quotient)?;
    let n = action.graph.vertex_count();
    let vertex_weights = transversal.vertices.iter().map(|&v| action.stabiliser(v)).collect();
    let dart_weights = transversal
        .darts
        .iter()
        .map(|&d| action.stabiliser(n + d))
        .collect();
    let gvg = GenVoltageGraph::new(
        quotient.graph.clone(),
        action.group.clone(),
        vertex_weights,
        dart_weights,
        transversal.zeta.clone(),
    )?;
    let degree = action.group.degree();
    let mut transporter: Vec<Option<Perm>> = vec![None; degree];
    let reps = transversal
        .vertices
        .iter()
        .copied()
        .chain(transversal.darts.iter().map(|&d| n + d));
    for r in reps {
        for h in action.group.elements() {
            let p = h.apply(r);
            if transporter[p].is_none() {
                transporter[p] = Some(h.clone());
            }
        }
    }
    let transporter = transporter
        .into_iter()
        .map(|t| t.expect("every point lies in the orbit of a representative"))
        .collect();
    Ok(Reconstruction {
        gvg,
        quotient,
        transversal,
        transporter,
    })
}

/// The core in `G` of the intersection of all weights is trivial.
///
/// Vertex weights contain the weights of their darts, so they only matter
/// for a base without darts.
pub fn is_faithful_gvg(gvg: &GenVoltageGraph) -> bool {
    weight_core(gvg).is_trivial()
}

/// Core in `G` of the intersection of all vertex and dart weights.
pub fn weight_core(gvg: &GenVoltageGraph) -> Group {
    let meet = gvg
        .vertex_weights()
        .iter()
        .chain(gvg.dart_weights())
        .fold(gvg.group().clone(), |acc, w| acc.intersection(w));
    meet.core_in(gvg.group())
        .expect("intersection of subgroups is a subgroup")
}

/// Outcome of the generation test.
#[derive(Clone, Debug)]
pub struct GenerationVerdict {
    pub connected: bool,
    /// Subgroup generated by vertex stabilisers of the transversal and the
    /// elements `a_x`.
    pub generated: Group,
    /// `(dart, a_x)` for each representative dart whose inverse is not one.
    pub swaps: Vec<(usize, Perm)>,
}

/// Connectivity from a connected transversal: the graph is connected exactly
/// when `G` is generated by the vertex representatives' stabilisers together
/// with, for each representative dart `x` whose inverse is not a
/// representative, the least `a_x` sending `inv x` to a representative.
pub fn generation_connectivity_test(
    action: &ActionGroup,
    transversal: &TransversalData,
) -> Result<GenerationVerdict, QuotientError> {
    let g = &action.graph;
    let n = g.vertex_count();
    let quotient = quotient_graph(action)?;
    // re-derive to validate representatives
    let checked = TransversalData::from_representatives(
        action,
        &quotient,
        transversal.vertices.clone(),
        transversal.darts.clone(),
    )?;
    if !checked.is_connected(g) {
        return Err(QuotientError::BadTransversal(
            "representatives do not form a connected subgraph".into(),
        ));
    }
    let reps: BTreeSet<usize> = checked.darts.iter().map(|&d| n + d).collect();
    let mut swaps = Vec::new();
    for &x in &checked.darts {
        let xi = g.inv(x);
        if checked.darts.contains(&xi) {
            continue;
        }
        let a = action
            .group
            .elements()
            .iter()
            .find(|h| reps.contains(&h.apply(n + xi)))
            .expect("every dart orbit has a representative");
        swaps.push((x, a.clone()));
    }
    let stabs: Vec<Group> = checked.vertices.iter().map(|&v| action.stabiliser(v)).collect();
    let mut parts: Vec<GroupPart<'_>> = stabs.iter().map(GroupPart::Subgroup).collect();
    parts.extend(swaps.iter().map(|(_, a)| GroupPart::Element(a)));
    let generated = action.group.generated_by(&parts)?;
    Ok(GenerationVerdict {
        connected: generated.order() == action.group.order(),
        generated,
        swaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dartgraph::{find_isomorphism, EdgeKind, GraphBuilder};
    use crate::voltage::bicoset_spec;

    fn cycle(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for i in 0..n {
            b.add_edge(i, (i + 1) % n);
        }
        b.build().unwrap()
    }

    fn rotation(n: usize) -> Perm {
        Perm::from_cycles(n, &[(0..n).collect()]).unwrap()
    }

    fn reflection(n: usize) -> Perm {
        Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap()
    }

    fn k23() -> Graph {
        let mut b = GraphBuilder::new(5);
        for u in 0..2 {
            for v in 2..5 {
                b.add_edge(u, v);
            }
        }
        b.build().unwrap()
    }

    /// Z6 acting on K_{2,3}: the generator swaps the two sides' parts cyclically.
    fn k23_z6() -> ActionGroup {
        // vertex perm (0 1)(2 3 4) has order 6
        let p = Perm::parse("(1 2)(3 4 5)", 5).unwrap();
        ActionGroup::from_vertex_permutations(k23(), &[p]).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let rot = ActionGroup::from_vertex_permutations(cycle(6), &[rotation(6)]).unwrap();
        let q = quotient_graph(&rot).unwrap();
        assert_eq!(q.graph.vertex_count(), 1);
        assert_eq!(q.graph.dart_count(), 2);
        assert!(q.graph.is_loop(0));

        let dih = ActionGroup::from_vertex_permutations(cycle(6), &[rotation(6), reflection(6)]).unwrap();
        assert_eq!(dih.group().order(), 12);
        let q = quotient_graph(&dih).unwrap();
        assert_eq!(q.graph.dart_count(), 1);
        assert!(q.graph.is_semi_edge(0));

        let triv = ActionGroup::new(cycle(6), vec![]).unwrap();
        let q = quotient_graph(&triv).unwrap();
        assert_eq!(q.graph, cycle(6));
    }

    #[test]
    fn rejects_non_automorphisms() {
        let g = cycle(4);
        // swaps two vertices without moving darts
        let bad = Perm::parse("(1 2)", 12).unwrap();
        assert!(matches!(ActionGroup::new(g.clone(), vec![bad]), Err(QuotientError::NotAnAction(_))));
        let swap_sorts = Perm::parse("(1 5)", 12).unwrap();
        assert!(ActionGroup::new(g.clone(), vec![swap_sorts]).is_err());
        let not_adjacent = Perm::parse("(1 2)", 4).unwrap();
        assert!(ActionGroup::from_vertex_permutations(g, &[not_adjacent]).is_err());
    }

    #[test]
    fn transversal_examples() {
        let rot = ActionGroup::from_vertex_permutations(cycle(6), &[rotation(6)]).unwrap();
        let q = quotient_graph(&rot).unwrap();
        let t = choose_transversal(&rot, &q).unwrap();
        assert_eq!(t.vertices, vec![0]);
        assert_eq!(t.darts.len(), 2);
        assert!(t.darts.iter().all(|&d| rot.graph().beg(d) == 0));
        assert_eq!(t.partner, vec![1, 0]);
        assert!(t.zeta.iter().all(|z| !z.is_identity()));

        let k = k23_z6();
        let q = quotient_graph(&k).unwrap();
        assert_eq!(q.graph.vertex_count(), 2);
        let t = choose_transversal(&k, &q).unwrap();
        assert_eq!(t.darts.len(), 2);
        assert!(t.zeta.iter().all(Perm::is_identity));

        let triv = ActionGroup::new(cycle(4), vec![]).unwrap();
        let q = quotient_graph(&triv).unwrap();
        let t = choose_transversal(&triv, &q).unwrap();
        assert_eq!(t.vertices, vec![0, 1, 2, 3]);
        assert!(t.zeta.iter().all(Perm::is_identity));
    }

    #[test]
    fn reconstruct_examples() {
        for action in [
            ActionGroup::from_vertex_permutations(cycle(6), &[rotation(6)]).unwrap(),
            ActionGroup::from_vertex_permutations(cycle(6), &[rotation(6), reflection(6)]).unwrap(),
            k23_z6(),
            ActionGroup::new(cycle(5), vec![]).unwrap(),
        ] {
            let r = reconstruct(&action).unwrap();
            assert!(is_faithful_gvg(&r.gvg));
            let c = Cover::build(&r.gvg).unwrap();
            let iso = r.isomorphism(&c);
            assert!(iso.is_isomorphism(action.graph(), c.graph()));
            assert!(find_isomorphism(action.graph(), c.graph()).unwrap().is_some());
        }
    }

    #[test]
    fn k23_reconstruction_matches_bicoset() {
        let k = k23_z6();
        let r = reconstruct(&k).unwrap();
        let g = k.group();
        let gen = g.generators()[0].clone();
        let left = Group::generate(g.degree(), vec![gen.pow(2)]).unwrap();
        let right = Group::generate(g.degree(), vec![gen.pow(3)]).unwrap();
        let bic = bicoset_spec(g, &left, &right).unwrap();
        // vertex 0 has weight of order 3, vertex 1 of order 2
        assert_eq!(r.gvg.vertex_weights().iter().map(Group::order).collect::<Vec<_>>(), vec![3, 2]);
        assert_eq!(r.gvg.vertex_weight(0), bic.vertex_weight(0));
        assert_eq!(r.gvg.vertex_weight(1), bic.vertex_weight(1));
        assert!(r.gvg.dart_weights().iter().all(Group::is_trivial));
    }

    #[test]
    fn faithfulness() {
        let (g, _) = crate::voltage::fixtures::cyclic(3);
        let mut b = GraphBuilder::new(1);
        b.add_edge(0, 0);
        let f = GenVoltageGraph::new(
            b.build().unwrap(),
            g.clone(),
            vec![g.clone()],
            vec![g.clone(), g.clone()],
            vec![Perm::identity(3), Perm::identity(3)],
        )
        .unwrap();
        assert!(!is_faithful_gvg(&f));
        assert!(is_faithful_gvg(&crate::voltage::fixtures::twisted()));
    }

    #[test]
    fn generation_examples() {
        let k = k23_z6();
        let q = quotient_graph(&k).unwrap();
        let t = choose_transversal(&k, &q).unwrap();
        let v = generation_connectivity_test(&k, &t).unwrap();
        assert!(v.connected);
        assert!(v.swaps.is_empty());

        let rot = ActionGroup::from_vertex_permutations(cycle(6), &[rotation(6)]).unwrap();
        let q = quotient_graph(&rot).unwrap();
        let t = choose_transversal(&rot, &q).unwrap();
        let v = generation_connectivity_test(&rot, &t).unwrap();
        assert!(v.connected);
        assert_eq!(v.swaps.len(), 2);
    }

    #[test]
    fn disconnected_quotient_is_rejected() {
        // two hexagons, rotation inside the first only
        let mut b = GraphBuilder::new(12);
        for i in 0..6 {
            b.add_edge(i, (i + 1) % 6);
            b.add_edge(6 + i, 6 + (i + 1) % 6);
        }
        let g = b.build().unwrap();
        let images: Vec<usize> = (0..12).map(|i| if i < 6 { (i + 1) % 6 } else { i }).collect();
        let p = Perm::from_images(images).unwrap();
        let a = ActionGroup::from_vertex_permutations(g, &[p]).unwrap();
        let q = quotient_graph(&a).unwrap();
        assert!(!q.graph.is_connected());
        assert_eq!(choose_transversal(&a, &q).unwrap_err(), QuotientError::QuotientNotConnected);
        assert_eq!(q.graph.classify_edges().count(EdgeKind::Loop), 1);
    }

    #[test]
    fn action_file_round_trip() {
        let rot = ActionGroup::from_vertex_permutations(cycle(4), &[rotation(4)]).unwrap();
        let text = rot.format_generators();
        assert!(text.starts_with("(v0 v1 v2 v3)"));
        let back = ActionGroup::parse(cycle(4), &text).unwrap();
        assert_eq!(back.group(), rot.group());
        assert!(matches!(
            ActionGroup::parse(cycle(4), "(v0 v9)"),
            Err(QuotientError::Parse { line: 1, .. })
        ));
    }
}
