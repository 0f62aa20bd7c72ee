//! Connectivity and simplicity of a cover, decided from the voltage graph
//! alone without building the cover.

use crate::dartgraph::SpanningTree;
use crate::normalize::t_normalize;
use crate::permgrp::{Group, GroupPart, Perm};
use crate::voltage::GenVoltageGraph;

/// Outcome of the connectivity decision.
#[derive(Clone, Debug)]
pub struct ConnectivityVerdict {
    pub connected: bool,
    /// Subgroup generated by the off-tree voltages and all vertex weights of
    /// the tree-normalised graph.
    pub generated: Group,
    pub tree: SpanningTree,
    pub normalised: GenVoltageGraph,
}

impl ConnectivityVerdict {
    /// `|G : generated|`, which is the number of components of the cover.
    pub fn index(&self) -> usize {
        self.normalised.group().order() / self.generated.order()
    }
}

/// Normalises along the breadth-first spanning tree from vertex 0, then
/// checks whether the off-tree voltages together with the vertex weights
/// generate `G`.
pub fn is_connected_by_voltage(gvg: &GenVoltageGraph) -> ConnectivityVerdict {
    let tree = gvg
        .base()
        .spanning_tree(0)
        .expect("validated base graphs are connected");
    let normalised = t_normalize(gvg, &tree)
        .expect("breadth-first tree spans the base")
        .normalised;
    let base = normalised.base();
    let off_tree: Vec<&Perm> = base
        .darts()
        .filter(|&x| !tree.contains_dart(x))
        .map(|x| normalised.volt(x))
        .collect();
    let mut parts: Vec<GroupPart<'_>> = off_tree.into_iter().map(GroupPart::Element).collect();
    parts.extend(normalised.vertex_weights().iter().map(GroupPart::Subgroup));
    let generated = normalised
        .group()
        .generated_by(&parts)
        .expect("voltages and weights lie in the group");
    ConnectivityVerdict {
        connected: generated.order() == normalised.group().order(),
        generated,
        tree,
        normalised,
    }
}

/// Two darts `x`, `y` with common ends and `h` in the weight of `beg x` such
/// that the cover darts `(x, w(x) g)` and `(y, w(y) h g)` are distinct and
/// parallel for every `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelWitness {
    pub x: usize,
    pub y: usize,
    pub h: Perm,
}

/// Searches for `x`, `y` with the same ends and `h` in `w(beg x)` with
/// `volt(y) h volt(x)^-1` in `w(term x)`, where `x != y` or `h` is outside
/// `w(x)`.
pub fn has_parallel_darts_by_voltage(gvg: &GenVoltageGraph) -> Option<ParallelWitness> {
    let base = gvg.base();
    for x in base.darts() {
        let (u, w) = (base.beg(x), base.term(x));
        let zx_inv = gvg.volt(x).inverse();
        for &y in base.darts_at(u) {
            if base.term(y) != w {
                continue;
            }
            for h in gvg.vertex_weight(u).elements() {
                if x == y && gvg.dart_weight(x).contains(h) {
                    continue;
                }
                if gvg.vertex_weight(w).contains(&(&(gvg.volt(y) * h) * &zx_inv)) {
                    return Some(ParallelWitness {
                        x,
                        y,
                        h: h.clone(),
                    });
                }
            }
        }
    }
    None
}

/// A semi-edge `x` of the base with `volt(x)` in `w(x)`; its lifts include
/// semi-edges.
pub fn has_semiedge_by_voltage(gvg: &GenVoltageGraph) -> Option<usize> {
    let base = gvg.base();
    base.darts()
        .find(|&x| base.is_semi_edge(x) && gvg.dart_weight(x).contains(gvg.volt(x)))
}

/// The first failing simplicity condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityViolation {
    /// `volt(x) h volt(x)^-1` in `w(term x)` for some `h` in `w(beg x)`
    /// outside `w(x)`: two darts above `x` share both ends.
    SameDart { dart: usize, h: Perm },
    /// Distinct base darts whose lifts are parallel.
    DistinctDarts(ParallelWitness),
    SemiEdge { dart: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub violation: Option<SimplicityViolation>,
}

/// Checks the three simplicity conditions in turn.
pub fn simplicity_by_voltage(gvg: &GenVoltageGraph) -> SimplicityVerdict {
    let violation = same_dart_violation(gvg)
        .or_else(|| distinct_dart_violation(gvg))
        .or_else(|| {
            has_semiedge_by_voltage(gvg).map(|dart| SimplicityViolation::SemiEdge { dart })
        });
    SimplicityVerdict {
        simple: violation.is_none(),
        violation,
    }
}

pub fn is_simple_by_voltage(gvg: &GenVoltageGraph) -> bool {
    simplicity_by_voltage(gvg).simple
}

fn same_dart_violation(gvg: &GenVoltageGraph) -> Option<SimplicityViolation> {
    let base = gvg.base();
    for x in base.darts() {
        let z = gvg.volt(x);
        let zi = z.inverse();
        let target = gvg.vertex_weight(base.term(x));
        for h in gvg.vertex_weight(base.beg(x)).elements() {
            if gvg.dart_weight(x).contains(h) {
                continue;
            }
            if target.contains(&(&(z * h) * &zi)) {
                return Some(SimplicityViolation::SameDart {
                    dart: x,
                    h: h.clone(),
                });
            }
        }
    }
    None
}

fn distinct_dart_violation(gvg: &GenVoltageGraph) -> Option<SimplicityViolation> {
    let base = gvg.base();
    for x in base.darts() {
        let (u, w) = (base.beg(x), base.term(x));
        let zx_inv = gvg.volt(x).inverse();
        for &y in base.darts_at(u) {
            if y == x || base.term(y) != w {
                continue;
            }
            for h in gvg.vertex_weight(u).elements() {
                if gvg.vertex_weight(w).contains(&(&(gvg.volt(y) * h) * &zx_inv)) {
                    return Some(SimplicityViolation::DistinctDarts(ParallelWitness {
                        x,
                        y,
                        h: h.clone(),
                    }));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::Cover;
    use crate::dartgraph::GraphBuilder;
    use crate::voltage::coset_graph_spec;
    use crate::voltage::fixtures::*;

    #[test]
    fn fixture_connectivity() {
        let v = is_connected_by_voltage(&untwisted());
        assert!(v.connected);
        assert_eq!(v.index(), 1);

        let v = is_connected_by_voltage(&twisted());
        assert!(!v.connected);
        assert_eq!(v.generated.order(), 2);
        assert_eq!(v.index(), 3);
        let f = twisted();
        let c = Cover::build(&f).unwrap();
        assert_eq!(c.graph().components().count, 3);
    }

    #[test]
    fn full_weight_single_vertex_is_connected() {
        let (z4, g) = cyclic(4);
        let mut b = GraphBuilder::new(1);
        b.add_edge(0, 0);
        let f = GenVoltageGraph::new(
            b.build().unwrap(),
            z4.clone(),
            vec![z4.clone()],
            vec![Group::trivial(4); 2],
            vec![g.clone(), g.inverse()],
        )
        .unwrap();
        assert!(is_connected_by_voltage(&f).connected);
    }

    #[test]
    fn fixture_simplicity() {
        assert!(is_simple_by_voltage(&untwisted()));
        assert!(has_parallel_darts_by_voltage(&untwisted()).is_none());
        let s = simplicity_by_voltage(&twisted());
        assert!(!s.simple);
        assert!(has_parallel_darts_by_voltage(&twisted()).is_some());
    }

    #[test]
    fn semi_edge_decisions() {
        let (z2, a) = cyclic(2);
        let t = Group::trivial(2);
        let k2 = coset_graph_spec(&z2, &t, &t, &a).unwrap();
        assert_eq!(has_semiedge_by_voltage(&k2), None);
        assert!(is_simple_by_voltage(&k2));
        let two_semis = coset_graph_spec(&z2, &t, &t, &Perm::identity(2)).unwrap();
        assert_eq!(has_semiedge_by_voltage(&two_semis), Some(0));
        assert_eq!(
            simplicity_by_voltage(&two_semis).violation,
            Some(SimplicityViolation::SemiEdge { dart: 0 })
        );
        assert_eq!(has_semiedge_by_voltage(&untwisted()), None);
    }

    #[test]
    fn loop_with_trivial_weights() {
        // a loop with voltage g in Z_n lifts to an n-cycle; n = 2 gives a
        // double edge, n = 1 gives loops
        for (n, simple) in [(1, false), (2, false), (3, true), (5, true)] {
            let (zn, g) = cyclic(n);
            let mut b = GraphBuilder::new(1);
            b.add_edge(0, 0);
            let f = GenVoltageGraph::new(
                b.build().unwrap(),
                zn,
                vec![Group::trivial(n)],
                vec![Group::trivial(n); 2],
                vec![g.clone(), g.inverse()],
            )
            .unwrap();
            assert_eq!(is_simple_by_voltage(&f), simple, "n = {n}");
            let c = Cover::build(&f).unwrap();
            assert_eq!(c.graph().is_simple(), simple);
        }
    }
}
