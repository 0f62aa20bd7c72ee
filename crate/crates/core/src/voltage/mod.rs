//! Generalised voltage graphs `(base, G, weights, voltages)`.
//!
//! Every vertex and dart of the base graph carries a subgroup of `G` (its
//! weight) and every dart carries an element of `G` (its voltage). A valid
//! table satisfies, for every dart `x`:
//!
//! 1. `weight(x) <= weight(beg x)`,
//! 2. `weight(x) = volt(x)^-1 * weight(inv x) * volt(x)`,
//! 3. `volt(inv x) * volt(x)` lies in `weight(x)`,
//!
//! and the base graph is connected. Products are written in application
//! order, matching [`Perm`]'s right action.

mod spec;

pub use spec::{GroupSpec, SpecFile, WeightsSpec, SPEC_SCHEMA};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::dartgraph::{Graph, GraphBuilder, GraphError, Walk};
use crate::permgrp::{Group, GroupError, Perm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VoltageError {
    #[error("weight of dart {dart} is not contained in the weight of its initial vertex")]
    Eq1Violation { dart: usize },
    #[error("weight of dart {dart} is not the conjugate of its inverse's weight by its voltage")]
    Eq2Violation { dart: usize },
    #[error("volt(inv x) * volt(x) is not in the weight of dart x = {dart}")]
    Eq3Violation { dart: usize },
    #[error("base graph is not connected")]
    BaseNotConnected,
    #[error("expected {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("weight of {0} is not a subgroup of the voltage group")]
    WeightNotSubgroup(Element),
    #[error("voltage of dart {dart} is not in the voltage group")]
    VoltageNotInGroup { dart: usize },
    #[error("spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A vertex or a dart of a base graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Dart(usize),
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Dart(x) => write!(f, "dart {x}"),
        }
    }
}

/// A validated generalised voltage graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenVoltageGraph {
    base: Graph,
    group: Group,
    vertex_weights: Vec<Group>,
    dart_weights: Vec<Group>,
    volt: Vec<Perm>,
}

impl GenVoltageGraph {
    /// Builds and validates. Invalid tables are rejected, never repaired.
    pub fn new(
        base: Graph,
        group: Group,
        vertex_weights: Vec<Group>,
        dart_weights: Vec<Group>,
        volt: Vec<Perm>,
    ) -> Result<Self, VoltageError> {
        let gvg = Self::from_parts_unchecked(base, group, vertex_weights, dart_weights, volt);
        gvg.validate()?;
        Ok(gvg)
    }

    /// Assembles the tables without checking them; see [`Self::validate`].
    pub fn from_parts_unchecked(
        base: Graph,
        group: Group,
        vertex_weights: Vec<Group>,
        dart_weights: Vec<Group>,
        volt: Vec<Perm>,
    ) -> Self {
        GenVoltageGraph {
            base,
            group,
            vertex_weights,
            dart_weights,
            volt,
        }
    }

    /// Checks table sizes, subgroup membership, connectivity of the base,
    /// then the three dart conditions in ascending dart order.
    pub fn validate(&self) -> Result<(), VoltageError> {
        let g = &self.base;
        let counts = [
            ("vertex weights", g.vertex_count(), self.vertex_weights.len()),
            ("dart weights", g.dart_count(), self.dart_weights.len()),
            ("voltages", g.dart_count(), self.volt.len()),
        ];
        for (what, expected, found) in counts {
            if expected != found {
                return Err(VoltageError::CountMismatch {
                    what,
                    expected,
                    found,
                });
            }
        }
        for v in g.vertices() {
            if !self.vertex_weights[v].is_subgroup_of(&self.group) {
                return Err(VoltageError::WeightNotSubgroup(Element::Vertex(v)));
            }
        }
        for x in g.darts() {
            if !self.dart_weights[x].is_subgroup_of(&self.group) {
                return Err(VoltageError::WeightNotSubgroup(Element::Dart(x)));
            }
            if !self.group.contains(&self.volt[x]) {
                return Err(VoltageError::VoltageNotInGroup { dart: x });
            }
        }
        if !g.is_connected() {
            return Err(VoltageError::BaseNotConnected);
        }
        for x in g.darts() {
            let wx = &self.dart_weights[x];
            if !wx.is_subgroup_of(&self.vertex_weights[g.beg(x)]) {
                return Err(VoltageError::Eq1Violation { dart: x });
            }
            let y = g.inv(x);
            if self.dart_weights[y].conjugate(&self.volt[x])? != *wx {
                return Err(VoltageError::Eq2Violation { dart: x });
            }
            if !wx.contains(&(&self.volt[y] * &self.volt[x])) {
                return Err(VoltageError::Eq3Violation { dart: x });
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn vertex_weight(&self, v: usize) -> &Group {
        &self.vertex_weights[v]
    }

    pub fn dart_weight(&self, x: usize) -> &Group {
        &self.dart_weights[x]
    }

    pub fn weight(&self, z: Element) -> &Group {
        match z {
            Element::Vertex(v) => &self.vertex_weights[v],
            Element::Dart(x) => &self.dart_weights[x],
        }
    }

    pub fn vertex_weights(&self) -> &[Group] {
        &self.vertex_weights
    }

    pub fn dart_weights(&self) -> &[Group] {
        &self.dart_weights
    }

    pub fn volt(&self, x: usize) -> &Perm {
        &self.volt[x]
    }

    pub fn voltages(&self) -> &[Perm] {
        &self.volt
    }

    pub fn into_parts(self) -> (Graph, Group, Vec<Group>, Vec<Group>, Vec<Perm>) {
        (
            self.base,
            self.group,
            self.vertex_weights,
            self.dart_weights,
            self.volt,
        )
    }

    /// `|weight(beg x) : weight(x)|`, the number of cover darts above `x` at
    /// each vertex above `beg x`.
    pub fn lambda(&self, x: usize) -> usize {
        self.vertex_weights[self.base.beg(x)].order() / self.dart_weights[x].order()
    }

    /// `|G : weight(z)|`.
    pub fn fibre_size(&self, z: Element) -> usize {
        self.group.order() / self.weight(z).order()
    }

    /// Valence of every cover vertex above `v`.
    pub fn lifted_valence(&self, v: usize) -> usize {
        self.base.darts_at(v).iter().map(|&x| self.lambda(x)).sum()
    }

    /// Voltage of a walk: the set product
    /// `volt(x_{n-1}) w(v_{n-1}) ... volt(x_0) w(v_0)` where `v_i = beg x_i`.
    /// The empty walk at `v` has voltage `w(v)`.
    pub fn walk_voltage(&self, walk: &Walk) -> Result<WalkVoltage, VoltageError> {
        let walk = Walk::new(&self.base, walk.start(), walk.darts().to_vec())?;
        let start_weight = &self.vertex_weights[walk.start()];
        let mut set: BTreeSet<Perm> = if walk.is_empty() {
            start_weight.elements().iter().cloned().collect()
        } else {
            BTreeSet::from([self.group.identity()])
        };
        for &x in walk.darts() {
            let w = &self.vertex_weights[self.base.beg(x)];
            let mut next = BTreeSet::new();
            for h in w.elements() {
                let zh = &self.volt[x] * h;
                for s in &set {
                    next.insert(&zh * s);
                }
            }
            set = next;
        }
        Ok(WalkVoltage::new(set.into_iter().collect(), start_weight))
    }

    /// Rewrites `volt(inv x0) := volt(x0)^-1` on every edge that is not a
    /// semi-edge, with `x0` the smaller dart. The cover is unchanged label
    /// for label.
    pub fn normalize_inverse_pairs(&self) -> GenVoltageGraph {
        let mut volt = self.volt.clone();
        for x in self.base.darts() {
            let y = self.base.inv(x);
            if x < y {
                volt[y] = volt[x].inverse();
            }
        }
        GenVoltageGraph {
            volt,
            ..self.clone()
        }
    }

    /// Whether `volt(inv x) = volt(x)^-1` for every dart off semi-edges.
    pub fn has_inverse_paired_voltages(&self) -> bool {
        self.base.darts().all(|x| {
            let y = self.base.inv(x);
            x == y || (&self.volt[y] * &self.volt[x]).is_identity()
        })
    }

    /// A copy with different voltages, validated.
    pub fn with_voltages(&self, volt: Vec<Perm>) -> Result<GenVoltageGraph, VoltageError> {
        GenVoltageGraph::new(
            self.base.clone(),
            self.group.clone(),
            self.vertex_weights.clone(),
            self.dart_weights.clone(),
            volt,
        )
    }
}

/// One vertex with a single semi-edge `s`: `weight(vertex) = vertex_stab`,
/// `weight(s) = dart_stab`, `volt(s) = a`.
pub fn coset_graph_spec(
    group: &Group,
    vertex_stab: &Group,
    dart_stab: &Group,
    a: &Perm,
) -> Result<GenVoltageGraph, VoltageError> {
    let mut b = GraphBuilder::new(1);
    b.add_semi_edge(0);
    GenVoltageGraph::new(
        b.build()?,
        group.clone(),
        vec![vertex_stab.clone()],
        vec![dart_stab.clone()],
        vec![a.clone()],
    )
}

/// `K2` with vertex weights `left`, `right`, both darts weighted by
/// `left ∩ right` and trivial voltages.
pub fn bicoset_spec(
    group: &Group,
    left: &Group,
    right: &Group,
) -> Result<GenVoltageGraph, VoltageError> {
    let mut b = GraphBuilder::new(2);
    b.add_edge(0, 1);
    let meet = left.intersection(right);
    GenVoltageGraph::new(
        b.build()?,
        group.clone(),
        vec![left.clone(), right.clone()],
        vec![meet.clone(), meet],
        vec![group.identity(), group.identity()],
    )
}

/// The voltage of a walk: an explicit element set which is a union of cosets
/// `z * w(v_0)` of the start vertex weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkVoltage {
    elements: Vec<Perm>,
    coset_subgroup: Group,
    coset_reps: Vec<Perm>,
}

impl WalkVoltage {
    fn new(elements: Vec<Perm>, coset_subgroup: &Group) -> Self {
        let mut seen = BTreeSet::new();
        let mut coset_reps = Vec::new();
        for z in &elements {
            if seen.contains(z) {
                continue;
            }
            coset_reps.push(z.clone());
            for h in coset_subgroup.elements() {
                seen.insert(z * h);
            }
        }
        WalkVoltage {
            elements,
            coset_subgroup: coset_subgroup.clone(),
            coset_reps,
        }
    }

    /// Sorted elements.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// The start vertex weight absorbed on the right.
    pub fn coset_subgroup(&self) -> &Group {
        &self.coset_subgroup
    }

    /// Least element of each coset `z * w(v_0)`, ascending.
    pub fn coset_representatives(&self) -> &[Perm] {
        &self.coset_reps
    }

    /// `len() == coset count * |w(v_0)|`.
    pub fn is_union_of_cosets(&self) -> bool {
        self.coset_reps.len() * self.coset_subgroup.order() == self.elements.len()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn perm(s: &str) -> Perm {
        Perm::parse(s, 6).unwrap()
    }

    pub fn sigma() -> Perm {
        perm("(1 2 3)(5 4 6)")
    }

    pub fn rho() -> Perm {
        perm("(2 3)(4 5)")
    }

    pub fn group6() -> Group {
        Group::generate(6, vec![sigma(), rho()]).unwrap()
    }

    /// K2 with weights H = <rho>, K = <rho sigma> and the given voltages.
    pub fn two_fixture(zx: Perm, zy: Perm) -> Result<GenVoltageGraph, VoltageError> {
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1);
        let h = Group::generate(6, vec![rho()]).unwrap();
        let k = Group::generate(6, vec![&rho() * &sigma()]).unwrap();
        GenVoltageGraph::new(
            b.build().unwrap(),
            group6(),
            vec![h, k],
            vec![Group::trivial(6), Group::trivial(6)],
            vec![zx, zy],
        )
    }

    pub fn twisted() -> GenVoltageGraph {
        two_fixture(sigma(), sigma().pow(2)).unwrap()
    }

    pub fn untwisted() -> GenVoltageGraph {
        two_fixture(Perm::identity(6), Perm::identity(6)).unwrap()
    }

    pub fn cyclic(n: usize) -> (Group, Perm) {
        let g = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
        (Group::generate(n, vec![g.clone()]).unwrap(), g)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(two_fixture(sigma(), sigma().pow(2)).is_ok());
        assert_eq!(
            two_fixture(sigma(), sigma()),
            Err(VoltageError::Eq3Violation { dart: 0 })
        );
        // classical voltages on a dipole with three edges
        let (z5, g) = cyclic(5);
        let mut b = GraphBuilder::new(2);
        for _ in 0..3 {
            b.add_edge(0, 1);
        }
        let t = Group::trivial(5);
        let volt = vec![
            g.clone(),
            g.inverse(),
            g.pow(2),
            g.pow(3),
            Perm::identity(5),
            Perm::identity(5),
        ];
        assert!(GenVoltageGraph::new(b.build().unwrap(), z5, vec![t.clone(); 2], vec![t; 6], volt)
            .is_ok());
    }

    #[test]
    fn validate_reports_each_condition() {
        let g = group6();
        let h = Group::generate(6, vec![rho()]).unwrap();
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1);
        let k2 = b.build().unwrap();
        let id = Perm::identity(6);
        let t = Group::trivial(6);
        // dart weight H at a vertex weighted 1
        let e1 = GenVoltageGraph::new(
            k2.clone(),
            g.clone(),
            vec![t.clone(), h.clone()],
            vec![h.clone(), h.clone()],
            vec![id.clone(), id.clone()],
        );
        assert_eq!(e1, Err(VoltageError::Eq1Violation { dart: 0 }));
        // weights H on both darts, but sigma does not normalise H
        let e2 = GenVoltageGraph::new(
            k2.clone(),
            g.clone(),
            vec![h.clone(), h.clone()],
            vec![h.clone(), h.clone()],
            vec![sigma(), sigma().inverse()],
        );
        assert_eq!(e2, Err(VoltageError::Eq2Violation { dart: 0 }));
        let mut b = GraphBuilder::new(2);
        b.add_semi_edge(0);
        let e3 = GenVoltageGraph::new(
            b.build().unwrap(),
            g.clone(),
            vec![t.clone(), t.clone()],
            vec![t.clone()],
            vec![id.clone()],
        );
        assert_eq!(e3, Err(VoltageError::BaseNotConnected));
        let e4 = GenVoltageGraph::new(k2, g, vec![t.clone()], vec![t.clone(); 2], vec![id; 2]);
        assert!(matches!(e4, Err(VoltageError::CountMismatch { .. })));
    }

    #[test]
    fn lambda_and_fibre_sizes() {
        let f = twisted();
        assert_eq!(f.lambda(0), 2);
        assert_eq!(f.fibre_size(Element::Vertex(0)), 3);
        assert_eq!(f.fibre_size(Element::Dart(0)), 6);
        assert_eq!(f.lifted_valence(0), 2);

        let (z6, g) = cyclic(6);
        let l = Group::generate(6, vec![g.pow(2)]).unwrap();
        let r = Group::generate(6, vec![g.pow(3)]).unwrap();
        let bic = bicoset_spec(&z6, &l, &r).unwrap();
        assert_eq!(bic.lambda(0), 3);
        assert_eq!(bic.lambda(1), 2);
        let full = bicoset_spec(&z6, &z6, &z6).unwrap();
        assert_eq!(full.lambda(0), 1);
        assert_eq!(full.fibre_size(Element::Vertex(1)), 1);
    }

    #[test]
    fn walk_voltage_examples() {
        let f = twisted();
        let h = f.vertex_weight(0).clone();
        let w = f.walk_voltage(&Walk::new(f.base(), 0, vec![0]).unwrap()).unwrap();
        let mut expected = vec![sigma(), &sigma() * &rho()];
        expected.sort();
        assert_eq!(w.elements(), expected.as_slice());
        assert!(w.is_union_of_cosets());

        let empty = f.walk_voltage(&Walk::empty(0)).unwrap();
        assert_eq!(empty.elements(), h.elements());

        // (x, y) closed at u: sigma^2 K sigma H
        let closed = f.walk_voltage(&Walk::new(f.base(), 0, vec![0, 1]).unwrap()).unwrap();
        let k = f.vertex_weight(1);
        let mut oracle = BTreeSet::new();
        for a in k.elements() {
            for b in h.elements() {
                oracle.insert(&(&(&sigma().pow(2) * a) * &sigma()) * b);
            }
        }
        assert_eq!(closed.elements(), oracle.into_iter().collect::<Vec<_>>().as_slice());
        assert_eq!(closed.len() % h.order(), 0);
    }

    #[test]
    fn inverse_pair_rewrite() {
        let f = twisted();
        assert_eq!(f.normalize_inverse_pairs(), f);
        assert!(f.has_inverse_paired_voltages());

        // weights of order 2 on the darts let volt(y) absorb an extra factor
        let (z2, a) = cyclic(2);
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1);
        let k2 = b.build().unwrap();
        let gvg = GenVoltageGraph::new(
            k2,
            z2.clone(),
            vec![z2.clone(), z2.clone()],
            vec![z2.clone(), z2.clone()],
            vec![Perm::identity(2), a.clone()],
        )
        .unwrap();
        assert!(!gvg.has_inverse_paired_voltages());
        let n = gvg.normalize_inverse_pairs();
        assert!(n.validate().is_ok());
        assert_eq!(n.volt(1), &Perm::identity(2));

        // semi-edges are left alone
        let s = coset_graph_spec(&z2, &Group::trivial(2), &Group::trivial(2), &a).unwrap();
        assert_eq!(s.normalize_inverse_pairs(), s);
    }

    #[test]
    fn coset_graph_conditions() {
        let (z2, a) = cyclic(2);
        let t = Group::trivial(2);
        assert!(coset_graph_spec(&z2, &t, &t, &a).is_ok());
        assert!(coset_graph_spec(&z2, &t, &t, &Perm::identity(2)).is_ok());
        // a*a must lie in the dart weight
        let (z4, c) = cyclic(4);
        let t4 = Group::trivial(4);
        assert_eq!(
            coset_graph_spec(&z4, &t4, &t4, &c),
            Err(VoltageError::Eq3Violation { dart: 0 })
        );
        // dart weight must be normalised by a
        let s3 = Group::generate(
            3,
            vec![Perm::parse("(1 2 3)", 3).unwrap(), Perm::parse("(1 2)", 3).unwrap()],
        )
        .unwrap();
        let refl = Group::generate(3, vec![Perm::parse("(1 2)", 3).unwrap()]).unwrap();
        assert_eq!(
            coset_graph_spec(&s3, &s3, &refl, &Perm::parse("(1 3)", 3).unwrap()),
            Err(VoltageError::Eq2Violation { dart: 0 })
        );
    }
}
