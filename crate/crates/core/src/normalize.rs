//! Moving voltages off a spanning tree.
//!
//! Shifting a dart `x` from `u` to `v != u` left-multiplies every label above
//! `v` by `volt(x)^-1`: weights at `v` and at darts leaving `v` are
//! conjugated by `volt(x)`, darts leaving `v` get `volt(y) volt(x)`, darts
//! entering `v` get `volt(x)^-1 volt(y)`, and loops at `v` get both. The
//! result has identity voltage on `x` and a cover isomorphic to the original
//! by a map that keeps every fibre in place.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cover::{Cover, CoverError};
use crate::dartgraph::{GraphMorphism, SpanningTree};
use crate::permgrp::Perm;
use crate::voltage::{GenVoltageGraph, VoltageError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("dart {dart} is a loop or semi-edge and cannot be shifted")]
    LoopOrSemiEdge { dart: usize },
    #[error("no dart {dart} in the base graph")]
    NoSuchDart { dart: usize },
    #[error("not a spanning tree of the base graph")]
    NotASpanningTree,
    #[error("witness check failed: {0}")]
    WitnessFailed(String),
    #[error(transparent)]
    Voltage(#[from] VoltageError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// A cover isomorphism `(z, w(z) g) -> (z, w'(z) t g)` where the multiplier
/// `t` depends only on the base vertex at which `z` begins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreIsomorphism {
    vertex_multipliers: Vec<Perm>,
}

impl FibreIsomorphism {
    pub fn identity(vertex_count: usize, degree: usize) -> Self {
        FibreIsomorphism {
            vertex_multipliers: vec![Perm::identity(degree); vertex_count],
        }
    }

    pub fn multiplier(&self, v: usize) -> &Perm {
        &self.vertex_multipliers[v]
    }

    pub fn multipliers(&self) -> &[Perm] {
        &self.vertex_multipliers
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FibreIsomorphism) -> FibreIsomorphism {
        FibreIsomorphism {
            vertex_multipliers: self
                .vertex_multipliers
                .iter()
                .zip(&next.vertex_multipliers)
                .map(|(t, s)| s * t)
                .collect(),
        }
    }

    /// The induced map between built covers, computed label by label.
    pub fn morphism(&self, before: &Cover<'_>, after: &Cover<'_>) -> GraphMorphism {
        let base = before.source().base();
        let vertex_map = (0..before.graph().vertex_count())
            .map(|i| {
                let (v, g) = before.vertex_label(i);
                after.vertex_of(v, &(&self.vertex_multipliers[v] * g))
            })
            .collect();
        let dart_map = (0..before.graph().dart_count())
            .map(|i| {
                let (x, g) = before.dart_label(i);
                after.dart_of(x, &(&self.vertex_multipliers[base.beg(x)] * g))
            })
            .collect();
        GraphMorphism {
            vertex_map,
            dart_map,
        }
    }

    /// Builds the induced map and checks that it is an isomorphism sending
    /// each fibre onto the fibre above the same base element.
    pub fn verify(&self, before: &Cover<'_>, after: &Cover<'_>) -> Result<GraphMorphism, NormalizeError> {
        let m = self.morphism(before, after);
        if !m.is_isomorphism(before.graph(), after.graph()) {
            return Err(NormalizeError::WitnessFailed("not a graph isomorphism".into()));
        }
        for (i, &j) in m.vertex_map.iter().enumerate() {
            if before.vertex_label(i).0 != after.vertex_label(j).0 {
                return Err(NormalizeError::WitnessFailed(format!(
                    "cover vertex {i} leaves its fibre"
                )));
            }
        }
        for (i, &j) in m.dart_map.iter().enumerate() {
            if before.dart_label(i).0 != after.dart_label(j).0 {
                return Err(NormalizeError::WitnessFailed(format!(
                    "cover dart {i} leaves its fibre"
                )));
            }
        }
        Ok(m)
    }
}

/// One shift along a dart.
#[derive(Clone, Debug)]
pub struct NormalisationStep {
    pub dart: usize,
    /// `term` of the shifted dart; the vertex whose labels move.
    pub head: usize,
    /// The voltage of the dart before the shift.
    pub conjugator: Perm,
    pub before: GenVoltageGraph,
    pub after: GenVoltageGraph,
    pub witness: FibreIsomorphism,
}

/// Shifts `dart` so that it and its inverse carry the identity.
pub fn shift_dart(gvg: &GenVoltageGraph, dart: usize) -> Result<NormalisationStep, NormalizeError> {
    let base = gvg.base();
    if dart >= base.dart_count() {
        return Err(NormalizeError::NoSuchDart { dart });
    }
    let (u, v) = (base.beg(dart), base.term(dart));
    if u == v {
        return Err(NormalizeError::LoopOrSemiEdge { dart });
    }
    let a = gvg.volt(dart).clone();
    let degree = gvg.group().degree();
    let mut witness = FibreIsomorphism::identity(base.vertex_count(), degree);
    witness.vertex_multipliers[v] = a.inverse();
    let t = &witness.vertex_multipliers;

    let mut vertex_weights = gvg.vertex_weights().to_vec();
    vertex_weights[v] = vertex_weights[v].conjugate(&a).map_err(VoltageError::from)?;
    let mut dart_weights = gvg.dart_weights().to_vec();
    for &y in base.darts_at(v) {
        dart_weights[y] = dart_weights[y].conjugate(&a).map_err(VoltageError::from)?;
    }
    let mut volt: Vec<Perm> = base
        .darts()
        .map(|y| {
            let (b, e) = (base.beg(y), base.term(y));
            if b != v && e != v {
                gvg.volt(y).clone()
            } else {
                &(&t[e] * gvg.volt(y)) * &t[b].inverse()
            }
        })
        .collect();
    // inverse-pair rewrite on the shifted edge; leaves the cover unchanged
    volt[base.inv(dart)] = volt[dart].inverse();

    let after = GenVoltageGraph::new(
        base.clone(),
        gvg.group().clone(),
        vertex_weights,
        dart_weights,
        volt,
    )?;
    Ok(NormalisationStep {
        dart,
        head: v,
        conjugator: a,
        before: gvg.clone(),
        after,
        witness,
    })
}

/// Which remaining leaf to peel next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LeafOrder {
    #[default]
    Least,
    Greatest,
}

/// Result of normalising along a spanning tree.
#[derive(Clone, Debug)]
pub struct TreeNormalisation {
    pub normalised: GenVoltageGraph,
    /// Composite witness from the input cover to the normalised cover.
    pub witness: FibreIsomorphism,
    /// Shifts in the order applied.
    pub steps: Vec<NormalisationStep>,
}

/// Normalises so every tree dart carries the identity, peeling least leaves.
pub fn t_normalize(gvg: &GenVoltageGraph, tree: &SpanningTree) -> Result<TreeNormalisation, NormalizeError> {
    t_normalize_with(gvg, tree, LeafOrder::Least)
}

/// Leaves other than the root are peeled repeatedly; the shifts are then
/// applied in reverse peeling order, each into the peeled leaf along its
/// tree dart. A shift into a leaf only touches darts at that leaf, so
/// earlier tree darts stay normalised.
pub fn t_normalize_with(
    gvg: &GenVoltageGraph,
    tree: &SpanningTree,
    order: LeafOrder,
) -> Result<TreeNormalisation, NormalizeError> {
    let base = gvg.base();
    if !tree.is_spanning_tree_of(base) {
        return Err(NormalizeError::NotASpanningTree);
    }
    let n = base.vertex_count();
    let root = tree.root();
    let parent = |w: usize| tree.parent_dart(w).map(|x| base.beg(x));
    let mut degree = vec![0usize; n];
    for w in base.vertices() {
        if let Some(p) = parent(w) {
            degree[w] += 1;
            degree[p] += 1;
        }
    }
    let mut leaves: BTreeSet<usize> = base
        .vertices()
        .filter(|&w| w != root && degree[w] == 1)
        .collect();
    let mut peeled = Vec::with_capacity(n.saturating_sub(1));
    while let Some(w) = match order {
        LeafOrder::Least => leaves.pop_first(),
        LeafOrder::Greatest => leaves.pop_last(),
    } {
        peeled.push(w);
        let p = parent(w).expect("non-root vertex has a parent");
        degree[p] -= 1;
        if p != root && degree[p] == 1 {
            leaves.insert(p);
        }
    }
    debug_assert_eq!(peeled.len() + 1, n);

    let mut current = gvg.clone();
    let mut witness = FibreIsomorphism::identity(n, gvg.group().degree());
    let mut steps = Vec::with_capacity(peeled.len());
    for &w in peeled.iter().rev() {
        let x = tree.parent_dart(w).expect("non-root vertex has a parent");
        let step = shift_dart(&current, x)?;
        witness = witness.then(&step.witness);
        current = step.after.clone();
        steps.push(step);
    }
    Ok(TreeNormalisation {
        normalised: current,
        witness,
        steps,
    })
}

/// Whether every dart of `tree` carries the identity.
pub fn is_t_normalised(gvg: &GenVoltageGraph, tree: &SpanningTree) -> bool {
    tree.darts().into_iter().all(|x| gvg.volt(x).is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dartgraph::{find_isomorphism, GraphBuilder};
    use crate::permgrp::Group;
    use crate::voltage::bicoset_spec;
    use crate::voltage::fixtures::*;

    #[test]
    fn shift_fixture_dart() {
        let f = twisted();
        let step = shift_dart(&f, 0).unwrap();
        assert!(step.after.volt(0).is_identity());
        assert!(step.after.volt(1).is_identity());
        assert_eq!(step.conjugator, sigma());
        assert_eq!(step.after.vertex_weight(1), &f.vertex_weight(1).conjugate(&sigma()).unwrap());
        let c0 = Cover::build(&f).unwrap();
        let c1 = Cover::build(&step.after).unwrap();
        assert!(step.witness.verify(&c0, &c1).is_ok());
        assert!(find_isomorphism(c0.graph(), c1.graph()).unwrap().is_some());
    }

    #[test]
    fn identity_shift_changes_nothing() {
        let f = untwisted();
        let step = shift_dart(&f, 0).unwrap();
        assert_eq!(step.after, f);
    }

    #[test]
    fn loops_and_semi_edges_cannot_shift() {
        let (z2, a) = cyclic(2);
        let mut b = GraphBuilder::new(1);
        b.add_edge(0, 0);
        b.add_semi_edge(0);
        let t = Group::trivial(2);
        let f = GenVoltageGraph::new(
            b.build().unwrap(),
            z2,
            vec![t.clone()],
            vec![t; 3],
            vec![a.clone(), a.clone(), a],
        )
        .unwrap();
        assert_eq!(shift_dart(&f, 0).unwrap_err(), NormalizeError::LoopOrSemiEdge { dart: 0 });
        assert_eq!(shift_dart(&f, 2).unwrap_err(), NormalizeError::LoopOrSemiEdge { dart: 2 });
    }

    #[test]
    fn normalise_fixture_along_its_edge() {
        let f = twisted();
        let tree = f.base().spanning_tree(0).unwrap();
        let r = t_normalize(&f, &tree).unwrap();
        assert!(is_t_normalised(&r.normalised, &tree));
        let c = Cover::build(&r.normalised).unwrap();
        assert_eq!(c.graph().components().count, 3);
        let c0 = Cover::build(&f).unwrap();
        assert!(r.witness.verify(&c0, &c).is_ok());
    }

    #[test]
    fn already_normalised_is_unchanged() {
        let (z6, g) = cyclic(6);
        let l = Group::generate(6, vec![g.pow(2)]).unwrap();
        let r = Group::generate(6, vec![g.pow(3)]).unwrap();
        let bic = bicoset_spec(&z6, &l, &r).unwrap();
        let tree = bic.base().spanning_tree(0).unwrap();
        assert_eq!(t_normalize(&bic, &tree).unwrap().normalised, bic);
        let f = untwisted();
        assert_eq!(t_normalize(&f, &tree).unwrap().normalised, f);
    }

    #[test]
    fn loop_at_the_head_is_conjugated() {
        // path 0 - 1 with a loop at 1, cyclic voltages in Z_4
        let (z4, g) = cyclic(4);
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1);
        b.add_edge(1, 1);
        let t = Group::trivial(4);
        let f = GenVoltageGraph::new(
            b.build().unwrap(),
            z4,
            vec![t.clone(); 2],
            vec![t; 4],
            vec![g.clone(), g.inverse(), g.pow(2), g.pow(2)],
        )
        .unwrap();
        let step = shift_dart(&f, 0).unwrap();
        // abelian group: conjugation leaves the loop voltage alone
        assert_eq!(step.after.volt(2), &g.pow(2));
        let c0 = Cover::build(&f).unwrap();
        let c1 = Cover::build(&step.after).unwrap();
        step.witness.verify(&c0, &c1).unwrap();
    }
}
