//! Automorphisms of covers induced by the voltage group, and isomorphisms
//! between covers induced by a base isomorphism paired with a group
//! isomorphism.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::cover::Cover;
use crate::dartgraph::{GraphError, GraphMorphism};
use crate::permgrp::{Group, GroupError, GroupPart, Perm};
use crate::quotient::{weight_core, ActionGroup, QuotientError};
use crate::voltage::{Element, GenVoltageGraph, VoltageError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("{0} is not an element of the voltage group")]
    NotInGroup(Perm),
    #[error("not a group isomorphism: {0}")]
    NotAGroupIsomorphism(String),
    #[error("incompatible pair: {0}")]
    IncompatiblePair(String),
    #[error("induced map is not a graph isomorphism: {0}")]
    NotAnIsomorphism(GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Voltage(#[from] VoltageError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// The automorphism `(z, w(z) g) -> (z, w(z) g h)` of a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedTranslation {
    pub h: Perm,
    pub morphism: GraphMorphism,
}

impl LiftedTranslation {
    pub fn is_identity(&self) -> bool {
        let m = &self.morphism;
        m.vertex_map.iter().enumerate().all(|(i, &j)| i == j)
            && m.dart_map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// The map as one permutation of the cover's vertices followed by darts.
    pub fn as_permutation(&self) -> Perm {
        let n = self.morphism.vertex_map.len();
        let images = self
            .morphism
            .vertex_map
            .iter()
            .copied()
            .chain(self.morphism.dart_map.iter().map(|&d| n + d))
            .collect();
        Perm::from_images(images).expect("lifted translations are bijective")
    }
}

fn translate(cover: &Cover<'_>, h: &Perm) -> GraphMorphism {
    let vertex_map = (0..cover.graph().vertex_count())
        .map(|i| {
            let (v, g) = cover.vertex_label(i);
            cover.vertex_of(v, &(g * h))
        })
        .collect();
    let dart_map = (0..cover.graph().dart_count())
        .map(|i| {
            let (x, g) = cover.dart_label(i);
            cover.dart_of(x, &(g * h))
        })
        .collect();
    GraphMorphism {
        vertex_map,
        dart_map,
    }
}

/// Lifts `h` to the cover and verifies the result is an automorphism that
/// keeps every fibre in place.
pub fn lift_translation(cover: &Cover<'_>, h: &Perm) -> Result<LiftedTranslation, SymmetryError> {
    if !cover.source().group().contains(h) {
        return Err(SymmetryError::NotInGroup(h.clone()));
    }
    let morphism = translate(cover, h);
    let graph = cover.graph();
    morphism.verify(graph, graph).map_err(SymmetryError::NotAnIsomorphism)?;
    if !morphism.is_bijective_onto(graph) {
        return Err(SymmetryError::NotAnIsomorphism(GraphError::NotAMorphism(
            "not bijective".into(),
        )));
    }
    let p = cover.projection();
    let fixes_fibres = morphism
        .vertex_map
        .iter()
        .enumerate()
        .all(|(i, &j)| p.vertex_map[i] == p.vertex_map[j])
        && morphism
            .dart_map
            .iter()
            .enumerate()
            .all(|(i, &j)| p.dart_map[i] == p.dart_map[j]);
    if !fixes_fibres {
        return Err(SymmetryError::NotAnIsomorphism(GraphError::NotAMorphism(
            "moves a fibre".into(),
        )));
    }
    Ok(LiftedTranslation {
        h: h.clone(),
        morphism,
    })
}

/// The group acting on the cover by lifted translations of the generators.
pub fn translation_action(cover: &Cover<'_>) -> Result<ActionGroup, SymmetryError> {
    let gens = cover
        .source()
        .group()
        .generators()
        .iter()
        .map(|h| lift_translation(cover, h).map(|t| t.as_permutation()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ActionGroup::new(cover.graph().clone(), gens)?)
}

/// Kernel of `h -> lifted h`, found two ways.
#[derive(Clone, Debug)]
pub struct ActionHom {
    /// Elements whose lift fixes every vertex and dart of the cover.
    pub kernel: Group,
    /// Core in `G` of the intersection of all weights.
    pub weight_core: Group,
    pub injective: bool,
}

impl ActionHom {
    pub fn kernel_matches_core(&self) -> bool {
        self.kernel == self.weight_core
    }
}

pub fn action_hom(cover: &Cover<'_>) -> ActionHom {
    let gvg = cover.source();
    let fixing: Vec<&Perm> = gvg
        .group()
        .elements()
        .iter()
        .filter(|h| {
            let cover_graph = cover.graph();
            (0..cover_graph.vertex_count()).all(|i| {
                let (v, g) = cover.vertex_label(i);
                cover.vertex_of(v, &(g * *h)) == i
            }) && (0..cover_graph.dart_count()).all(|i| {
                let (x, g) = cover.dart_label(i);
                cover.dart_of(x, &(g * *h)) == i
            })
        })
        .collect();
    let parts: Vec<GroupPart<'_>> = fixing.iter().map(|h| GroupPart::Element(h)).collect();
    let kernel = gvg
        .group()
        .generated_by(&parts)
        .expect("kernel elements lie in the group");
    ActionHom {
        injective: kernel.is_trivial(),
        kernel,
        weight_core: weight_core(gvg),
    }
}

/// A verified isomorphism between two permutation groups, stored elementwise.
#[derive(Clone, Debug)]
pub struct GroupIsomorphism {
    domain: Group,
    codomain: Group,
    table: HashMap<Perm, Perm>,
}

impl GroupIsomorphism {
    /// Extends generator images along the Cayley graph of `domain`, rejecting
    /// inconsistent tables and maps that are not bijections onto `codomain`.
    pub fn from_generator_images(
        domain: &Group,
        codomain: &Group,
        images: &[Perm],
    ) -> Result<Self, SymmetryError> {
        let gens = domain.generators();
        if images.len() != gens.len() {
            return Err(SymmetryError::NotAGroupIsomorphism(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        if let Some(bad) = images.iter().find(|t| !codomain.contains(t)) {
            return Err(SymmetryError::NotAGroupIsomorphism(format!(
                "image {bad} lies outside the codomain"
            )));
        }
        let mut table = HashMap::with_capacity(domain.order());
        table.insert(domain.identity(), codomain.identity());
        let mut queue = VecDeque::from([domain.identity()]);
        while let Some(e) = queue.pop_front() {
            let fe = table[&e].clone();
            for (s, t) in gens.iter().zip(images) {
                let next = &e * s;
                let image = &fe * t;
                match table.get(&next) {
                    Some(prev) if *prev != image => {
                        return Err(SymmetryError::NotAGroupIsomorphism(
                            "generator images do not respect relations".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        table.insert(next.clone(), image);
                        queue.push_back(next);
                    }
                }
            }
        }
        let distinct: std::collections::HashSet<&Perm> = table.values().collect();
        if distinct.len() != table.len() || table.len() != codomain.order() {
            return Err(SymmetryError::NotAGroupIsomorphism("not a bijection".into()));
        }
        Ok(GroupIsomorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        })
    }

    /// `g -> c^-1 g c` for `c` normalising `group`, possibly from outside it.
    pub fn conjugation(group: &Group, c: &Perm) -> Result<Self, SymmetryError> {
        let images: Vec<Perm> = group.generators().iter().map(|g| g.conjugate_by(c)).collect();
        Self::from_generator_images(group, group, &images)
    }

    pub fn identity(group: &Group) -> Self {
        Self::from_generator_images(group, group, group.generators())
            .expect("identity is an isomorphism")
    }

    pub fn domain(&self) -> &Group {
        &self.domain
    }

    pub fn codomain(&self) -> &Group {
        &self.codomain
    }

    pub fn apply(&self, g: &Perm) -> Option<&Perm> {
        self.table.get(g)
    }

    pub fn image(&self, sub: &Group) -> Group {
        let images: Vec<&Perm> = sub.elements().iter().map(|g| &self.table[g]).collect();
        let parts: Vec<GroupPart<'_>> = images.into_iter().map(GroupPart::Element).collect();
        self.codomain
            .generated_by(&parts)
            .expect("images lie in the codomain")
    }
}

/// A base isomorphism paired with a group isomorphism that carries weights
/// and voltages of one voltage graph onto the other.
#[derive(Clone, Debug)]
pub struct CompatiblePair {
    pub base: GraphMorphism,
    pub group: GroupIsomorphism,
}

impl CompatiblePair {
    pub fn check(&self, from: &GenVoltageGraph, to: &GenVoltageGraph) -> Result<(), SymmetryError> {
        let phi = &self.base;
        let f = &self.group;
        let incompatible = |m: String| SymmetryError::IncompatiblePair(m);
        if f.domain() != from.group() || f.codomain() != to.group() {
            return Err(incompatible("group isomorphism has the wrong domain or codomain".into()));
        }
        if !phi.is_isomorphism(from.base(), to.base()) {
            return Err(incompatible("base map is not an isomorphism".into()));
        }
        for v in from.base().vertices() {
            if f.image(from.vertex_weight(v)) != *to.vertex_weight(phi.vertex_map[v]) {
                return Err(incompatible(format!("weight of {} is not carried over", Element::Vertex(v))));
            }
        }
        for x in from.base().darts() {
            let y = phi.dart_map[x];
            if f.image(from.dart_weight(x)) != *to.dart_weight(y) {
                return Err(incompatible(format!("weight of {} is not carried over", Element::Dart(x))));
            }
            if f.apply(from.volt(x)) != Some(to.volt(y)) {
                return Err(incompatible(format!("voltage of {} is not carried over", Element::Dart(x))));
            }
        }
        Ok(())
    }
}

/// `(z, w(z) g) -> (phi z, w'(phi z) f(g))`, verified as an isomorphism.
pub fn cover_iso_from_pair(
    from: &Cover<'_>,
    to: &Cover<'_>,
    pair: &CompatiblePair,
) -> Result<GraphMorphism, SymmetryError> {
    pair.check(from.source(), to.source())?;
    let f = &pair.group;
    let phi = &pair.base;
    let vertex_map = (0..from.graph().vertex_count())
        .map(|i| {
            let (v, g) = from.vertex_label(i);
            to.vertex_of(phi.vertex_map[v], &f.table[g])
        })
        .collect();
    let dart_map = (0..from.graph().dart_count())
        .map(|i| {
            let (x, g) = from.dart_label(i);
            to.dart_of(phi.dart_map[x], &f.table[g])
        })
        .collect();
    let morphism = GraphMorphism {
        vertex_map,
        dart_map,
    };
    morphism
        .verify(from.graph(), to.graph())
        .map_err(SymmetryError::NotAnIsomorphism)?;
    if !morphism.is_bijective_onto(to.graph()) {
        return Err(SymmetryError::NotAnIsomorphism(GraphError::NotAMorphism(
            "not bijective".into(),
        )));
    }
    Ok(morphism)
}

/// The voltage graph with weights and voltages pushed through `f`.
pub fn map_gvg(gvg: &GenVoltageGraph, f: &GroupIsomorphism) -> Result<GenVoltageGraph, SymmetryError> {
    if f.domain() != gvg.group() {
        return Err(SymmetryError::IncompatiblePair(
            "group isomorphism has the wrong domain".into(),
        ));
    }
    Ok(GenVoltageGraph::new(
        gvg.base().clone(),
        f.codomain().clone(),
        gvg.vertex_weights().iter().map(|w| f.image(w)).collect(),
        gvg.dart_weights().iter().map(|w| f.image(w)).collect(),
        gvg.voltages().iter().map(|z| f.table[z].clone()).collect(),
    )?)
}
