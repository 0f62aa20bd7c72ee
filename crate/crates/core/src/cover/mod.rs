//! The covering graph of a generalised voltage graph.
//!
//! Cover vertices are pairs `(v, w(v) g)` and cover darts are pairs
//! `(x, w(x) g)`, where `w` is the weight and `g` ranges over `G`. A coset is
//! stored by its least element. Then
//!
//! - `beg (x, w(x) g) = (beg x, w(beg x) g)`
//! - `inv (x, w(x) g) = (inv x, w(inv x) volt(x) g)`

mod decide;

pub use decide::{
    has_parallel_darts_by_voltage, has_semiedge_by_voltage, is_connected_by_voltage,
    is_simple_by_voltage, simplicity_by_voltage, ConnectivityVerdict, ParallelWitness,
    SimplicityVerdict, SimplicityViolation,
};

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::Range;

use thiserror::Error;

use crate::dartgraph::{Graph, GraphError, GraphMorphism, Walk};
use crate::permgrp::{CosetTable, GroupError, Perm};
use crate::voltage::{Element, GenVoltageGraph, VoltageError};

/// Default bound on cover vertices plus darts.
pub const DEFAULT_COVER_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("cover would have {size} vertices and darts, over the cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("cover maps are not well defined: {0}")]
    NotWellDefined(String),
    #[error("cover vertex {vertex} has valence {found}, expected {expected}")]
    ValenceMismatch {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Voltage(#[from] VoltageError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A built cover together with its labels and projection.
#[derive(Clone, Debug)]
pub struct Cover<'a> {
    source: &'a GenVoltageGraph,
    graph: Graph,
    vertex_labels: Vec<(usize, Perm)>,
    dart_labels: Vec<(usize, Perm)>,
    vertex_start: Vec<usize>,
    dart_start: Vec<usize>,
    vertex_tables: Vec<CosetTable>,
    dart_tables: Vec<CosetTable>,
    projection: GraphMorphism,
}

impl<'a> Cover<'a> {
    pub fn build(gvg: &'a GenVoltageGraph) -> Result<Self, CoverError> {
        Self::build_with_cap(gvg, DEFAULT_COVER_CAP)
    }

    pub fn build_with_cap(gvg: &'a GenVoltageGraph, cap: usize) -> Result<Self, CoverError> {
        let base = gvg.base();
        let size = cover_size(gvg);
        if size > cap {
            return Err(CoverError::SizeCapExceeded { size, cap });
        }
        let group = gvg.group();
        let vertex_tables = base
            .vertices()
            .map(|v| CosetTable::new(gvg.vertex_weight(v), group))
            .collect::<Result<Vec<_>, _>>()?;
        let dart_tables = base
            .darts()
            .map(|x| CosetTable::new(gvg.dart_weight(x), group))
            .collect::<Result<Vec<_>, _>>()?;
        let starts = |tables: &[CosetTable]| {
            let mut acc = 0;
            tables
                .iter()
                .map(|t| {
                    let s = acc;
                    acc += t.len();
                    s
                })
                .collect::<Vec<_>>()
        };
        let vertex_start = starts(&vertex_tables);
        let dart_start = starts(&dart_tables);
        let label = |tables: &[CosetTable]| {
            tables
                .iter()
                .enumerate()
                .flat_map(|(z, t)| t.representatives().iter().map(move |g| (z, g.clone())))
                .collect::<Vec<_>>()
        };
        let vertex_labels = label(&vertex_tables);
        let dart_labels = label(&dart_tables);

        let mut cover = Cover {
            source: gvg,
            graph: Graph::new(1, Vec::new(), Vec::new())?,
            vertex_labels,
            dart_labels,
            vertex_start,
            dart_start,
            vertex_tables,
            dart_tables,
            projection: GraphMorphism {
                vertex_map: Vec::new(),
                dart_map: Vec::new(),
            },
        };
        cover.check_well_defined()?;
        let mut beg = Vec::with_capacity(cover.dart_labels.len());
        let mut inv = Vec::with_capacity(cover.dart_labels.len());
        for (x, g) in &cover.dart_labels {
            beg.push(cover.vertex_of(base.beg(*x), g));
            inv.push(cover.dart_of(base.inv(*x), &(gvg.volt(*x) * g)));
        }
        cover.graph = Graph::new(cover.vertex_labels.len(), beg, inv)?;
        cover.projection = GraphMorphism {
            vertex_map: cover.vertex_labels.iter().map(|(v, _)| *v).collect(),
            dart_map: cover.dart_labels.iter().map(|(x, _)| *x).collect(),
        };
        Ok(cover)
    }

    /// Replacing a representative `g` by `h g` with `h` in the dart weight
    /// must not move `beg` or `inv`. Checked on generators of each weight.
    fn check_well_defined(&self) -> Result<(), CoverError> {
        let gvg = self.source;
        let base = gvg.base();
        for (x, g) in &self.dart_labels {
            let b = self.vertex_of(base.beg(*x), g);
            let i = self.dart_of(base.inv(*x), &(gvg.volt(*x) * g));
            for h in gvg.dart_weight(*x).generators() {
                let hg = h * g;
                if self.vertex_of(base.beg(*x), &hg) != b {
                    return Err(CoverError::NotWellDefined(format!(
                        "beg depends on the representative at dart {x}"
                    )));
                }
                if self.dart_of(base.inv(*x), &(gvg.volt(*x) * &hg)) != i {
                    return Err(CoverError::NotWellDefined(format!(
                        "inv depends on the representative at dart {x}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &'a GenVoltageGraph {
        self.source
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// `(base vertex, least element of its coset)`.
    pub fn vertex_label(&self, i: usize) -> (usize, &Perm) {
        let (v, g) = &self.vertex_labels[i];
        (*v, g)
    }

    pub fn dart_label(&self, i: usize) -> (usize, &Perm) {
        let (x, g) = &self.dart_labels[i];
        (*x, g)
    }

    /// Index of the cover vertex `(v, w(v) g)`.
    pub fn vertex_of(&self, v: usize, g: &Perm) -> usize {
        self.vertex_start[v]
            + self.vertex_tables[v]
                .index_of(g)
                .expect("element of the voltage group")
    }

    /// Index of the cover dart `(x, w(x) g)`.
    pub fn dart_of(&self, x: usize, g: &Perm) -> usize {
        self.dart_start[x]
            + self.dart_tables[x]
                .index_of(g)
                .expect("element of the voltage group")
    }

    /// The covering projection onto the base graph.
    pub fn projection(&self) -> &GraphMorphism {
        &self.projection
    }

    /// Indices of the cover elements above `z`; fibres are contiguous.
    pub fn fibre(&self, z: Element) -> Range<usize> {
        match z {
            Element::Vertex(v) => {
                let s = self.vertex_start[v];
                s..s + self.vertex_tables[v].len()
            }
            Element::Dart(x) => {
                let s = self.dart_start[x];
                s..s + self.dart_tables[x].len()
            }
        }
    }

    /// Checks that every vertex above `u` has valence equal to the sum of
    /// `lambda` over darts at `u`; returns that valence for each base vertex.
    pub fn valence_check(&self) -> Result<Vec<usize>, CoverError> {
        let gvg = self.source;
        let mut table = Vec::with_capacity(gvg.base().vertex_count());
        for u in gvg.base().vertices() {
            let expected = gvg.lifted_valence(u);
            for i in self.fibre(Element::Vertex(u)) {
                let found = self.graph.valence(i);
                if found != expected {
                    return Err(CoverError::ValenceMismatch {
                        vertex: i,
                        expected,
                        found,
                    });
                }
            }
            table.push(expected);
        }
        Ok(table)
    }

    /// Neighbours of a cover vertex `(u, w(u) g)` computed from voltages:
    /// `(term x, w(term x) z g)` for `beg x = u` and `z` in `volt(x) w(u)`.
    pub fn neighbours(&self, vertex: usize) -> BTreeSet<usize> {
        let gvg = self.source;
        let base = gvg.base();
        let (u, g) = self.vertex_label(vertex);
        let mut out = BTreeSet::new();
        for &x in base.darts_at(u) {
            let w = base.term(x);
            for h in gvg.vertex_weight(u).elements() {
                let z = gvg.volt(x) * h;
                out.insert(self.vertex_of(w, &(&z * g)));
            }
        }
        out
    }

    /// Neighbours read off the built graph.
    pub fn adjacent_vertices(&self, vertex: usize) -> BTreeSet<usize> {
        self.graph
            .darts_at(vertex)
            .iter()
            .map(|&d| self.graph.term(d))
            .collect()
    }

    /// End vertices of all lifts of `walk` starting at `(u, w(u))`, where
    /// `u` is the walk's start: `(v, w(v) z)` for `z` in the walk voltage.
    pub fn lifted_walk_endpoints(&self, walk: &Walk) -> Result<BTreeSet<usize>, CoverError> {
        let voltage = self.source.walk_voltage(walk)?;
        let v = walk.end(self.source.base());
        Ok(voltage
            .elements()
            .iter()
            .map(|z| self.vertex_of(v, z))
            .collect())
    }

    /// One line per cover element: index, base element and coset representative.
    pub fn fibre_table(&self) -> String {
        let mut out = String::from("# cover element -> base element, coset representative\n");
        for (i, (v, g)) in self.vertex_labels.iter().enumerate() {
            let _ = writeln!(out, "vertex {i} base {v} coset {g}");
        }
        for (i, (x, g)) in self.dart_labels.iter().enumerate() {
            let _ = writeln!(out, "dart {i} base {x} coset {g}");
        }
        out
    }

    /// `"v<base>:<coset representative>"`, for DOT labels.
    pub fn vertex_display(&self, i: usize) -> String {
        let (v, g) = self.vertex_label(i);
        format!("v{v}:{g}")
    }
}

/// `sum |G : w(v)| + sum |G : w(x)|`.
pub fn cover_size(gvg: &GenVoltageGraph) -> usize {
    let base = gvg.base();
    base.vertices()
        .map(|v| gvg.fibre_size(Element::Vertex(v)))
        .chain(base.darts().map(|x| gvg.fibre_size(Element::Dart(x))))
        .sum()
}
