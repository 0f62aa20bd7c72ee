//! Seeded random instances: voltage graphs, raw weight tables, walks, and
//! graphs with groups of automorphisms.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::dartgraph::{Graph, GraphBuilder, Walk};
use crate::permgrp::{Group, GroupPart, Perm};
use crate::quotient::ActionGroup;
use crate::voltage::GenVoltageGraph;

pub use rand::SeedableRng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cyc(degree: usize, cycles: &[&[usize]]) -> Perm {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Perm::from_cycles(degree, &cycles).expect("catalog cycles are disjoint")
}

fn group(degree: usize, gens: Vec<Perm>) -> Group {
    Group::generate(degree, gens).expect("catalog generators share a degree")
}

/// Named permutation groups of order at most 24.
pub fn group_catalog() -> Vec<(String, Group)> {
    let mut out = Vec::new();
    for n in 1..=12usize {
        let r = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
        out.push((format!("Z{n}"), group(n, vec![r])));
    }
    for n in 3..=12usize {
        let r = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
        let s = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        out.push((format!("D{n}"), group(n, vec![r, s])));
    }
    out.push(("V4".into(), group(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[2, 3]])])));
    out.push((
        "Z2^3".into(),
        group(6, vec![cyc(6, &[&[0, 1]]), cyc(6, &[&[2, 3]]), cyc(6, &[&[4, 5]])]),
    ));
    out.push(("A4".into(), group(4, vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[0, 1], &[2, 3]])])));
    out.push(("S4".into(), group(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 1]])])));
    out.push((
        "Q8".into(),
        group(
            8,
            vec![
                cyc(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]]),
                cyc(8, &[&[0, 4, 2, 6], &[1, 7, 3, 5]]),
            ],
        ),
    ));
    out.push(("Z3xZ3".into(), group(6, vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[3, 4, 5]])])));
    out.push(("Z2xZ4".into(), group(6, vec![cyc(6, &[&[0, 1]]), cyc(6, &[&[2, 3, 4, 5]])])));
    out.push(("S3xZ2".into(), group(5, vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1]]), cyc(5, &[&[3, 4]])])));
    out.push(("S3xZ3".into(), group(6, vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[0, 1]]), cyc(6, &[&[3, 4, 5]])])));
    out.push(("S3xZ4".into(), group(7, vec![cyc(7, &[&[0, 1, 2]]), cyc(7, &[&[0, 1]]), cyc(7, &[&[3, 4, 5, 6]])])));
    out.retain(|(_, g)| g.order() <= 24);
    out
}

/// Catalog groups of order at most `max_order`.
pub fn groups_up_to(max_order: usize) -> Vec<Group> {
    group_catalog()
        .into_iter()
        .map(|(_, g)| g)
        .filter(|g| g.order() <= max_order)
        .collect()
}

/// A connected base: a random tree plus extra links, loops and semi-edges.
pub fn random_base(rng: &mut SampleRng, max_vertices: usize, max_darts: usize) -> Graph {
    let max_vertices = max_vertices.clamp(1, max_darts / 2 + 1);
    let n = rng.gen_range(1..=max_vertices);
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        b.add_edge(u, v);
    }
    let mut remaining = rng.gen_range(0..=max_darts - 2 * (n - 1));
    while remaining > 0 {
        let u = rng.gen_range(0..n);
        if remaining == 1 || rng.gen_bool(0.25) {
            b.add_semi_edge(u);
            remaining -= 1;
        } else {
            let w = rng.gen_range(0..n);
            b.add_edge(u, w);
            remaining -= 2;
        }
    }
    b.build().expect("builder output is a valid graph")
}

fn random_element(rng: &mut SampleRng, g: &Group) -> Perm {
    g.elements().choose(rng).expect("groups are nonempty").clone()
}

/// Trivial, whole, or generated by one or two random elements.
pub fn random_subgroup(rng: &mut SampleRng, of: &Group) -> Group {
    match rng.gen_range(0..6) {
        0 | 1 => Group::trivial(of.degree()),
        2 => of.clone(),
        k => {
            let gens: Vec<Perm> = (0..k - 2).map(|_| random_element(rng, of)).collect();
            let parts: Vec<GroupPart<'_>> = gens.iter().map(GroupPart::Element).collect();
            of.generated_by(&parts).expect("elements of a group generate a subgroup")
        }
    }
}

/// A valid voltage graph: vertex weights first, then per edge a voltage,
/// a dart weight fitting under both ends, and a matching reverse voltage.
pub fn random_gvg(rng: &mut SampleRng, groups: &[Group], max_vertices: usize, max_darts: usize) -> GenVoltageGraph {
    let g = groups.choose(rng).expect("at least one group").clone();
    let base = random_base(rng, max_vertices, max_darts);
    let vertex_weights: Vec<Group> = base.vertices().map(|_| random_subgroup(rng, &g)).collect();
    let mut dart_weights = vec![Group::trivial(g.degree()); base.dart_count()];
    let mut voltages = vec![g.identity(); base.dart_count()];
    for x in base.darts() {
        let y = base.inv(x);
        if y < x {
            continue;
        }
        let u = base.beg(x);
        if x == y {
            let w = random_subgroup(rng, &vertex_weights[u]);
            let candidates: Vec<&Perm> = g
                .elements()
                .iter()
                .filter(|z| w.contains(&(*z * *z)) && w.conjugate(z).map(|c| c == w).unwrap_or(false))
                .collect();
            voltages[x] = (*candidates.choose(rng).expect("identity qualifies")).clone();
            dart_weights[x] = w;
            continue;
        }
        let z = random_element(rng, &g);
        let far = vertex_weights[base.beg(y)]
            .conjugate(&z)
            .expect("voltage lies in the group");
        let room = vertex_weights[u].intersection(&far);
        let w = random_subgroup(rng, &room);
        let k = random_element(rng, &w);
        let zi = z.inverse();
        dart_weights[y] = w.conjugate(&zi).expect("voltage lies in the group");
        voltages[y] = &k * &zi;
        dart_weights[x] = w;
        voltages[x] = z;
    }
    GenVoltageGraph::new(base, g, vertex_weights, dart_weights, voltages)
        .expect("sampler builds valid voltage graphs")
}

/// Weights and voltages not promised to satisfy anything.
#[derive(Clone, Debug)]
pub struct RawTable {
    pub base: Graph,
    pub group: Group,
    pub vertex_weights: Vec<Group>,
    pub dart_weights: Vec<Group>,
    pub voltages: Vec<Perm>,
}

impl RawTable {
    pub fn validate(&self) -> Result<GenVoltageGraph, crate::voltage::VoltageError> {
        GenVoltageGraph::new(
            self.base.clone(),
            self.group.clone(),
            self.vertex_weights.clone(),
            self.dart_weights.clone(),
            self.voltages.clone(),
        )
    }
}

fn random_perm(rng: &mut SampleRng, degree: usize) -> Perm {
    let mut images: Vec<usize> = (0..degree).collect();
    images.shuffle(rng);
    Perm::from_images(images).expect("a shuffle is a permutation")
}

/// Half independent random entries, half a valid table with one entry
/// replaced. Occasionally an entry comes from outside the group.
pub fn random_table(rng: &mut SampleRng, groups: &[Group], max_vertices: usize, max_darts: usize) -> RawTable {
    if rng.gen_bool(0.5) {
        let gvg = random_gvg(rng, groups, max_vertices, max_darts);
        let (base, group, mut vertex_weights, mut dart_weights, mut voltages) = gvg.into_parts();
        let m = base.dart_count();
        let n = base.vertex_count();
        match rng.gen_range(0..4) {
            0 => {
                let v = rng.gen_range(0..n);
                vertex_weights[v] = random_subgroup(rng, &group);
            }
            1 if m > 0 => {
                let x = rng.gen_range(0..m);
                dart_weights[x] = random_subgroup(rng, &group);
            }
            2 if m > 0 => {
                let x = rng.gen_range(0..m);
                voltages[x] = if rng.gen_bool(0.1) {
                    random_perm(rng, group.degree())
                } else {
                    random_element(rng, &group)
                };
            }
            _ => {
                if rng.gen_bool(0.2) {
                    let v = rng.gen_range(0..n);
                    let stray = random_perm(rng, group.degree());
                    vertex_weights[v] = Group::generate(group.degree(), vec![stray]).expect("same degree");
                }
            }
        }
        return RawTable {
            base,
            group,
            vertex_weights,
            dart_weights,
            voltages,
        };
    }
    let group = groups.choose(rng).expect("at least one group").clone();
    let base = random_base(rng, max_vertices, max_darts);
    let vertex_weights = base.vertices().map(|_| random_subgroup(rng, &group)).collect();
    let dart_weights = base.darts().map(|_| random_subgroup(rng, &group)).collect();
    let voltages = base.darts().map(|_| random_element(rng, &group)).collect();
    RawTable {
        base,
        group,
        vertex_weights,
        dart_weights,
        voltages,
    }
}

/// A walk of at most `max_len` darts from a random vertex.
pub fn random_walk(rng: &mut SampleRng, graph: &Graph, max_len: usize) -> Walk {
    let start = rng.gen_range(0..graph.vertex_count());
    let len = rng.gen_range(0..=max_len);
    let mut v = start;
    let mut darts = Vec::with_capacity(len);
    for _ in 0..len {
        let Some(&x) = graph.darts_at(v).choose(rng) else {
            break;
        };
        darts.push(x);
        v = graph.term(x);
    }
    Walk::new(graph, start, darts).expect("darts chain end to start")
}

/// A simple graph with vertex permutations generating a group of automorphisms.
#[derive(Clone, Debug)]
pub struct GraphFamily {
    pub name: String,
    pub graph: Graph,
    pub symmetries: Vec<Perm>,
}

fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
    let mut b = GraphBuilder::new(n);
    for &(u, v) in edges {
        b.add_edge(u, v);
    }
    b.build().expect("edge list within range")
}

fn images(n: usize, f: impl Fn(usize) -> usize) -> Perm {
    Perm::from_images((0..n).map(f).collect()).expect("family maps are bijections")
}

pub fn cycle_family(n: usize) -> GraphFamily {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    GraphFamily {
        name: format!("C{n}"),
        graph: from_edges(n, &edges),
        symmetries: vec![images(n, |i| (i + 1) % n), images(n, |i| (n - i) % n)],
    }
}

pub fn bipartite_family(m: usize, n: usize) -> GraphFamily {
    let mut edges = Vec::new();
    for u in 0..m {
        for v in 0..n {
            edges.push((u, m + v));
        }
    }
    let total = m + n;
    let mut symmetries = vec![
        images(total, |i| if i < m { (i + 1) % m } else { i }),
        images(total, |i| if i < m { i } else { m + (i - m + 1) % n }),
    ];
    if m >= 2 {
        symmetries.push(images(total, |i| match i {
            0 => 1,
            1 => 0,
            _ => i,
        }));
    }
    if m == n {
        symmetries.push(images(total, |i| (i + m) % total));
    }
    GraphFamily {
        name: format!("K{m},{n}"),
        graph: from_edges(total, &edges),
        symmetries,
    }
}

pub fn prism_family(n: usize) -> GraphFamily {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    let side = |i: usize| i / n;
    GraphFamily {
        name: format!("Prism{n}"),
        graph: from_edges(2 * n, &edges),
        symmetries: vec![
            images(2 * n, |i| side(i) * n + (i % n + 1) % n),
            images(2 * n, |i| side(i) * n + (n - i % n) % n),
            images(2 * n, |i| (i + n) % (2 * n)),
        ],
    }
}

/// The Cartesian product of two cycles.
pub fn torus_family(n: usize, m: usize) -> GraphFamily {
    let at = |i: usize, j: usize| i * m + j;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..m {
            edges.push((at(i, j), at((i + 1) % n, j)));
            edges.push((at(i, j), at(i, (j + 1) % m)));
        }
    }
    let total = n * m;
    let mut symmetries = vec![
        images(total, |p| at((p / m + 1) % n, p % m)),
        images(total, |p| at(p / m, (p % m + 1) % m)),
        images(total, |p| at((n - p / m) % n, p % m)),
    ];
    if n == m {
        symmetries.push(images(total, |p| at(p % m, p / m)));
    }
    GraphFamily {
        name: format!("C{n}xC{m}"),
        graph: from_edges(total, &edges),
        symmetries,
    }
}

/// `k` disjoint copies of a family. Each symmetry acts on all copies at once;
/// one extra generator rotates the copies, and one more rotates them while
/// applying the first symmetry.
pub fn copies_family(base: &GraphFamily, k: usize) -> GraphFamily {
    let n = base.graph.vertex_count();
    let mut edges = Vec::new();
    for c in 0..k {
        for d in base.graph.darts() {
            if d < base.graph.inv(d) {
                edges.push((c * n + base.graph.beg(d), c * n + base.graph.term(d)));
            }
        }
    }
    let total = k * n;
    let mut symmetries: Vec<Perm> = base
        .symmetries
        .iter()
        .map(|s| images(total, |p| (p / n) * n + s.apply(p % n)))
        .collect();
    symmetries.push(images(total, |p| ((p / n + 1) % k) * n + p % n));
    if let Some(s) = base.symmetries.first() {
        symmetries.push(images(total, |p| ((p / n + 1) % k) * n + s.apply(p % n)));
    }
    GraphFamily {
        name: format!("{k}x{}", base.name),
        graph: from_edges(total, &edges),
        symmetries,
    }
}

/// Connected families with at most 60 vertices plus darts.
pub fn connected_families() -> Vec<GraphFamily> {
    let mut out: Vec<GraphFamily> = (3..=20).map(cycle_family).collect();
    for (m, n) in [(1, 3), (2, 2), (2, 3), (2, 4), (3, 3), (2, 5), (3, 4), (4, 4), (3, 5), (4, 5), (5, 5)] {
        out.push(bipartite_family(m, n));
    }
    out.extend((3..=7).map(prism_family));
    for (n, m) in [(3, 3), (3, 4)] {
        out.push(torus_family(n, m));
    }
    out.retain(|f| f.graph.vertex_count() + f.graph.dart_count() <= 60);
    out
}

/// Families of several copies, mostly disconnected.
pub fn disconnected_families() -> Vec<GraphFamily> {
    let mut out = Vec::new();
    for n in 3..=8 {
        out.push(copies_family(&cycle_family(n), 2));
    }
    for n in 3..=5 {
        out.push(copies_family(&cycle_family(n), 3));
    }
    out.push(copies_family(&bipartite_family(2, 3), 2));
    out.push(copies_family(&prism_family(3), 2));
    out.retain(|f| f.graph.vertex_count() + f.graph.dart_count() <= 60);
    out
}

/// A random subgroup of a family's symmetries: a random nonempty subset of
/// its generators, each raised to a random power. `None` when the group is
/// larger than `max_order`.
pub fn random_action(rng: &mut SampleRng, family: &GraphFamily, max_order: usize) -> Option<ActionGroup> {
    let mut gens = Vec::new();
    for s in &family.symmetries {
        if rng.gen_bool(0.6) {
            gens.push(s.pow(rng.gen_range(1..=3)));
        }
    }
    if gens.is_empty() {
        gens.push(family.symmetries.choose(rng)?.clone());
    }
    let n = family.graph.vertex_count();
    Group::generate_with_cap(n, gens.clone(), max_order).ok()?;
    ActionGroup::from_vertex_permutations(family.graph.clone(), &gens).ok()
}
