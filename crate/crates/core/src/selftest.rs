//! Seeded end-to-end checks of the library against brute-force references.
//! The acceptance test target and the `selftest` command both run these.

use std::fmt;
use std::time::{Duration, Instant};

use crate::cover::{
    has_parallel_darts_by_voltage, has_semiedge_by_voltage, is_connected_by_voltage,
    is_simple_by_voltage, Cover,
};
use crate::dartgraph::{find_isomorphism, EdgeKind, GraphBuilder};
use crate::normalize::{is_t_normalised, t_normalize_with, LeafOrder};
use crate::oracle;
use crate::permgrp::{Group, GroupPart, Perm};
use crate::quotient::{
    choose_transversal, generation_connectivity_test, is_faithful_gvg, quotient_graph, reconstruct,
    ActionGroup, QuotientError,
};
use crate::sample::{self, SampleRng};
use crate::symmetry::{action_hom, lift_translation};
use crate::voltage::{Element, GenVoltageGraph, VoltageError};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Time limit for the fixed six-vertex example.
pub const GOLDEN_TIME_LIMIT: Duration = Duration::from_secs(1);
/// Time limit for the whole reconstruction round trip.
pub const RECONSTRUCTION_TIME_LIMIT: Duration = Duration::from_secs(60);

pub const RECONSTRUCTION_SAMPLES: usize = 200;
pub const CONNECTIVITY_SAMPLES: usize = 500;
pub const SIMPLICITY_SAMPLES: usize = 500;
pub const NORMALISATION_SAMPLES: usize = 300;
pub const TRANSLATION_SAMPLES: usize = 300;
pub const WALK_SAMPLES: usize = 200;
pub const GENERATION_SAMPLES: usize = 200;
/// Disconnected graphs with connected quotient the generation check must see.
pub const GENERATION_MIN_DISCONNECTED: usize = 20;
pub const TABLE_SAMPLES: usize = 1000;

pub const MAX_SAMPLED_GROUP_ORDER: usize = 24;
pub const MAX_ACTION_ORDER: usize = 48;
pub const MAX_TABLE_GROUP_ORDER: usize = 12;
pub const MAX_BASE_VERTICES: usize = 4;
pub const MAX_BASE_DARTS: usize = 10;
pub const MAX_WALK_LEN: usize = 6;

const KEPT_FAILURES: usize = 5;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub elapsed: Duration,
    pub time_limit: Option<Duration>,
    /// How the sampled cases split between verdicts.
    pub mix: String,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.time_limit.is_none_or(|t| self.elapsed < t)
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {}: {} ({} cases, {} failures, {:.2?}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.cases,
            self.failure_count,
            self.elapsed
        )?;
        if let Some(t) = self.time_limit {
            write!(f, ", limit {t:?}")?;
        }
        write!(f, ")")?;
        if !self.mix.is_empty() {
            write!(f, " [{}]", self.mix)?;
        }
        for m in &self.failures {
            write!(f, "\n    {m}")?;
        }
        Ok(())
    }
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
    failure_count: usize,
    mix: String,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: Vec::new(),
            failure_count: 0,
            mix: String::new(),
        }
    }

    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        self.cases += 1;
        self.require(ok, message);
    }

    /// Records a failure without counting a case.
    fn require(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(message());
            }
        }
    }

    fn finish(self, id: u8, name: &'static str, start: Instant, time_limit: Option<Duration>) -> CriterionReport {
        CriterionReport {
            id,
            name,
            cases: self.cases,
            failures: self.failures,
            failure_count: self.failure_count,
            elapsed: start.elapsed(),
            time_limit,
            mix: self.mix,
        }
    }
}

/// `S_3` on six points with two generators of order 3 and 2, and the
/// single-edge base with weights `<rho>` and `<rho sigma>`.
pub fn golden_fixture(twisted: bool) -> GenVoltageGraph {
    let p = |s: &str| Perm::parse(s, 6).expect("fixed cycle text");
    let sigma = p("(1 2 3)(5 4 6)");
    let rho = p("(2 3)(4 5)");
    let g = Group::generate(6, vec![sigma.clone(), rho.clone()]).expect("degree 6");
    let h = Group::generate(6, vec![rho.clone()]).expect("degree 6");
    let k = Group::generate(6, vec![&rho * &sigma]).expect("degree 6");
    let mut b = GraphBuilder::new(2);
    b.add_edge(0, 1);
    let base = b.build().expect("one edge");
    let t = Group::trivial(6);
    let voltages = if twisted {
        vec![sigma.clone(), sigma.pow(2)]
    } else {
        vec![g.identity(), g.identity()]
    };
    GenVoltageGraph::new(base, g, vec![h, k], vec![t.clone(), t], voltages).expect("fixture is valid")
}

pub fn golden_example() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let hexagon = sample::cycle_family(6).graph;

    let plain = golden_fixture(false);
    match Cover::build(&plain) {
        Ok(c) => t.check(
            matches!(find_isomorphism(c.graph(), &hexagon), Ok(Some(_))),
            || "trivial voltages: cover is not a 6-cycle".into(),
        ),
        Err(e) => t.check(false, || format!("trivial voltages: {e}")),
    }

    let twisted = golden_fixture(true);
    match Cover::build(&twisted) {
        Ok(c) => {
            let g = c.graph();
            let kinds = g.classify_edges();
            let pairs = kinds.parallel_classes.iter().filter(|c| c.len() == 2).count();
            t.check(g.vertex_count() == 6, || format!("{} vertices, expected 6", g.vertex_count()));
            t.check(
                kinds.edges.len() == 6 && kinds.count(EdgeKind::Link) == 6,
                || format!("{} edges, expected 6 links", kinds.edges.len()),
            );
            t.check(
                kinds.parallel_classes.len() == 3 && pairs == 3,
                || format!("{} parallel classes, expected 3 pairs", kinds.parallel_classes.len()),
            );
            t.check(oracle::component_count(g) == 3, || "expected 3 components".into());
        }
        Err(e) => t.check(false, || format!("twisted voltages: {e}")),
    }
    t.finish(1, "six-vertex example", start, Some(GOLDEN_TIME_LIMIT))
}

pub fn reconstruction_round_trip(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = sample::rng(seed);
    let families = sample::connected_families();
    let mut t = Tally::new();
    while t.cases < RECONSTRUCTION_SAMPLES {
        let family = &families[rand::Rng::gen_range(&mut rng, 0..families.len())];
        let Some(action) = sample::random_action(&mut rng, family, MAX_ACTION_ORDER) else {
            continue;
        };
        let label = format!("{} with a group of order {}", family.name, action.group().order());
        t.check(round_trip_holds(&action).is_ok(), || {
            format!("{label}: {}", round_trip_holds(&action).unwrap_err())
        });
    }
    t.finish(2, "reconstruction round trip", start, Some(RECONSTRUCTION_TIME_LIMIT))
}

fn round_trip_holds(action: &ActionGroup) -> Result<(), String> {
    let r = reconstruct(action).map_err(|e| e.to_string())?;
    let cover = Cover::build(&r.gvg).map_err(|e| e.to_string())?;
    match find_isomorphism(action.graph(), cover.graph()) {
        Ok(Some(_)) => {}
        Ok(None) => return Err("cover is not isomorphic to the graph".into()),
        Err(e) => return Err(e.to_string()),
    }
    if !r.isomorphism(&cover).is_isomorphism(action.graph(), cover.graph()) {
        return Err("orbit-to-fibre map is not an isomorphism".into());
    }
    for (k, orbit) in r.quotient.vertex_orbits.iter().enumerate() {
        if orbit.len() != cover.fibre(Element::Vertex(k)).len() {
            return Err(format!("vertex orbit {k} and its fibre differ in size"));
        }
    }
    for (k, orbit) in r.quotient.dart_orbits.iter().enumerate() {
        if orbit.len() != cover.fibre(Element::Dart(k)).len() {
            return Err(format!("dart orbit {k} and its fibre differ in size"));
        }
    }
    if !is_faithful_gvg(&r.gvg) {
        return Err("reconstructed voltage graph is not faithful".into());
    }
    Ok(())
}

fn sampled_gvgs(rng: &mut SampleRng, count: usize, max_order: usize) -> Vec<GenVoltageGraph> {
    let groups = sample::groups_up_to(max_order);
    (0..count)
        .map(|_| sample::random_gvg(rng, &groups, MAX_BASE_VERTICES, MAX_BASE_DARTS))
        .collect()
}

pub fn connectivity(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = sample::rng(seed ^ 3);
    let mut t = Tally::new();
    let mut connected = 0;
    for (i, gvg) in sampled_gvgs(&mut rng, CONNECTIVITY_SAMPLES, MAX_SAMPLED_GROUP_ORDER)
        .iter()
        .enumerate()
    {
        let verdict = is_connected_by_voltage(gvg);
        let cover = Cover::build(gvg).expect("sampled covers are small");
        let components = oracle::component_count(cover.graph());
        connected += usize::from(components == 1);
        t.check(verdict.connected == (components == 1), || {
            format!("sample {i}: verdict {} but {components} components", verdict.connected)
        });
        t.require(verdict.index() == components, || {
            format!("sample {i}: index {} but {components} components", verdict.index())
        });
    }
    t.mix = format!("{connected} connected, {} not", t.cases - connected);
    t.finish(3, "connectivity from voltages", start, None)
}

pub fn simplicity(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = sample::rng(seed ^ 4);
    let mut t = Tally::new();
    let (mut simples, mut semis, mut parallels) = (0, 0, 0);
    for (i, gvg) in sampled_gvgs(&mut rng, SIMPLICITY_SAMPLES, MAX_SAMPLED_GROUP_ORDER)
        .iter()
        .enumerate()
    {
        let cover = Cover::build(gvg).expect("sampled covers are small");
        let g = cover.graph();
        let simple = is_simple_by_voltage(gvg);
        let semi = has_semiedge_by_voltage(gvg).is_some();
        let parallel = has_parallel_darts_by_voltage(gvg).is_some();
        simples += usize::from(simple);
        semis += usize::from(semi);
        parallels += usize::from(parallel);
        t.check(
            simple == oracle::is_simple(g)
                && semi == oracle::has_semi_edge(g)
                && parallel == oracle::has_parallel_darts(g),
            || {
                format!(
                    "sample {i}: voltages say simple={simple} semi={semi} parallel={parallel}, cover says {} {} {}",
                    oracle::is_simple(g),
                    oracle::has_semi_edge(g),
                    oracle::has_parallel_darts(g)
                )
            },
        );
    }
    t.mix = format!("{simples} simple, {semis} with semi-edges, {parallels} with parallel darts");
    t.finish(4, "simplicity from voltages", start, None)
}

pub fn normalisation(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = sample::rng(seed ^ 5);
    let mut t = Tally::new();
    for (i, gvg) in sampled_gvgs(&mut rng, NORMALISATION_SAMPLES, MAX_SAMPLED_GROUP_ORDER)
        .iter()
        .enumerate()
    {
        t.check(normalisation_holds(gvg).is_ok(), || {
            format!("sample {i}: {}", normalisation_holds(gvg).unwrap_err())
        });
    }
    t.finish(5, "tree normalisation", start, None)
}

fn normalisation_holds(gvg: &GenVoltageGraph) -> Result<(), String> {
    let tree = gvg.base().spanning_tree(0).map_err(|e| e.to_string())?;
    let least = t_normalize_with(gvg, &tree, LeafOrder::Least).map_err(|e| e.to_string())?;
    let after = &least.normalised;
    if !tree.darts().iter().all(|&x| after.volt(x).is_identity()) || !is_t_normalised(after, &tree) {
        return Err("a tree dart keeps a nontrivial voltage".into());
    }
    after.validate().map_err(|e| format!("normalised graph invalid: {e}"))?;
    let before_cover = Cover::build(gvg).map_err(|e| e.to_string())?;
    let after_cover = Cover::build(after).map_err(|e| e.to_string())?;
    least
        .witness
        .verify(&before_cover, &after_cover)
        .map_err(|e| e.to_string())?;
    if is_connected_by_voltage(gvg).connected != is_connected_by_voltage(after).connected
        || is_simple_by_voltage(gvg) != is_simple_by_voltage(after)
    {
        return Err("verdicts changed under normalisation".into());
    }
    let greatest = t_normalize_with(gvg, &tree, LeafOrder::Greatest).map_err(|e| e.to_string())?;
    let other_cover = Cover::build(&greatest.normalised).map_err(|e| e.to_string())?;
    match find_isomorphism(after_cover.graph(), other_cover.graph()) {
        Ok(Some(_)) => Ok(()),
        Ok(None) => Err("peeling orders give non-isomorphic covers".into()),
        Err(e) => Err(e.to_string()),
    }
}

pub fn translations_and_kernel(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = sample::rng(seed ^ 6);
    let mut t = Tally::new();
    for (i, gvg) in sampled_gvgs(&mut rng, TRANSLATION_SAMPLES, MAX_SAMPLED_GROUP_ORDER)
        .iter()
        .enumerate()
    {
        let cover = Cover::build(gvg).expect("sampled covers are small");
        let lifts: Result<Vec<_>, _> = gvg
            .group()
            .generators()
            .iter()
            .map(|h| lift_translation(&cover, h))
            .collect();
        t.check(lifts.is_ok(), || format!("sample {i}: {}", lifts.as_ref().unwrap_err()));
        if let Ok(lifts) = lifts {
            if let [a, b, ..] = lifts.as_slice() {
                let product = lift_translation(&cover, &(&a.h * &b.h)).expect("product lies in the group");
                t.require(a.morphism.then(&b.morphism) == product.morphism, || {
                    format!("sample {i}: lifting does not respect products")
                });
            }
        }
        let hom = action_hom(&cover);
        t.check(hom.kernel_matches_core(), || {
            format!(
                "sample {i}: kernel of order {} but weight core of order {}",
                hom.kernel.order(),
                hom.weight_core.order()
            )
        });
        t.check(hom.injective == is_faithful_gvg(gvg), || {
            format!("sample {i}: injective={} but faithful={}", hom.injective, is_faithful_gvg(gvg))
        });
    }
    t.finish(6, "lifted translations and kernel", start, None)
}

pub fn walk_endpoints(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = sample::rng(seed ^ 7);
    let mut t = Tally::new();
    let gvgs = sampled_gvgs(&mut rng, WALK_SAMPLES, MAX_SAMPLED_GROUP_ORDER);
    for (i, gvg) in gvgs.iter().enumerate() {
        let cover = Cover::build(gvg).expect("sampled covers are small");
        let walk = sample::random_walk(&mut rng, gvg.base(), MAX_WALK_LEN);
        let from = cover.vertex_of(walk.start(), &gvg.group().identity());
        let by_voltage = cover.lifted_walk_endpoints(&walk);
        let by_search = oracle::lifted_endpoints_by_search(&cover, &walk, from);
        t.check(by_voltage.as_ref().ok() == Some(&by_search), || {
            format!("sample {i}: walk {:?} gives {by_voltage:?}, search gives {by_search:?}", walk.darts())
        });
    }
    t.finish(7, "walk voltage endpoints", start, None)
}

pub fn generation(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = sample::rng(seed ^ 8);
    let mut t = Tally::new();

    // bicoset tree case: K_{2,3} under Z6
    let k23 = sample::bipartite_family(2, 3);
    let z6 = Perm::parse("(1 2)(3 4 5)", 5).expect("fixed text");
    let action = ActionGroup::from_vertex_permutations(k23.graph, &[z6]).expect("automorphism");
    let q = quotient_graph(&action).expect("valid action");
    let tr = choose_transversal(&action, &q).expect("connected quotient");
    let stabs: Vec<Group> = tr.vertices.iter().map(|&v| action.stabiliser(v)).collect();
    let joined = action
        .group()
        .generated_by(&stabs.iter().map(GroupPart::Subgroup).collect::<Vec<_>>())
        .expect("stabilisers are subgroups");
    t.check(
        q.graph.vertex_count() == 2 && q.graph.dart_count() == 2 && joined == *action.group(),
        || "K2,3: vertex stabilisers do not generate Z6".into(),
    );
    t.check(
        generation_connectivity_test(&action, &tr).is_ok_and(|v| v.connected && v.swaps.is_empty()),
        || "K2,3: generation test disagrees".into(),
    );

    let mut families = sample::connected_families();
    families.extend(sample::disconnected_families());
    let mut disconnected = 0;
    let mut sampled = 0;
    while sampled < GENERATION_SAMPLES || disconnected < GENERATION_MIN_DISCONNECTED {
        let family = &families[rand::Rng::gen_range(&mut rng, 0..families.len())];
        let Some(action) = sample::random_action(&mut rng, family, MAX_ACTION_ORDER) else {
            continue;
        };
        let q = quotient_graph(&action).expect("valid action");
        let transversal = match choose_transversal(&action, &q) {
            Ok(tr) => tr,
            Err(e) => {
                t.require(e == QuotientError::QuotientNotConnected, || format!("{}: {e}", family.name));
                continue;
            }
        };
        sampled += 1;
        let connected = oracle::component_count(action.graph()) == 1;
        if !connected {
            disconnected += 1;
        }
        let verdict = generation_connectivity_test(&action, &transversal);
        t.check(verdict.as_ref().is_ok_and(|v| v.connected == connected), || {
            format!("{}: graph connected={connected}, test gave {verdict:?}", family.name)
        });
    }
    t.mix = format!("{} connected, {disconnected} not", sampled - disconnected);
    t.finish(8, "generation tests", start, None)
}

pub fn validator(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = sample::rng(seed ^ 9);
    let groups = sample::groups_up_to(MAX_TABLE_GROUP_ORDER);
    let mut t = Tally::new();
    let mut valid = 0;
    for i in 0..TABLE_SAMPLES {
        let table = sample::random_table(&mut rng, &groups, MAX_BASE_VERTICES, MAX_BASE_DARTS);
        let report = oracle::check_table(
            &table.base,
            &table.group,
            &table.vertex_weights,
            &table.dart_weights,
            &table.voltages,
        );
        let verdict = table.validate();
        if verdict.is_ok() {
            valid += 1;
        }
        let agree = match &verdict {
            Ok(_) => report.is_valid(),
            Err(VoltageError::WeightNotSubgroup(_)) => report.weights_outside_group > 0,
            Err(VoltageError::VoltageNotInGroup { dart }) => report.voltages_outside_group.contains(dart),
            Err(VoltageError::Eq1Violation { dart }) => {
                report.law_failures.contains(&(oracle::Law::WeightBelowVertex, *dart))
            }
            Err(VoltageError::Eq2Violation { dart }) => {
                report.law_failures.contains(&(oracle::Law::ConjugateWeights, *dart))
            }
            Err(VoltageError::Eq3Violation { dart }) => {
                report.law_failures.contains(&(oracle::Law::ReturnVoltage, *dart))
            }
            Err(_) => false,
        };
        t.check(agree, || format!("table {i}: validator {verdict:?}, reference {report:?}"));
    }
    t.require(valid > 0 && valid < TABLE_SAMPLES, || {
        format!("only one verdict seen ({valid} valid of {TABLE_SAMPLES})")
    });
    t.mix = format!("{valid} valid, {} invalid", TABLE_SAMPLES - valid);
    t.finish(9, "validator against elementwise check", start, None)
}

/// All criteria in order.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    vec![
        golden_example(),
        reconstruction_round_trip(seed),
        connectivity(seed),
        simplicity(seed),
        normalisation(seed),
        translations_and_kernel(seed),
        walk_endpoints(seed),
        generation(seed),
        validator(seed),
    ]
}
