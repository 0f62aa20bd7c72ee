//! Brute-force reference implementations used to cross-check the library.
//!
//! Everything here works on raw image vectors and explicit scans. It avoids
//! the group and cover machinery it is meant to check, apart from reading
//! generators and the built cover graph.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::cover::Cover;
use crate::dartgraph::{Graph, Walk};
use crate::permgrp::{Group, Perm};

type Images = Vec<usize>;

fn compose(a: &[usize], b: &[usize]) -> Images {
    a.iter().map(|&p| b[p]).collect()
}

fn invert(a: &[usize]) -> Images {
    let mut out = vec![0; a.len()];
    for (i, &p) in a.iter().enumerate() {
        out[p] = i;
    }
    out
}

/// All products of the generators, by breadth-first closure.
pub fn closure(degree: usize, generators: &[Perm]) -> HashSet<Images> {
    let id: Images = (0..degree).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in generators {
            let next = compose(&e, g.images());
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Which of the three compatibility laws failed, and where.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    WeightBelowVertex,
    ConjugateWeights,
    ReturnVoltage,
}

/// Every way a table fails to be a valid voltage graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableReport {
    pub weights_outside_group: usize,
    pub voltages_outside_group: Vec<usize>,
    pub law_failures: BTreeSet<(Law, usize)>,
}

impl TableReport {
    pub fn is_valid(&self) -> bool {
        self.weights_outside_group == 0
            && self.voltages_outside_group.is_empty()
            && self.law_failures.is_empty()
    }
}

/// Checks a weight and voltage table element by element.
pub fn check_table(
    base: &Graph,
    group: &Group,
    vertex_weights: &[Group],
    dart_weights: &[Group],
    voltages: &[Perm],
) -> TableReport {
    let degree = group.degree();
    let g = closure(degree, group.generators());
    let vw: Vec<HashSet<Images>> = vertex_weights
        .iter()
        .map(|w| closure(degree, w.generators()))
        .collect();
    let dw: Vec<HashSet<Images>> = dart_weights
        .iter()
        .map(|w| closure(degree, w.generators()))
        .collect();
    let mut report = TableReport {
        weights_outside_group: vw.iter().chain(&dw).filter(|w| !w.is_subset(&g)).count(),
        ..TableReport::default()
    };
    for (x, z) in voltages.iter().enumerate() {
        if !g.contains(z.images()) {
            report.voltages_outside_group.push(x);
        }
    }
    for x in base.darts() {
        let y = base.inv(x);
        if !dw[x].is_subset(&vw[base.beg(x)]) {
            report.law_failures.insert((Law::WeightBelowVertex, x));
        }
        let z = voltages[x].images();
        let zi = invert(z);
        let conjugated: HashSet<Images> = dw[y].iter().map(|h| compose(&compose(&zi, h), z)).collect();
        if conjugated != dw[x] {
            report.law_failures.insert((Law::ConjugateWeights, x));
        }
        if !dw[x].contains(&compose(voltages[y].images(), z)) {
            report.law_failures.insert((Law::ReturnVoltage, x));
        }
    }
    report
}

/// Endpoints of every walk in the cover that starts at `start` and projects
/// onto `walk`, found by following cover darts one step at a time.
pub fn lifted_endpoints_by_search(cover: &Cover<'_>, walk: &Walk, start: usize) -> BTreeSet<usize> {
    let g = cover.graph();
    let proj = cover.projection();
    let mut current = BTreeSet::from([start]);
    for &x in walk.darts() {
        let mut next = BTreeSet::new();
        for &v in &current {
            for &d in g.darts_at(v) {
                if proj.dart_map[d] == x {
                    next.insert(g.term(d));
                }
            }
        }
        current = next;
    }
    current
}

/// Component count by breadth-first search over raw `beg`/`inv`.
pub fn component_count(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for d in graph.darts() {
        adj[graph.beg(d)].push(graph.beg(graph.inv(d)));
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    count
}

/// A dart fixed by `inv`.
pub fn has_semi_edge(graph: &Graph) -> bool {
    graph.darts().any(|d| graph.inv(d) == d)
}

/// Two distinct darts with the same start and the same end; a loop counts
/// through its two darts.
pub fn has_parallel_darts(graph: &Graph) -> bool {
    let mut seen = HashSet::new();
    graph
        .darts()
        .any(|d| !seen.insert((graph.beg(d), graph.beg(graph.inv(d)))))
}

pub fn is_simple(graph: &Graph) -> bool {
    !has_semi_edge(graph) && !has_parallel_darts(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dartgraph::GraphBuilder;
    use crate::voltage::fixtures::*;

    #[test]
    fn closure_orders() {
        assert_eq!(closure(6, &[sigma(), rho()]).len(), 6);
        assert_eq!(closure(3, &[]).len(), 1);
    }

    #[test]
    fn fixture_tables() {
        for f in [twisted(), untwisted()] {
            let r = check_table(f.base(), f.group(), f.vertex_weights(), f.dart_weights(), f.voltages());
            assert!(r.is_valid());
        }
        let f = untwisted();
        let mut volts = f.voltages().to_vec();
        volts[0] = sigma();
        let r = check_table(f.base(), f.group(), f.vertex_weights(), f.dart_weights(), &volts);
        assert!(r.law_failures.contains(&(Law::ReturnVoltage, 0)));
    }

    #[test]
    fn raw_graph_scans() {
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1);
        assert!(is_simple(&b.build().unwrap()));
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1);
        b.add_edge(1, 0);
        assert!(has_parallel_darts(&b.build().unwrap()));
        let mut l = GraphBuilder::new(1);
        l.add_edge(0, 0);
        assert!(has_parallel_darts(&l.build().unwrap()));
        let mut s = GraphBuilder::new(2);
        s.add_semi_edge(0);
        let s = s.build().unwrap();
        assert!(has_semi_edge(&s) && !has_parallel_darts(&s));
        assert_eq!(component_count(&s), 2);
    }
}
