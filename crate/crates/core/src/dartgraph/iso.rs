use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{Graph, GraphError};

/// Default vertex bound for [`find_isomorphism`].
pub const DEFAULT_ISO_VERTEX_CAP: usize = 256;

/// A graph morphism given by its vertex and dart maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    pub vertex_map: Vec<usize>,
    pub dart_map: Vec<usize>,
}

impl GraphMorphism {
    pub fn identity(graph: &Graph) -> Self {
        GraphMorphism {
            vertex_map: graph.vertices().collect(),
            dart_map: graph.darts().collect(),
        }
    }

    /// Checks `phi(beg x) = beg phi(x)` and `phi(inv x) = inv phi(x)`.
    pub fn verify(&self, domain: &Graph, codomain: &Graph) -> Result<(), GraphError> {
        if self.vertex_map.len() != domain.vertex_count()
            || self.dart_map.len() != domain.dart_count()
        {
            return Err(GraphError::NotAMorphism("map sizes do not match the domain".into()));
        }
        if self.vertex_map.iter().any(|&v| v >= codomain.vertex_count())
            || self.dart_map.iter().any(|&x| x >= codomain.dart_count())
        {
            return Err(GraphError::NotAMorphism("image outside the codomain".into()));
        }
        for x in domain.darts() {
            let fx = self.dart_map[x];
            if self.vertex_map[domain.beg(x)] != codomain.beg(fx) {
                return Err(GraphError::NotAMorphism(format!("beg not preserved at dart {x}")));
            }
            if self.dart_map[domain.inv(x)] != codomain.inv(fx) {
                return Err(GraphError::NotAMorphism(format!("inv not preserved at dart {x}")));
            }
        }
        Ok(())
    }

    pub fn is_bijective_onto(&self, codomain: &Graph) -> bool {
        is_permutation(&self.vertex_map, codomain.vertex_count())
            && is_permutation(&self.dart_map, codomain.dart_count())
    }

    pub fn is_isomorphism(&self, domain: &Graph, codomain: &Graph) -> bool {
        self.verify(domain, codomain).is_ok() && self.is_bijective_onto(codomain)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GraphMorphism) -> GraphMorphism {
        GraphMorphism {
            vertex_map: self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect(),
            dart_map: self.dart_map.iter().map(|&x| next.dart_map[x]).collect(),
        }
    }

    /// Inverse of a bijective morphism.
    pub fn inverse(&self) -> GraphMorphism {
        let mut vertex_map = vec![0; self.vertex_map.len()];
        for (v, &w) in self.vertex_map.iter().enumerate() {
            vertex_map[w] = v;
        }
        let mut dart_map = vec![0; self.dart_map.len()];
        for (x, &y) in self.dart_map.iter().enumerate() {
            dart_map[y] = x;
        }
        GraphMorphism {
            vertex_map,
            dart_map,
        }
    }
}

fn is_permutation(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    map.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

/// Searches for an isomorphism `g1 -> g2` with the default vertex cap.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Result<Option<GraphMorphism>, GraphError> {
    find_isomorphism_with_cap(g1, g2, DEFAULT_ISO_VERTEX_CAP)
}

/// Individualisation and refinement over vertex bijections.
///
/// Both graphs are coloured jointly by refining on dart multiplicities. The
/// search then fixes a vertex from the smallest ambiguous class, tries each
/// candidate of that colour in the other graph, and refines again, backing
/// out as soon as the colour histograms differ. Darts are matched greedily
/// once every class is a singleton.
pub fn find_isomorphism_with_cap(
    g1: &Graph,
    g2: &Graph,
    cap: usize,
) -> Result<Option<GraphMorphism>, GraphError> {
    let n = g1.vertex_count();
    if n.max(g2.vertex_count()) > cap {
        return Err(GraphError::TooLarge {
            size: n.max(g2.vertex_count()),
            cap,
        });
    }
    if n != g2.vertex_count() || g1.dart_count() != g2.dart_count() {
        return Ok(None);
    }
    let p1 = Profile::new(g1);
    let p2 = Profile::new(g2);
    let c1: Vec<usize> = (0..n).map(|v| p1.initial(v)).collect();
    let c2: Vec<usize> = (0..n).map(|v| p2.initial(v)).collect();
    let pair = Pair { p1: &p1, p2: &p2 };
    let Some((c1, c2)) = pair.refine(c1, c2) else {
        return Ok(None);
    };
    let Some(vertex_map) = pair.search(c1, c2) else {
        return Ok(None);
    };
    let dart_map = match_darts(g1, g2, &vertex_map);
    let morphism = GraphMorphism {
        vertex_map,
        dart_map,
    };
    debug_assert!(morphism.is_isomorphism(g1, g2));
    Ok(Some(morphism))
}

/// Dart multiplicities between ordered vertex pairs; semi-edges counted apart.
struct Profile {
    n: usize,
    mult: Vec<u32>,
    semi: Vec<u32>,
    neighbours: Vec<Vec<(usize, u32)>>,
}

impl Profile {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut mult = vec![0u32; n * n];
        let mut semi = vec![0u32; n];
        for x in g.darts() {
            if g.is_semi_edge(x) {
                semi[g.beg(x)] += 1;
            } else {
                mult[g.beg(x) * n + g.term(x)] += 1;
            }
        }
        let neighbours = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| u != v && mult[v * n + u] > 0)
                    .map(|u| (u, mult[v * n + u]))
                    .collect()
            })
            .collect();
        Profile {
            n,
            mult,
            semi,
            neighbours,
        }
    }

    fn m(&self, a: usize, b: usize) -> u32 {
        self.mult[a * self.n + b]
    }

    /// Valence, semi-edges and loop darts packed into one key.
    fn initial(&self, v: usize) -> usize {
        let deg: u32 = self.neighbours[v].iter().map(|&(_, k)| k).sum();
        let key = (u64::from(deg) << 42) | (u64::from(self.semi[v]) << 21) | u64::from(self.m(v, v));
        key as usize
    }
}

struct Pair<'a> {
    p1: &'a Profile,
    p2: &'a Profile,
}

fn class_count(c: &[usize]) -> usize {
    let mut s = c.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

fn histogram(c: &[usize]) -> Vec<usize> {
    let mut s = c.to_vec();
    s.sort_unstable();
    s
}

impl Pair<'_> {
    /// Refines both colourings to a common stable colouring; `None` once
    /// their histograms differ.
    fn refine(&self, mut c1: Vec<usize>, mut c2: Vec<usize>) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.p1.n;
        loop {
            if histogram(&c1) != histogram(&c2) {
                return None;
            }
            let before = class_count(&c1);
            let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut next = |p: &Profile, c: &[usize]| -> Vec<usize> {
                (0..n)
                    .map(|v| {
                        let mut nb: Vec<(usize, usize)> =
                            p.neighbours[v].iter().map(|&(u, k)| (c[u], k as usize)).collect();
                        nb.sort_unstable();
                        let mut sig = Vec::with_capacity(1 + 2 * nb.len());
                        sig.push(c[v]);
                        for (a, b) in nb {
                            sig.push(a);
                            sig.push(b);
                        }
                        let fresh = ids.len();
                        *ids.entry(sig).or_insert(fresh)
                    })
                    .collect()
            };
            c1 = next(self.p1, &c1);
            c2 = next(self.p2, &c2);
            if class_count(&c1) == before {
                return (histogram(&c1) == histogram(&c2)).then_some((c1, c2));
            }
        }
    }

    fn search(&self, c1: Vec<usize>, c2: Vec<usize>) -> Option<Vec<usize>> {
        let n = self.p1.n;
        let mut size: HashMap<usize, usize> = HashMap::new();
        for &c in &c1 {
            *size.entry(c).or_default() += 1;
        }
        let cell = size
            .iter()
            .filter(|&(_, &k)| k > 1)
            .min_by_key(|&(&c, &k)| (k, c))
            .map(|(&c, _)| c);
        let Some(cell) = cell else {
            let mut at = HashMap::with_capacity(n);
            for (w, &c) in c2.iter().enumerate() {
                at.insert(c, w);
            }
            let map: Vec<usize> = c1.iter().map(|c| at[c]).collect();
            return self.is_isomorphism(&map).then_some(map);
        };
        let v = (0..n).find(|&v| c1[v] == cell).expect("cell is nonempty");
        let fresh = c1.iter().max().copied().unwrap_or(0) + 1;
        for w in (0..n).filter(|&w| c2[w] == cell) {
            let mut d1 = c1.clone();
            let mut d2 = c2.clone();
            d1[v] = fresh;
            d2[w] = fresh;
            if let Some((r1, r2)) = self.refine(d1, d2) {
                if let Some(map) = self.search(r1, r2) {
                    return Some(map);
                }
            }
        }
        None
    }

    fn is_isomorphism(&self, map: &[usize]) -> bool {
        let n = self.p1.n;
        (0..n).all(|v| {
            self.p1.semi[v] == self.p2.semi[map[v]]
                && (0..n).all(|u| self.p1.m(v, u) == self.p2.m(map[v], map[u]))
        })
    }
}

fn match_darts(g1: &Graph, g2: &Graph, vertex_map: &[usize]) -> Vec<usize> {
    let mut pools: HashMap<(usize, usize), VecDeque<usize>> = HashMap::new();
    let mut semi_pools: HashMap<usize, VecDeque<usize>> = HashMap::new();
    for y in g2.darts() {
        if g2.is_semi_edge(y) {
            semi_pools.entry(g2.beg(y)).or_default().push_back(y);
        } else {
            pools.entry((g2.beg(y), g2.term(y))).or_default().push_back(y);
        }
    }
    let mut used = vec![false; g2.dart_count()];
    let mut dart_map = vec![usize::MAX; g1.dart_count()];
    for x in g1.darts() {
        if dart_map[x] != usize::MAX {
            continue;
        }
        let a = vertex_map[g1.beg(x)];
        if g1.is_semi_edge(x) {
            let y = semi_pools
                .get_mut(&a)
                .and_then(VecDeque::pop_front)
                .expect("semi-edge counts agree");
            dart_map[x] = y;
            continue;
        }
        let b = vertex_map[g1.term(x)];
        let pool = pools.get_mut(&(a, b)).expect("multiplicities agree");
        let y = loop {
            let y = pool.pop_front().expect("multiplicities agree");
            if !used[y] {
                break y;
            }
        };
        used[y] = true;
        used[g2.inv(y)] = true;
        dart_map[x] = y;
        dart_map[g1.inv(x)] = g2.inv(y);
    }
    dart_map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dartgraph::GraphBuilder;

    fn cycle(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for i in 0..n {
            b.add_edge(i, (i + 1) % n);
        }
        b.build().unwrap()
    }

    fn three_double_edges() -> Graph {
        let mut b = GraphBuilder::new(6);
        for i in 0..3 {
            b.add_edge(2 * i, 2 * i + 1);
            b.add_edge(2 * i, 2 * i + 1);
        }
        b.build().unwrap()
    }

    fn relabelled_cycle(n: usize) -> Graph {
        // vertices reversed, darts added in a scrambled order
        let mut b = GraphBuilder::new(n);
        for i in (0..n).rev() {
            b.add_edge((n - i) % n, (2 * n - i - 1) % n);
        }
        b.build().unwrap()
    }

    #[test]
    fn isomorphism_examples() {
        let c6 = cycle(6);
        let m = find_isomorphism(&c6, &relabelled_cycle(6)).unwrap().unwrap();
        assert!(m.is_isomorphism(&c6, &relabelled_cycle(6)));
        assert!(find_isomorphism(&c6, &three_double_edges()).unwrap().is_none());
        let id = find_isomorphism(&c6, &c6).unwrap().unwrap();
        assert!(id.is_isomorphism(&c6, &c6));
    }

    #[test]
    fn semi_edges_and_loops() {
        let mut b = GraphBuilder::new(2);
        b.add_semi_edge(0);
        b.add_edge(0, 1);
        b.add_edge(1, 1);
        let g1 = b.build().unwrap();
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 0);
        b.add_edge(0, 1);
        b.add_semi_edge(1);
        let g2 = b.build().unwrap();
        let m = find_isomorphism(&g1, &g2).unwrap().unwrap();
        assert_eq!(m.vertex_map, vec![1, 0]);
        assert!(m.is_isomorphism(&g1, &g2));

        // same degrees, but semi-edge vs loop differ
        let mut b = GraphBuilder::new(1);
        b.add_semi_edge(0);
        b.add_semi_edge(0);
        let two_semis = b.build().unwrap();
        let mut b = GraphBuilder::new(1);
        b.add_edge(0, 0);
        let one_loop = b.build().unwrap();
        assert!(find_isomorphism(&two_semis, &one_loop).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let c = cycle(10);
        assert_eq!(
            find_isomorphism_with_cap(&c, &c, 5),
            Err(GraphError::TooLarge { size: 10, cap: 5 })
        );
    }

    #[test]
    fn morphism_verify_catches_bad_maps() {
        let c = cycle(4);
        let mut m = GraphMorphism::identity(&c);
        assert!(m.is_isomorphism(&c, &c));
        m.dart_map.swap(0, 2);
        assert!(m.verify(&c, &c).is_err());
        let id = GraphMorphism::identity(&c);
        assert_eq!(id.then(&id), id);
        assert_eq!(id.inverse(), id);
    }
}
