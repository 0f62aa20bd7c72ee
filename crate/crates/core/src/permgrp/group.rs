use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use super::{GroupError, Perm};

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_ORDER_CAP: usize = 100_000;

/// A finite permutation group: its generators plus the sorted list of all
/// elements. Equality ignores the generators.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for Group {}

impl Hash for Group {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.degree.hash(state);
        self.elements.hash(state);
    }
}

/// Something that contributes generators to [`Group::generated_by`].
#[derive(Clone, Copy, Debug)]
pub enum GroupPart<'a> {
    Element(&'a Perm),
    Subgroup(&'a Group),
}

impl Group {
    /// Closure of `gens` under composition, with the default order cap.
    pub fn generate(degree: usize, gens: Vec<Perm>) -> Result<Self, GroupError> {
        Self::generate_with_cap(degree, gens, DEFAULT_ORDER_CAP)
    }

    pub fn generate_with_cap(
        degree: usize,
        gens: Vec<Perm>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let elements = closure(degree, &gens, cap)?;
        Ok(Group {
            degree,
            generators: gens,
            elements,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Group {
            degree,
            generators: Vec::new(),
            elements: vec![Perm::identity(degree)],
        }
    }

    /// Wraps a set already known to be closed, picking a small generating set.
    fn from_closed_set(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        elements.dedup();
        let mut generators = Vec::new();
        let mut span: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
        for e in &elements {
            if !span.contains(e) {
                generators.push(e.clone());
                span = closure(degree, &generators, usize::MAX)
                    .expect("closure of a subset of a finite group")
                    .into_iter()
                    .collect();
            }
        }
        Group {
            degree,
            generators,
            elements,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements in ascending order.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, ambient: &Group) -> bool {
        self.degree == ambient.degree && self.elements.iter().all(|e| ambient.contains(e))
    }

    fn require_subgroup_of(&self, ambient: &Group) -> Result<(), GroupError> {
        if self.degree != ambient.degree {
            return Err(GroupError::DegreeMismatch {
                expected: ambient.degree,
                found: self.degree,
            });
        }
        if !self.is_subgroup_of(ambient) {
            return Err(GroupError::NotASubgroup);
        }
        Ok(())
    }

    /// `|ambient : self|`.
    pub fn index_in(&self, ambient: &Group) -> Result<usize, GroupError> {
        self.require_subgroup_of(ambient)?;
        Ok(ambient.order() / self.order())
    }

    pub fn intersection(&self, other: &Group) -> Group {
        let elements = self
            .elements
            .iter()
            .filter(|e| other.contains(e))
            .cloned()
            .collect();
        Group::from_closed_set(self.degree, elements)
    }

    /// `{g^-1 h g : h in self}`.
    pub fn conjugate(&self, g: &Perm) -> Result<Group, GroupError> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        let ginv = g.inverse();
        let conj = |h: &Perm| ginv.then(h).then(g);
        let mut elements: Vec<Perm> = self.elements.iter().map(conj).collect();
        elements.sort();
        Ok(Group {
            degree: self.degree,
            generators: self.generators.iter().map(conj).collect(),
            elements,
        })
    }

    pub fn is_normal_in(&self, ambient: &Group) -> bool {
        self.is_subgroup_of(ambient)
            && ambient.generators.iter().all(|g| {
                let ginv = g.inverse();
                self.elements
                    .iter()
                    .all(|h| self.contains(&ginv.then(h).then(g)))
            })
    }

    /// Intersection of all conjugates of `self` by elements of `ambient`:
    /// the largest normal subgroup of `ambient` inside `self`.
    pub fn core_in(&self, ambient: &Group) -> Result<Group, GroupError> {
        self.require_subgroup_of(ambient)?;
        let mut current: Vec<Perm> = self.elements.clone();
        for g in &ambient.elements {
            if current.len() == 1 {
                break;
            }
            let conj = self.conjugate(g)?;
            current.retain(|e| conj.contains(e));
        }
        Ok(Group::from_closed_set(self.degree, current))
    }

    /// Subgroup of `self` generated by all `parts`.
    pub fn generated_by(&self, parts: &[GroupPart<'_>]) -> Result<Group, GroupError> {
        let mut gens = Vec::new();
        for part in parts {
            match part {
                GroupPart::Element(p) => {
                    if !self.contains(p) {
                        return Err(GroupError::NotInAmbientGroup(p.to_string()));
                    }
                    gens.push((*p).clone());
                }
                GroupPart::Subgroup(h) => {
                    if h.degree != self.degree || !h.is_subgroup_of(self) {
                        return Err(GroupError::NotInAmbientGroup(format!(
                            "subgroup of order {}",
                            h.order()
                        )));
                    }
                    gens.extend(h.generators.iter().cloned());
                }
            }
        }
        gens.sort();
        gens.dedup();
        gens.retain(|g| !g.is_identity());
        let elements = closure(self.degree, &gens, self.order())?;
        Ok(Group {
            degree: self.degree,
            generators: gens,
            elements,
        })
    }

    /// Lexicographically least element of the right coset `self * g`.
    pub fn coset_representative(&self, g: &Perm) -> Perm {
        self.elements
            .iter()
            .map(|h| h.then(g))
            .min()
            .expect("groups are nonempty")
    }

    /// Right cosets of `self` in `ambient`, ordered by canonical representative.
    pub fn right_cosets_in<'g>(&'g self, ambient: &Group) -> Result<Vec<RightCoset<'g>>, GroupError> {
        let table = CosetTable::new(self, ambient)?;
        Ok(table
            .representatives
            .into_iter()
            .map(|representative| RightCoset {
                subgroup: self,
                representative,
            })
            .collect())
    }
}

/// A right coset `H g`, identified by its lexicographically least element.
#[derive(Clone, Debug)]
pub struct RightCoset<'g> {
    subgroup: &'g Group,
    representative: Perm,
}

impl<'g> RightCoset<'g> {
    pub fn new(subgroup: &'g Group, member: &Perm) -> Self {
        RightCoset {
            subgroup,
            representative: subgroup.coset_representative(member),
        }
    }

    pub fn subgroup(&self) -> &'g Group {
        self.subgroup
    }

    pub fn representative(&self) -> &Perm {
        &self.representative
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.subgroup.contains(&g.then(&self.representative.inverse()))
    }

    pub fn elements(&self) -> impl Iterator<Item = Perm> + '_ {
        self.subgroup
            .elements
            .iter()
            .map(|h| h.then(&self.representative))
    }
}

impl PartialEq for RightCoset<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.representative == other.representative && self.subgroup == other.subgroup
    }
}

impl Eq for RightCoset<'_> {}

/// Lookup table from elements of an ambient group to the index of their right
/// coset of a subgroup. Indices follow canonical-representative order.
#[derive(Clone, Debug)]
pub struct CosetTable {
    representatives: Vec<Perm>,
    coset_of: HashMap<Perm, usize>,
}

impl CosetTable {
    pub fn new(subgroup: &Group, ambient: &Group) -> Result<Self, GroupError> {
        subgroup.require_subgroup_of(ambient)?;
        let mut representatives = Vec::with_capacity(ambient.order() / subgroup.order());
        let mut coset_of = HashMap::with_capacity(ambient.order());
        // Elements come in ascending order, so the first unassigned element of
        // each coset is its least member.
        for g in &ambient.elements {
            if coset_of.contains_key(g) {
                continue;
            }
            let idx = representatives.len();
            for h in &subgroup.elements {
                coset_of.insert(h.then(g), idx);
            }
            representatives.push(g.clone());
        }
        Ok(CosetTable {
            representatives,
            coset_of,
        })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[Perm] {
        &self.representatives
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.coset_of.get(g).copied()
    }
}

fn closure(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>, GroupError> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for s in gens {
            let next = e.then(s);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(GroupError::OrderCapExceeded { cap });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut elements: Vec<Perm> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        Perm::parse(s, 6).unwrap()
    }

    fn sigma() -> Perm {
        p("(1 2 3)(5 4 6)")
    }

    fn rho() -> Perm {
        p("(2 3)(4 5)")
    }

    fn s6_fixture() -> Group {
        Group::generate(6, vec![sigma(), rho()]).unwrap()
    }

    /// Independent closure: repeatedly multiply everything by everything.
    fn naive_closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
        let mut set: Vec<Perm> = vec![Perm::identity(degree)];
        set.extend(gens.iter().cloned());
        loop {
            let mut grown = set.clone();
            for a in &set {
                for b in &set {
                    let c = a * b;
                    if !grown.contains(&c) {
                        grown.push(c);
                    }
                }
            }
            if grown.len() == set.len() {
                break;
            }
            set = grown;
        }
        set.sort();
        set
    }

    #[test]
    fn generate_examples() {
        assert_eq!(s6_fixture().order(), 6);
        assert_eq!(Group::generate(4, vec![]).unwrap().order(), 1);
        let rs = &rho() * &sigma();
        let cyc = Group::generate(6, vec![rs.clone()]).unwrap();
        assert_eq!(cyc.elements(), naive_closure(6, &[rs]).as_slice());
        assert_eq!(cyc.order(), 2);
    }

    #[test]
    fn generate_errors() {
        assert_eq!(
            Group::generate(5, vec![sigma()]),
            Err(GroupError::DegreeMismatch {
                expected: 5,
                found: 6
            })
        );
        let s6 = vec![p("(1 2)"), p("(1 2 3 4 5 6)")];
        assert_eq!(
            Group::generate_with_cap(6, s6, 100),
            Err(GroupError::OrderCapExceeded { cap: 100 })
        );
    }

    #[test]
    fn right_coset_examples() {
        let g = s6_fixture();
        let h = Group::generate(6, vec![rho()]).unwrap();
        let cosets = h.right_cosets_in(&g).unwrap();
        assert_eq!(cosets.len(), 3);
        // pairwise disjoint and covering
        let mut all: Vec<Perm> = cosets.iter().flat_map(|c| c.elements()).collect();
        all.sort();
        assert_eq!(all, g.elements());
        // representatives are the least members
        for c in &cosets {
            assert_eq!(c.elements().min().unwrap(), *c.representative());
        }
        let whole = g.right_cosets_in(&g).unwrap();
        assert_eq!(whole.len(), 1);
        assert!(whole[0].representative().is_identity());
        let triv = Group::trivial(6);
        assert_eq!(triv.right_cosets_in(&g).unwrap().len(), 6);
        let other = Group::generate(6, vec![p("(1 6)")]).unwrap();
        assert_eq!(
            other.right_cosets_in(&g).unwrap_err(),
            GroupError::NotASubgroup
        );
    }

    #[test]
    fn conjugate_examples() {
        let h = Group::generate(6, vec![&rho() * &sigma()]).unwrap();
        let c = h.conjugate(&sigma()).unwrap();
        let expected: Vec<Perm> = {
            let mut v: Vec<Perm> = h
                .elements()
                .iter()
                .map(|x| &(&sigma().inverse() * x) * &sigma())
                .collect();
            v.sort();
            v
        };
        assert_eq!(c.elements(), expected.as_slice());
        assert_eq!(c.order(), 2);
        assert_eq!(h.conjugate(&Perm::identity(6)).unwrap(), h);
        assert!(h.conjugate(&Perm::identity(5)).is_err());
    }

    #[test]
    fn core_examples() {
        let g = s6_fixture();
        let h = Group::generate(6, vec![rho()]).unwrap();
        // brute force: intersect the six conjugates
        let mut inter: Vec<Perm> = g.elements().to_vec();
        for x in g.elements() {
            let conj: Vec<Perm> = h.elements().iter().map(|e| e.conjugate_by(x)).collect();
            inter.retain(|e| conj.contains(e));
        }
        assert_eq!(inter.len(), 1);
        assert!(h.core_in(&g).unwrap().is_trivial());
        let normal = Group::generate(6, vec![sigma()]).unwrap();
        assert!(normal.is_normal_in(&g));
        assert_eq!(normal.core_in(&g).unwrap(), normal);
        assert_eq!(g.core_in(&g).unwrap(), g);
    }

    #[test]
    fn generated_by_examples() {
        let g = s6_fixture();
        let h = Group::generate(6, vec![rho()]).unwrap();
        let k = Group::generate(6, vec![&rho() * &sigma()]).unwrap();
        let all = g
            .generated_by(&[GroupPart::Subgroup(&h), GroupPart::Subgroup(&k)])
            .unwrap();
        assert_eq!(all, g);
        assert!(g.generated_by(&[]).unwrap().is_trivial());
        let kc = k.conjugate(&sigma()).unwrap();
        let two = g
            .generated_by(&[GroupPart::Subgroup(&h), GroupPart::Subgroup(&kc)])
            .unwrap();
        assert_eq!(two.order(), 2);
        let outside = p("(1 6)");
        assert!(matches!(
            g.generated_by(&[GroupPart::Element(&outside)]),
            Err(GroupError::NotInAmbientGroup(_))
        ));
    }

    #[test]
    fn intersection_generators_span() {
        let g = s6_fixture();
        let h = Group::generate(6, vec![sigma()]).unwrap();
        let i = g.intersection(&h);
        assert_eq!(i, h);
        let regen = Group::generate(6, i.generators().to_vec()).unwrap();
        assert_eq!(regen, i);
    }

    #[test]
    fn coset_table_matches_representatives() {
        let g = s6_fixture();
        let h = Group::generate(6, vec![rho()]).unwrap();
        let t = CosetTable::new(&h, &g).unwrap();
        for e in g.elements() {
            let idx = t.index_of(e).unwrap();
            assert_eq!(t.representatives()[idx], h.coset_representative(e));
        }
        let cosets = h.right_cosets_in(&g).unwrap();
        assert!(cosets[1].contains(&cosets[1].representative().clone()));
        assert_eq!(RightCoset::new(&h, cosets[2].representative()), cosets[2]);
    }
}
