use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use super::classes::ConjugacyClassSet;
use super::Permutation;
use crate::error::{Error, Result};

/// Default ceiling on enumerated group orders.
pub const DEFAULT_ORDER_CAP: usize = 1 << 21;

/// A finite permutation group with its full element list.
///
/// Elements are kept sorted in canonical (lexicographic) order, so the
/// element index doubles as the canonical rank. Subgroups share the
/// parent's degree.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    parent: Option<Arc<PermGroup>>,
    classes: OnceLock<ConjugacyClassSet>,
}

/// Result of [`PermGroup::p_group_info`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PGroupInfo {
    pub is_p_group: bool,
    /// The prime, or 1 for the trivial group (and 0 when not a p-group).
    pub prime: u64,
    /// Least common multiple of element orders.
    pub exponent: u64,
    pub trivial: bool,
}

impl PermGroup {
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Arc<Self>> {
        Self::from_generators_capped(degree, gens, DEFAULT_ORDER_CAP)
    }

    pub fn from_generators_capped(
        degree: usize,
        gens: Vec<Permutation>,
        cap: usize,
    ) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::build(degree, gens, cap, None)?))
    }

    fn build(
        degree: usize,
        gens: Vec<Permutation>,
        cap: usize,
        parent: Option<Arc<PermGroup>>,
    ) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let elements = closure(degree, &gens, cap)?;
        Ok(Self::assemble(degree, gens, elements, parent))
    }

    fn assemble(
        degree: usize,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
        parent: Option<Arc<PermGroup>>,
    ) -> Self {
        elements.sort_unstable();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        Self {
            degree,
            generators,
            elements,
            index,
            parent,
            classes: OnceLock::new(),
        }
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(self: &Arc<Self>, gens: Vec<Permutation>) -> Result<Arc<Self>> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(Error::ElementNotInGroup);
        }
        Ok(Arc::new(Self::build(
            self.degree,
            gens,
            usize::MAX,
            Some(Arc::clone(self)),
        )?))
    }

    /// Wraps a set of elements already known to form a subgroup of `self`.
    ///
    /// Generators are chosen greedily in canonical element order.
    pub(crate) fn subgroup_from_elements(
        self: &Arc<Self>,
        elements: Vec<Permutation>,
    ) -> Arc<Self> {
        let mut sorted = elements;
        sorted.sort_unstable();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut span: std::collections::HashSet<Permutation> =
            std::iter::once(Permutation::identity(self.degree)).collect();
        for g in &sorted {
            if span.len() == sorted.len() {
                break;
            }
            if !span.contains(g) {
                gens.push(g.clone());
                span = closure(self.degree, &gens, usize::MAX)
                    .expect("uncapped closure")
                    .into_iter()
                    .collect();
            }
        }
        debug_assert_eq!(span.len(), sorted.len());
        Arc::new(Self::assemble(
            self.degree,
            gens,
            sorted,
            Some(Arc::clone(self)),
        ))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn parent(&self) -> Option<&Arc<PermGroup>> {
        self.parent.as_ref()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    /// Canonical rank of `g` in this group.
    #[inline]
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// True when `self` is a subgroup of `ambient` normalized by every generator of it.
    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient.generators.iter().all(|g| {
                self.generators
                    .iter()
                    .all(|n| self.contains(&n.conjugate_by(g)))
            })
    }

    /// Same element set.
    pub fn same_group(a: &PermGroup, b: &PermGroup) -> bool {
        std::ptr::eq(a, b)
            || (a.degree == b.degree && a.order() == b.order() && a.is_subgroup_of(b))
    }

    pub fn classes(&self) -> &ConjugacyClassSet {
        self.classes
            .get_or_init(|| ConjugacyClassSet::compute(self))
    }

    /// Class index of `g`, if `g` is in the group.
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.index_of(g).map(|i| self.classes().class_of_element(i))
    }

    pub fn exponent(&self) -> u64 {
        self.classes()
            .rep_orders()
            .iter()
            .fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    pub fn p_group_info(&self) -> PGroupInfo {
        let exponent = self.exponent();
        let order = self.order() as u64;
        if order == 1 {
            return PGroupInfo {
                is_p_group: true,
                prime: 1,
                exponent,
                trivial: true,
            };
        }
        let p = smallest_prime_factor(order);
        let mut rest = order;
        while rest.is_multiple_of(p) {
            rest /= p;
        }
        PGroupInfo {
            is_p_group: rest == 1,
            prime: if rest == 1 { p } else { 0 },
            exponent,
            trivial: false,
        }
    }

    /// The prime of a p-group (1 for the trivial group).
    pub fn prime(&self) -> Result<u64> {
        let info = self.p_group_info();
        if info.is_p_group {
            Ok(info.prime)
        } else {
            Err(Error::NotAPGroup {
                order: self.order(),
            })
        }
    }

    pub fn center(self: &Arc<Self>) -> Arc<Self> {
        let elems = self
            .elements
            .iter()
            .filter(|x| self.generators.iter().all(|g| x.commutes_with(g)))
            .cloned()
            .collect();
        self.subgroup_from_elements(elems)
    }

    pub fn centralizer(self: &Arc<Self>, g: &Permutation) -> Result<Arc<Self>> {
        if !self.contains(g) {
            return Err(Error::ElementNotInGroup);
        }
        let elems = self
            .elements
            .iter()
            .filter(|x| x.commutes_with(g))
            .cloned()
            .collect();
        Ok(self.subgroup_from_elements(elems))
    }

    /// Class indices of the `j`-th powers of the class representatives.
    pub fn power_map(&self, j: i64) -> Vec<usize> {
        let classes = self.classes();
        classes
            .representatives()
            .iter()
            .zip(classes.rep_orders())
            .map(|(rep, &ord)| {
                let e = j.rem_euclid(ord as i64) as u64;
                self.class_of(&rep.pow(e))
                    .expect("powers stay in the group")
            })
            .collect()
    }

    /// An ascending chain `1 = N_0 < .. < N_t = G` of normal subgroups of
    /// `self` with every index equal to p.
    ///
    /// Each step adjoins the smallest element (canonical order) that is
    /// central modulo the current term and whose p-th power lies in it.
    pub fn chief_series(self: &Arc<Self>) -> Result<Vec<Arc<Self>>> {
        let info = self.p_group_info();
        if !info.is_p_group {
            return Err(Error::NotAPGroup {
                order: self.order(),
            });
        }
        let mut series = vec![self.subgroup(Vec::new())?];
        if info.trivial {
            return Ok(series);
        }
        let p = info.prime;
        let gen_invs: Vec<Permutation> = self.generators.iter().map(|g| g.inverse()).collect();
        while series.last().unwrap().order() < self.order() {
            let current = Arc::clone(series.last().unwrap());
            let next = self
                .elements
                .iter()
                .find(|g| {
                    if current.contains(g) || !current.contains(&g.pow(p)) {
                        return false;
                    }
                    let ginv = g.inverse();
                    self.generators
                        .iter()
                        .zip(&gen_invs)
                        .all(|(x, xinv)| current.contains(&ginv.then(xinv).then(g).then(x)))
                })
                .cloned()
                .expect("a nontrivial p-group quotient has a central element of order p");
            let mut gens = current.generators.clone();
            gens.push(next);
            let term = self.subgroup(gens)?;
            debug_assert_eq!(term.order(), current.order() * p as usize);
            series.push(term);
        }
        Ok(series)
    }

    /// Coset representatives of `sub` in `self`, each the canonical minimum of its coset.
    pub fn transversal(&self, sub: &PermGroup) -> Result<Vec<Permutation>> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotASubgroup);
        }
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::with_capacity(self.order() / sub.order());
        for (i, g) in self.elements.iter().enumerate() {
            if covered[i] {
                continue;
            }
            reps.push(g.clone());
            for n in &sub.elements {
                covered[self.index_of(&n.then(g)).expect("closed")] = true;
            }
        }
        Ok(reps)
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Closure of `gens` on `degree` points.
pub fn group_from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Arc<PermGroup>> {
    PermGroup::from_generators(degree, gens)
}

fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = x.then(s);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                seen.insert(y.clone());
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(elements)
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}
