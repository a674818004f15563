use super::{PermGroup, Permutation};

/// Conjugacy classes of a group, canonically ordered: by size, then by the
/// smallest member in canonical element order. Class 0 is the identity.
#[derive(Debug, Clone)]
pub struct ConjugacyClassSet {
    representatives: Vec<Permutation>,
    sizes: Vec<usize>,
    /// Element indices of each class, ascending; `members[k][0]` is the representative.
    members: Vec<Vec<u32>>,
    class_of: Vec<u32>,
    rep_orders: Vec<u64>,
    inverse_class: Vec<usize>,
}

impl ConjugacyClassSet {
    pub(crate) fn compute(group: &PermGroup) -> Self {
        let n = group.order();
        let gens = group.generators();
        let gen_invs: Vec<Permutation> = gens.iter().map(|g| g.inverse()).collect();
        let mut assigned = vec![false; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if assigned[start] {
                continue;
            }
            assigned[start] = true;
            let mut orbit = vec![start as u32];
            let mut head = 0;
            while head < orbit.len() {
                let x = group.element(orbit[head] as usize);
                head += 1;
                for (g, ginv) in gens.iter().zip(&gen_invs) {
                    let y = ginv.then(x).then(g);
                    let j = group.index_of(&y).expect("conjugate stays in group");
                    if !assigned[j] {
                        assigned[j] = true;
                        orbit.push(j as u32);
                    }
                }
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        raw.sort_by(|a, b| a.len().cmp(&b.len()).then(a[0].cmp(&b[0])));

        let mut class_of = vec![0u32; n];
        for (k, members) in raw.iter().enumerate() {
            for &m in members {
                class_of[m as usize] = k as u32;
            }
        }
        let representatives: Vec<Permutation> = raw
            .iter()
            .map(|m| group.element(m[0] as usize).clone())
            .collect();
        let rep_orders = representatives.iter().map(|r| r.order()).collect();
        let inverse_class = representatives
            .iter()
            .map(|r| class_of[group.index_of(&r.inverse()).unwrap()] as usize)
            .collect();
        Self {
            sizes: raw.iter().map(|m| m.len()).collect(),
            representatives,
            members: raw,
            class_of,
            rep_orders,
            inverse_class,
        }
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn representative(&self, k: usize) -> &Permutation {
        &self.representatives[k]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, k: usize) -> usize {
        self.sizes[k]
    }

    /// Element indices (into the owning group) of class `k`.
    pub fn members(&self, k: usize) -> &[u32] {
        &self.members[k]
    }

    /// Class index of the element with canonical rank `element_index`.
    #[inline]
    pub fn class_of_element(&self, element_index: usize) -> usize {
        self.class_of[element_index] as usize
    }

    pub fn rep_orders(&self) -> &[u64] {
        &self.rep_orders
    }

    /// Class of the inverses of class `k`.
    pub fn inverse_class(&self, k: usize) -> usize {
        self.inverse_class[k]
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn group(deg: usize, gens: &[&[u32]]) -> Arc<PermGroup> {
        let gens = gens
            .iter()
            .map(|c| Permutation::from_cycles(deg, &[c.to_vec()]).unwrap())
            .collect();
        PermGroup::from_generators(deg, gens).unwrap()
    }

    #[test]
    fn cyclic_classes_are_singletons() {
        let c4 = group(4, &[&[0, 1, 2, 3]]);
        assert_eq!(c4.classes().sizes(), &[1, 1, 1, 1]);
    }

    #[test]
    fn dihedral_class_sizes() {
        let d8 = group(4, &[&[0, 1, 2, 3], &[0, 2]]);
        let cl = d8.classes();
        assert_eq!(cl.sizes(), &[1, 1, 2, 2, 2]);
        assert!(cl.representative(0).is_identity());
        // class-closed under conjugation by each generator
        for k in 0..cl.len() {
            for &m in cl.members(k) {
                for g in d8.generators() {
                    let c = d8.element(m as usize).conjugate_by(g);
                    assert_eq!(d8.class_of(&c), Some(k));
                }
            }
        }
    }

    #[test]
    fn center_is_union_of_singleton_classes() {
        let d8 = group(4, &[&[0, 1, 2, 3], &[0, 2]]);
        let singles = d8.classes().sizes().iter().filter(|&&s| s == 1).count();
        assert_eq!(singles, d8.center().order());
    }
}
